//! Type signatures of integral fusion categories.
//!
//! A *type signature* records, for each Frobenius-Perron dimension, how many
//! simple objects have that dimension: `(1,n0; d1,n1; ...; ds,ns)` means `n0`
//! invertible simples, `n1` simples of dimension `d1`, and so on, with
//! `1 < d1 < ... < ds`. The *global dimension* is the weighted sum
//! `n0 + n1*d1^2 + ... + ns*ds^2`.
//!
//! Signatures are ordered lexicographically by `(n0, d1, n1, d2, n2, ...)`,
//! which is the order the enumerator emits and reports print.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// One entry of a type signature: `count` simple objects of dimension `dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DimEntry {
    pub dim: u64,
    pub count: u64,
}

/// The type of an integral fusion category: object counts per dimension.
///
/// Invariants (enforced by [`TypeSignature::new`] and the parser):
/// * the first entry is `(1, n0)` with `n0 >= 1`,
/// * later dimensions are strictly increasing and `> 1`,
/// * all counts are positive,
/// * at least one non-invertible entry is present (pointed signatures, which
///   are exactly the group algebras, are out of scope).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeSignature {
    entries: Vec<DimEntry>,
}

/// Errors from signature construction or parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("malformed signature text: {0}")]
    Malformed(String),
    #[error("first entry must have dimension 1, got {0}")]
    FirstDimNotOne(u64),
    #[error("dimensions must be strictly increasing, got {0} after {1}")]
    NonIncreasingDims(u64, u64),
    #[error("entry for dimension {0} has zero count")]
    ZeroCount(u64),
    #[error("pointed signature (no entry of dimension > 1) is out of scope")]
    Pointed,
    #[error("arithmetic overflow while computing the global dimension")]
    Overflow,
    #[error("global dimension is {actual}, expected {expected}")]
    DimensionMismatch { actual: u64, expected: u64 },
}

impl TypeSignature {
    /// Builds a signature from `(dim, count)` entries, validating every
    /// invariant listed on the type.
    pub fn new(entries: Vec<DimEntry>) -> Result<Self, SignatureError> {
        let first = entries
            .first()
            .ok_or_else(|| SignatureError::Malformed("empty signature".into()))?;
        if first.dim != 1 {
            return Err(SignatureError::FirstDimNotOne(first.dim));
        }
        for pair in entries.windows(2) {
            if pair[1].dim <= pair[0].dim {
                return Err(SignatureError::NonIncreasingDims(pair[1].dim, pair[0].dim));
            }
        }
        if let Some(entry) = entries.iter().find(|e| e.count == 0) {
            return Err(SignatureError::ZeroCount(entry.dim));
        }
        if entries.len() < 2 {
            return Err(SignatureError::Pointed);
        }
        let sig = TypeSignature { entries };
        sig.global_dim()?; // reject signatures whose dimension overflows
        Ok(sig)
    }

    /// The `(dim, count)` entries, starting with `(1, n0)`.
    pub fn entries(&self) -> &[DimEntry] {
        &self.entries
    }

    /// Number of invertible simple objects (`n0`).
    pub fn invertible_count(&self) -> u64 {
        self.entries[0].count
    }

    /// Entries of dimension `> 1`, in increasing dimension order.
    pub fn noninvertible_entries(&self) -> &[DimEntry] {
        &self.entries[1..]
    }

    /// Number of distinct non-trivial dimensions (the `s` in the tuple).
    pub fn distinct_dims(&self) -> usize {
        self.entries.len() - 1
    }

    /// Count of simples of exactly dimension `dim` (0 if absent).
    pub fn count_of_dim(&self, dim: u64) -> u64 {
        self.entries
            .iter()
            .find(|e| e.dim == dim)
            .map_or(0, |e| e.count)
    }

    /// Total number of simple objects.
    pub fn rank(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }

    /// The global (Frobenius-Perron) dimension `sum of count * dim^2`.
    ///
    /// All arithmetic is checked; inputs that overflow `u64` are rejected at
    /// construction, so the convenience accessor [`Self::global_dim_u64`]
    /// cannot fail on a constructed signature.
    pub fn global_dim(&self) -> Result<u64, SignatureError> {
        let mut total: u64 = 0;
        for e in &self.entries {
            let sq = e.dim.checked_mul(e.dim).ok_or(SignatureError::Overflow)?;
            let term = e.count.checked_mul(sq).ok_or(SignatureError::Overflow)?;
            total = total.checked_add(term).ok_or(SignatureError::Overflow)?;
        }
        Ok(total)
    }

    /// The global dimension of an already-validated signature.
    pub fn global_dim_u64(&self) -> u64 {
        self.global_dim().expect("validated at construction")
    }

    /// Whether every dimension divides `expected_dim` (the Frobenius
    /// property at the level of types).
    ///
    /// Errors if the signature's global dimension is not `expected_dim`.
    pub fn is_frobenius_type(&self, expected_dim: u64) -> Result<bool, SignatureError> {
        let actual = self.global_dim_u64();
        if actual != expected_dim {
            return Err(SignatureError::DimensionMismatch {
                actual,
                expected: expected_dim,
            });
        }
        Ok(self.entries.iter().all(|e| expected_dim % e.dim == 0))
    }

    /// Dimensions of all simple objects in index order: `n0` ones, then each
    /// non-trivial dimension repeated by its count.
    pub fn dims_flat(&self) -> Vec<u64> {
        let mut dims = Vec::with_capacity(self.rank() as usize);
        for e in &self.entries {
            dims.extend(std::iter::repeat(e.dim).take(e.count as usize));
        }
        dims
    }
}

impl fmt::Display for TypeSignature {
    /// Canonical text form: `(1,n0;d1,n1;...;ds,ns)` without spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{},{}", e.dim, e.count)?;
        }
        write!(f, ")")
    }
}

impl FromStr for TypeSignature {
    type Err = SignatureError;

    /// Parses the tuple notation. Whitespace around numbers and separators
    /// is accepted; the canonical renderer emits none.
    fn from_str(text: &str) -> Result<Self, SignatureError> {
        let trimmed = text.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| SignatureError::Malformed(format!("missing parentheses in {text:?}")))?;
        let mut entries = Vec::new();
        for part in inner.split(';') {
            let (dim_text, count_text) = part
                .split_once(',')
                .ok_or_else(|| SignatureError::Malformed(format!("expected dim,count in {part:?}")))?;
            let dim = parse_number(dim_text)?;
            let count = parse_number(count_text)?;
            entries.push(DimEntry { dim, count });
        }
        TypeSignature::new(entries)
    }
}

fn parse_number(text: &str) -> Result<u64, SignatureError> {
    text.trim()
        .parse::<u64>()
        .map_err(|_| SignatureError::Malformed(format!("invalid number {text:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(text: &str) -> TypeSignature {
        text.parse().expect(text)
    }

    #[test]
    fn parses_and_renders_canonical_form() {
        let s = sig("(1,2;3,2;8,1)");
        assert_eq!(s.to_string(), "(1,2;3,2;8,1)");
        assert_eq!(s.invertible_count(), 2);
        assert_eq!(s.distinct_dims(), 2);
        assert_eq!(s.rank(), 5);
    }

    #[test]
    fn parses_liberal_whitespace() {
        let s = sig(" ( 1 , 2 ; 2 , 3 ; 4 , 1 ) ");
        assert_eq!(s.to_string(), "(1,2;2,3;4,1)");
    }

    #[test]
    fn global_dim_matches_weighted_sum() {
        assert_eq!(sig("(1,2;3,2;8,1)").global_dim_u64(), 2 + 18 + 64);
        assert_eq!(sig("(1,4;4,1;8,1)").global_dim_u64(), 4 + 16 + 64);
        assert_eq!(sig("(1,28;2,14)").global_dim_u64(), 84);
    }

    #[test]
    fn frobenius_type_checks_divisibility() {
        assert!(sig("(1,28;2,14)").is_frobenius_type(84).unwrap());
        // 8 does not divide 84.
        assert!(!sig("(1,4;4,1;8,1)").is_frobenius_type(84).unwrap());
        assert_eq!(
            sig("(1,4;4,1;8,1)").is_frobenius_type(83),
            Err(SignatureError::DimensionMismatch {
                actual: 84,
                expected: 83
            })
        );
    }

    #[test]
    fn rejects_malformed_inputs() {
        assert!(matches!(
            "(2,3;4,1)".parse::<TypeSignature>(),
            Err(SignatureError::FirstDimNotOne(2))
        ));
        assert!(matches!(
            "(1,2;4,1;3,2)".parse::<TypeSignature>(),
            Err(SignatureError::NonIncreasingDims(3, 4))
        ));
        assert!(matches!(
            "(1,2;3,0)".parse::<TypeSignature>(),
            Err(SignatureError::ZeroCount(3))
        ));
        assert!(matches!(
            "(1,6)".parse::<TypeSignature>(),
            Err(SignatureError::Pointed)
        ));
        assert!(matches!(
            "(1,2;2,2".parse::<TypeSignature>(),
            Err(SignatureError::Malformed(_))
        ));
        assert!(matches!(
            "(1,2;2;2)".parse::<TypeSignature>(),
            Err(SignatureError::Malformed(_))
        ));
    }

    #[test]
    fn rejects_duplicate_dims() {
        assert!(matches!(
            "(1,2;3,1;3,2)".parse::<TypeSignature>(),
            Err(SignatureError::NonIncreasingDims(3, 3))
        ));
    }

    #[test]
    fn dims_flat_lists_every_simple() {
        assert_eq!(sig("(1,2;2,2;4,1)").dims_flat(), vec![1, 1, 2, 2, 4]);
    }

    #[test]
    fn signature_ordering_is_by_n0_then_entries() {
        let a = sig("(1,2;2,3;3,6;4,1)");
        let b = sig("(1,2;3,2;4,4)");
        let c = sig("(1,3;3,9)");
        assert!(a < b, "same n0, first dim decides");
        assert!(b < c, "smaller n0 first");
    }
}
