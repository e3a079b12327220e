//! Fusion tables: explicit structure constants for a based ring with
//! duality, together with a direct verifier for every law the solver relies
//! on.
//!
//! A [`FusionTable`] over simples `0..rank` stores the tensor
//! `N[a][b][c] = multiplicity of c in a (x) b`. Index 0 is the unit; the
//! first `group.order()` indices are the invertible simples (dimension 1)
//! and multiply according to the group table.
//!
//! [`FusionTable::verify`] checks the laws by brute force, reporting every
//! violation it finds. It is deliberately independent of the solver's
//! propagation machinery so that solver output can be checked against it.

use crate::group::GroupTable;
use serde::{Deserialize, Serialize};
use std::fmt;

/// The laws checked by [`FusionTable::verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Law {
    /// Structural well-formedness: sizes, dimension/dual/group consistency.
    Structure,
    /// `N[0][b][c] = [b = c]` and `N[a][0][c] = [a = c]`.
    Unit,
    /// `N[a][b][0] = [b = dual(a)]`.
    Dual,
    /// `N[a][b][c] = N[dual(a)][c][b] = N[c][dual(b)][a]`.
    Reciprocity,
    /// `N[a][b][c] = N[dual(b)][dual(a)][dual(c)]`.
    Conjugation,
    /// `sum_c N[a][b][c] * dim(c) = dim(a) * dim(b)`.
    DimensionSum,
    /// Products with an invertible factor are simple, and
    /// `N[x][y][g] = [y = dual(x) * g]` for invertible `g`.
    InvertibleProduct,
    /// The stabilizer `{g : N[g][x][x] = 1}` is a subgroup of order
    /// dividing `dim(x)^2`.
    Stabilizer,
    /// `sum_e N[a][b][e] * N[e][c][f] = sum_e N[b][c][e] * N[a][e][f]`.
    Associativity,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Law::Structure => "structure",
            Law::Unit => "unit",
            Law::Dual => "dual",
            Law::Reciprocity => "reciprocity",
            Law::Conjugation => "conjugation",
            Law::DimensionSum => "dimension-sum",
            Law::InvertibleProduct => "invertible-product",
            Law::Stabilizer => "stabilizer",
            Law::Associativity => "associativity",
        };
        f.write_str(name)
    }
}

/// A single law violation at the named indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: Law,
    /// Offending indices; their meaning depends on the law (typically the
    /// cell `(a, b, c)`, or `(a, b, 0)` for row-level laws).
    pub indices: (usize, usize, usize),
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = self.indices;
        write!(f, "{} at ({a},{b},{c}): {}", self.law, self.detail)
    }
}

/// Errors from [`FusionTable::new`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("table is structurally invalid: {0}")]
    Structure(String),
}

/// Explicit fusion ring data: dimensions, duality, invertible group, tensor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionTable {
    rank: usize,
    dims: Vec<u64>,
    /// Duality as an involutive permutation of `0..rank`.
    dual: Vec<usize>,
    /// Group structure on the invertible simples `0..group.order()`.
    group: GroupTable,
    /// Row-major tensor: `tensor[(a * rank + b) * rank + c]`.
    tensor: Vec<u32>,
}

impl FusionTable {
    /// Builds a table after checking structural well-formedness (sizes and
    /// the dimension/dual/group bookkeeping, not the fusion laws; run
    /// [`Self::verify`] for those).
    pub fn new(
        dims: Vec<u64>,
        dual: Vec<usize>,
        group: GroupTable,
        tensor: Vec<u32>,
    ) -> Result<Self, TableError> {
        let rank = dims.len();
        let table = FusionTable {
            rank,
            dims,
            dual,
            group,
            tensor,
        };
        if let Some(v) = table.check_structure() {
            return Err(TableError::Structure(v.detail));
        }
        Ok(table)
    }

    /// The fusion table of a group algebra: every simple invertible, with
    /// `g (x) h = gh`.
    pub fn group_ring(group: GroupTable) -> Self {
        let n = group.order();
        let mut tensor = vec![0u32; n * n * n];
        for a in 0..n {
            for b in 0..n {
                tensor[(a * n + b) * n + group.mult(a, b)] = 1;
            }
        }
        let dual = (0..n).map(|a| group.inverse(a)).collect();
        FusionTable::new(vec![1; n], dual, group, tensor).expect("group rings are well-formed")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    /// Number of invertible simples.
    pub fn invertible_count(&self) -> usize {
        self.group.order()
    }

    /// The multiplicity `N[a][b][c]`.
    #[inline]
    pub fn n(&self, a: usize, b: usize, c: usize) -> u32 {
        self.tensor[(a * self.rank + b) * self.rank + c]
    }

    /// Canonical JSON rendering with a fixed field order, suitable for
    /// byte-for-byte comparison.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("fusion tables serialize")
    }

    fn check_structure(&self) -> Option<Violation> {
        let structure = |detail: String| {
            Some(Violation {
                law: Law::Structure,
                indices: (0, 0, 0),
                detail,
            })
        };
        let rank = self.rank;
        let n0 = self.group.order();
        if rank == 0 {
            return structure("empty table".into());
        }
        if self.dims.len() != rank || self.dual.len() != rank {
            return structure("dims/dual length differs from rank".into());
        }
        if self.tensor.len() != rank * rank * rank {
            return structure(format!(
                "tensor has {} entries, expected rank^3 = {}",
                self.tensor.len(),
                rank * rank * rank
            ));
        }
        if self.group.verify().is_err() {
            return structure("invertible group table is not a group".into());
        }
        if n0 > rank {
            return structure("more invertibles than simples".into());
        }
        for i in 0..rank {
            let invertible = i < n0;
            if invertible != (self.dims[i] == 1) {
                return structure(format!(
                    "index {i}: dimension {} inconsistent with invertible block 0..{n0}",
                    self.dims[i]
                ));
            }
        }
        for i in 0..rank {
            let d = self.dual[i];
            if d >= rank || self.dual[d] != i {
                return structure(format!("dual is not an involution at {i}"));
            }
            if self.dims[d] != self.dims[i] {
                return structure(format!("dual changes dimension at {i}"));
            }
        }
        if self.dual[0] != 0 {
            return structure("dual of the unit is not the unit".into());
        }
        for g in 0..n0 {
            if self.dual[g] != self.group.inverse(g) {
                return structure(format!("dual of invertible {g} is not its group inverse"));
            }
        }
        None
    }

    /// Checks every law and returns all violations found (empty = valid).
    pub fn verify(&self) -> Vec<Violation> {
        if let Some(v) = self.check_structure() {
            return vec![v]; // later checks index freely; stop early
        }
        let mut out = Vec::new();
        self.verify_unit(&mut out);
        self.verify_dual(&mut out);
        self.verify_reciprocity_conjugation(&mut out);
        self.verify_dimension_sums(&mut out);
        self.verify_invertible_products(&mut out);
        self.verify_stabilizers(&mut out);
        self.verify_associativity(&mut out);
        out
    }

    /// Convenience wrapper: true iff [`Self::verify`] returns no violations.
    pub fn is_valid(&self) -> bool {
        self.verify().is_empty()
    }

    fn verify_unit(&self, out: &mut Vec<Violation>) {
        for b in 0..self.rank {
            for c in 0..self.rank {
                let expect_left = u32::from(b == c);
                if self.n(0, b, c) != expect_left {
                    out.push(Violation {
                        law: Law::Unit,
                        indices: (0, b, c),
                        detail: format!("N[0][{b}][{c}] = {}", self.n(0, b, c)),
                    });
                }
                if self.n(b, 0, c) != expect_left {
                    out.push(Violation {
                        law: Law::Unit,
                        indices: (b, 0, c),
                        detail: format!("N[{b}][0][{c}] = {}", self.n(b, 0, c)),
                    });
                }
            }
        }
    }

    fn verify_dual(&self, out: &mut Vec<Violation>) {
        for a in 0..self.rank {
            for b in 0..self.rank {
                let expect = u32::from(b == self.dual[a]);
                if self.n(a, b, 0) != expect {
                    out.push(Violation {
                        law: Law::Dual,
                        indices: (a, b, 0),
                        detail: format!(
                            "N[{a}][{b}][0] = {}, expected {expect} (dual of {a} is {})",
                            self.n(a, b, 0),
                            self.dual[a]
                        ),
                    });
                }
            }
        }
    }

    fn verify_reciprocity_conjugation(&self, out: &mut Vec<Violation>) {
        for a in 0..self.rank {
            for b in 0..self.rank {
                for c in 0..self.rank {
                    let base = self.n(a, b, c);
                    let left = self.n(self.dual[a], c, b);
                    let right = self.n(c, self.dual[b], a);
                    if base != left || base != right {
                        out.push(Violation {
                            law: Law::Reciprocity,
                            indices: (a, b, c),
                            detail: format!(
                                "N = {base}, N[dual(a)][c][b] = {left}, N[c][dual(b)][a] = {right}"
                            ),
                        });
                    }
                    let conj = self.n(self.dual[b], self.dual[a], self.dual[c]);
                    if base != conj {
                        out.push(Violation {
                            law: Law::Conjugation,
                            indices: (a, b, c),
                            detail: format!("N = {base}, conjugate cell = {conj}"),
                        });
                    }
                }
            }
        }
    }

    fn verify_dimension_sums(&self, out: &mut Vec<Violation>) {
        for a in 0..self.rank {
            for b in 0..self.rank {
                let total: u64 = (0..self.rank)
                    .map(|c| u64::from(self.n(a, b, c)) * self.dims[c])
                    .sum();
                let expected = self.dims[a] * self.dims[b];
                if total != expected {
                    out.push(Violation {
                        law: Law::DimensionSum,
                        indices: (a, b, 0),
                        detail: format!("row sums to {total}, expected {expected}"),
                    });
                }
            }
        }
    }

    /// Checks that multiplying by an invertible permutes the simples, and
    /// that the invertible constituents of products follow the coset rule
    /// `N[x][y][g] = [y = dual(x) * g]`.
    fn verify_invertible_products(&self, out: &mut Vec<Violation>) {
        let n0 = self.invertible_count();
        // Rows g (x) x and x (x) g must be single simples of equal dimension.
        for g in 0..n0 {
            for x in 0..self.rank {
                for (a, b) in [(g, x), (x, g)] {
                    let nonzero: Vec<usize> =
                        (0..self.rank).filter(|&c| self.n(a, b, c) != 0).collect();
                    let simple = nonzero.len() == 1
                        && self.n(a, b, nonzero[0]) == 1
                        && self.dims[nonzero[0]] == self.dims[x];
                    if !simple {
                        out.push(Violation {
                            law: Law::InvertibleProduct,
                            indices: (a, b, 0),
                            detail: "product with an invertible is not simple".into(),
                        });
                    }
                }
            }
        }
        // Coset rule for invertible constituents of arbitrary products.
        let translate: Vec<Vec<Option<usize>>> = (0..self.rank)
            .map(|x| (0..n0).map(|g| self.right_translate(x, g)).collect())
            .collect();
        for x in 0..self.rank {
            for y in 0..self.rank {
                for g in 0..n0 {
                    let expect = u32::from(translate[self.dual[x]][g] == Some(y));
                    if self.n(x, y, g) != expect {
                        out.push(Violation {
                            law: Law::InvertibleProduct,
                            indices: (x, y, g),
                            detail: format!("N[{x}][{y}][{g}] = {}, expected {expect}", self.n(x, y, g)),
                        });
                    }
                }
            }
        }
    }

    /// The unique `y` with `N[x][g][y] = 1`, if the row is a single simple.
    fn right_translate(&self, x: usize, g: usize) -> Option<usize> {
        let mut found = None;
        for c in 0..self.rank {
            if self.n(x, g, c) != 0 {
                if found.is_some() || self.n(x, g, c) != 1 {
                    return None;
                }
                found = Some(c);
            }
        }
        found
    }

    fn verify_stabilizers(&self, out: &mut Vec<Violation>) {
        let n0 = self.invertible_count();
        if n0 > 32 {
            // The subgroup bitmask only covers 32 invertibles. Larger groups
            // arise solely as pure group rings, where this loop is empty.
            return;
        }
        for x in n0..self.rank {
            let mut mask: u32 = 0;
            for g in 0..n0 {
                if self.n(g, x, x) == 1 {
                    mask |= 1 << g;
                }
            }
            let size = u64::from(mask.count_ones());
            if self.group.closure(mask) != mask {
                out.push(Violation {
                    law: Law::Stabilizer,
                    indices: (x, 0, 0),
                    detail: format!("stabilizer {mask:#b} of {x} is not closed"),
                });
            } else if self.dims[x] * self.dims[x] % size != 0 {
                out.push(Violation {
                    law: Law::Stabilizer,
                    indices: (x, 0, 0),
                    detail: format!(
                        "stabilizer of {x} has order {size}, which does not divide {}",
                        self.dims[x] * self.dims[x]
                    ),
                });
            }
        }
    }

    fn verify_associativity(&self, out: &mut Vec<Violation>) {
        let r = self.rank;
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for f in 0..r {
                        let lhs: u64 = (0..r)
                            .map(|e| u64::from(self.n(a, b, e)) * u64::from(self.n(e, c, f)))
                            .sum();
                        let rhs: u64 = (0..r)
                            .map(|e| u64::from(self.n(b, c, e)) * u64::from(self.n(a, e, f)))
                            .sum();
                        if lhs != rhs {
                            out.push(Violation {
                                law: Law::Associativity,
                                indices: (a, b, c),
                                detail: format!(
                                    "component {f}: (a.b).c gives {lhs}, a.(b.c) gives {rhs}"
                                ),
                            });
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, group_catalog};

    /// The character ring of the symmetric group S3: simples 1, g, x with
    /// x^2 = 1 + g + x.
    fn s3_character_table() -> FusionTable {
        let mut tensor = vec![0u32; 27];
        let mut set = |a: usize, b: usize, c: usize, v: u32| tensor[(a * 3 + b) * 3 + c] = v;
        for b in 0..3 {
            set(0, b, b, 1);
            if b != 0 {
                set(b, 0, b, 1);
            }
        }
        set(1, 1, 0, 1);
        set(1, 2, 2, 1);
        set(2, 1, 2, 1);
        set(2, 2, 0, 1);
        set(2, 2, 1, 1);
        set(2, 2, 2, 1);
        FusionTable::new(vec![1, 1, 2], vec![0, 1, 2], cyclic(2), tensor).unwrap()
    }

    #[test]
    fn group_rings_pass_verification() {
        for order in 1..=8 {
            for group in group_catalog(order).unwrap() {
                let name = group.name().to_string();
                let table = FusionTable::group_ring(group);
                assert_eq!(table.verify(), vec![], "group ring of {name}");
            }
        }
    }

    #[test]
    fn s3_character_ring_passes_verification() {
        let table = s3_character_table();
        assert_eq!(table.verify(), vec![]);
        assert_eq!(table.n(2, 2, 1), 1);
    }

    /// The character ring of the alternating group A4: three linear
    /// characters forming C3 and one simple of dimension 3 with
    /// x^2 = 1 + w + w^2 + 2x.
    fn a4_character_table() -> FusionTable {
        let g = cyclic(3);
        let mut tensor = vec![0u32; 64];
        let mut set = |a: usize, b: usize, c: usize, v: u32| tensor[(a * 4 + b) * 4 + c] = v;
        for b in 0..4 {
            set(0, b, b, 1);
            if b != 0 {
                set(b, 0, b, 1);
            }
        }
        set(1, 2, 0, 1);
        set(2, 1, 0, 1);
        set(1, 1, 2, 1);
        set(2, 2, 1, 1);
        for g_el in 1..3 {
            set(g_el, 3, 3, 1);
            set(3, g_el, 3, 1);
        }
        set(3, 3, 0, 1);
        set(3, 3, 1, 1);
        set(3, 3, 2, 1);
        set(3, 3, 3, 2);
        FusionTable::new(vec![1, 1, 1, 3], vec![0, 2, 1, 3], g, tensor).unwrap()
    }

    /// Rank 5 table over C4 with one simple of dimension 2 and
    /// x^2 = sum of all invertibles.
    fn c4_plus_one_table() -> FusionTable {
        let g = cyclic(4);
        let mut tensor = vec![0u32; 125];
        let mut set = |a: usize, b: usize, c: usize, v: u32| tensor[(a * 5 + b) * 5 + c] = v;
        for a in 0..4 {
            for b in 0..4 {
                set(a, b, (a + b) % 4, 1);
            }
        }
        for a in 0..4 {
            set(a, 4, 4, 1);
            set(4, a, 4, 1);
        }
        for c in 0..4 {
            set(4, 4, c, 1);
        }
        FusionTable::new(vec![1, 1, 1, 1, 2], vec![0, 3, 2, 1, 4], g, tensor).unwrap()
    }

    #[test]
    fn a4_character_ring_passes_verification() {
        assert_eq!(a4_character_table().verify(), vec![]);
    }

    #[test]
    fn c4_plus_one_passes_verification() {
        assert_eq!(c4_plus_one_table().verify(), vec![]);
    }

    #[test]
    fn tampered_unit_row_is_reported() {
        let mut table = s3_character_table();
        table.tensor[(0 * 3 + 1) * 3 + 2] = 1;
        assert!(table.verify().iter().any(|v| v.law == Law::Unit));
    }

    #[test]
    fn tampered_dual_component_is_reported() {
        let mut table = s3_character_table();
        // x (x) x: replace the g component by a second copy of the unit.
        table.tensor[(2 * 3 + 2) * 3 + 1] = 0;
        table.tensor[(2 * 3 + 2) * 3] = 2;
        assert!(table.verify().iter().any(|v| v.law == Law::Dual));
    }

    #[test]
    fn broken_dimension_sum_is_the_only_report_for_symmetric_tamper() {
        let mut table = s3_character_table();
        // Doubling the self-multiplicity of x keeps every symmetry law and
        // the product-balance sums intact but breaks the row dimension.
        table.tensor[(2 * 3 + 2) * 3 + 2] = 2;
        let violations = table.verify();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].law, Law::DimensionSum);
    }

    #[test]
    fn asymmetric_tamper_fires_reciprocity() {
        let mut table = a4_character_table();
        table.tensor[(1 * 4 + 3) * 4 + 3] = 2;
        let violations = table.verify();
        assert!(violations.iter().any(|v| v.law == Law::Reciprocity));
        assert!(violations.iter().any(|v| v.law == Law::InvertibleProduct));
    }

    #[test]
    fn unbalanced_products_fire_associativity() {
        let mut table = s3_character_table();
        // Redirect g (x) x from x to g: (g.g).x and g.(g.x) now disagree.
        table.tensor[(1 * 3 + 2) * 3 + 2] = 0;
        table.tensor[(1 * 3 + 2) * 3 + 1] = 1;
        assert!(table.verify().iter().any(|v| v.law == Law::Associativity));
    }

    #[test]
    fn stabilizer_closure_failure_is_reported() {
        let mut table = c4_plus_one_table();
        // Remove g^2 from the stabilizer of x; {1, g, g^3} is not closed.
        table.tensor[(2 * 5 + 4) * 5 + 4] = 0;
        assert!(table.verify().iter().any(|v| v.law == Law::Stabilizer));
    }

    #[test]
    fn structure_errors_are_rejected_at_construction() {
        let err = FusionTable::new(vec![1, 2], vec![0, 1], cyclic(2), vec![0; 8]);
        assert!(err.is_err(), "dimension 2 inside the invertible block");
        let err = FusionTable::new(vec![1, 1], vec![0, 0], cyclic(2), vec![0; 8]);
        assert!(err.is_err(), "dual not matching group inverse");
    }

    #[test]
    fn canonical_json_is_stable() {
        let table = s3_character_table();
        let a = table.to_canonical_json();
        let b = table.to_canonical_json();
        assert_eq!(a, b);
        assert!(a.contains("\"rank\":3"));
        let back: FusionTable = serde_json::from_str(&a).unwrap();
        assert_eq!(back, table);
    }

    #[test]
    fn dihedral_group_ring_of_order_16_verifies() {
        let table = FusionTable::group_ring(dihedral(8));
        assert_eq!(table.verify(), vec![]);
    }
}
