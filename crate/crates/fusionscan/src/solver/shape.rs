//! Concrete simple-object indexing for one search instance.
//!
//! Simples are numbered `0..rank`: first the invertibles `0..n0` (index 0
//! is the unit, multiplication given by the chosen group table), then the
//! noninvertible dimension classes in ascending dimension order.

use crate::group::GroupTable;
use crate::signature::TypeSignature;

/// One class of equal-dimension noninvertible simples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimClass {
    /// First simple index of the class.
    pub start: usize,
    /// Number of simples in the class.
    pub len: usize,
    /// Common dimension.
    pub dim: u64,
}

/// The fixed frame of one search instance: dimensions, invertible group,
/// and duality.
#[derive(Debug, Clone)]
pub struct Shape {
    signature: TypeSignature,
    dims: Vec<u64>,
    n0: usize,
    group: GroupTable,
    classes: Vec<DimClass>,
    /// Duality permutation; invertibles map to group inverses.
    sigma: Vec<usize>,
}

impl Shape {
    /// Builds the frame for `sig` with the given invertible group and the
    /// identity duality on noninvertibles (replace via
    /// [`Shape::with_duality`]).
    pub fn new(sig: &TypeSignature, group: GroupTable) -> Self {
        let n0 = usize::try_from(sig.invertible_count()).expect("invertible count fits usize");
        assert_eq!(group.order(), n0, "group order must match invertible count");
        let mut dims = vec![1u64; n0];
        let mut classes = Vec::new();
        for entry in sig.noninvertible_entries() {
            let len = usize::try_from(entry.count).expect("class size fits usize");
            classes.push(DimClass {
                start: dims.len(),
                len,
                dim: entry.dim,
            });
            dims.extend(std::iter::repeat_n(entry.dim, len));
        }
        let sigma = (0..n0)
            .map(|g| group.inverse(g))
            .chain(n0..dims.len())
            .collect();
        Shape {
            signature: sig.clone(),
            dims,
            n0,
            group,
            classes,
            sigma,
        }
    }

    /// The same frame with a different duality on the noninvertibles.
    /// `sigma` must be a dimension-preserving involution fixing the
    /// invertible block to group inverses.
    pub fn with_duality(&self, sigma: Vec<usize>) -> Self {
        debug_assert_eq!(sigma.len(), self.rank());
        debug_assert!((0..self.rank()).all(|i| sigma[sigma[i]] == i));
        debug_assert!((0..self.rank()).all(|i| self.dims[sigma[i]] == self.dims[i]));
        debug_assert!((0..self.n0).all(|g| sigma[g] == self.group.inverse(g)));
        Shape {
            sigma,
            ..self.clone()
        }
    }

    pub fn signature(&self) -> &TypeSignature {
        &self.signature
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    /// Number of invertible simples.
    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn dim(&self, a: usize) -> u64 {
        self.dims[a]
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn classes(&self) -> &[DimClass] {
        &self.classes
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// The dual of simple `a`.
    pub fn dual(&self, a: usize) -> usize {
        self.sigma[a]
    }

    pub fn is_invertible(&self, a: usize) -> bool {
        a < self.n0
    }
}
