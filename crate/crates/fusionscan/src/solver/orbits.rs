//! Orbit variables: one search variable per symmetry orbit of index
//! triples.
//!
//! The reciprocity and conjugation laws tie the six cells
//!
//! ```text
//! (a,b,c)  (a*,c,b)  (c,b*,a)  (b*,a*,c*)  (b,c*,a*)  (c*,a,b*)
//! ```
//!
//! to one common value (`*` is the duality). Canonicalizing every triple to
//! the least orbit element makes those laws structural: the solver never
//! re-derives them, and each orbit is one variable whose domain is capped
//! by the sharpest dimension bound over the orbit,
//! `min floor(dim(a)*dim(b)/dim(c))`.
//!
//! Cells fully determined by the frame are pre-assigned here: the group
//! block, unit rows, dual-law columns, and products with an invertible
//! landing outside the factor's dimension class.

use super::shape::Shape;

/// All six orbit elements of a triple (with possible repeats).
fn orbit(shape: &Shape, t: (usize, usize, usize)) -> [(usize, usize, usize); 6] {
    let (a, b, c) = t;
    let s = |i: usize| shape.dual(i);
    [
        (a, b, c),
        (s(a), c, b),
        (c, s(b), a),
        (s(b), s(a), s(c)),
        (b, s(c), s(a)),
        (s(c), a, s(b)),
    ]
}

/// One row constraint: the dimension law for a fixed factor pair.
#[derive(Debug, Clone)]
pub struct Row {
    pub a: usize,
    pub b: usize,
    /// `dim(a) * dim(b)`.
    pub target: u64,
    /// Orbit variables in the row with their summed cell weights: a
    /// variable covering row cells `c1, .., ck` contributes weight
    /// `dim(c1)+..+dim(ck)`.
    pub terms: Vec<(u32, u64)>,
}

/// One stabilizer constraint: the invertibles fixing a noninvertible
/// simple on the left form a subgroup of order dividing its squared
/// dimension.
#[derive(Debug, Clone)]
pub struct Stabilizer {
    pub x: usize,
    /// `cell_vars[g]` is the variable of `(g, x, x)`.
    pub cell_vars: Vec<u32>,
    /// Bitmasks of the admissible subgroups.
    pub subgroup_masks: Vec<u32>,
}

/// Errors from building the variable table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildError {
    /// Some orbit's bound exceeds the 127-value domain representation.
    DomainTooLarge,
    /// Two structural pre-assignments conflict: no table exists.
    Inconsistent,
}

/// The variable layout and structural constraints for one (group, duality)
/// search instance.
#[derive(Debug, Clone)]
pub struct VarTable {
    rank: usize,
    /// Triple index -> orbit variable.
    var_of_triple: Vec<u32>,
    /// Distinct cells of each variable's orbit.
    cells: Vec<Vec<(usize, usize, usize)>>,
    caps: Vec<u8>,
    /// Initial domains after structural pre-assignment.
    domains: Vec<u128>,
    rows: Vec<Row>,
    /// Variable -> rows it appears in.
    var_rows: Vec<Vec<u32>>,
    stabilizers: Vec<Stabilizer>,
    /// Variable -> stabilizer constraints it appears in.
    var_stabs: Vec<Vec<u32>>,
}

impl VarTable {
    pub fn new(shape: &Shape) -> Result<Self, BuildError> {
        let rank = shape.rank();
        let idx = |a: usize, b: usize, c: usize| (a * rank + b) * rank + c;

        // Row sums live in 128-bit reachability sets, so every row target
        // d(a)*d(b) must stay below 128.
        let max_dim = shape.dims().iter().copied().max().unwrap_or(1);
        if max_dim * max_dim > 127 {
            return Err(BuildError::DomainTooLarge);
        }

        // Canonicalize triples into orbit variables.
        let mut var_of_triple = vec![u32::MAX; rank * rank * rank];
        let mut cells: Vec<Vec<(usize, usize, usize)>> = Vec::new();
        let mut caps: Vec<u8> = Vec::new();
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    if var_of_triple[idx(a, b, c)] != u32::MAX {
                        continue;
                    }
                    let var = cells.len() as u32;
                    let mut members: Vec<(usize, usize, usize)> =
                        orbit(shape, (a, b, c)).to_vec();
                    members.sort_unstable();
                    members.dedup();
                    let cap = members
                        .iter()
                        .map(|&(a, b, c)| shape.dim(a) * shape.dim(b) / shape.dim(c))
                        .min()
                        .expect("orbit is nonempty");
                    let cap = u8::try_from(cap.min(255)).expect("bounded above by 255");
                    if cap > 127 {
                        return Err(BuildError::DomainTooLarge);
                    }
                    for &(a, b, c) in &members {
                        var_of_triple[idx(a, b, c)] = var;
                    }
                    cells.push(members);
                    caps.push(cap);
                }
            }
        }

        // Full domains, then structural pre-assignment.
        let mut domains: Vec<u128> = caps
            .iter()
            .map(|&cap| {
                if cap == 127 {
                    u128::MAX
                } else {
                    (1u128 << (cap + 1)) - 1
                }
            })
            .collect();
        let mut assign = |var: u32, value: u8| -> Result<(), BuildError> {
            let mask = 1u128 << value;
            if domains[var as usize] & mask == 0 {
                return Err(BuildError::Inconsistent);
            }
            domains[var as usize] = mask;
            Ok(())
        };
        let n0 = shape.n0();
        let group = shape.group();
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    let var = var_of_triple[idx(a, b, c)];
                    match (a < n0, b < n0, c < n0) {
                        // Group block.
                        (true, true, true) => {
                            assign(var, u8::from(group.mult(a, b) == c))?;
                        }
                        // A product with an invertible factor is a simple
                        // of the factor's dimension.
                        (true, false, false) | (false, true, false) => {
                            if shape.dim(a) * shape.dim(b) != shape.dim(c) {
                                assign(var, 0)?;
                            } else if a == 0 || b == 0 {
                                // Unit law pins the whole row.
                                let other = if a == 0 { b } else { a };
                                assign(var, u8::from(other == c))?;
                            }
                        }
                        // Dual law: the unit appears exactly in x (x) x*.
                        (false, false, true) => {
                            if c == 0 {
                                assign(var, u8::from(b == shape.dual(a)))?;
                            }
                        }
                        // Cells with two invertible indices and one
                        // noninvertible have orbit cap 0 already.
                        _ => {}
                    }
                }
            }
        }

        // Row constraints, with cells grouped by variable.
        let mut rows = Vec::with_capacity(rank * rank);
        let mut var_rows: Vec<Vec<u32>> = vec![Vec::new(); cells.len()];
        for a in 0..rank {
            for b in 0..rank {
                let mut terms: Vec<(u32, u64)> = Vec::new();
                for c in 0..rank {
                    let var = var_of_triple[idx(a, b, c)];
                    match terms.iter_mut().find(|(v, _)| *v == var) {
                        Some((_, w)) => *w += shape.dim(c),
                        None => terms.push((var, shape.dim(c))),
                    }
                }
                let row_id = rows.len() as u32;
                for &(v, _) in &terms {
                    var_rows[v as usize].push(row_id);
                }
                rows.push(Row {
                    a,
                    b,
                    target: shape.dim(a) * shape.dim(b),
                    terms,
                });
            }
        }

        // Stabilizer constraints for every noninvertible simple.
        let all_subgroups = group.subgroups();
        let mut stabilizers = Vec::new();
        let mut var_stabs: Vec<Vec<u32>> = vec![Vec::new(); cells.len()];
        for x in n0..rank {
            let d2 = shape.dim(x) * shape.dim(x);
            let subgroup_masks: Vec<u32> = all_subgroups
                .iter()
                .copied()
                .filter(|h| d2 % u64::from(h.count_ones()) == 0)
                .collect();
            let cell_vars: Vec<u32> = (0..n0).map(|g| var_of_triple[idx(g, x, x)]).collect();
            let stab_id = stabilizers.len() as u32;
            for &v in &cell_vars {
                if !var_stabs[v as usize].contains(&stab_id) {
                    var_stabs[v as usize].push(stab_id);
                }
            }
            stabilizers.push(Stabilizer {
                x,
                cell_vars,
                subgroup_masks,
            });
        }

        Ok(VarTable {
            rank,
            var_of_triple,
            cells,
            caps,
            domains,
            rows,
            var_rows,
            stabilizers,
            var_stabs,
        })
    }

    pub fn var_count(&self) -> usize {
        self.cells.len()
    }

    #[inline]
    pub fn var_of(&self, a: usize, b: usize, c: usize) -> u32 {
        self.var_of_triple[(a * self.rank + b) * self.rank + c]
    }

    /// The distinct cells tied to a variable, in lexicographic order; the
    /// first one is the orbit's canonical name.
    pub fn cells_of(&self, var: u32) -> &[(usize, usize, usize)] {
        &self.cells[var as usize]
    }

    pub fn cap(&self, var: u32) -> u8 {
        self.caps[var as usize]
    }

    /// Initial domains after structural pre-assignment.
    pub fn initial_domains(&self) -> &[u128] {
        &self.domains
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn rows_of_var(&self, var: u32) -> &[u32] {
        &self.var_rows[var as usize]
    }

    pub fn stabilizers(&self) -> &[Stabilizer] {
        &self.stabilizers
    }

    pub fn stabs_of_var(&self, var: u32) -> &[u32] {
        &self.var_stabs[var as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;
    use crate::signature::TypeSignature;

    fn shape(text: &str) -> Shape {
        let sig: TypeSignature = text.parse().unwrap();
        let n0 = usize::try_from(sig.invertible_count()).unwrap();
        Shape::new(&sig, cyclic(n0))
    }

    #[test]
    fn orbits_tie_reciprocal_cells_together() {
        let sh = shape("(1,2;2,1)");
        let vars = VarTable::new(&sh).unwrap();
        // (g,x,x), (g^-1,x,x) and (x,x*,g) share one orbit.
        assert_eq!(vars.var_of(1, 2, 2), vars.var_of(2, 2, 1));
        // Reciprocity mate of (x,x,g) is the action cell (x*,g,x).
        assert_eq!(vars.var_of(2, 2, 1), vars.var_of(2, 1, 2));
    }

    #[test]
    fn group_block_is_pre_assigned() {
        let sh = shape("(1,2;2,1)");
        let vars = VarTable::new(&sh).unwrap();
        let dom = vars.initial_domains();
        assert_eq!(dom[vars.var_of(1, 1, 0) as usize], 0b10); // g*g = 1
        assert_eq!(dom[vars.var_of(1, 1, 1) as usize], 0b01);
        assert_eq!(dom[vars.var_of(0, 1, 1) as usize], 0b10);
    }

    #[test]
    fn unit_and_dual_cells_are_pre_assigned() {
        let sh = shape("(1,1;2,1;3,1)");
        let vars = VarTable::new(&sh).unwrap();
        let dom = vars.initial_domains();
        // 1 (x) x = x.
        assert_eq!(dom[vars.var_of(0, 1, 1) as usize], 0b10);
        assert_eq!(dom[vars.var_of(0, 1, 2) as usize], 0b01);
        // x (x) x* contains the unit once; x (x) y does not.
        assert_eq!(dom[vars.var_of(1, 1, 0) as usize], 0b10);
        assert_eq!(dom[vars.var_of(1, 2, 0) as usize], 0b01);
    }

    #[test]
    fn cross_class_action_cells_are_zeroed() {
        let sh = shape("(1,2;2,1;4,1)");
        let vars = VarTable::new(&sh).unwrap();
        let dom = vars.initial_domains();
        // g (x) x2 cannot contain the dimension-4 simple and vice versa.
        assert_eq!(dom[vars.var_of(1, 2, 3) as usize], 0b01);
        assert_eq!(dom[vars.var_of(1, 3, 2) as usize], 0b01);
    }

    #[test]
    fn caps_use_the_sharpest_orbit_bound() {
        let sh = shape("(1,1;2,1;4,1)");
        let vars = VarTable::new(&sh).unwrap();
        // (y,y,x): naive bound 16/2 = 8, but orbit mate (x*,y,y) gives
        // floor(2*4/4) = 2.
        assert_eq!(vars.cap(vars.var_of(2, 2, 1)), 2);
    }

    #[test]
    fn row_terms_merge_repeated_variables() {
        // With the swap duality, conjugation ties (x,x*,x) to (x,x*,x*),
        // so the row x (x) x* sees them as one variable of weight 4.
        let sh = shape("(1,1;2,2)").with_duality(vec![0, 2, 1]);
        let vars = VarTable::new(&sh).unwrap();
        assert_eq!(vars.var_of(1, 2, 1), vars.var_of(1, 2, 2));
        let row = vars
            .rows()
            .iter()
            .find(|r| r.a == 1 && r.b == 2)
            .unwrap();
        assert_eq!(row.terms.len(), 2);
        let mut weights: Vec<u64> = row.terms.iter().map(|&(_, w)| w).collect();
        weights.sort_unstable();
        assert_eq!(weights, vec![1, 4]);
    }

    #[test]
    fn stabilizer_subgroups_respect_the_dimension_divisibility() {
        let sh = shape("(1,4;2,1)");
        let vars = VarTable::new(&sh).unwrap();
        let stab = &vars.stabilizers()[0];
        // dim^2 = 4: subgroups of C4 of orders 1, 2, 4 all divide 4.
        assert_eq!(stab.subgroup_masks.len(), 3);
        let sh3 = shape("(1,3;3,1)");
        let vars3 = VarTable::new(&sh3).unwrap();
        let stab3 = &vars3.stabilizers()[0];
        // dim^2 = 9: subgroup orders 1 and 3 divide 9.
        assert_eq!(stab3.subgroup_masks.len(), 2);
    }
}
