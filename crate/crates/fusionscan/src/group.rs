//! Finite groups as explicit multiplication tables, with a built-in catalog
//! of all isomorphism classes of orders 1 through 16.
//!
//! The solver enumerates group structures on the invertible simple objects,
//! so the catalog must be complete up to isomorphism for the orders it
//! claims. Completeness for orders <= 16 follows from the classical
//! classification counts (1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14),
//! which the tests assert together with pairwise non-isomorphism.

use serde::{Deserialize, Serialize};

/// Largest group order for which [`group_catalog`] is complete.
pub const MAX_CATALOG_ORDER: usize = 16;

/// A finite group given by its multiplication table. Element 0 is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    /// Human-readable structure name, e.g. `"C4xC2"`.
    name: String,
    order: usize,
    /// Row-major table: `mult[a * order + b]` is the product `a * b`.
    mult: Vec<u8>,
}

/// Errors from group table validation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("element {0} has no entry for index 0 as identity")]
    BrokenIdentity(usize),
    #[error("element {0} has no inverse")]
    MissingInverse(usize),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("table entry out of range at ({0}, {1})")]
    OutOfRange(usize, usize),
}

impl GroupTable {
    fn from_fn(name: &str, order: usize, mult: impl Fn(usize, usize) -> usize) -> Self {
        assert!(order >= 1 && order <= u8::MAX as usize);
        let mut table = vec![0u8; order * order];
        for a in 0..order {
            for b in 0..order {
                let p = mult(a, b);
                assert!(p < order, "{name}: product {a}*{b} out of range");
                table[a * order + b] = p as u8;
            }
        }
        let group = GroupTable {
            name: name.to_string(),
            order,
            mult: table,
        };
        debug_assert_eq!(group.verify(), Ok(()), "{name}: invalid construction");
        group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The product `a * b`.
    #[inline]
    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    /// The inverse of `a`.
    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mult(a, b) == 0)
            .expect("verified groups have inverses")
    }

    /// Multiplicative order of element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut power = a;
        let mut n = 1;
        while power != 0 {
            power = self.mult(power, a);
            n += 1;
        }
        n
    }

    /// Checks the group axioms directly on the table.
    pub fn verify(&self) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                if self.mult(a, b) >= n {
                    return Err(GroupError::OutOfRange(a, b));
                }
            }
        }
        for a in 0..n {
            if self.mult(0, a) != a || self.mult(a, 0) != a {
                return Err(GroupError::BrokenIdentity(a));
            }
            if !(0..n).any(|b| self.mult(a, b) == 0 && self.mult(b, a) == 0) {
                return Err(GroupError::MissingInverse(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mult(self.mult(a, b), c) != self.mult(a, self.mult(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// All subgroups as element bitmasks (bit `i` set iff element `i` is a
    /// member), sorted ascending. Practical because catalog orders are <= 16.
    pub fn subgroups(&self) -> Vec<u32> {
        let n = self.order;
        assert!(n <= 32, "subgroup enumeration expects small groups");
        let mut found = std::collections::BTreeSet::new();
        found.insert(1u32); // trivial subgroup {0}
        let mut frontier = vec![1u32];
        while let Some(mask) = frontier.pop() {
            for g in 1..n {
                if mask & (1 << g) != 0 {
                    continue;
                }
                let extended = self.closure(mask | (1 << g));
                if found.insert(extended) {
                    frontier.push(extended);
                }
            }
        }
        found.into_iter().collect()
    }

    /// Closure of an element set under multiplication (inverses follow from
    /// finiteness).
    pub fn closure(&self, mut mask: u32) -> u32 {
        loop {
            let mut grown = mask;
            for a in 0..self.order {
                if mask & (1 << a) == 0 {
                    continue;
                }
                for b in 0..self.order {
                    if mask & (1 << b) != 0 {
                        grown |= 1 << self.mult(a, b);
                    }
                }
            }
            if grown == mask {
                return mask;
            }
            mask = grown;
        }
    }
}

/// All groups of the given order up to isomorphism, in a fixed order.
///
/// Returns `None` for orders outside the catalog (0 or above
/// [`MAX_CATALOG_ORDER`]); the solver reports those as unsupported.
pub fn group_catalog(order: usize) -> Option<Vec<GroupTable>> {
    let groups = match order {
        1..=16 => catalog_entry(order),
        _ => return None,
    };
    Some(groups)
}

fn catalog_entry(order: usize) -> Vec<GroupTable> {
    match order {
        // Prime orders and other orders with only the cyclic group.
        1 | 2 | 3 | 5 | 7 | 11 | 13 | 15 => vec![cyclic(order)],
        4 => vec![cyclic(4), direct_product("C2xC2", &cyclic(2), &cyclic(2))],
        6 => vec![cyclic(6), dihedral(3)],
        8 => {
            let c2 = cyclic(2);
            vec![
                cyclic(8),
                direct_product("C4xC2", &cyclic(4), &c2),
                direct_product("C2xC2xC2", &direct_product("C2xC2", &c2, &c2), &c2),
                dihedral(4),
                quaternion(2),
            ]
        }
        9 => vec![cyclic(9), direct_product("C3xC3", &cyclic(3), &cyclic(3))],
        10 => vec![cyclic(10), dihedral(5)],
        12 => vec![
            cyclic(12),
            direct_product("C6xC2", &cyclic(6), &cyclic(2)),
            dihedral(6),
            alternating4(),
            quaternion(3), // dicyclic group Dic3
        ],
        14 => vec![cyclic(14), dihedral(7)],
        16 => catalog_order16(),
        _ => unreachable!("catalog_entry called outside 1..=16"),
    }
}

fn catalog_order16() -> Vec<GroupTable> {
    let c2 = cyclic(2);
    let klein = direct_product("C2xC2", &c2, &c2);
    vec![
        // Abelian: the five partitions of 4 as cyclic factors.
        cyclic(16),
        direct_product("C8xC2", &cyclic(8), &c2),
        direct_product("C4xC4", &cyclic(4), &cyclic(4)),
        direct_product("C4xC2xC2", &cyclic(4), &klein),
        direct_product("C2xC2xC2xC2", &klein, &klein),
        // Non-abelian with an element of order 8: dihedral, semidihedral,
        // modular, generalized quaternion.
        dihedral(8),
        semidirect_cyclic("SD16", 8, 2, 3),
        semidirect_cyclic("M4(2)", 8, 2, 5),
        quaternion(4),
        // Non-abelian of exponent 4.
        direct_product("D8xC2", &dihedral(4), &c2),
        direct_product("Q8xC2", &quaternion(2), &c2),
        semidirect_cyclic("C4:C4", 4, 4, 3),
        semidirect_swap_klein(),
        pauli16(),
    ]
}

/// Cyclic group of order `n`.
pub fn cyclic(n: usize) -> GroupTable {
    GroupTable::from_fn(&format!("C{n}"), n, |a, b| (a + b) % n)
}

/// Dihedral group of order `2n` (symmetries of the regular `n`-gon).
pub fn dihedral(n: usize) -> GroupTable {
    semidirect_cyclic(&format!("D{}", 2 * n), n, 2, n - 1)
}

/// Semidirect product `Cn x| Cm` where the generator of `Cm` acts on `Cn`
/// by raising to the `k`-th power. Requires `k^m = 1 (mod n)`.
fn semidirect_cyclic(name: &str, n: usize, m: usize, k: usize) -> GroupTable {
    let mut powers = vec![1usize; m];
    for j in 1..m {
        powers[j] = powers[j - 1] * k % n;
    }
    assert_eq!(powers[m - 1] * k % n, 1, "{name}: action must have order dividing {m}");
    GroupTable::from_fn(name, n * m, |x, y| {
        let (a, i) = (x / m, x % m);
        let (b, j) = (y / m, y % m);
        ((a + b * powers[i]) % n) * m + (i + j) % m
    })
}

/// Generalized quaternion (dicyclic) group of order `4m`: generators `x` of
/// order `2m` and `y` with `y^2 = x^m`, `y x y^-1 = x^-1`.
pub fn quaternion(m: usize) -> GroupTable {
    let n = 2 * m;
    GroupTable::from_fn(&format!("Q{}", 4 * m), 4 * m, |p, q| {
        let (a, i) = (p / 2, p % 2);
        let (b, j) = (q / 2, q % 2);
        if i == 0 {
            ((a + b) % n) * 2 + j
        } else {
            let base = (a + n - b % n) % n;
            if j == 0 {
                base * 2 + 1
            } else {
                ((base + m) % n) * 2
            }
        }
    })
}

/// Alternating group A4 as compositions of even permutations of 4 points,
/// indexed lexicographically with the identity first.
fn alternating4() -> GroupTable {
    let mut perms: Vec<[u8; 4]> = Vec::new();
    let mut items = [0u8, 1, 2, 3];
    permutations(&mut items, 0, &mut |p| {
        if is_even(p) {
            perms.push(*p);
        }
    });
    perms.sort();
    debug_assert_eq!(perms[0], [0, 1, 2, 3]);
    GroupTable::from_fn("A4", 12, |a, b| {
        let composed = compose(&perms[a], &perms[b]);
        perms.binary_search(&composed).expect("A4 is closed")
    })
}

/// `(C2xC2) x| C4` where the generator of `C4` swaps the two `C2` factors.
fn semidirect_swap_klein() -> GroupTable {
    GroupTable::from_fn("(C2xC2):C4", 16, |x, y| {
        let (a, i) = (x / 4, x % 4);
        let (b, j) = (y / 4, y % 4);
        let acted = if i % 2 == 1 { (b & 1) << 1 | (b >> 1) } else { b };
        (a ^ acted) * 4 + (i + j) % 4
    })
}

/// The Pauli group on one qubit, i.e. the central product of D8 and C4:
/// phases `i^p` times the symplectic part `(x, z)`, with
/// `(p1,x1,z1)(p2,x2,z2) = (p1+p2+2*z1*x2, x1+x2, z1+z2)`.
fn pauli16() -> GroupTable {
    GroupTable::from_fn("D8oC4", 16, |u, v| {
        let (p1, x1, z1) = (u / 4, (u / 2) % 2, u % 2);
        let (p2, x2, z2) = (v / 4, (v / 2) % 2, v % 2);
        let phase = (p1 + p2 + 2 * z1 * x2) % 4;
        phase * 4 + ((x1 ^ x2) * 2 + (z1 ^ z2))
    })
}

/// Direct product with identity `(0, 0)` at index 0.
fn direct_product(name: &str, a: &GroupTable, b: &GroupTable) -> GroupTable {
    let (na, nb) = (a.order(), b.order());
    GroupTable::from_fn(name, na * nb, |x, y| {
        a.mult(x / nb, y / nb) * nb + b.mult(x % nb, y % nb)
    })
}

fn compose(p: &[u8; 4], q: &[u8; 4]) -> [u8; 4] {
    // (p . q)(i) = p(q(i))
    [
        p[q[0] as usize],
        p[q[1] as usize],
        p[q[2] as usize],
        p[q[3] as usize],
    ]
}

fn is_even(p: &[u8; 4]) -> bool {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn permutations(items: &mut [u8; 4], start: usize, emit: &mut impl FnMut(&[u8; 4])) {
    if start == items.len() {
        emit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, emit);
        items.swap(start, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Classification counts for orders 1..=16.
    const CLASS_COUNTS: [usize; 16] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];

    #[test]
    fn catalog_matches_classification_counts() {
        for order in 1..=MAX_CATALOG_ORDER {
            let groups = group_catalog(order).unwrap();
            assert_eq!(
                groups.len(),
                CLASS_COUNTS[order - 1],
                "wrong number of groups of order {order}"
            );
            for g in &groups {
                assert_eq!(g.order(), order, "{}", g.name());
                assert_eq!(g.verify(), Ok(()), "{}", g.name());
            }
        }
        assert!(group_catalog(0).is_none());
        assert!(group_catalog(17).is_none());
    }

    #[test]
    fn catalog_groups_are_pairwise_nonisomorphic() {
        for order in 1..=MAX_CATALOG_ORDER {
            let groups = group_catalog(order).unwrap();
            for i in 0..groups.len() {
                for j in i + 1..groups.len() {
                    assert!(
                        !isomorphic(&groups[i], &groups[j]),
                        "{} and {} of order {order} are isomorphic",
                        groups[i].name(),
                        groups[j].name()
                    );
                }
            }
        }
    }

    #[test]
    fn known_structure_spot_checks() {
        let q8 = quaternion(2);
        // Q8 has a unique involution (x^2 = -1).
        let involutions = (1..8).filter(|&a| q8.element_order(a) == 2).count();
        assert_eq!(involutions, 1);

        let d8 = dihedral(4);
        let involutions = (1..8).filter(|&a| d8.element_order(a) == 2).count();
        assert_eq!(involutions, 5);

        let a4 = alternating4();
        let order3 = (0..12).filter(|&a| a4.element_order(a) == 3).count();
        assert_eq!(order3, 8);
        assert_eq!(a4.subgroups().len(), 10);

        // C6 = C3 x C2 is cyclic; D6 = S3 is not abelian.
        assert!(is_abelian(&cyclic(6)));
        assert!(!is_abelian(&dihedral(3)));
    }

    #[test]
    fn subgroups_are_closed_and_satisfy_lagrange() {
        for order in 1..=12 {
            for g in group_catalog(order).unwrap() {
                for mask in g.subgroups() {
                    assert_eq!(g.closure(mask), mask);
                    assert_eq!(mask & 1, 1, "subgroup must contain the identity");
                    let size = mask.count_ones() as usize;
                    assert_eq!(order % size, 0, "Lagrange violated in {}", g.name());
                }
            }
        }
        // Klein four-group: trivial, three C2s, the whole group.
        let klein = &group_catalog(4).unwrap()[1];
        assert_eq!(klein.subgroups().len(), 5);
    }

    fn is_abelian(g: &GroupTable) -> bool {
        (0..g.order()).all(|a| (0..g.order()).all(|b| g.mult(a, b) == g.mult(b, a)))
    }

    /// Backtracking isomorphism test on generator images; adequate for the
    /// catalog's sizes.
    fn isomorphic(a: &GroupTable, b: &GroupTable) -> bool {
        if a.order() != b.order() {
            return false;
        }
        let n = a.order();
        let mut orders_a: Vec<_> = (0..n).map(|x| a.element_order(x)).collect();
        let mut orders_b: Vec<_> = (0..n).map(|x| b.element_order(x)).collect();
        let map_orders = (orders_a.clone(), orders_b.clone());
        orders_a.sort_unstable();
        orders_b.sort_unstable();
        if orders_a != orders_b {
            return false;
        }
        // Build the image element-by-element; extend by closure as we map
        // generators, so partial maps stay partial homomorphisms.
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        image[0] = 0;
        used[0] = true;
        extend_map(a, b, &map_orders, &mut image, &mut used)
    }

    fn extend_map(
        a: &GroupTable,
        b: &GroupTable,
        orders: &(Vec<usize>, Vec<usize>),
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(x) = image.iter().position(|&y| y == usize::MAX) else {
            return true; // total map; homomorphism checks passed on the way
        };
        for y in 0..b.order() {
            if used[y] || orders.0[x] != orders.1[y] {
                continue;
            }
            let snapshot_image = image.clone();
            let snapshot_used = used.clone();
            image[x] = y;
            used[y] = true;
            if propagate_products(a, b, image, used) && extend_map(a, b, orders, image, used) {
                return true;
            }
            *image = snapshot_image;
            *used = snapshot_used;
        }
        false
    }

    /// Forces images of products of already-mapped elements; fails on clash.
    fn propagate_products(
        a: &GroupTable,
        b: &GroupTable,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        loop {
            let mut changed = false;
            for x in 0..a.order() {
                if image[x] == usize::MAX {
                    continue;
                }
                for z in 0..a.order() {
                    if image[z] == usize::MAX {
                        continue;
                    }
                    let product = a.mult(x, z);
                    let expected = b.mult(image[x], image[z]);
                    if image[product] == usize::MAX {
                        if used[expected] {
                            return false; // not injective
                        }
                        image[product] = expected;
                        used[expected] = true;
                        changed = true;
                    } else if image[product] != expected {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }
}
