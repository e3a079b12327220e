//! Enumeration of duality assignments.
//!
//! A duality restricted to one dimension class is an involution of the
//! class. Relabeling the simples within a class is a ring isomorphism that
//! preserves the type, and any involution is conjugate under relabeling to
//! the one that transposes the first `k` adjacent pairs and fixes the rest.
//! With symmetry breaking the solver therefore explores one representative
//! per transposition count `k = 0..=len/2`; without it, every involution.

use super::shape::Shape;

/// All involutions of `0..len`, as permutation vectors, in a fixed
/// deterministic order.
fn involutions(len: usize) -> Vec<Vec<usize>> {
    fn extend(perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let i = match used.iter().position(|u| !u) {
            Some(i) => i,
            None => {
                out.push(perm.clone());
                return;
            }
        };
        // Fix i.
        used[i] = true;
        perm[i] = i;
        extend(perm, used, out);
        used[i] = false;
        // Pair i with each larger unused j.
        for j in i + 1..perm.len() {
            if !used[j] {
                used[i] = true;
                used[j] = true;
                perm[i] = j;
                perm[j] = i;
                extend(perm, used, out);
                used[i] = false;
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut vec![0; len], &mut vec![false; len], &mut out);
    out
}

/// Involutions of `0..len` with exactly the first `k` adjacent pairs
/// transposed: `(0 1), (2 3), ..., (2k-2 2k-1)`.
fn paired_prefix(len: usize, k: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..len).collect();
    for i in 0..k {
        perm.swap(2 * i, 2 * i + 1);
    }
    perm
}

/// The dualities to explore for one dimension class.
pub fn class_dualities(len: usize, symmetry_breaking: bool) -> Vec<Vec<usize>> {
    if symmetry_breaking {
        (0..=len / 2).map(|k| paired_prefix(len, k)).collect()
    } else {
        involutions(len)
    }
}

/// Full duality vectors for the shape: the cartesian product of per-class
/// choices, with invertibles fixed to group inverses. Deterministic order.
pub fn duality_assignments(shape: &Shape, symmetry_breaking: bool) -> Vec<Vec<usize>> {
    let base: Vec<usize> = (0..shape.rank())
        .map(|i| {
            if shape.is_invertible(i) {
                shape.group().inverse(i)
            } else {
                i
            }
        })
        .collect();
    let mut result = vec![base];
    for class in shape.classes() {
        let choices = class_dualities(class.len, symmetry_breaking);
        result = result
            .into_iter()
            .flat_map(|partial| {
                choices.iter().map(move |choice| {
                    let mut sigma = partial.clone();
                    for (offset, &target) in choice.iter().enumerate() {
                        sigma[class.start + offset] = class.start + target;
                    }
                    sigma
                })
            })
            .collect();
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_counts_follow_the_telephone_numbers() {
        // 1, 1, 2, 4, 10, 26, 76 involutions on 0..n.
        let expected = [1, 1, 2, 4, 10, 26, 76];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(involutions(n).len(), count, "n = {n}");
        }
    }

    #[test]
    fn involutions_are_involutive() {
        for perm in involutions(5) {
            for i in 0..5 {
                assert_eq!(perm[perm[i]], i);
            }
        }
    }

    #[test]
    fn symmetry_broken_class_choices_count_pairings() {
        assert_eq!(class_dualities(5, true).len(), 3); // k = 0, 1, 2
        assert_eq!(class_dualities(2, true).len(), 2); // k = 0, 1
        assert_eq!(class_dualities(1, true).len(), 1);
        assert_eq!(class_dualities(4, false).len(), 10);
    }

    #[test]
    fn representatives_transpose_adjacent_prefix_pairs() {
        let reps = class_dualities(4, true);
        assert_eq!(reps[0], vec![0, 1, 2, 3]);
        assert_eq!(reps[1], vec![1, 0, 2, 3]);
        assert_eq!(reps[2], vec![1, 0, 3, 2]);
    }
}
