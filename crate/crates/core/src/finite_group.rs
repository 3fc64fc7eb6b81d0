//! Finite groups as multiplication tables, and exhaustive homomorphism
//! counting into them.
//!
//! Counting maps into small targets is the finite-quotient probe used to
//! compare fundamental groups before and after presentation moves: the count
//! is a group invariant, cheap to recompute, and exact.

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

/// A finite group given by its full multiplication table. Construction
/// verifies all the axioms by exhaustive check, so a value of this type is
/// always an actual group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    multiplication: Vec<usize>, // order x order, row-major
    inverse: Vec<usize>,
    identity: usize,
}

impl FiniteGroupTable {
    pub fn new(order: usize, multiplication: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("group order must be positive".into()));
        }
        if multiplication.len() != order * order {
            return Err(Error::Domain(format!(
                "multiplication table must have {} entries, got {}",
                order * order,
                multiplication.len()
            )));
        }
        if multiplication.iter().any(|&v| v >= order) {
            return Err(Error::Domain("table entry out of range".into()));
        }
        let mul = |a: usize, b: usize| multiplication[a * order + b];

        let identity = (0..order)
            .find(|&e| (0..order).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| Error::Domain("table has no identity element".into()))?;

        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                    .ok_or_else(|| Error::Domain(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<usize>>>()?;

        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::Domain(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }

        Ok(FiniteGroupTable {
            order,
            multiplication,
            inverse,
            identity,
        })
    }

    /// Cyclic group Z/n.
    pub fn cyclic(n: usize) -> Self {
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = (a + b) % n;
            }
        }
        FiniteGroupTable::new(n, table).expect("cyclic table is a group")
    }

    /// Symmetric group on `n` letters, elements in lexicographic order of
    /// their permutation tuples. Intended for small probes (n <= 5).
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let order = perms.len();
        let index: std::collections::HashMap<Vec<usize>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut table = vec![0; order * order];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                // (a·b)(x) = a(b(x))
                let composed: Vec<usize> = (0..n).map(|x| pa[pb[x]]).collect();
                table[a * order + b] = index[&composed];
            }
        }
        FiniteGroupTable::new(order, table).expect("symmetric table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.multiplication[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Evaluates a word at the given generator assignment.
    pub fn evaluate(&self, w: &Word, assignment: &[usize]) -> usize {
        let mut acc = self.identity;
        for l in w.letters() {
            let g = assignment[l.gen];
            let g = if l.exp > 0 { g } else { self.inverse[g] };
            acc = self.mul(acc, g);
        }
        acc
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    heap_permute(&mut current, n, &mut out);
    out.sort();
    out
}

fn heap_permute(arr: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(arr.clone());
        return;
    }
    for i in 0..k {
        heap_permute(arr, k - 1, out);
        if k.is_multiple_of(2) {
            arr.swap(i, k - 1);
        } else {
            arr.swap(0, k - 1);
        }
    }
}

/// Counts all homomorphisms from the presented group into `target` by
/// exhaustive backtracking. Each relator is checked as soon as the last
/// generator it mentions is assigned, so dead branches are pruned early;
/// the search is nevertheless complete and the count exact.
///
/// `cap` bounds the raw assignment space: if `order^generators > cap` the
/// search is refused with the required budget, and no partial answer is
/// returned.
///
/// ```
/// use cacime_core::{count_homs, FiniteGroupTable, Presentation, Word};
/// // Z² into S3: one hom per commuting pair
/// let p = Presentation::with_default_names(
///     2,
///     vec![cacime_core::commutator(&Word::generator(0), &Word::generator(1))],
/// )
/// .unwrap();
/// assert_eq!(count_homs(&p, &FiniteGroupTable::symmetric(3), 1000).unwrap(), 18);
/// ```
pub fn count_homs(p: &Presentation, target: &FiniteGroupTable, cap: u64) -> Result<u64> {
    let n = p.generator_count();
    let mut required: u128 = 1;
    for _ in 0..n {
        required = required.saturating_mul(target.order() as u128);
    }
    if required > u128::from(cap) {
        return Err(Error::ResourceLimit {
            required,
            cap: u128::from(cap),
        });
    }

    // relators indexed by the last generator they mention; empty relators
    // are identically satisfied
    let mut by_last_gen: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for r in p.relators() {
        if let Some(max) = r.max_generator() {
            by_last_gen[max].push(r);
        }
    }

    let mut assignment = vec![0usize; n];
    let mut count = 0u64;
    search(target, &by_last_gen, &mut assignment, 0, &mut count);
    Ok(count)
}

fn search(
    target: &FiniteGroupTable,
    by_last_gen: &[Vec<&Word>],
    assignment: &mut [usize],
    depth: usize,
    count: &mut u64,
) {
    if depth == assignment.len() {
        *count += 1;
        return;
    }
    for g in 0..target.order() {
        assignment[depth] = g;
        let ok = by_last_gen[depth]
            .iter()
            .all(|r| target.evaluate(r, assignment) == target.identity());
        if ok {
            search(target, by_last_gen, assignment, depth + 1, count);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::commutator;

    #[test]
    fn cyclic_basics() {
        let z4 = FiniteGroupTable::cyclic(4);
        assert_eq!(z4.order(), 4);
        assert_eq!(z4.identity(), 0);
        assert_eq!(z4.mul(3, 2), 1);
        assert_eq!(z4.inverse(3), 1);
    }

    #[test]
    fn symmetric_group_order() {
        assert_eq!(FiniteGroupTable::symmetric(3).order(), 6);
        assert_eq!(FiniteGroupTable::symmetric(4).order(), 24);
    }

    #[test]
    fn bad_tables_rejected() {
        // constant table: no identity
        assert!(FiniteGroupTable::new(2, vec![0, 0, 0, 0]).is_err());
        assert!(FiniteGroupTable::new(2, vec![0, 1, 1]).is_err());
        assert!(FiniteGroupTable::new(0, vec![]).is_err());
    }

    #[test]
    fn forced_trivial_image() {
        // <x | x>: x must map to the identity
        let p = Presentation::with_default_names(1, vec![Word::generator(0)]).unwrap();
        let s3 = FiniteGroupTable::symmetric(3);
        assert_eq!(count_homs(&p, &s3, 1000).unwrap(), 1);
    }

    #[test]
    fn commuting_pairs_in_s3() {
        // Z^2 -> S3: count of commuting pairs. Independent oracle: enumerate
        // all 36 pairs directly.
        let s3 = FiniteGroupTable::symmetric(3);
        let mut expected = 0u64;
        for a in 0..6 {
            for b in 0..6 {
                if s3.mul(a, b) == s3.mul(b, a) {
                    expected += 1;
                }
            }
        }
        assert_eq!(expected, 18);

        let p = Presentation::with_default_names(
            2,
            vec![commutator(&Word::generator(0), &Word::generator(1))],
        )
        .unwrap();
        assert_eq!(count_homs(&p, &s3, 100).unwrap(), expected);
    }

    #[test]
    fn abelian_target_ignores_surface_relator() {
        // genus-2 surface group into Z/2: relator is a product of
        // commutators, so all 2^4 assignments work
        let r = commutator(&Word::generator(0), &Word::generator(1))
            .concat(&commutator(&Word::generator(2), &Word::generator(3)));
        let p = Presentation::with_default_names(4, vec![r]).unwrap();
        let z2 = FiniteGroupTable::cyclic(2);
        assert_eq!(count_homs(&p, &z2, 100).unwrap(), 16);
    }

    #[test]
    fn cap_refused_exactly() {
        let p = Presentation::with_default_names(3, vec![]).unwrap();
        let z4 = FiniteGroupTable::cyclic(4);
        assert_eq!(count_homs(&p, &z4, 64).unwrap(), 64);
        match count_homs(&p, &z4, 63) {
            Err(Error::ResourceLimit { required, cap }) => {
                assert_eq!(required, 64);
                assert_eq!(cap, 63);
            }
            other => panic!("expected resource limit, got {other:?}"),
        }
    }
}
