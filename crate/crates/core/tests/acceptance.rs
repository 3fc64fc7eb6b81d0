//! Acceptance suite: one test per certification criterion, each printing a
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! The criteria pin the CaCiMe invariants exactly (χ = 4, H₁ = Z⁶, b₂ = 14,
//! σ = 0), the integer identity suite, hom-count stability under random
//! Tietze moves, the Smith normal form contract on random matrices, and
//! move-invariance of the framed-link engine on random links. Where a value
//! is derived rather than definitional, an independent brute-force oracle in
//! this file recomputes it.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use cacime_core::bundles::{e_prime_spec, e_spec};
use cacime_core::{
    build_bundle, build_cacime, build_cacime_default, characteristic_identities_check, count_homs,
    homology_model_check, multiplicativity_check, puncture_fiber, smith_normal_form,
    surface_presentation, tietze_apply, AbelianInvariants, ChernData, Circle, FiniteGroupTable,
    FramedLink, FreeEndomorphism, IntMatrix, Letter, Presentation, TietzeMove, Word,
};

fn criterion(n: u32, name: &str, budget: Duration, body: impl FnOnce() + UnwindSafe) {
    let start = Instant::now();
    let outcome = catch_unwind(body);
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("acceptance criterion {n} ({name}): PASS [{elapsed:?}]");
        }
        Ok(()) => {
            println!(
                "acceptance criterion {n} ({name}): FAIL [took {elapsed:?}, budget {budget:?}]"
            );
            panic!("criterion {n} exceeded its time budget");
        }
        Err(cause) => {
            println!("acceptance criterion {n} ({name}): FAIL [{elapsed:?}]");
            resume_unwind(cause);
        }
    }
}

// ---------------------------------------------------------------------
// independent oracles
// ---------------------------------------------------------------------

/// Brute-force abelian invariants: textbook diagonalization with first-found
/// pivots and Euclidean reduction, written independently of the library's
/// Smith normal form (no transform tracking, no pivot strategy).
#[allow(clippy::needless_range_loop)]
fn naive_abelian_invariants(relations: &[Vec<i64>], ambient_rank: usize) -> (usize, Vec<u64>) {
    let mut m: Vec<Vec<i128>> = relations
        .iter()
        .map(|row| row.iter().map(|&v| i128::from(v)).collect())
        .collect();
    let rows = m.len();
    let cols = ambient_rank;
    let mut diag: Vec<i128> = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < rows && left < cols {
        // find any nonzero entry
        let mut found = None;
        'outer: for i in top..rows {
            for j in left..cols {
                if m[i][j] != 0 {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = found else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(left, pj);
        }
        loop {
            let mut done = true;
            for i in top + 1..rows {
                while m[i][left] != 0 {
                    let q = m[i][left] / m[top][left];
                    if q != 0 {
                        for j in left..cols {
                            m[i][j] -= q * m[top][j];
                        }
                    }
                    if m[i][left] != 0 {
                        m.swap(top, i);
                        done = false;
                    }
                }
            }
            for j in left + 1..cols {
                while m[top][j] != 0 {
                    let q = m[top][j] / m[top][left];
                    if q != 0 {
                        for i in top..rows {
                            m[i][j] -= q * m[i][left];
                        }
                    }
                    if m[top][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(left, j);
                        }
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        diag.push(m[top][left].abs());
        top += 1;
        left += 1;
    }
    let rank = diag.len();
    // collect torsion by repeated pairwise gcd/lcm until divisibility holds
    let mut torsion: Vec<i128> = diag.into_iter().filter(|&d| d > 1).collect();
    loop {
        let mut fixed = true;
        for i in 0..torsion.len() {
            for j in i + 1..torsion.len() {
                let (a, b) = (torsion[i], torsion[j]);
                if b % a != 0 {
                    let g = gcd_i128(a, b);
                    torsion[i] = g;
                    torsion[j] = a / g * b;
                    fixed = false;
                }
            }
        }
        if fixed {
            break;
        }
    }
    torsion.sort();
    torsion.retain(|&d| d > 1);
    (
        ambient_rank - rank,
        torsion.into_iter().map(|d| d as u64).collect(),
    )
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn invariants_match(inv: &AbelianInvariants, free: usize, torsion: &[u64]) -> bool {
    inv.free_rank == free
        && inv.torsion.len() == torsion.len()
        && inv
            .torsion
            .iter()
            .zip(torsion)
            .all(|(a, &b)| a == &BigInt::from(b))
}

// ---------------------------------------------------------------------
// random generation (seeded, deterministic)
// ---------------------------------------------------------------------

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Word {
    if rank == 0 {
        return Word::identity();
    }
    let len = rng.random_range(0..=max_len);
    Word::reduce((0..len).map(|_| Letter {
        gen: rng.random_range(0..rank),
        exp: if rng.random_bool(0.5) { 1 } else { -1 },
    }))
}

/// A random sequence of restricted Tietze moves. With `generator_moves`
/// the sequence may add/remove defined generators (T3/T4); without, it
/// stays at a fixed generator count (T1/T2 only).
fn random_tietze_variant(
    p: &Presentation,
    rng: &mut ChaCha8Rng,
    moves: usize,
    generator_moves: bool,
) -> Presentation {
    let mut current = p.clone();
    for _ in 0..moves {
        let kind_count = if generator_moves { 5 } else { 3 };
        let mv = match rng.random_range(0..kind_count) {
            0 => {
                let relators = current.relators().len();
                if relators < 2 {
                    continue;
                }
                let target = rng.random_range(0..relators);
                let mut source = rng.random_range(0..relators - 1);
                if source >= target {
                    source += 1;
                }
                TietzeMove::MultiplyRelator {
                    target,
                    source,
                    invert_source: rng.random_bool(0.5),
                    conjugator: random_word(rng, current.generator_count(), 3),
                }
            }
            1 => {
                if current.relators().is_empty() {
                    continue;
                }
                TietzeMove::InvertRelator {
                    target: rng.random_range(0..current.relators().len()),
                }
            }
            2 => {
                if current.relators().is_empty() {
                    continue;
                }
                TietzeMove::ConjugateRelator {
                    target: rng.random_range(0..current.relators().len()),
                    conjugator: random_word(rng, current.generator_count(), 3),
                }
            }
            3 => TietzeMove::AddGenerator {
                name: None,
                word: random_word(rng, current.generator_count(), 3),
            },
            _ => {
                // find a removable generator, if any
                let removable = (0..current.generator_count()).find(|&g| {
                    tietze_apply(&current, &TietzeMove::RemoveGenerator { generator: g }).is_ok()
                });
                match removable {
                    Some(g) => TietzeMove::RemoveGenerator { generator: g },
                    None => continue,
                }
            }
        };
        current = tietze_apply(&current, &mv).expect("generated move is valid");
    }
    current
}

/// A random consistent framed link with verified (made-up but coherent)
/// geometric linking data.
fn random_link(rng: &mut ChaCha8Rng, max_circles: usize) -> FramedLink {
    let n = rng.random_range(1..=max_circles);
    let dotted: Vec<bool> = (0..n).map(|_| rng.random_bool(0.4)).collect();
    let dot_count = dotted.iter().filter(|&&d| d).count();
    let circles: Vec<Circle> = dotted
        .iter()
        .map(|&d| {
            if d {
                Circle::dot()
            } else {
                Circle::handle(random_word(rng, dot_count, 4))
            }
        })
        .collect();

    let dot_positions: Vec<usize> = (0..n).filter(|&i| dotted[i]).collect();
    let mut linking = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let v: i64 = match (dotted[i], dotted[j]) {
                _ if i == j => {
                    if dotted[i] {
                        0
                    } else {
                        rng.random_range(-3..=3)
                    }
                }
                (false, true) => {
                    let dj = dot_positions.iter().position(|&p| p == j).unwrap();
                    circles[i].word.exponent_sum(dj)
                }
                (true, false) => {
                    let di = dot_positions.iter().position(|&p| p == i).unwrap();
                    circles[j].word.exponent_sum(di)
                }
                _ => rng.random_range(-2..=2),
            };
            linking.set(i, j, BigInt::from(v));
            linking.set(j, i, BigInt::from(v));
        }
    }
    FramedLink::new(circles, linking, false).expect("random link is consistent")
}

fn link_chi(l: &FramedLink) -> i64 {
    1 - l.dot_count() as i64 + l.handle_positions().len() as i64
}

fn link_h1_total(l: &FramedLink) -> AbelianInvariants {
    let names: Vec<String> = (0..l.dot_count()).map(|i| format!("g{i}")).collect();
    l.to_presentation(&names).unwrap().abelian_invariants()
}

// ---------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------

#[test]
fn criterion_1_cacime_homology() {
    criterion(
        1,
        "CaCiMe homology H1 = Z^6",
        Duration::from_secs(1),
        || {
            let m = build_cacime_default();
            let h1 = m.h1_total();
            assert_eq!(h1.free_rank, 6);
            assert!(h1.is_torsion_free());
        },
    );
}

#[test]
fn criterion_2_cacime_betti_signature() {
    criterion(
        2,
        "CaCiMe chi = 4, b2 = 14, sigma = 0",
        Duration::from_secs(1),
        || {
            // the hint sigma = 0 is justified by multiplicativity under the
            // free degree-2 cover with chi = 8, sigma = 0
            assert!(multiplicativity_check(8, 0, 2, 4, 0));
            let m = build_cacime_default();
            let report = m.closed_invariants(Some(0)).unwrap();
            assert_eq!(report.chi, 4);
            assert_eq!(report.b2, 14);
            assert_eq!(report.sigma, Some(0));
        },
    );
}

#[test]
fn criterion_3_characteristic_identity_suite() {
    criterion(
        3,
        "integer identity suite with perturbations",
        Duration::from_secs(1),
        || {
            let cacime = ChernData {
                q: 3,
                p_g: 3,
                k2: 8,
                c2: 4,
                sigma: 0,
                b1: 6,
                b2: 14,
            };
            let sym_square = ChernData {
                q: 3,
                p_g: 3,
                k2: 6,
                c2: 6,
                sigma: -2,
                b1: 6,
                b2: 16,
            };
            assert!(characteristic_identities_check(&cacime));
            assert!(characteristic_identities_check(&sym_square));

            for base in [cacime, sym_square] {
                for field in 0..7 {
                    for delta in [-1i64, 1] {
                        let mut c = base;
                        match field {
                            0 => c.q += delta,
                            1 => c.p_g += delta,
                            2 => c.k2 += delta,
                            3 => c.c2 += delta,
                            4 => c.sigma += delta,
                            5 => c.b1 += delta,
                            _ => c.b2 += delta,
                        }
                        assert!(
                            !characteristic_identities_check(&c),
                            "perturbation of field {field} by {delta} must fail: {c:?}"
                        );
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_4_homology_model_uniqueness() {
    criterion(
        4,
        "homology model #7(S2xS2) # 6(S1xS3) and no other",
        Duration::from_secs(1),
        || {
            let report = build_cacime_default().closed_invariants(Some(0)).unwrap();
            for a in 0..=10 {
                for b in 0..=10 {
                    let expected = a == 7 && b == 6;
                    assert_eq!(
                        homology_model_check(&report, a, b),
                        expected,
                        "model check (a = {a}, b = {b})"
                    );
                }
            }
        },
    );
}

#[test]
fn criterion_5_pi1_probe_stability() {
    criterion(
        5,
        "hom counts stable under Tietze moves",
        Duration::from_secs(300),
        || {
            let m = build_cacime_default();
            let p = m.presentation();
            let z2 = FiniteGroupTable::cyclic(2);
            let s3 = FiniteGroupTable::symmetric(3);

            assert_eq!(count_homs(p, &z2, 1 << 20).unwrap(), 64);
            let mut rng = ChaCha8Rng::seed_from_u64(0xCAC1303);
            for variant in 0..20 {
                let q = random_tietze_variant(p, &mut rng, 4, true);
                assert_eq!(
                    count_homs(&q, &z2, 1 << 20).unwrap(),
                    64,
                    "variant {variant} changed the Z/2 hom count"
                );
            }

            // S3 count: recorded, not asserted against an external value,
            // but required to be identical across variants
            let baseline = count_homs(p, &s3, 2_000_000).unwrap();
            println!("  |Hom(pi1(CaCiMe), S3)| = {baseline}");
            for variant in 0..5 {
                let q = random_tietze_variant(p, &mut rng, 3, false);
                assert_eq!(
                    count_homs(&q, &s3, 2_000_000).unwrap(),
                    baseline,
                    "variant {variant} changed the S3 hom count"
                );
            }
        },
    );
}

#[test]
fn criterion_6_snf_contract_suite() {
    criterion(
        6,
        "Smith normal form contract on 200 random matrices",
        Duration::from_secs(10),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x51ED);
            for case in 0..200 {
                let rows = rng.random_range(1..=6);
                let cols = rng.random_range(1..=6);
                let a = IntMatrix::from_fn(rows, cols, |_, _| {
                    BigInt::from(rng.random_range(-5i64..=5))
                });
                let snf = smith_normal_form(&a);

                assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d, "case {case}: UAV != D");
                assert_eq!(
                    snf.u.determinant().unwrap().abs(),
                    BigInt::one(),
                    "case {case}: U not unimodular"
                );
                assert_eq!(
                    snf.v.determinant().unwrap().abs(),
                    BigInt::one(),
                    "case {case}: V not unimodular"
                );
                let n = rows.min(cols);
                for i in 0..rows {
                    for j in 0..cols {
                        if i != j {
                            assert!(snf.d.get(i, j).is_zero(), "case {case}: D not diagonal");
                        }
                    }
                }
                for k in 0..n {
                    assert!(!snf.d.get(k, k).is_negative());
                    if k + 1 < n && !snf.d.get(k, k).is_zero() {
                        assert!(
                            (snf.d.get(k + 1, k + 1) % snf.d.get(k, k)).is_zero(),
                            "case {case}: divisibility chain broken"
                        );
                    }
                }
                // d1 = gcd of all entries, recomputed by direct fold
                let mut g = BigInt::zero();
                for i in 0..rows {
                    for j in 0..cols {
                        g = num_integer::gcd(g, a.get(i, j).abs());
                    }
                }
                if n > 0 {
                    assert_eq!(snf.d.get(0, 0), &g, "case {case}: d1 != gcd");
                }
            }
        },
    );
}

#[test]
fn criterion_7_move_invariance_suite() {
    criterion(
        7,
        "framed-link move invariance on 50 random sequences",
        Duration::from_secs(30),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x4B1EBE);
            let mut blow_ups_seen = 0usize;
            for seq in 0..50 {
                let mut link = random_link(&mut rng, 8);
                let moves = rng.random_range(1..=20);
                for step in 0..moves {
                    let chi = link_chi(&link);
                    let h1 = link_h1_total(&link);
                    let boundary = link.h1_boundary().unwrap();
                    let sigma = link.signature().unwrap();
                    let ctx = format!("seq {seq} step {step}");

                    match rng.random_range(0..6) {
                        0 => {
                            // slide
                            let handles = link.handle_positions();
                            if handles.len() < 2 {
                                continue;
                            }
                            let i = handles[rng.random_range(0..handles.len())];
                            let mut j = i;
                            while j == i {
                                j = handles[rng.random_range(0..handles.len())];
                            }
                            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
                            let conj = random_word(&mut rng, link.dot_count(), 2);
                            let next = link.handle_slide(i, j, sign, &conj).unwrap();
                            assert_eq!(link_chi(&next), chi, "{ctx}: slide chi");
                            assert_eq!(link_h1_total(&next), h1, "{ctx}: slide h1");
                            assert_eq!(
                                next.h1_boundary().unwrap(),
                                boundary,
                                "{ctx}: slide boundary"
                            );
                            assert_eq!(next.signature().unwrap(), sigma, "{ctx}: slide sigma");
                            link = next;
                        }
                        1 => {
                            // dot surgery swap: only the boundary is contracted
                            let dots = link.dot_positions();
                            if dots.is_empty() {
                                continue;
                            }
                            let i = dots[rng.random_range(0..dots.len())];
                            let next = link.dot_surgery_swap(i).unwrap();
                            assert_eq!(
                                next.h1_boundary().unwrap(),
                                boundary,
                                "{ctx}: swap boundary"
                            );
                            link = next;
                        }
                        2 => {
                            let next = link.stabilize();
                            assert_eq!(link_chi(&next), chi, "{ctx}: stabilize chi");
                            assert_eq!(link_h1_total(&next), h1, "{ctx}: stabilize h1");
                            assert_eq!(
                                next.h1_boundary().unwrap(),
                                boundary,
                                "{ctx}: stabilize boundary"
                            );
                            assert_eq!(next.signature().unwrap(), sigma, "{ctx}: stabilize sigma");
                            link = next;
                        }
                        3 => {
                            // destabilize any matching pair
                            let dots = link.dot_positions();
                            let handles = link.handle_positions();
                            let pair = dots.iter().find_map(|&i| {
                                handles
                                    .iter()
                                    .find(|&&j| link.destabilize(i, j).is_ok())
                                    .map(|&j| (i, j))
                            });
                            let Some((i, j)) = pair else { continue };
                            let next = link.destabilize(i, j).unwrap();
                            assert_eq!(link_chi(&next), chi, "{ctx}: destabilize chi");
                            assert_eq!(link_h1_total(&next), h1, "{ctx}: destabilize h1");
                            assert_eq!(
                                next.h1_boundary().unwrap(),
                                boundary,
                                "{ctx}: destabilize boundary"
                            );
                            assert_eq!(
                                next.signature().unwrap(),
                                sigma,
                                "{ctx}: destabilize sigma"
                            );
                            link = next;
                        }
                        4 => {
                            let sign: i8 = if rng.random_bool(0.5) { 1 } else { -1 };
                            let next = link.blow_up(sign).unwrap();
                            blow_ups_seen += 1;
                            assert_eq!(link_chi(&next), chi + 1, "{ctx}: blow-up chi");
                            assert_eq!(link_h1_total(&next), h1, "{ctx}: blow-up h1");
                            assert_eq!(
                                next.h1_boundary().unwrap(),
                                boundary,
                                "{ctx}: blow-up boundary"
                            );
                            assert_eq!(
                                next.signature().unwrap(),
                                sigma + i64::from(sign),
                                "{ctx}: blow-up sigma shift"
                            );
                            let rank_before = link.intersection_form().unwrap().rows();
                            let rank_after = next.intersection_form().unwrap().rows();
                            assert_eq!(rank_after, rank_before + 1, "{ctx}: blow-up rank");
                            link = next;
                        }
                        _ => {
                            let handles = link.handle_positions();
                            let candidate = handles
                                .iter()
                                .find(|&&i| link.blow_down(i).is_ok())
                                .copied();
                            let Some(i) = candidate else { continue };
                            let sign = if link.framing(i).is_positive() { 1 } else { -1 };
                            let next = link.blow_down(i).unwrap();
                            assert_eq!(link_chi(&next), chi - 1, "{ctx}: blow-down chi");
                            assert_eq!(link_h1_total(&next), h1, "{ctx}: blow-down h1");
                            assert_eq!(
                                next.h1_boundary().unwrap(),
                                boundary,
                                "{ctx}: blow-down boundary"
                            );
                            assert_eq!(
                                next.signature().unwrap(),
                                sigma - sign,
                                "{ctx}: blow-down sigma shift"
                            );
                            link = next;
                        }
                    }
                }
            }
            assert!(blow_ups_seen > 0, "suite never exercised a blow-up");
        },
    );
}

#[test]
fn criterion_8_boundary_golden_values() {
    criterion(
        8,
        "boundary H1 golden values",
        Duration::from_secs(1),
        || {
            // Σ2 × D²: five circles, zero linking, boundary Σ2 × S¹
            let sigma2 = surface_presentation(2).unwrap();
            let link = sigma2.framed_link();
            assert_eq!(link.h1_boundary().unwrap(), AbelianInvariants::free(5));

            // single dotted circle: S¹ × S²
            let dot = FramedLink::new(vec![Circle::dot()], IntMatrix::zero(1, 1), false).unwrap();
            assert_eq!(dot.h1_boundary().unwrap(), AbelianInvariants::free(1));

            // +1-framed unknot: S³
            let unknot = FramedLink::new(
                vec![Circle::handle(Word::identity())],
                IntMatrix::from_i64(&[&[1]]),
                false,
            )
            .unwrap();
            assert_eq!(unknot.h1_boundary().unwrap(), AbelianInvariants::free(0));
        },
    );
}

#[test]
fn criterion_9_builder_cross_checks() {
    criterion(
        9,
        "builders vs independent Kuenneth/coinvariant oracles",
        Duration::from_secs(1),
        || {
            // E = Σ2 × T²: Kuenneth says H1 = Z^4 ⊕ Z^2 = Z^6; recompute the
            // builder's abelianization with the naive diagonalizer as well
            let e = build_bundle(&e_spec()).unwrap();
            let h1_e = e.h1_total();
            assert!(invariants_match(&h1_e, 6, &[]));
            let m = e.presentation().abelianization_matrix();
            let rel: Vec<Vec<i64>> = (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| i64::try_from(m.get(i, j)).unwrap())
                        .collect()
                })
                .collect();
            let (free, torsion) = naive_abelian_invariants(&rel, m.cols());
            assert_eq!(free, 6);
            assert!(torsion.is_empty());

            // E' = twisted bundle: base Z² plus coinvariants of the pair
            // swap on Z⁴. The swap action is definitional, so hardcode it:
            // relations a1 - a2 and b1 - b2 on Z⁴.
            let coinv_relations = vec![vec![1, 0, -1, 0], vec![0, 1, 0, -1]];
            let (coinv_free, coinv_torsion) = naive_abelian_invariants(&coinv_relations, 4);
            assert_eq!(coinv_free, 2);
            assert!(coinv_torsion.is_empty());
            let e_prime = build_bundle(&e_prime_spec()).unwrap();
            let h1_ep = e_prime.h1_total();
            assert!(invariants_match(&h1_ep, 2 + coinv_free, &coinv_torsion));

            // E0 = Σ2 × (T² - D²): multiplicative Euler characteristic
            let (fiber_genus, base_genus) = (2i64, 1i64);
            let chi_oracle = (2 - 2 * fiber_genus) * (2 - 2 * base_genus - 1);
            assert_eq!(chi_oracle, 2);
            let e0 = puncture_fiber(&e).unwrap();
            assert_eq!(e0.euler_characteristic(), chi_oracle);

            // and the gluing-parameter surface: a commutator gluing word
            // cannot change H1
            let u = cacime_core::commutator(&Word::generator(0), &Word::generator(1));
            let twisted = build_cacime(&FreeEndomorphism::identity(4), &u).unwrap();
            assert!(invariants_match(&twisted.h1_total(), 6, &[]));
        },
    );
}
