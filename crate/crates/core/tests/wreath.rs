use std::collections::HashSet;

use lexshell::complex::{
    check_crossing, descent_assignment, shelling_exists, topological_descents, verify_partitioning,
    verify_shelling, CrossingVerdict, SearchOutcome, ShellingVerdict,
};
use lexshell::series::{molien, PermGroup, TruncatedSeries};
use lexshell::wreath::{
    classified_descents, enumerate_wreath_facets, face_ring_hilbert, gs_numerator, hilbert_numerator,
    is_orbit_rep, wreath_complex, wreath_key, OrbitRep,
};
use lexshell::Support;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// Image of a chain of subsets (bit `i` = letter `i+1`) under a
/// permutation of the letters.
fn apply(g: &[usize], chain: &[u32]) -> Vec<u32> {
    chain
        .iter()
        .map(|&set| (0..g.len()).filter(|&i| set >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << g[i]))
        .collect()
}

fn orbit_canon(g: &PermGroup, chain: &[u32]) -> Vec<u32> {
    g.elements().iter().map(|x| apply(x, chain)).min().unwrap()
}

fn random_chain(rng: &mut impl Rng, letters: usize, support: Support) -> Vec<u32> {
    let mut word: Vec<usize> = (0..letters).collect();
    word.shuffle(rng);
    support
        .colors()
        .map(|r| word[..r].iter().fold(0u32, |acc, &i| acc | 1 << i))
        .collect()
}

#[test]
fn key_equality_is_orbit_equality() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for (k, n) in [(2, 2), (2, 3), (3, 2), (2, 4), (4, 2)] {
        let g = PermGroup::wreath(k, n).unwrap();
        let letters = k * n;
        for _ in 0..12 {
            let support = Support::from_bits(rng.gen_range(1..1u16 << (letters - 1)));
            let chains: Vec<Vec<u32>> = (0..20).map(|_| random_chain(&mut rng, letters, support)).collect();
            for a in &chains {
                for b in &chains {
                    let same_key = wreath_key(k, n, a, support).unwrap() == wreath_key(k, n, b, support).unwrap();
                    let same_orbit = orbit_canon(&g, a) == orbit_canon(&g, b);
                    assert_eq!(same_key, same_orbit, "k={k} n={n} {a:?} {b:?}");
                }
            }
        }
    }
}

#[test]
fn key_examples_on_four_letters() {
    let s12 = Support::from_colors([1, 2]);
    assert_eq!(
        wreath_key(2, 2, &[0b0001, 0b0101], s12).unwrap(),
        wreath_key(2, 2, &[0b0100, 0b0101], s12).unwrap()
    );
    assert_ne!(
        wreath_key(2, 2, &[0b0001, 0b0011], s12).unwrap(),
        wreath_key(2, 2, &[0b0001, 0b0101], s12).unwrap()
    );
}

/// Lex-minimal words found by minimizing over the whole group.
fn brute_force_reps(k: usize, n: usize) -> Vec<Vec<u8>> {
    let g = PermGroup::wreath(k, n).unwrap();
    let mut reps = HashSet::new();
    for p in lexshell::perm::all_permutations(k * n) {
        let best = g
            .elements()
            .iter()
            .map(|x| p.iter().map(|&l| x[l] as u8 + 1).collect::<Vec<u8>>())
            .min()
            .unwrap();
        reps.insert(best);
    }
    let mut out: Vec<Vec<u8>> = reps.into_iter().collect();
    out.sort();
    out
}

#[test]
fn representatives_match_group_minimization() {
    for (k, n) in [(1, 3), (2, 1), (2, 2), (2, 3), (3, 2), (2, 4), (4, 2)] {
        let fast: Vec<Vec<u8>> = enumerate_wreath_facets(k, n)
            .unwrap()
            .into_iter()
            .map(|r| r.0)
            .collect();
        assert_eq!(fast, brute_force_reps(k, n), "k={k} n={n}");
    }
}

#[test]
fn six_letter_list_for_pairs() {
    let words: Vec<String> = enumerate_wreath_facets(2, 3)
        .unwrap()
        .iter()
        .map(|r| r.to_string())
        .collect();
    assert_eq!(
        words,
        [
            "123456", "123546", "123564", "132456", "132546", "132564", "134256", "134526", "134562",
            "135246", "135264", "135426", "135462", "135624", "135642"
        ]
    );
}

#[test]
fn pair_representative_condition() {
    // 2i-1 precedes 2i and 2i+1.
    for n in 1..=5 {
        let all = lexshell::perm::all_permutations(2 * n);
        let chosen: Vec<Vec<u8>> = all
            .iter()
            .map(|p| p.iter().map(|&l| l as u8 + 1).collect::<Vec<u8>>())
            .filter(|w| {
                let pos = |l: u8| w.iter().position(|&x| x == l).unwrap();
                (1..=n as u8).all(|i| {
                    pos(2 * i - 1) < pos(2 * i) && (i as usize == n || pos(2 * i - 1) < pos(2 * i + 1))
                })
            })
            .collect();
        let fast: Vec<Vec<u8>> = enumerate_wreath_facets(2, n).unwrap().into_iter().map(|r| r.0).collect();
        assert_eq!(fast, chosen, "n={n}");
        if n <= 4 {
            assert_eq!(fast, brute_force_reps(2, n));
        }
    }
}

#[test]
fn pairs_shell_in_lex_order() {
    for n in 1..=4 {
        let c = wreath_complex(2, n).unwrap();
        let order: Vec<usize> = (0..c.facet_count()).collect();
        let cert = verify_shelling(&c, &order).unwrap();
        assert_eq!(cert.verdict, ShellingVerdict::Pass, "n={n}");
        let reps = enumerate_wreath_facets(2, n).unwrap();
        let h = c.flag_h();
        let mut counts = vec![0i64; 1 << c.colors()];
        for (j, r) in reps.iter().enumerate() {
            let d = topological_descents(&c, &order, j).unwrap();
            assert_eq!(d, classified_descents(n, r).unwrap());
            counts[d.index()] += 1;
        }
        for (s, v) in h.iter() {
            assert_eq!(counts[s.index()], v, "n={n} S={s}");
        }
        let a = descent_assignment(&c, &order).unwrap();
        assert!(verify_partitioning(&c, &a).unwrap().passed());
    }
}

#[test]
fn triples_fail_at_step_four() {
    let c = wreath_complex(3, 2).unwrap();
    let order: Vec<usize> = (0..10).collect();
    let cert = verify_shelling(&c, &order).unwrap();
    match cert.verdict {
        ShellingVerdict::Fail { step, facet, witness, codimension } => {
            assert_eq!(step, 4);
            assert_eq!(c.facet_name(facet), "124563");
            assert_eq!(witness, Support::from_colors([4, 5]));
            assert_eq!(codimension, 3);
        }
        ShellingVerdict::Pass => panic!("lex order should not shell"),
    }
    assert!(matches!(shelling_exists(&c, 1_000_000), SearchOutcome::NoneExists { .. }));
}

#[test]
fn crossing_holds_in_lex_order() {
    for (k, n) in [(2, 2), (2, 3), (3, 2), (2, 4), (4, 2)] {
        let c = wreath_complex(k, n).unwrap();
        let order: Vec<usize> = (0..c.facet_count()).collect();
        assert_eq!(check_crossing(&c, &order).unwrap(), CrossingVerdict::Pass, "k={k} n={n}");
    }
}

#[test]
fn face_ring_series_is_molien_times_top_factor() {
    for (k, n) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let c = wreath_complex(k, n).unwrap();
        let h = face_ring_hilbert(&c, 30);
        let m = molien(&PermGroup::wreath(k, n).unwrap(), 30).unwrap();
        assert_eq!(h, m.mul_one_minus(k * n), "k={k} n={n}");
    }
}

#[test]
fn numerator_identity_for_pairs() {
    for n in 2..=4 {
        let c = wreath_complex(2, n).unwrap();
        let order: Vec<usize> = (0..c.facet_count()).collect();
        let a = descent_assignment(&c, &order).unwrap();
        let num = gs_numerator(&c, &a).unwrap();
        assert_eq!(num.iter().sum::<i64>(), c.facet_count() as i64);
        let h = face_ring_hilbert(&c, 40);
        assert_eq!(hilbert_numerator(&h, 2 * n - 1), TruncatedSeries::from_integers(40, &num));
    }
}

#[test]
fn small_numerator_and_division() {
    let c = wreath_complex(2, 2).unwrap();
    let a = descent_assignment(&c, &[0, 1, 2]).unwrap();
    let num = gs_numerator(&c, &a).unwrap();
    let divided = (1..=3).fold(TruncatedSeries::from_integers(40, &num), |s, r| {
        lexshell::series::series_div_cyclotomic(&s, r)
    });
    assert_eq!(divided, face_ring_hilbert(&c, 40));
}

proptest! {
    #[test]
    fn keys_respect_containment(seed in any::<u64>(), bits in 1u16..32, sub in 0u16..32) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let c = wreath_complex(2, 3).unwrap();
        let s = Support::from_bits(bits);
        let t = Support::from_bits(bits & sub);
        let a = rng.gen_range(0..c.facet_count());
        let b = rng.gen_range(0..c.facet_count());
        if c.cell_id(a, s) == c.cell_id(b, s) {
            prop_assert_eq!(c.cell_id(a, t), c.cell_id(b, t));
        }
    }

    #[test]
    fn shuffled_words_are_rejected_unless_minimal(seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut w: Vec<u8> = (1..=6).collect();
        w.shuffle(&mut rng);
        let listed = enumerate_wreath_facets(3, 2).unwrap().contains(&OrbitRep(w.clone()));
        prop_assert_eq!(is_orbit_rep(3, 2, &w), listed);
    }
}
