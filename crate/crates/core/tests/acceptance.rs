//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness and exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lexshell::certificate;
use lexshell::complex::{shelling_exists, verify_shelling, OrderIndex, SearchOutcome};
use lexshell::partition::{
    b_s_table, build_partitioning, check_icc, embedded_link_complex, icc_on_interval, lex_quotient,
    link_subcomplex_minimal_face, presort_interval_example, rp2_witness, IccScope, IccVerdict, Labelling,
    LinkOptions,
};
use lexshell::series::{molien, monomial_orbit_count, PermGroup, TruncatedSeries};
use lexshell::wreath::{
    classify_positions, enumerate_wreath_facets, face_ring_hilbert, gs_numerator, hilbert_numerator,
    wreath_complex, PositionClass,
};
use lexshell::{PartitionAssignment, Support};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// The fifteen facets of `Δ(B_6)/S_2≀S_3` with swap ascents marked `∘` and
/// descents marked `•`.
const DOTTED: [&str; 15] = [
    "123456",
    "1235•46",
    "123∘56•4",
    "13•2456",
    "13•25•46",
    "13•256•4",
    "1∘34•256",
    "1∘345•26",
    "1∘3456•2",
    "135•246",
    "13∘5•26•4",
    "1∘35•4•26",
    "1∘35•46•2",
    "13∘56•24",
    "1∘3∘56•4•2",
];

struct Dotted {
    word: String,
    swaps: Support,
    descents: Support,
}

fn parse_dotted(text: &str) -> Dotted {
    let mut word = String::new();
    let mut swaps = Vec::new();
    let mut descents = Vec::new();
    for ch in text.chars() {
        match ch {
            '∘' => swaps.push(word.len()),
            '•' => descents.push(word.len()),
            d => word.push(d),
        }
    }
    Dotted {
        word,
        swaps: Support::from_colors(swaps),
        descents: Support::from_colors(descents),
    }
}

type Outcome = Result<String, String>;

fn check(ok: bool, pass: String, fail: String) -> Outcome {
    if ok {
        Ok(pass)
    } else {
        Err(fail)
    }
}

fn within(t: Duration, limit: Duration) -> Outcome {
    check(t < limit, format!("{} ms", t.as_millis()), format!("took {} ms, limit {} ms", t.as_millis(), limit.as_millis()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let words: Vec<String> = enumerate_wreath_facets(2, 3).map_err(|e| e.to_string())?.iter().map(|r| r.to_string()).collect();
    let elapsed = start.elapsed();
    let want: Vec<String> = DOTTED.iter().map(|t| parse_dotted(t).word).collect();
    if words != want {
        return Err(format!("got {words:?}"));
    }
    within(elapsed, Duration::from_secs(1)).map(|t| format!("15 words in lex order, {t}"))
}

fn criterion_2() -> Outcome {
    let c = wreath_complex(2, 3).map_err(|e| e.to_string())?;
    let reps = enumerate_wreath_facets(2, 3).map_err(|e| e.to_string())?;
    let order: Vec<usize> = (0..c.facet_count()).collect();
    let idx = OrderIndex::new(&c, &order).map_err(|e| e.to_string())?;
    for (f, rep) in reps.iter().enumerate() {
        let dots = parse_dotted(DOTTED[f]);
        let classes = classify_positions(3, rep).map_err(|e| e.to_string())?;
        let of = |want: PositionClass| {
            Support::from_colors(classes.iter().enumerate().filter(|(_, &c)| c == want).map(|(i, _)| i + 1))
        };
        let honest = of(PositionClass::HonestDescent);
        let swaps = of(PositionClass::SwapAscent);
        let brute = idx.descents(&c, f);
        if honest != dots.descents || swaps != dots.swaps || honest.union(swaps) != brute {
            return Err(format!("{rep}: honest {honest} swap {swaps} brute force {brute}"));
        }
    }
    Ok("classification = brute force = dot pattern on all 15 facets".into())
}

fn criterion_3() -> Outcome {
    let mut last = Duration::ZERO;
    let mut sizes = Vec::new();
    for n in 2..=5 {
        let start = Instant::now();
        let c = wreath_complex(2, n).map_err(|e| e.to_string())?;
        let order: Vec<usize> = (0..c.facet_count()).collect();
        let cert = verify_shelling(&c, &order).map_err(|e| e.to_string())?;
        last = start.elapsed();
        if !cert.passed() {
            return Err(format!("n={n}: {:?}", cert.verdict));
        }
        sizes.push(format!("n={n}: {} facets, d={}", c.facet_count(), c.colors()));
        if n == 5 && (c.facet_count(), c.colors()) != (945, 9) {
            return Err(sizes.join("; "));
        }
    }
    within(last, Duration::from_secs(120)).map(|t| format!("{}; n=5 in {t}", sizes.join("; ")))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let c = wreath_complex(3, 2).map_err(|e| e.to_string())?;
    let outcome = shelling_exists(&c, lexshell::complex::DEFAULT_BUDGET);
    let elapsed = start.elapsed();
    let nodes = match outcome {
        SearchOutcome::NoneExists { nodes } => nodes,
        other => return Err(format!("search: {other:?}")),
    };
    let time = within(elapsed, Duration::from_secs(60))?;
    let quad: Vec<usize> = ["142536", "142563", "145236", "145263"]
        .iter()
        .map(|w| c.facet_names().iter().position(|x| x == w).expect("facet present"))
        .collect();
    let mut rng = StdRng::seed_from_u64(31);
    let mut order: Vec<usize> = (0..c.facet_count()).collect();
    let samples = 5000;
    for _ in 0..samples {
        order.shuffle(&mut rng);
        let idx = OrderIndex::new(&c, &order).map_err(|e| e.to_string())?;
        let last = *quad.iter().max_by_key(|&&f| idx.position(f)).expect("nonempty");
        let d = idx.descents(&c, last);
        if !Support::from_colors([1, 3, 5]).is_subset(d) {
            return Err(format!("order {order:?}: last facet {} has descents {d}", c.facet_name(last)));
        }
    }
    Ok(format!("no shelling ({nodes} nodes, {time}); {{1,3,5}} ⊆ descents of the last of the four in {samples} sampled orders"))
}

fn criterion_5() -> Outcome {
    let c = wreath_complex(3, 2).map_err(|e| e.to_string())?;
    let h = face_ring_hilbert(&c, 40);
    let numerator = hilbert_numerator(&h, 5);
    let want = TruncatedSeries::from_integers(40, &[1, 0, 1, 1, 2, 1, 2, 1, 1]);
    let at_one: i64 = numerator.to_i64().ok_or("non-integral numerator")?.iter().sum();
    check(
        numerator == want && at_one == 10,
        "H·(1-q)…(1-q^5) = 1+q^2+q^3+2q^4+q^5+2q^6+q^7+q^8 through q^40, N(1)=10".into(),
        format!("numerator {numerator}, N(1)={at_one}"),
    )
}

fn criterion_6() -> Outcome {
    let c = wreath_complex(2, 3).map_err(|e| e.to_string())?;
    let order: Vec<usize> = (0..c.facet_count()).collect();
    let idx = OrderIndex::new(&c, &order).map_err(|e| e.to_string())?;
    let a = PartitionAssignment::new((0..c.facet_count()).map(|f| idx.descents(&c, f)).collect());
    let n = gs_numerator(&c, &a).map_err(|e| e.to_string())?;
    let quotient = (1..=5).fold(TruncatedSeries::from_integers(40, &n), |acc, r| acc.div_one_minus(r));
    let h = face_ring_hilbert(&c, 40);
    check(
        quotient == h && n.iter().sum::<i64>() == 15,
        format!("N(q) = {n:?}, N/Π(1-q^r) = H through q^40"),
        format!("N(q) = {n:?} does not reproduce H"),
    )
}

fn criterion_7() -> Outcome {
    let mut t8 = Duration::ZERO;
    for n in 3..=8 {
        let start = Instant::now();
        let t = b_s_table(n).map_err(|e| e.to_string())?;
        if n == 8 {
            t8 = start.elapsed();
        }
        for i in 1..=n - 2 {
            let v = t.get(Support::range(1, i));
            if v != Some(0) {
                return Err(format!("b_{{1..{i}}}({n}) = {v:?}"));
            }
        }
    }
    within(t8, Duration::from_secs(300)).map(|t| format!("b_{{1..i}}(n) = 0 for n ≤ 8; n=8 in {t}"))
}

fn criterion_8() -> Outcome {
    let r = rp2_witness().map_err(|e| e.to_string())?;
    check(
        r.f_vector == [3, 6, 4] && r.betti == [1, 1, 1],
        "f = (3,6,4), GF(2) Betti = (1,1,1)".into(),
        format!("f = {:?}, Betti = {:?}", r.f_vector, r.betti),
    )
}

fn criterion_9() -> Outcome {
    for n in 3..=7 {
        let r = build_partitioning(n).map_err(|e| e.to_string())?;
        if !r.passed() {
            let cert = certificate::partition_partitioning(n).map_err(|e| e.to_string())?;
            let text = serde_json::to_string(&cert).expect("certificate serializes");
            return Err(format!("n={n}: {:?}\n{text}", r.verdict));
        }
    }
    Ok("verified for n = 3..7, histogram = flag h".into())
}

fn criterion_10() -> Outcome {
    let id: Vec<usize> = (1..=10).collect();
    let s1 = vec![1, 2, 3, 7, 8, 9, 10, 4, 5, 6];
    let s2 = vec![1, 2, 3, 9, 10, 4, 5, 6, 7, 8];
    let plain = LinkOptions::default();
    let g = link_subcomplex_minimal_face(10, 2, &[id, s1, s2], plain).map_err(|e| e.to_string())?;
    if g != [8, 17, 28] {
        return Err(format!("ten-block example gives {g:?}"));
    }
    let mut agree = Vec::new();
    let mut disagree = Vec::new();
    for m in 2..=5 {
        for k in 1..=4 {
            if (k + 1) * m > 10 {
                continue;
            }
            let idm: Vec<usize> = (1..=m).collect();
            if !link_subcomplex_minimal_face(m, k, &vec![idm; k + 1], plain).map_err(|e| e.to_string())?.is_empty() {
                return Err(format!("identity tuple for m={m} k={k} has a nonempty face"));
            }
            let l = embedded_link_complex(m, k, plain).map_err(|e| e.to_string())?;
            let brute = l.descents();
            let bad = l
                .tuples
                .iter()
                .zip(&brute)
                .filter(|(t, d)| link_subcomplex_minimal_face(m, k, t, plain).expect("valid tuple") != **d)
                .count();
            if bad == 0 {
                agree.push(format!("({m},{k})"));
            } else {
                disagree.push(format!("({m},{k}): {bad}/{} tuples", l.tuples.len()));
            }
        }
    }
    check(
        disagree.is_empty(),
        format!("{{8,17,28}}, identity ↦ ∅, agreement on {}", agree.join(" ")),
        format!(
            "{{8,17,28}} and identity ↦ ∅ hold; agreement on {} but not on {}",
            agree.join(" "),
            disagree.join(", ")
        ),
    )
}

fn criterion_11() -> Outcome {
    let mut intervals = 0;
    for n in 3..=6 {
        match check_icc(n, IccScope::All).map_err(|e| e.to_string())? {
            IccVerdict::Pass { intervals: k } => intervals += k,
            IccVerdict::Fail(w) => return Err(format!("n={n}: {w:?}")),
        }
    }
    let pre = presort_interval_example(Labelling::Presort).map_err(|e| e.to_string())?;
    let increasing: Vec<&str> = icc_on_interval(&pre).iter().map(|&f| pre.facet_name(f)).collect();
    check(
        increasing.len() > 1 && increasing[0] == "1,2,13,15" && increasing.contains(&"2,4,12,13"),
        format!("{intervals} rooted intervals pass for n ≤ 6; pre-sort labels give increasing chains {increasing:?}"),
        format!("pre-sort labels give increasing chains {increasing:?}"),
    )
}

fn criterion_12() -> Outcome {
    for n in 1..=4 {
        let g = PermGroup::wreath(2, n).map_err(|e| e.to_string())?;
        let h = molien(&g, 12).map_err(|e| e.to_string())?.to_i64().ok_or("non-integral Molien series")?;
        for (d, &coeff) in h.iter().enumerate() {
            let count = monomial_orbit_count(&g, d).map_err(|e| e.to_string())?;
            if coeff != count as i64 {
                return Err(format!("n={n} d={d}: Molien {coeff}, orbits {count}"));
            }
        }
    }
    Ok("Molien = orbit count for S_2≀S_n, n ≤ 4, degree ≤ 12".into())
}

fn main() -> ExitCode {
    // Warm the partition enumeration so that timings measure the checks.
    let _ = lex_quotient(3);
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("facet list of Δ(B_6)/S_2≀S_3", criterion_1),
        ("ascent/descent classification", criterion_2),
        ("lex shelling of Δ(B_2n)/S_2≀S_n, n ≤ 5", criterion_3),
        ("Δ(B_6)/S_3≀S_2 is not shellable", criterion_4),
        ("Hilbert numerator for S_3≀S_2", criterion_5),
        ("Garsia–Stanton identity for S_2≀S_3", criterion_6),
        ("b_S zeros on initial segments", criterion_7),
        ("projective plane link", criterion_8),
        ("partitioning of Δ(Π_n)/S_n, n ≤ 7", criterion_9),
        ("link subcomplex minimal faces", criterion_10),
        ("increasing chain condition", criterion_11),
        ("Molien series against orbit counts", criterion_12),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
