use lexshell::complex::{partitioning_exists, verify_partitioning, BalancedComplex, OrderIndex, SearchOutcome};
use lexshell::partition::{
    build_partitioning, enumerate_partition_facets, lex_quotient, non_shelling_facets, partition_complex,
    FacetRule,
};
use lexshell::Support;

#[test]
fn three_and_four_letters() {
    let r = build_partitioning(3).unwrap();
    assert_eq!(r.assignment.minimal, vec![Support::EMPTY]);
    let r = build_partitioning(4).unwrap();
    assert_eq!(r.assignment.minimal, vec![Support::EMPTY, Support::from_colors([1])]);
    assert!(r.passed());
    // Two facets on two colors: the intervals have 4 and 2 cells, against
    // 6 cells in the complex.
    let c = lex_quotient(4).unwrap();
    assert_eq!(c.cell_count(), 6);
}

/// Flag h-vector from the flag f-vector by inclusion–exclusion, written
/// out here rather than taken from the library.
fn flag_h_by_hand(c: &BalancedComplex) -> Vec<i64> {
    let f = c.flag_f();
    let full = c.full_support();
    let mut h = vec![0i64; 1 << c.colors()];
    for s in full.subsets() {
        for t in s.subsets() {
            let sign = if (s.len() - t.len()) % 2 == 0 { 1 } else { -1 };
            h[s.index()] += sign * f.get(t);
        }
    }
    h
}

#[test]
fn histogram_is_flag_h_through_seven() {
    for n in 3..=7 {
        let r = build_partitioning(n).unwrap();
        let c = lex_quotient(n).unwrap();
        assert!(verify_partitioning(&c, &r.assignment).unwrap().passed(), "n={n}");
        assert_eq!(r.histogram, flag_h_by_hand(&c), "n={n}");
        assert!(r.passed());
    }
}

#[test]
fn lex_order_shells_through_seven() {
    for n in 3..=7 {
        assert!(non_shelling_facets(n).unwrap().is_empty(), "n={n}");
        let r = build_partitioning(n).unwrap();
        assert!(r.rules.iter().all(|x| *x == FacetRule::Shelling));
    }
}

#[test]
fn eight_letters_have_five_non_shelling_steps() {
    assert_eq!(non_shelling_facets(8).unwrap(), vec![233, 241, 260, 261, 268]);
    let facets = enumerate_partition_facets(8, 9).unwrap();
    for f in [233, 241, 260, 261, 268] {
        let first = facets[f].encoding.splits[0];
        assert_eq!((first.left, first.right), (4, 4));
    }
}

#[test]
fn eight_letter_construction_is_reported_not_patched() {
    let r = build_partitioning(8).unwrap();
    assert!(!r.passed());
    assert!(!r.verdict.passed());
    let linked = r.rules.iter().filter(|x| matches!(x, FacetRule::Link { .. })).count();
    assert_eq!(linked, r.non_shelling.len());
}

fn cover(
    l: &BalancedComplex,
    free: &[usize],
    covered: &mut [u32],
    i: usize,
    found: &mut usize,
) {
    if i == free.len() {
        if covered.iter().all(|&x| x == 1) {
            *found += 1;
        }
        return;
    }
    let full = l.full_support();
    for g in full.subsets() {
        let cells: Vec<u32> = g.supersets_within(full).map(|s| l.cell_id(free[i], s)).collect();
        if cells.iter().all(|&c| covered[c as usize] == 0) {
            for &c in &cells {
                covered[c as usize] += 1;
            }
            cover(l, free, covered, i + 1, found);
            for &c in &cells {
                covered[c as usize] -= 1;
            }
        }
    }
}

/// In the link of the `4|4` vertex, fixing the 35 shelling steps at their
/// topological descents leaves no way to cover the rest with intervals of
/// the five non-shelling facets, whatever their minimal faces are. Every
/// facet through that vertex has rank 1 as a descent, so the same holds in
/// the whole complex.
#[test]
fn shelling_descents_do_not_extend_at_eight() {
    let facets = enumerate_partition_facets(8, 9).unwrap();
    let c = partition_complex(8, &facets).unwrap();
    let order: Vec<usize> = (0..c.facet_count()).collect();
    let idx = OrderIndex::new(&c, &order).unwrap();
    let members: Vec<usize> = (0..facets.len()).filter(|&i| facets[i].encoding.splits[0].left == 4).collect();
    assert_eq!(members.len(), 40);
    let rank1 = Support::from_colors([1]);
    assert!(members.iter().all(|&f| idx.descents(&c, f).contains(1)));
    let l = c.link(members[0], rank1).unwrap();
    let lo: Vec<usize> = (0..l.facet_count()).collect();
    let lidx = OrderIndex::new(&l, &lo).unwrap();
    for (j, &f) in members.iter().enumerate() {
        assert_eq!(lidx.descents(&l, j).map_colors(|x| x + 1).insert(1), idx.descents(&c, f));
    }
    assert!(matches!(partitioning_exists(&l, 10_000_000), SearchOutcome::Found(_)));

    let free: Vec<usize> = non_shelling_facets(8).unwrap().iter().map(|f| f - members[0]).collect();
    let mut covered = vec![0u32; l.cell_count()];
    let full = l.full_support();
    for j in (0..l.facet_count()).filter(|j| !free.contains(j)) {
        for s in lidx.descents(&l, j).supersets_within(full) {
            covered[l.cell_id(j, s) as usize] += 1;
        }
    }
    assert!(covered.iter().all(|&x| x <= 1));
    let mut found = 0;
    cover(&l, &free, &mut covered, 0, &mut found);
    assert_eq!(found, 0);
}
