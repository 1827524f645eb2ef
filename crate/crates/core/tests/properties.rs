use std::cmp::Ordering;

use num_bigint::BigUint;
use proptest::prelude::*;

use hyperramsey::arith::ratio;
use hyperramsey::drc::{closed_form_density, density_recurrence};
use hyperramsey::hypercore::{gen_pattern, strong_chromatic_number, ColouringMode, Hypergraph, PatternKind};
use hyperramsey::reduction::{bound_calculator, extend_to_partite, random_equitable_partition, BoundMode, BoundParams, RklSource};
use hyperramsey::steppingup::{delta, delta_max_property, stepup_colour, string_order, BaseColouring, BinaryString, StepUpColouring};

fn strings(m: u32, ranks: Vec<u64>) -> Vec<BinaryString> {
    let mut ranks: Vec<u64> = ranks.into_iter().map(|b| b & ((1u64 << m) - 1)).collect();
    ranks.sort_unstable();
    ranks.dedup();
    let mut v: Vec<BinaryString> = ranks.into_iter().map(|b| BinaryString::from_rank(b, m).unwrap()).collect();
    v.sort_by(|a, b| string_order(a, b).unwrap());
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn consecutive_deltas_differ(m in 6u32..=63, ranks in prop::collection::vec(any::<u64>(), 3)) {
        let s = strings(m, ranks);
        prop_assume!(s.len() == 3);
        prop_assert_ne!(delta(&s[0], &s[1]).unwrap(), delta(&s[1], &s[2]).unwrap());
    }

    #[test]
    fn end_delta_is_largest(m in 6u32..=63, ranks in prop::collection::vec(any::<u64>(), 2..12)) {
        let s = strings(m, ranks);
        prop_assume!(s.len() >= 2);
        prop_assert!(delta_max_property(&s).unwrap());
    }

    #[test]
    fn stepup_colour_ignores_argument_order(m in 2u32..=20, seed in any::<u64>(), ranks in prop::collection::vec(any::<u64>(), 3)) {
        let s = strings(m, ranks);
        prop_assume!(s.len() == 3);
        let su = StepUpColouring::new(BaseColouring::random(m as usize, seed)).unwrap();
        let c = stepup_colour(&su, [s[0].clone(), s[1].clone(), s[2].clone()]).unwrap();
        for p in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            prop_assert_eq!(stepup_colour(&su, [s[p[0]].clone(), s[p[1]].clone(), s[p[2]].clone()]).unwrap(), c);
        }
    }

    #[test]
    fn strong_chromatic_bound_value_grows_with_inputs(r in 2u32..6, l in 2usize..4) {
        let value = |r: u32, l: usize| {
            let p = BoundParams { k: 2, delta: 1, q: 2, rkl: RklSource::Literal { value: BigUint::from(r + l as u32) } };
            bound_calculator(&p, BoundMode::StrongChromatic { l }, 100_000).unwrap().exact_value().unwrap()
        };
        prop_assert!(value(r, l) < value(r + 1, l));
        prop_assert!(value(r, l) < value(r + 1, l + 1));
    }

    #[test]
    fn edge_count_bound_grows_with_edges(m in 1u64..40) {
        let p = BoundParams { k: 2, delta: 1, q: 2, rkl: RklSource::ErdosRado { c: ratio(1, 1) } };
        let a = bound_calculator(&p, BoundMode::EdgeCount { m }, 1000).unwrap();
        let b = bound_calculator(&p, BoundMode::EdgeCount { m: m + 1 }, 1000).unwrap();
        prop_assert!(a.log10_estimate <= b.log10_estimate);
    }

    #[test]
    fn extension_keeps_edges_and_parts(k in 2usize..=3, n in 4usize..=8, m in 1usize..=8, seed in any::<u64>(), extra in 0usize..=2) {
        let max_edges = hyperramsey::hypercore::combinations(n, k).count();
        let h = gen_pattern(PatternKind::Random { k, n, m: m.min(max_edges), seed }).unwrap();
        let chi = strong_chromatic_number(&h, ColouringMode::Exact).unwrap().count.max(k);
        let l = chi + extra;
        let ext = extend_to_partite(&h, l).unwrap();
        let p = &ext.pattern;
        prop_assert_eq!(p.l(), l);
        prop_assert_eq!(p.n_vertices(), n + (l - k) * h.edge_count());
        prop_assert_eq!(p.edge_count(), h.edge_count());
        // each original edge sits inside exactly one padded edge
        for e in h.edges() {
            prop_assert_eq!(p.edges().iter().filter(|f| e.iter().all(|v| f.contains(v))).count(), 1);
        }
        for f in p.edges() {
            for (i, v) in f.iter().enumerate() {
                prop_assert_eq!(p.part_of(*v), Some(i));
            }
        }
    }

    #[test]
    fn partition_keeps_exactly_transversal_edges(l in 2usize..=4, per in 1usize..=3, m in 0usize..=12, seed in any::<u64>(), pseed in any::<u64>()) {
        let n = l * per;
        let max_edges = hyperramsey::hypercore::combinations(n, l).count();
        let g: Hypergraph = gen_pattern(PatternKind::Random { k: l, n, m: m.min(max_edges), seed }).unwrap();
        let p = random_equitable_partition(&g, l, pseed).unwrap();
        prop_assert!(p.parts().iter().all(|part| part.len() == per));
        for e in g.edges() {
            let mut parts: Vec<usize> = e.iter().map(|v| p.part_of(*v).unwrap()).collect();
            parts.sort_unstable();
            parts.dedup();
            let transversal = parts.len() == l;
            prop_assert_eq!(p.to_part_order(e).is_some_and(|t| p.contains_edge(&t)), transversal);
        }
        prop_assert!(p.edge_count() <= g.edge_count());
    }

    #[test]
    fn density_recurrence_matches_closed_form(num in 1i64..=8, s in 1u32..=4, l in 1usize..=5) {
        let eps = ratio(num, 8);
        let seq = density_recurrence(eps.clone(), s, l);
        // seq lists delta_l first
        for (i, d) in seq.iter().enumerate() {
            prop_assert_eq!(d, &closed_form_density(&eps, s, i as u32));
        }
    }
}

/// Property (b) on 10^4 random chains at m = 16.
#[test]
fn chains_at_m16() {
    use rand::Rng as _;
    let mut r = hyperramsey::rng::seeded(16);
    for _ in 0..10_000 {
        let len = r.gen_range(2..=10);
        let s = strings(16, (0..len).map(|_| r.gen()).collect());
        if s.len() < 2 {
            continue;
        }
        assert!(delta_max_property(&s).unwrap());
        for w in s.windows(2) {
            assert_eq!(string_order(&w[0], &w[1]).unwrap(), Ordering::Less);
        }
    }
}
