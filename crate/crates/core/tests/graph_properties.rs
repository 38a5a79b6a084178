mod common;

use std::collections::BTreeSet;

use causalq::{
    canonical_cycle_order, chordless_cycles, eval_marker, synthesize_marker, synthesize_marker_with,
    Cycle, FixedMode, Orientation, Topology,
};
use common::*;
use proptest::prelude::*;

fn test_topologies() -> Vec<Topology> {
    let mut all = corpus();
    all.extend(random_corpus(0x5eed, 60, 6));
    all
}

fn all_orientations(t: &Topology) -> impl Iterator<Item = Orientation> + '_ {
    (0..1u64 << t.edge_count()).map(|b| Orientation::from_bits(b, t.edge_count()))
}

#[test]
fn kahn_agrees_with_cycle_walk() {
    for t in test_topologies() {
        let cycles = brute_force_cycles(&t);
        for o in all_orientations(&t) {
            assert_eq!(
                t.is_acyclic(&o).unwrap(),
                !has_directed_cycle(&t, &cycles, &o),
                "{} {o}",
                t.name()
            );
        }
    }
}

#[test]
fn acyclicity_is_reversal_invariant() {
    for t in test_topologies() {
        for o in all_orientations(&t) {
            assert_eq!(t.is_acyclic(&o).unwrap(), t.is_acyclic(&o.reverse()).unwrap());
        }
        let total = t.enumerate_acyclic(20).unwrap().len();
        assert_eq!(total % 2, 0);
        for edge in 0..t.edge_count() {
            for value in [false, true] {
                let fixed = t.with_fixed(Some(causalq::FixedEdge::new(edge, value))).unwrap();
                assert_eq!(fixed.enumerate_causal().unwrap().len() * 2, total);
            }
        }
    }
}

#[test]
fn acyclic_count_matches_chromatic_polynomial() {
    for t in test_topologies() {
        let total = t.enumerate_acyclic(20).unwrap().len() as i64;
        assert_eq!(total, chromatic_at(&t, -1).abs(), "{}", t.name());
    }
}

#[test]
fn enumeration_equals_filtering_every_bitstring() {
    for t in test_topologies() {
        let t = t.with_fixed(Some(Default::default())).unwrap();
        let filtered: Vec<Orientation> = all_orientations(&t)
            .filter(|o| o.bit(0) && t.is_acyclic(o).unwrap())
            .collect();
        assert_eq!(t.enumerate_causal().unwrap(), filtered);
    }
}

#[test]
fn chordless_cycles_match_exhaustive_search() {
    for t in test_topologies() {
        let fast: Vec<BTreeSet<usize>> = chordless_cycles(&t)
            .iter()
            .map(|c| c.edges.iter().copied().collect())
            .collect();
        let mut slow = brute_force_chordless(&t);
        slow.sort_by_key(|s| s.iter().copied().collect::<Vec<_>>());
        assert_eq!(fast, slow, "{}", t.name());
    }
}

#[test]
fn returned_cycles_satisfy_their_invariants() {
    for t in test_topologies() {
        for c in chordless_cycles(&t) {
            assert!(c.is_valid_chordless(&t), "{} {c:?}", t.name());
            assert_eq!(canonical_cycle_order(&c), c);
            assert_eq!(c.edges[0], *c.edges.iter().min().unwrap());
            assert!(!c.alignments[0]);
        }
    }
}

#[test]
fn chordless_cycles_detect_every_directed_cycle() {
    for t in test_topologies() {
        let chordless = chordless_cycles(&t);
        for o in all_orientations(&t) {
            let directed = chordless.iter().any(|c| c.is_uniformly_directed(&o));
            assert_eq!(!t.is_acyclic(&o).unwrap(), directed, "{} {o}", t.name());
        }
    }
}

#[test]
fn marker_equals_acyclicity_and_fixed_bit() {
    for t in test_topologies() {
        let spec = synthesize_marker(&t);
        let fixed = spec.fixed.unwrap();
        for o in all_orientations(&t) {
            let expected = t.is_acyclic(&o).unwrap() && fixed.holds(&o);
            assert_eq!(eval_marker(&spec, &o).unwrap(), expected, "{} {o}", t.name());
        }
        let free = synthesize_marker_with(&t, FixedMode::Unconstrained).unwrap();
        for o in all_orientations(&t) {
            assert_eq!(free.eval(&o).unwrap(), t.is_acyclic(&o).unwrap());
        }
    }
}

#[test]
fn cycle_clause_is_false_exactly_when_cycle_is_uniform() {
    for t in test_topologies() {
        let spec = synthesize_marker(&t);
        for o in all_orientations(&t) {
            for clause in &spec.cycles {
                let conj = clause.comparisons.iter().all(|&k| spec.comparisons[k].eval(&o));
                let senses: BTreeSet<bool> = clause
                    .cycle
                    .edges
                    .iter()
                    .zip(&clause.cycle.alignments)
                    .map(|(&e, &a)| o.bit(e) ^ a)
                    .collect();
                assert_eq!(conj, senses.len() == 1);
            }
        }
    }
}

#[test]
fn marker_structure_invariants() {
    for t in test_topologies() {
        let spec = synthesize_marker(&t);
        let mut referenced = vec![false; spec.comparisons.len()];
        for clause in &spec.cycles {
            assert_eq!(clause.comparisons.len(), clause.cycle.len() - 1);
            for &k in &clause.comparisons {
                referenced[k] = true;
                let c = spec.comparisons[k];
                assert!(c.lo < c.hi);
            }
        }
        assert!(referenced.iter().all(|&r| r));
        let mut sorted = spec.comparisons.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, spec.comparisons);
        // synthesis is deterministic
        assert_eq!(
            serde_json::to_string(&spec).unwrap(),
            serde_json::to_string(&synthesize_marker(&t)).unwrap()
        );
    }
}

#[test]
fn triangle_with_parallel_edge() {
    let t = Topology::new(
        "t",
        vec!["v0".into(), "v1".into(), "v2".into()],
        vec![
            causalq::Edge { id: 0, tail: "v0".into(), head: "v1".into() },
            causalq::Edge { id: 1, tail: "v1".into(), head: "v2".into() },
            causalq::Edge { id: 2, tail: "v2".into(), head: "v0".into() },
            causalq::Edge { id: 3, tail: "v0".into(), head: "v1".into() },
        ],
        None,
    )
    .unwrap();
    let mut expected = brute_force_chordless(&t);
    expected.sort_by_key(|s| s.iter().copied().collect::<Vec<_>>());
    assert_eq!(expected.len(), 3);
    let got: Vec<BTreeSet<usize>> =
        chordless_cycles(&t).iter().map(|c: &Cycle| c.edges.iter().copied().collect()).collect();
    assert_eq!(got, expected);
}

proptest! {
    #[test]
    fn reverse_is_an_involution(bits in any::<u64>(), len in 0usize..=64) {
        let o = Orientation::from_bits(bits, len);
        prop_assert_eq!(o.reverse().reverse(), o);
        prop_assert_eq!(o.to_string().parse::<Orientation>().unwrap(), o);
    }

    #[test]
    fn canonical_order_ignores_rotation_and_direction(index in 0usize..5, shift in 0usize..4, flip in any::<bool>()) {
        let t = four_eloop();
        let c = &chordless_cycles(&t)[index];
        let k = c.len();
        let shift = shift % k;
        let mut vertices: Vec<usize> = (0..k).map(|i| c.vertices[(i + shift) % k]).collect();
        let mut edges: Vec<usize> = (0..k).map(|i| c.edges[(i + shift) % k]).collect();
        if flip {
            // walk the other way round from vertices[0]
            vertices = std::iter::once(vertices[0]).chain(vertices[1..].iter().rev().copied()).collect();
            edges = edges.into_iter().rev().collect();
        }
        let walk = Cycle::from_walk(&t, vertices, edges);
        prop_assert!(walk.is_valid_chordless(&t));
        prop_assert_eq!(&canonical_cycle_order(&walk), c);
    }
}
