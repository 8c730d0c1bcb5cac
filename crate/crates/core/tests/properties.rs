use std::sync::OnceLock;

use fmeas_core::catalog::{small_groups, CorpusGroup};
use fmeas_core::hom::{find_isomorphism, quotient};
use fmeas_core::invsys::CompleteSystem;
use fmeas_core::measure::{MeasureConfig, MeasureEngine};
use fmeas_core::subgroup::{
    all_subgroups, generated_subgroup, normal_closure, normal_subgroups, Subgroup,
};
use fmeas_core::verify::setups_of;
use fmeas_core::FiniteGroup;
use num_traits::Zero;
use proptest::prelude::*;

fn corpus() -> &'static [CorpusGroup] {
    static CORPUS: OnceLock<Vec<CorpusGroup>> = OnceLock::new();
    CORPUS.get_or_init(|| small_groups(16))
}

fn pick(index: usize, max_order: usize) -> &'static FiniteGroup {
    let eligible: Vec<&CorpusGroup> = corpus()
        .iter()
        .filter(|c| c.group.order() <= max_order)
        .collect();
    &eligible[index % eligible.len()].group
}

fn subset(g: &FiniteGroup, raw: &[usize]) -> Vec<usize> {
    raw.iter().map(|&x| x % g.order()).collect()
}

/// `g` with its non-identity elements renamed by the permutation derived
/// from `seed`.
fn relabel(g: &FiniteGroup, seed: &[usize]) -> FiniteGroup {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    for (i, &s) in seed.iter().enumerate().take(n.saturating_sub(2)) {
        let a = 1 + i;
        let b = 1 + (s % (n - 1));
        perm.swap(a, b);
    }
    let mut inverse = vec![0; n];
    for (x, &p) in perm.iter().enumerate() {
        inverse[p] = x;
    }
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| perm[g.mul(inverse[a], inverse[b])])
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&rows, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_subgroup_is_least_containing(index in 0usize..64, raw in prop::collection::vec(0usize..64, 0..4)) {
        let g = pick(index, 16);
        let gens = subset(g, &raw);
        let h = generated_subgroup(g, &gens).unwrap();
        for &x in &gens {
            prop_assert!(h.contains(x));
        }
        for k in all_subgroups(g).unwrap() {
            if gens.iter().all(|&x| k.contains(x)) {
                prop_assert!(h.is_subgroup_of(&k));
            }
        }
    }

    #[test]
    fn normal_closure_is_least_normal_containing(index in 0usize..64, raw in prop::collection::vec(0usize..64, 0..3)) {
        let g = pick(index, 16);
        let gens = subset(g, &raw);
        let n = normal_closure(g, &gens).unwrap();
        prop_assert!(n.is_normal());
        for k in normal_subgroups(g).unwrap() {
            if gens.iter().all(|&x| k.contains(x)) {
                prop_assert!(n.is_subgroup_of(&k));
            }
        }
    }

    #[test]
    fn intersections_and_joins_are_bounds(index in 0usize..64, a in prop::collection::vec(0usize..64, 1..3), b in prop::collection::vec(0usize..64, 1..3)) {
        let g = pick(index, 16);
        let h = generated_subgroup(g, &subset(g, &a)).unwrap();
        let k = generated_subgroup(g, &subset(g, &b)).unwrap();
        let meet = h.intersection(&k);
        let join = h.join(&k);
        prop_assert!(meet.is_subgroup_of(&h) && meet.is_subgroup_of(&k));
        prop_assert!(h.is_subgroup_of(&join) && k.is_subgroup_of(&join));
        prop_assert_eq!(h.order() * k.order() % meet.order(), 0);
    }

    #[test]
    fn quotient_projection_has_the_normal_kernel(index in 0usize..64, pick_normal in 0usize..128) {
        let g = pick(index, 16);
        let normals = normal_subgroups(g).unwrap();
        let n = &normals[pick_normal % normals.len()];
        let (q, r) = quotient(g, n).unwrap();
        prop_assert_eq!(q.order() * n.order(), g.order());
        prop_assert!(r.is_surjective());
        prop_assert_eq!(&r.kernel(), n);
    }

    #[test]
    fn relabelled_groups_are_isomorphic(index in 0usize..64, seed in prop::collection::vec(0usize..64, 16), seed2 in prop::collection::vec(0usize..64, 16)) {
        let g = pick(index, 16);
        let h = relabel(g, &seed);
        let k = relabel(&h, &seed2);
        let f = find_isomorphism(g, &h).unwrap().expect("relabelling is an isomorphism");
        prop_assert!(f.is_injective() && f.is_surjective());
        let f2 = find_isomorphism(&h, &k).unwrap().expect("relabelling is an isomorphism");
        let composite = f.then(&f2).unwrap();
        prop_assert!(composite.is_injective());
        prop_assert!(find_isomorphism(&k, g).unwrap().is_some());
    }

    #[test]
    fn measures_are_probability_vectors_on_the_order(index in 0usize..64, choice in 0usize..4096, steps in 0usize..6) {
        let g = pick(index, 12);
        let setups = setups_of(g, 2).unwrap();
        let setup = &setups[choice % setups.len()];
        let engine = MeasureEngine::new(setup, &Subgroup::whole(g), &MeasureConfig::default()).unwrap();
        let lattice = engine.lattice();
        let base = lattice.base_index();
        let mu = engine.mu_i(steps);
        prop_assert!(mu.is_probability());
        for j in 0..lattice.len() {
            if !mu.get(j).is_zero() {
                prop_assert!(lattice.field_le(base, j));
            }
        }
        prop_assert_eq!(engine.transitions().step(&mu), engine.mu_i(steps + 1));
        let all: Vec<usize> = (0..lattice.len()).collect();
        prop_assert!(engine.measure_event(&all).unwrap() == num_traits::One::one());
    }

    #[test]
    fn generated_subsystems_are_closed_monotone_and_idempotent(index in 0usize..64, a in prop::collection::vec(0usize..512, 0..4), b in prop::collection::vec(0usize..512, 0..3)) {
        let g = pick(index, 12);
        let s = CompleteSystem::new(g).unwrap();
        let a: Vec<usize> = a.iter().map(|&x| x % s.len()).collect();
        let mut ab = a.clone();
        ab.extend(b.iter().map(|&x| x % s.len()));
        let ga = s.generated_subsystem(&a).positions_in(&s);
        let gab = s.generated_subsystem(&ab).positions_in(&s);
        prop_assert!(s.is_closed(&ga));
        prop_assert!(a.iter().all(|x| ga.contains(x)));
        prop_assert!(ga.contains(&s.one()));
        prop_assert!(ga.iter().all(|x| gab.contains(x)));
        prop_assert_eq!(s.generated_subsystem(&ga).positions_in(&s), ga);
    }
}
