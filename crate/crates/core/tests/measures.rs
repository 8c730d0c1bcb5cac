use std::collections::BTreeSet;

use fmeas_core::catalog::{
    cyclic, dihedral, direct_product, elementary_abelian, klein_four, small_groups, symmetric,
};
use fmeas_core::galois::{GaloisSetup, SubextLattice};
use fmeas_core::hom::quotient;
use fmeas_core::measure::{MeasureConfig, MeasureEngine, TowerSetup};
use fmeas_core::subgroup::{all_subgroups, generated_subgroup, normal_subgroups, Subgroup};
use fmeas_core::verify::{alternative_normal_checks, setups_of, tower_suite};
use fmeas_core::{BigRational, FiniteGroup};
use num_traits::Zero;

/// Closure by repeated multiplication until nothing new appears.
fn naive_closure(g: &FiniteGroup, gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = gens.iter().copied().collect();
    set.insert(0);
    loop {
        let products: Vec<usize> = set
            .iter()
            .flat_map(|&a| set.iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.mul(a, b))
            .filter(|x| !set.contains(x))
            .collect();
        if products.is_empty() {
            return set;
        }
        set.extend(products);
    }
}

fn tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    (0..k.pow(n as u32))
        .map(|mut c| {
            let mut t = vec![0; n];
            for slot in t.iter_mut().rev() {
                *slot = c % k;
                c /= k;
            }
            t
        })
        .collect()
}

/// Transition rows from first principles: enumerate the translations, close
/// naively, and locate the generated subgroup among the members.
fn oracle_rows(lattice: &SubextLattice) -> Vec<Vec<BigRational>> {
    let setup = lattice.setup();
    let g = setup.group();
    let r = setup.projection();
    let member_sets: Vec<BTreeSet<usize>> = lattice
        .members()
        .iter()
        .map(|h| h.elements().iter().copied().collect())
        .collect();
    member_sets
        .iter()
        .map(|h| {
            let lift: Vec<usize> = setup
                .sigma_bar()
                .iter()
                .map(|&q| *h.iter().find(|&&x| r.apply(x) == q).unwrap())
                .collect();
            let trans: Vec<usize> = h
                .iter()
                .copied()
                .filter(|&x| setup.normal().contains(x))
                .collect();
            let all = tuples(trans.len(), lift.len());
            let mut row = vec![BigRational::zero(); member_sets.len()];
            let weight = BigRational::new(1.into(), all.len().into());
            for t in all {
                let gens: Vec<usize> = lift
                    .iter()
                    .zip(&t)
                    .map(|(&l, &i)| g.mul(l, trans[i]))
                    .collect();
                let closed = naive_closure(g, &gens);
                let j = member_sets
                    .iter()
                    .position(|m| *m == closed)
                    .expect("member");
                row[j] += &weight;
            }
            row
        })
        .collect()
}

#[test]
fn transition_rows_match_naive_enumeration() {
    let config = MeasureConfig::default();
    let mut checked = 0;
    for c in small_groups(12) {
        let subs = all_subgroups(&c.group).unwrap();
        for setup in setups_of(&c.group, 2).unwrap() {
            let lattice =
                SubextLattice::from_subgroups(&setup, &Subgroup::whole(&c.group), &subs).unwrap();
            let oracle = oracle_rows(&lattice);
            let engine = MeasureEngine::from_lattice(lattice, &config).unwrap();
            for (i, row) in oracle.iter().enumerate() {
                assert_eq!(
                    engine.transitions().matrix().row(i),
                    &row[..],
                    "{} row {i}",
                    c.name
                );
            }
            checked += 1;
        }
    }
    assert!(checked > 500);
}

#[test]
fn iterates_match_matrix_powers() {
    let config = MeasureConfig::default();
    let g = symmetric(3);
    let setup = GaloisSetup::new(&g, &[], &[1, 2]).unwrap();
    let engine = MeasureEngine::new(&setup, &Subgroup::whole(&g), &config).unwrap();
    let p = engine.transitions().matrix();
    let b = engine.lattice().base_index();
    let mut power = p.clone();
    for i in 1..=12 {
        assert_eq!(engine.mu_i(i).values(), power.row(b), "step {i}");
        power = power.mul(p);
    }
}

#[test]
fn alternative_normal_invariance() {
    let config = MeasureConfig::default();
    let mut same_member_cases = 0;
    for c in small_groups(12) {
        let normals = normal_subgroups(&c.group).unwrap();
        for setup in setups_of(&c.group, 2).unwrap() {
            let lattice = setup.full_lattice().unwrap();
            for n1 in normals
                .iter()
                .filter(|n1| setup.normal().is_subgroup_of(n1))
            {
                let checks = alternative_normal_checks(&lattice, n1, &config).unwrap();
                if checks[0].detail.contains("different member set") {
                    continue;
                }
                same_member_cases += 1;
                assert!(
                    checks[0].passed,
                    "{} N1 = {}: {}",
                    c.name,
                    n1.name(),
                    checks[0]
                );
            }
        }
    }
    assert!(same_member_cases > 100);
}

#[test]
fn alternative_normal_examples() {
    let config = MeasureConfig::default();
    // Z/4 with N = 1 and N₁ = Φ(Z/4): only the whole group maps onto Q
    // either way.
    let g = cyclic(4);
    let setup = GaloisSetup::new(&g, &[], &[1]).unwrap();
    let lattice = setup.full_lattice().unwrap();
    let n1 = generated_subgroup(&g, &[2]).unwrap();
    assert!(alternative_normal_checks(&lattice, &n1, &config).unwrap()[0].passed);
    // Klein four with N = <(1,0)>: enlarging N to the whole group admits the
    // trivial subgroup, so the member sets differ.
    let v = klein_four();
    let setup = GaloisSetup::new(&v, &[2], &[1]).unwrap();
    let lattice = setup.full_lattice().unwrap();
    let check = &alternative_normal_checks(&lattice, &Subgroup::whole(&v), &config).unwrap()[0];
    assert!(!check.passed);
    assert!(check.detail.contains("different member set"));
}

/// Projection of a subgroup of `A × B` onto the first factor.
fn first_factor(h: &Subgroup, a: &FiniteGroup, b_order: usize) -> Subgroup {
    let elems: Vec<usize> = h.elements().iter().map(|&x| x / b_order).collect();
    generated_subgroup(a, &elems).unwrap()
}

fn check_locality(g1: &FiniteGroup, g2: &FiniteGroup) -> usize {
    let config = MeasureConfig::default();
    let prod = direct_product(g1, g2);
    let b = g2.order();
    let mut checked = 0;
    for s1 in setups_of(g1, 2).unwrap() {
        let e1 = MeasureEngine::new(&s1, &Subgroup::whole(g1), &config).unwrap();
        let inf1 = e1.mu_infinity().unwrap();
        for s2 in setups_of(g2, 2)
            .unwrap()
            .iter()
            .filter(|s| s.arity() == s1.arity())
        {
            let normal_gens: Vec<usize> = s1
                .normal()
                .elements()
                .iter()
                .flat_map(|&x| s2.normal().elements().iter().map(move |&y| x * b + y))
                .collect();
            let sigma: Vec<usize> = s1
                .sigma()
                .iter()
                .zip(s2.sigma())
                .map(|(&x, &y)| x * b + y)
                .collect();
            let setup = GaloisSetup::new(&prod, &normal_gens, &sigma).unwrap();
            let engine = MeasureEngine::new(&setup, &Subgroup::whole(&prod), &config).unwrap();
            let inf = engine.mu_infinity().unwrap();
            let map: Vec<usize> = engine
                .lattice()
                .members()
                .iter()
                .map(|h| {
                    e1.lattice()
                        .index_of(&first_factor(h, g1, b))
                        .expect("projects to a member")
                })
                .collect();
            assert_eq!(
                inf.pushforward(&map, e1.lattice().len()),
                inf1,
                "sigma {sigma:?}"
            );
            checked += 1;
        }
    }
    checked
}

#[test]
fn coprime_factor_locality() {
    let mut checked = 0;
    checked += check_locality(&cyclic(2), &cyclic(3));
    checked += check_locality(&cyclic(3), &cyclic(2));
    checked += check_locality(&klein_four(), &cyclic(3));
    checked += check_locality(&symmetric(3), &cyclic(5));
    checked += check_locality(&dihedral(5), &cyclic(3));
    assert!(checked > 50, "{checked}");
}

#[test]
fn quotient_towers_push_forward() {
    let config = MeasureConfig::default();
    let mut towers = 0;
    for c in small_groups(12) {
        for setup in setups_of(&c.group, 2).unwrap() {
            for k in normal_subgroups(&c.group).unwrap() {
                if k.is_trivial() || !k.is_subgroup_of(setup.normal()) {
                    continue;
                }
                let (lower_group, pi) = quotient(&c.group, &k).unwrap();
                let lower_normal = pi.image_of(setup.normal());
                let lower_sigma: Vec<usize> = setup.sigma().iter().map(|&s| pi.apply(s)).collect();
                let lower =
                    GaloisSetup::with_normal(&lower_group, lower_normal, &lower_sigma).unwrap();
                let tower = TowerSetup::new(setup.clone(), lower, pi).unwrap();
                let checks = tower_suite(&tower, &Subgroup::whole(&c.group), &config).unwrap();
                assert!(
                    checks.iter().all(|ch| ch.passed),
                    "{}: {}",
                    c.name,
                    checks[0]
                );
                towers += 1;
            }
        }
    }
    assert!(towers > 200, "{towers}");
}

#[test]
fn product_tower_onto_a_factor() {
    let config = MeasureConfig::default();
    let g = direct_product(&elementary_abelian(2, 2), &cyclic(3));
    let (lower_group, pi) = quotient(&g, &generated_subgroup(&g, &[1]).unwrap()).unwrap();
    let upper = GaloisSetup::new(&g, &[3, 1], &[6]).unwrap();
    let lower_normal = pi.image_of(upper.normal());
    let lower = GaloisSetup::with_normal(&lower_group, lower_normal, &[pi.apply(6)]).unwrap();
    let tower = TowerSetup::new(upper, lower, pi).unwrap();
    let checks = tower_suite(&tower, &Subgroup::whole(&g), &config).unwrap();
    assert!(checks[0].passed, "{}", checks[0]);
}
