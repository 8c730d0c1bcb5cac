//! Invariant suites over a single setup or group. Each check reports a name,
//! a verdict and a short detail line (a counterexample on failure).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::frattini::{
    cover_by_kernel_with, cover_by_subgroups_with, frattini_cover_by_kernel, frattini_subgroup,
    is_frattini_restriction,
};
use crate::galois::{GaloisSetup, SubextLattice};
use crate::group::{Elem, FiniteGroup};
use crate::hom::{epimorphisms, image_classes, isomorphic, quotient};
use crate::invsys::{dual_embedding, level_kernel, CompleteSystem};
use crate::markov::classify;
use crate::measure::{
    absorption, mu1_counts, pushforward_check, MeasureConfig, MeasureEngine, MeasureVector,
    TowerSetup, TransitionMatrix,
};
use crate::subgroup::{self, Subgroup};

/// Number of iterates checked for monotonicity at maximal members.
pub const MONOTONE_STEPS: usize = 16;
/// Iterates compared in the tower suite.
pub const TOWER_STEPS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_failures(name: &str, checked: usize, failures: Vec<String>) -> Self {
        match failures.first() {
            None => Check::new(name, true, format!("{checked} cases")),
            Some(first) => Check::new(
                name,
                false,
                format!("{} of {checked} cases fail; first: {first}", failures.len()),
            ),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// `mu1` from every member agrees for every lift of the quotient tuple, and
/// every lift into a maximal member generates it.
pub fn lift_suite(
    setup: &GaloisSetup,
    base: &Subgroup,
    config: &MeasureConfig,
) -> Result<Vec<Check>> {
    lift_checks(&setup.lattice(base)?, config)
}

pub fn lift_checks(lattice: &SubextLattice, config: &MeasureConfig) -> Result<Vec<Check>> {
    let setup = lattice.setup();
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut gen_checked = 0;
    let mut gen_failures = Vec::new();
    for i in 0..lattice.len() {
        let h = lattice.member(i);
        let lifts = setup.lifts_in(h);
        let reference = mu1_counts(lattice, i, &lifts[0], config)?;
        for lift in &lifts {
            checked += 1;
            let row = mu1_counts(lattice, i, lift, config)?;
            if row != reference {
                failures.push(format!(
                    "base {} lift {:?}: {} vs {}",
                    lattice.name(i),
                    lift,
                    row.to_measure(),
                    reference.to_measure()
                ));
            }
            if lattice.is_maximal(i) {
                gen_checked += 1;
                if setup.group().closure(lift) != *h.bits() {
                    gen_failures.push(format!("lift {:?} in {}", lift, lattice.name(i)));
                }
            }
        }
    }
    Ok(vec![
        Check::from_failures("lifts: mu1 does not depend on the lift", checked, failures),
        Check::from_failures(
            "lifts: lifts into maximal members generate them",
            gen_checked,
            gen_failures,
        ),
    ])
}

/// With a second normal subgroup `N₁ ⊇ N` defining the same member set, the
/// transition rows computed from `N₁` equal those computed from `N`.
pub fn alternative_normal_checks(
    lattice: &SubextLattice,
    alternative: &Subgroup,
    config: &MeasureConfig,
) -> Result<Vec<Check>> {
    let setup = lattice.setup();
    let name = "lattice: alternative normal subgroup gives the same measures";
    if !setup.normal().is_subgroup_of(alternative) {
        return Ok(vec![Check::new(
            name,
            false,
            "alternative does not contain N",
        )]);
    }
    let alt_setup = GaloisSetup::with_normal(setup.group(), alternative.clone(), setup.sigma())?;
    let alt = alt_setup.lattice(lattice.base())?;
    let same_members = alt.members() == lattice.members();
    if !same_members {
        return Ok(vec![Check::new(
            name,
            false,
            "the alternative normal subgroup defines a different member set",
        )]);
    }
    let a = TransitionMatrix::build(lattice, config)?;
    let b = TransitionMatrix::build(&alt, config)?;
    let bad: Vec<String> = (0..lattice.len())
        .filter(|&i| a.matrix().row(i) != b.matrix().row(i))
        .map(|i| {
            format!(
                "row {}: {} vs {}",
                lattice.name(i),
                a.row_counts(i).to_measure(),
                b.row_counts(i).to_measure()
            )
        })
        .collect();
    Ok(vec![Check::from_failures(name, lattice.len(), bad)])
}

/// Every setup `(G, N, σ′)` with `N` normal and `1 ≤ n ≤ max_arity`, one per
/// generating tuple of `G/N`; `σ′` is the least-index lift. Ordered by normal
/// subgroup, then arity, then tuple.
pub fn setups_of(group: &FiniteGroup, max_arity: usize) -> Result<Vec<GaloisSetup>> {
    let mut out = Vec::new();
    for normal in subgroup::normal_subgroups(group)? {
        let (q, r) = quotient(group, &normal)?;
        let section: Vec<Elem> = (0..q.order())
            .map(|x| {
                (0..group.order())
                    .find(|&g| r.apply(g) == x)
                    .expect("projection is onto")
            })
            .collect();
        for n in 1..=max_arity {
            let total = q.order().pow(n as u32);
            for code in 0..total {
                let mut tuple = vec![0; n];
                let mut c = code;
                for slot in tuple.iter_mut().rev() {
                    *slot = c % q.order();
                    c /= q.order();
                }
                if q.closure(&tuple).len() != q.order() {
                    continue;
                }
                let sigma: Vec<Elem> = tuple.iter().map(|&x| section[x]).collect();
                out.push(GaloisSetup::with_normal(group, normal.clone(), &sigma)?);
            }
        }
    }
    Ok(out)
}

/// Largest coordinatewise `|a_j − b_j|`.
pub fn max_deviation(a: &MeasureVector, b: &MeasureVector) -> BigRational {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// Absorbing, ergodic and maximal members coincide; the limit concentrates
/// on the maximal members, dominates `μ¹` there, and is an exact fixed point.
pub fn markov_suite(
    setup: &GaloisSetup,
    base: &Subgroup,
    config: &MeasureConfig,
) -> Result<Vec<Check>> {
    let engine = MeasureEngine::new(setup, base, config)?;
    markov_checks(&engine)
}

pub fn markov_checks(engine: &MeasureEngine) -> Result<Vec<Check>> {
    let lattice = engine.lattice();
    let p = engine.transitions();
    let m = lattice.len();
    let class = classify(p.matrix());
    let mut out = Vec::new();

    let bad: Vec<String> = (0..m)
        .filter(|&i| {
            let max = lattice.is_maximal(i);
            class.absorbing[i] != max || class.ergodic[i] != max
        })
        .map(|i| {
            format!(
                "{}: maximal={} absorbing={} ergodic={}",
                lattice.name(i),
                lattice.is_maximal(i),
                class.absorbing[i],
                class.ergodic[i]
            )
        })
        .collect();
    out.push(Check::from_failures(
        "markov: absorbing = ergodic = maximal",
        m,
        bad,
    ));

    let bad: Vec<String> = (0..m)
        .filter(|&i| {
            let frattini =
                is_frattini_restriction(lattice.member(i), setup_r(engine)).unwrap_or(false);
            frattini != lattice.is_maximal(i)
        })
        .map(|i| lattice.name(i))
        .collect();
    out.push(Check::from_failures(
        "lattice: maximal iff no proper subgroup maps onto Q",
        m,
        bad,
    ));

    let abs = absorption(p)?;
    out.push(Check::new(
        "markov: P [I; B] = [I; B]",
        abs.certified,
        format!(
            "{} transient, {} absorbing",
            m - lattice.maximal_count(),
            lattice.maximal_count()
        ),
    ));

    let inf = engine.mu_infinity()?;
    let mu1 = engine.mu1();
    out.push(Check::new(
        "markov: limit is a probability vector",
        inf.is_probability(),
        inf.to_string(),
    ));
    let bad: Vec<String> = (0..m)
        .filter(|&i| {
            let v = inf.get(i);
            if lattice.is_maximal(i) {
                !v.is_positive()
            } else {
                !v.is_zero()
            }
        })
        .map(|i| format!("{} has mass {}", lattice.name(i), inf.get(i)))
        .collect();
    out.push(Check::from_failures(
        "markov: limit vanishes exactly off the maximal members",
        m,
        bad,
    ));
    let bad: Vec<String> = (0..lattice.maximal_count())
        .filter(|&i| !mu1.get(i).is_positive() || mu1.get(i) > inf.get(i))
        .map(|i| {
            format!(
                "{}: mu1 {} limit {}",
                lattice.name(i),
                mu1.get(i),
                inf.get(i)
            )
        })
        .collect();
    out.push(Check::from_failures(
        "markov: 0 < mu1 <= limit at maximal members",
        lattice.maximal_count(),
        bad,
    ));
    let stepped = p.step(&inf);
    out.push(Check::new(
        "markov: limit is a fixed point of the transition matrix",
        stepped == inf,
        if stepped == inf {
            "exact".to_string()
        } else {
            format!("{stepped} != {inf}")
        },
    ));

    let seq = engine.mu_sequence(MONOTONE_STEPS);
    let mut bad = Vec::new();
    for w in seq.windows(2) {
        for i in 0..lattice.maximal_count() {
            if w[1].get(i) < w[0].get(i) {
                bad.push(format!("{} decreases", lattice.name(i)));
            }
        }
    }
    let bad_upper: Vec<String> = seq
        .iter()
        .enumerate()
        .flat_map(|(step, v)| {
            (0..lattice.maximal_count())
                .filter(|&i| v.get(i) > inf.get(i))
                .map(move |i| format!("step {step} member {i} exceeds the limit"))
        })
        .collect();
    bad.extend(bad_upper);
    out.push(Check::from_failures(
        "markov: mu^i non-decreasing and bounded by the limit at maximal members",
        MONOTONE_STEPS * lattice.maximal_count(),
        bad,
    ));
    Ok(out)
}

fn setup_r(engine: &MeasureEngine) -> &crate::hom::GroupHom {
    engine.lattice().setup().projection()
}

/// Pushforward of every iterate up to [`TOWER_STEPS`] and of the limit.
pub fn tower_suite(
    tower: &TowerSetup,
    upper_base: &Subgroup,
    config: &MeasureConfig,
) -> Result<Vec<Check>> {
    let report = pushforward_check(tower, upper_base, TOWER_STEPS, config)?;
    let failures: Vec<String> = report
        .steps
        .iter()
        .filter(|s| !s.agrees())
        .map(|s| {
            let step = s.step.map_or("inf".to_string(), |i| i.to_string());
            format!("step {step}: pushed {} vs lower {}", s.pushed, s.lower)
        })
        .collect();
    Ok(vec![Check::from_failures(
        "tower: pushforward of the upper measure equals the lower measure",
        report.steps.len(),
        failures,
    )])
}

/// Frattini subgroup, agreement of the two cover criteria on every
/// epimorphism onto a quotient, and the composition law over the chains
/// `G ↠ G/M ↠ (G/M)/K`. Coverness is invariant under composing with an
/// isomorphism, so these chains cover all chains up to isomorphism.
pub fn frattini_suite(group: &FiniteGroup) -> Result<Vec<Check>> {
    let report = frattini_subgroup(group)?;
    let phi = &report.frattini_subgroup;
    let meet_ok = report
        .maximal_subgroups
        .iter()
        .all(|m| phi.is_subgroup_of(m));
    let mut out = vec![Check::new(
        "frattini: Φ(G) is normal and inside every maximal subgroup",
        meet_ok && phi.is_normal(),
        format!(
            "|Φ| = {}, {} maximal subgroups",
            phi.order(),
            report.maximal_subgroups.len()
        ),
    )];

    let classes = image_classes(group)?;
    let subs = subgroup::all_subgroups(group)?;
    let mut checked = 0;
    let mut failures = Vec::new();
    for c in &classes {
        for e in epimorphisms(group, &c.group) {
            checked += 1;
            let a = cover_by_kernel_with(&e, phi);
            let b = cover_by_subgroups_with(&e, &subs);
            if a != b {
                failures.push(format!(
                    "onto order {}: kernel {a}, subgroups {b}",
                    c.group.order()
                ));
            }
        }
    }
    out.push(Check::from_failures(
        "frattini: kernel criterion agrees with subgroup criterion",
        checked,
        failures,
    ));

    let mut checked = 0;
    let mut failures = Vec::new();
    for m in subgroup::normal_subgroups(group)? {
        let (mid, phi) = quotient(group, &m)?;
        let phi_cover = frattini_cover_by_kernel(&phi)?;
        for c in image_classes(&mid)? {
            let psi = &c.projection;
            checked += 1;
            let psi_cover = frattini_cover_by_kernel(psi)?;
            let composite = frattini_cover_by_kernel(&phi.then(psi)?)?;
            if composite != (phi_cover && psi_cover) {
                failures.push(format!(
                    "|M| = {}, onto order {}: composite {composite}, parts {phi_cover} and {psi_cover}",
                    m.order(),
                    c.group.order()
                ));
            }
        }
    }
    out.push(Check::from_failures(
        "frattini: composite is a cover iff both factors are",
        checked,
        failures,
    ));
    Ok(out)
}

/// Round trip, closure and minimality of generated subsystems, the level
/// tower, and functoriality of the dual embedding.
pub fn invsys_suite(group: &FiniteGroup) -> Result<Vec<Check>> {
    let s = CompleteSystem::new(group)?;
    let mut out = Vec::new();
    let (dual, _) = s.dual_group()?;
    out.push(Check::new(
        "invsys: G(S(G)) is isomorphic to G",
        isomorphic(&dual, group)?,
        format!("|S(G)| = {}", s.len()),
    ));

    // Generators: one coset of each normal, each pair of normals, and each
    // sort-bounded part.
    let k = s.normals().len();
    let mut generator_sets: Vec<Vec<usize>> = Vec::new();
    for a in 0..k {
        generator_sets.push(vec![s.find(a, 0).expect("normal is included")]);
        for b in a + 1..k {
            generator_sets.push(vec![s.find(a, 0).unwrap(), s.find(b, 0).unwrap()]);
        }
    }
    for i in divisors(group.order()) {
        generator_sets.push(s.of_sort(i));
    }
    let mut checked = 0;
    let mut failures = Vec::new();
    for a in &generator_sets {
        checked += 1;
        let sub = s.generated_subsystem(a);
        let set = sub.positions_in(&s);
        if !s.is_closed(&set) {
            failures.push(format!("closure of {a:?} is not closed"));
            continue;
        }
        for (pos, &x) in set.iter().enumerate() {
            if x == s.one() || a.contains(&x) {
                continue;
            }
            let mut smaller = set.clone();
            smaller.remove(pos);
            if s.is_closed(&smaller) {
                failures.push(format!("closure of {a:?} stays closed without {x}"));
            }
        }
    }
    out.push(Check::from_failures(
        "invsys: generated subsystems are closed and minimal",
        checked,
        failures,
    ));

    // Level tower.
    let n = group.order();
    let kernels: Vec<Subgroup> = (1..=n)
        .map(|i| level_kernel(group, i))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for i in 0..n {
        for j in i..n {
            if !kernels[j].is_subgroup_of(&kernels[i]) {
                failures.push(format!("G_{} is not a quotient of G_{}", i + 1, j + 1));
            }
        }
    }
    if !kernels[n - 1].is_trivial() {
        failures.push(format!("G_{n} is not G"));
    }
    out.push(Check::from_failures(
        "invsys: G_i is a quotient of G_j for i <= j",
        n * (n + 1) / 2,
        failures,
    ));

    let mut checked = 0;
    let mut failures = Vec::new();
    let mut seen_kernels: Vec<&Subgroup> = Vec::new();
    for j in 1..=n {
        let kj = &kernels[j - 1];
        if seen_kernels.contains(&kj) {
            continue;
        }
        seen_kernels.push(kj);
        let (_, proj) = quotient(group, kj)?;
        let emb = dual_embedding(&proj)?;
        for i in 1..=j {
            checked += 1;
            let mut image: Vec<usize> = emb.source.of_sort(i).iter().map(|&x| emb.map[x]).collect();
            image.sort_unstable();
            if image != s.of_sort(i) {
                failures.push(format!("sort <= {i} differs between S(G_{j}) and S(G)"));
            }
        }
    }
    out.push(Check::from_failures(
        "invsys: S(G_j) and S(G) agree in sorts <= i for j >= i",
        checked,
        failures,
    ));

    let mut checked = 0;
    let mut failures = Vec::new();
    for m in s.normals() {
        checked += 1;
        let (_, proj) = quotient(group, m)?;
        if let Err(e) = dual_embedding(&proj)?.check() {
            failures.push(format!("G -> G/N with |N| = {}: {e}", m.order()));
        }
    }
    out.push(Check::from_failures(
        "invsys: dual embeddings preserve and reflect C, <=, P and 1",
        checked,
        failures,
    ));
    Ok(out)
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `2^-bits` as an exact rational.
pub fn two_to_minus(bits: u32) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(1) << bits)
}
