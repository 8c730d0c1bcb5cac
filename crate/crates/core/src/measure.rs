//! The first measure `μ¹`, its iterates `μ^i`, and the limit `μ^∞`.
//!
//! All values are exact. `μ¹` rows are integer counts over an explicit
//! enumeration of translation tuples; `μ^i` is propagated over a common
//! integer denominator; `μ^∞` comes from the absorbing-chain solve
//! `(I − Q) B = R` and is certified as a fixed point.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::galois::{GaloisSetup, SubextLattice};
use crate::group::Elem;
use crate::hom::GroupHom;
use crate::linalg::Matrix;
use crate::subgroup::Subgroup;

/// Default bound on `|H ∩ N|^n` per row.
pub const DEFAULT_TUPLE_CAP: u128 = 10_000_000;

/// Rows with fewer tuples than this are enumerated on one thread.
const PARALLEL_THRESHOLD: u128 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasureConfig {
    pub tuple_cap: u128,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        MeasureConfig {
            tuple_cap: DEFAULT_TUPLE_CAP,
        }
    }
}

/// An exact probability vector indexed by lattice members.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MeasureVector {
    values: Vec<BigRational>,
}

impl MeasureVector {
    pub fn new(values: Vec<BigRational>) -> Self {
        MeasureVector { values }
    }

    pub fn point_mass(len: usize, at: usize) -> Self {
        let mut values = vec![BigRational::zero(); len];
        values[at] = BigRational::one();
        MeasureVector { values }
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, i: usize) -> &BigRational {
        &self.values[i]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> BigRational {
        self.values.iter().sum()
    }

    /// Non-negative with total exactly one.
    pub fn is_probability(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative_value()) && self.total().is_one()
    }

    /// Mass of a set of member indices.
    pub fn event(&self, members: &[usize]) -> Result<BigRational> {
        let mut seen = vec![false; self.len()];
        let mut sum = BigRational::zero();
        for &m in members {
            if m >= self.len() {
                return Err(Error::NotAMember);
            }
            if !std::mem::replace(&mut seen[m], true) {
                sum += &self.values[m];
            }
        }
        Ok(sum)
    }

    /// Image measure along a map of indices into a space of size `len`.
    pub fn pushforward(&self, map: &[usize], len: usize) -> MeasureVector {
        let mut values = vec![BigRational::zero(); len];
        for (i, v) in self.values.iter().enumerate() {
            values[map[i]] += v;
        }
        MeasureVector { values }
    }
}

trait NonNegative {
    fn is_negative_value(&self) -> bool;
}

impl NonNegative for BigRational {
    fn is_negative_value(&self) -> bool {
        self < &BigRational::zero()
    }
}

impl fmt::Display for MeasureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

/// One row of `μ¹` as exact counts: entry `j` is `counts[j] / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub counts: Vec<u64>,
    pub denominator: u64,
}

impl CountRow {
    pub fn to_measure(&self) -> MeasureVector {
        let d = BigInt::from(self.denominator);
        MeasureVector::new(
            self.counts
                .iter()
                .map(|&c| BigRational::new(BigInt::from(c), d.clone()))
                .collect(),
        )
    }
}

/// Counts `Fix(ℓ₁τ₁, …, ℓₙτₙ)` over all `τ ∈ (H ∩ N)ⁿ`, where `H` is member
/// `base` of `lattice` and `ℓ` is a lift of `r(σ′)` into `H`.
pub fn mu1_counts(
    lattice: &SubextLattice,
    base: usize,
    lift: &[Elem],
    config: &MeasureConfig,
) -> Result<CountRow> {
    let setup = lattice.setup();
    let h = lattice.member(base);
    check_lift(setup, h, lift)?;
    let translations: Vec<Elem> = h
        .elements()
        .iter()
        .copied()
        .filter(|&x| setup.normal().contains(x))
        .collect();
    let k = translations.len();
    let n = lift.len();
    let total = (k as u128)
        .checked_pow(n as u32)
        .filter(|&t| t <= config.tuple_cap)
        .ok_or(Error::CapExceeded {
            what: "translation tuples per row",
            size: (k as u128).saturating_pow(n as u32),
            cap: config.tuple_cap,
        })?;
    let group = setup.group();
    let m = lattice.len();
    // Tuples are numbered in mixed radix with the first coordinate most
    // significant; `count_block` handles all tuples with a fixed first entry.
    let block = total / k as u128;
    let count_block = |first: usize| -> Result<Vec<u64>> {
        let mut counts = vec![0u64; m];
        let mut gens = vec![0; n];
        let mut digits = vec![0usize; n];
        digits[0] = first;
        for _ in 0..block {
            for c in 0..n {
                gens[c] = group.mul(lift[c], translations[digits[c]]);
            }
            let bits = group.closure(&gens);
            let j = lookup(lattice, &bits)?;
            counts[j] += 1;
            for c in (1..n).rev() {
                digits[c] += 1;
                if digits[c] < k {
                    break;
                }
                digits[c] = 0;
            }
        }
        Ok(counts)
    };
    let add = |mut a: Vec<u64>, b: Vec<u64>| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    let counts = if total < PARALLEL_THRESHOLD {
        (0..k)
            .map(count_block)
            .try_fold(vec![0u64; m], |acc, r| r.map(|c| add(acc, c)))?
    } else {
        (0..k)
            .into_par_iter()
            .map(count_block)
            .try_reduce(|| vec![0u64; m], |a, b| Ok(add(a, b)))?
    };
    Ok(CountRow {
        counts,
        denominator: total as u64,
    })
}

fn lookup(lattice: &SubextLattice, bits: &ElemSet) -> Result<usize> {
    lattice.index_of_bits(bits).ok_or_else(|| {
        Error::Internal("translated lift generates a subgroup outside the lattice".into())
    })
}

fn check_lift(setup: &GaloisSetup, h: &Subgroup, lift: &[Elem]) -> Result<()> {
    if lift.len() != setup.arity() {
        return Err(Error::InvalidLift(format!(
            "expected {} coordinates, got {}",
            setup.arity(),
            lift.len()
        )));
    }
    for (c, (&x, &q)) in lift.iter().zip(setup.sigma_bar()).enumerate() {
        setup.group().check_elem(x)?;
        if !h.contains(x) {
            return Err(Error::InvalidLift(format!(
                "coordinate {c} lies outside the base"
            )));
        }
        if setup.projection().apply(x) != q {
            return Err(Error::InvalidLift(format!(
                "coordinate {c} does not map to the quotient tuple"
            )));
        }
    }
    Ok(())
}

fn default_lift(lattice: &SubextLattice, base: usize) -> Result<Vec<Elem>> {
    lattice
        .setup()
        .lift_in(lattice.member(base))
        .ok_or_else(|| Error::Internal("member has no lift of the quotient tuple".into()))
}

/// `μ¹_{L/K}` over `S(L/K)`, using the least-index lift.
pub fn mu1(setup: &GaloisSetup, base: &Subgroup) -> Result<MeasureVector> {
    let lattice = setup.lattice(base)?;
    mu1_on(&lattice, &MeasureConfig::default())
}

/// `μ¹` from the base of an existing lattice.
pub fn mu1_on(lattice: &SubextLattice, config: &MeasureConfig) -> Result<MeasureVector> {
    let b = lattice.base_index();
    Ok(mu1_counts(lattice, b, &default_lift(lattice, b)?, config)?.to_measure())
}

/// `μ¹` from the base of `lattice` with an explicit lift of `r(σ′)` into the
/// base.
pub fn mu1_with_lift(
    lattice: &SubextLattice,
    lift: &[Elem],
    config: &MeasureConfig,
) -> Result<MeasureVector> {
    Ok(mu1_counts(lattice, lattice.base_index(), lift, config)?.to_measure())
}

/// Row `i` is `μ¹_{L/F_i}` expressed on the member order of the lattice.
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    rows: Vec<CountRow>,
    maximal_count: usize,
    matrix: Matrix,
}

impl TransitionMatrix {
    pub fn build(lattice: &SubextLattice, config: &MeasureConfig) -> Result<Self> {
        let m = lattice.len();
        let rows: Vec<CountRow> = (0..m)
            .into_par_iter()
            .map(|i| mu1_counts(lattice, i, &default_lift(lattice, i)?, config))
            .collect::<Result<_>>()?;
        let matrix = Matrix::from_rows(
            rows.iter()
                .map(|r| r.to_measure().values().to_vec())
                .collect(),
        );
        let t = TransitionMatrix {
            rows,
            maximal_count: lattice.maximal_count(),
            matrix,
        };
        t.check_shape(lattice)?;
        Ok(t)
    }

    /// Transitions only enlarge the field, and maximal rows come out of the
    /// enumeration as self unit vectors.
    fn check_shape(&self, lattice: &SubextLattice) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &c) in row.counts.iter().enumerate() {
                if c > 0 && !lattice.field_le(i, j) {
                    return Err(Error::Internal(format!(
                        "transition {i} -> {j} leaves the lattice order"
                    )));
                }
            }
            if lattice.is_maximal(i) && row.counts[i] != row.denominator {
                return Err(Error::Internal(format!(
                    "maximal member {i} is not absorbing"
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn maximal_count(&self) -> usize {
        self.maximal_count
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn row_counts(&self, i: usize) -> &CountRow {
        &self.rows[i]
    }

    /// `v ↦ v P`.
    pub fn step(&self, v: &MeasureVector) -> MeasureVector {
        let m = self.len();
        let mut out = vec![BigRational::zero(); m];
        for (i, vi) in v.values().iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(self.matrix.row(i)) {
                if !p.is_zero() {
                    *o += vi * p;
                }
            }
        }
        MeasureVector::new(out)
    }

    /// `e_start P^i` for `i = 0..=max_steps`, propagated over a common
    /// integer denominator and reduced only on output.
    pub fn iterate(&self, start: usize, max_steps: usize) -> Vec<MeasureVector> {
        let m = self.len();
        let l = self.rows.iter().fold(BigInt::one(), |acc, r| {
            acc.lcm(&BigInt::from(r.denominator))
        });
        // Sparse integer weights: P[i][j] = w / l.
        let weights: Vec<Vec<(usize, BigInt)>> = self
            .rows
            .iter()
            .map(|r| {
                let scale = &l / BigInt::from(r.denominator);
                r.counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(j, &c)| (j, BigInt::from(c) * &scale))
                    .collect()
            })
            .collect();
        let mut num = vec![BigInt::zero(); m];
        num[start] = BigInt::one();
        let mut den = BigInt::one();
        let mut out = Vec::with_capacity(max_steps + 1);
        out.push(reduce(&num, &den));
        for _ in 0..max_steps {
            let mut next = vec![BigInt::zero(); m];
            for (i, x) in num.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, w) in &weights[i] {
                    next[*j] += x * w;
                }
            }
            num = next;
            den *= &l;
            out.push(reduce(&num, &den));
        }
        out
    }
}

fn reduce(num: &[BigInt], den: &BigInt) -> MeasureVector {
    MeasureVector::new(
        num.iter()
            .map(|x| BigRational::new(x.clone(), den.clone()))
            .collect(),
    )
}

/// Absorption probabilities `B = (I − Q)⁻¹ R` for the transient members,
/// with the certificate `P·[I; B] = [I; B]`.
#[derive(Clone, Debug)]
pub struct Absorption {
    /// Row `t` is the transient member `ℓ + t`, column `j` the maximal
    /// member `j`.
    pub b: Matrix,
    pub certified: bool,
}

pub fn absorption(p: &TransitionMatrix) -> Result<Absorption> {
    let m = p.len();
    let l = p.maximal_count();
    let full = p.matrix();
    let q = full.block(l, m, l, m);
    let r = full.block(l, m, 0, l);
    let b = if m == l {
        Matrix::zeros(0, l)
    } else {
        Matrix::identity(m - l).sub(&q).solve(&r)?
    };
    let mut stacked = Matrix::zeros(m, l);
    for i in 0..l {
        stacked[(i, i)] = BigRational::one();
    }
    for t in 0..m - l {
        for j in 0..l {
            stacked[(l + t, j)] = b[(t, j)].clone();
        }
    }
    let certified = full.mul(&stacked) == stacked;
    Ok(Absorption { b, certified })
}

/// Lattice, transition matrix and the measures derived from them.
#[derive(Clone, Debug)]
pub struct MeasureEngine {
    lattice: SubextLattice,
    transitions: TransitionMatrix,
}

impl MeasureEngine {
    pub fn new(setup: &GaloisSetup, base: &Subgroup, config: &MeasureConfig) -> Result<Self> {
        Self::from_lattice(setup.lattice(base)?, config)
    }

    pub fn from_lattice(lattice: SubextLattice, config: &MeasureConfig) -> Result<Self> {
        let transitions = TransitionMatrix::build(&lattice, config)?;
        Ok(MeasureEngine {
            lattice,
            transitions,
        })
    }

    pub fn lattice(&self) -> &SubextLattice {
        &self.lattice
    }

    pub fn transitions(&self) -> &TransitionMatrix {
        &self.transitions
    }

    pub fn mu1(&self) -> MeasureVector {
        self.transitions
            .row_counts(self.lattice.base_index())
            .to_measure()
    }

    pub fn mu_i(&self, i: usize) -> MeasureVector {
        self.mu_sequence(i).pop().expect("sequence is nonempty")
    }

    /// `μ⁰, …, μ^max_steps`.
    pub fn mu_sequence(&self, max_steps: usize) -> Vec<MeasureVector> {
        self.transitions
            .iterate(self.lattice.base_index(), max_steps)
    }

    /// `μ^∞` from the linear solve; fails if the fixed-point certificate
    /// does not hold.
    pub fn mu_infinity(&self) -> Result<MeasureVector> {
        let abs = absorption(&self.transitions)?;
        if !abs.certified {
            return Err(Error::Internal(
                "absorption solve failed certification".into(),
            ));
        }
        let m = self.lattice.len();
        let l = self.lattice.maximal_count();
        let base = self.lattice.base_index();
        if base < l {
            return Ok(MeasureVector::point_mass(m, base));
        }
        let mut values = vec![BigRational::zero(); m];
        for (j, v) in values.iter_mut().enumerate().take(l) {
            *v = abs.b[(base - l, j)].clone();
        }
        Ok(MeasureVector::new(values))
    }

    /// `μ^∞` mass of a set of members.
    pub fn measure_event(&self, members: &[usize]) -> Result<BigRational> {
        self.mu_infinity()?.event(members)
    }
}

/// `π: G_upper ↠ G_lower` compatible with both setups.
#[derive(Clone, Debug)]
pub struct TowerSetup {
    upper: GaloisSetup,
    lower: GaloisSetup,
    pi: GroupHom,
}

impl TowerSetup {
    /// Checks that `π` is onto, `π(N_upper) = N_lower`, `π(σ′_upper) =
    /// σ′_lower`, and that `π(H ∩ N_upper) = π(H) ∩ N_lower` for every member
    /// `H` of the full upper lattice. The last condition makes the lifts of a
    /// lower tuple equidistribute over the upper translations.
    pub fn new(upper: GaloisSetup, lower: GaloisSetup, pi: GroupHom) -> Result<Self> {
        if !pi.source().same_as(upper.group()) || !pi.target().same_as(lower.group()) {
            return Err(Error::Tower(
                "projection does not connect the two groups".into(),
            ));
        }
        if !pi.is_surjective() {
            return Err(Error::Tower("projection is not surjective".into()));
        }
        if pi.image_of(upper.normal()) != *lower.normal() {
            return Err(Error::Tower(
                "projection does not map N onto the lower N".into(),
            ));
        }
        if upper.arity() != lower.arity()
            || upper
                .sigma()
                .iter()
                .zip(lower.sigma())
                .any(|(&u, &l)| pi.apply(u) != l)
        {
            return Err(Error::Tower(
                "projection does not map σ′ onto the lower σ′".into(),
            ));
        }
        for h in upper.full_lattice()?.members() {
            let lhs = pi.image_of(&h.intersection(upper.normal()));
            let rhs = pi.image_of(h).intersection(lower.normal());
            if lhs != rhs {
                return Err(Error::Tower(format!(
                    "π(H ∩ N) differs from π(H) ∩ N for H = {}",
                    h.name()
                )));
            }
        }
        Ok(TowerSetup { upper, lower, pi })
    }

    pub fn upper(&self) -> &GaloisSetup {
        &self.upper
    }

    pub fn lower(&self) -> &GaloisSetup {
        &self.lower
    }

    pub fn projection(&self) -> &GroupHom {
        &self.pi
    }
}

#[derive(Clone, Debug)]
pub struct PushforwardStep {
    /// `None` for the limit.
    pub step: Option<usize>,
    pub pushed: MeasureVector,
    pub lower: MeasureVector,
}

impl PushforwardStep {
    pub fn agrees(&self) -> bool {
        self.pushed == self.lower
    }
}

#[derive(Clone, Debug)]
pub struct PushforwardReport {
    /// Upper member index to lower member index, `H ↦ π(H)`.
    pub member_map: Vec<usize>,
    pub steps: Vec<PushforwardStep>,
    pub passed: bool,
}

/// Compares the pushforward of the upper measures along `F ↦ F ∩ L` with the
/// lower measures, for `i = 0..=max_step` and the limit.
pub fn pushforward_check(
    tower: &TowerSetup,
    upper_base: &Subgroup,
    max_step: usize,
    config: &MeasureConfig,
) -> Result<PushforwardReport> {
    let upper = MeasureEngine::new(&tower.upper, upper_base, config)?;
    let lower_base = tower.pi.image_of(upper_base);
    let lower = MeasureEngine::new(&tower.lower, &lower_base, config)?;
    let member_map: Vec<usize> = upper
        .lattice()
        .members()
        .iter()
        .map(|h| {
            lower
                .lattice()
                .index_of(&tower.pi.image_of(h))
                .ok_or_else(|| Error::Internal("image of a member is not a lower member".into()))
        })
        .collect::<Result<_>>()?;
    let n_lower = lower.lattice().len();
    let mut steps: Vec<PushforwardStep> = upper
        .mu_sequence(max_step)
        .into_iter()
        .zip(lower.mu_sequence(max_step))
        .enumerate()
        .map(|(i, (u, l))| PushforwardStep {
            step: Some(i),
            pushed: u.pushforward(&member_map, n_lower),
            lower: l,
        })
        .collect();
    steps.push(PushforwardStep {
        step: None,
        pushed: upper.mu_infinity()?.pushforward(&member_map, n_lower),
        lower: lower.mu_infinity()?,
    });
    let passed = steps.iter().all(|s| s.agrees());
    Ok(PushforwardReport {
        member_map,
        steps,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::FiniteGroup;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn engine(g: &FiniteGroup, n: &[Elem], sigma: &[Elem]) -> MeasureEngine {
        let s = GaloisSetup::new(g, n, sigma).unwrap();
        MeasureEngine::new(&s, &Subgroup::whole(g), &MeasureConfig::default()).unwrap()
    }

    #[test]
    fn z2_with_trivial_quotient() {
        let e = engine(&catalog::cyclic(2), &[1], &[1]);
        assert_eq!(e.mu1().values(), &[q(1, 2), q(1, 2)]);
        assert_eq!(e.mu_i(0).values(), &[q(0, 1), q(1, 1)]);
        assert_eq!(e.mu_i(2).values(), &[q(3, 4), q(1, 4)]);
        assert_eq!(e.mu_infinity().unwrap().values(), &[q(1, 1), q(0, 1)]);
        let p = e.transitions().matrix();
        assert_eq!(p.row(0), &[q(1, 1), q(0, 1)]);
        assert_eq!(p.row(1), &[q(1, 2), q(1, 2)]);
    }

    #[test]
    fn klein_four_examples() {
        let v = catalog::klein_four();
        let e = engine(&v, &[2], &[1]);
        assert_eq!(e.mu1().values(), &[q(1, 2), q(1, 2), q(0, 1)]);
        assert_eq!(e.mu_infinity().unwrap().to_string(), "1/2, 1/2, 0");
        assert_eq!(e.measure_event(&[0]).unwrap(), q(1, 2));
        assert_eq!(e.measure_event(&[0, 1, 2]).unwrap(), q(1, 1));
        assert_eq!(e.measure_event(&[]).unwrap(), q(0, 1));
        assert_eq!(e.measure_event(&[3]).unwrap_err(), Error::NotAMember);

        // Q trivial: from k(a) the mass of H is the share of τ ∈ V with <τ> = H.
        let e = engine(&v, &[1, 2], &[0]);
        let l = e.lattice();
        assert_eq!(l.len(), 5);
        let row = e.mu1();
        for (i, h) in l.members().iter().enumerate() {
            let expected = v
                .elements()
                .filter(|&t| v.closure(&[t]) == *h.bits())
                .count();
            assert_eq!(row.get(i), &q(expected as i64, 4));
        }
        for i in 0..l.len() {
            if l.member(i).order() == 2 {
                let r = e.transitions().matrix().row(i).to_vec();
                assert_eq!(r[0], q(1, 2));
                assert_eq!(r[i], q(1, 2));
            }
        }
    }

    #[test]
    fn s3_limit_is_uniform_on_transpositions() {
        let s3 = catalog::symmetric(3);
        let c = s3.find_permutation(&[1, 2, 0]).unwrap();
        let t = s3.find_permutation(&[1, 0, 2]).unwrap();
        let e = engine(&s3, &[c], &[t]);
        assert_eq!(e.mu_infinity().unwrap().to_string(), "1/3, 1/3, 1/3, 0");
    }

    #[test]
    fn z4_single_member() {
        let e = engine(&catalog::cyclic(4), &[2], &[1]);
        assert_eq!(e.lattice().len(), 1);
        assert_eq!(e.mu1().values(), &[q(1, 1)]);
        assert_eq!(e.mu_infinity().unwrap().values(), &[q(1, 1)]);
        assert_eq!(e.transitions().matrix(), &Matrix::identity(1));
    }

    #[test]
    fn mu1_agrees_with_free_function_and_lift() {
        let g = catalog::dihedral(4);
        let s = GaloisSetup::new(&g, &[2], &[1, 4]).unwrap();
        let whole = Subgroup::whole(&g);
        let e = MeasureEngine::new(&s, &whole, &MeasureConfig::default()).unwrap();
        assert_eq!(mu1(&s, &whole).unwrap(), e.mu1());
        assert_eq!(e.mu_i(1), e.mu1());
        for lift in s.lifts_in(&whole) {
            assert_eq!(
                mu1_with_lift(e.lattice(), &lift, &MeasureConfig::default()).unwrap(),
                e.mu1()
            );
        }
        assert!(matches!(
            mu1_with_lift(e.lattice(), &[1], &MeasureConfig::default()),
            Err(Error::InvalidLift(_))
        ));
    }

    #[test]
    fn iterate_matches_rational_steps() {
        let g = catalog::cyclic(6);
        let e = engine(&g, &[1], &[1, 3]);
        let seq = e.mu_sequence(6);
        let mut v = MeasureVector::point_mass(e.lattice().len(), e.lattice().base_index());
        for w in &seq {
            assert_eq!(&v, w);
            v = e.transitions().step(&v);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = catalog::cyclic(16);
        let s = GaloisSetup::new(&g, &[1], &[1, 1]).unwrap();
        let err = MeasureEngine::new(&s, &Subgroup::whole(&g), &MeasureConfig { tuple_cap: 100 })
            .unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn towers() {
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let upper = GaloisSetup::new(&z4, &[1], &[1]).unwrap();
        let lower = GaloisSetup::new(&z2, &[1], &[1]).unwrap();
        let pi = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let t = TowerSetup::new(upper, lower, pi).unwrap();
        let r = pushforward_check(&t, &Subgroup::whole(&z4), 8, &MeasureConfig::default()).unwrap();
        assert!(r.passed);
        let last = r.steps.last().unwrap();
        assert_eq!(last.lower.values(), &[q(1, 1), q(0, 1)]);
    }

    #[test]
    fn tower_rejects_mismatched_fibres() {
        // π(H ∩ N) ≠ π(H) ∩ N' for H = <(1,1)>.
        let v = catalog::klein_four();
        let z2 = catalog::cyclic(2);
        let upper = GaloisSetup::new(&v, &[2], &[1]).unwrap();
        let lower = GaloisSetup::new(&z2, &[1], &[0]).unwrap();
        let pi = GroupHom::new(&v, &z2, vec![0, 0, 1, 1]).unwrap();
        assert!(matches!(
            TowerSetup::new(upper, lower, pi),
            Err(Error::Tower(_))
        ));
    }

    #[test]
    fn tower_rejects_wrong_sigma() {
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let upper = GaloisSetup::new(&z4, &[1], &[1]).unwrap();
        let lower = GaloisSetup::new(&z2, &[1], &[0]).unwrap();
        let pi = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        assert!(matches!(
            TowerSetup::new(upper, lower, pi),
            Err(Error::Tower(_))
        ));
    }
}
