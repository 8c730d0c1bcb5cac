//! Setups `(G, N, σ′)` and lattices of regular subextensions.
//!
//! A field `F` between `k(a)` and `L` is represented by its Galois group
//! `H_F ≤ G`; inclusion of fields is reverse inclusion of subgroups, and
//! regularity over `k` means `r(H_F) = Q` where `r: G → Q = G/N`.

use std::collections::HashMap;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::hom::{quotient, GroupHom};
use crate::subgroup::{self, Subgroup, DEFAULT_SUBGROUP_CAP};

#[derive(Clone, Debug)]
pub struct GaloisSetup {
    group: FiniteGroup,
    normal: Subgroup,
    sigma: Vec<Elem>,
    quotient: FiniteGroup,
    r: GroupHom,
    sigma_bar: Vec<Elem>,
}

impl GaloisSetup {
    /// `normal_gens` must generate a normal subgroup and the images of
    /// `sigma` must generate `G/N`.
    pub fn new(group: &FiniteGroup, normal_gens: &[Elem], sigma: &[Elem]) -> Result<Self> {
        let normal = subgroup::generated_subgroup(group, normal_gens)?;
        Self::with_normal(group, normal, sigma)
    }

    pub fn with_normal(group: &FiniteGroup, normal: Subgroup, sigma: &[Elem]) -> Result<Self> {
        if !normal.group().same_as(group) {
            return Err(Error::GroupMismatch(
                "normal subgroup of another group".into(),
            ));
        }
        if sigma.is_empty() {
            return Err(Error::EmptySigma);
        }
        for &s in sigma {
            group.check_elem(s)?;
        }
        let (q, r) = quotient(group, &normal)?;
        let sigma_bar: Vec<Elem> = sigma.iter().map(|&s| r.apply(s)).collect();
        if q.closure(&sigma_bar).len() != q.order() {
            return Err(Error::SigmaDoesNotGenerate);
        }
        Ok(GaloisSetup {
            group: group.clone(),
            normal,
            sigma: sigma.to_vec(),
            quotient: q,
            r,
            sigma_bar,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn normal(&self) -> &Subgroup {
        &self.normal
    }

    pub fn sigma(&self) -> &[Elem] {
        &self.sigma
    }

    /// Length `n` of the generator tuple.
    pub fn arity(&self) -> usize {
        self.sigma.len()
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn projection(&self) -> &GroupHom {
        &self.r
    }

    /// `r(σ′)`, the tuple in `Q`.
    pub fn sigma_bar(&self) -> &[Elem] {
        &self.sigma_bar
    }

    /// `r(H) = Q`.
    pub fn qualifies(&self, h: &Subgroup) -> bool {
        self.r.image_size(h) == self.quotient.order()
    }

    /// The least-index lift of `r(σ′)` into `h`, coordinatewise.
    pub fn lift_in(&self, h: &Subgroup) -> Option<Vec<Elem>> {
        self.sigma_bar
            .iter()
            .map(|&q| h.elements().iter().copied().find(|&x| self.r.apply(x) == q))
            .collect()
    }

    /// Every lift of `r(σ′)` into `h`, in lexicographic order.
    pub fn lifts_in(&self, h: &Subgroup) -> Vec<Vec<Elem>> {
        let fibres: Vec<Vec<Elem>> = self
            .sigma_bar
            .iter()
            .map(|&q| {
                h.elements()
                    .iter()
                    .copied()
                    .filter(|&x| self.r.apply(x) == q)
                    .collect()
            })
            .collect();
        let mut out = vec![Vec::new()];
        for fibre in &fibres {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    fibre.iter().map(move |&x| {
                        let mut t = prefix.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        out
    }

    /// `S(L/K)` for the field `K` with group `base`.
    pub fn lattice(&self, base: &Subgroup) -> Result<SubextLattice> {
        SubextLattice::new(self, base, DEFAULT_SUBGROUP_CAP)
    }

    /// `S(L/k(a))`.
    pub fn full_lattice(&self) -> Result<SubextLattice> {
        self.lattice(&Subgroup::whole(&self.group))
    }
}

/// Members of `S(L/K)`: subgroups of `H_K` mapping onto `Q`.
///
/// Members are ordered with the maximal fields (minimal subgroups) first,
/// then the remaining ones by increasing subgroup order; the base comes last.
/// Hence `F_i ⊆ F_j` implies `i ≥ j`, and transitions only go from higher to
/// lower or equal indices.
#[derive(Clone, Debug)]
pub struct SubextLattice {
    setup: GaloisSetup,
    members: Vec<Subgroup>,
    maximal_count: usize,
    index: HashMap<ElemSet, usize>,
}

impl SubextLattice {
    pub fn new(setup: &GaloisSetup, base: &Subgroup, cap: usize) -> Result<Self> {
        if !base.group().same_as(&setup.group) {
            return Err(Error::GroupMismatch(
                "base subgroup of another group".into(),
            ));
        }
        if !setup.qualifies(base) {
            return Err(Error::BaseNotRegular);
        }
        let within = subgroup::subgroups_within_with_cap(base, cap)?;
        Self::from_subgroups(setup, base, &within)
    }

    /// Like [`SubextLattice::new`], drawing members from `subgroups`, which
    /// must contain every subgroup of `base` (extra entries are ignored).
    pub fn from_subgroups(
        setup: &GaloisSetup,
        base: &Subgroup,
        subgroups: &[Subgroup],
    ) -> Result<Self> {
        if !base.group().same_as(&setup.group) {
            return Err(Error::GroupMismatch(
                "base subgroup of another group".into(),
            ));
        }
        if !setup.qualifies(base) {
            return Err(Error::BaseNotRegular);
        }
        let candidates: Vec<Subgroup> = subgroups
            .iter()
            .filter(|h| h.is_subgroup_of(base) && setup.qualifies(h))
            .cloned()
            .collect();
        let is_minimal = |h: &Subgroup| {
            !candidates
                .iter()
                .any(|k| k.order() < h.order() && k.is_subgroup_of(h))
        };
        let (mut maximal, mut rest): (Vec<Subgroup>, Vec<Subgroup>) =
            candidates.iter().cloned().partition(|h| is_minimal(h));
        maximal.sort_by(|a, b| a.canonical_cmp(b));
        rest.sort_by(|a, b| a.canonical_cmp(b));
        let maximal_count = maximal.len();
        let mut members = maximal;
        members.append(&mut rest);
        let index = members
            .iter()
            .enumerate()
            .map(|(i, h)| (h.bits().clone(), i))
            .collect();
        Ok(SubextLattice {
            setup: setup.clone(),
            members,
            maximal_count,
            index,
        })
    }

    pub fn setup(&self) -> &GaloisSetup {
        &self.setup
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, i: usize) -> &Subgroup {
        &self.members[i]
    }

    pub fn base_index(&self) -> usize {
        self.members.len() - 1
    }

    pub fn base(&self) -> &Subgroup {
        &self.members[self.base_index()]
    }

    /// Number `ℓ` of maximal members; they occupy indices `0..ℓ`.
    pub fn maximal_count(&self) -> usize {
        self.maximal_count
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        i < self.maximal_count
    }

    pub fn maximal_fields(&self) -> Vec<usize> {
        (0..self.maximal_count).collect()
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h.bits()).copied()
    }

    pub(crate) fn index_of_bits(&self, bits: &ElemSet) -> Option<usize> {
        self.index.get(bits).copied()
    }

    /// `F_i ≤ F_j` as fields, i.e. `H_j ⊆ H_i`.
    pub fn field_le(&self, i: usize, j: usize) -> bool {
        self.members[j].is_subgroup_of(&self.members[i])
    }

    /// The member fixed by the group generated by `elements`, or `None` when
    /// that group does not map onto `Q`.
    pub fn fix_field(&self, elements: &[Elem]) -> Result<Option<usize>> {
        let base = self.base();
        for &x in elements {
            self.setup.group.check_elem(x)?;
            if !base.contains(x) {
                return Err(Error::ElementNotInBase(x));
            }
        }
        let bits = self.setup.group.closure(elements);
        if self.setup.r.image_size(&Subgroup::from_parts(
            &self.setup.group,
            bits.clone(),
            Vec::new(),
        )) != self.setup.quotient.order()
        {
            return Ok(None);
        }
        self.index_of_bits(&bits)
            .map(Some)
            .ok_or_else(|| Error::Internal("qualifying subgroup missing from lattice".into()))
    }

    /// Display name derived from the canonical generators, e.g. `Fix<(0 1)>`.
    pub fn name(&self, i: usize) -> String {
        format!("Fix{}", self.members[i].name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn orders(l: &SubextLattice) -> Vec<usize> {
        l.members().iter().map(|h| h.order()).collect()
    }

    #[test]
    fn setup_examples() {
        let z2 = catalog::cyclic(2);
        let s = GaloisSetup::new(&z2, &[1], &[1]).unwrap();
        assert_eq!(s.quotient().order(), 1);
        let v = catalog::klein_four();
        let s = GaloisSetup::new(&v, &[2], &[1]).unwrap();
        assert_eq!(s.quotient().order(), 2);
        let z4 = catalog::cyclic(4);
        assert_eq!(
            GaloisSetup::new(&z4, &[2], &[2]).unwrap_err(),
            Error::SigmaDoesNotGenerate
        );
        assert_eq!(
            GaloisSetup::new(&z4, &[2], &[]).unwrap_err(),
            Error::EmptySigma
        );
        let s3 = catalog::symmetric(3);
        let t = s3.find_permutation(&[1, 0, 2]).unwrap();
        assert_eq!(
            GaloisSetup::new(&s3, &[t], &[t]).unwrap_err(),
            Error::NotNormal
        );
    }

    #[test]
    fn lattice_examples() {
        let z2 = catalog::cyclic(2);
        let l = GaloisSetup::new(&z2, &[1], &[1])
            .unwrap()
            .full_lattice()
            .unwrap();
        assert_eq!(orders(&l), vec![1, 2]);
        assert_eq!(l.maximal_fields(), vec![0]);

        let v = catalog::klein_four();
        let l = GaloisSetup::new(&v, &[2], &[1])
            .unwrap()
            .full_lattice()
            .unwrap();
        let elems: Vec<&[Elem]> = l.members().iter().map(|h| h.elements()).collect();
        assert_eq!(elems, vec![&[0, 1][..], &[0, 3], &[0, 1, 2, 3]]);
        assert_eq!(l.maximal_count(), 2);

        let z4 = catalog::cyclic(4);
        let l = GaloisSetup::new(&z4, &[2], &[1])
            .unwrap()
            .full_lattice()
            .unwrap();
        assert_eq!(orders(&l), vec![4]);
        assert!(l.is_maximal(0));
    }

    #[test]
    fn s3_has_three_maximal_fields() {
        let s3 = catalog::symmetric(3);
        let c = s3.find_permutation(&[1, 2, 0]).unwrap();
        let t = s3.find_permutation(&[1, 0, 2]).unwrap();
        let l = GaloisSetup::new(&s3, &[c], &[t])
            .unwrap()
            .full_lattice()
            .unwrap();
        assert_eq!(orders(&l), vec![2, 2, 2, 6]);
        assert_eq!(l.maximal_count(), 3);
    }

    #[test]
    fn fix_field_examples() {
        let v = catalog::klein_four();
        let l = GaloisSetup::new(&v, &[2], &[1])
            .unwrap()
            .full_lattice()
            .unwrap();
        assert_eq!(l.fix_field(&[1]).unwrap(), Some(0));
        assert_eq!(l.fix_field(&[1, 2]).unwrap(), Some(2));
        assert_eq!(l.fix_field(&[2]).unwrap(), None);
        let z4 = catalog::cyclic(4);
        let l = GaloisSetup::new(&z4, &[2], &[1])
            .unwrap()
            .full_lattice()
            .unwrap();
        assert_eq!(l.fix_field(&[2]).unwrap(), None);
        assert_eq!(l.fix_field(&[1]).unwrap(), Some(0));
    }

    #[test]
    fn base_must_qualify() {
        let v = catalog::klein_four();
        let s = GaloisSetup::new(&v, &[2], &[1]).unwrap();
        let n = s.normal().clone();
        assert_eq!(s.lattice(&n).unwrap_err(), Error::BaseNotRegular);
    }

    #[test]
    fn order_is_compatible_with_inclusion() {
        for c in catalog::small_groups(12) {
            for n in subgroup::normal_subgroups(&c.group).unwrap() {
                let (q, r) = quotient(&c.group, &n).unwrap();
                let Some(sigma) = c
                    .group
                    .elements()
                    .find(|&x| q.closure(&[r.apply(x)]).len() == q.order())
                else {
                    continue;
                };
                let s = GaloisSetup::with_normal(&c.group, n.clone(), &[sigma]).unwrap();
                let l = s.full_lattice().unwrap();
                for i in 0..l.len() {
                    for j in 0..l.len() {
                        if l.field_le(j, i) {
                            assert!(i <= j, "{}: F_{i} contains F_{j}", c.name);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lifts_enumerate_the_fibres() {
        let g = catalog::dihedral(4);
        let n = subgroup::generated_subgroup(&g, &[2]).unwrap();
        let s = GaloisSetup::with_normal(&g, n, &[1, 4]).unwrap();
        let whole = Subgroup::whole(&g);
        let lifts = s.lifts_in(&whole);
        assert_eq!(lifts.len(), 4);
        assert_eq!(lifts[0], s.lift_in(&whole).unwrap());
    }
}
