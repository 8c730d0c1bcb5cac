//! Subgroups and subgroup enumeration.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// Default order cap for exhaustive subgroup enumeration.
pub const DEFAULT_SUBGROUP_CAP: usize = 64;

/// A subgroup of a [`FiniteGroup`], stored as its sorted element set together
/// with the generators it was built from.
///
/// Equality and hashing look at the element set only.
#[derive(Clone)]
pub struct Subgroup {
    group: FiniteGroup,
    elements: Vec<Elem>,
    generators: Vec<Elem>,
    bits: ElemSet,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl Subgroup {
    /// Wraps an element set already known to be closed. Generators are
    /// recomputed greedily.
    pub(crate) fn from_closed_set(group: &FiniteGroup, bits: ElemSet) -> Self {
        let elements: Vec<Elem> = bits.iter().collect();
        let generators = greedy_generators(group, &elements);
        Subgroup {
            group: group.clone(),
            elements,
            generators,
            bits,
        }
    }

    pub(crate) fn from_parts(group: &FiniteGroup, bits: ElemSet, generators: Vec<Elem>) -> Self {
        Subgroup {
            group: group.clone(),
            elements: bits.iter().collect(),
            generators,
            bits,
        }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::from_parts(group, ElemSet::from_elems(group.order(), [0]), Vec::new())
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self::from_parts(
            group,
            ElemSet::from_elems(group.order(), group.elements()),
            group.generating_set(),
        )
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Sorted element indices.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn bits(&self) -> &ElemSet {
        &self.bits
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.group.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.group;
        let outer = g.generating_set();
        let inner: &[Elem] = if self.generators.is_empty() && !self.is_trivial() {
            &self.elements
        } else {
            &self.generators
        };
        outer
            .iter()
            .all(|&x| inner.iter().all(|&h| self.contains(g.conjugate(x, h))))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_closed_set(&self.group, self.bits.intersection(&other.bits))
    }

    /// The subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        let bits = self.group.extend_closure(&self.bits, &gens);
        Subgroup::from_parts(&self.group, bits, gens)
    }

    /// `g H g^-1`.
    pub fn conjugate_by(&self, g: Elem) -> Subgroup {
        let grp = &self.group;
        let bits = ElemSet::from_elems(
            grp.order(),
            self.elements.iter().map(|&h| grp.conjugate(g, h)),
        );
        let gens = self
            .generators
            .iter()
            .map(|&h| grp.conjugate(g, h))
            .collect();
        Subgroup::from_parts(grp, bits, gens)
    }

    /// Canonical name from the greedy generating set, e.g. `<(0 1), (1 2)>`.
    pub fn name(&self) -> String {
        let gens = greedy_generators(&self.group, &self.elements);
        let parts: Vec<&str> = gens.iter().map(|&x| self.group.label(x)).collect();
        format!("<{}>", parts.join(", "))
    }

    /// Canonical comparison: by order, then sorted element set.
    pub fn canonical_cmp(&self, other: &Subgroup) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

/// Greedy generators in increasing index order: an element is kept when it is
/// not already generated by the earlier ones.
fn greedy_generators(group: &FiniteGroup, elements: &[Elem]) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut span = ElemSet::from_elems(group.order(), [0]);
    for &x in elements {
        if span.len() == elements.len() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = group.extend_closure(&span, &gens);
        }
    }
    gens
}

/// The subgroup generated by `gens`; the empty set generates the trivial
/// subgroup.
pub fn generated_subgroup(group: &FiniteGroup, gens: &[Elem]) -> Result<Subgroup> {
    for &g in gens {
        group.check_elem(g)?;
    }
    let bits = group.closure(gens);
    Ok(Subgroup::from_parts(group, bits, gens.to_vec()))
}

/// Every subgroup of `group`, each exactly once, sorted by order and then by
/// element set.
pub fn all_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>> {
    all_subgroups_with_cap(group, DEFAULT_SUBGROUP_CAP)
}

pub fn all_subgroups_with_cap(group: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    subgroups_within_with_cap(&Subgroup::whole(group), cap)
}

/// Every subgroup of `container`, in canonical order.
pub fn subgroups_within(container: &Subgroup) -> Result<Vec<Subgroup>> {
    subgroups_within_with_cap(container, DEFAULT_SUBGROUP_CAP)
}

/// Bottom-up enumeration: cyclic subgroups first, then single-element
/// extensions of known subgroups until nothing new appears.
pub fn subgroups_within_with_cap(container: &Subgroup, cap: usize) -> Result<Vec<Subgroup>> {
    let group = container.group();
    if group.order() > cap {
        return Err(Error::CapExceeded {
            what: "group order for subgroup enumeration",
            size: group.order() as u128,
            cap: cap as u128,
        });
    }
    let mut found: HashMap<ElemSet, usize> = HashMap::new();
    let mut list: Vec<Subgroup> = Vec::new();
    let push = |s: Subgroup, found: &mut HashMap<ElemSet, usize>, list: &mut Vec<Subgroup>| {
        if !found.contains_key(s.bits()) {
            found.insert(s.bits().clone(), list.len());
            list.push(s);
            true
        } else {
            false
        }
    };
    push(Subgroup::trivial(group), &mut found, &mut list);
    // One generator per distinct cyclic subgroup.
    let mut cyclic_gens = Vec::new();
    for &x in container.elements() {
        let bits = group.closure(&[x]);
        if push(
            Subgroup::from_parts(group, bits, vec![x]),
            &mut found,
            &mut list,
        ) {
            cyclic_gens.push(x);
        }
    }
    let mut cursor = 0;
    while cursor < list.len() {
        let h = list[cursor].clone();
        cursor += 1;
        for &x in &cyclic_gens {
            if h.contains(x) {
                continue;
            }
            let mut gens = h.generators().to_vec();
            gens.push(x);
            let bits = group.extend_closure(h.bits(), &gens);
            if !found.contains_key(&bits) {
                push(
                    Subgroup::from_parts(group, bits, gens),
                    &mut found,
                    &mut list,
                );
            }
        }
    }
    list.sort_by(|a, b| a.canonical_cmp(b));
    Ok(list)
}

/// Normal subgroups in canonical order.
pub fn normal_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups(group)?
        .into_iter()
        .filter(|s| s.is_normal())
        .collect())
}

pub fn normal_subgroups_with_cap(group: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups_with_cap(group, cap)?
        .into_iter()
        .filter(|s| s.is_normal())
        .collect())
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure(group: &FiniteGroup, gens: &[Elem]) -> Result<Subgroup> {
    for &g in gens {
        group.check_elem(g)?;
    }
    let outer = group.generating_set();
    let mut current = group.closure(gens);
    loop {
        let mut extra: Vec<Elem> = current.iter().collect();
        let before = current.len();
        for &x in &outer {
            for h in current.iter() {
                extra.push(group.conjugate(x, h));
            }
        }
        current = group.closure(&extra);
        if current.len() == before {
            break;
        }
    }
    let mut gens = gens.to_vec();
    gens.dedup();
    Ok(Subgroup::from_parts(group, current, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    /// Oracle: every subset closed under multiplication that contains the
    /// identity, by brute force over all subsets.
    fn brute_force_subgroup_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        assert!(n <= 12);
        (0u32..(1 << n))
            .filter(|mask| {
                mask & 1 == 1
                    && (0..n).all(|a| {
                        mask & (1 << a) == 0
                            || (0..n)
                                .all(|b| mask & (1 << b) == 0 || mask & (1 << g.mul(a, b)) != 0)
                    })
            })
            .count()
    }

    #[test]
    fn generated_subgroup_examples() {
        let z4 = catalog::cyclic(4);
        let h = generated_subgroup(&z4, &[2]).unwrap();
        assert_eq!(h.order(), 2);
        let s3 = catalog::symmetric(3);
        let t = s3.find_permutation(&[1, 0, 2]).unwrap();
        assert_eq!(generated_subgroup(&s3, &[t]).unwrap().order(), 2);
        assert!(generated_subgroup(&s3, &[]).unwrap().is_trivial());
        assert!(matches!(
            generated_subgroup(&s3, &[6]),
            Err(Error::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn subgroup_counts_match_brute_force() {
        assert_eq!(all_subgroups(&catalog::cyclic(4)).unwrap().len(), 3);
        assert_eq!(all_subgroups(&catalog::klein_four()).unwrap().len(), 5);
        assert_eq!(all_subgroups(&FiniteGroup::trivial()).unwrap().len(), 1);
        for g in [
            catalog::cyclic(4),
            catalog::klein_four(),
            catalog::symmetric(3),
            catalog::dihedral(4),
            catalog::quaternion(8),
            catalog::alternating(4),
            catalog::cyclic(12),
        ] {
            assert_eq!(
                all_subgroups(&g).unwrap().len(),
                brute_force_subgroup_count(&g)
            );
        }
    }

    #[test]
    fn canonical_order_and_uniqueness() {
        let subs = all_subgroups(&catalog::dihedral(4)).unwrap();
        for w in subs.windows(2) {
            assert_eq!(w[0].canonical_cmp(&w[1]), std::cmp::Ordering::Less);
        }
        assert!(subs[0].is_trivial());
        assert!(subs.last().unwrap().is_whole());
    }

    #[test]
    fn closed_under_intersection_and_conjugation() {
        for g in [
            catalog::symmetric(4),
            catalog::dihedral(6),
            catalog::quaternion(8),
        ] {
            let subs = all_subgroups(&g).unwrap();
            let set: std::collections::HashSet<_> = subs.iter().cloned().collect();
            for a in &subs {
                for b in &subs {
                    assert!(set.contains(&a.intersection(b)));
                }
                for x in g.elements() {
                    assert!(set.contains(&a.conjugate_by(x)));
                }
            }
        }
    }

    #[test]
    fn normality() {
        let s3 = catalog::symmetric(3);
        let normals = normal_subgroups(&s3).unwrap();
        assert_eq!(
            normals.iter().map(|n| n.order()).collect::<Vec<_>>(),
            vec![1, 3, 6]
        );
        let t = s3.find_permutation(&[1, 0, 2]).unwrap();
        assert!(!generated_subgroup(&s3, &[t]).unwrap().is_normal());
        assert_eq!(normal_closure(&s3, &[t]).unwrap().order(), 6);
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            all_subgroups_with_cap(&catalog::symmetric(4), 10),
            Err(Error::CapExceeded { .. })
        ));
    }
}
