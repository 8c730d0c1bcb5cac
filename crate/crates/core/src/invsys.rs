//! Complete systems `S(G)` of a finite group.
//!
//! The universe is the disjoint union of the quotients `G/N` over the normal
//! subgroups `N` included in the system. A normal subgroup is identified by
//! its position in the canonical normal-subgroup list of `G`; a coset by its
//! least element. Relations:
//!
//! * `gN ≤ hM` iff `N ⊆ M`;
//! * `C(gN, hM)` iff `N ⊆ M` and `gM = hM`;
//! * `P(aN, bN, cN)` iff `abN = cN`;
//! * `1 = G/G`.

use std::collections::HashMap;
use std::fmt::Write;
use std::sync::Arc;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::hom::{quotient, GroupHom};
use crate::subgroup::{self, Subgroup};

/// `gN`, tagged with `[G:N]`; the element has sort `n` iff `index ≤ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SystemElement {
    pub index: usize,
    pub normal: usize,
    pub rep: Elem,
}

impl SystemElement {
    pub fn has_sort(&self, n: usize) -> bool {
        self.index <= n
    }
}

/// Normal subgroups of `G` in canonical order, with containment and meet
/// tables over their ids.
#[derive(Debug)]
struct NormalLattice {
    subgroups: Vec<Subgroup>,
    below: Vec<ElemSet>,
    above: Vec<ElemSet>,
    meet: Vec<Vec<usize>>,
}

impl NormalLattice {
    fn new(group: &FiniteGroup) -> Result<Self> {
        let subgroups = subgroup::normal_subgroups(group)?;
        let k = subgroups.len();
        let below = (0..k)
            .map(|m| {
                ElemSet::from_elems(
                    k,
                    (0..k).filter(|&n| subgroups[n].is_subgroup_of(&subgroups[m])),
                )
            })
            .collect();
        let above = (0..k)
            .map(|n| {
                ElemSet::from_elems(
                    k,
                    (0..k).filter(|&m| subgroups[n].is_subgroup_of(&subgroups[m])),
                )
            })
            .collect();
        let id = |h: &Subgroup| {
            subgroups
                .binary_search_by(|x| x.canonical_cmp(h))
                .expect("intersection of normal subgroups is normal")
        };
        let meet = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| id(&subgroups[a].intersection(&subgroups[b])))
                    .collect()
            })
            .collect();
        Ok(NormalLattice {
            subgroups,
            below,
            above,
            meet,
        })
    }

    fn id_of(&self, h: &Subgroup) -> usize {
        self.subgroups
            .binary_search_by(|x| x.canonical_cmp(h))
            .expect("subgroup is normal")
    }
}

#[derive(Clone, Debug)]
pub struct CompleteSystem {
    group: FiniteGroup,
    normals: Arc<NormalLattice>,
    included: Vec<usize>,
    universe: Vec<SystemElement>,
    position: HashMap<(usize, Elem), usize>,
}

impl CompleteSystem {
    /// `S(G)` over every normal subgroup.
    pub fn new(group: &FiniteGroup) -> Result<Self> {
        let normals = Arc::new(NormalLattice::new(group)?);
        let all: Vec<usize> = (0..normals.subgroups.len()).collect();
        Ok(Self::over(group, normals, all))
    }

    fn over(group: &FiniteGroup, normals: Arc<NormalLattice>, mut included: Vec<usize>) -> Self {
        included.sort_unstable();
        included.dedup();
        let mut universe = Vec::new();
        for &id in &included {
            let n = &normals.subgroups[id];
            let mut seen = ElemSet::empty(group.order());
            for g in group.elements() {
                if seen.contains(g) {
                    continue;
                }
                for &x in n.elements() {
                    seen.insert(group.mul(g, x));
                }
                universe.push(SystemElement {
                    index: n.index(),
                    normal: id,
                    rep: g,
                });
            }
        }
        universe.sort();
        let position = universe
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.normal, e.rep), i))
            .collect();
        CompleteSystem {
            group: group.clone(),
            normals,
            included,
            universe,
            position,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// The canonical normal-subgroup list of the group; ids index into it.
    pub fn normals(&self) -> &[Subgroup] {
        &self.normals.subgroups
    }

    /// Ids of the normal subgroups whose cosets make up the universe.
    pub fn included(&self) -> &[usize] {
        &self.included
    }

    pub fn universe(&self) -> &[SystemElement] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    /// Id of `G` itself.
    fn whole_id(&self) -> usize {
        self.normals.subgroups.len() - 1
    }

    /// Position of the coset `gN`, if `N` is included.
    pub fn find(&self, normal: usize, g: Elem) -> Option<usize> {
        let rep = self.rep(normal, g);
        self.position.get(&(normal, rep)).copied()
    }

    fn rep(&self, normal: usize, g: Elem) -> Elem {
        self.normals.subgroups[normal]
            .elements()
            .iter()
            .map(|&x| self.group.mul(g, x))
            .min()
            .expect("subgroups are nonempty")
    }

    /// Position of the constant `1 = G/G`.
    pub fn one(&self) -> usize {
        self.find(self.whole_id(), 0)
            .expect("every complete system contains G/G")
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        let (x, y) = (&self.universe[a], &self.universe[b]);
        self.normals.below[y.normal].contains(x.normal)
    }

    pub fn same_sort_class(&self, a: usize, b: usize) -> bool {
        self.universe[a].normal == self.universe[b].normal
    }

    pub fn compatible(&self, a: usize, b: usize) -> bool {
        let (x, y) = (&self.universe[a], &self.universe[b]);
        self.le(a, b) && self.rep(y.normal, x.rep) == y.rep
    }

    /// `c` with `P(a, b, c)`, if `a` and `b` are in the same quotient.
    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        let (x, y) = (&self.universe[a], &self.universe[b]);
        if x.normal != y.normal {
            return None;
        }
        self.find(x.normal, self.group.mul(x.rep, y.rep))
    }

    /// All of `S(G)`'s elements of sort `≤ n`, as positions.
    pub fn of_sort(&self, n: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.universe[i].has_sort(n))
            .collect()
    }

    /// Whether a set of positions is a complete subsystem: contains `1`, is
    /// upward closed under `≤`, and any two members have a common lower
    /// bound in the set.
    pub fn is_closed(&self, set: &[usize]) -> bool {
        let nl = &self.normals;
        let k = nl.subgroups.len();
        let mut count = vec![0usize; k];
        let mut member = vec![false; self.len()];
        for &i in set {
            if !std::mem::replace(&mut member[i], true) {
                count[self.universe[i].normal] += 1;
            }
        }
        if !member[self.one()] {
            return false;
        }
        // Upward closure: a present normal drags in every coset of itself
        // and of everything above it.
        let present = ElemSet::from_elems(k, (0..k).filter(|&n| count[n] > 0));
        for n in present.iter() {
            if count[n] != nl.subgroups[n].index() || !nl.above[n].is_subset(&present) {
                return false;
            }
        }
        for x in present.iter() {
            for y in present.iter() {
                if nl.below[nl.meet[x][y]].intersection(&present).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest complete subsystem containing the given positions: all
    /// cosets of the normals above the meet closure of those appearing.
    pub fn generated_subsystem(&self, a: &[usize]) -> CompleteSystem {
        let mut ids: Vec<usize> = a.iter().map(|&i| self.universe[i].normal).collect();
        ids.push(self.whole_id());
        ids.sort_unstable();
        ids.dedup();
        // Meet closure.
        let mut changed = true;
        while changed {
            changed = false;
            let snapshot = ids.clone();
            for &x in &snapshot {
                for &y in &snapshot {
                    let id = self.normals.meet[x][y];
                    if !ids.contains(&id) {
                        ids.push(id);
                        changed = true;
                    }
                }
            }
        }
        // Upward closure.
        let up: Vec<usize> = (0..self.normals.subgroups.len())
            .filter(|&m| ids.iter().any(|&n| self.normals.below[m].contains(n)))
            .collect();
        CompleteSystem::over(&self.group, self.normals.clone(), up)
    }

    fn normal_id(&self, n: &Subgroup) -> usize {
        self.normals.id_of(n)
    }

    /// Positions of this system's elements inside a larger system over the
    /// same group.
    pub fn positions_in(&self, larger: &CompleteSystem) -> Vec<usize> {
        self.universe
            .iter()
            .map(|e| {
                larger
                    .find(e.normal, e.rep)
                    .expect("subsystem element missing from the larger system")
            })
            .collect()
    }

    /// Intersection of the included normal subgroups.
    pub fn kernel(&self) -> Subgroup {
        self.included
            .iter()
            .fold(Subgroup::whole(&self.group), |acc, &id| {
                acc.intersection(&self.normals.subgroups[id])
            })
    }

    /// `G(S)`: the quotient of `G` by the intersection of the normals in `S`.
    pub fn dual_group(&self) -> Result<(FiniteGroup, GroupHom)> {
        quotient(&self.group, &self.kernel())
    }

    /// Deterministic text dump: universe lines, then `le`, `c` and `p` lines
    /// over universe positions.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for e in &self.universe {
            writeln!(out, "N#{} rep={} sort={}", e.normal, e.rep, e.index).unwrap();
        }
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if self.le(a, b) {
                    writeln!(out, "le {a} {b}").unwrap();
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.compatible(a, b) {
                    writeln!(out, "c {a} {b}").unwrap();
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = self.product(a, b) {
                    writeln!(out, "p {a} {b} {c}").unwrap();
                }
            }
        }
        out
    }
}

/// Kernel of `G ↠ G_i`: intersection of all normals of index `≤ i`.
pub fn level_kernel(group: &FiniteGroup, i: usize) -> Result<Subgroup> {
    let s = CompleteSystem::new(group)?;
    Ok(s.generated_subsystem(&s.of_sort(i)).kernel())
}

/// `G_i`, the dual of the subsystem generated by the elements of sort `≤ i`.
pub fn level_quotient(group: &FiniteGroup, i: usize) -> Result<(FiniteGroup, GroupHom)> {
    if i == 0 {
        return Err(Error::Internal("sorts start at 1".into()));
    }
    quotient(group, &level_kernel(group, i)?)
}

/// The embedding `S(H) → S(G)` dual to an epimorphism `φ: G ↠ H`, sending
/// `hM` to `g φ⁻¹(M)` for any `g` with `φ(g) = h`.
#[derive(Clone, Debug)]
pub struct SystemEmbedding {
    pub source: CompleteSystem,
    pub target: CompleteSystem,
    pub map: Vec<usize>,
}

pub fn dual_embedding(phi: &GroupHom) -> Result<SystemEmbedding> {
    if !phi.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let source = CompleteSystem::new(phi.target())?;
    let target = CompleteSystem::new(phi.source())?;
    let g = phi.source();
    let mut section = vec![usize::MAX; phi.target().order()];
    for x in g.elements().rev() {
        section[phi.apply(x)] = x;
    }
    let preimage_ids: Vec<usize> = source
        .normals()
        .iter()
        .map(|m| target.normal_id(&phi.preimage_of(m)))
        .collect();
    let map = source
        .universe()
        .iter()
        .map(|e| {
            target
                .find(preimage_ids[e.normal], section[e.rep])
                .ok_or_else(|| Error::Internal("preimage coset missing".into()))
        })
        .collect::<Result<_>>()?;
    Ok(SystemEmbedding {
        source,
        target,
        map,
    })
}

impl SystemEmbedding {
    /// Element-by-element check that the map is injective, sends `1` to `1`
    /// and both preserves and reflects `≤`, `C` and `P`. Returns the first
    /// violation.
    pub fn check(&self) -> std::result::Result<(), String> {
        let (s, t, f) = (&self.source, &self.target, &self.map);
        let n = s.len();
        let mut images = f.clone();
        images.sort_unstable();
        images.dedup();
        if images.len() != n {
            return Err("map is not injective".into());
        }
        if f[s.one()] != t.one() {
            return Err("1 is not sent to 1".into());
        }
        for a in 0..n {
            if s.universe()[a].index != t.universe()[f[a]].index {
                return Err(format!("sort of element {a} changes"));
            }
            for b in 0..n {
                if s.le(a, b) != t.le(f[a], f[b]) {
                    return Err(format!("<= differs on ({a}, {b})"));
                }
                if s.compatible(a, b) != t.compatible(f[a], f[b]) {
                    return Err(format!("C differs on ({a}, {b})"));
                }
                let lhs = s.product(a, b).map(|c| f[c]);
                let rhs = t.product(f[a], f[b]);
                if lhs != rhs {
                    return Err(format!("P differs on ({a}, {b})"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::hom::isomorphic;

    #[test]
    fn universe_sizes() {
        assert_eq!(
            CompleteSystem::new(&FiniteGroup::trivial()).unwrap().len(),
            1
        );
        assert_eq!(CompleteSystem::new(&catalog::cyclic(4)).unwrap().len(), 7);
        assert_eq!(
            CompleteSystem::new(&catalog::symmetric(3)).unwrap().len(),
            9
        );
    }

    #[test]
    fn one_comes_first() {
        let s = CompleteSystem::new(&catalog::symmetric(3)).unwrap();
        assert_eq!(s.one(), 0);
        assert_eq!(s.universe()[0].index, 1);
    }

    #[test]
    fn generated_subsystem_examples() {
        let z4 = catalog::cyclic(4);
        let s = CompleteSystem::new(&z4).unwrap();
        assert_eq!(s.generated_subsystem(&[]).len(), 1);
        let half = s.find(1, 1).unwrap();
        let sub = s.generated_subsystem(&[half]);
        assert_eq!(sub.len(), 3);
        assert!(s.is_closed(&sub.positions_in(&s)));

        let v = catalog::klein_four();
        let s = CompleteSystem::new(&v).unwrap();
        let a = s.find(1, 0).unwrap();
        let b = s.find(2, 0).unwrap();
        assert_eq!(s.generated_subsystem(&[a, b]).len(), s.len());
    }

    #[test]
    fn dual_groups() {
        let s3 = catalog::symmetric(3);
        let s = CompleteSystem::new(&s3).unwrap();
        assert!(isomorphic(&s.dual_group().unwrap().0, &s3).unwrap());
        assert_eq!(
            s.generated_subsystem(&[]).dual_group().unwrap().0.order(),
            1
        );
        assert_eq!(level_quotient(&s3, 2).unwrap().0.order(), 2);
        assert_eq!(level_quotient(&s3, 1).unwrap().0.order(), 1);
        assert_eq!(level_quotient(&s3, 6).unwrap().0.order(), 6);
    }

    #[test]
    fn embeddings() {
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let phi = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let e = dual_embedding(&phi).unwrap();
        e.check().unwrap();
        assert_eq!(e.source.len(), 3);
        let sort2 = e.target.of_sort(2);
        let mut image = e.map.clone();
        image.sort_unstable();
        assert_eq!(image, sort2);

        let id = dual_embedding(&GroupHom::identity(&catalog::symmetric(3))).unwrap();
        assert_eq!(id.map, (0..9).collect::<Vec<_>>());
        id.check().unwrap();

        let t = FiniteGroup::trivial();
        let to_one = GroupHom::new(&z4, &t, vec![0; 4]).unwrap();
        assert_eq!(dual_embedding(&to_one).unwrap().map, vec![0]);

        let not_onto = GroupHom::new(&z2, &z4, vec![0, 2]).unwrap();
        assert_eq!(dual_embedding(&not_onto).unwrap_err(), Error::NotSurjective);
    }

    #[test]
    fn dump_is_line_oriented() {
        let s = CompleteSystem::new(&catalog::cyclic(2)).unwrap();
        let d = s.dump();
        assert!(d.starts_with("N#1 rep=0 sort=1\nN#0 rep=0 sort=2\nN#0 rep=1 sort=2\n"));
        assert!(d.contains("p 1 2 2\n"));
    }
}
