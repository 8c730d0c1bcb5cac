//! Homomorphisms, quotients, homomorphism search and isomorphism testing.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::subgroup::{self, Subgroup, DEFAULT_SUBGROUP_CAP};

/// A verified homomorphism between finite groups.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<Elem>,
    surjective: bool,
}

impl GroupHom {
    /// Checks `f(xy) = f(x)f(y)` on all pairs.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, images: Vec<Elem>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::NotHomomorphism(format!(
                "{} images for a source of order {}",
                images.len(),
                source.order()
            )));
        }
        for &y in &images {
            target.check_elem(y)?;
        }
        for x in source.elements() {
            for y in source.elements() {
                if images[source.mul(x, y)] != target.mul(images[x], images[y]) {
                    return Err(Error::NotHomomorphism(format!(
                        "f({x}*{y}) != f({x})*f({y})"
                    )));
                }
            }
        }
        Ok(Self::trusted(source, target, images))
    }

    /// Skips the pairwise check; the surjectivity flag is still recomputed.
    pub(crate) fn trusted(source: &FiniteGroup, target: &FiniteGroup, images: Vec<Elem>) -> Self {
        let mut hit = ElemSet::empty(target.order());
        for &y in &images {
            hit.insert(y);
        }
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            surjective: hit.len() == target.order(),
            images,
        }
    }

    /// Extends generator images to a homomorphism. Fails if the assignment is
    /// inconsistent or `gens` does not generate the source.
    pub fn from_generator_images(
        source: &FiniteGroup,
        target: &FiniteGroup,
        gens: &[Elem],
        images: &[Elem],
    ) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::NotHomomorphism(
                "generator and image lists differ in length".into(),
            ));
        }
        for &g in gens {
            source.check_elem(g)?;
        }
        for &y in images {
            target.check_elem(y)?;
        }
        let map = extend_images(source, target, gens, images, false)
            .ok_or_else(|| Error::NotHomomorphism("inconsistent generator images".into()))?;
        if map.iter().any(|m| m.is_none()) {
            return Err(Error::NotHomomorphism(
                "listed generators do not generate the source".into(),
            ));
        }
        Ok(Self::trusted(
            source,
            target,
            map.into_iter().map(|m| m.unwrap()).collect(),
        ))
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        Self::trusted(group, group, group.elements().collect())
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn kernel(&self) -> Subgroup {
        let bits = ElemSet::from_elems(
            self.source.order(),
            self.source.elements().filter(|&x| self.images[x] == 0),
        );
        Subgroup::from_closed_set(&self.source, bits)
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::from_closed_set(
            &self.target,
            ElemSet::from_elems(self.target.order(), self.images.iter().copied()),
        )
    }

    pub fn image_of(&self, h: &Subgroup) -> Subgroup {
        let bits = ElemSet::from_elems(
            self.target.order(),
            h.elements().iter().map(|&x| self.images[x]),
        );
        let gens = h.generators().iter().map(|&x| self.images[x]).collect();
        Subgroup::from_parts(&self.target, bits, gens)
    }

    /// Number of elements in the image of `h`, without building a subgroup.
    pub fn image_size(&self, h: &Subgroup) -> usize {
        ElemSet::from_elems(
            self.target.order(),
            h.elements().iter().map(|&x| self.images[x]),
        )
        .len()
    }

    pub fn preimage_of(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_closed_set(
            &self.source,
            ElemSet::from_elems(
                self.source.order(),
                self.source
                    .elements()
                    .filter(|&x| h.contains(self.images[x])),
            ),
        )
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if !self.target.same_as(&next.source) {
            return Err(Error::GroupMismatch(
                "composition: target and source differ".into(),
            ));
        }
        Ok(Self::trusted(
            &self.source,
            &next.target,
            self.images.iter().map(|&y| next.images[y]).collect(),
        ))
    }
}

/// Quotient `G/N` on minimal coset representatives, ordered by
/// representative, together with the canonical projection.
pub fn quotient(group: &FiniteGroup, normal: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    if !normal.group().same_as(group) {
        return Err(Error::GroupMismatch(
            "normal subgroup of another group".into(),
        ));
    }
    if !normal.is_normal() {
        return Err(Error::NotNormal);
    }
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in group.elements() {
        if class_of[x] == usize::MAX {
            let c = reps.len();
            reps.push(x);
            for &m in normal.elements() {
                class_of[group.mul(x, m)] = c;
            }
        }
    }
    let labels = reps
        .iter()
        .map(|&r| {
            if normal.is_trivial() {
                group.label(r).to_string()
            } else {
                format!("[{}]", group.label(r))
            }
        })
        .collect();
    let q = FiniteGroup::from_fn(reps.len(), labels, |a, b| {
        class_of[group.mul(reps[a], reps[b])]
    })?;
    let proj = GroupHom::trusted(group, &q, class_of);
    Ok((q, proj))
}

/// Partial map on the subgroup generated by `gens`, defined by BFS over the
/// Cayley graph. `None` if the assignment is inconsistent (or, when
/// `injective`, collapses two elements).
fn extend_images(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[Elem],
    images: &[Elem],
    injective: bool,
) -> Option<Vec<Option<Elem>>> {
    let mut map: Vec<Option<Elem>> = vec![None; source.order()];
    let mut used = if injective {
        Some(ElemSet::empty(target.order()))
    } else {
        None
    };
    map[0] = Some(0);
    if let Some(u) = used.as_mut() {
        u.insert(0);
    }
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        let fx = map[x].unwrap();
        for (&g, &img) in gens.iter().zip(images) {
            let y = source.mul(x, g);
            let fy = target.mul(fx, img);
            match map[y] {
                Some(existing) if existing != fy => return None,
                Some(_) => {}
                None => {
                    if let Some(u) = used.as_mut() {
                        if !u.insert(fy) {
                            return None;
                        }
                    }
                    map[y] = Some(fy);
                    stack.push(y);
                }
            }
        }
    }
    Some(map)
}

/// What kind of homomorphisms a search should report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomKind {
    All,
    Surjective,
    Injective,
    Bijective,
}

/// Depth-first search over generator images. `candidates[i]` restricts the
/// image of `gens[i]`; `visit` receives each complete homomorphism as an image
/// vector and may stop the search.
pub fn search_homomorphisms<F>(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    kind: HomKind,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&[Elem]) -> ControlFlow<()>,
{
    let injective = matches!(kind, HomKind::Injective | HomKind::Bijective);
    let mut chosen = Vec::with_capacity(gens.len());
    search_rec(
        source,
        target,
        gens,
        candidates,
        kind,
        injective,
        &mut chosen,
        &mut visit,
    )
}

#[allow(clippy::too_many_arguments)]
fn search_rec<F>(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    kind: HomKind,
    injective: bool,
    chosen: &mut Vec<Elem>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Elem]) -> ControlFlow<()>,
{
    let depth = chosen.len();
    if depth == gens.len() {
        let map = match extend_images(source, target, gens, chosen, injective) {
            Some(m) => m,
            None => return ControlFlow::Continue(()),
        };
        let images: Vec<Elem> = map
            .into_iter()
            .map(|m| m.expect("generators must generate the source"))
            .collect();
        let surjective_needed = matches!(kind, HomKind::Surjective | HomKind::Bijective);
        if surjective_needed {
            let hit = ElemSet::from_elems(target.order(), images.iter().copied());
            if hit.len() != target.order() {
                return ControlFlow::Continue(());
            }
        }
        return visit(&images);
    }
    for &c in &candidates[depth] {
        chosen.push(c);
        let ok = extend_images(source, target, &gens[..=depth], chosen, injective).is_some();
        if ok {
            search_rec(
                source, target, gens, candidates, kind, injective, chosen, visit,
            )?;
        }
        chosen.pop();
    }
    ControlFlow::Continue(())
}

/// All homomorphisms of the requested kind, by generator-image search.
pub fn homomorphisms(source: &FiniteGroup, target: &FiniteGroup, kind: HomKind) -> Vec<GroupHom> {
    let gens = source.generating_set();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let k = source.elem_order(g);
            target
                .elements()
                .filter(|&y| {
                    let o = target.elem_order(y);
                    if injective_kind(kind) {
                        o == k
                    } else {
                        k.is_multiple_of(o)
                    }
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let _ = search_homomorphisms(source, target, &gens, &candidates, kind, |img| {
        out.push(GroupHom::trusted(source, target, img.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

fn injective_kind(kind: HomKind) -> bool {
    matches!(kind, HomKind::Injective | HomKind::Bijective)
}

pub fn epimorphisms(source: &FiniteGroup, target: &FiniteGroup) -> Vec<GroupHom> {
    if target.order() == 0 || !source.order().is_multiple_of(target.order()) {
        return Vec::new();
    }
    homomorphisms(source, target, HomKind::Surjective)
}

/// Per-element invariant preserved by isomorphisms.
fn element_signature(g: &FiniteGroup, x: Elem) -> (usize, usize) {
    (g.elem_order(x), g.centralizer_size(x))
}

fn signature_histogram(g: &FiniteGroup) -> Vec<((usize, usize), usize)> {
    let mut h: HashMap<(usize, usize), usize> = HashMap::new();
    for x in g.elements() {
        *h.entry(element_signature(g, x)).or_default() += 1;
    }
    let mut v: Vec<_> = h.into_iter().collect();
    v.sort();
    v
}

fn check_cap(g: &FiniteGroup, cap: usize) -> Result<()> {
    if g.order() > cap {
        Err(Error::CapExceeded {
            what: "group order",
            size: g.order() as u128,
            cap: cap as u128,
        })
    } else {
        Ok(())
    }
}

/// An isomorphism `a -> b`, if one exists.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Result<Option<GroupHom>> {
    find_isomorphism_with_cap(a, b, DEFAULT_SUBGROUP_CAP)
}

pub fn find_isomorphism_with_cap(
    a: &FiniteGroup,
    b: &FiniteGroup,
    cap: usize,
) -> Result<Option<GroupHom>> {
    check_cap(a, cap)?;
    check_cap(b, cap)?;
    if a.order() != b.order() || a.is_abelian() != b.is_abelian() {
        return Ok(None);
    }
    let mut orders_a = a.elem_orders().to_vec();
    let mut orders_b = b.elem_orders().to_vec();
    orders_a.sort_unstable();
    orders_b.sort_unstable();
    if orders_a != orders_b || signature_histogram(a) != signature_histogram(b) {
        return Ok(None);
    }
    let gens = a.generating_set();
    let sig_b: Vec<(usize, usize)> = b.elements().map(|y| element_signature(b, y)).collect();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let s = element_signature(a, g);
            b.elements().filter(|&y| sig_b[y] == s).collect()
        })
        .collect();
    let mut found = None;
    let _ = search_homomorphisms(a, b, &gens, &candidates, HomKind::Bijective, |img| {
        found = Some(GroupHom::trusted(a, b, img.to_vec()));
        ControlFlow::Break(())
    });
    Ok(found)
}

/// True iff a bijective homomorphism exists.
pub fn isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// One quotient per isomorphism class of images of a group.
#[derive(Clone, Debug)]
pub struct ImageClass {
    pub kernel: Subgroup,
    pub group: FiniteGroup,
    pub projection: GroupHom,
}

/// Representatives of the isomorphism classes of quotients `G/N`, ordered by
/// quotient order and then by first kernel in canonical order.
pub fn image_classes(group: &FiniteGroup) -> Result<Vec<ImageClass>> {
    check_cap(group, DEFAULT_SUBGROUP_CAP)?;
    let mut normals = subgroup::normal_subgroups(group)?;
    // Largest kernels first gives ascending quotient order.
    normals.reverse();
    let mut classes: Vec<ImageClass> = Vec::new();
    for n in normals {
        let (q, proj) = quotient(group, &n)?;
        let mut new = true;
        for c in &classes {
            if c.group.order() == q.order() && isomorphic(&c.group, &q)? {
                new = false;
                break;
            }
        }
        if new {
            classes.push(ImageClass {
                kernel: n,
                group: q,
                projection: proj,
            });
        }
    }
    classes.sort_by_key(|c| c.group.order());
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn quotient_examples() {
        let z4 = catalog::cyclic(4);
        let n = subgroup::generated_subgroup(&z4, &[2]).unwrap();
        let (q, p) = quotient(&z4, &n).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(p.apply(1), 1);
        assert!(p.is_surjective());

        let s3 = catalog::symmetric(3);
        let a3 =
            subgroup::generated_subgroup(&s3, &[s3.find_permutation(&[1, 2, 0]).unwrap()]).unwrap();
        assert_eq!(quotient(&s3, &a3).unwrap().0.order(), 2);
        assert_eq!(quotient(&s3, &Subgroup::whole(&s3)).unwrap().0.order(), 1);
        let t =
            subgroup::generated_subgroup(&s3, &[s3.find_permutation(&[1, 0, 2]).unwrap()]).unwrap();
        assert_eq!(quotient(&s3, &t).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn section_composed_with_projection_is_identity() {
        let g = catalog::dihedral(4);
        for n in subgroup::normal_subgroups(&g).unwrap() {
            let (q, p) = quotient(&g, &n).unwrap();
            for c in q.elements() {
                let section = g.elements().find(|&x| p.apply(x) == c).unwrap();
                assert_eq!(p.apply(section), c);
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        assert!(!isomorphic(&catalog::cyclic(4), &catalog::klein_four()).unwrap());
        let s3 = catalog::symmetric(3);
        let (q, _) = quotient(&s3, &Subgroup::trivial(&s3)).unwrap();
        assert!(isomorphic(&s3, &q).unwrap());
        let z2z3 = catalog::direct_product(&catalog::cyclic(2), &catalog::cyclic(3));
        assert!(isomorphic(&catalog::cyclic(6), &z2z3).unwrap());
        assert!(!isomorphic(&catalog::cyclic(6), &s3).unwrap());
    }

    #[test]
    fn found_isomorphism_is_bijective_homomorphism() {
        let a = catalog::dihedral(6);
        let b = catalog::direct_product(&catalog::cyclic(2), &catalog::symmetric(3));
        let iso = find_isomorphism(&a, &b).unwrap().unwrap();
        let checked = GroupHom::new(&a, &b, iso.images().to_vec()).unwrap();
        assert!(checked.is_surjective() && checked.is_injective());
    }

    #[test]
    fn image_class_examples() {
        let orders = |g: &FiniteGroup| {
            image_classes(g)
                .unwrap()
                .iter()
                .map(|c| c.group.order())
                .collect::<Vec<_>>()
        };
        assert_eq!(orders(&catalog::cyclic(4)), vec![1, 2, 4]);
        assert_eq!(orders(&FiniteGroup::trivial()), vec![1]);
        assert_eq!(orders(&catalog::alternating(5)), vec![1, 60]);
        // Klein four: three kernels of order 2 collapse into one class.
        assert_eq!(orders(&catalog::klein_four()), vec![1, 2, 4]);
    }

    #[test]
    fn generator_images_extend_or_fail() {
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let h = GroupHom::from_generator_images(&z4, &z2, &[1], &[1]).unwrap();
        assert_eq!(h.images(), &[0, 1, 0, 1]);
        assert!(h.is_surjective());
        assert!(GroupHom::from_generator_images(&z2, &z4, &[1], &[1]).is_err());
        assert!(GroupHom::from_generator_images(&z4, &z2, &[2], &[0]).is_err());
    }

    #[test]
    fn hom_counts() {
        // |Hom(Z/4, Z/2 x Z/2)| = 4, |Epi(S4, S3)| = 6, |Aut(Z/2^3)| = 168.
        assert_eq!(
            homomorphisms(&catalog::cyclic(4), &catalog::klein_four(), HomKind::All).len(),
            4
        );
        assert_eq!(
            epimorphisms(&catalog::symmetric(4), &catalog::symmetric(3)).len(),
            6
        );
        let e8 = catalog::elementary_abelian(2, 3);
        assert_eq!(homomorphisms(&e8, &e8, HomKind::Bijective).len(), 168);
    }

    #[test]
    fn new_rejects_non_homomorphisms() {
        let z4 = catalog::cyclic(4);
        assert!(GroupHom::new(&z4, &z4, vec![0, 2, 1, 3]).is_err());
        let ok = GroupHom::new(&z4, &z4, vec![0, 3, 2, 1]).unwrap();
        assert!(ok.is_surjective());
    }
}
