//! Frattini subgroups, Frattini covers and the embedding property.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::hom::{epimorphisms, image_classes, quotient, search_homomorphisms, GroupHom, HomKind};
use crate::subgroup::{self, Subgroup};

/// Default order cap for the embedding-property search.
pub const DEFAULT_EMBEDDING_BOUND: usize = 24;

#[derive(Clone, Debug)]
pub struct FrattiniReport {
    pub frattini_subgroup: Subgroup,
    pub maximal_subgroups: Vec<Subgroup>,
}

/// Maximal proper subgroups, in canonical order.
pub fn maximal_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let subs = subgroup::all_subgroups(group)?;
    Ok(maximal_among(&subs, |s| !s.is_whole()))
}

/// Members of `subs` satisfying `keep` that are not strictly contained in
/// another kept member.
fn maximal_among(subs: &[Subgroup], keep: impl Fn(&Subgroup) -> bool) -> Vec<Subgroup> {
    let kept: Vec<&Subgroup> = subs.iter().filter(|s| keep(s)).collect();
    kept.iter()
        .filter(|h| {
            !kept
                .iter()
                .any(|k| k.order() > h.order() && h.is_subgroup_of(k))
        })
        .map(|h| (*h).clone())
        .collect()
}

pub fn frattini_subgroup(group: &FiniteGroup) -> Result<FrattiniReport> {
    let maximal = maximal_subgroups(group)?;
    let phi = maximal
        .iter()
        .fold(Subgroup::whole(group), |acc, m| acc.intersection(m));
    Ok(FrattiniReport {
        frattini_subgroup: phi,
        maximal_subgroups: maximal,
    })
}

/// Kernel-inside-Φ test, cross-checked against "no proper subgroup of the
/// source maps onto the target". Disagreement is reported as an internal
/// error.
pub fn is_frattini_cover(phi: &GroupHom) -> Result<bool> {
    let by_kernel = frattini_cover_by_kernel(phi)?;
    let by_subgroups = frattini_cover_by_subgroups(phi)?;
    if by_kernel != by_subgroups {
        return Err(Error::Internal(format!(
            "Frattini criteria disagree: kernel test {by_kernel}, subgroup test {by_subgroups}"
        )));
    }
    Ok(by_kernel)
}

/// Surjective with kernel contained in the Frattini subgroup of the source.
pub fn frattini_cover_by_kernel(phi: &GroupHom) -> Result<bool> {
    let report = frattini_subgroup(phi.source())?;
    Ok(cover_by_kernel_with(phi, &report.frattini_subgroup))
}

pub(crate) fn cover_by_kernel_with(phi: &GroupHom, frattini: &Subgroup) -> bool {
    phi.is_surjective() && phi.kernel().is_subgroup_of(frattini)
}

/// A subgroup equals the source iff its image is the whole target.
pub fn frattini_cover_by_subgroups(phi: &GroupHom) -> Result<bool> {
    let subs = subgroup::all_subgroups(phi.source())?;
    Ok(cover_by_subgroups_with(phi, &subs))
}

/// `subs` lists every subgroup of the source.
pub(crate) fn cover_by_subgroups_with(phi: &GroupHom, subs: &[Subgroup]) -> bool {
    let target = phi.target().order();
    phi.is_surjective()
        && subs
            .iter()
            .filter(|h| !h.is_whole())
            .all(|h| phi.image_size(h) < target)
}

/// True iff no proper subgroup of `h` maps onto the target of `r`.
pub fn is_frattini_restriction(h: &Subgroup, r: &GroupHom) -> Result<bool> {
    if !h.group().same_as(r.source()) {
        return Err(Error::GroupMismatch(
            "subgroup does not live in the source of the map".into(),
        ));
    }
    let target = r.target().order();
    if r.image_size(h) != target {
        return Err(Error::NotSurjective);
    }
    Ok(subgroup::subgroups_within(h)?
        .iter()
        .filter(|k| k.order() < h.order())
        .all(|k| r.image_size(k) < target))
}

/// A diagram `α: G ↠ A`, `β: B ↠ A` with no solution `γ: G ↠ B`, `β∘γ = α`.
#[derive(Clone, Debug)]
pub struct EmbeddingWitness {
    pub a: FiniteGroup,
    pub b: FiniteGroup,
    pub alpha: GroupHom,
    pub beta: GroupHom,
}

#[derive(Clone, Debug)]
pub struct EmbeddingReport {
    pub holds: bool,
    pub diagrams_checked: usize,
    pub witness: Option<EmbeddingWitness>,
}

/// Exhaustive embedding-property test. Each `α` is taken to be a canonical
/// projection `G → G/M`; every other epimorphism with kernel `M` differs from
/// it by an automorphism of the target, which the enumeration of `β`
/// already absorbs.
pub fn has_embedding_property(group: &FiniteGroup, bound: usize) -> Result<EmbeddingReport> {
    if group.order() > bound {
        return Err(Error::CapExceeded {
            what: "group order for embedding-property search",
            size: group.order() as u128,
            cap: bound as u128,
        });
    }
    let normals = subgroup::normal_subgroups(group)?;
    let classes = image_classes(group)?;
    let mut tasks = Vec::new();
    for (mi, m) in normals.iter().enumerate() {
        let a_order = m.index();
        for (bi, c) in classes.iter().enumerate() {
            if c.group.order() % a_order == 0 {
                tasks.push((mi, bi));
            }
        }
    }
    let gens = group.generating_set();
    let results: Vec<Result<(usize, Option<EmbeddingWitness>)>> = tasks
        .par_iter()
        .map(|&(mi, bi)| {
            let (a, alpha) = quotient(group, &normals[mi])?;
            let b = &classes[bi].group;
            let mut checked = 0;
            for beta in epimorphisms(b, &a) {
                checked += 1;
                if !diagram_solvable(group, &gens, &alpha, &beta) {
                    return Ok((
                        checked,
                        Some(EmbeddingWitness {
                            a: a.clone(),
                            b: b.clone(),
                            alpha,
                            beta,
                        }),
                    ));
                }
            }
            Ok((checked, None))
        })
        .collect();
    let mut diagrams_checked = 0;
    for r in results {
        let (checked, witness) = r?;
        diagrams_checked += checked;
        if witness.is_some() {
            return Ok(EmbeddingReport {
                holds: false,
                diagrams_checked,
                witness,
            });
        }
    }
    Ok(EmbeddingReport {
        holds: true,
        diagrams_checked,
        witness: None,
    })
}

/// Searches `γ: G ↠ B` with `γ(g) ∈ β⁻¹(α(g))` on each generator.
fn diagram_solvable(group: &FiniteGroup, gens: &[Elem], alpha: &GroupHom, beta: &GroupHom) -> bool {
    let b = beta.source();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let target = alpha.apply(g);
            let k = group.elem_order(g);
            b.elements()
                .filter(|&y| beta.apply(y) == target && k.is_multiple_of(b.elem_order(y)))
                .collect()
        })
        .collect();
    search_homomorphisms(group, b, gens, &candidates, HomKind::Surjective, |_| {
        ControlFlow::Break(())
    })
    .is_break()
}
