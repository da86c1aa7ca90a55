//! The five standard families of crossed modules.

use std::sync::Arc;

use crate::group::{automorphism_group, Group, GroupHom};
use crate::xmod::{require_hom, CrossedModule, Result, XModError};

/// Input data for [`standard_xmod`].
#[derive(Debug, Clone)]
pub enum StandardData {
    /// Inclusion of a normal subgroup `N ◁ G` with conjugation.
    Conjugation { group: Arc<Group>, normal: Vec<usize> },
    /// `M → Aut(M)` sending `m` to its inner automorphism.
    Automorphism { group: Arc<Group>, bound: usize },
    /// Trivial boundary into `P` with a given action on abelian `M`,
    /// row-major `|P| × |M|`.
    TrivialModule { module: Arc<Group>, base: Arc<Group>, action: Vec<usize> },
    /// Surjective `μ: M → P` with central kernel, `P` acting by conjugation
    /// with a preimage.
    CentralExtension { hom: GroupHom },
    /// `μ: M → P` with `M` abelian and image central, trivial action.
    CentralImage { hom: GroupHom },
}

pub fn standard_xmod(data: StandardData) -> Result<CrossedModule> {
    match data {
        StandardData::Conjugation { group, normal } => conjugation(group, &normal),
        StandardData::Automorphism { group, bound } => automorphism(group, bound),
        StandardData::TrivialModule { module, base, action } => trivial_module(module, base, action),
        StandardData::CentralExtension { hom } => central_extension(&hom),
        StandardData::CentralImage { hom } => central_image(&hom),
    }
}

pub fn conjugation(group: Arc<Group>, normal: &[usize]) -> Result<CrossedModule> {
    if !group.is_normal_subgroup(normal) {
        return Err(XModError::PreconditionFailed("N is not a normal subgroup of G".into()));
    }
    let (sub, inclusion) = group.restrict(normal)?;
    let mut action = Vec::with_capacity(group.order() * inclusion.len());
    for g in group.elements() {
        for &n in &inclusion {
            action.push(inclusion.binary_search(&group.conj(g, n)).expect("normal"));
        }
    }
    CrossedModule::new(Arc::new(sub), group, inclusion, action)
}

pub fn automorphism(group: Arc<Group>, bound: usize) -> Result<CrossedModule> {
    let (aut, maps) = automorphism_group(&group, bound)?;
    let boundary = group
        .elements()
        .map(|m| {
            let inner: Vec<usize> = group.elements().map(|n| group.conj(m, n)).collect();
            maps.binary_search(&inner).expect("inner automorphisms are automorphisms")
        })
        .collect();
    let action = maps.concat();
    CrossedModule::new(group, Arc::new(aut), boundary, action)
}

pub fn trivial_module(module: Arc<Group>, base: Arc<Group>, action: Vec<usize>) -> Result<CrossedModule> {
    if !module.is_abelian() {
        return Err(XModError::PreconditionFailed("M must be abelian to be a P-module".into()));
    }
    let boundary = vec![base.identity(); module.order()];
    CrossedModule::new(module, base, boundary, action)
}

pub fn central_extension(hom: &GroupHom) -> Result<CrossedModule> {
    let (m, p) = (hom.domain().clone(), hom.codomain().clone());
    if !hom.is_surjective() {
        return Err(XModError::PreconditionFailed("boundary must be surjective".into()));
    }
    let center = m.center();
    if hom.kernel().iter().any(|k| center.binary_search(k).is_err()) {
        return Err(XModError::PreconditionFailed("kernel is not contained in the centre of M".into()));
    }
    let mut action = Vec::with_capacity(p.order() * m.order());
    for x in p.elements() {
        let preimages: Vec<usize> = m.elements().filter(|&g| hom.apply(g) == x).collect();
        let chosen = preimages[0];
        for n in m.elements() {
            let value = m.conj(chosen, n);
            if let Some(&other) = preimages.iter().find(|&&g| m.conj(g, n) != value) {
                return Err(XModError::IllDefinedAction { p: x, x1: chosen, x2: other, m: n });
            }
            action.push(value);
        }
    }
    CrossedModule::new(m, p, hom.image().to_vec(), action)
}

pub fn central_image(hom: &GroupHom) -> Result<CrossedModule> {
    let (m, p) = (hom.domain().clone(), hom.codomain().clone());
    require_hom(&m, &p, hom.image())?;
    if !m.is_abelian() {
        return Err(XModError::PreconditionFailed("M must be abelian".into()));
    }
    let center = p.center();
    if hom.image_set().iter().any(|x| center.binary_search(x).is_err()) {
        return Err(XModError::PreconditionFailed("image is not contained in the centre of P".into()));
    }
    let action = p.elements().flat_map(|_| m.elements()).collect();
    CrossedModule::new(m, p, hom.image().to_vec(), action)
}
