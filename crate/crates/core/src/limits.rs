//! Limits and colimits in crossed modules over a fixed base, and the
//! exactness checks built from them.
//!
//! Apex elements are always listed in lexicographic order of the underlying
//! indices (single elements for equalisers, pairs for pullbacks, least
//! representatives for quotients), so outputs are deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::catalogue::Catalogue;
use crate::group::Group;
use crate::xmod::{enumerate_morphisms, CrossedModule, XModError, XModMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitError {
    #[error(transparent)]
    XMod(#[from] XModError),
    #[error("diagram mismatch: {0}")]
    DiagramMismatch(String),
    #[error("not an equivalence relation: {0}")]
    NotEquivalenceRelation(String),
}

impl From<crate::group::GroupError> for LimitError {
    fn from(e: crate::group::GroupError) -> Self {
        LimitError::XMod(e.into())
    }
}

pub type Result<T, E = LimitError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeKind {
    Equaliser,
    Pullback,
    Product,
    KernelPair,
    Terminal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoconeKind {
    Coequaliser,
    Quotient,
}

/// A limit cone. `elements[i]` lists the underlying indices of apex element `i`.
#[derive(Debug, Clone)]
pub struct ConeResult {
    pub kind: ConeKind,
    pub apex: Arc<CrossedModule>,
    pub legs: Vec<XModMorphism>,
    pub elements: Vec<Vec<usize>>,
}

/// A colimit cocone. `classes[i]` lists the source elements sent to apex element `i`.
#[derive(Debug, Clone)]
pub struct CoconeResult {
    pub kind: CoconeKind,
    pub apex: Arc<CrossedModule>,
    pub leg: XModMorphism,
    pub classes: Vec<Vec<usize>>,
}

fn same(a: &Arc<CrossedModule>, b: &Arc<CrossedModule>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn parallel(f: &XModMorphism, g: &XModMorphism) -> Result<()> {
    if !same(f.source(), g.source()) || !same(f.target(), g.target()) {
        return Err(LimitError::DiagramMismatch("morphisms must share source and target".into()));
    }
    Ok(())
}

pub fn terminal_object(base: &Arc<Group>) -> Arc<CrossedModule> {
    Arc::new(CrossedModule::terminal(base.clone()))
}

/// `E = {c : f(c) = g(c)}` with the restricted boundary; the leg is the inclusion.
pub fn equaliser(f: &XModMorphism, g: &XModMorphism) -> Result<ConeResult> {
    parallel(f, g)?;
    let source = f.source();
    let elements: Vec<usize> = source.group().elements().filter(|&c| f.apply(c) == g.apply(c)).collect();
    let (apex, inclusion) = source.restrict(&elements)?;
    let apex = Arc::new(apex);
    let leg = XModMorphism::new(apex.clone(), source.clone(), inclusion.clone())?;
    Ok(ConeResult {
        kind: ConeKind::Equaliser,
        apex,
        legs: vec![leg],
        elements: inclusion.into_iter().map(|c| vec![c]).collect(),
    })
}

/// The elements `f(c) g(c)⁻¹` whose normal closure is collapsed by the coequaliser.
pub fn coequaliser_generators(f: &XModMorphism, g: &XModMorphism) -> Vec<usize> {
    let b = f.target().group();
    let set: BTreeSet<usize> = f.source().group().elements().map(|c| b.mul(f.apply(c), b.inv(g.apply(c)))).collect();
    set.into_iter().collect()
}

/// Quotient of a crossed module by a normal, `P`-stable subgroup inside the
/// kernel of the boundary.
fn quotient_by_normal(object: &Arc<CrossedModule>, normal: &[usize], kind: CoconeKind) -> Result<CoconeResult> {
    let group = object.group();
    let base = object.base();
    for &n in normal {
        if object.boundary_of(n) != base.identity() {
            return Err(LimitError::DiagramMismatch(format!("element {n} of N is outside the kernel of the boundary")));
        }
        for p in base.elements() {
            if normal.binary_search(&object.act(p, n)).is_err() {
                return Err(LimitError::DiagramMismatch(format!("N is not stable under the action of {p}")));
            }
        }
    }
    let (quotient, projection) = group.quotient(normal)?;
    let k = quotient.order();
    let mut classes = vec![Vec::new(); k];
    for b in group.elements() {
        classes[projection[b]].push(b);
    }
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let boundary = reps.iter().map(|&r| object.boundary_of(r)).collect();
    let mut action = Vec::with_capacity(base.order() * k);
    for p in base.elements() {
        for &r in &reps {
            action.push(projection[object.act(p, r)]);
        }
    }
    let apex = Arc::new(CrossedModule::new(Arc::new(quotient), base.clone(), boundary, action)?);
    let leg = XModMorphism::new(object.clone(), apex.clone(), projection)?;
    Ok(CoconeResult { kind, apex, leg, classes })
}

/// `B → B/N` with `N` the normal closure of `{f(c) g(c)⁻¹}`.
pub fn coequaliser(f: &XModMorphism, g: &XModMorphism) -> Result<CoconeResult> {
    parallel(f, g)?;
    let target = f.target();
    let generators = coequaliser_generators(f, g);
    let normal = target.group().normal_closure(&generators)?;
    quotient_by_normal(target, &normal, CoconeKind::Coequaliser)
}

/// `C ×_B D = {(c, d) : f(c) = g(d)}` with componentwise structure.
pub fn pullback(f: &XModMorphism, g: &XModMorphism) -> Result<ConeResult> {
    if !same(f.target(), g.target()) {
        return Err(LimitError::DiagramMismatch("morphisms must share a target".into()));
    }
    let (c, d) = (f.source(), g.source());
    let mut pairs = Vec::new();
    for x in c.group().elements() {
        for y in d.group().elements() {
            if f.apply(x) == g.apply(y) {
                pairs.push((x, y));
            }
        }
    }
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
    let n = pairs.len();
    let (gc, gd) = (c.group(), d.group());
    let mut table = Vec::with_capacity(n * n);
    for &(x1, y1) in &pairs {
        for &(x2, y2) in &pairs {
            table.push(index[&(gc.mul(x1, x2), gd.mul(y1, y2))]);
        }
    }
    let group = Arc::new(Group::from_flat(n, table)?);
    let base = c.base();
    let mut action = Vec::with_capacity(base.order() * n);
    for p in base.elements() {
        for &(x, y) in &pairs {
            action.push(index[&(c.act(p, x), d.act(p, y))]);
        }
    }
    let boundary = pairs.iter().map(|&(x, _)| c.boundary_of(x)).collect();
    let apex = Arc::new(CrossedModule::new(group, base.clone(), boundary, action)?);
    let p = XModMorphism::new(apex.clone(), c.clone(), pairs.iter().map(|pr| pr.0).collect())?;
    let q = XModMorphism::new(apex.clone(), d.clone(), pairs.iter().map(|pr| pr.1).collect())?;
    Ok(ConeResult {
        kind: ConeKind::Pullback,
        apex,
        legs: vec![p, q],
        elements: pairs.into_iter().map(|(x, y)| vec![x, y]).collect(),
    })
}

/// `A ×_P B`, the pullback of the unique maps into `(P, id_P)`.
pub fn product_over_base(a: &Arc<CrossedModule>, b: &Arc<CrossedModule>) -> Result<ConeResult> {
    if !a.same_base(b) {
        return Err(XModError::BaseMismatch.into());
    }
    let terminal = terminal_object(a.base());
    let alpha = XModMorphism::to_terminal(a.clone(), terminal.clone())?;
    let beta = XModMorphism::to_terminal(b.clone(), terminal)?;
    let mut cone = pullback(&alpha, &beta)?;
    cone.kind = ConeKind::Product;
    Ok(cone)
}

pub fn kernel_pair(f: &XModMorphism) -> Result<ConeResult> {
    let mut cone = pullback(f, f)?;
    cone.kind = ConeKind::KernelPair;
    Ok(cone)
}

/// An internal equivalence relation on a crossed module, as a set of element pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceRelation {
    carrier: Arc<CrossedModule>,
    pairs: BTreeSet<(usize, usize)>,
}

impl EquivalenceRelation {
    pub fn new(carrier: Arc<CrossedModule>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        relation_defect(&carrier, &pairs).map_or(Ok(()), |reason| Err(LimitError::NotEquivalenceRelation(reason)))?;
        Ok(EquivalenceRelation { carrier, pairs })
    }

    pub fn diagonal(carrier: Arc<CrossedModule>) -> Self {
        let pairs = carrier.group().elements().map(|a| (a, a)).collect();
        EquivalenceRelation { carrier, pairs }
    }

    pub fn carrier(&self) -> &Arc<CrossedModule> {
        &self.carrier
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }
}

/// First reason the pair set fails to be a sub-crossed-module of `A ×_P A`
/// that is an equivalence relation.
fn relation_defect(a: &CrossedModule, pairs: &BTreeSet<(usize, usize)>) -> Option<String> {
    let g = a.group();
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= g.order() || y >= g.order()) {
        return Some(format!("pair ({x}, {y}) out of range"));
    }
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| a.boundary_of(x) != a.boundary_of(y)) {
        return Some(format!("pair ({x}, {y}) is not in A x_P A"));
    }
    if let Some(x) = g.elements().find(|&x| !pairs.contains(&(x, x))) {
        return Some(format!("not reflexive at {x}"));
    }
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| !pairs.contains(&(y, x))) {
        return Some(format!("not symmetric at ({x}, {y})"));
    }
    for &(x, y) in pairs {
        for &(_, z) in pairs.range((y, 0)..=(y, usize::MAX)) {
            if !pairs.contains(&(x, z)) {
                return Some(format!("not transitive at ({x}, {y}), ({y}, {z})"));
            }
        }
    }
    for &(x1, y1) in pairs {
        for &(x2, y2) in pairs {
            if !pairs.contains(&(g.mul(x1, x2), g.mul(y1, y2))) {
                return Some(format!("not a subgroup: ({x1}, {y1})({x2}, {y2}) missing"));
            }
        }
    }
    for p in a.base().elements() {
        if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| !pairs.contains(&(a.act(p, x), a.act(p, y)))) {
            return Some(format!("not stable under {p} at ({x}, {y})"));
        }
    }
    None
}

pub fn is_equivalence_relation(a: &CrossedModule, pairs: &BTreeSet<(usize, usize)>) -> bool {
    relation_defect(a, pairs).is_none()
}

/// The relation as a sub-crossed-module of `A ×_P A` with its two projections `u`, `v`.
pub fn relation_cone(relation: &EquivalenceRelation) -> Result<ConeResult> {
    let a = relation.carrier();
    let square = product_over_base(a, a)?;
    let indices: Vec<usize> = square
        .elements
        .iter()
        .enumerate()
        .filter(|(_, e)| relation.contains(e[0], e[1]))
        .map(|(i, _)| i)
        .collect();
    let (apex, inclusion) = square.apex.restrict(&indices)?;
    let apex = Arc::new(apex);
    let inc = XModMorphism::new(apex.clone(), square.apex.clone(), inclusion.clone())?;
    let u = square.legs[0].after(&inc)?;
    let v = square.legs[1].after(&inc)?;
    Ok(ConeResult {
        kind: ConeKind::Pullback,
        apex,
        legs: vec![u, v],
        elements: inclusion.iter().map(|&i| square.elements[i].clone()).collect(),
    })
}

/// `A/E` with `[a][b] = [ab]`, `ᵖ[a] = [ᵖa]` and `[a] ↦ α(a)`; each
/// operation is checked to be independent of representatives.
pub fn quotient_by_equivalence(relation: &EquivalenceRelation) -> Result<CoconeResult> {
    let a = relation.carrier();
    relation_defect(a, relation.pairs()).map_or(Ok(()), |r| Err(LimitError::NotEquivalenceRelation(r)))?;
    let g = a.group();
    let base = a.base();
    let mut class_of = vec![usize::MAX; g.order()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = relation.pairs.range((x, 0)..=(x, usize::MAX)).map(|&(_, y)| y).collect();
        for &y in &members {
            class_of[y] = classes.len();
        }
        classes.push(members);
    }
    for &(x1, y1) in relation.pairs() {
        for &(x2, y2) in relation.pairs() {
            if class_of[g.mul(x1, x2)] != class_of[g.mul(y1, y2)] {
                return Err(LimitError::NotEquivalenceRelation(format!(
                    "multiplication depends on representatives at ({x1}, {y1}), ({x2}, {y2})"
                )));
            }
        }
    }
    let k = classes.len();
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let table = reps.iter().flat_map(|&r| reps.iter().map(move |&s| (r, s))).map(|(r, s)| class_of[g.mul(r, s)]).collect();
    let group = Arc::new(Group::from_flat(k, table)?);
    let mut action = Vec::with_capacity(base.order() * k);
    for p in base.elements() {
        for &r in &reps {
            action.push(class_of[a.act(p, r)]);
        }
    }
    let boundary = reps.iter().map(|&r| a.boundary_of(r)).collect();
    let apex = Arc::new(CrossedModule::new(group, base.clone(), boundary, action)?);
    let leg = XModMorphism::new(a.clone(), apex.clone(), class_of)?;
    Ok(CoconeResult { kind: CoconeKind::Quotient, apex, leg, classes })
}

/// True iff the relation is the kernel pair of its class projection.
pub fn is_effective(relation: &EquivalenceRelation) -> Result<bool> {
    let quotient = quotient_by_equivalence(relation)?;
    let kp = kernel_pair(&quotient.leg)?;
    let pairs: BTreeSet<(usize, usize)> = kp.elements.iter().map(|e| (e[0], e[1])).collect();
    Ok(pairs == relation.pairs)
}

/// Every internal equivalence relation on `A`: all subgroups of `A ×_P A`
/// that are `P`-stable and reflexive, symmetric and transitive as relations.
pub fn enumerate_congruences(a: &Arc<CrossedModule>) -> Result<Vec<EquivalenceRelation>> {
    let square = product_over_base(a, a)?;
    let mut out = Vec::new();
    for sub in square.apex.group().all_subgroups() {
        let pairs: BTreeSet<(usize, usize)> = sub.iter().map(|&i| (square.elements[i][0], square.elements[i][1])).collect();
        if is_equivalence_relation(a, &pairs) {
            out.push(EquivalenceRelation { carrier: a.clone(), pairs });
        }
    }
    Ok(out)
}

/// Regular epi / mono factorisation: the coequaliser of the kernel pair,
/// followed by the induced map into the target.
pub fn image_factorization(f: &XModMorphism) -> Result<(CoconeResult, XModMorphism)> {
    let kp = kernel_pair(f)?;
    let epi = coequaliser(&kp.legs[0], &kp.legs[1])?;
    let map: Vec<usize> = epi.classes.iter().map(|class| f.apply(class[0])).collect();
    for class in &epi.classes {
        if class.iter().any(|&x| f.apply(x) != f.apply(class[0])) {
            return Err(LimitError::DiagramMismatch("kernel pair coequaliser does not factor the morphism".into()));
        }
    }
    let mono = XModMorphism::new(epi.apex.clone(), f.target().clone(), map)?;
    Ok((epi, mono))
}

/// Outcome of an exhaustive mediating-morphism search over a catalogue.
#[derive(Debug, Clone, Serialize)]
pub struct UniversalReport {
    pub property: &'static str,
    pub catalogue_order: usize,
    pub catalogue: Vec<String>,
    /// Test cones (or cocones) examined.
    pub cones: usize,
    pub commuting: usize,
    pub non_commuting: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

impl UniversalReport {
    fn new(property: &'static str, catalogue: &Catalogue) -> Self {
        UniversalReport {
            property,
            catalogue_order: catalogue.max_order(),
            catalogue: catalogue.names(),
            cones: 0,
            commuting: 0,
            non_commuting: 0,
            failures: Vec::new(),
            pass: true,
        }
    }

    fn record(&mut self, object: &str, commutes: bool, mediators: usize) {
        self.cones += 1;
        if commutes {
            self.commuting += 1;
        } else {
            self.non_commuting += 1;
        }
        let expected = usize::from(commutes);
        if mediators != expected {
            self.pass = false;
            self.failures.push(format!("{object}: {mediators} mediators, expected {expected}"));
        }
    }
}

pub fn verify_equaliser(f: &XModMorphism, g: &XModMorphism, cone: &ConeResult, catalogue: &Catalogue) -> Result<UniversalReport> {
    let mut report = UniversalReport::new("equaliser", catalogue);
    let u = &cone.legs[0];
    for (name, t_obj) in catalogue.iter() {
        let into_apex = enumerate_morphisms(t_obj, &cone.apex)?;
        for t in enumerate_morphisms(t_obj, f.source())? {
            let commutes = f.after(&t)?.map() == g.after(&t)?.map();
            let mediators = into_apex.iter().filter(|m| u.after(m).map(|c| c.map() == t.map()).unwrap_or(false)).count();
            report.record(name, commutes, mediators);
        }
    }
    Ok(report)
}

/// Sweeps cocones `p': B → B'` out of the common target of `f`, `g`.
pub fn verify_coequaliser(f: &XModMorphism, g: &XModMorphism, cocone: &CoconeResult, catalogue: &Catalogue) -> Result<UniversalReport> {
    let mut report = UniversalReport::new("coequaliser", catalogue);
    let p = &cocone.leg;
    for (name, b_obj) in catalogue.iter() {
        let out_of_apex = enumerate_morphisms(&cocone.apex, b_obj)?;
        for q in enumerate_morphisms(f.target(), b_obj)? {
            let commutes = q.after(f)?.map() == q.after(g)?.map();
            let mediators = out_of_apex.iter().filter(|phi| phi.after(p).map(|c| c.map() == q.map()).unwrap_or(false)).count();
            report.record(name, commutes, mediators);
        }
    }
    Ok(report)
}

/// Sweeps pairs `s: T → C`, `t: T → D` against a cone over `f: C → B ← D: g`.
pub fn verify_pullback(f: &XModMorphism, g: &XModMorphism, cone: &ConeResult, catalogue: &Catalogue) -> Result<UniversalReport> {
    let property = match cone.kind {
        ConeKind::Product => "product",
        ConeKind::KernelPair => "kernel_pair",
        _ => "pullback",
    };
    let mut report = UniversalReport::new(property, catalogue);
    let (p, q) = (&cone.legs[0], &cone.legs[1]);
    for (name, t_obj) in catalogue.iter() {
        let into_apex = enumerate_morphisms(t_obj, &cone.apex)?;
        let to_c = enumerate_morphisms(t_obj, f.source())?;
        let to_d = enumerate_morphisms(t_obj, g.source())?;
        for s in &to_c {
            for t in &to_d {
                let commutes = f.after(s)?.map() == g.after(t)?.map();
                let mediators = into_apex
                    .iter()
                    .filter(|m| p.after(m).map(|c| c.map() == s.map()).unwrap_or(false) && q.after(m).map(|c| c.map() == t.map()).unwrap_or(false))
                    .count();
                report.record(name, commutes, mediators);
            }
        }
    }
    Ok(report)
}

/// Product over `P` checked as the pullback over the terminal object.
pub fn verify_product(a: &Arc<CrossedModule>, b: &Arc<CrossedModule>, cone: &ConeResult, catalogue: &Catalogue) -> Result<UniversalReport> {
    let terminal = terminal_object(a.base());
    let alpha = XModMorphism::to_terminal(a.clone(), terminal.clone())?;
    let beta = XModMorphism::to_terminal(b.clone(), terminal)?;
    verify_pullback(&alpha, &beta, cone, catalogue)
}

/// The quotient `A → A/E` as the coequaliser of the two projections of `E`.
pub fn verify_quotient(relation: &EquivalenceRelation, cocone: &CoconeResult, catalogue: &Catalogue) -> Result<UniversalReport> {
    let cone = relation_cone(relation)?;
    let mut report = verify_coequaliser(&cone.legs[0], &cone.legs[1], cocone, catalogue)?;
    report.property = "quotient";
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::DEFAULT_CATALOGUE_ORDER;
    use crate::group::cyclic;

    struct Fixture {
        trivial_base: Arc<Group>,
        c2: Arc<Group>,
        c4_mod2: Arc<CrossedModule>,
        c2_id: Arc<CrossedModule>,
        c2_triv: Arc<CrossedModule>,
        mod2: XModMorphism,
    }

    fn fixture() -> Fixture {
        let c2 = Arc::new(cyclic(2));
        let c4_mod2 = Arc::new(CrossedModule::new(Arc::new(cyclic(4)), c2.clone(), vec![0, 1, 0, 1], vec![0, 1, 2, 3, 0, 1, 2, 3]).unwrap());
        let c2_id = terminal_object(&c2);
        let c2_triv = Arc::new(CrossedModule::trivial(Arc::new(cyclic(2)), c2.clone()).unwrap());
        let mod2 = XModMorphism::new(c4_mod2.clone(), c2_id.clone(), vec![0, 1, 0, 1]).unwrap();
        Fixture { trivial_base: Arc::new(cyclic(1)), c2, c4_mod2, c2_id, c2_triv, mod2 }
    }

    fn c3_over_trivial(base: &Arc<Group>) -> (Arc<CrossedModule>, XModMorphism, XModMorphism) {
        let c3 = Arc::new(CrossedModule::trivial(Arc::new(cyclic(3)), base.clone()).unwrap());
        let id = XModMorphism::identity(c3.clone());
        let inv = XModMorphism::new(c3.clone(), c3.clone(), vec![0, 2, 1]).unwrap();
        (c3, id, inv)
    }

    fn catalogue(base: &Arc<Group>, extra: &[&Arc<CrossedModule>]) -> Catalogue {
        let mut cat = Catalogue::standard(base, DEFAULT_CATALOGUE_ORDER);
        for (i, o) in extra.iter().enumerate() {
            cat.push(format!("diagram#{i}"), (*o).clone());
        }
        cat
    }

    #[test]
    fn equaliser_examples() {
        let fx = fixture();
        let (c3, id, inv) = c3_over_trivial(&fx.trivial_base);
        let cone = equaliser(&id, &id).unwrap();
        assert_eq!(cone.apex.order(), 3);
        assert!(cone.legs[0].is_surjective());
        let cone = equaliser(&id, &inv).unwrap();
        assert_eq!(cone.elements, vec![vec![0]]);
        let report = verify_equaliser(&id, &inv, &cone, &catalogue(&fx.trivial_base, &[&c3])).unwrap();
        assert!(report.pass, "{:?}", report.failures);
        assert!(report.non_commuting > 0);
        let err = equaliser(&fx.mod2, &id).unwrap_err();
        assert!(matches!(err, LimitError::DiagramMismatch(_)));
    }

    #[test]
    fn coequaliser_examples() {
        let fx = fixture();
        let (c3, id, inv) = c3_over_trivial(&fx.trivial_base);
        assert_eq!(coequaliser(&id, &id).unwrap().apex.order(), 3);
        let co = coequaliser(&id, &inv).unwrap();
        assert_eq!(co.apex.order(), 1);
        let report = verify_coequaliser(&id, &inv, &co, &catalogue(&fx.trivial_base, &[&c3])).unwrap();
        assert!(report.pass, "{:?}", report.failures);

        let b = fx.c2_triv.clone();
        let f = XModMorphism::identity(b.clone());
        let g = XModMorphism::new(b.clone(), b.clone(), vec![0, 0]).unwrap();
        assert_eq!(coequaliser_generators(&f, &g), vec![0, 1]);
        let co = coequaliser(&f, &g).unwrap();
        assert_eq!(co.apex.order(), 1);
        let report = verify_coequaliser(&f, &g, &co, &catalogue(&fx.c2, &[&b])).unwrap();
        assert!(report.pass, "{:?}", report.failures);
    }

    #[test]
    fn pullback_examples() {
        let fx = fixture();
        let cone = pullback(&fx.mod2, &fx.mod2).unwrap();
        assert_eq!(cone.apex.order(), 8);
        assert!(cone.elements.iter().all(|e| e[0] % 2 == e[1] % 2));
        let cat = catalogue(&fx.c2, &[&fx.c4_mod2, &fx.c2_id]);
        let report = verify_pullback(&fx.mod2, &fx.mod2, &cone, &cat).unwrap();
        assert!(report.pass, "{:?}", report.failures);

        let id = XModMorphism::identity(fx.c2_id.clone());
        let cone = pullback(&fx.mod2, &id).unwrap();
        assert_eq!(cone.apex.order(), 4);
        assert!(cone.legs[0].is_injective() && cone.legs[0].is_surjective());

        let id4 = XModMorphism::identity(fx.c4_mod2.clone());
        let diag = pullback(&id4, &id4).unwrap();
        assert!(diag.elements.iter().all(|e| e[0] == e[1]));
        assert_eq!(diag.apex.order(), 4);
    }

    #[test]
    fn product_examples() {
        let fx = fixture();
        let cone = product_over_base(&fx.c4_mod2, &fx.c2_id).unwrap();
        assert_eq!(cone.apex.order(), 4);
        assert!(cone.elements.iter().all(|e| e[1] == e[0] % 2));
        let cone = product_over_base(&fx.c2_triv, &fx.c2_triv).unwrap();
        assert_eq!(cone.apex.order(), 4);
        let cat = catalogue(&fx.c2, &[&fx.c2_triv]);
        let report = verify_product(&fx.c2_triv, &fx.c2_triv, &cone, &cat).unwrap();
        assert!(report.pass);
        assert_eq!(report.non_commuting, 0);
        let other = terminal_object(&Arc::new(cyclic(3)));
        assert_eq!(product_over_base(&fx.c2_id, &other).unwrap_err(), LimitError::XMod(XModError::BaseMismatch));
    }

    #[test]
    fn kernel_pair_examples() {
        let fx = fixture();
        let kp = kernel_pair(&fx.mod2).unwrap();
        assert_eq!(kp.apex.order(), 8);
        let inclusion = {
            let (sub, incl) = fx.c4_mod2.restrict(&[0, 2]).unwrap();
            XModMorphism::new(Arc::new(sub), fx.c4_mod2.clone(), incl).unwrap()
        };
        let kp = kernel_pair(&inclusion).unwrap();
        assert!(kp.elements.iter().all(|e| e[0] == e[1]));
        let to_t = XModMorphism::to_terminal(fx.c4_mod2.clone(), fx.c2_id.clone()).unwrap();
        let kp = kernel_pair(&to_t).unwrap();
        let sq = product_over_base(&fx.c4_mod2, &fx.c4_mod2).unwrap();
        assert_eq!(kp.elements, sq.elements);
    }

    #[test]
    fn relations_and_quotients() {
        let fx = fixture();
        let a = fx.c4_mod2.clone();
        let diag = EquivalenceRelation::diagonal(a.clone());
        assert!(is_equivalence_relation(&a, diag.pairs()));
        let q = quotient_by_equivalence(&diag).unwrap();
        assert_eq!(q.apex.order(), 4);
        assert!(is_effective(&diag).unwrap());

        let kp = kernel_pair(&fx.mod2).unwrap();
        let rel = EquivalenceRelation::new(a.clone(), kp.elements.iter().map(|e| (e[0], e[1]))).unwrap();
        assert_eq!(quotient_by_equivalence(&rel).unwrap().apex.order(), 2);
        assert!(is_effective(&rel).unwrap());

        let single: BTreeSet<(usize, usize)> = [(0, 2)].into_iter().collect();
        assert!(!is_equivalence_relation(&a, &single));
        assert!(matches!(EquivalenceRelation::new(a.clone(), [(0, 2)]), Err(LimitError::NotEquivalenceRelation(_))));

        let congruences = enumerate_congruences(&a).unwrap();
        // normal subgroups of C4 inside the kernel {0, 2}: {0} and {0, 2}
        assert_eq!(congruences.len(), 2);
        for c in &congruences {
            assert!(is_effective(c).unwrap());
            let q = quotient_by_equivalence(c).unwrap();
            let report = verify_quotient(c, &q, &catalogue(&fx.c2, &[&a])).unwrap();
            assert!(report.pass, "{:?}", report.failures);
        }
    }

    #[test]
    fn full_fiber_relation_quotient() {
        let fx = fixture();
        let a = fx.c4_mod2.clone();
        let sq = product_over_base(&a, &a).unwrap();
        let rel = EquivalenceRelation::new(a.clone(), sq.elements.iter().map(|e| (e[0], e[1]))).unwrap();
        let q = quotient_by_equivalence(&rel).unwrap();
        assert_eq!(q.apex.order(), 2);
        assert_eq!(q.classes, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn relation_cone_projections() {
        let fx = fixture();
        let kp = kernel_pair(&fx.mod2).unwrap();
        let rel = EquivalenceRelation::new(fx.c4_mod2.clone(), kp.elements.iter().map(|e| (e[0], e[1]))).unwrap();
        let cone = relation_cone(&rel).unwrap();
        assert_eq!(cone.apex.order(), 8);
        assert_eq!(cone.elements, kp.elements);
    }

    #[test]
    fn image_factorization_examples() {
        let fx = fixture();
        let (epi, mono) = image_factorization(&fx.mod2).unwrap();
        assert_eq!(epi.apex.order(), 2);
        assert!(mono.is_injective());
        assert_eq!(mono.after(&epi.leg).unwrap().map(), fx.mod2.map());

        let id = XModMorphism::identity(fx.c4_mod2.clone());
        let (epi, _) = image_factorization(&id).unwrap();
        assert!(epi.leg.is_injective());

        let b = fx.c2_triv.clone();
        let zero = XModMorphism::new(b.clone(), b.clone(), vec![0, 0]).unwrap();
        let (epi, mono) = image_factorization(&zero).unwrap();
        assert_eq!(epi.apex.order(), 1);
        assert_eq!(mono.image_set(), vec![0]);
    }
}
