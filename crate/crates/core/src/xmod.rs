//! Crossed modules over a fixed base group and their morphisms.
//!
//! A crossed module `(M, ∂)` over `P` is a homomorphism `∂: M → P` with a
//! left action `(p, m) ↦ ᵖm` of `P` on `M` by automorphisms such that
//!
//! * CM1: `∂(ᵖm) = p ∂(m) p⁻¹`
//! * CM2: `ᵖ⁽ᵐ⁾n = m n m⁻¹` where `p(m) = ∂(m)`
//!
//! Morphisms are over the identity of `P`: `∂' ∘ μ = ∂` and `μ(ᵖm) = ᵖμ(m)`.
//! The action is stored as a full `|P| × |M|` table.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::group::{check_hom, enumerate_homs_with, Group, GroupError, GroupHom};

/// Default enumeration budget shared by the brute-force searches.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XModError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("crossed modules live over different base groups")]
    BaseMismatch,
    #[error("invalid crossed module: {0}")]
    Invalid(ValidationReport),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(ValidationReport),
    #[error("morphisms do not compose: target of the first is not the source of the second")]
    CompositionMismatch,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("ill-defined action: preimages {x1} and {x2} of {p} act differently on {m}")]
    IllDefinedAction { p: usize, x1: usize, x2: usize, m: usize },
    #[error("search of size {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
}

pub type Result<T, E = XModError> = std::result::Result<T, E>;

/// One failed axiom instance, with the witnessing elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// Table shape or index errors; nothing else is checked after these.
    Shape { message: String },
    /// `∂(mn) ≠ ∂(m)∂(n)`.
    BoundaryNotHomomorphism { m: usize, n: usize },
    /// `¹m ≠ m`.
    ActionIdentity { m: usize },
    /// `⁽ᵖᑫ⁾m ≠ ᵖ(ᑫm)`.
    ActionComposition { p: usize, q: usize, m: usize },
    /// `ᵖ·` is not a bijection of `M`.
    ActionNotBijective { p: usize },
    /// `ᵖ(mn) ≠ ᵖm ᵖn`.
    ActionNotHomomorphism { p: usize, m: usize, n: usize },
    /// CM1 fails at `(p, m)`.
    Cm1 { p: usize, m: usize },
    /// CM2 fails at `(m, n)`.
    Cm2 { m: usize, n: usize },
    /// Morphism map is not a group homomorphism at `(a, b)`.
    MapNotHomomorphism { a: usize, b: usize },
    /// Morphism condition (i): `∂'(μ(m)) ≠ ∂(m)`.
    BoundaryCompatibility { m: usize },
    /// Morphism condition (ii): `μ(ᵖm) ≠ ᵖμ(m)`.
    Equivariance { p: usize, m: usize },
}

/// Every violation found; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_cm1(&self) -> bool {
        self.violations.iter().any(|v| matches!(v, Violation::Cm1 { .. }))
    }

    pub fn has_cm2(&self) -> bool {
        self.violations.iter().any(|v| matches!(v, Violation::Cm2 { .. }))
    }

    fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.violations.first() {
            None => write!(f, "no violations"),
            Some(first) => write!(f, "{} violation(s), first: {:?}", self.violations.len(), first),
        }
    }
}

/// Checks the boundary, the action axioms, CM1 and (if `check_cm2`) CM2.
fn validate_structure(
    group: &Group,
    base: &Group,
    boundary: &[usize],
    action: &[usize],
    check_cm2: bool,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (nm, np) = (group.order(), base.order());
    if boundary.len() != nm || boundary.iter().any(|&x| x >= np) {
        report.push(Violation::Shape { message: format!("boundary must map {nm} elements into 0..{np}") });
    }
    if action.len() != np * nm || action.iter().any(|&x| x >= nm) {
        report.push(Violation::Shape { message: format!("action must be a {np}x{nm} table with entries in 0..{nm}") });
    }
    if !report.is_valid() {
        return report;
    }
    let act = |p: usize, m: usize| action[p * nm + m];

    for m in group.elements() {
        for n in group.elements() {
            if boundary[group.mul(m, n)] != base.mul(boundary[m], boundary[n]) {
                report.push(Violation::BoundaryNotHomomorphism { m, n });
            }
        }
    }
    let e = base.identity();
    for m in group.elements() {
        if act(e, m) != m {
            report.push(Violation::ActionIdentity { m });
        }
    }
    for p in base.elements() {
        let row: BTreeSet<usize> = group.elements().map(|m| act(p, m)).collect();
        if row.len() != nm {
            report.push(Violation::ActionNotBijective { p });
        }
        for m in group.elements() {
            for n in group.elements() {
                if act(p, group.mul(m, n)) != group.mul(act(p, m), act(p, n)) {
                    report.push(Violation::ActionNotHomomorphism { p, m, n });
                }
            }
        }
        for q in base.elements() {
            for m in group.elements() {
                if act(base.mul(p, q), m) != act(p, act(q, m)) {
                    report.push(Violation::ActionComposition { p, q, m });
                }
            }
        }
    }
    for p in base.elements() {
        for m in group.elements() {
            if boundary[act(p, m)] != base.conj(p, boundary[m]) {
                report.push(Violation::Cm1 { p, m });
            }
        }
    }
    if check_cm2 {
        for m in group.elements() {
            for n in group.elements() {
                if act(boundary[m], n) != group.conj(m, n) {
                    report.push(Violation::Cm2 { m, n });
                }
            }
        }
    }
    report
}

/// Full crossed-module validation: action axioms, boundary homomorphism, CM1 and CM2.
pub fn validate_crossed_module(
    group: &Group,
    base: &Group,
    boundary: &[usize],
    action: &[usize],
) -> ValidationReport {
    validate_structure(group, base, boundary, action, true)
}

/// A validated crossed module over `base`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CrossedModule {
    group: Arc<Group>,
    base: Arc<Group>,
    boundary: Vec<usize>,
    action: Vec<usize>,
}

impl fmt::Debug for CrossedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CrossedModule")
            .field("order", &self.group.order())
            .field("base_order", &self.base.order())
            .field("boundary", &self.boundary)
            .finish_non_exhaustive()
    }
}

impl CrossedModule {
    /// `action` is row-major: entry `p * |M| + m` is `ᵖm`.
    pub fn new(group: Arc<Group>, base: Arc<Group>, boundary: Vec<usize>, action: Vec<usize>) -> Result<Self> {
        let report = validate_crossed_module(&group, &base, &boundary, &action);
        if !report.is_valid() {
            return Err(XModError::Invalid(report));
        }
        Ok(CrossedModule { group, base, boundary, action })
    }

    pub fn from_rows(group: Arc<Group>, base: Arc<Group>, boundary: Vec<usize>, action: &[Vec<usize>]) -> Result<Self> {
        let flat = action.concat();
        if action.len() != base.order() || action.iter().any(|r| r.len() != group.order()) {
            return Err(XModError::Invalid(ValidationReport {
                violations: vec![Violation::Shape {
                    message: format!("action must be a {}x{} table", base.order(), group.order()),
                }],
            }));
        }
        Self::new(group, base, boundary, flat)
    }

    /// `(P, id_P)` with conjugation; the terminal object over `P`.
    pub fn terminal(base: Arc<Group>) -> Self {
        let boundary = base.elements().collect();
        let action = base.elements().flat_map(|p| base.elements().map(move |x| (p, x))).map(|(p, x)| base.conj(p, x)).collect();
        CrossedModule { group: base.clone(), base, boundary, action }
    }

    /// Trivial boundary and trivial action on an abelian group.
    pub fn trivial(group: Arc<Group>, base: Arc<Group>) -> Result<Self> {
        let boundary = vec![base.identity(); group.order()];
        let action = base.elements().flat_map(|_| group.elements()).collect();
        Self::new(group, base, boundary, action)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn base(&self) -> &Arc<Group> {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn boundary_of(&self, m: usize) -> usize {
        self.boundary[m]
    }

    pub fn action_table(&self) -> &[usize] {
        &self.action
    }

    pub fn action_rows(&self) -> Vec<Vec<usize>> {
        self.action.chunks(self.group.order()).map(<[usize]>::to_vec).collect()
    }

    /// `ᵖm`
    #[inline]
    pub fn act(&self, p: usize, m: usize) -> usize {
        self.action[p * self.group.order() + m]
    }

    /// Elements with boundary `x`, in increasing order.
    pub fn fiber(&self, x: usize) -> Vec<usize> {
        self.group.elements().filter(|&m| self.boundary[m] == x).collect()
    }

    pub fn boundary_hom(&self) -> GroupHom {
        GroupHom::new(self.group.clone(), self.base.clone(), self.boundary.clone()).expect("validated boundary")
    }

    pub fn same_base(&self, other: &CrossedModule) -> bool {
        Arc::ptr_eq(&self.base, &other.base) || *self.base == *other.base
    }

    /// Sub-crossed-module on a `P`-stable subgroup, reindexed in increasing
    /// order, with the inclusion map.
    pub fn restrict(&self, elements: &[usize]) -> Result<(CrossedModule, Vec<usize>)> {
        let (sub, inclusion) = self.group.restrict(elements)?;
        let n = inclusion.len();
        let mut action = Vec::with_capacity(self.base.order() * n);
        for p in self.base.elements() {
            for &m in &inclusion {
                let image = inclusion.binary_search(&self.act(p, m)).map_err(|_| {
                    XModError::PreconditionFailed(format!("subgroup is not stable under the action of {p}"))
                })?;
                action.push(image);
            }
        }
        let boundary = inclusion.iter().map(|&m| self.boundary[m]).collect();
        let sub = CrossedModule::new(Arc::new(sub), self.base.clone(), boundary, action)?;
        Ok((sub, inclusion))
    }
}

/// A validated pre-crossed module (CM1 only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreCrossedModule {
    group: Arc<Group>,
    base: Arc<Group>,
    boundary: Vec<usize>,
    action: Vec<usize>,
}

impl PreCrossedModule {
    pub fn new(group: Arc<Group>, base: Arc<Group>, boundary: Vec<usize>, action: Vec<usize>) -> Result<Self> {
        let report = validate_structure(&group, &base, &boundary, &action, false);
        if !report.is_valid() {
            return Err(XModError::Invalid(report));
        }
        Ok(PreCrossedModule { group, base, boundary, action })
    }

    /// Checks CM2 and upgrades.
    pub fn into_crossed(self) -> Result<CrossedModule> {
        CrossedModule::new(self.group, self.base, self.boundary, self.action)
    }
}

/// Report on morphism conditions (i) and (ii) for an element map.
pub fn validate_morphism(map: &[usize], source: &CrossedModule, target: &CrossedModule) -> Result<ValidationReport> {
    if !source.same_base(target) {
        return Err(XModError::BaseMismatch);
    }
    let mut report = ValidationReport::default();
    if map.len() != source.order() || map.iter().any(|&x| x >= target.order()) {
        report.push(Violation::Shape {
            message: format!("map must send {} elements into 0..{}", source.order(), target.order()),
        });
        return Ok(report);
    }
    let (gs, gt) = (source.group(), target.group());
    for a in gs.elements() {
        for b in gs.elements() {
            if map[gs.mul(a, b)] != gt.mul(map[a], map[b]) {
                report.push(Violation::MapNotHomomorphism { a, b });
            }
        }
    }
    for m in gs.elements() {
        if target.boundary_of(map[m]) != source.boundary_of(m) {
            report.push(Violation::BoundaryCompatibility { m });
        }
    }
    for p in source.base().elements() {
        for m in gs.elements() {
            if map[source.act(p, m)] != target.act(p, map[m]) {
                report.push(Violation::Equivariance { p, m });
            }
        }
    }
    Ok(report)
}

/// A validated morphism of crossed modules over the identity of `P`.
#[derive(Clone, PartialEq, Eq)]
pub struct XModMorphism {
    source: Arc<CrossedModule>,
    target: Arc<CrossedModule>,
    map: Vec<usize>,
}

impl fmt::Debug for XModMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XModMorphism({:?})", self.map)
    }
}

impl XModMorphism {
    pub fn new(source: Arc<CrossedModule>, target: Arc<CrossedModule>, map: Vec<usize>) -> Result<Self> {
        let report = validate_morphism(&map, &source, &target)?;
        if !report.is_valid() {
            return Err(XModError::InvalidMorphism(report));
        }
        Ok(XModMorphism { source, target, map })
    }

    pub(crate) fn new_unchecked(source: Arc<CrossedModule>, target: Arc<CrossedModule>, map: Vec<usize>) -> Self {
        debug_assert!(validate_morphism(&map, &source, &target).map(|r| r.is_valid()).unwrap_or(false));
        XModMorphism { source, target, map }
    }

    pub fn identity(object: Arc<CrossedModule>) -> Self {
        let map = object.group().elements().collect();
        XModMorphism { source: object.clone(), target: object, map }
    }

    /// The unique morphism into the terminal object: the boundary itself.
    pub fn to_terminal(object: Arc<CrossedModule>, terminal: Arc<CrossedModule>) -> Result<Self> {
        let map = object.boundary().to_vec();
        Self::new(object, terminal, map)
    }

    pub fn source(&self) -> &Arc<CrossedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CrossedModule> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, m: usize) -> usize {
        self.map[m]
    }

    /// `self ∘ inner`
    pub fn after(&self, inner: &XModMorphism) -> Result<XModMorphism> {
        if !(Arc::ptr_eq(&inner.target, &self.source) || *inner.target == *self.source) {
            return Err(XModError::CompositionMismatch);
        }
        let map = inner.map.iter().map(|&m| self.map[m]).collect();
        Ok(XModMorphism { source: inner.source.clone(), target: self.target.clone(), map })
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().collect::<BTreeSet<_>>().len() == self.map.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.map.iter().collect::<BTreeSet<_>>().len() == self.target.order()
    }

    pub fn image_set(&self) -> Vec<usize> {
        self.map.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn underlying_hom(&self) -> GroupHom {
        GroupHom::new(self.source.group().clone(), self.target.group().clone(), self.map.clone())
            .expect("validated morphism")
    }
}

/// `f ∘ g`
pub fn compose_morphisms(f: &XModMorphism, g: &XModMorphism) -> Result<XModMorphism> {
    f.after(g)
}

pub fn identity_morphism(object: &Arc<CrossedModule>) -> XModMorphism {
    XModMorphism::identity(object.clone())
}

/// All morphisms `source → target`, in lexicographic order of their maps.
///
/// Generator images are restricted to boundary fibers, then extended to
/// homomorphisms and filtered by equivariance.
pub fn enumerate_morphisms(source: &Arc<CrossedModule>, target: &Arc<CrossedModule>) -> Result<Vec<XModMorphism>> {
    if !source.same_base(target) {
        return Err(XModError::BaseMismatch);
    }
    let maps = enumerate_homs_with(source.group(), target.group(), |g| target.fiber(source.boundary_of(g)));
    Ok(maps
        .into_iter()
        .filter(|map| validate_morphism(map, source, target).map(|r| r.is_valid()).unwrap_or(false))
        .map(|map| XModMorphism::new_unchecked(source.clone(), target.clone(), map))
        .collect())
}

/// All morphisms found by filtering every one of the `|M'|^|M|` element maps
/// through the defining conditions. Independent of [`enumerate_morphisms`].
pub fn brute_force_morphisms(
    source: &CrossedModule,
    target: &CrossedModule,
    budget: u128,
) -> Result<Vec<Vec<usize>>> {
    if !source.same_base(target) {
        return Err(XModError::BaseMismatch);
    }
    let (n, k) = (source.order(), target.order());
    let estimate = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if estimate > budget {
        return Err(XModError::BudgetExceeded { estimate, budget });
    }
    let (gs, gt) = (source.group(), target.group());
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    loop {
        let ok = gs.elements().all(|a| gs.elements().all(|b| map[gs.mul(a, b)] == gt.mul(map[a], map[b])))
            && gs.elements().all(|m| target.boundary_of(map[m]) == source.boundary_of(m))
            && source.base().elements().all(|p| gs.elements().all(|m| map[source.act(p, m)] == target.act(p, map[m])));
        if ok {
            out.push(map.clone());
        }
        // odometer, most significant digit first so output is lexicographic
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            map[i] += 1;
            if map[i] < k {
                break;
            }
            map[i] = 0;
        }
    }
}

/// Group homomorphism check reused by the standard constructions.
pub(crate) fn require_hom(domain: &Group, codomain: &Group, image: &[usize]) -> Result<()> {
    check_hom(domain, codomain, image).map_err(XModError::from)
}
