//! Finitely generated free crossed modules, handled symbolically.
//!
//! A free object is a finite label set `X` with `ω: X → P`. Its elements are
//! never materialised; instead we work with words in the symbols `ᵘx̄`
//! (`u ∈ P`, `x ∈ X`, exponent ±1), i.e. elements of the free group on
//! `X × P`. `P` acts on symbols by `ᵛ(ᵘx̄) = ᵛᵘx̄`, the boundary of a symbol
//! is `u ω(x) u⁻¹`, and a word is evaluated in a crossed module by the unique
//! extension of a fiber-compatible assignment of the labels.
//!
//! The site used by the embedding is truncated to one- and two-generator
//! objects, with the conjugation maps `m_{p,x}`, the multiplication maps
//! `σ_{x,y}`, the two inclusions into a pair, and identities as generators.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::Group;
use crate::xmod::CrossedModule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeError {
    #[error("label {label} has boundary {expected} but is assigned an element with boundary {found}")]
    FiberMismatch { label: usize, expected: usize, found: usize },
    #[error("assignment covers {found} labels, expected {expected}")]
    AssignmentLength { expected: usize, found: usize },
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("word for label {label} has boundary {found}, expected {expected}")]
    BoundaryCondition { label: usize, expected: usize, found: usize },
    #[error("site morphisms do not compose")]
    CompositionMismatch,
}

pub type Result<T, E = FreeError> = std::result::Result<T, E>;

/// `ω: X → P` on labels `0..omega.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeObject {
    pub omega: Vec<usize>,
}

impl FreeObject {
    pub fn new(omega: Vec<usize>) -> Self {
        FreeObject { omega }
    }

    pub fn labels(&self) -> usize {
        self.omega.len()
    }
}

/// The symbol `(ᵘx̄)^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol {
    pub u: usize,
    pub label: usize,
    pub exp: i8,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `ᵘx̄`
    pub fn symbol(u: usize, label: usize) -> Self {
        Word(vec![Symbol { u, label, exp: 1 }])
    }

    /// The basis element `¹x̄`.
    pub fn generator(base: &Group, label: usize) -> Self {
        Word::symbol(base.identity(), label)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|s| Symbol { exp: -s.exp, ..*s }).collect())
    }

    /// `ᵛw`, acting on each symbol by `ᵛ(ᵘx̄) = ᵛᵘx̄`.
    pub fn translate(&self, v: usize, base: &Group) -> Word {
        Word(self.0.iter().map(|s| Symbol { u: base.mul(v, s.u), ..*s }).collect())
    }

    /// Free reduction: cancels adjacent `s s⁻¹`.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Symbol> = Vec::with_capacity(self.0.len());
        for &s in &self.0 {
            match out.last() {
                Some(t) if t.u == s.u && t.label == s.label && t.exp == -s.exp => {
                    out.pop();
                }
                _ => out.push(s),
            }
        }
        Word(out)
    }

    /// Checks label, base-element and exponent ranges.
    pub fn check(&self, free: &FreeObject, base: &Group) -> Result<()> {
        for s in &self.0 {
            if s.label >= free.labels() {
                return Err(FreeError::MalformedWord(format!("label {} out of range", s.label)));
            }
            if s.u >= base.order() {
                return Err(FreeError::MalformedWord(format!("base element {} out of range", s.u)));
            }
            if s.exp != 1 && s.exp != -1 {
                return Err(FreeError::MalformedWord(format!("exponent {} is not ±1", s.exp)));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for s in &self.0 {
            write!(f, "(^{} x{})", s.u, s.label)?;
            if s.exp < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Product of `(u ω(x) u⁻¹)^exp` along the word; identity for the empty word.
pub fn word_boundary(word: &Word, free: &FreeObject, base: &Group) -> usize {
    word.0.iter().fold(base.identity(), |acc, s| {
        let b = base.conj(s.u, free.omega[s.label]);
        base.mul(acc, if s.exp < 0 { base.inv(b) } else { b })
    })
}

fn check_assignment(free: &FreeObject, target: &CrossedModule, assignment: &[usize]) -> Result<()> {
    if assignment.len() != free.labels() {
        return Err(FreeError::AssignmentLength { expected: free.labels(), found: assignment.len() });
    }
    for (label, (&a, &x)) in assignment.iter().zip(&free.omega).enumerate() {
        if a >= target.order() {
            return Err(FreeError::MalformedWord(format!("assigned element {a} out of range")));
        }
        if target.boundary_of(a) != x {
            return Err(FreeError::FiberMismatch { label, expected: x, found: target.boundary_of(a) });
        }
    }
    Ok(())
}

/// Evaluates `word` in `target` under `label ↦ assignment[label]`, reading
/// each symbol `ᵘx̄` as `ᵘ(assignment[x])` and multiplying left to right.
pub fn evaluate_word(word: &Word, free: &FreeObject, target: &CrossedModule, assignment: &[usize]) -> Result<usize> {
    check_assignment(free, target, assignment)?;
    word.check(free, target.base())?;
    Ok(evaluate_unchecked(word, target, assignment))
}

pub(crate) fn evaluate_unchecked(word: &Word, target: &CrossedModule, assignment: &[usize]) -> usize {
    let g = target.group();
    word.0.iter().fold(g.identity(), |acc, s| {
        let v = target.act(s.u, assignment[s.label]);
        g.mul(acc, if s.exp < 0 { g.inv(v) } else { v })
    })
}

/// Every fiber-compatible assignment `X → A`, lexicographically ordered.
/// These are exactly the morphisms out of the free object.
pub fn hom_set(free: &FreeObject, target: &CrossedModule) -> Vec<Vec<usize>> {
    let fibers: Vec<Vec<usize>> = free.omega.iter().map(|&x| target.fiber(x)).collect();
    let mut out = vec![Vec::new()];
    for fiber in &fibers {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                fiber.iter().map(move |&a| {
                    let mut next = prefix.clone();
                    next.push(a);
                    next
                }).collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// The labelling `⟨a⟩`: the object `Single(∂a)` and the assignment `x̄ ↦ a`.
pub fn labelling(target: &CrossedModule, element: usize) -> (SiteObject, Vec<usize>) {
    (SiteObject::Single(target.boundary_of(element)), vec![element])
}

/// Least `p` with `x = p y p⁻¹`, with the word `ᵖȳ` giving the morphism
/// `C(x̄) → C(ȳ)`.
pub fn singly_generated_hom(base: &Group, x: usize, y: usize) -> Option<(usize, Word)> {
    base.elements().find(|&p| base.conj(p, y) == x).map(|p| (p, Word::symbol(p, 0)))
}

/// A one- or two-generator free object, identified by its boundary values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SiteObject {
    Single(usize),
    Pair(usize, usize),
}

impl SiteObject {
    pub fn free_object(&self) -> FreeObject {
        match *self {
            SiteObject::Single(x) => FreeObject::new(vec![x]),
            SiteObject::Pair(x, y) => FreeObject::new(vec![x, y]),
        }
    }

    pub fn labels(&self) -> usize {
        match self {
            SiteObject::Single(_) => 1,
            SiteObject::Pair(..) => 2,
        }
    }
}

impl fmt::Display for SiteObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SiteObject::Single(x) => write!(f, "C({x})"),
            SiteObject::Pair(x, y) => write!(f, "C({x},{y})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    Identity,
    /// `m_{p,x}: C(pxp⁻¹) → C(x)`, `x̄' ↦ ᵖx̄`.
    Conjugation { p: usize, x: usize },
    /// `σ_{x,y}: C(xy) → C(x,y)`, `x̄y' ↦ x̄ ȳ`.
    Multiplication { x: usize, y: usize },
    FirstInclusion { x: usize, y: usize },
    SecondInclusion { x: usize, y: usize },
    Composite,
}

/// A morphism of free objects given by a word (over the target's labels)
/// for each source label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiteMorphism {
    pub source: SiteObject,
    pub target: SiteObject,
    pub words: Vec<Word>,
    pub kind: GeneratorKind,
}

impl SiteMorphism {
    /// Validates words and the boundary condition `∂(words[l]) = ω_source(l)`.
    pub fn new(source: SiteObject, target: SiteObject, words: Vec<Word>, kind: GeneratorKind, base: &Group) -> Result<Self> {
        let (fs, ft) = (source.free_object(), target.free_object());
        if words.len() != fs.labels() {
            return Err(FreeError::MalformedWord(format!("{} words for {} labels", words.len(), fs.labels())));
        }
        for (label, w) in words.iter().enumerate() {
            w.check(&ft, base)?;
            let found = word_boundary(w, &ft, base);
            if found != fs.omega[label] {
                return Err(FreeError::BoundaryCondition { label, expected: fs.omega[label], found });
            }
        }
        Ok(SiteMorphism { source, target, words, kind })
    }

    pub fn identity(object: SiteObject, base: &Group) -> Self {
        let words = (0..object.labels()).map(|l| Word::generator(base, l)).collect();
        SiteMorphism { source: object, target: object, words, kind: GeneratorKind::Identity }
    }

    /// Precomposition on assignments: `ν ↦ ν ∘ self`, by evaluating each word.
    pub fn pull_back(&self, target: &CrossedModule, assignment: &[usize]) -> Vec<usize> {
        self.words.iter().map(|w| evaluate_unchecked(w, target, assignment)).collect()
    }
}

/// `outer ∘ inner`: every symbol `ᵘȳ` in `inner`'s words is replaced by the
/// `u`-translate of `outer`'s word for `y` (inverted for exponent −1).
pub fn compose_site_morphisms(outer: &SiteMorphism, inner: &SiteMorphism, base: &Group) -> Result<SiteMorphism> {
    if inner.target != outer.source {
        return Err(FreeError::CompositionMismatch);
    }
    let words: Vec<Word> = inner
        .words
        .iter()
        .map(|w| {
            let mut out = Word::empty();
            for s in w.symbols() {
                let piece = outer.words[s.label].translate(s.u, base);
                out = out.concat(&if s.exp < 0 { piece.inverse() } else { piece });
            }
            out
        })
        .collect();
    SiteMorphism::new(inner.source, outer.target, words, GeneratorKind::Composite, base)
}

/// All one- and two-generator free objects over `P` with the generating morphisms.
#[derive(Debug, Clone)]
pub struct Site {
    base: Arc<Group>,
    objects: Vec<SiteObject>,
    generators: Vec<SiteMorphism>,
}

impl Site {
    pub fn base(&self) -> &Arc<Group> {
        &self.base
    }

    pub fn objects(&self) -> &[SiteObject] {
        &self.objects
    }

    pub fn generators(&self) -> &[SiteMorphism] {
        &self.generators
    }

    pub fn object_index(&self, object: &SiteObject) -> Option<usize> {
        self.objects.binary_search(object).ok()
    }
}

pub fn build_site(base: &Arc<Group>) -> Site {
    let n = base.order();
    let mut objects: Vec<SiteObject> = (0..n).map(SiteObject::Single).collect();
    objects.extend((0..n).flat_map(|x| (0..n).map(move |y| SiteObject::Pair(x, y))));
    objects.sort();

    let b = base.as_ref();
    let mut generators: Vec<SiteMorphism> = objects.iter().map(|&o| SiteMorphism::identity(o, b)).collect();
    for p in b.elements() {
        for x in b.elements() {
            let words = vec![Word::symbol(p, 0)];
            let m = SiteMorphism::new(SiteObject::Single(b.conj(p, x)), SiteObject::Single(x), words, GeneratorKind::Conjugation { p, x }, b);
            generators.push(m.expect("conjugation map satisfies the boundary condition"));
        }
    }
    let e = b.identity();
    for x in b.elements() {
        for y in b.elements() {
            let pair = SiteObject::Pair(x, y);
            let sigma = Word(vec![Symbol { u: e, label: 0, exp: 1 }, Symbol { u: e, label: 1, exp: 1 }]);
            generators.push(
                SiteMorphism::new(SiteObject::Single(b.mul(x, y)), pair, vec![sigma], GeneratorKind::Multiplication { x, y }, b)
                    .expect("multiplication map"),
            );
            generators.push(
                SiteMorphism::new(SiteObject::Single(x), pair, vec![Word::symbol(e, 0)], GeneratorKind::FirstInclusion { x, y }, b)
                    .expect("first inclusion"),
            );
            generators.push(
                SiteMorphism::new(SiteObject::Single(y), pair, vec![Word::symbol(e, 1)], GeneratorKind::SecondInclusion { x, y }, b)
                    .expect("second inclusion"),
            );
        }
    }
    Site { base: base.clone(), objects, generators }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};

    fn c4_mod2() -> CrossedModule {
        CrossedModule::new(Arc::new(cyclic(4)), Arc::new(cyclic(2)), vec![0, 1, 0, 1], vec![0, 1, 2, 3, 0, 1, 2, 3]).unwrap()
    }

    #[test]
    fn boundary_examples() {
        let s3 = symmetric(3);
        let free = FreeObject::new(vec![1]);
        assert_eq!(word_boundary(&Word::generator(&s3, 0), &free, &s3), 1);
        for u in s3.elements() {
            assert_eq!(word_boundary(&Word::symbol(u, 0), &free, &s3), s3.conj(u, 1));
        }
        let w = Word::generator(&s3, 0);
        assert_eq!(word_boundary(&w.concat(&w.inverse()), &free, &s3), s3.identity());
        assert_eq!(word_boundary(&Word::empty(), &free, &s3), s3.identity());
    }

    #[test]
    fn evaluation_examples() {
        let a = c4_mod2();
        let free = FreeObject::new(vec![1, 1]);
        assert_eq!(evaluate_word(&Word::symbol(0, 0), &free, &a, &[3, 1]).unwrap(), 3);
        let sigma = Word(vec![Symbol { u: 0, label: 0, exp: 1 }, Symbol { u: 0, label: 1, exp: 1 }]);
        assert_eq!(evaluate_word(&sigma, &free, &a, &[3, 3]).unwrap(), 2);
        assert_eq!(
            evaluate_word(&sigma, &free, &a, &[3, 2]),
            Err(FreeError::FiberMismatch { label: 1, expected: 1, found: 0 })
        );
        assert!(matches!(evaluate_word(&Word::symbol(0, 5), &free, &a, &[1, 1]), Err(FreeError::MalformedWord(_))));
    }

    #[test]
    fn hom_set_examples() {
        let a = c4_mod2();
        assert_eq!(hom_set(&FreeObject::new(vec![]), &a), vec![Vec::<usize>::new()]);
        assert_eq!(hom_set(&FreeObject::new(vec![1]), &a), vec![vec![1], vec![3]]);
        assert_eq!(hom_set(&FreeObject::new(vec![1, 1]), &a).len(), 4);
    }

    #[test]
    fn labelling_examples() {
        let a = c4_mod2();
        assert_eq!(labelling(&a, 3), (SiteObject::Single(1), vec![3]));
        assert_ne!(labelling(&a, 1), labelling(&a, 3));
        // precomposition with m_{p,x} labels the translate
        let site = build_site(a.base());
        for m in site.generators() {
            if let GeneratorKind::Conjugation { p, x } = m.kind {
                for elem in a.fiber(x) {
                    let (_, assignment) = labelling(&a, elem);
                    assert_eq!(m.pull_back(&a, &assignment), vec![a.act(p, elem)]);
                }
            }
        }
    }

    #[test]
    fn conjugacy_criterion_examples() {
        let s3 = symmetric(3);
        assert_eq!(singly_generated_hom(&s3, 3, 3).map(|r| r.0), Some(0));
        // indices 2 and 5 are transpositions, 3 is a 3-cycle
        let (p, word) = singly_generated_hom(&s3, 2, 5).unwrap();
        assert_eq!(s3.conj(p, 5), 2);
        assert_eq!(word, Word::symbol(p, 0));
        assert_eq!(singly_generated_hom(&s3, 2, 3), None);
        // the induced map satisfies the boundary condition
        let m = SiteMorphism::new(SiteObject::Single(2), SiteObject::Single(5), vec![word], GeneratorKind::Composite, &s3);
        assert!(m.is_ok());
    }

    #[test]
    fn site_shape() {
        let c2 = Arc::new(cyclic(2));
        let site = build_site(&c2);
        assert_eq!(site.objects().len(), 6);
        // identities 6, m 4, then 4 each of sigma, first and second inclusion
        assert_eq!(site.generators().len(), 6 + 4 + 12);
        let m1 = site.generators().iter().find(|g| g.kind == GeneratorKind::Conjugation { p: 0, x: 1 }).unwrap();
        assert_eq!(m1.words, SiteMorphism::identity(SiteObject::Single(1), &c2).words);
        assert_eq!(build_site(&Arc::new(symmetric(3))).objects().len(), 42);
    }

    #[test]
    fn composition_examples() {
        let s3 = Arc::new(symmetric(3));
        let site = build_site(&s3);
        let find = |k: GeneratorKind| site.generators().iter().find(|g| g.kind == k).unwrap().clone();
        let (x, y) = (1, 3);
        // identity on both sides
        let iota = find(GeneratorKind::FirstInclusion { x, y });
        let id_pair = SiteMorphism::identity(SiteObject::Pair(x, y), &s3);
        let id_single = SiteMorphism::identity(SiteObject::Single(x), &s3);
        assert_eq!(compose_site_morphisms(&iota, &id_single, &s3).unwrap().words, iota.words);
        assert_eq!(compose_site_morphisms(&id_pair, &iota, &s3).unwrap().words, iota.words);
        // ι1 ∘ m_{p,x} = ᵖx̄ in the pair
        for p in s3.elements() {
            let m = find(GeneratorKind::Conjugation { p, x });
            let c = compose_site_morphisms(&iota, &m, &s3).unwrap();
            assert_eq!(c.words, vec![Word::symbol(p, 0)]);
            assert_eq!(c.target, SiteObject::Pair(x, y));
        }
        // σ ∘ m_{p,xy} = (ᵖx̄)(ᵖȳ)
        let sigma = find(GeneratorKind::Multiplication { x, y });
        for p in s3.elements() {
            let m = find(GeneratorKind::Conjugation { p, x: s3.mul(x, y) });
            let c = compose_site_morphisms(&sigma, &m, &s3).unwrap();
            assert_eq!(c.words, vec![Word(vec![Symbol { u: p, label: 0, exp: 1 }, Symbol { u: p, label: 1, exp: 1 }])]);
        }
        // m_{q,x} ∘ m_{p,qxq⁻¹} = ᵖᑫx̄
        for p in s3.elements() {
            for q in s3.elements() {
                let mq = find(GeneratorKind::Conjugation { p: q, x });
                let mp = find(GeneratorKind::Conjugation { p, x: s3.conj(q, x) });
                let c = compose_site_morphisms(&mq, &mp, &s3).unwrap();
                assert_eq!(c.words, vec![Word::symbol(s3.mul(p, q), 0)]);
            }
        }
        assert_eq!(compose_site_morphisms(&iota, &iota, &s3), Err(FreeError::CompositionMismatch));
    }

    #[test]
    fn site_morphism_boundary_condition_enforced() {
        let s3 = symmetric(3);
        let err = SiteMorphism::new(SiteObject::Single(1), SiteObject::Single(3), vec![Word::symbol(0, 0)], GeneratorKind::Composite, &s3);
        assert_eq!(err, Err(FreeError::BoundaryCondition { label: 0, expected: 1, found: 3 }));
    }

    #[test]
    fn reduction() {
        let w = Word(vec![
            Symbol { u: 1, label: 0, exp: 1 },
            Symbol { u: 2, label: 1, exp: 1 },
            Symbol { u: 2, label: 1, exp: -1 },
            Symbol { u: 1, label: 0, exp: -1 },
            Symbol { u: 0, label: 0, exp: 1 },
        ]);
        assert_eq!(w.reduced(), Word::symbol(0, 0));
        assert_eq!(w.concat(&w.inverse()).reduced(), Word::empty());
    }
}
