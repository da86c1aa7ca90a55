#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use xmodp::catalogue::Catalogue;
use xmodp::free::{word_boundary, FreeObject, Symbol, Word};
use xmodp::group::{cyclic, symmetric, Group};

pub fn c2() -> Arc<Group> {
    Arc::new(cyclic(2))
}

pub fn s3() -> Arc<Group> {
    Arc::new(symmetric(3))
}

pub fn random_word<R: Rng>(rng: &mut R, base: &Group, labels: usize, len: usize) -> Word {
    Word(
        (0..len)
            .map(|_| Symbol {
                u: rng.gen_range(0..base.order()),
                label: rng.gen_range(0..labels),
                exp: if rng.gen_bool(0.5) { 1 } else { -1 },
            })
            .collect(),
    )
}

pub fn random_free<R: Rng>(rng: &mut R, base: &Group, max_labels: usize) -> FreeObject {
    let n = rng.gen_range(1..=max_labels);
    FreeObject::new((0..n).map(|_| rng.gen_range(0..base.order())).collect())
}

/// One elementary Peiffer move `a·(u v u⁻¹)·b ⇝ a·(^{∂u} v)·b`, with the
/// left-hand word of length at most `max_len`.
pub struct PeifferMove {
    pub before: Word,
    pub after: Word,
}

pub fn random_peiffer_move<R: Rng>(rng: &mut R, base: &Group, free: &FreeObject, max_len: usize) -> PeifferMove {
    let labels = free.labels();
    let lu = rng.gen_range(1..=(max_len - 1) / 2);
    let lv = rng.gen_range(1..=max_len - 2 * lu);
    let rest = max_len - 2 * lu - lv;
    let la = rng.gen_range(0..=rest);
    let lb = rng.gen_range(0..=rest - la);
    let (u, v) = (random_word(rng, base, labels, lu), random_word(rng, base, labels, lv));
    let (a, b) = (random_word(rng, base, labels, la), random_word(rng, base, labels, lb));
    let before = a.concat(&u).concat(&v).concat(&u.inverse()).concat(&b);
    let after = a.concat(&v.translate(word_boundary(&u, free, base), base)).concat(&b);
    PeifferMove { before, after }
}

/// The translation rule read literally as `^v(^u x̄) = ^v x̄`.
pub fn literal_translate(word: &Word, v: usize) -> Word {
    Word(word.symbols().iter().map(|s| Symbol { u: v, ..*s }).collect())
}

pub fn catalogue(base: &Arc<Group>) -> Catalogue {
    Catalogue::standard(base, xmodp::catalogue::DEFAULT_CATALOGUE_ORDER)
}
