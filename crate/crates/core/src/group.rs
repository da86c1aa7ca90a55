//! Finite groups as dense Cayley tables.
//!
//! Elements are the indices `0..order`. Every map between groups is a total
//! array, which keeps exhaustive checks (the verification strategy used
//! throughout the crate) simple.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default bound on the order of a group whose automorphisms are searched.
pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group must have at least one element")]
    Empty,
    #[error("table row {row} has {len} entries, expected {order}")]
    Shape { row: usize, len: usize, order: usize },
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("map has length {len}, domain has order {order}")]
    LengthMismatch { len: usize, order: usize },
    #[error("not a homomorphism: image of {a}*{b} differs from the product of images")]
    NotHomomorphism { a: usize, b: usize },
    #[error("element set is not a subgroup: {reason}")]
    NotSubgroup { reason: String },
    #[error("subgroup is not normal: {g}*{n}*{g}^-1 lies outside it")]
    NotNormal { g: usize, n: usize },
    #[error("group of order {order} exceeds the search bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;

/// A validated finite group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Group {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish_non_exhaustive()
    }
}

impl Group {
    /// Validates a Cayley table given as rows (`table[a][b] = a*b`).
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::Shape { row, len: entries.len(), order });
            }
            flat.extend_from_slice(entries);
        }
        Self::from_flat(order, flat)
    }

    /// Validates a row-major table of length `order * order`.
    pub fn from_flat(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if table.len() != order * order {
            return Err(GroupError::Shape { row: table.len() / order, len: table.len() % order, order });
        }
        if let Some(&index) = table.iter().find(|&&v| v >= order) {
            return Err(GroupError::IndexOutOfRange { index, order });
        }
        let at = |a: usize, b: usize| table[a * order + b];

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;

        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(GroupError::NoInverse { element: a })?;
            inverse.push(inv);
        }

        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        Ok(Group { order, table, identity, inverse })
    }

    /// Builds a group from an element list and a closed multiplication.
    /// Used by the named constructors; panics if the data is not a group.
    fn from_elements<T: Clone + Ord>(elements: &[T], mul: impl Fn(&T, &T) -> T) -> Group {
        let index = |x: &T| elements.binary_search(x).expect("multiplication not closed");
        let order = elements.len();
        let mut table = Vec::with_capacity(order * order);
        for a in elements {
            for b in elements {
                table.push(index(&mul(a, b)));
            }
        }
        Group::from_flat(order, table).expect("constructor produced a non-group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g^-1`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    /// Rows of the Cayley table.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    fn check_indices(&self, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&v| v >= self.order) {
            Some(&index) => Err(GroupError::IndexOutOfRange { index, order: self.order }),
            None => Ok(()),
        }
    }

    /// A finite nonempty subset closed under products is a subgroup.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.iter().any(|&v| v >= self.order) {
            return false;
        }
        let members: BTreeSet<usize> = set.iter().copied().collect();
        !members.is_empty()
            && members.iter().all(|&a| members.iter().all(|&b| members.contains(&self.mul(a, b))))
    }

    pub fn is_normal_subgroup(&self, set: &[usize]) -> bool {
        self.is_subgroup(set) && self.normality_witness(set).is_none()
    }

    fn normality_witness(&self, set: &[usize]) -> Option<(usize, usize)> {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        for g in self.elements() {
            for &n in &members {
                if !members.contains(&self.conj(g, n)) {
                    return Some((g, n));
                }
            }
        }
        None
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Result<Vec<usize>> {
        self.check_indices(gens)?;
        Ok(self.saturate(gens, false))
    }

    /// Smallest normal subgroup containing `gens`, sorted.
    pub fn normal_closure(&self, gens: &[usize]) -> Result<Vec<usize>> {
        self.check_indices(gens)?;
        Ok(self.saturate(gens, true))
    }

    fn saturate(&self, gens: &[usize], conjugates: bool) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        let mut members = Vec::new();
        let mut queue = VecDeque::new();
        let push = |x: usize, seen: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
            if !seen[x] {
                seen[x] = true;
                queue.push_back(x);
            }
        };
        push(self.identity, &mut seen, &mut queue);
        for &g in gens {
            push(g, &mut seen, &mut queue);
        }
        while let Some(x) = queue.pop_front() {
            members.push(x);
            push(self.inv(x), &mut seen, &mut queue);
            if conjugates {
                for g in self.elements() {
                    push(self.conj(g, x), &mut seen, &mut queue);
                }
            }
            // products with everything found so far, both orders
            for &y in &members {
                push(self.mul(x, y), &mut seen, &mut queue);
                push(self.mul(y, x), &mut seen, &mut queue);
            }
        }
        members.sort_unstable();
        members
    }

    /// A greedy generating set: each element is not in the span of the previous ones.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for g in self.elements() {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.saturate(&gens, false);
            }
        }
        gens
    }

    /// The group on a subgroup's elements, reindexed in increasing order,
    /// together with the inclusion map.
    pub fn restrict(&self, set: &[usize]) -> Result<(Group, Vec<usize>)> {
        self.check_indices(set)?;
        if !self.is_subgroup(set) {
            return Err(GroupError::NotSubgroup { reason: "not closed under multiplication".into() });
        }
        let members: Vec<usize> = set.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut table = Vec::with_capacity(members.len() * members.len());
        for &a in &members {
            for &b in &members {
                table.push(members.binary_search(&self.mul(a, b)).expect("closed"));
            }
        }
        Ok((Group::from_flat(members.len(), table)?, members))
    }

    /// Quotient by a normal subgroup. Cosets are represented by their least
    /// element and ordered by representative. Returns the quotient group and
    /// the projection as an element map.
    pub fn quotient(&self, normal: &[usize]) -> Result<(Group, Vec<usize>)> {
        self.check_indices(normal)?;
        if !self.is_subgroup(normal) {
            return Err(GroupError::NotSubgroup { reason: "not closed under multiplication".into() });
        }
        if let Some((g, n)) = self.normality_witness(normal) {
            return Err(GroupError::NotNormal { g, n });
        }
        let mut rep = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if rep[g] != usize::MAX {
                continue;
            }
            reps.push(g);
            for &n in normal {
                rep[self.mul(g, n)] = g;
            }
        }
        let projection: Vec<usize> =
            rep.iter().map(|r| reps.binary_search(r).expect("representative")).collect();
        let k = reps.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                table.push(projection[self.mul(a, b)]);
            }
        }
        Ok((Group::from_flat(k, table)?, projection))
    }

    /// All subgroups, each as a sorted element list, in a canonical order
    /// (by size, then lexicographically).
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![vec![self.identity]];
        found.insert(vec![self.identity]);
        while let Some(h) = frontier.pop() {
            for g in self.elements() {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.saturate(&gens, false);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut all: Vec<Vec<usize>> = found.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    pub fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        self.all_subgroups().into_iter().filter(|h| self.normality_witness(h).is_none()).collect()
    }

    /// Direct product on pairs `(a, b)`, indexed `a * |other| + b`.
    pub fn direct_product(&self, other: &Group) -> Group {
        let pairs: Vec<(usize, usize)> =
            self.elements().flat_map(|a| other.elements().map(move |b| (a, b))).collect();
        Group::from_elements(&pairs, |x, y| (self.mul(x.0, y.0), other.mul(x.1, y.1)))
    }
}

/// A validated homomorphism between two finite groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    domain: Arc<Group>,
    codomain: Arc<Group>,
    image: Vec<usize>,
}

impl GroupHom {
    pub fn new(domain: Arc<Group>, codomain: Arc<Group>, image: Vec<usize>) -> Result<Self> {
        check_hom(&domain, &codomain, &image)?;
        Ok(GroupHom { domain, codomain, image })
    }

    pub fn identity(group: Arc<Group>) -> Self {
        let image = group.elements().collect();
        GroupHom { domain: group.clone(), codomain: group, image }
    }

    pub fn domain(&self) -> &Arc<Group> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Group> {
        &self.codomain
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    /// `self ∘ inner`
    pub fn after(&self, inner: &GroupHom) -> Option<GroupHom> {
        if *inner.codomain != *self.domain {
            return None;
        }
        let image = inner.image.iter().map(|&a| self.image[a]).collect();
        Some(GroupHom { domain: inner.domain.clone(), codomain: self.codomain.clone(), image })
    }

    pub fn kernel(&self) -> Vec<usize> {
        let e = self.codomain.identity();
        self.domain.elements().filter(|&a| self.image[a] == e).collect()
    }

    pub fn image_set(&self) -> Vec<usize> {
        self.image.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image_set().len() == self.codomain.order()
    }
}

/// Exhaustive homomorphism check on an element map.
pub fn check_hom(domain: &Group, codomain: &Group, image: &[usize]) -> Result<()> {
    if image.len() != domain.order() {
        return Err(GroupError::LengthMismatch { len: image.len(), order: domain.order() });
    }
    if let Some(&index) = image.iter().find(|&&v| v >= codomain.order()) {
        return Err(GroupError::IndexOutOfRange { index, order: codomain.order() });
    }
    for a in domain.elements() {
        for b in domain.elements() {
            if image[domain.mul(a, b)] != codomain.mul(image[a], image[b]) {
                return Err(GroupError::NotHomomorphism { a, b });
            }
        }
    }
    Ok(())
}

/// All homomorphisms `domain -> codomain` whose value on each generator
/// (from [`Group::generators`]) is drawn from `allowed(generator)`.
/// Results are element maps in lexicographic order.
pub fn enumerate_homs_with(
    domain: &Group,
    codomain: &Group,
    allowed: impl Fn(usize) -> Vec<usize>,
) -> Vec<Vec<usize>> {
    let gens = domain.generators();
    let choices: Vec<Vec<usize>> = gens.iter().map(|&g| allowed(g)).collect();
    let mut out = Vec::new();
    if choices.iter().any(Vec::is_empty) {
        return out;
    }
    let mut pick = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend_from_generators(domain, codomain, &gens, &images) {
            out.push(map);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == pick.len() {
                out.sort();
                out.dedup();
                return out;
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

pub fn enumerate_homs(domain: &Group, codomain: &Group) -> Vec<Vec<usize>> {
    enumerate_homs_with(domain, codomain, |_| codomain.elements().collect())
}

/// Extends generator images to a full map by breadth-first multiplication,
/// returning `None` when the assignment is inconsistent.
fn extend_from_generators(
    domain: &Group,
    codomain: &Group,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; domain.order()];
    map[domain.identity()] = codomain.identity();
    let mut queue = VecDeque::from([domain.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = domain.mul(x, g);
            let v = codomain.mul(map[x], h);
            if map[y] == usize::MAX {
                map[y] = v;
                queue.push_back(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    check_hom(domain, codomain, &map).ok().map(|_| map)
}

/// The automorphism group with its evaluation maps.
///
/// Automorphisms are sorted lexicographically as element maps; the product in
/// the returned group is composition, `(s*t)(m) = s(t(m))`, so `maps[s][m]`
/// is a left action.
pub fn automorphism_group(m: &Group, bound: usize) -> Result<(Group, Vec<Vec<usize>>)> {
    if m.order() > bound {
        return Err(GroupError::OrderTooLarge { order: m.order(), bound });
    }
    let mut maps: Vec<Vec<usize>> = enumerate_homs(m, m)
        .into_iter()
        .filter(|f| f.iter().collect::<BTreeSet<_>>().len() == m.order())
        .collect();
    maps.sort();
    let k = maps.len();
    let mut table = Vec::with_capacity(k * k);
    for s in &maps {
        for t in &maps {
            let composite: Vec<usize> = t.iter().map(|&x| s[x]).collect();
            table.push(maps.binary_search(&composite).expect("automorphisms closed"));
        }
    }
    Ok((Group::from_flat(k, table)?, maps))
}

/// Cyclic group `C_n` with `a*b = (a+b) mod n`.
pub fn cyclic(n: usize) -> Group {
    assert!(n > 0, "cyclic group of order 0");
    let elements: Vec<usize> = (0..n).collect();
    Group::from_elements(&elements, |a, b| (a + b) % n)
}

/// Klein four-group on `{0, a, b, c}` encoded as bit pairs with xor.
pub fn klein_four() -> Group {
    let elements: Vec<usize> = (0..4).collect();
    Group::from_elements(&elements, |a, b| a ^ b)
}

/// Symmetric group on `n` points. Elements are permutations in
/// lexicographic order (index 0 is the identity); the product is
/// composition `(s*t)(i) = s(t(i))`.
pub fn symmetric(n: usize) -> Group {
    let mut perms = vec![Vec::new()];
    for _ in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..n)
                    .filter(|i| !p.contains(i))
                    .map(|i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    perms.sort();
    Group::from_elements(&perms, |s, t| t.iter().map(|&i| s[i]).collect())
}

/// Dihedral group of order `2n`: pairs `(k, flip)` for `r^k s^flip`.
pub fn dihedral(n: usize) -> Group {
    let elements: Vec<(usize, usize)> = (0..n).flat_map(|k| (0..2).map(move |f| (k, f))).collect();
    Group::from_elements(&elements, |&(k1, f1), &(k2, f2)| {
        let k = if f1 == 0 { k1 + k2 } else { k1 + n - k2 };
        (k % n, f1 ^ f2)
    })
}

/// Quaternion group `Q8` on `±1, ±i, ±j, ±k`.
pub fn quaternion() -> Group {
    // (sign, unit) with unit 0=1, 1=i, 2=j, 3=k
    let elements: Vec<(usize, usize)> = (0..2).flat_map(|s| (0..4).map(move |u| (s, u))).collect();
    let unit_mul = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (0, x),
            (x, y) if x == y => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    Group::from_elements(&elements, |&(s1, u1), &(s2, u2)| {
        let (s, u) = unit_mul(u1, u2);
        (s ^ s1 ^ s2, u)
    })
}

/// One named representative of each isomorphism class of groups of order
/// at most `max_order` (supported up to 8).
pub fn small_groups(max_order: usize) -> Vec<(String, Group)> {
    let mut out: Vec<(String, Group)> = Vec::new();
    for n in 1..=max_order.min(8) {
        match n {
            4 => {
                out.push(("C4".into(), cyclic(4)));
                out.push(("V4".into(), klein_four()));
            }
            6 => {
                out.push(("C6".into(), cyclic(6)));
                out.push(("S3".into(), symmetric(3)));
            }
            8 => {
                out.push(("C8".into(), cyclic(8)));
                out.push(("C4xC2".into(), cyclic(4).direct_product(&cyclic(2))));
                out.push(("C2xC2xC2".into(), klein_four().direct_product(&cyclic(2))));
                out.push(("D4".into(), dihedral(4)));
                out.push(("Q8".into(), quaternion()));
            }
            _ => out.push((format!("C{n}"), cyclic(n))),
        }
    }
    out
}

/// Looks up a named group: `C<n>`, `V4`, `S<n>`, `D<n>` (order 2n), `Q8`.
pub fn named(name: &str) -> Option<Group> {
    let (head, rest) = name.split_at(1.min(name.len()));
    let n: Option<usize> = rest.parse().ok();
    match (head, n) {
        ("V", Some(4)) => Some(klein_four()),
        ("Q", Some(8)) => Some(quaternion()),
        ("C", Some(n)) if n > 0 => Some(cyclic(n)),
        ("S", Some(n)) if (1..=5).contains(&n) => Some(symmetric(n)),
        ("D", Some(n)) if n > 0 => Some(dihedral(n)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_c2() {
        let g = Group::from_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        let c2 = Group::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.identity(), 0);
        assert_eq!(c2.inv(1), 1);
    }

    #[test]
    fn s3_has_trivial_center() {
        let s3 = symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        // brute force: elements commuting with everything
        let central: Vec<usize> = (0..6)
            .filter(|&z| (0..6).all(|g| s3.mul(z, g) == s3.mul(g, z)))
            .collect();
        assert_eq!(central, vec![0]);
        assert_eq!(s3.center(), central);
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(Group::from_table(&[]), Err(GroupError::Empty));
        assert!(matches!(
            Group::from_table(&[vec![0, 1], vec![1]]),
            Err(GroupError::Shape { row: 1, .. })
        ));
        assert!(matches!(
            Group::from_table(&[vec![0, 2], vec![1, 0]]),
            Err(GroupError::IndexOutOfRange { index: 2, .. })
        ));
        // no identity
        assert_eq!(Group::from_table(&[vec![1, 1], vec![1, 1]]), Err(GroupError::NoIdentity));
        // identity 0, but 1 has no inverse
        assert_eq!(
            Group::from_table(&[vec![0, 1], vec![1, 1]]),
            Err(GroupError::NoInverse { element: 1 })
        );
        // a Latin square with identity that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(Group::from_table(&loop5), Err(GroupError::NotAssociative { .. })));
    }

    #[test]
    fn normal_closure_examples() {
        let c4 = cyclic(4);
        assert_eq!(c4.normal_closure(&[]).unwrap(), vec![0]);
        assert_eq!(c4.normal_closure(&[2]).unwrap(), vec![0, 2]);
        let s3 = symmetric(3);
        // index 1 is the permutation [0,2,1], a transposition
        assert_eq!(s3.element_order(1), 2);
        assert_eq!(s3.normal_closure(&[1]).unwrap(), (0..6).collect::<Vec<_>>());
        assert_eq!(s3.subgroup_closure(&[1]).unwrap(), vec![0, 1]);
        assert!(matches!(c4.normal_closure(&[7]), Err(GroupError::IndexOutOfRange { index: 7, .. })));
    }

    #[test]
    fn normal_closure_is_intersection_of_normal_supersets() {
        for g in [cyclic(4), klein_four(), symmetric(3), dihedral(4), quaternion()] {
            let normals = g.normal_subgroups();
            for s in g.elements() {
                for t in g.elements() {
                    let closure = g.normal_closure(&[s, t]).unwrap();
                    let mut meet: BTreeSet<usize> = g.elements().collect();
                    for n in normals.iter().filter(|n| n.contains(&s) && n.contains(&t)) {
                        meet = meet.intersection(&n.iter().copied().collect()).copied().collect();
                    }
                    assert_eq!(closure, meet.into_iter().collect::<Vec<_>>());
                    assert!(g.is_normal_subgroup(&closure));
                }
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let c4 = cyclic(4);
        let (q, proj) = c4.quotient(&[0]).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(proj, vec![0, 1, 2, 3]);
        let (q, proj) = c4.quotient(&[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj, vec![0, 1, 0, 1]);
        let s3 = symmetric(3);
        let a3 = s3.subgroup_closure(&[3]).unwrap();
        assert_eq!(a3, vec![0, 3, 4]);
        let (q, proj) = s3.quotient(&a3).unwrap();
        assert_eq!(q.order(), 2);
        // kernel of the projection is exactly A3
        let kernel: Vec<usize> = (0..6).filter(|&g| proj[g] == q.identity()).collect();
        assert_eq!(kernel, a3);
        assert!(matches!(s3.quotient(&[0, 1]), Err(GroupError::NotNormal { .. })));
        assert!(matches!(s3.quotient(&[0, 1, 2]), Err(GroupError::NotSubgroup { .. })));
    }

    #[test]
    fn homomorphism_checks() {
        let c4 = Arc::new(cyclic(4));
        let c2 = Arc::new(cyclic(2));
        let c3 = Arc::new(cyclic(3));
        assert!(GroupHom::new(c4.clone(), c4.clone(), vec![0, 1, 2, 3]).is_ok());
        let mod2 = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(mod2.kernel(), vec![0, 2]);
        assert!(mod2.is_surjective());
        assert!(matches!(
            GroupHom::new(c2, c3, vec![0, 1]),
            Err(GroupError::NotHomomorphism { a: 1, b: 1 })
        ));
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(automorphism_group(&cyclic(2), 12).unwrap().0.order(), 1);
        assert_eq!(automorphism_group(&cyclic(3), 12).unwrap().0.order(), 2);
        let (aut, maps) = automorphism_group(&klein_four(), 12).unwrap();
        assert_eq!(aut.order(), 6);
        assert!(!aut.is_abelian());
        // closed under composition and matching the table
        for s in aut.elements() {
            for t in aut.elements() {
                let composite: Vec<usize> = maps[t].iter().map(|&x| maps[s][x]).collect();
                assert_eq!(maps[aut.mul(s, t)], composite);
            }
        }
        assert_eq!(automorphism_group(&symmetric(3), 12).unwrap().0.order(), 6);
        assert_eq!(automorphism_group(&quaternion(), 12).unwrap().0.order(), 24);
        assert_eq!(
            automorphism_group(&cyclic(13), 12),
            Err(GroupError::OrderTooLarge { order: 13, bound: 12 })
        );
    }

    #[test]
    fn hom_enumeration_matches_brute_force() {
        let groups = [cyclic(1), cyclic(2), cyclic(3), cyclic(4), klein_four(), symmetric(3)];
        for g in &groups {
            for h in &groups {
                if h.order().pow(g.order() as u32) > 50_000 {
                    continue;
                }
                let mut brute = Vec::new();
                let total = h.order().pow(g.order() as u32);
                for code in 0..total {
                    let mut c = code;
                    let map: Vec<usize> = (0..g.order())
                        .map(|_| {
                            let v = c % h.order();
                            c /= h.order();
                            v
                        })
                        .collect();
                    if check_hom(g, h, &map).is_ok() {
                        brute.push(map);
                    }
                }
                brute.sort();
                assert_eq!(enumerate_homs(g, h), brute);
            }
        }
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(symmetric(3).all_subgroups().len(), 6);
        assert_eq!(symmetric(3).normal_subgroups().len(), 3);
        assert_eq!(klein_four().all_subgroups().len(), 5);
        assert_eq!(dihedral(4).all_subgroups().len(), 10);
        assert_eq!(quaternion().all_subgroups().len(), 6);
        assert_eq!(quaternion().normal_subgroups().len(), 6);
    }

    #[test]
    fn small_group_catalogue() {
        let groups = small_groups(8);
        assert_eq!(groups.len(), 14);
        for (name, g) in &groups {
            assert!(named(name).is_none_or(|h| h.order() == g.order()), "{name}");
        }
        // the five groups of order 8 are pairwise distinguished by (abelian, #involutions)
        let sig: BTreeSet<(bool, usize)> = groups
            .iter()
            .filter(|(_, g)| g.order() == 8)
            .map(|(_, g)| (g.is_abelian(), g.elements().filter(|&x| g.element_order(x) == 2).count()))
            .collect();
        assert_eq!(sig.len(), 5);
    }
}
