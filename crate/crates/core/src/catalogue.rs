//! Finite families of test objects for universal-property sweeps.
//!
//! The default catalogue over a base `P` holds every crossed module
//! `(M, ∂, action)` with `M` one of the representatives from
//! [`small_groups`] of order at most the bound, `∂` any homomorphism into
//! `P`, and the action any homomorphism `P → Aut(M)`, keeping those that
//! satisfy CM1 and CM2. Distinct structures on isomorphic data are kept
//! separately. This is a desk-scale sample, not a proof of universality.

use std::sync::Arc;

use crate::group::{automorphism_group, enumerate_homs, small_groups, Group, DEFAULT_AUTOMORPHISM_BOUND};
use crate::xmod::{validate_crossed_module, CrossedModule};

pub const DEFAULT_CATALOGUE_ORDER: usize = 4;

#[derive(Debug, Clone)]
pub struct Catalogue {
    max_order: usize,
    entries: Vec<(String, Arc<CrossedModule>)>,
}

impl Catalogue {
    pub fn standard(base: &Arc<Group>, max_order: usize) -> Self {
        let mut entries = Vec::new();
        for (name, group) in small_groups(max_order) {
            let group = Arc::new(group);
            let (aut, maps) = automorphism_group(&group, DEFAULT_AUTOMORPHISM_BOUND.max(group.order()))
                .expect("bound covers the group");
            let actions: Vec<Vec<usize>> = enumerate_homs(base, &aut)
                .into_iter()
                .map(|rho| rho.iter().flat_map(|&s| maps[s].iter().copied()).collect())
                .collect();
            let mut k = 0;
            for boundary in enumerate_homs(&group, base) {
                for action in &actions {
                    if validate_crossed_module(&group, base, &boundary, action).is_valid() {
                        let object = CrossedModule::new(group.clone(), base.clone(), boundary.clone(), action.clone())
                            .expect("validated");
                        entries.push((format!("{name}#{k}"), Arc::new(object)));
                        k += 1;
                    }
                }
            }
        }
        Catalogue { max_order, entries }
    }

    /// Adds an object unless an equal one is already present.
    pub fn with(mut self, name: impl Into<String>, object: Arc<CrossedModule>) -> Self {
        self.push(name, object);
        self
    }

    pub fn push(&mut self, name: impl Into<String>, object: Arc<CrossedModule>) {
        if !self.entries.iter().any(|(_, o)| **o == *object) {
            self.entries.push((name.into(), object));
        }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Arc<CrossedModule>)> {
        self.entries.iter().map(|(n, o)| (n.as_str(), o))
    }

    pub fn objects(&self) -> impl Iterator<Item = &Arc<CrossedModule>> {
        self.entries.iter().map(|(_, o)| o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    #[test]
    fn counts_over_c2() {
        let p = Arc::new(cyclic(2));
        let cat = Catalogue::standard(&p, 4);
        let count = |prefix: &str| cat.names().iter().filter(|n| n.starts_with(prefix)).count();
        // C1: 1; C2: boundary trivial or identity; C3: trivial or inverting action
        assert_eq!(count("C1#"), 1);
        assert_eq!(count("C2#"), 2);
        assert_eq!(count("C3#"), 2);
        // C4: (trivial, trivial), (trivial, inversion), (mod 2, trivial)
        assert_eq!(count("C4#"), 3);
        assert!(cat.objects().all(|o| validate_crossed_module(o.group(), o.base(), o.boundary(), o.action_table()).is_valid()));
    }

    #[test]
    fn with_deduplicates() {
        let p = Arc::new(cyclic(2));
        let cat = Catalogue::standard(&p, 2);
        let n = cat.len();
        let cat = cat.with("terminal", Arc::new(CrossedModule::terminal(p)));
        assert_eq!(cat.len(), n);
    }
}
