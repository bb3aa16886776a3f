//! Isomorphism-deduplicated sets of graphs.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::Graph;
use crate::graph6;

/// Sort key: vertex count, edge count, canonical string.
type Key = (usize, usize, CanonicalForm);

/// A set of graphs with no two members isomorphic. Members are stored in
/// canonical labeling and iterate by `(n, edges, canonical string)`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GraphFamily {
    members: BTreeMap<Key, Graph>,
}

impl GraphFamily {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `g`; returns false if an isomorphic member was already present.
    pub fn insert(&mut self, g: &Graph) -> bool {
        let cf = canonical_form(g);
        self.insert_canonical(cf)
    }

    pub fn insert_canonical(&mut self, cf: CanonicalForm) -> bool {
        let g = cf.graph();
        let key = (g.n(), g.edge_count(), cf);
        if self.members.contains_key(&key) {
            return false;
        }
        self.members.insert(key, g);
        true
    }

    pub fn contains_iso(&self, g: &Graph) -> bool {
        self.members
            .contains_key(&(g.n(), g.edge_count(), canonical_form(g)))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Graph> {
        self.members.values()
    }

    pub fn canonical_forms(&self) -> impl Iterator<Item = &CanonicalForm> {
        self.members.keys().map(|k| &k.2)
    }

    /// Sorted canonical strings; identifies the family regardless of how it was built.
    pub fn family_key(&self) -> Vec<String> {
        let mut v: Vec<String> = self.canonical_forms().map(|c| c.to_string()).collect();
        v.sort();
        v
    }

    pub fn extend<'a, I: IntoIterator<Item = &'a Graph>>(&mut self, graphs: I) {
        for g in graphs {
            self.insert(g);
        }
    }

    /// Smallest vertex count among members.
    pub fn min_order(&self) -> Option<usize> {
        self.members.keys().map(|k| k.0).min()
    }

    /// Keeps the first `cap` members in iteration order.
    pub fn truncate(&mut self, cap: usize) {
        while self.members.len() > cap {
            let last = self.members.keys().next_back().cloned().expect("non-empty");
            self.members.remove(&last);
        }
    }
}

impl<'a> FromIterator<&'a Graph> for GraphFamily {
    fn from_iter<I: IntoIterator<Item = &'a Graph>>(iter: I) -> Self {
        let mut f = GraphFamily::new();
        f.extend(iter);
        f
    }
}

impl FromIterator<Graph> for GraphFamily {
    fn from_iter<I: IntoIterator<Item = Graph>>(iter: I) -> Self {
        let mut f = GraphFamily::new();
        for g in iter {
            f.insert(&g);
        }
        f
    }
}

impl std::fmt::Debug for GraphFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.canonical_forms()).finish()
    }
}

impl Serialize for GraphFamily {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.canonical_forms().map(|c| c.as_str()))
    }
}

impl<'de> Deserialize<'de> for GraphFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let mut f = GraphFamily::new();
        for s in strings {
            let g = graph6::decode(&s).map_err(serde::de::Error::custom)?;
            f.insert(&g);
        }
        Ok(f)
    }
}
