use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::RangeInclusive;

use super::term::{Term, Triple};

pub type TermId = u32;

/// Which of the three orderings serves a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexKind {
    Spo,
    Pos,
    Osp,
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexKind::Spo => "SPO",
            IndexKind::Pos => "POS",
            IndexKind::Osp => "OSP",
        })
    }
}

impl IndexKind {
    /// Index used for a pattern with the given bound positions (s, p, o).
    pub fn for_shape(s: bool, p: bool, o: bool) -> IndexKind {
        match (s, p, o) {
            (true, _, false) | (true, true, true) => IndexKind::Spo,
            (true, false, true) => IndexKind::Osp,
            (false, true, _) => IndexKind::Pos,
            (false, false, true) => IndexKind::Osp,
            (false, false, false) => IndexKind::Spo,
        }
    }
}

/// In-memory triple store with interned terms and SPO/POS/OSP indices.
///
/// Loading is single-writer; once built the store is only read and can be
/// shared between threads.
#[derive(Default, Clone)]
pub struct GraphStore {
    terms: Vec<Term>,
    ids: HashMap<Term, TermId>,
    spo: BTreeSet<[TermId; 3]>,
    pos: BTreeSet<[TermId; 3]>,
    osp: BTreeSet<[TermId; 3]>,
}

impl fmt::Debug for GraphStore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphStore")
            .field("triples", &self.spo.len())
            .field("terms", &self.terms.len())
            .finish()
    }
}

impl GraphStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_triples<I: IntoIterator<Item = Triple>>(triples: I) -> Self {
        let mut store = Self::new();
        store.extend(triples);
        store
    }

    fn intern(&mut self, term: &Term) -> TermId {
        if let Some(&id) = self.ids.get(term) {
            return id;
        }
        let id = TermId::try_from(self.terms.len()).expect("term dictionary overflow");
        self.terms.push(term.clone());
        self.ids.insert(term.clone(), id);
        id
    }

    /// Inserts a triple; returns false if it was already present.
    pub fn insert(&mut self, triple: &Triple) -> bool {
        let s = self.intern(&triple.subject);
        let p = self.intern(&triple.predicate);
        let o = self.intern(&triple.object);
        if !self.spo.insert([s, p, o]) {
            return false;
        }
        self.pos.insert([p, o, s]);
        self.osp.insert([o, s, p]);
        true
    }

    pub fn extend<I: IntoIterator<Item = Triple>>(&mut self, triples: I) {
        for t in triples {
            self.insert(&t);
        }
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        match (
            self.id_of(&triple.subject),
            self.id_of(&triple.predicate),
            self.id_of(&triple.object),
        ) {
            (Some(s), Some(p), Some(o)) => self.spo.contains(&[s, p, o]),
            _ => false,
        }
    }

    pub fn id_of(&self, term: &Term) -> Option<TermId> {
        self.ids.get(term).copied()
    }

    pub fn term(&self, id: TermId) -> &Term {
        &self.terms[id as usize]
    }

    pub fn resolve(&self, ids: [TermId; 3]) -> Triple {
        Triple::new(
            self.term(ids[0]).clone(),
            self.term(ids[1]).clone(),
            self.term(ids[2]).clone(),
        )
    }

    /// All triples in SPO id order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().map(|ids| self.resolve(*ids))
    }

    /// Matches a pattern where `None` is a wildcard.
    pub fn match_pattern<'a>(
        &'a self,
        s: Option<&Term>,
        p: Option<&Term>,
        o: Option<&Term>,
    ) -> Box<dyn Iterator<Item = Triple> + 'a> {
        let lookup = |t: Option<&Term>| match t {
            None => Some(None),
            Some(t) => self.id_of(t).map(Some),
        };
        match (lookup(s), lookup(p), lookup(o)) {
            (Some(s), Some(p), Some(o)) => {
                Box::new(self.match_ids(s, p, o).map(move |ids| self.resolve(ids)))
            }
            _ => Box::new(std::iter::empty()),
        }
    }

    /// Matches on interned ids; yields `[s, p, o]`.
    pub fn match_ids(
        &self,
        s: Option<TermId>,
        p: Option<TermId>,
        o: Option<TermId>,
    ) -> Box<dyn Iterator<Item = [TermId; 3]> + '_> {
        const MAX: TermId = TermId::MAX;
        fn range(a: TermId, b: Option<TermId>) -> RangeInclusive<[TermId; 3]> {
            match b {
                Some(b) => [a, b, 0]..=[a, b, MAX],
                None => [a, 0, 0]..=[a, MAX, MAX],
            }
        }
        match IndexKind::for_shape(s.is_some(), p.is_some(), o.is_some()) {
            IndexKind::Spo => match s {
                Some(s) => {
                    if let (Some(p), Some(o)) = (p, o) {
                        let hit = self.spo.contains(&[s, p, o]);
                        return Box::new(hit.then_some([s, p, o]).into_iter());
                    }
                    Box::new(self.spo.range(range(s, p)).copied())
                }
                None => Box::new(self.spo.iter().copied()),
            },
            IndexKind::Pos => {
                let p = p.expect("POS requires a bound predicate");
                Box::new(self.pos.range(range(p, o)).map(|&[p, o, s]| [s, p, o]))
            }
            IndexKind::Osp => {
                let o = o.expect("OSP requires a bound object");
                Box::new(self.osp.range(range(o, s)).map(|&[o, s, p]| [s, p, o]))
            }
        }
    }

    /// Number of matches for an id pattern.
    pub fn count_ids(&self, s: Option<TermId>, p: Option<TermId>, o: Option<TermId>) -> usize {
        if s.is_none() && p.is_none() && o.is_none() {
            return self.len();
        }
        self.match_ids(s, p, o).count()
    }

    /// Distinct subjects of `rdf:type <class>` and friends.
    pub fn subjects_with(&self, predicate: &Term, object: &Term) -> Vec<Term> {
        self.match_pattern(None, Some(predicate), Some(object))
            .map(|t| t.subject)
            .collect()
    }

    pub fn objects_of(&self, subject: &Term, predicate: &Term) -> Vec<Term> {
        self.match_pattern(Some(subject), Some(predicate), None)
            .map(|t| t.object)
            .collect()
    }

    /// Checks that the three indices hold the same triple set.
    pub fn indices_consistent(&self) -> bool {
        self.spo.len() == self.pos.len()
            && self.spo.len() == self.osp.len()
            && self
                .spo
                .iter()
                .all(|&[s, p, o]| self.pos.contains(&[p, o, s]) && self.osp.contains(&[o, s, p]))
    }
}
