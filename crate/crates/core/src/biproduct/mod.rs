//! Rewriting to normal form in the enveloping algebra assembled from the two
//! Borel halves, with bounded-degree local confluence checks.

mod rules;

use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};
use crate::exact::Field;
use crate::ncpoly::{Alphabet, Letter, NCPoly, Word};
use crate::report::Entry;

pub use rules::{classical_rules, quantum_rules};

/// Steps allowed in one normal form computation.
/// A rule index and the position where its left side occurs in a word.
pub type RuleSite = (usize, usize);

pub const DEFAULT_STEP_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Quantum,
}

/// Which redex to contract next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Largest reducible word, leftmost redex.
    LeftmostLargest,
    /// Smallest reducible word, rightmost redex.
    RightmostSmallest,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule<S> {
    pub label: String,
    pub lhs: Word,
    pub rhs: NCPoly<S>,
}

impl<S: Field> Rule<S> {
    pub fn new(lhs: Word, rhs: NCPoly<S>) -> Self {
        Rule {
            label: String::new(),
            lhs,
            rhs,
        }
    }

    fn labelled(mut self, ab: &Alphabet) -> Self {
        let text = format!("{} -> {}", ab.fmt_word(&self.lhs), self.rhs.display(ab));
        self.label = if self.label.is_empty() {
            text
        } else {
            format!("{}: {text}", self.label)
        };
        self
    }
}

/// An immutable terminating rule set.
#[derive(Clone, Debug)]
pub struct RewriteSystem<S> {
    pub mode: Mode,
    pub cartan: CartanMatrix,
    pub d: Vec<i64>,
    pub alphabet: Alphabet,
    rules: Vec<Rule<S>>,
    index: HashMap<Vec<Letter>, usize>,
    lengths: Vec<usize>,
    /// Right side of `[E_i, F_i]`: `H_i` or `(K_i - K_i^-1)/(q^d_i - q^-d_i)`.
    cartan_images: Vec<NCPoly<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ambiguity {
    pub word: String,
    pub rules: [String; 2],
    pub resolved: bool,
    /// Difference of the two normal forms.
    pub difference: String,
}

/// Rules added by [`RewriteSystem::complete`] and the final confluence state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Completion {
    pub added: Vec<String>,
    pub rounds: usize,
    pub report: ConfluenceReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfluenceReport {
    pub degree_bound: usize,
    pub rules: usize,
    pub checked: usize,
    pub resolved: usize,
    pub unresolved: Vec<Ambiguity>,
}

impl ConfluenceReport {
    pub fn pass(&self) -> bool {
        self.unresolved.is_empty()
    }
}

impl<S: Field + Send + Sync> RewriteSystem<S> {
    pub(crate) fn new(
        mode: Mode,
        cartan: CartanMatrix,
        d: Vec<i64>,
        alphabet: Alphabet,
        rules: Vec<Rule<S>>,
        cartan_images: Vec<NCPoly<S>>,
    ) -> Self {
        let mut sys = RewriteSystem {
            mode,
            cartan,
            d,
            alphabet,
            rules,
            index: HashMap::new(),
            lengths: Vec::new(),
            cartan_images,
        };
        sys.reindex();
        sys
    }

    fn reindex(&mut self) {
        self.index = self
            .rules
            .iter()
            .enumerate()
            .map(|(k, r)| (r.lhs.0.clone(), k))
            .collect();
        let mut lengths: Vec<usize> = self.rules.iter().map(|r| r.lhs.len()).collect();
        lengths.sort_unstable();
        lengths.dedup();
        self.lengths = lengths;
    }

    pub fn rules(&self) -> &[Rule<S>] {
        &self.rules
    }

    pub fn rule_for(&self, lhs: &Word) -> Option<&Rule<S>> {
        self.index.get(&lhs.0).map(|&k| &self.rules[k])
    }

    pub fn cartan_image(&self, i: usize) -> &NCPoly<S> {
        &self.cartan_images[i]
    }

    /// Every rule strictly decreases its word in the term order.
    pub fn is_terminating(&self) -> bool {
        self.rules
            .iter()
            .all(|r| r.rhs.terms().keys().all(|w| *w < r.lhs))
    }

    /// Copy with the rule for `lhs` replaced (test hook for negative controls).
    pub fn with_rule(&self, lhs: &Word, rhs: NCPoly<S>) -> Result<Self> {
        let k = *self
            .index
            .get(&lhs.0)
            .ok_or_else(|| Error::UnknownSymbol(self.alphabet.fmt_word(lhs)))?;
        let mut out = self.clone();
        out.rules[k] = Rule::new(lhs.clone(), rhs).labelled(&self.alphabet);
        out.reindex();
        Ok(out)
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }

    pub fn display(&self, p: &NCPoly<S>) -> String {
        p.display(&self.alphabet)
    }

    /// Position and rule of a redex in `w`.
    fn find_redex(&self, w: &[Letter], rightmost: bool) -> Option<(usize, usize)> {
        let starts: Box<dyn Iterator<Item = usize>> = if rightmost {
            Box::new((0..w.len()).rev())
        } else {
            Box::new(0..w.len())
        };
        for p in starts {
            for &len in &self.lengths {
                if p + len > w.len() {
                    break;
                }
                if let Some(&k) = self.index.get(&w[p..p + len]) {
                    return Some((p, k));
                }
            }
        }
        None
    }

    pub fn is_reducible(&self, w: &Word) -> bool {
        self.find_redex(&w.0, false).is_some()
    }

    /// `u * rhs * v` for `w = u lhs v` with the redex at `p`.
    fn contract(&self, w: &[Letter], p: usize, k: usize) -> NCPoly<S> {
        let rule = &self.rules[k];
        let u = Word(w[..p].to_vec());
        let v = Word(w[p + rule.lhs.len()..].to_vec());
        let mut out = NCPoly::zero();
        for (m, c) in rule.rhs.terms() {
            out.add_term(u.concat(m).concat(&v), c.clone());
        }
        out
    }

    pub fn normal_form(&self, p: &NCPoly<S>) -> Result<NCPoly<S>> {
        self.normal_form_with(p, Strategy::LeftmostLargest, DEFAULT_STEP_LIMIT)
    }

    pub fn normal_form_with(
        &self,
        p: &NCPoly<S>,
        strategy: Strategy,
        limit: usize,
    ) -> Result<NCPoly<S>> {
        let mut pending: BTreeMap<Word, S> = p.terms().clone();
        let mut done = NCPoly::zero();
        let mut trace: VecDeque<String> = VecDeque::new();
        let mut steps = 0;
        loop {
            let next = match strategy {
                Strategy::LeftmostLargest => pending.pop_last(),
                Strategy::RightmostSmallest => pending.pop_first(),
            };
            let Some((w, c)) = next else { break };
            match self.find_redex(&w.0, strategy == Strategy::RightmostSmallest) {
                None => done.add_term(w, c),
                Some((pos, k)) => {
                    steps += 1;
                    if trace.len() == 8 {
                        trace.pop_front();
                    }
                    trace.push_back(self.alphabet.fmt_word(&w));
                    if steps > limit {
                        return Err(Error::StepLimit {
                            limit,
                            trace: trace.into_iter().collect::<Vec<_>>().join(" | "),
                        });
                    }
                    for (m, x) in self.contract(&w.0, pos, k).into_terms() {
                        let v = x * c.clone();
                        let entry = pending.entry(m);
                        match entry {
                            std::collections::btree_map::Entry::Occupied(mut o) => {
                                let s = o.get().clone() + v;
                                if s.is_zero() {
                                    o.remove();
                                } else {
                                    *o.get_mut() = s;
                                }
                            }
                            std::collections::btree_map::Entry::Vacant(slot) => {
                                if !v.is_zero() {
                                    slot.insert(v);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(done)
    }

    /// Overlap and inclusion ambiguities whose word has length at most `bound`.
    pub fn ambiguities(&self, bound: usize) -> Vec<(Word, RuleSite, RuleSite)> {
        let mut out = Vec::new();
        for (a, ra) in self.rules.iter().enumerate() {
            for (b, rb) in self.rules.iter().enumerate() {
                let (la, lb) = (ra.lhs.len(), rb.lhs.len());
                for k in 1..la.min(lb) {
                    if ra.lhs.0[la - k..] == rb.lhs.0[..k] && la + lb - k <= bound {
                        let w = ra.lhs.concat(&Word(rb.lhs.0[k..].to_vec()));
                        out.push((w, (a, 0), (b, la - k)));
                    }
                }
                if a != b && lb <= la && la <= bound {
                    for p in 0..=la - lb {
                        if ra.lhs.0[p..p + lb] == rb.lhs.0[..] {
                            out.push((ra.lhs.clone(), (a, 0), (b, p)));
                        }
                    }
                }
            }
        }
        out
    }

    fn resolve_all(&self, bound: usize) -> Result<Vec<(Ambiguity, NCPoly<S>)>> {
        self.ambiguities(bound)
            .par_iter()
            .map(|(w, (a, pa), (b, pb))| {
                let left = self.normal_form(&self.contract(&w.0, *pa, *a))?;
                let right = self.normal_form(&self.contract(&w.0, *pb, *b))?;
                let diff = left.minus(&right);
                let amb = Ambiguity {
                    word: self.alphabet.fmt_word(w),
                    rules: [self.rules[*a].label.clone(), self.rules[*b].label.clone()],
                    resolved: diff.is_zero(),
                    difference: self.display(&diff),
                };
                Ok((amb, diff))
            })
            .collect()
    }

    fn summarize(&self, bound: usize, results: Vec<Ambiguity>) -> ConfluenceReport {
        let resolved = results.iter().filter(|a| a.resolved).count();
        ConfluenceReport {
            degree_bound: bound,
            rules: self.rules.len(),
            checked: results.len(),
            resolved,
            unresolved: results.into_iter().filter(|a| !a.resolved).collect(),
        }
    }

    /// Reduces each ambiguity both ways and compares normal forms.
    pub fn check_local_confluence(&self, bound: usize) -> Result<ConfluenceReport> {
        let results = self.resolve_all(bound)?.into_iter().map(|r| r.0).collect();
        Ok(self.summarize(bound, results))
    }

    /// Degree-bounded completion: each unresolved difference (already in
    /// normal form) becomes a new rule for its largest word, until every
    /// ambiguity up to `bound` resolves or `max_rounds` is reached.
    pub fn complete(&self, bound: usize, max_rounds: usize) -> Result<(Self, Completion)> {
        let mut sys = self.clone();
        let mut added = Vec::new();
        for round in 1..=max_rounds {
            let results = sys.resolve_all(bound)?;
            let mut fresh: Vec<Rule<S>> = Vec::new();
            for (_, diff) in results.iter().filter(|r| !r.0.resolved) {
                let diff = sys.normal_form(diff)?;
                if diff.is_zero() || fresh.iter().any(|r| Some(&r.lhs) == diff.leading().map(|l| l.0)) {
                    continue;
                }
                fresh.push(rules::orient(String::new(), &diff).labelled(&sys.alphabet));
            }
            if fresh.is_empty() {
                let report = sys.summarize(bound, results.into_iter().map(|r| r.0).collect());
                return Ok((sys, Completion { added, rounds: round, report }));
            }
            added.extend(fresh.iter().map(|r| r.label.clone()));
            sys.rules.extend(fresh);
            sys.reindex();
        }
        let report = sys.check_local_confluence(bound)?;
        Ok((sys, Completion { added, rounds: max_rounds, report }))
    }

    /// `normal_form([E_i, F_j] - delta_ij cartan_i) = 0` for all `i, j`.
    pub fn mixed_relation_check(&self) -> Result<Vec<Entry>> {
        let n = self.cartan.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let e = NCPoly::letters(&[self.alphabet.letter(&format!("E{}", i + 1))]);
                let f = NCPoly::letters(&[self.alphabet.letter(&format!("F{}", j + 1))]);
                let mut rel = e.commutator(&f);
                if i == j {
                    rel = rel.minus(&self.cartan_images[i]);
                }
                let nf = self.normal_form(&rel)?;
                let rhs = if i == j {
                    self.display(&self.cartan_images[i])
                } else {
                    "0".into()
                };
                out.push(Entry::new(
                    format!("[E{}, F{}] = {rhs}", i + 1, j + 1),
                    self.display(&nf),
                    nf.is_zero(),
                ));
            }
        }
        Ok(out)
    }

    /// Irreducible words of length at most `max_len`; closed under subwords,
    /// so grown letter by letter.
    pub fn irreducible_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for l in 0..self.alphabet.len() as Letter {
                    let mut v = w.0.clone();
                    v.push(l);
                    let start = v.len().saturating_sub(self.lengths.last().copied().unwrap_or(0));
                    let suffix_redex = (start..v.len()).any(|p| {
                        self.lengths
                            .iter()
                            .any(|&len| p + len == v.len() && self.index.contains_key(&v[p..]))
                    });
                    if !suffix_redex {
                        next.push(Word(v));
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Number of irreducible words per letter content, for words up to
    /// `max_len`.
    pub fn normal_word_counts(&self, max_len: usize) -> BTreeMap<Vec<usize>, usize> {
        let mut counts = BTreeMap::new();
        for w in self.irreducible_words(max_len) {
            let mut content = vec![0; self.alphabet.len()];
            for &l in &w.0 {
                content[l as usize] += 1;
            }
            *counts.entry(content).or_insert(0) += 1;
        }
        counts
    }
}
