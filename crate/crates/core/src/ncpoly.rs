//! Noncommutative polynomials: finite sums of scalar times word.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{fmt_term, Field};

pub type Letter = u16;

/// A word over letter ids, ordered by length first, then lexicographically
/// by letter id.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

/// Letter names, indexed by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Self {
        Alphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(|p| p as Letter)
    }

    pub fn letter(&self, name: &str) -> Letter {
        self.id(name).unwrap_or_else(|| panic!("letter {name} not in alphabet"))
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        w.0.iter().map(|&l| self.name(l)).collect::<Vec<_>>().join("*")
    }

    /// Parses `E1*F2*K1^-1` (also accepting spaces or `.` as separators).
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        let mut col = 1;
        for tok in text.split(|c: char| c == '*' || c == '.' || c.is_whitespace()) {
            if tok.is_empty() {
                col += 1;
                continue;
            }
            if tok == "1" {
                col += tok.len() + 1;
                continue;
            }
            match self.id(tok) {
                Some(l) => out.push(l),
                None => {
                    return Err(Error::Parse {
                        line: 1,
                        column: col,
                        message: format!("unknown letter `{tok}`"),
                    })
                }
            }
            col += tok.len() + 1;
        }
        Ok(Word(out))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly<S> {
    terms: BTreeMap<Word, S>,
}

impl<S: Field> Default for NCPoly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Field> NCPoly<S> {
    pub fn zero() -> Self {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, S::one())
    }

    pub fn letters(ls: &[Letter]) -> Self {
        Self::word(Word(ls.to_vec()))
    }

    pub fn term(w: Word, c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn terms(&self) -> &BTreeMap<Word, S> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, S> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    /// Largest word in the term order with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &S)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, w: Word, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                let s = x.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn scaled(&self, s: &S) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn times(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                out.add_term(w1.concat(w2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// `xy - yx`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.times(o).minus(&o.times(self))
    }

    /// `xy - twist * yx`.
    pub fn twisted_commutator(&self, o: &Self, twist: &S) -> Self {
        self.times(o).minus(&o.times(self).scaled(twist))
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (w, c) in self.terms.iter().rev() {
            out.push_str(&fmt_term(c, &alphabet.fmt_word(w), out.is_empty()));
        }
        out
    }
}

impl<S: fmt::Debug> fmt::Debug for NCPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{c:?}*{w:?}"))
            .collect();
        write!(f, "NCPoly[{}]", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Rational};

    #[test]
    fn deg_lex_order() {
        assert!(Word(vec![5]) < Word(vec![0, 0]));
        assert!(Word(vec![0, 2]) < Word(vec![1, 0]));
    }

    #[test]
    fn commutator_display() {
        let ab = Alphabet::new(vec!["H".into(), "E".into()]);
        let h = NCPoly::<Rational>::letters(&[0]);
        let e = NCPoly::<Rational>::letters(&[1]);
        let rel = h.commutator(&e).minus(&e.scaled(&int(2)));
        assert_eq!(rel.display(&ab), "-E*H + H*E - 2*E");
    }

    #[test]
    fn parse_words() {
        let ab = Alphabet::new(vec!["E1".into(), "K1^-1".into()]);
        assert_eq!(ab.parse_word("E1*K1^-1 E1").unwrap(), Word(vec![0, 1, 0]));
        assert!(matches!(ab.parse_word("E1*X"), Err(Error::Parse { column: 4, .. })));
        assert_eq!(ab.parse_word("1").unwrap(), Word::empty());
    }
}
