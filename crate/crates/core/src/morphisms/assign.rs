//! Generator images in the skew model and relation checking.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::presentation::{Presentation, RelationKind};
use crate::error::{Error, Result};
use crate::exact::Coefficient;
use crate::ncpoly::{Alphabet, NCPoly};
use crate::report::{all_pass, Entry};
use crate::skew::{DenomLog, ModelContext, SkewElem};

/// Images of the generators of a presentation.
#[derive(Clone)]
pub struct Assignment<C: Coefficient> {
    ctx: Arc<ModelContext<C>>,
    alphabet: Alphabet,
    images: Vec<Option<SkewElem<C>>>,
}

impl<C: Coefficient> Assignment<C> {
    pub fn new(ctx: &Arc<ModelContext<C>>, alphabet: &Alphabet) -> Self {
        Assignment {
            ctx: ctx.clone(),
            alphabet: alphabet.clone(),
            images: vec![None; alphabet.len()],
        }
    }

    pub fn context(&self) -> &Arc<ModelContext<C>> {
        &self.ctx
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn set(&mut self, name: &str, image: SkewElem<C>) -> Result<()> {
        let l = self
            .alphabet
            .id(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        self.images[l as usize] = Some(image);
        Ok(())
    }

    pub fn image(&self, name: &str) -> Result<&SkewElem<C>> {
        let l = self
            .alphabet
            .id(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        self.images[l as usize]
            .as_ref()
            .ok_or_else(|| Error::UnassignedGenerator(name.to_string()))
    }

    /// Assigned generators with their images, in alphabet order.
    pub fn assigned(&self) -> impl Iterator<Item = (&str, &SkewElem<C>)> {
        self.images
            .iter()
            .enumerate()
            .filter_map(|(l, im)| im.as_ref().map(|im| (self.alphabet.name(l as u16), im)))
    }

    /// Image of a noncommutative polynomial.
    pub fn evaluate(&self, p: &NCPoly<C::Scalar>) -> Result<SkewElem<C>> {
        let mut acc = SkewElem::zero(&self.ctx);
        for (w, c) in p.terms() {
            let mut prod = SkewElem::one(&self.ctx);
            for &l in &w.0 {
                let im = self.images[l as usize]
                    .as_ref()
                    .ok_or_else(|| Error::UnassignedGenerator(self.alphabet.name(l).to_string()))?;
                prod = prod.mul(im)?;
            }
            acc = acc.add(&prod.scale(c))?;
        }
        Ok(acc)
    }

    /// Inverts every generator image that is a single term, collecting the
    /// inverted coefficients.
    pub fn unit_log(&self) -> Result<DenomLog<C>> {
        let mut log = DenomLog::default();
        for (_, im) in self.assigned() {
            if im.single_term().is_some() {
                log = log.merge(im.invert()?.1);
            }
        }
        Ok(log)
    }
}

/// Evaluates every relation of `p`, optionally only those of one kind.
pub fn check_relations<C: Coefficient>(
    p: &Presentation<C::Scalar>,
    a: &Assignment<C>,
    kind: Option<RelationKind>,
) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for rel in &p.relations {
        if kind.is_some_and(|k| k != rel.kind) {
            continue;
        }
        let v = a.evaluate(&rel.poly)?;
        out.push(Entry::new(rel.label.clone(), &v, v.is_zero()));
    }
    Ok(out)
}

/// Sign choices tried for the root-vector images, with the outcome of the
/// weight relations under each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub chosen: Option<Vec<i64>>,
    pub candidates: Vec<(Vec<i64>, bool)>,
}

/// Finds the unique `s in {+1,-1}^n` making all weight relations hold.
pub fn fix_orientation<C: Coefficient>(
    n: usize,
    p: &Presentation<C::Scalar>,
    build: impl Fn(&[i64]) -> Result<Assignment<C>>,
) -> Result<Orientation> {
    let mut candidates = Vec::new();
    for mask in 0..(1u32 << n) {
        let s: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        let a = build(&s)?;
        let ok = all_pass(&check_relations(p, &a, Some(RelationKind::Weight))?);
        candidates.push((s, ok));
    }
    let passing: Vec<&Vec<i64>> = candidates.iter().filter(|c| c.1).map(|c| &c.0).collect();
    let chosen = (passing.len() == 1).then(|| passing[0].clone());
    Ok(Orientation { chosen, candidates })
}
