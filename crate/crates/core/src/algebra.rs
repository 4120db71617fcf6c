//! Linear combinations of l-tone diagrams with coefficients in ℤ[δ].

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;

use serde::{Deserialize, Serialize};

use crate::diagram::{builders, Diagram};
use crate::error::{invalid, Error, Result};
use crate::gamma::{poset_lt, ToneVector};
use crate::poly::DeltaPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ElementJson", try_from = "ElementJson")]
pub struct Element {
    l: usize,
    n: usize,
    m: usize,
    terms: BTreeMap<Diagram, DeltaPoly>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    diagram: Diagram,
    poly: DeltaPoly,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    l: usize,
    n: usize,
    m: usize,
    terms: Vec<TermJson>,
}

impl From<Element> for ElementJson {
    fn from(e: Element) -> Self {
        ElementJson {
            l: e.l,
            n: e.n,
            m: e.m,
            terms: e.terms.into_iter().map(|(diagram, poly)| TermJson { diagram, poly }).collect(),
        }
    }
}

impl TryFrom<ElementJson> for Element {
    type Error = Error;
    fn try_from(j: ElementJson) -> Result<Self> {
        let mut e = Element::zero(j.l, j.n, j.m)?;
        for t in j.terms {
            e.add_term(t.diagram, &t.poly)?;
        }
        Ok(e)
    }
}

impl Element {
    pub fn zero(l: usize, n: usize, m: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::ZeroTone);
        }
        Ok(Element { l, n, m, terms: BTreeMap::new() })
    }

    pub fn from_diagram(l: usize, d: Diagram) -> Result<Self> {
        Self::monomial(l, d, DeltaPoly::constant(1))
    }

    pub fn monomial(l: usize, d: Diagram, coeff: DeltaPoly) -> Result<Self> {
        let mut e = Element::zero(l, d.top_arity(), d.bottom_arity())?;
        e.add_term(d, &coeff)?;
        Ok(e)
    }

    pub fn tone(&self) -> usize {
        self.l
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &DeltaPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &Diagram) -> DeltaPoly {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, d: Diagram, coeff: &DeltaPoly) -> Result<()> {
        if (d.top_arity(), d.bottom_arity()) != (self.n, self.m) {
            return Err(Error::Incompatible(format!("{d} in a {},{} element", self.n, self.m)));
        }
        if !d.is_tone(self.l) {
            return Err(Error::NotTone(self.l));
        }
        self.add_unchecked(d, coeff);
        Ok(())
    }

    fn add_unchecked(&mut self, d: Diagram, coeff: &DeltaPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if self.l != other.l || self.n != other.n || self.m != other.m {
            return Err(Error::Incompatible(format!(
                "({},{},{}) against ({},{},{})",
                self.l, self.n, self.m, other.l, other.n, other.m
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_unchecked(d.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &DeltaPoly) -> Element {
        let mut out = Element { terms: BTreeMap::new(), ..self.clone() };
        for (d, x) in &self.terms {
            out.add_unchecked(d.clone(), &(x * c));
        }
        out
    }

    /// `self` stacked above `other`.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        if self.l != other.l {
            return Err(Error::Incompatible(format!("tones {} and {}", self.l, other.l)));
        }
        if self.m != other.n {
            return Err(Error::ArityMismatch { left: self.m, right: other.n });
        }
        let mut out = Element::zero(self.l, self.n, other.m)?;
        for (p, cp) in &self.terms {
            for (q, cq) in &other.terms {
                let (k, pq) = p.compose_unchecked(q);
                out.add_unchecked(pq, &(cp * cq).shift(k));
            }
        }
        Ok(out)
    }

    /// The anti-involution flipping every diagram upside down.
    pub fn op_antiauto(&self) -> Element {
        let mut out = Element { l: self.l, n: self.m, m: self.n, terms: BTreeMap::new() };
        for (d, c) in &self.terms {
            out.add_unchecked(d.flip(), c);
        }
        out
    }

    /// Drops every term whose propagating vector lies strictly below `m`.
    pub fn reduce_mod_below(&self, m: &ToneVector) -> Result<Element> {
        if m.tone() != self.l {
            return Err(invalid(format!("vector {m} does not have length {}", self.l)));
        }
        let mut out = Element { terms: BTreeMap::new(), ..self.clone() };
        for (d, c) in &self.terms {
            if !poset_lt(&d.prop_vector(self.l)?, m)? {
                out.add_unchecked(d.clone(), c);
            }
        }
        Ok(out)
    }
}

/// All l-tone diagrams with `n` top and `m` bottom vertices, in canonical
/// (restricted growth string) order.
pub fn enumerate_basis(l: usize, n: usize, m: usize) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    for_each_tone_diagram(l, n, m, |d| out.push(d))?;
    Ok(out)
}

/// Streams the l-tone diagrams without collecting them.
pub fn for_each_tone_diagram(l: usize, n: usize, m: usize, mut f: impl FnMut(Diagram)) -> Result<()> {
    if l == 0 {
        return Err(Error::ZeroTone);
    }
    if n + m > 255 {
        return Err(invalid("at most 255 vertices are supported"));
    }
    let mut labels = Vec::with_capacity(n + m);
    let mut kernels: Vec<i64> = Vec::new();
    grow(l as i64, n, n + m, &mut labels, &mut kernels, &mut f);
    Ok(())
}

fn grow(l: i64, n: usize, total: usize, labels: &mut Vec<u8>, kernels: &mut Vec<i64>, f: &mut impl FnMut(Diagram)) {
    let pos = labels.len();
    if pos == total {
        if kernels.iter().all(|k| k.rem_euclid(l) == 0) {
            f(Diagram::from_rgs(n, total - n, labels.clone()));
        }
        return;
    }
    let sign = if pos < n { 1 } else { -1 };
    let remaining = total - pos - 1;
    let blocks = kernels.len();
    for b in 0..=blocks {
        if b == blocks {
            kernels.push(sign);
        } else {
            kernels[b] += sign;
        }
        if feasible(l, n, pos + 1, remaining, kernels) {
            labels.push(b as u8);
            grow(l, n, total, labels, kernels, f);
            labels.pop();
        }
        if b == blocks {
            kernels.pop();
        } else {
            kernels[b] -= sign;
        }
    }
}

// Can the remaining vertices still fix every block's kernel residue?
fn feasible(l: i64, n: usize, next: usize, remaining: usize, kernels: &[i64]) -> bool {
    if l == 1 {
        return true;
    }
    if next >= n {
        // only bottom vertices remain, each lowers one kernel by one
        let need: i64 = kernels.iter().map(|k| k.rem_euclid(l)).sum();
        need <= remaining as i64
    } else {
        kernels.iter().filter(|k| k.rem_euclid(l) != 0).count() <= remaining
    }
}

/// Generators of the algebra on `n` strands: adjacent transpositions, the
/// merge of strands 1 and 2, and the loop projector on the first l strands.
pub fn generators(l: usize, n: usize) -> Result<Vec<Diagram>> {
    if l == 0 {
        return Err(Error::ZeroTone);
    }
    let mut out = Vec::new();
    for i in 1..n {
        out.push(builders::transposition(i, n)?);
    }
    if n >= 2 {
        out.push(builders::merge_adjacent(1, n)?);
    }
    if n >= l {
        out.push(builders::loop_projector(l, n)?);
    }
    Ok(out)
}
