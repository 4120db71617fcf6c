//! Partition diagrams: set partitions of `n` top and `m` bottom vertices.
//!
//! A diagram is stored as a restricted growth string over the vertex order
//! T1..Tn, B1..Bm, which is the same as listing blocks by least vertex.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::gamma::ToneVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Top(usize),
    Bottom(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Top(i) => write!(f, "T{i}"),
            Vertex::Bottom(i) => write!(f, "B{i}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    top: usize,
    bottom: usize,
    labels: Vec<u8>,
}

/// Top and bottom sizes of one block.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BlockShape {
    pub top: usize,
    pub bottom: usize,
}

impl BlockShape {
    pub fn kernel(&self) -> i64 {
        self.top as i64 - self.bottom as i64
    }

    pub fn is_propagating(&self) -> bool {
        self.top > 0 && self.bottom > 0
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn normalize(raw: impl IntoIterator<Item = usize>) -> Vec<u8> {
    let mut map: Vec<(usize, u8)> = Vec::new();
    raw.into_iter()
        .map(|x| match map.iter().find(|(k, _)| *k == x) {
            Some(&(_, v)) => v,
            None => {
                let v = map.len() as u8;
                map.push((x, v));
                v
            }
        })
        .collect()
}

impl Diagram {
    /// Builds a diagram from arbitrary block labels, one per vertex in the
    /// order T1..Tn, B1..Bm.
    pub fn from_labels(top: usize, bottom: usize, labels: &[usize]) -> Result<Self> {
        if labels.len() != top + bottom {
            return Err(invalid(format!("expected {} labels, got {}", top + bottom, labels.len())));
        }
        if top + bottom > 255 {
            return Err(invalid("at most 255 vertices are supported"));
        }
        Ok(Diagram { top, bottom, labels: normalize(labels.iter().copied()) })
    }

    pub(crate) fn from_rgs(top: usize, bottom: usize, labels: Vec<u8>) -> Self {
        debug_assert_eq!(labels.len(), top + bottom);
        Diagram { top, bottom, labels }
    }

    pub fn from_blocks(top: usize, bottom: usize, blocks: &[Vec<Vertex>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; top + bottom];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(invalid("empty block"));
            }
            for &v in block {
                let idx = match v {
                    Vertex::Top(i) if (1..=top).contains(&i) => i - 1,
                    Vertex::Bottom(j) if (1..=bottom).contains(&j) => top + j - 1,
                    _ => return Err(invalid(format!("vertex {v} out of range for {top},{bottom}"))),
                };
                if labels[idx] != usize::MAX {
                    return Err(invalid(format!("vertex {v} appears twice")));
                }
                labels[idx] = b;
            }
        }
        if let Some(idx) = labels.iter().position(|&x| x == usize::MAX) {
            let v = if idx < top { Vertex::Top(idx + 1) } else { Vertex::Bottom(idx - top + 1) };
            return Err(invalid(format!("vertex {v} is in no block")));
        }
        Self::from_labels(top, bottom, &labels)
    }

    pub fn top_arity(&self) -> usize {
        self.top
    }

    pub fn bottom_arity(&self) -> usize {
        self.bottom
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().map(|&x| x as usize + 1).max().unwrap_or(0)
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn top_label(&self, i: usize) -> usize {
        self.labels[i - 1] as usize
    }

    pub fn bottom_label(&self, j: usize) -> usize {
        self.labels[self.top + j - 1] as usize
    }

    fn vertex(&self, idx: usize) -> Vertex {
        if idx < self.top {
            Vertex::Top(idx + 1)
        } else {
            Vertex::Bottom(idx - self.top + 1)
        }
    }

    /// Blocks in canonical order, each sorted with top vertices first.
    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (idx, &b) in self.labels.iter().enumerate() {
            out[b as usize].push(self.vertex(idx));
        }
        out
    }

    pub fn shapes(&self) -> Vec<BlockShape> {
        let mut out = vec![BlockShape::default(); self.block_count()];
        for (idx, &b) in self.labels.iter().enumerate() {
            if idx < self.top {
                out[b as usize].top += 1;
            } else {
                out[b as usize].bottom += 1;
            }
        }
        out
    }

    /// #top − #bottom for every block.
    pub fn kernels(&self) -> Vec<i64> {
        self.shapes().iter().map(BlockShape::kernel).collect()
    }

    pub fn is_tone(&self, l: usize) -> bool {
        l > 0 && self.shapes().iter().all(|s| s.kernel().rem_euclid(l as i64) == 0)
    }

    /// Number of blocks meeting both sides.
    pub fn prop_number(&self) -> usize {
        self.shapes().iter().filter(|s| s.is_propagating()).count()
    }

    /// Counts of propagating blocks by the residue of their top size mod `l`
    /// (residue 0 counted as class `l`).
    pub fn prop_vector(&self, l: usize) -> Result<ToneVector> {
        if l == 0 {
            return Err(Error::ZeroTone);
        }
        let mut v = vec![0; l];
        for s in self.shapes() {
            if s.kernel().rem_euclid(l as i64) != 0 {
                return Err(Error::NotTone(l));
            }
            if s.is_propagating() {
                v[class_of(s.top, l) - 1] += 1;
            }
        }
        ToneVector::new(v)
    }

    /// `self` above `other`: the bottom of `self` is glued to the top of
    /// `other`. Returns the number of closed middle components and the result.
    pub fn compose(&self, other: &Diagram) -> Result<(u32, Diagram)> {
        if self.bottom != other.top {
            return Err(Error::ArityMismatch { left: self.bottom, right: other.top });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Diagram) -> (u32, Diagram) {
        let bp = self.block_count();
        let bq = other.block_count();
        let mut uf = UnionFind::new(bp + bq);
        for j in 0..self.bottom {
            uf.union(self.labels[self.top + j] as usize, bp + other.labels[j] as usize);
        }
        let mut outer = vec![false; bp + bq];
        let mut raw = Vec::with_capacity(self.top + other.bottom);
        for i in 0..self.top {
            let r = uf.find(self.labels[i] as usize);
            outer[r] = true;
            raw.push(r);
        }
        for j in 0..other.bottom {
            let r = uf.find(bp + other.labels[other.top + j] as usize);
            outer[r] = true;
            raw.push(r);
        }
        let closed = (0..bp + bq).filter(|&x| uf.find(x) == x && !outer[x]).count() as u32;
        (closed, Diagram { top: self.top, bottom: other.bottom, labels: normalize(raw) })
    }

    /// Side-by-side juxtaposition, `other` to the right.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        let shift = self.block_count();
        let mut raw: Vec<usize> = Vec::with_capacity(self.labels.len() + other.labels.len());
        raw.extend(self.labels[..self.top].iter().map(|&x| x as usize));
        raw.extend(other.labels[..other.top].iter().map(|&x| x as usize + shift));
        raw.extend(self.labels[self.top..].iter().map(|&x| x as usize));
        raw.extend(other.labels[other.top..].iter().map(|&x| x as usize + shift));
        Diagram { top: self.top + other.top, bottom: self.bottom + other.bottom, labels: normalize(raw) }
    }

    /// Exchanges top and bottom.
    pub fn flip(&self) -> Diagram {
        let raw = self.labels[self.top..].iter().chain(&self.labels[..self.top]).map(|&x| x as usize);
        Diagram { top: self.bottom, bottom: self.top, labels: normalize(raw) }
    }

    /// Mirror image: reverses the vertex order on each side.
    pub fn lateral_flip(&self) -> Diagram {
        let raw = self.labels[..self.top].iter().rev().chain(self.labels[self.top..].iter().rev()).map(|&x| x as usize);
        Diagram { top: self.top, bottom: self.bottom, labels: normalize(raw) }
    }

    /// The partition induced on positions `lo..=hi` of both sides, renumbered
    /// from 1.
    pub fn restrict(&self, lo: usize, hi: usize) -> Result<Diagram> {
        if lo == 0 || lo > hi + 1 || hi > self.top || hi > self.bottom {
            return Err(invalid(format!("range [{lo},{hi}] does not fit a {},{} diagram", self.top, self.bottom)));
        }
        let width = hi + 1 - lo;
        let raw = (lo..=hi)
            .map(|i| self.labels[i - 1] as usize)
            .chain((lo..=hi).map(|j| self.labels[self.top + j - 1] as usize));
        Ok(Diagram { top: width, bottom: width, labels: normalize(raw) })
    }

    pub fn is_permutation(&self) -> bool {
        self.top == self.bottom && self.shapes().iter().all(|s| s.top == 1 && s.bottom == 1)
    }
}

/// Class of a size in 1..=l, residue 0 read as l.
pub fn class_of(size: usize, l: usize) -> usize {
    match size % l {
        0 => l,
        r => r,
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}|", self.top, self.bottom)?;
        for (k, block) in self.blocks().iter().enumerate() {
            if k > 0 {
                write!(f, ";")?;
            }
            for (t, v) in block.iter().enumerate() {
                if t > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({self})")
    }
}

fn parse_err(s: &str, detail: impl fmt::Display) -> Error {
    Error::Parse { what: "diagram", detail: format!("{s:?}: {detail}") }
}

impl FromStr for Diagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (head, body) = s.trim().split_once('|').ok_or_else(|| parse_err(s, "missing '|'"))?;
        let (n, m) = head.split_once(',').ok_or_else(|| parse_err(s, "expected 'n,m' before '|'"))?;
        let top: usize = n.trim().parse().map_err(|e| parse_err(s, e))?;
        let bottom: usize = m.trim().parse().map_err(|e| parse_err(s, e))?;
        let mut blocks = Vec::new();
        if !body.trim().is_empty() {
            for chunk in body.split(';') {
                let mut block = Vec::new();
                for token in chunk.split(',') {
                    let token = token.trim();
                    let (side, idx) = token.split_at(token.char_indices().nth(1).map_or(token.len(), |(i, _)| i));
                    let idx: usize = idx.parse().map_err(|_| parse_err(s, format!("bad vertex {token:?}")))?;
                    block.push(match side {
                        "T" | "t" => Vertex::Top(idx),
                        "B" | "b" => Vertex::Bottom(idx),
                        _ => return Err(parse_err(s, format!("bad vertex {token:?}"))),
                    });
                }
                blocks.push(block);
            }
        }
        Diagram::from_blocks(top, bottom, &blocks).map_err(|e| parse_err(s, e))
    }
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Positions used by a^m on each side: `classes[i-1][k]` lists the strands
/// of the k-th co-i propagating part, `non_propagating` the l-strand chunks
/// closed off on each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardLayout {
    pub classes: Vec<Vec<Vec<usize>>>,
    pub non_propagating: Vec<Vec<usize>>,
}

impl StandardLayout {
    pub fn new(m: &ToneVector, n: usize) -> Result<Self> {
        let l = m.tone();
        if !m.fits(n) {
            return Err(Error::InvalidLabel { label: m.to_string(), l, n });
        }
        let mut next = 1;
        let mut classes = vec![Vec::new(); l];
        for i in (1..=l).rev() {
            for _ in 0..m.get(i) {
                classes[i - 1].push((next..next + i).collect());
                next += i;
            }
        }
        let mut non_propagating = Vec::new();
        while next <= n {
            non_propagating.push((next..next + l).collect());
            next += l;
        }
        Ok(StandardLayout { classes, non_propagating })
    }

    pub fn tone(&self) -> usize {
        self.classes.len()
    }

    /// Class and in-class index of the propagating part through strand `pos`.
    pub fn locate(&self, pos: usize) -> Option<(usize, usize)> {
        for (c, parts) in self.classes.iter().enumerate() {
            for (k, part) in parts.iter().enumerate() {
                if part.contains(&pos) {
                    return Some((c + 1, k));
                }
            }
        }
        None
    }
}

pub mod builders {
    //! Named elements of the diagram category.

    use super::*;

    fn check_strand(i: usize, n: usize, span: usize) -> Result<()> {
        if i == 0 || i + span - 1 > n {
            return Err(invalid(format!("position {i} (span {span}) out of range for n={n}")));
        }
        Ok(())
    }

    pub fn identity(n: usize) -> Diagram {
        let labels: Vec<u8> = (0..n as u8).chain(0..n as u8).collect();
        Diagram::from_rgs(n, n, labels)
    }

    /// Top vertex `i` joined to bottom vertex `images[i]`, both 0-based.
    pub fn permutation(images: &[usize]) -> Result<Diagram> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut labels = vec![0usize; 2 * n];
        for (i, &j) in images.iter().enumerate() {
            if j >= n || seen[j] {
                return Err(invalid(format!("{images:?} is not a permutation")));
            }
            seen[j] = true;
            labels[i] = i;
            labels[n + j] = i;
        }
        Diagram::from_labels(n, n, &labels)
    }

    /// The adjacent transposition of strands `i` and `i+1`.
    pub fn transposition(i: usize, n: usize) -> Result<Diagram> {
        check_strand(i, n, 2)?;
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        permutation(&images)
    }

    fn from_parts(n: usize, parts: &[(Vec<usize>, Vec<usize>)]) -> Result<Diagram> {
        let mut labels = vec![usize::MAX; 2 * n];
        for (b, (tops, bottoms)) in parts.iter().enumerate() {
            for &t in tops {
                labels[t - 1] = b;
            }
            for &u in bottoms {
                labels[n + u - 1] = b;
            }
        }
        let mut fresh = parts.len();
        for i in 0..n {
            if labels[i] == usize::MAX && labels[n + i] == usize::MAX {
                labels[i] = fresh;
                labels[n + i] = fresh;
                fresh += 1;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(invalid("parts leave a vertex uncovered"));
        }
        Diagram::from_labels(n, n, &labels)
    }

    /// Strands `i` and `i+1` merged into a single four-vertex block.
    pub fn merge_adjacent(i: usize, n: usize) -> Result<Diagram> {
        check_strand(i, n, 2)?;
        from_parts(n, &[(vec![i, i + 1], vec![i, i + 1])])
    }

    /// Strand `i` cut into two singletons.
    pub fn split_strand(i: usize, n: usize) -> Result<Diagram> {
        check_strand(i, n, 1)?;
        from_parts(n, &[(vec![i], vec![]), (vec![], vec![i])])
    }

    /// Cap on top positions i, i+1 and cup on bottom positions i, i+1.
    pub fn cup_cap(i: usize, n: usize) -> Result<Diagram> {
        check_strand(i, n, 2)?;
        from_parts(n, &[(vec![i, i + 1], vec![]), (vec![], vec![i, i + 1])])
    }

    /// A single block holding all `k` top and `k` bottom vertices.
    pub fn through_block(k: usize) -> Diagram {
        Diagram::from_rgs(k, k, vec![0; 2 * k])
    }

    /// The unique diagram with one block of `l` top vertices and no bottom.
    pub fn top_block(l: usize) -> Diagram {
        Diagram::from_rgs(l, 0, vec![0; l])
    }

    /// The flip of [`top_block`].
    pub fn bottom_block(l: usize) -> Diagram {
        Diagram::from_rgs(0, l, vec![0; l])
    }

    /// (top block · bottom block) ⊗ 1_{n−l}.
    pub fn loop_projector(l: usize, n: usize) -> Result<Diagram> {
        if l == 0 || l > n {
            return Err(invalid(format!("need 1 ≤ l ≤ n, got l={l}, n={n}")));
        }
        let (_, cap_cup) = top_block(l).compose_unchecked(&bottom_block(l));
        Ok(cap_cup.tensor(&identity(n - l)))
    }

    /// The loop projector conjugated by the merge of strands l and l+1.
    pub fn globalising_idempotent(l: usize, n: usize) -> Result<Diagram> {
        if n <= l {
            return Err(invalid(format!("need n > l, got l={l}, n={n}")));
        }
        let a = merge_adjacent(l, n)?;
        let w = loop_projector(l, n)?;
        let (_, aw) = a.compose_unchecked(&w);
        let (_, awa) = aw.compose_unchecked(&a);
        Ok(awa)
    }

    /// a^m: through blocks of sizes l, …, 1 (m_i copies of size i), then the
    /// remaining strands closed off in l-chunks on each side.
    pub fn standard_preidempotent(m: &ToneVector, n: usize) -> Result<Diagram> {
        let layout = StandardLayout::new(m, n)?;
        let mut parts: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for part in layout.classes.iter().flatten() {
            parts.push((part.clone(), part.clone()));
        }
        for chunk in &layout.non_propagating {
            parts.push((chunk.clone(), vec![]));
            parts.push((vec![], chunk.clone()));
        }
        from_parts(n, &parts)
    }

    /// b^m: a^m with its rightmost propagating part merged with every
    /// non-propagating part.
    pub fn merged_idempotent(m: &ToneVector, n: usize) -> Result<Diagram> {
        let layout = StandardLayout::new(m, n)?;
        let last = layout
            .classes
            .iter()
            .flatten()
            .max_by_key(|p| p[0])
            .cloned()
            .ok_or_else(|| invalid("the zero vector has no merged idempotent"))?;
        let mut parts: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for part in layout.classes.iter().flatten().filter(|p| **p != last) {
            parts.push((part.clone(), part.clone()));
        }
        let mut big = last;
        big.extend(layout.non_propagating.iter().flatten());
        parts.push((big.clone(), big));
        from_parts(n, &parts)
    }

    /// Strands paired as (1,2), (3,4), … each merged into one block.
    pub fn pair_fusion_idempotent(n: usize) -> Result<Diagram> {
        if !n.is_multiple_of(2) {
            return Err(invalid(format!("pair fusion needs an even number of strands, got {n}")));
        }
        let parts: Vec<(Vec<usize>, Vec<usize>)> =
            (0..n / 2).map(|k| (vec![2 * k + 1, 2 * k + 2], vec![2 * k + 1, 2 * k + 2])).collect();
        from_parts(n, &parts)
    }
}
