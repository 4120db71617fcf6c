//! Partitions, multipartitions and integral Specht representations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gamma::ToneVector;
use crate::linalg::Matrix;
use crate::IntMatrix;

/// An integer partition, parts non-increasing and positive.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!("{parts:?} is not non-increasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Column lengths.
    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((0..width).map(|c| self.0.iter().filter(|&&r| r > c).count()).collect())
    }

    /// Partitions obtained by deleting one removable box, top row first.
    pub fn remove_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for r in 0..self.0.len() {
            if r + 1 == self.0.len() || self.0[r] > self.0[r + 1] {
                let mut p = self.0.clone();
                p[r] -= 1;
                out.push(Partition::new(p).expect("still a partition"));
            }
        }
        out
    }

    /// Partitions obtained by adding one addable box, top row first.
    pub fn add_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for r in 0..=self.0.len() {
            if r == 0 || self.0[r - 1] > self.0.get(r).copied().unwrap_or(0) {
                let mut p = self.0.clone();
                if r == p.len() {
                    p.push(1);
                } else {
                    p[r] += 1;
                }
                out.push(Partition(p));
            }
        }
        out
    }

    pub fn hook_dimension(&self) -> BigInt {
        let k = self.size();
        let conj = self.conjugate();
        let mut hooks = BigInt::from(1);
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len {
                hooks *= (len - c - 1) + (conj.0[c] - r - 1) + 1;
            }
        }
        factorial(k) / hooks
    }
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, x| acc * x)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() || t == "-" || t == "0" || t == "∅" {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<usize>, _> = t.split(',').map(|x| x.trim().parse()).collect();
        let parts = parts.map_err(|e| Error::Parse { what: "partition", detail: format!("{s:?}: {e}") })?;
        Partition::new(parts)
    }
}

/// All partitions of `k`, in reverse lexicographic order: (k) first.
pub fn partitions(k: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// An l-tuple of partitions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiPartition(Vec<Partition>);

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::ZeroTone);
        }
        Ok(MultiPartition(components))
    }

    pub fn tone(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    /// Component `j`, 1-based.
    pub fn component(&self, j: usize) -> &Partition {
        &self.0[j - 1]
    }

    pub fn sizes(&self) -> ToneVector {
        ToneVector::new(self.0.iter().map(Partition::size).collect()).expect("non-empty")
    }

    /// Every box removable from component `j`.
    pub fn rem_boxes(&self, j: usize) -> Vec<MultiPartition> {
        self.0[j - 1]
            .remove_box()
            .into_iter()
            .map(|p| {
                let mut c = self.0.clone();
                c[j - 1] = p;
                MultiPartition(c)
            })
            .collect()
    }

    /// Every box addable to component `j`.
    pub fn add_boxes(&self, j: usize) -> Vec<MultiPartition> {
        self.0[j - 1]
            .add_box()
            .into_iter()
            .map(|p| {
                let mut c = self.0.clone();
                c[j - 1] = p;
                MultiPartition(c)
            })
            .collect()
    }

    pub fn dimension(&self) -> BigInt {
        self.0.iter().map(Partition::hook_dimension).product()
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl fmt::Debug for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for MultiPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let comps: Result<Vec<Partition>> = s.split('|').map(str::parse).collect();
        MultiPartition::new(comps?)
    }
}

/// Every multipartition whose component sizes are `sizes`.
pub fn multipartitions(sizes: &ToneVector) -> Vec<MultiPartition> {
    let mut out = vec![Vec::new()];
    for &k in sizes.as_slice() {
        let mut next = Vec::new();
        for prefix in &out {
            for p in partitions(k) {
                let mut c: Vec<Partition> = prefix.clone();
                c.push(p);
                next.push(c);
            }
        }
        out = next;
    }
    out.into_iter().map(MultiPartition).collect()
}

/// A permutation of {0, …, k−1} given by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(invalid(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    /// Swaps `i` and `i+1`, 0-based.
    pub fn adjacent(i: usize, k: usize) -> Self {
        let mut v: Vec<usize> = (0..k).collect();
        v.swap(i, i + 1);
        Permutation(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// All permutations of `k` letters in lexicographic order.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..k).collect();
        let mut out = vec![Permutation(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Permutation(cur.clone()));
        }
        out
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn sign(v: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                s = -s;
            }
        }
    }
    s
}

/// Row words (row index of each letter) of the standard tableaux of `shape`,
/// in lexicographic order.
pub fn standard_tableaux(shape: &Partition) -> Vec<Vec<u8>> {
    fn go(shape: &[usize], filled: &mut Vec<usize>, word: &mut Vec<u8>, left: usize, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(word.clone());
            return;
        }
        for r in 0..shape.len() {
            if filled[r] < shape[r] && (r == 0 || filled[r - 1] > filled[r]) {
                filled[r] += 1;
                word.push(r as u8);
                go(shape, filled, word, left - 1, out);
                word.pop();
                filled[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&shape.0, &mut vec![0; shape.0.len()], &mut Vec::new(), shape.size(), &mut out);
    out
}

type Tabloid = Vec<u8>;

/// The Specht module of one partition over ℤ in the standard polytabloid
/// basis, realised inside the permutation module on tabloids.
#[derive(Clone, Debug)]
pub struct SpechtRep {
    shape: Partition,
    words: Vec<Vec<u8>>,
    lookup: HashMap<Vec<u8>, usize>,
    polytabloids: Vec<BTreeMap<Tabloid, i64>>,
    form: IntMatrix,
}

impl SpechtRep {
    pub fn new(shape: &Partition) -> Self {
        let words = standard_tableaux(shape);
        let lookup = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let polytabloids: Vec<BTreeMap<Tabloid, i64>> =
            words.iter().map(|w| polytabloid(shape, &rows_of_word(shape, w))).collect();
        let d = words.len();
        let mut form = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                form[(i, j)] = BigInt::from(dot(&polytabloids[i], &polytabloids[j]));
            }
        }
        SpechtRep { shape: shape.clone(), words, lookup, polytabloids, form }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn degree(&self) -> usize {
        self.shape.size()
    }

    /// Row words of the basis tableaux.
    pub fn basis_words(&self) -> &[Vec<u8>] {
        &self.words
    }

    /// Gram matrix of the standard inner product on tabloids restricted to
    /// the polytabloid basis.
    pub fn form(&self) -> &IntMatrix {
        &self.form
    }

    /// Matrix of σ in the polytabloid basis; column j is σ·e_{t_j}.
    pub fn matrix(&self, sigma: &Permutation) -> Result<IntMatrix> {
        if sigma.degree() != self.degree() {
            return Err(invalid(format!(
                "permutation of {} letters on a degree {} module",
                sigma.degree(),
                self.degree()
            )));
        }
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (j, w) in self.words.iter().enumerate() {
            let rows = rows_of_word(&self.shape, w);
            let moved: Vec<Vec<usize>> = rows.iter().map(|r| r.iter().map(|&x| sigma.apply(x)).collect()).collect();
            let coords = self.straighten(polytabloid(&self.shape, &moved))?;
            for (i, c) in coords.into_iter().enumerate() {
                m[(i, j)] = BigInt::from(c);
            }
        }
        Ok(m)
    }

    /// Matrix of the adjacent transposition (i, i+1), 0-based.
    pub fn generator(&self, i: usize) -> IntMatrix {
        self.matrix(&Permutation::adjacent(i, self.degree())).expect("degree matches")
    }

    // Coordinates of a vector of the tabloid module lying in the span of the
    // standard polytabloids. The lexicographically least tabloid of e_t is the
    // one of t itself, with coefficient 1.
    fn straighten(&self, mut v: BTreeMap<Tabloid, i64>) -> Result<Vec<i64>> {
        let mut coords = vec![0i64; self.dim()];
        while let Some((lead, &c)) = v.iter().next() {
            let idx = *self.lookup.get(lead).ok_or_else(|| invalid("vector outside the Specht module"))?;
            coords[idx] += c;
            for (t, &x) in &self.polytabloids[idx] {
                let e = v.entry(t.clone()).or_insert(0);
                *e -= c * x;
                if *e == 0 {
                    v.remove(t);
                }
            }
        }
        Ok(coords)
    }
}

fn rows_of_word(shape: &Partition, word: &[u8]) -> Vec<Vec<usize>> {
    let mut rows = vec![Vec::new(); shape.0.len()];
    for (x, &r) in word.iter().enumerate() {
        rows[r as usize].push(x);
    }
    rows
}

// Σ over column permutations q of sgn(q)·{q t}, tabloids keyed by row words.
fn polytabloid(shape: &Partition, rows: &[Vec<usize>]) -> BTreeMap<Tabloid, i64> {
    let k = shape.size();
    let columns: Vec<Vec<usize>> =
        shape.conjugate().0.iter().enumerate().map(|(c, &h)| (0..h).map(|r| rows[r][c]).collect()).collect();
    let mut out = BTreeMap::new();
    let mut choice: Vec<Vec<usize>> = columns.iter().map(|c| (0..c.len()).collect()).collect();
    loop {
        let mut word = vec![0u8; k];
        let mut sgn = 1;
        for (col, perm) in columns.iter().zip(&choice) {
            sgn *= sign(perm);
            for (r, &src) in perm.iter().enumerate() {
                word[col[src]] = r as u8;
            }
        }
        *out.entry(word).or_insert(0) += sgn;
        // odometer over the per-column permutations
        let mut c = 0;
        loop {
            if c == choice.len() {
                out.retain(|_, v| *v != 0);
                return out;
            }
            if next_permutation(&mut choice[c]) {
                break;
            }
            choice[c].sort_unstable();
            c += 1;
        }
    }
}

fn dot(a: &BTreeMap<Tabloid, i64>, b: &BTreeMap<Tabloid, i64>) -> i64 {
    a.iter().filter_map(|(t, x)| b.get(t).map(|y| x * y)).sum()
}

/// Outer tensor product of Specht modules, a representation of the Young
/// subgroup S_{k_1} × … × S_{k_l}. Basis tuples are ordered with the first
/// factor slowest.
#[derive(Clone, Debug)]
pub struct OuterRep {
    factors: Vec<SpechtRep>,
}

impl OuterRep {
    pub fn new(mu: &MultiPartition) -> Self {
        OuterRep { factors: mu.components().iter().map(SpechtRep::new).collect() }
    }

    pub fn factors(&self) -> &[SpechtRep] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(SpechtRep::dim).product()
    }

    pub fn form(&self) -> IntMatrix {
        self.factors.iter().fold(Matrix::identity(1), |acc, f| acc.kron(f.form()))
    }

    /// Matrix of (σ_1, …, σ_l).
    pub fn matrix(&self, perms: &[Permutation]) -> Result<IntMatrix> {
        if perms.len() != self.factors.len() {
            return Err(invalid("one permutation per factor is required"));
        }
        let mut acc = Matrix::identity(1);
        for (f, p) in self.factors.iter().zip(perms) {
            acc = acc.kron(&f.matrix(p)?);
        }
        Ok(acc)
    }
}

/// Same as [`OuterRep::new`].
pub fn outer_rep(mu: &MultiPartition) -> OuterRep {
    OuterRep::new(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partition_order() {
        assert_eq!(partitions(3), vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]);
        assert_eq!(partitions(0), vec![Partition::empty()]);
        assert_eq!(partitions(6).len(), 11);
    }

    #[test]
    fn tableau_words() {
        let words = standard_tableaux(&part(&[3, 1]));
        assert_eq!(words, vec![vec![0, 0, 0, 1], vec![0, 0, 1, 0], vec![0, 1, 0, 0]]);
    }

    #[test]
    fn hooks_match_tableau_counts() {
        for k in 0..=7 {
            for p in partitions(k) {
                assert_eq!(BigInt::from(standard_tableaux(&p).len()), p.hook_dimension(), "{p:?}");
            }
        }
    }

    #[test]
    fn sum_of_squares_is_factorial() {
        for k in 0..=6 {
            let total: BigInt = partitions(k).iter().map(|p| p.hook_dimension().pow(2)).sum();
            assert_eq!(total, factorial(k));
        }
    }

    #[test]
    fn coxeter_relations_and_invariant_form() {
        for k in 1..=5 {
            for p in partitions(k) {
                let rep = SpechtRep::new(&p);
                let id = Matrix::identity(rep.dim());
                let gens: Vec<IntMatrix> = (0..k - 1).map(|i| rep.generator(i)).collect();
                for (i, s) in gens.iter().enumerate() {
                    assert_eq!(s.matmul(s), id, "s_{i}^2 on {p:?}");
                    assert_eq!(s.transpose().matmul(rep.form()).matmul(s), *rep.form());
                    if i + 1 < gens.len() {
                        let t = &gens[i + 1];
                        assert_eq!(s.matmul(t).matmul(s), t.matmul(s).matmul(t), "braid on {p:?}");
                    }
                    for t in gens.iter().skip(i + 2) {
                        assert_eq!(s.matmul(t), t.matmul(s));
                    }
                }
            }
        }
    }

    #[test]
    fn matrices_form_a_representation() {
        for p in [part(&[2, 1]), part(&[3, 1]), part(&[2, 2]), part(&[2, 1, 1])] {
            let rep = SpechtRep::new(&p);
            let all = Permutation::all(p.size());
            for a in all.iter().step_by(3) {
                for b in all.iter().step_by(5) {
                    let lhs = rep.matrix(&a.compose(b)).unwrap();
                    let rhs = rep.matrix(a).unwrap().matmul(&rep.matrix(b).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn trivial_and_sign() {
        let triv = SpechtRep::new(&part(&[3]));
        let sgn = SpechtRep::new(&part(&[1, 1, 1]));
        let s = Permutation::adjacent(0, 3);
        assert!(triv.matrix(&s).unwrap()[(0, 0)].is_one());
        assert_eq!(sgn.matrix(&s).unwrap()[(0, 0)], BigInt::from(-1));
        let empty = SpechtRep::new(&Partition::empty());
        assert_eq!(empty.dim(), 1);
        assert!(empty.matrix(&Permutation::identity(0)).unwrap()[(0, 0)].is_one());
    }

    #[test]
    fn form_is_nondegenerate_over_q() {
        for k in 1..=5 {
            for p in partitions(k) {
                let rep = SpechtRep::new(&p);
                assert!(!crate::linalg::det(rep.form()).is_zero(), "{p:?}");
            }
        }
    }

    #[test]
    fn boxes() {
        let mu: MultiPartition = "2,1|1".parse().unwrap();
        assert_eq!(mu.rem_boxes(1).len(), 2);
        assert_eq!(mu.add_boxes(1).len(), 3);
        assert_eq!(mu.add_boxes(2).len(), 2);
        assert_eq!(mu.rem_boxes(2), vec!["2,1|-".parse().unwrap()]);
        assert_eq!(mu.to_string(), "2,1|1");
        assert_eq!("(2)|-".parse::<MultiPartition>().unwrap().to_string(), "2|-");
        assert_eq!("0|1".parse::<MultiPartition>().unwrap().sizes().as_slice(), &[0, 1]);
        assert!("2,3|1".parse::<MultiPartition>().is_err());
    }

    #[test]
    fn outer_product_dims() {
        let mu: MultiPartition = "2,1|1".parse().unwrap();
        let rep = outer_rep(&mu);
        assert_eq!(rep.dim(), 2);
        let m = rep.matrix(&[Permutation::adjacent(0, 3), Permutation::identity(1)]).unwrap();
        assert_eq!(m.matmul(&m), Matrix::identity(2));
        assert_eq!(rep.form().rows(), 2);
        assert_eq!(multipartitions(&ToneVector::new(vec![2, 1]).unwrap()).len(), 2);
    }
}
