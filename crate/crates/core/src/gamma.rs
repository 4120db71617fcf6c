//! Tone vectors, the label set γ^{l,n}, its poset and total order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A vector in ℕ₀^l; component `i` (1-based) counts co-i propagating parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ToneVector(Vec<usize>);

impl ToneVector {
    pub fn new(components: Vec<usize>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::ZeroTone);
        }
        Ok(ToneVector(components))
    }

    pub fn zero(l: usize) -> Self {
        ToneVector(vec![0; l.max(1)])
    }

    /// `(n, 0, …, 0)`.
    pub fn leading(l: usize, n: usize) -> Self {
        let mut v = vec![0; l.max(1)];
        v[0] = n;
        ToneVector(v)
    }

    pub fn tone(&self) -> usize {
        self.0.len()
    }

    /// Component for class `i`, 1-based.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Σ i·m_i, the number of vertices per side used by the propagating parts of a^m.
    pub fn weight(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &x)| (i + 1) * x).sum()
    }

    /// Σ m_i, the number of propagating parts.
    pub fn height(&self) -> usize {
        self.0.iter().sum()
    }

    /// Whether this labels a cell of the algebra on `n` strands.
    pub fn fits(&self, n: usize) -> bool {
        let r = self.weight();
        r <= n && (n - r).is_multiple_of(self.tone())
    }
}

impl fmt::Display for ToneVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ToneVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ToneVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: std::result::Result<Vec<usize>, _> = inner.split(',').map(|t| t.trim().parse()).collect();
        let parts = parts.map_err(|e| Error::Parse { what: "tone vector", detail: format!("{s}: {e}") })?;
        ToneVector::new(parts)
    }
}

/// The move vectors v_ij, 1 ≤ i ≤ j ≤ l: joining a co-i and a co-j part into one
/// co-(i+j) part. Each has coordinate sum −1.
pub fn move_vectors(l: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 1..=l {
        for j in i..=l {
            let mut v = vec![0i64; l];
            let target = match (i + j) % l {
                0 => l,
                r => r,
            };
            v[target - 1] += 1;
            v[j - 1] -= 1;
            v[i - 1] -= 1;
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// All m ∈ ℕ₀^l with r_m ≤ n and r_m ≡ n mod l, in lexicographic order.
pub fn gamma_set(l: usize, n: usize) -> Result<Vec<ToneVector>> {
    if l == 0 {
        return Err(Error::ZeroTone);
    }
    let mut out = Vec::new();
    let mut current = vec![0usize; l];
    fill(l, n, 0, 0, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn fill(l: usize, n: usize, idx: usize, used: usize, current: &mut Vec<usize>, out: &mut Vec<ToneVector>) {
    if idx == l {
        if (n - used).is_multiple_of(l) {
            out.push(ToneVector(current.clone()));
        }
        return;
    }
    let size = idx + 1;
    let mut k = 0;
    while used + k * size <= n {
        current[idx] = k;
        fill(l, n, idx + 1, used + k * size, current, out);
        k += 1;
    }
    current[idx] = 0;
}

fn check_same_tone(a: &ToneVector, b: &ToneVector) -> Result<()> {
    if a.tone() != b.tone() {
        return Err(invalid(format!("tone vectors {a} and {b} have different lengths")));
    }
    Ok(())
}

/// The partial order: `a ≤ b` iff `a − b` is a non-negative integer combination
/// of the move vectors.
pub fn poset_leq(a: &ToneVector, b: &ToneVector) -> Result<bool> {
    check_same_tone(a, b)?;
    let (ha, hb) = (a.height(), b.height());
    if ha > hb {
        return Ok(false);
    }
    let moves = move_vectors(a.tone());
    let diff: Vec<i64> = a.0.iter().zip(&b.0).map(|(&x, &y)| x as i64 - y as i64).collect();
    let mut memo = HashMap::new();
    Ok(reachable(&diff, hb - ha, 0, &moves, &mut memo))
}

// Whether `target` is a sum of exactly `budget` moves drawn from moves[from..].
fn reachable(
    target: &[i64],
    budget: usize,
    from: usize,
    moves: &[Vec<i64>],
    memo: &mut HashMap<(Vec<i64>, usize, usize), bool>,
) -> bool {
    if budget == 0 {
        return target.iter().all(|&x| x == 0);
    }
    if from == moves.len() {
        return false;
    }
    let key = (target.to_vec(), budget, from);
    if let Some(&hit) = memo.get(&key) {
        return hit;
    }
    let mut next = target.to_vec();
    let mut found = reachable(target, budget, from + 1, moves, memo);
    let mut used = 0;
    while !found && used < budget {
        for (x, d) in next.iter_mut().zip(&moves[from]) {
            *x -= d;
        }
        used += 1;
        found = reachable(&next, budget - used, from + 1, moves, memo);
    }
    memo.insert(key, found);
    found
}

pub fn poset_lt(a: &ToneVector, b: &ToneVector) -> Result<bool> {
    Ok(a != b && poset_leq(a, b)?)
}

/// The total order ⊴: larger height is larger; at equal height the
/// lexicographically smaller vector is larger.
pub fn total_cmp(a: &ToneVector, b: &ToneVector) -> Ordering {
    a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0))
}

/// γ^{l,n} in ascending ⊴ order; the last entry is (n,0,…,0).
pub fn chain(l: usize, n: usize) -> Result<Vec<ToneVector>> {
    let mut g = gamma_set(l, n)?;
    g.sort_by(total_cmp);
    Ok(g)
}

/// Precomputed order relation on a fixed γ^{l,n}.
#[derive(Clone, Debug)]
pub struct PosetTable {
    labels: Vec<ToneVector>,
    index: HashMap<ToneVector, usize>,
    leq: Vec<Vec<bool>>,
}

impl PosetTable {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        let labels = gamma_set(l, n)?;
        let index = labels.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut leq = vec![vec![false; labels.len()]; labels.len()];
        for (i, a) in labels.iter().enumerate() {
            for (j, b) in labels.iter().enumerate() {
                leq[i][j] = poset_leq(a, b)?;
            }
        }
        Ok(PosetTable { labels, index, leq })
    }

    pub fn labels(&self) -> &[ToneVector] {
        &self.labels
    }

    pub fn index_of(&self, v: &ToneVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn leq_index(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn leq(&self, a: &ToneVector, b: &ToneVector) -> Option<bool> {
        Some(self.leq[self.index_of(a)?][self.index_of(b)?])
    }

    /// Pairs (i, j) with labels[i] covered by labels[j].
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let k = self.labels.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let between = (0..k).any(|z| z != i && z != j && self.leq[i][z] && self.leq[z][j]);
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Graphviz rendering of the Hasse diagram of γ^{l,n}, edges pointing down.
pub fn hasse_dot(l: usize, n: usize) -> Result<String> {
    let table = PosetTable::new(l, n)?;
    let mut s = format!("digraph gamma_{l}_{n} {{\n");
    for (i, v) in table.labels().iter().enumerate() {
        s.push_str(&format!("  m{i} [label=\"{v}\"];\n"));
    }
    for (lo, hi) in table.covers() {
        s.push_str(&format!("  m{hi} -> m{lo};\n"));
    }
    s.push_str("}\n");
    Ok(s)
}

/// η_t: the vectors with r_m = n and height t, ascending lexicographically.
pub fn eta_levels(l: usize, n: usize) -> Result<Vec<(usize, Vec<ToneVector>)>> {
    let full: Vec<ToneVector> = gamma_set(l, n)?.into_iter().filter(|m| m.weight() == n).collect();
    let heights: BTreeSet<usize> = full.iter().map(ToneVector::height).collect();
    Ok(heights
        .into_iter()
        .rev()
        .map(|t| {
            let mut level: Vec<ToneVector> = full.iter().filter(|m| m.height() == t).cloned().collect();
            level.sort();
            (t, level)
        })
        .collect())
}

/// h^l_n: the labels not below (n−l,0,…,0); all of γ when n < l.
pub fn h_subset(l: usize, n: usize) -> Result<Vec<ToneVector>> {
    let all = gamma_set(l, n)?;
    if n < l {
        return Ok(all);
    }
    let bound = ToneVector::leading(l, n - l);
    let mut out = Vec::new();
    for m in all {
        if !poset_leq(&m, &bound)? {
            out.push(m);
        }
    }
    Ok(out)
}

/// Least height occurring in h^l_n.
pub fn h_min(l: usize, n: usize) -> usize {
    n.div_ceil(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(v: &[usize]) -> ToneVector {
        ToneVector(v.to_vec())
    }

    #[test]
    fn moves_for_tone_two() {
        assert_eq!(move_vectors(2), vec![vec![-2, 1], vec![0, -1]]);
        assert!(move_vectors(3).iter().all(|v| v.iter().sum::<i64>() == -1));
        assert_eq!(move_vectors(1), vec![vec![-1]]);
    }

    #[test]
    fn gamma_small() {
        assert_eq!(gamma_set(2, 2).unwrap(), vec![tv(&[0, 0]), tv(&[0, 1]), tv(&[2, 0])]);
        assert_eq!(gamma_set(1, 3).unwrap().len(), 4);
        assert!(gamma_set(0, 3).is_err());
    }

    #[test]
    fn chain_tone_two() {
        assert_eq!(chain(2, 2).unwrap(), vec![tv(&[0, 0]), tv(&[0, 1]), tv(&[2, 0])]);
        let c = chain(2, 6).unwrap();
        assert_eq!(c.last().unwrap(), &tv(&[6, 0]));
        let pos = |v: &[usize]| c.iter().position(|x| x == &tv(v)).unwrap();
        assert!(pos(&[2, 2]) > pos(&[4, 0]));
        assert!(pos(&[4, 1]) > pos(&[2, 2]));
    }

    #[test]
    fn poset_examples() {
        assert!(poset_leq(&tv(&[7, 1, 0]), &tv(&[9, 0, 0])).unwrap());
        assert!(!poset_leq(&tv(&[9, 0, 0]), &tv(&[7, 1, 0])).unwrap());
        assert!(poset_leq(&tv(&[0, 0]), &tv(&[2, 0])).unwrap());
        assert!(!poset_leq(&tv(&[0, 2]), &tv(&[2, 0])).unwrap());
        assert!(poset_leq(&tv(&[1, 0]), &tv(&[1, 1])).unwrap());
    }

    #[test]
    fn eta_for_three_eight() {
        let levels = eta_levels(3, 8).unwrap();
        let shown: Vec<(usize, Vec<Vec<usize>>)> =
            levels.into_iter().map(|(t, v)| (t, v.into_iter().map(|m| m.0).collect())).collect();
        assert_eq!(
            shown,
            vec![
                (8, vec![vec![8, 0, 0]]),
                (7, vec![vec![6, 1, 0]]),
                (6, vec![vec![4, 2, 0], vec![5, 0, 1]]),
                (5, vec![vec![2, 3, 0], vec![3, 1, 1]]),
                (4, vec![vec![0, 4, 0], vec![1, 2, 1], vec![2, 0, 2]]),
                (3, vec![vec![0, 1, 2]]),
            ]
        );
        assert_eq!(h_min(3, 8), 3);
        assert_eq!(h_min(3, 9), 3);
    }

    #[test]
    fn hasse_tone_two_n_two() {
        let dot = hasse_dot(2, 2).unwrap();
        assert_eq!(dot.matches("label=").count(), 3);
        assert_eq!(dot.matches("->").count(), 2);
    }

    #[test]
    fn h_is_top_weight() {
        for l in 1..=3 {
            for n in 0..=7 {
                let h = h_subset(l, n).unwrap();
                let top: Vec<ToneVector> = gamma_set(l, n).unwrap().into_iter().filter(|m| m.weight() == n).collect();
                assert_eq!(h, top, "l={l} n={n}");
            }
        }
    }

    #[test]
    fn heights_along_covers() {
        for l in 1..=3 {
            for n in 0..=8 {
                let t = PosetTable::new(l, n).unwrap();
                for (lo, hi) in t.covers() {
                    assert!(t.labels()[lo].height() < t.labels()[hi].height());
                }
                for m in t.labels() {
                    let a = crate::diagram::builders::standard_preidempotent(m, n).unwrap();
                    assert_eq!(a.prop_number(), m.height());
                    assert_eq!(&a.prop_vector(l).unwrap(), m);
                }
            }
        }
    }

    #[test]
    fn nothing_shorter_sits_above_h() {
        for l in 1..=3 {
            for n in l..=8 {
                let t = PosetTable::new(l, n).unwrap();
                for low in gamma_set(l, n - l).unwrap() {
                    for high in h_subset(l, n).unwrap() {
                        assert!(!t.leq(&high, &low).unwrap(), "l={l} n={n} {high} <= {low}");
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_splits_over_h() {
        for l in 1..=3 {
            for n in l..=8 {
                let mut joined = h_subset(l, n).unwrap();
                joined.extend(gamma_set(l, n - l).unwrap());
                joined.sort();
                assert_eq!(joined, gamma_set(l, n).unwrap(), "l={l} n={n}");
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn total_order_refines_poset(l in 1usize..4, n in 0usize..9) {
            let labels = gamma_set(l, n).unwrap();
            for a in &labels {
                for b in &labels {
                    if poset_leq(a, b).unwrap() {
                        proptest::prop_assert_ne!(total_cmp(a, b), Ordering::Greater);
                    }
                }
            }
        }

        #[test]
        fn poset_is_partial_order(l in 1usize..4, n in 0usize..8) {
            let t = PosetTable::new(l, n).unwrap();
            let k = t.labels().len();
            for i in 0..k {
                proptest::prop_assert!(t.leq_index(i, i));
                for j in 0..k {
                    if i != j && t.leq_index(i, j) {
                        proptest::prop_assert!(!t.leq_index(j, i));
                    }
                    for z in 0..k {
                        if t.leq_index(i, j) && t.leq_index(j, z) {
                            proptest::prop_assert!(t.leq_index(i, z));
                        }
                    }
                }
            }
        }
    }
}
