//! Restriction from n+1 to n strands along d ↦ 1_1 ⊗ d.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{enumerate_basis, generators};
use crate::diagram::{builders, Diagram};
use crate::error::{invalid, Error, Result};
use crate::standard::{enumerate_profiles, labels_with_dims, StandardModule};
use crate::symmetric::MultiPartition;

/// 1_1 ⊗ d: acts on strands 2..=n+1.
pub fn include(d: &Diagram) -> Diagram {
    builders::identity(1).tensor(d)
}

/// Labels of the standard modules in a filtration of the restriction,
/// split into those from basis vectors whose first vertex propagates (`a`)
/// and those where it does not (`b`). Both are multisets, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionRule {
    pub a: Vec<MultiPartition>,
    pub b: Vec<MultiPartition>,
}

impl RestrictionRule {
    pub fn all(&self) -> impl Iterator<Item = &MultiPartition> {
        self.a.iter().chain(&self.b)
    }
}

/// Which kind of part holds vertex 1 of a basis profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisClass {
    /// A propagating part whose top is vertex 1 alone.
    Singleton,
    /// A propagating part of class i, 2 ≤ i ≤ l.
    Class(usize),
    /// A class-1 propagating part with more than one top vertex.
    LargeClassOne,
    /// A closed-off part.
    NonPropagating,
}

impl fmt::Display for BasisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisClass::Singleton => write!(f, "singleton"),
            BasisClass::Class(i) => write!(f, "class-{i}"),
            BasisClass::LargeClassOne => write!(f, "large-class-1"),
            BasisClass::NonPropagating => write!(f, "non-propagating"),
        }
    }
}

fn valid_at(mu: &MultiPartition, n: usize) -> bool {
    mu.sizes().fits(n)
}

fn rem_then_add(mu: &MultiPartition, rem: usize, add: usize) -> Vec<MultiPartition> {
    mu.rem_boxes(rem).iter().flat_map(|x| x.add_boxes(add)).collect()
}

// Labels reached from each basis class, before discarding invalid ones.
fn class_targets(lambda: &MultiPartition, l: usize) -> Vec<(BasisClass, Vec<MultiPartition>)> {
    let mut out = vec![(BasisClass::Singleton, lambda.rem_boxes(1))];
    for i in 2..=l {
        out.push((BasisClass::Class(i), rem_then_add(lambda, i, i - 1)));
    }
    out.push((BasisClass::LargeClassOne, rem_then_add(lambda, 1, l)));
    let mut closed = if l == 1 { lambda.add_boxes(1) } else { lambda.add_boxes(l - 1) };
    if l == 1 {
        // a closed singleton {1} disappears and leaves λ unchanged
        closed.push(lambda.clone());
    }
    out.push((BasisClass::NonPropagating, closed));
    out
}

/// The restriction rule for λ at `n_plus_1` strands, keeping only labels
/// valid on `n_plus_1 − 1` strands.
pub fn restrict_rule(lambda: &MultiPartition, l: usize, n_plus_1: usize) -> Result<RestrictionRule> {
    if n_plus_1 == 0 {
        return Err(invalid("cannot restrict from zero strands"));
    }
    if lambda.tone() != l || !valid_at(lambda, n_plus_1) {
        return Err(Error::InvalidLabel { label: lambda.to_string(), l, n: n_plus_1 });
    }
    let n = n_plus_1 - 1;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (class, targets) in class_targets(lambda, l) {
        let keep = targets.into_iter().filter(|mu| valid_at(mu, n));
        if class == BasisClass::NonPropagating {
            b.extend(keep);
        } else {
            a.extend(keep);
        }
    }
    a.sort();
    b.sort();
    Ok(RestrictionRule { a, b })
}

fn module_dim(mu: &MultiPartition, n: usize) -> Result<BigInt> {
    Ok(BigInt::from(enumerate_profiles(&mu.sizes(), n)?.len()) * mu.dimension())
}

/// dim Δ_λ at n+1 against the sum of dims over the restriction rule.
pub fn branching_dim_check(lambda: &MultiPartition, l: usize, n_plus_1: usize) -> Result<(BigInt, BigInt)> {
    let rule = restrict_rule(lambda, l, n_plus_1)?;
    let lhs = module_dim(lambda, n_plus_1)?;
    let mut rhs = BigInt::zero();
    for mu in rule.all() {
        rhs += module_dim(mu, n_plus_1 - 1)?;
    }
    Ok((lhs, rhs))
}

/// Class of every basis vector of the module.
pub fn classify_basis(module: &StandardModule) -> Vec<BasisClass> {
    let sd = module.specht().dim();
    let l = module.tone();
    let mut out = Vec::with_capacity(module.dim());
    for profile in module.profiles() {
        let first = profile.first_block().expect("at least one strand");
        let class = match first.class {
            None => BasisClass::NonPropagating,
            Some(1) if first.vertices.len() == 1 => BasisClass::Singleton,
            Some(1) => BasisClass::LargeClassOne,
            Some(i) if l == 1 => unreachable!("class {i} at tone 1"),
            Some(i) => BasisClass::Class(i),
        };
        out.extend(std::iter::repeat_n(class, sd));
    }
    out
}

/// Per class: basis count and the summed dimension of the labels it should
/// account for.
pub fn class_dimensions(module: &StandardModule) -> Result<Vec<(BasisClass, usize, BigInt)>> {
    let n_plus_1 = module.strands();
    let l = module.tone();
    let counts = classify_basis(module);
    let mut out = Vec::new();
    for (class, targets) in class_targets(module.label(), l) {
        let count = counts.iter().filter(|&&c| c == class).count();
        let mut expected = BigInt::zero();
        for mu in targets.iter().filter(|mu| valid_at(mu, n_plus_1 - 1)) {
            expected += module_dim(mu, n_plus_1 - 1)?;
        }
        out.push((class, count, expected));
    }
    Ok(out)
}

/// Whether the span of `subset` is stable under the included generators; on
/// failure the offending (from, to) basis index pairs are listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub closed: bool,
    pub leaks: Vec<(usize, usize)>,
}

pub fn submodule_closure_check(module: &StandardModule, subset: &[usize]) -> Result<ClosureReport> {
    let n = module.strands();
    if n == 0 {
        return Err(invalid("no strands to restrict"));
    }
    let inside: HashSet<usize> = subset.iter().copied().collect();
    let mut leaks = Vec::new();
    for g in generators(module.tone(), n - 1)? {
        let m = module.action(&include(&g))?;
        for &j in subset {
            for i in 0..module.dim() {
                if !m[(i, j)].is_zero() && !inside.contains(&i) {
                    leaks.push((j, i));
                }
            }
        }
    }
    leaks.sort_unstable();
    leaks.dedup();
    Ok(ClosureReport { closed: leaks.is_empty(), leaks })
}

/// Basis indices in the given classes.
pub fn indices_of(classes: &[BasisClass], wanted: &[BasisClass]) -> Vec<usize> {
    classes.iter().enumerate().filter(|(_, c)| wanted.contains(c)).map(|(i, _)| i).collect()
}

/// The branching graph: per level the labels with their dimensions, and
/// restriction edges with multiplicities.
#[derive(Clone, Debug)]
pub struct Bratteli {
    pub tone: usize,
    pub levels: Vec<Vec<(MultiPartition, BigInt)>>,
    /// (level n+1, index there, index at level n, multiplicity)
    pub edges: Vec<(usize, usize, usize, usize)>,
}

pub fn bratteli(l: usize, n_max: usize) -> Result<Bratteli> {
    let mut levels = Vec::new();
    for n in 0..=n_max {
        levels.push(labels_with_dims(l, n)?);
    }
    let mut edges = Vec::new();
    for n in 1..=n_max {
        let below: HashMap<&MultiPartition, usize> =
            levels[n - 1].iter().enumerate().map(|(i, (mu, _))| (mu, i)).collect();
        for (i, (lambda, _)) in levels[n].iter().enumerate() {
            let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
            for mu in restrict_rule(lambda, l, n)?.all() {
                let j = below.get(mu).ok_or_else(|| invalid(format!("{mu} missing at level {}", n - 1)))?;
                *mult.entry(*j).or_default() += 1;
            }
            edges.extend(mult.into_iter().map(|(j, k)| (n, i, j, k)));
        }
    }
    Ok(Bratteli { tone: l, levels, edges })
}

impl Bratteli {
    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph bratteli_{} {{\n  rankdir=TB;\n", self.tone);
        for (n, level) in self.levels.iter().enumerate() {
            s.push_str("  { rank=same;");
            for i in 0..level.len() {
                s.push_str(&format!(" n{n}_{i};"));
            }
            s.push_str(" }\n");
            for (i, (mu, d)) in level.iter().enumerate() {
                s.push_str(&format!("  n{n}_{i} [label=\"{mu} ({d})\"];\n"));
            }
        }
        for &(n, i, j, k) in &self.edges {
            let label = if k > 1 { format!(" [label=\"{k}\"]") } else { String::new() };
            s.push_str(&format!("  n{}_{j} -> n{n}_{i}{label};\n", n - 1));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,label,dim\n");
        for (n, level) in self.levels.iter().enumerate() {
            for (mu, d) in level {
                s.push_str(&format!("{n},{mu},{d}\n"));
            }
        }
        s
    }

    /// Whether each dimension equals the multiplicity-weighted sum below it.
    pub fn dims_consistent(&self) -> bool {
        (1..self.levels.len()).all(|n| {
            self.levels[n].iter().enumerate().all(|(i, (_, d))| {
                let sum: BigInt = self
                    .edges
                    .iter()
                    .filter(|e| e.0 == n && e.1 == i)
                    .map(|&(_, _, j, k)| &self.levels[n - 1][j].1 * BigInt::from(k))
                    .sum();
                *d == sum
            })
        })
    }
}

/// Corner of the even partition algebra cut out by merging strands in pairs,
/// compared with the partition algebra on half as many strands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerReport {
    pub corner_dim: usize,
    pub target_dim: usize,
    pub bijective: bool,
    pub multiplicative: bool,
}

impl CornerReport {
    pub fn passed(&self) -> bool {
        self.corner_dim == self.target_dim && self.bijective && self.multiplicative
    }
}

fn contract_pairs(d: &Diagram) -> Result<Diagram> {
    let n = d.top_arity();
    let half = n / 2;
    let mut labels = Vec::with_capacity(n);
    for k in 0..half {
        if d.top_label(2 * k + 1) != d.top_label(2 * k + 2) {
            return Err(invalid(format!("{d} splits a top pair")));
        }
        labels.push(d.top_label(2 * k + 1));
    }
    for k in 0..half {
        if d.bottom_label(2 * k + 1) != d.bottom_label(2 * k + 2) {
            return Err(invalid(format!("{d} splits a bottom pair")));
        }
        labels.push(d.bottom_label(2 * k + 1));
    }
    Diagram::from_labels(half, half, &labels)
}

pub fn corner_iso_check(n: usize) -> Result<CornerReport> {
    let e = builders::pair_fusion_idempotent(n)?;
    let mut corner: Vec<Diagram> = Vec::new();
    let mut seen = HashSet::new();
    for p in enumerate_basis(2, n, n)? {
        let (k1, ep) = e.compose(&p)?;
        let (k2, epe) = ep.compose(&e)?;
        if k1 + k2 != 0 {
            return Err(invalid("corner product closed a loop"));
        }
        if seen.insert(epe.clone()) {
            corner.push(epe);
        }
    }
    let target = enumerate_basis(1, n / 2, n / 2)?;
    let images: Vec<Diagram> = corner.iter().map(contract_pairs).collect::<Result<_>>()?;
    let image_set: HashSet<&Diagram> = images.iter().collect();
    let bijective = image_set.len() == corner.len() && target.iter().all(|t| image_set.contains(t));
    let mut multiplicative = true;
    'outer: for (x, fx) in corner.iter().zip(&images) {
        for (y, fy) in corner.iter().zip(&images) {
            let (k, xy) = x.compose(y)?;
            let (kf, fxy) = fx.compose(fy)?;
            if k != kf || contract_pairs(&xy)? != fxy {
                multiplicative = false;
                break 'outer;
            }
        }
    }
    Ok(CornerReport { corner_dim: corner.len(), target_dim: target.len(), bijective, multiplicative })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    #[test]
    fn inclusion_reindexes() {
        assert_eq!(include(&builders::identity(3)), builders::identity(4));
        assert_eq!(include(&builders::merge_adjacent(1, 3).unwrap()), builders::merge_adjacent(2, 4).unwrap());
        let basis = enumerate_basis(2, 3, 3).unwrap();
        for p in basis.iter().step_by(3) {
            for q in basis.iter().step_by(5) {
                let (k, pq) = p.compose(q).unwrap();
                let (ki, ipq) = include(p).compose(&include(q)).unwrap();
                assert_eq!((k, include(&pq)), (ki, ipq));
            }
        }
    }

    #[test]
    fn layers_are_sums_of_squares() {
        for l in 1..=3 {
            let b = bratteli(l, 4).unwrap();
            for (n, level) in b.levels.iter().enumerate() {
                let squares: BigInt = level.iter().map(|(_, d)| d * d).sum();
                assert_eq!(squares, BigInt::from(enumerate_basis(l, n, n).unwrap().len()), "l={l} n={n}");
            }
        }
    }

    #[test]
    fn worked_restrictions() {
        let rule = restrict_rule(&mp("2|-"), 2, 4).unwrap();
        assert_eq!(rule.a, vec![mp("1|-"), mp("1|1")]);
        assert_eq!(rule.b, vec![mp("2,1|-"), mp("3|-")]);
        let dims: Vec<BigInt> = rule.all().map(|mu| module_dim(mu, 3).unwrap()).collect();
        let mut sorted: Vec<i64> = dims.iter().map(|d| i64::try_from(d).unwrap()).collect();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3, 4]);
        assert_eq!(branching_dim_check(&mp("2|-"), 2, 4).unwrap(), (10.into(), 10.into()));

        let rule = restrict_rule(&mp("-|1"), 2, 4).unwrap();
        assert_eq!(rule.a, vec![mp("1|-")]);
        assert_eq!(rule.b, vec![mp("1|1")]);
        assert_eq!(branching_dim_check(&mp("-|1"), 2, 4).unwrap(), (7.into(), 7.into()));
    }

    #[test]
    fn restriction_preserves_dimension() {
        for l in 1..=3 {
            for n1 in 1..=6 {
                for (lambda, _) in labels_with_dims(l, n1).unwrap() {
                    let (lhs, rhs) = branching_dim_check(&lambda, l, n1).unwrap();
                    assert_eq!(lhs, rhs, "l={l} n+1={n1} {lambda}");
                }
            }
        }
    }

    #[test]
    fn class_counts_match_targets() {
        for (l, n1) in [(1, 3), (1, 4), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)] {
            for (lambda, _) in labels_with_dims(l, n1).unwrap() {
                let module = StandardModule::new(&lambda, l, n1).unwrap();
                for (class, count, expected) in class_dimensions(&module).unwrap() {
                    assert_eq!(BigInt::from(count), expected, "l={l} n+1={n1} {lambda} {class}");
                }
            }
        }
    }

    #[test]
    fn classes_on_small_module() {
        let module = StandardModule::new(&mp("1|-"), 2, 3).unwrap();
        let classes = classify_basis(&module);
        let count = |c| classes.iter().filter(|&&x| x == c).count();
        assert_eq!(count(BasisClass::Singleton), 1);
        assert_eq!(count(BasisClass::LargeClassOne), 1);
        assert_eq!(count(BasisClass::NonPropagating), 2);
        assert_eq!(count(BasisClass::Class(2)), 0);
        let module = StandardModule::new(&mp("1|1"), 2, 3).unwrap();
        let classes = classify_basis(&module);
        assert_eq!(classes.iter().filter(|&&x| x == BasisClass::Class(2)).count(), 2);
        assert_eq!(classes.iter().filter(|&&x| x == BasisClass::Singleton).count(), 1);
    }

    #[test]
    fn closure_and_leak() {
        let module = StandardModule::new(&mp("1|-"), 2, 3).unwrap();
        let classes = classify_basis(&module);
        let singles = indices_of(&classes, &[BasisClass::Singleton]);
        let large = indices_of(&classes, &[BasisClass::LargeClassOne]);
        let propagating =
            indices_of(&classes, &[BasisClass::Singleton, BasisClass::Class(2), BasisClass::LargeClassOne]);
        assert!(submodule_closure_check(&module, &singles).unwrap().closed);
        assert!(submodule_closure_check(&module, &propagating).unwrap().closed);
        let leak = submodule_closure_check(&module, &large).unwrap();
        assert!(!leak.closed);
        assert!(leak.leaks.iter().all(|(_, to)| singles.contains(to)));
    }

    #[test]
    fn bratteli_consistent() {
        for l in 1..=3 {
            let b = bratteli(l, 5).unwrap();
            assert!(b.dims_consistent(), "l={l}");
        }
        let b = bratteli(2, 4).unwrap();
        assert!(b.edges.iter().all(|e| e.3 == 1));
        assert!(b.to_dot().contains("\"2|- (10)\""));
        assert!(b.to_csv().starts_with("n,label,dim\n0,-|-,1\n"));
    }

    #[test]
    fn fusion_corner() {
        let r = corner_iso_check(2).unwrap();
        assert_eq!((r.corner_dim, r.target_dim), (2, 2));
        assert!(r.passed());
        let r = corner_iso_check(4).unwrap();
        assert_eq!(r.corner_dim, 15);
        assert!(r.passed());
        assert!(corner_iso_check(3).is_err());
    }
}
