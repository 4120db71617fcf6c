//! Named checks over a range of strand counts, shared by the command line
//! and the acceptance tests.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::enumerate_basis;
use crate::branching::{branching_dim_check, classify_basis, indices_of, submodule_closure_check, BasisClass};
use crate::diagram::builders;
use crate::error::Result;
use crate::gamma::{chain, gamma_set, poset_lt, total_cmp, PosetTable};
use crate::globalise::{corner_check, embedding_check};
use crate::gram::{contravariance_check, generic_rank, gram_det, gram_matrix};
use crate::standard::{labels_with_dims, sum_of_squares_check, StandardModule};
use crate::structure::{p_chain, quasi_hereditary_at};
use crate::Rational;

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub l: usize,
    pub n: usize,
    pub passed: bool,
    pub detail: String,
}

/// Counts over all ordered pairs of basis diagrams.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairStats {
    pub pairs: usize,
    pub not_tone: usize,
    pub above_bottleneck: usize,
}

/// Every product of basis diagrams is l-tone and its vector lies below the
/// vectors of both factors.
pub fn tone_closure_check(l: usize, n: usize) -> Result<PairStats> {
    let basis = enumerate_basis(l, n, n)?;
    let table = PosetTable::new(l, n)?;
    let index: Vec<usize> = basis
        .iter()
        .map(|d| d.prop_vector(l).map(|v| table.index_of(&v).expect("vector in γ")))
        .collect::<Result<_>>()?;
    let stats = basis
        .par_iter()
        .zip(index.par_iter())
        .map(|(p, &ip)| {
            let mut s = PairStats::default();
            for (q, &iq) in basis.iter().zip(&index) {
                let (_, pq) = p.compose(q).expect("equal arities");
                s.pairs += 1;
                if !pq.is_tone(l) {
                    s.not_tone += 1;
                    continue;
                }
                let v = pq.prop_vector(l).expect("tone");
                let iv = table.index_of(&v).expect("vector in γ");
                if !table.leq_index(iv, ip) || !table.leq_index(iv, iq) {
                    s.above_bottleneck += 1;
                }
            }
            s
        })
        .reduce(PairStats::default, |a, b| PairStats {
            pairs: a.pairs + b.pairs,
            not_tone: a.not_tone + b.not_tone,
            above_bottleneck: a.above_bottleneck + b.above_bottleneck,
        });
    Ok(stats)
}

/// a^{m'} p a^m falls strictly below m whenever m is not below m'. Returns
/// the number of products examined and the number of violations.
pub fn core_axiom_check(l: usize, n: usize) -> Result<(usize, usize)> {
    let basis = enumerate_basis(l, n, n)?;
    let table = PosetTable::new(l, n)?;
    let labels = table.labels().to_vec();
    let pre: Vec<_> = labels.iter().map(|m| builders::standard_preidempotent(m, n)).collect::<Result<_>>()?;
    let mut examined = 0;
    let mut bad = 0;
    for (j, a_m) in pre.iter().enumerate() {
        for (i, a_mp) in pre.iter().enumerate() {
            if table.leq_index(j, i) {
                continue;
            }
            for p in &basis {
                let (_, x) = a_mp.compose(p)?;
                let (_, y) = x.compose(a_m)?;
                let v = table.index_of(&y.prop_vector(l)?).expect("vector in γ");
                examined += 1;
                if v == j || !table.leq_index(v, j) {
                    bad += 1;
                }
            }
        }
    }
    Ok((examined, bad))
}

/// The total order refines the poset, and each ideal below the next chain
/// label sits inside the ideal up to the current one.
pub fn chain_claim_check(l: usize, n: usize) -> Result<bool> {
    let gamma = gamma_set(l, n)?;
    for a in &gamma {
        for b in &gamma {
            if poset_lt(a, b)? && !total_cmp(a, b).is_lt() {
                return Ok(false);
            }
        }
    }
    let ch = chain(l, n)?;
    for w in ch.windows(2) {
        for m in &gamma {
            if poset_lt(m, &w[1])? && total_cmp(m, &w[0]).is_gt() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// Pairwise products grow with the square of the dimension; skip beyond this.
const PAIRWISE_LIMIT: usize = 5000;

fn outcome(name: &str, l: usize, n: usize, passed: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome { name: name.to_string(), l, n, passed, detail: detail.into() }
}

/// All checks at one (l, n).
pub fn run_checks(l: usize, n: usize) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let generic = Rational::from_integer(1_000_003.into());

    let dim = enumerate_basis(l, n, n)?.len();
    if dim <= PAIRWISE_LIMIT {
        let s = tone_closure_check(l, n)?;
        out.push(outcome(
            "tone-closure",
            l,
            n,
            s.not_tone == 0 && s.above_bottleneck == 0,
            format!("{} pairs, {} not tone, {} above bottleneck", s.pairs, s.not_tone, s.above_bottleneck),
        ));
        let (examined, bad) = core_axiom_check(l, n)?;
        out.push(outcome("core-axiom", l, n, bad == 0, format!("{examined} products, {bad} violations")));
    }

    let (lhs, rhs) = sum_of_squares_check(l, n)?;
    out.push(outcome("sum-of-squares", l, n, lhs == rhs, format!("{lhs} = {rhs}")));

    out.push(outcome("chain-claim", l, n, chain_claim_check(l, n)?, "total order refines poset; ideal chain claim"));

    let labels = labels_with_dims(l, n)?;
    let mut gram_ok = true;
    let mut contra_ok = true;
    let mut notes = Vec::new();
    for (mu, _) in &labels {
        let module = StandardModule::new(mu, l, n)?;
        let g = gram_matrix(&module)?;
        let rank = generic_rank(&g);
        if gram_det(&g).is_zero() || rank != module.dim() {
            gram_ok = false;
            notes.push(format!("{mu}: rank {rank} of {}", module.dim()));
        }
        if !contravariance_check(mu, l, n, 4, 7)? {
            contra_ok = false;
            notes.push(format!("{mu}: contravariance"));
        }
    }
    let detail = if notes.is_empty() { format!("{} labels", labels.len()) } else { notes.join("; ") };
    out.push(outcome("gram-nondegenerate", l, n, gram_ok, detail));
    out.push(outcome("contravariance", l, n, contra_ok, format!("{} labels", labels.len())));

    if n >= 1 {
        let mut ok = true;
        let mut closed = true;
        for (lambda, _) in &labels {
            let (a, b) = branching_dim_check(lambda, l, n)?;
            ok &= a == b;
            let module = StandardModule::new(lambda, l, n)?;
            let classes = classify_basis(&module);
            let propagating: Vec<BasisClass> =
                classes.iter().copied().filter(|c| *c != BasisClass::NonPropagating).collect();
            closed &= submodule_closure_check(&module, &indices_of(&classes, &[BasisClass::Singleton]))?.closed;
            closed &= submodule_closure_check(&module, &indices_of(&classes, &propagating))?.closed;
        }
        out.push(outcome("restriction-dims", l, n, ok, format!("{} labels", labels.len())));
        out.push(outcome("restriction-submodules", l, n, closed, "singleton and propagating spans closed"));
    }

    if n > l {
        let c = corner_check(l, n)?;
        out.push(outcome("globalisation-corner", l, n, c.passed(), format!("{} corner diagrams", c.corner_dim)));
        let mut ok = true;
        for (mu, _) in labels_with_dims(l, n - l)? {
            ok &= embedding_check(&mu, l, n)?.passed();
        }
        out.push(outcome("globalisation-modules", l, n, ok, "action matrices agree under t ↦ t ⊗ ww*"));
    }

    let chain_ok = {
        let c = p_chain(l, n)?;
        c.strictly_descending() && c.poset_closed()? && c.total_dim() == dim
    };
    out.push(outcome("heredity-chain", l, n, chain_ok, format!("dim {dim}")));
    out.push(outcome("quasi-hereditary", l, n, quasi_hereditary_at(l, n, &generic)?, "at δ = 1000003"));

    if l == 2 && n.is_multiple_of(2) && (2..=4).contains(&n) {
        let r = crate::branching::corner_iso_check(n)?;
        out.push(outcome("fusion-corner", l, n, r.passed(), format!("{} corner diagrams", r.corner_dim)));
    }
    Ok(out)
}

/// Checks for every n in `n_min..=n_max`.
pub fn run_suite(l: usize, n_min: usize, n_max: usize) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for n in n_min..=n_max {
        out.extend(run_checks(l, n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        for l in 1..=3 {
            for c in run_suite(l, 0, 3).unwrap() {
                assert!(c.passed, "{c:?}");
            }
        }
    }

    #[test]
    fn pair_counts() {
        let s = tone_closure_check(2, 2).unwrap();
        assert_eq!(s, PairStats { pairs: 16, not_tone: 0, above_bottleneck: 0 });
    }

    #[test]
    fn core_axiom_small() {
        let (examined, bad) = core_axiom_check(2, 3).unwrap();
        assert!(examined > 0);
        assert_eq!(bad, 0);
    }
}
