//! Globalisation: the corner W_b P^l_n W_b against P^l_{n−l}, and standard
//! modules on n−l strands inside those on n strands.

use std::collections::{HashMap, HashSet};

use num_traits::Zero;

use crate::algebra::{enumerate_basis, generators};
use crate::diagram::{builders, Diagram};
use crate::error::{invalid, Result};
use crate::gram::generic_rank;
use crate::standard::StandardModule;
use crate::symmetric::MultiPartition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerCheck {
    pub corner_dim: usize,
    pub target_dim: usize,
    pub bijective: bool,
    pub structure_constants: bool,
}

impl CornerCheck {
    pub fn passed(&self) -> bool {
        self.corner_dim == self.target_dim && self.bijective && self.structure_constants
    }
}

/// Distinct diagrams e·p·e over the basis p; none of these products close a
/// loop when e's middle blocks all reach its outer side.
pub(crate) fn corner_diagrams(e: &Diagram, l: usize, n: usize) -> Result<Vec<Diagram>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in enumerate_basis(l, n, n)? {
        let (k1, ep) = e.compose(&p)?;
        let (k2, epe) = ep.compose(e)?;
        if k1 + k2 != 0 {
            return Err(invalid(format!("corner product through {p} closed a loop")));
        }
        if seen.insert(epe.clone()) {
            out.push(epe);
        }
    }
    Ok(out)
}

/// Drops the first l strands of a corner diagram.
fn shorten(d: &Diagram, l: usize) -> Result<Diagram> {
    d.restrict(l + 1, d.top_arity())
}

pub fn corner_check(l: usize, n: usize) -> Result<CornerCheck> {
    let e = builders::globalising_idempotent(l, n)?;
    let corner = corner_diagrams(&e, l, n)?;
    let images: Vec<Diagram> = corner.iter().map(|d| shorten(d, l)).collect::<Result<_>>()?;
    let target = enumerate_basis(l, n - l, n - l)?;
    let image_set: HashSet<&Diagram> = images.iter().collect();
    let bijective = image_set.len() == corner.len() && target.iter().all(|t| image_set.contains(t));
    let mut structure_constants = true;
    'outer: for (x, fx) in corner.iter().zip(&images) {
        for (y, fy) in corner.iter().zip(&images) {
            let (k, xy) = x.compose_unchecked(y);
            let (kf, fxy) = fx.compose_unchecked(fy);
            if k != kf || shorten(&xy, l)? != fxy {
                structure_constants = false;
                break 'outer;
            }
        }
    }
    Ok(CornerCheck { corner_dim: corner.len(), target_dim: target.len(), bijective, structure_constants })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCheck {
    pub label: MultiPartition,
    pub small_dim: usize,
    pub large_dim: usize,
    /// Every small basis vector has an image basis vector.
    pub injective: bool,
    /// The image span is stable under P^l_{n−l} ⊗ 1_l with the same matrices.
    pub matrices_equal: bool,
    /// Rank of W_b on the large module over ℚ(δ).
    pub truncation_rank: usize,
}

impl EmbeddingCheck {
    pub fn passed(&self) -> bool {
        self.injective && self.matrices_equal && self.truncation_rank == self.small_dim
    }
}

/// Compares Δ_μ on n−l strands with Δ_μ on n strands via t ↦ t ⊗ ww^*.
pub fn embedding_check(mu: &MultiPartition, l: usize, n: usize) -> Result<EmbeddingCheck> {
    if n <= l {
        return Err(invalid(format!("need n > l, got l={l}, n={n}")));
    }
    let small = StandardModule::new(mu, l, n - l)?;
    let large = StandardModule::new(mu, l, n)?;
    let cap_cup = builders::loop_projector(l, l)?;
    let positions: HashMap<&Diagram, usize> =
        large.profile_diagrams().iter().enumerate().map(|(i, d)| (d, i)).collect();
    let image: Vec<Option<usize>> =
        small.profile_diagrams().iter().map(|t| positions.get(&t.tensor(&cap_cup)).copied()).collect();
    let injective = image.iter().all(Option::is_some);
    let sd = small.specht().dim();
    let mut matrices_equal = injective;
    if injective {
        let map: Vec<usize> = image.iter().map(|x| x.expect("checked")).collect();
        let big_index = |i: usize| map[i / sd] * sd + i % sd;
        let inside: HashSet<usize> = (0..small.dim()).map(big_index).collect();
        let pad = builders::identity(l);
        'gens: for g in generators(l, n - l)? {
            let ms = small.action(&g)?;
            let ml = large.action(&g.tensor(&pad))?;
            for j in 0..small.dim() {
                let bj = big_index(j);
                for i in 0..large.dim() {
                    if !ml[(i, bj)].is_zero() && !inside.contains(&i) {
                        matrices_equal = false;
                        break 'gens;
                    }
                }
                for i in 0..small.dim() {
                    if ms[(i, j)] != ml[(big_index(i), bj)] {
                        matrices_equal = false;
                        break 'gens;
                    }
                }
            }
        }
    }
    let w = builders::globalising_idempotent(l, n)?;
    let truncation_rank = generic_rank(&large.action(&w)?);
    Ok(EmbeddingCheck {
        label: mu.clone(),
        small_dim: small.dim(),
        large_dim: large.dim(),
        injective,
        matrices_equal,
        truncation_rank,
    })
}

/// Corner check together with the embedding check for each given label.
pub fn globalise_check(labels: &[MultiPartition], l: usize, n: usize) -> Result<bool> {
    if !corner_check(l, n)?.passed() {
        return Ok(false);
    }
    for mu in labels {
        if !embedding_check(mu, l, n)?.passed() {
            return Ok(false);
        }
    }
    Ok(true)
}
