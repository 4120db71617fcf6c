//! The contravariant form on standard modules and its determinant and ranks.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{enumerate_basis, Element};
use crate::error::{Error, Result};
use crate::linalg::{det, rank};
use crate::poly::DeltaPoly;
use crate::standard::{labels_with_dims, split_middle, StandardModule};
use crate::symmetric::MultiPartition;
use crate::{PolyMatrix, Rational, RationalMatrix};

/// Gram matrix of the contravariant form in the module's basis.
///
/// For profiles t, t' the product flip(t)·t' either falls below the label
/// (entry 0) or is δ^k times a permutation of the propagating parts of a^m,
/// which pairs the tableau factors through the invariant form.
pub fn gram_matrix(module: &StandardModule) -> Result<PolyMatrix> {
    let sd = module.specht().dim();
    let form = module.specht().form();
    let diagrams = module.profile_diagrams();
    let height = module.vector().height();
    let mut g = PolyMatrix::zeros(module.dim(), module.dim());
    for (p, tp) in diagrams.iter().enumerate() {
        let up = tp.flip();
        for (q, tq) in diagrams.iter().enumerate() {
            let (k, prod) = up.compose(tq)?;
            if prod.prop_number() < height {
                continue;
            }
            let matching = split_middle(&prod, module.layout()).ok_or_else(|| Error::UnexpectedVector {
                found: prod.prop_vector(module.tone()).map(|v| v.to_string()).unwrap_or_default(),
                expected: module.vector().to_string(),
            })?;
            let block = form.matmul(&module.specht_matrix(&StandardModule::tableau_action(&matching))?);
            for a in 0..sd {
                for b in 0..sd {
                    let c = &block[(a, b)];
                    if !c.is_zero() {
                        g[(p * sd + a, q * sd + b)] = DeltaPoly::monomial(c.clone(), k);
                    }
                }
            }
        }
    }
    Ok(g)
}

pub fn gram_for(mu: &MultiPartition, l: usize, n: usize) -> Result<PolyMatrix> {
    gram_matrix(&StandardModule::new(mu, l, n)?)
}

pub fn gram_det(g: &PolyMatrix) -> DeltaPoly {
    det(g)
}

/// Rank over the field of rational functions in δ.
pub fn generic_rank(g: &PolyMatrix) -> usize {
    rank(g)
}

pub fn specialize(g: &PolyMatrix, at: &Rational) -> RationalMatrix {
    g.map(|p| p.eval(at))
}

pub fn rank_at(g: &PolyMatrix, at: &Rational) -> usize {
    rank(&specialize(g, at))
}

/// Whether every standard module at (l, n) has a non-degenerate form at δ₀.
pub fn is_semisimple_at(l: usize, n: usize, at: &Rational) -> Result<bool> {
    for (mu, _) in labels_with_dims(l, n)? {
        let module = StandardModule::new(&mu, l, n)?;
        if rank_at(&gram_matrix(&module)?, at) != module.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Labels at (l, n) whose form degenerates at δ₀.
pub fn degenerate_labels(l: usize, n: usize, at: &Rational) -> Result<Vec<(MultiPartition, usize, usize)>> {
    let mut out = Vec::new();
    for (mu, _) in labels_with_dims(l, n)? {
        let module = StandardModule::new(&mu, l, n)?;
        let r = rank_at(&gram_matrix(&module)?, at);
        if r != module.dim() {
            out.push((mu, r, module.dim()));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopLayerReport {
    pub label: MultiPartition,
    pub delta_free: bool,
    pub profile_diagonal: bool,
    pub full_rank: bool,
}

impl TopLayerReport {
    pub fn passed(&self) -> bool {
        self.delta_free && self.profile_diagonal && self.full_rank
    }
}

/// For labels whose vector uses every strand: the form has no δ-dependence
/// beyond one common power, pairs distinct profiles to zero, and has full
/// rank over ℚ.
pub fn top_layer_check(l: usize, n: usize) -> Result<Vec<TopLayerReport>> {
    let mut out = Vec::new();
    for m in crate::gamma::h_subset(l, n)? {
        for mu in crate::symmetric::multipartitions(&m) {
            let module = StandardModule::new(&mu, l, n)?;
            let g = gram_matrix(&module)?;
            let sd = module.specht().dim();
            let mut exponents = std::collections::BTreeSet::new();
            let mut profile_diagonal = true;
            for i in 0..g.rows() {
                for j in 0..g.cols() {
                    let e = &g[(i, j)];
                    if e.is_zero() {
                        continue;
                    }
                    match e.monomial_exponent() {
                        Some(k) => {
                            exponents.insert(k);
                        }
                        None => {
                            exponents.insert(u32::MAX);
                        }
                    }
                    if i / sd != j / sd {
                        profile_diagonal = false;
                    }
                }
            }
            let delta_free = exponents.len() <= 1 && !exponents.contains(&u32::MAX);
            let full_rank = rank_at(&g, &Rational::one()) == module.dim();
            out.push(TopLayerReport { label: mu, delta_free, profile_diagonal, full_rank });
        }
    }
    Ok(out)
}

/// Random element of the algebra with small integer coefficients in ℤ[δ].
pub fn random_element(l: usize, n: usize, terms: usize, rng: &mut impl Rng) -> Result<Element> {
    let basis = enumerate_basis(l, n, n)?;
    let mut x = Element::zero(l, n, n)?;
    for _ in 0..terms {
        let d = basis[rng.gen_range(0..basis.len())].clone();
        let c = DeltaPoly::monomial(BigInt::from(rng.gen_range(-3i64..=3)), rng.gen_range(0..3));
        x.add_term(d, &c)?;
    }
    Ok(x)
}

/// Checks ⟨x·u, w⟩ = ⟨u, x^op·w⟩ on the whole basis for random x; with
/// `trials = 0` every basis diagram is used instead.
pub fn contravariance_check(mu: &MultiPartition, l: usize, n: usize, trials: usize, seed: u64) -> Result<bool> {
    let module = StandardModule::new(mu, l, n)?;
    let g = gram_matrix(&module)?;
    let holds = |x: &Element| -> Result<bool> {
        let lhs = module.action_element(x)?.transpose().matmul(&g);
        let rhs = g.matmul(&module.action_element(&x.op_antiauto())?);
        Ok(lhs == rhs)
    };
    if trials == 0 {
        for d in enumerate_basis(l, n, n)? {
            if !holds(&Element::from_diagram(l, d)?)? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..trials {
        if !holds(&random_element(l, n, 4, &mut rng)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}
