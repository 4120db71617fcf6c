//! Standard modules Δ_μ of the l-tone partition algebra.
//!
//! A basis vector is a pair (top profile, tableau tuple). The profile records
//! how the top vertices split into propagating parts, sorted by class, and
//! closed-off parts; attaching it to the bottom of a^m gives a diagram in the
//! left ideal generated by a^m. Acting by a diagram and reading the result
//! back as (profile, per-class permutation) gives the module structure, the
//! permutation acting on the outer Specht factor.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{generators, Element};
use crate::diagram::{class_of, Diagram, StandardLayout};
use crate::error::{invalid, Error, Result};
use crate::gamma::{PosetTable, ToneVector};
use crate::poly::DeltaPoly;
use crate::symmetric::{MultiPartition, OuterRep, Permutation};
use crate::{IntMatrix, PolyMatrix};

/// One block of a top profile: sorted 1-based positions and, for propagating
/// parts, the class in 1..=l.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProfileBlock {
    pub vertices: Vec<usize>,
    pub class: Option<usize>,
}

/// A set partition of the top vertices with marked propagating blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TopProfile {
    n: usize,
    blocks: Vec<ProfileBlock>,
}

impl TopProfile {
    pub fn new(n: usize, mut blocks: Vec<ProfileBlock>) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &mut blocks {
            b.vertices.sort_unstable();
            if b.vertices.is_empty() {
                return Err(invalid("empty profile block"));
            }
            for &v in &b.vertices {
                if v == 0 || v > n || seen[v - 1] {
                    return Err(invalid(format!("bad profile vertex {v}")));
                }
                seen[v - 1] = true;
            }
        }
        if seen.contains(&false) {
            return Err(invalid("profile does not cover every vertex"));
        }
        blocks.sort();
        Ok(TopProfile { n, blocks })
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[ProfileBlock] {
        &self.blocks
    }

    /// Propagating blocks of class `i` in least-vertex order.
    pub fn class_blocks(&self, i: usize) -> impl Iterator<Item = &ProfileBlock> {
        self.blocks.iter().filter(move |b| b.class == Some(i))
    }

    /// Number of propagating blocks per class.
    pub fn vector(&self, l: usize) -> ToneVector {
        let v = (1..=l).map(|i| self.class_blocks(i).count()).collect();
        ToneVector::new(v).expect("l ≥ 1")
    }

    /// The block containing vertex 1, if any.
    pub fn first_block(&self) -> Option<&ProfileBlock> {
        self.blocks.first()
    }

    /// The diagram with this profile on top and the bottom of a^m below,
    /// k-th class-i block joined to the k-th class-i part of the layout.
    pub fn diagram(&self, layout: &StandardLayout) -> Result<Diagram> {
        let n = self.n;
        let mut labels = vec![usize::MAX; 2 * n];
        let mut used = vec![0usize; layout.tone()];
        let mut next = 0;
        for b in &self.blocks {
            for &v in &b.vertices {
                labels[v - 1] = next;
            }
            if let Some(i) = b.class {
                let part = layout.classes[i - 1]
                    .get(used[i - 1])
                    .ok_or_else(|| invalid(format!("profile has too many class-{i} blocks")))?;
                used[i - 1] += 1;
                for &p in part {
                    labels[n + p - 1] = next;
                }
            }
            next += 1;
        }
        for chunk in &layout.non_propagating {
            for &p in chunk {
                labels[n + p - 1] = next;
            }
            next += 1;
        }
        if labels.contains(&usize::MAX) {
            return Err(invalid("profile does not match the layout"));
        }
        Diagram::from_labels(n, n, &labels)
    }

    /// Text form: blocks separated by ';', propagating ones suffixed by `@i`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TopProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ";")?;
            }
            let vs: Vec<String> = b.vertices.iter().map(ToString::to_string).collect();
            write!(f, "{}", vs.join(","))?;
            if let Some(i) = b.class {
                write!(f, "@{i}")?;
            }
        }
        Ok(())
    }
}

/// Every top profile with m_i propagating blocks of class i on `n` strands,
/// in canonical order.
pub fn enumerate_profiles(m: &ToneVector, n: usize) -> Result<Vec<TopProfile>> {
    let l = m.tone();
    if !m.fits(n) {
        return Err(Error::InvalidLabel { label: m.to_string(), l, n });
    }
    let mut out = Vec::new();
    let mut rgs = Vec::with_capacity(n);
    set_partitions(n, &mut rgs, 0, &mut |rgs| {
        let count = rgs.iter().map(|&x| x + 1).max().unwrap_or(0);
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (v, &b) in rgs.iter().enumerate() {
            blocks[b].push(v + 1);
        }
        let mut forced = vec![0usize; l];
        let mut free = Vec::new();
        for (k, b) in blocks.iter().enumerate() {
            match b.len() % l {
                0 => free.push(k),
                r => forced[r - 1] += 1,
            }
        }
        if (1..l).any(|i| forced[i - 1] != m.get(i)) || free.len() < m.get(l) {
            return;
        }
        for chosen in combinations(&free, m.get(l)) {
            let pb = blocks
                .iter()
                .enumerate()
                .map(|(k, b)| {
                    let class = match b.len() % l {
                        0 if chosen.contains(&k) => Some(l),
                        0 => None,
                        r => Some(r),
                    };
                    ProfileBlock { vertices: b.clone(), class }
                })
                .collect();
            out.push(TopProfile { n, blocks: pb });
        }
    });
    out.sort();
    Ok(out)
}

fn set_partitions(n: usize, rgs: &mut Vec<usize>, blocks: usize, f: &mut impl FnMut(&[usize])) {
    if rgs.len() == n {
        f(rgs);
        return;
    }
    for b in 0..=blocks {
        rgs.push(b);
        set_partitions(n, rgs, blocks.max(b + 1), f);
        rgs.pop();
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Reads a diagram whose bottom is the bottom of a^m as (top profile,
/// per-class matching), where `perms[i-1]` sends the j-th class-i block of the
/// profile to the index of the layout part it reaches. `None` when a
/// propagating part of the layout was cut or merged.
pub fn split_left(g: &Diagram, layout: &StandardLayout) -> Option<(TopProfile, Vec<Permutation>)> {
    let l = layout.tone();
    let n = g.top_arity();
    let count = g.block_count();
    let mut tops: Vec<Vec<usize>> = vec![Vec::new(); count];
    let mut bottoms: Vec<Vec<usize>> = vec![Vec::new(); count];
    for i in 1..=n {
        tops[g.top_label(i)].push(i);
    }
    for j in 1..=g.bottom_arity() {
        bottoms[g.bottom_label(j)].push(j);
    }
    let mut blocks = Vec::new();
    let mut reached: Vec<Vec<usize>> = vec![Vec::new(); l];
    for (t, b) in tops.into_iter().zip(bottoms) {
        if t.is_empty() {
            continue;
        }
        if b.is_empty() {
            blocks.push(ProfileBlock { vertices: t, class: None });
            continue;
        }
        let (i, k) = layout.locate(b[0])?;
        if layout.classes[i - 1][k] != b || class_of(t.len(), l) != i {
            return None;
        }
        reached[i - 1].push(k);
        blocks.push(ProfileBlock { vertices: t, class: Some(i) });
    }
    let perms: Option<Vec<Permutation>> = reached
        .into_iter()
        .enumerate()
        .map(|(c, r)| (r.len() == layout.classes[c].len()).then(|| Permutation::new(r).ok()).flatten())
        .collect();
    Some((TopProfile { n, blocks }, perms?))
}

/// Reads a diagram with the layout of a^m on both sides as the per-class
/// matching of top parts to bottom parts. `None` unless every propagating
/// part of the layout survives intact.
pub fn split_middle(g: &Diagram, layout: &StandardLayout) -> Option<Vec<Permutation>> {
    let (profile, perms) = split_left(&g.flip(), layout)?;
    // the flipped top must itself be exactly the layout
    let mut images: Vec<Vec<usize>> = layout.classes.iter().map(|c| vec![usize::MAX; c.len()]).collect();
    let mut seen = vec![0usize; layout.tone()];
    for b in profile.blocks() {
        let Some(i) = b.class else { continue };
        let (ci, k) = layout.locate(b.vertices[0])?;
        if ci != i || layout.classes[i - 1][k] != b.vertices {
            return None;
        }
        // the j-th class-i block of the flipped top is bottom part k of g and
        // reaches top part perms[j] of g
        let j = seen[i - 1];
        seen[i - 1] += 1;
        images[i - 1][perms[i - 1].apply(j)] = k;
    }
    images.into_iter().map(|v| Permutation::new(v).ok()).collect()
}

/// Polar form of a diagram whose vector is `m`: top profile, matching and
/// bottom profile. The matching sends the j-th class-i propagating block on
/// top to the index of the class-i block it meets on the bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarForm {
    pub left: TopProfile,
    pub matching: Vec<Permutation>,
    pub right: TopProfile,
}

pub fn polar_decompose(p: &Diagram, l: usize) -> Result<PolarForm> {
    let m = p.prop_vector(l)?;
    let n = p.top_arity();
    if p.bottom_arity() != n {
        return Err(invalid("polar decomposition needs a square diagram"));
    }
    let left = side_profile(p, l);
    let right = side_profile(&p.flip(), l);
    let mut matching = Vec::new();
    for i in 1..=l {
        let top_blocks: Vec<&ProfileBlock> = left.class_blocks(i).collect();
        let bottom_blocks: Vec<&ProfileBlock> = right.class_blocks(i).collect();
        let images = top_blocks
            .iter()
            .map(|tb| {
                let label = p.top_label(tb.vertices[0]);
                bottom_blocks.iter().position(|bb| p.bottom_label(bb.vertices[0]) == label).expect("propagating")
            })
            .collect();
        matching.push(Permutation::new(images)?);
    }
    debug_assert_eq!(left.vector(l), m);
    Ok(PolarForm { left, matching, right })
}

fn side_profile(p: &Diagram, l: usize) -> TopProfile {
    let n = p.top_arity();
    let count = p.block_count();
    let mut tops: Vec<Vec<usize>> = vec![Vec::new(); count];
    let mut through = vec![false; count];
    for i in 1..=n {
        tops[p.top_label(i)].push(i);
    }
    for j in 1..=p.bottom_arity() {
        through[p.bottom_label(j)] = true;
    }
    let blocks = tops
        .into_iter()
        .zip(through)
        .filter(|(t, _)| !t.is_empty())
        .map(|(t, th)| {
            let class = th.then(|| class_of(t.len(), l));
            ProfileBlock { vertices: t, class }
        })
        .collect();
    TopProfile { n, blocks }
}

pub fn polar_compose(form: &PolarForm) -> Result<Diagram> {
    let n = form.left.n;
    if form.right.n != n {
        return Err(invalid("profiles on different numbers of strands"));
    }
    let mut labels = vec![usize::MAX; 2 * n];
    let mut next = 0;
    let mut class_label: HashMap<(usize, usize), usize> = HashMap::new();
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for b in &form.left.blocks {
        for &v in &b.vertices {
            labels[v - 1] = next;
        }
        if let Some(i) = b.class {
            let j = seen.entry(i).or_insert(0);
            let perm = form.matching.get(i - 1).ok_or_else(|| invalid("missing class in matching"))?;
            class_label.insert((i, perm.apply(*j)), next);
            *j += 1;
        }
        next += 1;
    }
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for b in &form.right.blocks {
        let label = match b.class {
            Some(i) => {
                let k = seen.entry(i).or_insert(0);
                let lab = *class_label.get(&(i, *k)).ok_or_else(|| invalid("class counts differ"))?;
                *k += 1;
                lab
            }
            None => {
                next += 1;
                next - 1
            }
        };
        for &v in &b.vertices {
            labels[n + v - 1] = label;
        }
    }
    Diagram::from_labels(n, n, &labels)
}

/// One standard module, with its basis fixed.
pub struct StandardModule {
    l: usize,
    n: usize,
    mu: MultiPartition,
    m: ToneVector,
    layout: StandardLayout,
    profiles: Vec<TopProfile>,
    profile_diagrams: Vec<Diagram>,
    index: HashMap<TopProfile, usize>,
    rep: OuterRep,
    poset: PosetTable,
    cache: Mutex<HashMap<Vec<Permutation>, IntMatrix>>,
}

impl fmt::Debug for StandardModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StandardModule").field("l", &self.l).field("n", &self.n).field("mu", &self.mu).finish()
    }
}

impl StandardModule {
    pub fn new(mu: &MultiPartition, l: usize, n: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::ZeroTone);
        }
        if mu.tone() != l {
            return Err(invalid(format!("{mu} has {} components, expected {l}", mu.tone())));
        }
        let m = mu.sizes();
        if !m.fits(n) {
            return Err(Error::InvalidLabel { label: mu.to_string(), l, n });
        }
        let layout = StandardLayout::new(&m, n)?;
        let profiles = enumerate_profiles(&m, n)?;
        let profile_diagrams = profiles.iter().map(|p| p.diagram(&layout)).collect::<Result<Vec<_>>>()?;
        let index = profiles.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(StandardModule {
            l,
            n,
            mu: mu.clone(),
            m,
            layout,
            profiles,
            profile_diagrams,
            index,
            rep: OuterRep::new(mu),
            poset: PosetTable::new(l, n)?,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn tone(&self) -> usize {
        self.l
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &MultiPartition {
        &self.mu
    }

    pub fn vector(&self) -> &ToneVector {
        &self.m
    }

    pub fn layout(&self) -> &StandardLayout {
        &self.layout
    }

    pub fn profiles(&self) -> &[TopProfile] {
        &self.profiles
    }

    pub fn profile_diagrams(&self) -> &[Diagram] {
        &self.profile_diagrams
    }

    pub fn profile_index(&self, t: &TopProfile) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn specht(&self) -> &OuterRep {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.profiles.len() * self.rep.dim()
    }

    /// Basis index of (profile index, tableau tuple index).
    pub fn basis_index(&self, profile: usize, tableau: usize) -> usize {
        profile * self.rep.dim() + tableau
    }

    /// (profile index, tableau tuple index) of a basis index.
    pub fn split_index(&self, idx: usize) -> (usize, usize) {
        (idx / self.rep.dim(), idx % self.rep.dim())
    }

    /// Matrix of a per-class permutation tuple on the tableau factor.
    pub fn specht_matrix(&self, perms: &[Permutation]) -> Result<IntMatrix> {
        let mut cache = self.cache.lock().expect("cache lock");
        if let Some(m) = cache.get(perms) {
            return Ok(m.clone());
        }
        let m = self.rep.matrix(perms)?;
        cache.insert(perms.to_vec(), m.clone());
        Ok(m)
    }

    /// The permutation acting on the tableau factor when a diagram reads back
    /// with matching `perms`.
    pub(crate) fn tableau_action(perms: &[Permutation]) -> Vec<Permutation> {
        perms.iter().map(Permutation::inverse).collect()
    }

    fn check_vector(&self, g: &Diagram) -> Result<()> {
        let v = g.prop_vector(self.l)?;
        let below = match (self.poset.index_of(&v), self.poset.index_of(&self.m)) {
            (Some(a), Some(b)) => a != b && self.poset.leq_index(a, b),
            _ => false,
        };
        if below {
            Ok(())
        } else {
            Err(Error::UnexpectedVector { found: v.to_string(), expected: self.m.to_string() })
        }
    }

    /// Image of basis profile `p` under `d`: δ-exponent, new profile index and
    /// the tableau-factor permutation, or `None` when it lands below m.
    pub fn act_on_profile(&self, d: &Diagram, p: usize) -> Result<Option<(u32, usize, Vec<Permutation>)>> {
        let (k, g) = d.compose(&self.profile_diagrams[p])?;
        if g.prop_number() < self.m.height() {
            self.check_vector(&g)?;
            return Ok(None);
        }
        let (profile, perms) = split_left(&g, &self.layout).ok_or_else(|| Error::UnexpectedVector {
            found: g.prop_vector(self.l).map(|v| v.to_string()).unwrap_or_default(),
            expected: self.m.to_string(),
        })?;
        let q =
            self.profile_index(&profile).ok_or_else(|| invalid(format!("profile {profile} is not in the basis")))?;
        Ok(Some((k, q, Self::tableau_action(&perms))))
    }

    /// Matrix of a diagram acting on the left.
    pub fn action(&self, d: &Diagram) -> Result<PolyMatrix> {
        if d.top_arity() != self.n || d.bottom_arity() != self.n {
            return Err(invalid(format!("diagram {d} does not act on {} strands", self.n)));
        }
        if !d.is_tone(self.l) {
            return Err(Error::NotTone(self.l));
        }
        let dim = self.dim();
        let sd = self.rep.dim();
        let mut out = PolyMatrix::zeros(dim, dim);
        for p in 0..self.profiles.len() {
            let Some((k, q, sigma)) = self.act_on_profile(d, p)? else { continue };
            let sm = self.specht_matrix(&sigma)?;
            for b in 0..sd {
                for a in 0..sd {
                    let c = &sm[(a, b)];
                    if !c.is_zero() {
                        out[(q * sd + a, p * sd + b)] = DeltaPoly::monomial(c.clone(), k);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of an algebra element.
    pub fn action_element(&self, x: &Element) -> Result<PolyMatrix> {
        if x.tone() != self.l || x.arity() != (self.n, self.n) {
            return Err(invalid("element does not act on this module"));
        }
        let mut out = PolyMatrix::zeros(self.dim(), self.dim());
        for (d, c) in x.terms() {
            out = out.add(&self.action(d)?.scale(c));
        }
        Ok(out)
    }

    /// Named generator matrices: s_i, the merge of strands 1,2 and the loop
    /// projector.
    pub fn generator_matrices(&self) -> Result<Vec<(String, PolyMatrix)>> {
        let gens = generators(self.l, self.n)?;
        let names = generator_names(self.l, self.n);
        gens.iter().zip(names).map(|(g, name)| Ok((name, self.action(g)?))).collect()
    }

    /// Reads an element of the left ideal of a^m as a combination of basis
    /// pairs (profile, matching), dropping terms below m.
    pub fn left_ideal_reduce(&self, x: &Element) -> Result<Vec<(DeltaPoly, TopProfile, Vec<Permutation>)>> {
        let mut acc: Vec<(DeltaPoly, TopProfile, Vec<Permutation>)> = Vec::new();
        for (d, c) in x.terms() {
            if d.prop_number() < self.m.height() {
                self.check_vector(d)?;
                continue;
            }
            let (profile, perms) = split_left(d, &self.layout).ok_or_else(|| Error::UnexpectedVector {
                found: d.prop_vector(self.l).map(|v| v.to_string()).unwrap_or_default(),
                expected: self.m.to_string(),
            })?;
            match acc.iter_mut().find(|(_, t, s)| *t == profile && *s == perms) {
                Some(entry) => entry.0 += c,
                None => acc.push((c.clone(), profile, perms)),
            }
        }
        acc.retain(|(c, _, _)| !c.is_zero());
        Ok(acc)
    }
}

pub fn generator_names(l: usize, n: usize) -> Vec<String> {
    let mut out: Vec<String> = (1..n).map(|i| format!("s{i}")).collect();
    if n >= 2 {
        out.push("merge12".into());
    }
    if n >= l {
        out.push("loop".into());
    }
    out
}

/// Every valid label at (l, n) with its standard module dimension.
pub fn labels_with_dims(l: usize, n: usize) -> Result<Vec<(MultiPartition, BigInt)>> {
    let mut out = Vec::new();
    for m in crate::gamma::gamma_set(l, n)? {
        let t = BigInt::from(enumerate_profiles(&m, n)?.len());
        for mu in crate::symmetric::multipartitions(&m) {
            let d = &t * mu.dimension();
            out.push((mu, d));
        }
    }
    Ok(out)
}

/// dim of the algebra against Σ dim(Δ_μ)²; returns both sides.
pub fn sum_of_squares_check(l: usize, n: usize) -> Result<(BigInt, BigInt)> {
    let mut algebra_dim = 0usize;
    crate::algebra::for_each_tone_diagram(l, n, n, |_| algebra_dim += 1)?;
    let squares = labels_with_dims(l, n)?.into_iter().map(|(_, d)| &d * &d).sum();
    Ok((BigInt::from(algebra_dim), squares))
}
