//! Weight-graded polynomial GL_n-modules over GF(p) with divided-power operators.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rustc_hash::FxHashMap;

use crate::character::Character;
use crate::error::{Error, Result};
use crate::gf::{FpMatrix, Subspace};
use crate::partition::Partition;

/// `e_i^{(k)}` when `raise`, else `f_i^{(k)}`; `i` is 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Op {
    pub raise: bool,
    pub i: u8,
    pub k: u32,
}

impl Op {
    pub fn e(i: usize, k: u32) -> Self {
        Self { raise: true, i: i as u8, k }
    }

    pub fn f(i: usize, k: u32) -> Self {
        Self { raise: false, i: i as u8, k }
    }

    /// The τ-partner: e ↔ f with the same index and power.
    pub fn opposite(self) -> Self {
        Self { raise: !self.raise, ..self }
    }

    /// Weight after applying the operator, if it stays nonnegative.
    pub fn shift(self, w: &[u32]) -> Option<Vec<u32>> {
        let (up, down) = if self.raise { (self.i as usize, self.i as usize + 1) } else { (self.i as usize + 1, self.i as usize) };
        if w[down] < self.k {
            return None;
        }
        let mut v = w.to_vec();
        v[down] -= self.k;
        v[up] += self.k;
        Some(v)
    }
}

impl fmt::Debug for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}^({})", if self.raise { 'e' } else { 'f' }, self.i + 1, self.k)
    }
}

/// Which divided powers make up the generating set of operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpSet {
    /// `k ∈ {1, p, p², …}`; these generate every divided power mod p.
    PrimePowers,
    /// Every `1 ≤ k ≤ d`.
    All,
}

impl OpSet {
    pub fn ops(self, n: usize, d: u32, p: u32) -> Vec<Op> {
        let ks: Vec<u32> = match self {
            OpSet::All => (1..=d).collect(),
            OpSet::PrimePowers => {
                let mut v = Vec::new();
                let mut k = 1u32;
                while k <= d {
                    v.push(k);
                    k *= p;
                }
                v
            }
        };
        let mut out = Vec::new();
        for raise in [true, false] {
            for i in 0..n.saturating_sub(1) {
                for &k in &ks {
                    out.push(Op { raise, i: i as u8, k });
                }
            }
        }
        out
    }
}

/// Sum of j·ν_j: increases by k under f_i^{(k)}.
pub fn height(w: &[u32]) -> u64 {
    w.iter().enumerate().map(|(j, &x)| j as u64 * x as u64).sum()
}

pub fn is_dominant(w: &[u32]) -> bool {
    w.windows(2).all(|x| x[0] >= x[1])
}

#[derive(Clone)]
pub struct PolyModule {
    p: u32,
    n: usize,
    d: u32,
    weights: Vec<Vec<u32>>,
    index: FxHashMap<Vec<u32>, usize>,
    dims: Vec<usize>,
    ops: Vec<Op>,
    blocks: FxHashMap<(usize, Op), FpMatrix>,
    label: Option<Partition>,
    highest: Option<(usize, Vec<u32>)>,
}

impl fmt::Debug for PolyModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PolyModule(n={}, d={}, p={}, dim={}, label={:?})",
            self.n,
            self.d,
            self.p,
            self.dim(),
            self.label
        )
    }
}

impl PolyModule {
    /// Assembles a module from weight spaces and operator blocks.
    ///
    /// `blocks[(src, op)]` maps the `src` weight space to the weight space of
    /// `op.shift(weights[src])`; absent blocks are zero.
    pub fn from_parts(
        p: u32,
        n: usize,
        d: u32,
        weights_and_dims: Vec<(Vec<u32>, usize)>,
        ops: Vec<Op>,
        blocks: FxHashMap<(Vec<u32>, Op), FpMatrix>,
    ) -> Result<Self> {
        let mut wd: Vec<(Vec<u32>, usize)> = weights_and_dims.into_iter().filter(|(_, k)| *k > 0).collect();
        wd.sort_by(|a, b| height(&a.0).cmp(&height(&b.0)).then_with(|| b.0.cmp(&a.0)));
        let weights: Vec<Vec<u32>> = wd.iter().map(|x| x.0.clone()).collect();
        let dims: Vec<usize> = wd.iter().map(|x| x.1).collect();
        let index: FxHashMap<Vec<u32>, usize> = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut out = FxHashMap::default();
        for ((w, op), m) in blocks {
            let Some(&s) = index.get(&w) else { continue };
            let Some(t) = op.shift(&w).and_then(|tw| index.get(&tw).copied()) else { continue };
            if (m.rows(), m.cols()) != (dims[t], dims[s]) {
                return Err(Error::internal(format!("block {op:?} at {w:?} has the wrong shape")));
            }
            if !m.is_zero() {
                out.insert((s, op), m);
            }
        }
        Ok(Self { p, n, d, weights, index, dims, ops, blocks: out, label: None, highest: None })
    }

    pub fn with_highest(mut self, label: Partition, vector: Vec<u32>) -> Result<Self> {
        let w = label.padded(self.n);
        let idx = self.weight_index(&w).ok_or_else(|| Error::internal(format!("{label} is not a weight")))?;
        self.highest = Some((idx, vector));
        self.label = Some(label);
        Ok(self)
    }

    /// The trivial module of degree 0.
    pub fn trivial(n: usize, p: u32) -> Self {
        let m = Self::from_parts(p, n, 0, vec![(vec![0; n], 1)], Vec::new(), FxHashMap::default()).unwrap();
        m.with_highest(Partition::empty(), vec![1]).unwrap()
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn degree(&self) -> u32 {
        self.d
    }
    pub fn ops(&self) -> &[Op] {
        &self.ops
    }
    pub fn label(&self) -> Option<&Partition> {
        self.label.as_ref()
    }
    pub fn highest(&self) -> Option<(usize, &[u32])> {
        self.highest.as_ref().map(|(w, v)| (*w, v.as_slice()))
    }
    pub fn weights(&self) -> &[Vec<u32>] {
        &self.weights
    }
    pub fn weight(&self, idx: usize) -> &[u32] {
        &self.weights[idx]
    }
    pub fn weight_index(&self, w: &[u32]) -> Option<usize> {
        self.index.get(w).copied()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim_at(&self, idx: usize) -> usize {
        self.dims[idx]
    }
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Weight-space index reached by `op` from `src`, if it is a weight of the module.
    pub fn target(&self, src: usize, op: Op) -> Option<usize> {
        op.shift(&self.weights[src]).and_then(|w| self.weight_index(&w))
    }

    pub fn block(&self, src: usize, op: Op) -> Option<&FpMatrix> {
        self.blocks.get(&(src, op))
    }

    /// Applies `op` to `v` in weight space `src`; `None` when the image is forced to vanish.
    pub fn apply(&self, op: Op, src: usize, v: &[u32]) -> Option<(usize, Vec<u32>)> {
        let t = self.target(src, op)?;
        let b = self.block(src, op)?;
        Some((t, b.mul_vec(v)))
    }

    /// Same as [`apply`](Self::apply) but always returns a vector in the target space.
    pub fn apply_to(&self, op: Op, src: usize, v: &[u32]) -> Option<(usize, Vec<u32>)> {
        let t = self.target(src, op)?;
        match self.block(src, op) {
            Some(b) => Some((t, b.mul_vec(v))),
            None => Some((t, vec![0; self.dims[t]])),
        }
    }

    /// Matrix of `op` from `src` (zero matrix if the block is absent).
    pub fn op_matrix(&self, src: usize, op: Op) -> Option<(usize, FpMatrix)> {
        let t = self.target(src, op)?;
        Some((t, self.block(src, op).cloned().unwrap_or_else(|| FpMatrix::zeros(self.p, self.dims[t], self.dims[src]))))
    }

    pub fn character(&self) -> Character {
        Character {
            n: self.n,
            coeffs: self.weights.iter().zip(&self.dims).map(|(w, &k)| (w.clone(), k as u64)).collect(),
        }
    }

    pub fn dominant_weights(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| is_dominant(&self.weights[i])).collect()
    }

    /// Tensor with det^c.
    pub fn twist(&self, c: u32) -> PolyModule {
        if c == 0 {
            return self.clone();
        }
        let weights: Vec<Vec<u32>> = self.weights.iter().map(|w| w.iter().map(|x| x + c).collect()).collect();
        let index = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        PolyModule {
            p: self.p,
            n: self.n,
            d: self.d + c * self.n as u32,
            weights,
            index,
            dims: self.dims.clone(),
            ops: self.ops.clone(),
            blocks: self.blocks.clone(),
            label: self.label.as_ref().map(|l| l.add_columns(self.n, c)),
            highest: self.highest.clone(),
        }
    }

    /// Contravariant dual: same weight spaces, `op` acts by the transpose of its τ-partner.
    pub fn contravariant_dual(&self) -> PolyModule {
        let mut blocks = FxHashMap::default();
        for (&(s, op), m) in &self.blocks {
            let t = self.target(s, op).expect("block target");
            blocks.insert((t, op.opposite()), m.transpose());
        }
        let highest = self.highest.as_ref().map(|(w, v)| (*w, v.clone()));
        PolyModule { blocks, highest, ..self.clone() }
    }

    /// {w in the μ-weight space : e_i^{(k)} w = 0 for every generating raising operator}.
    pub fn maximal_vectors(&self, mu: &[u32]) -> Subspace {
        let Some(w) = self.weight_index(mu) else {
            return Subspace::zero(self.p, 0);
        };
        let mut rows = FpMatrix::zeros(self.p, 0, self.dims[w]);
        for &op in self.ops.iter().filter(|o| o.raise) {
            if let Some(b) = self.block(w, op) {
                rows = rows.vstack(b);
            }
        }
        Subspace::span(&rows.kernel())
    }

    /// Smallest operator-stable subspace containing `gens`.
    pub fn generated_submodule(&self, gens: &[(usize, Vec<u32>)]) -> Submodule {
        let mut sub = Submodule::zero(self);
        self.close(&mut sub, gens);
        sub
    }

    /// Enlarges `sub` to the submodule generated by `sub` and `gens`.
    pub fn close(&self, sub: &mut Submodule, gens: &[(usize, Vec<u32>)]) {
        let mut queue = VecDeque::new();
        for (w, v) in gens {
            if sub.spaces[*w].insert(v) {
                queue.push_back((*w, v.clone()));
            }
        }
        while let Some((w, v)) = queue.pop_front() {
            for &op in &self.ops {
                if let Some((t, u)) = self.apply(op, w, &v) {
                    if sub.spaces[t].insert(&u) {
                        queue.push_back((t, u));
                    }
                }
            }
        }
    }

    pub fn is_stable(&self, sub: &Submodule) -> bool {
        for w in 0..self.weights.len() {
            for r in 0..sub.spaces[w].dim() {
                let v = sub.spaces[w].basis().row(r);
                for &op in &self.ops {
                    if let Some((t, u)) = self.apply(op, w, v) {
                        if !sub.spaces[t].contains(&u) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The quotient by an operator-stable subspace, in complement coordinates.
    pub fn quotient(&self, sub: &Submodule) -> Result<PolyModule> {
        if !self.is_stable(sub) {
            return Err(Error::NotStable("subspace is not closed under the operators".into()));
        }
        let comps: Vec<Vec<usize>> = sub.spaces.iter().map(|s| s.complement_columns()).collect();
        let projs: Vec<FpMatrix> = sub.spaces.iter().map(|s| s.quotient_projection()).collect();
        let mut blocks = FxHashMap::default();
        for (&(s, op), m) in &self.blocks {
            let t = self.target(s, op).unwrap();
            if comps[s].is_empty() || comps[t].is_empty() {
                continue;
            }
            let pm = projs[t].mul(m);
            let mut q = FpMatrix::zeros(self.p, comps[t].len(), comps[s].len());
            for r in 0..comps[t].len() {
                for (c, &col) in comps[s].iter().enumerate() {
                    q.set(r, c, pm.get(r, col));
                }
            }
            blocks.insert((self.weights[s].clone(), op), q);
        }
        let wd = self.weights.iter().cloned().zip(comps.iter().map(|c| c.len())).collect();
        let mut out = PolyModule::from_parts(self.p, self.n, self.d, wd, self.ops.clone(), blocks)?;
        if let (Some(l), Some((w, v))) = (&self.label, &self.highest) {
            let qv = sub.spaces[*w].quotient_coordinates(v);
            if qv.iter().any(|&x| x != 0) {
                out = out.with_highest(l.clone(), qv)?;
            }
        }
        Ok(out)
    }
}

/// One subspace per weight space of a fixed module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub spaces: Vec<Subspace>,
}

impl Submodule {
    pub fn zero(m: &PolyModule) -> Self {
        Self { spaces: m.dims.iter().map(|&k| Subspace::zero(m.p, k)).collect() }
    }

    pub fn full(m: &PolyModule) -> Self {
        Self { spaces: m.dims.iter().map(|&k| Subspace::full(m.p, k)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.spaces.iter().map(|s| s.dim()).sum()
    }

    pub fn character(&self, m: &PolyModule) -> Character {
        Character {
            n: m.n,
            coeffs: self
                .spaces
                .iter()
                .enumerate()
                .filter(|(_, s)| s.dim() > 0)
                .map(|(w, s)| (m.weights[w].clone(), s.dim() as u64))
                .collect(),
        }
    }

    pub fn dominant_character(&self, m: &PolyModule) -> BTreeMap<Partition, u64> {
        m.dominant_weights()
            .into_iter()
            .filter(|&w| self.spaces[w].dim() > 0)
            .map(|w| (Partition::new(m.weights[w].clone()).unwrap(), self.spaces[w].dim() as u64))
            .collect()
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        Ok(Submodule {
            spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.sum(b)).collect::<Result<_>>()?,
        })
    }
}
