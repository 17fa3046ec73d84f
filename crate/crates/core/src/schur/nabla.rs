//! ∇(λ) as the span of bideterminants inside S^{λ_1}V ⊗ … ⊗ S^{λ_k}V.
//!
//! Row `r` of the shape carries the variables `x_{r,1}, …, x_{r,n}`; a monomial is
//! its `k × n` exponent matrix. For a tableau `T` the bideterminant is the product
//! over columns `c` of `det[x_{r, T(s,c)}]_{r,s}`. Semistandard `T` give a basis,
//! the canonical tableau gives the highest weight vector, and `E_{ab}^{(k)}` acts on
//! a monomial by moving `k` units from column `b` to column `a`, spread over rows,
//! with coefficient `∏_r C(α_{rb}, k_r)`.

use rustc_hash::FxHashMap;

use crate::character::{distinct_permutations, Character};
use crate::error::{Error, Result};
use crate::gf::{binom_mod, FpMatrix};
use crate::partition::{enumerate_partitions, Partition};
use crate::schur::module::{Op, OpSet, PolyModule};
use crate::tableau::{ssyt, Tableau};

type Mono = Box<[u8]>;

struct Space {
    weight: Vec<u32>,
    monos: Vec<Mono>,
    index: FxHashMap<Mono, u32>,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

/// The explicit polynomial model of ∇(λ) over GL_n.
pub struct BideterminantModel {
    p: u32,
    n: usize,
    rows: usize,
    lambda: Partition,
    spaces: Vec<Space>,
    index: FxHashMap<Vec<u32>, usize>,
}

fn signed_permutations(h: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..h).collect();
    // Heap's algorithm flips parity on every swap
    fn heap(k: usize, perm: &mut Vec<usize>, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) -> bool {
        if k <= 1 {
            out.push((perm.clone(), odd));
            return odd;
        }
        let mut odd = heap(k - 1, perm, odd, out);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
            odd = !odd;
            odd = heap(k - 1, perm, odd, out);
        }
        odd
    }
    heap(h, &mut perm, false, &mut out);
    out
}

impl BideterminantModel {
    pub fn new(lambda: &Partition, n: usize, p: u32) -> Result<Self> {
        if lambda.len() > n {
            return Err(Error::TooManyParts { partition: lambda.clone(), n });
        }
        let rows = lambda.len();
        let d = lambda.size();
        let conj = lambda.conjugate();
        let perms: Vec<Vec<(Vec<usize>, bool)>> = (0..=rows).map(signed_permutations).collect();

        let mut weights = Vec::new();
        for mu in enumerate_partitions(n, d) {
            if lambda.dominates_unchecked(&mu) {
                weights.extend(distinct_permutations(&mu.padded(n)));
            }
        }

        let mut spaces = Vec::with_capacity(weights.len());
        let mut index = FxHashMap::default();
        for w in weights {
            let tabs = ssyt(lambda, &w);
            if tabs.is_empty() {
                continue;
            }
            let mut space = Space { weight: w.clone(), monos: Vec::new(), index: FxHashMap::default(), basis: FpMatrix::zeros(p, 0, 0), pivots: Vec::new() };
            let polys: Vec<FxHashMap<Mono, u32>> =
                tabs.iter().map(|t| bideterminant(t, &conj, rows, n, p, &perms)).collect();
            for poly in &polys {
                for m in poly.keys() {
                    if !space.index.contains_key(m) {
                        space.index.insert(m.clone(), space.monos.len() as u32);
                        space.monos.push(m.clone());
                    }
                }
            }
            let cols = space.monos.len();
            let mut mat = FpMatrix::zeros(p, polys.len(), cols);
            for (r, poly) in polys.iter().enumerate() {
                for (m, &c) in poly {
                    mat.set(r, space.index[m] as usize, c);
                }
            }
            let (basis, rank, pivots) = mat.rref();
            if rank != tabs.len() {
                return Err(Error::internal(format!(
                    "bideterminants of shape {lambda} at weight {w:?} have rank {rank}, expected {}",
                    tabs.len()
                )));
            }
            space.basis = basis;
            space.pivots = pivots;
            index.insert(w, spaces.len());
            spaces.push(space);
        }
        Ok(Self { p, n, rows, lambda: lambda.clone(), spaces, index })
    }

    pub fn dim(&self) -> usize {
        self.spaces.iter().map(|s| s.basis.rows()).sum()
    }

    fn columns(&self, op: Op) -> (usize, usize) {
        if op.raise {
            (op.i as usize, op.i as usize + 1)
        } else {
            (op.i as usize + 1, op.i as usize)
        }
    }

    /// Matrix of `op` from weight space `s` to weight space `t`, read off at target pivots.
    fn block(&self, s: usize, t: usize, op: Op) -> FpMatrix {
        let (a, b) = self.columns(op);
        let (n, p) = (self.n, self.p);
        let src = &self.spaces[s];
        let tgt = &self.spaces[t];
        let dim_s = src.basis.rows();
        let mut out = FpMatrix::zeros(p, tgt.basis.rows(), dim_s);
        let mut split = vec![0u32; self.rows];
        for (r, &pc) in tgt.pivots.iter().enumerate() {
            let target = &tgt.monos[pc];
            let mut acc = vec![0u64; dim_s];
            let caps: Vec<u32> = (0..self.rows).map(|row| target[row * n + a] as u32).collect();
            each_split(op.k, &caps, 0, &mut split, &mut |ks| {
                let mut m: Vec<u8> = target.to_vec();
                let mut coef = 1u32;
                for (row, &kr) in ks.iter().enumerate() {
                    if kr == 0 {
                        continue;
                    }
                    m[row * n + a] -= kr as u8;
                    m[row * n + b] += kr as u8;
                    coef = coef * binom_mod(m[row * n + b] as u64, kr as u64, p) % p;
                }
                if coef == 0 {
                    return;
                }
                if let Some(&col) = src.index.get(m.as_slice()) {
                    for (j, x) in acc.iter_mut().enumerate() {
                        let v = src.basis.get(j, col as usize);
                        if v != 0 {
                            *x += (coef * v) as u64;
                        }
                    }
                }
            });
            for (j, x) in acc.into_iter().enumerate() {
                out.set(r, j, (x % p as u64) as u32);
            }
        }
        out
    }

    /// Full image of a basis vector under `op`, as a polynomial.
    fn image(&self, s: usize, j: usize, op: Op) -> FxHashMap<Mono, u32> {
        let (a, b) = self.columns(op);
        let (n, p) = (self.n, self.p);
        let src = &self.spaces[s];
        let mut out: FxHashMap<Mono, u32> = FxHashMap::default();
        let mut split = vec![0u32; self.rows];
        for (col, mono) in src.monos.iter().enumerate() {
            let c = src.basis.get(j, col);
            if c == 0 {
                continue;
            }
            let caps: Vec<u32> = (0..self.rows).map(|row| mono[row * n + b] as u32).collect();
            each_split(op.k, &caps, 0, &mut split, &mut |ks| {
                let mut m: Vec<u8> = mono.to_vec();
                let mut coef = c;
                for (row, &kr) in ks.iter().enumerate() {
                    coef = coef * binom_mod(m[row * n + b] as u64, kr as u64, p) % p;
                    m[row * n + b] -= kr as u8;
                    m[row * n + a] += kr as u8;
                }
                let e = out.entry(m.into_boxed_slice()).or_insert(0);
                *e = (*e + coef) % p;
            });
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Checks that every operator image lies in the span of the basis and matches the
    /// matrix read off at pivots.
    pub fn verify_closure(&self, opset: OpSet) -> Result<()> {
        let d = self.lambda.size();
        for op in opset.ops(self.n, d, self.p) {
            for s in 0..self.spaces.len() {
                let tw = op.shift(&self.spaces[s].weight);
                let t = tw.as_ref().and_then(|w| self.index.get(w).copied());
                let blk = t.map(|t| self.block(s, t, op));
                for j in 0..self.spaces[s].basis.rows() {
                    let img = self.image(s, j, op);
                    let Some(t) = t else {
                        if !img.is_empty() {
                            return Err(Error::internal(format!("{op:?} leaves the weights of ∇({})", self.lambda)));
                        }
                        continue;
                    };
                    let tgt = &self.spaces[t];
                    let blk = blk.as_ref().unwrap();
                    let mut expect = vec![0u32; tgt.monos.len()];
                    for r in 0..tgt.basis.rows() {
                        crate::gf::axpy(&mut expect, tgt.basis.row(r), blk.get(r, j), self.p);
                    }
                    for (m, &c) in &img {
                        match tgt.index.get(m) {
                            Some(&col) if expect[col as usize] == c => expect[col as usize] = 0,
                            _ => {
                                return Err(Error::internal(format!(
                                    "{op:?} image of basis vector {j} at {:?} is not in ∇({})",
                                    self.spaces[s].weight, self.lambda
                                )))
                            }
                        }
                    }
                    if expect.iter().any(|&x| x != 0) {
                        return Err(Error::internal(format!("{op:?} matrix mismatch at {:?}", self.spaces[s].weight)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn into_module(self, opset: OpSet) -> Result<PolyModule> {
        let d = self.lambda.size();
        let ops = opset.ops(self.n, d, self.p);
        let mut blocks = FxHashMap::default();
        for s in 0..self.spaces.len() {
            for &op in &ops {
                let Some(tw) = op.shift(&self.spaces[s].weight) else { continue };
                let Some(&t) = self.index.get(&tw) else { continue };
                let b = self.block(s, t, op);
                if !b.is_zero() {
                    blocks.insert((self.spaces[s].weight.clone(), op), b);
                }
            }
        }
        let wd = self.spaces.iter().map(|s| (s.weight.clone(), s.basis.rows())).collect();
        let m = PolyModule::from_parts(self.p, self.n, d, wd, ops, blocks)?;
        m.with_highest(self.lambda.clone(), vec![1])
    }
}

/// Calls `f` with every split of `k` into parts bounded by `caps`.
fn each_split(k: u32, caps: &[u32], i: usize, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if i == caps.len() {
        if k == 0 {
            f(cur);
        }
        return;
    }
    let rest: u32 = caps[i + 1..].iter().sum();
    let lo = k.saturating_sub(rest);
    for x in lo..=caps[i].min(k) {
        cur[i] = x;
        each_split(k - x, caps, i + 1, cur, f);
    }
    cur[i] = 0;
}

fn bideterminant(
    t: &Tableau,
    conj: &Partition,
    rows: usize,
    n: usize,
    p: u32,
    perms: &[Vec<(Vec<usize>, bool)>],
) -> FxHashMap<Mono, u32> {
    let mut poly: FxHashMap<Vec<u8>, u32> = FxHashMap::default();
    poly.insert(vec![0u8; rows * n], 1);
    for (c, &h) in conj.parts().iter().enumerate() {
        let h = h as usize;
        let vals: Vec<usize> = (0..h).map(|s| t[s][c] as usize).collect();
        let mut next: FxHashMap<Vec<u8>, u32> = FxHashMap::default();
        for (m, &coef) in &poly {
            for (perm, odd) in &perms[h] {
                let mut m2 = m.clone();
                for r in 0..h {
                    m2[r * n + vals[perm[r]]] += 1;
                }
                let c2 = if *odd { (p - coef) % p } else { coef };
                let e = next.entry(m2).or_insert(0);
                *e = (*e + c2) % p;
            }
        }
        next.retain(|_, v| *v != 0);
        poly = next;
    }
    poly.into_iter().map(|(m, c)| (m.into_boxed_slice(), c)).collect()
}

/// ∇(λ) over GL_n; partitions with exactly n parts are built as a determinant twist.
pub fn costandard(lambda: &Partition, n: usize, p: u32, opset: OpSet) -> Result<PolyModule> {
    crate::gf::check_prime(p)?;
    if lambda.len() > n {
        return Err(Error::TooManyParts { partition: lambda.clone(), n });
    }
    if lambda.is_empty() {
        return Ok(PolyModule::trivial(n, p));
    }
    if lambda.len() == n {
        let c = lambda.part(n - 1);
        let base = Partition::new(lambda.padded(n).into_iter().map(|x| x - c).collect())?;
        let m = costandard(&base, n, p, opset)?;
        return Ok(m.twist(c));
    }
    BideterminantModel::new(lambda, n, p)?.into_module(opset)
}

/// Cheap dimension of ∇(λ) over GL_n without building it.
pub fn predicted_dim(lambda: &Partition, n: usize) -> Result<u64> {
    Ok(Character::weyl(lambda, n)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn permutation_signs() {
        let s3 = signed_permutations(3);
        assert_eq!(s3.len(), 6);
        assert_eq!(s3.iter().filter(|x| x.1).count(), 3);
        for (perm, odd) in &s3 {
            let inv = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
            assert_eq!(inv % 2 == 1, *odd);
        }
    }

    #[test]
    fn dimensions_match_characters() {
        for (l, n) in [(part![2, 1], 3), (part![3, 1], 3), (part![2, 2], 3), (part![5], 3), (part![3, 2, 1], 4)] {
            for p in [2, 3] {
                let m = costandard(&l, n, p, OpSet::PrimePowers).unwrap();
                assert_eq!(m.character(), Character::weyl(&l, n).unwrap(), "{l} p={p}");
            }
        }
    }

    #[test]
    fn closure_small() {
        for (l, n) in [(part![2, 1], 3), (part![2, 2], 3), (part![3, 1, 1], 4), (part![4, 2], 3)] {
            for p in [2, 3, 5] {
                let model = BideterminantModel::new(&l, n, p).unwrap();
                model.verify_closure(OpSet::All).unwrap();
            }
        }
    }

    #[test]
    fn twisted_full_length() {
        let m = costandard(&part![3, 2, 1], 3, 3, OpSet::PrimePowers).unwrap();
        assert_eq!(m.dim(), 8);
        assert_eq!(m.label(), Some(&part![3, 2, 1]));
        let det = costandard(&part![1, 1, 1], 3, 2, OpSet::PrimePowers).unwrap();
        assert_eq!(det.dim(), 1);
    }
}
