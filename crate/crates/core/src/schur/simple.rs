//! L(μ) as the image of Δ(μ) → ∇(μ), and Hom(L(μ), −).
//!
//! Δ(μ) is the contravariant dual of ∇(μ). A basis of Δ(μ) is chosen as a tree of
//! lowering words applied to v₊ (each node is one operator applied to an earlier
//! node). Applying the same words to the highest weight vector h of ∇(μ) gives the
//! map ψ: Δ(μ) → ∇(μ) whose image is L(μ) and whose kernel, the radical of the
//! contravariant form, is spanned weight by weight by the left kernels of ψ.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf::{axpy, FpMatrix, Subspace};
use crate::partition::Partition;
use crate::schur::module::{is_dominant, Op, PolyModule, Submodule};

#[derive(Clone, Debug)]
pub struct WordNode {
    pub parent: Option<usize>,
    pub op: Option<Op>,
    /// Weight-space index in the ∇(μ) the data was built from.
    pub weight: usize,
}

/// Radical relations at one dominant weight: each row is a combination of `nodes`.
#[derive(Clone, Debug)]
pub struct Relations {
    pub weight: Vec<u32>,
    pub nodes: Vec<usize>,
    pub coeffs: FpMatrix,
}

#[derive(Clone, Debug)]
pub struct SimpleData {
    pub label: Partition,
    pub n: usize,
    pub p: u32,
    pub nodes: Vec<WordNode>,
    /// dim L(μ)_ν for every weight ν of ∇(μ), indexed like the module's weights.
    pub simple_dims: Vec<usize>,
    pub weights: Vec<Vec<u32>>,
    pub relations: Vec<Relations>,
    /// Nodes needed to evaluate the relations, in creation order.
    needed: Vec<usize>,
    /// Gram matrices of the contravariant form on dominant weight spaces, in word coordinates.
    pub gram: BTreeMap<Vec<u32>, (Vec<usize>, FpMatrix)>,
}

impl SimpleData {
    /// Builds the word basis, ψ, and relations from ∇(μ).
    pub fn from_costandard(nabla: &PolyModule) -> Result<Self> {
        let Words { label, top, nodes, dvec, img, at_weight } = build_words(nabla)?;
        let p = nabla.p();
        let nw = nabla.weights().len();

        let mut simple_dims = vec![0usize; nw];
        let mut relations = Vec::new();
        let mut gram = BTreeMap::new();
        for w in 0..nw {
            let ids = &at_weight[w];
            let rows: Vec<Vec<u32>> = ids.iter().map(|&i| img[i].clone()).collect();
            let phi = FpMatrix::from_residue_rows(p, nabla.dim_at(w), rows);
            simple_dims[w] = phi.rank();
            if !is_dominant(nabla.weight(w)) {
                continue;
            }
            // Gram(x, y) = <ψ(x), y> in word coordinates
            let dmat = FpMatrix::from_residue_rows(p, nabla.dim_at(w), ids.iter().map(|&i| dvec[i].clone()).collect());
            gram.insert(nabla.weight(w).to_vec(), (ids.clone(), phi.mul(&dmat.transpose())));
            if w == top {
                continue;
            }
            let rel = phi.left_kernel();
            if rel.rows() > 0 {
                relations.push(Relations { weight: nabla.weight(w).to_vec(), nodes: ids.clone(), coeffs: rel });
            }
        }
        if simple_dims[top] != 1 {
            return Err(Error::internal(format!("contravariant form of Δ({label}) vanishes on v₊")));
        }

        let mut need = vec![false; nodes.len()];
        for r in &relations {
            for &i in &r.nodes {
                let mut cur = Some(i);
                while let Some(c) = cur {
                    if need[c] {
                        break;
                    }
                    need[c] = true;
                    cur = nodes[c].parent;
                }
            }
        }
        let needed = (0..nodes.len()).filter(|&i| need[i]).collect();

        Ok(Self {
            label,
            n: nabla.n(),
            p,
            nodes,
            simple_dims,
            weights: nabla.weights().to_vec(),
            relations,
            needed,
            gram,
        })
    }

    /// dim L(μ) at each dominant weight.
    pub fn dominant_character(&self) -> BTreeMap<Partition, u64> {
        self.weights
            .iter()
            .zip(&self.simple_dims)
            .filter(|(w, &k)| k > 0 && is_dominant(w))
            .map(|(w, &k)| (Partition::new(w.clone()).unwrap(), k as u64))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.simple_dims.iter().sum()
    }

    /// Evaluates the needed words on `v` sitting in weight space `w` of `m`.
    /// Entry `i` is `(weight index, vector)` or `None` if the word kills `v`.
    fn evaluate(&self, m: &PolyModule, w: usize, v: &[u32]) -> Vec<Option<(usize, Vec<u32>)>> {
        let mut vals: Vec<Option<(usize, Vec<u32>)>> = vec![None; self.nodes.len()];
        vals[0] = Some((w, v.to_vec()));
        for &i in &self.needed {
            let (Some(parent), Some(op)) = (self.nodes[i].parent, self.nodes[i].op) else { continue };
            vals[i] = match &vals[parent] {
                Some((pw, pv)) => m.apply_to(op, *pw, pv),
                None => None,
            };
        }
        vals
    }
}

struct Words {
    label: Partition,
    top: usize,
    nodes: Vec<WordNode>,
    /// Word vectors in Δ(μ).
    dvec: Vec<Vec<u32>>,
    /// Their images under ψ in ∇(μ).
    img: Vec<Vec<u32>>,
    at_weight: Vec<Vec<usize>>,
}

fn build_words(nabla: &PolyModule) -> Result<Words> {
    let label = nabla.label().cloned().ok_or_else(|| Error::internal("∇ without a label"))?;
    let (top, h) = nabla.highest().ok_or_else(|| Error::internal("∇ without a highest vector"))?;
    let p = nabla.p();
    let nw = nabla.weights().len();
    let delta = nabla.contravariant_dual();
    let lowering: Vec<Op> = nabla.ops().iter().copied().filter(|o| !o.raise).collect();

    let mut nodes = vec![WordNode { parent: None, op: None, weight: top }];
    let mut dvec: Vec<Vec<u32>> = vec![vec![1]];
    let mut img: Vec<Vec<u32>> = vec![h.to_vec()];
    let mut at_weight: Vec<Vec<usize>> = vec![Vec::new(); nw];
    at_weight[top].push(0);
    if nabla.dim_at(top) != 1 {
        return Err(Error::internal(format!("highest weight space of ∇({label}) is not 1-dimensional")));
    }

    // weights are sorted by height, so every source is finished before its targets
    for w in 0..nw {
        if w == top {
            continue;
        }
        let target = nabla.dim_at(w);
        let mut span = Subspace::zero(p, target);
        'ops: for &op in &lowering {
            let Some(src) = op.opposite().shift(nabla.weight(w)).and_then(|s| nabla.weight_index(&s)) else {
                continue;
            };
            let srcs = at_weight[src].clone();
            for node in srcs {
                let Some((t, v)) = delta.apply(op, src, &dvec[node]) else { continue };
                debug_assert_eq!(t, w);
                if span.insert(&v) {
                    let (_, iv) = nabla.apply_to(op, src, &img[node]).expect("same weights");
                    nodes.push(WordNode { parent: Some(node), op: Some(op), weight: w });
                    at_weight[w].push(nodes.len() - 1);
                    dvec.push(v);
                    img.push(iv);
                    if span.dim() == target {
                        break 'ops;
                    }
                }
            }
        }
        if span.dim() != target {
            return Err(Error::internal(format!(
                "Δ({label}) is not generated by v₊ at weight {:?} ({} of {target})",
                nabla.weight(w),
                span.dim()
            )));
        }
    }
    Ok(Words { label, top, nodes, dvec, img, at_weight })
}

/// The contravariant form on Δ(μ) at every weight: entry (x, y) is ⟨x, y⟩ = ψ(x)·y
/// in the coordinates of Δ(μ).
pub fn contravariant_form(nabla: &PolyModule) -> Result<Vec<FpMatrix>> {
    let words = build_words(nabla)?;
    let p = nabla.p();
    let mut out = Vec::with_capacity(words.at_weight.len());
    for (w, ids) in words.at_weight.iter().enumerate() {
        let k = nabla.dim_at(w);
        let d = FpMatrix::from_residue_rows(p, k, ids.iter().map(|&i| words.dvec[i].clone()).collect());
        let phi = FpMatrix::from_residue_rows(p, k, ids.iter().map(|&i| words.img[i].clone()).collect());
        // rows of d are a basis, so ψ = d⁻¹ φ in row convention
        let mut psi = FpMatrix::zeros(p, k, k);
        for c in 0..k {
            let col: Vec<u32> = (0..k).map(|r| phi.get(r, c)).collect();
            let (x, _) = d.solve(&col)?;
            for r in 0..k {
                psi.set(r, c, x[r]);
            }
        }
        out.push(psi);
    }
    Ok(out)
}

/// Checks that the form is symmetric and that every generating e_i^{(k)} is adjoint to f_i^{(k)}.
pub fn check_form_adjointness(nabla: &PolyModule) -> Result<()> {
    let form = contravariant_form(nabla)?;
    let delta = nabla.contravariant_dual();
    for (w, g) in form.iter().enumerate() {
        if g != &g.transpose() {
            return Err(Error::internal(format!("form is not symmetric at {:?}", nabla.weight(w))));
        }
    }
    for s in 0..nabla.weights().len() {
        for &op in nabla.ops().iter().filter(|o| o.raise) {
            let Some((t, e)) = delta.op_matrix(s, op) else { continue };
            let Some((_, f)) = delta.op_matrix(t, op.opposite()) else {
                return Err(Error::internal(format!("{op:?} has no opposite at {:?}", nabla.weight(t))));
            };
            // ⟨e x, y⟩ = xᵀ eᵀ G_t y and ⟨x, f y⟩ = xᵀ G_s f y
            if e.transpose().mul(&form[t]) != form[s].mul(&f) {
                return Err(Error::internal(format!("{op:?} is not adjoint at {:?}", nabla.weight(s))));
            }
        }
    }
    Ok(())
}

/// The subspace of `m` at weight μ whose image in `m / sub` is the sum of all images
/// of Hom(L(μ), m / sub). It contains `sub` at μ; the hom-space has dimension
/// `result.dim() − sub_μ.dim()`.
pub fn hom_lift(simple: &SimpleData, m: &PolyModule, sub: Option<&Submodule>) -> Result<Subspace> {
    let p = m.p();
    let mu = simple.label.padded(m.n());
    let Some(w) = m.weight_index(&mu) else {
        return Ok(Subspace::zero(p, 0));
    };
    let proj = |t: usize, v: Vec<u32>| -> Vec<u32> {
        match sub {
            Some(s) => s.spaces[t].quotient_coordinates(&v),
            None => v,
        }
    };

    let dim = m.dim_at(w);
    let mut cons = FpMatrix::zeros(p, 0, dim);
    for &op in m.ops().iter().filter(|o| o.raise) {
        let Some((t, b)) = m.op_matrix(w, op) else { continue };
        let b = match sub {
            Some(s) => s.spaces[t].quotient_projection().mul(&b),
            None => b,
        };
        cons = cons.vstack(&b);
    }
    let kernel = cons.kernel();
    let floor = sub.map_or(0, |s| s.spaces[w].dim());
    if kernel.rows() == floor || simple.relations.is_empty() {
        return Ok(Subspace::span(&kernel));
    }

    // each relation must vanish (mod sub) on the image of v₊
    let k = kernel.rows();
    let evals: Vec<_> = (0..k).map(|j| simple.evaluate(m, w, kernel.row(j))).collect();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for rel in &simple.relations {
        for r in 0..rel.coeffs.rows() {
            let mut per_vec: Vec<Option<(usize, Vec<u32>)>> = Vec::with_capacity(k);
            for e in &evals {
                let mut acc: Option<(usize, Vec<u32>)> = None;
                for (c, &node) in rel.nodes.iter().enumerate() {
                    let coef = rel.coeffs.get(r, c);
                    if coef == 0 {
                        continue;
                    }
                    if let Some((t, v)) = &e[node] {
                        let a = acc.get_or_insert_with(|| (*t, vec![0; v.len()]));
                        axpy(&mut a.1, v, coef, p);
                    }
                }
                per_vec.push(acc.map(|(t, v)| (t, proj(t, v))));
            }
            let len = per_vec.iter().flatten().map(|(_, v)| v.len()).next().unwrap_or(0);
            for comp in 0..len {
                let row: Vec<u32> = per_vec.iter().map(|x| x.as_ref().map_or(0, |(_, v)| v[comp])).collect();
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::span(&kernel));
    }
    let a = FpMatrix::from_residue_rows(p, k, rows);
    let sol = a.kernel();
    Ok(Subspace::span(&sol.mul(&kernel)))
}

/// dim Hom(L(μ), m / sub).
pub fn hom_dim(simple: &SimpleData, m: &PolyModule, sub: Option<&Submodule>) -> Result<usize> {
    let lift = hom_lift(simple, m, sub)?;
    let mu = simple.label.padded(m.n());
    let floor = match (sub, m.weight_index(&mu)) {
        (Some(s), Some(w)) => s.spaces[w].dim(),
        _ => 0,
    };
    Ok(lift.dim() - floor)
}
