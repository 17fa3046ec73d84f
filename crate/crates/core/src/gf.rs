//! Dense linear algebra over the prime field GF(p).
//!
//! Residues are stored as `u32` in `[0, p)`. Only small primes are supported
//! (`p <= 251`), so every product of two residues fits comfortably in a `u32`.
//! Pivoting is deterministic: the first nonzero column, then the first row
//! with a nonzero entry in it.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_PRIME: u32 = 251;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(Error::InvalidPrime(p));
    }
    Ok(())
}

#[inline]
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

#[inline]
pub fn pow_mod(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Binomial coefficient reduced mod p, via Lucas' theorem.
pub fn binom_mod(mut n: u64, mut k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let pp = p as u64;
    let mut r: u32 = 1;
    while k > 0 || n > 0 {
        let (nd, kd) = ((n % pp) as u32, (k % pp) as u32);
        if kd > nd {
            return 0;
        }
        r = r * small_binom(nd, kd, p) % p;
        n /= pp;
        k /= pp;
    }
    r
}

fn small_binom(n: u32, k: u32, p: u32) -> u32 {
    let mut num = 1;
    let mut den = 1;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * inv_mod(den, p) % p
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(p: u32, cols: usize, rows: &[R]) -> Self {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = x.rem_euclid(p as i64) as u32;
            }
        }
        m
    }

    pub fn from_residue_rows(p: u32, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.into_iter().map(|x| x % p));
        }
        Self { p, rows: n, cols, data }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }
    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: u32) {
        let i = r * self.cols + c;
        self.data[i] = (self.data[i] + v % self.p) % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = FpMatrix::zeros(p, self.rows, other.cols);
        // accumulate in u64 lanes and reduce once per row
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x += (a * b) as u64;
                }
            }
            for (j, x) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (*x % p as u64) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| (a * b) as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % p).collect();
        FpMatrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u32) -> FpMatrix {
        let p = self.p;
        let s = s % p;
        let data = self.data.iter().map(|a| a * s % p).collect();
        FpMatrix { p, rows: self.rows, cols: self.cols, data }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row.iter().map(|x| x % self.p));
        self.rows += 1;
    }

    /// Reduced row-echelon form, rank, and pivot columns. Zero rows are dropped.
    pub fn rref(&self) -> (FpMatrix, usize, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = inv_mod(m.get(r, c), p);
            m.row_mut(r).iter_mut().for_each(|x| *x = *x * inv % p);
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f != 0 {
                    let (src, dst) = m.two_rows(r, i);
                    axpy(dst, src, p - f, p);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of the right kernel `{x : A x = 0}`, as rows of the returned matrix.
    pub fn kernel(&self) -> FpMatrix {
        let p = self.p;
        let (red, _, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut out = FpMatrix::zeros(p, 0, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let a = red.get(i, free);
                v[pc] = (p - a) % p;
            }
            out.push_row(&v);
        }
        out
    }

    /// Basis of the left kernel `{y : y A = 0}`.
    pub fn left_kernel(&self) -> FpMatrix {
        self.transpose().kernel()
    }

    /// Solves `A x = b`. Returns one particular solution together with a kernel basis.
    pub fn solve(&self, b: &[u32]) -> Result<(Vec<u32>, FpMatrix)> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let p = self.p;
        let mut aug = FpMatrix::zeros(p, self.rows, self.cols + 1);
        for r in 0..self.rows {
            aug.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            aug.data[r * (self.cols + 1) + self.cols] = b[r] % p;
        }
        let (red, _, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(i, self.cols);
        }
        Ok((x, self.kernel()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn two_rows(&mut self, src: usize, dst: usize) -> (&[u32], &mut [u32]) {
        let cols = self.cols;
        debug_assert_ne!(src, dst);
        if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * cols);
            (&lo[src * cols..(src + 1) * cols], &mut hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * cols);
            (&hi[..cols], &mut lo[dst * cols..(dst + 1) * cols])
        }
    }
}

/// `dst += f * src` (mod p).
#[inline]
pub fn axpy(dst: &mut [u32], src: &[u32], f: u32, p: u32) {
    if f == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = (*d + f * s) % p;
        }
    }
}

/// A subspace of GF(p)^n held as a reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient_dim(), self.basis.to_rows())
    }
}

impl Subspace {
    pub fn zero(p: u32, ambient_dim: usize) -> Self {
        Self { basis: FpMatrix::zeros(p, 0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(p: u32, ambient_dim: usize) -> Self {
        Self { basis: FpMatrix::identity(p, ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    /// Row space of `m`.
    pub fn span(m: &FpMatrix) -> Self {
        let (basis, _, pivots) = m.rref();
        Self { basis, pivots }
    }

    pub fn from_vectors(p: u32, ambient_dim: usize, vs: &[Vec<u32>]) -> Self {
        let mut s = Self::zero(p, ambient_dim);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn p(&self) -> u32 {
        self.basis.p
    }
    pub fn dim(&self) -> usize {
        self.basis.rows
    }
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// Reduces `v` in place against the basis; the result is zero iff `v` was a member.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let f = v[pc];
            if f != 0 {
                axpy(v, self.basis.row(i), p - f, p);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the subspace; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient_dim());
        let p = self.p();
        let mut w: Vec<u32> = v.iter().map(|x| x % p).collect();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[pc], p);
        w.iter_mut().for_each(|x| *x = *x * inv % p);
        for i in 0..self.basis.rows {
            let f = self.basis.get(i, pc);
            if f != 0 {
                axpy(self.basis.row_mut(i), &w, p - f, p);
            }
        }
        let at = self.pivots.partition_point(|&c| c < pc);
        let cols = self.basis.cols;
        let tail = self.basis.data.split_off(at * cols);
        self.basis.data.extend_from_slice(&w);
        self.basis.data.extend(tail);
        self.basis.rows += 1;
        self.pivots.insert(at, pc);
        true
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c] % self.p()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut s = self.clone();
        for r in 0..other.dim() {
            s.insert(other.basis.row(r));
        }
        Ok(s)
    }

    /// Intersection via the kernel of `[U; -V]^T`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let p = self.p();
        let n = self.ambient_dim();
        let (a, b) = (self.dim(), other.dim());
        // columns are basis vectors: solve sum_i x_i u_i - sum_j y_j v_j = 0
        let mut m = FpMatrix::zeros(p, n, a + b);
        for i in 0..a {
            for c in 0..n {
                m.set(c, i, self.basis.get(i, c));
            }
        }
        for j in 0..b {
            for c in 0..n {
                m.set(c, a + j, (p - other.basis.get(j, c)) % p);
            }
        }
        let ker = m.kernel();
        let mut out = Subspace::zero(p, n);
        for r in 0..ker.rows() {
            let coeffs = &ker.row(r)[..a];
            let mut v = vec![0u32; n];
            for (i, &x) in coeffs.iter().enumerate() {
                axpy(&mut v, self.basis.row(i), x, p);
            }
            out.insert(&v);
        }
        Ok(out)
    }

    /// Non-pivot columns: a fixed complement coordinate system for the quotient.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the class of `v` in the quotient by this subspace.
    pub fn quotient_coordinates(&self, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        self.complement_columns().into_iter().map(|c| w[c]).collect()
    }

    /// Matrix of the projection onto quotient coordinates (rows: complement columns).
    pub fn quotient_projection(&self) -> FpMatrix {
        let p = self.p();
        let n = self.ambient_dim();
        let comp = self.complement_columns();
        let mut m = FpMatrix::zeros(p, comp.len(), n);
        let mut col_of = vec![usize::MAX; n];
        for (i, &c) in comp.iter().enumerate() {
            col_of[c] = i;
            m.set(i, c, 1);
        }
        // e_{pivot_i} reduces to -(row_i without its pivot)
        for (i, &pc) in self.pivots.iter().enumerate() {
            for c in 0..n {
                let a = self.basis.get(i, c);
                if a != 0 && col_of[c] != usize::MAX {
                    m.set(col_of[c], pc, (p - a) % p);
                }
            }
        }
        m
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() || self.p() != other.p() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rref_examples() {
        let m = FpMatrix::from_rows(3, 2, &[[1, 2], [2, 4]]);
        let (r, rank, _) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r.to_rows(), vec![vec![1, 2]]);

        let id = FpMatrix::identity(2, 3);
        let (r, rank, _) = id.rref();
        assert_eq!(rank, 3);
        assert_eq!(r, id);

        let z = FpMatrix::zeros(5, 2, 2);
        let (r, rank, _) = z.rref();
        assert_eq!(rank, 0);
        assert_eq!(r.rows(), 0);
    }

    #[test]
    fn solve_examples() {
        let a = FpMatrix::from_rows(3, 2, &[[1, 1]]);
        let (x, ker) = a.solve(&[0]).unwrap();
        assert_eq!(x, vec![0, 0]);
        assert_eq!(ker.to_rows(), vec![vec![2, 1]]);
        assert!(Subspace::span(&ker).contains(&[1, 2]));

        let id = FpMatrix::identity(2, 2);
        let (x, ker) = id.solve(&[1, 0]).unwrap();
        assert_eq!(x, vec![1, 0]);
        assert_eq!(ker.rows(), 0);

        let z = FpMatrix::from_rows(3, 2, &[[0, 0]]);
        assert!(matches!(z.solve(&[1]), Err(Error::Inconsistent)));
    }

    #[test]
    fn subspace_examples() {
        let e1 = Subspace::from_vectors(5, 2, &[vec![1, 0]]);
        let e2 = Subspace::from_vectors(5, 2, &[vec![0, 1]]);
        assert!(e1.sum(&e2).unwrap().is_full());
        assert_eq!(e1.intersection(&e2).unwrap().dim(), 0);
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        assert_eq!(e1.intersection(&e1).unwrap(), e1);

        // p=3: span{e1+e2} ∩ span{e2+e3, e1-e3}
        let u = Subspace::from_vectors(3, 3, &[vec![1, 1, 0]]);
        let v = Subspace::from_vectors(3, 3, &[vec![0, 1, 1], vec![1, 0, 2]]);
        let inter = u.intersection(&v).unwrap();
        // brute-force membership over all 27 vectors
        let mut expected = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let w = [a, b, c];
                    if u.contains(&w) && v.contains(&w) {
                        expected.push(w.to_vec());
                    }
                }
            }
        }
        assert_eq!(expected.len(), 3);
        assert_eq!(inter, Subspace::from_vectors(3, 3, &expected));
        assert_eq!(inter, u);
    }

    #[test]
    fn mismatched_dimensions() {
        let a = Subspace::zero(3, 2);
        let b = Subspace::zero(3, 3);
        assert!(a.sum(&b).is_err());
    }

    #[test]
    fn quotient_projection_agrees_with_coordinates() {
        let s = Subspace::from_vectors(5, 4, &[vec![1, 2, 0, 3], vec![0, 0, 1, 4]]);
        let proj = s.quotient_projection();
        for v in [[1u32, 0, 0, 0], [0, 1, 2, 3], [4, 4, 4, 4]] {
            assert_eq!(proj.mul_vec(&v), s.quotient_coordinates(&v));
        }
        assert!(proj.mul_vec(&[1, 2, 0, 3]).iter().all(|&x| x == 0));
    }

    #[test]
    fn lucas_binomials() {
        assert_eq!(binom_mod(6, 3, 3), 20 % 3);
        assert_eq!(binom_mod(9, 3, 3), 0);
        assert_eq!(binom_mod(10, 4, 7), (210 % 7) as u32);
        assert_eq!(binom_mod(3, 5, 5), 0);
    }

    fn arb_subspace(p: u32, n: usize) -> impl Strategy<Value = Subspace> {
        prop::collection::vec(prop::collection::vec(0..p, n), 0..=n)
            .prop_map(move |vs| Subspace::from_vectors(p, n, &vs))
    }

    fn arb_pair() -> impl Strategy<Value = (Subspace, Subspace)> {
        (prop::sample::select(vec![2u32, 3, 5]), 1usize..=8)
            .prop_flat_map(|(p, n)| (arb_subspace(p, n), arb_subspace(p, n)))
    }

    proptest! {
        #![proptest_config(crate::prop_config(200))]

        #[test]
        fn dimension_formula((u, v) in arb_pair()) {
            let s = u.sum(&v).unwrap();
            let i = u.intersection(&v).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
            for r in 0..i.dim() {
                prop_assert!(u.contains(i.basis().row(r)) && v.contains(i.basis().row(r)));
            }
        }

        #[test]
        fn rref_idempotent(rows in prop::collection::vec(prop::collection::vec(0u32..5, 5), 0..6)) {
            let m = FpMatrix::from_residue_rows(5, 5, rows);
            let (r1, k1, _) = m.rref();
            let (r2, k2, _) = r1.rref();
            prop_assert_eq!(k1, k2);
            prop_assert_eq!(r1, r2);
        }

        #[test]
        fn solve_satisfies_system(
            rows in prop::collection::vec(prop::collection::vec(0u32..3, 4), 1..5),
            x in prop::collection::vec(0u32..3, 4),
        ) {
            let a = FpMatrix::from_residue_rows(3, 4, rows);
            let b = a.mul_vec(&x);
            let (sol, ker) = a.solve(&b).unwrap();
            prop_assert_eq!(a.mul_vec(&sol), b);
            for r in 0..ker.rows() {
                prop_assert!(a.mul_vec(ker.row(r)).iter().all(|&y| y == 0));
            }
            prop_assert_eq!(ker.rows() + a.rank(), 4);
        }
    }
}
