//! Dense exact matrices over any [`Field`].
//!
//! Operators use the column convention: the matrix `M` of `L` in the basis
//! `(c_j)` satisfies `L c_j = sum_i M[i][j] c_i`.

use crate::algebra::Field;
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("eigenvalues not distinct")]
    EigenvaluesNotDistinct,
    #[error("not multiplicity-free on this space")]
    NotMultiplicityFree,
    #[error("matrix is singular")]
    Singular,
    #[error("dependent basis")]
    DependentBasis,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// A rectangular row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, F::one())
    }

    pub fn scalar(n: usize, c: F) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(d: &[F]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<F>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Matrix<G>, E> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_one() {
            return self.clone();
        }
        self.map(|x| if x.is_zero() { F::zero() } else { x.mul(c) })
    }

    /// `self + c I`.
    pub fn add_scalar(&self, c: &F) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let k = i * self.cols + i;
            m.data[k] = m.data[k].add(c);
        }
        m
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "product dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    let t = a.mul(b);
                    out.data[idx] = if out.data[idx].is_zero() { t } else { out.data[idx].add(&t) };
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("pivot nonzero");
            for j in c..m.cols {
                let k = r * m.cols + j;
                if !m.data[k].is_zero() {
                    m.data[k] = m.data[k].mul(&inv);
                }
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let t = m.get(r, j);
                    if !t.is_zero() {
                        let v = m.get(i, j).sub(&t.mul(&f));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Solve `self * x = b` for a unique `x`.
    pub fn solve(&self, b: &[F]) -> Result<Vec<F>, LinalgError> {
        let (n, k) = (self.rows, self.cols);
        let aug = Self::from_fn(n, k + 1, |i, j| if j < k { self.get(i, j).clone() } else { b[i].clone() });
        let (r, piv) = aug.rref();
        if piv.contains(&k) {
            return Err(LinalgError::Dimension("inconsistent system".into()));
        }
        if piv.len() < k {
            return Err(LinalgError::Singular);
        }
        Ok((0..k).map(|i| r.get(i, k).clone()).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::identity(self.rows);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Coefficients (ascending) of `prod_{j in roots} (x - r_j)`.
pub fn poly_from_roots<F: Field>(roots: &[&F]) -> Vec<F> {
    let mut c = vec![F::one()];
    for r in roots {
        let mut next = vec![F::zero(); c.len() + 1];
        for (k, a) in c.iter().enumerate() {
            next[k + 1] = next[k + 1].add(a);
            next[k] = next[k].sub(&a.mul(r));
        }
        c = next;
    }
    c
}

/// `sum_k c[k] P[k]` for precomputed powers `P[k] = A^k`.
fn combine_powers<F: Field>(coeffs: &[F], powers: &[Matrix<F>]) -> Matrix<F> {
    let n = powers[0].rows();
    let mut acc = Matrix::zeros(n, n);
    for (c, p) in coeffs.iter().zip(powers) {
        if !c.is_zero() {
            acc = acc.add(&p.scale(c));
        }
    }
    acc
}

/// Primitive idempotents `E_i = prod_{j != i} (A - th_j)/(th_i - th_j)`.
///
/// Each `E_i` is assembled as a polynomial in `A` from its powers. The
/// minimal-polynomial condition, `A E_i = th_i E_i` and `sum E_i = I` are
/// checked here; together with the Lagrange construction they force
/// `E_i E_j = delta_ij E_i`.
pub fn primitive_idempotents<F: Field>(a: &Matrix<F>, theta: &[F]) -> Result<Vec<Matrix<F>>, LinalgError> {
    let d = theta.len();
    for i in 0..d {
        for j in i + 1..d {
            if theta[i] == theta[j] {
                return Err(LinalgError::EigenvaluesNotDistinct);
            }
        }
    }
    let n = a.rows();
    let mut powers = vec![Matrix::identity(n)];
    for k in 1..=d {
        powers.push(powers[k - 1].mul(a));
    }
    let all: Vec<&F> = theta.iter().collect();
    if !combine_powers(&poly_from_roots(&all), &powers).is_zero() {
        return Err(LinalgError::NotMultiplicityFree);
    }
    let mut out = Vec::with_capacity(d);
    let mut sum = Matrix::zeros(n, n);
    for i in 0..d {
        let others: Vec<&F> = theta.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, t)| t).collect();
        let mut denom = F::one();
        for t in &others {
            denom = denom.mul(&theta[i].sub(t));
        }
        let dinv = denom.inv().ok_or(LinalgError::EigenvaluesNotDistinct)?;
        let coeffs: Vec<F> = poly_from_roots(&others).iter().map(|c| c.mul(&dinv)).collect();
        let e = combine_powers(&coeffs, &powers[..d]);
        if a.mul(&e) != e.scale(&theta[i]) {
            return Err(LinalgError::NotMultiplicityFree);
        }
        sum = sum.add(&e);
        out.push(e);
    }
    if sum != Matrix::identity(n) {
        return Err(LinalgError::NotMultiplicityFree);
    }
    Ok(out)
}

/// Direct check of `E_i E_j = delta_ij E_i`.
pub fn idempotents_orthogonal<F: Field>(es: &[Matrix<F>]) -> bool {
    for (i, a) in es.iter().enumerate() {
        for (j, b) in es.iter().enumerate() {
            let p = a.mul(b);
            if (i == j && p != *a) || (i != j && !p.is_zero()) {
                return false;
            }
        }
    }
    true
}

/// Orthogonal projection onto `span(basis)` for the Hermitian form
/// `<x, y> = sum_k x_k conj(y_k) g_k`.
pub fn gram_project<F: Field>(basis: &[Vec<F>], gram_diag: &[F]) -> Result<Matrix<F>, LinalgError> {
    let n = gram_diag.len();
    if basis.iter().any(|b| b.len() != n) {
        return Err(LinalgError::Dimension("basis vector length".into()));
    }
    if gram_diag.iter().any(|g| g.is_zero()) {
        return Err(LinalgError::Dimension("zero gram entry".into()));
    }
    let b = Matrix::from_columns(basis);
    let g = Matrix::diagonal(gram_diag);
    let bh_g = b.conj_transpose().mul(&g);
    let m = bh_g.mul(&b);
    let minv = m.inverse().map_err(|_| LinalgError::DependentBasis)?;
    Ok(b.mul(&minv).mul(&bh_g))
}

/// Dimension of the smallest subspace containing `start` and closed under `gens`.
pub fn cyclic_closure_dim<F: Field>(gens: &[&Matrix<F>], start: &[F]) -> usize {
    let n = start.len();
    let mut basis: Vec<Vec<F>> = Vec::new();
    let mut echelon: Vec<(usize, Vec<F>)> = Vec::new();
    let mut queue = vec![start.to_vec()];
    while let Some(v) = queue.pop() {
        if let Some(r) = reduce_against(&echelon, v.clone()) {
            let p = r.iter().position(|x| !x.is_zero()).expect("nonzero");
            let inv = r[p].inv().expect("nonzero");
            echelon.push((p, r.iter().map(|x| x.mul(&inv)).collect()));
            basis.push(v.clone());
            if basis.len() == n {
                return n;
            }
            for g in gens {
                queue.push(g.apply(&v));
            }
        }
    }
    basis.len()
}

fn reduce_against<F: Field>(ech: &[(usize, Vec<F>)], mut v: Vec<F>) -> Option<Vec<F>> {
    for (p, row) in ech {
        if !v[*p].is_zero() {
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&r.mul(&f));
                }
            }
        }
    }
    v.iter().any(|x| !x.is_zero()).then_some(v)
}

/// Whether the digraph `i -> j` whenever some generator has a nonzero
/// `(j, i)` entry is strongly connected.
pub fn strongly_connected<F: Field>(gens: &[&Matrix<F>]) -> bool {
    let n = gens.first().map_or(0, |m| m.rows());
    if n == 0 {
        return true;
    }
    let reach = |forward: bool| -> usize {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for m in gens {
                for j in 0..n {
                    let e = if forward { m.get(j, i) } else { m.get(i, j) };
                    if !seen[j] && !e.is_zero() {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        seen.iter().filter(|s| **s).count()
    };
    reach(true) == n && reach(false) == n
}

/// Whether a Hermitian matrix is positive definite, given the sign of real
/// scalars. Elimination without pivoting: every pivot must be real and positive.
pub fn is_positive_definite<F: Field>(h: &Matrix<F>, sign: impl Fn(&F) -> Option<Ordering>) -> bool {
    let n = h.rows();
    let mut a = h.clone();
    for k in 0..n {
        let p = a.get(k, k).clone();
        if sign(&p) != Some(Ordering::Greater) {
            return false;
        }
        let p_inv = p.inv().expect("positive pivot");
        for r in k + 1..n {
            let f = a.get(r, k).mul(&p_inv);
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let x = a.get(r, c).sub(&f.mul(a.get(k, c)));
                a.set(r, c, x);
            }
        }
    }
    true
}
