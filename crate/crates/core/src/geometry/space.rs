//! Formed spaces of the six families and row-reduction over `F_q`.

use super::field::{Elt, Fq};
use super::GeometryError;
use crate::family::{FamilyParams, FamilyTag};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// `sum x_i y_{D+i} - x_{D+i} y_i`.
    Alternating,
    /// `sum x_i x_{D+i}`, plus `x_{2D}^2` for odd dimension, plus the
    /// anisotropic `t^2 + t u + a u^2` on the last two coordinates when `anisotropic = Some(a)`.
    Quadratic { extra_square: bool, anisotropic: Option<Elt> },
    /// `sum x_i conj(y_{D+i}) + x_{D+i} conj(y_i)`, plus `x_{2D} conj(y_{2D})` for odd dimension.
    Hermitian { extra: bool },
}

/// A vector space over `F_q` carrying one of the forms of the six families.
#[derive(Clone, Debug)]
pub struct FormedSpace {
    pub params: FamilyParams,
    pub q0: u64,
    pub field: Fq,
    pub n: usize,
    pub kind: FormKind,
}

impl FormedSpace {
    pub fn d(&self) -> usize {
        self.params.d
    }

    /// The polar form: `B(x, y)` for bilinear kinds, `H(x, y)` for Hermitian.
    pub fn polar(&self, x: &[Elt], y: &[Elt]) -> Elt {
        let f = &self.field;
        let d = self.d();
        let mut acc = 0;
        match &self.kind {
            FormKind::Alternating => {
                for i in 0..d {
                    acc = f.add(acc, f.sub(f.mul(x[i], y[d + i]), f.mul(x[d + i], y[i])));
                }
            }
            FormKind::Quadratic { extra_square, anisotropic } => {
                for i in 0..d {
                    acc = f.add(acc, f.add(f.mul(x[i], y[d + i]), f.mul(x[d + i], y[i])));
                }
                let two = f.add(1, 1);
                if *extra_square {
                    acc = f.add(acc, f.mul(two, f.mul(x[2 * d], y[2 * d])));
                }
                if let Some(a) = anisotropic {
                    let (t, u) = (2 * d, 2 * d + 1);
                    acc = f.add(acc, f.mul(two, f.mul(x[t], y[t])));
                    acc = f.add(acc, f.add(f.mul(x[t], y[u]), f.mul(x[u], y[t])));
                    acc = f.add(acc, f.mul(f.mul(two, *a), f.mul(x[u], y[u])));
                }
            }
            FormKind::Hermitian { extra } => {
                let c = |a: Elt| f.hermitian_conj(a);
                for i in 0..d {
                    acc = f.add(acc, f.add(f.mul(x[i], c(y[d + i])), f.mul(x[d + i], c(y[i]))));
                }
                if *extra {
                    acc = f.add(acc, f.mul(x[2 * d], c(y[2 * d])));
                }
            }
        }
        acc
    }

    /// The quadratic form, for quadratic kinds.
    pub fn quadratic(&self, x: &[Elt]) -> Option<Elt> {
        let f = &self.field;
        let d = self.d();
        let FormKind::Quadratic { extra_square, anisotropic } = &self.kind else {
            return None;
        };
        let mut acc = 0;
        for i in 0..d {
            acc = f.add(acc, f.mul(x[i], x[d + i]));
        }
        if *extra_square {
            acc = f.add(acc, f.mul(x[2 * d], x[2 * d]));
        }
        if let Some(a) = anisotropic {
            let (t, u) = (x[2 * d], x[2 * d + 1]);
            acc = f.add(acc, f.add(f.mul(t, t), f.add(f.mul(t, u), f.mul(*a, f.mul(u, u)))));
        }
        Some(acc)
    }

    /// Whether the form vanishes at the vector `x`.
    pub fn is_singular_vector(&self, x: &[Elt]) -> bool {
        match &self.kind {
            FormKind::Alternating => true,
            FormKind::Quadratic { .. } => self.quadratic(x) == Some(0),
            FormKind::Hermitian { .. } => self.polar(x, x) == 0,
        }
    }

    /// Whether the form vanishes on the span of `rows`.
    pub fn is_totally_isotropic(&self, rows: &[&[Elt]]) -> bool {
        rows.iter().all(|r| self.is_singular_vector(r))
            && rows.iter().enumerate().all(|(i, a)| rows[i + 1..].iter().all(|b| self.polar(a, b) == 0))
    }

    /// Coefficients `g` with `y perp s` iff `sum g_j y_j = 0`.
    pub fn perp_functional(&self, s: &[Elt]) -> Vec<Elt> {
        let mut e = vec![0; self.n];
        (0..self.n)
            .map(|j| {
                e[j] = 1;
                let g = self.polar(s, &e);
                e[j] = 0;
                match self.kind {
                    FormKind::Hermitian { .. } => self.field.hermitian_conj(g),
                    _ => g,
                }
            })
            .collect()
    }

    /// Polar Gram matrix `polar(e_i, e_j)`.
    pub fn gram(&self) -> Vec<Vec<Elt>> {
        let unit = |i: usize| -> Vec<Elt> { (0..self.n).map(|j| (i == j) as Elt).collect() };
        (0..self.n).map(|i| (0..self.n).map(|j| self.polar(&unit(i), &unit(j))).collect()).collect()
    }

    /// Checks non-degeneracy: the polar radical is zero, except for a
    /// one-dimensional nucleus on which `Q` does not vanish (odd dimension,
    /// characteristic 2).
    pub fn check_nondegenerate(&self) -> Result<(), GeometryError> {
        let rows = self.gram();
        let rref = Rref::new(&self.field, rows, self.n);
        let radical = rref.null_space(&self.field);
        let ok = match radical.len() {
            0 => true,
            1 => matches!(self.kind, FormKind::Quadratic { .. }) && self.quadratic(&radical[0]) != Some(0),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(GeometryError::Degenerate)
        }
    }
}

/// Builds the standard formed space of a family over `F_{q0}`.
pub fn build_space(params: FamilyParams, q0: u64) -> Result<FormedSpace, GeometryError> {
    let field = Fq::new(q0)?;
    let d = params.d;
    let kind = match params.tag {
        FamilyTag::C => FormKind::Alternating,
        FamilyTag::B => FormKind::Quadratic { extra_square: true, anisotropic: None },
        FamilyTag::D => FormKind::Quadratic { extra_square: false, anisotropic: None },
        FamilyTag::TwoD => FormKind::Quadratic { extra_square: false, anisotropic: Some(anisotropic_constant(&field)) },
        FamilyTag::TwoAOdd | FamilyTag::TwoAEven => {
            if field.sqrt_order().is_none() {
                return Err(GeometryError::HermitianNeedsSquare(q0));
            }
            FormKind::Hermitian { extra: params.tag == FamilyTag::TwoAEven }
        }
    };
    let space = FormedSpace { params, q0, field, n: params.tag.ambient_dim(d), kind };
    space.check_nondegenerate()?;
    Ok(space)
}

/// Smallest `a` (in encoding order) with `t^2 + t + a` irreducible.
fn anisotropic_constant(f: &Fq) -> Elt {
    f.elements()
        .find(|&a| f.elements().all(|t| f.add(f.add(f.mul(t, t), t), a) != 0))
        .expect("every finite field has an irreducible quadratic of this shape")
}

/// A matrix in reduced row echelon form over `F_q`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rref {
    pub n: usize,
    pub rows: Vec<Vec<Elt>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn new(f: &Fq, mut rows: Vec<Vec<Elt>>, n: usize) -> Self {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, p);
            let inv = f.inv(rows[r][col]);
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][col] != 0 {
                    let c = rows[i][col];
                    for j in col..n {
                        let t = f.mul(c, rows[r][j]);
                        rows[i][j] = f.sub(rows[i][j], t);
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Rref { n, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the pivots; the result has zeros at every pivot column.
    pub fn reduce(&self, f: &Fq, v: &mut [Elt]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.sub(*x, f.mul(c, r));
                    }
                }
            }
        }
    }

    /// Basis of `{y : rows * y = 0}`.
    pub fn null_space(&self, f: &Fq) -> Vec<Vec<Elt>> {
        let n = self.n;
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut y = vec![0; n];
                y[fc] = 1;
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    y[p] = f.neg(row[fc]);
                }
                y
            })
            .collect()
    }

    /// Rank of the span of `self` together with `other`.
    pub fn union_rank(&self, f: &Fq, other: &Rref) -> usize {
        let mut extra: Vec<Vec<Elt>> = other
            .rows
            .iter()
            .map(|r| {
                let mut v = r.clone();
                self.reduce(f, &mut v);
                v
            })
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        if extra.is_empty() {
            return self.rank();
        }
        extra = Rref::new(f, extra, self.n).rows;
        self.rank() + extra.len()
    }
}
