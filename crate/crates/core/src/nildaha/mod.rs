//! The rank-one nil-DAHA `H(kappa, kappa')` with `kappa = q^{-e/2}` and
//! `kappa' = i q^{-D/2}`, its `2D`-dimensional representation on **W** in the
//! cell basis, and the identities tying it to the operators of **W**.

mod bridge;
mod tables;

pub use bridge::{verify_bridge, BridgeReport};
pub use tables::{verify_x_action, ExpectedActions};

use crate::algebra::Field;
use crate::checks::CheckLog;
use crate::drg::{minus, plus};
use crate::family::{Consts, FamilyParams};
use crate::leonard::LeonardError;
use crate::linalg::{LinalgError, Matrix};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NilDahaError {
    #[error("relation fails: {0}")]
    Relation(String),
    #[error("{what} disagrees with its coefficient table at ({row}, {col})")]
    TableMismatch { what: &'static str, row: usize, col: usize },
    #[error("identity on W fails: {0}")]
    Bridge(String),
    #[error("instance mismatch: representation for {rep:?}, module for {module:?}")]
    InstanceMismatch { rep: FamilyParams, module: FamilyParams },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Leonard(#[from] LeonardError),
}

/// The representing matrices, acting on the cell basis by the column convention.
#[derive(Clone, Debug, PartialEq)]
pub struct NilDahaRep<F> {
    pub params: FamilyParams,
    pub kappa: F,
    pub kappa_p: F,
    pub tau: F,
    pub t: Matrix<F>,
    pub t_p: Matrix<F>,
    pub u: Matrix<F>,
    pub u_p: Matrix<F>,
    pub x: Matrix<F>,
    pub x_inv: Matrix<F>,
    /// `X + X^{-1}`.
    pub a_cal: Matrix<F>,
    /// `i q^{-D/2} (T U' + U T')`.
    pub a_s_cal: Matrix<F>,
    /// `i q^{-D/2} (T U' + q U T')`.
    pub a_s_t_cal: Matrix<F>,
    pub log: CheckLog,
}

fn set_block<F: Field>(m: &mut Matrix<F>, idx: &[usize], block: &[&[F]]) {
    for (r, row) in block.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            m.set(idx[r], idx[c], x.clone());
        }
    }
}

/// `(M - a)(M + b)`.
fn quadratic<F: Field>(m: &Matrix<F>, a: &F, b: &F) -> Matrix<F> {
    m.add_scalar(&a.neg()).mul(&m.add_scalar(b))
}

impl<F: Field> NilDahaRep<F> {
    pub fn d(&self) -> usize {
        self.params.d
    }

    /// Assembles the block matrices and verifies every defining relation.
    pub fn build(k: &Consts<F>) -> Result<Self, NilDahaError> {
        let d = k.d();
        let dim = 2 * d;
        let e2 = k.e2();
        let dd = d as i64;
        let i = k.i.clone();
        let zero = F::zero();
        let one = F::one();
        let q_he = k.vp(e2);
        let q_mhe = k.vp(-e2);
        let q_hd = k.vp(2 * dd);
        let q_mhd = k.vp(-2 * dd);
        let q_d = k.qp(dd);

        let mut t = Matrix::zeros(dim, dim);
        let mut u_p = Matrix::zeros(dim, dim);
        for j in 0..d {
            let idx = [minus(j), plus(j)];
            set_block(&mut t, &idx, &[&[q_mhe.sub(&q_he), q_he.clone()], &[q_mhe.clone(), zero.clone()]]);
            let low = i.mul(&k.vp(2 * dd - e2 - 4 * j as i64)).neg();
            set_block(&mut u_p, &idx, &[&[zero.clone(), zero.clone()], &[low, zero.clone()]]);
        }
        let mut t_p = Matrix::zeros(dim, dim);
        let mut u = Matrix::zeros(dim, dim);
        let end = i.mul(&q_mhd);
        t_p.set(minus(0), minus(0), end.clone());
        t_p.set(plus(d - 1), plus(d - 1), end);
        u.set(plus(d - 1), plus(d - 1), one.neg());
        for j in 1..d {
            let jj = j as i64;
            let q_j = k.qp(jj);
            let idx = [plus(j - 1), minus(j)];
            let block = [
                [i.mul(&q_mhd).mul(&q_d.sub(&q_j).add(&one)), i.mul(&q_hd).mul(&k.qp(jj - dd).sub(&one))],
                [i.mul(&q_mhd).mul(&one.sub(&q_j)), i.mul(&k.vp(4 * jj - 2 * dd))],
            ];
            set_block(&mut t_p, &idx, &[&block[0], &block[1]]);
            set_block(&mut u, &idx, &[&[one.neg(), one.sub(&k.qp(dd - jj))], &[zero.clone(), zero.clone()]]);
        }
        let x = t_p.mul(&t);

        let mut log = CheckLog::new();
        let rel = |name: String| NilDahaError::Relation(name);
        let kappa = k.kappa.clone();
        let kappa_p = k.kappa_p.clone();
        let inv = |x: &F| x.inv().expect("nonzero");
        log.ensure(quadratic(&t, &kappa, &inv(&kappa)).is_zero(), "(T - kappa)(T + kappa^{-1}) = 0", rel)?;
        let t_inv = t.inverse()?;
        let x_inv = x.inverse()?;
        log.ensure(x.mul(&t_inv) == t_p, "T' = X T^{-1}", rel)?;
        log.ensure(quadratic(&t_p, &kappa_p, &inv(&kappa_p)).is_zero(), "(T' - kappa')(T' + kappa'^{-1}) = 0", rel)?;
        let u_plus_1 = u.add_scalar(&one);
        log.ensure(u.mul(&u_plus_1).is_zero(), "U (U + 1) = 0", rel)?;
        log.ensure(u_p.mul(&u_p).is_zero(), "U'^2 = 0", rel)?;
        log.ensure(x_inv.mul(&u_plus_1) == u_p, "U' = X^{-1} (U + 1)", rel)?;
        log.ensure(x.mul(&u_p) == u_plus_1, "X U' = U + 1", rel)?;
        log.ensure(u.mul(&x).scale(&k.q) == u_p, "U' = q U X", rel)?;

        let c = i.mul(&q_mhd);
        let tu = t.mul(&u_p);
        let ut = u.mul(&t_p);
        let a_cal = x.add(&x_inv);
        let a_s_cal = tu.add(&ut).scale(&c);
        let a_s_t_cal = tu.add(&ut.scale(&k.q)).scale(&c);
        Ok(NilDahaRep {
            params: k.params,
            kappa,
            kappa_p,
            tau: k.tau.clone(),
            t,
            t_p,
            u,
            u_p,
            x,
            x_inv,
            a_cal,
            a_s_cal,
            a_s_t_cal,
            log,
        })
    }
}
