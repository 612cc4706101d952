//! Identities between the nil-DAHA operators and the operators of **W**.

use super::{NilDahaError, NilDahaRep};
use crate::algebra::Field;
use crate::checks::CheckLog;
use crate::drg::WModule;
use crate::family::Consts;
use crate::leonard::{h_poly, SystemKind};
use crate::linalg::{cyclic_closure_dim, primitive_idempotents, Matrix};

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct BridgeReport {
    /// Ranks of the eigenspaces of `alpha + beta tau (X + X^{-1})`, in the order `theta_0..theta_D`.
    pub multiplicities: Vec<usize>,
    /// Dimension of the cyclic closure of `x̂` under `T`, `U`, `X`.
    pub closure_dim: usize,
    pub log: CheckLog,
}

/// `(M + b^{-1}) / (b + b^{-1})`.
fn hecke_projection<F: Field>(m: &Matrix<F>, b: &F) -> Matrix<F> {
    let b_inv = b.inv().expect("nonzero");
    let s = b.add(&b_inv).inv().expect("b + b^{-1} != 0");
    m.add_scalar(&b_inv).scale(&s)
}

fn standard_basis<F: Field>(w: &WModule<F>, kind: SystemKind) -> Vec<Vec<F>> {
    let d = w.d();
    match kind {
        SystemKind::Phi => (0..=d).map(|i| w.a_i_xhat(i)).collect(),
        SystemKind::PhiPerp => w.u_perp.clone(),
        SystemKind::PhiTilde => (0..d).map(|i| w.c_i_hat(i)).collect(),
        SystemKind::PhiTildePerp => w.u_perp_t.clone(),
    }
}

/// Checks that the representation, read in the cell basis of `w`, recovers
/// the operators of **W**.
pub fn verify_bridge<F: Field>(rep: &NilDahaRep<F>, w: &WModule<F>, k: &Consts<F>) -> Result<BridgeReport, NilDahaError> {
    if rep.params != w.params || k.params != w.params {
        return Err(NilDahaError::InstanceMismatch { rep: rep.params, module: w.params });
    }
    let d = w.d();
    let dim = w.dim();
    let mut log = CheckLog::new();
    let fail = |name: String| NilDahaError::Bridge(name);

    let bt = k.beta.mul(&rep.tau);
    log.ensure(rep.a_cal.scale(&bt).add_scalar(&k.alpha) == w.a, "A = alpha + beta tau (X + X^{-1})", fail)?;
    log.ensure(w.alpha_s == k.alpha_s && w.beta_s == k.beta_s, "dual eigenvalue constants of W", fail)?;
    log.ensure(rep.a_s_cal.scale(&k.beta_s).add_scalar(&k.alpha_s) == w.a_s, "A^* = alpha^* + beta^* A^*_H", fail)?;
    log.ensure(
        rep.a_s_t_cal.scale(&k.beta_s_tilde).add_scalar(&k.alpha_s) == w.a_s_t,
        "Ã^* = alpha^* + beta~^* Ã^*_H",
        fail,
    )?;

    let pi = hecke_projection(&rep.t_p, &rep.kappa_p);
    log.ensure(pi == w.pi && pi == w.pi_closed_form(), "pi = (T' + kappa'^{-1}) / (kappa' + kappa'^{-1})", fail)?;
    let pi_t = hecke_projection(&rep.t, &rep.kappa);
    log.ensure(pi_t == w.pi_t && pi_t == w.pi_t_closed_form(), "pi~ = (T + kappa^{-1}) / (kappa + kappa^{-1})", fail)?;

    let closure_dim = cyclic_closure_dim(&[&rep.t, &rep.u, &rep.x], &w.x_hat);
    log.ensure(closure_dim == dim, "W is irreducible, generated by x̂", fail)?;

    let theta: Vec<F> = (0..=d).map(|i| k.theta(i)).collect();
    let es = primitive_idempotents(&rep.a_cal.scale(&bt).add_scalar(&k.alpha), &theta)?;
    let multiplicities: Vec<usize> = es.iter().map(Matrix::rank).collect();
    let expected: Vec<usize> = (0..=d).map(|i| if i == 0 || i == d { 1 } else { 2 }).collect();
    log.ensure(multiplicities == expected, "eigenvalue multiplicities 1, 2, ..., 2, 1", fail)?;

    for kind in SystemKind::ALL {
        let tau = rep.tau.mul(&k.qp(kind.tau_shift()));
        let basis = standard_basis(w, kind);
        let sd = kind.diameter(d);
        let mut scale = F::one();
        for (i, target) in basis.iter().enumerate() {
            if i > 0 {
                scale = scale.mul(&tau).mul(&F::one().sub(&k.qp(i as i64)));
            }
            let h = h_poly(i, &tau, &k.q, sd)?;
            let lhs = h.apply(&rep.x, &rep.x_inv, &basis[0]);
            let rhs: Vec<F> = target.iter().map(|t| t.mul(&scale)).collect();
            if lhs != rhs {
                return Err(NilDahaError::Bridge(format!("{kind}: h_{i}(X) u_0 = tau^{i} (q;q)_{i} u_{i}")));
            }
        }
        log.record(format!("{kind}: h_i(X) u_0 = tau^i (q;q)_i u_i"));
    }

    Ok(BridgeReport { multiplicities, closure_dim, log })
}
