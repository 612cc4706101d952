//! The `ℓ_i^±` evaluated at `X` on **W**.

use super::{NonsymError, NonsymFamily, Sign};
use crate::algebra::{Field, Ring};
use crate::checks::CheckLog;
use crate::drg::WModule;
use crate::linalg::cyclic_closure_dim;
use crate::nildaha::NilDahaRep;

/// Checks `ℓ_i^±(X) x̂ = Ĉ_i^±`, `ℓ_D^±(X) = 0`, the minimal polynomial of
/// `X`, and the zeroth standard vectors of the other three Leonard systems.
pub fn verify_realization<F: Field>(fam: &NonsymFamily<F>, rep: &NilDahaRep<F>, w: &WModule<F>) -> Result<CheckLog, NonsymError> {
    if fam.params != w.params || rep.params != w.params {
        return Err(NonsymError::InstanceMismatch { family: fam.params, module: w.params });
    }
    let (x, xi) = (&rep.x, &rep.x_inv);
    let x_hat = &w.x_hat;
    let mut log = CheckLog::new();
    for (cell, l) in fam.ell.iter().enumerate() {
        if l.apply(x, xi, x_hat) != w.unit(cell) {
            let (index, sign) = Sign::of_cell(cell);
            return Err(NonsymError::Realization { index, sign });
        }
    }
    log.record("ell_i^±(X) x̂ = Ĉ_i^±");

    let fail = |n: String| NonsymError::Identity(n);
    let zero_on_w = |p: &crate::laurent::LaurentPoly<F>| p.eval_matrix(x, xi).is_zero();
    log.ensure(zero_on_w(&fam.ell_top_minus) && zero_on_w(&fam.ell_top_plus), "ell_D^±(X) = 0 on W", fail)?;
    log.ensure(zero_on_w(&fam.p_perp.mul(&fam.h_perp[fam.d() - 1])), "p^⊥(X) h^⊥_{D-1}(X) = 0 on W", fail)?;
    let krylov = cyclic_closure_dim(&[x], x_hat);
    log.ensure(
        zero_on_w(&fam.min_poly) && krylov == w.dim(),
        "eta^D p^⊥ h^⊥_{D-1} is the minimal polynomial of X",
        fail,
    )?;

    let scale = |v: Vec<F>, c: &F| v.into_iter().map(|t| t.mul(c)).collect::<Vec<F>>();
    let c_perp = fam.tau.mul(&fam.q).inv().expect("nonzero");
    log.ensure(
        scale(fam.p_perp.apply(x, xi, x_hat), &c_perp) == w.u_perp[0],
        "u_0^⊥ = tau^{-1} q^{-1} p^⊥(X) x̂",
        fail,
    )?;
    log.ensure(fam.p_t.apply(x, xi, x_hat) == w.c_i_hat(0), "Ĉ_0 = p~(X) x̂", fail)?;
    log.ensure(
        scale(fam.p_t_perp.apply(x, xi, x_hat), &fam.qe.neg()) == w.u_perp_t[0],
        "ũ_0^⊥ = -q^e p~^⊥(X) x̂",
        fail,
    )?;
    Ok(log)
}
