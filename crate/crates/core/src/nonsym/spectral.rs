//! The eigenvectors `y_i` of `X` on **W** and the weights of the form on `L`.

use super::{q_powers, sign_pow, NonsymError, NonsymFamily};
use crate::algebra::Field;
use crate::checks::CheckLog;
use crate::drg::WModule;
use crate::family::Consts;
use crate::laurent::LaurentPoly;
use crate::linalg::Matrix;
use crate::nildaha::NilDahaRep;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData<F> {
    /// `y_i` at index `i + D`, `-D <= i <= D - 1`.
    pub y: Vec<Vec<F>>,
    /// `<eta^a, eta^b>_L` for `-D <= a, b <= D - 1`.
    pub monomial_gram: Matrix<F>,
    pub log: CheckLog,
}

fn lin<F: Field>(a: &F, u: &[F], b: &F, v: &[F]) -> Vec<F> {
    u.iter().zip(v).map(|(x, y)| a.mul(x).add(&b.mul(y))).collect()
}

/// Builds the `y_i` and checks them against `X`, the projections `E_i` and
/// the closed-form weights stored in `fam`.
pub fn verify_spectral<F: Field>(
    fam: &NonsymFamily<F>,
    rep: &NilDahaRep<F>,
    w: &WModule<F>,
    k: &Consts<F>,
) -> Result<SpectralData<F>, NonsymError> {
    if fam.params != w.params || rep.params != w.params {
        return Err(NonsymError::InstanceMismatch { family: fam.params, module: w.params });
    }
    let d = w.d();
    let dd = d as i64;
    let one = F::one();
    let zero = F::zero();
    let qq = q_powers(k);
    let poch = |x: &F, n: i64| k.poch(x, n as usize);
    let fail = |n: String| NonsymError::Spectral(n);
    let mut log = CheckLog::new();

    let ex: Vec<Vec<F>> = w.e.iter().map(|e| e.apply(&w.x_hat)).collect();
    let u0 = &w.u_perp[0];
    let eu: Vec<Vec<F>> = w.e.iter().map(|e| e.apply(u0)).collect();

    let mut y = vec![Vec::new(); 2 * d];
    y[d] = ex[0].clone();
    y[0] = ex[d].clone();
    let q_d1 = qq(dd, 0).sub(&one);
    for i in 1..dd {
        let iu = i as usize;
        let den = q_d1.mul(&one.add(&qq(dd - 2 * i, 1))).inv().expect("nonzero");
        let c_u = qq(dd - i + 1, 0).mul(&den);
        let a = qq(dd - i, 0).sub(&one).mul(&one.add(&qq(dd - i, 1))).mul(&den);
        let b = qq(dd - 2 * i, 0).mul(&qq(i, 0).sub(&one)).mul(&qq(0, 1).add(&qq(i, 0))).mul(&den);
        y[d + iu] = lin(&a, &ex[iu], &c_u, &eu[iu]);
        y[d - iu] = lin(&b, &ex[iu], &c_u.neg(), &eu[iu]);
    }

    for (j, v) in y.iter().enumerate() {
        let l = &fam.lambda[j];
        if rep.x.apply(v) != v.iter().map(|t| t.mul(l)).collect::<Vec<_>>() {
            return Err(NonsymError::Spectral(format!("X y_{} = lambda_{} y_{}", j as i64 - dd, j as i64 - dd, j as i64 - dd)));
        }
    }
    log.record("X y_i = lambda_i y_i");
    let sum = y.iter().fold(vec![zero.clone(); w.dim()], |acc, v| lin(&one, &acc, &one, v));
    log.ensure(sum == w.x_hat, "sum of y_i = x̂", fail)?;
    let pairs_ok = (1..d).all(|i| lin(&one, &y[d + i], &one, &y[d - i]) == ex[i]);
    log.ensure(pairs_ok, "y_i + y_{-i} = E_i x̂", fail)?;

    let n = 2 * d;
    let ip: Vec<Vec<F>> = (0..n).map(|a| (0..n).map(|b| w.inner(&y[a], &y[b])).collect()).collect();
    let mut support_ok = true;
    for a in 0..n {
        for b in 0..n {
            let paired = a == b || (a != 0 && b != 0 && a + b == n);
            support_ok &= paired || ip[a][b].is_zero();
        }
    }
    log.ensure(support_ok, "<y_i, y_j> = 0 unless j = ±i", fail)?;
    log.ensure((0..n).all(|a| ip[a][a] == fam.norm_y[a]), "||y_i||^2 closed forms", fail)?;
    let cross_ok = (1..d).all(|i| ip[d + i][d - i] == fam.cross_y[i - 1] && ip[d - i][d + i] == fam.cross_y[i - 1]);
    log.ensure(cross_ok, "<y_i, y_{-i}> closed forms", fail)?;

    let ex_ok = (0..=dd).all(|i| {
        let iu = i as usize;
        let closed = sign_pow::<F>(i)
            .mul(&qq(i * (dd - i + 1), i))
            .mul(&poch(&qq(-dd, 0), i))
            .mul(&one.add(&qq(dd - 2 * i, 1)))
            .div(&poch(&k.q, i).mul(&poch(&qq(-i, 1).neg(), dd + 1)))
            .expect("nonzero");
        w.inner(&ex[iu], &ex[iu]) == closed
    });
    log.ensure(ex_ok, "||E_i x̂||^2 closed forms", fail)?;
    let eu_ok = (1..dd).all(|i| {
        let iu = i as usize;
        let closed = sign_pow::<F>(i - 1)
            .mul(&qq(i * (dd - i + 1) + dd - 2, i))
            .mul(&poch(&qq(-dd, 0), i + 1))
            .mul(&one.add(&qq(dd - 2 * i, 1)))
            .div(&poch(&k.q, i - 1).mul(&poch(&qq(1 - i, 1).neg(), dd - 1)))
            .expect("nonzero");
        w.inner(&eu[iu], &eu[iu]) == closed
    });
    log.ensure(eu_ok, "||E_i u_0^⊥||^2 closed forms", fail)?;
    let u0_norm = qq(-1, 1).mul(&qq(dd - 1, 0).sub(&one)).mul(&q_d1);
    log.ensure(w.inner(u0, u0) == u0_norm, "||u_0^⊥||^2 = q^{e-1}(q^{D-1} - 1)(q^D - 1)", fail)?;

    // the form on L against inner products in W
    let mono: Vec<LaurentPoly<F>> = (-dd..dd).map(|a| LaurentPoly::monomial(a, one.clone())).collect();
    let vecs: Vec<Vec<F>> = mono.iter().map(|m| m.apply(&rep.x, &rep.x_inv, &w.x_hat)).collect();
    let mut monomial_gram = Matrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let via_l = fam.inner_product_l(&mono[a], &mono[b])?;
            if via_l != w.inner(&vecs[a], &vecs[b]) {
                return Err(NonsymError::Spectral(format!("<f, g>_L = <f(X) x̂, g(X) x̂> for f = eta^{}, g = eta^{}", a as i64 - dd, b as i64 - dd)));
            }
            monomial_gram.set(a, b, via_l);
        }
    }
    log.record("<f, g>_L = <f(X) x̂, g(X) x̂> on the monomial basis of L");

    let hs: Vec<LaurentPoly<F>> = fam.h.iter().map(|h| fam.reduce_to_l(h)).collect();
    let mut sym_ok = true;
    for a in 0..=d {
        for b in 0..a {
            sym_ok &= fam.inner_product_l(&hs[a], &hs[b])?.is_zero();
        }
    }
    log.ensure(sym_ok, "h_i orthogonal under the form on L", fail)?;

    Ok(SpectralData { y, monomial_gram, log })
}
