//! Non-symmetric dual q-Krawtchouk polynomials `ℓ_i^±`, their recurrences,
//! the eigenvectors `y_i` of `X` on **W**, and the inner product on
//! `L = span{eta^{-D}, ..., eta^{D-1}}` under which the `ℓ_i^±` are orthogonal.

mod realize;
mod spectral;

pub use realize::verify_realization;
pub use spectral::{verify_spectral, SpectralData};

use crate::algebra::{Algebra, Field, Ring};
use crate::checks::CheckLog;
use crate::drg::{minus, plus};
use crate::family::{Consts, FamilyParams};
use crate::laurent::LaurentPoly;
use crate::leonard::{h_poly, DualQKSeq, LeonardError, SystemKind};
use crate::linalg::{LinalgError, Matrix};
use crate::nildaha::{ExpectedActions, NilDahaError};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn of_cell(k: usize) -> (usize, Sign) {
        (k / 2, if k % 2 == 0 { Sign::Minus } else { Sign::Plus })
    }

    pub fn cell(self, i: usize) -> usize {
        match self {
            Sign::Minus => minus(i),
            Sign::Plus => plus(i),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NonsymError {
    #[error("the two expressions for ell_{index}^{sign} differ")]
    Expressions { index: usize, sign: Sign },
    #[error("ell_{index}^{sign} has exponents outside its window")]
    Degree { index: usize, sign: Sign },
    #[error("identity fails: {0}")]
    Identity(String),
    #[error("ell_{index}^{sign}(X) x̂ differs from the cell vector")]
    Realization { index: usize, sign: Sign },
    #[error("eta^{shift} ell_{index}^{sign} differs from its recurrence")]
    Recurrence { index: usize, sign: Sign, shift: i8 },
    #[error("spectral data: {0}")]
    Spectral(String),
    #[error("Laurent polynomial lies outside L")]
    OutsideL,
    #[error("inner products of the ell basis disagree with the cell sizes at ({row}, {col})")]
    Orthogonality { row: usize, col: usize },
    #[error("instance mismatch: family for {family:?}, module for {module:?}")]
    InstanceMismatch { family: FamilyParams, module: FamilyParams },
    #[error(transparent)]
    Leonard(#[from] LeonardError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    NilDaha(#[from] NilDahaError),
}

type Poly<F> = LaurentPoly<F>;

/// The polynomial family of an instance, with the closed-form spectral weights.
#[derive(Clone, Debug, PartialEq)]
pub struct NonsymFamily<F> {
    pub params: FamilyParams,
    pub q: F,
    pub qe: F,
    pub tau: F,
    /// `h_i(eta; tau, D)`, `0 <= i <= D`.
    pub h: Vec<Poly<F>>,
    /// `h_i(eta; tau q, D - 2)`, `0 <= i <= D - 2`, followed by the product `h^⊥_{D-1}`.
    pub h_perp: Vec<Poly<F>>,
    /// `h_i(eta; tau, D - 1)`.
    pub h_t: Vec<Poly<F>>,
    /// `h_i(eta; tau q, D - 1)`.
    pub h_t_perp: Vec<Poly<F>>,
    pub p_perp: Poly<F>,
    pub p_t: Poly<F>,
    pub p_t_perp: Poly<F>,
    /// `ℓ_i^±` in cell order `ℓ_0^-, ℓ_0^+, ...`.
    pub ell: Vec<Poly<F>>,
    /// The second expression, in the same order.
    pub ell_t: Vec<Poly<F>>,
    pub ell_top_minus: Poly<F>,
    pub ell_top_plus: Poly<F>,
    /// `eta^D p^⊥ h^⊥_{D-1}`.
    pub min_poly: Poly<F>,
    /// `lambda_i` at index `i + D`, `-D <= i <= D - 1`.
    pub lambda: Vec<F>,
    /// `||y_i||^2` at index `i + D`.
    pub norm_y: Vec<F>,
    /// `<y_i, y_{-i}>` at index `i - 1`, `1 <= i <= D - 1`.
    pub cross_y: Vec<F>,
    pub log: CheckLog,
}

fn q_powers<F: Field>(k: &Consts<F>) -> impl Fn(i64, i64) -> F + '_ {
    // q^{a + b e}
    move |a, b| k.vp(4 * a + 2 * b * k.e2())
}

fn sign_pow<F: Field>(n: i64) -> F {
    if n.rem_euclid(2) == 0 {
        F::one()
    } else {
        F::one().neg()
    }
}

impl<F: Field> NonsymFamily<F> {
    pub fn d(&self) -> usize {
        self.params.d
    }

    pub fn ell_at(&self, i: usize, s: Sign) -> &Poly<F> {
        &self.ell[s.cell(i)]
    }

    pub fn lambda_at(&self, i: i64) -> &F {
        &self.lambda[(i + self.d() as i64) as usize]
    }

    pub fn build(k: &Consts<F>) -> Result<Self, NonsymError> {
        let d = k.d();
        let dd = d as i64;
        let q = k.q.clone();
        let tau = k.tau.clone();
        let tau_inv = tau.inv().expect("tau != 0");
        let tau_q = tau.mul(&q);
        let one = F::one();
        let eta = Poly::<F>::eta();
        let c = |x: &F| Poly::constant(x.clone());
        let mut log = CheckLog::new();
        let fail = |n: String| NonsymError::Identity(n);

        let h: Vec<_> = (0..=d).map(|i| h_poly(i, &tau, &q, d)).collect::<Result<_, _>>()?;
        let mut h_perp: Vec<_> = (0..d - 1).map(|i| h_poly(i, &tau_q, &q, d - 2)).collect::<Result<_, _>>()?;
        let h_t: Vec<_> = (0..d).map(|i| h_poly(i, &tau, &q, d - 1)).collect::<Result<_, _>>()?;
        let h_t_perp: Vec<_> = (0..d).map(|i| h_poly(i, &tau_q, &q, d - 1)).collect::<Result<_, _>>()?;

        // h^⊥_{D-1} in its two product forms
        let mut sym = Poly::one();
        let mut fac = Poly::one();
        for n in 1..dd {
            let r1 = tau.mul(&k.qp(n));
            let r2 = tau_inv.mul(&k.qp(-n));
            sym = sym.mul(&eta.add(&eta.reflect()).sub(&c(&r1.add(&r2))));
            fac = fac.mul(&eta.sub(&c(&r1))).mul(&eta.sub(&c(&r2)));
        }
        let top = fac.shift(1 - dd);
        log.ensure(sym == top, "h^⊥_{D-1}: symmetric and factored products agree", fail)?;
        log.ensure(top == extend_by_recurrence(&h_perp, k, &tau_q)?, "h^⊥_{D-1} continues the three-term recurrence of h^⊥_i", fail)?;
        h_perp.push(top);

        let eta_inv = eta.reflect();
        let q_md = k.qp(-dd);
        let p_perp = eta_inv.mul(&eta.sub(&c(&tau))).mul(&eta.sub(&c(&tau_inv.mul(&q_md))));
        let p_t = eta_inv.mul(&eta.sub(&c(&tau_inv.mul(&q_md))));
        let p_t_perp = eta_inv.mul(&eta.sub(&c(&tau)));

        let q_d = k.qp(dd);
        let qe = k.qe();
        let one_qe = one.add(&qe);
        let mut ell = Vec::with_capacity(2 * d);
        let mut ell_t = Vec::with_capacity(2 * d);
        for i in 0..d {
            let ii = i as i64;
            let qq_i = k.poch(&q, i);
            let tau_i = tau.pow_u(i as u32);
            let q_i = k.qp(ii);
            let prev = if i == 0 { Poly::zero() } else { p_perp.mul(&h_perp[i - 1]) };
            let ratio = one.sub(&q_i).div(&q_d.sub(&q_i)).expect("q^D != q^i");
            let lead = q_d.sub(&q_i).div(&tau_i.mul(&q_d.sub(&one)).mul(&qq_i)).expect("nonzero");
            let minus_poly = h[i].sub(&prev.scale(&ratio)).scale(&lead);
            let plus_den = tau_i.mul(&tau).mul(&one.sub(&q_d)).mul(&qq_i);
            let plus_poly = h[i + 1].sub(&p_perp.mul(&h_perp[i])).scale(&plus_den.inv().expect("nonzero"));
            ell.push(minus_poly);
            ell.push(plus_poly);

            let den = tau_i.mul(&one_qe).mul(&qq_i).inv().expect("nonzero");
            let a = p_t.mul(&h_t[i]);
            let b = p_t_perp.mul(&h_t_perp[i]);
            ell_t.push(a.add(&b.scale(&qe)).scale(&den));
            ell_t.push(a.sub(&b).scale(&qe.mul(&den)));
        }
        for (cell, (x, y)) in ell.iter().zip(&ell_t).enumerate() {
            let (index, sign) = Sign::of_cell(cell);
            if x != y {
                return Err(NonsymError::Expressions { index, sign });
            }
            let ii = index as i64;
            let ok = match sign {
                Sign::Minus => x.within(-ii, ii),
                Sign::Plus => x.within(-ii - 1, ii - 1),
            };
            if !ok {
                return Err(NonsymError::Degree { index, sign });
            }
        }
        log.record("the two expressions for ell_i^± agree");
        log.record("degree windows of ell_i^±");

        let coeffs = Matrix::from_fn(2 * d, 2 * d, |r, col| ell[col].coeff(r as i64 - dd));
        log.ensure(coeffs.rank() == 2 * d, "ell_i^± form a basis of L", fail)?;

        let pt = p_perp.mul(&h_perp[d - 1]);
        let qq_d = k.poch(&q, d);
        let ell_top_plus = pt.shift(-1).scale(&tau.pow_u(d as u32 + 1).mul(&qq_d).inv().expect("nonzero").neg());
        let ell_top_minus = pt.scale(&tau.pow_u(d as u32).mul(&qq_d).inv().expect("nonzero"));
        let r1 = pt.shift(-1).sub(&Poly::monomial(-dd - 1, q_md.clone()));
        log.ensure(r1.within(-dd, dd - 1), "eta^{-1} p^⊥ h^⊥_{D-1} = q^{-D} eta^{-D-1} mod L", fail)?;
        let r2 = pt.sub(&Poly::monomial(dd, one.clone()));
        log.ensure(r2.within(-dd, dd - 1), "p^⊥ h^⊥_{D-1} = eta^D mod L", fail)?;

        let lambda: Vec<F> = (-dd..dd).map(|i| if i >= 0 { tau.mul(&k.qp(i)) } else { tau_inv.mul(&k.qp(i)) }).collect();
        let distinct = (0..lambda.len()).all(|a| (a + 1..lambda.len()).all(|b| lambda[a] != lambda[b]));
        log.ensure(distinct, "lambda_i pairwise distinct", fail)?;
        let min_poly = pt.shift(dd);
        let monic = min_poly.within(0, 2 * dd) && min_poly.coeff(2 * dd).is_one();
        log.ensure(monic && lambda.iter().all(|l| min_poly.eval(l).is_zero()), "eta^D p^⊥ h^⊥_{D-1} = prod (eta - lambda_i)", fail)?;

        let (norm_y, cross_y) = closed_weights(k);
        Ok(NonsymFamily {
            params: k.params,
            q,
            qe,
            tau,
            h,
            h_perp,
            h_t,
            h_t_perp,
            p_perp,
            p_t,
            p_t_perp,
            ell,
            ell_t,
            ell_top_minus,
            ell_top_plus,
            min_poly,
            lambda,
            norm_y,
            cross_y,
            log,
        })
    }

    /// Checks the four-term recurrences for `eta^{±1} ℓ_i^±`, with the
    /// `ℓ_D^±` correction in the two boundary cases.
    pub fn verify_recurrences(&self, k: &Consts<F>) -> Result<CheckLog, NonsymError> {
        let d = self.d();
        let exp = ExpectedActions::new(k);
        let corr = k.tau.mul(&F::one().sub(&k.qp(d as i64)));
        let mut log = CheckLog::new();
        for (shift, table) in [(1i8, &exp.x), (-1i8, &exp.x_inv)] {
            for col in 0..2 * d {
                let (index, sign) = Sign::of_cell(col);
                let mut lhs = self.ell[col].shift(shift as i64);
                for (row, l) in self.ell.iter().enumerate() {
                    lhs = lhs.sub(&l.scale(table.get(row, col)));
                }
                if index == d - 1 {
                    match (shift, sign) {
                        (1, Sign::Minus) => lhs = lhs.sub(&self.ell_top_minus.scale(&corr)),
                        (-1, Sign::Plus) => lhs = lhs.sub(&self.ell_top_plus.scale(&corr)),
                        _ => {}
                    }
                }
                if !lhs.is_zero() {
                    return Err(NonsymError::Recurrence { index, sign, shift });
                }
            }
            log.record(format!("eta^{shift} ell_i^± recurrences"));
        }
        Ok(log)
    }

    /// Reduces `f` into `L` modulo multiples of the minimal polynomial; the
    /// values at every `lambda_i` are unchanged.
    pub fn reduce_to_l(&self, f: &Poly<F>) -> Poly<F> {
        let d = self.d() as i64;
        let m = self.min_poly.shift(-d);
        let (m_lo, m_hi) = (m.coeff(-d), m.coeff(d));
        let mut f = f.clone();
        while !f.is_zero() && f.high_degree() > d - 1 {
            let hd = f.high_degree();
            let c = f.coeff(hd).div(&m_hi).expect("monic");
            f = f.sub(&m.shift(hd - d).scale(&c));
        }
        while !f.is_zero() && f.low_degree() < -d {
            let ld = f.low_degree();
            let c = f.coeff(ld).div(&m_lo).expect("nonzero constant term");
            f = f.sub(&m.shift(ld + d).scale(&c));
        }
        f
    }

    /// The Hermitian form on `L` built from `lambda_i` and the closed-form weights.
    pub fn inner_product_l(&self, f: &Poly<F>, g: &Poly<F>) -> Result<F, NonsymError> {
        let d = self.d() as i64;
        if !f.within(-d, d - 1) || !g.within(-d, d - 1) {
            return Err(NonsymError::OutsideL);
        }
        let fv: Vec<F> = self.lambda.iter().map(|l| f.eval(l)).collect();
        let gv: Vec<F> = self.lambda.iter().map(|l| g.eval(l).conj()).collect();
        let mut acc = F::zero();
        for (j, w) in self.norm_y.iter().enumerate() {
            acc = acc.add(&fv[j].mul(&gv[j]).mul(w));
        }
        for i in 1..d {
            let (p, m) = ((d + i) as usize, (d - i) as usize);
            let cross = fv[p].mul(&gv[m]).add(&fv[m].mul(&gv[p]));
            acc = acc.add(&cross.mul(&self.cross_y[i as usize - 1]));
        }
        Ok(acc)
    }

    /// Gram matrix of `{ℓ_i^±}` in cell order.
    pub fn gram_ell(&self) -> Result<Matrix<F>, NonsymError> {
        let n = self.ell.len();
        let mut g = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                g.set(r, c, self.inner_product_l(&self.ell[r], &self.ell[c])?);
            }
        }
        Ok(g)
    }

    /// Checks that the Gram matrix of the `ℓ_i^±` is `diag(sizes)`.
    pub fn verify_orthogonality(&self, sizes: &[F]) -> Result<CheckLog, NonsymError> {
        let g = self.gram_ell()?;
        for r in 0..g.rows() {
            for c in 0..g.cols() {
                let want = if r == c { sizes[r].clone() } else { F::zero() };
                if *g.get(r, c) != want {
                    return Err(NonsymError::Orthogonality { row: r, col: c });
                }
            }
        }
        let mut log = CheckLog::new();
        log.record("<ell_i^mu, ell_j^nu>_L = delta_ij delta_mu,nu |C_i^mu|");
        Ok(log)
    }

    /// Exponent range covering every row of [`coefficient_rows`](Self::coefficient_rows).
    pub fn coefficient_range(&self) -> (i64, i64) {
        let d = self.d() as i64;
        (-d - 1, d)
    }

    /// `(name, coefficients)` for `ℓ_0^-, ℓ_0^+, ..., ℓ_{D-1}^+, ℓ_D^-, ℓ_D^+`, with
    /// coefficients listed over [`coefficient_range`](Self::coefficient_range).
    pub fn coefficient_rows(&self) -> Vec<(String, Vec<F>)> {
        let (lo, hi) = self.coefficient_range();
        let d = self.d();
        let row = |p: &Poly<F>| (lo..=hi).map(|k| p.coeff(k)).collect::<Vec<_>>();
        let mut rows: Vec<(String, Vec<F>)> = self
            .ell
            .iter()
            .enumerate()
            .map(|(cell, p)| {
                let (i, s) = Sign::of_cell(cell);
                (format!("ell{s}_{i}"), row(p))
            })
            .collect();
        rows.push((format!("ell-_{d}"), row(&self.ell_top_minus)));
        rows.push((format!("ell+_{d}"), row(&self.ell_top_plus)));
        rows
    }
}

/// `h_{d+1}` for the system of diameter `d = hs.len() - 1` with parameter
/// `tau`, from the three-term recurrence of `v_i` with `c_{d+1} = gamma (1 - q^{d+1})`.
fn extend_by_recurrence<F: Field>(hs: &[Poly<F>], k: &Consts<F>, tau: &F) -> Result<Poly<F>, NonsymError> {
    let d = hs.len() - 1;
    let seq = DualQKSeq::for_system(SystemKind::PhiPerp, &k.q, &k.qe(), k.d())?;
    debug_assert_eq!(seq.d, d);
    let q = &k.q;
    let one = F::one();
    let b = |i: usize| seq.beta.mul(&one.sub(&k.qp(i as i64 - d as i64)));
    let c = |i: usize| seq.gamma.mul(&one.sub(&k.qp(i as i64)));
    let theta0 = seq.theta(0);
    let a_d = theta0.sub(&b(d)).sub(&c(d));
    // h_i = s_i v_i(xi) with s_i = tau^i (q;q)_i
    let s = |i: usize| tau.pow_u(i as u32).mul(&k.poch(q, i));
    let eta = Poly::<F>::eta();
    let xi = eta.add(&eta.reflect()).scale(&seq.beta.mul(tau)).add(&Poly::constant(seq.alpha.clone()));
    let v_d = hs[d].scale(&s(d).inv().expect("nonzero"));
    let v_prev = hs[d - 1].scale(&s(d - 1).inv().expect("nonzero"));
    let v_next = xi.sub(&Poly::constant(a_d)).mul(&v_d).sub(&v_prev.scale(&b(d - 1)));
    Ok(v_next.scale(&s(d + 1).div(&c(d + 1)).expect("nonzero")))
}

/// Closed forms for `||y_i||^2` and `<y_i, y_{-i}>`.
fn closed_weights<F: Field>(k: &Consts<F>) -> (Vec<F>, Vec<F>) {
    let d = k.d() as i64;
    let qq = q_powers(k);
    let one = F::one();
    let poch = |x: &F, n: i64| k.poch(x, n as usize);
    let q = &k.q;
    let mut norm = vec![F::zero(); 2 * d as usize];
    norm[d as usize] = poch(&qq(0, 1).neg(), d).inv().expect("nonzero");
    norm[0] = poch(&qq(0, -1).neg(), d).inv().expect("nonzero");
    let mut cross = Vec::new();
    for i in 1..d {
        let den_e = one.add(&qq(d - 2 * i, 1));
        let num = sign_pow::<F>(i)
            .mul(&qq(i * (d - i), i))
            .mul(&poch(&qq(1 - d, 0), i))
            .mul(&one.add(&qq(d, 0)).add(&qq(d - i, 1)).sub(&qq(d - i, 0)));
        let den = poch(q, i).mul(&poch(&qq(-i, 1).neg(), d)).mul(&den_e);
        norm[(d + i) as usize] = num.div(&den).expect("nonzero");

        let num = sign_pow::<F>(i - 1)
            .mul(&qq(i * (d - i - 2) + d, i + 1))
            .mul(&poch(&qq(1 - d, 0), i - 1))
            .mul(&one.add(&qq(d, 0)).add(&qq(i, -1)).sub(&qq(i, 0)));
        let den = poch(q, i - 1).mul(&poch(&qq(1 - i, 1).neg(), d)).mul(&den_e);
        norm[(d - i) as usize] = num.div(&den).expect("nonzero");

        let num = sign_pow::<F>(i).mul(&qq(i * (d - i - 1) + d, i)).mul(&poch(&qq(1 - d, 0), i));
        let den = poch(q, i - 1).mul(&poch(&qq(1 - i, 1).neg(), d - 1)).mul(&den_e);
        cross.push(num.div(&den).expect("nonzero"));
    }
    (norm, cross)
}
