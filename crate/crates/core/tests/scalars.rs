use dualpolar::algebra::{Field, Ring};
use dualpolar::scalars::*;
use proptest::prelude::*;

fn q() -> Scalar {
    Scalar::q()
}

fn at(x: &Scalar, q0: u64) -> AlgNum {
    eval_at(x, &Modulus::for_prime_power(q0).unwrap()).unwrap()
}

#[test]
fn gauss_int_oracles() {
    assert!(gauss_int(0).is_zero());
    assert!(gauss_int(1).is_one());
    assert_eq!(at(&gauss_int(3), 2), AlgNum::from_int(7));
    for n in 0..10 {
        assert_eq!(gauss_int(n + 1), q().mul(&gauss_int(n)).add(&Scalar::one()));
    }
    let closed = q().pow(5).sub(&Scalar::one()).div(&q().sub(&Scalar::one())).unwrap();
    assert_eq!(gauss_int(5), closed);
}

#[test]
fn pochhammer_oracles() {
    let r = Scalar::from_ratio(3, 7).add(&Scalar::v_pow(3));
    assert!(q_pochhammer(&r, 0).is_one());
    for n in 0..5 {
        assert!(q_pochhammer(&Scalar::zero(), n).is_one());
    }
    let d = 3;
    for n in d + 1..d + 4 {
        assert!(q_pochhammer(&q().pow(-(d as i64)), n).is_zero());
    }
}

#[test]
fn eval_oracles() {
    assert_eq!(at(&q(), 2), AlgNum::from_int(2));
    // tau = i q^{-(D+e)/2} with e = 1, D = 3
    let tau = Scalar::i().mul(&q().pow(-2));
    assert_eq!(at(&tau, 2), AlgNum::constant(GaussRat::new(GaussInt::new(0, 1), 4.into())));
    // v at q0 = 16 is 2, at q0 = 4 squares to 2
    assert_eq!(at(&Scalar::v_pow(1), 16), AlgNum::from_int(2));
    assert_eq!(at(&Scalar::v_pow(2), 4), AlgNum::from_int(2));
    assert_eq!(at(&Scalar::v_pow(1), 4).mul(&at(&Scalar::v_pow(1), 4)), AlgNum::from_int(2));
}

#[test]
fn eval_pole_is_reported() {
    let x = Scalar::one().div(&q().sub(&Scalar::from_int(2))).unwrap();
    let m = Modulus::for_prime_power(2).unwrap();
    assert_eq!(eval_at(&x, &m), Err(ScalarError::PoleAt(2)));
    assert!(Modulus::for_prime_power(6).is_err());
}

#[test]
fn phi32_oracles() {
    let d = 3i64;
    let tau = Scalar::i().mul(&Scalar::v_pow(-5));
    let one = Scalar::one();
    assert!(phi_32(&one, &tau, &tau, &q().pow(-d), &q()).unwrap().is_one());
    assert_eq!(phi_32(&Scalar::from_int(2), &tau, &tau, &q().pow(-d), &q()), Err(ScalarError::NonTerminating));
    // f_i(theta_0): a2 = q^0 kills all n >= 1 terms
    for i in 0..4 {
        let v = phi_32(&q().pow(-i), &one, &tau, &q().pow(-d), &q()).unwrap();
        assert!(v.is_one());
    }
    // pole: b2 = q^{-1} but i = 2
    assert_eq!(phi_32(&q().pow(-2), &tau, &tau, &q().pow(-1), &q()), Err(ScalarError::PoleInSummand));
}

#[test]
fn display_is_canonical() {
    assert_eq!(Scalar::from_ratio(-3, 6).to_string(), "-1/2");
    assert_eq!(Scalar::i().to_string(), "1*i");
    let x = Scalar::one().div(&q().sub(&Scalar::one())).unwrap();
    assert_eq!(x.to_string(), "(1) / ((-1)+(1)*v^4)");
    assert_eq!(Scalar::v_pow(-2).mul(&Scalar::from_ratio(1, 3)).to_string(), "(1/3)*v^-2");
}

#[test]
fn conj_fixes_rational_functions_of_q() {
    let x = q().add(&Scalar::from_int(3)).div(&q().pow(2).sub(&Scalar::from_ratio(1, 5))).unwrap();
    assert_eq!(x.conj(), x);
    let y = x.mul(&Scalar::i());
    assert_eq!(y.conj(), y.neg());
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    // small random rational functions in v with Gaussian coefficients
    let coef = (-3i64..=3, -2i64..=2);
    (
        prop::collection::vec(coef.clone(), 1..4),
        prop::collection::vec(coef, 1..3),
        -6i64..=6,
    )
        .prop_map(|(n, d, k)| {
            let mk = |c: &[(i64, i64)]| ZiPoly::new(c.iter().map(|&(a, b)| GaussInt::new(a, b)).collect());
            let den = mk(&d);
            let den = if den.is_zero() { ZiPoly::one() } else { den };
            // shift the denominator off the positive reals tested below
            let den = den.add(&ZiPoly::from_ints(&[0, 0, 0, 0, 0, 0, 0, 7]));
            Scalar::from_polys(&mk(&n), &den).mul(&Scalar::v_pow(k))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }

    #[test]
    fn eval_is_a_homomorphism(a in arb_scalar(), b in arb_scalar(), q0 in prop::sample::select(vec![2u64, 3, 4])) {
        let m = Modulus::for_prime_power(q0).unwrap();
        if let (Ok(ea), Ok(eb)) = (eval_at(&a, &m), eval_at(&b, &m)) {
            prop_assert_eq!(eval_at(&a.mul(&b), &m).unwrap(), ea.mul(&eb));
            prop_assert_eq!(eval_at(&a.add(&b), &m).unwrap(), ea.add(&eb));
        }
    }

    #[test]
    fn pochhammer_splits(a in arb_scalar(), m in 0u32..4, n in 0u32..4) {
        let lhs = q_pochhammer(&a, m + n);
        let rhs = q_pochhammer(&a, m).mul(&q_pochhammer(&a.mul(&Scalar::q_pow(m as i64)), n));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn algnum_field_ops() {
    let m = Modulus::for_prime_power(2).unwrap();
    let s = AlgNum::generator(&m);
    let x = s.add(&AlgNum::from_int(3)).mul(&s);
    let y = Field::inv(&x).unwrap();
    assert!(Ring::is_one(&x.mul(&y)));
    assert_eq!(s.mul(&s).mul(&s).mul(&s), AlgNum::from_int(2));
}

#[test]
fn real_sign_of_concrete_numbers() {
    use std::cmp::Ordering::*;
    let m2 = Modulus::for_prime_power(2).unwrap();
    let s = AlgNum::generator(&m2);
    let r = |n: i64, d: i64| AlgNum::from_int(n).div(&AlgNum::from_int(d)).unwrap();
    // 2^{1/4} ~ 1.18921, 2^{1/2} ~ 1.41421, 2^{3/4} ~ 1.68179
    assert_eq!(s.sub(&r(118, 100)).real_sign(), Some(Greater));
    assert_eq!(s.sub(&r(119, 100)).real_sign(), Some(Less));
    assert_eq!(s.mul(&s).sub(&r(3, 2)).real_sign(), Some(Less));
    assert_eq!(s.pow_u(3).sub(&r(168, 100)).real_sign(), Some(Greater));
    // 1 - s + s^2 - s^3 / 2 ~ 0.3840
    let x = AlgNum::from_int(1).sub(&s).add(&s.mul(&s)).sub(&s.pow_u(3).mul(&r(1, 2)));
    assert_eq!(x.real_sign(), Some(Greater));
    assert_eq!(x.sub(&r(39, 100)).real_sign(), Some(Less));
    assert_eq!(s.pow_u(4).sub(&AlgNum::from_int(2)).real_sign(), Some(Equal));
    let m4 = Modulus::for_prime_power(4).unwrap();
    let t = AlgNum::generator(&m4);
    assert_eq!(r(3, 2).sub(&t).real_sign(), Some(Greater));
    assert_eq!(AlgNum::constant(GaussRat::from_gauss(GaussInt::i())).real_sign(), None);
    assert_eq!(AlgNum::generator(&Modulus::for_prime_power(16).unwrap()).sub(&AlgNum::from_int(2)).real_sign(), Some(Equal));
}
