use dualpolar::algebra::Ring;
use dualpolar::drg::{default_choice, profile_from_graph, CliquePartition, WInput, WModule};
use dualpolar::family::{Consts, FamilyParams, FamilyTag};
use dualpolar::geometry::{build_graph, DPGraph};
use dualpolar::laurent::LaurentPoly;
use dualpolar::leonard::{h_poly, realize_four_systems, DualQKSeq, LeonardError, SystemKind};
use dualpolar::scalars::{eval_at, AlgNum, Scalar};
use num_rational::BigRational;

fn r(n: i64) -> BigRational {
    BigRational::from_i64(n)
}

fn frac(n: i64, d: i64) -> BigRational {
    r(n) / r(d)
}

fn graph(tag: FamilyTag, q: u64, d: usize) -> DPGraph {
    build_graph(FamilyParams::new(tag, d).unwrap(), q, 10_000).unwrap()
}

fn concrete_module(g: &DPGraph) -> WModule<BigRational> {
    let an = profile_from_graph(g).unwrap();
    let (x, c) = default_choice(g).unwrap();
    let part = CliquePartition::new(g, x, c).unwrap();
    WModule::from_graph(g, &an, &part).unwrap()
}

fn formal_module(tag: FamilyTag, d: usize) -> WModule<Scalar> {
    WModule::build(WInput::from_consts(&Consts::formal(FamilyParams::new(tag, d).unwrap()))).unwrap()
}

fn symplectic_phi() -> DualQKSeq<BigRational> {
    DualQKSeq::for_system(SystemKind::Phi, &r(2), &r(2), 3).unwrap()
}

#[test]
fn symplectic_parameter_sequence() {
    let s = symplectic_phi();
    assert_eq!([&s.alpha, &s.beta, &s.gamma, &s.alpha_s, &s.beta_s], [&r(-1), &r(16), &r(-1), &r(-10), &r(45)]);
    let pa = s.param_array().unwrap();
    assert_eq!(pa.theta, [r(14), r(5), r(-1), r(-7)]);
    assert_eq!(pa.theta_s, [r(35), frac(25, 2), frac(5, 4), frac(-35, 8)]);
    // varphi_d = beta beta^* q^{1-2d} (1 - q^d)(1 - q^{-1})
    let expect = r(16 * 45) * frac(1, 32) * r(1 - 8) * frac(1, 2);
    assert_eq!(pa.varphi[2], expect);
}

#[test]
fn parameter_sequences_of_the_four_systems_are_related() {
    let params = FamilyParams::new(FamilyTag::C, 4).unwrap();
    let k = Consts::formal(params);
    let q = k.q.clone();
    let qi = q.inv().unwrap();
    let seq = |kind| DualQKSeq::for_system(kind, &q, &k.qe(), 4).unwrap();
    let phi = seq(SystemKind::Phi);
    assert_eq!((&phi.alpha, &phi.beta, &phi.gamma), (&k.alpha, &k.beta, &k.gamma));
    assert_eq!((&phi.alpha_s, &phi.beta_s), (&k.alpha_s, &k.beta_s));
    let perp = seq(SystemKind::PhiPerp);
    assert_eq!(perp.d, 2);
    assert_eq!(perp.beta, phi.beta.mul(&qi));
    assert_eq!(perp.beta_s, phi.beta_s.mul(&qi));
    assert_eq!(perp.gamma, phi.gamma.mul(&q));
    assert_eq!((&perp.alpha, &perp.alpha_s), (&phi.alpha, &phi.alpha_s));
    let tilde = seq(SystemKind::PhiTilde);
    assert_eq!(tilde.d, 3);
    assert_eq!(tilde.beta_s, k.beta_s_tilde);
    assert_eq!((&tilde.beta, &tilde.gamma), (&phi.beta, &phi.gamma));
    let tilde_perp = seq(SystemKind::PhiTildePerp);
    assert_eq!(tilde_perp.d, 3);
    assert_eq!((&tilde_perp.beta, &tilde_perp.beta_s, &tilde_perp.gamma), (&perp.beta, &tilde.beta_s, &perp.gamma));
    for i in 0..=3 {
        assert_eq!(tilde.theta_s(i), k.theta_s_tilde(i));
    }
}

#[test]
fn intersection_numbers_by_both_routes() {
    let s = symplectic_phi();
    let closed = s.intersection_numbers();
    assert_eq!(closed.b, [r(14), r(12), r(8), r(0)]);
    assert_eq!(closed.c, [r(0), r(1), r(3), r(7)]);
    assert_eq!(s.param_array().unwrap().intersection_numbers(), closed);
    for params in [(FamilyTag::D, 3), (FamilyTag::TwoAEven, 5), (FamilyTag::TwoAOdd, 4)] {
        let k = Consts::formal(FamilyParams::new(params.0, params.1).unwrap());
        for kind in SystemKind::ALL {
            let s = DualQKSeq::for_system(kind, &k.q, &k.qe(), params.1).unwrap();
            let ints = s.intersection_numbers();
            assert!(ints.c[0].is_zero() && ints.b[s.d].is_zero());
            assert_eq!(s.param_array().unwrap().intersection_numbers(), ints, "{kind} {params:?}");
        }
    }
}

#[test]
fn intersection_numbers_match_the_graph_and_the_clique() {
    let g = graph(FamilyTag::C, 2, 3);
    let p = profile_from_graph(&g).unwrap().profile;
    let phi = symplectic_phi().intersection_numbers();
    assert_eq!((phi.a, phi.b, phi.c), (p.a.clone(), p.b.clone(), p.c.clone()));
    let tilde = DualQKSeq::for_system(SystemKind::PhiTilde, &r(2), &r(2), 3).unwrap().intersection_numbers();
    assert_eq!(tilde.b, p.b_t);
    assert_eq!(tilde.c, p.c_t);
    assert_eq!(tilde.a, p.a_t);
    for i in 0..2 {
        assert_eq!(tilde.b[i], p.b[i + 1]);
    }
}

#[test]
fn f_values() {
    let s = symplectic_phi();
    for i in 0..=3 {
        assert!(s.f_value(i, 0).unwrap().is_one());
        assert!(s.f_value(0, i).unwrap().is_one());
    }
    let q = r(2);
    let one = r(1);
    let qi = frac(1, 2);
    let tau2 = s.gamma.clone() / s.beta.clone();
    let f11 = one.clone() + (one.clone() - qi.clone()) * (one.clone() - qi) * (one.clone() - tau2 * q.clone()) * q.clone()
        / ((one.clone() - frac(1, 8)) * (one - q));
    assert_eq!(s.f_value(1, 1).unwrap(), f11);
    // f_1 is v_1 / v_1(theta_0) and v_1 = (xi - a_0) / c_1
    let ints = s.intersection_numbers();
    let theta = s.param_array().unwrap().theta;
    assert_eq!(f11, (theta[1].clone() - ints.a[0].clone()) / ints.b[0].clone());
}

#[test]
fn h_polynomials() {
    let k = Consts::formal(FamilyParams::new(FamilyTag::C, 4).unwrap());
    let q = k.q.clone();
    let d = 4;
    let tau = k.tau.clone();
    assert_eq!(h_poly(0, &tau, &q, d).unwrap(), LaurentPoly::one());
    let h1 = h_poly(1, &tau, &q, d).unwrap();
    let mid = tau.add(&tau.inv().unwrap().mul(&k.qp(-4))).neg();
    assert_eq!(h1, LaurentPoly::new(-1, vec![Scalar::one(), mid, Scalar::one()]));
    for i in 0..=d {
        let h = h_poly(i, &tau, &q, d).unwrap();
        assert_eq!(h.reflect(), h, "h_{i} symmetric");
        assert_eq!((h.low_degree(), h.high_degree()), (-(i as i64), i as i64));
    }
    for kind in SystemKind::ALL {
        let s = DualQKSeq::for_system(kind, &q, &k.qe(), d).unwrap();
        let tau_k = tau.mul(&k.qp(kind.tau_shift()));
        s.check_h(&tau_k).unwrap_or_else(|e| panic!("{kind}: {e}"));
    }
    let s = DualQKSeq::for_system(SystemKind::Phi, &q, &k.qe(), d).unwrap();
    assert!(s.check_h(&tau.mul(&q)).is_err());
}

#[test]
fn m_values() {
    let s = symplectic_phi();
    let pa = s.param_array().unwrap();
    let m: Vec<BigRational> = (0..=3).map(|i| s.m_closed(i).unwrap()).collect();
    assert_eq!(m[0], frac(1, 135));
    assert_eq!(m.iter().fold(r(0), |a, b| a + b), r(1));
    for (i, mi) in m.iter().enumerate() {
        assert!(*mi > r(0));
        assert_eq!(pa.m_general(i).unwrap(), *mi);
    }
}

#[test]
fn concrete_systems_on_enumerated_graphs() {
    for (tag, q, d) in [(FamilyTag::C, 2, 3), (FamilyTag::D, 2, 3), (FamilyTag::D, 2, 4), (FamilyTag::B, 2, 3), (FamilyTag::TwoAOdd, 4, 3), (FamilyTag::TwoD, 2, 3)] {
        let g = graph(tag, q, d);
        let w = concrete_module(&g);
        let four = realize_four_systems(&w).unwrap_or_else(|e| panic!("{tag}({q},{d}): {e}"));
        let phi = four.get(SystemKind::Phi);
        let n = r(g.len() as i64);
        assert_eq!(phi.m[0], r(1) / n);
        for (i, mi) in phi.m.iter().enumerate() {
            let ex = w.e[i].apply(&w.x_hat);
            assert_eq!(*mi, w.inner(&ex, &ex), "m_{i} = ||E_i x̂||^2");
            assert!(*mi > r(0));
        }
        let dims: Vec<usize> = four.systems.iter().map(|s| s.d + 1).collect();
        assert_eq!(dims, [d + 1, d - 1, d, d]);
    }
}

#[test]
fn formal_systems_across_the_sweep() {
    for e2 in 0..=4 {
        for d in 3..=5 {
            let tag = FamilyTag::representative(e2).unwrap();
            let four = realize_four_systems(&formal_module(tag, d)).unwrap_or_else(|e| panic!("{tag} D={d}: {e}"));
            for s in &four.systems {
                assert!(s.log.passed().iter().any(|n| n.starts_with("LS4")));
            }
        }
    }
}

#[test]
fn formal_systems_evaluate_to_concrete_systems() {
    for (tag, q, d) in [(FamilyTag::C, 2, 3), (FamilyTag::TwoAOdd, 4, 3)] {
        let g = graph(tag, q, d);
        let concrete = realize_four_systems(&concrete_module(&g)).unwrap();
        let k = Consts::<AlgNum>::concrete(g.params(), q).unwrap();
        let formal = realize_four_systems(&formal_module(tag, d)).unwrap();
        for (f, c) in formal.systems.iter().zip(&concrete.systems) {
            let ev = |x: &Scalar| eval_at(x, k.modulus()).unwrap();
            let lift = |x: &BigRational| AlgNum::from_rational(x);
            let fm: Vec<AlgNum> = f.m.iter().map(ev).collect();
            let cm: Vec<AlgNum> = c.m.iter().map(lift).collect();
            assert_eq!(fm, cm, "{}", f.kind);
            let fb: Vec<AlgNum> = f.ints.b.iter().map(ev).collect();
            let cb: Vec<AlgNum> = c.ints.b.iter().map(lift).collect();
            assert_eq!(fb, cb);
            assert_eq!(f.params.varphi.iter().map(ev).collect::<Vec<_>>(), c.params.varphi.iter().map(lift).collect::<Vec<_>>());
            assert_eq!(f.log, c.log);
        }
    }
}

#[test]
fn invalid_sequences_and_corrupted_modules_are_rejected() {
    let z = r(0);
    let o = r(1);
    assert_eq!(DualQKSeq::new(o.clone(), o.clone(), z.clone(), o.clone(), o.clone(), r(2), 3), Err(LeonardError::ZeroParameter("beta")));
    assert!(DualQKSeq::new(o.clone(), o.clone(), o.clone(), o.clone(), o.clone(), r(1), 3).is_err());

    let mut w = concrete_module(&graph(FamilyTag::D, 2, 3));
    w.theta[1] = w.theta[1].clone() + r(1);
    let err = realize_four_systems(&w).unwrap_err();
    assert!(matches!(err, LeonardError::ParameterMismatch { system: SystemKind::Phi, what: "eigenvalue", index: 1 }), "{err}");

    let mut w = concrete_module(&graph(FamilyTag::D, 2, 3));
    w.u_perp[0][1] = w.u_perp[0][1].clone() + r(1);
    assert!(matches!(realize_four_systems(&w), Err(LeonardError::Structure { system: SystemKind::PhiPerp, .. })));
}
