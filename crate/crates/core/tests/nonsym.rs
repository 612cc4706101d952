use dualpolar::algebra::{Algebra, Field, Ring};
use dualpolar::drg::{default_choice, minus, plus, profile_from_graph, CliquePartition, WInput, WModule};
use dualpolar::family::{Consts, FamilyParams, FamilyTag};
use dualpolar::geometry::build_graph;
use dualpolar::laurent::LaurentPoly;
use dualpolar::linalg::is_positive_definite;
use dualpolar::nildaha::NilDahaRep;
use dualpolar::nonsym::{verify_realization, verify_spectral, NonsymError, NonsymFamily, Sign};
use dualpolar::scalars::{eval_at, AlgNum, Scalar};
use std::time::{Duration, Instant};

fn params(tag: FamilyTag, d: usize) -> FamilyParams {
    FamilyParams::new(tag, d).unwrap()
}

fn poly(low: i64, c: Vec<Scalar>) -> LaurentPoly<Scalar> {
    LaurentPoly::new(low, c)
}

#[test]
fn small_polynomials_in_closed_form() {
    let k = Consts::formal(params(FamilyTag::C, 3));
    let fam = NonsymFamily::build(&k).unwrap();
    let tau = &k.tau;
    let tau_inv = tau.inv().unwrap();
    let q_m3 = k.qp(-3);
    assert_eq!(fam.ell_at(0, Sign::Minus), &LaurentPoly::one());
    assert_eq!(fam.ell_at(0, Sign::Plus), &poly(-1, vec![tau_inv.mul(&q_m3).neg()]));
    let mid = tau.add(&tau_inv.mul(&q_m3)).neg();
    assert_eq!(fam.p_perp, poly(-1, vec![q_m3.clone(), mid, Scalar::one()]));
    assert_eq!(fam.lambda_at(0), tau);
    assert_eq!(fam.lambda_at(-3), &tau_inv.mul(&q_m3));
    assert_eq!(fam.h_perp.len(), 3);
    assert_eq!(fam.min_poly.high_degree(), 6);
    assert_eq!(fam.min_poly.low_degree(), 0);
}

#[test]
fn boundary_recurrence_at_the_bottom() {
    // eta ell_0^- = (tau q^D + tau^{-1}) q^{-D} ell_0^- + tau (q^D - q + 1) ell_0^+ + tau (1 - q) ell_1^-
    let k = Consts::formal(params(FamilyTag::C, 3));
    let fam = NonsymFamily::build(&k).unwrap();
    let (tau, q) = (&k.tau, &k.q);
    let one = Scalar::one();
    let s = tau.mul(&k.qp(3)).add(&tau.inv().unwrap());
    let rhs = fam
        .ell_at(0, Sign::Minus)
        .scale(&s.mul(&k.qp(-3)))
        .add(&fam.ell_at(0, Sign::Plus).scale(&tau.mul(&k.qp(3).sub(q).add(&one))))
        .add(&fam.ell_at(1, Sign::Minus).scale(&tau.mul(&one.sub(q))));
    assert_eq!(fam.ell_at(0, Sign::Minus).shift(1), rhs);
    assert_eq!(fam.verify_recurrences(&k).unwrap().len(), 2);
}

#[test]
fn formal_sweep() {
    for e2 in 0..=4u8 {
        let tag = FamilyTag::representative(e2).unwrap();
        for d in 3..=5 {
            let start = Instant::now();
            let k = Consts::formal(params(tag, d));
            let fam = NonsymFamily::build(&k).unwrap_or_else(|e| panic!("{tag:?} D={d}: {e}"));
            fam.verify_recurrences(&k).unwrap_or_else(|e| panic!("{tag:?} D={d}: {e}"));
            let rep = NilDahaRep::build(&k).unwrap();
            let w = WModule::build(WInput::from_consts(&k)).unwrap();
            verify_realization(&fam, &rep, &w).unwrap_or_else(|e| panic!("{tag:?} D={d}: {e}"));
            verify_spectral(&fam, &rep, &w, &k).unwrap_or_else(|e| panic!("{tag:?} D={d}: {e}"));
            fam.verify_orthogonality(&k.counts()).unwrap_or_else(|e| panic!("{tag:?} D={d}: {e}"));
            assert!(start.elapsed() < Duration::from_secs(30), "{tag:?} D={d} took {:?}", start.elapsed());
        }
    }
}

fn concrete(tag: FamilyTag, q0: u64, d: usize) -> (Consts<AlgNum>, WModule<AlgNum>) {
    let p = params(tag, d);
    let g = build_graph(p, q0, 10_000).unwrap();
    let an = profile_from_graph(&g).unwrap();
    let (x, c) = default_choice(&g).unwrap();
    let part = CliquePartition::new(&g, x, c).unwrap();
    let w = WModule::from_graph(&g, &an, &part).unwrap().map(AlgNum::from_rational);
    (Consts::<AlgNum>::concrete(p, q0).unwrap(), w)
}

#[test]
fn concrete_graphs() {
    for (tag, q0, d) in [(FamilyTag::C, 2, 3), (FamilyTag::D, 2, 3), (FamilyTag::TwoAOdd, 4, 3), (FamilyTag::TwoD, 2, 3)] {
        let (k, w) = concrete(tag, q0, d);
        let fam = NonsymFamily::build(&k).unwrap();
        fam.verify_recurrences(&k).unwrap();
        let rep = NilDahaRep::build(&k).unwrap();
        verify_realization(&fam, &rep, &w).unwrap();
        let spectral = verify_spectral(&fam, &rep, &w, &k).unwrap();
        // cell sizes counted on the graph
        fam.verify_orthogonality(&w.gram).unwrap();
        assert_eq!(w.gram, k.counts());
        assert!(is_positive_definite(&spectral.monomial_gram, AlgNum::real_sign), "{tag:?}({q0},{d})");

        let gram = fam.gram_ell().unwrap();
        assert_eq!(gram.trace(), w.num_vertices);

        let formal = NonsymFamily::build(&Consts::formal(k.params)).unwrap();
        for (a, b) in formal.coefficient_rows().iter().zip(fam.coefficient_rows()) {
            assert_eq!(a.0, b.0);
            let ev: Vec<AlgNum> = a.1.iter().map(|s| eval_at(s, k.modulus()).unwrap()).collect();
            assert_eq!(ev, b.1, "{tag:?} {}", a.0);
        }
    }
}

#[test]
fn symplectic_dual_polar_graph_values() {
    let (k, w) = concrete(FamilyTag::C, 2, 3);
    let fam = NonsymFamily::build(&k).unwrap();
    let n = AlgNum::from_int;
    assert_eq!(fam.norm_y[3], n(1).div(&n(135)).unwrap());
    let ex0 = w.e[0].apply(&w.x_hat);
    assert_eq!(w.inner(&ex0, &ex0), fam.norm_y[3]);
    let l1 = fam.ell_at(1, Sign::Minus);
    assert_eq!(fam.inner_product_l(l1, l1).unwrap(), n(12));
    let lp = fam.ell_at(0, Sign::Plus);
    assert_eq!(fam.inner_product_l(lp, lp).unwrap(), k.qe());
    let one = LaurentPoly::one();
    assert_eq!(fam.inner_product_l(&one, &one).unwrap(), n(1));
    for i in 0..3 {
        for j in 0..3 {
            assert!(fam.inner_product_l(fam.ell_at(i, Sign::Plus), fam.ell_at(j, Sign::Minus)).unwrap().is_zero());
        }
    }
}

#[test]
fn coefficient_rows_cover_the_boundary_polynomials() {
    let fam = NonsymFamily::build(&Consts::formal(params(FamilyTag::D, 3))).unwrap();
    let rows = fam.coefficient_rows();
    assert_eq!(rows.len(), 8);
    assert_eq!(fam.coefficient_range(), (-4, 3));
    assert!(rows.iter().all(|(_, c)| c.len() == 8));
    assert_eq!(rows[6].0, "ell-_3");
    // ell_D^- has leading term eta^D / (tau^D (q;q)_D)
    assert!(!rows[6].1[7].is_zero());
    // ell_D^+ reaches eta^{-D-1}
    assert!(!rows[7].1[0].is_zero());
}

#[test]
fn rejections() {
    let k = Consts::formal(params(FamilyTag::C, 3));
    let fam = NonsymFamily::build(&k).unwrap();
    let out = LaurentPoly::monomial(3, Scalar::one());
    assert_eq!(fam.inner_product_l(&out, &LaurentPoly::one()), Err(NonsymError::OutsideL));
    let reduced = fam.reduce_to_l(&out);
    assert!(reduced.within(-3, 2));
    for l in &fam.lambda {
        assert_eq!(reduced.eval(l), out.eval(l));
    }

    let mut sizes = k.counts();
    sizes[plus(1)] = sizes[plus(1)].add(&Scalar::one());
    assert_eq!(fam.verify_orthogonality(&sizes), Err(NonsymError::Orthogonality { row: plus(1), col: plus(1) }));

    let rep = NilDahaRep::build(&k).unwrap();
    let w = WModule::build(WInput::from_consts(&k)).unwrap();
    let mut bad = fam.clone();
    bad.ell[minus(2)] = bad.ell[minus(2)].add(&LaurentPoly::monomial(-1, Scalar::one()));
    assert_eq!(verify_realization(&bad, &rep, &w), Err(NonsymError::Realization { index: 2, sign: Sign::Minus }));
    assert!(matches!(bad.verify_recurrences(&k), Err(NonsymError::Recurrence { .. })));

    let mut bad = fam.clone();
    bad.norm_y[2] = bad.norm_y[2].add(&Scalar::one());
    assert!(matches!(verify_spectral(&bad, &rep, &w, &k), Err(NonsymError::Spectral(_))));
}
