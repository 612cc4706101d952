use dualpolar::algebra::Ring;
use dualpolar::drg::{default_choice, minus, plus, profile_from_graph, CliquePartition, WInput, WModule};
use dualpolar::family::{Consts, FamilyParams, FamilyTag};
use dualpolar::geometry::build_graph;
use dualpolar::nildaha::{verify_bridge, verify_x_action, NilDahaError, NilDahaRep};
use dualpolar::scalars::{eval_at, AlgNum, Scalar};
use std::time::{Duration, Instant};

fn params(tag: FamilyTag, d: usize) -> FamilyParams {
    FamilyParams::new(tag, d).unwrap()
}

fn formal(tag: FamilyTag, d: usize) -> (Consts<Scalar>, NilDahaRep<Scalar>, WModule<Scalar>) {
    let k = Consts::formal(params(tag, d));
    let rep = NilDahaRep::build(&k).unwrap();
    let w = WModule::build(WInput::from_consts(&k)).unwrap();
    (k, rep, w)
}

#[test]
fn relations_tables_and_bridge_across_the_formal_sweep() {
    for e2 in 0..=4u8 {
        let tag = FamilyTag::representative(e2).unwrap();
        for d in 3..=5 {
            let start = Instant::now();
            let (k, rep, w) = formal(tag, d);
            assert_eq!(rep.log.len(), 8, "{tag:?} D={d}");
            let tables = verify_x_action(&rep, &k).unwrap_or_else(|e| panic!("{tag:?} D={d}: {e}"));
            assert_eq!(tables.len(), 5);
            let report = verify_bridge(&rep, &w, &k).unwrap_or_else(|e| panic!("{tag:?} D={d}: {e}"));
            assert_eq!(report.closure_dim, 2 * d);
            assert_eq!(report.multiplicities.iter().sum::<usize>(), 2 * d);
            assert!(start.elapsed() < Duration::from_secs(30), "{tag:?} D={d} took {:?}", start.elapsed());
        }
    }
}

#[test]
fn generators_on_a_small_instance() {
    // e = 1/2, D = 3
    let k = Consts::formal(params(FamilyTag::TwoAOdd, 3));
    let rep = NilDahaRep::build(&k).unwrap();
    let v = &k.v;
    let vi = &k.v_inv;
    // T on (Ĉ_0^-, Ĉ_0^+): [[v^{-1} - v, v], [v^{-1}, 0]]
    assert_eq!(rep.t.get(minus(0), minus(0)), &vi.sub(v));
    assert_eq!(rep.t.get(minus(0), plus(0)), v);
    assert_eq!(rep.t.get(plus(0), minus(0)), vi);
    assert!(rep.t.get(plus(0), plus(0)).is_zero());
    // end blocks of T' and U
    let end = k.i.mul(&k.vp(-6));
    assert_eq!(rep.t_p.get(minus(0), minus(0)), &end);
    assert_eq!(rep.t_p.get(plus(2), plus(2)), &end);
    assert!(rep.u.get(minus(0), minus(0)).is_zero());
    assert_eq!(rep.u.get(plus(2), plus(2)), &Scalar::one().neg());
    // U' on (Ĉ_1^-, Ĉ_1^+): lower-left entry -i q^{(D - e)/2 - 1}
    assert_eq!(rep.u_p.get(plus(1), minus(1)), &k.i.mul(&k.vp(1)).neg());
    assert_eq!(rep.tau, k.i.mul(&k.vp(-7)));
}

#[test]
fn x_inverse_sends_x_hat_into_the_first_cell() {
    for (tag, d) in [(FamilyTag::TwoAOdd, 3), (FamilyTag::C, 4), (FamilyTag::TwoD, 3)] {
        let k = Consts::formal(params(tag, d));
        let rep = NilDahaRep::build(&k).unwrap();
        let mut x_hat = vec![Scalar::zero(); 2 * d];
        x_hat[minus(0)] = Scalar::one();
        let got = rep.x_inv.apply(&x_hat);
        let mut want = vec![Scalar::zero(); 2 * d];
        want[plus(0)] = rep.tau.mul(&k.qp(d as i64)).neg();
        assert_eq!(got, want, "{tag:?} D={d}");
    }
}

#[test]
fn projection_block_from_t() {
    let (k, rep, w) = formal(FamilyTag::B, 3);
    let kinv = rep.kappa.inv().unwrap();
    let pi_t = rep.t.add_scalar(&kinv).scale(&rep.kappa.add(&kinv).inv().unwrap());
    let qe = k.qe();
    let s = Scalar::one().add(&qe).inv().unwrap();
    for i in 0..3 {
        for row in [minus(i), plus(i)] {
            assert_eq!(pi_t.get(row, minus(i)), &s);
            assert_eq!(pi_t.get(row, plus(i)), &qe.mul(&s));
        }
    }
    assert_eq!(pi_t, w.pi_t);
}

#[test]
fn concrete_graphs_carry_the_representation() {
    for (tag, q0, d) in [(FamilyTag::C, 2, 3), (FamilyTag::D, 2, 3), (FamilyTag::TwoAOdd, 4, 3), (FamilyTag::TwoD, 2, 3)] {
        let p = params(tag, d);
        let g = build_graph(p, q0, 10_000).unwrap();
        let an = profile_from_graph(&g).unwrap();
        let (x, c) = default_choice(&g).unwrap();
        let part = CliquePartition::new(&g, x, c).unwrap();
        let w = WModule::from_graph(&g, &an, &part).unwrap().map(AlgNum::from_rational);
        let k = Consts::<AlgNum>::concrete(p, q0).unwrap();
        let rep = NilDahaRep::build(&k).unwrap();
        verify_x_action(&rep, &k).unwrap();
        let report = verify_bridge(&rep, &w, &k).unwrap_or_else(|e| panic!("{tag:?}({q0},{d}): {e}"));
        assert_eq!(report.closure_dim, 2 * d);

        let formal_rep = NilDahaRep::build(&Consts::formal(p)).unwrap();
        let ev = formal_rep.x.try_map(|s| eval_at(s, k.modulus())).unwrap();
        assert_eq!(ev, rep.x);
    }
}

#[test]
fn corrupted_inputs_are_rejected() {
    let (k, rep, w) = formal(FamilyTag::C, 3);

    let mut bad = rep.clone();
    bad.x.set(minus(1), minus(1), bad.x.get(minus(1), minus(1)).add(&Scalar::one()));
    assert_eq!(verify_x_action(&bad, &k), Err(NilDahaError::TableMismatch { what: "X", row: minus(1), col: minus(1) }));

    let mut bad_w = w.clone();
    bad_w.a.set(0, 0, bad_w.a.get(0, 0).add(&Scalar::one()));
    assert!(matches!(verify_bridge(&rep, &bad_w, &k), Err(NilDahaError::Bridge(n)) if n.starts_with("A = ")));

    let (k4, _, w4) = formal(FamilyTag::C, 4);
    assert!(matches!(verify_bridge(&rep, &w4, &k4), Err(NilDahaError::InstanceMismatch { .. })));

    // with the wrong kappa the quadratic relation for T breaks
    let mut k_bad = k.clone();
    k_bad.kappa = k.kappa.mul(&k.v);
    assert!(matches!(NilDahaRep::build(&k_bad), Err(NilDahaError::Relation(n)) if n.contains("kappa")));
}

#[test]
fn laurent_polynomials_evaluate_at_x() {
    use dualpolar::laurent::LaurentPoly;
    let k = Consts::formal(params(FamilyTag::D, 3));
    let rep = NilDahaRep::build(&k).unwrap();
    let two = Scalar::from_i64(2);
    // 2 eta^{-2} + eta^{-1} + eta^2
    let p = LaurentPoly::new(-2, vec![two.clone(), Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()]);
    let xi = &rep.x_inv;
    let want = xi.mul(xi).scale(&two).add(xi).add(&rep.x.mul(&rep.x));
    assert_eq!(p.eval_matrix(&rep.x, xi), want);
    let v: Vec<Scalar> = (0..6).map(|j| Scalar::from_i64(j + 1)).collect();
    assert_eq!(p.apply(&rep.x, xi, &v), want.apply(&v));
}
