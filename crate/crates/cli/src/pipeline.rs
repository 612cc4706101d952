//! The verification pipeline: each stage consumes the values of the ones before it.

use crate::config::{CliError, RunConfig};
use crate::report::{CheckRecord, Stage, Status, VerificationReport};
use dualpolar::algebra::Field;
use dualpolar::checks::CheckLog;
use dualpolar::drg::{
    default_choice, profile_formal, profile_from_graph, seeded_choice, verify_edge_cliques, CliquePartition,
    DrgProfile, IntConsts, WInput, WModule,
};
use dualpolar::family::{Consts, FamilyParams};
use dualpolar::geometry::{build_graph, vertex_count_formula, DPGraph, GeometryError};
use dualpolar::leonard::{realize_four_systems, SystemKind};
use dualpolar::linalg::is_positive_definite;
use dualpolar::nildaha::{verify_bridge, verify_x_action, NilDahaRep};
use dualpolar::nonsym::{verify_realization, verify_spectral, NonsymFamily};
use dualpolar::scalars::AlgNum;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

/// Why a stage stopped.
enum Fail {
    Check(String),
    Build(CliError),
}

fn chk<E: Display>(e: E) -> Fail {
    Fail::Check(e.to_string())
}

/// The pipeline stopped; the reason is already recorded unless it is a build error.
enum Halt {
    Failed,
    Build(CliError),
}

#[derive(Default)]
struct Recorder {
    checks: Vec<CheckRecord>,
    timing: BTreeMap<&'static str, f64>,
}

impl Recorder {
    fn stage<T>(&mut self, stage: Stage, f: impl FnOnce(&mut CheckLog) -> Result<T, Fail>) -> Result<T, Halt> {
        let start = Instant::now();
        let mut log = CheckLog::new();
        let out = f(&mut log);
        self.timing.insert(stage.name(), start.elapsed().as_secs_f64() * 1e3);
        for name in log.passed() {
            self.push(stage, name.clone(), Status::Pass, None);
        }
        match out {
            Ok(t) => Ok(t),
            Err(Fail::Check(locus)) => {
                self.push(stage, format!("{} stage", stage.name()), Status::Fail, Some(locus));
                Err(Halt::Failed)
            }
            Err(Fail::Build(e)) => Err(Halt::Build(e)),
        }
    }

    fn push(&mut self, stage: Stage, name: String, status: Status, locus: Option<String>) {
        self.checks.push(CheckRecord { stage, name, anchor: stage.anchor(), status, locus });
    }

    fn skip_after_failure(&mut self) {
        let Some(last) = self.checks.last().map(|c| c.stage) else { return };
        for stage in Stage::ALL.into_iter().filter(|&s| s > last) {
            self.push(stage, format!("{} stage", stage.name()), Status::Skipped, None);
        }
    }
}

/// Runs every stage on the configured instance.
///
/// Returns `Err` only for problems with the input (bad parameters, instance
/// above the vertex cap); failed identities are recorded in the report.
pub fn verify(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    let mut rec = Recorder::default();
    let mut choice = None;
    let params = cfg.instance.params;
    let outcome = match cfg.instance.q0 {
        None => formal(&mut rec, params),
        Some(q0) => concrete(&mut rec, cfg, q0, &mut choice),
    };
    match outcome {
        Ok(()) => {}
        Err(Halt::Failed) => rec.skip_after_failure(),
        Err(Halt::Build(e)) => return Err(e),
    }
    Ok(VerificationReport { instance: cfg.instance, checks: rec.checks, timing_ms: rec.timing, choice })
}

fn formal(rec: &mut Recorder, params: FamilyParams) -> Result<(), Halt> {
    let k = Consts::formal(params);
    rec.stage(Stage::Profile, |log| {
        profile_formal(params).check_invariants().map_err(chk)?;
        log.record("intersection numbers and eigenvalues satisfy the distance-regular identities");
        Ok(())
    })?;
    let w = rec.stage(Stage::Module, |log| {
        let w = WModule::build(WInput::from_consts(&k)).map_err(chk)?;
        log.record("W built from the closed-form adjacency action");
        Ok(w)
    })?;
    algebraic(rec, &k, &w, None)
}

fn is_input_error(e: &GeometryError) -> bool {
    matches!(
        e,
        GeometryError::NotPrimePower(_)
            | GeometryError::FieldTooLarge(_)
            | GeometryError::HermitianNeedsSquare(_)
            | GeometryError::InstanceTooLarge { .. }
    )
}

fn concrete(rec: &mut Recorder, cfg: &RunConfig, q0: u64, choice: &mut Option<(usize, Vec<usize>)>) -> Result<(), Halt> {
    let params = cfg.instance.params;
    let k = Consts::<AlgNum>::concrete(params, q0).map_err(|e| Halt::Build(CliError::Build(e.to_string())))?;
    let ints = IntConsts::new(params, q0).ok_or_else(|| Halt::Build(CliError::Build("q^e is not an integer".into())))?;

    let g = rec.stage(Stage::Geometry, |log| {
        let g = build_graph(params, q0, cfg.max_vertices).map_err(|e| {
            if is_input_error(&e) {
                Fail::Build(CliError::Build(e.to_string()))
            } else {
                chk(e)
            }
        })?;
        log.record("every vertex is a totally isotropic subspace of dimension D");
        log.record("distance equals D minus the dimension of the intersection");
        let formula = vertex_count_formula(params, q0).ok_or_else(|| chk("no product formula"))?;
        log.ensure(g.len() as u128 == formula, format!("|X| = {formula} from the product formula"), Fail::Check)?;
        let valency = ints.b(0) as usize;
        log.ensure(
            g.adj.iter().all(|a| a.len() == valency) && g.num_edges() * 2 == g.len() * valency,
            format!("graph is regular of valency b_0 = {valency}"),
            Fail::Check,
        )?;
        Ok(g)
    })?;

    let analysis = rec.stage(Stage::Profile, |log| {
        let an = profile_from_graph(&g).map_err(chk)?;
        log.record("c_i, a_i, b_i are the same for every pair of vertices at distance i");
        log.record("spectrum of A is theta_0, ..., theta_D");
        an.profile.check_invariants().map_err(chk)?;
        log.record("measured parameters satisfy the distance-regular identities");
        let closed = DrgProfile::from_consts(&k);
        log.ensure(
            an.profile.map(AlgNum::from_rational) == closed,
            "intersection numbers, eigenvalues and dual eigenvalues equal their closed forms",
            Fail::Check,
        )?;
        let sizes_ok = (0..=params.d).all(|i| {
            let expected: i64 = (1..=i).map(|j| ints.b(j - 1)).product::<i64>() / (1..=i).map(|j| ints.c(j)).product::<i64>();
            an.sphere_sizes[i] as i64 == expected
        });
        log.ensure(sizes_ok, "|Γ_i(x)| = b_0...b_{i-1} / (c_1...c_i)", Fail::Check)?;
        verify_edge_cliques(&g, ints.qe as usize).map_err(chk)?;
        log.record("every edge lies in a unique maximal clique of size 1 + q^e");
        Ok(an)
    })?;

    let w = rec.stage(Stage::Module, |log| {
        let (x, clique) = match cfg.seed {
            Some(seed) => seeded_choice(&g, seed),
            None => default_choice(&g).map_err(chk)?,
        };
        *choice = Some((x, clique.clone()));
        let part = CliquePartition::new(&g, x, clique).map_err(chk)?;
        log.record("C is a maximal clique through x of size 1 + q^e");
        log.record("clique partition is equitable with the closed-form neighbor counts");
        log.record("cell sizes |C_i^±| equal their closed forms");
        let w = WModule::from_graph(&g, &analysis, &part).map_err(chk)?;
        log.record("A* and ~A* agree with E_1 at every vertex");
        let w = w.map(AlgNum::from_rational);
        let closed = WModule::build(WInput::from_consts(&k)).map_err(chk)?;
        if let Some(what) = w.first_difference(&closed) {
            return Err(chk(format!("W differs from its closed form in {what}")));
        }
        log.record("W equals its closed form at q");
        Ok(w)
    })?;
    drop(g);
    algebraic(rec, &k, &w, Some(AlgNum::real_sign))
}

type SignFn<F> = fn(&F) -> Option<Ordering>;

fn algebraic<F: Field>(rec: &mut Recorder, k: &Consts<F>, w: &WModule<F>, sign: Option<SignFn<F>>) -> Result<(), Halt> {
    rec.stage(Stage::Leonard, |log| {
        let four = realize_four_systems(w).map_err(chk)?;
        for s in &four.systems {
            log.extend(s.kind.name(), &s.log);
        }
        log.extend("decomposition", &four.log);
        let m0 = &four.get(SystemKind::Phi).m[0];
        log.ensure(m0.mul(&w.num_vertices).is_one(), "Phi: m_0 = 1 / |X|", Fail::Check)?;
        Ok(())
    })?;

    let rep = rec.stage(Stage::NilDaha, |log| {
        let rep = NilDahaRep::build(k).map_err(chk)?;
        log.extend("relations", &rep.log);
        log.extend("tables", &verify_x_action(&rep, k).map_err(chk)?);
        Ok(rep)
    })?;

    rec.stage(Stage::Bridge, |log| {
        let report = verify_bridge(&rep, w, k).map_err(chk)?;
        log.extend("bridge", &report.log);
        Ok(())
    })?;

    let fam = rec.stage(Stage::Realization, |log| {
        let fam = NonsymFamily::build(k).map_err(chk)?;
        log.extend("construction", &fam.log);
        log.extend("on W", &verify_realization(&fam, &rep, w).map_err(chk)?);
        Ok(fam)
    })?;

    rec.stage(Stage::Recurrences, |log| {
        log.extend("recurrence", &fam.verify_recurrences(k).map_err(chk)?);
        Ok(())
    })?;

    let spectral = rec.stage(Stage::Spectral, |log| {
        let data = verify_spectral(&fam, &rep, w, k).map_err(chk)?;
        log.extend("spectral", &data.log);
        Ok(data)
    })?;

    rec.stage(Stage::Orthogonality, |log| {
        log.extend("gram", &fam.verify_orthogonality(&w.gram).map_err(chk)?);
        let gram = fam.gram_ell().map_err(chk)?;
        log.ensure(gram.trace() == w.num_vertices, "trace of the Gram matrix of the ell basis is |X|", Fail::Check)?;
        if let Some(sign) = sign {
            log.ensure(
                is_positive_definite(&spectral.monomial_gram, sign),
                "the form on L is positive definite",
                Fail::Check,
            )?;
        }
        Ok(())
    })
}

/// Builds the concrete graph or reports why it cannot be built.
pub fn graph(cfg: &RunConfig) -> Result<DPGraph, CliError> {
    let q0 = cfg
        .instance
        .q0
        .ok_or_else(|| CliError::Usage("this command needs a concrete instance (--q)".into()))?;
    build_graph(cfg.instance.params, q0, cfg.max_vertices).map_err(|e| {
        if is_input_error(&e) {
            CliError::Build(e.to_string())
        } else {
            CliError::Check(e.to_string())
        }
    })
}
