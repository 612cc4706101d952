//! Outputs of `emit`. Each is a pure function of the instance, so repeated
//! runs give identical bytes.

use crate::config::{CliError, Format, RunConfig, What};
use crate::pipeline;
use crate::report::to_sorted_json;
use dualpolar::algebra::Field;
use dualpolar::family::Consts;
use dualpolar::leonard::{DualQKSeq, SystemKind};
use dualpolar::linalg::Matrix;
use dualpolar::nonsym::NonsymFamily;
use dualpolar::scalars::AlgNum;
use serde_json::{json, Value};
use std::path::Path;

/// Emitted text together with the exit code it implies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emitted {
    pub text: String,
    pub exit_code: i32,
}

impl Emitted {
    fn ok(text: String) -> Self {
        Emitted { text, exit_code: 0 }
    }
}

pub fn default_format(what: What) -> Format {
    match what {
        What::EllPolys | What::ParamArrays => Format::Csv,
        What::Graph => Format::EdgeList,
        What::Orthogonality | What::Report => Format::Json,
    }
}

pub fn emit(cfg: &RunConfig, what: What, format: Option<Format>) -> Result<Emitted, CliError> {
    let format = format.unwrap_or(default_format(what));
    let allowed: &[Format] = match what {
        What::EllPolys | What::ParamArrays => &[Format::Csv, Format::Json],
        What::Graph => &[Format::EdgeList],
        What::Orthogonality | What::Report => &[Format::Json],
    };
    if !allowed.contains(&format) {
        return Err(CliError::Usage(format!("--what {what:?} does not support --format {format:?}")));
    }
    let inst = cfg.instance;
    match what {
        What::Graph => Ok(Emitted::ok(pipeline::graph(cfg)?.edge_list())),
        What::Report => {
            let report = pipeline::verify(cfg)?;
            Ok(Emitted { text: report.canonical_json(), exit_code: report.exit_code() })
        }
        _ => match inst.q0 {
            None => tables(&Consts::formal(inst.params), &inst.to_string(), what, format),
            Some(q0) => {
                let k = Consts::<AlgNum>::concrete(inst.params, q0).map_err(|e| CliError::Build(e.to_string()))?;
                tables(&k, &inst.to_string(), what, format)
            }
        },
    }
}

fn tables<F: Field>(k: &Consts<F>, instance: &str, what: What, format: Format) -> Result<Emitted, CliError> {
    match what {
        What::EllPolys => ell_polys(k, instance, format),
        What::ParamArrays => param_arrays(k, instance, format),
        What::Orthogonality => orthogonality(k, instance),
        What::Graph | What::Report => unreachable!("handled by emit"),
    }
}

fn check<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Check(e.to_string()))
}

fn strings<F: Field>(v: &[F]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Coefficients of `ell_i^±` for `0 <= i <= D` in the basis `eta^j`.
fn ell_polys<F: Field>(k: &Consts<F>, instance: &str, format: Format) -> Result<Emitted, CliError> {
    let fam = check(NonsymFamily::build(k))?;
    let (lo, hi) = fam.coefficient_range();
    let rows = fam.coefficient_rows();
    let text = match format {
        Format::Csv => {
            let mut header = vec!["polynomial".to_string()];
            header.extend((lo..=hi).map(|j| format!("eta^{j}")));
            let body: Vec<Vec<String>> =
                rows.iter().map(|(n, c)| std::iter::once(n.clone()).chain(strings(c)).collect()).collect();
            csv_text(&header, &body)
        }
        _ => {
            let polys: Vec<Value> = rows.iter().map(|(n, c)| json!({ "name": n, "coefficients": strings(c) })).collect();
            to_sorted_json(&json!({ "instance": instance, "exponents": [lo, hi], "polynomials": polys }))
        }
    };
    Ok(Emitted::ok(text))
}

/// Parameter arrays and intersection numbers of the four Leonard systems.
fn param_arrays<F: Field>(k: &Consts<F>, instance: &str, format: Format) -> Result<Emitted, CliError> {
    let mut systems = Vec::new();
    for kind in SystemKind::ALL {
        let seq = check(DualQKSeq::for_system(kind, &k.q, &k.qe(), k.d()))?;
        let pa = check(seq.param_array())?;
        let ints = seq.intersection_numbers();
        let scalars = [("alpha", &seq.alpha), ("alpha*", &seq.alpha_s), ("beta", &seq.beta), ("beta*", &seq.beta_s), ("gamma", &seq.gamma)];
        // split sequences are indexed from 1
        let seqs = [
            ("theta", 0, strings(&pa.theta)),
            ("theta*", 0, strings(&pa.theta_s)),
            ("varphi", 1, strings(&pa.varphi)),
            ("phi", 1, strings(&pa.phi)),
            ("a", 0, strings(&ints.a)),
            ("b", 0, strings(&ints.b)),
            ("c", 0, strings(&ints.c)),
        ];
        let mut f = Vec::with_capacity(seq.d + 1);
        for i in 0..=seq.d {
            f.push((0..=seq.d).map(|j| check(seq.f_value(i, j)).map(|x| x.to_string())).collect::<Result<Vec<_>, _>>()?);
        }
        systems.push((kind, seq.d, scalars.map(|(n, x)| (n, x.to_string())), seqs, f));
    }
    let text = match format {
        Format::Csv => {
            let header: Vec<String> = ["system", "quantity", "index", "value"].map(String::from).to_vec();
            let mut rows = Vec::new();
            for (kind, d, scalars, seqs, f) in &systems {
                rows.push(vec![kind.name().into(), "d".into(), String::new(), d.to_string()]);
                for (n, x) in scalars {
                    rows.push(vec![kind.name().into(), n.to_string(), String::new(), x.clone()]);
                }
                for (n, start, xs) in seqs {
                    for (j, x) in xs.iter().enumerate() {
                        rows.push(vec![kind.name().into(), n.to_string(), (start + j).to_string(), x.clone()]);
                    }
                }
                // f_i(theta_j), indexed "i:j"
                for (i, row) in f.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        rows.push(vec![kind.name().into(), "f".into(), format!("{i}:{j}"), x.clone()]);
                    }
                }
            }
            csv_text(&header, &rows)
        }
        _ => {
            let list: Vec<Value> = systems
                .iter()
                .map(|(kind, d, scalars, seqs, f)| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("system".into(), json!(kind.name()));
                    obj.insert("d".into(), json!(d));
                    for (n, x) in scalars {
                        obj.insert(n.to_string(), json!(x));
                    }
                    for (n, _, xs) in seqs {
                        obj.insert(n.to_string(), json!(xs));
                    }
                    obj.insert("f".into(), json!(f));
                    Value::Object(obj)
                })
                .collect();
            to_sorted_json(&json!({ "instance": instance, "systems": list }))
        }
    };
    Ok(Emitted::ok(text))
}

/// Gram matrix of the `ell` basis under the form on `L`, against the cell sizes.
fn orthogonality<F: Field>(k: &Consts<F>, instance: &str) -> Result<Emitted, CliError> {
    let fam = check(NonsymFamily::build(k))?;
    let gram = check(fam.gram_ell())?;
    let counts = k.counts();
    let diagonal = gram == Matrix::diagonal(&counts);
    let n = counts.len();
    let labels: Vec<String> = fam.coefficient_rows().into_iter().take(n).map(|(name, _)| name).collect();
    let rows: Vec<Vec<String>> = (0..n).map(|r| (0..n).map(|c| gram.get(r, c).to_string()).collect()).collect();
    let text = to_sorted_json(&json!({
        "instance": instance,
        "labels": labels,
        "gram": rows,
        "cell_sizes": strings(&counts),
        "gram_is_diag_cell_sizes": diagonal,
        "eigenvalues": strings(&fam.lambda),
        "norms_y": strings(&fam.norm_y),
    }));
    Ok(Emitted { text, exit_code: if diagonal { 0 } else { 1 } })
}

/// Writes to `path`, or to stdout when absent.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}
