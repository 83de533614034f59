//! One function per subcommand. Each returns a finished [`Report`]; a report
//! with failing checks is turned into [`CliError::CheckFailed`] by the caller.

use std::path::Path;

use serde_json::{json, Value};

use crinv::algebra::{GradedSeries, Scalar};
use crinv::ambient::{harmonic_extension, q_operator, AmbientSpace};
use crinv::checks;
use crinv::invariants::{
    classify_invariants, contraction_of_jet, enumerate_schemes, jet_isomorphism_report, q_polynomial, scheme_id,
    span_rank, weyl_invariants, ClassifyOptions,
};
use crinv::jets::{check_conditions, project_normal_form, BoundaryJet, NormalFormSlice, SliceKind};

use crate::jetfile::JetFile;
use crate::report::{Profile, Report};
use crate::CliError;

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub profile: bool,
}

fn start(command: &str, opts: &Options) -> Report {
    let mut r = Report::new(command);
    if opts.profile {
        r.profile = Some(Profile { elapsed_ms: 0, counts: Vec::new() });
    }
    r
}

fn load_jet(path: &Path, n: Option<usize>) -> Result<BoundaryJet, CliError> {
    let file = JetFile::load(path)?;
    if let Some(n) = n {
        if n != file.n {
            return Err(CliError::Usage(format!("--n {n} does not match n = {} in {}", file.n, path.display())));
        }
    }
    file.to_jet()
}

fn monomial(series: &GradedSeries, exps: &[i32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .map(|(i, e)| {
            let name = &series.alphabet().vars[i].name;
            if *e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn jet_value(jet: &BoundaryJet) -> Result<Value, CliError> {
    Ok(serde_json::to_value(JetFile::from_jet(jet)?).expect("serializable"))
}

fn jet_lines(jet: &BoundaryJet) -> Vec<String> {
    jet.terms()
        .into_iter()
        .filter(|t| !t.3.is_zero())
        .map(|(a, b, l, c)| format!("[{c}] alpha={a:?} beta={b:?} l={l}"))
        .collect()
}

pub fn extend(jet: &Path, n: Option<usize>, show_weight: Option<i32>, opts: &Options) -> Result<Report, CliError> {
    let f = load_jet(jet, n)?;
    let mut r = start("extend", opts);
    r.input("jet", jet.display()).input("n", f.n());
    let ext = harmonic_extension(&AmbientSpace::new(f.n())?, &f)?;
    let upto = show_weight.unwrap_or(ext.determined_below() - 1);
    r.input("show_weight", upto);
    let body = ext.series.body();
    let terms: Vec<String> = body
        .terms()
        .filter(|(k, c)| k.weight <= upto && !c.is_zero())
        .map(|(k, c)| format!("[{c}] {}", monomial(body, &k.exps)))
        .collect();
    r.count("ambient terms", body.len());
    r.value("valid", ext.series.valid().to_string())
        .value("determined_below", ext.determined_below())
        .value("terms", terms);
    Ok(r)
}

pub fn q(jet: Option<&Path>, n: Option<usize>, generic: bool, opts: &Options) -> Result<Report, CliError> {
    let mut r = start("q", opts);
    match (jet, generic) {
        (Some(path), false) => {
            let f = load_jet(path, n)?;
            r.input("jet", path.display());
            let qf = q_operator(&AmbientSpace::new(f.n())?, &f)?;
            r.value("density", format!("{:?}", qf.density()))
                .value("is_zero", qf.is_zero())
                .value("terms", jet_lines(&qf))
                .value("jet", jet_value(&qf)?);
        }
        (None, true) => {
            let n = n.ok_or_else(|| CliError::Usage("--generic needs --n".into()))?;
            r.input("n", n).input("generic", true);
            let q = q_polynomial(n)?;
            r.value("weight", q.weight).value("polynomial", q.poly.to_string());
            r.assert("real", q.is_real(), None).assert("weight-homogeneous", q.is_homogeneous(), None).assert(
                "linear",
                q.poly.max_degree() <= 1,
                Some(q.poly.to_string()),
            );
        }
        _ => return Err(CliError::Usage("give exactly one of --jet FILE or --generic".into())),
    }
    Ok(r)
}

fn scheme_index(n: usize, id: &str) -> Result<usize, CliError> {
    let count = enumerate_schemes(n).len();
    (0..count)
        .find(|&k| scheme_id(k) == id)
        .ok_or_else(|| CliError::Usage(format!("unknown scheme {id:?}; n = {n} has S1..S{count}")))
}

pub fn schemes(n: usize, opts: &Options) -> Result<Report, CliError> {
    check_n(n)?;
    let mut r = start("schemes", opts);
    r.input("n", n);
    let list: Vec<String> = enumerate_schemes(n)
        .iter()
        .enumerate()
        .map(|(k, s)| format!("{}: {s}{}", scheme_id(k), if s.has_self_trace() { " (self-trace)" } else { "" }))
        .collect();
    r.value("count", list.len()).value("schemes", list);
    Ok(r)
}

pub fn weyl(n: usize, scheme: Option<&str>, jet: Option<&Path>, opts: &Options) -> Result<Report, CliError> {
    check_n(n)?;
    let mut r = start("weyl", opts);
    r.input("n", n);
    let pick = scheme.map(|id| scheme_index(n, id)).transpose()?;
    if let Some(id) = scheme {
        r.input("scheme", id);
    }
    let mut lines = Vec::new();
    match jet {
        None => {
            r.input("generic", true);
            for (k, (s, p)) in weyl_invariants(n)?.into_iter().enumerate() {
                if pick.is_some_and(|i| i != k) {
                    continue;
                }
                r.count(&scheme_id(k), p.poly.len());
                lines.push(format!("{}: {s} = {}", scheme_id(k), p.poly));
                r.assert(&format!("{} real", scheme_id(k)), p.is_real(), None);
                r.assert(&format!("{} weight {}", scheme_id(k), 2 * n), p.is_homogeneous(), None);
            }
        }
        Some(path) => {
            let f = load_jet(path, Some(n))?;
            r.input("jet", path.display());
            for (k, s) in enumerate_schemes(n).iter().enumerate() {
                if pick.is_some_and(|i| i != k) {
                    continue;
                }
                lines.push(format!("{}: {s} = {}", scheme_id(k), contraction_of_jet(s, &f)?));
            }
        }
    }
    r.value("values", lines);
    Ok(r)
}

pub fn normalform(jet: &Path, slice: SliceKind, max_weight: Option<i32>, opts: &Options) -> Result<Report, CliError> {
    let f = load_jet(jet, None)?;
    let mut r = start("normalform", opts);
    let top = match (max_weight, f.valid().bound()) {
        (Some(w), _) => w,
        (None, Some(w)) => w,
        (None, None) => f.body().max_weight().map_or(0, |w| w + 1),
    };
    r.input("jet", jet.display()).input("slice", format!("{slice:?}")).input("max_weight", top);
    let p = project_normal_form(&f, &NormalFormSlice::new(slice, f.n(), top))?;
    let cond = check_conditions(&p.nf, slice)?;
    for c in &cond.conditions {
        r.assert(&c.name, c.passed, c.first_failure.clone());
    }
    r.assert("round trip", p.nf.add(&p.ph)? == f.truncate(top), None);
    r.count("nf terms", p.nf.terms().len()).count("ph terms", p.ph.terms().len());
    r.value("nf", jet_value(&p.nf)?).value("ph", jet_value(&p.ph)?);
    Ok(r)
}

pub struct ClassifyArgs {
    pub n: usize,
    pub weight: i32,
    pub seed: u64,
    pub rotations: usize,
    pub unipotents: usize,
    pub verify: usize,
}

pub fn classify(a: &ClassifyArgs, opts: &Options) -> Result<Report, CliError> {
    check_n(a.n)?;
    let mut r = start("classify", opts);
    r.input("n", a.n)
        .input("weight", a.weight)
        .input("rotations", a.rotations)
        .input("unipotents", a.unipotents)
        .input("verify", a.verify);
    r.seed = Some(a.seed);
    let options = ClassifyOptions { seed: a.seed, rotations: a.rotations, unipotents: a.unipotents, verify: a.verify };
    let c = classify_invariants(a.n, a.weight, &options)?;
    r.count("ansatz", c.ansatz_size);
    r.value("ansatz_size", c.ansatz_size)
        .value("dims_after_sample", json!(c.dims_after_sample))
        .value("samples", c.samples.clone())
        .value("verified_with", c.verified_with.clone())
        .value("dimension", c.basis.len())
        .value("basis", c.basis.iter().map(|b| b.poly.to_string()).collect::<Vec<_>>());
    let polys: Vec<_> = c.basis.iter().map(|b| b.poly.clone()).collect();
    r.assert("real", c.basis.iter().all(|b| b.is_real()), None);
    r.assert("weight-homogeneous", c.basis.iter().all(|b| b.is_homogeneous()), None);
    if a.weight == 2 * a.n as i32 {
        let q = q_polynomial(a.n)?;
        let mut with_q = polys.clone();
        with_q.push(q.poly);
        r.assert("contains Q", span_rank(&with_q) == span_rank(&polys), None);
        let top = 2 * a.n as i32 - 2;
        let bad = polys.iter().flat_map(|p| p.terms()).find(|(m, _)| m.degree() >= 2 && m.variables().any(|v| v.weight() > top));
        r.assert(
            &format!("nonlinear terms use weights <= {top}"),
            bad.is_none(),
            bad.map(|(m, _)| m.to_string()),
        );
    }
    Ok(r)
}

pub fn jetiso(n: usize, opts: &Options) -> Result<Report, CliError> {
    check_n(n)?;
    let mut r = start("jetiso", opts);
    r.input("n", n);
    let rep = jet_isomorphism_report(n)?;
    let lines: Vec<String> = rep
        .strata
        .iter()
        .map(|s| {
            format!(
                "w={}: dim N0={} dim H0={} rank T={} (components {}, relation rank {})",
                s.weight,
                s.n0_dim,
                s.h0_dim(),
                s.t_rank,
                s.components,
                s.relation_rank
            )
        })
        .collect();
    r.value("strata", lines);
    for s in &rep.strata {
        r.assert(&format!("weight {}", s.weight), s.agrees(), Some(format!("{s:?}")));
    }
    Ok(r)
}

pub fn selfcheck(n: usize, seed: u64, samples: usize, opts: &Options) -> Result<Report, CliError> {
    check_n(n)?;
    let mut r = start("selfcheck", opts);
    r.input("n", n).input("samples", samples);
    r.seed = Some(seed);
    let top = 2 * n as i32 + 2;
    let all = [
        checks::startup_identity(n)?,
        checks::commutator_identities(n, seed, samples)?,
        checks::laplacian_power_preserves_ideal(n, seed, samples)?,
        checks::harmonic_extensions(n, seed, samples)?,
        checks::tensor_relations(n, seed, samples)?,
        checks::pluriharmonic_annihilation(n, seed)?,
        checks::normal_forms(n, seed, samples, top)?,
        checks::ambient_equivariance(n, seed, samples)?,
    ];
    for c in &all {
        r.check(c);
    }
    let q = q_polynomial(n)?;
    r.assert("Q real, linear, weight 2n", q.is_real() && q.is_homogeneous() && q.poly.max_degree() <= 1, None);
    let w = weyl_invariants(n)?;
    r.assert("contractions real and weight 2n", w.iter().all(|(_, p)| p.is_real() && p.is_homogeneous()), None);
    let t = Scalar::frac(2, 3);
    let scale = t.pow(2 * n as u32);
    let ok = w.iter().all(|(_, p)| crinv::jets::substitute_weights(&p.poly, &t) == p.poly.scale(&scale));
    r.assert("weight substitution", ok, None);
    Ok(r)
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("n must be at least 2, got {n}")));
    }
    Ok(())
}
