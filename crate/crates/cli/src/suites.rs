//! Verification suites and the report document.

use std::time::Instant;

use hopfcyc::cm::{self, ModularPair};
use hopfcyc::homology::{build_bicomplex, induced_map_on_hc, total_homology};
use hopfcyc::hopf::check_hopf_axioms;
use hopfcyc::lemmas::run_lemma_suite;
use hopfcyc::linalg::Matrix;
use hopfcyc::report::Report;
use hopfcyc::simplicial::{check_relations, evaluate_normal_form, evaluate_word, hom_transport, normalize, Direction, Family, GenWord};
use hopfcyc::tensor::Mor;
use hopfcyc::traces::{self, ModuleCoalgebra};
use serde_json::{json, Value};

use crate::file::{scalar_json, Loaded, K};

/// Version tag of the report layout described in `docs/schemas/report.v1.schema.json`.
pub const REPORT_SCHEMA: &str = "hopfcyc-report/1";

pub const TIMING_KEYS: [&str; 2] = ["wall_ms", "total_wall_ms"];

/// Largest level for which H^n has at most this many basis vectors in the homology suite.
const HOMOLOGY_LEVEL_DIM: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Relations,
    Powers,
    Lemmas,
    Traces,
    Homology,
    Eval,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Relations => "relations",
            Suite::Powers => "powers",
            Suite::Lemmas => "lemmas",
            Suite::Traces => "traces",
            Suite::Homology => "homology",
            Suite::Eval => "eval",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalObject {
    Cm,
    C,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub n_max: usize,
    pub degree_bound: usize,
    pub pair: Option<String>,
    pub families: Vec<Family>,
    pub word: Option<String>,
    pub object: EvalObject,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            n_max: 4,
            degree_bound: 6,
            pair: None,
            families: vec![Family::SR, Family::PCR],
            word: None,
            object: EvalObject::Cm,
        }
    }
}

pub struct Context<'a> {
    pub alg: &'a Loaded,
    pub cfg: &'a Config,
    /// n_max after the per-algebra cap
    pub n_max: usize,
    pub module: ModuleCoalgebra<K>,
    pub module_source: &'static str,
}

/// Level cap: 3 for algebras of dimension above 4.
pub fn level_cap(dim: usize) -> usize {
    if dim > 4 {
        3
    } else {
        usize::MAX
    }
}

impl<'a> Context<'a> {
    pub fn new(alg: &'a Loaded, cfg: &'a Config) -> hopfcyc::Result<Self> {
        let (module, module_source) = match &alg.module {
            Some(m) => (m.clone(), "file"),
            None => (traces::regular_module_coalgebra(&alg.hopf)?, "regular"),
        };
        let n_max = cfg.n_max.min(level_cap(alg.hopf.dim())).max(1);
        Ok(Context { alg, cfg, n_max, module, module_source })
    }

    fn pairs(&self) -> hopfcyc::Result<Vec<&ModularPair<K>>> {
        match &self.cfg.pair {
            None => Ok(self.alg.pairs.iter().collect()),
            Some(name) => self
                .alg
                .pairs
                .iter()
                .find(|p| &p.name == name)
                .map(|p| vec![p])
                .ok_or_else(|| hopfcyc::Error::InvalidModularPair(format!("no pair named {name:?}"))),
        }
    }

    fn homology_levels(&self) -> usize {
        let d = self.alg.hopf.dim();
        let mut top = self.cfg.degree_bound;
        if d > 1 {
            while top > 1 && d.pow(top as u32) > HOMOLOGY_LEVEL_DIM {
                top -= 1;
            }
        }
        top.min(self.cfg.degree_bound)
    }
}

pub struct SuiteOutcome {
    pub passed: bool,
    pub result: Value,
}

fn report_json(r: &Report) -> Value {
    serde_json::to_value(r).expect("serializable")
}

fn matrix_json(m: &Matrix<K>, spec: hopfcyc::FieldSpec) -> Value {
    let entries: Vec<Value> = m
        .entries()
        .map(|(i, j, x)| json!([i, j, serde_json::to_value(scalar_json(x, spec)).unwrap()]))
        .collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

fn vector_json(m: &Mor<K>) -> Value {
    let spec = m.field();
    let v: Vec<Value> = m.mat.to_dense().into_iter().flatten().map(|x| serde_json::to_value(scalar_json(&x, spec)).unwrap()).collect();
    Value::Array(v)
}

pub fn run_suite(ctx: &Context, suite: Suite) -> hopfcyc::Result<SuiteOutcome> {
    match suite {
        Suite::Axioms => axioms(ctx),
        Suite::Relations => relations(ctx),
        Suite::Powers => powers(ctx),
        Suite::Lemmas => lemmas(ctx),
        Suite::Traces => traces_suite(ctx),
        Suite::Homology => homology(ctx),
        Suite::Eval => eval(ctx),
    }
}

fn axioms(ctx: &Context) -> hopfcyc::Result<SuiteOutcome> {
    let h = &ctx.alg.hopf;
    let hopf = check_hopf_axioms(h);
    let module = ctx.module.check();
    let mut passed = hopf.passed() && module.passed();
    let mut pairs = Vec::new();
    for p in ctx.pairs()? {
        let r = cm::check_modular_pair(h, &p.delta, &p.sigma)?;
        passed &= r.passed();
        pairs.push(json!({"pair": p.name, "report": report_json(&r)}));
    }
    Ok(SuiteOutcome {
        passed,
        result: json!({"hopf": report_json(&hopf), "module_coalgebra": report_json(&module), "pairs": pairs}),
    })
}

fn relations(ctx: &Context) -> hopfcyc::Result<SuiteOutcome> {
    let h = &ctx.alg.hopf;
    let mut passed = true;
    let mut pairs = Vec::new();
    for p in ctx.pairs()? {
        let obj = cm::build_cm(h, p, ctx.n_max)?;
        let r = check_relations(&obj, ctx.n_max, &ctx.cfg.families);
        passed &= r.passed();
        pairs.push(json!({"pair": p.name, "instances": r.checks.len(), "report": report_json(&r)}));
    }
    let fam = [Family::SR, Family::PCR, Family::TwistedCC];
    let c_obj = traces::build_c_object(&ctx.module, ctx.n_max)?;
    let cr = check_relations(&c_obj, ctx.n_max, &fam);
    passed &= cr.passed();
    let families: Vec<String> = ctx.cfg.families.iter().map(|f| format!("{f:?}")).collect();
    Ok(SuiteOutcome {
        passed,
        result: json!({
            "n_max": ctx.n_max,
            "families": families,
            "cm": pairs,
            "c_object": {"module": ctx.module_source, "families": ["SR", "PCR", "TwistedCC"], "instances": cr.checks.len(), "report": report_json(&cr)},
        }),
    })
}

fn powers(ctx: &Context) -> hopfcyc::Result<SuiteOutcome> {
    let h = &ctx.alg.hopf;
    let mut passed = true;
    let mut pairs = Vec::new();
    for p in ctx.pairs()? {
        let r = cm::verify_powers(h, p, ctx.n_max);
        passed &= r.passed();
        pairs.push(json!({"pair": p.name, "twisted_mpi": cm::check_twisted_mpi(h, p), "report": report_json(&r)}));
    }
    Ok(SuiteOutcome { passed, result: json!({"n_max": ctx.n_max, "pairs": pairs}) })
}

fn lemmas(ctx: &Context) -> hopfcyc::Result<SuiteOutcome> {
    let mut passed = true;
    let mut pairs = Vec::new();
    for p in ctx.pairs()? {
        let r = run_lemma_suite(&ctx.alg.hopf, p, ctx.n_max);
        passed &= r.passed();
        pairs.push(json!({"pair": p.name, "report": report_json(&r)}));
    }
    Ok(SuiteOutcome { passed, result: json!({"n_max": ctx.n_max, "pairs": pairs}) })
}

fn traces_suite(ctx: &Context) -> hopfcyc::Result<SuiteOutcome> {
    let h = &ctx.alg.hopf;
    let mc = &ctx.module;
    let n = ctx.n_max.min(3);
    let exch = traces::check_comult_action_exchange(mc, ctx.n_max);
    let mut passed = exch.passed();
    let mut pairs = Vec::new();
    for p in ctx.pairs()? {
        let basis = traces::solve_traces(mc, p)?;
        let mut items = Vec::new();
        for a in &basis {
            let ct = traces::check_trace(mc, p, a)?;
            let cmt = traces::verify_cm_trace(h, p, mc, a, n)?;
            passed &= ct.passed() && cmt.passed();
            items.push(json!({"alpha": vector_json(a), "check": report_json(&ct), "cm_trace": report_json(&cmt)}));
        }
        let mut entry = json!({"pair": p.name, "dimension": basis.len(), "traces": items});
        if basis.is_empty() {
            entry["note"] = json!("the solution space is zero-dimensional; no trace morphism to check");
        }
        pairs.push(entry);
    }
    Ok(SuiteOutcome {
        passed,
        result: json!({"module": ctx.module_source, "n_max": n, "comult_action_exchange": report_json(&exch), "pairs": pairs}),
    })
}

fn homology(ctx: &Context) -> hopfcyc::Result<SuiteOutcome> {
    let h = &ctx.alg.hopf;
    let mc = &ctx.module;
    let levels = ctx.homology_levels();
    let mut passed = true;
    let mut pairs = Vec::new();
    for p in ctx.pairs()? {
        let obj = cm::build_cm(h, p, levels)?;
        let module = hom_transport(&obj, Direction::FromUnit);
        let bc = match build_bicomplex(&module, ctx.cfg.degree_bound) {
            Ok(bc) => bc,
            Err(hopfcyc::Error::NotCyclic(why)) => {
                pairs.push(json!({"pair": p.name, "cyclic": false, "reason": why}));
                continue;
            }
            Err(e) => return Err(e),
        };
        passed &= bc.checks.passed();
        let rep = total_homology(&bc);
        let mut entry = json!({
            "pair": p.name,
            "cyclic": true,
            "levels": levels,
            "bicomplex": report_json(&bc.checks),
            "cohomology": serde_json::to_value(&rep).unwrap(),
        });
        // maps induced by each trace, into the C object's cohomology
        let top = levels.min(4);
        let mut maps = Vec::new();
        let basis = traces::solve_traces(mc, p)?;
        if !basis.is_empty() {
            let target = hom_transport(&traces::build_c_object(mc, top)?, Direction::FromUnit);
            let source = hom_transport(&cm::build_cm(h, p, top)?, Direction::FromUnit);
            for a in &basis {
                let chain: Vec<Matrix<K>> = (0..=top)
                    .map(|n| {
                        let an = traces::build_alpha(mc, a, n)?;
                        Ok(an.mat.select(&an.cod.degree_zero(), &an.dom.degree_zero()))
                    })
                    .collect::<hopfcyc::Result<_>>()?;
                match induced_map_on_hc(&source, &target, &chain, top) {
                    Ok(ms) => {
                        let degs: Vec<Value> = ms
                            .iter()
                            .enumerate()
                            .map(|(d, m)| json!({"degree": d, "rows": m.rows(), "cols": m.cols(), "rank": m.rank()}))
                            .collect();
                        maps.push(json!({"alpha": vector_json(a), "degrees": degs}));
                    }
                    Err(hopfcyc::Error::NotCyclic(why)) => maps.push(json!({"alpha": vector_json(a), "skipped": why})),
                    Err(e) => {
                        passed = false;
                        maps.push(json!({"alpha": vector_json(a), "error": e.to_string()}));
                    }
                }
            }
            entry["induced_maps"] = Value::Array(maps);
        }
        pairs.push(entry);
    }
    Ok(SuiteOutcome { passed, result: json!({"degree_bound": ctx.cfg.degree_bound, "pairs": pairs}) })
}

fn eval(ctx: &Context) -> hopfcyc::Result<SuiteOutcome> {
    let text = ctx.cfg.word.as_deref().ok_or_else(|| hopfcyc::Error::Word("eval needs --word".into()))?;
    let word = GenWord::parse_at(text)?;
    let level = word.max_level().max(1);
    let pair = match &ctx.cfg.pair {
        Some(_) => ctx.pairs()?[0],
        None => &ctx.alg.pairs[0],
    };
    let obj = match ctx.cfg.object {
        EvalObject::Cm => cm::build_cm(&ctx.alg.hopf, pair, level)?,
        EvalObject::C => traces::build_c_object(&ctx.module, level)?,
    };
    let m = evaluate_word(&obj, &word)?;
    let nf = normalize(&word)?;
    let via_nf = evaluate_normal_form(&obj, &nf)?;
    let agrees = m.same(&via_nf);
    let object = match ctx.cfg.object {
        EvalObject::Cm => format!("cm({})", pair.name),
        EvalObject::C => format!("c({})", ctx.module_source),
    };
    Ok(SuiteOutcome {
        passed: agrees,
        result: json!({
            "word": word.to_string(),
            "object": object,
            "normal_form": nf.to_word().to_string(),
            "normal_form_agrees": agrees,
            "matrix": matrix_json(&m.mat, m.field()),
        }),
    })
}

/// Runs the suites in order and assembles the report.
pub fn run_report(command: &str, source: &str, alg: &Loaded, cfg: &Config, suites: &[Suite]) -> hopfcyc::Result<(bool, Value)> {
    let t0 = Instant::now();
    let ctx = Context::new(alg, cfg)?;
    let mut all = true;
    let mut out = Vec::new();
    for &s in suites {
        let t = Instant::now();
        let o = run_suite(&ctx, s)?;
        all &= o.passed;
        out.push(json!({
            "name": s.name(),
            "passed": o.passed,
            "wall_ms": t.elapsed().as_secs_f64() * 1e3,
            "result": o.result,
        }));
    }
    let families: Vec<String> = cfg.families.iter().map(|f| format!("{f:?}")).collect();
    let report = json!({
        "schema": REPORT_SCHEMA,
        "tool": "hopfcyc",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input": {"source": source, "name": alg.name, "dim": alg.hopf.dim(), "field": alg.hopf.field().to_string(), "sha256": alg.digest},
        "config": {
            "n_max_requested": cfg.n_max,
            "n_max": ctx.n_max,
            "degree_bound": cfg.degree_bound,
            "pair": cfg.pair,
            "families": families,
        },
        "suites": out,
        "passed": all,
        "total_wall_ms": t0.elapsed().as_secs_f64() * 1e3,
    });
    Ok((all, report))
}

/// Removes timing fields, recursively.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            for k in TIMING_KEYS {
                m.remove(k);
            }
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
