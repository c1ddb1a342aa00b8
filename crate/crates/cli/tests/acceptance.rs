//! The ten acceptance criteria. Each prints one PASS/FAIL line; the test fails
//! if any criterion does.

use std::process::Command;
use std::time::{Duration, Instant};

use hopfcyc::builtins::{self, Example};
use hopfcyc::cm::{build_cm, check_twisted_mpi, tau, verify_powers, ModularPair};
use hopfcyc::homology::{build_bicomplex, point_module, total_homology};
use hopfcyc::hopf::{check_hopf_axioms, HopfAlgebra};
use hopfcyc::lemmas::run_lemma_suite;
use hopfcyc::scalar::{Cyclotomic, FieldSpec, One};
use hopfcyc::simplicial::{check_relations, evaluate_word, hom_transport, normalize, Direction, Family, Gen, GenWord};
use hopfcyc::tensor::Mor;
use hopfcyc::traces::{build_c_object, check_trace, regular_module_coalgebra, solve_traces, verify_cm_trace};
use hopfcyc_cli::file;
use hopfcyc_cli::suites::{run_report, strip_timing, Config, Suite};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

type K = Cyclotomic;
type Outcome = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok { Ok(()) } else { Err(what()) }
}

fn builtins() -> Vec<Example<K>> {
    builtins::NAMES.iter().map(|n| builtins::builtin::<K>(n, None).unwrap()).collect()
}

fn each_pair(mut f: impl FnMut(&Example<K>, &ModularPair<K>) -> Outcome) -> Outcome {
    for ex in builtins() {
        for p in &ex.pairs {
            f(&ex, p).map_err(|e| format!("{}/{}: {e}", ex.name, p.name))?;
        }
    }
    Ok(())
}

fn axioms() -> Outcome {
    for ex in builtins() {
        let rep = check_hopf_axioms(&ex.hopf);
        ensure(rep.passed(), || format!("{}: {:?}", ex.name, rep.first_failure()))?;
    }
    let sw = builtins::sweedler::<K>();
    let mut s = sw.antipode.mat.to_dense();
    s[3][2] = K::one();
    let s = Mor::from_dense(sw.carrier.clone(), sw.carrier.clone(), s).unwrap();
    let bad = HopfAlgebra::unchecked(sw.ctx.clone(), sw.carrier.clone(), sw.mult.clone(), sw.unit.clone(), sw.comult.clone(), sw.counit.clone(), s)
        .unwrap();
    let rep = check_hopf_axioms(&bad);
    let first = rep.first_failure().unwrap_or_default();
    ensure(first.starts_with("antipode"), || format!("corrupted Sweedler reported {first:?}"))
}

fn lemmas() -> Outcome {
    each_pair(|ex, p| {
        let rep = run_lemma_suite(&ex.hopf, p, ex.n_cap);
        ensure(rep.passed(), || format!("{:?}", rep.first_failure()))
    })
}

fn relations() -> Outcome {
    each_pair(|ex, p| {
        let cm = build_cm(&ex.hopf, p, ex.n_cap).map_err(|e| e.to_string())?;
        let rep = check_relations(&cm, ex.n_cap, &[Family::SR, Family::PCR]);
        ensure(rep.passed(), || format!("{:?}", rep.first_failure()))?;
        let n = ex.n_cap;
        // ts0 at level n reaches level n + 1, so the top one sits a level lower
        let ids = [format!("n={n} PCR td i=1"), format!("n={n} PCR td0"), format!("n={} PCR ts0", n - 1)];
        ensure(ids.iter().all(|id| rep.get(id).is_some()), || "missing PCR instances".into())
    })
}

fn powers() -> Outcome {
    each_pair(|ex, p| {
        let rep = verify_powers(&ex.hopf, p, ex.n_cap);
        ensure(rep.passed(), || format!("{:?}", rep.first_failure()))?;
        let kth = rep.checks.iter().filter(|c| c.id.ends_with("KthPower")).count();
        let expected: usize = (2..=ex.n_cap).map(|n| n - 1).sum();
        ensure(kth == expected, || format!("{kth} KthPower records, expected {expected}"))
    })
}

fn twisted_cyclicity() -> Outcome {
    let mut checked = 0;
    each_pair(|ex, p| {
        let wanted = (ex.name == "sweedler" && p.name == "eg") || (p.name == "eu" && check_twisted_mpi(&ex.hopf, p));
        if !wanted {
            return Ok(());
        }
        ensure(check_twisted_mpi(&ex.hopf, p), || "involution condition fails".into())?;
        for n in 0..=ex.n_cap {
            ensure(tau(&ex.hopf, p, n).pow(n + 1).same(&ex.hopf.theta(n)), || format!("n={n}"))?;
        }
        let m = hom_transport(&build_cm(&ex.hopf, p, ex.n_cap).map_err(|e| e.to_string())?, Direction::FromUnit);
        let rep = m.check();
        checked += 1;
        ensure(rep.passed(), || format!("transported module: {:?}", rep.first_failure()))
    })?;
    ensure(checked >= 4, || format!("only {checked} pairs checked"))
}

fn c_object() -> Outcome {
    let mut exs = builtins();
    exs.push(builtins::builtin::<K>("anyonic_line_q", Some(Cyclotomic::zeta(3))).unwrap());
    for ex in exs {
        let mc = regular_module_coalgebra(&ex.hopf).map_err(|e| e.to_string())?;
        let n = ex.n_cap.min(3);
        let p = build_c_object(&mc, n).map_err(|e| e.to_string())?;
        let rep = check_relations(&p, n, &[Family::SR, Family::PCR, Family::TwistedCC]);
        ensure(rep.passed(), || format!("{}: {:?}", ex.name, rep.first_failure()))?;
        if ex.name.starts_with("anyonic") {
            let theta = ex.hopf.ctx.twist(&ex.hopf.carrier).unwrap();
            ensure(!theta.mat.is_identity(), || "anyonic twist is trivial".into())?;
        }
    }
    Ok(())
}

fn cm_trace() -> Outcome {
    let mut nonzero = 0;
    each_pair(|ex, p| {
        let mc = regular_module_coalgebra(&ex.hopf).map_err(|e| e.to_string())?;
        let basis = solve_traces(&mc, p).map_err(|e| e.to_string())?;
        for a in &basis {
            let ct = check_trace(&mc, p, a).map_err(|e| e.to_string())?;
            ensure(ct.passed(), || format!("{:?}", ct.first_failure()))?;
            let rep = verify_cm_trace(&ex.hopf, p, &mc, a, ex.n_cap.min(3)).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("{:?}", rep.first_failure()))?;
            for fam in ["faces", "degeneracies", "cyclic"] {
                ensure(rep.checks.iter().any(|c| c.id.contains(fam)), || format!("no {fam} checks"))?;
            }
        }
        if !basis.is_empty() {
            nonzero += 1;
        }
        // the report states zero-dimensional solution spaces
        let alg = file::builtin(&ex.name, None).map_err(|e| e.to_string())?;
        let cfg = Config { pair: Some(p.name.clone()), ..Config::default() };
        let (_, v) = run_report("traces", &ex.name, &alg, &cfg, &[Suite::Traces]).map_err(|e| e.to_string())?;
        let entry = &v["suites"][0]["result"]["pairs"][0];
        ensure(entry["dimension"] == basis.len(), || "dimension differs".into())?;
        let note = entry["note"].as_str().unwrap_or_default();
        ensure(note.contains("zero-dimensional") == basis.is_empty(), || format!("note {note:?}"))
    })?;
    ensure(nonzero > 0, || "no nonzero trace space".into())
}

/// Cyclic cohomology of a point through the Connes complex of coinvariants;
/// every matrix is 1 x 1 with integer entries.
fn point_oracle(degrees: usize) -> Vec<usize> {
    let rank = |x: i64| usize::from(x != 0);
    let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
    let one_minus_lambda = |n: usize| 1 - sign(n);
    let b = |n: usize| if n == 0 { 0 } else { (0..=n).map(sign).sum::<i64>() };
    // rank of [b_n | 1 - lambda_{n-1}] minus rank of 1 - lambda_{n-1}
    let rb = |n: usize| if n == 0 { 0 } else { rank(b(n)).max(rank(one_minus_lambda(n - 1))) - rank(one_minus_lambda(n - 1)) };
    (0..degrees).map(|n| 1 - rank(one_minus_lambda(n)) - rb(n) - rb(n + 1)).collect()
}

fn homology() -> Outcome {
    const FROZEN: [usize; 5] = [1, 0, 1, 0, 1];
    ensure(point_oracle(5) == FROZEN, || format!("oracle gives {:?}", point_oracle(5)))?;
    let x = point_module::<K>(FieldSpec::Rationals, 7).transpose();
    let bc = build_bicomplex(&x, 7).map_err(|e| e.to_string())?;
    ensure(bc.checks.passed(), || format!("{:?}", bc.checks.first_failure()))?;
    ensure(bc.checks.get("n=6 DD").is_some() && bc.checks.get("q=6 b(1-l)=(1-l)b'").is_some(), || "checks stop early".into())?;
    let dims = total_homology(&bc).homology_dims();
    ensure(dims[..5] == FROZEN, || format!("HC {dims:?}"))
}

fn random_word(rng: &mut StdRng, top: usize, len: usize) -> GenWord {
    let source = rng.random_range(0..=top);
    let mut lvl = source;
    let mut gens = Vec::new();
    for _ in 0..rng.random_range(0..=len) {
        let mut options = vec![Gen::Tau { n: lvl }, Gen::TauInv { n: lvl }];
        if lvl < top {
            options.extend((0..=lvl + 1).map(|i| Gen::Coface { n: lvl + 1, i }));
        }
        if lvl >= 1 {
            options.extend((0..lvl).map(|j| Gen::Codegen { n: lvl - 1, j }));
        }
        let g = options[rng.random_range(0..options.len())];
        lvl = g.target();
        gens.push(g);
    }
    GenWord::new(source, gens).unwrap()
}

fn normal_forms() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20);
    each_pair(|ex, p| {
        let cm = build_cm(&ex.hopf, p, 3).map_err(|e| e.to_string())?;
        for _ in 0..200 {
            let w = random_word(&mut rng, 3, 50);
            let nf = normalize(&w).map_err(|e| e.to_string())?;
            let a = evaluate_word(&cm, &w).map_err(|e| e.to_string())?;
            let b = evaluate_word(&cm, &nf.to_word()).map_err(|e| e.to_string())?;
            ensure(a.same(&b), || format!("{w}"))?;
            ensure(normalize(&nf.to_word()).map_err(|e| e.to_string())? == nf, || format!("not idempotent on {w}"))?;
        }
        Ok(())
    })
}

fn report_with_threads(name: &str, threads: usize) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfcyc"))
        .args(["report", "--builtin", name])
        .env("HOPFCYC_THREADS", threads.to_string())
        .output()
        .map_err(|e| e.to_string())?;
    let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    strip_timing(&mut v);
    Ok(serde_json::to_string_pretty(&v).unwrap())
}

fn determinism() -> Outcome {
    for name in builtins::NAMES {
        let a = report_with_threads(name, 1)?;
        let b = report_with_threads(name, 4)?;
        ensure(!a.contains("wall_ms"), || "timing not stripped".into())?;
        ensure(a == b, || format!("{name}: reports differ"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("1 axioms", axioms, 5),
        ("2 lemma suite", lemmas, 120),
        ("3 relations", relations, 120),
        ("4 powers", powers, 180),
        ("5 twisted cyclicity", twisted_cyclicity, 60),
        ("6 C object", c_object, 120),
        ("7 trace morphism", cm_trace, 120),
        ("8 homology of a point", homology, 10),
        ("9 normal forms", normal_forms, 60),
        ("10 determinism", determinism, 600),
    ];
    let mut failed = Vec::new();
    for (name, run, budget) in criteria {
        let t = Instant::now();
        let mut result = run();
        let took = t.elapsed();
        if result.is_ok() && took > Duration::from_secs(budget) {
            result = Err(format!("took {took:.1?}, budget {budget} s"));
        }
        match &result {
            Ok(()) => println!("PASS  {name}  ({took:.2?})"),
            Err(e) => {
                println!("FAIL  {name}  ({took:.2?}): {e}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
