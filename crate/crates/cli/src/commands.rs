use std::fmt::Write as _;
use std::fs;
use std::sync::Arc;

use anyhow::{Context, Result};
use serde_json::{json, Value};
use superw_core::blocks::{
    block_id, block_path, build_ext_fragment, ext_dim_formula, parity_split,
    verify_height_obstruction, ExtRegime,
};
use superw_core::cohomology::{build_complex, dump_triplets, hom_module, ComplexOptions};
use superw_core::gl::{
    decompose_character, decomposition_entries, freudenthal, klimyk_tensor, weyl_dim,
};
use superw_core::kac::{build_kac, is_typical, KacFlavor};
use superw_core::module::{is_irreducible, FiniteModule};
use superw_core::quiver::{
    classify, tits_form, tits_inertia, wildness_certificate, Quiver, QuiverJson,
};
use superw_core::verify::{run_many, Level, CRITERIA};
use superw_core::walg::checks::{grading_violations, root_parity_consistent};
use superw_core::walg::{
    complement_weights, component_character, simplicity_probe, verify_super_jacobi, Algebra,
};
use superw_core::weight::Parity;
use superw_core::{Representation, Weight};

use crate::cache::Cache;
use crate::{
    AlgebraArgs, AlgebraCheck, BlockArgs, Cli, CohomologyArgs, Command, DecomposeArgs, ExtArgs,
    KacArgs, KindArg, LevelArg, QuiverArgs, VerifyArgs,
};

/// Invalid combination of otherwise well-formed arguments; exits with 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

pub struct Output {
    pub text: String,
    /// `false` turns into exit code 1 (a check that ran and failed).
    pub ok: bool,
}

impl Output {
    fn new(json_mode: bool, value: &Value, text: impl FnOnce(&Value) -> String) -> Self {
        let text = if json_mode {
            format!(
                "{}\n",
                serde_json::to_string_pretty(value).expect("serializable")
            )
        } else {
            text(value)
        };
        Output { text, ok: true }
    }

    fn failing_if(mut self, bad: bool) -> Self {
        self.ok = !bad;
        self
    }
}

/// Compact one-line JSON for record-shaped results.
fn compact(v: &Value) -> String {
    format!("{v}\n")
}

pub fn run(cli: &Cli) -> Result<Output> {
    let cache = Cache::from_env(cli.no_cache);
    match &cli.command {
        Command::Algebra(a) => algebra(cli.json, a),
        Command::Decompose(a) => decompose(cli.json, &cache, a),
        Command::Kac(a) => kac(cli.json, a),
        Command::Ext(a) => ext(cli.json, &cache, a),
        Command::Cohomology(a) => cohomology(cli.json, &cache, a),
        Command::Block(a) => block(cli.json, a),
        Command::Quiver(a) => quiver(cli.json, a),
        Command::Verify(a) => verify(cli.json, a),
    }
}

fn rank(lambda: &Weight, n: Option<usize>) -> Result<usize> {
    match n {
        Some(n) if n != lambda.n() => Err(usage(format!(
            "--n {n} but λ = {lambda} has {} entries",
            lambda.n()
        ))),
        _ => Ok(lambda.n()),
    }
}

fn algebra_for(kind: KindArg, n: usize) -> Result<Arc<Algebra>> {
    Ok(match kind {
        KindArg::W => Algebra::w(n)?,
        KindArg::Sl => Algebra::sl(n)?,
        KindArg::Gl => Algebra::gl(n)?,
    })
}

fn algebra(json_mode: bool, a: &AlgebraArgs) -> Result<Output> {
    let alg = algebra_for(a.kind, a.n)?;
    let mut graded: std::collections::BTreeMap<i32, usize> = Default::default();
    for i in 0..alg.dim() {
        *graded.entry(alg.degree(i)).or_default() += 1;
    }
    let mut v = json!({
        "algebra": alg.kind().tag(),
        "n": a.n,
        "dim": alg.dim(),
        "graded": graded.iter().map(|(k, d)| json!({"degree": k, "dim": d})).collect::<Vec<_>>(),
    });
    let mut failed = false;
    if let Some(check) = a.check {
        let (violations, extra) = match check {
            AlgebraCheck::Jacobi => {
                let r = verify_super_jacobi(&alg);
                (r.violations.len(), json!({"triples": r.triples}))
            }
            AlgebraCheck::Simplicity => {
                let r = simplicity_probe(&alg);
                let bad = r.closure_dims.iter().filter(|&&d| d != r.dim).count();
                (bad, json!({"elements": r.closure_dims.len()}))
            }
            AlgebraCheck::Grading => (grading_violations(&alg).len(), json!({})),
            AlgebraCheck::Roots => {
                if !matches!(a.kind, KindArg::W) {
                    return Err(usage("--check roots applies to --kind w"));
                }
                (usize::from(!root_parity_consistent(a.n)?), json!({}))
            }
        };
        failed = violations > 0;
        let name = format!("{check:?}").to_lowercase();
        v["check"] = json!({"name": name, "violations": violations, "detail": extra});
    }
    if a.roots {
        if !matches!(a.kind, KindArg::W) {
            return Err(usage("--roots applies to --kind w"));
        }
        v["complement_weights"] = serde_json::to_value(complement_weights(a.n)?)?;
    }
    Ok(Output::new(json_mode, &v, |v| {
        if let Some(c) = v.get("check") {
            let k = c["violations"].as_u64().unwrap_or(0);
            return format!("{}: {k} violations\n", if k == 0 { "OK" } else { "FAIL" });
        }
        let mut s = format!(
            "{}({}): dim {}\n",
            v["algebra"].as_str().unwrap_or("?"),
            v["n"],
            v["dim"]
        );
        for g in v["graded"].as_array().into_iter().flatten() {
            let _ = writeln!(
                s,
                "  degree {:>2}: {}",
                g["degree"].as_i64().unwrap_or(0),
                g["dim"]
            );
        }
        for r in v["complement_weights"].as_array().into_iter().flatten() {
            let _ = writeln!(
                s,
                "  root {} degree {} parity {} mult {}",
                weight_text(&r["weight"]),
                r["degree"],
                r["parity"],
                r["mult"]
            );
        }
        s
    })
    .failing_if(failed))
}

/// `[\"5/2\",\"3/2\"]` as `(5/2,3/2)`.
fn weight_text(v: &Value) -> String {
    let parts: Vec<&str> = v
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(Value::as_str)
        .collect();
    format!("({})", parts.join(","))
}

fn components_text(v: &Value) -> String {
    let mut s = String::new();
    for c in v["components"].as_array().into_iter().flatten() {
        let _ = writeln!(s, "L{} x{}", weight_text(&c["weight"]), c["mult"]);
    }
    s
}

fn decompose(json_mode: bool, cache: &Cache, a: &DecomposeArgs) -> Result<Output> {
    let v = match (&a.lambda, &a.mu, a.degree) {
        (Some(l), Some(m), _) => {
            if l.n() != m.n() {
                return Err(usage(format!("{l} and {m} have different lengths")));
            }
            let req = json!({"op": "decompose-tensor", "lambda": l, "mu": m});
            cache.get_or_compute(&req, || {
                l.require_dominant()?;
                m.require_dominant()?;
                let d = klimyk_tensor(l, m)?;
                Ok(json!({
                    "lambda": l,
                    "mu": m,
                    "dim": weyl_dim(l)? * weyl_dim(m)?,
                    "components": decomposition_entries(&d),
                }))
            })?
        }
        (Some(l), None, _) => {
            l.require_dominant()?;
            let c = freudenthal(l)?;
            json!({
                "lambda": l,
                "dim": weyl_dim(l)?,
                "weights": c.iter().map(|(w, m)| json!({"weight": w, "mult": m})).collect::<Vec<_>>(),
            })
        }
        (None, _, Some(k)) => {
            let n = a.n.expect("clap requires --n");
            let c = component_character(n, k)?;
            json!({
                "n": n,
                "degree": k,
                "dim": c.dim(),
                "components": decomposition_entries(&decompose_character(&c)?),
            })
        }
        (None, _, None) => return Err(usage("give --lambda [--mu] or --n with --degree")),
    };
    Ok(Output::new(json_mode, &v, |v| {
        if v.get("weights").is_some() {
            let mut s = format!("dim {}\n", v["dim"]);
            for w in v["weights"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "{} x{}", weight_text(&w["weight"]), w["mult"]);
            }
            s
        } else {
            format!("dim {}\n{}", v["dim"], components_text(v))
        }
    }))
}

fn kac(json_mode: bool, a: &KacArgs) -> Result<Output> {
    let n = rank(&a.lambda, a.n)?;
    let k = build_kac(n, &a.lambda, a.flavor, a.cap)?;
    let mut v = json!({
        "lambda": k.lambda,
        "n": n,
        "flavor": k.flavor,
        "dim": k.dim(),
        "irrep_dim": k.irrep_dim(),
    });
    if a.irreducible {
        v["irreducible"] = json!(is_irreducible(&k.module));
        if k.flavor != KacFlavor::W {
            v["typicality"] = serde_json::to_value(is_typical(n, &a.lambda)?)?;
        }
    }
    if a.basis {
        v["basis"] = basis_json(&k.module);
    }
    Ok(Output::new(json_mode, &v, |v| {
        let mut s = format!(
            "K{} ({}): dim {} = 2^{} x {}\n",
            weight_text(&v["lambda"]),
            v["flavor"].as_str().unwrap_or("?"),
            v["dim"],
            v["n"],
            v["irrep_dim"]
        );
        if let Some(b) = v.get("irreducible") {
            let _ = writeln!(s, "irreducible: {b}");
        }
        if let Some(t) = v.get("typicality") {
            let _ = writeln!(
                s,
                "typical: {} ({})",
                t["typical"],
                t["method"].as_str().unwrap_or("?")
            );
        }
        for b in v["basis"].as_array().into_iter().flatten() {
            let _ = writeln!(
                s,
                "  {} weight {} parity {}",
                b["label"].as_str().unwrap_or("?"),
                weight_text(&b["weight"]),
                b["parity"]
            );
        }
        s
    }))
}

fn basis_json(m: &FiniteModule) -> Value {
    (0..m.dim())
        .map(|i| json!({"label": m.label(i), "weight": m.weight(i), "parity": m.parity(i)}))
        .collect()
}

fn ext(json_mode: bool, cache: &Cache, a: &ExtArgs) -> Result<Output> {
    let n = rank(&a.lambda, a.n)?;
    if a.fragment {
        let f = build_ext_fragment(n, &a.lambda)?;
        if a.dot {
            return Ok(Output {
                text: f.to_dot(),
                ok: true,
            });
        }
        let v = serde_json::to_value(&f)?;
        return Ok(Output::new(json_mode, &v, compact));
    }
    let alpha = a.alpha.as_ref().expect("clap requires --alpha");
    if alpha.n() != n {
        return Err(usage(format!(
            "α = {alpha} and λ = {} have different lengths",
            a.lambda
        )));
    }
    let req = json!({"op": "ext", "lambda": a.lambda, "alpha": alpha, "oracle": a.oracle});
    let v = cache.get_or_compute(&req, || {
        let d = ext_dim_formula(n, &a.lambda, alpha)?;
        let target = &a.lambda + alpha;
        let mut v = json!({
            "lambda": a.lambda,
            "alpha": alpha,
            "target": target,
            "formula": d.mult,
            "regime": d.regime,
        });
        if a.oracle {
            let ka = build_kac(
                n,
                &a.lambda,
                KacFlavor::W,
                superw_core::kac::DEFAULT_KAC_CAP,
            )?;
            let kb = build_kac(n, &target, KacFlavor::W, superw_core::kac::DEFAULT_KAC_CAP)?;
            let h1 = build_complex(
                &hom_module(&ka.module, &kb.module)?,
                ComplexOptions::default(),
            )?
            .report()
            .h1 as u64;
            let agree = match d.regime {
                ExtRegime::Exact => h1 == d.mult,
                ExtRegime::LowerBound => h1 >= d.mult,
            };
            v["h1"] = json!(h1);
            v["agree"] = json!(agree);
            v["height_obstruction"] = json!(verify_height_obstruction(n, &a.lambda, alpha)?);
        }
        Ok(v)
    })?;
    let disagree = v.get("agree") == Some(&json!(false));
    Ok(Output::new(json_mode, &v, compact).failing_if(disagree))
}

fn cohomology(json_mode: bool, cache: &Cache, a: &CohomologyArgs) -> Result<Output> {
    let opts = ComplexOptions {
        generator_rows: !a.full_rows,
        entry_cap: a.cap,
        corrupt_sign: false,
    };
    let dumping = a.dump_d0.is_some() || a.dump_d1.is_some();
    let compute = || -> Result<Value> {
        let (label, v) = if a.trivial {
            let n = a.n.expect("clap requires --n");
            let m = FiniteModule::trivial(algebra_for(a.kind, n)?);
            ("trivial".to_string(), complex_json(&m, opts, a)?)
        } else {
            if !matches!(a.kind, KindArg::W) {
                return Err(usage("Hom coefficients are built over --kind w"));
            }
            let (l, m) = (
                a.lambda.as_ref().expect("clap"),
                a.mu.as_ref().expect("clap"),
            );
            let n = rank(l, a.n)?;
            if m.n() != n {
                return Err(usage(format!("λ = {l} and μ = {m} have different lengths")));
            }
            let ka = build_kac(n, l, KacFlavor::W, superw_core::kac::DEFAULT_KAC_CAP)?;
            let kb = build_kac(n, m, KacFlavor::W, superw_core::kac::DEFAULT_KAC_CAP)?;
            let hom = hom_module(&ka.module, &kb.module)?;
            (format!("Hom(K{l}, K{m})"), complex_json(&hom, opts, a)?)
        };
        let mut v = v;
        v["module"] = json!(label);
        Ok(v)
    };
    let v = if dumping {
        compute()?
    } else {
        let req = json!({
            "op": "cohomology",
            "trivial": a.trivial,
            "n": a.n,
            "kind": format!("{:?}", a.kind),
            "lambda": a.lambda,
            "mu": a.mu,
            "full_rows": a.full_rows,
            "cap": a.cap,
            "check_d2": a.check_d2,
        });
        cache.get_or_compute(&req, compute)?
    };
    let bad = v.get("d_squared_zero") == Some(&json!(false));
    Ok(Output::new(json_mode, &v, compact).failing_if(bad))
}

fn complex_json<R: Representation>(
    m: &R,
    opts: ComplexOptions,
    a: &CohomologyArgs,
) -> Result<Value> {
    let c = build_complex(m, opts)?;
    let mut v = serde_json::to_value(c.report())?;
    v["module_dim"] = json!(m.dim());
    if a.check_d2 {
        v["d_squared_zero"] = json!(c.d_squared_vanishes());
    }
    if let Some(p) = &a.dump_d0 {
        fs::write(p, dump_triplets(&c.d0)).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = &a.dump_d1 {
        fs::write(p, dump_triplets(&c.d1)).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(v)
}

fn block(json_mode: bool, a: &BlockArgs) -> Result<Output> {
    let base = if a.parity_base == 0 {
        Parity::Even
    } else {
        Parity::Odd
    };
    let v = if let Some(mu) = &a.mu {
        if mu.n() != a.lambda.n() {
            return Err(usage(format!(
                "λ = {} and μ = {mu} have different lengths",
                a.lambda
            )));
        }
        let path = block_path(&a.lambda, mu)?;
        json!({
            "lambda": a.lambda,
            "mu": mu,
            "block": block_id(&a.lambda, base)?,
            "path": path,
        })
    } else if a.split {
        let k = build_kac(
            a.lambda.n(),
            &a.lambda,
            KacFlavor::W,
            superw_core::kac::DEFAULT_KAC_CAP,
        )?;
        let s = parity_split(&k.module, base)?;
        json!({
            "lambda": a.lambda,
            "block": block_id(&a.lambda, base)?,
            "dim": k.dim(),
            "plus": s.plus.len(),
            "minus": s.minus.len(),
        })
    } else {
        serde_json::to_value(block_id(&a.lambda, base)?)?
    };
    Ok(Output::new(json_mode, &v, compact))
}

fn load_quiver(a: &QuiverArgs) -> Result<Quiver> {
    match (&a.file, a.star, a.path) {
        (Some(p), _, _) => {
            let src = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            if p.extension().is_some_and(|e| e == "json") {
                let j: QuiverJson = serde_json::from_str(&src)
                    .with_context(|| format!("parsing {}", p.display()))?;
                Ok(Quiver::from_json(&j)?)
            } else {
                Ok(Quiver::from_dot(&src)?)
            }
        }
        (None, Some(d), _) => Ok(Quiver::star(d)),
        (None, None, Some(k)) => Ok(Quiver::path(k)),
        (None, None, None) => Err(usage("give one of --file, --star, --path")),
    }
}

fn quiver(json_mode: bool, a: &QuiverArgs) -> Result<Output> {
    let q = load_quiver(a)?;
    if a.dot {
        return Ok(Output {
            text: q.to_dot(),
            ok: true,
        });
    }
    let verdict = classify(&q);
    let mut v = json!({
        "quiver": q.to_json(),
        "kind": verdict.kind,
        "components": verdict.components,
        "certificate": wildness_certificate(&q),
        "inertia": tits_inertia(&q),
    });
    if let Some(d) = &a.tits {
        v["tits"] = json!(tits_form(&q, d)?);
    }
    Ok(Output::new(json_mode, &v, |v| {
        let mut s = format!("{}\n", v["kind"].as_str().unwrap_or("?"));
        for c in v["components"].as_array().into_iter().flatten() {
            let _ = writeln!(
                s,
                "  component {}: {}",
                c["vertices"],
                diagram_text(&c["diagram"])
            );
        }
        if let Some(c) = v["certificate"].as_object() {
            let crit: Vec<&str> = c["criteria"]
                .as_array()
                .into_iter()
                .flatten()
                .filter_map(Value::as_str)
                .collect();
            let _ = writeln!(
                s,
                "  wildness certificate on {}: {}",
                c["vertices"],
                crit.join(", ")
            );
        }
        if let Some(t) = v.get("tits") {
            let _ = writeln!(s, "  tits form: {t}");
        }
        s
    }))
}

fn diagram_text(d: &Value) -> String {
    match d.as_object().and_then(|o| o.iter().next()) {
        Some((kind, name)) => format!("{} {}", kind, name.as_str().unwrap_or("?")),
        None => d.to_string(),
    }
}

fn verify(json_mode: bool, a: &VerifyArgs) -> Result<Output> {
    let level = match a.level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let ids: Vec<u8> = match &a.only {
        Some(ids) => {
            if let Some(bad) = ids.iter().find(|i| !CRITERIA.iter().any(|(c, _)| c == *i)) {
                return Err(usage(format!("no criterion {bad}")));
            }
            ids.clone()
        }
        None => CRITERIA.iter().map(|(i, _)| *i).collect(),
    };
    let results = run_many(&ids, level);
    let all_ok = results.iter().all(|r| r.passed);
    let v: Value = results
        .iter()
        .map(|r| {
            let mut e = json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail});
            if a.timings {
                e["millis"] = json!(r.millis as u64);
            }
            e
        })
        .collect();
    Ok(Output::new(json_mode, &v, |v| {
        let mut s = String::new();
        for r in v.as_array().into_iter().flatten() {
            let _ = write!(
                s,
                "criterion {:>2} {:<20} {}  {}",
                r["id"].as_u64().unwrap_or(0),
                r["name"].as_str().unwrap_or("?"),
                if r["passed"] == json!(true) {
                    "PASS"
                } else {
                    "FAIL"
                },
                r["detail"].as_str().unwrap_or("")
            );
            if let Some(ms) = r.get("millis") {
                let _ = write!(s, " ({ms} ms)");
            }
            s.push('\n');
        }
        s
    })
    .failing_if(!all_ok))
}
