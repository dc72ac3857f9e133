use std::fmt::{Display, Write as _};
use std::io::Read;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use knotcert::classical::{self, Eval, Step};
use knotcert::cover::{
    lift, lift_of_sum, CoverError, Family, LensSpace, LiftDescription, PatternKnot,
};
use knotcert::exec::Execution;
use knotcert::obstruct::{self, Certificate, Conclusion, Job, ObstructError, ReplayError, Witness};
use knotcert::signature::{self, SignatureError};
use knotcert::upsilon::{self, UpsilonError};
use knotcert::{KnotExpr, Rational};

use crate::args::{Cli, Command, CoverArgs, Engine, FamilyTag, SweepKind, UpsilonArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("self-check failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SignatureError> for CliError {
    fn from(e: SignatureError) -> Self {
        match e {
            SignatureError::SelfCheckFailed { .. } | SignatureError::PrecisionExhausted { .. } => {
                CliError::Internal(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<UpsilonError> for CliError {
    fn from(e: UpsilonError) -> Self {
        CliError::Internal(e.to_string())
    }
}

/// What a command produced: the JSON payload, its text rendering and the
/// exit code.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn envelope(command: &str, inputs: Value, result: Value) -> Value {
    json!({ "command": command, "inputs": inputs, "result": result })
}

fn derivation_text(out: &mut String, steps: &[Step]) {
    for s in steps {
        let _ = writeln!(out, "  {s}");
    }
}

fn evaluation<T: Serialize + Display>(command: &str, expr: &KnotExpr, eval: Eval<T>) -> Output {
    let json = envelope(command, json!({ "expr": expr }), to_json(&eval));
    let mut text = String::new();
    let code = match &eval {
        Eval::Value { value, derivation } => {
            let _ = writeln!(text, "{command}({expr}) = {value}");
            derivation_text(&mut text, derivation);
            0
        }
        Eval::Unknown { reason } => {
            let _ = writeln!(text, "{command}({expr}) unknown: {reason}");
            1
        }
    };
    Output { json, text, code }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Alexander { expr } => {
            Ok(evaluation("alexander", expr, classical::alexander(expr)))
        }
        Command::Tau { expr } => Ok(evaluation("tau", expr, classical::tau(expr))),
        Command::Genus { expr } => Ok(evaluation("genus", expr, classical::genus3(expr))),
        Command::Upsilon(args) => run_upsilon(args),
        Command::Jumps { r, s } => {
            let spectrum = signature::torus_jumps(*r, *s)?;
            let mut text = format!("T({r},{s}): {} jumps\n", spectrum.entries.len());
            for j in &spectrum.entries {
                let _ = writeln!(text, "{}\t{:+}", j.t, j.jump);
            }
            let json = envelope("jumps", json!({ "r": r, "s": s }), to_json(&spectrum));
            Ok(Output {
                json,
                text,
                code: 0,
            })
        }
        Command::Sigma { r, s, t } => {
            let spectrum = signature::torus_jumps(*r, *s)?;
            let sigma = signature::sigma_at(&spectrum, t)?;
            let text = format!("σ(T({r},{s})) at t = {t}: {sigma}\n");
            let json = envelope(
                "sigma",
                json!({ "r": r, "s": s, "t": t }),
                json!({ "t": t, "signature": sigma }),
            );
            Ok(Output {
                json,
                text,
                code: 0,
            })
        }
        Command::SigmaOracle { r, s, t, max_bits } => {
            let v = signature::braid_seifert_matrix(*r, *s)?;
            let report = signature::sigma_oracle_with(&v, t, *max_bits)?;
            let text = format!(
                "σ(T({r},{s})) at t = {t}: {} ({} positive, {} negative, {} bits)\n",
                report.signature, report.positive, report.negative, report.bits
            );
            let inputs = json!({ "r": r, "s": s, "t": t, "max_bits": max_bits });
            Ok(Output {
                json: envelope("sigma-oracle", inputs, to_json(&report)),
                text,
                code: 0,
            })
        }
        Command::Cover(args) => run_cover(args),
        Command::Obstruct(engine) => run_obstruct(engine),
        Command::Sweep(kind) => run_sweep(kind),
        Command::Replay { file } => run_replay(file),
    }
}

fn run_upsilon(args: &UpsilonArgs) -> Result<Output, CliError> {
    let expr = &args.expr;
    let eval = upsilon::upsilon(expr)?;
    let Eval::Value {
        value: f,
        derivation,
    } = &eval
    else {
        return Ok(evaluation("upsilon", expr, eval));
    };
    let mut inputs = json!({ "expr": expr });
    if args.dump_plf {
        inputs["dump_plf"] = json!(true);
        let mut text = String::from("t\tupsilon\n");
        for (t, v) in f.breakpoints() {
            let _ = writeln!(text, "{t}\t{v}");
        }
        let json = envelope("upsilon", inputs, json!({ "breakpoints": f.breakpoints() }));
        return Ok(Output {
            json,
            text,
            code: 0,
        });
    }
    let mut text = format!("upsilon({expr}) = {f}\n");
    derivation_text(&mut text, derivation);
    let mut result = json!({ "upsilon": eval });
    if let Some(t) = &args.at {
        let v = f.eval(t).map_err(|e| CliError::Usage(e.to_string()))?;
        let _ = writeln!(text, "at t = {t}: {v}");
        inputs["at"] = json!(t);
        result["at"] = json!({ "t": t, "value": v });
    }
    if let Some(ab) = &args.slope_on {
        let (a, b) = (&ab[0], &ab[1]);
        let slopes = f
            .slopes_on(a, b)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let rendered: Vec<String> = slopes.iter().map(Rational::to_string).collect();
        let _ = writeln!(text, "slopes on ({a}, {b}): {}", rendered.join(", "));
        inputs["slope_on"] = json!([a, b]);
        result["slope_on"] = json!({ "interval": [a, b], "slopes": slopes });
    }
    Ok(Output {
        json: envelope("upsilon", inputs, result),
        text,
        code: 0,
    })
}

fn required(v: Option<i64>, flag: &str, family: &str) -> Result<i64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for the {family} family")))
}

fn run_cover(args: &CoverArgs) -> Result<Output, CliError> {
    let rp3 = matches!(args.family, FamilyTag::Rp3Null | FamilyTag::Rp3Order2);
    let tag = format!("{:?}", args.family).to_lowercase();
    let (p, q) = if rp3 {
        (args.p.unwrap_or(2), args.q.unwrap_or(1))
    } else {
        (required(args.p, "p", &tag)?, required(args.q, "q", &tag)?)
    };
    let family = match args.family {
        FamilyTag::Torus => Family::Torus {
            l: required(args.l, "l", "torus")?,
            n: required(args.n, "n", "torus")?,
        },
        FamilyTag::Generic => Family::Generic {
            a: required(args.l, "l", "generic")?,
        },
        FamilyTag::Order2 => Family::Order2,
        FamilyTag::Rp3Null => Family::Rp3Null,
        FamilyTag::Rp3Order2 => Family::Rp3Order2,
    };
    let space = LensSpace::new(p, q)?;
    let knot = PatternKnot::new(space, family, args.companion.clone())?;
    let mut desc = lift(&knot)?;
    if let Some(j) = &args.sum {
        desc = lift_of_sum(&desc, j);
    }
    let inputs = json!({
        "space": space,
        "family": family,
        "companion": args.companion,
        "sum": args.sum,
    });
    Ok(Output {
        json: envelope("cover", inputs, to_json(&desc)),
        text: lift_text(&space, &desc),
        code: 0,
    })
}

fn lift_text(space: &LensSpace, d: &LiftDescription) -> String {
    let mut text = format!(
        "lift to S³ of a knot in {space}: {} component(s), each of degree {}\n",
        d.component_count, d.degree
    );
    if let Some(link) = &d.link {
        if let knotcert::LinkExpr::TorusLink { l, m } = link {
            let _ = writeln!(text, "covering link: T({l},{m})");
        }
    }
    for c in &d.components {
        let _ = writeln!(text, "  component: {c}");
    }
    for n in &d.notes {
        let _ = writeln!(text, "  note: {n}");
    }
    text
}

fn job_of(engine: &Engine) -> Job {
    match engine.clone() {
        Engine::Bing { j1, j2 } => Job::Bing { j1, j2 },
        Engine::Rp3Null { j1, j2 } => Job::Rp3Null { j1, j2 },
        Engine::LensGeneric { p, q, l } => Job::LensGeneric { p, q, l },
        Engine::LensOrder2 { n, q, j } => Job::LensOrder2 { n, q, j },
        Engine::Rp3Order2 { j } => Job::Rp3Order2 { j },
        Engine::Topological { p, q, l, n1, n2 } => Job::Topological { p, q, l, n1, n2 },
    }
}

/// `Ok(Err(output))` when an evaluator returned Unknown.
fn obstruct_error(job: &Job, e: ObstructError) -> Result<Output, CliError> {
    match e {
        ObstructError::EvaluatorUnknown { subject, reason } => {
            let inputs = to_json(job)["inputs"].clone();
            let result = json!({ "status": "unknown", "subject": subject, "reason": reason });
            Ok(Output {
                json: envelope(&format!("obstruct {}", job.engine()), inputs, result),
                text: format!("evaluator returned Unknown for {subject}: {reason}\n"),
                code: 1,
            })
        }
        ObstructError::Upsilon(e) => Err(e.into()),
        ObstructError::Signature(e) => Err(e.into()),
        other => Err(CliError::Usage(other.to_string())),
    }
}

fn run_obstruct(engine: &Engine) -> Result<Output, CliError> {
    let job = job_of(engine);
    match job.run() {
        Ok(cert) => Ok(Output {
            json: to_json(&cert),
            text: certificate_text(&cert),
            code: if cert.is_distinguished() { 0 } else { 1 },
        }),
        Err(e) => obstruct_error(&job, e),
    }
}

fn certificate_text(c: &Certificate) -> String {
    let mut text = format!(
        "engine: {}\nproposition: {}\n",
        c.job.engine(),
        c.proposition
    );
    match &c.conclusion {
        Conclusion::Distinguished { statement } => {
            let _ = writeln!(text, "conclusion: Distinguished ({statement})");
        }
        Conclusion::Inconclusive { reason } => {
            let _ = writeln!(text, "conclusion: Inconclusive ({reason})");
        }
    }
    text.push_str("witness:\n");
    match &c.witness {
        Witness::Tau { entries } => {
            for e in entries {
                let _ = writeln!(
                    text,
                    "  τ({}) = {}; lift {} has τ = {}",
                    e.input, e.tau, e.lift, e.lift_tau
                );
            }
        }
        Witness::Congruence { pairs, .. } => {
            for p in pairs {
                let _ = writeln!(
                    text,
                    "  {} (a = {}, d = {}): τ({}) = {}, τ({}) = {}, {}·τ(Ĵ) = {} -> {}",
                    p.label,
                    p.a,
                    p.d,
                    p.cable,
                    p.cable_tau,
                    p.torus,
                    p.torus_tau,
                    p.modulus,
                    p.difference,
                    if p.distinguished {
                        "Distinguished"
                    } else {
                        "Inconclusive"
                    }
                );
            }
        }
        Witness::GenusBound {
            expression,
            tau,
            genus_bound,
            ..
        } => {
            let _ = writeln!(text, "  τ({expression}) = {tau}, genus bound {genus_bound}");
        }
        Witness::UpsilonSlope {
            expression,
            interval,
            slopes,
            ..
        } => {
            let rendered: Vec<String> = slopes.iter().map(Rational::to_string).collect();
            let _ = writeln!(
                text,
                "  Υ({expression}) has slopes [{}] on ({}, {})",
                rendered.join(", "),
                interval.0,
                interval.1
            );
        }
        Witness::Signature {
            lifts,
            interval,
            t0,
            difference,
            modulus,
            degree,
            ..
        } => {
            for l in lifts {
                let _ = writeln!(
                    text,
                    "  n = {}: lift {}, first jump {:+} at {}, σ(t0) = {}",
                    l.n, l.knot, l.first_jump_value, l.first_jump, l.sigma_at_witness
                );
            }
            let _ = writeln!(
                text,
                "  t0 = {t0} in ({}, {}); {degree}·σ(J) = {difference}, needs {modulus} | {difference}",
                interval.0, interval.1
            );
        }
        Witness::Empty { note } => {
            let _ = writeln!(text, "  {note}");
        }
    }
    text.push_str("trace:\n");
    for e in &c.trace {
        let _ = writeln!(text, "  {}", e.label);
        for s in &e.steps {
            let _ = writeln!(text, "    {s}");
        }
    }
    text
}

fn run_sweep(kind: &SweepKind) -> Result<Output, CliError> {
    let SweepKind::Topological {
        p,
        q,
        l,
        n_max,
        sequential,
    } = kind;
    let exec = if *sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let mut certs = Vec::new();
    for r in obstruct::topological_sweep(*p, *q, *l, *n_max, exec) {
        match r {
            Ok(c) => certs.push(c),
            Err(e) => {
                let job = Job::Topological {
                    p: *p,
                    q: *q,
                    l: *l,
                    n1: 1,
                    n2: *n_max,
                };
                return obstruct_error(&job, e);
            }
        }
    }
    let mut text = String::new();
    for c in &certs {
        let Job::Topological { n1, n2, .. } = c.job else {
            unreachable!("sweep produces topological certificates")
        };
        let verdict = if c.is_distinguished() {
            "Distinguished"
        } else {
            "Inconclusive"
        };
        let t0 = match &c.witness {
            Witness::Signature { t0, .. } => format!(" (t0 = {t0})"),
            _ => String::new(),
        };
        let _ = writeln!(text, "n1 = {n1}, n2 = {n2}: {verdict}{t0}");
    }
    let distinguished = certs.iter().filter(|c| c.is_distinguished()).count();
    let _ = writeln!(
        text,
        "{distinguished} of {} pairs distinguished",
        certs.len()
    );
    let code = if distinguished == certs.len() { 0 } else { 1 };
    let inputs = json!({ "p": p, "q": q, "l": l, "n_max": n_max });
    Ok(Output {
        json: envelope("sweep topological", inputs, to_json(&certs)),
        text,
        code,
    })
}

fn certificates_in(v: Value) -> Result<Vec<Certificate>, CliError> {
    let v = match v {
        Value::Object(mut m) if m.contains_key("result") && !m.contains_key("engine") => {
            m.remove("result").unwrap_or(Value::Null)
        }
        v => v,
    };
    let bad = |e: serde_json::Error| CliError::Usage(format!("not a certificate: {e}"));
    match v {
        Value::Array(items) => items
            .into_iter()
            .map(|c| serde_json::from_value(c).map_err(bad))
            .collect(),
        v => Ok(vec![serde_json::from_value(v).map_err(bad)?]),
    }
}

fn run_replay(file: &std::path::Path) -> Result<Output, CliError> {
    let mut raw = String::new();
    if file.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut raw)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
    } else {
        raw = std::fs::read_to_string(file)
            .map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
    }
    let value: Value =
        serde_json::from_str(&raw).map_err(|e| CliError::Usage(format!("invalid JSON: {e}")))?;
    let certs = certificates_in(value)?;
    let mut text = String::new();
    let mut results = Vec::new();
    for c in &certs {
        match c.replay() {
            Ok(()) => {}
            Err(ReplayError::Engine(e)) => return Err(CliError::Usage(e.to_string())),
            Err(e) => return Err(CliError::Internal(format!("{}: {e}", c.job.engine()))),
        }
        let _ = writeln!(text, "{}: replayed, {}", c.job.engine(), verdict(c));
        results.push(json!({ "engine": c.job.engine(), "inputs": to_json(&c.job)["inputs"], "replayed": true, "verdict": verdict(c) }));
    }
    Ok(Output {
        json: envelope("replay", json!({ "file": file }), Value::Array(results)),
        text,
        code: 0,
    })
}

fn verdict(c: &Certificate) -> &'static str {
    if c.is_distinguished() {
        "distinguished"
    } else {
        "inconclusive"
    }
}
