//! Batch front end: construct class members, classify and verify matrix groups,
//! report forms and group data, and run the acceptance suite.

mod parse;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use aschbacher::classes::{construct, verify_member, ClassParams, ClassSpec, ClassWitness, WitnessJson};
use aschbacher::classical::{expected_order, generators, standard_form, ClassicalSpec};
use aschbacher::classifier::{classify, verify_verdict, Caps, Tag, Verdict, VerdictJson};
use aschbacher::extraspecial::RGroupSpec;
use aschbacher::forms::{invariant_form_space, FormSpec};
use aschbacher::group::{GenSet, GenSetJson, Group};
use aschbacher::selftest::{run_criterion, CRITERIA, SUITE_SEED};
use aschbacher::Error;

use parse::Named;

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "aschbacher", version, about = "Aschbacher classes of matrix groups over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Enumeration limits, e.g. closure=200000,normal=20000,subspace=4
    #[arg(long, global = true, value_parser = parse::caps)]
    caps: Option<Caps>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build generators of a member of one of the classes C1 to C8
    Construct(ConstructArgs),
    /// Classify the group generated by a set of matrices
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check a constructed member, or a verdict against its generators
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        verdict: Option<PathBuf>,
    },
    /// Report the invariant forms of a generator set or the form of a classical group
    Forms {
        #[arg(long = "in", conflicts_with = "group")]
        input: Option<PathBuf>,
        /// A classical group such as GO-(4,3)
        group: Option<String>,
    },
    /// Orders and structure of a named group, e.g. GL(2,2) or R(r=3,m=1,+)
    Info { group: String },
    /// Run the acceptance suite
    Selftest {
        /// Run only these criteria
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long = "class", value_parser = clap::value_parser!(u8).range(1..=8))]
    class: u8,
    #[arg(long)]
    n: Option<usize>,
    /// Field order as p^e, q, or "p,e"
    #[arg(long, value_parser = parse::field_order)]
    q: (u32, u32),
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n2: Option<usize>,
    /// r-group variant for C6: +, - or 4
    #[arg(long)]
    variant: Option<String>,
    /// Primitive root of unity used by the r-group center, counted from 1
    #[arg(long)]
    lambda: Option<u32>,
    /// Form kind for C8: symplectic, unitary, symmetric or quadratic
    #[arg(long)]
    form: Option<String>,
    /// Orthogonal type for C8: +, - or o
    #[arg(long)]
    subtype: Option<String>,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::CapExceeded { .. } | Error::TooLarge(_) => 3,
            Error::NonPrime(_)
            | Error::DegreeZero
            | Error::FieldTooLarge(_)
            | Error::NotASubfield { .. }
            | Error::InvalidSpec(_)
            | Error::BadCharacteristic { .. }
            | Error::MissingRoots(_)
            | Error::Parse(_)
            | Error::ShapeMismatch(_)
            | Error::FieldMismatch
            | Error::ThetaMismatch(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Command output and whether its checks passed.
struct Report {
    body: Value,
    passed: bool,
    cap_exceeded: bool,
}

impl Report {
    fn ok(body: Value) -> Report {
        Report { body, passed: true, cap_exceeded: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = cli.common.caps.unwrap_or_default();
    let seed = cli.common.seed;
    let result = match &cli.command {
        Command::Construct(a) => run_construct(a),
        Command::Classify { input } => run_classify(input, caps, seed),
        Command::Verify { input, verdict } => run_verify(input, verdict.as_deref(), caps),
        Command::Forms { input, group } => run_forms(input.as_deref(), group.as_deref()),
        Command::Info { group } => run_info(group, caps),
        Command::Selftest { only } => run_selftest(only, cli.common.format),
    };
    let report = match result {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    let command = match &cli.command {
        Command::Construct(_) => "construct",
        Command::Classify { .. } => "classify",
        Command::Verify { .. } => "verify",
        Command::Forms { .. } => "forms",
        Command::Info { .. } => "info",
        Command::Selftest { .. } => "selftest",
    };
    let mut out = json!({ "tool_version": TOOL_VERSION, "command": command, "seed": seed, "caps": caps });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, report.body) {
        o.extend(b);
    }
    let text = match cli.common.format {
        Format::Json => serde_json::to_string_pretty(&out).expect("serializable") + "\n",
        Format::Text => render::text(&out),
    };
    let written = match &cli.common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.cap_exceeded {
        ExitCode::from(3)
    } else if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn read_json(path: &std::path::Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{} is not valid JSON: {e}", path.display())))
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::usage(format!("malformed {what}: {e}")))
}

/// Generators from a generator file or from the output of `construct`.
fn read_gens(path: &std::path::Path) -> Result<(GenSet, Value), Failure> {
    let v = read_json(path)?;
    let gens = if v.get("gens").is_some_and(Value::is_object) { v["gens"].clone() } else { v.clone() };
    let j: GenSetJson = from_value(gens, "generator set")?;
    Ok((GenSet::from_json(&j)?, v))
}

fn class_spec(a: &ConstructArgs) -> Result<ClassSpec, Failure> {
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| Failure::usage(format!("class {} needs --{flag}", a.class)));
    let need_r = || a.r.ok_or_else(|| Failure::usage(format!("class {} needs --r", a.class)));
    let (p, e) = a.q;
    let params = match a.class {
        1 => ClassParams::C1 { k: need(a.k, "k")? },
        2 => ClassParams::C2 { m: need(a.m, "m")?, k: need(a.k, "k")? },
        3 => ClassParams::C3 { r: need_r()? },
        4 => ClassParams::C4 { n1: need(a.n1, "n1")?, n2: need(a.n2, "n2")? },
        5 => ClassParams::C5 { r: need_r()? },
        6 => {
            let r = need_r()?;
            let variant = parse::variant_of(r, a.variant.as_deref().unwrap_or("+")).map_err(Failure::usage)?;
            let mut rgroup = RGroupSpec::new(r, need(a.m, "m")? as u32, variant);
            rgroup.lambda_index = a.lambda.unwrap_or(1);
            ClassParams::C6 { rgroup }
        }
        7 => ClassParams::C7 { m: need(a.m, "m")?, k: need(a.k, "k")? },
        _ => ClassParams::C8 {
            kind: parse::form_kind(a.form.as_deref().ok_or_else(|| Failure::usage("class 8 needs --form"))?)
                .map_err(Failure::usage)?,
            subtype: a.subtype.as_deref().map(parse::orth_type).transpose().map_err(Failure::usage)?,
        },
    };
    let implied = match &params {
        ClassParams::C6 { rgroup } => Some(rgroup.degree()),
        ClassParams::C7 { m, k } => Some(m.pow(*k as u32)),
        ClassParams::C4 { n1, n2 } => Some(n1 * n2),
        _ => None,
    };
    let n = match (a.n, implied) {
        (Some(n), Some(i)) if n != i => return Err(Failure::usage(format!("--n {n} disagrees with the class parameters ({i})"))),
        (Some(n), _) | (None, Some(n)) => n,
        (None, None) => return Err(Failure::usage(format!("class {} needs --n", a.class))),
    };
    let spec = ClassSpec::new(n, p, e, params);
    spec.validate()?;
    Ok(spec)
}

fn run_construct(a: &ConstructArgs) -> Result<Report, Failure> {
    let spec = class_spec(a)?;
    let m = construct(&spec)?;
    Ok(Report::ok(json!({
        "label": spec.label(),
        "spec": spec,
        "expected_order": m.expected_order.to_string(),
        "gens": m.gens.to_json(),
        "witness": m.witness.to_json(),
    })))
}

fn cap_exceeded(v: &Verdict) -> bool {
    v.tag == Tag::Inconclusive && v.trace.last().is_some_and(|t| t.outcome.contains("enumeration cap"))
}

fn run_classify(input: &std::path::Path, caps: Caps, seed: u64) -> Result<Report, Failure> {
    let (h, _) = read_gens(input)?;
    let v = classify(&h, caps, seed);
    let sound = verify_verdict(&h, &v);
    let mut body = to_value(&v.to_json());
    body["input"] = Value::String(h.label().to_string());
    body["verified"] = Value::Bool(sound);
    Ok(Report {
        body,
        passed: sound && v.tag != Tag::Inconclusive,
        cap_exceeded: cap_exceeded(&v),
    })
}

fn run_verify(input: &std::path::Path, verdict: Option<&std::path::Path>, caps: Caps) -> Result<Report, Failure> {
    let (h, raw) = read_gens(input)?;
    if let Some(path) = verdict {
        let j: VerdictJson = from_value(read_json(path)?, "verdict")?;
        let v = Verdict::from_json(&j)?;
        let passed = verify_verdict(&h, &v);
        return Ok(Report {
            body: json!({ "input": h.label(), "tag": v.tag, "passed": passed }),
            passed,
            cap_exceeded: false,
        });
    }
    let Some(w) = raw.get("witness") else {
        return Err(Failure::usage("input carries no witness; pass --verdict or use the output of construct"));
    };
    let witness = ClassWitness::from_json(&from_value::<WitnessJson>(w.clone(), "witness")?)?;
    let member = verify_member(&h, &witness);
    let expected: Option<u128> = raw.get("expected_order").and_then(|x| match x {
        Value::String(s) => s.parse().ok(),
        x => x.as_u64().map(u128::from),
    });
    let order = Group::close(&h, caps.closure)?.order() as u128;
    let order_ok = expected.is_none_or(|x| x == order);
    let passed = member.passed && order_ok;
    Ok(Report {
        body: json!({
            "input": h.label(),
            "class": witness.class_id(),
            "member_check": member,
            "closure_order": order.to_string(),
            "expected_order": expected.map(|x| x.to_string()),
            "passed": passed,
        }),
        passed,
        cap_exceeded: false,
    })
}

fn form_report(form: &FormSpec) -> Value {
    let witt = form.witt_index().ok();
    let subtype = if form.dim().is_multiple_of(2) && matches!(form.kind(), aschbacher::forms::FormKind::SymmetricBilinear | aschbacher::forms::FormKind::Quadratic) {
        form.orth_type().ok()
    } else {
        form.subtype()
    };
    json!({
        "kind": form.kind(),
        "nondegenerate": form.is_nondegenerate(),
        "witt_index": witt,
        "subtype": subtype,
        "gram": form.gram().to_json(),
    })
}

fn run_forms(input: Option<&std::path::Path>, group: Option<&str>) -> Result<Report, Failure> {
    if let Some(name) = group {
        let Named::Classical(spec) = parse::named(name).map_err(Failure::usage)? else {
            return Err(Failure::usage("forms takes a classical group"));
        };
        let form = standard_form(&spec)?;
        return Ok(Report::ok(json!({
            "group": spec.label(),
            "form": form.as_ref().map(form_report),
        })));
    }
    let path = input.ok_or_else(|| Failure::usage("forms needs --in FILE or a group name"))?;
    let (h, _) = read_gens(path)?;
    let e = h.field().e();
    let mut spaces = Vec::new();
    for j in std::iter::once(0).chain((e % 2 == 0).then_some(e / 2)) {
        let basis = invariant_form_space(h.gens(), j)?;
        let forms: Vec<Value> = basis
            .iter()
            .map(|b| match FormSpec::from_gram(b.clone(), j) {
                Ok(f) => form_report(&f),
                Err(err) => json!({ "gram": b.to_json(), "error": err.to_string() }),
            })
            .collect();
        spaces.push(json!({ "theta_power": j, "dimension": basis.len(), "basis": forms }));
    }
    Ok(Report::ok(json!({ "input": h.label(), "invariant_forms": spaces })))
}

fn run_info(group: &str, caps: Caps) -> Result<Report, Failure> {
    match parse::named(group).map_err(Failure::usage)? {
        Named::Classical(spec) => classical_info(&spec, caps),
        Named::RGroup(spec) => Ok(Report::ok(json!({
            "group": spec.label(),
            "order": spec.group_order(),
            "center_order": spec.center_order(),
            "exponent": spec.exponent(),
            "conjugacy_classes": spec.class_count(),
            "faithful_degree": spec.degree(),
            "outer_quotient_order": spec.outer_quotient_order()?.to_string(),
        }))),
    }
}

fn classical_info(spec: &ClassicalSpec, caps: Caps) -> Result<Report, Failure> {
    let order = expected_order(spec)?;
    let gens = generators(spec, None)?;
    let closure = if order <= caps.closure as u128 {
        Some(Group::close(&gens, caps.closure)?.order() as u128)
    } else {
        None
    };
    let form = standard_form(spec)?;
    let passed = closure.is_none_or(|c| c == order);
    Ok(Report {
        body: json!({
            "group": spec.label(),
            "order": order.to_string(),
            "closure_order": closure.map(|c| c.to_string()),
            "generators": gens.gens().len(),
            "form": form.as_ref().map(form_report),
        }),
        passed,
        cap_exceeded: false,
    })
}

fn run_selftest(only: &[u8], format: Format) -> Result<Report, Failure> {
    if let Some(bad) = only.iter().find(|&&i| !(1..=CRITERIA.len() as u8).contains(&i)) {
        return Err(Failure::usage(format!("no criterion {bad}")));
    }
    let ids: Vec<u8> = if only.is_empty() { (1..=CRITERIA.len() as u8).collect() } else { only.to_vec() };
    let mut results = Vec::new();
    for id in ids {
        let r = run_criterion(id);
        if matches!(format, Format::Text) {
            eprintln!("criterion {:>2} {} {} ({:.1} s)", r.id, if r.passed { "PASS" } else { "FAIL" }, r.title, r.elapsed_secs);
        }
        results.push(r);
    }
    let passed = results.iter().all(|r| r.passed);
    Ok(Report {
        body: json!({ "seed": SUITE_SEED, "passed": passed, "criteria": results }),
        passed,
        cap_exceeded: false,
    })
}
