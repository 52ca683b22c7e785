//! `cy2lab` command-line front end. Every subcommand writes one JSON document.
//!
//! Exit codes: 0 success, 2 invalid input, 3 a verified property failed, 64 usage.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use cy2lab::exact::ExactComplex;
use cy2lab::heartlab::{
    condition_b, hn_filter, inequality_chain_check, jh_blocks, mukai_check, phase_of, rigidity_spherical_audit,
    twist_lemma_check, CategoryOracle,
};
use cy2lab::homtable::{difference_check, hom_dims_line, hom_dims_shifted};
use cy2lab::kcharge::{compare_signs_check, euler_form, sign_and_p, twist_on_k, CentralCharge, KClass};
use cy2lab::linalg::is_prime;
use cy2lab::nfcalc::{word_on_k, AutoWord, LineObject, NormalForm};
use cy2lab::pimod::{random_module, realize_line_bundle, IsoClassCatalog, PiCategory, PiModule};
use cy2lab::reduction::{lemma_tt_certify, reduce_pair, LemmaTtInstance, LinePair};
use cy2lab::spectral::{
    e3_table, euler_consistent, identity_in_kernel, sphericality_test, subquotient_from_table, TwoTermObject,
};
use cy2lab::Error;

const SCHEMA_VERSION: u32 = 1;
const MAX_FIELD_ORDER: u32 = 7;

#[derive(Parser)]
#[command(name = "cy2lab", about = "Stability-condition workbench for the 2-CY category of local P^1", disable_version_flag = true)]
struct Cli {
    /// Seed for randomized sweeps; reports embed it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Prime field order for generated modules.
    #[arg(long, global = true, default_value_t = 3)]
    field_order: u32,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Print the output schema version.
    #[arg(long)]
    version: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Graded Hom dimensions between line bundles on the zero section.
    Homdim {
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long, allow_hyphen_values = true)]
        shift_s: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        shift_t: Option<i64>,
        /// Normal form JSON; adds the difference report of the normal form against O(t).
        #[arg(long)]
        normal_form: Option<String>,
    },
    /// K-class arithmetic: Euler form, twists, sign and shift invariants.
    Kclass {
        /// A class as "a,b" or a line bundle as "O(m)[l]".
        #[arg(long, allow_hyphen_values = true)]
        e: String,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Third class for the sign comparison (needs --f and --charge).
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        /// Central charge JSON {"z_OZ": [..], "z_Ox": [..]}.
        #[arg(long)]
        charge: Option<String>,
    },
    /// Apply a word in twists and shifts to a line bundle.
    Twist {
        #[arg(long, allow_hyphen_values = true)]
        line: String,
        /// JSON list such as ["Tw(0)","Shift(1)"].
        #[arg(long)]
        word: String,
    },
    /// Reduce a line-bundle pair with Hom concentrated in degree 1 to the standard pair.
    Reduce {
        #[arg(long = "E", allow_hyphen_values = true)]
        e: Option<String>,
        #[arg(long = "F", allow_hyphen_values = true)]
        f: Option<String>,
        /// Emit JSON (the only format; accepted for compatibility).
        #[arg(long)]
        json: bool,
        /// Certify a twist-length instance instead (inline JSON or a path).
        #[arg(long)]
        lemma_tt: Option<String>,
    },
    /// HN filtration of a module (instance: {"module": .., "charge": ..}).
    Hn {
        #[arg(long)]
        instance: String,
    },
    /// JH blocks of a semistable module (instance as for hn).
    Jh {
        #[arg(long)]
        instance: String,
    },
    /// E3 table of two-term objects (instance: {"E": .., "F": ..}, F optional).
    Spectral {
        #[arg(long)]
        instance: String,
    },
    /// Seeded sweeps re-checking inequalities; exit 3 on a violation.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Number of random modules in the sweep.
        #[arg(long, default_value_t = 40)]
        samples: usize,
    },
    /// Search the module model for a realization of O_Z(t).
    Realize {
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 8)]
        dim: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Mukai,
    Chain,
    Rigidity,
    Twist,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Mukai => "mukai",
            Suite::Chain => "chain",
            Suite::Rigidity => "rigidity",
            Suite::Twist => "twist",
        }
    }
}

enum Failure {
    Invalid(String),
    /// A report was produced but records a violation.
    Violation(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Invalid(format!("bad JSON: {e}"))
    }
}

type Outcome = Result<Value, Failure>;

/// Inline JSON, or a path to a JSON file.
fn read_json<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T, Failure> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Invalid(format!("cannot read {arg}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

fn parse_class(s: &str) -> Result<KClass, Failure> {
    if let Ok(x) = s.parse::<LineObject>() {
        return Ok(x.class());
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts[..] {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(a), Ok(b)) => Ok(KClass::new(a, b)),
            _ => Err(Failure::Invalid(format!("bad class {s:?}"))),
        },
        _ => Err(Failure::Invalid(format!("expected \"a,b\" or \"O(m)[l]\", got {s:?}"))),
    }
}

fn homdim(s: i64, t: i64, shift_s: Option<i64>, shift_t: Option<i64>, normal_form: Option<String>) -> Outcome {
    let dims = if shift_s.is_none() && shift_t.is_none() {
        let h = hom_dims_line(s, t);
        json!({"0": h.d0, "1": h.d1, "2": h.d2})
    } else {
        json!(hom_dims_shifted(s, shift_s.unwrap_or(0), t, shift_t.unwrap_or(0)))
    };
    let mut out = json!({ "dims": dims });
    if let Some(nf) = normal_form {
        let nf: NormalForm = read_json(&nf)?;
        out["difference"] = json!(difference_check(&nf, t));
    }
    Ok(out)
}

fn kclass(e: &str, f: Option<&str>, s: Option<&str>, charge: Option<&str>) -> Outcome {
    let e = parse_class(e)?;
    let mut out = json!({
        "e": e,
        "spherical_candidate": e.is_spherical_candidate(),
        "euler_ee": euler_form(e, e),
    });
    if let Some(f) = f {
        let f = parse_class(f)?;
        out["f"] = json!(f);
        out["euler"] = json!(euler_form(e, f));
        if e.is_spherical_candidate() {
            out["twist"] = json!(twist_on_k(e, f)?);
            if f.is_spherical_candidate() {
                let (sign, p) = sign_and_p(e, f)?;
                out["sign_and_p"] = json!({"s": sign, "p": p});
            }
        }
        if let (Some(s), Some(z)) = (s, charge) {
            let z: CentralCharge = read_json(z)?;
            out["compare_signs"] = json!(compare_signs_check(&z, e, parse_class(s)?, f)?);
        }
    }
    Ok(out)
}

fn twist(line: &str, word: &str) -> Outcome {
    let x: LineObject = line.parse()?;
    let word: AutoWord = serde_json::from_str(word)?;
    let mut cur = x.to_normal_form();
    for g in &word.0 {
        let l = cur.as_line().ok_or_else(|| {
            Failure::Invalid(format!("{g} would act on the non-line object {cur}; only line inputs are evaluated"))
        })?;
        cur = g.apply_to_line(l)?;
    }
    Ok(json!({
        "input": x,
        "word": word,
        "result": cur,
        "line": cur.as_line(),
        "class": word_on_k(&word, x.class()),
    }))
}

fn reduce(e: Option<String>, f: Option<String>, lemma_tt: Option<String>, p: u32) -> Outcome {
    if let Some(inst) = lemma_tt {
        let inst: LemmaTtInstance = read_json(&inst)?;
        let report = lemma_tt_certify(&inst, p)?;
        let value = json!(report);
        return if report.holds { Ok(value) } else { Err(Failure::Violation(value)) };
    }
    let (Some(e), Some(f)) = (e, f) else {
        return Err(Failure::Invalid("reduce needs --E and --F, or --lemma-tt".into()));
    };
    let pair = LinePair::new(e.parse()?, f.parse()?);
    let trace = reduce_pair(&pair)?;
    let certified = trace.certify();
    let mut value = json!(trace);
    value["certified"] = json!(certified.is_ok());
    match certified {
        Ok(()) => Ok(value),
        Err(e) => {
            value["certificate_error"] = json!(e.0);
            Err(Failure::Violation(value))
        }
    }
}

#[derive(Deserialize)]
struct ModuleInstance {
    module: PiModule,
    charge: CentralCharge,
}

fn hn(instance: &str) -> Outcome {
    let inst: ModuleInstance = read_json(instance)?;
    let cat = PiCategory::new(inst.module.p());
    let hn = hn_filter(&cat, &inst.charge, &inst.module)?;
    Ok(json!({"semistable": hn.is_semistable(), "factors": hn.factors}))
}

fn jh(instance: &str) -> Outcome {
    let inst: ModuleInstance = read_json(instance)?;
    let cat = PiCategory::new(inst.module.p());
    if inst.module.is_zero() {
        return Err(Failure::Invalid("the zero module has no JH blocks".into()));
    }
    let phase = phase_of(&cat, &inst.charge, &inst.module)?;
    let blocks = jh_blocks(&cat, &inst.charge, &inst.module, &phase)?;
    Ok(json!({"certified": blocks.certified(), "blocks": blocks}))
}

#[derive(Deserialize)]
struct SpectralInstance {
    #[serde(rename = "E")]
    e: TwoTermObject,
    #[serde(rename = "F")]
    f: Option<TwoTermObject>,
}

fn spectral(instance: &str) -> Outcome {
    let inst: SpectralInstance = read_json(instance)?;
    let f = inst.f.clone().unwrap_or_else(|| inst.e.clone());
    let table = e3_table(&inst.e, &f)?;
    let subquotient: Vec<_> = (-1..=1).map(|q| subquotient_from_table(&table, inst.e == f, q)).collect();
    let mut out = json!({
        "table": table,
        "euler_consistent": euler_consistent(&inst.e, &f)?,
        "subquotient": subquotient,
    });
    if inst.f.is_none() {
        out["spherical"] = json!(sphericality_test(&inst.e)?);
        if !inst.e.is_zero() {
            out["identity_in_kernel"] = json!(identity_in_kernel(&inst.e)?);
        }
    }
    Ok(out)
}

fn random_dims(rng: &mut ChaCha8Rng, max: usize) -> [usize; 2] {
    loop {
        let d = [rng.random_range(0..=max), rng.random_range(0..=max)];
        if d != [0, 0] {
            return d;
        }
    }
}

/// A charge with both simples in the open upper half-plane.
fn random_standard_charge(rng: &mut ChaCha8Rng) -> CentralCharge {
    let mut c = || ExactComplex::from_ints(rng.random_range(-4..=4), rng.random_range(1..=4));
    let s0 = c();
    let s1 = c();
    CentralCharge::from_simples(s0, s1)
}

fn verify(suite: Suite, samples: usize, seed: u64, p: u32) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cat = PiCategory::new(p);
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut violations = Vec::new();
    match suite {
        Suite::Mukai => {
            for i in 0..samples {
                let b = random_module(random_dims(&mut rng, 2), p, &mut rng);
                for w in cat.subobjects(&b)? {
                    match mukai_check(&cat, &b, &w) {
                        Ok(r) => {
                            checked += 1;
                            if !r.holds {
                                violations.push(json!({"sample": i, "module": b, "report": r}));
                            }
                        }
                        Err(Error::HypothesisViolated(_)) => skipped += 1,
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
        Suite::Chain | Suite::Rigidity => {
            for i in 0..samples {
                let m = random_module(random_dims(&mut rng, 2), p, &mut rng);
                let z = random_standard_charge(&mut rng);
                let (holds, report) = if matches!(suite, Suite::Chain) {
                    let r = inequality_chain_check(&cat, &z, &m)?;
                    (r.holds, json!(r))
                } else {
                    let r = rigidity_spherical_audit(&cat, &z, &m)?;
                    (r.holds, json!(r))
                };
                checked += 1;
                if !holds {
                    violations.push(json!({"sample": i, "module": m, "charge": z, "report": report}));
                }
            }
        }
        Suite::Twist => {
            let catalog = IsoClassCatalog::new([2, 2], p)?.classes;
            for i in 0..samples {
                let v = rng.random_range(0..2usize);
                let e = PiModule::simple(v, p);
                let other = ExactComplex::from_ints(rng.random_range(-3..=3), rng.random_range(1..=3));
                let one = ExactComplex::from_ints(1, 0);
                let z = if v == 1 { CentralCharge::from_simples(other, one) } else { CentralCharge::from_simples(one, other) };
                let cond_b = condition_b(&cat, &z, &catalog)?.holds;
                let f = random_module(random_dims(&mut rng, 2), p, &mut rng);
                match twist_lemma_check(&cat, &z, &e, &f, cond_b) {
                    Ok(r) => {
                        checked += 1;
                        if !r.holds {
                            violations.push(json!({"sample": i, "E": e, "F": f, "charge": z, "report": r}));
                        }
                    }
                    Err(Error::HypothesisViolated(_)) => skipped += 1,
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    let report = json!({
        "suite": suite.name(),
        "seed": seed,
        "field_order": p,
        "samples": samples,
        "checked": checked,
        "hypothesis_not_met": skipped,
        "violations": violations,
        "holds": violations.is_empty(),
    });
    if violations.is_empty() {
        Ok(report)
    } else {
        Err(Failure::Violation(report))
    }
}

fn execute(cli: Cli) -> Outcome {
    let p = cli.field_order;
    if !is_prime(p) || p > MAX_FIELD_ORDER {
        return Err(Failure::Invalid(format!("field order must be a prime <= {MAX_FIELD_ORDER}, got {p}")));
    }
    let Some(command) = cli.command else {
        return Err(Failure::Invalid("no subcommand given".into()));
    };
    match command {
        Command::Homdim { s, t, shift_s, shift_t, normal_form } => homdim(s, t, shift_s, shift_t, normal_form),
        Command::Kclass { e, f, s, charge } => kclass(&e, f.as_deref(), s.as_deref(), charge.as_deref()),
        Command::Twist { line, word } => twist(&line, &word),
        Command::Reduce { e, f, json: _, lemma_tt } => reduce(e, f, lemma_tt, p),
        Command::Hn { instance } => hn(&instance),
        Command::Jh { instance } => jh(&instance),
        Command::Spectral { instance } => spectral(&instance),
        Command::Verify { suite, samples } => verify(suite, samples, cli.seed, p),
        Command::Realize { t, depth, dim } => Ok(json!(realize_line_bundle(t, p, depth, dim))),
    }
}

fn emit(value: &Value, output: Option<&PathBuf>) -> Result<(), String> {
    let text = serde_json::to_string(value).map_err(|e| e.to_string())?;
    match output {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.version {
        println!("{}", json!({"schema_version": SCHEMA_VERSION, "version": env!("CARGO_PKG_VERSION")}));
        return ExitCode::SUCCESS;
    }
    let output = cli.output.clone();
    let (value, code) = match execute(cli) {
        Ok(v) => (v, 0),
        Err(Failure::Violation(v)) => (v, 3),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(msg) = emit(&value, output.as_ref()) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
