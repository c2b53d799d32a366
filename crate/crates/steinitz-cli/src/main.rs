//! Command-line front end: one subcommand per computation, JSON envelopes
//! on stdout, diagnostics and timing on stderr.
//!
//! Exit codes: 0 success, 1 property violation, 2 invalid input,
//! 3 sampling/search exhaustion, 4 invalid ramification data.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use steinitz::classgroup::{prime_to_class, ClassGroup, Field, PrimeIdealRep, ReducedForm};
use steinitz::engine::{Engine, RamData, RamDatum};
use steinitz::lgroups::GroupSpec;
use steinitz::verify::{SuiteConfig, SuiteRegistry, SuiteReport};
use steinitz::wgroups::{w_group, Certificate};
use steinitz::Error;

#[derive(Parser)]
#[command(
    name = "steinitz",
    version,
    about = "Realizable Steinitz classes over imaginary quadratic fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupKind {
    Semidirect,
    Heisenberg,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the ideal class group of Q(sqrt(d)).
    Classgroup {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
    /// Compute W(k,m), the classes of primes splitting completely in
    /// k(zeta_m)/k.
    Wgroup {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        m: u64,
    },
    /// Compute the realizable Steinitz classes R_t(k,G).
    Realizable {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, value_enum)]
        group: GroupKind,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Evaluate the Steinitz class of tame ramification data "p:e,p:e,...".
    Steinitz {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, value_enum)]
        group: GroupKind,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value = "")]
        ram: String,
    },
    /// Run a verification suite (or all of them).
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search ramification data realizing a target class "a,b,c".
    Witness {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, value_enum)]
        group: GroupKind,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        target: String,
        #[arg(long, default_value_t = 1)]
        avoid: u64,
    },
}

#[derive(Serialize)]
struct Envelope<I: Serialize, R: Serialize> {
    command: &'static str,
    input: I,
    result: R,
    certificate: Option<Certificate>,
    version: &'static str,
}

fn emit<I: Serialize, R: Serialize>(
    command: &'static str,
    input: I,
    result: R,
    certificate: Option<Certificate>,
) {
    let envelope = Envelope {
        command,
        input,
        result,
        certificate,
        version: env!("CARGO_PKG_VERSION"),
    };
    let mut stdout = std::io::stdout().lock();
    serde_json::to_writer(&mut stdout, &envelope).expect("serialization cannot fail");
    stdout.write_all(b"\n").expect("stdout");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(cli.command);
    eprintln!("elapsed_ms={}", start.elapsed().as_millis());
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::SamplingExhausted { .. } | Error::SearchExhausted => 3,
        Error::RamInvalid(_) => 4,
        _ => 2,
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Classgroup { d } => cmd_classgroup(d),
        Command::Wgroup { d, m } => cmd_wgroup(d, m),
        Command::Realizable { d, group, l, n } => cmd_realizable(d, group, l, n),
        Command::Steinitz {
            d,
            group,
            l,
            n,
            ram,
        } => cmd_steinitz(d, group, l, n, &ram),
        Command::Verify { suite, seed } => cmd_verify(&suite, seed),
        Command::Witness {
            d,
            group,
            l,
            n,
            target,
            avoid,
        } => cmd_witness(d, group, l, n, &target, avoid),
    }
}

fn group_spec(kind: GroupKind, l: u64, n: Option<u32>) -> Result<GroupSpec, Error> {
    match kind {
        GroupKind::Semidirect => {
            let n =
                n.ok_or_else(|| Error::InvalidInput("--n is required for semidirect".into()))?;
            GroupSpec::semidirect(l, n)
        }
        GroupKind::Heisenberg => GroupSpec::heisenberg(l),
    }
}

#[derive(Serialize)]
struct GroupEcho {
    family: &'static str,
    l: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
}

fn group_echo(spec: &GroupSpec) -> GroupEcho {
    match *spec {
        GroupSpec::Semidirect { l, n } => GroupEcho {
            family: "semidirect",
            l,
            n: Some(n),
        },
        GroupSpec::Heisenberg { l } => GroupEcho {
            family: "heisenberg",
            l,
            n: None,
        },
        GroupSpec::Cyclic { l } => GroupEcho {
            family: "cyclic",
            l,
            n: None,
        },
    }
}

// ---- class group cache -------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CacheFile {
    d: i64,
    #[serde(rename = "D")]
    disc: i64,
    h: u64,
    forms: Vec<ReducedForm>,
    invariants: Vec<u64>,
}

fn cache_path(field: &Field) -> Option<PathBuf> {
    let dir = std::env::var_os("STEINITZ_CACHE")?;
    Some(PathBuf::from(dir).join(format!("D{}.json", field.discriminant().unsigned_abs())))
}

fn load_class_group(d: i64) -> Result<ClassGroup, Error> {
    let field = Field::new(d)?;
    let path = match cache_path(&field) {
        Some(path) => path,
        None => return ClassGroup::enumerate(field),
    };
    if let Ok(bytes) = std::fs::read(&path) {
        if let Ok(cache) = serde_json::from_slice::<CacheFile>(&bytes) {
            if cache.d == d && cache.disc == field.discriminant() {
                if let Ok(group) = ClassGroup::from_cached(field, cache.forms, cache.invariants) {
                    if group.h() == cache.h {
                        return Ok(group);
                    }
                }
            }
        }
        eprintln!("cache: ignoring invalid {}", path.display());
    }
    let group = ClassGroup::enumerate(field)?;
    let cache = CacheFile {
        d,
        disc: field.discriminant(),
        h: group.h(),
        forms: group.elements().to_vec(),
        invariants: group.invariants().to_vec(),
    };
    if let Some(parent) = path.parent() {
        let _ = std::fs::create_dir_all(parent);
    }
    match serde_json::to_vec(&cache) {
        Ok(bytes) => {
            if let Err(err) = std::fs::write(&path, bytes) {
                eprintln!("cache: could not write {}: {err}", path.display());
            }
        }
        Err(err) => eprintln!("cache: could not serialize: {err}"),
    }
    Ok(group)
}

// ---- subcommands -------------------------------------------------------

fn cmd_classgroup(d: i64) -> Result<u8, Error> {
    #[derive(Serialize)]
    struct Input {
        d: i64,
    }
    #[derive(Serialize)]
    struct Output {
        d: i64,
        #[serde(rename = "D")]
        disc: i64,
        h: u64,
        invariants: Vec<u64>,
        forms: Vec<ReducedForm>,
    }
    let group = load_class_group(d)?;
    emit(
        "classgroup",
        Input { d },
        Output {
            d,
            disc: group.field().discriminant(),
            h: group.h(),
            invariants: group.invariants().to_vec(),
            forms: group.elements().to_vec(),
        },
        None,
    );
    Ok(0)
}

fn cmd_wgroup(d: i64, m: u64) -> Result<u8, Error> {
    #[derive(Serialize)]
    struct Input {
        d: i64,
        m: u64,
    }
    #[derive(Serialize)]
    struct Output {
        modulus: u64,
        order: u64,
        elements: Vec<ReducedForm>,
        primes_sampled: u64,
    }
    let group = load_class_group(d)?;
    let w = w_group(&group, m)?;
    emit(
        "wgroup",
        Input { d, m },
        Output {
            modulus: w.modulus,
            order: w.result.order(),
            elements: w.result.elements().to_vec(),
            primes_sampled: w.primes_sampled,
        },
        Some(w.certificate),
    );
    Ok(0)
}

fn cmd_realizable(d: i64, kind: GroupKind, l: u64, n: Option<u32>) -> Result<u8, Error> {
    #[derive(Serialize)]
    struct Input {
        d: i64,
        group: GroupEcho,
    }
    #[derive(Serialize)]
    struct Output {
        w_modulus: u64,
        exponent: u64,
        order: u64,
        elements: Vec<ReducedForm>,
    }
    let spec = group_spec(kind, l, n)?;
    let group = load_class_group(d)?;
    let engine = Engine::new(&group);
    let realizable = engine.realizable(&spec)?;
    emit(
        "realizable",
        Input {
            d,
            group: group_echo(&spec),
        },
        Output {
            w_modulus: realizable.w_modulus,
            exponent: realizable.exponent,
            order: realizable.result.order(),
            elements: realizable.result.elements().to_vec(),
        },
        Some(realizable.certificate),
    );
    Ok(0)
}

fn parse_ram(field: &Field, spec: &GroupSpec, text: &str) -> Result<RamData, Error> {
    let mut data = Vec::new();
    for part in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (p_text, e_text) = part
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("bad ram entry {part:?}, want p:e")))?;
        let p: u64 = p_text
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad prime {p_text:?}")))?;
        let e: u64 = e_text
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad index {e_text:?}")))?;
        // keep non-split primes representable so validation can report them
        let prime = match prime_to_class(field, p) {
            Ok((rep, _)) => rep,
            Err(_) => PrimeIdealRep { p, root: 0 },
        };
        data.push(RamDatum { prime, e });
    }
    Ok(RamData {
        d: field.d(),
        spec: *spec,
        data,
    })
}

fn cmd_steinitz(d: i64, kind: GroupKind, l: u64, n: Option<u32>, ram: &str) -> Result<u8, Error> {
    #[derive(Serialize)]
    struct Input {
        d: i64,
        group: GroupEcho,
        ram: String,
    }
    #[derive(Serialize)]
    struct Output {
        validation: steinitz::engine::ValidationReport,
        steinitz_class: Option<ReducedForm>,
        member: Option<bool>,
    }
    let spec = group_spec(kind, l, n)?;
    let group = load_class_group(d)?;
    let engine = Engine::new(&group);
    let data = parse_ram(&group.field(), &spec, ram)?;
    let validation = engine.validate(&data)?;
    let input = Input {
        d,
        group: group_echo(&spec),
        ram: ram.to_string(),
    };
    if !validation.ok() {
        emit(
            "steinitz",
            input,
            Output {
                validation,
                steinitz_class: None,
                member: None,
            },
            None,
        );
        return Ok(4);
    }
    let class = engine.steinitz_class(&data)?;
    let realizable = engine.realizable(&spec)?;
    emit(
        "steinitz",
        input,
        Output {
            validation,
            steinitz_class: Some(class),
            member: Some(realizable.result.contains(class)),
        },
        Some(realizable.certificate),
    );
    Ok(0)
}

fn cmd_verify(suite: &str, seed: u64) -> Result<u8, Error> {
    #[derive(Serialize)]
    struct Input {
        suite: String,
        seed: u64,
    }
    #[derive(Serialize)]
    struct Output {
        reports: Vec<SuiteReport>,
        total_cases: u64,
        total_violations: u64,
    }
    let registry = SuiteRegistry::builtin();
    let cfg = SuiteConfig { seed };
    let reports = if suite == "all" {
        registry.run_all(&cfg)?
    } else {
        match registry.get(suite) {
            Some(found) => vec![found.run(&cfg)?],
            None => {
                return Err(Error::InvalidInput(format!(
                    "unknown suite {suite:?}; available: {:?} or \"all\"",
                    registry.names()
                )))
            }
        }
    };
    let total_cases = reports.iter().map(|r| r.cases).sum();
    let total_violations = reports.iter().map(|r| r.violations.len() as u64).sum();
    emit(
        "verify",
        Input {
            suite: suite.to_string(),
            seed,
        },
        Output {
            reports,
            total_cases,
            total_violations,
        },
        None,
    );
    Ok(if total_violations == 0 { 0 } else { 1 })
}

fn parse_form(text: &str) -> Result<ReducedForm, Error> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "bad form {text:?}, want \"a,b,c\""
        )));
    }
    let coeff = |s: &str| {
        s.parse::<i64>()
            .map_err(|_| Error::InvalidInput(format!("bad coefficient {s:?}")))
    };
    ReducedForm::new(coeff(parts[0])?, coeff(parts[1])?, coeff(parts[2])?)
}

fn cmd_witness(
    d: i64,
    kind: GroupKind,
    l: u64,
    n: Option<u32>,
    target: &str,
    avoid: u64,
) -> Result<u8, Error> {
    #[derive(Serialize)]
    struct Input {
        d: i64,
        group: GroupEcho,
        target: ReducedForm,
        avoid: u64,
    }
    #[derive(Serialize)]
    struct WitnessDatum {
        p: u64,
        root: u64,
        e: u64,
    }
    #[derive(Serialize)]
    struct Output {
        witness: Vec<WitnessDatum>,
        steinitz_class: ReducedForm,
    }
    let spec = group_spec(kind, l, n)?;
    let target = parse_form(target)?;
    let group = load_class_group(d)?;
    let engine = Engine::new(&group);
    let witness = engine.witness_search(&spec, target, avoid)?;
    let class = engine.steinitz_class(&witness)?;
    emit(
        "witness",
        Input {
            d,
            group: group_echo(&spec),
            target,
            avoid,
        },
        Output {
            witness: witness
                .data
                .iter()
                .map(|datum| WitnessDatum {
                    p: datum.prime.p,
                    root: datum.prime.root,
                    e: datum.e,
                })
                .collect(),
            steinitz_class: class,
        },
        None,
    );
    Ok(0)
}
