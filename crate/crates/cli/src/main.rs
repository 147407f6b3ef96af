mod report;

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};
use pcmult::bogomolov::{
    blackburn_evens_multiplier_order, bogomolov_multiplier, class2_check, five_term_check,
    frobenius_checks, m0_lattice, Method,
};
use pcmult::catalog;
use pcmult::pcgroup::{
    parse_presentation, render_word, PcGroup, PcPresentation, Word, DEFAULT_ELEMENT_BOUND,
};
use pcmult::verify::{all_passed, group_laws, wedge_identities};
use pcmult::wedgecover::{ExtSquareData, DEFAULT_COVER_BOUND};
use pcmult::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use report::*;

/// The BFS bound is this multiple of the element bound.
const COVER_BOUND_FACTOR: usize = DEFAULT_COVER_BOUND / DEFAULT_ELEMENT_BOUND;
const VERIFY_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(
    name = "pcmult",
    version,
    about = "Schur and Bogomolov multipliers of finite solvable groups"
)]
struct Cli {
    /// Emit a JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration bound on group elements; the wedge-table bound scales with it.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_BOUND)]
    bound: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, consistency, abelianization, derived subgroup and class.
    Info { input: String },
    /// Schur multiplier from the tails cover.
    Multiplier { input: String },
    /// Bogomolov multiplier.
    Bogomolov {
        input: String,
        #[arg(long, default_value = "classes")]
        method: Method,
    },
    /// Exterior-square orders, lattices and generator wedges.
    Wedge {
        input: String,
        #[arg(long, default_value = "classes")]
        method: Method,
    },
    /// Checks the five-term sequence for a normal subgroup.
    Fiveterm {
        input: String,
        /// Words generating N, comma separated or repeated; also accepts
        /// `center`, `derived` and `all`.
        #[arg(long, required = true, value_delimiter = ',')]
        normal: Vec<String>,
    },
    /// Built-in presentations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Runs every property suite.
    Verify {
        input: Option<String>,
        #[arg(long)]
        all_catalog: bool,
        /// Random samples per property.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Emit { name: String },
}

/// An error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BoundExceeded { .. } => 3,
            Error::CrossCheck(_)
            | Error::DimensionMismatch(..)
            | Error::NotSublattice
            | Error::InfiniteIndex => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure {
            code: 2,
            message: format!("{e:#}"),
        }
    }
}

struct Input {
    id: InputId,
    presentation: PcPresentation,
}

fn load(arg: &str) -> Result<Input, Failure> {
    let (kind, name, text) = match arg.strip_prefix("catalog:") {
        Some(name) => (
            "catalog",
            name.to_string(),
            catalog::get(name)?.source.to_string(),
        ),
        None => {
            let text = std::fs::read_to_string(Path::new(arg))
                .with_context(|| format!("cannot read `{arg}`"))?;
            ("file", arg.to_string(), text)
        }
    };
    let digest = Sha256::digest(text.as_bytes());
    let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect();
    let presentation = parse_presentation(&text)?;
    Ok(Input {
        id: InputId { kind, name, sha256 },
        presentation,
    })
}

struct Bounds {
    elements: usize,
    cover: usize,
    pairs: u128,
}

impl Bounds {
    fn new(elements: usize) -> Self {
        Bounds {
            elements,
            cover: elements.saturating_mul(COVER_BOUND_FACTOR),
            pairs: (elements as u128) * (elements as u128),
        }
    }
}

/// Prints JSON, or a flat `key: value` listing.
fn emit<T: Serialize>(json: bool, command: &'static str, input: Option<&InputId>, body: T) {
    let value = match input {
        Some(id) => serde_json::to_value(Envelope {
            schema_version: SCHEMA_VERSION,
            command,
            input: id.clone(),
            body,
        }),
        None => serde_json::to_value(body),
    }
    .expect("reports serialize");
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("reports serialize")
        );
    } else {
        print_plain("", &value);
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) if a.iter().all(|x| !x.is_object()) => {
            let parts: Vec<String> = a.iter().map(plain).collect();
            format!("[{}]", parts.join(","))
        }
        other => other.to_string(),
    }
}

fn print_plain(prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                print_plain(&key, x);
            }
        }
        Value::Array(a) if a.iter().any(Value::is_object) => {
            for (i, x) in a.iter().enumerate() {
                print_plain(&format!("{prefix}[{i}]"), x);
            }
        }
        other => println!("{prefix}: {}", plain(other)),
    }
}

fn group(input: &Input, b: &Bounds) -> Result<PcGroup, Failure> {
    Ok(PcGroup::new(input.presentation.clone(), b.elements)?)
}

fn cmd_info(cli: &Cli, input: &Input, b: &Bounds) -> Result<u8, Failure> {
    let p = &input.presentation;
    let g = group(input, b)?;
    let body = Info {
        name: p.name().to_string(),
        generators: int(p.n()),
        relative_orders: p.orders().iter().map(int).collect(),
        order: int(p.order()),
        consistent: p.is_consistent().is_empty(),
        abelianization: invariants(&p.abelianization()),
        derived_order: int(g.derived_subgroup().order()),
        nilpotency_class: g.nilpotency_class().map(int),
        conjugacy_classes: int(g.conjugacy_classes().len()),
    };
    emit(cli.json, "info", Some(&input.id), body);
    Ok(0)
}

fn cmd_multiplier(cli: &Cli, input: &Input, b: &Bounds) -> Result<u8, Failure> {
    let g = group(input, b)?;
    let e = ExtSquareData::new(&g)?;
    let body = Multiplier {
        name: input.presentation.name().to_string(),
        order: int(g.order()),
        tails: int(e.cover().m()),
        consistency_rank: int(e.consistency_lattice().rank()),
        multiplier: invariants(e.multiplier()),
        derived_order: int(e.derived_order()),
        exterior_square_order: int(e.exterior_square_order()),
    };
    emit(cli.json, "multiplier", Some(&input.id), body);
    Ok(0)
}

fn cmd_bogomolov(cli: &Cli, input: &Input, b: &Bounds, method: Method) -> Result<u8, Failure> {
    let start = Instant::now();
    let g = group(input, b)?;
    let e = ExtSquareData::new(&g)?;
    let r = bogomolov_multiplier(&e, method, b.pairs)?;
    emit(cli.json, "bogomolov", Some(&input.id), Bogomolov::from(&r));
    eprintln!("elapsed_ms: {}", start.elapsed().as_millis());
    Ok(0)
}

fn cmd_wedge(cli: &Cli, input: &Input, b: &Bounds, method: Method) -> Result<u8, Failure> {
    let g = group(input, b)?;
    let e = ExtSquareData::new(&g)?;
    let r = bogomolov_multiplier(&e, method, b.pairs)?;
    let (m0, _) = m0_lattice(&e, Method::Classes, b.pairs)?;
    let p = g.presentation();
    let mut wedges = Vec::new();
    for i in 0..p.n() {
        for j in 0..i {
            let w = e.generator_wedge(i, j);
            wedges.push(GeneratorWedge {
                pair: [format!("g{}", i + 1), format!("g{}", j + 1)],
                commutator: render_word(&normal_word(&w.gpart)),
                tails: w.tails.iter().map(int).collect(),
            });
        }
    }
    let body = Wedge {
        bogomolov: Bogomolov::from(&r),
        consistency_lattice: lattice(e.consistency_lattice()),
        saturation: lattice(e.saturated_lattice()),
        m0_lattice: lattice(&m0),
        generator_wedges: wedges,
    };
    emit(cli.json, "wedge", Some(&input.id), body);
    Ok(0)
}

fn cmd_fiveterm(cli: &Cli, input: &Input, b: &Bounds, normal: &[String]) -> Result<u8, Failure> {
    let g = group(input, b)?;
    let p = g.presentation();
    let mut gens = Vec::new();
    for w in normal {
        let w = w.trim();
        match w {
            "center" => gens.extend(g.center().members()),
            "derived" => gens.extend(g.derived_subgroup().members()),
            "all" => gens.extend(0..g.order()),
            _ => gens.push(g.index_of(&p.collect(&Word::parse(w, p.n())?))),
        }
    }
    let closure = g.normal_closure(&gens);
    let closure_used = g.closure(&gens).order() != closure.order();
    let r = five_term_check(&g, &closure.members(), b.elements, b.cover)?;
    let body = FiveTerm::new(&r, normal.to_vec(), closure_used);
    let passed = body.passed;
    emit(cli.json, "fiveterm", Some(&input.id), body);
    Ok(if passed { 0 } else { 4 })
}

fn normal_word(x: &pcmult::pcgroup::GroupElement) -> pcmult::pcgroup::NormalWord {
    x.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| (i, e))
        .collect()
}

fn check(name: impl Into<String>, passed: bool) -> CheckOut {
    CheckOut {
        name: name.into(),
        passed,
    }
}

fn verify_one(input: &Input, b: &Bounds, samples: usize) -> Result<Suite, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(VERIFY_SEED);
    let p = &input.presentation;
    let g = group(input, b)?;
    let mut checks = vec![check("consistent", p.is_consistent().is_empty())];
    let laws = group_laws(&g, samples, &mut rng);
    let e = ExtSquareData::new(&g)?;
    let wedges = wedge_identities(&e, samples, &mut rng);

    let method = if (g.order() as u128).pow(2) <= b.pairs {
        Method::Both
    } else {
        Method::Classes
    };
    let r = match bogomolov_multiplier(&e, method, b.pairs) {
        Ok(r) => r,
        Err(Error::CrossCheck(m)) => {
            checks.push(check(format!("oracle equality ({m})"), false));
            bogomolov_multiplier(&e, Method::Classes, b.pairs)?
        }
        Err(err) => return Err(err.into()),
    };
    if method == Method::Both {
        checks.push(check("oracle equality", true));
    }
    let table = e.wedge_table(b.cover)?;
    checks.push(check(
        "|G∧G| = |γ2(G)| |M(G)|",
        num_bigint::BigInt::from(table.order()) == r.exterior_square_order,
    ));

    if input.id.kind == "catalog" {
        let ex = catalog::get(&input.id.name)?.expected;
        checks.push(check("expected order", ex.order.value == g.order() as u128));
        checks.push(check(
            "expected abelianization",
            ex.abelianization.value == r.abelianization,
        ));
        checks.push(check(
            "expected derived order",
            ex.derived_order.value == r.derived_order,
        ));
        checks.push(check(
            "expected multiplier",
            ex.multiplier.value == r.multiplier,
        ));
        checks.push(check(
            "expected bogomolov",
            ex.bogomolov.value == r.bogomolov,
        ));
    }

    let class2 = match class2_check(&g, &e) {
        Ok(c) => Some(Class2Out::from(&c)),
        Err(Error::Hypothesis(_)) => None,
        Err(err) => return Err(err.into()),
    };
    let blackburn_evens = match blackburn_evens_multiplier_order(&g) {
        Ok(o) => {
            checks.push(check("Blackburn–Evens order", o == r.multiplier.order()));
            Some(int(o))
        }
        Err(Error::Hypothesis(_)) => None,
        Err(err) => return Err(err.into()),
    };
    let derived = g.derived_subgroup();
    let frobenius = if derived.order() > 1 && derived.order() < g.order() {
        Some(FrobeniusOut::from(&frobenius_checks(
            &g,
            &derived.members(),
            b.pairs,
        )?))
    } else {
        None
    };

    let passed = checks.iter().all(|c| c.passed)
        && all_passed(&laws)
        && all_passed(&wedges)
        && class2.as_ref().is_none_or(|c| c.passed)
        && frobenius.as_ref().is_none_or(|f| f.passed);
    Ok(Suite {
        name: p.name().to_string(),
        checks,
        group_laws: properties(&laws),
        wedge_identities: properties(&wedges),
        class2,
        blackburn_evens,
        frobenius,
        passed,
    })
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let b = Bounds::new(cli.bound);
    match &cli.command {
        Command::Info { input } => cmd_info(cli, &load(input)?, &b),
        Command::Multiplier { input } => cmd_multiplier(cli, &load(input)?, &b),
        Command::Bogomolov { input, method } => cmd_bogomolov(cli, &load(input)?, &b, *method),
        Command::Wedge { input, method } => cmd_wedge(cli, &load(input)?, &b, *method),
        Command::Fiveterm { input, normal } => cmd_fiveterm(cli, &load(input)?, &b, normal),
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                if cli.json {
                    emit(true, "catalog", None, catalog::list());
                } else {
                    for n in catalog::list() {
                        println!("{n}");
                    }
                }
                Ok(0)
            }
            CatalogAction::Emit { name } => {
                print!("{}", catalog::get(name)?.source);
                Ok(0)
            }
        },
        Command::Verify {
            input,
            all_catalog,
            samples,
        } => {
            let specs: Vec<String> = match (input, all_catalog) {
                (Some(i), false) => vec![i.clone()],
                (None, true) => catalog::list()
                    .into_iter()
                    .map(|n| format!("catalog:{n}"))
                    .collect(),
                _ => {
                    return Err(Failure {
                        code: 2,
                        message: "give exactly one of an input or --all-catalog".into(),
                    })
                }
            };
            let mut suites = Vec::new();
            for s in &specs {
                suites.push(verify_one(&load(s)?, &b, *samples)?);
            }
            let passed = suites.iter().all(|s| s.passed);
            emit(cli.json, "verify", None, Verify { suites, passed });
            Ok(if passed { 0 } else { 4 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
