//! Command-line front end: reads an instance document, runs one computation and
//! writes one JSON document. Counts and other computed quantities are decimal strings.

pub mod instance;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use pbcode::codes::{self, CodeAnalysis, SingletonReport};
use pbcode::distribution::{
    ball_size, brute_distribution, count_of_weight, count_of_weight_uniform, full_distribution,
};
use pbcode::nrt::{self, ChainAnalysis};
use pbcode::{enumerate_ideals, BlockSpace, Method};

pub use instance::{parse_instance, Instance, InstanceDoc};

pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Library(#[from] pbcode::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if e.is_capacity() => EXIT_CAPACITY,
            _ => EXIT_INVALID,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            EXIT_CAPACITY => "capacity",
            _ => "validation",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "pbcode",
    version,
    about = "Weighted poset block metrics on Z_m^N"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight of one vector.
    Weight {
        #[arg(long)]
        instance: PathBuf,
        /// JSON array of residues, length N.
        #[arg(long)]
        vector: String,
    },
    /// Distance between two vectors.
    Dist {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Weight distribution, or a single |A_r| with --r.
    Distribution {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: Method,
    },
    /// Size of a ball of the given radius.
    Ball {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        radius: u32,
    },
    /// Minimum distances, Singleton bound and MDS status of the instance code.
    AnalyzeCode {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Checks every distribution method and random balls against enumeration.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        trials: u32,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: pbcode::Error| e.to_string())
}

impl Command {
    pub fn instance_path(&self) -> &PathBuf {
        match self {
            Command::Weight { instance, .. }
            | Command::Dist { instance, .. }
            | Command::Distribution { instance, .. }
            | Command::Ball { instance, .. }
            | Command::AnalyzeCode { instance }
            | Command::Verify { instance, .. } => instance,
        }
    }
}

/// The document to print and whether every asserted check agreed.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub doc: Value,
    pub ok: bool,
}

impl Report {
    fn ok(doc: Value) -> Self {
        Report { doc, ok: true }
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            EXIT_MISMATCH
        }
    }
}

pub fn load_instance(path: &PathBuf) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    parse_instance(&text)
}

pub fn run(command: &Command) -> Result<Report, CliError> {
    let inst = load_instance(command.instance_path())?;
    run_on(&inst, command)
}

fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn parse_vector(
    space: &BlockSpace,
    flag: &str,
    text: &str,
) -> Result<pbcode::BlockVector, CliError> {
    let coords: Vec<u32> = serde_json::from_str(text).map_err(|e| {
        CliError::Invalid(format!("--{flag} must be a JSON array of residues: {e}"))
    })?;
    Ok(space.vector(coords)?)
}

fn check_level(space: &BlockSpace, what: &str, r: u32) -> Result<(), CliError> {
    let top = space.max_total_weight();
    if r > top {
        return Err(CliError::Invalid(format!(
            "{what} {r} exceeds the largest weight {top}"
        )));
    }
    Ok(())
}

pub fn run_on(inst: &Instance, command: &Command) -> Result<Report, CliError> {
    let space = &inst.space;
    let caps = &inst.caps;
    match command {
        Command::Weight { vector, .. } => {
            let v = parse_vector(space, "vector", vector)?;
            Ok(Report::ok(
                json!({ "vector": v.coords(), "weight": s(space.weight(&v)) }),
            ))
        }
        Command::Dist { x, y, .. } => {
            let x = parse_vector(space, "x", x)?;
            let y = parse_vector(space, "y", y)?;
            Ok(Report::ok(json!({
                "x": x.coords(),
                "y": y.coords(),
                "distance": s(space.distance(&x, &y)),
            })))
        }
        Command::Distribution {
            r: Some(r), method, ..
        } => {
            check_level(space, "weight level", *r)?;
            let count = match method {
                Method::General => {
                    count_of_weight(space, &enumerate_ideals(space.poset(), caps.ideal_cap)?, *r)?
                }
                Method::Uniform => count_of_weight_uniform(
                    space,
                    &enumerate_ideals(space.poset(), caps.ideal_cap)?,
                    *r,
                )?,
                other => full_distribution(space, *other, caps)?.count(*r as usize),
            };
            Ok(Report::ok(json!({ "r": r, "count": s(count) })))
        }
        Command::Distribution {
            r: None, method, ..
        } => {
            let d = full_distribution(space, *method, caps)?;
            Ok(Report::ok(json!({
                "method": d.method().as_str(),
                "counts": d.counts().iter().map(s).collect::<Vec<_>>(),
                "total": s(d.total()),
            })))
        }
        Command::Ball { radius, .. } => {
            check_level(space, "radius", *radius)?;
            let d = full_distribution(space, Method::Auto, caps)?;
            Ok(Report::ok(
                json!({ "radius": radius, "size": s(ball_size(space, &d, *radius)?) }),
            ))
        }
        Command::AnalyzeCode { .. } => analyze_code(inst),
        Command::Verify { seed, trials, .. } => verify(inst, *seed, *trials),
    }
}

fn singleton_json(r: &SingletonReport) -> Value {
    json!({
        "d": s(r.d),
        "r": s(r.r),
        "lhs": s(r.lhs),
        "rhs": s(r.rhs),
        "holds": r.holds,
        "is_mds": r.is_mds,
    })
}

fn analysis_json(a: &CodeAnalysis) -> Value {
    let opt = |v: Option<u32>| v.map(s).unwrap_or(Value::Null);
    json!({
        "cardinality": s(&a.cardinality),
        "log_q_card_ceil": s(a.log_q_card_ceil),
        "distances": {
            "pwpi": s(a.d_pwpi),
            "ppi": s(a.d_ppi),
            "pw": opt(a.d_pw),
            "p": opt(a.d_p),
        },
        "singleton": singleton_json(&a.singleton),
        "singleton_ppi": singleton_json(&a.singleton_ppi),
        "is_mds": a.is_mds(),
        "mds_interval": a.mds_interval.map(|iv| json!({
            "lower": s(iv.lower),
            "upper": s(iv.upper),
            "contains_d": iv.contains(a.d_pwpi),
        })),
        "distance_comparison": {
            "lhs": s(a.comparison.lhs),
            "rhs": s(a.comparison.rhs),
            "holds": a.comparison.holds,
            "unit_blocks": a.comparison.unit.map(|(l, r)| json!({
                "lhs": s(l),
                "rhs": s(r),
                "holds": l <= r,
            })),
        },
        "mds_inheritance": {
            "pwpi_mds": a.inheritance.pwpi_mds,
            "ppi_mds": a.inheritance.ppi_mds,
            "pw_mds": a.inheritance.pw_mds,
            "p_mds": a.inheritance.p_mds,
            "holds": a.inheritance.holds(),
        },
        "packing_radius": opt(a.packing_radius),
    })
}

fn chain_json(c: &ChainAnalysis) -> Value {
    json!({
        "distribution": c.distribution.counts().iter().map(s).collect::<Vec<_>>(),
        "singleton": {
            "r": s(c.singleton.r),
            "lhs": s(c.singleton.lhs),
            "rhs": s(c.singleton.rhs),
            "holds": c.singleton.holds,
            "corollary_holds": c.singleton.corollary_holds,
        },
        "packing_radius": {
            "formula": s(c.packing_radius_formula),
            "brute": c.packing_radius_brute.map(s),
            "agree": c.packing_radius_brute.map(|b| b == c.packing_radius_formula),
        },
        "min_distance_relation": c.min_distance_relation.as_ref().map(|r| json!({
            "d_pwpi": s(r.d_pwpi),
            "d_ppi": s(r.d_ppi),
            "m_w": s(r.m_w),
            "max_weight": s(r.max_weight),
            "rhs": s(r.rhs),
            "r_pwpi": s(r.r_pwpi),
            "agree": r.agree,
            "asserted": r.asserted,
        })),
    })
}

fn analyze_code(inst: &Instance) -> Result<Report, CliError> {
    let code = inst.code.as_ref().ok_or_else(|| {
        CliError::Invalid("analyze-code needs a \"code\" section in the instance".into())
    })?;
    let a = codes::analyze(code, &inst.caps)?;
    let mut ok = a.theorems_hold();
    let mut doc = analysis_json(&a);
    doc["kind"] = json!(if code.is_linear() {
        "linear"
    } else {
        "explicit"
    });
    if inst.space.poset().is_chain() {
        let chain = nrt::analyze_chain(code, &inst.caps)?;
        ok &= chain.singleton.holds;
        ok &= !chain
            .min_distance_relation
            .as_ref()
            .is_some_and(|r| r.violated());
        doc["chain"] = chain_json(&chain);
    }
    Ok(Report { doc, ok })
}

fn verify(inst: &Instance, seed: u64, trials: u32) -> Result<Report, CliError> {
    let space = &inst.space;
    let caps = &inst.caps;
    let brute = brute_distribution(space, caps.brute_cap)?;
    let mut ok = true;
    let mut methods = Vec::new();
    let mut results = Vec::new();
    for method in Method::ALL {
        if matches!(method, Method::Brute | Method::Auto) || !method.applies_to(space) {
            continue;
        }
        let d = full_distribution(space, method, caps)?;
        methods.push(method.as_str());
        results.push(d);
    }
    let levels: Vec<Value> = (0..brute.counts().len())
        .map(|r| {
            let expected = brute.count(r);
            let agree = results.iter().all(|d| d.count(r) == expected);
            ok &= agree;
            let by_method: serde_json::Map<String, Value> = methods
                .iter()
                .zip(&results)
                .map(|(name, d)| (name.to_string(), s(d.count(r))))
                .collect();
            json!({ "r": r, "brute": s(expected), "methods": by_method, "ok": agree })
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = space
        .size_u64()
        .expect("brute-force succeeded, so m^N fits");
    let balls: Vec<Value> = (0..trials)
        .map(|_| {
            let center = space.vector_from_index(rng.gen_range(0..size));
            let radius = rng.gen_range(0..=space.max_total_weight());
            let enumerated = (0..size)
                .filter(|&i| space.distance(&center, &space.vector_from_index(i)) <= radius)
                .count();
            let formula = ball_size(space, &brute, radius).expect("radius within range");
            let agree = formula == BigUint::from(enumerated);
            ok &= agree;
            json!({
                "center": center.coords(),
                "radius": radius,
                "formula": s(formula),
                "enumerated": s(enumerated),
                "ok": agree,
            })
        })
        .collect();
    let total_ok = brute.total() == space.size();
    ok &= total_ok;

    Ok(Report {
        doc: json!({
            "methods": methods,
            "levels": levels,
            "balls": balls,
            "total": s(brute.total()),
            "total_is_m_pow_n": total_ok,
            "ok": ok,
        }),
        ok,
    })
}
