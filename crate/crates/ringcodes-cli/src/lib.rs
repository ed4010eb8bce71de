//! Command implementations behind the `ringcodes` binary.
//!
//! Each command returns a [`Report`] holding both a JSON value and a text
//! rendering; `main` picks one according to `--format`.

pub mod fixtures;
pub mod render;

use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use ringcodes::chaingap::{self, build_chain_pair, default_ring};
use ringcodes::chainring::ChainRing;
use ringcodes::codes::{ChainCode, ChainModule, MatrixCode};
use ringcodes::enumerators::{dual_wwe, truncated_dual_wwe, PartitionEnumerator, Wwe};
use ringcodes::matrixgap::{self, build_degenerate_pair, build_swap, Padding, SwapOptions};
use ringcodes::matrixring::{rank_kravchuk, MatrixSpace, OrbitOrdering};
use ringcodes::verdict::Verdict;
use ringcodes::weights::{c_coefficients, WeightTable};
use serde_json::{json, Value};

use render::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] ringcodes::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use ringcodes::Error as E;
        match self {
            CliError::Usage(_) => EXIT_INVALID,
            CliError::Lib(E::Budget { .. }) => EXIT_BUDGET,
            CliError::Lib(E::Inconsistent(_) | E::NonIntegral(_)) => EXIT_MISMATCH,
            CliError::Lib(_) => EXIT_INVALID,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(name = "ringcodes", version, about = "Weight enumerators and duality tests for codes over chain and matrix rings")]
pub struct Cli {
    /// Output format (default: json, or csv-style text for `sweep`).
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Chain,
    Matrix,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ordering {
    Lex,
    PaperK2m3q2,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Module {
    Cyclic,
    Semisimple,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaddingArg {
    Minimal,
    AllRankOne,
}

/// Ring selection shared by most commands.
#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// chain: Galois ring or F_q[x]/(x^m); matrix: M_k(F_q).
    #[arg(long, value_enum)]
    pub ring: Family,
    #[arg(long)]
    pub q: u64,
    /// Chain: nilpotency index. Matrix: module width (default k + 1).
    #[arg(long)]
    pub m: Option<u32>,
    /// Chain: module rank. Matrix: ring size (default: number of weights).
    #[arg(long)]
    pub k: Option<u32>,
    /// Weights w_0..w_{m-1} (chain, by valuation) or w_1..w_k (matrix, by rank).
    #[arg(long, value_delimiter = ',')]
    pub weights: Vec<u64>,
    /// Chain only: use F_q[x]/(x^m) even when q is prime.
    #[arg(long)]
    pub poly: bool,
    #[arg(long, value_enum, default_value = "lex")]
    pub ordering: Ordering,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a weight respects duality.
    Classify {
        #[command(flatten)]
        ring: RingArgs,
        /// Longest witness pair recomputed end to end (0 disables).
        #[arg(long)]
        verify_length: Option<u64>,
    },
    /// Build the pair of codes used as a witness.
    Construct {
        #[command(flatten)]
        ring: RingArgs,
        /// Matrix: swap rank s, or degenerate index j when c_j = 0.
        #[arg(long)]
        s: Option<u32>,
        /// Matrix: orbit index of λ0 for the swap.
        #[arg(long)]
        lambda0: Option<usize>,
        #[arg(long, value_enum, default_value = "minimal")]
        padding: PaddingArg,
    },
    /// Symmetrized (or rank-partition) enumerator of a code given by multiplicities.
    Enumerate {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Dual weight enumerator via MacWilliams, or by brute force.
    Dual {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        max_degree: Option<u64>,
        /// Enumerate the dual directly instead of transforming.
        #[arg(long)]
        brute: bool,
        #[arg(long, default_value_t = ringcodes::DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Rebuild the stored worked examples and compare every value.
    Reproduce {
        fixture: Option<String>,
        #[arg(long)]
        all: bool,
        /// List fixture names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Classify every weight vector on a grid.
    Sweep {
        #[arg(long, value_enum)]
        ring: Family,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        q: Vec<u64>,
        /// Chain: values of m. Matrix: values of k.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        size: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        max_weight: u64,
        #[arg(long)]
        verify_length: Option<u64>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    /// Multiplicity of each functional orbit, zero functional first.
    #[arg(long, value_delimiter = ',')]
    pub counts: Vec<u64>,
    /// Chain only: information module Z_k (cyclic) or S_k (semisimple).
    #[arg(long, value_enum, default_value = "cyclic")]
    pub module: Module,
}

pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, ok: true }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json serialization"),
            Format::Text => self.text.trim_end().to_string(),
        }
    }
}

pub fn default_format(cmd: &Command) -> Format {
    match cmd {
        Command::Sweep { .. } => Format::Text,
        _ => Format::Json,
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Classify { ring, verify_length } => classify(ring, *verify_length),
        Command::Construct { ring, s, lambda0, padding } => construct(ring, *s, *lambda0, *padding),
        Command::Enumerate { ring, code } => enumerate(ring, code),
        Command::Dual { ring, code, max_degree, brute, budget } => dual(ring, code, *max_degree, *brute, *budget),
        Command::Reproduce { fixture, all, list } => reproduce(fixture.as_deref(), *all, *list),
        Command::Sweep { ring, q, size, max_weight, verify_length } => {
            sweep(*ring, q, size, *max_weight, *verify_length)
        }
    }
}

fn weights(r: &RingArgs) -> Result<WeightTable, CliError> {
    if r.weights.is_empty() {
        return Err(usage("--weights is required"));
    }
    Ok(match r.ring {
        Family::Chain => {
            if let Some(m) = r.m {
                if m as usize != r.weights.len() {
                    return Err(usage(format!("--m {m} needs {m} weights, got {}", r.weights.len())));
                }
            }
            WeightTable::chain(r.q, &r.weights)?
        }
        Family::Matrix => {
            if let Some(k) = r.k {
                if k as usize != r.weights.len() {
                    return Err(usage(format!("--k {k} needs {k} weights, got {}", r.weights.len())));
                }
            }
            WeightTable::matrix(r.q, &r.weights)?
        }
    })
}

fn chain_ring(r: &RingArgs, m: u32) -> Result<ChainRing, CliError> {
    Ok(if r.poly {
        ChainRing::poly_quotient(r.q, m)?
    } else {
        default_ring(r.q, m)?
    })
}

fn chain_m(r: &RingArgs) -> Result<u32, CliError> {
    r.m.or(if r.weights.is_empty() { None } else { Some(r.weights.len() as u32) })
        .ok_or_else(|| usage("--m is required for a chain ring"))
}

fn matrix_space(r: &RingArgs) -> Result<Arc<MatrixSpace>, CliError> {
    let k = r
        .k
        .or(if r.weights.is_empty() { None } else { Some(r.weights.len() as u32) })
        .ok_or_else(|| usage("--k is required for a matrix ring"))? as usize;
    let m = r.m.map(|m| m as usize).unwrap_or(k + 1);
    let ordering = match r.ordering {
        Ordering::Lex => OrbitOrdering::Lex,
        Ordering::PaperK2m3q2 => OrbitOrdering::PaperK2M3Q2,
    };
    Ok(Arc::new(MatrixSpace::new(r.q, k, m, ordering)?))
}

fn orbit_label(space: &MatrixSpace, i: usize) -> String {
    let basis = space.index().get(i).basis();
    if basis.is_empty() {
        return "0".into();
    }
    let sep = if space.q() > 10 { "," } else { "" };
    let rows: Vec<String> = basis
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep))
        .collect();
    format!("<{}>", rows.join("/"))
}

fn ring_json(r: &RingArgs) -> Value {
    let (family, size) = match r.ring {
        Family::Chain => ("chain", "m"),
        Family::Matrix => ("matrix", "k"),
    };
    json!({
        "family": family,
        "q": r.q,
        size: r.weights.len(),
        "values": r.weights,
    })
}

pub fn classify(r: &RingArgs, verify_length: Option<u64>) -> Result<Report, CliError> {
    let w = weights(r)?;
    let v = match r.ring {
        Family::Chain => {
            let mut opts = chaingap::ClassifyOptions::default();
            if let Some(l) = verify_length {
                opts.verify_length = l;
            }
            chaingap::classify_chain_with(&w, opts)?
        }
        Family::Matrix => {
            let mut opts = matrixgap::ClassifyOptions::default();
            if let Some(l) = verify_length {
                opts.verify_length = l;
            }
            matrixgap::classify_matrix_with(&w, opts)?
        }
    };
    let mut j = verdict_json(&v);
    j["ring"] = ring_json(r);
    let ok = v.witness().map_or(true, |wt| wt.verified != Some(false));
    Ok(Report {
        json: j,
        text: verdict_text(&v),
        ok,
    })
}

fn chain_code_json(code: &ChainCode, w: &WeightTable) -> Value {
    let labels: Vec<String> = (0..code.num_functionals()).map(|i| code.functional_label(i)).collect();
    json!({
        "functionals": labels,
        "counts": nums(code.counts()),
        "length": code.length().to_string(),
        "wwe": wwe_json(&code.wwe(w)),
    })
}

fn matrix_code_json(code: &MatrixCode, w: &WeightTable) -> Value {
    let sp = code.space();
    let labels: Vec<String> = (0..sp.num_orbits()).map(|i| orbit_label(sp, i)).collect();
    json!({
        "orbits": labels,
        "counts": nums(code.counts()),
        "orbit_weights": nums(&code.orbit_weights(w)),
        "length": code.length().to_string(),
        "spans": code.functionals_span(),
        "wwe": wwe_json(&code.wwe(w)),
    })
}

pub fn construct(
    r: &RingArgs,
    s: Option<u32>,
    lambda0: Option<usize>,
    padding: PaddingArg,
) -> Result<Report, CliError> {
    let w = weights(r)?;
    match r.ring {
        Family::Chain => {
            let m = chain_m(r)?;
            let ring = chain_ring(r, m)?;
            let k = r.k.unwrap_or(m);
            let p = build_chain_pair(&ring, &w, k)?;
            let same = p.c.wwe(&w) == p.d.wwe(&w);
            let j = json!({
                "ring": ring_json(r),
                "construction": "chain",
                "k": k,
                "a": bigs(&p.a),
                "delta_cap": p.delta_cap.to_string(),
                "length": p.length().to_string(),
                "same_wwe": same,
                "c": chain_code_json(&p.c, &w),
                "d": chain_code_json(&p.d, &w),
            });
            let text = format!(
                "C_{k}: counts {}\nD_{k}: counts {}\nlength {}\nwwe {}{}",
                list(p.c.counts()),
                list(p.d.counts()),
                p.length(),
                p.c.wwe(&w).display(None),
                if same { "" } else { "\nWARNING: enumerators differ" }
            );
            Ok(Report { json: j, text, ok: same })
        }
        Family::Matrix => {
            let space = matrix_space(r)?;
            let c = c_coefficients(&w)?;
            let degenerate_j = (2..c.len()).find(|&j| num_traits::Zero::is_zero(&c[j]));
            let s = s.map(|s| s as usize);
            let use_degenerate = match s {
                Some(s) => s >= 2 && s < c.len() && num_traits::Zero::is_zero(&c[s]),
                None => degenerate_j.is_some(),
            };
            let (first, second, mut j, head) = if use_degenerate {
                let jj = s.or(degenerate_j).unwrap();
                let pad = match padding {
                    PaddingArg::Minimal => Padding::Minimal,
                    PaddingArg::AllRankOne => Padding::AllRankOne,
                };
                let p = build_degenerate_pair(&space, &w, jj, pad)?;
                let j = json!({
                    "construction": "degenerate",
                    "j": jj,
                    "gamma": p.gamma,
                    "rank_sum_difference": bigs(&p.delta_bar()),
                });
                let head = format!("degenerate pair j={jj} gamma={}", orbit_label(&space, p.gamma));
                (p.plus, p.minus, j, head)
            } else {
                let s = s.unwrap_or(1);
                let p = build_swap(&space, &w, s, SwapOptions { lambda0 })?;
                let j = json!({
                    "construction": "swap",
                    "s": s,
                    "lambda0": p.lambda0,
                    "xs": p.xs,
                    "y": p.y,
                    "varsigma": bigs(&p.varsigma),
                    "sigma": bigs(&p.sigma),
                    "c": p.c.to_string(),
                    "a": p.a.to_string(),
                    "b": p.b.to_string(),
                    "delta": p.delta.to_string(),
                    "alpha1": p.alpha1.to_string(),
                    "alpha2": p.alpha2.to_string(),
                    "rank_sum_difference": bigs(&p.delta_bar()),
                });
                let head = format!(
                    "swap s={s} lambda0={} c={} a={} b={} Delta={}",
                    orbit_label(&space, p.lambda0),
                    p.c,
                    p.a,
                    p.b,
                    p.delta
                );
                (p.code_c, p.code_d, j, head)
            };
            let same = first.wwe(&w) == second.wwe(&w);
            j["ring"] = ring_json(r);
            j["m"] = json!(space.m());
            j["same_wwe"] = json!(same);
            j["first"] = matrix_code_json(&first, &w);
            j["second"] = matrix_code_json(&second, &w);
            let text = format!(
                "{head}\nfirst:  eta {}\nsecond: eta {}\nlength {}\nwwe {}{}",
                list(first.counts()),
                list(second.counts()),
                first.length(),
                first.wwe(&w).display(None),
                if same { "" } else { "\nWARNING: enumerators differ" }
            );
            Ok(Report { json: j, text, ok: same })
        }
    }
}

enum AnyCode {
    Chain(ChainCode),
    Matrix(MatrixCode),
}

impl AnyCode {
    fn se(&self) -> PartitionEnumerator {
        match self {
            AnyCode::Chain(c) => c.se(),
            AnyCode::Matrix(c) => c.se(),
        }
    }

    fn kravchuk(&self) -> ringcodes::exactmath::IntMatrix {
        match self {
            AnyCode::Chain(c) => c.ring().generalized_kravchuk(),
            AnyCode::Matrix(c) => rank_kravchuk(c.space().k(), c.space().q()),
        }
    }

    fn length(&self) -> u64 {
        match self {
            AnyCode::Chain(c) => c.length(),
            AnyCode::Matrix(c) => c.length(),
        }
    }
}

fn build_code(r: &RingArgs, code: &CodeArgs) -> Result<AnyCode, CliError> {
    if code.counts.is_empty() {
        return Err(usage("--counts is required"));
    }
    Ok(match r.ring {
        Family::Chain => {
            let m = chain_m(r)?;
            let ring = chain_ring(r, m)?;
            let k = r.k.unwrap_or(m);
            let module = match code.module {
                Module::Cyclic => ChainModule::Cyclic(k),
                Module::Semisimple => ChainModule::Semisimple(k),
            };
            AnyCode::Chain(ChainCode::new(ring, module, code.counts.clone())?)
        }
        Family::Matrix => AnyCode::Matrix(MatrixCode::new(matrix_space(r)?, code.counts.clone())?),
    })
}

fn optional_weights(r: &RingArgs) -> Result<Option<WeightTable>, CliError> {
    if r.weights.is_empty() {
        Ok(None)
    } else {
        weights(r).map(Some)
    }
}

pub fn enumerate(r: &RingArgs, args: &CodeArgs) -> Result<Report, CliError> {
    let code = build_code(r, args)?;
    let se = code.se();
    let mut j = json!({
        "ring": ring_json(r),
        "length": code.length().to_string(),
        "size": se.total().to_string(),
        "se": se_json(&se),
    });
    let mut text = format!("length {}\nse {}", code.length(), se_text(&se));
    if let Some(w) = optional_weights(r)? {
        let wwe = ringcodes::enumerators::specialize(&se, &w.by_class());
        j["wwe"] = wwe_json(&wwe);
        text.push_str(&format!("\nwwe {}", wwe.display(None)));
    }
    Ok(Report::ok(j, text))
}

pub fn dual(
    r: &RingArgs,
    args: &CodeArgs,
    max_degree: Option<u64>,
    brute: bool,
    budget: u128,
) -> Result<Report, CliError> {
    let w = weights(r)?;
    let code = build_code(r, args)?;
    let full = if brute {
        match &code {
            AnyCode::Chain(c) => c.brute_force_dual_wwe(&w, budget)?,
            AnyCode::Matrix(c) => c.brute_force_dual_wwe(&w, budget)?,
        }
    } else {
        let se = code.se();
        let kr = code.kravchuk();
        let total = se.total();
        match max_degree {
            Some(d) => truncated_dual_wwe(&se, &kr, &total, &w.by_class(), d)?,
            None => dual_wwe(&se, &kr, &total, &w.by_class())?,
        }
    };
    let shown: Wwe = match max_degree {
        Some(d) => full.truncate(d),
        None => full,
    };
    let j = json!({
        "ring": ring_json(r),
        "method": if brute { "brute-force" } else { "macwilliams" },
        "max_degree": max_degree.map(|d| d.to_string()),
        "dual_wwe": wwe_json(&shown),
    });
    Ok(Report::ok(j, shown.display(None)))
}

pub fn reproduce(fixture: Option<&str>, all: bool, list_only: bool) -> Result<Report, CliError> {
    let ids = fixtures::fixture_ids();
    if list_only {
        return Ok(Report::ok(json!(ids), ids.join("\n")));
    }
    let chosen: Vec<&str> = match (fixture, all) {
        (_, true) => ids.clone(),
        (Some(f), false) => vec![f],
        (None, false) => return Err(usage("name a fixture or pass --all")),
    };
    let reports = chosen
        .par_iter()
        .map(|id| fixtures::run_fixture(id))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = reports.iter().all(|r| r.passed());
    let text: String = reports.iter().map(|r| r.text()).collect();
    let passed = reports.iter().filter(|r| r.passed()).count();
    let j = json!({
        "pass": ok,
        "passed": passed,
        "total": reports.len(),
        "fixtures": reports.iter().map(|r| r.json()).collect::<Vec<_>>(),
    });
    Ok(Report {
        json: j,
        text: format!("{text}{passed}/{} fixtures reproduced", reports.len()),
        ok,
    })
}

/// All vectors in {1..=max}^len, lexicographic.
fn weight_grid(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=max).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn sweep(
    family: Family,
    qs: &[u64],
    sizes: &[u32],
    max_weight: u64,
    verify_length: Option<u64>,
) -> Result<Report, CliError> {
    if max_weight == 0 {
        return Err(usage("--max-weight must be positive"));
    }
    let mut jobs = Vec::new();
    for &q in qs {
        for &n in sizes {
            for w in weight_grid(n as usize, max_weight) {
                jobs.push((q, n, w));
            }
        }
    }
    let rows: Vec<Result<(u64, u32, Vec<u64>, Verdict), CliError>> = jobs
        .into_par_iter()
        .map(|(q, n, wv)| {
            let v = match family {
                Family::Chain => {
                    let w = WeightTable::chain(q, &wv)?;
                    let mut o = chaingap::ClassifyOptions::default();
                    if let Some(l) = verify_length {
                        o.verify_length = l;
                    }
                    chaingap::classify_chain_with(&w, o)?
                }
                Family::Matrix => {
                    let w = WeightTable::matrix(q, &wv)?;
                    let mut o = matrixgap::ClassifyOptions::default();
                    if let Some(l) = verify_length {
                        o.verify_length = l;
                    }
                    matrixgap::classify_matrix_with(&w, o)?
                }
            };
            Ok((q, n, wv, v))
        })
        .collect();
    let size_name = match family {
        Family::Chain => "m",
        Family::Matrix => "k",
    };
    let mut csv = format!("q,{size_name},weights,verdict,rule,d,delta,verified\n");
    let mut arr = Vec::new();
    let mut ok = true;
    for row in rows {
        let (q, n, wv, v) = row?;
        let (d, delta, verified) = match v.witness() {
            Some(wt) => (
                wt.d.to_string(),
                wt.delta.to_string(),
                match wt.verified {
                    Some(true) => "yes",
                    Some(false) => {
                        ok = false;
                        "MISMATCH"
                    }
                    None => "skipped",
                },
            ),
            None => (String::new(), String::new(), ""),
        };
        let ws: Vec<String> = wv.iter().map(|x| x.to_string()).collect();
        csv.push_str(&format!(
            "{q},{n},\"{}\",{},{},{d},{delta},{verified}\n",
            ws.join(","),
            v.kind(),
            v.rule()
        ));
        let mut j = verdict_json(&v);
        j["q"] = json!(q);
        j[size_name] = json!(n);
        j["weights"] = nums(&wv);
        arr.push(j);
    }
    Ok(Report {
        json: Value::Array(arr),
        text: csv,
        ok,
    })
}

/// Convenience used by tests: the dense dual prefix of a chain or matrix code.
pub fn dual_prefix(se: &PartitionEnumerator, kr: &ringcodes::exactmath::IntMatrix, w: &WeightTable, d: u64) -> Result<Vec<BigInt>, CliError> {
    Ok(truncated_dual_wwe(se, kr, &se.total(), &w.by_class(), d)?.dense(d))
}
