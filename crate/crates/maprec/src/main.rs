//! Command-line front end: curve construction, forms, count tables and the
//! verification suite, with deterministic text/JSON/CSV output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use maprec::counts::{counts, validate_truncation, CountTable};
use maprec::curve::{Model, SpectralCurve};
use maprec::error::Error;
use maprec::rat::{format_rat, Rat};
use maprec::recursion::{Engine, OmegaForm};
use maprec::verify::{self, SuiteReport};
use maprec::weights::{WeightConfig, WeightSeries};

#[derive(Parser)]
#[command(
    name = "maprec",
    about = "Exact map enumeration via topological recursion on spectral curves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a spectral curve and print its data
    Curve(CurveArgs),
    /// Compute a stable form ω_{g,n} in partial-fraction form
    Omega(OmegaArgs),
    /// Extract count generating functions
    Counts(CountsArgs),
    /// Run the verification suites
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct CommonArgs {
    /// Model: ordinary | bipartite | dessins
    #[arg(long, default_value = "bipartite")]
    model: String,
    /// Active weights, e.g. "t4" or "t4=1/2,t6" (comma-separated or repeated)
    #[arg(long, value_delimiter = ',')]
    weights: Vec<String>,
    /// Truncation order N (max total degree in the weights)
    #[arg(long, default_value_t = 0)]
    trunc: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct OmegaArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Genus
    #[arg(long)]
    g: u32,
    /// Number of legs
    #[arg(long)]
    n: u32,
}

#[derive(Args)]
struct CountsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Genus
    #[arg(long)]
    g: Option<u32>,
    /// Even boundary lengths 2l_i, e.g. "2" or "2,4"
    #[arg(long, value_delimiter = ',')]
    lengths: Vec<u32>,
    /// Additional tables "G:L1[,L2,…]" (repeatable; enables multi-column CSV)
    #[arg(long)]
    table: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: all | curve | structure | unstable | genus0 | omega11 |
    /// golden | acceptance
    #[arg(long, default_value = "all")]
    suite: String,
    /// Truncation override for the curve, structure and genus0 suites
    #[arg(long)]
    trunc: Option<u32>,
    /// Output format (text or json)
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Testing hook: negate the recursion kernel at z = -1
    #[arg(long, hide = true)]
    inject_sign_fault: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Curve(args) => cmd_curve(args),
        Command::Omega(args) => cmd_omega(args),
        Command::Counts(args) => cmd_counts(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------------------
// shared plumbing

fn parse_weights(specs: &[String]) -> Result<Vec<(u32, Rat)>, Error> {
    let mut out = Vec::new();
    for spec in specs {
        let spec = spec.trim();
        if spec.is_empty() {
            continue;
        }
        let (name, scale) = match spec.split_once('=') {
            Some((n, s)) => {
                let scale = Rat::from_str(s.trim()).map_err(|_| {
                    Error::InvalidRequest(format!("cannot parse weight scale '{s}'"))
                })?;
                (n.trim(), scale)
            }
            None => (spec, maprec::rat::rat_int(1)),
        };
        let idx: u32 = name
            .strip_prefix('t')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| {
                Error::InvalidRequest(format!(
                    "weight '{name}' must look like t4, t6, … (even index)"
                ))
            })?;
        out.push((idx, scale));
    }
    Ok(out)
}

fn build_engine(common: &CommonArgs) -> Result<Engine, Error> {
    let model = Model::from_str(&common.model)?;
    let pairs = parse_weights(&common.weights)?;
    let cfg = WeightConfig::with_scales(&pairs, common.trunc)?;
    Ok(Engine::new(SpectralCurve::build(model, &cfg)?))
}

fn emit(out: &Option<std::path::PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::InvalidRequest(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| Error::InvalidRequest(format!("cannot write stdout: {e}")))
        }
    }
}

#[derive(Serialize)]
struct SeriesTermJson {
    exponents: Vec<u16>,
    coefficient: String,
}

fn series_json(s: &WeightSeries) -> Vec<SeriesTermJson> {
    s.iter()
        .map(|(exps, c)| SeriesTermJson {
            exponents: exps.clone(),
            coefficient: format_rat(c),
        })
        .collect()
}

#[derive(Serialize)]
struct WeightJson {
    index: u32,
    scale: String,
}

fn weights_json(cfg: &Arc<WeightConfig>) -> Vec<WeightJson> {
    cfg.indices()
        .iter()
        .map(|&i| WeightJson {
            index: i,
            scale: format_rat(cfg.scale_of(i).expect("active")),
        })
        .collect()
}

fn weights_text(cfg: &Arc<WeightConfig>) -> String {
    if cfg.arity() == 0 {
        return "none".into();
    }
    cfg.indices()
        .iter()
        .map(|&i| {
            let s = cfg.scale_of(i).expect("active");
            if num_traits::One::is_one(s) {
                format!("t{i}")
            } else {
                format!("t{i}={}", format_rat(s))
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

// ---------------------------------------------------------------------------
// curve

#[derive(Serialize)]
struct CurveJson {
    model: String,
    weights: Vec<WeightJson>,
    trunc: u32,
    gamma_sq: Vec<SeriesTermJson>,
    u_over_gamma: Vec<Vec<SeriesTermJson>>,
    gamma_parity: u32,
    x_reduced: String,
    y_reduced: String,
    dx_reduced: String,
    branch_plus: Vec<SeriesTermJson>,
    branch_minus: Vec<SeriesTermJson>,
}

fn cmd_curve(args: CurveArgs) -> Result<ExitCode, Error> {
    let engine = build_engine(&args.common)?;
    let curve = engine.curve();
    let cfg = curve.config();
    let content = match args.common.format {
        Format::Json => {
            let json = CurveJson {
                model: curve.model().name().into(),
                weights: weights_json(cfg),
                trunc: cfg.trunc(),
                gamma_sq: series_json(curve.gamma_sq()),
                u_over_gamma: curve.u_over_gamma().iter().map(series_json).collect(),
                gamma_parity: curve.gamma_parity(),
                x_reduced: curve.x_reduced().to_string(),
                y_reduced: curve.y_reduced().to_string(),
                dx_reduced: curve.dx_reduced().to_string(),
                branch_plus: series_json(curve.branch_plus()),
                branch_minus: series_json(curve.branch_minus()),
            };
            serde_json::to_string_pretty(&json).expect("serializable") + "\n"
        }
        Format::Csv => {
            return Err(Error::InvalidRequest(
                "curve output supports text and json formats".into(),
            ))
        }
        Format::Text => {
            let mut s = String::new();
            let gp = curve.gamma_parity();
            let pre = if gp == 1 { "gamma * " } else { "" };
            s += &format!("model: {}\n", curve.model().name());
            s += &format!(
                "weights: {} (truncation order {})\n",
                weights_text(cfg),
                cfg.trunc()
            );
            s += &format!("gamma^2 = {}\n", curve.gamma_sq());
            for (k, u) in curve.u_over_gamma().iter().enumerate() {
                s += &format!("u_{}/gamma = {}\n", 2 * k + 1, u);
            }
            s += &format!("x = {pre}{}\n", curve.x_reduced());
            s += &format!("y = {pre}{}\n", curve.y_reduced());
            s += &format!("dx/dz = {pre}{}\n", curve.dx_reduced());
            s += &format!(
                "branch points: x(+1) = {pre}{}, x(-1) = {pre}{}\n",
                curve.branch_plus(),
                curve.branch_minus()
            );
            s
        }
    };
    emit(&args.common.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// omega

#[derive(Serialize)]
struct PoleJson {
    point: i64,
    order: u32,
}

#[derive(Serialize)]
struct OmegaTermJson {
    poles: Vec<PoleJson>,
    coefficient: Vec<SeriesTermJson>,
}

#[derive(Serialize)]
struct OmegaJson {
    model: String,
    genus: u32,
    legs: u32,
    weights: Vec<WeightJson>,
    trunc: u32,
    terms: Vec<OmegaTermJson>,
}

fn omega_json(model: Model, cfg: &Arc<WeightConfig>, form: &OmegaForm) -> OmegaJson {
    OmegaJson {
        model: model.name().into(),
        genus: form.genus(),
        legs: form.legs(),
        weights: weights_json(cfg),
        trunc: cfg.trunc(),
        terms: form
            .terms()
            .map(|(key, coeff)| OmegaTermJson {
                poles: key
                    .iter()
                    .map(|&(p, k)| PoleJson {
                        point: p.value(),
                        order: k,
                    })
                    .collect(),
                coefficient: series_json(coeff),
            })
            .collect(),
    }
}

fn cmd_omega(args: OmegaArgs) -> Result<ExitCode, Error> {
    let engine = build_engine(&args.common)?;
    let form = engine.omega(args.g, args.n).map_err(|e| match e {
        Error::UnstableTopology { g, n } => Error::InvalidRequest(format!(
            "(g, n) = ({g}, {n}) is unstable; use `counts --g 0 --lengths <2l>` (disk) or \
             `counts --g 0 --lengths <2l1>,<2l2>` (cylinder) instead"
        )),
        other => other,
    })?;
    let cfg = engine.curve().config();
    let content = match args.common.format {
        Format::Json => {
            serde_json::to_string_pretty(&omega_json(engine.curve().model(), cfg, &form))
                .expect("serializable")
                + "\n"
        }
        Format::Csv => {
            return Err(Error::InvalidRequest(
                "omega output supports text and json formats".into(),
            ))
        }
        Format::Text => format!(
            "omega_({},{}) [{}; weights: {}; N={}] =\n  {}\n",
            args.g,
            args.n,
            engine.curve().model().name(),
            weights_text(cfg),
            cfg.trunc(),
            form
        ),
    };
    emit(&args.common.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// counts

#[derive(Serialize)]
struct CountsJson {
    model: String,
    genus: u32,
    lengths: Vec<u32>,
    weights: Vec<WeightJson>,
    trunc: u32,
    series: Vec<SeriesTermJson>,
}

fn parse_table_spec(spec: &str) -> Result<(u32, Vec<u32>), Error> {
    let (g, lens) = spec.split_once(':').ok_or_else(|| {
        Error::InvalidRequest(format!("table spec '{spec}' must look like G:L1[,L2,…]"))
    })?;
    let genus = g
        .trim()
        .parse()
        .map_err(|_| Error::InvalidRequest(format!("cannot parse genus in table spec '{spec}'")))?;
    let lengths = lens
        .split(',')
        .map(|l| l.trim().parse::<u32>())
        .collect::<Result<Vec<u32>, _>>()
        .map_err(|_| Error::InvalidRequest(format!("cannot parse lengths in '{spec}'")))?;
    Ok((genus, lengths))
}

fn cmd_counts(args: CountsArgs) -> Result<ExitCode, Error> {
    let engine = build_engine(&args.common)?;
    let cfg = engine.curve().config().clone();
    let mut requests: Vec<(u32, Vec<u32>)> = Vec::new();
    match (args.g, args.lengths.is_empty()) {
        (Some(g), false) => requests.push((g, args.lengths.clone())),
        (None, true) => {}
        _ => {
            return Err(Error::InvalidRequest(
                "--g and --lengths must be given together".into(),
            ))
        }
    }
    for spec in &args.table {
        requests.push(parse_table_spec(spec)?);
    }
    if requests.is_empty() {
        return Err(Error::InvalidRequest(
            "nothing to compute: pass --g/--lengths or --table".into(),
        ));
    }
    let mut tables: Vec<CountTable> = Vec::new();
    for (g, lengths) in &requests {
        validate_truncation(engine.curve().model(), *g, lengths, &cfg)?;
        tables.push(counts(&engine, *g, lengths)?);
    }
    let content = match args.common.format {
        Format::Json => {
            let json: Vec<CountsJson> = tables
                .iter()
                .map(|t| CountsJson {
                    model: t.model().name().into(),
                    genus: t.genus(),
                    lengths: t.lengths().to_vec(),
                    weights: weights_json(&cfg),
                    trunc: cfg.trunc(),
                    series: series_json(t.series()),
                })
                .collect();
            let body = if json.len() == 1 {
                serde_json::to_string_pretty(&json[0]).expect("serializable")
            } else {
                serde_json::to_string_pretty(&json).expect("serializable")
            };
            body + "\n"
        }
        Format::Csv => {
            if cfg.arity() > 1 {
                return Err(Error::InvalidRequest(
                    "csv output requires at most one active weight".into(),
                ));
            }
            let mut s = String::from("order");
            for t in &tables {
                s += &format!(",{}", t.label());
            }
            s.push('\n');
            let columns: Vec<Vec<String>> = tables
                .iter()
                .map(|t| {
                    if cfg.arity() == 0 {
                        vec![format_rat(&t.series().constant_term())]
                    } else {
                        (0..=cfg.trunc() as u16)
                            .map(|i| format_rat(&t.series().coeff(&[i])))
                            .collect()
                    }
                })
                .collect();
            let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
            for row in 0..rows {
                s += &row.to_string();
                for col in &columns {
                    s += &format!(",{}", col.get(row).cloned().unwrap_or_default());
                }
                s.push('\n');
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for t in &tables {
                s += &format!(
                    "{} [{}; weights: {}] = {}\n",
                    t.label(),
                    t.model().name(),
                    weights_text(&cfg),
                    t.series()
                );
            }
            s += &format!("coefficients exact through total degree {}\n", cfg.trunc());
            s
        }
    };
    emit(&args.common.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// verify

#[derive(Serialize)]
struct VerifyJson {
    suite: String,
    pass: bool,
    suites: Vec<SuiteReport>,
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let fault = args.inject_sign_fault;
    let suites: Vec<SuiteReport> = match args.suite.as_str() {
        "all" => verify::run_all(fault)?,
        "curve" => vec![verify::suite_curve(args.trunc.unwrap_or(6))?],
        "structure" => vec![verify::suite_structure(args.trunc.unwrap_or(3), fault)?],
        "unstable" => vec![verify::suite_unstable()?],
        "genus0" => vec![verify::suite_genus0(args.trunc.unwrap_or(3), 3)?],
        "omega11" => vec![verify::suite_omega11()?],
        "golden" => vec![verify::suite_golden(fault)?],
        "acceptance" => {
            return cmd_verify_acceptance(&args);
        }
        other => {
            return Err(Error::InvalidRequest(format!(
                "unknown suite '{other}' (expected all, curve, structure, unstable, genus0, \
                 omega11, golden or acceptance)"
            )))
        }
    };
    let pass = suites.iter().all(SuiteReport::passed);
    let content = match args.format {
        Format::Json => {
            let json = VerifyJson {
                suite: args.suite.clone(),
                pass,
                suites,
            };
            serde_json::to_string_pretty(&json).expect("serializable") + "\n"
        }
        Format::Csv => {
            return Err(Error::InvalidRequest(
                "verify output supports text and json formats".into(),
            ))
        }
        Format::Text => {
            let mut s = String::new();
            for suite in &suites {
                s += &format!("suite {}:\n", suite.suite);
                for c in &suite.checks {
                    let verdict = if c.pass {
                        "PASS"
                    } else if c.documented_defect {
                        "DEFECT"
                    } else {
                        "FAIL"
                    };
                    s += &format!("  [{verdict}] {}", c.name);
                    if !c.pass {
                        s += &format!(" — {}", c.detail);
                    }
                    s.push('\n');
                }
            }
            s += if pass {
                "verification passed\n"
            } else {
                "verification FAILED\n"
            };
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_verify_acceptance(args: &VerifyArgs) -> Result<ExitCode, Error> {
    let results = verify::acceptance()?;
    let pass = results.iter().all(|r| r.pass || r.documented_defect);
    let content = match args.format {
        Format::Json => serde_json::to_string_pretty(&results).expect("serializable") + "\n",
        Format::Csv => {
            return Err(Error::InvalidRequest(
                "verify output supports text and json formats".into(),
            ))
        }
        Format::Text => {
            let mut s = String::new();
            for r in &results {
                let verdict = if r.pass {
                    "PASS"
                } else if r.documented_defect {
                    "FAIL (documented reference defect)"
                } else {
                    "FAIL"
                };
                s += &format!("criterion {}: {verdict} — {}\n", r.index, r.title);
                if !r.pass {
                    s += &format!("  {}\n", r.detail);
                }
            }
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
