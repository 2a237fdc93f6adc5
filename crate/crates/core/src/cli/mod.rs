//! Command-line front end.  Map arguments are file paths holding a map
//! literal, or the literal itself.

pub mod config;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rittdyn::chebylattes::{chebyshev, lattes_flexible, power_map};
use rittdyn::correspondence::{graph, orbit_closure, verify_lemma4, Correspondence};
use rittdyn::error::{Error, Result};
use rittdyn::exponents::{exceptionality_probe, lyapunov_estimate, ProbeConfig};
use rittdyn::golden::{run_golden_suite, GoldenConfig};
use rittdyn::parse::{parse_map, parse_point, parse_scalar};
use rittdyn::periodic::{multiplier_spectrum, periodic_polynomial, verify_multiplier_identity};
use rittdyn::ratmap::{iterate_capped, ProjPoint, RationalMap};
use rittdyn::ritt::{common_iterate_equal_degree, common_iterate_general, ritt_sequence};
use rittdyn::semigroup::{
    action_table, classifier_phi, julia_proximity, orbit, verify_identity_eq8_capped, Classification, OrbitStatus,
};

use config::{Format, RunConfig};
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "rittdyn", version, about = "Commuting rational maps: exact checks and numeric probes")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// TOML file with RunConfig keys; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Coefficient field, "Q" or "Q(zeta<k>)".
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub degree_cap: Option<u64>,
    #[arg(long, global = true)]
    pub budget_steps: Option<usize>,
    #[arg(long, global = true)]
    pub budget_orbit: Option<usize>,
    #[arg(long, global = true)]
    pub budget_kmax: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exceptional map generators.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Ritt sequences and common iterates.
    #[command(subcommand)]
    Ritt(RittCmd),
    /// Correspondences and their orbit closures.
    #[command(subcommand)]
    Corr(CorrCmd),
    /// Periodic points and multipliers.
    #[command(subcommand)]
    Per(PerCmd),
    /// Lyapunov and characteristic exponent probes.
    #[command(subcommand)]
    Exp(ExpCmd),
    /// Exact orbits of map semigroups.
    #[command(subcommand)]
    Orbit(OrbitCmd),
    /// Composition identities.
    #[command(subcommand)]
    Identity(IdentityCmd),
    /// Runs every reference check; exit 1 on any failure.
    Golden,
}

#[derive(Subcommand, Debug)]
pub enum GenCmd {
    Chebyshev {
        d: u32,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        sign: i8,
    },
    Power {
        d: u32,
        /// Multiply by ζ_k.
        #[arg(long, default_value_t = 1)]
        zeta: u32,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        zeta_exp: i64,
        #[arg(long)]
        inverse: bool,
    },
    /// Flexible Lattès map of multiplication by m on y² = x³ + ax + b.
    Lattes {
        m: u32,
        #[arg(allow_negative_numbers = true)]
        a: String,
        #[arg(allow_negative_numbers = true)]
        b: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum RittCmd {
    Seq { f: String, g: String },
    CommonIterate { f: String, g: String },
}

#[derive(Subcommand, Debug)]
pub enum CorrCmd {
    Graph {
        a: String,
        b: String,
    },
    Closure {
        a: String,
        b: String,
        #[arg(long)]
        kmax: Option<usize>,
    },
    Lemma4 {
        f: String,
        g: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum PerCmd {
    Poly { f: String, n: u32 },
    Multipliers { f: String, n: u32 },
    Eq2 { f: String, g: String, n: u32, p: u32 },
}

#[derive(Subcommand, Debug)]
pub enum ExpCmd {
    Lyapunov {
        f: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        breadth: Option<usize>,
    },
    Probe {
        f: String,
        #[arg(long, default_value_t = rittdyn::exponents::DEFAULT_N_MAX)]
        nmax: u32,
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum OrbitCmd {
    Explore {
        /// File with one map per line, or maps separated by ';'.
        gens: String,
        #[arg(long, default_value = "0")]
        start: String,
        #[arg(long)]
        budget: Option<usize>,
    },
    Phi {
        g: String,
        big_f: String,
        /// JSON document with a "points" array, as written by `orbit explore`.
        orbit: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum IdentityCmd {
    Eq8 {
        g: String,
        h: String,
        #[arg(long = "N", default_value_t = 1)]
        n: u32,
    },
}

/// The text of a file argument, or the argument itself.
fn source(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Error::Precondition(format!("cannot read {arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn load_map(arg: &str, k: u32) -> Result<RationalMap> {
    parse_map(&source(arg)?, k)
}

fn load_generators(arg: &str, k: u32) -> Result<Vec<RationalMap>> {
    let text = source(arg)?;
    text.split(['\n', ';'])
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_map(l, k))
        .collect()
}

pub fn resolve_config(g: &GlobalArgs) -> Result<RunConfig> {
    let mut cfg = match &g.config {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", p.display())))?;
            RunConfig::from_toml(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(f) = &g.field {
        cfg.field = f.clone();
    }
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if let Some(f) = g.format {
        cfg.format = f;
    }
    if let Some(c) = g.degree_cap {
        cfg.degree_cap = c;
    }
    if let Some(b) = g.budget_steps {
        cfg.ritt_steps = b;
    }
    if let Some(b) = g.budget_orbit {
        cfg.orbit_budget = b;
    }
    if let Some(b) = g.budget_kmax {
        cfg.k_max = b;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn point_text(p: &ProjPoint) -> String {
    p.to_string()
}

/// Runs one command; the report goes to stdout, the exit code back to main.
pub fn execute(cli: &Cli) -> Result<(Report, i32)> {
    let cfg = resolve_config(&cli.global)?;
    let k = cfg.conductor()?;
    let mut r = Report::new();
    let mut code = 0;
    match &cli.command {
        Command::Gen(cmd) => {
            let f = match cmd {
                GenCmd::Chebyshev { d, sign } => {
                    if *d == 0 {
                        return Err(Error::Precondition("degree must be positive".into()));
                    }
                    chebyshev(*d, *sign)
                }
                GenCmd::Power {
                    d,
                    zeta,
                    zeta_exp,
                    inverse,
                } => power_map(*d, *inverse, *zeta, *zeta_exp)?,
                GenCmd::Lattes { m, a, b } => lattes_flexible(*m, &parse_scalar(a, k)?, &parse_scalar(b, k)?)?,
            };
            r.put_exact("map", &f).put("degree", f.degree());
        }
        Command::Ritt(RittCmd::Seq { f, g }) => {
            let (f, g) = (load_map(f, k)?, load_map(g, k)?);
            let seq = ritt_sequence(&f, &g, cfg.ritt_steps)?;
            let steps: Vec<Value> = seq
                .steps
                .iter()
                .map(|s| json!({"r": s.r, "a": s.a.to_string(), "b": s.b.to_string(), "u": s.u.to_string()}))
                .collect();
            r.put("degrees", seq.steps.iter().map(|s| s.r).collect::<Vec<_>>())
                .put("terminated", seq.terminated)
                .put("steps", steps);
        }
        Command::Ritt(RittCmd::CommonIterate { f, g }) => {
            let (f, g) = (load_map(f, k)?, load_map(g, k)?);
            if f.degree() == g.degree() {
                let p = common_iterate_equal_degree(&f, &g, cfg.ritt_steps, cfg.max_order)?;
                r.put("p", p);
            } else {
                let c = common_iterate_general(&f, &g, cfg.degree_cap, cfg.ritt_steps, cfg.max_order)?;
                r.put("f_exponent", c.f_exponent).put("g_exponent", c.g_exponent);
            }
        }
        Command::Corr(cmd) => match cmd {
            CorrCmd::Graph { a, b } => {
                let c = Correspondence::new(load_map(a, k)?, load_map(b, k)?);
                let curve = graph(&c)?;
                let (dw, dx) = curve.bidegree();
                r.put_exact("curve", &curve).put("bidegree", vec![dw, dx]);
            }
            CorrCmd::Closure { a, b, kmax } => {
                let c = Correspondence::new(load_map(a, k)?, load_map(b, k)?);
                let closure = orbit_closure(&c, kmax.unwrap_or(cfg.k_max))?;
                r.put("s_c", closure.s_c)
                    .put("stabilized_at", closure.stabilized_at)
                    .put_exact("curve", &closure.curve);
            }
            CorrCmd::Lemma4 { f, g } => {
                let rep = verify_lemma4(&load_map(f, k)?, &load_map(g, k)?, cfg.k_max)?;
                r.put("p", rep.p)
                    .put("d", rep.d)
                    .put("s_c", rep.s_c)
                    .put("bound", rep.bound)
                    .put("bound_ok", rep.bound_ok);
            }
        },
        Command::Per(cmd) => match cmd {
            PerCmd::Poly { f, n } => {
                let f = load_map(f, k)?;
                iterate_capped(&f, *n, cfg.degree_cap)?;
                let s = periodic_polynomial(&f, *n)?;
                r.put_exact("phi", &s.phi)
                    .put("infinity_is_periodic", s.infinity_is_periodic)
                    .put("infinity_multiplicity", s.infinity_multiplicity)
                    .put("count", s.total_count());
            }
            PerCmd::Multipliers { f, n } => {
                let f = load_map(f, k)?;
                iterate_capped(&f, *n, cfg.degree_cap)?;
                let m = multiplier_spectrum(&f, *n)?;
                r.put("spectrum", m.fmt_var("w")).put("degree", m.deg());
            }
            PerCmd::Eq2 { f, g, n, p } => {
                let (f, g) = (load_map(f, k)?, load_map(g, k)?);
                iterate_capped(&f, n * p, cfg.degree_cap)?;
                r.put("holds", verify_multiplier_identity(&f, &g, *n, *p)?);
            }
        },
        Command::Exp(cmd) => match cmd {
            ExpCmd::Lyapunov { f, depth, breadth } => {
                let f = load_map(f, k)?;
                let (depth, breadth) = (depth.unwrap_or(cfg.depth), breadth.unwrap_or(cfg.breadth));
                let e = lyapunov_estimate(&f, depth, breadth, cfg.seed)?;
                r.put("lyapunov", e.mean)
                    .put("standard_error", e.standard_error)
                    .put("samples", e.samples)
                    .put("depth", depth)
                    .put("breadth", breadth)
                    .put("seed", cfg.seed);
            }
            ExpCmd::Probe { f, nmax, depth } => {
                let f = load_map(f, k)?;
                let pc = ProbeConfig {
                    n_max: *nmax,
                    depth: depth.unwrap_or(cfg.depth),
                    breadth: cfg.breadth,
                    seed: cfg.seed,
                    margin: cfg.margin,
                };
                let rep = exceptionality_probe(&f, &pc)?;
                r.put("lyapunov", rep.lyapunov.mean)
                    .put("standard_error", rep.lyapunov.standard_error)
                    .put("cycles", rep.census.cycles.len())
                    .put("count_above", rep.count_above)
                    .put("top_period_deviation", rep.top_period_deviation)
                    .put("verdict", serde_json::to_value(rep.verdict).expect("unit enum"))
                    .put("cycle_reports", serde_json::to_value(&rep.census.cycles).expect("plain data"))
                    .put("seed", cfg.seed);
            }
        },
        Command::Orbit(cmd) => match cmd {
            OrbitCmd::Explore { gens, start, budget } => {
                let gens = load_generators(gens, k)?;
                let start = parse_point(start, k)?;
                let ex = orbit(&gens, &start, budget.unwrap_or(cfg.orbit_budget));
                r.put("status", serde_json::to_value(ex.status).expect("unit enum"))
                    .put("size", ex.points.len());
                if ex.status == OrbitStatus::Closed {
                    let table = action_table(&gens, &ex.points)?;
                    r.put("points", ex.points.iter().map(point_text).collect::<Vec<_>>())
                        .put("actions", serde_json::to_value(&table).expect("plain data"))
                        .put(
                            "cycle_types",
                            table.iter().map(|a| json!(a.cycle_type())).collect::<Vec<_>>(),
                        )
                        // relative to the first generator
                        .put(
                            "julia_proximity",
                            julia_proximity(&gens[0], &ex.points, 16)
                                .into_iter()
                                .map(|v| if v.is_finite() { json!(v) } else { json!("-inf") })
                                .collect::<Vec<_>>(),
                        );
                }
            }
            OrbitCmd::Phi { g, big_f, orbit } => {
                let text = std::fs::read_to_string(orbit)
                    .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", orbit.display())))?;
                let doc: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
                    pos: e.column(),
                    msg: e.to_string(),
                })?;
                let points = doc["points"]
                    .as_array()
                    .ok_or_else(|| Error::Parse {
                        pos: 0,
                        msg: "missing \"points\" array".into(),
                    })?
                    .iter()
                    .map(|p| {
                        p.as_str()
                            .ok_or_else(|| Error::Parse {
                                pos: 0,
                                msg: "points must be strings".into(),
                            })
                            .and_then(|s| parse_point(s, k))
                    })
                    .collect::<Result<Vec<_>>>()?;
                match classifier_phi(&load_map(g, k)?, &load_map(big_f, k)?, &points)? {
                    Classification::Defined { residue, action } => {
                        r.put("residue", residue).put("action", action.images);
                    }
                    Classification::Undefined => {
                        r.put("classification", "undefined");
                    }
                }
            }
        },
        Command::Identity(IdentityCmd::Eq8 { g, h, n }) => {
            r.put(
                "holds",
                verify_identity_eq8_capped(&load_map(g, k)?, &load_map(h, k)?, *n, cfg.degree_cap)?,
            );
        }
        Command::Golden => {
            let gc = GoldenConfig {
                seed: cfg.seed.max(GoldenConfig::default().seed),
                k_max: cfg.k_max,
                depth: cfg.depth,
                breadth: cfg.breadth,
                lyapunov_tol: cfg.lyapunov_tol,
                exponent_margin: cfg.margin,
                ..GoldenConfig::default()
            };
            let checks = run_golden_suite(&gc);
            for c in &checks {
                let line = format!(
                    "{} ({:.2}s) {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.seconds,
                    c.detail
                );
                r.put(c.name, line);
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            r.put("failed", failed);
            if failed > 0 {
                code = 1;
            }
        }
    }
    Ok((r, code))
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let format = resolve_config(&cli.global).map(|c| c.format).unwrap_or(Format::Text);
    match execute(&cli) {
        Ok((report, code)) => {
            println!("{}", report.render(format));
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
