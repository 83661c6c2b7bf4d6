use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lykit::io::{self, Input};
use lykit::leeyang::{
    classify_high_temperature, delta_model, is_interior, is_ly, pair_model, sweep_membership, temperature_poly,
    Classification, MembershipOptions, MembershipVerdict, PairSpec, Status, SweepConfig, Target, TemperatureModel,
};
use lykit::radius::{inner_radius, inner_radius_grid, oracle_min_zero, OracleOptions, RadiusBounds, SearchOptions};
use lykit::spins::{
    classify_high_temperature_spins, is_ly_bm, roots_on_circle, temperature_block, univariate_lift, BlockPoly,
    SpinClassification, SpinPairForm, UnivariatePoly,
};
use lykit::stability::GridPoly;
use lykit::{LyError, C64};

const EXIT_OUT: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_ERROR: u8 = 3;
const EXIT_PARSE: u8 = 64;

const DEFAULT_TOL: f64 = 1e-6;
const DEFAULT_STEPS: usize = 41;

#[derive(Parser)]
#[command(name = "lykit", version, about = "Lee-Yang membership, inner radii and temperature sweeps")]
struct Cli {
    /// Membership and radius tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Initial cells per torus coordinate for certification.
    #[arg(long, global = true, default_value_t = SearchOptions::default().grid)]
    grid: usize,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Decide Lee-Yang membership; exit 0 = IN, 1 = OUT, 2 = UNDECIDED.
    Check {
        path: PathBuf,
        /// Test the interior instead (self-dual input only).
        #[arg(long)]
        interior: bool,
        /// Inverse temperature for model inputs.
        #[arg(long)]
        beta: Option<f64>,
    },
    /// Bracket the inner radius and run the zero oracle.
    Radius { path: PathBuf },
    /// Membership over a β grid for a temperature model.
    Sweep {
        path: PathBuf,
        #[arg(long)]
        beta_min: f64,
        #[arg(long)]
        beta_max: f64,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        /// Write the table here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// High-temperature classification of energies.
    Classify { path: PathBuf },
    /// Write the example models into a directory.
    Examples {
        #[arg(long, default_value = "examples")]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Other(String),
}

impl From<LyError> for Failure {
    fn from(e: LyError) -> Self {
        match e {
            LyError::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var("LYKIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let result = match &cli.command {
        Command::Check { path, interior, beta } => check(&cli, path, *interior, *beta),
        Command::Radius { path } => radius(&cli, path),
        Command::Sweep { path, beta_min, beta_max, steps, out } => sweep(&cli, path, *beta_min, *beta_max, *steps, out.as_deref()),
        Command::Classify { path } => classify(&cli, path),
        Command::Examples { out } => examples(out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn search(cli: &Cli) -> Result<SearchOptions, Failure> {
    if !(cli.tol > 0.0 && cli.tol < 1.0) {
        return Err(Failure::Other("--tol must lie in (0, 1)".into()));
    }
    if cli.grid < 8 {
        return Err(Failure::Other("--grid must be at least 8".into()));
    }
    Ok(SearchOptions { grid: cli.grid, ..SearchOptions::default() })
}

fn config_json(cli: &Cli, opts: &SearchOptions) -> Value {
    json!({ "tol": cli.tol, "grid": opts.grid, "max_cells": opts.max_cells })
}

fn config_line(cli: &Cli, opts: &SearchOptions) -> String {
    format!("config: tol={:e} grid={} max_cells={}", cli.tol, opts.grid, opts.max_cells)
}

fn read_input(path: &Path) -> Result<Input<f64>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
    Ok(io::parse_input(&text)?)
}

fn fmt_point(w: &[C64]) -> String {
    let parts: Vec<String> = w.iter().map(|z| format!("{:.9}{:+.9}i", z.re, z.im)).collect();
    format!("[{}]", parts.join(", "))
}

fn fmt_num(x: f64) -> String {
    if x.is_infinite() {
        "infinite".into()
    } else {
        format!("{x:.9}")
    }
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::In => 0,
        Status::Out => EXIT_OUT,
        Status::BoundaryUndecided => EXIT_UNDECIDED,
    }
}

fn print_verdict(cli: &Cli, opts: &SearchOptions, kind: &str, v: &MembershipVerdict<f64>, extra: Value) {
    if cli.format == Format::Json {
        let mut doc = v.to_json();
        doc["input"] = json!(kind);
        doc["config"] = config_json(cli, opts);
        if !extra.is_null() {
            doc["cross_check"] = extra;
        }
        println!("{}", serde_json::to_string_pretty(&doc).expect("serialisable"));
        return;
    }
    println!("input: {kind}");
    println!("status: {}", v.status.as_str());
    for (label, c) in &v.certificates {
        let margin = c.margin.map_or("-".to_string(), |m| format!("{m:.3e}"));
        println!("certificate: {label}: {} (margin {margin}, cells {})", c.verdict.as_str(), c.cells);
    }
    if let Some((target, w)) = &v.witness {
        let name = match target {
            Target::Psi => "polynomial",
            Target::PsiDagger => "dagger",
        };
        println!("witness: zero of {name} at {}", fmt_point(w));
    }
    if let Some(obj) = extra.as_object() {
        for (k, val) in obj {
            println!("{k}: {val}");
        }
    }
    println!("{}", config_line(cli, opts));
}

fn check(cli: &Cli, path: &Path, interior: bool, beta: Option<f64>) -> Outcome {
    let opts = search(cli)?;
    let membership = MembershipOptions { search: opts, ..MembershipOptions::default() };
    let input = read_input(path)?;
    let need_beta = || beta.ok_or_else(|| Failure::Other("model inputs need --beta".into()));
    let (kind, verdict, extra) = match input {
        Input::Poly(p) => {
            let v = if interior { is_interior(&p, cli.tol, &membership)? } else { is_ly(&p, cli.tol, &membership)? };
            ("multiaffine polynomial", v, Value::Null)
        }
        Input::Model(m) => {
            let p = temperature_poly(&m, need_beta()?)?;
            let v = if interior { is_interior(&p, cli.tol, &membership)? } else { is_ly(&p, cli.tol, &membership)? };
            ("temperature model", v, Value::Null)
        }
        Input::Block(b) => ("block polynomial", is_ly_bm(&b, cli.tol, &opts)?, Value::Null),
        Input::Spins { m, w } => ("spin model", is_ly_bm(&temperature_block(&w, &m, need_beta()?)?, cli.tol, &opts)?, Value::Null),
        Input::Univariate(u) => {
            let on_circle = roots_on_circle(&u, cli.tol)?;
            let v = is_ly(&univariate_lift(&u)?, cli.tol, &membership)?;
            ("univariate polynomial (symmetric lift)", v, json!({ "roots_on_circle": on_circle }))
        }
    };
    print_verdict(cli, &opts, kind, &verdict, extra);
    Ok(status_code(verdict.status))
}

fn radius_json(b: &RadiusBounds<f64>, oracle: Option<(f64, Option<Vec<C64>>)>) -> Value {
    let mut doc = b.to_json();
    if let Some((r, w)) = oracle {
        doc["oracle_upper"] = if r.is_finite() { json!(r) } else { json!("inf") };
        doc["oracle_witness"] = json!(w.map(|w| w.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()));
    }
    doc
}

fn radius(cli: &Cli, path: &Path) -> Outcome {
    let opts = search(cli)?;
    let (bounds, oracle) = match read_input(path)? {
        Input::Poly(p) => {
            let b = inner_radius(&p, cli.tol, &opts)?;
            let o = if p.is_constant() { None } else { Some(oracle_min_zero(&p, &OracleOptions::default())?) };
            (b, o)
        }
        Input::Block(b) => (inner_radius_grid(&b.to_grid(), cli.tol, &opts)?, None),
        Input::Univariate(u) => (inner_radius_grid(&GridPoly::new(vec![u.degree()], u.coeffs().to_vec()), cli.tol, &opts)?, None),
        _ => return Err(Failure::Other("radius needs a polynomial input".into())),
    };
    if cli.format == Format::Json {
        let mut doc = radius_json(&bounds, oracle);
        doc["config"] = config_json(cli, &opts);
        println!("{}", serde_json::to_string_pretty(&doc).expect("serialisable"));
    } else {
        if bounds.infinite {
            println!("radius: infinite");
        } else {
            println!("r_lo: {}", fmt_num(bounds.r_lo));
            println!("r_hi: {}", fmt_num(bounds.r_hi));
        }
        if bounds.stalled {
            println!("note: bisection stalled before reaching the tolerance");
        }
        if let Some(w) = &bounds.witness {
            println!("witness: {}", fmt_point(w));
        }
        if let Some((r, w)) = &oracle {
            println!("oracle_upper: {}", fmt_num(*r));
            if let Some(w) = w {
                println!("oracle_witness: {}", fmt_point(w));
            }
        }
        println!("{}", config_line(cli, &opts));
    }
    Ok(0)
}

fn sweep(cli: &Cli, path: &Path, beta_min: f64, beta_max: f64, steps: usize, out: Option<&Path>) -> Outcome {
    if !(beta_min > 0.0 && beta_min < beta_max) || steps < 2 {
        return Err(Failure::Usage(format!("empty sweep: need 0 < beta-min < beta-max and steps >= 2, got ({beta_min}, {beta_max}, {steps})")));
    }
    let opts = search(cli)?;
    let model = match read_input(path)? {
        Input::Model(m) => m,
        _ => return Err(Failure::Other("sweep needs a temperature model".into())),
    };
    let cfg = SweepConfig {
        tol: cli.tol,
        membership: MembershipOptions { search: opts, ..MembershipOptions::default() },
        ..SweepConfig::default()
    };
    let result = sweep_membership(&model, beta_min, beta_max, steps, &cfg)?;
    let body = match cli.format {
        Format::Json => {
            let mut doc = io::sweep_to_json(&result);
            doc["config"] = config_json(cli, &opts);
            serde_json::to_string_pretty(&doc).expect("serialisable") + "\n"
        }
        _ => io::sweep_to_csv(&result),
    };
    match out {
        Some(p) => {
            std::fs::write(p, body).map_err(|e| Failure::Other(format!("{}: {e}", p.display())))?;
            println!("points: {}", result.points.len());
            println!("transitions: {}", result.transitions.len());
            for t in &result.transitions {
                println!("  {} -> {} at beta {:.9} in [{:.9}, {:.9}]", t.from.as_str(), t.to.as_str(), t.beta, t.beta_lo, t.beta_hi);
            }
            println!("{}", config_line(cli, &opts));
        }
        None => print!("{body}"),
    }
    Ok(0)
}

fn classify(cli: &Cli, path: &Path) -> Outcome {
    let doc = match read_input(path)? {
        Input::Model(m) => match classify_high_temperature(&m, cli.tol)? {
            Classification::Accepted(d) => json!({
                "accepted": true,
                "w_pair": d.w_pair,
                "a": d.a,
                "b": [d.b.re, d.b.im],
                "residual": d.residual,
            }),
            Classification::Rejected(r) => json!({
                "accepted": false,
                "reason": format!("{:?}", r.reason),
                "subset": (0..m.n()).filter(|j| r.subset >> j & 1 == 1).map(|j| j + 1).collect::<Vec<_>>(),
                "value": [r.value.re, r.value.im],
            }),
        },
        Input::Spins { m, w } => match classify_high_temperature_spins(&w, &m, cli.tol)? {
            SpinClassification::Accepted(f) => json!({
                "accepted": true,
                "w_pair": f.w,
                "b": f.b,
                "residual": f.residual,
            }),
            SpinClassification::Rejected(r) => json!({
                "accepted": false,
                "reason": format!("{:?}", r.reason),
                "index": r.index,
                "value": r.value,
            }),
        },
        _ => return Err(Failure::Other("classify needs a temperature model or spin energies".into())),
    };
    if cli.format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("serialisable"));
    } else {
        let accepted = doc["accepted"].as_bool().unwrap_or(false);
        println!("classification: {}", if accepted { "ACCEPTED" } else { "REJECTED" });
        for (k, v) in doc.as_object().expect("object") {
            if k != "accepted" {
                println!("{k}: {v}");
            }
        }
        println!("config: tol={:e}", cli.tol);
    }
    Ok(0)
}

fn write_json(dir: &Path, name: &str, v: &Value) -> Result<(), Failure> {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(v).expect("serialisable") + "\n")
        .map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
}

fn examples(out: &Path) -> Outcome {
    std::fs::create_dir_all(out).map_err(|e| Failure::Other(format!("{}: {e}", out.display())))?;
    let re = |x: f64| C64::new(x, 0.0);
    for b in [0.5, 1.0, 2.0, 10.0] {
        write_json(out, &format!("delta3_b{b}.json"), &io::poly_to_json(&delta_model(3, re(b))?))?;
    }
    for b in [1.0, 1.2, 1.5, 1.8, 2.0, 3.0] {
        write_json(out, &format!("delta4_b{b}.json"), &io::poly_to_json(&delta_model(4, re(b))?))?;
    }
    let pair = pair_model(2, &[PairSpec { j: 0, k: 1, a: re(0.5), b: re(1.0) }])?;
    write_json(out, "pair_a0.5_b1.json", &io::poly_to_json(&pair))?;
    let linear = lykit::Poly::new(1, [(0, re(1.0)), (1, re(2.0))])?;
    write_json(out, "linear_1_2z.json", &io::poly_to_json(&linear))?;
    write_json(out, "spiral_model.json", &io::model_to_json(&TemperatureModel::<f64>::spiral()))?;
    write_json(out, "quad_model.json", &io::model_to_json(&TemperatureModel::<f64>::quad()))?;
    let ferro = TemperatureModel::pair_form(
        &[vec![0.0, 0.5, 0.2], vec![0.5, 0.0, 0.7], vec![0.2, 0.7, 0.0]],
        &[0.3, -0.2, 0.1],
        re(0.4),
    )?;
    write_json(out, "pair_form_model.json", &io::model_to_json(&ferro))?;
    let mut entries: Vec<_> = ferro.energies().iter().copied().enumerate().collect();
    entries[7].1 = entries[7].1.map(|w| w + re(0.8));
    write_json(out, "triple_model.json", &io::model_to_json(&TemperatureModel::new(3, entries)?))?;
    let m = [2usize, 2];
    let form = SpinPairForm { w: vec![vec![0.2, 1.0], vec![1.0, 0.0]], b: 0.1, residual: 0.0 };
    let spins: Vec<f64> = (0..9).map(|i| form.energy(&m, &[i % 3, i / 3])).collect();
    write_json(out, "spins_model.json", &io::spins_to_json(&m, &spins))?;
    let block = BlockPoly::new(vec![2], vec![re(1.0), re(0.25), re(1.0)])?;
    write_json(out, "block_quadratic.json", &io::block_to_json(&block))?;
    let uni = UnivariatePoly::new(vec![re(1.0), re(0.0), re(0.0), re(1.0)])?;
    write_json(out, "univariate_cubic.json", &io::univariate_to_json(&uni))?;
    println!("wrote examples to {}", out.display());
    Ok(0)
}
