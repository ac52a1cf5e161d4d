//! `crham`: cross-resonance effective Hamiltonians from the command line.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crham::frames::{j_from_xi, xi_static};
use crham::pipeline::{effective_cr, qubit_analytic, qubit_least_action, third_order_coefficients, Method};
use crham::sweep::{evaluate_point, render, run_sweep, MethodKind, OutputFormat, RowStatus, SweepTable};
use crham::{DeviceParams, DriveSpec, Error, SweepConfig};

#[derive(Parser)]
#[command(name = "crham", version, about = "Effective Hamiltonians of the cross-resonance gate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the drive amplitude and/or detuning and write the Pauli table.
    Sweep(RunArgs),
    /// Evaluate a single operating point.
    Point {
        #[command(flatten)]
        run: RunArgs,
        /// Control drive amplitude (GHz).
        #[arg(long)]
        omega: Option<f64>,
        /// Control-target detuning (GHz); moves the control frequency.
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Check the numerics against the analytic oracles.
    Validate,
    /// Exchange coupling J from a measured static ZZ rate.
    Jcal {
        /// Static ZZ rate xi (GHz).
        #[arg(long)]
        xi: f64,
        /// Control-target detuning (GHz).
        #[arg(long, default_value_t = 0.2)]
        delta: f64,
        #[arg(long, default_value_t = -0.33, allow_hyphen_values = true)]
        delta1: f64,
        #[arg(long, default_value_t = -0.33, allow_hyphen_values = true)]
        delta2: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Pert,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// `section.key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Perturbative order.
    #[arg(long)]
    order: Option<usize>,
    /// Levels kept per transmon.
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    threads: Option<usize>,
    /// Exit with status 3 if any row is not ok.
    #[arg(long)]
    strict: bool,
    /// Extra `section.key=value` override; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

impl RunArgs {
    fn load(&self) -> Result<SweepConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => SweepConfig::from_path(path).map_err(|e| match e {
                Error::Io { path, source } => Error::config(None, path.display().to_string(), source.to_string()),
                other => other,
            })?,
            None => SweepConfig::default(),
        };
        for item in &self.overrides {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::config(None, item.as_str(), "expected KEY=VALUE"))?;
            cfg.set(key.trim(), value.trim())?;
        }
        if let Some(m) = self.method {
            cfg.method = match m {
                MethodArg::Exact => MethodKind::Exact,
                MethodArg::Pert => MethodKind::Pert,
            };
        }
        if let Some(order) = self.order {
            cfg.order = order;
        }
        if let Some(levels) = self.levels {
            cfg.device.levels = levels;
        }
        if let Some(out) = &self.out {
            cfg.output_path = Some(out.clone());
        }
        if let Some(f) = self.format {
            cfg.format = match f {
                FormatArg::Csv => OutputFormat::Csv,
                FormatArg::Json => OutputFormat::Json,
            };
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn write_table(table: &SweepTable) -> Result<(), Error> {
    let text = render(table, table.config.format)?;
    match &table.config.output_path {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| Error::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn finish(table: &SweepTable, strict: bool) -> Result<ExitCode, Error> {
    write_table(table)?;
    if strict && !table.all_ok() {
        let bad = table.rows.iter().filter(|r| r.status != RowStatus::Ok).count();
        eprintln!("{bad} of {} rows have non-ok status", table.rows.len());
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn point(run: &RunArgs, omega: Option<f64>, delta: Option<f64>) -> Result<ExitCode, Error> {
    let mut cfg = run.load()?;
    if let Some(d) = delta {
        cfg.device = cfg.device.with_detuning(d);
    }
    let omega = omega.unwrap_or(cfg.omega);
    let row = evaluate_point(&cfg, &cfg.device, omega);
    if run.format.is_none() && cfg.output_path.is_none() {
        println!("delta = {} GHz, omega = {} GHz, status = {}", row.delta_ghz, row.omega_ghz, row.status.as_str());
        if let Some(c) = row.coefficients_mhz {
            for (label, v) in crham::operators::PAULI_LABELS.iter().zip(c) {
                if v != 0.0 {
                    println!("{label:>3} {v:+.6} MHz");
                }
            }
        }
        if let Some(i) = row.i_metric {
            println!("I(H_eff) = {i:.6}");
        }
        let code = if run.strict && row.status != RowStatus::Ok { 3 } else { 0 };
        return Ok(ExitCode::from(code));
    }
    finish(&SweepTable { config: cfg, rows: vec![row] }, run.strict)
}

fn check(name: &str, ok: bool, detail: String) -> bool {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn validate() -> Result<ExitCode, Error> {
    let p = DeviceParams::benchmark();
    let mut all = true;

    let j = j_from_xi(277e-6, p.delta1, p.delta2, p.detuning())?;
    all &= check("J from 277 kHz static ZZ", (j - 3.8e-3).abs() <= 0.02e-3, format!("{:.4} MHz", j * 1e3));
    let xi = xi_static(j, p.delta1, p.delta2, p.detuning())?;
    all &= check("xi(J(xi)) round trip", (xi - 277e-6).abs() < 1e-12, format!("{:.6} kHz", xi * 1e6));

    let mut worst: f64 = 0.0;
    for &(jj, d, w) in &[(3.8e-3, 0.2, 0.02), (2e-3, 0.1, 0.05), (5e-3, 0.3, 0.01)] {
        let t = qubit_least_action(jj, d, w)?;
        let q = qubit_analytic(jj, d, w);
        worst = worst.max((t.coeff("ZX") - q.coeff("ZX")).abs() / (jj * jj / d));
    }
    all &= check("qubit model ZX vs closed form", worst <= 5.0, format!("worst gap {worst:.3} J^2/Delta"));

    let two = effective_cr(&p.with_levels(2), &DriveSpec::control_x(0.02), Method::Exact)?;
    let q = qubit_analytic(p.j, p.detuning(), 0.02);
    let gap = (two.coeff("ZX") - q.coeff("ZX")).abs();
    all &= check("two-level transmons vs qubit model", gap <= 1e-5, format!("ZX gap {:.3e} GHz", gap));

    let exact = effective_cr(&p, &DriveSpec::control_x(0.02), Method::Exact)?;
    let pert = effective_cr(&p, &DriveSpec::control_x(0.02), Method::Perturbative { order: 3 })?;
    let closed = third_order_coefficients(p.j, p.detuning(), p.delta1, p.delta2, 0.02)?;
    for label in ["ZX", "IX"] {
        let rel = (exact.coeff(label) - pert.coeff(label)).abs() / exact.coeff(label).abs();
        all &= check(&format!("{label} exact vs third order at 20 MHz"), rel <= 0.05, format!("{:.3}%", rel * 100.0));
        let khz = (closed.mhz(label) - pert.mhz(label)).abs() * 1e3;
        println!("     {label} closed form vs numeric third order: {khz:.3} kHz");
    }
    let y = exact.coeff("IY").abs().max(exact.coeff("ZY").abs());
    all &= check("no IY/ZY without cross-talk", y <= 1e-9, format!("{y:.1e} GHz"));

    Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Sweep(args) => {
            let cfg = args.load()?;
            let table = run_sweep(&cfg, args.threads)?;
            finish(&table, args.strict)
        }
        Command::Point { run, omega, delta } => point(&run, omega, delta),
        Command::Validate => validate(),
        Command::Jcal {
            xi,
            delta,
            delta1,
            delta2,
        } => {
            let j = j_from_xi(xi, delta1, delta2, delta)?;
            println!("J = {j:.9e} GHz ({:.6} MHz)", j * 1e3);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Config { .. } => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
