//! Parameter sweeps over drive amplitude and detuning.

mod config;
mod output;

pub use config::{Axis, AxisName, MethodKind, OutputFormat, SweepConfig};
pub use output::{emit, parse_csv, parse_json, render, to_csv, to_json, CSV_HEADER};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::DriveSpec;
use crate::operators::DeviceParams;
use crate::pipeline::{effective_cr_detailed, Method, PipelineOptions};

/// Outcome of one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Ok,
    Pole,
    Degenerate,
    Error,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Pole => "pole",
            RowStatus::Degenerate => "degenerate",
            RowStatus::Error => "error",
        }
    }

    fn of(err: &Error) -> Self {
        match err {
            Error::Pole { .. } | Error::SmallDenominator { .. } => RowStatus::Pole,
            Error::DegenerateAssignment { .. } => RowStatus::Degenerate,
            _ => RowStatus::Error,
        }
    }
}

impl std::str::FromStr for RowStatus {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ok" => Ok(RowStatus::Ok),
            "pole" => Ok(RowStatus::Pole),
            "degenerate" => Ok(RowStatus::Degenerate),
            "error" => Ok(RowStatus::Error),
            other => Err(format!("unknown status `{other}`")),
        }
    }
}

/// One grid point. Coefficients are in MHz and absent unless `status` is ok.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub delta_ghz: f64,
    pub omega_ghz: f64,
    pub method: MethodKind,
    pub order: Option<usize>,
    pub coefficients_mhz: Option<[f64; 16]>,
    /// `I(H_eff)` from the exact back end.
    pub i_metric: Option<f64>,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub config: SweepConfig,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.status == RowStatus::Ok)
    }
}

/// Grid points in output order: `axis1` outer, `axis2` inner.
pub fn grid(config: &SweepConfig) -> Vec<(DeviceParams, f64)> {
    let apply = |name: AxisName, value: f64, params: &mut DeviceParams, omega: &mut f64| match name {
        AxisName::Omega => *omega = value,
        AxisName::Delta => *params = params.with_detuning(value),
        AxisName::Omega1 => params.omega1 = value,
    };
    let inner = config.axis2.map(|a| a.values()).unwrap_or_else(|| vec![f64::NAN]);
    let mut points = Vec::new();
    for v1 in config.axis1.values() {
        for &v2 in &inner {
            let mut params = config.device;
            let mut omega = config.omega;
            apply(config.axis1.name, v1, &mut params, &mut omega);
            if let Some(a2) = &config.axis2 {
                apply(a2.name, v2, &mut params, &mut omega);
            }
            points.push((params, omega));
        }
    }
    points
}

/// Evaluates a single grid point; failures become status rows.
pub fn evaluate_point(config: &SweepConfig, params: &DeviceParams, omega: f64) -> SweepRow {
    let mut drive = DriveSpec::with_crosstalk(omega, &config.crosstalk);
    drive.frequency = config.drive_frequency;
    let options = PipelineOptions {
        gap_tol: config.gap_tol,
        split_rest: config.split_rest,
    };
    let method = config.method();
    let mut row = SweepRow {
        delta_ghz: params.detuning(),
        omega_ghz: omega,
        method: config.method,
        order: match method {
            Method::Exact => None,
            Method::Perturbative { order } => Some(order),
        },
        coefficients_mhz: None,
        i_metric: None,
        status: RowStatus::Ok,
    };
    let outcome = effective_cr_detailed(params, &drive, method, &options).and_then(|o| {
        let c = o.table.coefficients.map(|v| v * 1e3);
        if c.iter().all(|v| v.is_finite()) {
            Ok((c, o.effectiveness))
        } else {
            Err(Error::NonFinite("Pauli coefficients"))
        }
    });
    match outcome {
        Ok((c, effectiveness)) => {
            row.coefficients_mhz = Some(c);
            row.i_metric = match method {
                Method::Exact => effectiveness,
                Method::Perturbative { .. } => effective_cr_detailed(params, &drive, Method::Exact, &options)
                    .ok()
                    .and_then(|o| o.effectiveness),
            }
            .filter(|v| v.is_finite());
        }
        Err(err) => {
            log::warn!("delta = {} GHz, omega = {} GHz: {err}", row.delta_ghz, row.omega_ghz);
            row.status = RowStatus::of(&err);
        }
    }
    row
}

/// Runs the sweep on `threads` workers (rayon's default when `None`).
/// Rows come back in grid order whatever the thread count.
pub fn run_sweep(config: &SweepConfig, threads: Option<usize>) -> Result<SweepTable> {
    config.validate()?;
    let points = grid(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let rows: Vec<SweepRow> =
        pool.install(|| points.par_iter().map(|(p, w)| evaluate_point(config, p, *w)).collect());
    let bad = rows.iter().filter(|r| r.status != RowStatus::Ok).count();
    log::info!("swept {} points, {bad} with non-ok status", rows.len());
    Ok(SweepTable {
        config: config.clone(),
        rows,
    })
}
