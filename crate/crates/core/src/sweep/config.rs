//! `section.key = value` configuration files.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::CrosstalkSpec;
use crate::operators::DeviceParams;
use crate::perturbation::DEFAULT_GAP_TOL;
use crate::pipeline::Method;

/// Swept quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxisName {
    /// Control drive amplitude.
    Omega,
    /// Control-target detuning; moves `omega1`, keeps `omega2`.
    Delta,
    /// Control frequency.
    #[serde(rename = "omega1")]
    Omega1,
}

impl FromStr for AxisName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "Omega" => Ok(AxisName::Omega),
            "Delta" => Ok(AxisName::Delta),
            "omega1" => Ok(AxisName::Omega1),
            other => Err(format!("unknown axis `{other}` (expected Omega, Delta or omega1)")),
        }
    }
}

/// Evenly spaced axis, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: AxisName,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| if k + 1 == self.points { self.stop } else { self.start + span * (k as f64) / last })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodKind {
    Exact,
    Pert,
}

impl FromStr for MethodKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(MethodKind::Exact),
            "pert" | "perturbative" => Ok(MethodKind::Pert),
            other => Err(format!("unknown method `{other}` (expected exact or pert)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// A full sweep description. Unset keys take the benchmark device and a
/// 20 MHz exact point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub device: DeviceParams,
    /// Drive amplitude when `Omega` is not swept (GHz).
    pub omega: f64,
    /// Drive frequency override (GHz).
    pub drive_frequency: Option<f64>,
    pub crosstalk: CrosstalkSpec,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub method: MethodKind,
    pub order: usize,
    pub gap_tol: f64,
    pub split_rest: bool,
    /// Not echoed into JSON output, so the bytes do not depend on where they land.
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            device: DeviceParams::benchmark(),
            omega: 0.02,
            drive_frequency: None,
            crosstalk: CrosstalkSpec::none(),
            axis1: Axis {
                name: AxisName::Omega,
                start: 0.02,
                stop: 0.02,
                points: 2,
            },
            axis2: None,
            method: MethodKind::Exact,
            order: 3,
            gap_tol: DEFAULT_GAP_TOL,
            split_rest: false,
            output_path: None,
            format: OutputFormat::Csv,
        }
    }
}

#[derive(Default)]
struct PartialAxis {
    name: Option<(AxisName, usize)>,
    start: Option<(f64, usize)>,
    stop: Option<(f64, usize)>,
    points: Option<(usize, usize)>,
}

impl PartialAxis {
    fn is_empty(&self) -> bool {
        self.name.is_none() && self.start.is_none() && self.stop.is_none() && self.points.is_none()
    }

    fn finish(self, section: &str) -> Result<Axis> {
        let missing = |key: &str| Error::config(None, format!("{section}.{key}"), "required when the axis is given");
        Ok(Axis {
            name: self.name.ok_or_else(|| missing("name"))?.0,
            start: self.start.ok_or_else(|| missing("start"))?.0,
            stop: self.stop.ok_or_else(|| missing("stop"))?.0,
            points: self.points.ok_or_else(|| missing("points"))?.0,
        })
    }
}

fn parse_value<T: FromStr>(line: Option<usize>, key: &str, raw: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    raw.parse::<T>()
        .map_err(|e| Error::config(line, key, format!("cannot parse `{raw}`: {e}")))
}

impl SweepConfig {
    pub fn method(&self) -> Method {
        match self.method {
            MethodKind::Exact => Method::Exact,
            MethodKind::Pert => Method::Perturbative { order: self.order },
        }
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses a configuration, one `section.key = value` per line; `#` starts
    /// a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut axes = [PartialAxis::default(), PartialAxis::default()];
        for (idx, raw_line) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw_line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| Error::config(Some(line), content, "expected `section.key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                return Err(Error::config(Some(line), key, "missing value"));
            }
            match key {
                "axis1.name" | "axis2.name" | "axis1.start" | "axis2.start" | "axis1.stop" | "axis2.stop"
                | "axis1.points" | "axis2.points" => {
                    let slot = &mut axes[usize::from(key.starts_with("axis2"))];
                    match &key[6..] {
                        "name" => slot.name = Some((parse_value(Some(line), key, value)?, line)),
                        "start" => slot.start = Some((parse_value(Some(line), key, value)?, line)),
                        "stop" => slot.stop = Some((parse_value(Some(line), key, value)?, line)),
                        _ => slot.points = Some((parse_value(Some(line), key, value)?, line)),
                    }
                }
                _ => cfg.set(key, value).map_err(|e| with_line(e, Some(line)))?,
            }
        }
        let [a1, a2] = axes;
        let lines = [&a1, &a2].map(|a| {
            [a.name.map(|v| v.1), a.start.map(|v| v.1), a.stop.map(|v| v.1), a.points.map(|v| v.1)]
                .into_iter()
                .flatten()
                .min()
        });
        if !a1.is_empty() {
            cfg.axis1 = a1.finish("axis1").map_err(|e| with_line(e, lines[0]))?;
        }
        if !a2.is_empty() {
            cfg.axis2 = Some(a2.finish("axis2").map_err(|e| with_line(e, lines[1]))?);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sets one non-axis key; shared by the file parser and CLI overrides.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let d = &mut self.device;
        let f = |v: &str| parse_value::<f64>(None, key, v);
        match key {
            "device.omega1" => d.omega1 = f(value)?,
            "device.omega2" => d.omega2 = f(value)?,
            "device.delta1" => d.delta1 = f(value)?,
            "device.delta2" => d.delta2 = f(value)?,
            "device.g1" => d.g1 = f(value)?,
            "device.g2" => d.g2 = f(value)?,
            "device.omega_r" => d.omega_r = f(value)?,
            "device.j" => d.j = f(value)?,
            "device.levels" => d.levels = parse_value(None, key, value)?,
            "drive.omega" => self.omega = f(value)?,
            "drive.frequency" => self.drive_frequency = Some(f(value)?),
            "crosstalk.a" => self.crosstalk.a = f(value)?,
            "crosstalk.phi_c" => self.crosstalk.phi_c = f(value)?,
            "crosstalk.phi_t" => self.crosstalk.phi_t = f(value)?,
            "run.method" => self.method = parse_value(None, key, value)?,
            "run.order" => self.order = parse_value(None, key, value)?,
            "run.gap_tol" => self.gap_tol = f(value)?,
            "run.split_rest" => self.split_rest = parse_value(None, key, value)?,
            "output.path" => self.output_path = Some(PathBuf::from(value)),
            "output.format" => self.format = parse_value(None, key, value)?,
            _ => return Err(Error::config(None, key, "unknown key")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.device
            .validate()
            .map_err(|e| Error::config(None, "device", e.to_string()))?;
        let finite = [self.omega, self.gap_tol, self.crosstalk.phi_c, self.crosstalk.phi_t];
        if finite.iter().any(|v| !v.is_finite()) || self.drive_frequency.is_some_and(|v| !v.is_finite()) {
            return Err(Error::config(None, "drive", "values must be finite"));
        }
        CrosstalkSpec::new(self.crosstalk.a, self.crosstalk.phi_c, self.crosstalk.phi_t)
            .map_err(|e| Error::config(None, "crosstalk.a", e.to_string()))?;
        if self.order == 0 {
            return Err(Error::config(None, "run.order", "must be at least 1"));
        }
        if self.gap_tol <= 0.0 {
            return Err(Error::config(None, "run.gap_tol", "must be positive"));
        }
        for (section, axis) in [("axis1", Some(&self.axis1)), ("axis2", self.axis2.as_ref())] {
            let Some(axis) = axis else { continue };
            if axis.points < 2 {
                return Err(Error::config(None, format!("{section}.points"), "need at least 2 points"));
            }
            if !axis.start.is_finite() || !axis.stop.is_finite() {
                return Err(Error::config(None, section, "start and stop must be finite"));
            }
            if axis.start > axis.stop {
                return Err(Error::config(None, format!("{section}.stop"), "stop must not be below start"));
            }
        }
        if let Some(a2) = &self.axis2 {
            let frequencies = |n| matches!(n, AxisName::Delta | AxisName::Omega1);
            if a2.name == self.axis1.name || (frequencies(a2.name) && frequencies(self.axis1.name)) {
                return Err(Error::config(None, "axis2.name", "axes must sweep independent quantities"));
            }
        }
        Ok(())
    }
}

fn with_line(e: Error, line: Option<usize>) -> Error {
    match e {
        Error::Config { field, message, .. } => Error::config(line, field, message),
        other => other,
    }
}
