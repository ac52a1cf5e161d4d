//! CSV and JSON renderings of a [`SweepTable`].

use std::path::Path;

use serde_json::{json, Map, Value};

use super::{MethodKind, OutputFormat, RowStatus, SweepConfig, SweepRow, SweepTable};
use crate::error::{Error, Result};
use crate::operators::PAULI_LABELS;

pub const CSV_HEADER: &str =
    "delta_ghz,omega_ghz,method,order,II,IX,IY,IZ,XI,XX,XY,XZ,YI,YX,YY,YZ,ZI,ZX,ZY,ZZ,I_metric,status";

fn sig9(v: f64) -> String {
    format!("{v:.8e}")
}

fn method_name(m: MethodKind) -> &'static str {
    match m {
        MethodKind::Exact => "exact",
        MethodKind::Pert => "pert",
    }
}

pub fn to_csv(table: &SweepTable) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &table.rows {
        let mut cells = vec![
            sig9(row.delta_ghz),
            sig9(row.omega_ghz),
            method_name(row.method).to_string(),
            row.order.map(|o| o.to_string()).unwrap_or_default(),
        ];
        match &row.coefficients_mhz {
            Some(c) => cells.extend(c.iter().map(|&v| sig9(v))),
            None => cells.extend(std::iter::repeat(String::new()).take(16)),
        }
        cells.push(row.i_metric.map(sig9).unwrap_or_default());
        cells.push(row.status.as_str().to_string());
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::config(Some(1), "header", "unexpected CSV header"));
    }
    let bad = |line: usize, field: &str, raw: &str| Error::config(Some(line), field, format!("cannot parse `{raw}`"));
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let n = idx + 2;
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 22 {
            return Err(Error::config(Some(n), "row", format!("expected 22 columns, got {}", cells.len())));
        }
        let num = |k: usize, field: &str| cells[k].parse::<f64>().map_err(|_| bad(n, field, cells[k]));
        let opt = |k: usize, field: &str| {
            if cells[k].is_empty() {
                Ok(None)
            } else {
                num(k, field).map(Some)
            }
        };
        let mut coefficients = [0.0; 16];
        let mut present = 0;
        for (k, slot) in coefficients.iter_mut().enumerate() {
            if let Some(v) = opt(4 + k, "coefficient")? {
                *slot = v;
                present += 1;
            }
        }
        rows.push(SweepRow {
            delta_ghz: num(0, "delta_ghz")?,
            omega_ghz: num(1, "omega_ghz")?,
            method: cells[2].parse().map_err(|_| bad(n, "method", cells[2]))?,
            order: if cells[3].is_empty() {
                None
            } else {
                Some(cells[3].parse().map_err(|_| bad(n, "order", cells[3]))?)
            },
            coefficients_mhz: (present == 16).then_some(coefficients),
            i_metric: opt(20, "I_metric")?,
            status: cells[21].parse().map_err(|_| bad(n, "status", cells[21]))?,
        });
    }
    Ok(rows)
}

fn record(row: &SweepRow) -> Value {
    let mut m = Map::new();
    m.insert("delta_ghz".into(), json!(row.delta_ghz));
    m.insert("omega_ghz".into(), json!(row.omega_ghz));
    m.insert("method".into(), json!(method_name(row.method)));
    m.insert("order".into(), json!(row.order));
    for (k, label) in PAULI_LABELS.iter().enumerate() {
        m.insert(label.to_string(), json!(row.coefficients_mhz.map(|c| c[k])));
    }
    m.insert("I_metric".into(), json!(row.i_metric));
    m.insert("status".into(), json!(row.status.as_str()));
    Value::Object(m)
}

pub fn to_json(table: &SweepTable) -> Result<String> {
    let doc = json!({
        "metadata": {
            "library": "crham",
            "version": env!("CARGO_PKG_VERSION"),
            "levels": table.config.device.levels,
            "config": serde_json::to_value(&table.config).map_err(|e| Error::Domain(e.to_string()))?,
        },
        "records": table.rows.iter().map(record).collect::<Vec<_>>(),
    });
    let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Domain(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn parse_json(text: &str) -> Result<SweepTable> {
    let fail = |field: &str, message: String| Error::config(None, field, message);
    let doc: Value = serde_json::from_str(text).map_err(|e| fail("json", e.to_string()))?;
    let config: SweepConfig = serde_json::from_value(doc["metadata"]["config"].clone())
        .map_err(|e| fail("metadata.config", e.to_string()))?;
    let records = doc["records"]
        .as_array()
        .ok_or_else(|| fail("records", "missing array".into()))?;
    let mut rows = Vec::with_capacity(records.len());
    for (i, r) in records.iter().enumerate() {
        let field = |name: &str| format!("records[{i}].{name}");
        let num = |name: &str| r[name].as_f64().ok_or_else(|| fail(&field(name), "expected a number".into()));
        let text = |name: &str| r[name].as_str().ok_or_else(|| fail(&field(name), "expected a string".into()));
        let mut coefficients = [0.0; 16];
        let mut present = 0;
        for (k, label) in PAULI_LABELS.iter().enumerate() {
            let name = label.to_string();
            if !r[&name].is_null() {
                coefficients[k] = num(&name)?;
                present += 1;
            }
        }
        rows.push(SweepRow {
            delta_ghz: num("delta_ghz")?,
            omega_ghz: num("omega_ghz")?,
            method: text("method")?.parse().map_err(|e: String| fail(&field("method"), e))?,
            order: r["order"].as_u64().map(|o| o as usize),
            coefficients_mhz: (present == 16).then_some(coefficients),
            i_metric: r["I_metric"].as_f64(),
            status: text("status")?.parse::<RowStatus>().map_err(|e| fail(&field("status"), e))?,
        });
    }
    Ok(SweepTable { config, rows })
}

pub fn render(table: &SweepTable, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Csv => Ok(to_csv(table)),
        OutputFormat::Json => to_json(table),
    }
}

pub fn emit(table: &SweepTable, format: OutputFormat, path: &Path) -> Result<()> {
    let text = render(table, format)?;
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
