//! Run reports: per-time-point rows plus a summary recomputable from them.
//!
//! CSV output is deterministic byte-for-byte for a fixed config and seed:
//! fixed column order, LF line endings, and 17-significant-digit floats
//! (round-trip safe).

use std::io::Write;

use serde::Serialize;

use crate::config::RunConfig;

/// One output row: column names fixed per scenario, values formatted as
/// either text or round-trip floats.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub values: Vec<Cell>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn write_csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        match self {
            Cell::Float(x) => write!(out, "{}", format_float(*x)),
            Cell::Int(i) => write!(out, "{i}"),
            Cell::Text(s) => write!(out, "{s}"),
            Cell::Empty => Ok(()),
        }
    }
}

/// 17 significant digits; round-trips through parsing.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct Summary {
    /// max |p_FLM − p_NUM| over all rows carrying both methods.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_flm_num_gap: Option<f64>,
    /// max FLM trace drift encountered.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_flm_trace_drift: Option<f64>,
    /// max |Tr ρ − 1| along numerical trajectories.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_trace_drift: Option<f64>,
    /// max |Tr(ρH) − Tr(ρ0H)| / ‖H‖_F.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_energy_drift: Option<f64>,
    /// entropy non-decreasing across stored samples (1e−9 slack).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy_monotone: Option<bool>,
    /// no-signaling verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signal_free: Option<bool>,
    pub wall_time_s: f64,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

impl RunReport {
    pub fn write_csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        out.write_all(self.columns.join(",").as_bytes())?;
        out.write_all(b"\n")?;
        for row in &self.rows {
            for (i, cell) in row.values.iter().enumerate() {
                if i > 0 {
                    out.write_all(b",")?;
                }
                cell.write_csv(out)?;
            }
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn write_json(&self, out: &mut impl Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        out.write_all(b"\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_roundtrips() {
        for x in [0.1, 1.0 / 3.0, 6.02e23, -1.2345678901234567e-8, 0.0] {
            let s = format_float(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
        }
    }
}
