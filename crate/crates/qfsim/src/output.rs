//! Machine-readable output documents and the formatting helpers shared by
//! the CLI: complex numbers serialize as `[re, im]` pairs, matrices as arrays
//! of rows, distributions as bitstring-to-number maps. JSON output is
//! canonical (struct field order fixed, map keys sorted) so identical
//! commands produce byte-identical documents.

use crate::circuit::{DistributionMode, OutcomeDistribution};
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, StateVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Version tag carried by every document.
pub const SCHEMA_VERSION: &str = "1";

/// Display order of bits in outcome strings. `Natural` prints `q0 q1 …`
/// (most significant first, as in the derivations); `Ibm` reverses the
/// string the way platform histograms do. Only presentation changes; the
/// numeric values do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BitOrder {
    #[default]
    Natural,
    Ibm,
}

impl BitOrder {
    pub fn label(&self) -> &'static str {
        match self {
            BitOrder::Natural => "natural",
            BitOrder::Ibm => "ibm",
        }
    }

    /// Applies the display order to an outcome bitstring.
    pub fn display(&self, outcome: &str) -> String {
        match self {
            BitOrder::Natural => outcome.to_string(),
            BitOrder::Ibm => outcome.chars().rev().collect(),
        }
    }
}

impl std::str::FromStr for BitOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural" => Ok(BitOrder::Natural),
            "ibm" => Ok(BitOrder::Ibm),
            other => Err(Error::invalid(format!(
                "unknown bit order `{other}`; expected natural or ibm"
            ))),
        }
    }
}

/// Run metadata embedded in every document. The seed is always recorded when
/// sampling happened; there is no hidden entropy anywhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    pub bit_order: String,
}

/// One CLI invocation's complete result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: String,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
    pub provenance: Provenance,
}

impl OutputDocument {
    pub fn new(
        command: impl Into<String>,
        parameters: BTreeMap<String, Value>,
        results: Value,
        provenance: Provenance,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.into(),
            parameters,
            results,
            provenance,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("document does not parse: {e}")))
    }
}

/// `[re, im]` pair.
pub fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Array of rows, each row an array of `[re, im]` pairs.
pub fn matrix_json(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| complex_json(m.get(i, j))).collect()))
            .collect(),
    )
}

/// Array of `[re, im]` amplitudes.
pub fn state_json(v: &StateVector) -> Value {
    Value::Array(v.amps().iter().map(|&z| complex_json(z)).collect())
}

/// Distribution as `{mode, entries, shots?}` with keys in display order.
pub fn distribution_json(d: &OutcomeDistribution, order: BitOrder) -> Value {
    let entries: BTreeMap<String, Value> = d
        .entries
        .iter()
        .map(|(k, v)| {
            let value = match d.mode {
                DistributionMode::Analytic => json!(v),
                DistributionMode::Sampled => json!(*v as u64),
            };
            (order.display(k), value)
        })
        .collect();
    let mut out = serde_json::Map::new();
    out.insert(
        "mode".into(),
        json!(match d.mode {
            DistributionMode::Analytic => "analytic",
            DistributionMode::Sampled => "sampled",
        }),
    );
    out.insert("entries".into(), json!(entries));
    if let Some(shots) = d.shots {
        out.insert("shots".into(), json!(shots));
    }
    Value::Object(out)
}

/// One complex entry with 12 significant digits, e.g.
/// `0.853553390593+0.353553390593i`.
pub fn format_complex(z: Complex64) -> String {
    let im = if z.im.abs() < 5e-13 { 0.0 } else { z.im };
    let re = format_real(z.re);
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{re}{sign}{}i", format_real(im.abs()))
}

fn format_real(x: f64) -> String {
    // Entries here are O(1); twelve decimals give twelve significant digits.
    // Values below display precision print as zero, never as "-0.000…".
    format!("{:.12}", if x.abs() < 5e-13 { 0.0 } else { x })
}

/// Human-readable matrix grid.
pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format_complex(m.get(i, j))).collect();
        out.push_str("  [ ");
        out.push_str(&row.join("  "));
        out.push_str(" ]\n");
    }
    out
}

/// Human-readable amplitude list with basis labels.
pub fn format_state(v: &StateVector, order: BitOrder) -> String {
    let mut out = String::new();
    for (i, &amp) in v.amps().iter().enumerate() {
        let bits: String = (0..v.num_qubits())
            .map(|q| {
                if (i >> (v.num_qubits() - 1 - q)) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect();
        out.push_str(&format!(
            "  |{}>  {}\n",
            order.display(&bits),
            format_complex(amp)
        ));
    }
    out
}

/// Human-readable distribution listing.
pub fn format_distribution(d: &OutcomeDistribution, order: BitOrder) -> String {
    let mut out = String::new();
    for (k, v) in &d.entries {
        match d.mode {
            DistributionMode::Analytic => {
                out.push_str(&format!("  {}  {:.6}\n", order.display(k), v));
            }
            DistributionMode::Sampled => {
                let shots = d.shots.unwrap_or(1) as f64;
                out.push_str(&format!(
                    "  {}  {}  ({:.4})\n",
                    order.display(k),
                    *v as u64,
                    v / shots
                ));
            }
        }
    }
    out
}

/// CSV rendering, defined for distributions only.
pub fn distribution_csv(d: &OutcomeDistribution, order: BitOrder) -> String {
    let mut out = String::from("outcome,value\n");
    for (k, v) in &d.entries {
        match d.mode {
            DistributionMode::Analytic => out.push_str(&format!("{},{}\n", order.display(k), v)),
            DistributionMode::Sampled => {
                out.push_str(&format!("{},{}\n", order.display(k), *v as u64))
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_round_trips_losslessly() {
        let mut params = BTreeMap::new();
        params.insert("p".to_string(), json!(2));
        params.insert("d".to_string(), json!(1));
        let doc = OutputDocument::new(
            "gate",
            params,
            json!({"matrix": [[[0.5, 0.0], [0.0, -0.5]]]}),
            Provenance {
                seed: Some(7),
                shots: None,
                bit_order: "natural".into(),
            },
        );
        let text = doc.to_json();
        let back = OutputDocument::from_json(&text).unwrap();
        assert_eq!(doc, back);
        assert_eq!(text, back.to_json());
    }

    #[test]
    fn serialization_is_deterministic() {
        let make = || {
            let mut params = BTreeMap::new();
            params.insert("z".to_string(), json!(1));
            params.insert("a".to_string(), json!(2));
            OutputDocument::new(
                "x",
                params,
                json!({"k": 0.1}),
                Provenance {
                    seed: None,
                    shots: None,
                    bit_order: "natural".into(),
                },
            )
            .to_json()
        };
        assert_eq!(make(), make());
    }

    #[test]
    fn bit_order_reverses_display_only() {
        assert_eq!(BitOrder::Ibm.display("011"), "110");
        assert_eq!(BitOrder::Natural.display("011"), "011");
    }

    #[test]
    fn complex_entries_print_with_twelve_digits() {
        let z = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, -0.25);
        assert_eq!(format_complex(z), "0.707106781187-0.250000000000i");
    }
}
