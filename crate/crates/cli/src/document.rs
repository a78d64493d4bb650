//! The result document emitted by every subcommand, in JSON or text.

use std::fmt::Write;

use lindstrom::extint::ExtInt;
use lindstrom::ffpoly::CircuitVector;
use lindstrom::pipeline::CrossCheck;
use lindstrom::report::Report;
use lindstrom::set::ElementSet;
use lindstrom::valmat::Valuation;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub set: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitEntry {
    #[serde(flatten)]
    pub vector: CircuitVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceEntry {
    pub alpha: Vec<i64>,
    pub g: i64,
    pub bases: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Document {
    pub input_hash: String,
    pub n: usize,
    pub rank: usize,
    pub p: u64,
    /// Original labels of the ground set, when it differs from `1..=n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<BasisEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuits: Option<Vec<CircuitEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocircuits: Option<Vec<CircuitEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice: Option<SliceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reports: Option<Vec<Report>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

pub fn labels(s: ElementSet) -> Vec<usize> {
    s.to_labels()
}

pub fn valued_bases(nu: &Valuation) -> Vec<BasisEntry> {
    nu.iter()
        .map(|(b, x)| BasisEntry {
            set: labels(b),
            value: Some(x),
        })
        .collect()
}

pub fn plain_circuits(circuits: &[CircuitVector]) -> Vec<CircuitEntry> {
    circuits
        .iter()
        .map(|c| CircuitEntry {
            vector: c.clone(),
            polynomial: None,
        })
        .collect()
}

fn render_set(labels: &[usize]) -> String {
    let inner: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn render_vector(c: &CircuitVector, ascii: bool) -> String {
    let inner: Vec<String> = c.entries().iter().map(|e: &ExtInt| e.render(ascii)).collect();
    format!("({})", inner.join(", "))
}

impl Document {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self, ascii: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n = {}, rank = {}, p = {}", self.n, self.rank, self.p);
        let _ = writeln!(out, "input {}", self.input_hash);
        if let Some(ground) = &self.ground {
            let _ = writeln!(out, "ground set (original labels) {}", render_set(ground));
        }
        if let Some(bases) = &self.bases {
            let _ = writeln!(out, "bases ({}):", bases.len());
            for b in bases {
                match b.value {
                    Some(v) => writeln!(out, "  {}  {v}", render_set(&b.set)),
                    None => writeln!(out, "  {}", render_set(&b.set)),
                }
                .expect("writing to a string");
            }
        }
        for (title, list) in [("circuits", &self.circuits), ("cocircuits", &self.cocircuits)] {
            if let Some(list) = list {
                let _ = writeln!(out, "{title} ({}):", list.len());
                for c in list {
                    let _ = write!(out, "  {}", render_vector(&c.vector, ascii));
                    if let Some(poly) = &c.polynomial {
                        let _ = write!(out, "  {poly}");
                    }
                    out.push('\n');
                }
            }
        }
        if let Some(slice) = &self.slice {
            let alpha: Vec<String> = slice.alpha.iter().map(|a| a.to_string()).collect();
            let _ = writeln!(out, "alpha = ({})", alpha.join(", "));
            let _ = writeln!(out, "g = {}", slice.g);
            let _ = writeln!(out, "slice bases ({}):", slice.bases.len());
            for b in &slice.bases {
                let _ = writeln!(out, "  {}", render_set(b));
            }
        }
        if let Some(reports) = &self.reports {
            for r in reports {
                let _ = writeln!(out, "{r}");
            }
        }
        if let Some(cc) = &self.cross_check {
            let verdict = if cc.agrees() { "paths agree" } else { "paths differ" };
            let _ = writeln!(
                out,
                "{verdict} (valuations {}, circuits {})",
                if cc.valuations_equal { "equal" } else { "differ" },
                if cc.circuits_equal { "equal" } else { "differ" }
            );
            for d in &cc.differences {
                let _ = writeln!(out, "  - {d}");
            }
        }
        if ascii {
            out = out.replace('∞', "inf").replace("Gröbner", "Groebner");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let c = CircuitVector::new(vec![ExtInt::Fin(0), ExtInt::Inf]).unwrap();
        let doc = Document {
            input_hash: "abc".into(),
            n: 2,
            rank: 1,
            p: 2,
            bases: Some(vec![BasisEntry {
                set: vec![1],
                value: Some(0),
            }]),
            circuits: Some(plain_circuits(&[c])),
            ..Document::default()
        };
        let json = doc.to_json();
        assert!(json.contains(r#"{"entries":[0,"inf"]}"#));
        let back: Document = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn text_fallback() {
        let c = CircuitVector::new(vec![ExtInt::Fin(0), ExtInt::Inf]).unwrap();
        let doc = Document {
            circuits: Some(plain_circuits(&[c])),
            ..Document::default()
        };
        assert!(doc.to_text(false).contains("(0, ∞)"));
        assert!(doc.to_text(true).contains("(0, inf)"));
    }
}
