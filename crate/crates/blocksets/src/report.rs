//! Search reports and their JSON, CSV and text renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::format::{blocks_string, PlacementJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<OutputFormat> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::usage(format!(
                "unknown format {other:?} (expected json, csv or text)"
            ))),
        }
    }
}

/// One configuration found by a search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Found {
    Placement {
        placement: PlacementJson,
        colour: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        colour_vector: Option<Vec<u64>>,
    },
    Progression {
        x: Vec<i64>,
        v: Vec<i64>,
        colour: u64,
    },
    Ball {
        centre: Vec<i64>,
        generators: Vec<Vec<i64>>,
        colour: u64,
    },
}

/// `{"params":{…},"examined":N,"found":[…],"elapsed_ms":…,"workers":W,"budget_exhausted":bool}`
///
/// `details` carries command-specific data (per-`n` counts, a witness table,
/// an extraction) and is omitted when empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub params: Map<String, Value>,
    pub examined: u64,
    pub found: Vec<Found>,
    pub elapsed_ms: u64,
    pub workers: usize,
    pub budget_exhausted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl SearchReport {
    pub fn new(workers: usize) -> SearchReport {
        SearchReport {
            params: Map::new(),
            examined: 0,
            found: Vec::new(),
            elapsed_ms: 0,
            workers,
            budget_exhausted: false,
            details: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> SearchReport {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// A header row and one row per found item.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match self.found.first() {
            Some(Found::Progression { .. }) => w.write_record(["x", "v", "colour"])?,
            Some(Found::Ball { .. }) => w.write_record(["centre", "generators", "colour"])?,
            _ => w.write_record(["n", "blocks", "reference", "pattern", "colour"])?,
        }
        for f in &self.found {
            match f {
                Found::Placement {
                    placement, colour, ..
                } => w.write_record([
                    placement.n.to_string(),
                    blocks_string(&placement.blocks),
                    reference_string(placement),
                    placement.pattern.clone(),
                    colour.to_string(),
                ])?,
                Found::Progression { x, v, colour } => {
                    w.write_record([point_string(x), point_string(v), colour.to_string()])?
                }
                Found::Ball {
                    centre,
                    generators,
                    colour,
                } => w.write_record([
                    point_string(centre),
                    generators
                        .iter()
                        .map(|g| point_string(g))
                        .collect::<Vec<_>>()
                        .join(" "),
                    colour.to_string(),
                ])?,
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Output(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.params {
            let _ = writeln!(s, "{k}: {}", plain(v));
        }
        let _ = writeln!(s, "examined: {}", self.examined);
        let _ = writeln!(s, "found: {}", self.found.len());
        for f in &self.found {
            let _ = match f {
                Found::Placement {
                    placement,
                    colour,
                    colour_vector,
                } => {
                    let vector = colour_vector
                        .as_ref()
                        .map(|v| format!(" {}", tuple_string(v)))
                        .unwrap_or_default();
                    writeln!(
                        s,
                        "  blocks {} reference {} pattern {} colour {colour}{vector}",
                        blocks_string(&placement.blocks),
                        if placement.reference.is_empty() {
                            "-".to_string()
                        } else {
                            reference_string(placement)
                        },
                        placement.pattern
                    )
                }
                Found::Progression { x, v, colour } => {
                    writeln!(
                        s,
                        "  x {} v {} colour {colour}",
                        point_string(x),
                        point_string(v)
                    )
                }
                Found::Ball {
                    centre,
                    generators,
                    colour,
                } => writeln!(
                    s,
                    "  centre {} generators {} colour {colour}",
                    point_string(centre),
                    generators
                        .iter()
                        .map(|g| point_string(g))
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
            };
        }
        if self.budget_exhausted {
            s.push_str("budget exhausted\n");
        }
        if let Some(details) = &self.details {
            let _ = writeln!(s, "details: {details}");
        }
        let _ = writeln!(
            s,
            "workers: {}, elapsed: {} ms",
            self.workers, self.elapsed_ms
        );
        s
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Text => Ok(self.to_text()),
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn reference_string(p: &PlacementJson) -> String {
    let mut pairs: Vec<(usize, &String)> = p
        .reference
        .iter()
        .map(|(c, s)| (c.parse().unwrap_or(usize::MAX), s))
        .collect();
    pairs.sort();
    pairs
        .into_iter()
        .map(|(c, s)| format!("{c}={s}"))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn point_string(p: &[i64]) -> String {
    format!(
        "({})",
        p.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    )
}

pub fn tuple_string(v: &[u64]) -> String {
    format!(
        "({})",
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use blocksets_core::Placement;

    fn sample() -> SearchReport {
        let p = Placement::new(
            8,
            vec![vec![1, 6], vec![2, 5], vec![3, 4]],
            &[(7, 1), (8, 2)],
        )
        .unwrap();
        let mut r = SearchReport::new(2).param("n", 8).param("template", "123");
        r.examined = 17;
        r.found.push(Found::Placement {
            placement: PlacementJson::from(&p),
            colour: 3,
            colour_vector: Some(vec![1, 1]),
        });
        r
    }

    #[test]
    fn empty_report_is_valid_json() {
        let text = SearchReport::new(1).to_json().unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["found"], serde_json::json!([]));
        for key in [
            "params",
            "examined",
            "elapsed_ms",
            "workers",
            "budget_exhausted",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(v.get("details").is_none());
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: SearchReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);

        let mut lattice = SearchReport::new(1);
        lattice.found.push(Found::Progression {
            x: vec![0, 1],
            v: vec![1, -1],
            colour: 0,
        });
        lattice.found.push(Found::Ball {
            centre: vec![1, 1],
            generators: vec![vec![0, 1], vec![1, 0]],
            colour: 0,
        });
        let back: SearchReport = serde_json::from_str(&lattice.to_json().unwrap()).unwrap();
        assert_eq!(back, lattice);
    }

    #[test]
    fn csv_has_one_row_per_hit() {
        let r = sample();
        let csv = r.to_csv().unwrap();
        assert_eq!(csv.lines().count(), r.found.len() + 1);
        assert!(csv.lines().nth(1).unwrap().contains("ABCCBA"));
        assert_eq!(SearchReport::new(1).to_csv().unwrap().lines().count(), 1);
    }

    #[test]
    fn text_mentions_the_hit() {
        let text = sample().to_text();
        assert!(text.contains("blocks 1,6;2,5;3,4 reference 7=1,8=2 pattern ABCCBA colour 3 (1,1)"));
    }
}
