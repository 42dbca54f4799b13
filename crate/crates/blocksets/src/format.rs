//! JSON forms of placements, table colourings and lattice data.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use blocksets_core::colouring::TableColouring;
use blocksets_core::lattice::BoxTableColouring;
use blocksets_core::{ColourId, GeneratorSet, LatticeBox, LatticePoint, Placement, Word};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `{"n":…, "blocks":[[…],…], "reference":{"7":"1",…}, "pattern":"ABCCBA"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementJson {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
    pub reference: BTreeMap<String, String>,
    pub pattern: String,
}

impl From<&Placement> for PlacementJson {
    fn from(p: &Placement) -> PlacementJson {
        PlacementJson {
            n: p.n(),
            blocks: p.blocks().to_vec(),
            reference: p
                .reference()
                .iter()
                .map(|&(c, s)| (c.to_string(), s.to_string()))
                .collect(),
            pattern: p.pattern().to_string(),
        }
    }
}

impl PlacementJson {
    /// Rebuilds the placement; the stored pattern must match the blocks.
    pub fn to_placement(&self) -> Result<Placement> {
        let mut reference = Vec::with_capacity(self.reference.len());
        for (c, s) in &self.reference {
            let coord: usize = c
                .parse()
                .map_err(|_| Error::usage(format!("reference coordinate {c:?} is not a number")))?;
            let symbol: u8 = s
                .parse()
                .map_err(|_| Error::usage(format!("reference symbol {s:?} is not a number")))?;
            reference.push((coord, symbol));
        }
        reference.sort_unstable();
        let p = Placement::new(self.n, self.blocks.clone(), &reference)?;
        if p.pattern().as_str() != self.pattern {
            return Err(Error::usage(format!(
                "pattern {:?} does not match blocks (expected {})",
                self.pattern,
                p.pattern()
            )));
        }
        Ok(p)
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A table colouring as a JSON object from word strings to colour ids.
pub fn table_to_json(table: &TableColouring) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> = table
        .entries()
        .iter()
        .map(|(w, c)| (w.to_string(), c.0.into()))
        .collect();
    serde_json::Value::Object(map)
}

/// Parses a table file; words are read over `[m]`. The colour count is one
/// more than the largest id.
pub fn table_from_json(text: &str, m: u8) -> Result<TableColouring> {
    let raw: BTreeMap<String, u64> = serde_json::from_str(text)?;
    let mut entries = BTreeMap::new();
    for (w, c) in raw {
        entries.insert(Word::parse(&w, m)?, ColourId(c));
    }
    Ok(TableColouring::new(entries))
}

/// One entry of a lattice table file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeEntry {
    pub point: Vec<i64>,
    pub colour: u64,
}

/// Reads `[{"point":[…],"colour":c},…]` into a colouring of `bounds`.
/// Every point of the box must be listed exactly once.
pub fn lattice_table_from_json(text: &str, bounds: &LatticeBox) -> Result<BoxTableColouring> {
    let entries: Vec<LatticeEntry> = serde_json::from_str(text)?;
    let mut colours = vec![None; bounds.len() as usize];
    for e in entries {
        let i = bounds
            .index_of(&e.point)
            .ok_or_else(|| Error::usage(format!("point {:?} lies outside {bounds}", e.point)))?;
        if colours[i as usize].replace(ColourId(e.colour)).is_some() {
            return Err(Error::usage(format!("point {:?} listed twice", e.point)));
        }
    }
    let colours = colours
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            c.ok_or_else(|| Error::usage(format!("no colour for {}", bounds.point(i as u64))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoxTableColouring::new(bounds.clone(), colours)?)
}

pub fn point_json(p: &LatticePoint) -> Vec<i64> {
    p.coords().to_vec()
}

pub fn generators_json(g: &GeneratorSet) -> Vec<Vec<i64>> {
    g.vectors().iter().map(point_json).collect()
}

/// Parses `"(1,-1,0)"`, `"[1,-1,0]"` or `"1,-1,0"`.
pub fn parse_point(s: &str) -> Result<LatticePoint> {
    let inner = s
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    if inner.trim().is_empty() {
        return Ok(LatticePoint(Vec::new()));
    }
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::usage(format!("bad coordinate {x:?} in point {s:?}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(LatticePoint)
}

/// Parses blocks written as `"1,6;2,5;3,4"`.
pub fn parse_blocks(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .map(|block| {
            block
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::usage(format!("bad coordinate {c:?} in blocks {s:?}")))
                })
                .collect()
        })
        .collect()
}

pub fn blocks_string(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// Parses a reference given either as `"7=1,8=2"` or as a digit string
/// filling the coordinates outside the blocks in increasing order.
pub fn parse_reference(s: &str, n: usize, blocks: &[Vec<usize>]) -> Result<Vec<(usize, u8)>> {
    let s = s.trim();
    if s.contains('=') {
        return s
            .split(',')
            .map(|pair| {
                let (c, v) = pair
                    .split_once('=')
                    .ok_or_else(|| Error::usage(format!("expected coord=symbol, got {pair:?}")))?;
                let c = c
                    .trim()
                    .parse()
                    .map_err(|_| Error::usage(format!("bad coordinate {c:?}")))?;
                let v = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::usage(format!("bad symbol {v:?}")))?;
                Ok((c, v))
            })
            .collect();
    }
    let free: Vec<usize> = (1..=n)
        .filter(|c| !blocks.iter().flatten().any(|b| b == c))
        .collect();
    if s.chars().count() != free.len() {
        return Err(Error::usage(format!(
            "reference {s:?} has {} symbols but {} coordinates lie outside the blocks",
            s.chars().count(),
            free.len()
        )));
    }
    free.into_iter()
        .zip(s.chars())
        .map(|(c, ch)| {
            ch.to_digit(10)
                .map(|d| (c, d as u8))
                .ok_or_else(|| Error::usage(format!("bad reference symbol {ch:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn placement_round_trip() {
        let p = Placement::new(
            8,
            vec![vec![1, 6], vec![2, 5], vec![3, 4]],
            &[(7, 1), (8, 2)],
        )
        .unwrap();
        let j = PlacementJson::from(&p);
        assert_eq!(j.pattern, "ABCCBA");
        assert_eq!(j.reference["7"], "1");
        let text = serde_json::to_string(&j).unwrap();
        let back: PlacementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_placement().unwrap(), p);
    }

    #[test]
    fn block_and_reference_syntax() {
        let blocks = parse_blocks("1,6;2,5;3,4").unwrap();
        assert_eq!(blocks_string(&blocks), "1,6;2,5;3,4");
        assert_eq!(
            parse_reference("12", 8, &blocks).unwrap(),
            vec![(7, 1), (8, 2)]
        );
        assert_eq!(
            parse_reference("8=2,7=1", 8, &blocks).unwrap(),
            vec![(8, 2), (7, 1)]
        );
        assert!(parse_reference("1", 8, &blocks).is_err());
        assert!(parse_blocks("1;x").is_err());
    }

    #[test]
    fn points() {
        assert_eq!(
            parse_point("(1,-1,0)").unwrap(),
            LatticePoint(vec![1, -1, 0])
        );
        assert_eq!(parse_point("[2, 2]").unwrap(), LatticePoint(vec![2, 2]));
        assert!(parse_point("1,a").is_err());
    }

    #[test]
    fn table_files() {
        let table = table_from_json(r#"{"12": 0, "21": 1}"#, 2).unwrap();
        assert_eq!(table.len(), 2);
        assert_eq!(table_to_json(&table), serde_json::json!({"12": 0, "21": 1}));
        assert!(table_from_json(r#"{"13": 0}"#, 2).is_err());

        let bounds = LatticeBox::cube(0, 1, 1).unwrap();
        let t = lattice_table_from_json(
            r#"[{"point":[0],"colour":1},{"point":[1],"colour":0}]"#,
            &bounds,
        )
        .unwrap();
        assert_eq!(t.bounds(), &bounds);
        assert!(lattice_table_from_json(r#"[{"point":[0],"colour":1}]"#, &bounds).is_err());
    }
}
