//! Colouring spec strings such as `contribution:m=3,l=5` or `induced:base=constant:c=0,k=2`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use blocksets_core::colouring::{
    ConstantColouring, ContributionColouring, CoordinateSumColouring, InducedColouring,
    TableColouring,
};
use blocksets_core::lattice::BoxTableColouring;
use blocksets_core::word::{all_words, space_size};
use blocksets_core::{ColourId, Colouring, LatticeBox, LatticeColouring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::format;

/// Largest domain a `random:` colouring will tabulate.
pub const RANDOM_DOMAIN_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColouringSpec {
    /// `contribution:m=M,l=L`
    Contribution { modulus: u64, length: usize },
    /// `coordsum:d=D` (lattice only)
    CoordSum { d: u64 },
    /// `constant:c=C`
    Constant { colour: u64 },
    /// `table:@path`
    Table { path: PathBuf },
    /// `induced:base=SPEC,k=K`
    Induced { base: Box<ColouringSpec>, k: usize },
    /// `random:k=K[,seed=S]`, a seeded table over the whole domain
    Random { k: u64, seed: Option<u64> },
}

fn params(kind: &str, body: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    if body.is_empty() {
        return Ok(out);
    }
    for part in body.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::usage(format!("{kind}: expected key=value, got {part:?}")))?;
        if out
            .insert(key.trim().to_string(), value.trim().to_string())
            .is_some()
        {
            return Err(Error::usage(format!("{kind}: {key} given twice")));
        }
    }
    Ok(out)
}

fn take<T: FromStr>(
    kind: &str,
    map: &mut BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>> {
    map.remove(key)
        .map(|v| {
            v.parse()
                .map_err(|_| Error::usage(format!("{kind}: {key}={v} is not a valid number")))
        })
        .transpose()
}

fn need<T: FromStr>(kind: &str, map: &mut BTreeMap<String, String>, key: &str) -> Result<T> {
    take(kind, map, key)?.ok_or_else(|| Error::usage(format!("{kind}: missing {key}=")))
}

fn no_leftovers(kind: &str, map: BTreeMap<String, String>) -> Result<()> {
    match map.keys().next() {
        Some(k) => Err(Error::usage(format!("{kind}: unknown parameter {k:?}"))),
        None => Ok(()),
    }
}

impl FromStr for ColouringSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<ColouringSpec> {
        let s = s.trim();
        let (kind, body) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "contribution" => {
                let mut p = params(kind, body)?;
                let spec = ColouringSpec::Contribution {
                    modulus: need(kind, &mut p, "m")?,
                    length: need(kind, &mut p, "l")?,
                };
                no_leftovers(kind, p)?;
                Ok(spec)
            }
            "coordsum" => {
                let mut p = params(kind, body)?;
                let spec = ColouringSpec::CoordSum { d: need(kind, &mut p, "d")? };
                no_leftovers(kind, p)?;
                Ok(spec)
            }
            "constant" => {
                let mut p = params(kind, body)?;
                let spec = ColouringSpec::Constant {
                    colour: take(kind, &mut p, "c")?.unwrap_or(0),
                };
                no_leftovers(kind, p)?;
                Ok(spec)
            }
            "table" => {
                let path = body
                    .strip_prefix('@')
                    .filter(|p| !p.is_empty())
                    .ok_or_else(|| Error::usage("table: expected table:@path"))?;
                Ok(ColouringSpec::Table { path: path.into() })
            }
            "induced" => {
                let rest = body
                    .strip_prefix("base=")
                    .ok_or_else(|| Error::usage("induced: expected induced:base=SPEC,k=K"))?;
                let split = rest
                    .rfind(",k=")
                    .ok_or_else(|| Error::usage("induced: missing ,k="))?;
                let k = rest[split + 3..]
                    .parse()
                    .map_err(|_| Error::usage(format!("induced: k={} is not a valid number", &rest[split + 3..])))?;
                let base: ColouringSpec = rest[..split].parse()?;
                Ok(ColouringSpec::Induced { base: Box::new(base), k })
            }
            "random" => {
                let mut p = params(kind, body)?;
                let spec = ColouringSpec::Random {
                    k: need(kind, &mut p, "k")?,
                    seed: take(kind, &mut p, "seed")?,
                };
                no_leftovers(kind, p)?;
                Ok(spec)
            }
            other => Err(Error::usage(format!(
                "unknown colouring {other:?} (expected contribution, coordsum, constant, table, induced or random)"
            ))),
        }
    }
}

impl fmt::Display for ColouringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColouringSpec::Contribution { modulus, length } => {
                write!(f, "contribution:m={modulus},l={length}")
            }
            ColouringSpec::CoordSum { d } => write!(f, "coordsum:d={d}"),
            ColouringSpec::Constant { colour } => write!(f, "constant:c={colour}"),
            ColouringSpec::Table { path } => write!(f, "table:@{}", path.display()),
            ColouringSpec::Induced { base, k } => write!(f, "induced:base={base},k={k}"),
            ColouringSpec::Random { k, seed: None } => write!(f, "random:k={k}"),
            ColouringSpec::Random { k, seed: Some(s) } => write!(f, "random:k={k},seed={s}"),
        }
    }
}

impl ColouringSpec {
    /// Builds a colouring of `[m]^n`. `seed` is used by `random:` unless the string carries its own.
    pub fn build(&self, n: usize, m: u8, seed: u64) -> Result<Box<dyn Colouring>> {
        Ok(match self {
            ColouringSpec::Contribution { modulus, length } => {
                Box::new(ContributionColouring::new(*modulus, *length)?)
            }
            ColouringSpec::Constant { colour } => Box::new(ConstantColouring(ColourId(*colour))),
            ColouringSpec::Table { path } => {
                Box::new(format::table_from_json(&format::read_file(path)?, m)?)
            }
            ColouringSpec::Induced { base, k } => {
                Box::new(InducedColouring::new(base.build(n, m, seed)?, *k))
            }
            ColouringSpec::Random { k, seed: own } => {
                check_colours(*k)?;
                let size = space_size(n, m).unwrap_or(u64::MAX);
                if size > RANDOM_DOMAIN_LIMIT {
                    return Err(Error::usage(format!(
                        "random: [{m}]^{n} is too large to tabulate"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(own.unwrap_or(seed));
                let entries = all_words(n, m)?
                    .map(|w| (w, ColourId(rng.gen_range(0..*k))))
                    .collect();
                Box::new(TableColouring::with_colour_count(entries, *k)?)
            }
            ColouringSpec::CoordSum { .. } => {
                return Err(Error::usage("coordsum colours lattice points, not words"));
            }
        })
    }

    /// Builds a colouring of the lattice box `bounds`.
    pub fn build_lattice(
        &self,
        bounds: &LatticeBox,
        seed: u64,
    ) -> Result<Box<dyn LatticeColouring>> {
        Ok(match self {
            ColouringSpec::CoordSum { d } => Box::new(CoordinateSumColouring::new(*d)?),
            ColouringSpec::Constant { colour } => Box::new(ConstantColouring(ColourId(*colour))),
            ColouringSpec::Table { path } => Box::new(format::lattice_table_from_json(
                &format::read_file(path)?,
                bounds,
            )?),
            ColouringSpec::Random { k, seed: own } => {
                check_colours(*k)?;
                if bounds.len() > RANDOM_DOMAIN_LIMIT {
                    return Err(Error::usage(format!(
                        "random: box {bounds} is too large to tabulate"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(own.unwrap_or(seed));
                let colours = (0..bounds.len())
                    .map(|_| ColourId(rng.gen_range(0..*k)))
                    .collect();
                Box::new(BoxTableColouring::new(bounds.clone(), colours)?)
            }
            other => {
                return Err(Error::usage(format!(
                    "{other} colours words, not lattice points"
                )))
            }
        })
    }

    /// The colour as a vector, for colourings whose colours are vectors.
    pub fn vector_of(&self, colour: ColourId) -> Option<Vec<u64>> {
        match self {
            ColouringSpec::Contribution { modulus, length } => {
                ContributionColouring::new(*modulus, *length)
                    .ok()
                    .map(|c| c.vector_of(colour))
            }
            _ => None,
        }
    }
}

fn check_colours(k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::usage("random: k must be at least 1"));
    }
    Ok(())
}
