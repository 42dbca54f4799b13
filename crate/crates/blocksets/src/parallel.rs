//! Multi-threaded drivers for the searches in `blocksets_core`.
//!
//! Work is split into the independent units the core exposes: block families
//! for placement searches, box centres for lattice searches. Units are
//! indexed in canonical order and results are merged by index (first hit, or
//! ordered concatenation), so every answer is the same for any worker count.

use std::collections::BTreeMap;
use std::num::NonZeroUsize;

use blocksets_core::lattice::{verify_ap, verify_ball, ApSearch, BallSearch};
use blocksets_core::search::{confirm_hit, PlacementChecker};
use blocksets_core::template::PlacementSpace;
use blocksets_core::{
    ColourId, Colouring, Error as CoreError, GeneratorSet, LatticeBox, LatticeColouring,
    LatticePoint, Pattern, Placement, SizeMode, Template,
};
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::error::Result;

/// A fixed-size worker pool.
pub struct Workers {
    pool: ThreadPool,
    count: usize,
}

impl Workers {
    pub fn new(count: usize) -> Result<Workers> {
        let count = count.max(1);
        let pool = ThreadPoolBuilder::new().num_threads(count).build()?;
        Ok(Workers { pool, count })
    }

    /// One worker per available hardware thread.
    pub fn available() -> usize {
        std::thread::available_parallelism().map_or(1, NonZeroUsize::get)
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        self.pool.install(op)
    }
}

/// Result of a first-hit placement search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoSearch {
    /// Placements in canonical order up to and including the hit, or all of them.
    pub examined: u64,
    pub hit: Option<(Placement, ColourId)>,
}

pub fn find_monochromatic<C: Colouring + ?Sized>(
    workers: &Workers,
    colouring: &C,
    n: usize,
    template: &Template,
    mode: SizeMode,
    filter: Option<&Pattern>,
) -> Result<MonoSearch> {
    let space = PlacementSpace::new(n, template, mode, filter, None)?;
    let families = space.families().len();
    let first = workers.install(|| {
        (0..families)
            .into_par_iter()
            .map_init(
                || PlacementChecker::new(colouring, template, n),
                |checker, i| (i, checker.scan_family(&space, i, true)),
            )
            .find_map_first(|(i, scan)| match scan {
                Ok(mut scan) => scan.found.pop().map(|hit| Ok((i, scan.examined, hit))),
                Err(e) => Some(Err(e)),
            })
    });
    match first.transpose()? {
        None => Ok(MonoSearch {
            examined: space.len() as u64,
            hit: None,
        }),
        Some((i, within, (placement, colour))) => {
            confirm_hit(colouring, template, &placement, colour)?;
            let before: u128 = (0..i).map(|j| space.references_in(j)).sum();
            Ok(MonoSearch {
                examined: before as u64 + within,
                hit: Some((placement, colour)),
            })
        }
    }
}

/// Result of checking every placement.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbsenceReport {
    pub examined: u64,
    /// All monochromatic placements, in canonical order.
    pub found: Vec<(Placement, ColourId)>,
    /// Placements examined, keyed by their largest block.
    pub examined_by_max_block: BTreeMap<usize, u64>,
}

impl AbsenceReport {
    /// Examined and found counts over placements whose blocks have size at most `d`.
    pub fn up_to(&self, d: usize) -> (u64, usize) {
        let examined = self
            .examined_by_max_block
            .range(..=d)
            .map(|(_, &c)| c)
            .sum();
        let found = self
            .found
            .iter()
            .filter(|(p, _)| p.max_block_size() <= d)
            .count();
        (examined, found)
    }
}

pub fn verify_absence<C: Colouring + ?Sized>(
    workers: &Workers,
    colouring: &C,
    n: usize,
    template: &Template,
    mode: SizeMode,
) -> Result<AbsenceReport> {
    let space = PlacementSpace::new(n, template, mode, None, None)?;
    let families = space.families().len();
    let scans = workers.install(|| {
        (0..families)
            .into_par_iter()
            .map_init(
                || PlacementChecker::new(colouring, template, n),
                |checker, i| checker.scan_family(&space, i, false),
            )
            .collect::<Result<Vec<_>, CoreError>>()
    })?;
    let mut report = AbsenceReport::default();
    for (family, scan) in space.families().iter().zip(scans) {
        let largest = family.blocks().iter().map(Vec::len).max().unwrap_or(0);
        *report.examined_by_max_block.entry(largest).or_default() += scan.examined;
        report.examined += scan.examined;
        for (placement, colour) in scan.found {
            confirm_hit(colouring, template, &placement, colour)?;
            report.found.push((placement, colour));
        }
    }
    Ok(report)
}

/// Result of a lattice search: centres examined in box order, and the first hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSearch<T> {
    pub examined: u64,
    pub hit: Option<T>,
}

fn first_centre<T: Send>(
    workers: &Workers,
    centres: u64,
    at: impl Fn(u64) -> blocksets_core::Result<Option<T>> + Sync,
) -> Result<LatticeSearch<T>> {
    let first = workers.install(|| {
        (0..centres)
            .into_par_iter()
            .find_map_first(|c| at(c).map(|hit| hit.map(|h| (c, h))).transpose())
    });
    Ok(match first.transpose()? {
        None => LatticeSearch {
            examined: centres,
            hit: None,
        },
        Some((c, hit)) => LatticeSearch {
            examined: c + 1,
            hit: Some(hit),
        },
    })
}

pub fn search_l1_ap<C: LatticeColouring + ?Sized>(
    workers: &Workers,
    colouring: &C,
    bounds: &LatticeBox,
    d: u64,
) -> Result<LatticeSearch<(LatticePoint, LatticePoint)>> {
    let search = ApSearch::new(bounds.clone(), d)?;
    let out = first_centre(workers, search.centre_count(), |c| search.at(colouring, c))?;
    if let Some((x, v)) = &out.hit {
        if !verify_ap(colouring, bounds, x, v, d)? {
            return Err(CoreError::VerificationFailed.into());
        }
    }
    Ok(out)
}

pub fn search_generated_ball<C: LatticeColouring + ?Sized>(
    workers: &Workers,
    colouring: &C,
    bounds: &LatticeBox,
    r: u64,
    t: usize,
    d: u64,
) -> Result<LatticeSearch<(LatticePoint, GeneratorSet)>> {
    let search = BallSearch::new(bounds.clone(), r, t, d)?;
    let out = first_centre(workers, search.centre_count(), |c| search.at(colouring, c))?;
    if let Some((x, g)) = &out.hit {
        if !verify_ball(colouring, bounds, x, g, r, d)? {
            return Err(CoreError::VerificationFailed.into());
        }
    }
    Ok(out)
}
