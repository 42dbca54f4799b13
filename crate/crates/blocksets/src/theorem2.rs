//! Exhaustive checks of the contribution colouring against templates `1 2^p 3^q`.
//!
//! For block size `d` the colouring has modulus `d + 1` and length `p d + 1`.
//! It should admit no monochromatic block set with blocks of size at most `d`
//! whenever `q >= p^2 d`; the default template takes `p = d`, `q = d^3`.

use std::ops::RangeInclusive;

use blocksets_core::colouring::ContributionColouring;
use blocksets_core::{SizeMode, Template};

use crate::error::{Error, Result};
use crate::parallel::{verify_absence, AbsenceReport, Workers};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Theorem2 {
    pub d: usize,
    pub p: usize,
    pub q: usize,
}

impl Theorem2 {
    /// Template `1 2^d 3^(d^3)`.
    pub fn new(d: usize) -> Result<Theorem2> {
        let q = d
            .checked_pow(3)
            .ok_or_else(|| Error::usage("d is too large"))?;
        Theorem2::with_pq(d, d, q)
    }

    /// Template `1 2^p 3^q`.
    pub fn with_pq(d: usize, p: usize, q: usize) -> Result<Theorem2> {
        if d == 0 {
            return Err(Error::usage("d must be at least 1"));
        }
        Ok(Theorem2 { d, p, q })
    }

    pub fn template(&self) -> Result<Template> {
        Ok(Template::from_counts(3, &[1, self.p, self.q])?)
    }

    pub fn colouring(&self) -> Result<ContributionColouring> {
        let length = self
            .p
            .checked_mul(self.d)
            .and_then(|x| x.checked_add(1))
            .ok_or_else(|| Error::usage("p d + 1 overflows"))?;
        Ok(ContributionColouring::new(self.d as u64 + 1, length)?)
    }

    /// Whether `q >= p^2 d`, the condition under which no monochromatic copy is expected.
    pub fn claim_applies(&self) -> bool {
        self.p
            .checked_mul(self.p)
            .and_then(|x| x.checked_mul(self.d))
            .is_some_and(|bound| self.q >= bound)
    }

    /// Smallest ambient dimension holding one copy under `mode`.
    pub fn min_n(&self, mode: SizeMode) -> usize {
        (1 + self.p + self.q) * mode.bounds().0
    }

    /// Runs [`verify_absence`] for every `n` in `range`.
    pub fn verify(
        &self,
        workers: &Workers,
        range: RangeInclusive<usize>,
        mode: SizeMode,
    ) -> Result<Vec<(usize, AbsenceReport)>> {
        let template = self.template()?;
        let colouring = self.colouring()?;
        range
            .map(|n| Ok((n, verify_absence(workers, &colouring, n, &template, mode)?)))
            .collect()
    }
}
