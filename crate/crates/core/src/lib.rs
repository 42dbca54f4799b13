//! Block sets in `[m]^n`.
//!
//! A *template* is a non-decreasing word over `[m]`. A *block set* with that
//! template is obtained by picking disjoint coordinate blocks (one per letter
//! of the template), fixing a reference word on every other coordinate, and
//! taking every word that is constant on each block with the block constants
//! running over all rearrangements of the template.
//!
//! This crate holds the allocation-only algorithmic core:
//!
//! * [`word`]: packed words over `[m]`, profiles and profile-restricted enumeration.
//! * [`template`]: templates, placements, patterns and placement enumeration.
//! * [`colouring`]: the contribution colouring, the substitution `f(x, w)` and
//!   the induced colouring on the family of 2/3-words, table and product colourings.
//! * [`search`]: monochromatic block set search, absence verification, witness
//!   colouring search, homogeneous subset search and the ABCCBA extraction.
//! * [`lattice`]: integer lattice points, generated `l1` balls and the
//!   arithmetic-progression / generated-ball searches.
//!
//! Everything here is single threaded. Work is exposed in independent
//! sub-ranges (block families, box centres) so a caller can fan it out across
//! threads and merge by canonical order; the `blocksets` crate does exactly that.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod colouring;
pub mod combinatorics;
mod error;
pub mod lattice;
pub mod search;
pub mod template;
pub mod word;

pub use colouring::{ColourId, Colouring, LatticeColouring};
pub use error::{Error, Result};
pub use lattice::{GeneratorSet, LatticeBox, LatticePoint};
pub use template::{Pattern, Placement, SizeMode, Template};
pub use word::{Profile, Word};
