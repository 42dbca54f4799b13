//! Templates, placements and the block sets they generate.
//!
//! A [`Placement`] is an unordered family of disjoint coordinate blocks plus a
//! reference word on the remaining coordinates. Because a block set ranges
//! over every rearrangement of its template, the labelling of the blocks is
//! immaterial; placements keep their blocks sorted by minimum element and
//! compare as families.
//!
//! Placement enumeration order: block families first, comparing the blocks
//! in sequence by `(size, sorted elements)`, then reference words in
//! lexicographic order (lowest coordinate most significant).

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::combinatorics::{multinomial, multiset_permutations, Combinations};
use crate::error::{Error, Result};
use crate::word::{check_alphabet, Word};

/// A non-decreasing word over `[m]`, held as symbol multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Template {
    m: u8,
    counts: Vec<usize>,
}

impl Template {
    /// Template with `counts[i]` copies of symbol `i + 1`. Zero counts are allowed.
    pub fn from_counts(m: u8, counts: &[usize]) -> Result<Template> {
        check_alphabet(m)?;
        if counts.len() != m as usize {
            return Err(Error::InvalidParameter(format!(
                "{} counts given for alphabet size {m}",
                counts.len()
            )));
        }
        if counts.iter().all(|&c| c == 0) {
            return Err(Error::EmptyTemplate);
        }
        Ok(Template {
            m,
            counts: counts.to_vec(),
        })
    }

    /// Parses a template word such as `"11223"`. Letters are sorted, so any
    /// rearrangement names the same template. When `m` is `None` the
    /// alphabet is the largest symbol present (at least 2).
    pub fn parse(s: &str, m: Option<u8>) -> Result<Template> {
        let mut symbols = Vec::with_capacity(s.len());
        for b in s.bytes() {
            match b {
                b'1'..=b'9' => symbols.push(b - b'0'),
                _ => {
                    return Err(Error::InvalidSymbol {
                        symbol: b,
                        m: m.unwrap_or(9),
                    })
                }
            }
        }
        if symbols.is_empty() {
            return Err(Error::EmptyTemplate);
        }
        let top = symbols.iter().copied().max().unwrap_or(1).max(2);
        let m = m.unwrap_or(top);
        check_alphabet(m)?;
        if top > m && symbols.iter().any(|&x| x > m) {
            return Err(Error::InvalidSymbol { symbol: top, m });
        }
        let mut counts = alloc::vec![0usize; m as usize];
        for x in symbols {
            counts[(x - 1) as usize] += 1;
        }
        Template::from_counts(m, &counts)
    }

    pub fn alphabet(&self) -> u8 {
        self.m
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of letters `s`, i.e. the number of blocks a placement needs.
    pub fn len(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The canonical non-decreasing word.
    pub fn letters(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len());
        for (i, &c) in self.counts.iter().enumerate() {
            out.extend(core::iter::repeat_n(i as u8 + 1, c));
        }
        out
    }

    pub fn canonical_word(&self) -> Word {
        Word::from_raw(self.letters(), self.m)
    }

    /// Distinct rearrangements of the template, lexicographic.
    pub fn arrangements(&self) -> Vec<Vec<u8>> {
        multiset_permutations(&self.letters())
    }

    /// Size of any block set with this template.
    pub fn point_count(&self) -> u128 {
        multinomial(&self.counts).unwrap_or(u128::MAX)
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.letters() {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Admissible block sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SizeMode {
    /// Every block has exactly this size.
    Equal(usize),
    /// Every block has size between 1 and this bound.
    Mixed(usize),
}

impl SizeMode {
    pub fn bounds(self) -> (usize, usize) {
        match self {
            SizeMode::Equal(d) => (d, d),
            SizeMode::Mixed(d) => (1, d),
        }
    }

    pub fn admits(self, size: usize) -> bool {
        let (lo, hi) = self.bounds();
        (lo..=hi).contains(&size)
    }

    fn check(self) -> Result<()> {
        match self {
            SizeMode::Equal(0) | SizeMode::Mixed(0) => Err(Error::InvalidSizeMode(String::from(
                "block size must be at least 1",
            ))),
            _ => Ok(()),
        }
    }

    /// Parses `equal:D` or `mixed:D`.
    pub fn parse(s: &str) -> Result<SizeMode> {
        let bad = || Error::InvalidSizeMode(format!("expected equal:D or mixed:D, got {s:?}"));
        let (kind, d) = s.split_once(':').ok_or_else(bad)?;
        let d: usize = d.trim().parse().map_err(|_| bad())?;
        let mode = match kind.trim() {
            "equal" => SizeMode::Equal(d),
            "mixed" => SizeMode::Mixed(d),
            _ => return Err(bad()),
        };
        mode.check()?;
        Ok(mode)
    }
}

impl fmt::Display for SizeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeMode::Equal(d) => write!(f, "equal:{d}"),
            SizeMode::Mixed(d) => write!(f, "mixed:{d}"),
        }
    }
}

/// Block membership along the sorted block coordinates, labelled by first
/// occurrence (`ABCCBA`, `ABAB`, …).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(String);

impl Pattern {
    pub fn parse(s: &str) -> Result<Pattern> {
        let mut next = b'A';
        for b in s.bytes() {
            if !b.is_ascii_uppercase() {
                return Err(Error::InvalidPattern(format!("{s:?}: labels must be A-Z")));
            }
            if b == next {
                next += 1;
            } else if b > next {
                return Err(Error::InvalidPattern(format!(
                    "{s:?}: label {} appears before {}",
                    b as char, next as char
                )));
            }
        }
        if s.is_empty() {
            return Err(Error::InvalidPattern(String::from("empty pattern")));
        }
        Ok(Pattern(String::from(s)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn block_count(&self) -> usize {
        self.0.bytes().max().map_or(0, |b| (b - b'A') as usize + 1)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn of_blocks(blocks: &[Vec<usize>]) -> Pattern {
        // blocks are sorted by minimum, so block order is first-occurrence order
        let mut labelled: Vec<(usize, u8)> = blocks
            .iter()
            .enumerate()
            .flat_map(|(b, block)| block.iter().map(move |&c| (c, b'A' + b as u8)))
            .collect();
        labelled.sort_unstable();
        Pattern(labelled.into_iter().map(|(_, l)| l as char).collect())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn canonical_blocks(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Vec<Vec<usize>>> {
    let mut used = alloc::vec![false; n + 1];
    for block in &mut blocks {
        if block.is_empty() {
            return Err(Error::InvalidPlacement(String::from("empty block")));
        }
        block.sort_unstable();
        for &c in block.iter() {
            if c == 0 || c > n {
                return Err(Error::InvalidPlacement(format!(
                    "coordinate {c} is outside 1..={n}"
                )));
            }
            if used[c] {
                return Err(Error::InvalidPlacement(format!(
                    "coordinate {c} is in two blocks"
                )));
            }
            used[c] = true;
        }
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    Ok(blocks)
}

fn complement_of(n: usize, blocks: &[Vec<usize>]) -> Vec<usize> {
    let mut used = alloc::vec![false; n + 1];
    for &c in blocks.iter().flatten() {
        used[c] = true;
    }
    (1..=n).filter(|&c| !used[c]).collect()
}

fn family_cmp(a: &[Vec<usize>], b: &[Vec<usize>]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.len().cmp(&y.len()).then_with(|| x.cmp(y));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Disjoint blocks plus a reference word on the complement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placement {
    n: usize,
    blocks: Vec<Vec<usize>>,
    /// `(coordinate, symbol)` for every coordinate outside the blocks, ascending.
    reference: Vec<(usize, u8)>,
}

impl Placement {
    /// `blocks` may be in any order; `reference` must cover exactly the
    /// coordinates outside the blocks.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>, reference: &[(usize, u8)]) -> Result<Placement> {
        let blocks = canonical_blocks(n, blocks)?;
        let complement = complement_of(n, &blocks);
        let mut reference = reference.to_vec();
        reference.sort_unstable();
        let coords: Vec<usize> = reference.iter().map(|&(c, _)| c).collect();
        if coords != complement {
            return Err(Error::InvalidPlacement(format!(
                "reference covers {coords:?}, complement of the blocks is {complement:?}"
            )));
        }
        if let Some(&(_, symbol)) = reference.iter().find(|&&(_, s)| s == 0 || s > 9) {
            return Err(Error::InvalidSymbol { symbol, m: 9 });
        }
        Ok(Placement {
            n,
            blocks,
            reference,
        })
    }

    /// Reference given as symbols for the complement coordinates in ascending order.
    pub fn with_reference_word(
        n: usize,
        blocks: Vec<Vec<usize>>,
        reference: &[u8],
    ) -> Result<Placement> {
        let blocks = canonical_blocks(n, blocks)?;
        let complement = complement_of(n, &blocks);
        if complement.len() != reference.len() {
            return Err(Error::InvalidPlacement(format!(
                "{} reference symbols for {} free coordinates",
                reference.len(),
                complement.len()
            )));
        }
        let pairs: Vec<(usize, u8)> = complement
            .into_iter()
            .zip(reference.iter().copied())
            .collect();
        Placement::new(n, blocks, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Blocks in canonical order (sorted by minimum element), each ascending.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn reference(&self) -> &[(usize, u8)] {
        &self.reference
    }

    pub fn reference_symbols(&self) -> Vec<u8> {
        self.reference.iter().map(|&(_, s)| s).collect()
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn fits(&self, mode: SizeMode) -> bool {
        self.blocks.iter().all(|b| mode.admits(b.len()))
    }

    pub fn pattern(&self) -> Pattern {
        pattern_of(self)
    }

    /// Order used by [`enumerate_placements`].
    pub fn canonical_cmp(&self, other: &Placement) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| family_cmp(&self.blocks, &other.blocks))
            .then_with(|| {
                self.reference
                    .iter()
                    .map(|r| r.1)
                    .cmp(other.reference.iter().map(|r| r.1))
            })
    }

    /// Writes the point for one arrangement of the template into `scratch`,
    /// assuming the reference has already been written.
    pub(crate) fn write_arrangement(blocks: &[Vec<usize>], arrangement: &[u8], scratch: &mut [u8]) {
        for (block, &symbol) in blocks.iter().zip(arrangement) {
            for &c in block {
                scratch[c - 1] = symbol;
            }
        }
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} blocks=", self.n)?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{{")?;
            for (j, c) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, " reference=")?;
        for &(_, s) in &self.reference {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The block set of `placement` with template `template`.
pub fn blockset_points(placement: &Placement, template: &Template) -> Result<BTreeSet<Word>> {
    if placement.blocks.len() != template.len() {
        return Err(Error::ArityMismatch {
            blocks: placement.blocks.len(),
            letters: template.len(),
        });
    }
    let m = template.alphabet();
    let mut base = alloc::vec![0u8; placement.n];
    for &(c, s) in &placement.reference {
        if s > m {
            return Err(Error::InvalidSymbol { symbol: s, m });
        }
        base[c - 1] = s;
    }
    let mut out = BTreeSet::new();
    for arrangement in template.arrangements() {
        Placement::write_arrangement(&placement.blocks, &arrangement, &mut base);
        out.insert(Word::from_raw(base.clone(), m));
    }
    Ok(out)
}

pub fn pattern_of(placement: &Placement) -> Pattern {
    Pattern::of_blocks(&placement.blocks)
}

/// One unordered block family; the reference varies over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFamily {
    blocks: Vec<Vec<usize>>,
    complement: Vec<usize>,
}

impl BlockFamily {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Coordinates outside every block, ascending.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn pattern(&self) -> Pattern {
        Pattern::of_blocks(&self.blocks)
    }
}

/// All placements for a template and size mode in `[m]^n`, grouped by block
/// family. Families are independent units of work.
#[derive(Debug, Clone)]
pub struct PlacementSpace {
    n: usize,
    m: u8,
    families: Vec<BlockFamily>,
    domain: Vec<u8>,
}

impl PlacementSpace {
    pub fn new(
        n: usize,
        template: &Template,
        mode: SizeMode,
        filter: Option<&Pattern>,
        reference_domain: Option<&[u8]>,
    ) -> Result<PlacementSpace> {
        mode.check()?;
        let m = template.alphabet();
        let s = template.len();
        let (lo, hi) = mode.bounds();
        let required = s * lo;
        if n < required {
            return Err(Error::AmbientTooSmall { n, required });
        }
        let domain: Vec<u8> = match reference_domain {
            None => (1..=m).collect(),
            Some(d) => {
                let set: BTreeSet<u8> = d.iter().copied().collect();
                if let Some(&bad) = set.iter().find(|&&x| x == 0 || x > m) {
                    return Err(Error::InvalidSymbol { symbol: bad, m });
                }
                set.into_iter().collect()
            }
        };
        let families = match filter {
            Some(p) => families_with_pattern(n, s, mode, p)?,
            None => {
                let mut out = Vec::new();
                let mut used = alloc::vec![false; n + 1];
                let mut stack = Vec::with_capacity(s);
                families_dfs(n, s, lo, hi, 0, &mut used, &mut stack, &mut out);
                out
            }
        };
        Ok(PlacementSpace {
            n,
            m,
            families,
            domain,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> u8 {
        self.m
    }

    pub fn families(&self) -> &[BlockFamily] {
        &self.families
    }

    pub fn reference_domain(&self) -> &[u8] {
        &self.domain
    }

    /// Number of reference words for family `i`.
    pub fn references_in(&self, i: usize) -> u128 {
        (self.domain.len() as u128).saturating_pow(self.families[i].complement.len() as u32)
    }

    /// Total number of placements.
    pub fn len(&self) -> u128 {
        (0..self.families.len())
            .map(|i| self.references_in(i))
            .fold(0u128, u128::saturating_add)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Placements of family `i`, references in lexicographic order.
    pub fn placements_in(&self, i: usize) -> impl Iterator<Item = Placement> + '_ {
        let family = &self.families[i];
        References::new(&self.domain, family.complement.len()).map(move |symbols| Placement {
            n: self.n,
            blocks: family.blocks.clone(),
            reference: family.complement.iter().copied().zip(symbols).collect(),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = Placement> + '_ {
        (0..self.families.len()).flat_map(move |i| self.placements_in(i))
    }
}

/// Every placement, each exactly once, in canonical order.
pub fn enumerate_placements(
    n: usize,
    template: &Template,
    mode: SizeMode,
    filter: Option<&Pattern>,
    reference_domain: Option<&[u8]>,
) -> Result<impl Iterator<Item = Placement>> {
    let space = PlacementSpace::new(n, template, mode, filter, reference_domain)?;
    let family_count = space.families.len();
    Ok((0..family_count).flat_map(move |i| {
        let family = space.families[i].clone();
        let n = space.n;
        References::new(&space.domain, family.complement.len()).map(move |symbols| Placement {
            n,
            blocks: family.blocks.clone(),
            reference: family.complement.iter().copied().zip(symbols).collect(),
        })
    }))
}

/// Odometer over `domain^len`, last position fastest.
#[derive(Debug, Clone)]
pub(crate) struct References {
    domain: Vec<u8>,
    digits: Vec<usize>,
    done: bool,
}

impl References {
    pub(crate) fn new(domain: &[u8], len: usize) -> References {
        References {
            domain: domain.to_vec(),
            digits: alloc::vec![0; len],
            done: domain.is_empty() && len > 0,
        }
    }

    /// Advances in place; `false` once exhausted.
    pub(crate) fn advance(&mut self) -> bool {
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.domain.len() {
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }

    pub(crate) fn current(&self) -> impl Iterator<Item = u8> + '_ {
        self.digits.iter().map(|&d| self.domain[d])
    }
}

impl Iterator for References {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out: Vec<u8> = self.current().collect();
        self.done = !self.advance();
        Some(out)
    }
}

#[allow(clippy::too_many_arguments)]
fn families_dfs(
    n: usize,
    s: usize,
    lo: usize,
    hi: usize,
    prev_min: usize,
    used: &mut [bool],
    stack: &mut Vec<Vec<usize>>,
    out: &mut Vec<BlockFamily>,
) {
    if stack.len() == s {
        out.push(BlockFamily {
            blocks: stack.clone(),
            complement: (1..=n).filter(|&c| !used[c]).collect(),
        });
        return;
    }
    let remaining_after = s - stack.len() - 1;
    for size in lo..=hi {
        for min in prev_min + 1..=n {
            if used[min] {
                continue;
            }
            let candidates: Vec<usize> = (min + 1..=n).filter(|&c| !used[c]).collect();
            if candidates.len() + 1 < size + remaining_after * lo {
                // later blocks need `lo` free coordinates above their own minimum
                break;
            }
            for rest in Combinations::new(candidates.len(), size - 1) {
                let mut block = Vec::with_capacity(size);
                block.push(min);
                block.extend(rest.iter().map(|&i| candidates[i]));
                for &c in &block {
                    used[c] = true;
                }
                stack.push(block);
                families_dfs(n, s, lo, hi, min, used, stack, out);
                let block = stack.pop().expect("pushed above");
                for c in block {
                    used[c] = false;
                }
            }
        }
    }
}

fn families_with_pattern(
    n: usize,
    s: usize,
    mode: SizeMode,
    pattern: &Pattern,
) -> Result<Vec<BlockFamily>> {
    if pattern.block_count() != s {
        return Err(Error::InvalidPattern(format!(
            "{pattern} has {} blocks, the template has {s} letters",
            pattern.block_count()
        )));
    }
    let labels: Vec<usize> = pattern
        .as_str()
        .bytes()
        .map(|b| (b - b'A') as usize)
        .collect();
    let mut sizes = alloc::vec![0usize; s];
    for &l in &labels {
        sizes[l] += 1;
    }
    if let Some(&bad) = sizes.iter().find(|&&z| !mode.admits(z)) {
        return Err(Error::InvalidPattern(format!(
            "{pattern} has a block of size {bad}, not admitted by {mode}"
        )));
    }
    if pattern.len() > n {
        return Ok(Vec::new());
    }
    let mut out: Vec<BlockFamily> = Combinations::new(n, pattern.len())
        .map(|union| {
            let mut blocks = alloc::vec![Vec::new(); s];
            for (pos, &l) in union.iter().zip(&labels) {
                blocks[l].push(pos + 1);
            }
            BlockFamily {
                complement: complement_of(n, &blocks),
                blocks,
            }
        })
        .collect();
    out.sort_by(|a, b| family_cmp(&a.blocks, &b.blocks));
    Ok(out)
}
