//! Exhaustive searches over placements and colourings.
//!
//! The placement searches work family by family (see
//! [`PlacementSpace`](crate::template::PlacementSpace)). Inside a placement,
//! points are evaluated in lexicographic order of the template arrangement
//! and the check stops at the first colour mismatch. Any placement reported
//! as monochromatic is re-checked through [`blockset_points`] before it is
//! returned.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::colouring::{
    chi_words, family_a_word, substitute, z_word, ColourId, Colouring, InducedColouring,
    TableColouring,
};
use crate::combinatorics::Combinations;
use crate::error::{Error, Result};
use crate::template::{
    blockset_points, Pattern, Placement, PlacementSpace, References, SizeMode, Template,
};
use crate::word::{space_size, Word};

/// Result of scanning one block family.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FamilyScan {
    /// Placements checked. When stopping at the first hit this counts up to
    /// and including the hit.
    pub examined: u64,
    pub found: Vec<(Placement, ColourId)>,
}

/// Evaluates a colouring on the points of placements, reusing one scratch word.
pub struct PlacementChecker<'a, C: ?Sized> {
    colouring: &'a C,
    arrangements: Vec<Vec<u8>>,
    scratch: Word,
}

impl<'a, C: Colouring + ?Sized> PlacementChecker<'a, C> {
    pub fn new(colouring: &'a C, template: &Template, n: usize) -> PlacementChecker<'a, C> {
        PlacementChecker {
            colouring,
            arrangements: template.arrangements(),
            scratch: Word::from_raw(alloc::vec![1; n], template.alphabet()),
        }
    }

    /// The common colour if every point of the block set (blocks + reference
    /// already written into the scratch word) has one colour.
    fn check_current(&mut self, blocks: &[Vec<usize>]) -> Result<Option<ColourId>> {
        let mut common = None;
        for arrangement in &self.arrangements {
            Placement::write_arrangement(blocks, arrangement, self.scratch.symbols_mut());
            let c = self.colouring.colour(&self.scratch)?;
            match common {
                None => common = Some(c),
                Some(prev) if prev != c => return Ok(None),
                Some(_) => {}
            }
        }
        Ok(common)
    }

    pub fn check(&mut self, placement: &Placement) -> Result<Option<ColourId>> {
        {
            let symbols = self.scratch.symbols_mut();
            for &(c, s) in placement.reference() {
                symbols[c - 1] = s;
            }
        }
        self.check_current(placement.blocks())
    }

    /// Scans every reference word of family `index` of `space`.
    pub fn scan_family(
        &mut self,
        space: &PlacementSpace,
        index: usize,
        stop_at_first: bool,
    ) -> Result<FamilyScan> {
        let family = &space.families()[index];
        let complement = family.complement();
        let mut refs = References::new(space.reference_domain(), complement.len());
        let mut scan = FamilyScan::default();
        if space.references_in(index) == 0 {
            return Ok(scan);
        }
        loop {
            {
                let symbols = self.scratch.symbols_mut();
                for (&c, s) in complement.iter().zip(refs.current()) {
                    symbols[c - 1] = s;
                }
            }
            scan.examined += 1;
            if let Some(colour) = self.check_current(family.blocks())? {
                let reference: Vec<(usize, u8)> =
                    complement.iter().copied().zip(refs.current()).collect();
                let placement = Placement::new(space.n(), family.blocks().to_vec(), &reference)?;
                scan.found.push((placement, colour));
                if stop_at_first {
                    return Ok(scan);
                }
            }
            if !refs.advance() {
                return Ok(scan);
            }
        }
    }
}

/// Recomputes the block set independently and returns its colour if it is monochromatic.
pub fn monochromatic_colour<C: Colouring + ?Sized>(
    colouring: &C,
    placement: &Placement,
    template: &Template,
) -> Result<Option<ColourId>> {
    let mut colours = blockset_points(placement, template)?
        .into_iter()
        .map(|w| colouring.colour(&w));
    let first = match colours.next() {
        Some(c) => c?,
        None => return Ok(None),
    };
    for c in colours {
        if c? != first {
            return Ok(None);
        }
    }
    Ok(Some(first))
}

/// Re-checks a reported hit; errors if it is not actually monochromatic in that colour.
pub fn confirm_hit<C: Colouring + ?Sized>(
    colouring: &C,
    template: &Template,
    placement: &Placement,
    colour: ColourId,
) -> Result<()> {
    match monochromatic_colour(colouring, placement, template)? {
        Some(c) if c == colour => Ok(()),
        _ => Err(Error::VerificationFailed),
    }
}

/// The canonically first monochromatic placement, if any.
pub fn find_monochromatic<C: Colouring + ?Sized>(
    colouring: &C,
    n: usize,
    template: &Template,
    mode: SizeMode,
    filter: Option<&Pattern>,
) -> Result<Option<(Placement, ColourId)>> {
    let space = PlacementSpace::new(n, template, mode, filter, None)?;
    let mut checker = PlacementChecker::new(colouring, template, n);
    for i in 0..space.families().len() {
        let mut scan = checker.scan_family(&space, i, true)?;
        if let Some((p, c)) = scan.found.pop() {
            confirm_hit(colouring, template, &p, c)?;
            return Ok(Some((p, c)));
        }
    }
    Ok(None)
}

/// Outcome of checking every placement.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbsenceScan {
    pub examined: u64,
    /// Every monochromatic placement, in canonical order.
    pub found: Vec<(Placement, ColourId)>,
}

/// Checks every placement and lists the monochromatic ones.
pub fn verify_absence<C: Colouring + ?Sized>(
    colouring: &C,
    n: usize,
    template: &Template,
    mode: SizeMode,
) -> Result<AbsenceScan> {
    let space = PlacementSpace::new(n, template, mode, None, None)?;
    let mut checker = PlacementChecker::new(colouring, template, n);
    let mut out = AbsenceScan::default();
    for i in 0..space.families().len() {
        let scan = checker.scan_family(&space, i, false)?;
        out.examined += scan.examined;
        for (p, c) in scan.found {
            confirm_hit(colouring, template, &p, c)?;
            out.found.push((p, c));
        }
    }
    Ok(out)
}

/// Largest domain `witness_search` will colour.
pub const WITNESS_DOMAIN_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    /// A colouring of all of `[m]^n` with no monochromatic placement.
    Found {
        colouring: TableColouring,
        nodes: u64,
    },
    /// The search space was exhausted: every `k`-colouring has a monochromatic placement.
    Exhausted { nodes: u64 },
    /// The node budget ran out before the search finished.
    BudgetExceeded { nodes: u64 },
}

struct WitnessState {
    k: usize,
    edges: Vec<Vec<u32>>,
    incident: Vec<Vec<u32>>,
    order: Vec<u32>,
    colour: Vec<Option<u8>>,
    allowed: Vec<u64>,
    trail: Vec<(u32, u64)>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Solved,
    Failed,
    OutOfBudget,
}

impl WitnessState {
    /// Assigns `var := c` and forward-checks its edges. Returns false on a
    /// conflict; the trail records every mask change either way.
    fn assign(&mut self, var: u32, c: u8) -> bool {
        self.colour[var as usize] = Some(c);
        for &e in &self.incident[var as usize] {
            let mut open = None;
            let mut open_count = 0;
            let mut mixed = false;
            for &u in &self.edges[e as usize] {
                match self.colour[u as usize] {
                    Some(x) if x != c => {
                        mixed = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        open_count += 1;
                        open = Some(u);
                    }
                }
            }
            if mixed {
                continue;
            }
            match open_count {
                0 => return false,
                1 => {
                    let u = open.expect("one open point");
                    let mask = self.allowed[u as usize];
                    let bit = 1u64 << c;
                    if mask & bit != 0 {
                        self.trail.push((u, mask));
                        self.allowed[u as usize] = mask & !bit;
                        if mask & !bit == 0 {
                            return false;
                        }
                    }
                }
                _ => {}
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (u, mask) = self.trail.pop().expect("non-empty trail");
            self.allowed[u as usize] = mask;
        }
    }

    fn solve(&mut self, depth: usize, max_used: Option<u8>) -> Step {
        if depth == self.order.len() {
            return Step::Solved;
        }
        let var = self.order[depth];
        // colours are interchangeable: never open a colour beyond max_used + 1
        let limit = max_used.map_or(1, |m| (m as usize + 2).min(self.k));
        for c in 0..limit as u8 {
            if self.allowed[var as usize] & (1u64 << c) == 0 {
                continue;
            }
            if self.nodes >= self.budget {
                return Step::OutOfBudget;
            }
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign(var, c) {
                let used = Some(max_used.map_or(c, |m| m.max(c)));
                match self.solve(depth + 1, used) {
                    Step::Failed => {}
                    other => return other,
                }
            }
            self.colour[var as usize] = None;
            self.undo_to(mark);
        }
        Step::Failed
    }
}

/// Backtracking search for a `k`-colouring of `[m]^n` with no monochromatic
/// placement of `template`.
///
/// Words in no block set are coloured 0. The remaining words are coloured in
/// order of decreasing block-set degree with forward checking: once every
/// point of a block set but one shares a colour, that colour is removed from
/// the last point. `budget` bounds the number of tentative assignments.
pub fn witness_search(
    n: usize,
    template: &Template,
    mode: SizeMode,
    k: usize,
    budget: u64,
) -> Result<WitnessOutcome> {
    if k == 0 || k > 64 {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must be in 1..=64"
        )));
    }
    let m = template.alphabet();
    let size = space_size(n, m)
        .filter(|&s| s <= WITNESS_DOMAIN_LIMIT)
        .ok_or_else(|| {
            Error::InvalidParameter(format!("[{m}]^{n} is too large to colour explicitly"))
        })?;
    let space = PlacementSpace::new(n, template, mode, None, None)?;

    let mut edges: Vec<Vec<u32>> = Vec::new();
    for p in space.iter() {
        let mut edge: Vec<u32> = blockset_points(&p, template)?
            .iter()
            .map(|w| w.index() as u32)
            .collect();
        edge.sort_unstable();
        edges.push(edge);
    }
    edges.sort();
    edges.dedup();

    let mut incident = alloc::vec![Vec::new(); size as usize];
    for (e, edge) in edges.iter().enumerate() {
        for &u in edge {
            incident[u as usize].push(e as u32);
        }
    }
    let mut order: Vec<u32> = (0..size as u32)
        .filter(|&u| !incident[u as usize].is_empty())
        .collect();
    order.sort_by_key(|&u| (core::cmp::Reverse(incident[u as usize].len()), u));

    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut state = WitnessState {
        k,
        edges,
        incident,
        order,
        colour: alloc::vec![None; size as usize],
        allowed: alloc::vec![full; size as usize],
        trail: Vec::new(),
        nodes: 0,
        budget,
    };
    match state.solve(0, None) {
        Step::OutOfBudget => Ok(WitnessOutcome::BudgetExceeded { nodes: state.nodes }),
        Step::Failed => Ok(WitnessOutcome::Exhausted { nodes: state.nodes }),
        Step::Solved => {
            let mut entries = BTreeMap::new();
            for i in 0..size {
                let c = state.colour[i as usize].unwrap_or(0);
                entries.insert(Word::from_index(i, n, m)?, ColourId(c as u64));
            }
            let table = TableColouring::with_colour_count(entries, k as u64)?;
            if find_monochromatic(&table, n, template, mode, None)?.is_some() {
                return Err(Error::VerificationFailed);
            }
            Ok(WitnessOutcome::Found {
                colouring: table,
                nodes: state.nodes,
            })
        }
    }
}

/// A set all of whose `r`-subsets receive one colour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousSet<Col> {
    pub n: usize,
    pub r: usize,
    /// 1-based, ascending.
    pub subset: Vec<usize>,
    pub colour: Col,
}

/// The lexicographically first `target`-subset of `[n]` whose `r`-subsets all
/// share one colour under `colour_of` (called with 1-based ascending subsets).
pub fn homogeneous_subset_search<Col, F>(
    n: usize,
    r: usize,
    target: usize,
    mut colour_of: F,
) -> Result<Option<HomogeneousSet<Col>>>
where
    Col: Clone + PartialEq,
    F: FnMut(&[usize]) -> Result<Col>,
{
    if r == 0 || target < r {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= r <= target, got r = {r}, target = {target}"
        )));
    }
    if target > n {
        return Ok(None);
    }
    let mut memo: BTreeMap<Vec<usize>, Col> = BTreeMap::new();
    let mut lookup = |s: &[usize]| -> Result<Col> {
        if let Some(c) = memo.get(s) {
            return Ok(c.clone());
        }
        let c = colour_of(s)?;
        memo.insert(s.to_vec(), c.clone());
        Ok(c)
    };

    // chosen elements and, once |chosen| >= r, the common colour
    let mut chosen: Vec<usize> = Vec::with_capacity(target);
    let mut colour: Option<Col> = None;
    let mut next = 1usize;
    loop {
        if chosen.len() == target {
            return Ok(Some(HomogeneousSet {
                n,
                r,
                subset: chosen,
                colour: colour.expect("target >= r"),
            }));
        }
        let room = n + 1 - next >= target - chosen.len();
        let mut accepted = false;
        if room && next <= n {
            chosen.push(next);
            accepted = true;
            if chosen.len() >= r {
                // every r-subset through the new element
                let prefix = chosen.len() - 1;
                let mut saved = colour.clone();
                for pick in Combinations::new(prefix, r - 1) {
                    let mut s: Vec<usize> = pick.iter().map(|&i| chosen[i]).collect();
                    s.push(next);
                    let c = lookup(&s)?;
                    match &saved {
                        None => saved = Some(c),
                        Some(prev) if *prev != c => {
                            accepted = false;
                            break;
                        }
                        Some(_) => {}
                    }
                }
                if accepted {
                    colour = saved;
                } else {
                    chosen.pop();
                }
            }
        }
        if accepted {
            next += 1;
            continue;
        }
        if room && next < n {
            next += 1;
            continue;
        }
        // backtrack
        loop {
            let Some(last) = chosen.pop() else {
                return Ok(None);
            };
            if chosen.len() < r {
                colour = None;
            }
            if n - last >= target - chosen.len() {
                next = last + 1;
                break;
            }
        }
    }
}

/// Output of the ABCCBA extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    /// The homogeneous set used, 1-based ascending.
    pub subset: Vec<usize>,
    /// The colliding z-words `z_i`, `z_j` with `i < j`.
    pub i: usize,
    pub j: usize,
    pub placement: Placement,
    pub colour: ColourId,
    /// The six points, in lexicographic order.
    pub points: Vec<Word>,
}

/// Builds the monochromatic ABCCBA copy of `123` from a homogeneous set.
///
/// `subset` (size `2k + 4`) must be homogeneous for the colouring induced by
/// `theta` on `(2k+2)`-subsets. With `x` the word holding 2's on the first
/// `2k + 2` elements of `subset` and 3's elsewhere, the `k + 1` words
/// `f(x, z_1), …, f(x, z_{k+1})` are coloured and the first pair `i < j`
/// (ordered by `i`, then `j`) sharing a colour is taken. The blocks are the
/// subset-relative positions `{2i-1, 2j+2}`, `{2i, 2j+1}`, `{2i+1, 2j}`; the
/// other subset positions carry the untouched `12` pairs of the z-words and
/// every coordinate outside the subset is a 3.
pub fn theorem3_extract<C: Colouring + ?Sized>(
    theta: &C,
    n: usize,
    k: usize,
    subset: &[usize],
) -> Result<Extraction> {
    let size = 2 * k + 4;
    if subset.len() != size {
        return Err(Error::InvalidParameter(format!(
            "subset has {} elements, need {size}",
            subset.len()
        )));
    }
    if subset.windows(2).any(|w| w[0] >= w[1]) || subset[0] == 0 || subset[size - 1] > n {
        return Err(Error::InvalidParameter(String::from(
            "subset must be strictly increasing within [n]",
        )));
    }

    let induced = InducedColouring::new(theta, k);
    let mut common: Option<Vec<ColourId>> = None;
    for pick in Combinations::new(size, 2 * k + 2) {
        let s: Vec<usize> = pick.iter().map(|&i| subset[i]).collect();
        let tuple = induced.subset_tuple(n, &s)?;
        match &common {
            None => common = Some(tuple),
            Some(prev) if *prev != tuple => return Err(Error::NotHomogeneous),
            Some(_) => {}
        }
    }

    let x = family_a_word(n, &subset[..2 * k + 2])?;
    let colours = (1..=k + 1)
        .map(|i| theta.colour(&substitute(&x, &z_word(i, k)?)?))
        .collect::<Result<Vec<ColourId>>>()?;
    let (i, j) = (1..=k + 1)
        .flat_map(|i| (i + 1..=k + 1).map(move |j| (i, j)))
        .find(|&(i, j)| colours[i - 1] == colours[j - 1])
        .ok_or(Error::NoCollision { k })?;
    let colour = colours[i - 1];

    let relative_blocks = [
        [2 * i - 1, 2 * j + 2],
        [2 * i, 2 * j + 1],
        [2 * i + 1, 2 * j],
    ];
    let in_block = |p: usize| relative_blocks.iter().flatten().any(|&q| q == p);
    let mut reference: Vec<(usize, u8)> = Vec::new();
    for p in 1..=size {
        if in_block(p) {
            continue;
        }
        // untouched "12" pairs; between the blocks they start on an even position
        let symbol = if p < 2 * i - 1 || p > 2 * j + 2 {
            if p % 2 == 1 {
                1
            } else {
                2
            }
        } else if p % 2 == 0 {
            1
        } else {
            2
        };
        reference.push((subset[p - 1], symbol));
    }
    for c in 1..=n {
        if subset.binary_search(&c).is_err() {
            reference.push((c, 3));
        }
    }
    let blocks: Vec<Vec<usize>> = relative_blocks
        .iter()
        .map(|b| b.iter().map(|&p| subset[p - 1]).collect())
        .collect();
    let placement = Placement::new(n, blocks, &reference)?;

    let template = Template::from_counts(3, &[1, 1, 1])?;
    let points: Vec<Word> = blockset_points(&placement, &template)?
        .into_iter()
        .collect();
    for w in &points {
        if theta.colour(w)? != colour {
            return Err(Error::ExtractionContradiction);
        }
    }
    Ok(Extraction {
        subset: subset.to_vec(),
        i,
        j,
        placement,
        colour,
        points,
    })
}

/// Induced colouring, homogeneous subset search, extraction.
/// `Ok(None)` when `[n]` has no homogeneous `(2k+4)`-set.
pub fn theorem3_pipeline<C: Colouring + ?Sized>(
    theta: &C,
    n: usize,
    k: usize,
) -> Result<Option<Extraction>> {
    let induced = InducedColouring::new(theta, k);
    let found = homogeneous_subset_search(n, 2 * k + 2, 2 * k + 4, |s| induced.subset_tuple(n, s))?;
    match found {
        None => Ok(None),
        Some(h) => theorem3_extract(theta, n, k, &h.subset).map(Some),
    }
}

/// Size of the χ family for `k`, for callers that report it.
pub fn chi_size(k: usize) -> usize {
    chi_words(k).len()
}
