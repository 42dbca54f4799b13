//! Integer lattice points, generated `l1` balls, and box-bounded searches for
//! monochromatic `x - v, x, x + v` and monochromatic generated balls.
//!
//! Colourings of `Z^n` are only ever evaluated inside an explicit
//! [`LatticeBox`]; candidates that would leave the box are skipped.
//!
//! Candidate order: centres in lexicographic box order (first coordinate most
//! significant), then difference vectors in lexicographic order. A vector and
//! its negation describe the same configuration, so only the representative
//! whose first nonzero coordinate is positive is tried.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::colouring::{ColourId, LatticeColouring};
use crate::combinatorics::Combinations;
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn origin(dim: usize) -> LatticePoint {
        LatticePoint(alloc::vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn l1_norm(&self) -> u64 {
        self.0.iter().map(|x| x.unsigned_abs()).sum()
    }

    pub fn coordinate_sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn scaled(&self, k: i64) -> LatticePoint {
        LatticePoint(self.0.iter().map(|&x| x * k).collect())
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Nonzero, disjointly supported vectors of one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    dim: usize,
    vectors: Vec<LatticePoint>,
}

impl GeneratorSet {
    pub fn new(vectors: Vec<LatticePoint>) -> Result<GeneratorSet> {
        let dim = vectors
            .first()
            .map(LatticePoint::dim)
            .ok_or_else(|| Error::InvalidGenerators(String::from("no generators")))?;
        let mut used = alloc::vec![false; dim];
        for v in &vectors {
            if v.dim() != dim {
                return Err(Error::InvalidGenerators(format!(
                    "generator {v} has dimension {}, expected {dim}",
                    v.dim()
                )));
            }
            let support = v.support();
            if support.is_empty() {
                return Err(Error::InvalidGenerators(String::from("zero generator")));
            }
            for i in support {
                if used[i] {
                    return Err(Error::SupportOverlap);
                }
                used[i] = true;
            }
        }
        Ok(GeneratorSet { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[LatticePoint] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Lattice vector of a word relative to a reference word with the same
/// number of 1's: the sorted 1-positions of `v` minus those of `w`.
pub fn word_to_lattice(v: &Word, w: &Word) -> Result<LatticePoint> {
    if v.len() != w.len() {
        return Err(Error::EncodingMismatch(format!(
            "{v} and {w} have different lengths"
        )));
    }
    let pv = v.positions(1);
    let pw = w.positions(1);
    if pv.len() != pw.len() {
        return Err(Error::EncodingMismatch(format!(
            "{v} has {} 1's, {w} has {}",
            pv.len(),
            pw.len()
        )));
    }
    Ok(LatticePoint(
        pv.iter()
            .zip(&pw)
            .map(|(&c, &a)| c as i64 - a as i64)
            .collect(),
    ))
}

/// Every `λ ∈ Z^t` with `Σ|λ_i| <= r`, lexicographic.
pub fn lambda_tuples(t: usize, r: u64) -> Vec<Vec<i64>> {
    fn rec(t: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for x in -budget..=budget {
            cur.push(x);
            rec(t, budget - x.abs(), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(t, r as i64, &mut Vec::with_capacity(t), &mut out);
    out
}

/// `{Σ λ_i u_i : Σ|λ_i| <= r}`.
pub fn l1_ball(generators: &GeneratorSet, r: u64) -> BTreeSet<LatticePoint> {
    ball_offsets(generators, r).into_iter().collect()
}

fn ball_offsets(generators: &GeneratorSet, r: u64) -> Vec<LatticePoint> {
    lambda_tuples(generators.len(), r)
        .into_iter()
        .map(|lambda| {
            let mut p = LatticePoint::origin(generators.dim);
            for (l, u) in lambda.iter().zip(&generators.vectors) {
                for (x, y) in p.0.iter_mut().zip(&u.0) {
                    *x += l * y;
                }
            }
            p
        })
        .collect()
}

/// An axis-aligned box `Π [lo_i, hi_i]` (inclusive).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl LatticeBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<LatticeBox> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidBox(String::from(
                "bounds must be nonempty and equally long",
            )));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::InvalidBox(String::from(
                "lower bound above upper bound",
            )));
        }
        let b = LatticeBox { lo, hi };
        b.checked_len()
            .ok_or_else(|| Error::InvalidBox(String::from("too many points")))?;
        Ok(b)
    }

    /// `[lo, hi]^dim`.
    pub fn cube(lo: i64, hi: i64, dim: usize) -> Result<LatticeBox> {
        LatticeBox::new(alloc::vec![lo; dim], alloc::vec![hi; dim])
    }

    /// Parses `lo..hi^n`, e.g. `0..3^4` or `-2..2^3`.
    pub fn parse(s: &str) -> Result<LatticeBox> {
        let bad = || Error::InvalidBox(format!("expected lo..hi^n, got {s:?}"));
        let (range, dim) = s.split_once('^').ok_or_else(bad)?;
        let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        let dim: usize = dim.trim().parse().map_err(|_| bad())?;
        LatticeBox::cube(lo, hi, dim)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    fn side(&self, i: usize) -> u64 {
        (self.hi[i] - self.lo[i]) as u64 + 1
    }

    fn checked_len(&self) -> Option<u64> {
        (0..self.dim()).try_fold(1u64, |acc, i| acc.checked_mul(self.side(i)))
    }

    pub fn len(&self) -> u64 {
        self.checked_len().expect("checked at construction")
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.len() == self.dim()
            && p.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (a, b))| a <= x && x <= b)
    }

    /// The `index`-th point in lexicographic order.
    pub fn point(&self, mut index: u64) -> LatticePoint {
        let mut coords = alloc::vec![0i64; self.dim()];
        for i in (0..self.dim()).rev() {
            let side = self.side(i);
            coords[i] = self.lo[i] + (index % side) as i64;
            index /= side;
        }
        LatticePoint(coords)
    }

    pub fn index_of(&self, p: &[i64]) -> Option<u64> {
        if !self.contains(p) {
            return None;
        }
        Some((0..self.dim()).fold(0u64, |acc, i| {
            acc * self.side(i) + (p[i] - self.lo[i]) as u64
        }))
    }

    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }
}

impl fmt::Display for LatticeBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let uniform =
            self.lo.iter().all(|&x| x == self.lo[0]) && self.hi.iter().all(|&x| x == self.hi[0]);
        if uniform {
            write!(f, "{}..{}^{}", self.lo[0], self.hi[0], self.dim())
        } else {
            write!(f, "{:?}..{:?}", self.lo, self.hi)
        }
    }
}

/// Dense colour table over a box; points outside are a [`Error::DomainError`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxTableColouring {
    bounds: LatticeBox,
    colours: Vec<ColourId>,
    count: u64,
}

impl BoxTableColouring {
    /// `colours[i]` is the colour of `bounds.point(i)`.
    pub fn new(bounds: LatticeBox, colours: Vec<ColourId>) -> Result<BoxTableColouring> {
        if colours.len() as u64 != bounds.len() {
            return Err(Error::InvalidParameter(format!(
                "{} colours for a box of {} points",
                colours.len(),
                bounds.len()
            )));
        }
        let count = colours.iter().map(|c| c.0 + 1).max().unwrap_or(0);
        Ok(BoxTableColouring {
            bounds,
            colours,
            count,
        })
    }

    pub fn tabulate<C: LatticeColouring + ?Sized>(
        colouring: &C,
        bounds: LatticeBox,
    ) -> Result<BoxTableColouring> {
        let colours = bounds
            .points()
            .map(|p| colouring.colour(&p.0))
            .collect::<Result<Vec<_>>>()?;
        BoxTableColouring::new(bounds, colours)
    }

    pub fn bounds(&self) -> &LatticeBox {
        &self.bounds
    }
}

impl LatticeColouring for BoxTableColouring {
    fn name(&self) -> String {
        format!("table({})", self.bounds)
    }
    fn colour_count(&self) -> u64 {
        self.count
    }
    fn colour(&self, point: &[i64]) -> Result<ColourId> {
        self.bounds
            .index_of(point)
            .map(|i| self.colours[i as usize])
            .ok_or_else(|| Error::DomainError(format!("{}", LatticePoint(point.to_vec()))))
    }
}

/// All `v` in `Z^dim` with `‖v‖₁ = d` whose first nonzero coordinate is
/// positive, in lexicographic order.
pub fn norm_vectors(dim: usize, d: u64) -> Vec<LatticePoint> {
    fn rec(dim: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<LatticePoint>) {
        if cur.len() == dim {
            if budget == 0 {
                out.push(LatticePoint(cur.clone()));
            }
            return;
        }
        let leading = cur.iter().all(|&x| x == 0);
        let from = if leading { 0 } else { -budget };
        for x in from..=budget {
            cur.push(x);
            rec(dim, budget - x.abs(), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(dim, d as i64, &mut Vec::with_capacity(dim), &mut out);
    }
    out
}

fn translate(x: &[i64], offset: &[i64], out: &mut Vec<i64>) {
    out.clear();
    out.extend(x.iter().zip(offset).map(|(a, b)| a + b));
}

/// Precomputed candidate vectors for the `x - v, x, x + v` search.
#[derive(Debug, Clone)]
pub struct ApSearch {
    bounds: LatticeBox,
    vectors: Vec<LatticePoint>,
}

impl ApSearch {
    pub fn new(bounds: LatticeBox, d: u64) -> Result<ApSearch> {
        if d == 0 {
            return Err(Error::InvalidParameter(String::from(
                "d must be at least 1",
            )));
        }
        let vectors = norm_vectors(bounds.dim(), d);
        Ok(ApSearch { bounds, vectors })
    }

    pub fn bounds(&self) -> &LatticeBox {
        &self.bounds
    }

    /// Number of centres; each is an independent unit of work.
    pub fn centre_count(&self) -> u64 {
        self.bounds.len()
    }

    /// First `v` that works with the centre of index `centre`.
    pub fn at<C: LatticeColouring + ?Sized>(
        &self,
        colouring: &C,
        centre: u64,
    ) -> Result<Option<(LatticePoint, LatticePoint)>> {
        let x = self.bounds.point(centre);
        let mut plus = Vec::with_capacity(x.dim());
        let mut minus = Vec::with_capacity(x.dim());
        let mut cx = None;
        for v in &self.vectors {
            translate(&x.0, &v.0, &mut plus);
            if !self.bounds.contains(&plus) {
                continue;
            }
            let neg: Vec<i64> = v.0.iter().map(|a| -a).collect();
            translate(&x.0, &neg, &mut minus);
            if !self.bounds.contains(&minus) {
                continue;
            }
            let c = match cx {
                Some(c) => c,
                None => *cx.insert(colouring.colour(&x.0)?),
            };
            if colouring.colour(&plus)? == c && colouring.colour(&minus)? == c {
                return Ok(Some((x, v.clone())));
            }
        }
        Ok(None)
    }

    pub fn run<C: LatticeColouring + ?Sized>(
        &self,
        colouring: &C,
    ) -> Result<Option<(LatticePoint, LatticePoint)>> {
        for centre in 0..self.centre_count() {
            if let Some(hit) = self.at(colouring, centre)? {
                return Ok(Some(hit));
            }
        }
        Ok(None)
    }
}

/// Checks a reported `(x, v)` directly.
pub fn verify_ap<C: LatticeColouring + ?Sized>(
    colouring: &C,
    bounds: &LatticeBox,
    x: &LatticePoint,
    v: &LatticePoint,
    d: u64,
) -> Result<bool> {
    if v.l1_norm() != d {
        return Ok(false);
    }
    let pts = [x - v, x.clone(), x + v];
    if !pts.iter().all(|p| bounds.contains(&p.0)) {
        return Ok(false);
    }
    let c = colouring.colour(&x.0)?;
    Ok(colouring.colour(&pts[0].0)? == c && colouring.colour(&pts[2].0)? == c)
}

/// First `(x, v)` with `‖v‖₁ = d` and `x - v, x, x + v` all one colour, all in the box.
pub fn search_l1_ap<C: LatticeColouring + ?Sized>(
    colouring: &C,
    bounds: &LatticeBox,
    d: u64,
) -> Result<Option<(LatticePoint, LatticePoint)>> {
    let search = ApSearch::new(bounds.clone(), d)?;
    let hit = search.run(colouring)?;
    if let Some((x, v)) = &hit {
        if !verify_ap(colouring, bounds, x, v, d)? {
            return Err(Error::VerificationFailed);
        }
    }
    Ok(hit)
}

/// Precomputed generator sets (with their ball offsets) for the generated-ball search.
#[derive(Debug, Clone)]
pub struct BallSearch {
    bounds: LatticeBox,
    candidates: Vec<(GeneratorSet, Vec<LatticePoint>)>,
}

impl BallSearch {
    /// Generator sets are `t`-subsets of [`norm_vectors`] with pairwise
    /// disjoint supports, in lexicographic order of their indices.
    pub fn new(bounds: LatticeBox, r: u64, t: usize, d: u64) -> Result<BallSearch> {
        if r == 0 || t == 0 || d == 0 {
            return Err(Error::InvalidParameter(String::from(
                "r, t and d must be at least 1",
            )));
        }
        let vectors = norm_vectors(bounds.dim(), d);
        let mut candidates = Vec::new();
        for pick in Combinations::new(vectors.len(), t) {
            let chosen: Vec<LatticePoint> = pick.iter().map(|&i| vectors[i].clone()).collect();
            if let Ok(g) = GeneratorSet::new(chosen) {
                let offsets = ball_offsets(&g, r);
                candidates.push((g, offsets));
            }
        }
        Ok(BallSearch { bounds, candidates })
    }

    pub fn bounds(&self) -> &LatticeBox {
        &self.bounds
    }

    pub fn generator_sets(&self) -> impl Iterator<Item = &GeneratorSet> {
        self.candidates.iter().map(|(g, _)| g)
    }

    pub fn centre_count(&self) -> u64 {
        self.bounds.len()
    }

    pub fn at<C: LatticeColouring + ?Sized>(
        &self,
        colouring: &C,
        centre: u64,
    ) -> Result<Option<(LatticePoint, GeneratorSet)>> {
        let x = self.bounds.point(centre);
        let mut p = Vec::with_capacity(x.dim());
        'sets: for (g, offsets) in &self.candidates {
            for off in offsets {
                translate(&x.0, &off.0, &mut p);
                if !self.bounds.contains(&p) {
                    continue 'sets;
                }
            }
            let c = colouring.colour(&x.0)?;
            for off in offsets {
                translate(&x.0, &off.0, &mut p);
                if colouring.colour(&p)? != c {
                    continue 'sets;
                }
            }
            return Ok(Some((x, g.clone())));
        }
        Ok(None)
    }

    pub fn run<C: LatticeColouring + ?Sized>(
        &self,
        colouring: &C,
    ) -> Result<Option<(LatticePoint, GeneratorSet)>> {
        for centre in 0..self.centre_count() {
            if let Some(hit) = self.at(colouring, centre)? {
                return Ok(Some(hit));
            }
        }
        Ok(None)
    }
}

/// Checks a reported `(centre, generators)` directly.
pub fn verify_ball<C: LatticeColouring + ?Sized>(
    colouring: &C,
    bounds: &LatticeBox,
    centre: &LatticePoint,
    generators: &GeneratorSet,
    r: u64,
    d: u64,
) -> Result<bool> {
    if generators.vectors().iter().any(|u| u.l1_norm() != d) {
        return Ok(false);
    }
    let c = colouring.colour(&centre.0)?;
    for off in l1_ball(generators, r) {
        let p = centre + &off;
        if !bounds.contains(&p.0) || colouring.colour(&p.0)? != c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First `(centre, u_1..u_t)` whose translated generated ball of radius `r`
/// lies in the box and is monochromatic.
pub fn search_generated_ball<C: LatticeColouring + ?Sized>(
    colouring: &C,
    bounds: &LatticeBox,
    r: u64,
    t: usize,
    d: u64,
) -> Result<Option<(LatticePoint, GeneratorSet)>> {
    let search = BallSearch::new(bounds.clone(), r, t, d)?;
    let hit = search.run(colouring)?;
    if let Some((x, g)) = &hit {
        if !verify_ball(colouring, bounds, x, g, r, d)? {
            return Err(Error::VerificationFailed);
        }
    }
    Ok(hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{coordinate_sum_colour, ConstantColouring, CoordinateSumColouring};
    use alloc::vec;

    fn lp(xs: &[i64]) -> LatticePoint {
        LatticePoint(xs.to_vec())
    }

    fn word_with_ones(n: usize, ones: &[usize]) -> Word {
        let mut s = vec![2u8; n];
        for &i in ones {
            s[i - 1] = 1;
        }
        Word::new(&s, 2).unwrap()
    }

    #[test]
    fn word_encoding() {
        let w = word_with_ones(6, &[1, 3]);
        assert_eq!(word_to_lattice(&w, &w).unwrap(), lp(&[0, 0]));
        assert_eq!(
            word_to_lattice(&word_with_ones(6, &[1, 4]), &w).unwrap(),
            lp(&[0, 1])
        );
        assert_eq!(
            word_to_lattice(&word_with_ones(6, &[3, 5]), &w).unwrap(),
            lp(&[2, 2])
        );
        assert!(matches!(
            word_to_lattice(&word_with_ones(6, &[3]), &w),
            Err(Error::EncodingMismatch(_))
        ));
    }

    #[test]
    fn word_encoding_is_antisymmetric() {
        let n = 6;
        let words: Vec<Word> = crate::word::all_words(n, 2).unwrap().collect();
        for a in &words {
            for b in &words {
                if a.count(1) != b.count(1) {
                    continue;
                }
                let ab = word_to_lattice(a, b).unwrap();
                let ba = word_to_lattice(b, a).unwrap();
                assert_eq!(&ab + &ba, LatticePoint::origin(ab.dim()));
            }
        }
    }

    #[test]
    fn norms() {
        assert_eq!(lp(&[0, 0, 0]).l1_norm(), 0);
        assert_eq!(lp(&[1, -1, 0]).l1_norm(), 2);
        assert_eq!(lp(&[2, 2]).l1_norm(), 4);
    }

    #[test]
    fn ball_examples() {
        let g = GeneratorSet::new(vec![lp(&[1, -1, 0, 0])]).unwrap();
        let ball = l1_ball(&g, 1);
        assert_eq!(ball.len(), 3);
        assert!(ball.contains(&lp(&[-1, 1, 0, 0])));
        assert!(ball.contains(&lp(&[0, 0, 0, 0])));
        assert!(ball.contains(&lp(&[1, -1, 0, 0])));

        let g2 = GeneratorSet::new(vec![lp(&[1, 1, 0, 0]), lp(&[0, 0, 2, 0])]).unwrap();
        assert_eq!(l1_ball(&g2, 2).len(), 13);
        assert_eq!(
            l1_ball(&g2, 0),
            [LatticePoint::origin(4)].into_iter().collect()
        );

        assert_eq!(
            GeneratorSet::new(vec![lp(&[1, 1, 0]), lp(&[0, 1, 1])]),
            Err(Error::SupportOverlap)
        );
        assert!(GeneratorSet::new(vec![lp(&[0, 0])]).is_err());
    }

    #[test]
    fn ball_size_depends_only_on_t_and_r() {
        let sets = [
            vec![lp(&[1, 0, 0, 0, 0, 0])],
            vec![lp(&[3, -1, 0, 0, 0, 0])],
            vec![lp(&[1, 0, 0, 0, 0, 0]), lp(&[0, 2, 0, 0, 0, 0])],
            vec![lp(&[1, 1, 0, 0, 0, 0]), lp(&[0, 0, -1, 5, 0, 0])],
            vec![
                lp(&[1, 0, 0, 0, 0, 0]),
                lp(&[0, 1, 0, 0, 0, 0]),
                lp(&[0, 0, 1, 0, 0, 0]),
            ],
            vec![
                lp(&[2, -2, 0, 0, 0, 0]),
                lp(&[0, 0, 7, 0, 0, 0]),
                lp(&[0, 0, 0, 1, 1, 1]),
            ],
        ];
        for vs in sets {
            let g = GeneratorSet::new(vs).unwrap();
            for r in 0..=3 {
                let ball = l1_ball(&g, r);
                assert_eq!(ball.len(), lambda_tuples(g.len(), r).len());
                for p in &ball {
                    assert!(ball.contains(&-p));
                }
            }
        }
    }

    #[test]
    fn boxes() {
        let b = LatticeBox::parse("0..3^2").unwrap();
        assert_eq!(b.len(), 16);
        assert_eq!(b.point(0), lp(&[0, 0]));
        assert_eq!(b.point(1), lp(&[0, 1]));
        assert_eq!(b.point(15), lp(&[3, 3]));
        for i in 0..16 {
            assert_eq!(b.index_of(&b.point(i).0), Some(i));
        }
        assert!(LatticeBox::parse("-2..2^3").is_ok());
        assert!(LatticeBox::parse("3..1^2").is_err());
        assert!(LatticeBox::parse("0..3").is_err());
    }

    #[test]
    fn norm_vector_enumeration() {
        let vs = norm_vectors(3, 2);
        assert_eq!(vs.len(), 9);
        assert!(vs.windows(2).all(|w| w[0] < w[1]));
        assert!(vs.iter().all(|v| v.l1_norm() == 2));
        assert_eq!(vs[0], lp(&[0, 0, 2]));
    }

    #[test]
    fn ap_search_examples() {
        let b = LatticeBox::cube(0, 3, 3).unwrap();
        let hit = search_l1_ap(&ConstantColouring(ColourId(0)), &b, 2)
            .unwrap()
            .unwrap();
        assert_eq!(hit, (lp(&[0, 1, 1]), lp(&[0, 1, -1])));

        // sum mod 4 colouring: v = (1, -1, 0) leaves the sum fixed
        let cs = CoordinateSumColouring::new(2).unwrap();
        let (x, v) = search_l1_ap(&cs, &LatticeBox::cube(0, 2, 3).unwrap(), 2)
            .unwrap()
            .unwrap();
        assert_eq!(v.coordinate_sum(), 0);
        assert!(verify_ap(&cs, &LatticeBox::cube(0, 2, 3).unwrap(), &x, &v, 2).unwrap());

        let parity = CoordinateSumColouring::new(1).unwrap();
        assert_eq!(
            search_l1_ap(&parity, &LatticeBox::cube(0, 3, 2).unwrap(), 1).unwrap(),
            None
        );
    }

    #[test]
    fn ball_search_examples() {
        let b = LatticeBox::cube(0, 3, 3).unwrap();
        let parity = CoordinateSumColouring::new(1).unwrap();
        for d in [1, 3] {
            assert_eq!(search_generated_ball(&parity, &b, 1, 1, d).unwrap(), None);
        }
        let hit = search_generated_ball(&ConstantColouring(ColourId(0)), &b, 1, 2, 1)
            .unwrap()
            .unwrap();
        assert_eq!(hit.0, lp(&[0, 1, 1]));
        assert_eq!(hit.1.vectors(), &[lp(&[0, 0, 1]), lp(&[0, 1, 0])]);
    }

    #[test]
    fn coordinate_sum_flips_under_d_unit_steps() {
        for d in 1..=3u64 {
            let b = LatticeBox::cube(0, 2 * d as i64 - 1, 4).unwrap();
            for x in b.points() {
                for ones in Combinations::new(4, d as usize) {
                    let mut y = x.clone();
                    for i in ones {
                        y.0[i] += 1;
                    }
                    assert_ne!(
                        coordinate_sum_colour(&x.0, d),
                        coordinate_sum_colour(&y.0, d)
                    );
                }
            }
        }
    }
}
