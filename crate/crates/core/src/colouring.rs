//! Colourings of words and of lattice points.
//!
//! Vector-valued colours (the contribution colouring, the induced tuple
//! colouring, products) are mapped to dense [`ColourId`]s by mixed radix:
//! component `j` has weight `r_0 · r_1 ⋯ r_{j-1}`, so component 0 is the
//! least significant digit.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::combinatorics::{binomial, Combinations};
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColourId(pub u64);

impl fmt::Display for ColourId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A pure map from words to colours.
///
/// Implementations must return the same colour for the same word on every
/// call and from every thread, and every colour must be below
/// [`Colouring::colour_count`].
pub trait Colouring: Send + Sync {
    fn name(&self) -> String;

    /// Declared upper bound on the number of colours.
    fn colour_count(&self) -> u64;

    fn colour(&self, word: &Word) -> Result<ColourId>;
}

impl<C: Colouring + ?Sized> Colouring for &C {
    fn name(&self) -> String {
        (**self).name()
    }
    fn colour_count(&self) -> u64 {
        (**self).colour_count()
    }
    fn colour(&self, word: &Word) -> Result<ColourId> {
        (**self).colour(word)
    }
}

impl<C: Colouring + ?Sized> Colouring for Box<C> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn colour_count(&self) -> u64 {
        (**self).colour_count()
    }
    fn colour(&self, word: &Word) -> Result<ColourId> {
        (**self).colour(word)
    }
}

impl<C: Colouring + ?Sized> Colouring for Arc<C> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn colour_count(&self) -> u64 {
        (**self).colour_count()
    }
    fn colour(&self, word: &Word) -> Result<ColourId> {
        (**self).colour(word)
    }
}

/// A pure map from lattice points to colours.
pub trait LatticeColouring: Send + Sync {
    fn name(&self) -> String;

    fn colour_count(&self) -> u64;

    fn colour(&self, point: &[i64]) -> Result<ColourId>;
}

impl<C: LatticeColouring + ?Sized> LatticeColouring for &C {
    fn name(&self) -> String {
        (**self).name()
    }
    fn colour_count(&self) -> u64 {
        (**self).colour_count()
    }
    fn colour(&self, point: &[i64]) -> Result<ColourId> {
        (**self).colour(point)
    }
}

impl<C: LatticeColouring + ?Sized> LatticeColouring for Box<C> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn colour_count(&self) -> u64 {
        (**self).colour_count()
    }
    fn colour(&self, point: &[i64]) -> Result<ColourId> {
        (**self).colour(point)
    }
}

fn radix_product(radices: impl IntoIterator<Item = u64>) -> Option<u64> {
    radices
        .into_iter()
        .try_fold(1u64, |acc, r| acc.checked_mul(r))
}

/// Packs `digits[j] < radices[j]` into a single id.
pub fn pack_mixed_radix(digits: &[u64], radices: &[u64]) -> Option<u64> {
    let mut id = 0u64;
    let mut weight = 1u64;
    for (j, (&d, &r)) in digits.iter().zip(radices).enumerate() {
        id = id.checked_add(d.checked_mul(weight)?)?;
        if j + 1 < digits.len() {
            weight = weight.checked_mul(r)?;
        }
    }
    Some(id)
}

/// Inverse of [`pack_mixed_radix`].
pub fn unpack_mixed_radix(mut id: u64, radices: &[u64]) -> Vec<u64> {
    radices
        .iter()
        .map(|&r| {
            let d = id % r;
            id /= r;
            d
        })
        .collect()
}

/// Every word gets the same colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstantColouring(pub ColourId);

impl Colouring for ConstantColouring {
    fn name(&self) -> String {
        format!("constant:c={}", self.0)
    }
    fn colour_count(&self) -> u64 {
        self.0 .0 + 1
    }
    fn colour(&self, _: &Word) -> Result<ColourId> {
        Ok(self.0)
    }
}

impl LatticeColouring for ConstantColouring {
    fn name(&self) -> String {
        format!("constant:c={}", self.0)
    }
    fn colour_count(&self) -> u64 {
        self.0 .0 + 1
    }
    fn colour(&self, _: &[i64]) -> Result<ColourId> {
        Ok(self.0)
    }
}

/// A colouring backed by a closure.
pub struct FnColouring<F> {
    name: String,
    count: u64,
    f: F,
}

impl<F> FnColouring<F>
where
    F: Fn(&Word) -> u64 + Send + Sync,
{
    pub fn new(name: &str, count: u64, f: F) -> Self {
        FnColouring {
            name: String::from(name),
            count,
            f,
        }
    }
}

impl<F> Colouring for FnColouring<F>
where
    F: Fn(&Word) -> u64 + Send + Sync,
{
    fn name(&self) -> String {
        self.name.clone()
    }
    fn colour_count(&self) -> u64 {
        self.count
    }
    fn colour(&self, word: &Word) -> Result<ColourId> {
        Ok(ColourId((self.f)(word)))
    }
}

/// A lattice colouring backed by a closure.
pub struct FnLatticeColouring<F> {
    name: String,
    count: u64,
    f: F,
}

impl<F> FnLatticeColouring<F>
where
    F: Fn(&[i64]) -> u64 + Send + Sync,
{
    pub fn new(name: &str, count: u64, f: F) -> Self {
        FnLatticeColouring {
            name: String::from(name),
            count,
            f,
        }
    }
}

impl<F> LatticeColouring for FnLatticeColouring<F>
where
    F: Fn(&[i64]) -> u64 + Send + Sync,
{
    fn name(&self) -> String {
        self.name.clone()
    }
    fn colour_count(&self) -> u64 {
        self.count
    }
    fn colour(&self, point: &[i64]) -> Result<ColourId> {
        Ok(ColourId((self.f)(point)))
    }
}

/// The adversarial colouring with values in `Z_modulus^length`.
///
/// Each coordinate `i` holding a 1 contributes the basis vector `e_{a_i}`,
/// where `a_i` is the number of earlier coordinates holding a 1 or a 2,
/// reduced mod `length`. The colour is the sum of the contributions mod
/// `modulus`. Coordinates holding anything else contribute nothing and are
/// not counted, so the colour depends only on the subsequence of 1's and 2's.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContributionColouring {
    modulus: u64,
    length: usize,
    count: u64,
}

impl ContributionColouring {
    pub fn new(modulus: u64, length: usize) -> Result<ContributionColouring> {
        if modulus < 2 {
            return Err(Error::InvalidParameter(format!(
                "modulus {modulus} must be at least 2"
            )));
        }
        if length < 1 {
            return Err(Error::InvalidParameter(String::from(
                "vector length must be at least 1",
            )));
        }
        let count =
            radix_product(core::iter::repeat_n(modulus, length)).ok_or(Error::ColourOverflow)?;
        Ok(ContributionColouring {
            modulus,
            length,
            count,
        })
    }

    /// The parameters used against template `1 2^d 3^(d^3)`: `Z_{d+1}^{d^2+1}`.
    pub fn for_block_size(d: usize) -> Result<ContributionColouring> {
        ContributionColouring::new(d as u64 + 1, d * d + 1)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// The colour as a vector in `Z_modulus^length`.
    pub fn vector(&self, word: &Word) -> Vec<u64> {
        contribution_vector(word.symbols(), self.modulus, self.length)
    }

    pub fn id_of(&self, vector: &[u64]) -> ColourId {
        let radices = alloc::vec![self.modulus; self.length];
        ColourId(pack_mixed_radix(vector, &radices).expect("checked at construction"))
    }

    pub fn vector_of(&self, id: ColourId) -> Vec<u64> {
        unpack_mixed_radix(id.0, &alloc::vec![self.modulus; self.length])
    }
}

/// The contribution colour of a raw symbol sequence.
pub fn contribution_vector(symbols: &[u8], modulus: u64, length: usize) -> Vec<u64> {
    let mut v = alloc::vec![0u64; length];
    let mut seen = 0usize;
    for &s in symbols {
        if s == 1 {
            let a = seen % length;
            v[a] = (v[a] + 1) % modulus;
        }
        if s == 1 || s == 2 {
            seen += 1;
        }
    }
    v
}

impl Colouring for ContributionColouring {
    fn name(&self) -> String {
        format!("contribution:m={},l={}", self.modulus, self.length)
    }
    fn colour_count(&self) -> u64 {
        self.count
    }
    fn colour(&self, word: &Word) -> Result<ColourId> {
        if self.length > 64 {
            return Ok(self.id_of(&self.vector(word)));
        }
        // inline the packing to avoid the intermediate vector
        let mut digits = [0u64; 64];
        let mut seen = 0usize;
        for &s in word.symbols() {
            if s == 1 {
                let a = seen % self.length;
                digits[a] += 1;
            }
            if s == 1 || s == 2 {
                seen += 1;
            }
        }
        let mut id = 0u64;
        for &d in digits[..self.length].iter().rev() {
            id = id * self.modulus + d % self.modulus;
        }
        Ok(ColourId(id))
    }
}

/// Explicit lookup table. Words outside the table are a [`Error::DomainError`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableColouring {
    entries: BTreeMap<Word, ColourId>,
    count: u64,
}

impl TableColouring {
    /// The declared colour count is one more than the largest id present.
    pub fn new(entries: BTreeMap<Word, ColourId>) -> TableColouring {
        let count = entries.values().map(|c| c.0 + 1).max().unwrap_or(0);
        TableColouring { entries, count }
    }

    pub fn with_colour_count(
        entries: BTreeMap<Word, ColourId>,
        count: u64,
    ) -> Result<TableColouring> {
        if entries.values().any(|c| c.0 >= count) {
            return Err(Error::InvalidParameter(format!(
                "table uses a colour id >= the declared count {count}"
            )));
        }
        Ok(TableColouring { entries, count })
    }

    /// Tabulates `colouring` over `domain`.
    pub fn tabulate<C: Colouring + ?Sized>(
        colouring: &C,
        domain: impl IntoIterator<Item = Word>,
    ) -> Result<TableColouring> {
        let mut entries = BTreeMap::new();
        for w in domain {
            let c = colouring.colour(&w)?;
            entries.insert(w, c);
        }
        TableColouring::with_colour_count(entries, colouring.colour_count())
    }

    pub fn entries(&self) -> &BTreeMap<Word, ColourId> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Colouring for TableColouring {
    fn name(&self) -> String {
        format!("table({} words)", self.entries.len())
    }
    fn colour_count(&self) -> u64 {
        self.count
    }
    fn colour(&self, word: &Word) -> Result<ColourId> {
        self.entries
            .get(word)
            .copied()
            .ok_or_else(|| Error::DomainError(format!("{word}")))
    }
}

/// Tuple of component colours, packed by mixed radix (first component least significant).
pub struct ProductColouring {
    parts: Vec<Box<dyn Colouring>>,
    radices: Vec<u64>,
    count: u64,
}

impl ProductColouring {
    pub fn new(parts: Vec<Box<dyn Colouring>>) -> Result<ProductColouring> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter(String::from("empty product")));
        }
        let radices: Vec<u64> = parts.iter().map(|p| p.colour_count().max(1)).collect();
        let count = radix_product(radices.iter().copied()).ok_or(Error::ColourOverflow)?;
        Ok(ProductColouring {
            parts,
            radices,
            count,
        })
    }

    pub fn components(&self, id: ColourId) -> Vec<ColourId> {
        unpack_mixed_radix(id.0, &self.radices)
            .into_iter()
            .map(ColourId)
            .collect()
    }
}

impl Colouring for ProductColouring {
    fn name(&self) -> String {
        let names: Vec<String> = self.parts.iter().map(|p| p.name()).collect();
        format!("product({})", names.join(" x "))
    }
    fn colour_count(&self) -> u64 {
        self.count
    }
    fn colour(&self, word: &Word) -> Result<ColourId> {
        let digits = self
            .parts
            .iter()
            .map(|p| p.colour(word).map(|c| c.0))
            .collect::<Result<Vec<u64>>>()?;
        Ok(ColourId(
            pack_mixed_radix(&digits, &self.radices).ok_or(Error::ColourOverflow)?,
        ))
    }
}

/// `z_i`: `k + 1` blocks `12` with block `i` flipped to `21`. Length `2k + 2`, over `[2]`.
pub fn z_word(i: usize, k: usize) -> Result<Word> {
    if i == 0 || i > k + 1 {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: k + 1,
        });
    }
    let mut symbols = Vec::with_capacity(2 * k + 2);
    for b in 1..=k + 1 {
        if b == i {
            symbols.extend_from_slice(&[2, 1]);
        } else {
            symbols.extend_from_slice(&[1, 2]);
        }
    }
    Word::new(&symbols, 2)
}

/// The binary words of length `2k + 2` with exactly `k + 1` 1's, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiFamily {
    k: usize,
    words: Vec<Word>,
}

impl ChiFamily {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Position of `w` in the family.
    pub fn position(&self, w: &Word) -> Option<usize> {
        self.words.binary_search(w).ok()
    }
}

pub fn chi_words(k: usize) -> ChiFamily {
    let profile = crate::word::Profile::new(&[k + 1, k + 1]);
    let words: Vec<Word> = crate::word::enumerate_with_profile(2 * k + 2, 2, &profile)
        .expect("valid profile")
        .collect();
    debug_assert_eq!(Some(words.len() as u128), binomial(2 * k + 2, k + 1));
    ChiFamily { k, words }
}

/// `f(x, w)`: writes the letters of `w`, in order, over the 2's of `x`.
pub fn substitute(x: &Word, w: &Word) -> Result<Word> {
    if x.count(1) > 0 {
        return Err(Error::SubstitutionMismatch(format!("{x} contains a 1")));
    }
    let twos = x.count(2);
    if twos != w.len() {
        return Err(Error::SubstitutionMismatch(format!(
            "{x} has {twos} 2's but {w} has length {}",
            w.len()
        )));
    }
    if let Some(&bad) = w.symbols().iter().find(|&&s| s > 2) {
        return Err(Error::SubstitutionMismatch(format!(
            "{w} has symbol {bad} outside [2]"
        )));
    }
    let mut letters = w.symbols().iter();
    let out: Vec<u8> = x
        .symbols()
        .iter()
        .map(|&s| {
            if s == 2 {
                *letters.next().expect("counted")
            } else {
                s
            }
        })
        .collect();
    Ok(Word::from_raw(out, x.alphabet().max(2)))
}

/// Whether `x` has exactly `2k + 2` 2's and no 1's.
pub fn in_family_a(x: &Word, k: usize) -> bool {
    x.count(1) == 0 && x.count(2) == 2 * k + 2
}

/// The 2/3-word of length `n` with 2's exactly on `subset` (1-based).
pub fn family_a_word(n: usize, subset: &[usize]) -> Result<Word> {
    let mut symbols = alloc::vec![3u8; n];
    for &c in subset {
        if c == 0 || c > n {
            return Err(Error::IndexOutOfRange { index: c, max: n });
        }
        symbols[c - 1] = 2;
    }
    Word::new(&symbols, 3)
}

/// All of family A in `[3]^n`, in lexicographic order of the 2-position sets.
pub fn family_a(n: usize, k: usize) -> impl Iterator<Item = Word> {
    Combinations::new(n, 2 * k + 2).map(move |c| {
        let subset: Vec<usize> = c.into_iter().map(|i| i + 1).collect();
        family_a_word(n, &subset).expect("in range")
    })
}

/// `Θ(x) = (θ(f(x, w_1)), …, θ(f(x, w_s)))` over the χ family.
pub struct InducedColouring<C> {
    base: C,
    chi: ChiFamily,
    packed_count: Option<u64>,
}

impl<C: Colouring> InducedColouring<C> {
    pub fn new(base: C, k: usize) -> InducedColouring<C> {
        let chi = chi_words(k);
        let packed_count =
            radix_product(core::iter::repeat_n(base.colour_count().max(1), chi.len()));
        InducedColouring {
            base,
            chi,
            packed_count,
        }
    }

    pub fn k(&self) -> usize {
        self.chi.k
    }

    pub fn chi(&self) -> &ChiFamily {
        &self.chi
    }

    pub fn base(&self) -> &C {
        &self.base
    }

    /// The colour tuple, in χ order.
    pub fn colour_tuple(&self, x: &Word) -> Result<Vec<ColourId>> {
        if !in_family_a(x, self.chi.k) {
            return Err(Error::NotInFamilyA(format!("{x}")));
        }
        self.chi
            .words
            .iter()
            .map(|w| self.base.colour(&substitute(x, w)?))
            .collect()
    }

    /// `Θ` on a `(2k+2)`-subset of `[n]`, viewed as the positions of the 2's.
    pub fn subset_tuple(&self, n: usize, subset: &[usize]) -> Result<Vec<ColourId>> {
        self.colour_tuple(&family_a_word(n, subset)?)
    }
}

impl<C: Colouring> Colouring for InducedColouring<C> {
    fn name(&self) -> String {
        format!("induced:base={},k={}", self.base.name(), self.chi.k)
    }

    /// `u64::MAX` when the packed tuple space does not fit; evaluation then fails.
    fn colour_count(&self) -> u64 {
        self.packed_count.unwrap_or(u64::MAX)
    }

    fn colour(&self, word: &Word) -> Result<ColourId> {
        if self.packed_count.is_none() {
            return Err(Error::ColourOverflow);
        }
        let digits: Vec<u64> = self.colour_tuple(word)?.into_iter().map(|c| c.0).collect();
        let radices = alloc::vec![self.base.colour_count().max(1); digits.len()];
        Ok(ColourId(
            pack_mixed_radix(&digits, &radices).ok_or(Error::ColourOverflow)?,
        ))
    }
}

/// Two colours on `Z^n`: 0 when the coordinate sum mod `2d` lies in
/// `0..d`, 1 otherwise. Negative sums use the representative in `0..2d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoordinateSumColouring {
    d: u64,
}

impl CoordinateSumColouring {
    pub fn new(d: u64) -> Result<CoordinateSumColouring> {
        if d == 0 {
            return Err(Error::InvalidParameter(String::from(
                "d must be at least 1",
            )));
        }
        Ok(CoordinateSumColouring { d })
    }

    pub fn d(&self) -> u64 {
        self.d
    }
}

pub fn coordinate_sum_colour(point: &[i64], d: u64) -> ColourId {
    let sum: i128 = point.iter().map(|&x| x as i128).sum();
    let r = sum.rem_euclid(2 * d as i128);
    ColourId(u64::from(r >= d as i128))
}

impl LatticeColouring for CoordinateSumColouring {
    fn name(&self) -> String {
        format!("coordsum:d={}", self.d)
    }
    fn colour_count(&self) -> u64 {
        2
    }
    fn colour(&self, point: &[i64]) -> Result<ColourId> {
        Ok(coordinate_sum_colour(point, self.d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::all_words;
    use alloc::string::ToString;
    use alloc::vec;

    fn w3(s: &str) -> Word {
        Word::parse(s, 3).unwrap()
    }

    fn w2(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn contribution_examples() {
        for (m, l) in [(2, 2), (3, 5), (4, 1)] {
            let c = ContributionColouring::new(m, l).unwrap();
            assert_eq!(c.vector(&w3("3333")), vec![0; l]);
        }
        let c = ContributionColouring::new(2, 2).unwrap();
        assert_eq!(c.vector(&w3("121")), vec![0, 0]);
        assert_eq!(c.vector(&w3("211")), vec![1, 1]);
        assert_eq!(c.colour_count(), 4);
        assert_eq!(ContributionColouring::new(3, 3).unwrap().colour_count(), 27);
        assert!(ContributionColouring::new(1, 3).is_err());
        assert!(ContributionColouring::new(2, 0).is_err());
    }

    #[test]
    fn contribution_id_is_the_packed_vector() {
        let c = ContributionColouring::new(3, 5).unwrap();
        for w in all_words(6, 3).unwrap() {
            let v = c.vector(&w);
            let id = c.colour(&w).unwrap();
            assert_eq!(c.id_of(&v), id);
            assert_eq!(c.vector_of(id), v);
            assert!(id.0 < c.colour_count());
        }
    }

    /// Drop the 3's, keep the 1/2 subsequence.
    fn one_two_subsequence(w: &Word) -> Vec<u8> {
        w.symbols().iter().copied().filter(|&s| s != 3).collect()
    }

    #[test]
    fn contribution_ignores_where_the_threes_are() {
        let c = ContributionColouring::new(3, 3).unwrap();
        for n in 0..=8 {
            let mut by_subsequence = std::collections::HashMap::<Vec<u8>, ColourId>::new();
            for w in all_words(n, 3).unwrap() {
                let colour = c.colour(&w).unwrap();
                let prev = *by_subsequence
                    .entry(one_two_subsequence(&w))
                    .or_insert(colour);
                assert_eq!(prev, colour, "{w}");
            }
        }
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(
            substitute(&w3("2322333222"), &w2("121212"))
                .unwrap()
                .to_string(),
            "1321333212"
        );
        assert_eq!(
            substitute(&w3("222222"), &w2("211212"))
                .unwrap()
                .to_string(),
            "211212"
        );
        assert!(matches!(
            substitute(&w3("2322333222"), &w2("12121")),
            Err(Error::SubstitutionMismatch(_))
        ));
        assert!(matches!(
            substitute(&w3("1322"), &w2("12")),
            Err(Error::SubstitutionMismatch(_))
        ));
    }

    #[test]
    fn chi_family() {
        assert_eq!(chi_words(2).len(), 20);
        let k0: Vec<String> = chi_words(0).words().iter().map(|w| w.to_string()).collect();
        assert_eq!(k0, ["12", "21"]);
        for k in 0..=6 {
            let chi = chi_words(k);
            assert_eq!(Some(chi.len() as u128), binomial(2 * k + 2, k + 1));
            assert!(chi.words().windows(2).all(|p| p[0] < p[1]));
            for i in 1..=k + 1 {
                assert!(chi.position(&z_word(i, k).unwrap()).is_some());
            }
        }
    }

    #[test]
    fn z_words() {
        assert_eq!(z_word(1, 2).unwrap().to_string(), "211212");
        assert_eq!(z_word(2, 2).unwrap().to_string(), "122112");
        assert_eq!(z_word(3, 2).unwrap().to_string(), "121221");
        assert_eq!(
            z_word(0, 2),
            Err(Error::IndexOutOfRange { index: 0, max: 3 })
        );
        assert_eq!(
            z_word(4, 2),
            Err(Error::IndexOutOfRange { index: 4, max: 3 })
        );
    }

    #[test]
    fn substitution_is_a_bijection() {
        for (k, n) in [(1usize, 6usize), (2, 8)] {
            let chi = chi_words(k);
            let mut image = std::collections::HashSet::new();
            for x in family_a(n, k) {
                for w in chi.words() {
                    assert!(image.insert(substitute(&x, w).unwrap()));
                }
            }
            let target: std::collections::HashSet<Word> = all_words(n, 3)
                .unwrap()
                .filter(|y| y.count(1) == k + 1 && y.count(2) == k + 1)
                .collect();
            assert_eq!(image, target);
        }
    }

    #[test]
    fn induced_colouring() {
        let constant = InducedColouring::new(ConstantColouring(ColourId(0)), 1);
        for x in family_a(8, 1) {
            assert!(constant
                .colour_tuple(&x)
                .unwrap()
                .iter()
                .all(|&c| c == ColourId(0)));
        }
        assert_eq!(
            InducedColouring::new(ConstantColouring(ColourId(0)), 2)
                .chi()
                .len(),
            20
        );
        let x = family_a_word(10, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(
            InducedColouring::new(ConstantColouring(ColourId(0)), 2)
                .colour_tuple(&x)
                .unwrap()
                .len(),
            20
        );

        let base = ContributionColouring::new(2, 2).unwrap();
        let induced = InducedColouring::new(base, 1);
        for x in family_a(8, 1) {
            let tuple = induced.colour_tuple(&x).unwrap();
            for (w, c) in chi_words(1).words().iter().zip(&tuple) {
                assert_eq!(base.colour(&substitute(&x, w).unwrap()).unwrap(), *c);
            }
            let id = induced.colour(&x).unwrap();
            assert!(id.0 < induced.colour_count());
        }
        assert!(matches!(
            induced.colour_tuple(&w3("1222")),
            Err(Error::NotInFamilyA(_))
        ));
    }

    #[test]
    fn induced_tuple_count_bound() {
        // a 2-colouring of [3]^7 and χ with k = 1 (s = 6): at most 2^6 tuples
        let base = FnColouring::new("index-parity", 2, |w: &Word| w.index() % 2);
        let induced = InducedColouring::new(base, 1);
        let distinct: std::collections::HashSet<Vec<ColourId>> = family_a(7, 1)
            .map(|x| induced.colour_tuple(&x).unwrap())
            .collect();
        assert!(distinct.len() as u64 <= 2u64.pow(6));
    }

    #[test]
    fn table_and_product() {
        let c = ContributionColouring::new(2, 2).unwrap();
        let table = TableColouring::tabulate(&c, all_words(5, 3).unwrap()).unwrap();
        assert_eq!(table.len(), 243);
        for w in all_words(5, 3).unwrap() {
            assert_eq!(table.colour(&w).unwrap(), c.colour(&w).unwrap());
        }
        assert!(matches!(table.colour(&w3("1")), Err(Error::DomainError(_))));

        let single = ProductColouring::new(vec![Box::new(c)]).unwrap();
        for w in all_words(5, 3).unwrap() {
            assert_eq!(single.colour(&w).unwrap(), c.colour(&w).unwrap());
        }
        let two_constants = ProductColouring::new(vec![
            Box::new(ConstantColouring(ColourId(1))),
            Box::new(ConstantColouring(ColourId(2))),
        ])
        .unwrap();
        let colours: std::collections::HashSet<ColourId> = all_words(4, 3)
            .unwrap()
            .map(|w| two_constants.colour(&w).unwrap())
            .collect();
        assert_eq!(colours.len(), 1);
        let id = *colours.iter().next().unwrap();
        assert_eq!(two_constants.components(id), vec![ColourId(1), ColourId(2)]);
    }

    #[test]
    fn coordinate_sum() {
        assert_eq!(coordinate_sum_colour(&[0, 0, 0], 3), ColourId(0));
        assert_eq!(coordinate_sum_colour(&[1, 0, 0], 1), ColourId(1));
        assert_eq!(coordinate_sum_colour(&[-1], 2), ColourId(1));
        assert_eq!(coordinate_sum_colour(&[-3], 2), ColourId(0));
    }
}
