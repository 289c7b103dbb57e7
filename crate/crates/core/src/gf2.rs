//! Linear algebra over the two-element field.
//!
//! Vectors are packed into 64-bit words, so XOR and elimination run wordwise
//! regardless of the ambient dimension. Collections use 1-based indices in
//! every public result, matching the way subcollections are written down by
//! hand (`{1,2,3}`).
//!
//! Two zero-sum solvers live here:
//!
//! * [`zero_sum_subcollection`] is the constructive certificate: take the
//!   left-to-right greedy basis, sum everything outside it, and express that
//!   sum in the basis. The result has size at least `m - rank`.
//! * [`max_zero_sum_subset`] is an exact maximizer. It searches for the
//!   smallest complement whose XOR equals the XOR of the whole collection
//!   (a minimum-weight coset leader), exhaustively for short collections and
//!   by meet-in-the-middle for longer ones.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

const WORD_BITS: usize = 64;

/// Collections up to this length are solved by scanning every subset.
pub const EXHAUSTIVE_MAX_LEN: usize = 20;

/// Largest node budget [`max_zero_sum_subset`] picks on its own when called
/// with `effort_limit == 0`.
pub const AUTO_EFFORT_CAP: u64 = 1 << 25;

/// Subset scans are split into chunks of this many masks (as a power of two)
/// for the thread pool.
const CHUNK_BITS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("vector {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("index {index} is out of range for a collection of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vector is not in the span of the given basis")]
    NotInSpan,
    #[error("indexed vectors are linearly dependent")]
    NotABasis,
    #[error(transparent)]
    Parse(#[from] ParseVectorError),
    #[error("exact search needs {required} nodes but the budget is {limit}")]
    EffortExceeded {
        required: u64,
        limit: u64,
        /// The constructive certificate, always available.
        fallback: SubsetCertificate,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid character {found:?} at position {position}, expected '0' or '1'")]
pub struct ParseVectorError {
    /// 1-based character position.
    pub position: usize,
    pub found: char,
}

/// An element of `F_2^dim`, packed into machine words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    dim: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            words: vec![0; dim.div_ceil(WORD_BITS)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Unit vector with a single one at `position` (0-based).
    pub fn unit(dim: usize, position: usize) -> Self {
        let mut v = Self::zero(dim);
        v.set(position, true);
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Bit `i` (0-based). Panics if `i >= dim`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.dim, "bit {i} out of range for dimension {}", self.dim);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.dim, "bit {i} out of range for dimension {}", self.dim);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn lowest_set_bit(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// In-place addition. Panics if the dimensions differ.
    pub fn add_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.dim, other.dim, "adding vectors of different dimensions");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.dim).map(move |i| self.get(i))
    }
}

impl std::ops::Add for &Gf2Vector {
    type Output = Gf2Vector;

    fn add(self, rhs: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl FromStr for Gf2Vector {
    type Err = ParseVectorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                found => Err(ParseVectorError {
                    position: i + 1,
                    found,
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_bits(&bits))
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector(\"{self}\")")
    }
}

impl Serialize for Gf2Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An ordered list of vectors sharing one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Collection {
    dim: usize,
    vectors: Vec<Gf2Vector>,
}

impl Gf2Collection {
    pub fn new(dim: usize, vectors: Vec<Gf2Vector>) -> Result<Self, Gf2Error> {
        if let Some((i, v)) = vectors.iter().enumerate().find(|(_, v)| v.dim() != dim) {
            return Err(Gf2Error::DimensionMismatch {
                index: i + 1,
                expected: dim,
                found: v.dim(),
            });
        }
        Ok(Self { dim, vectors })
    }

    /// Parses each string as a bit vector of length `dim`.
    pub fn from_bit_strings<S: AsRef<str>>(dim: usize, rows: &[S]) -> Result<Self, Gf2Error> {
        let vectors = rows
            .iter()
            .map(|r| r.as_ref().parse::<Gf2Vector>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dim, vectors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Gf2Vector] {
        &self.vectors
    }

    /// Vector at a 1-based index.
    pub fn get(&self, index: usize) -> Option<&Gf2Vector> {
        index.checked_sub(1).and_then(|i| self.vectors.get(i))
    }

    /// XOR of the vectors at the given 1-based indices.
    pub fn sum_of(&self, indices: &[usize]) -> Result<Gf2Vector, Gf2Error> {
        let mut acc = Gf2Vector::zero(self.dim);
        for &i in indices {
            acc.add_assign(self.checked(i)?);
        }
        Ok(acc)
    }

    pub fn total(&self) -> Gf2Vector {
        let mut acc = Gf2Vector::zero(self.dim);
        for v in &self.vectors {
            acc.add_assign(v);
        }
        acc
    }

    fn checked(&self, index: usize) -> Result<&Gf2Vector, Gf2Error> {
        self.get(index).ok_or(Gf2Error::IndexOutOfRange {
            index,
            len: self.len(),
        })
    }
}

/// A set of 1-based indices whose vectors sum to zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubsetCertificate {
    indices: Vec<usize>,
}

impl SubsetCertificate {
    pub(crate) fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Re-checks the certificate against a collection.
    pub fn verify(&self, c: &Gf2Collection) -> bool {
        c.sum_of(&self.indices).is_ok_and(|s| s.is_zero())
    }
}

impl fmt::Display for SubsetCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, i) in self.indices.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for SubsetCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SubsetCertificate", 2)?;
        st.serialize_field("indices", &self.indices)?;
        st.serialize_field("size", &self.indices.len())?;
        st.end()
    }
}

/// Incremental row echelon form. Each row keeps a unique pivot and is reduced
/// against every earlier row, so reducing a vector against the rows in
/// insertion order clears every pivot. Optionally tracks which inserted
/// vectors combine into each row.
struct Echelon {
    rows: Vec<Row>,
    track: Option<usize>,
}

struct Row {
    pivot: usize,
    vector: Gf2Vector,
    combo: Option<Gf2Vector>,
}

impl Echelon {
    fn new(track: Option<usize>) -> Self {
        Self {
            rows: Vec::new(),
            track,
        }
    }

    fn reduce(&self, v: &Gf2Vector) -> (Gf2Vector, Option<Gf2Vector>) {
        let mut residue = v.clone();
        let mut combo = self.track.map(Gf2Vector::zero);
        for row in &self.rows {
            if residue.get(row.pivot) {
                residue.add_assign(&row.vector);
                if let (Some(c), Some(rc)) = (combo.as_mut(), row.combo.as_ref()) {
                    c.add_assign(rc);
                }
            }
        }
        (residue, combo)
    }

    /// Inserts `v` (tagged with `position` when tracking); false if dependent.
    fn insert(&mut self, v: &Gf2Vector, position: usize) -> bool {
        let (residue, mut combo) = self.reduce(v);
        let Some(pivot) = residue.lowest_set_bit() else {
            return false;
        };
        if let Some(c) = combo.as_mut() {
            c.set(position, true);
        }
        self.rows.push(Row {
            pivot,
            vector: residue,
            combo,
        });
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Dimension of the span of the collection.
pub fn rank(c: &Gf2Collection) -> usize {
    let mut ech = Echelon::new(None);
    for v in c.vectors() {
        ech.insert(v, 0);
    }
    ech.rank()
}

/// Left-to-right greedy basis: keeps each vector that is independent of the
/// ones already kept. Returns 1-based indices in increasing order.
pub fn greedy_basis(c: &Gf2Collection) -> Vec<usize> {
    let mut ech = Echelon::new(None);
    c.vectors()
        .iter()
        .enumerate()
        .filter_map(|(i, v)| ech.insert(v, 0).then_some(i + 1))
        .collect()
}

/// Expresses `v` in the basis formed by the vectors at `basis` (1-based).
/// Returns the unique subset of `basis` whose vectors sum to `v`, sorted.
pub fn coordinates(
    c: &Gf2Collection,
    basis: &[usize],
    v: &Gf2Vector,
) -> Result<Vec<usize>, Gf2Error> {
    if v.dim() != c.dim() {
        return Err(Gf2Error::DimensionMismatch {
            index: 0,
            expected: c.dim(),
            found: v.dim(),
        });
    }
    let mut ech = Echelon::new(Some(basis.len()));
    for (pos, &i) in basis.iter().enumerate() {
        if !ech.insert(c.checked(i)?, pos) {
            return Err(Gf2Error::NotABasis);
        }
    }
    let (residue, combo) = ech.reduce(v);
    if !residue.is_zero() {
        return Err(Gf2Error::NotInSpan);
    }
    let combo = combo.expect("tracking enabled");
    let mut out: Vec<usize> = basis
        .iter()
        .enumerate()
        .filter(|(pos, _)| combo.get(*pos))
        .map(|(_, &i)| i)
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Constructive zero-sum certificate of size at least `len - rank`.
///
/// `J` is the complement of the greedy basis, `y` the sum over `J`, and `I`
/// the coordinates of `y` in the basis; the result is `I ∪ J`. Nonempty
/// whenever `len > dim`.
pub fn zero_sum_subcollection(c: &Gf2Collection) -> SubsetCertificate {
    let basis = greedy_basis(c);
    let mut in_basis = vec![false; c.len() + 1];
    for &i in &basis {
        in_basis[i] = true;
    }
    let outside: Vec<usize> = (1..=c.len()).filter(|&i| !in_basis[i]).collect();
    let y = c.sum_of(&outside).expect("indices in range");
    let inside = coordinates(c, &basis, &y).expect("greedy basis spans the collection");
    let mut all = outside;
    all.extend(inside);
    all.sort_unstable();
    SubsetCertificate::from_sorted(all)
}

/// Nodes the exact solver visits for a collection of length `m`, or `None`
/// when `m` is beyond what the solver supports at all.
pub fn exact_search_cost(m: usize) -> Option<u64> {
    if m <= EXHAUSTIVE_MAX_LEN {
        Some(1u64 << m)
    } else if m <= 64 {
        let low = m / 2;
        Some((1u64 << low) + (1u64 << (m - low)))
    } else {
        None
    }
}

/// Maximum-cardinality zero-sum subset, ties broken toward the
/// lexicographically smallest index list.
///
/// `effort_limit` caps the number of subset nodes the search may visit; `0`
/// picks the budget from the length, up to [`AUTO_EFFORT_CAP`]. When the
/// budget does not cover the search, the constructive certificate is handed
/// back inside [`Gf2Error::EffortExceeded`].
pub fn max_zero_sum_subset(
    c: &Gf2Collection,
    effort_limit: u64,
) -> Result<SubsetCertificate, Gf2Error> {
    let m = c.len();
    let target = c.total();
    if target.is_zero() {
        return Ok(SubsetCertificate::from_sorted((1..=m).collect()));
    }
    let limit = if effort_limit == 0 {
        AUTO_EFFORT_CAP
    } else {
        effort_limit
    };
    let required = exact_search_cost(m).unwrap_or(u64::MAX);
    if required > limit {
        return Err(Gf2Error::EffortExceeded {
            required,
            limit,
            fallback: zero_sum_subcollection(c),
        });
    }
    let complement = if m <= EXHAUSTIVE_MAX_LEN {
        exhaustive_complement(c.vectors(), &target)
    } else {
        split_complement(c.vectors(), &target)
    };
    Ok(certificate_from_complement(m, complement))
}

fn certificate_from_complement(m: usize, complement: u64) -> SubsetCertificate {
    SubsetCertificate::from_sorted(
        (0..m)
            .filter(|&i| complement >> i & 1 == 0)
            .map(|i| i + 1)
            .collect(),
    )
}

/// Strict preference between two complement masks (bit `i` is index `i+1`).
///
/// Fewer elements wins. Among equal sizes, the mask that leaves out the
/// smallest index where the two differ wins: that index then belongs to the
/// zero-sum side, which makes the zero-sum index list lexicographically
/// smaller.
fn prefer(a: u64, b: u64) -> bool {
    let (wa, wb) = (a.count_ones(), b.count_ones());
    if wa != wb {
        return wa < wb;
    }
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) == 0
}

fn better(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if prefer(y, x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Visits every subset mask of `vectors` with Gray-code position in
/// `start..end`, passing the mask and the XOR of its members.
fn scan_gray(
    vectors: &[Gf2Vector],
    dim: usize,
    start: u64,
    end: u64,
    mut visit: impl FnMut(u64, &Gf2Vector),
) {
    let gray = |j: u64| j ^ (j >> 1);
    let first = gray(start);
    let mut acc = Gf2Vector::zero(dim);
    for (i, v) in vectors.iter().enumerate() {
        if first >> i & 1 == 1 {
            acc.add_assign(v);
        }
    }
    visit(first, &acc);
    for j in start + 1..end {
        acc.add_assign(&vectors[j.trailing_zeros() as usize]);
        visit(gray(j), &acc);
    }
}

fn chunk_ranges(total: u64) -> impl ParallelIterator<Item = (u64, u64)> {
    let chunk = 1u64 << CHUNK_BITS;
    let chunks = total.div_ceil(chunk);
    (0..chunks)
        .into_par_iter()
        .map(move |k| (k * chunk, ((k + 1) * chunk).min(total)))
}

fn exhaustive_complement(vectors: &[Gf2Vector], target: &Gf2Vector) -> u64 {
    let dim = target.dim();
    chunk_ranges(1u64 << vectors.len())
        .map(|(start, end)| {
            let mut best = None;
            scan_gray(vectors, dim, start, end, |mask, acc| {
                if acc == target {
                    best = better(best, Some(mask));
                }
            });
            best
        })
        .reduce(|| None, better)
        .expect("the full collection always reaches the target")
}

/// Meet-in-the-middle: tabulate the high half by XOR value, keeping the best
/// mask of minimum size per value, then scan the low half against it.
fn split_complement(vectors: &[Gf2Vector], target: &Gf2Vector) -> u64 {
    let dim = target.dim();
    let low = vectors.len() / 2;
    let (lo, hi) = vectors.split_at(low);

    let mut table: HashMap<Gf2Vector, u64> = HashMap::new();
    scan_gray(hi, dim, 0, 1u64 << hi.len(), |mask, acc| {
        table
            .entry(acc.clone())
            .and_modify(|cur| {
                if prefer(mask, *cur) {
                    *cur = mask;
                }
            })
            .or_insert(mask);
    });

    chunk_ranges(1u64 << lo.len())
        .map(|(start, end)| {
            let mut best = None;
            let mut need = Gf2Vector::zero(dim);
            scan_gray(lo, dim, start, end, |mask, acc| {
                need.clone_from(acc);
                need.add_assign(target);
                if let Some(&high) = table.get(&need) {
                    best = better(best, Some(mask | high << low));
                }
            });
            best
        })
        .reduce(|| None, better)
        .expect("the full collection always reaches the target")
}
