//! Young diagrams in the k x (n-k) box, their lattice-path encoding, and the
//! rotation action whose upper-triangular orbit representatives index the
//! generator summands.
//!
//! A diagram alpha of length k is *upper triangular* for (n,k) when
//! k * alpha_i <= (k-i) * (n-k) for every row i (1-based). The comparison is
//! kept in cross-multiplied integer form; for gcd(n,k) = 1 the bound is never
//! an integer for 0 < i < k, so strict and non-strict readings coincide and
//! row k is forced to zero.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::context::{ContextError, GrContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum YoungError {
    #[error("rows must be non-increasing, got {0:?}")]
    NotMonotone(Vec<u32>),
    #[error("diagram has {got} rows, context expects {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("first row {row} exceeds box width {width}")]
    ExceedsBox { row: u32, width: u32 },
    #[error("binary sequence may only contain '0' and '1', got {0:?}")]
    BadBinaryChar(char),
    #[error("binary sequence needs at least one '1' and one '0'")]
    DegenerateSequence,
    #[error(transparent)]
    Context(#[from] ContextError),
}

/// Non-increasing rows, stored at explicit length (trailing zeros kept), so the
/// GL/SL distinction is a normalization and not a shape change.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<u32>) -> Result<Self, YoungError> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(YoungError::NotMonotone(rows));
        }
        Ok(YoungDiagram { rows })
    }

    /// All-zero diagram of the given length.
    pub fn zero(len: usize) -> Self {
        YoungDiagram { rows: vec![0; len] }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn first_row(&self) -> u32 {
        self.rows.first().copied().unwrap_or(0)
    }

    pub fn last_row(&self) -> u32 {
        self.rows.last().copied().unwrap_or(0)
    }

    pub fn boxes(&self) -> u64 {
        self.rows.iter().map(|&r| u64::from(r)).sum()
    }

    /// Same shape with trailing zero rows appended.
    pub fn padded_to(&self, len: usize) -> Result<Self, YoungError> {
        if len < self.rows.len() {
            return Err(YoungError::RankMismatch { expected: len, got: self.rows.len() });
        }
        let mut rows = self.rows.clone();
        rows.resize(len, 0);
        Ok(YoungDiagram { rows })
    }

    /// Same partition with trailing zero rows dropped.
    pub fn trimmed(&self) -> Self {
        let mut rows = self.rows.clone();
        while rows.last() == Some(&0) {
            rows.pop();
        }
        YoungDiagram { rows }
    }

    /// Strip full columns: subtract the last row from every row. As an SL-rep
    /// of rank `len` this is the same representation.
    pub fn sl_normalized(&self) -> Self {
        let last = self.last_row();
        YoungDiagram { rows: self.rows.iter().map(|&r| r - last).collect() }
    }

    /// Column lengths. The result has exactly `first_row` rows (columns of the
    /// original are all non-empty), so transposing twice returns the partition
    /// with trailing zeros dropped.
    pub fn transpose(&self) -> Self {
        let cols = self.first_row() as usize;
        let mut rows = Vec::with_capacity(cols);
        for c in 1..=cols {
            rows.push(self.rows.iter().filter(|&&r| r >= c as u32).count() as u32);
        }
        YoungDiagram { rows }
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl TryFrom<Vec<u32>> for YoungDiagram {
    type Error = YoungError;
    fn try_from(rows: Vec<u32>) -> Result<Self, Self::Error> {
        YoungDiagram::new(rows)
    }
}

impl From<YoungDiagram> for Vec<u32> {
    fn from(d: YoungDiagram) -> Vec<u32> {
        d.rows
    }
}

/// Lattice path from the bottom-left to the top-right corner of the box, read
/// as bits: '1' for a vertical step, '0' for a horizontal one. Length n with
/// exactly k ones.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BinarySeq {
    bits: Vec<u8>,
}

impl BinarySeq {
    pub fn new(bits: Vec<u8>) -> Result<Self, YoungError> {
        for &b in &bits {
            if b > 1 {
                return Err(YoungError::BadBinaryChar((b'0' + b) as char));
            }
        }
        let ones = bits.iter().filter(|&&b| b == 1).count();
        if ones == 0 || ones == bits.len() {
            return Err(YoungError::DegenerateSequence);
        }
        Ok(BinarySeq { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Left cyclic rotation by `i` (reduced mod n; negative shifts rotate the
    /// other way). Matches the group action in which rotating by i moves the
    /// path origin i edge steps forward.
    pub fn rotate(&self, i: i64) -> Self {
        let n = self.bits.len() as i64;
        let s = i.rem_euclid(n) as usize;
        let mut bits = Vec::with_capacity(self.bits.len());
        bits.extend_from_slice(&self.bits[s..]);
        bits.extend_from_slice(&self.bits[..s]);
        BinarySeq { bits }
    }
}

impl fmt::Display for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for BinarySeq {
    type Err = YoungError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                other => return Err(YoungError::BadBinaryChar(other)),
            }
        }
        BinarySeq::new(bits)
    }
}

impl TryFrom<String> for BinarySeq {
    type Error = YoungError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<BinarySeq> for String {
    fn from(s: BinarySeq) -> String {
        s.to_string()
    }
}

fn check_rank(d: &YoungDiagram, ctx: &GrContext) -> Result<(), YoungError> {
    if d.len() != ctx.k() as usize {
        return Err(YoungError::RankMismatch { expected: ctx.k() as usize, got: d.len() });
    }
    Ok(())
}

fn check_in_box(d: &YoungDiagram, ctx: &GrContext) -> Result<(), YoungError> {
    check_rank(d, ctx)?;
    if d.first_row() > ctx.complement_rank() {
        return Err(YoungError::ExceedsBox {
            row: d.first_row(),
            width: ctx.complement_rank(),
        });
    }
    Ok(())
}

/// Upper-triangular test: k * alpha_i <= (k-i) * (n-k) for all rows.
pub fn is_upper_triangular(d: &YoungDiagram, ctx: &GrContext) -> Result<bool, YoungError> {
    check_rank(d, ctx)?;
    let (k, w) = (u64::from(ctx.k()), u64::from(ctx.complement_rank()));
    Ok(d.rows()
        .iter()
        .enumerate()
        .all(|(i, &a)| k * u64::from(a) <= (k - (i as u64 + 1)) * w))
}

/// All upper-triangular diagrams for the context, in ascending lexicographic
/// order. For coprime (n,k) there are exactly C(n,k)/n of them.
pub fn enumerate_up(ctx: &GrContext) -> Vec<YoungDiagram> {
    let k = ctx.k() as usize;
    let w = u64::from(ctx.complement_rank());
    let cap = |i: usize| -> u32 {
        // largest value allowed in row i+1 (0-based i)
        (((k as u64 - (i as u64 + 1)) * w) / k as u64) as u32
    };
    let mut out = Vec::new();
    let mut rows = vec![0u32; k];
    fn rec(
        rows: &mut Vec<u32>,
        i: usize,
        k: usize,
        cap: &dyn Fn(usize) -> u32,
        out: &mut Vec<YoungDiagram>,
    ) {
        if i == k {
            out.push(YoungDiagram { rows: rows.clone() });
            return;
        }
        let hi = if i == 0 { cap(0) } else { cap(i).min(rows[i - 1]) };
        for v in 0..=hi {
            rows[i] = v;
            rec(rows, i + 1, k, cap, out);
        }
        rows[i] = 0;
    }
    rec(&mut rows, 0, k, &cap, &mut out);
    out.sort();
    out
}

/// Path encoding: the j-th vertical step from the bottom comes after
/// alpha_{k+1-j} horizontal steps, so the ones sit at positions
/// alpha_{k+1-j} + j (1-based).
pub fn to_binary(d: &YoungDiagram, ctx: &GrContext) -> Result<BinarySeq, YoungError> {
    check_in_box(d, ctx)?;
    let n = ctx.n() as usize;
    let k = ctx.k() as usize;
    let mut bits = vec![0u8; n];
    for j in 1..=k {
        let pos = d.rows()[k - j] as usize + j;
        bits[pos - 1] = 1;
    }
    BinarySeq::new(bits)
}

/// Inverse of [`to_binary`]: with ones at positions p_1 < ... < p_k (1-based),
/// row k+1-j is p_j - j. The result always fits the (#ones) x (#zeros) box.
pub fn from_binary(s: &BinarySeq) -> YoungDiagram {
    let k = s.ones();
    let mut rows = vec![0u32; k];
    let mut j = 0usize;
    for (idx, &b) in s.bits().iter().enumerate() {
        if b == 1 {
            j += 1;
            rows[k - j] = (idx + 1 - j) as u32;
        }
    }
    YoungDiagram { rows }
}

/// Number of rotations taking the diagram to the upper-triangular member of
/// its orbit, found by direct search through all n rotations. Needs
/// gcd(n,k) = 1: exactly one diagram per orbit is upper triangular.
pub fn rotation_distance(d: &YoungDiagram, ctx: &GrContext) -> Result<u32, YoungError> {
    ctx.require_coprime()?;
    let s = to_binary(d, ctx)?;
    for i in 0..ctx.n() {
        if is_upper_triangular(&from_binary(&s.rotate(i64::from(i))), ctx)? {
            return Ok(i);
        }
    }
    unreachable!("a coprime orbit contains an upper-triangular diagram");
}

/// Same number via the diagonal-touching corner: walking the path, the corner
/// after t steps sits at (X_t, Y_t) (horizontal and vertical step counts) and
/// the rotation landing in the upper-triangular cone is the unique maximizer
/// of k * X_t - (n-k) * Y_t over t in [0, n). Equivalently, among the lines of
/// slope (n-k)/k through the corners of the repeating diagram, this corner
/// touches the lowest one. Cross-multiplied integers keep the comparison exact.
pub fn rotation_distance_geometric(
    d: &YoungDiagram,
    ctx: &GrContext,
) -> Result<u32, YoungError> {
    ctx.require_coprime()?;
    let s = to_binary(d, ctx)?;
    let (k, w) = (i64::from(ctx.k()), i64::from(ctx.complement_rank()));
    let mut phi = 0i64;
    let mut best = (0i64, 0u32);
    for (t, &b) in s.bits().iter().enumerate() {
        if t > 0 && phi > best.0 {
            best = (phi, t as u32);
        }
        phi += if b == 1 { -w } else { k };
    }
    // phi has returned to 0 after a full period; the maximum over [0, n) is
    // unique because gcd(n, k) = 1.
    Ok(best.1)
}
