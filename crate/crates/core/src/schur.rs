//! Dominant GL weights and the exact decomposition machinery: the
//! Littlewood-Richardson rule, dual diagrams, the Weyl dimension formula and
//! the Cauchy grading of Sym(S (x) V*).
//!
//! Littlewood-Richardson coefficients are computed by enumerating the fillings
//! directly: the product S^a (x) S^b is the multiset of shapes reached from a
//! by adding horizontal strips of sizes b_1, b_2, ... subject to the ballot
//! condition (label r in rows <= i never outnumbers label r-1 in rows <= i-1).
//! Weights with negative entries are shifted to genuine diagrams first and the
//! determinant twist is restored on the way out, so the whole pipeline stays
//! in non-negative integers.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::young::YoungDiagram;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchurError {
    #[error("entries must be non-increasing, got {0:?}")]
    NotDominant(Vec<i64>),
    #[error("weight has {got} entries, needs at most {max} for this rank")]
    RankTooSmall { max: usize, got: usize },
    #[error("cannot zero-pad a weight with negative last entry {last} to rank {rank}")]
    NegativePad { last: i64, rank: usize },
    #[error("dimension exceeds 64-bit integer capacity")]
    Overflow,
}

/// Non-increasing integer vector: a dominant GL weight. Entries may be
/// negative; a diagram is the special case of non-negative entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Weight {
    entries: Vec<i64>,
}

impl Weight {
    pub fn new(entries: Vec<i64>) -> Result<Self, SchurError> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(SchurError::NotDominant(entries));
        }
        Ok(Weight { entries })
    }

    pub fn zero(len: usize) -> Self {
        Weight { entries: vec![0; len] }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> i64 {
        self.entries.first().copied().unwrap_or(0)
    }

    pub fn last(&self) -> i64 {
        self.entries.last().copied().unwrap_or(0)
    }

    /// Sum of entries (the box count for diagrams).
    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Add c to every entry (tensoring with the c-th determinant power).
    pub fn shifted(&self, c: i64) -> Self {
        Weight { entries: self.entries.iter().map(|&e| e + c).collect() }
    }

    /// Shift so the last entry is zero: the same SL-representation.
    pub fn sl_normalized(&self) -> Self {
        self.shifted(-self.last())
    }

    /// Successive differences a_i = w_i - w_{i+1}, the coefficients on the
    /// fundamental weights.
    pub fn fundamental_coeffs(&self) -> Vec<i64> {
        self.entries.windows(2).map(|w| w[0] - w[1]).collect()
    }

    pub fn padded_to(&self, rank: usize) -> Result<Self, SchurError> {
        if self.entries.len() > rank {
            return Err(SchurError::RankTooSmall { max: rank, got: self.entries.len() });
        }
        if self.entries.len() < rank && self.last() < 0 {
            return Err(SchurError::NegativePad { last: self.last(), rank });
        }
        let mut entries = self.entries.clone();
        entries.resize(rank, 0);
        Ok(Weight { entries })
    }

    pub fn from_diagram(d: &YoungDiagram) -> Self {
        Weight { entries: d.rows().iter().map(|&r| i64::from(r)).collect() }
    }

    pub fn to_diagram(&self) -> Option<YoungDiagram> {
        if self.entries.iter().any(|&e| e < 0) {
            return None;
        }
        Some(
            YoungDiagram::new(self.entries.iter().map(|&e| e as u32).collect())
                .expect("dominant weight rows are non-increasing"),
        )
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl TryFrom<Vec<i64>> for Weight {
    type Error = SchurError;
    fn try_from(entries: Vec<i64>) -> Result<Self, Self::Error> {
        Weight::new(entries)
    }
}

impl From<Weight> for Vec<i64> {
    fn from(w: Weight) -> Vec<i64> {
        w.entries
    }
}

impl From<&YoungDiagram> for Weight {
    fn from(d: &YoungDiagram) -> Self {
        Weight::from_diagram(d)
    }
}

/// Multiset of dominant weights with multiplicities, all of the stated rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LRDecomposition {
    rank: usize,
    terms: BTreeMap<Weight, u64>,
}

impl LRDecomposition {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Weight, u64> {
        &self.terms
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.terms.values().sum()
    }
}

impl Serialize for LRDecomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (w, m) in &self.terms {
            map.serialize_entry(&w.to_string(), m)?;
        }
        map.end()
    }
}

type LrKey = (Vec<u32>, Vec<u32>, usize);
type LrTable = BTreeMap<Vec<u32>, u64>;

fn lr_cache() -> &'static Mutex<HashMap<LrKey, Arc<LrTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<LrKey, Arc<LrTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// One DFS layer: all ways to grow `shape` by a horizontal strip of `size`
/// boxes, respecting column strictness (a new box needs the slot above it to
/// be old) and the ballot condition against the cumulative counts of the
/// previous label. Returns (new shape, cumulative added-per-row counts).
fn horizontal_strips(
    shape: &[u32],
    size: u32,
    prev_cum: Option<&[u32]>,
) -> Vec<(Vec<u32>, Vec<u32>)> {
    let m = shape.len();
    let mut out = Vec::new();
    let mut current = shape.to_vec();
    let mut cum = vec![0u32; m];

    fn rec(
        i: usize,
        remaining: u32,
        acc: u32,
        shape: &[u32],
        prev_cum: Option<&[u32]>,
        current: &mut Vec<u32>,
        cum: &mut Vec<u32>,
        out: &mut Vec<(Vec<u32>, Vec<u32>)>,
    ) {
        let m = shape.len();
        if i == m {
            if remaining == 0 {
                out.push((current.clone(), cum.clone()));
            }
            return;
        }
        let structural = if i == 0 { shape[0] + remaining } else { shape[i - 1] };
        let mut max_add = structural.saturating_sub(shape[i]).min(remaining);
        if let Some(pc) = prev_cum {
            let ceiling = if i == 0 { 0 } else { pc[i - 1] };
            max_add = max_add.min(ceiling.saturating_sub(acc));
        }
        for add in 0..=max_add {
            current[i] = shape[i] + add;
            cum[i] = acc + add;
            rec(i + 1, remaining - add, acc + add, shape, prev_cum, current, cum, out);
        }
        current[i] = shape[i];
        cum[i] = if i == 0 { 0 } else { cum[i - 1] };
    }

    rec(0, size, 0, shape, prev_cum, &mut current, &mut cum, &mut out);
    out
}

fn lr_core(alpha: &[u32], beta: &[u32], m: usize) -> Arc<LrTable> {
    let key = if alpha <= beta {
        (alpha.to_vec(), beta.to_vec(), m)
    } else {
        (beta.to_vec(), alpha.to_vec(), m)
    };
    if let Some(hit) = lr_cache().lock().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let (a, b) = (&key.0, &key.1);

    let mut start = a.clone();
    start.resize(m, 0);
    // state: (shape, cumulative counts of the label just placed) -> multiplicity
    let mut states: HashMap<(Vec<u32>, Option<Vec<u32>>), u64> = HashMap::new();
    states.insert((start, None), 1);
    for &row in b.iter().take(m) {
        let mut next: HashMap<(Vec<u32>, Option<Vec<u32>>), u64> = HashMap::new();
        for ((shape, cum), mult) in &states {
            for (new_shape, new_cum) in horizontal_strips(shape, row, cum.as_deref()) {
                *next.entry((new_shape, Some(new_cum))).or_insert(0) += mult;
            }
        }
        states = next;
    }

    let mut table: LrTable = BTreeMap::new();
    for ((shape, _), mult) in states {
        *table.entry(shape).or_insert(0) += mult;
    }
    let table = Arc::new(table);
    lr_cache().lock().unwrap().insert(key, Arc::clone(&table));
    table
}

/// Decompose S^a (x) S^b as GL_m representations. Entries may be negative:
/// both factors are shifted by their last entries, decomposed as diagrams and
/// the combined determinant twist is added back to every term.
pub fn lr_decompose(a: &Weight, b: &Weight, m: usize) -> Result<LRDecomposition, SchurError> {
    let a = a.padded_to(m.max(a.len()))?;
    let b = b.padded_to(m.max(b.len()))?;
    if a.len() > m || b.len() > m {
        return Err(SchurError::RankTooSmall { max: m, got: a.len().max(b.len()) });
    }
    let (sa, sb) = (a.last(), b.last());
    let to_rows = |w: &Weight, s: i64| -> Vec<u32> {
        let mut rows: Vec<u32> = w.entries().iter().map(|&e| (e - s) as u32).collect();
        while rows.last() == Some(&0) {
            rows.pop();
        }
        rows
    };
    let table = lr_core(&to_rows(&a, sa), &to_rows(&b, sb), m);
    let twist = sa + sb;
    let mut terms = BTreeMap::new();
    for (shape, &mult) in table.iter() {
        let entries: Vec<i64> = shape.iter().map(|&r| i64::from(r) + twist).collect();
        terms.insert(Weight::new(entries).expect("shapes are non-increasing"), mult);
    }
    Ok(LRDecomposition { rank: m, terms })
}

/// Row envelope of the product: every term gamma of S^a (x) S^b at rank k
/// satisfies a_i + b_k <= gamma_i <= a_1 + b_i.
pub fn lr_row_bounds(a: &Weight, b: &Weight) -> Result<(Weight, Weight), SchurError> {
    if a.len() != b.len() {
        return Err(SchurError::RankTooSmall { max: a.len(), got: b.len() });
    }
    let lower: Vec<i64> = a.entries().iter().map(|&e| e + b.last()).collect();
    let upper: Vec<i64> = b.entries().iter().map(|&e| e + a.first()).collect();
    Ok((Weight::new(lower)?, Weight::new(upper)?))
}

/// Reverse complement inside the first-row strip: (a_1 - a_k, ..., a_1 - a_1).
pub fn dual_diagram(d: &YoungDiagram) -> YoungDiagram {
    let top = d.first_row();
    let rows: Vec<u32> = d.rows().iter().rev().map(|&r| top - r).collect();
    YoungDiagram::new(rows).expect("reverse complement is non-increasing")
}

/// Whether S^a (x) S^b contains a term whose first row still equals a_1.
/// At rank l this happens exactly when b fits under the reversed complement
/// (a_1 - a_l, ..., a_1 - a_1) entrywise.
pub fn has_leading_row_term(
    a: &YoungDiagram,
    b: &YoungDiagram,
    l: usize,
) -> Result<bool, SchurError> {
    let a = Weight::from_diagram(a).padded_to(l)?;
    let b = Weight::from_diagram(b).padded_to(l)?;
    let top = a.first();
    Ok((0..l).all(|i| b.entries()[i] <= top - a.entries()[l - 1 - i]))
}

/// Weyl dimension formula for GL_m: prod_{i<j} (w_i - w_j + j - i) / (j - i),
/// evaluated exactly; overflow is a hard error, never a wrap.
pub fn weyl_dim(w: &Weight, m: usize) -> Result<u64, SchurError> {
    let w = w.padded_to(m)?;
    let e = w.entries();
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..m {
        for j in (i + 1)..m {
            let gap = (j - i) as i128;
            num = num
                .checked_mul(i128::from(e[i] - e[j]) + gap)
                .ok_or(SchurError::Overflow)?;
            den = den.checked_mul(gap).ok_or(SchurError::Overflow)?;
            let g = gcd_i128(num, den);
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1, "dimension formula divides exactly");
    u64::try_from(num / den).map_err(|_| SchurError::Overflow)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Partitions of d with at most min(k, n) parts: the shapes pairing S^l S
/// with S^l V* in degree d of Sym(S (x) V*). Ascending lexicographic order.
pub fn cauchy_partitions(d: u32, k: usize, n: usize) -> Vec<YoungDiagram> {
    let max_rows = k.min(n);
    let mut out = Vec::new();
    let mut rows: Vec<u32> = Vec::new();
    fn rec(remaining: u32, max_part: u32, slots: usize, rows: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        if remaining == 0 {
            out.push(YoungDiagram::new(rows.clone()).expect("descending parts"));
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = max_part.min(remaining);
        for v in (1..=hi).rev() {
            rows.push(v);
            rec(remaining - v, v, slots - 1, rows, out);
            rows.pop();
        }
    }
    rec(d, d, max_rows, &mut rows, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(entries: &[i64]) -> Weight {
        Weight::new(entries.to_vec()).unwrap()
    }

    fn d(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    fn terms_of(a: &[i64], b: &[i64], m: usize) -> BTreeMap<Weight, u64> {
        lr_decompose(&w(a), &w(b), m).unwrap().terms().clone()
    }

    #[test]
    fn fundamental_square_rank_two() {
        let terms = terms_of(&[1], &[1], 2);
        let expect: BTreeMap<Weight, u64> =
            [(w(&[1, 1]), 1), (w(&[2, 0]), 1)].into_iter().collect();
        assert_eq!(terms, expect);
    }

    #[test]
    fn row_times_row_rank_two() {
        let terms = terms_of(&[1, 0], &[2, 0], 2);
        let expect: BTreeMap<Weight, u64> =
            [(w(&[2, 1]), 1), (w(&[3, 0]), 1)].into_iter().collect();
        assert_eq!(terms, expect);
    }

    #[test]
    fn hook_squared_rank_three() {
        // s_{21}^2 truncated to three rows; (3,2,1) is the classical
        // multiplicity-two term.
        let terms = terms_of(&[2, 1, 0], &[2, 1, 0], 3);
        let expect: BTreeMap<Weight, u64> = [
            (w(&[2, 2, 2]), 1),
            (w(&[3, 2, 1]), 2),
            (w(&[3, 3, 0]), 1),
            (w(&[4, 1, 1]), 1),
            (w(&[4, 2, 0]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(terms, expect);
    }

    #[test]
    fn negative_entries_use_determinant_twist() {
        // V* (x) V at rank 2: adjoint plus trivial.
        let terms = terms_of(&[0, -1], &[1, 0], 2);
        let expect: BTreeMap<Weight, u64> =
            [(w(&[0, 0]), 1), (w(&[1, -1]), 1)].into_iter().collect();
        assert_eq!(terms, expect);
    }

    #[test]
    fn product_is_commutative() {
        for (a, b, m) in [
            (vec![3i64, 1, 0], vec![2i64, 2, 0], 3),
            (vec![2, 1], vec![4, 0], 2),
            (vec![2, 1, 1, 0], vec![1, 1, 0, 0], 4),
        ] {
            assert_eq!(
                terms_of(&a, &b, m),
                terms_of(&b, &a, m),
                "{a:?} x {b:?}"
            );
        }
    }

    #[test]
    fn dimensions_are_multiplicative() {
        for (a, b, m) in [
            (vec![2i64, 1, 0], vec![2i64, 1, 0], 3),
            (vec![3, 1], vec![2, 0], 2),
            (vec![2, 2, 0, 0], vec![3, 1, 1, 0], 4),
            (vec![1, 0, -1], vec![2, 1, 0], 3),
        ] {
            let (wa, wb) = (w(&a), w(&b));
            let lhs: u64 = lr_decompose(&wa, &wb, m)
                .unwrap()
                .terms()
                .iter()
                .map(|(t, mult)| mult * weyl_dim(t, m).unwrap())
                .sum();
            assert_eq!(
                lhs,
                weyl_dim(&wa, m).unwrap() * weyl_dim(&wb, m).unwrap(),
                "{a:?} x {b:?}"
            );
        }
    }

    #[test]
    fn box_count_is_conserved() {
        let terms = terms_of(&[3, 1, 0], &[2, 2, 0], 3);
        for t in terms.keys() {
            assert_eq!(t.total(), 8, "{t}");
        }
    }

    #[test]
    fn row_bounds_envelope() {
        let (lo, hi) = lr_row_bounds(&w(&[1, 0]), &w(&[2, 0])).unwrap();
        assert_eq!(lo, w(&[1, 0]));
        assert_eq!(hi, w(&[3, 1]));
        for (t, _) in terms_of(&[1, 0], &[2, 0], 2) {
            for i in 0..2 {
                assert!(lo.entries()[i] <= t.entries()[i]);
                assert!(t.entries()[i] <= hi.entries()[i]);
            }
        }
    }

    #[test]
    fn dual_diagram_known_values() {
        assert_eq!(dual_diagram(&d(&[3, 1, 0])), d(&[3, 2, 0]));
        assert_eq!(dual_diagram(&d(&[1, 0])), d(&[1, 0]));
        assert_eq!(dual_diagram(&d(&[0, 0])), d(&[0, 0]));
    }

    #[test]
    fn dual_is_involutive_up_to_determinant() {
        // on diagrams with a zero last row the dual is a genuine involution;
        // in general the double dual subtracts the last row as a det twist.
        let mut all = Vec::new();
        for a in 0..=3u32 {
            for b in 0..=a {
                for c in 0..=b {
                    if a + b + c <= 6 {
                        all.push(d(&[a, b, c]));
                    }
                }
            }
        }
        for dia in all {
            let dd = dual_diagram(&dual_diagram(&dia));
            assert_eq!(dd, dia.sl_normalized(), "{dia}");
            if dia.last_row() == 0 {
                assert_eq!(dd, dia);
            }
        }
    }

    #[test]
    fn leading_row_term_matches_decomposition() {
        let l = 3usize;
        let shapes: Vec<YoungDiagram> = {
            let mut v = Vec::new();
            for a in 0..=3u32 {
                for b in 0..=a {
                    for c in 0..=b {
                        v.push(d(&[a, b, c]));
                    }
                }
            }
            v
        };
        for a in &shapes {
            for b in &shapes {
                let predicted = has_leading_row_term(a, b, l).unwrap();
                let observed = lr_decompose(&a.into(), &b.into(), l)
                    .unwrap()
                    .terms()
                    .keys()
                    .any(|t| t.first() == i64::from(a.first_row()));
                assert_eq!(predicted, observed, "{a} x {b}");
            }
        }
    }

    #[test]
    fn weyl_dimension_known_values() {
        assert_eq!(weyl_dim(&w(&[1]), 5).unwrap(), 5);
        assert_eq!(weyl_dim(&w(&[1, 1]), 5).unwrap(), 10);
        assert_eq!(weyl_dim(&w(&[2, 1]), 3).unwrap(), 8);
        assert_eq!(weyl_dim(&w(&[2, 1]), 5).unwrap(), 40);
        assert_eq!(weyl_dim(&w(&[2, 2, 1]), 5).unwrap(), 75);
        assert_eq!(weyl_dim(&w(&[-1, -1]), 2).unwrap(), 1);
        assert_eq!(weyl_dim(&w(&[0, -1]), 2).unwrap(), 2);
        for deg in 0..6i64 {
            assert_eq!(weyl_dim(&w(&[deg]), 2).unwrap(), deg as u64 + 1);
        }
    }

    #[test]
    fn weyl_dimension_rejects_negative_padding() {
        assert!(matches!(
            weyl_dim(&w(&[-1]), 3),
            Err(SchurError::NegativePad { .. })
        ));
    }

    #[test]
    fn cauchy_partitions_degree_two() {
        assert_eq!(cauchy_partitions(2, 2, 2), vec![d(&[1, 1]), d(&[2])]);
        let total: u64 = cauchy_partitions(2, 2, 2)
            .iter()
            .map(|l| {
                weyl_dim(&l.into(), 2).unwrap() * weyl_dim(&l.into(), 2).unwrap()
            })
            .sum();
        // dim Sym^2(C^2 (x) C^2) = C(5,2)
        assert_eq!(total, 10);
    }

    #[test]
    fn cauchy_partitions_respect_row_cap() {
        for l in cauchy_partitions(6, 2, 5) {
            assert!(l.len() <= 2);
            assert_eq!(l.boxes(), 6);
        }
        assert_eq!(cauchy_partitions(0, 3, 3), vec![YoungDiagram::zero(0)]);
    }

    #[test]
    fn decomposition_serializes_as_string_keyed_map() {
        let dec = lr_decompose(&w(&[1, 0]), &w(&[2, 0]), 2).unwrap();
        assert_eq!(
            serde_json::to_string(&dec).unwrap(),
            r#"{"[2,1]":1,"[3,0]":1}"#
        );
    }
}
