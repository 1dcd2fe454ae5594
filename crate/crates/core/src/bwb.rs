//! Borel-Weil-Bott cohomology of homogeneous bundles on Gr(k, n).
//!
//! A bundle is described by a dominant weight on the quotient tautological
//! bundle Q (rank n-k), a dominant weight on the subbundle S (rank k) and an
//! integer Pluecker twist. Concatenating the two blocks gives a GL_n weight;
//! adding the staircase rho = (n-1, ..., 1, 0) either produces a repeated
//! entry (all cohomology vanishes) or a vector that a unique permutation
//! sorts strictly descending. The inversion count of that permutation is the
//! only non-zero cohomological degree and sorting-then-subtracting rho gives
//! the dominant weight of the cohomology representation.

use serde::Serialize;
use thiserror::Error;

use crate::context::{ContextError, GrContext};
use crate::schur::{dual_diagram, lr_decompose, weyl_dim, SchurError, Weight};
use crate::young::{is_upper_triangular, YoungDiagram, YoungError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BwbError {
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error(transparent)]
    Young(#[from] YoungError),
    #[error("quotient block has {got} entries, rank of Q is {expected}")]
    QuotBlockRank { expected: usize, got: usize },
    #[error("subbundle block has {got} entries, rank of S is {expected}")]
    SubBlockRank { expected: usize, got: usize },
    #[error("diagram {0} is outside the upper-triangular family")]
    NotUpperTriangular(String),
}

/// Homogeneous bundle S^quot(Q) (x) S^sub(S) (x) O(twist) on Gr(k, n),
/// with both blocks stored padded to full rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleDescriptor {
    n: usize,
    k: usize,
    quot: Weight,
    sub: Weight,
    twist: i64,
}

impl BundleDescriptor {
    pub fn new(
        ctx: &GrContext,
        quot: Weight,
        sub: Weight,
        twist: i64,
    ) -> Result<Self, BwbError> {
        let (n, k) = (ctx.n() as usize, ctx.k() as usize);
        let quot = quot
            .padded_to(n - k)
            .map_err(|_| BwbError::QuotBlockRank { expected: n - k, got: quot.len() })?;
        let sub = sub
            .padded_to(k)
            .map_err(|_| BwbError::SubBlockRank { expected: k, got: sub.len() })?;
        Ok(BundleDescriptor { n, k, quot, sub, twist })
    }

    pub fn quot(&self) -> &Weight {
        &self.quot
    }

    pub fn sub(&self) -> &Weight {
        &self.sub
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// The concatenated GL_n weight (quot + twist, sub).
    pub fn full_weight(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.quot.entries().iter().map(|&e| e + self.twist).collect();
        v.extend_from_slice(self.sub.entries());
        v
    }
}

/// Outcome of the cohomology computation: either everything vanishes or a
/// single degree carries one irreducible GL_n representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BwbOutcome {
    Vanishes,
    Cohomology { degree: u32, weight: Weight, dim: u64 },
}

impl BwbOutcome {
    pub fn is_vanishing(&self) -> bool {
        matches!(self, BwbOutcome::Vanishes)
    }

    pub fn degree(&self) -> Option<u32> {
        match self {
            BwbOutcome::Vanishes => None,
            BwbOutcome::Cohomology { degree, .. } => Some(*degree),
        }
    }

    pub fn dim(&self) -> u64 {
        match self {
            BwbOutcome::Vanishes => 0,
            BwbOutcome::Cohomology { dim, .. } => *dim,
        }
    }
}

/// Add rho = (L-1, ..., 1, 0) to the entries; if any value repeats return
/// None, otherwise return the inversion count of the sort together with the
/// dominant weight sorted-descending-minus-rho.
pub fn twisted_sort(entries: &[i64]) -> Option<(u32, Weight)> {
    let l = entries.len();
    let shifted: Vec<i64> = entries
        .iter()
        .enumerate()
        .map(|(i, &e)| e + (l - 1 - i) as i64)
        .collect();
    let mut inversions = 0u32;
    for i in 0..l {
        for j in (i + 1)..l {
            if shifted[i] == shifted[j] {
                return None;
            }
            if shifted[i] < shifted[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = shifted;
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let dominant: Vec<i64> = sorted
        .iter()
        .enumerate()
        .map(|(i, &e)| e - (l - 1 - i) as i64)
        .collect();
    Some((inversions, Weight::new(dominant).expect("sorted minus rho is dominant")))
}

/// Full Borel-Weil-Bott computation for a homogeneous bundle on Gr(k, n).
pub fn cohomology(ctx: &GrContext, bundle: &BundleDescriptor) -> Result<BwbOutcome, BwbError> {
    debug_assert_eq!(bundle.n, ctx.n() as usize);
    match twisted_sort(&bundle.full_weight()) {
        None => Ok(BwbOutcome::Vanishes),
        Some((degree, weight)) => {
            let dim = weyl_dim(&weight, ctx.n() as usize)?;
            Ok(BwbOutcome::Cohomology { degree, weight, dim })
        }
    }
}

/// Cohomology of O(d) on projective m-space, realised as Gr(1, m+1) with the
/// twist carried by the quotient block.
pub fn line_bundle_cohomology(m: usize, d: i64) -> Result<BwbOutcome, BwbError> {
    let ctx = GrContext::exploratory(m as u32 + 1, 1)?;
    let bundle = BundleDescriptor::new(&ctx, Weight::zero(m), Weight::zero(1), d)?;
    cohomology(&ctx, &bundle)
}

/// Whether S^a(S) (x) S^b(S*) (x) O(twist) has cohomology only in degree
/// zero. Rewriting S^a(S) = S^{a*}(S*) (x) O(-a_1) turns the product into a
/// single Littlewood-Richardson decomposition of S*-functors, and each term
/// is pushed through Borel-Weil-Bott with an empty quotient block. This is
/// the Ext-vanishing needed for the tilting collection, so both inputs must
/// lie in the upper-triangular family and the twist must be non-negative.
pub fn higher_ext_vanishes(
    ctx: &GrContext,
    a: &YoungDiagram,
    b: &YoungDiagram,
    twist: u32,
) -> Result<bool, BwbError> {
    for d in [a, b] {
        if !is_upper_triangular(d, ctx)? {
            return Err(BwbError::NotUpperTriangular(d.to_string()));
        }
    }
    let k = ctx.k() as usize;
    let product = lr_decompose(&(&dual_diagram(a)).into(), &b.into(), k)?;
    let det_power = i64::from(twist) - i64::from(a.first_row());
    for gamma in product.terms().keys() {
        let sub: Vec<i64> = gamma
            .entries()
            .iter()
            .rev()
            .map(|&e| -e - det_power)
            .collect();
        let bundle = BundleDescriptor::new(
            ctx,
            Weight::zero(ctx.complement_rank() as usize),
            Weight::new(sub)?,
            0,
        )?;
        if let BwbOutcome::Cohomology { degree, .. } = cohomology(ctx, &bundle)? {
            if degree > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
