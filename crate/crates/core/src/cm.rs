//! Cohen-Macaulay certification of the generator module and maximality of the
//! upper-triangular family.
//!
//! A weight gamma contributing to Hom(M_alpha, M_beta) keeps the module
//! Cohen-Macaulay exactly when all consecutive row gaps gamma_i - gamma_{i+1}
//! stay strictly below n-k. Certification sweeps every pair of
//! upper-triangular diagrams and every Littlewood-Richardson term of
//! S^{alpha*} (x) S^beta. Maximality goes the other way: for any diagram
//! outside the family there is a partner inside whose product produces a
//! weight with a gap of at least n-k, and the witness is constructed
//! explicitly rather than searched for.

use serde::Serialize;
use thiserror::Error;

use crate::context::{ContextError, GrContext};
use crate::schur::{dual_diagram, lr_decompose, SchurError, Weight};
use crate::young::{enumerate_up, is_upper_triangular, YoungDiagram, YoungError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CmError {
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error(transparent)]
    Young(#[from] YoungError),
    #[error("diagram {beta} normalizes into the upper-triangular family; no witness exists")]
    AlreadyInside { beta: String },
    #[error("witness recipe produced no suitable term for {beta}")]
    WitnessRecipeFailed { beta: String },
}

/// Whether every consecutive row gap of the weight stays below n-k.
pub fn is_cm_safe(gamma: &Weight, ctx: &GrContext) -> bool {
    let w = i64::from(ctx.complement_rank());
    gamma.entries().windows(2).all(|p| p[0] - p[1] < w)
}

/// One observed gap: which pair produced the weight and where the gap sits.
/// `row` is 1-based: the gap is gamma_row - gamma_{row+1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapSite {
    pub alpha: YoungDiagram,
    pub beta: YoungDiagram,
    pub gamma: Weight,
    pub row: usize,
    pub gap: i64,
}

/// Outcome of a gap sweep. `worst` records the first site attaining the
/// maximal gap (absent when every gap is zero); `violations` lists all sites
/// with gap >= n-k, and the sweep certifies when that list is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmReport {
    pub n: u32,
    pub k: u32,
    pub threshold: i64,
    pub pairs_checked: u64,
    pub terms_checked: u64,
    pub max_gap: i64,
    pub worst: Option<GapSite>,
    pub violations: Vec<GapSite>,
    pub certified: bool,
}

impl CmReport {
    fn empty(ctx: &GrContext) -> Self {
        CmReport {
            n: ctx.n(),
            k: ctx.k(),
            threshold: i64::from(ctx.complement_rank()),
            pairs_checked: 0,
            terms_checked: 0,
            max_gap: 0,
            worst: None,
            violations: Vec::new(),
            certified: true,
        }
    }

    /// Fold a later chunk of the same sweep into this one. Chunks must be
    /// merged in sweep order for `worst` to stay the first maximal site.
    pub fn merge(&mut self, other: CmReport) {
        debug_assert_eq!((self.n, self.k), (other.n, other.k));
        self.pairs_checked += other.pairs_checked;
        self.terms_checked += other.terms_checked;
        if other.max_gap > self.max_gap {
            self.max_gap = other.max_gap;
            self.worst = other.worst;
        }
        self.violations.extend(other.violations);
        self.certified = self.violations.is_empty();
    }
}

/// Gap sweep restricted to the given left factors (each paired against every
/// upper-triangular diagram). Building block for parallel certification.
pub fn survey_rows(ctx: &GrContext, alphas: &[YoungDiagram]) -> Result<CmReport, CmError> {
    let members = enumerate_up(ctx);
    let k = ctx.k() as usize;
    let mut report = CmReport::empty(ctx);
    for alpha in alphas {
        let wa: Weight = (&dual_diagram(alpha)).into();
        for beta in &members {
            report.pairs_checked += 1;
            let dec = lr_decompose(&wa, &beta.into(), k)?;
            for gamma in dec.terms().keys() {
                report.terms_checked += 1;
                for (i, pair) in gamma.entries().windows(2).enumerate() {
                    let gap = pair[0] - pair[1];
                    let site = || GapSite {
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                        gamma: gamma.clone(),
                        row: i + 1,
                        gap,
                    };
                    if gap > report.max_gap {
                        report.max_gap = gap;
                        report.worst = Some(site());
                    }
                    if gap >= report.threshold {
                        report.violations.push(site());
                    }
                }
            }
        }
    }
    report.certified = report.violations.is_empty();
    Ok(report)
}

/// Full sweep without any coprimality requirement, for surveying contexts
/// where certification is expected to fail.
pub fn survey_gaps(ctx: &GrContext) -> Result<CmReport, CmError> {
    survey_rows(ctx, &enumerate_up(ctx))
}

/// Certify that every weight of the generator algebra is Cohen-Macaulay safe.
/// Only meaningful for coprime (n, k), where the sweep is expected to come
/// back clean.
pub fn certify(ctx: &GrContext) -> Result<CmReport, CmError> {
    ctx.require_coprime()?;
    survey_gaps(ctx)
}

/// Constructive witness that a diagram outside the upper-triangular family
/// breaks certification: a member alpha and a term gamma of
/// S^{alpha*} (x) S^beta with a gap of at least n-k at the deepest violated
/// row of beta.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalityWitness {
    pub beta: YoungDiagram,
    pub alpha: YoungDiagram,
    pub gamma: Weight,
    pub row: usize,
    pub gap: i64,
    pub threshold: i64,
}

fn normalized_outsider(ctx: &GrContext, beta: &YoungDiagram) -> Result<YoungDiagram, CmError> {
    let beta = beta.padded_to(ctx.k() as usize)?.sl_normalized();
    if is_upper_triangular(&beta, ctx)? {
        return Err(CmError::AlreadyInside { beta: beta.to_string() });
    }
    Ok(beta)
}

/// Build the witness directly: take the deepest row l where beta violates the
/// upper-triangular bound and let alpha fill rows 1..k-l to their caps,
/// leaving the last l rows empty. The dual of alpha then starts with l copies
/// of its first row, the product contains a term adding beta_i to row i for
/// i <= l while row l+1 stays at alpha_1 - alpha_{k-l}, and that term has gap
/// beta_l + alpha_{k-l} >= n-k at row l (the two caps sum to n-k-1 for
/// coprime (n, k) and the violation adds one more). The returned gamma is the
/// lexicographically greatest product term with a gap >= n-k at row l.
/// Inputs are column-stripped first; diagrams that normalize into the family
/// have no witness and are reported as such.
pub fn maximality_witness(
    ctx: &GrContext,
    beta: &YoungDiagram,
) -> Result<MaximalityWitness, CmError> {
    let beta = normalized_outsider(ctx, beta)?;
    let k = ctx.k() as usize;
    let (kk, w) = (u64::from(ctx.k()), u64::from(ctx.complement_rank()));
    let l = (1..=k)
        .rev()
        .find(|&i| kk * u64::from(beta.rows()[i - 1]) > (k as u64 - i as u64) * w)
        .expect("a diagram outside the family violates some row bound");
    // the normalized last row is zero and never violates, so l < k and the
    // gap at row l is between honest entries of a rank-k weight
    debug_assert!(l < k);
    let alpha_rows: Vec<u32> = (1..=k)
        .map(|i| if i <= k - l { (((k as u64 - i as u64) * w) / kk) as u32 } else { 0 })
        .collect();
    let alpha = YoungDiagram::new(alpha_rows).expect("row caps are non-increasing");
    let threshold = i64::from(ctx.complement_rank());
    let dec = lr_decompose(&(&dual_diagram(&alpha)).into(), &(&beta).into(), k)?;
    let gamma = dec
        .terms()
        .keys()
        .rev()
        .find(|g| g.entries()[l - 1] - g.entries()[l] >= threshold)
        .cloned()
        .ok_or_else(|| CmError::WitnessRecipeFailed { beta: beta.to_string() })?;
    let gap = gamma.entries()[l - 1] - gamma.entries()[l];
    Ok(MaximalityWitness { beta, alpha, gamma, row: l, gap, threshold })
}

/// Every witness found by exhaustive search: all members alpha and all terms
/// of S^{alpha*} (x) S^beta with a gap >= n-k anywhere. The constructive
/// witness must appear in this list.
pub fn brute_force_witnesses(
    ctx: &GrContext,
    beta: &YoungDiagram,
) -> Result<Vec<GapSite>, CmError> {
    let beta = normalized_outsider(ctx, beta)?;
    let k = ctx.k() as usize;
    let threshold = i64::from(ctx.complement_rank());
    let mut out = Vec::new();
    for alpha in enumerate_up(ctx) {
        let dec = lr_decompose(&(&dual_diagram(&alpha)).into(), &(&beta).into(), k)?;
        for gamma in dec.terms().keys() {
            for (i, pair) in gamma.entries().windows(2).enumerate() {
                let gap = pair[0] - pair[1];
                if gap >= threshold {
                    out.push(GapSite {
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                        gamma: gamma.clone(),
                        row: i + 1,
                        gap,
                    });
                }
            }
        }
    }
    Ok(out)
}
