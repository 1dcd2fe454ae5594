//! The staircase complex replacing a Schur functor of the subbundle by ones
//! with strictly smaller rotation distance, and the resolution tree obtained
//! by iterating it down to the upper-triangular family.
//!
//! The authoritative description is cohomological: for each twist i = 1..n,
//! push alpha (column-stripped first) with its last entry replaced by i
//! through the rank-k Bott sort; the twist vanishes exactly when i is of the
//! form alpha_j + k - j for some j < k, so n - k + 1 twists survive when
//! alpha fits rows of width at most n - k + 1 and more survive for wider
//! rows. Resolution and distance descent always consume the survivors.
//!
//! Within that staircase regime (first row at most n - k + 1) the survivors
//! also have a closed form: with ceiling profile
//! D = (n-k+1, alpha_1+1, ..., alpha_{k-1}+1), the i-th term
//! (i = 1..n-k+1) has rows max(alpha_j, min(i, D_j)). The closed form is
//! attached whenever it applies so the two descriptions can be compared.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::bwb::twisted_sort;
use crate::context::{ContextError, GrContext};
use crate::young::{is_upper_triangular, rotation_distance, YoungDiagram, YoungError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StaircaseError {
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Young(#[from] YoungError),
    #[error("resolution depth limit {limit} exceeded")]
    DepthLimitExceeded { limit: u32 },
    #[error("first row of {alpha} exceeds the box width {width}")]
    FirstRowTooWide { alpha: String, width: u32 },
    #[error("first row of {alpha} does not exceed the box width {width}")]
    FirstRowNotWide { alpha: String, width: u32 },
}

/// One twist of the cohomological description: either it vanishes or it
/// contributes `term` (column-stripped) in cohomological degree `degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistTerm {
    pub twist: u32,
    pub degree: Option<u32>,
    pub term: Option<YoungDiagram>,
}

/// Closed form of the complex, available only in the staircase regime
/// (first row at most n-k+1): the ceiling profile and the n-k+1 terms it
/// generates, in the same order as the surviving twists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeometricDescription {
    pub profile: Vec<u32>,
    pub terms: Vec<YoungDiagram>,
}

/// The staircase complex for one diagram: the full cohomological sweep and,
/// when the first row allows it, the geometric closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StaircaseComplex {
    pub n: u32,
    pub k: u32,
    pub alpha: YoungDiagram,
    pub geometric: Option<GeometricDescription>,
    pub bwb: Vec<TwistTerm>,
}

impl StaircaseComplex {
    /// The surviving cohomological terms in twist order.
    pub fn nonvanishing(&self) -> Vec<&YoungDiagram> {
        self.bwb.iter().filter_map(|t| t.term.as_ref()).collect()
    }

    /// Whether the closed form reproduces the survivors in order; `None`
    /// outside the regime where the closed form exists.
    pub fn descriptions_agree(&self) -> Option<bool> {
        self.geometric.as_ref().map(|geo| {
            let survivors = self.nonvanishing();
            survivors.len() == geo.terms.len()
                && survivors.iter().zip(&geo.terms).all(|(a, b)| *a == b)
        })
    }
}

fn normalized_input(ctx: &GrContext, alpha: &YoungDiagram) -> Result<YoungDiagram, StaircaseError> {
    Ok(alpha.padded_to(ctx.k() as usize)?.sl_normalized())
}

fn ceiling_profile(ctx: &GrContext, alpha: &YoungDiagram) -> Vec<u32> {
    let mut profile = Vec::with_capacity(ctx.k() as usize);
    profile.push(ctx.complement_rank() + 1);
    for j in 1..ctx.k() as usize {
        profile.push(alpha.rows()[j - 1] + 1);
    }
    profile
}

fn geometric_terms(ctx: &GrContext, alpha: &YoungDiagram, profile: &[u32]) -> Vec<YoungDiagram> {
    (1..=ctx.complement_rank() + 1)
        .map(|i| {
            let rows: Vec<u32> = alpha
                .rows()
                .iter()
                .zip(profile)
                .map(|(&a, &d)| a.max(i.min(d)))
                .collect();
            YoungDiagram::new(rows)
                .expect("staircase rows stay non-increasing")
                .sl_normalized()
        })
        .collect()
}

fn bwb_terms(ctx: &GrContext, alpha: &YoungDiagram) -> Vec<TwistTerm> {
    let k = ctx.k() as usize;
    (1..=ctx.n())
        .map(|i| {
            let mut v: Vec<i64> = alpha.rows().iter().map(|&r| i64::from(r)).collect();
            v[k - 1] = i64::from(i);
            match twisted_sort(&v) {
                None => TwistTerm { twist: i, degree: None, term: None },
                Some((degree, weight)) => TwistTerm {
                    twist: i,
                    degree: Some(degree),
                    term: Some(
                        weight
                            .sl_normalized()
                            .to_diagram()
                            .expect("column-stripped dominant weight is a diagram"),
                    ),
                },
            }
        })
        .collect()
}

/// The surviving complex terms in twist order (duplicates kept).
fn surviving_terms(ctx: &GrContext, alpha: &YoungDiagram) -> Vec<YoungDiagram> {
    bwb_terms(ctx, alpha).into_iter().filter_map(|t| t.term).collect()
}

/// Build the staircase complex. The input is column-stripped; rows beyond k
/// are rejected, widths beyond the box are allowed (the complex is what
/// shrinks them). The geometric closed form is attached only when the first
/// row is at most n-k+1.
pub fn staircase_complex(
    ctx: &GrContext,
    alpha: &YoungDiagram,
) -> Result<StaircaseComplex, StaircaseError> {
    let alpha = normalized_input(ctx, alpha)?;
    let geometric = (alpha.first_row() <= ctx.complement_rank() + 1).then(|| {
        let profile = ceiling_profile(ctx, &alpha);
        let terms = geometric_terms(ctx, &alpha, &profile);
        GeometricDescription { profile, terms }
    });
    let bwb = bwb_terms(ctx, &alpha);
    Ok(StaircaseComplex { n: ctx.n(), k: ctx.k(), alpha, geometric, bwb })
}

/// Outcome of checking that every complex term sits strictly closer to the
/// upper-triangular family than the input. Vacuous when the input itself is
/// already in the family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    pub alpha: YoungDiagram,
    pub vacuous: bool,
    pub base_distance: u32,
    pub term_distances: Vec<(YoungDiagram, u32)>,
    pub ok: bool,
}

/// Check rotation-distance descent for an in-box diagram: every surviving
/// term of its staircase complex must have strictly smaller distance.
pub fn verify_distance_descent(
    ctx: &GrContext,
    alpha: &YoungDiagram,
) -> Result<DescentReport, StaircaseError> {
    ctx.require_coprime()?;
    let alpha = normalized_input(ctx, alpha)?;
    if alpha.first_row() > ctx.complement_rank() {
        return Err(StaircaseError::FirstRowTooWide {
            alpha: alpha.to_string(),
            width: ctx.complement_rank(),
        });
    }
    if is_upper_triangular(&alpha, ctx)? {
        return Ok(DescentReport {
            alpha,
            vacuous: true,
            base_distance: 0,
            term_distances: Vec::new(),
            ok: true,
        });
    }
    let base_distance = rotation_distance(&alpha, ctx)?;
    let mut term_distances = Vec::new();
    let mut ok = true;
    for term in surviving_terms(ctx, &alpha) {
        let dist = rotation_distance(&term, ctx)?;
        ok &= dist < base_distance;
        term_distances.push((term, dist));
    }
    Ok(DescentReport { alpha, vacuous: false, base_distance, term_distances, ok })
}

/// Outcome of checking that a complex for an over-wide diagram only involves
/// strictly narrower diagrams.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WidthReport {
    pub alpha: YoungDiagram,
    pub first_row: u32,
    pub term_first_rows: Vec<u32>,
    pub ok: bool,
}

/// Check width descent for a diagram wider than the box: every surviving
/// cohomological term must have a strictly smaller first row.
pub fn verify_width_descent(
    ctx: &GrContext,
    alpha: &YoungDiagram,
) -> Result<WidthReport, StaircaseError> {
    let alpha = normalized_input(ctx, alpha)?;
    if alpha.first_row() <= ctx.complement_rank() {
        return Err(StaircaseError::FirstRowNotWide {
            alpha: alpha.to_string(),
            width: ctx.complement_rank(),
        });
    }
    let first_row = alpha.first_row();
    let term_first_rows: Vec<u32> =
        surviving_terms(ctx, &alpha).iter().map(YoungDiagram::first_row).collect();
    let ok = term_first_rows.iter().all(|&r| r < first_row);
    Ok(WidthReport { alpha, first_row, term_first_rows, ok })
}

/// One resolved diagram: its distance (when it fits the box), its resolution
/// depth and the indices of the complex terms it expands into.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionNode {
    pub diagram: YoungDiagram,
    pub distance: Option<u32>,
    pub depth: u32,
    pub children: Vec<usize>,
}

/// Shared-subtree resolution of a diagram down to upper-triangular leaves.
/// Nodes are listed children-first, so the root is the last entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionTrace {
    pub n: u32,
    pub k: u32,
    pub root: YoungDiagram,
    pub root_index: usize,
    pub nodes: Vec<ResolutionNode>,
    pub depth: u32,
    pub bound: u32,
    pub within_bound: bool,
}

/// Iterate the staircase complex until every branch reaches the family,
/// sharing repeated subtrees. The depth limit guards termination; the
/// recorded bound k(n-k)+3 is informational, not enforced.
pub fn resolve(
    ctx: &GrContext,
    alpha: &YoungDiagram,
    depth_limit: u32,
) -> Result<ResolutionTrace, StaircaseError> {
    ctx.require_coprime()?;
    let root = normalized_input(ctx, alpha)?;

    fn rec(
        ctx: &GrContext,
        dia: YoungDiagram,
        level: u32,
        limit: u32,
        nodes: &mut Vec<ResolutionNode>,
        memo: &mut HashMap<YoungDiagram, usize>,
    ) -> Result<usize, StaircaseError> {
        if let Some(&idx) = memo.get(&dia) {
            return Ok(idx);
        }
        let distance = if dia.first_row() <= ctx.complement_rank() {
            Some(rotation_distance(&dia, ctx)?)
        } else {
            None
        };
        let (depth, children) = if is_upper_triangular(&dia, ctx)? {
            (0, Vec::new())
        } else {
            if level >= limit {
                return Err(StaircaseError::DepthLimitExceeded { limit });
            }
            let terms: BTreeSet<YoungDiagram> =
                surviving_terms(ctx, &dia).into_iter().collect();
            let mut children = Vec::with_capacity(terms.len());
            let mut depth = 0;
            for term in terms {
                let idx = rec(ctx, term, level + 1, limit, nodes, memo)?;
                depth = depth.max(nodes[idx].depth + 1);
                children.push(idx);
            }
            (depth, children)
        };
        let idx = nodes.len();
        nodes.push(ResolutionNode { diagram: dia.clone(), distance, depth, children });
        memo.insert(dia, idx);
        Ok(idx)
    }

    let mut nodes = Vec::new();
    let mut memo = HashMap::new();
    let root_index = rec(ctx, root.clone(), 0, depth_limit, &mut nodes, &mut memo)?;
    let depth = nodes[root_index].depth;
    let bound = ctx.k() * ctx.complement_rank() + 3;
    Ok(ResolutionTrace {
        n: ctx.n(),
        k: ctx.k(),
        root,
        root_index,
        nodes,
        depth,
        bound,
        within_bound: depth <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn complex_for_overwide_row_on_gr25() {
        let ctx = GrContext::new(5, 2).unwrap();
        let complex = staircase_complex(&ctx, &d(&[2, 0])).unwrap();
        let geo = complex.geometric.as_ref().unwrap();
        assert_eq!(geo.profile, vec![4, 3]);
        assert_eq!(
            geo.terms,
            vec![d(&[1, 0]), d(&[0, 0]), d(&[0, 0]), d(&[1, 0])]
        );
        let degrees: Vec<Option<u32>> = complex.bwb.iter().map(|t| t.degree).collect();
        assert_eq!(
            degrees,
            vec![Some(0), Some(0), None, Some(1), Some(1)]
        );
        assert_eq!(complex.descriptions_agree(), Some(true));
    }

    #[test]
    fn complex_for_figure_diagram_on_gr_11_4() {
        let ctx = GrContext::new(11, 4).unwrap();
        let complex = staircase_complex(&ctx, &d(&[6, 3, 3, 0])).unwrap();
        let survivors: Vec<YoungDiagram> =
            complex.nonvanishing().into_iter().cloned().collect();
        assert_eq!(
            survivors,
            vec![
                d(&[5, 2, 2, 0]),
                d(&[4, 1, 1, 0]),
                d(&[3, 0, 0, 0]),
                d(&[2, 0, 0, 0]),
                d(&[2, 1, 0, 0]),
                d(&[2, 2, 0, 0]),
                d(&[3, 3, 0, 0]),
                d(&[4, 3, 0, 0]),
            ]
        );
        let vanished: Vec<u32> = complex
            .bwb
            .iter()
            .filter(|t| t.term.is_none())
            .map(|t| t.twist)
            .collect();
        assert_eq!(vanished, vec![4, 5, 9]);
        let degrees: Vec<u32> =
            complex.bwb.iter().filter_map(|t| t.degree).collect();
        assert_eq!(degrees, vec![0, 0, 0, 2, 2, 2, 3, 3]);
        assert_eq!(complex.descriptions_agree(), Some(true));
    }

    #[test]
    fn wide_rows_have_extra_survivors_and_no_closed_form() {
        // beyond first row n-k+1 the vanishing twist alpha_1 + k - 1 leaves
        // the sweep range, so every twist survives at degree zero
        let ctx = GrContext::new(5, 2).unwrap();
        let complex = staircase_complex(&ctx, &d(&[5, 0])).unwrap();
        assert!(complex.geometric.is_none());
        assert_eq!(complex.descriptions_agree(), None);
        let survivors: Vec<YoungDiagram> =
            complex.nonvanishing().into_iter().cloned().collect();
        assert_eq!(
            survivors,
            vec![d(&[4, 0]), d(&[3, 0]), d(&[2, 0]), d(&[1, 0]), d(&[0, 0])]
        );
        let degrees: Vec<Option<u32>> = complex.bwb.iter().map(|t| t.degree).collect();
        assert_eq!(degrees, vec![Some(0); 5]);
    }

    #[test]
    fn input_is_column_stripped() {
        let ctx = GrContext::new(5, 2).unwrap();
        let from_raw = staircase_complex(&ctx, &d(&[3, 1])).unwrap();
        let from_normalized = staircase_complex(&ctx, &d(&[2, 0])).unwrap();
        assert_eq!(from_raw, from_normalized);
    }

    #[test]
    fn descriptions_agree_inside_the_regime() {
        // the closed form exists exactly up to first row n-k+1 and must
        // match the survivors there; wider rows carry no closed form
        let ctx = GrContext::new(5, 2).unwrap();
        for a1 in 0..=6u32 {
            for a2 in 0..=a1 {
                let complex = staircase_complex(&ctx, &d(&[a1, a2])).unwrap();
                let expected = complex.alpha.first_row() <= 4;
                assert_eq!(complex.geometric.is_some(), expected, "[{a1},{a2}]");
                if expected {
                    assert_eq!(complex.descriptions_agree(), Some(true), "[{a1},{a2}]");
                }
            }
        }
        let ctx = GrContext::new(7, 3).unwrap();
        for a1 in 0..=7u32 {
            for a2 in 0..=a1 {
                for a3 in 0..=a2 {
                    let complex = staircase_complex(&ctx, &d(&[a1, a2, a3])).unwrap();
                    let expected = complex.alpha.first_row() <= 5;
                    assert_eq!(complex.geometric.is_some(), expected, "[{a1},{a2},{a3}]");
                    if expected {
                        assert_eq!(
                            complex.descriptions_agree(),
                            Some(true),
                            "[{a1},{a2},{a3}]"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn distance_descends_for_full_width_row() {
        let ctx = GrContext::new(5, 2).unwrap();
        let report = verify_distance_descent(&ctx, &d(&[3, 0])).unwrap();
        assert!(!report.vacuous);
        assert_eq!(report.base_distance, 4);
        assert!(report.ok);
        for (term, dist) in &report.term_distances {
            assert!(*dist < 4, "{term}");
        }
    }

    #[test]
    fn descent_is_vacuous_inside_the_family() {
        let ctx = GrContext::new(5, 2).unwrap();
        let report = verify_distance_descent(&ctx, &d(&[1, 0])).unwrap();
        assert!(report.vacuous && report.ok);
    }

    #[test]
    fn width_descends_beyond_the_box() {
        let ctx = GrContext::new(7, 3).unwrap();
        let report = verify_width_descent(&ctx, &d(&[5, 0, 0])).unwrap();
        assert_eq!(report.first_row, 5);
        assert!(report.ok);
        assert!(report.term_first_rows.iter().all(|&r| r < 5));
        assert!(matches!(
            verify_width_descent(&ctx, &d(&[3, 0, 0])),
            Err(StaircaseError::FirstRowNotWide { .. })
        ));
    }

    #[test]
    fn resolution_of_full_width_row() {
        let ctx = GrContext::new(5, 2).unwrap();
        let trace = resolve(&ctx, &d(&[3, 0]), 16).unwrap();
        assert_eq!(trace.depth, 2);
        assert_eq!(trace.bound, 9);
        assert!(trace.within_bound);
        assert_eq!(trace.nodes.len(), 4);
        assert_eq!(trace.root, d(&[3, 0]));
        assert_eq!(trace.root_index, 3);
        let mid = trace
            .nodes
            .iter()
            .find(|node| node.diagram == d(&[2, 0]))
            .unwrap();
        assert_eq!(mid.depth, 1);
        assert_eq!(mid.children.len(), 2);
    }

    #[test]
    fn resolution_of_wide_row_descends_through_every_width() {
        let ctx = GrContext::new(5, 2).unwrap();
        let trace = resolve(&ctx, &d(&[5, 0]), 16).unwrap();
        assert_eq!(trace.depth, 4);
        assert_eq!(trace.nodes.len(), 6);
        assert_eq!(trace.root_index, 5);
        assert_eq!(trace.nodes[trace.root_index].distance, None);
        assert_eq!(trace.nodes[trace.root_index].children.len(), 5);
        assert!(trace.within_bound);
    }

    #[test]
    fn resolution_of_member_is_a_leaf() {
        let ctx = GrContext::new(5, 2).unwrap();
        let trace = resolve(&ctx, &d(&[1, 0]), 16).unwrap();
        assert_eq!(trace.depth, 0);
        assert_eq!(trace.nodes.len(), 1);
        assert!(trace.nodes[0].children.is_empty());
    }

    #[test]
    fn resolution_respects_depth_limit() {
        let ctx = GrContext::new(5, 2).unwrap();
        assert!(matches!(
            resolve(&ctx, &d(&[3, 0]), 1),
            Err(StaircaseError::DepthLimitExceeded { limit: 1 })
        ));
    }
}
