//! Graded quiver presentations of the two endomorphism algebras: the one
//! built from Schur functors of the subbundle (vertices = upper-triangular
//! diagrams for (n, k)) and the one built from the quotient bundle (vertices
//! = their transposes, upper triangular for (n, n-k)).
//!
//! Hom(M_alpha, M_beta) decomposes into "ladders": each Littlewood-Richardson
//! term gamma of S^{alpha*} (x) S^beta contributes the family of isotypic
//! components S^{base + a(1,...,1)} (a >= 0) where base is gamma with full
//! columns stripped. The Sym-grading of a member is its box count and its
//! dimension is the Littlewood-Richardson multiplicity times the rank-n Weyl
//! dimension of its label. On the quotient side the same recipe runs on
//! transposed vertices at rank n-k, with bases dualized so the two sides can
//! be laid side by side and compared family-by-family.

use serde::Serialize;
use thiserror::Error;

use crate::context::{ContextError, GrContext};
use crate::schur::{dual_diagram, lr_decompose, weyl_dim, SchurError, Weight};
use crate::young::{enumerate_up, is_upper_triangular, YoungDiagram, YoungError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error(transparent)]
    Young(#[from] YoungError),
    #[error("diagram {0} is not an upper-triangular vertex")]
    NotVertex(String),
}

/// Which endomorphism algebra a hom-space or quiver belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuiverSide {
    Sub,
    Quot,
}

/// One family of isotypic components: labels base + a(1,...,1) for a >= 0,
/// all with the same multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ladder {
    pub base: YoungDiagram,
    pub multiplicity: u64,
}

/// A single isotypic component of a graded hom-space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomComponent {
    pub label: YoungDiagram,
    pub degree: u32,
    pub multiplicity: u64,
    pub dim: u64,
}

/// The full graded hom-space between two modules, organised as ladders
/// sorted by (box count of the base, base).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedHom {
    pub side: QuiverSide,
    pub source: YoungDiagram,
    pub target: YoungDiagram,
    pub rank: usize,
    pub dim_rank: usize,
    pub ladders: Vec<Ladder>,
}

fn family_label(base: &YoungDiagram, a: u32) -> YoungDiagram {
    YoungDiagram::new(base.rows().iter().map(|&r| r + a).collect())
        .expect("adding a constant keeps rows non-increasing")
}

fn ladder_dim(
    base: &YoungDiagram,
    a: u32,
    multiplicity: u64,
    dim_rank: usize,
) -> Result<u64, AlgebraError> {
    let label = family_label(base, a);
    let w: Weight = (&label).into();
    multiplicity
        .checked_mul(weyl_dim(&w.padded_to(dim_rank)?, dim_rank)?)
        .ok_or(AlgebraError::Schur(SchurError::Overflow))
}

impl GradedHom {
    /// The a-th member of every ladder, in ladder order.
    pub fn component(&self, a: u32) -> Result<Vec<HomComponent>, AlgebraError> {
        self.ladders
            .iter()
            .map(|lad| {
                let label = family_label(&lad.base, a);
                let degree = label.boxes() as u32;
                let dim = ladder_dim(&lad.base, a, lad.multiplicity, self.dim_rank)?;
                Ok(HomComponent { label, degree, multiplicity: lad.multiplicity, dim })
            })
            .collect()
    }

    /// Total dimension in Sym-degree zero; 1 on the diagonal and 0 elsewhere
    /// when the degree-zero part of the algebra is semisimple.
    pub fn degree_zero_dim(&self) -> u64 {
        self.ladders
            .iter()
            .filter(|lad| lad.base.boxes() == 0)
            .map(|lad| lad.multiplicity)
            .sum()
    }
}

fn checked_vertex(ctx: &GrContext, d: &YoungDiagram) -> Result<YoungDiagram, AlgebraError> {
    let d = d.padded_to(ctx.k() as usize)?;
    if !is_upper_triangular(&d, ctx)? {
        return Err(AlgebraError::NotVertex(d.to_string()));
    }
    Ok(d)
}

/// Graded hom-space between the modules labelled by two upper-triangular
/// diagrams. Both sides take the (n, k) labels; the quotient side transposes
/// them internally and works at rank n-k.
pub fn graded_hom(
    ctx: &GrContext,
    side: QuiverSide,
    source: &YoungDiagram,
    target: &YoungDiagram,
) -> Result<GradedHom, AlgebraError> {
    let src = checked_vertex(ctx, source)?;
    let tgt = checked_vertex(ctx, target)?;
    let (rank, src_local, tgt_local) = match side {
        QuiverSide::Sub => (ctx.k() as usize, src, tgt),
        QuiverSide::Quot => {
            let w = ctx.complement_rank() as usize;
            (w, src.transpose().padded_to(w)?, tgt.transpose().padded_to(w)?)
        }
    };
    let dec = lr_decompose(&(&dual_diagram(&src_local)).into(), &(&tgt_local).into(), rank)?;
    let mut ladders: Vec<Ladder> = dec
        .terms()
        .iter()
        .map(|(gamma, &multiplicity)| {
            let gamma = gamma.to_diagram().expect("product of diagrams is a diagram");
            let base = match side {
                QuiverSide::Sub => gamma.sl_normalized(),
                QuiverSide::Quot => dual_diagram(&gamma),
            };
            Ladder { base, multiplicity }
        })
        .collect();
    ladders.sort_by(|x, y| (x.base.boxes(), &x.base).cmp(&(y.base.boxes(), &y.base)));
    Ok(GradedHom {
        side,
        source: src_local,
        target: tgt_local,
        rank,
        dim_rank: ctx.n() as usize,
        ladders,
    })
}

/// An edge of the quiver: indices into the vertex list plus the full graded
/// hom-space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuiverArrow {
    pub source: usize,
    pub target: usize,
    pub hom: GradedHom,
}

/// One side's quiver: all vertices and the hom-space for every ordered pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub n: u32,
    pub k: u32,
    pub side: QuiverSide,
    pub vertices: Vec<YoungDiagram>,
    pub homs: Vec<QuiverArrow>,
}

/// Assemble the full quiver for one side. Vertices keep the enumeration
/// order of the (n, k) family; on the quotient side they are displayed as
/// transposes but stay aligned index-by-index with the other side.
pub fn build_quiver(ctx: &GrContext, side: QuiverSide) -> Result<Quiver, AlgebraError> {
    let members = enumerate_up(ctx);
    let mut vertices = Vec::with_capacity(members.len());
    for m in &members {
        vertices.push(match side {
            QuiverSide::Sub => m.clone(),
            QuiverSide::Quot => m.transpose().padded_to(ctx.complement_rank() as usize)?,
        });
    }
    let mut homs = Vec::with_capacity(members.len() * members.len());
    for (i, src) in members.iter().enumerate() {
        for (j, tgt) in members.iter().enumerate() {
            homs.push(QuiverArrow { source: i, target: j, hom: graded_hom(ctx, side, src, tgt)? });
        }
    }
    Ok(Quiver { n: ctx.n(), k: ctx.k(), side, vertices, homs })
}

impl Quiver {
    /// Matrix of degree-zero dimensions, indexed [source][target].
    pub fn degree_zero_matrix(&self) -> Vec<Vec<u64>> {
        let v = self.vertices.len();
        let mut m = vec![vec![0u64; v]; v];
        for arrow in &self.homs {
            m[arrow.source][arrow.target] = arrow.hom.degree_zero_dim();
        }
        m
    }

    /// Graphviz rendering. Every ladder of positive degree contributes one
    /// edge labelled with its lowest member: "deg d: label (dim N)".
    pub fn dot(&self) -> Result<String, AlgebraError> {
        let name = match self.side {
            QuiverSide::Sub => "sub",
            QuiverSide::Quot => "quot",
        };
        let mut out = format!("digraph nccr_{name} {{\n  rankdir=LR;\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{i} [shape=box, label=\"{v}\"];\n"));
        }
        for arrow in &self.homs {
            for lad in &arrow.hom.ladders {
                let degree = lad.base.boxes();
                if degree == 0 {
                    continue;
                }
                let dim = ladder_dim(&lad.base, 0, lad.multiplicity, arrow.hom.dim_rank)?;
                let mult = if lad.multiplicity > 1 {
                    format!(", mult {}", lad.multiplicity)
                } else {
                    String::new()
                };
                out.push_str(&format!(
                    "  v{} -> v{} [label=\"deg {}: {} (dim {}{})\"];\n",
                    arrow.source, arrow.target, degree, lad.base, dim, mult
                ));
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// Dimensions of corresponding family members on the two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderSample {
    pub a: u32,
    pub dim_sub: u64,
    pub dim_quot: u64,
}

/// A pair of ladders laid side by side, sampled over a window of family
/// indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderComparison {
    pub base_sub: YoungDiagram,
    pub base_quot: YoungDiagram,
    pub multiplicity_sub: u64,
    pub multiplicity_quot: u64,
    pub degree_sub: u32,
    pub degree_quot: u32,
    pub samples: Vec<LadderSample>,
    pub matched: bool,
}

/// All ladders of one ordered vertex pair compared across the two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairComparison {
    pub source: YoungDiagram,
    pub target: YoungDiagram,
    pub source_quot: YoungDiagram,
    pub target_quot: YoungDiagram,
    pub ladder_count_sub: usize,
    pub ladder_count_quot: usize,
    pub ladders: Vec<LadderComparison>,
    pub matched: bool,
}

/// Side-by-side comparison of the two algebras over all vertex pairs.
/// A ladder matches when multiplicities agree and the sampled dimensions
/// coincide for every family index in the window; everything else is left
/// flagged for inspection, not treated as an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideComparison {
    pub n: u32,
    pub k: u32,
    pub window: u32,
    pub pairs: Vec<PairComparison>,
    pub matched_ladders: u64,
    pub flagged_ladders: u64,
    pub all_matched: bool,
}

pub fn compare_sides(ctx: &GrContext, window: u32) -> Result<SideComparison, AlgebraError> {
    let members = enumerate_up(ctx);
    let mut pairs = Vec::new();
    let mut matched_ladders = 0u64;
    let mut flagged_ladders = 0u64;
    for src in &members {
        for tgt in &members {
            let hs = graded_hom(ctx, QuiverSide::Sub, src, tgt)?;
            let hq = graded_hom(ctx, QuiverSide::Quot, src, tgt)?;
            let mut ladders = Vec::new();
            let mut pair_matched = hs.ladders.len() == hq.ladders.len();
            for (ls, lq) in hs.ladders.iter().zip(&hq.ladders) {
                let mut samples = Vec::with_capacity(window as usize + 1);
                let mut matched = ls.multiplicity == lq.multiplicity;
                for a in 0..=window {
                    let dim_sub = ladder_dim(&ls.base, a, ls.multiplicity, hs.dim_rank)?;
                    let dim_quot = ladder_dim(&lq.base, a, lq.multiplicity, hq.dim_rank)?;
                    matched &= dim_sub == dim_quot;
                    samples.push(LadderSample { a, dim_sub, dim_quot });
                }
                if matched {
                    matched_ladders += 1;
                } else {
                    flagged_ladders += 1;
                }
                pair_matched &= matched;
                ladders.push(LadderComparison {
                    base_sub: ls.base.clone(),
                    base_quot: lq.base.clone(),
                    multiplicity_sub: ls.multiplicity,
                    multiplicity_quot: lq.multiplicity,
                    degree_sub: ls.base.boxes() as u32,
                    degree_quot: lq.base.boxes() as u32,
                    samples,
                    matched,
                });
            }
            flagged_ladders +=
                (hs.ladders.len().max(hq.ladders.len()) - ladders.len()) as u64;
            pairs.push(PairComparison {
                source: hs.source.clone(),
                target: hs.target.clone(),
                source_quot: hq.source.clone(),
                target_quot: hq.target.clone(),
                ladder_count_sub: hs.ladders.len(),
                ladder_count_quot: hq.ladders.len(),
                ladders,
                matched: pair_matched,
            });
        }
    }
    Ok(SideComparison {
        n: ctx.n(),
        k: ctx.k(),
        window,
        all_matched: flagged_ladders == 0 && pairs.iter().all(|p| p.matched),
        pairs,
        matched_ladders,
        flagged_ladders,
    })
}
