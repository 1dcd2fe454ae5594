//! Ambient Grassmannian data shared by every module.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextError {
    #[error("need 0 < k < n, got n={n}, k={k}")]
    RankOutOfRange { n: u32, k: u32 },
    #[error("certification contexts need 1 < k < n-1, got n={n}, k={k}")]
    RankNotInterior { n: u32, k: u32 },
    #[error("operation needs gcd(n,k) = 1, got gcd({n},{k}) = {gcd}")]
    NotCoprime { n: u32, k: u32, gcd: u32 },
}

/// The pair (n, k): k-dimensional subspaces of an n-dimensional space.
///
/// [`GrContext::new`] builds a certification context (interior rank, n and k
/// coprime). [`GrContext::exploratory`] admits any 0 < k < n so that
/// projective-space cohomology (k = 1) and non-coprime gap surveys can run;
/// operations whose statements need coprimality call [`GrContext::require_coprime`]
/// and reject such contexts with a typed error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GrContext {
    n: u32,
    k: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl GrContext {
    /// Certification context: 1 < k < n-1 and gcd(n,k) = 1.
    pub fn new(n: u32, k: u32) -> Result<Self, ContextError> {
        let ctx = Self::exploratory(n, k)?;
        if k <= 1 || k >= n - 1 {
            return Err(ContextError::RankNotInterior { n, k });
        }
        ctx.require_coprime()?;
        Ok(ctx)
    }

    /// Any 0 < k < n. Coprimality-dependent operations will still refuse to run.
    pub fn exploratory(n: u32, k: u32) -> Result<Self, ContextError> {
        if k == 0 || k >= n {
            return Err(ContextError::RankOutOfRange { n, k });
        }
        Ok(GrContext { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// n - k, the rank of the tautological quotient and the box width.
    pub fn complement_rank(&self) -> u32 {
        self.n - self.k
    }

    pub fn is_coprime(&self) -> bool {
        gcd(self.n, self.k) == 1
    }

    pub fn require_coprime(&self) -> Result<(), ContextError> {
        let g = gcd(self.n, self.k);
        if g == 1 {
            Ok(())
        } else {
            Err(ContextError::NotCoprime { n: self.n, k: self.k, gcd: g })
        }
    }

    /// Dimension of Hom(S,V) // SL(S): n*k - k^2 + 1.
    pub fn quotient_dim(&self) -> u32 {
        self.n * self.k - self.k * self.k + 1
    }

    /// The mirrored context (n, n-k) used for the quotient-side algebra.
    pub fn flipped(&self) -> Self {
        GrContext { n: self.n, k: self.n - self.k }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certification_context_accepts_interior_coprime_pairs() {
        for (n, k) in [(5, 2), (7, 3), (8, 3), (11, 4)] {
            let ctx = GrContext::new(n, k).unwrap();
            assert_eq!(ctx.complement_rank(), n - k);
        }
    }

    #[test]
    fn certification_context_rejects_bad_pairs() {
        assert_eq!(
            GrContext::new(6, 2),
            Err(ContextError::NotCoprime { n: 6, k: 2, gcd: 2 })
        );
        assert_eq!(GrContext::new(5, 1), Err(ContextError::RankNotInterior { n: 5, k: 1 }));
        assert_eq!(GrContext::new(5, 4), Err(ContextError::RankNotInterior { n: 5, k: 4 }));
        assert_eq!(GrContext::new(3, 3), Err(ContextError::RankOutOfRange { n: 3, k: 3 }));
    }

    #[test]
    fn exploratory_context_admits_projective_space_and_non_coprime() {
        let p3 = GrContext::exploratory(4, 1).unwrap();
        assert_eq!(p3.complement_rank(), 3);
        let even = GrContext::exploratory(6, 2).unwrap();
        assert!(!even.is_coprime());
        assert!(even.require_coprime().is_err());
    }

    #[test]
    fn quotient_dimension_formula() {
        assert_eq!(GrContext::new(5, 2).unwrap().quotient_dim(), 7);
        assert_eq!(GrContext::new(11, 4).unwrap().quotient_dim(), 29);
    }

    #[test]
    fn flipped_context_swaps_sub_and_quotient_ranks() {
        let ctx = GrContext::new(7, 3).unwrap();
        let flip = ctx.flipped();
        assert_eq!((flip.n(), flip.k()), (7, 4));
        assert!(flip.is_coprime());
    }
}
