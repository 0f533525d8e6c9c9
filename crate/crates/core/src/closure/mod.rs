//! Membership in the involution model of the Grassmannian and in its
//! projective closure, with exact arithmetic over `ℚ(i)`.
//!
//! The affine variety is `{X = Xᵀ : X² = I, tr X = 2k - n}`. A point
//! `[X : t]` lies in its closure iff `X² = t²I`, `rank(X + tI) ≤ k` and
//! `rank(X - tI) ≤ n - k`. Points at infinity (`t = 0`) are nilpotent
//! symmetric matrices; the stratum `Z_d` is the orbit of
//! `S ⊕ … ⊕ S ⊕ 0` (`d` copies of `S = ½[[i, 1], [1, -i]]`) under
//! orthogonal conjugation, of dimension `d(n - d)`. For `n = 2k` and
//! `d = k` that orbit has two components; only its dimension is computed.

mod epsilon;
mod gaussian;
mod matrix;
mod parse;

use thiserror::Error;

pub use epsilon::{degeneration_error, epsilon_family_check, epsilon_point_f64, EpsilonReport, IdentityCheck};
pub use gaussian::{GaussianParseError, GaussianRational};
pub use matrix::{rank_exact, GRMatrix};
pub use parse::{parse_matrix, MatrixParseError};

use crate::scalar::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("{rows}x{cols} matrix cannot hold {entries} entries")]
    Shape { rows: usize, cols: usize, entries: usize },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("shapes {left:?} and {right:?} do not fit")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("[0 : 0] is not a projective point")]
    ZeroPoint,
    #[error("stratum index d = {d} must lie in 1..={} for n = {n}", n / 2)]
    StratumOutOfRange { n: u32, d: u32 },
    #[error("need 1 <= d <= k <= n/2, got n = {n}, k = {k}, d = {d}")]
    EpsilonParameters { n: u32, k: u32, d: u32 },
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(Rational),
    #[error("block size must be positive")]
    EmptyBlock,
}

fn require_symmetric(x: &GRMatrix) -> Result<(), ClosureError> {
    if !x.is_square() {
        return Err(ClosureError::NotSquare { rows: x.rows(), cols: x.cols() });
    }
    if !x.is_symmetric() {
        return Err(ClosureError::NotSymmetric);
    }
    Ok(())
}

/// A point `[X : t]` of `ℙ(Sym²(ℂⁿ) ⊕ ℂ)`.
#[derive(Debug, Clone, Eq)]
pub struct ProjPoint {
    x: GRMatrix,
    t: GaussianRational,
}

impl ProjPoint {
    pub fn new(x: GRMatrix, t: GaussianRational) -> Result<Self, ClosureError> {
        require_symmetric(&x)?;
        if x.is_zero() && t.is_zero() {
            return Err(ClosureError::ZeroPoint);
        }
        Ok(ProjPoint { x, t })
    }

    /// `[X : 1]`.
    pub fn affine(x: GRMatrix) -> Result<Self, ClosureError> {
        Self::new(x, GaussianRational::one())
    }

    pub fn x(&self) -> &GRMatrix {
        &self.x
    }

    pub fn t(&self) -> &GaussianRational {
        &self.t
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    fn coords(&self) -> impl Iterator<Item = &GaussianRational> {
        self.x.entries().iter().chain(std::iter::once(&self.t))
    }
}

/// Equal when one representative is a nonzero multiple of the other.
impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let Some((a, b)) = self.coords().zip(other.coords()).find(|(a, _)| !a.is_zero()) else {
            return false;
        };
        if b.is_zero() {
            return false;
        }
        let c = a / b;
        self.coords().zip(other.coords()).all(|(a, b)| *a == &c * b)
    }
}

/// `X² = Iₙ` and `tr X = 2k - n`, for symmetric `X`.
pub fn affine_member(x: &GRMatrix, k: u32) -> Result<bool, ClosureError> {
    require_symmetric(x)?;
    let n = x.rows();
    let target = GaussianRational::from_int(2 * i64::from(k) - n as i64);
    Ok(x.trace() == target && (x * x) == GRMatrix::identity(n))
}

/// `X² = t²Iₙ`, `rank(X + tIₙ) ≤ k` and `rank(X - tIₙ) ≤ n - k`.
pub fn projective_member(pt: &ProjPoint, k: u32) -> bool {
    let n = pt.n();
    let k = k as usize;
    if k > n {
        return false;
    }
    let t_id = GRMatrix::scalar(n, &pt.t);
    let t2 = GRMatrix::scalar(n, &(&pt.t * &pt.t));
    (&pt.x * &pt.x) == t2 && rank_exact(&(&pt.x + &t_id)) <= k && rank_exact(&(&pt.x - &t_id)) <= n - k
}

/// `S = ½[[i, 1], [1, -i]]`.
pub fn s_block() -> GRMatrix {
    let h = rat(1, 2);
    let z = Rational::from_integer(0.into());
    GRMatrix::from_rows(vec![
        vec![GaussianRational::new(z.clone(), h.clone()), GaussianRational::real(h.clone())],
        vec![GaussianRational::real(h.clone()), GaussianRational::new(z, -h)],
    ])
    .expect("2x2")
}

/// `S ⊕ … ⊕ S ⊕ 0_{n-2d}` with `d` copies of `S`, for `1 ≤ d ≤ n/2`.
pub fn boundary_generator(n: u32, d: u32) -> Result<GRMatrix, ClosureError> {
    if d == 0 || 2 * d > n {
        return Err(ClosureError::StratumOutOfRange { n, d });
    }
    let mut blocks = vec![s_block(); d as usize];
    if n > 2 * d {
        let rest = (n - 2 * d) as usize;
        blocks.push(GRMatrix::zeros(rest, rest));
    }
    Ok(GRMatrix::block_diag(&blocks))
}

/// Dimension of the orthogonal conjugation orbit through
/// `boundary_generator(n, d)`: the rank of `A ↦ AX - XA` on antisymmetric `A`.
pub fn orbit_dimension(n: u32, d: u32) -> Result<usize, ClosureError> {
    let x = boundary_generator(n, d)?;
    let n = n as usize;
    let mut images = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let a = GRMatrix::from_fn(n, n, |r, c| {
                if (r, c) == (i, j) {
                    GaussianRational::one()
                } else if (r, c) == (j, i) {
                    -GaussianRational::one()
                } else {
                    GaussianRational::zero()
                }
            });
            let bracket = &(&a * &x) - &(&x * &a);
            images.push(bracket.entries().to_vec());
        }
    }
    let m = GRMatrix::from_rows(images)?;
    Ok(rank_exact(&m))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalBlocks {
    /// Exchange matrix `J_q`.
    pub j: GRMatrix,
    /// Nilpotent shift `N_q` with ones on the superdiagonal.
    pub n: GRMatrix,
    /// `½(I - iJ_q) N_q (I + iJ_q)`.
    pub s: GRMatrix,
}

pub fn canonical_blocks(q: usize) -> Result<CanonicalBlocks, ClosureError> {
    if q == 0 {
        return Err(ClosureError::EmptyBlock);
    }
    let unit = |b: bool| if b { GaussianRational::one() } else { GaussianRational::zero() };
    let j = GRMatrix::from_fn(q, q, |r, c| unit(r + c == q - 1));
    let n = GRMatrix::from_fn(q, q, |r, c| unit(c == r + 1));
    let id = GRMatrix::identity(q);
    let ij = j.scale(&GaussianRational::i());
    let s = (&(&(&id - &ij) * &n) * &(&id + &ij)).scale_rational(&rat(1, 2));
    Ok(CanonicalBlocks { j, n, s })
}
