use std::fmt;
use std::str::FromStr;

use super::jacobi::{jacobi_eigen, orient};
use super::matrix::{Matrix, SymmetricMatrix};
use super::EigenError;

/// Eigenvalues below this fraction of the largest one are treated as zero.
pub const ZERO_EIGEN_CUTOFF: f64 = 1e-10;

/// How many singular triplets to keep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RankSpec {
    /// Every triplet whose eigenvalue clears the zero cutoff.
    #[default]
    Auto,
    Fixed(usize),
}

impl FromStr for RankSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(RankSpec::Auto);
        }
        s.parse::<usize>()
            .map(RankSpec::Fixed)
            .map_err(|_| format!("expected a positive integer or \"auto\", got {s:?}"))
    }
}

impl fmt::Display for RankSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankSpec::Auto => f.write_str("auto"),
            RankSpec::Fixed(r) => write!(f, "{r}"),
        }
    }
}

/// Reduced singular value decomposition `A ≈ U · diag(S) · Vᵀ`.
///
/// Columns of `u` are the new term axes, columns of `v` the new document axes.
/// Singular values are non-increasing and strictly positive.
#[derive(Clone, Debug)]
pub struct SvdFactors {
    u: Matrix,
    s: Vec<f64>,
    v: Matrix,
}

impl SvdFactors {
    /// Assembles factors from parts; shapes must agree and every singular value must be positive.
    pub fn from_parts(u: Matrix, s: Vec<f64>, v: Matrix) -> Result<Self, EigenError> {
        if u.cols() != s.len() || v.cols() != s.len() {
            return Err(EigenError::DimensionMismatch {
                expected: s.len(),
                found: if u.cols() != s.len() {
                    u.cols()
                } else {
                    v.cols()
                },
            });
        }
        if s.iter().any(|x| x.is_nan() || *x <= 0.0) {
            return Err(EigenError::RankDeficient);
        }
        Ok(Self { u, s, v })
    }

    pub fn rank(&self) -> usize {
        self.s.len()
    }

    pub fn u(&self) -> &Matrix {
        &self.u
    }

    pub fn v(&self) -> &Matrix {
        &self.v
    }

    pub fn singular_values(&self) -> &[f64] {
        &self.s
    }

    /// Column `a` of `U`.
    pub fn term_axis(&self, a: usize) -> Vec<f64> {
        self.u.column(a)
    }

    /// Keeps the leading `r` triplets.
    pub fn truncate(&self, r: usize) -> Result<SvdFactors, EigenError> {
        if r == 0 || r > self.rank() {
            return Err(EigenError::BadRank {
                requested: r,
                available: self.rank(),
            });
        }
        let u = Matrix::from_fn(self.u.rows(), r, |i, a| self.u[(i, a)]);
        let v = Matrix::from_fn(self.v.rows(), r, |i, a| self.v[(i, a)]);
        Ok(SvdFactors {
            u,
            s: self.s[..r].to_vec(),
            v,
        })
    }

    /// `U · diag(S) · Vᵀ`.
    pub fn reconstruct(&self) -> Matrix {
        let r = self.rank();
        Matrix::from_fn(self.u.rows(), self.v.rows(), |i, j| {
            (0..r)
                .map(|a| self.u[(i, a)] * self.s[a] * self.v[(j, a)])
                .sum()
        })
    }

    /// Negates column `a` of both `U` and `V`; the product is unchanged.
    pub fn flip_sign(&mut self, a: usize) {
        for i in 0..self.u.rows() {
            self.u[(i, a)] = -self.u[(i, a)];
        }
        for j in 0..self.v.rows() {
            self.v[(j, a)] = -self.v[(j, a)];
        }
    }
}

/// `A · Aᵀ` with a fixed summation order and bitwise symmetry.
pub fn gram_rows(a: &Matrix) -> SymmetricMatrix {
    SymmetricMatrix::from_upper(a.rows(), |i, j| {
        a.row(i).iter().zip(a.row(j)).map(|(x, y)| x * y).sum()
    })
}

/// `Aᵀ · A` with a fixed summation order and bitwise symmetry.
pub fn gram_cols(a: &Matrix) -> SymmetricMatrix {
    SymmetricMatrix::from_upper(a.cols(), |i, j| {
        (0..a.rows()).map(|k| a[(k, i)] * a[(k, j)]).sum()
    })
}

/// Reduced SVD obtained from the eigenproblem of the smaller Gram matrix.
///
/// With `t` rows and `N` columns, `A·Aᵀ` is diagonalized when `t <= N`, otherwise
/// `Aᵀ·A`. The other side is recovered as `V = Aᵀ U S⁻¹` (or `U = A V S⁻¹`).
/// Columns of `U` are oriented with their largest-magnitude component positive.
pub fn svd_via_gram(a: &Matrix, rank: RankSpec) -> Result<SvdFactors, EigenError> {
    if let RankSpec::Fixed(0) = rank {
        return Err(EigenError::BadRank {
            requested: 0,
            available: 0,
        });
    }
    if a.rows() == 0 || a.cols() == 0 {
        return Err(EigenError::Empty);
    }
    let left = a.rows() <= a.cols();
    let gram = if left { gram_rows(a) } else { gram_cols(a) };
    let eig = jacobi_eigen(&gram)?;

    let lambda_max = eig.values[0];
    if lambda_max.is_nan() || lambda_max <= 0.0 {
        return Err(EigenError::RankDeficient);
    }
    let numerical_rank = eig
        .values
        .iter()
        .take_while(|&&l| l >= ZERO_EIGEN_CUTOFF * lambda_max)
        .count();
    let r = match rank {
        RankSpec::Auto => numerical_rank,
        RankSpec::Fixed(r) => r.min(numerical_rank),
    };
    let s: Vec<f64> = eig.values[..r].iter().map(|l| l.sqrt()).collect();

    // known side: eigenvectors of the Gram matrix; other side: A(ᵀ) · known · S⁻¹
    let known = Matrix::from_fn(gram.order(), r, |i, c| eig.vectors[(i, c)]);
    let (u, v) = if left {
        let v = recover(&a.transpose(), &known, &s);
        (known, v)
    } else {
        let u = recover(a, &known, &s);
        (u, known)
    };

    let mut f = SvdFactors { u, s, v };
    for c in 0..r {
        let mut col = f.u.column(c);
        if orient(&mut col) {
            f.flip_sign(c);
        }
    }
    Ok(f)
}

fn recover(m: &Matrix, known: &Matrix, s: &[f64]) -> Matrix {
    Matrix::from_fn(m.rows(), known.cols(), |i, c| {
        let dot: f64 = (0..m.cols()).map(|k| m[(i, k)] * known[(k, c)]).sum();
        dot / s[c]
    })
}
