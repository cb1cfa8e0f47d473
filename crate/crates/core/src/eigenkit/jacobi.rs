use super::matrix::{Matrix, SymmetricMatrix};
use super::EigenError;

/// Off-diagonal entries at or below this fraction of the largest diagonal magnitude count as zero.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a symmetric matrix, sorted by descending eigenvalue.
///
/// Column `a` of `vectors` is the unit eigenvector paired with `values[a]`. Each
/// column is oriented so that its largest-magnitude component is positive.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl EigenDecomposition {
    pub fn vector(&self, a: usize) -> Vec<f64> {
        self.vectors.column(a)
    }
}

/// In-progress cyclic Jacobi diagonalization.
///
/// Exposed so callers can observe the working matrix between sweeps; most code
/// should just call [`jacobi_eigen`].
#[derive(Clone, Debug)]
pub struct JacobiState {
    work: Matrix,
    rotations: Matrix,
    sweeps: usize,
}

impl JacobiState {
    pub fn new(m: &SymmetricMatrix) -> Self {
        let n = m.order();
        Self {
            work: m.as_matrix().clone(),
            rotations: Matrix::identity(n),
            sweeps: 0,
        }
    }

    pub fn working(&self) -> &Matrix {
        &self.work
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    pub fn off_diagonal_max(&self) -> f64 {
        let n = self.work.rows();
        let mut m = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                m = m.max(self.work[(i, j)].abs());
            }
        }
        m
    }

    fn diagonal_max(&self) -> f64 {
        (0..self.work.rows()).fold(0.0f64, |m, i| m.max(self.work[(i, i)].abs()))
    }

    pub fn is_converged(&self) -> bool {
        self.off_diagonal_max() <= JACOBI_TOLERANCE * self.diagonal_max()
    }

    /// One cyclic pass over every upper-triangle pair `(p, q)`.
    pub fn sweep(&mut self) {
        let n = self.work.rows();
        for p in 0..n {
            for q in (p + 1)..n {
                self.rotate(p, q);
            }
        }
        self.sweeps += 1;
    }

    fn rotate(&mut self, p: usize, q: usize) {
        let a = &mut self.work;
        let apq = a[(p, q)];
        if apq == 0.0 {
            return;
        }
        let app = a[(p, p)];
        let aqq = a[(q, q)];
        let theta = (aqq - app) / (2.0 * apq);
        let t = if theta.is_finite() {
            let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
            if theta < 0.0 {
                -t
            } else {
                t
            }
        } else {
            0.0
        };
        if t == 0.0 {
            // |theta| overflowed: the pair is already decoupled to working precision
            a[(p, q)] = 0.0;
            a[(q, p)] = 0.0;
            return;
        }
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        let n = a.rows();
        for k in 0..n {
            if k == p || k == q {
                continue;
            }
            let akp = a[(k, p)];
            let akq = a[(k, q)];
            let kp = c * akp - s * akq;
            let kq = s * akp + c * akq;
            a[(k, p)] = kp;
            a[(p, k)] = kp;
            a[(k, q)] = kq;
            a[(q, k)] = kq;
        }
        a[(p, p)] = app - t * apq;
        a[(q, q)] = aqq + t * apq;
        a[(p, q)] = 0.0;
        a[(q, p)] = 0.0;

        let v = &mut self.rotations;
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = c * vkp - s * vkq;
            v[(k, q)] = s * vkp + c * vkq;
        }
    }

    /// Sorts the converged eigenpairs and fixes their orientation.
    pub fn finish(self) -> EigenDecomposition {
        let n = self.work.rows();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| self.work[(y, y)].total_cmp(&self.work[(x, x)]));

        let values = order.iter().map(|&a| self.work[(a, a)]).collect();
        let mut vectors = Matrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            let mut col = self.rotations.column(src);
            orient(&mut col);
            for (i, v) in col.into_iter().enumerate() {
                vectors[(i, dst)] = v;
            }
        }
        EigenDecomposition { values, vectors }
    }
}

/// Flips `v` so its largest-magnitude component (first one on ties) is positive.
pub(crate) fn orient(v: &mut [f64]) -> bool {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v.get(best).is_some_and(|x| *x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
        true
    } else {
        false
    }
}

/// Cyclic Jacobi eigendecomposition of a dense symmetric matrix.
pub fn jacobi_eigen(m: &SymmetricMatrix) -> Result<EigenDecomposition, EigenError> {
    if m.order() == 0 {
        return Err(EigenError::Empty);
    }
    let mut state = JacobiState::new(m);
    while !state.is_converged() {
        if state.sweeps() == MAX_SWEEPS {
            return Err(EigenError::NoConvergence {
                sweeps: MAX_SWEEPS,
                residual: state.off_diagonal_max(),
            });
        }
        state.sweep();
    }
    Ok(state.finish())
}
