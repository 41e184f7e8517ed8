use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// A bilinear map `U × V → W` stored by structure constants:
/// `get(i, j)[k]` is the coefficient of `w_k` in `u_i · v_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear<F> {
    left_dim: usize,
    right_dim: usize,
    out_dim: usize,
    data: Vec<F>,
}

impl<F: Field> Bilinear<F> {
    pub fn zeros(left_dim: usize, right_dim: usize, out_dim: usize) -> Self {
        Bilinear {
            left_dim,
            right_dim,
            out_dim,
            data: vec![F::zero(); left_dim * right_dim * out_dim],
        }
    }

    /// Builds from sparse `(i, j, k, value)` entries; repeated positions add up.
    pub fn from_entries(
        left_dim: usize,
        right_dim: usize,
        out_dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, F)>,
    ) -> Result<Self> {
        let mut t = Self::zeros(left_dim, right_dim, out_dim);
        for (i, j, k, v) in entries {
            if i >= left_dim || j >= right_dim || k >= out_dim {
                return Err(Error::Input(format!(
                    "tensor entry [{i}, {j}, {k}] out of range for shape {left_dim}×{right_dim}→{out_dim}"
                )));
            }
            let cur = t.get(i, j)[k].clone();
            t.set(i, j, k, cur + v);
        }
        Ok(t)
    }

    /// Builds from a function on basis pairs.
    pub fn from_fn(
        left_dim: usize,
        right_dim: usize,
        out_dim: usize,
        mut f: impl FnMut(usize, usize) -> Vec<F>,
    ) -> Self {
        let mut data = Vec::with_capacity(left_dim * right_dim * out_dim);
        for i in 0..left_dim {
            for j in 0..right_dim {
                let v = f(i, j);
                assert_eq!(v.len(), out_dim, "bilinear value has wrong length");
                data.extend(v);
            }
        }
        Bilinear {
            left_dim,
            right_dim,
            out_dim,
            data,
        }
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.left_dim, self.right_dim, self.out_dim)
    }

    /// The product of basis vectors `u_i · v_j`.
    pub fn get(&self, i: usize, j: usize) -> &[F] {
        let start = (i * self.right_dim + j) * self.out_dim;
        &self.data[start..start + self.out_dim]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: F) {
        let idx = (i * self.right_dim + j) * self.out_dim + k;
        self.data[idx] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    /// Nonzero structure constants in `(i, j, k)` order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, F)> {
        let mut out = Vec::new();
        for i in 0..self.left_dim {
            for j in 0..self.right_dim {
                for (k, v) in self.get(i, j).iter().enumerate() {
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &[F], y: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.left_dim, "left operand length");
        assert_eq!(y.len(), self.right_dim, "right operand length");
        let mut out = vec![F::zero(); self.out_dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.clone() * yj.clone();
                for (o, t) in out.iter_mut().zip(self.get(i, j)) {
                    if !t.is_zero() {
                        *o = o.clone() + c.clone() * t.clone();
                    }
                }
            }
        }
        out
    }

    /// The linear map `v ↦ x · v` as an `out_dim × right_dim` matrix.
    pub fn left_multiplication(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.right_dim)
            .map(|j| self.apply(x, &crate::linalg::unit(self.right_dim, j)))
            .collect();
        Matrix::from_columns(self.out_dim, &cols).expect("columns have out_dim entries")
    }

    /// The linear map `u ↦ u · y` as an `out_dim × left_dim` matrix.
    pub fn right_multiplication(&self, y: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.left_dim)
            .map(|i| self.apply(&crate::linalg::unit(self.left_dim, i), y))
            .collect();
        Matrix::from_columns(self.out_dim, &cols).expect("columns have out_dim entries")
    }

    /// `(u, v) ↦ post · (pre_l u · pre_r v)`: precompose both arguments with
    /// linear maps and postcompose the output.
    pub fn transform(&self, pre_l: &Matrix<F>, pre_r: &Matrix<F>, post: &Matrix<F>) -> Bilinear<F> {
        assert_eq!(pre_l.rows(), self.left_dim);
        assert_eq!(pre_r.rows(), self.right_dim);
        assert_eq!(post.cols(), self.out_dim);
        Bilinear::from_fn(pre_l.cols(), pre_r.cols(), post.rows(), |i, j| {
            post.apply(&self.apply(&pre_l.column(i), &pre_r.column(j)))
        })
    }
}
