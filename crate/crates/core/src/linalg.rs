//! Dense exact linear algebra: matrices, reduced row-echelon form, nullspaces
//! and canonical subspace bases.

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Dense row-major matrix. A matrix with `rows = m`, `cols = n` represents a
/// linear map from an `n`-dimensional space to an `m`-dimensional one acting
/// on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds a matrix from explicit rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix row".into(),
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    context: "matrix column".into(),
                    expected: rows,
                    found: col.len(),
                });
            }
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        Ok(m)
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix entries".into(),
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[F] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<F> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix product `self · rhs`. Panics on incompatible shapes.
    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c).clone() + a.clone() * b.clone();
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Matrix-vector product. Panics if `v.len() != cols`.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| dot(self.row(r), v))
            .collect()
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(cols: usize, parts: &[Matrix<F>]) -> Matrix<F> {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            rows += p.rows;
            data.extend(p.data.iter().cloned());
        }
        Matrix { rows, cols, data }
    }

    /// The unique reduced row-echelon form and its pivot columns (ascending).
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j).clone() * inv.clone();
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let pv = self.get(r, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j).clone() - f.clone() * pv.clone();
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of `{v : self · v = 0}`.
    pub fn nullspace(&self) -> SubspaceBasis<F> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let vectors: Vec<Vec<F>> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect();
        SubspaceBasis::span(self.cols, vectors).expect("nullspace vectors have ambient length")
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(F::is_zero)
}

pub fn sub_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn add_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

/// A subspace stored as the nonzero rows of a reduced row-echelon form, which
/// makes equality of subspaces structural equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis<F> {
    ambient_dim: usize,
    vectors: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> SubspaceBasis<F> {
    /// Canonical basis of the span of `vectors`.
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<F>>) -> Result<Self> {
        let m = Matrix::from_rows(ambient_dim, vectors)?;
        let (r, pivots) = m.rref();
        let vectors = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(SubspaceBasis {
            ambient_dim,
            vectors,
            pivots,
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: (0..ambient_dim).map(|i| unit(ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.vectors.len() == self.ambient_dim
    }

    pub fn vectors(&self) -> &[Vec<F>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is outside the span.
    ///
    /// Because the basis is in reduced row-echelon form, the candidate
    /// coordinates are simply the entries of `v` at the pivot columns.
    pub fn coordinates(&self, v: &[F]) -> Result<Option<Vec<F>>> {
        self.check_len(v.len())?;
        let coords: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let rebuilt = self.combine(&coords);
        Ok((rebuilt == v).then_some(coords))
    }

    /// Exact membership test.
    pub fn contains(&self, v: &[F]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// `Σ coords[i] · basis[i]`.
    pub fn combine(&self, coords: &[F]) -> Vec<F> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![F::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.vectors) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o = o.clone() + c.clone() * x.clone();
                }
            }
        }
        out
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis<F>) -> Result<bool> {
        self.check_len(other.ambient_dim)?;
        for v in &other.vectors {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Vectors `w` with `w · v = 0` for every `v` in this subspace.
    pub fn orthogonal_complement(&self) -> SubspaceBasis<F> {
        Matrix::from_rows(self.ambient_dim, self.vectors.clone())
            .expect("basis rows have ambient length")
            .nullspace()
    }

    /// Canonical basis of `self ∩ other`, computed as the common zero set of
    /// both orthogonal complements.
    pub fn intersect(&self, other: &SubspaceBasis<F>) -> Result<SubspaceBasis<F>> {
        self.check_len(other.ambient_dim)?;
        let mut constraints = self.orthogonal_complement().vectors;
        constraints.extend(other.orthogonal_complement().vectors);
        Ok(Matrix::from_rows(self.ambient_dim, constraints)?.nullspace())
    }

    pub fn sum(&self, other: &SubspaceBasis<F>) -> Result<SubspaceBasis<F>> {
        self.check_len(other.ambient_dim)?;
        let mut vs = self.vectors.clone();
        vs.extend(other.vectors.iter().cloned());
        SubspaceBasis::span(self.ambient_dim, vs)
    }

    /// Basis vectors as the columns of an `ambient_dim × dim` matrix.
    pub fn inclusion(&self) -> Matrix<F> {
        Matrix::from_columns(self.ambient_dim, &self.vectors).expect("basis vectors have ambient length")
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                context: "subspace ambient dimension".into(),
                expected: self.ambient_dim,
                found: len,
            });
        }
        Ok(())
    }
}

/// Exact membership of `v` in `span(s)`.
pub fn member<F: Field>(s: &SubspaceBasis<F>, v: &[F]) -> Result<bool> {
    s.contains(v)
}

/// Canonical basis of the intersection of two subspaces of the same space.
pub fn intersect<F: Field>(a: &SubspaceBasis<F>, b: &SubspaceBasis<F>) -> Result<SubspaceBasis<F>> {
    a.intersect(b)
}
