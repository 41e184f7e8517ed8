//! Finite-dimensional dialgebras given by structure constants.

use crate::error::{Error, Result};
use crate::identity::{generate_mixed_identities, Context, Op, Sort};
use crate::linalg::{unit, Matrix, SubspaceBasis};
use crate::report::{AxiomReport, Violation};
use crate::scalar::Field;
use crate::tensor::Bilinear;

/// A vector space with two bilinear products `⊣` and `⊢`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dialgebra<F> {
    labels: Vec<String>,
    left: Bilinear<F>,
    right: Bilinear<F>,
}

impl<F: Field> Dialgebra<F> {
    /// Validates shapes only; use [`check_axioms`] for the axioms.
    pub fn new(labels: Vec<String>, left: Bilinear<F>, right: Bilinear<F>) -> Result<Self> {
        let n = labels.len();
        for t in [&left, &right] {
            if t.shape() != (n, n, n) {
                return Err(Error::DimensionMismatch {
                    context: "dialgebra structure tensor".into(),
                    expected: n,
                    found: t.out_dim(),
                });
            }
        }
        Ok(Dialgebra { labels, left, right })
    }

    /// Labels default to `e1, e2, …`.
    pub fn from_tensors(left: Bilinear<F>, right: Bilinear<F>) -> Result<Self> {
        let labels = default_labels(left.out_dim());
        Self::new(labels, left, right)
    }

    /// The dialgebra with both products zero.
    pub fn abelian(dim: usize) -> Self {
        Dialgebra {
            labels: default_labels(dim),
            left: Bilinear::zeros(dim, dim, dim),
            right: Bilinear::zeros(dim, dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn product(&self, op: Op) -> &Bilinear<F> {
        match op {
            Op::Left => &self.left,
            Op::Right => &self.right,
        }
    }

    pub fn mul(&self, op: Op, x: &[F], y: &[F]) -> Vec<F> {
        self.product(op).apply(x, y)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "basis labels".into(),
                expected: self.dim(),
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn is_abelian(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }

    /// Restriction to a subspace closed under both products, in the
    /// subspace's canonical basis.
    pub fn restrict(&self, s: &SubspaceBasis<F>) -> Result<Dialgebra<F>> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "subalgebra ambient".into(),
                expected: self.dim(),
                found: s.ambient_dim(),
            });
        }
        let n = s.dim();
        let mut tensors = Vec::new();
        for op in Op::BOTH {
            let mut t = Bilinear::zeros(n, n, n);
            for i in 0..n {
                for j in 0..n {
                    let p = self.mul(op, &s.vectors()[i], &s.vectors()[j]);
                    let c = s.coordinates(&p)?.ok_or_else(|| Error::Closure {
                        what: format!("product {op} of subspace basis vectors"),
                        witness: vec![i, j],
                    })?;
                    for (k, v) in c.into_iter().enumerate() {
                        t.set(i, j, k, v);
                    }
                }
            }
            tensors.push(t);
        }
        let right = tensors.pop().expect("two tensors");
        let left = tensors.pop().expect("two tensors");
        Dialgebra::from_tensors(left, right)
    }

    /// Is `m` (rows = target dim, cols = self.dim) compatible with both products?
    pub fn hom_report(&self, m: &Matrix<F>, target: &Dialgebra<F>, label: &str) -> AxiomReport {
        let mut report = AxiomReport::new();
        let n = self.dim();
        for op in Op::BOTH {
            for i in 0..n {
                for j in 0..n {
                    let lhs = m.apply(&self.mul(op, &unit(n, i), &unit(n, j)));
                    let rhs = target.mul(op, &m.column(i), &m.column(j));
                    report.check(label, &[i, j], &crate::linalg::sub_vec(&lhs, &rhs));
                }
            }
        }
        report
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// Evaluates `Di1`–`Di5` on every basis triple.
pub fn check_axioms<F: Field>(d: &Dialgebra<F>) -> AxiomReport {
    let mut ctx = Context::new();
    ctx.sort(Sort::L, d.dim())
        .product(Sort::L, Op::Left, Sort::L, &d.left, Sort::L)
        .product(Sort::L, Op::Right, Sort::L, &d.right, Sort::L);
    let templates = generate_mixed_identities(&[(Sort::L, 3)]).expect("three variables");
    let mut report = AxiomReport::new();
    ctx.check(&templates, &mut report).expect("all products are defined");
    report
}

/// Rows of the linear maps `x ↦ x ∗ e_j` and `x ↦ e_j ∗ x` for both products.
fn annihilating_constraints<F: Field>(d: &Dialgebra<F>) -> Vec<Matrix<F>> {
    let n = d.dim();
    let mut parts = Vec::new();
    for op in Op::BOTH {
        for j in 0..n {
            let e = unit(n, j);
            parts.push(d.product(op).right_multiplication(&e));
            parts.push(d.product(op).left_multiplication(&e));
        }
    }
    parts
}

/// `Ann(D) = {x : x ∗ y = y ∗ x = 0 for all y and both products}`.
pub fn annihilator<F: Field>(d: &Dialgebra<F>) -> SubspaceBasis<F> {
    Matrix::vstack(d.dim(), &annihilating_constraints(d)).nullspace()
}

/// Span of all products `e_i op e_j`.
pub fn product_span<F: Field>(d: &Dialgebra<F>, op: Op) -> SubspaceBasis<F> {
    let n = d.dim();
    let t = d.product(op);
    let vectors = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| t.get(i, j).to_vec())
        .collect();
    SubspaceBasis::span(n, vectors).expect("products have length dim")
}

/// Both `D ⊣ D` and `D ⊢ D` are the whole space.
pub fn is_perfect<F: Field>(d: &Dialgebra<F>) -> bool {
    product_span(d, Op::Left).is_full() && product_span(d, Op::Right).is_full()
}

/// Checks that `s` is a two-sided ideal for both products. Each violation is
/// labelled `Ideal(<op>,<side>)` and witnessed by `[subspace basis index, e_j]`.
pub fn is_ideal<F: Field>(d: &Dialgebra<F>, s: &SubspaceBasis<F>) -> Result<AxiomReport> {
    if s.ambient_dim() != d.dim() {
        return Err(Error::DimensionMismatch {
            context: "ideal ambient".into(),
            expected: d.dim(),
            found: s.ambient_dim(),
        });
    }
    let n = d.dim();
    let mut report = AxiomReport::new();
    for (i, v) in s.vectors().iter().enumerate() {
        for j in 0..n {
            let e = unit(n, j);
            for op in Op::BOTH {
                for (side, p) in [("right", d.mul(op, v, &e)), ("left", d.mul(op, &e, v))] {
                    if !s.contains(&p)? {
                        report.push(Violation::new(
                            format!("Ideal({},{side})", op.name()),
                            vec![i, j],
                            &p,
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The dialgebra with `⊣ = ⊢ =` the given associative product.
pub fn from_associative<F: Field>(tensor: Bilinear<F>) -> Result<Dialgebra<F>> {
    let n = tensor.out_dim();
    if tensor.shape() != (n, n, n) {
        return Err(Error::DimensionMismatch {
            context: "associative structure tensor".into(),
            expected: n,
            found: tensor.left_dim(),
        });
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = tensor.apply(tensor.get(i, j), &unit(n, k));
                let rhs = tensor.apply(&unit(n, i), tensor.get(j, k));
                if lhs != rhs {
                    return Err(Error::NotAssociative { witness: [i, j, k] });
                }
            }
        }
    }
    Dialgebra::from_tensors(tensor.clone(), tensor)
}
