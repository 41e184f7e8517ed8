//! Small dialgebras and crossed modules used by tests, examples and the CLI.

use crate::dialgebra::Dialgebra;
use crate::scalar::Field;
use crate::tensor::Bilinear;

fn one<F: Field>() -> F {
    F::one()
}

/// The abelian dialgebra of dimension `n`.
pub fn abelian<F: Field>(n: usize) -> Dialgebra<F> {
    Dialgebra::abelian(n)
}

/// One-dimensional, `e ⊣ e = e ⊢ e = e`.
pub fn k1<F: Field>() -> Dialgebra<F> {
    let t = Bilinear::from_entries(1, 1, 1, vec![(0, 0, 0, one())]).expect("in range");
    Dialgebra::from_tensors(t.clone(), t).expect("square")
}

/// Two-dimensional, `x ⊣ y = ε(y) x` and `x ⊢ y = ε(x) y` with
/// `ε(e1) = 1`, `ε(e2) = 0`.
pub fn d2<F: Field>() -> Dialgebra<F> {
    let left = Bilinear::from_entries(2, 2, 2, vec![(0, 0, 0, one()), (1, 0, 1, one())]).expect("in range");
    let right = Bilinear::from_entries(2, 2, 2, vec![(0, 0, 0, one()), (0, 1, 1, one())]).expect("in range");
    Dialgebra::from_tensors(left, right).expect("square")
}

/// Dual numbers `k[ε]/(ε²)` with `⊣ = ⊢`: `e1` is the unit, `e2² = 0`.
pub fn dual_numbers<F: Field>() -> Dialgebra<F> {
    let t = Bilinear::from_entries(
        2,
        2,
        2,
        vec![(0, 0, 0, one()), (0, 1, 1, one()), (1, 0, 1, one())],
    )
    .expect("in range");
    Dialgebra::from_tensors(t.clone(), t).expect("square")
}

/// Direct product with componentwise products; basis of `a` first.
pub fn direct_sum<F: Field>(a: &Dialgebra<F>, b: &Dialgebra<F>) -> Dialgebra<F> {
    let (n, m) = (a.dim(), b.dim());
    let build = |op| {
        let mut entries = Vec::new();
        for (i, j, k, v) in a.product(op).entries() {
            entries.push((i, j, k, v));
        }
        for (i, j, k, v) in b.product(op).entries() {
            entries.push((n + i, n + j, n + k, v));
        }
        Bilinear::from_entries(n + m, n + m, n + m, entries).expect("in range")
    };
    Dialgebra::from_tensors(build(crate::identity::Op::Left), build(crate::identity::Op::Right)).expect("square")
}
