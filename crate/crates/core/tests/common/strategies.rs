//! Proptest strategies: sparse random structure tensors kept only when the
//! oracle finds no axiom failure.

use dias::{Bilinear, Dialgebra, Field, Zp};
use proptest::prelude::*;

use super::axiom_failures;

pub type F3 = Zp<3>;

fn tensor(n: usize, entries: &[Option<u8>]) -> Bilinear<F3> {
    let mut out = Vec::new();
    for (idx, v) in entries.iter().enumerate() {
        if let Some(v) = v {
            out.push((idx / (n * n), idx / n % n, idx % n, F3::from_i64(*v as i64)));
        }
    }
    Bilinear::from_entries(n, n, n, out).unwrap()
}

/// A pair of structure tensors on `1..=max_dim` generators, not filtered.
pub fn candidate(max_dim: usize) -> impl Strategy<Value = Dialgebra<F3>> {
    (1..=max_dim, prop::sample::select(vec![0.15, 0.3, 0.5])).prop_flat_map(|(n, density)| {
        let cells = n * n * n;
        (
            prop::collection::vec(prop::option::weighted(density, 1u8..3), cells),
            prop::collection::vec(prop::option::weighted(density, 1u8..3), cells),
        )
            .prop_map(move |(l, r)| Dialgebra::from_tensors(tensor(n, &l), tensor(n, &r)).unwrap())
    })
}

/// Random dialgebras over `Z/3`.
pub fn dialgebra(max_dim: usize) -> impl Strategy<Value = Dialgebra<F3>> {
    candidate(max_dim).prop_filter("dialgebra axioms", |d| axiom_failures(d).is_empty())
}

/// A single random tensor, for the associative constructor.
pub fn square_tensor(max_dim: usize) -> impl Strategy<Value = Bilinear<F3>> {
    (1..=max_dim).prop_flat_map(|n| {
        prop::collection::vec(prop::option::weighted(0.3, 1u8..3), n * n * n).prop_map(move |e| tensor(n, &e))
    })
}
