//! Independent oracles. Everything here evaluates the defining equations
//! element by element; nothing goes through the identity generator, the
//! template compiler or the tetra module.

#![allow(dead_code)]

pub mod checks;
pub mod strategies;

use dias::linalg::{sub_vec, unit};
use dias::{Action, CrossedModule, Dialgebra, Field, Matrix, Op, Rational, SubspaceBasis};

pub const L: Op = Op::Left;
pub const R: Op = Op::Right;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum S {
    L,
    D,
}

/// An element tagged with the algebra it lives in.
#[derive(Clone, Debug)]
pub struct E<F> {
    pub s: S,
    pub v: Vec<F>,
}

pub fn e<F: Field>(s: S, v: Vec<F>) -> E<F> {
    E { s, v }
}

/// `L`, `D` and an action of `D` on `L`, multiplied by sort.
pub struct World<'a, F> {
    pub l: &'a Dialgebra<F>,
    pub d: &'a Dialgebra<F>,
    pub act: &'a Action<F>,
}

impl<'a, F: Field> World<'a, F> {
    pub fn of(xm: &'a CrossedModule<F>) -> Self {
        World {
            l: &xm.l,
            d: &xm.d,
            act: &xm.action,
        }
    }

    pub fn mul(&self, op: Op, a: &E<F>, b: &E<F>) -> E<F> {
        let left = op == L;
        match (a.s, b.s) {
            (S::L, S::L) => e(S::L, self.l.mul(op, &a.v, &b.v)),
            (S::D, S::D) => e(S::D, self.d.mul(op, &a.v, &b.v)),
            (S::D, S::L) => e(S::L, if left { &self.act.dl } else { &self.act.dl_r }.apply(&a.v, &b.v)),
            (S::L, S::D) => e(S::L, if left { &self.act.ld } else { &self.act.ld_r }.apply(&a.v, &b.v)),
        }
    }

    pub fn dim(&self, s: S) -> usize {
        match s {
            S::L => self.l.dim(),
            S::D => self.d.dim(),
        }
    }

    pub fn basis(&self, s: S) -> Vec<E<F>> {
        let n = self.dim(s);
        (0..n).map(|i| e(s, unit(n, i))).collect()
    }
}

fn diff<F: Field>(a: &E<F>, b: &E<F>) -> Vec<F> {
    assert_eq!(a.s, b.s, "sides of an identity live in different algebras");
    sub_vec(&a.v, &b.v)
}

/// The five dialgebra axioms as `lhs - rhs` on `(x, y, z)`.
pub fn axiom_differences<F: Field>(w: &World<'_, F>, x: &E<F>, y: &E<F>, z: &E<F>) -> [Vec<F>; 5] {
    let m = |op, a: &E<F>, b: &E<F>| w.mul(op, a, b);
    [
        diff(&m(L, &m(L, x, y), z), &m(L, x, &m(R, y, z))),
        diff(&m(L, &m(L, x, y), z), &m(L, x, &m(L, y, z))),
        diff(&m(L, &m(R, x, y), z), &m(R, x, &m(L, y, z))),
        diff(&m(R, &m(L, x, y), z), &m(R, x, &m(R, y, z))),
        diff(&m(R, &m(R, x, y), z), &m(R, x, &m(R, y, z))),
    ]
}

fn is_zero<F: Field>(v: &[F]) -> bool {
    v.iter().all(F::is_zero)
}

/// `(axiom, i, j, k)` for every failing Di axiom on basis triples of `d`.
pub fn axiom_failures<F: Field>(d: &Dialgebra<F>) -> Vec<(String, [usize; 3])> {
    let act = Action::trivial(0, 0);
    let w = World { l: d, d, act: &act };
    let b = w.basis(S::L);
    let mut out = Vec::new();
    for (i, x) in b.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            for (k, z) in b.iter().enumerate() {
                for (n, dv) in axiom_differences(&w, x, y, z).iter().enumerate() {
                    if !is_zero(dv) {
                        out.push((format!("Di{}", n + 1), [i, j, k]));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Number of failed equations among: the five axioms on all eight sort
/// patterns (both algebras and the 30 mixed action identities), `μ` a
/// homomorphism, XDi1 and XDi2.
pub fn xmod_failures<F: Field>(xm: &CrossedModule<F>) -> usize {
    let w = World::of(xm);
    let mu = |a: &E<F>| e(S::D, xm.mu.apply(&a.v));
    let mut bad = 0;
    let mut count = |v: &[F]| bad += usize::from(!is_zero(v));
    let (bl, bd) = (w.basis(S::L), w.basis(S::D));
    let sorts = [S::L, S::D];
    for s1 in sorts {
        for s2 in sorts {
            for s3 in sorts {
                for x in w.basis(s1) {
                    for y in w.basis(s2) {
                        for z in w.basis(s3) {
                            for dv in axiom_differences(&w, &x, &y, &z) {
                                count(&dv);
                            }
                        }
                    }
                }
            }
        }
    }
    for op in [L, R] {
        for a in &bl {
            for b in &bl {
                count(&diff(&mu(&w.mul(op, a, b)), &w.mul(op, &mu(a), &mu(b))));
                count(&diff(&w.mul(op, &mu(a), b), &w.mul(op, a, b)));
                count(&diff(&w.mul(op, a, &mu(b)), &w.mul(op, a, b)));
            }
            for x in &bd {
                count(&diff(&mu(&w.mul(op, x, a)), &w.mul(op, x, &mu(a))));
                count(&diff(&mu(&w.mul(op, a, x)), &w.mul(op, &mu(a), x)));
            }
        }
    }
    bad
}

/// A quadruple `(l⊣, r⊣, l⊢, r⊢)` of matrices.
pub type Quad<F> = [Matrix<F>; 4];

pub fn quad_from_flat<F: Field>(rows: usize, cols: usize, v: &[F]) -> Quad<F> {
    let k = rows * cols;
    assert_eq!(v.len(), 4 * k);
    std::array::from_fn(|i| Matrix::from_flat(rows, cols, v[i * k..(i + 1) * k].to_vec()).unwrap())
}

pub fn quad_flat<F: Field>(q: &Quad<F>) -> Vec<F> {
    q.iter().flat_map(|m| m.as_slice().to_vec()).collect()
}

/// Octuple: the quadruple on `L` then the quadruple on `D`.
pub fn oct_from_flat<F: Field>(nl: usize, nd: usize, v: &[F]) -> (Quad<F>, Quad<F>) {
    let k = 4 * nl * nl;
    (quad_from_flat(nl, nl, &v[..k]), quad_from_flat(nd, nd, &v[k..]))
}

pub fn oct_flat<F: Field>(o: &(Quad<F>, Quad<F>)) -> Vec<F> {
    let mut v = quad_flat(&o.0);
    v.extend(quad_flat(&o.1));
    v
}

/// The fifteen defining equations of a tetramultiplier on the pair `(a, b)`:
/// `lm(i, u)` applies the `i`-th left-type map (0 = `l⊣`, 1 = `l⊢`) and
/// `rm(i, u)` the right-type one (0 = `r⊣`, 1 = `r⊢`), each choosing its
/// matrix from the algebra `u` lives in.
pub fn fifteen<F: Field>(
    w: &World<'_, F>,
    lm: &dyn Fn(usize, &E<F>) -> E<F>,
    rm: &dyn Fn(usize, &E<F>) -> E<F>,
    a: &E<F>,
    b: &E<F>,
) -> Vec<Vec<F>> {
    let m = |op, x: &E<F>, y: &E<F>| w.mul(op, x, y);
    let (ld, lv) = (|u: &E<F>| lm(0, u), |u: &E<F>| lm(1, u));
    let (rd, rv) = (|u: &E<F>| rm(0, u), |u: &E<F>| rm(1, u));
    vec![
        diff(&ld(&m(R, a, b)), &m(L, &ld(a), b)),
        diff(&ld(&m(L, a, b)), &m(L, &ld(a), b)),
        diff(&lv(&m(L, a, b)), &m(L, &lv(a), b)),
        diff(&lv(&m(R, a, b)), &m(R, &ld(a), b)),
        diff(&lv(&m(R, a, b)), &m(R, &lv(a), b)),
        diff(&m(L, &rd(a), b), &m(L, a, &lv(b))),
        diff(&m(L, &rd(a), b), &m(L, a, &ld(b))),
        diff(&m(L, &rv(a), b), &m(R, a, &ld(b))),
        diff(&m(R, &rd(a), b), &m(R, a, &lv(b))),
        diff(&m(R, &rv(a), b), &m(R, a, &lv(b))),
        diff(&rd(&m(L, a, b)), &m(L, a, &rv(b))),
        diff(&rd(&m(L, a, b)), &m(L, a, &rd(b))),
        diff(&rd(&m(R, a, b)), &m(R, a, &rd(b))),
        diff(&rv(&m(L, a, b)), &m(R, a, &rv(b))),
        diff(&rv(&m(R, a, b)), &m(R, a, &rv(b))),
    ]
}

fn apply<F: Field>(m: &Matrix<F>, s: S, u: &E<F>) -> E<F> {
    e(s, m.apply(&u.v))
}

/// All defining equations of a quadruple of self-maps of `l`.
pub fn single_equations<F: Field>(l: &Dialgebra<F>, q: &Quad<F>) -> Vec<F> {
    let act = Action::trivial(0, 0);
    let w = World { l, d: l, act: &act };
    let lm = |i: usize, u: &E<F>| apply(&q[2 * i], S::L, u);
    let rm = |i: usize, u: &E<F>| apply(&q[2 * i + 1], S::L, u);
    let mut out = Vec::new();
    for a in w.basis(S::L) {
        for b in w.basis(S::L) {
            out.extend(fifteen(&w, &lm, &rm, &a, &b).into_iter().flatten());
        }
    }
    out
}

/// All defining equations of a quadruple of maps `D → L`.
pub fn relative_equations<F: Field>(xm: &CrossedModule<F>, q: &Quad<F>) -> Vec<F> {
    let w = World::of(xm);
    let lm = |i: usize, u: &E<F>| apply(&q[2 * i], S::L, u);
    let rm = |i: usize, u: &E<F>| apply(&q[2 * i + 1], S::L, u);
    let mut out = Vec::new();
    for x in w.basis(S::D) {
        for y in w.basis(S::D) {
            out.extend(fifteen(&w, &lm, &rm, &x, &y).into_iter().flatten());
        }
    }
    out
}

/// All defining equations of an octuple: fifteen on each of the four sort
/// pairs, with `(λ, ρ)` on elements of `L` and `(κ, ω)` on elements of `D`,
/// plus `μλ = κμ` and its three siblings.
pub fn octuple_equations<F: Field>(xm: &CrossedModule<F>, o: &(Quad<F>, Quad<F>)) -> Vec<F> {
    let w = World::of(xm);
    let (on_l, on_d) = o;
    let pick = |i: usize, u: &E<F>| match u.s {
        S::L => apply(&on_l[i], S::L, u),
        S::D => apply(&on_d[i], S::D, u),
    };
    let lm = |i: usize, u: &E<F>| pick(2 * i, u);
    let rm = |i: usize, u: &E<F>| pick(2 * i + 1, u);
    let mut out = Vec::new();
    for s1 in [S::L, S::D] {
        for s2 in [S::L, S::D] {
            for a in w.basis(s1) {
                for b in w.basis(s2) {
                    out.extend(fifteen(&w, &lm, &rm, &a, &b).into_iter().flatten());
                }
            }
        }
    }
    for i in 0..4 {
        out.extend(xm.mu.mul(&on_l[i]).sub(&on_d[i].mul(&xm.mu)).into_flat());
    }
    out
}

/// Nullspace of a linear system given as a function of the unknowns.
pub fn solve<F: Field>(unknowns: usize, equations: impl Fn(&[F]) -> Vec<F>) -> SubspaceBasis<F> {
    let cols: Vec<Vec<F>> = (0..unknowns).map(|j| equations(&unit(unknowns, j))).collect();
    let rows = cols.first().map_or(0, Vec::len);
    if rows == 0 {
        return SubspaceBasis::full(unknowns);
    }
    Matrix::from_columns(rows, &cols).unwrap().nullspace()
}

pub fn oracle_tetra_l<F: Field>(l: &Dialgebra<F>) -> SubspaceBasis<F> {
    let n = l.dim();
    solve(4 * n * n, |v| single_equations(l, &quad_from_flat(n, n, v)))
}

pub fn oracle_tetra_dl<F: Field>(xm: &CrossedModule<F>) -> SubspaceBasis<F> {
    let (nl, nd) = (xm.l.dim(), xm.d.dim());
    solve(4 * nl * nd, |v| relative_equations(xm, &quad_from_flat(nl, nd, v)))
}

pub fn oracle_tetra_xmod<F: Field>(xm: &CrossedModule<F>) -> SubspaceBasis<F> {
    let (nl, nd) = (xm.l.dim(), xm.d.dim());
    solve(4 * (nl * nl + nd * nd), |v| octuple_equations(xm, &oct_from_flat(nl, nd, v)))
}

/// `l(ab) = l(a)b`, `r(ab) = a r(b)`, `r(a)b = a l(b)` for an associative
/// product, unknowns `(l, r)` row-major.
pub fn oracle_bimultipliers<F: Field>(d: &Dialgebra<F>) -> SubspaceBasis<F> {
    let n = d.dim();
    let k = n * n;
    solve(2 * k, |v| {
        let l = Matrix::from_flat(n, n, v[..k].to_vec()).unwrap();
        let r = Matrix::from_flat(n, n, v[k..].to_vec()).unwrap();
        let m = |x: &[F], y: &[F]| d.mul(L, x, y);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (unit(n, i), unit(n, j));
                out.extend(sub_vec(&l.apply(&m(&a, &b)), &m(&l.apply(&a), &b)));
                out.extend(sub_vec(&r.apply(&m(&a, &b)), &m(&a, &r.apply(&b))));
                out.extend(sub_vec(&m(&r.apply(&a), &b), &m(&a, &l.apply(&b))));
            }
        }
        out
    })
}

fn mm<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    a.mul(b)
}

/// Quadruple products with an optional middle map.
pub fn quad_product<F: Field>(t1: &Quad<F>, t2: &Quad<F>, op: Op, mid: Option<&Matrix<F>>) -> Quad<F> {
    let c = |a: &Matrix<F>, b: &Matrix<F>| match mid {
        Some(m) => mm(&mm(a, m), b),
        None => mm(a, b),
    };
    let [l1d, r1d, l1v, r1v] = t1;
    let [l2d, r2d, l2v, r2v] = t2;
    if op == L {
        [c(l1d, l2v), c(r2d, r1d), c(l1v, l2v), c(r2d, r1v)]
    } else {
        [c(l1v, l2d), c(r2d, r1d), c(l1v, l2v), c(r2v, r1d)]
    }
}

pub fn oct_product<F: Field>(o1: &(Quad<F>, Quad<F>), o2: &(Quad<F>, Quad<F>), op: Op) -> (Quad<F>, Quad<F>) {
    (quad_product(&o1.0, &o2.0, op, None), quad_product(&o1.1, &o2.1, op, None))
}

pub fn delta<F: Field>(mu: &Matrix<F>, t: &Quad<F>) -> (Quad<F>, Quad<F>) {
    (
        std::array::from_fn(|i| mm(&t[i], mu)),
        std::array::from_fn(|i| mm(mu, &t[i])),
    )
}

/// `o ∗ t` when `left`, else `t ∗ o`, written out map by map.
pub fn oct_on_quad<F: Field>(o: &(Quad<F>, Quad<F>), t: &Quad<F>, op: Op, left: bool) -> Quad<F> {
    let ([lam_d, rho_d, lam_v, rho_v], [ka_d, om_d, ka_v, om_v]) = (&o.0, &o.1);
    let [l_d, r_d, l_v, r_v] = t;
    match (left, op) {
        (true, Op::Left) => [mm(lam_d, l_v), mm(r_d, om_d), mm(lam_v, l_v), mm(r_d, om_v)],
        (true, Op::Right) => [mm(lam_v, l_d), mm(r_d, om_d), mm(lam_v, l_v), mm(r_v, om_d)],
        (false, Op::Left) => [mm(l_d, ka_v), mm(rho_d, r_d), mm(l_v, ka_v), mm(rho_d, r_v)],
        (false, Op::Right) => [mm(l_v, ka_d), mm(rho_d, r_d), mm(l_v, ka_v), mm(rho_v, r_d)],
    }
}

/// `(a, m)` products in `L ⋊ M` written from the definition, `M` acting
/// through `η` and the action of `P`.
pub fn semidirect_mul<F: Field>(
    l: &Dialgebra<F>,
    m: &Dialgebra<F>,
    eta: &Matrix<F>,
    p_on_l: &Action<F>,
    op: Op,
    u: &[F],
    v: &[F],
) -> Vec<F> {
    let nl = l.dim();
    let (a1, m1) = u.split_at(nl);
    let (a2, m2) = v.split_at(nl);
    let (pl, lp) = if op == L { (&p_on_l.dl, &p_on_l.ld) } else { (&p_on_l.dl_r, &p_on_l.ld_r) };
    let mut first = l.mul(op, a1, a2);
    for (i, x) in pl.apply(&eta.apply(m1), a2).into_iter().enumerate() {
        first[i] = first[i].clone() + x;
    }
    for (i, x) in lp.apply(a1, &eta.apply(m2)).into_iter().enumerate() {
        first[i] = first[i].clone() + x;
    }
    first.extend(m.mul(op, m1, m2));
    first
}

/// Every quadruple over `Z/3` with one-dimensional maps, by enumeration.
pub fn brute_force_tetra_k1() -> Vec<[i64; 4]> {
    use dias::Zp;
    let k1 = dias::fixtures::k1::<Zp<3>>();
    let mut out = Vec::new();
    for code in 0..81i64 {
        let digits = [code % 3, code / 3 % 3, code / 9 % 3, code / 27];
        let q: Quad<Zp<3>> = std::array::from_fn(|i| Matrix::from_flat(1, 1, vec![Zp::from_i64(digits[i])]).unwrap());
        if single_equations(&k1, &q).iter().all(|x| x.is_zero()) {
            out.push(digits);
        }
    }
    out
}

pub fn q(s: &str) -> Rational {
    dias::scalar::q(s)
}

pub fn span<F: Field>(n: usize, vs: Vec<Vec<F>>) -> SubspaceBasis<F> {
    SubspaceBasis::span(n, vs).unwrap()
}

/// The fixture crossed modules used across suites.
pub fn fixture_xmods() -> Vec<(&'static str, CrossedModule<Rational>)> {
    use dias::fixtures::{abelian, d2, dual_numbers, k1};
    let a2 = abelian::<Rational>(2);
    let d = d2::<Rational>();
    let e2 = span(2, vec![vec![q("0"), q("1")]]);
    vec![
        ("(A2,A2,0)", CrossedModule::zero_map(&a2, &a2, Action::trivial(2, 2)).unwrap()),
        ("(span(e2),D2,i)", CrossedModule::from_ideal(&d, &e2).unwrap()),
        ("(D2,D2,id)", CrossedModule::identity(&d)),
        ("(0,D2,0)", CrossedModule::zero_over(&d)),
        ("(K1,K1,id)", CrossedModule::identity(&k1())),
        ("(dual,dual,id)", CrossedModule::identity(&dual_numbers())),
    ]
}
