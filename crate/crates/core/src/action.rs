//! Actions of one dialgebra on another, semidirect products and crossed modules.

use crate::dialgebra::{check_axioms, Dialgebra};
use crate::error::{Error, Result};
use crate::identity::{generate_mixed_identities, Context, Op, Sort};
use crate::linalg::{sub_vec, unit, Matrix, SubspaceBasis};
use crate::report::AxiomReport;
use crate::scalar::Field;
use crate::tensor::Bilinear;

/// An action of an `actor_dim`-dimensional dialgebra on a
/// `module_dim`-dimensional one: `x ∗ a` and `a ∗ x` for both products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action<F> {
    /// `actor ⊣ module`
    pub dl: Bilinear<F>,
    /// `module ⊣ actor`
    pub ld: Bilinear<F>,
    /// `actor ⊢ module`
    pub dl_r: Bilinear<F>,
    /// `module ⊢ actor`
    pub ld_r: Bilinear<F>,
}

impl<F: Field> Action<F> {
    pub fn new(dl: Bilinear<F>, ld: Bilinear<F>, dl_r: Bilinear<F>, ld_r: Bilinear<F>) -> Result<Self> {
        let (d, l) = (dl.left_dim(), dl.right_dim());
        let expected = [(d, l, l), (l, d, l), (d, l, l), (l, d, l)];
        for (name, t, shape) in [("dl", &dl, expected[0]), ("ld", &ld, expected[1]), ("dl_r", &dl_r, expected[2]), ("ld_r", &ld_r, expected[3])] {
            if t.shape() != shape {
                return Err(Error::Input(format!(
                    "action tensor {name} has shape {:?}, expected {:?}",
                    t.shape(),
                    shape
                )));
            }
        }
        Ok(Action { dl, ld, dl_r, ld_r })
    }

    /// All four maps zero.
    pub fn trivial(actor_dim: usize, module_dim: usize) -> Self {
        let (d, l) = (actor_dim, module_dim);
        Action {
            dl: Bilinear::zeros(d, l, l),
            ld: Bilinear::zeros(l, d, l),
            dl_r: Bilinear::zeros(d, l, l),
            ld_r: Bilinear::zeros(l, d, l),
        }
    }

    /// A dialgebra acting on itself by its products.
    pub fn by_products(d: &Dialgebra<F>) -> Self {
        Action {
            dl: d.product(Op::Left).clone(),
            ld: d.product(Op::Left).clone(),
            dl_r: d.product(Op::Right).clone(),
            ld_r: d.product(Op::Right).clone(),
        }
    }

    /// `d` acting on a subspace `s` by its products, written in the canonical
    /// basis of `s`. Fails if `s` is not closed under multiplication by `d`.
    pub fn on_ideal(d: &Dialgebra<F>, s: &SubspaceBasis<F>) -> Result<Self> {
        let (n, k) = (d.dim(), s.dim());
        let mut tensors = Vec::new();
        for op in Op::BOTH {
            let mut dl = Bilinear::zeros(n, k, k);
            let mut ld = Bilinear::zeros(k, n, k);
            for i in 0..n {
                let x = unit(n, i);
                for (j, v) in s.vectors().iter().enumerate() {
                    let coords = |p: Vec<F>, w: Vec<usize>| {
                        s.coordinates(&p)?.ok_or_else(|| Error::Closure {
                            what: format!("product {op} with the subspace"),
                            witness: w,
                        })
                    };
                    for (c, val) in coords(d.mul(op, &x, v), vec![i, j])?.into_iter().enumerate() {
                        dl.set(i, j, c, val);
                    }
                    for (c, val) in coords(d.mul(op, v, &x), vec![j, i])?.into_iter().enumerate() {
                        ld.set(j, i, c, val);
                    }
                }
            }
            tensors.push((dl, ld));
        }
        let (dl_r, ld_r) = tensors.pop().expect("two products");
        let (dl, ld) = tensors.pop().expect("two products");
        Ok(Action { dl, ld, dl_r, ld_r })
    }

    pub fn actor_dim(&self) -> usize {
        self.dl.left_dim()
    }

    pub fn module_dim(&self) -> usize {
        self.dl.right_dim()
    }

    /// The tensor of `actor op module`.
    pub fn acting_left(&self, op: Op) -> &Bilinear<F> {
        match op {
            Op::Left => &self.dl,
            Op::Right => &self.dl_r,
        }
    }

    /// The tensor of `module op actor`.
    pub fn acting_right(&self, op: Op) -> &Bilinear<F> {
        match op {
            Op::Left => &self.ld,
            Op::Right => &self.ld_r,
        }
    }

    pub fn is_trivial(&self) -> bool {
        [&self.dl, &self.ld, &self.dl_r, &self.ld_r].iter().all(|t| t.is_zero())
    }
}

fn check_dims<F: Field>(d: &Dialgebra<F>, l: &Dialgebra<F>, a: &Action<F>) -> Result<()> {
    if a.actor_dim() != d.dim() || a.module_dim() != l.dim() {
        return Err(Error::Input(format!(
            "action of a {}-dim on a {}-dim dialgebra used between dims {} and {}",
            a.actor_dim(),
            a.module_dim(),
            d.dim(),
            l.dim()
        )));
    }
    Ok(())
}

/// Registers the products of `actor` and `module` and the action between them.
pub(crate) fn register<'a, F: Field>(
    ctx: &mut Context<'a, F>,
    actor: (Sort, &'a Dialgebra<F>),
    module: (Sort, &'a Dialgebra<F>),
    a: &'a Action<F>,
) {
    let (ds, d) = actor;
    let (ls, l) = module;
    ctx.sort(ds, d.dim()).sort(ls, l.dim());
    for op in Op::BOTH {
        ctx.product(ds, op, ds, d.product(op), ds)
            .product(ls, op, ls, l.product(op), ls)
            .product(ds, op, ls, a.acting_left(op), ls)
            .product(ls, op, ds, a.acting_right(op), ls);
    }
}

/// The 30 mixed instances of the axioms with one variable in the actor and
/// two in the module, or two in the actor and one in the module, labelled
/// with the given sort names.
pub fn check_action_sorted<F: Field>(
    d: &Dialgebra<F>,
    l: &Dialgebra<F>,
    a: &Action<F>,
    actor: Sort,
    module: Sort,
) -> Result<AxiomReport> {
    check_dims(d, l, a)?;
    let mut ctx = Context::new();
    register(&mut ctx, (actor, d), (module, l), a);
    let mut templates = generate_mixed_identities(&[(actor, 1), (module, 2)])?;
    templates.extend(generate_mixed_identities(&[(module, 1), (actor, 2)])?);
    let mut report = AxiomReport::new();
    ctx.check(&templates, &mut report)?;
    Ok(report)
}

/// Checks that `a` is an action of `d` on `l`.
pub fn check_action<F: Field>(d: &Dialgebra<F>, l: &Dialgebra<F>, a: &Action<F>) -> Result<AxiomReport> {
    check_action_sorted(d, l, a, Sort::D, Sort::L)
}

/// `L ⋊ D` with `(a₁, x₁) ∗ (a₂, x₂) = (a₁∗a₂ + x₁∗a₂ + a₁∗x₂, x₁∗x₂)`;
/// the basis of `L` comes first.
pub fn semidirect_dialgebra<F: Field>(l: &Dialgebra<F>, d: &Dialgebra<F>, a: &Action<F>) -> Result<Dialgebra<F>> {
    let report = check_action(d, l, a)?;
    if !report.is_empty() {
        return Err(Error::ActionCheck(report));
    }
    Ok(semidirect_unchecked(l, d, a))
}

pub(crate) fn semidirect_unchecked<F: Field>(l: &Dialgebra<F>, d: &Dialgebra<F>, a: &Action<F>) -> Dialgebra<F> {
    let (n, m) = (l.dim(), d.dim());
    let build = |op: Op| {
        let mut e = Vec::new();
        for (i, j, k, v) in l.product(op).entries() {
            e.push((i, j, k, v));
        }
        for (i, j, k, v) in a.acting_left(op).entries() {
            e.push((n + i, j, k, v));
        }
        for (i, j, k, v) in a.acting_right(op).entries() {
            e.push((i, n + j, k, v));
        }
        for (i, j, k, v) in d.product(op).entries() {
            e.push((n + i, n + j, n + k, v));
        }
        Bilinear::from_entries(n + m, n + m, n + m, e).expect("indices in range")
    };
    let mut labels: Vec<String> = l.labels().iter().map(|s| format!("{s}@L")).collect();
    labels.extend(d.labels().iter().map(|s| format!("{s}@D")));
    Dialgebra::new(labels, build(Op::Left), build(Op::Right)).expect("square tensors")
}

/// A crossed module `(L, D, μ)`: a homomorphism `μ: L → D` (a `d.dim × l.dim`
/// matrix) together with an action of `D` on `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule<F> {
    pub l: Dialgebra<F>,
    pub d: Dialgebra<F>,
    pub mu: Matrix<F>,
    pub action: Action<F>,
}

impl<F: Field> CrossedModule<F> {
    /// Validates shapes only; see [`check_crossed_module`].
    pub fn new(l: Dialgebra<F>, d: Dialgebra<F>, mu: Matrix<F>, action: Action<F>) -> Result<Self> {
        if mu.rows() != d.dim() || mu.cols() != l.dim() {
            return Err(Error::Input(format!(
                "structure map is {}×{}, expected {}×{}",
                mu.rows(),
                mu.cols(),
                d.dim(),
                l.dim()
            )));
        }
        check_dims(&d, &l, &action)?;
        Ok(CrossedModule { l, d, mu, action })
    }

    /// `(D, D, id)` with `D` acting on itself by its products.
    pub fn identity(d: &Dialgebra<F>) -> Self {
        CrossedModule {
            l: d.clone(),
            d: d.clone(),
            mu: Matrix::identity(d.dim()),
            action: Action::by_products(d),
        }
    }

    /// `(I, D, ι)` for an ideal `I`, acting by the products of `D`.
    pub fn from_ideal(d: &Dialgebra<F>, ideal: &SubspaceBasis<F>) -> Result<Self> {
        let l = d.restrict(ideal)?;
        let action = Action::on_ideal(d, ideal)?;
        Ok(CrossedModule {
            l,
            d: d.clone(),
            mu: ideal.inclusion(),
            action,
        })
    }

    /// `(L, D, 0)` with the given action.
    pub fn zero_map(l: &Dialgebra<F>, d: &Dialgebra<F>, action: Action<F>) -> Result<Self> {
        CrossedModule::new(l.clone(), d.clone(), Matrix::zeros(d.dim(), l.dim()), action)
    }

    /// `(0, D, 0)`.
    pub fn zero_over(d: &Dialgebra<F>) -> Self {
        CrossedModule {
            l: Dialgebra::abelian(0),
            d: d.clone(),
            mu: Matrix::zeros(d.dim(), 0),
            action: Action::trivial(d.dim(), 0),
        }
    }

    /// `(0, 0, 0)`.
    pub fn zero() -> Self {
        CrossedModule::zero_over(&Dialgebra::abelian(0))
    }
}

/// Both products of `l` and `d` and `μ`-linearity of every basis pair.
pub(crate) fn hom_report<F: Field>(m: &Matrix<F>, src: &Dialgebra<F>, tgt: &Dialgebra<F>, label: &str) -> AxiomReport {
    src.hom_report(m, tgt, label)
}

/// Checks `μ` is a homomorphism, the action axioms, equivariance (`XDi1`)
/// and the Peiffer identity (`XDi2`).
pub fn check_crossed_module<F: Field>(xm: &CrossedModule<F>) -> Result<AxiomReport> {
    let (l, d, mu, a) = (&xm.l, &xm.d, &xm.mu, &xm.action);
    let mut report = hom_report(mu, l, d, "Hom");
    report.extend(check_action(d, l, a)?);
    let (n, m) = (l.dim(), d.dim());
    for op in Op::BOTH {
        for x in 0..m {
            for i in 0..n {
                let (ex, ea) = (unit(m, x), unit(n, i));
                // μ(x ∗ a) = x ∗ μ(a) and μ(a ∗ x) = μ(a) ∗ x
                let lhs = mu.apply(&a.acting_left(op).apply(&ex, &ea));
                report.check("XDi1", &[x, i], &sub_vec(&lhs, &d.mul(op, &ex, &mu.column(i))));
                let lhs = mu.apply(&a.acting_right(op).apply(&ea, &ex));
                report.check("XDi1", &[i, x], &sub_vec(&lhs, &d.mul(op, &mu.column(i), &ex)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                // μ(a₁) ∗ a₂ = a₁ ∗ a₂ = a₁ ∗ μ(a₂)
                let (a1, a2) = (unit(n, i), unit(n, j));
                let mid = l.mul(op, &a1, &a2);
                let left = a.acting_left(op).apply(&mu.column(i), &a2);
                let right = a.acting_right(op).apply(&a1, &mu.column(j));
                report.check("XDi2", &[i, j], &sub_vec(&left, &mid));
                report.check("XDi2", &[i, j], &sub_vec(&mid, &right));
            }
        }
    }
    Ok(report)
}

/// Checks that `(φ, ψ)` is a morphism of crossed modules `src → tgt`, where
/// `φ: src.l → tgt.l` and `ψ: src.d → tgt.d`.
pub fn check_xmod_hom<F: Field>(
    phi: &Matrix<F>,
    psi: &Matrix<F>,
    src: &CrossedModule<F>,
    tgt: &CrossedModule<F>,
) -> Result<AxiomReport> {
    let shape_ok = phi.rows() == tgt.l.dim()
        && phi.cols() == src.l.dim()
        && psi.rows() == tgt.d.dim()
        && psi.cols() == src.d.dim();
    if !shape_ok {
        return Err(Error::Input(format!(
            "morphism shapes {}×{} and {}×{} do not fit {}→{} and {}→{}",
            phi.rows(),
            phi.cols(),
            psi.rows(),
            psi.cols(),
            src.l.dim(),
            tgt.l.dim(),
            src.d.dim(),
            tgt.d.dim()
        )));
    }
    let mut report = hom_report(phi, &src.l, &tgt.l, "Hom(L)");
    report.extend(hom_report(psi, &src.d, &tgt.d, "Hom(D)"));
    let lhs = psi.mul(&src.mu);
    let rhs = tgt.mu.mul(phi);
    for c in 0..src.l.dim() {
        report.check("Commute", &[c], &sub_vec(&lhs.column(c), &rhs.column(c)));
    }
    let (n, m) = (src.l.dim(), src.d.dim());
    for op in Op::BOTH {
        for x in 0..m {
            for i in 0..n {
                let (ex, ea) = (unit(m, x), unit(n, i));
                let lhs = phi.apply(&src.action.acting_left(op).apply(&ex, &ea));
                let rhs = tgt.action.acting_left(op).apply(&psi.column(x), &phi.column(i));
                report.check("Equivariant", &[x, i], &sub_vec(&lhs, &rhs));
                let lhs = phi.apply(&src.action.acting_right(op).apply(&ea, &ex));
                let rhs = tgt.action.acting_right(op).apply(&phi.column(i), &psi.column(x));
                report.check("Equivariant", &[i, x], &sub_vec(&lhs, &rhs));
            }
        }
    }
    Ok(report)
}

/// The action of `M` obtained from an action of `P` through `η: M → P`
/// (a `P.dim × M.dim` matrix): `m ∗ a = η(m) ∗ a`, `a ∗ m = a ∗ η(m)`.
pub fn induced_action_via<F: Field>(eta: &Matrix<F>, p_action: &Action<F>) -> Result<Action<F>> {
    if eta.rows() != p_action.actor_dim() {
        return Err(Error::DimensionMismatch {
            context: "induced action: rows of the structure map".into(),
            expected: p_action.actor_dim(),
            found: eta.rows(),
        });
    }
    let id = Matrix::identity(p_action.module_dim());
    Ok(Action {
        dl: p_action.dl.transform(eta, &id, &id),
        ld: p_action.ld.transform(&id, eta, &id),
        dl_r: p_action.dl_r.transform(eta, &id, &id),
        ld_r: p_action.ld_r.transform(&id, eta, &id),
    })
}

/// Runs the axiom checks of both dialgebras and the crossed-module check.
pub fn check_all<F: Field>(xm: &CrossedModule<F>) -> Result<AxiomReport> {
    let mut r = check_axioms(&xm.l);
    for v in check_axioms(&xm.d).violations {
        r.push(crate::report::Violation { label: format!("{}(D)", v.label), ..v });
    }
    r.extend(check_crossed_module(xm)?);
    Ok(r)
}
