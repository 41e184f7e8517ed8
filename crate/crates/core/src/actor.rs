//! Actions between crossed modules: the conditions under which the candidate
//! actor represents them, the canonical morphism, action data in both
//! directions, semidirect products of crossed modules and the center.

use crate::action::{check_action_sorted, check_crossed_module, check_xmod_hom, induced_action_via, semidirect_unchecked, Action, CrossedModule};
use crate::dialgebra::{annihilator, product_span, Dialgebra};
use crate::error::{Error, Result};
use crate::identity::{generate_mixed_identities, Context, Op, Sort};
use crate::linalg::{add_vec, sub_vec, unit, Matrix, SubspaceBasis};
use crate::report::{AxiomReport, Violation};
use crate::scalar::Field;
use crate::tensor::Bilinear;
use crate::tetra::{build_actor, Actor, QuadKind, Tetramultiplier, XModTetramultiplier};

const L: Op = Op::Left;
const R: Op = Op::Right;

/// The four conditions under which homomorphisms into the candidate actor
/// are the same as actions, with the subspaces they are decided from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport<F> {
    pub con1: bool,
    pub con2: bool,
    pub con3: bool,
    pub con4: bool,
    pub ann_l: SubspaceBasis<F>,
    pub ann_d: SubspaceBasis<F>,
    pub l_left: SubspaceBasis<F>,
    pub l_right: SubspaceBasis<F>,
    pub d_left: SubspaceBasis<F>,
    pub d_right: SubspaceBasis<F>,
}

impl<F: Field> ConditionReport<F> {
    pub fn any(&self) -> bool {
        self.con1 || self.con2 || self.con3 || self.con4
    }

    /// Names of the conditions that hold.
    pub fn holding(&self) -> Vec<&'static str> {
        [("CON1", self.con1), ("CON2", self.con2), ("CON3", self.con3), ("CON4", self.con4)]
            .into_iter()
            .filter_map(|(n, b)| b.then_some(n))
            .collect()
    }
}

pub fn check_conditions<F: Field>(xm: &CrossedModule<F>) -> ConditionReport<F> {
    let ann_l = annihilator(&xm.l);
    let ann_d = annihilator(&xm.d);
    let l_left = product_span(&xm.l, L);
    let l_right = product_span(&xm.l, R);
    let d_left = product_span(&xm.d, L);
    let d_right = product_span(&xm.d, R);
    let l_ann = ann_l.is_zero();
    let d_ann = ann_d.is_zero();
    let l_perfect = l_left.is_full() && l_right.is_full();
    let d_perfect = d_left.is_full() && d_right.is_full();
    ConditionReport {
        con1: l_ann && d_ann,
        con2: l_ann && d_perfect,
        con3: l_perfect && d_perfect,
        con4: l_perfect && d_ann,
        ann_l,
        ann_d,
        l_left,
        l_right,
        d_left,
        d_right,
    }
}

/// A morphism `(φ, ψ)` into the candidate actor, in the bases of its spaces.
#[derive(Clone, Debug)]
pub struct ActorMorphism<F> {
    pub actor: Actor<F>,
    pub phi: Matrix<F>,
    pub psi: Matrix<F>,
    /// Morphism check against the actor; advisory when no condition holds.
    pub report: AxiomReport,
}

/// `a ↦ (x ↦ a⊣x, x ↦ x⊣a, x ↦ a⊢x, x ↦ x⊢a)` and `x ↦` its multiplications
/// on `L` and `D`, expressed in the actor bases.
pub fn canonical_morphism<F: Field>(xm: &CrossedModule<F>) -> Result<ActorMorphism<F>> {
    let actor = build_actor(xm)?;
    let (n, m) = (xm.l.dim(), xm.d.dim());
    let phi_cols = (0..n).map(|i| actor.embed_l_coordinates(&unit(n, i))).collect::<Result<Vec<_>>>()?;
    let psi_cols = (0..m).map(|i| actor.embed_d_coordinates(&unit(m, i))).collect::<Result<Vec<_>>>()?;
    let phi = Matrix::from_columns(actor.xmod.l.dim(), &phi_cols)?;
    let psi = Matrix::from_columns(actor.xmod.d.dim(), &psi_cols)?;
    let mut report = check_xmod_hom(&phi, &psi, xm, &actor.xmod)?;
    report.advisory = !report.is_empty() && !check_conditions(xm).any();
    Ok(ActorMorphism {
        actor,
        phi,
        psi,
        report,
    })
}

/// Data describing an action of `source = (M, P, η)` on `target = (L, D, μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModActionData<F> {
    pub source: CrossedModule<F>,
    pub target: CrossedModule<F>,
    pub p_on_l: Action<F>,
    pub p_on_d: Action<F>,
    /// `M × D → L`, for `⊣` and `⊢`
    pub xi1_l: Bilinear<F>,
    pub xi1_r: Bilinear<F>,
    /// `D × M → L`, for `⊣` and `⊢`
    pub xi2_l: Bilinear<F>,
    pub xi2_r: Bilinear<F>,
}

impl<F: Field> XModActionData<F> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        source: CrossedModule<F>,
        target: CrossedModule<F>,
        p_on_l: Action<F>,
        p_on_d: Action<F>,
        xi1_l: Bilinear<F>,
        xi1_r: Bilinear<F>,
        xi2_l: Bilinear<F>,
        xi2_r: Bilinear<F>,
    ) -> Result<Self> {
        let (nm, np) = (source.l.dim(), source.d.dim());
        let (nl, nd) = (target.l.dim(), target.d.dim());
        let fits = |a: &Action<F>, module| a.actor_dim() == np && a.module_dim() == module;
        if !fits(&p_on_l, nl) || !fits(&p_on_d, nd) {
            return Err(Error::Input(format!(
                "actions of the source must be of a {np}-dimensional algebra on dimensions {nl} and {nd}"
            )));
        }
        for (name, t, shape) in [
            ("xi1_l", &xi1_l, (nm, nd, nl)),
            ("xi1_r", &xi1_r, (nm, nd, nl)),
            ("xi2_l", &xi2_l, (nd, nm, nl)),
            ("xi2_r", &xi2_r, (nd, nm, nl)),
        ] {
            if t.shape() != shape {
                return Err(Error::Input(format!("{name} has shape {:?}, expected {shape:?}", t.shape())));
            }
        }
        Ok(XModActionData {
            source,
            target,
            p_on_l,
            p_on_d,
            xi1_l,
            xi1_r,
            xi2_l,
            xi2_r,
        })
    }

    /// A crossed module acting on itself: `D` acts by its products and on
    /// `L` by the given action, `ξ₁(m, x) = m∗x`, `ξ₂(x, m) = x∗m`.
    pub fn conjugation(xm: &CrossedModule<F>) -> Self {
        let a = &xm.action;
        XModActionData {
            source: xm.clone(),
            target: xm.clone(),
            p_on_l: a.clone(),
            p_on_d: Action::by_products(&xm.d),
            xi1_l: a.ld.clone(),
            xi1_r: a.ld_r.clone(),
            xi2_l: a.dl.clone(),
            xi2_r: a.dl_r.clone(),
        }
    }

    /// Data with a zero `M`-part: only the actions of `P` matter.
    pub fn from_zero_source(p: &Dialgebra<F>, target: &CrossedModule<F>, p_on_l: Action<F>, p_on_d: Action<F>) -> Result<Self> {
        let (nl, nd) = (target.l.dim(), target.d.dim());
        XModActionData::new(
            CrossedModule::zero_over(p),
            target.clone(),
            p_on_l,
            p_on_d,
            Bilinear::zeros(0, nd, nl),
            Bilinear::zeros(0, nd, nl),
            Bilinear::zeros(nd, 0, nl),
            Bilinear::zeros(nd, 0, nl),
        )
    }

    fn xi1(&self, op: Op) -> &Bilinear<F> {
        match op {
            Op::Left => &self.xi1_l,
            Op::Right => &self.xi1_r,
        }
    }

    fn xi2(&self, op: Op) -> &Bilinear<F> {
        match op {
            Op::Left => &self.xi2_l,
            Op::Right => &self.xi2_r,
        }
    }
}

/// Every product that occurs in the equations, on coordinate vectors.
struct Eval<'a, F> {
    d: &'a XModActionData<F>,
}

impl<F: Field> Eval<'_, F> {
    fn mu(&self, a: &[F]) -> Vec<F> {
        self.d.target.mu.apply(a)
    }
    fn eta(&self, m: &[F]) -> Vec<F> {
        self.d.source.mu.apply(m)
    }
    fn xi1(&self, op: Op, m: &[F], x: &[F]) -> Vec<F> {
        self.d.xi1(op).apply(m, x)
    }
    fn xi2(&self, op: Op, x: &[F], m: &[F]) -> Vec<F> {
        self.d.xi2(op).apply(x, m)
    }
    /// `p ∗ a`, `a ∗ p` for `a ∈ L`
    fn pl(&self, op: Op, p: &[F], a: &[F]) -> Vec<F> {
        self.d.p_on_l.acting_left(op).apply(p, a)
    }
    fn lp(&self, op: Op, a: &[F], p: &[F]) -> Vec<F> {
        self.d.p_on_l.acting_right(op).apply(a, p)
    }
    /// `p ∗ x`, `x ∗ p` for `x ∈ D`
    fn pd(&self, op: Op, p: &[F], x: &[F]) -> Vec<F> {
        self.d.p_on_d.acting_left(op).apply(p, x)
    }
    fn dp(&self, op: Op, x: &[F], p: &[F]) -> Vec<F> {
        self.d.p_on_d.acting_right(op).apply(x, p)
    }
    /// `M` acts through `η`.
    fn ml(&self, op: Op, m: &[F], a: &[F]) -> Vec<F> {
        self.pl(op, &self.eta(m), a)
    }
    fn lm(&self, op: Op, a: &[F], m: &[F]) -> Vec<F> {
        self.lp(op, a, &self.eta(m))
    }
    fn md(&self, op: Op, m: &[F], x: &[F]) -> Vec<F> {
        self.pd(op, &self.eta(m), x)
    }
    fn dm(&self, op: Op, x: &[F], m: &[F]) -> Vec<F> {
        self.dp(op, x, &self.eta(m))
    }
    /// `P` on `M`
    fn pm(&self, op: Op, p: &[F], m: &[F]) -> Vec<F> {
        self.d.source.action.acting_left(op).apply(p, m)
    }
    fn mp(&self, op: Op, m: &[F], p: &[F]) -> Vec<F> {
        self.d.source.action.acting_right(op).apply(m, p)
    }
    fn mm(&self, op: Op, m: &[F], n: &[F]) -> Vec<F> {
        self.d.source.l.mul(op, m, n)
    }
    fn pp(&self, op: Op, p: &[F], q: &[F]) -> Vec<F> {
        self.d.source.d.mul(op, p, q)
    }
    fn dd(&self, op: Op, x: &[F], y: &[F]) -> Vec<F> {
        self.d.target.d.mul(op, x, y)
    }
    /// `D` on `L`
    fn dl(&self, op: Op, x: &[F], a: &[F]) -> Vec<F> {
        self.d.target.action.acting_left(op).apply(x, a)
    }
    fn ld(&self, op: Op, a: &[F], x: &[F]) -> Vec<F> {
        self.d.target.action.acting_right(op).apply(a, x)
    }
}

fn eq<F: Field>(r: &mut AxiomReport, label: &str, w: &[usize], lhs: &[F], rhs: &[F]) {
    r.check(label, w, &sub_vec(lhs, rhs));
}

/// `a = b = c`, reported as two checks under one label.
fn eq3<F: Field>(r: &mut AxiomReport, label: &str, w: &[usize], a: &[F], b: &[F], c: &[F]) {
    eq(r, label, w, a, b);
    eq(r, label, w, b, c);
}

fn pairs(n: usize, m: usize) -> impl Iterator<Item = [usize; 2]> {
    (0..n).flat_map(move |i| (0..m).map(move |j| [i, j]))
}

fn triples(n: usize, m: usize, k: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |i| (0..m).flat_map(move |j| (0..k).map(move |l| [i, j, l])))
}

/// Evaluates the whole ledger on basis tuples: both actions of `P`,
/// `P`-equivariance of `μ` (`DiEQ1`, `DiEQ2`), the 30 compatibility
/// identities over `{P, D, L}` and `DiM1a`–`DiM5i`.
pub fn check_xmod_action_data<F: Field>(data: &XModActionData<F>) -> AxiomReport {
    let (src, tgt) = (&data.source, &data.target);
    let mut r = check_action_sorted(&src.d, &tgt.l, &data.p_on_l, Sort::P, Sort::L).expect("shapes validated");
    r.extend(check_action_sorted(&src.d, &tgt.d, &data.p_on_d, Sort::P, Sort::D).expect("shapes validated"));

    let (nm, np, nl, nd) = (src.l.dim(), src.d.dim(), tgt.l.dim(), tgt.d.dim());
    let e = Eval { d: data };
    let (um, up, ul, ud) = (|i| unit(nm, i), |i| unit(np, i), |i| unit(nl, i), |i| unit(nd, i));

    for op in Op::BOTH {
        for [p, a] in pairs(np, nl) {
            let (p, a, w) = (up(p), ul(a), [p, a]);
            eq(&mut r, "DiEQ1", &w, &e.mu(&e.pl(op, &p, &a)), &e.pd(op, &p, &e.mu(&a)));
            eq(&mut r, "DiEQ2", &[w[1], w[0]], &e.mu(&e.lp(op, &a, &p)), &e.dp(op, &e.mu(&a), &p));
        }
    }

    let mut ctx = Context::new();
    ctx.sort(Sort::P, np).sort(Sort::D, nd).sort(Sort::L, nl);
    for op in Op::BOTH {
        ctx.product(Sort::P, op, Sort::D, data.p_on_d.acting_left(op), Sort::D)
            .product(Sort::D, op, Sort::P, data.p_on_d.acting_right(op), Sort::D)
            .product(Sort::P, op, Sort::L, data.p_on_l.acting_left(op), Sort::L)
            .product(Sort::L, op, Sort::P, data.p_on_l.acting_right(op), Sort::L)
            .product(Sort::D, op, Sort::L, tgt.action.acting_left(op), Sort::L)
            .product(Sort::L, op, Sort::D, tgt.action.acting_right(op), Sort::L);
    }
    let templates = generate_mixed_identities(&[(Sort::P, 1), (Sort::D, 1), (Sort::L, 1)]).expect("three variables");
    ctx.check(&templates, &mut r).expect("all mixed products registered");

    // DiM1: μ ξ₂(x, m) = x ∗ m, μ ξ₁(m, x) = m ∗ x
    for [x, m] in pairs(nd, nm) {
        let (xv, mv) = (ud(x), um(m));
        eq(&mut r, "DiM1a", &[x, m], &e.mu(&e.xi2(L, &xv, &mv)), &e.dm(L, &xv, &mv));
        eq(&mut r, "DiM1b", &[x, m], &e.mu(&e.xi2(R, &xv, &mv)), &e.dm(R, &xv, &mv));
        eq(&mut r, "DiM1c", &[m, x], &e.mu(&e.xi1(L, &mv, &xv)), &e.md(L, &mv, &xv));
        eq(&mut r, "DiM1d", &[m, x], &e.mu(&e.xi1(R, &mv, &xv)), &e.md(R, &mv, &xv));
    }
    // DiM2: ξ₂(μ(a), m) = a ∗ m, ξ₁(m, μ(a)) = m ∗ a
    for [a, m] in pairs(nl, nm) {
        let (av, mv) = (ul(a), um(m));
        let ma = e.mu(&av);
        eq(&mut r, "DiM2a", &[a, m], &e.xi2(L, &ma, &mv), &e.lm(L, &av, &mv));
        eq(&mut r, "DiM2b", &[a, m], &e.xi2(R, &ma, &mv), &e.lm(R, &av, &mv));
        eq(&mut r, "DiM2c", &[m, a], &e.xi1(L, &mv, &ma), &e.ml(L, &mv, &av));
        eq(&mut r, "DiM2d", &[m, a], &e.xi1(R, &mv, &ma), &e.ml(R, &mv, &av));
    }
    // DiM3: compatibility with P
    for [x, p, m] in triples(nd, np, nm) {
        let (xv, pv, mv) = (ud(x), up(p), um(m));
        let w = [x, p, m];
        eq3(
            &mut r,
            "DiM3a",
            &w,
            &e.xi2(L, &xv, &e.pm(L, &pv, &mv)),
            &e.xi2(L, &e.dp(L, &xv, &pv), &mv),
            &e.xi2(L, &xv, &e.pm(R, &pv, &mv)),
        );
        eq(&mut r, "DiM3b", &w, &e.xi2(R, &xv, &e.pm(L, &pv, &mv)), &e.xi2(L, &e.dp(R, &xv, &pv), &mv));
        eq(&mut r, "DiM3c", &w, &e.xi2(R, &xv, &e.pm(R, &pv, &mv)), &e.xi2(R, &e.dp(L, &xv, &pv), &mv));
        let w = [p, m, x];
        eq(&mut r, "DiM3d", &w, &e.xi1(L, &e.pm(L, &pv, &mv), &xv), &e.pl(L, &pv, &e.xi1(R, &mv, &xv)));
        eq(&mut r, "DiM3e", &w, &e.xi1(L, &e.pm(R, &pv, &mv), &xv), &e.pl(R, &pv, &e.xi1(L, &mv, &xv)));
        eq3(
            &mut r,
            "DiM3f",
            &w,
            &e.xi1(R, &e.pm(L, &pv, &mv), &xv),
            &e.pl(R, &pv, &e.xi1(R, &mv, &xv)),
            &e.xi1(R, &e.pm(R, &pv, &mv), &xv),
        );
        let w = [x, m, p];
        eq3(
            &mut r,
            "DiM3g",
            &w,
            &e.xi2(L, &xv, &e.mp(L, &mv, &pv)),
            &e.lp(L, &e.xi2(L, &xv, &mv), &pv),
            &e.xi2(L, &xv, &e.mp(R, &mv, &pv)),
        );
        eq(&mut r, "DiM3h", &w, &e.xi2(R, &xv, &e.mp(L, &mv, &pv)), &e.lp(L, &e.xi2(R, &xv, &mv), &pv));
        eq(&mut r, "DiM3i", &w, &e.xi2(R, &xv, &e.mp(R, &mv, &pv)), &e.lp(R, &e.xi2(L, &xv, &mv), &pv));
        let w = [m, p, x];
        eq(&mut r, "DiM3j", &w, &e.xi1(L, &e.mp(L, &mv, &pv), &xv), &e.xi1(L, &mv, &e.pd(R, &pv, &xv)));
        eq(&mut r, "DiM3k", &w, &e.xi1(L, &e.mp(R, &mv, &pv), &xv), &e.xi1(R, &mv, &e.pd(L, &pv, &xv)));
        eq3(
            &mut r,
            "DiM3l",
            &w,
            &e.xi1(R, &e.mp(L, &mv, &pv), &xv),
            &e.xi1(R, &mv, &e.pd(R, &pv, &xv)),
            &e.xi1(R, &e.mp(R, &mv, &pv), &xv),
        );
    }
    // DiM4: compatibility with the products of M
    for [m, n, x] in triples(nm, nm, nd) {
        let (mv, nv, xv) = (um(m), um(n), ud(x));
        let w = [m, n, x];
        eq(&mut r, "DiM4a", &w, &e.xi1(L, &e.mm(L, &mv, &nv), &xv), &e.ml(L, &mv, &e.xi1(R, &nv, &xv)));
        eq(&mut r, "DiM4b", &w, &e.xi1(L, &e.mm(R, &mv, &nv), &xv), &e.ml(R, &mv, &e.xi1(L, &nv, &xv)));
        eq3(
            &mut r,
            "DiM4c",
            &w,
            &e.xi1(R, &e.mm(L, &mv, &nv), &xv),
            &e.ml(R, &mv, &e.xi1(R, &nv, &xv)),
            &e.xi1(R, &e.mm(R, &mv, &nv), &xv),
        );
        let w = [x, m, n];
        eq3(
            &mut r,
            "DiM4d",
            &w,
            &e.xi2(L, &xv, &e.mm(L, &mv, &nv)),
            &e.lm(L, &e.xi2(L, &xv, &mv), &nv),
            &e.xi2(L, &xv, &e.mm(R, &mv, &nv)),
        );
        eq(&mut r, "DiM4e", &w, &e.xi2(R, &xv, &e.mm(L, &mv, &nv)), &e.lm(L, &e.xi2(R, &xv, &mv), &nv));
        eq(&mut r, "DiM4f", &w, &e.xi2(R, &xv, &e.mm(R, &mv, &nv)), &e.lm(R, &e.xi2(L, &xv, &mv), &nv));
    }
    // DiM5: compatibility with the products of D
    for [m, x, y] in triples(nm, nd, nd) {
        let (mv, xv, yv) = (um(m), ud(x), ud(y));
        let w = [m, x, y];
        eq3(
            &mut r,
            "DiM5a",
            &w,
            &e.xi1(L, &mv, &e.dd(R, &xv, &yv)),
            &e.ld(L, &e.xi1(L, &mv, &xv), &yv),
            &e.xi1(L, &mv, &e.dd(L, &xv, &yv)),
        );
        eq(&mut r, "DiM5b", &w, &e.xi1(R, &mv, &e.dd(L, &xv, &yv)), &e.ld(L, &e.xi1(R, &mv, &xv), &yv));
        eq3(
            &mut r,
            "DiM5c",
            &w,
            &e.xi1(R, &mv, &e.dd(R, &xv, &yv)),
            &e.ld(R, &e.xi1(L, &mv, &xv), &yv),
            &e.ld(R, &e.xi1(R, &mv, &xv), &yv),
        );
        let w = [x, m, y];
        eq3(
            &mut r,
            "DiM5d",
            &w,
            &e.ld(L, &e.xi2(L, &xv, &mv), &yv),
            &e.dl(L, &xv, &e.xi1(R, &mv, &yv)),
            &e.dl(L, &xv, &e.xi1(L, &mv, &yv)),
        );
        eq(&mut r, "DiM5e", &w, &e.ld(L, &e.xi2(R, &xv, &mv), &yv), &e.dl(R, &xv, &e.xi1(L, &mv, &yv)));
        eq3(
            &mut r,
            "DiM5f",
            &w,
            &e.ld(R, &e.xi2(L, &xv, &mv), &yv),
            &e.dl(R, &xv, &e.xi1(R, &mv, &yv)),
            &e.ld(R, &e.xi2(R, &xv, &mv), &yv),
        );
    }
    for [x, y, m] in triples(nd, nd, nm) {
        let (xv, yv, mv) = (ud(x), ud(y), um(m));
        let w = [x, y, m];
        eq3(
            &mut r,
            "DiM5g",
            &w,
            &e.xi2(L, &e.dd(L, &xv, &yv), &mv),
            &e.dl(L, &xv, &e.xi2(R, &yv, &mv)),
            &e.dl(L, &xv, &e.xi2(L, &yv, &mv)),
        );
        eq(&mut r, "DiM5h", &w, &e.xi2(L, &e.dd(R, &xv, &yv), &mv), &e.dl(R, &xv, &e.xi2(L, &yv, &mv)));
        eq3(
            &mut r,
            "DiM5i",
            &w,
            &e.xi2(R, &e.dd(L, &xv, &yv), &mv),
            &e.dl(R, &xv, &e.xi2(R, &yv, &mv)),
            &e.xi2(R, &e.dd(R, &xv, &yv), &mv),
        );
    }
    r
}

/// The seven families of action identities that a morphism into the
/// candidate actor need not satisfy, for `P` on `L` and (suffixed `(D)`) on
/// `D`, labelled `D2.2.1`–`D2.2.7` in display order.
pub fn inequality_families<F: Field>(data: &XModActionData<F>) -> AxiomReport {
    let e = Eval { d: data };
    let np = data.source.d.dim();
    let mut r = AxiomReport::new();
    let sides: [(usize, &str); 2] = [(data.target.l.dim(), ""), (data.target.d.dim(), "(D)")];
    for (k, (n, suffix)) in sides.into_iter().enumerate() {
        let left = |op, p: &[F], a: &[F]| if k == 0 { e.pl(op, p, a) } else { e.pd(op, p, a) };
        let right = |op, a: &[F], p: &[F]| if k == 0 { e.lp(op, a, p) } else { e.dp(op, a, p) };
        let label = |i: usize| format!("D2.2.{i}{suffix}");
        for [p, a, q] in triples(np, n, np) {
            let (pv, av, qv) = (unit(np, p), unit(n, a), unit(np, q));
            let w = [p, a, q];
            eq(&mut r, &label(1), &[a, p, q], &right(R, &right(R, &av, &pv), &qv), &right(R, &av, &e.pp(R, &pv, &qv)));
            eq(&mut r, &label(2), &w, &right(L, &left(L, &pv, &av), &qv), &left(L, &pv, &right(R, &av, &qv)));
            eq(&mut r, &label(3), &w, &right(L, &left(L, &pv, &av), &qv), &left(L, &pv, &right(L, &av, &qv)));
            eq(&mut r, &label(4), &w, &right(L, &left(R, &pv, &av), &qv), &left(R, &pv, &right(L, &av, &qv)));
            eq(&mut r, &label(5), &w, &right(R, &left(L, &pv, &av), &qv), &left(R, &pv, &right(R, &av, &qv)));
            eq(&mut r, &label(6), &w, &right(R, &left(R, &pv, &av), &qv), &left(R, &pv, &right(R, &av, &qv)));
            eq(&mut r, &label(7), &[p, q, a], &left(L, &e.pp(L, &pv, &qv), &av), &left(L, &pv, &left(L, &qv, &av)));
        }
    }
    r
}

/// Reads action data off a morphism `(φ, ψ): src → actor`: the actions of
/// `P` from the octuples `ψ(p)`, the maps `ξ` from the quadruples `φ(m)`.
pub fn hom_to_action_data<F: Field>(
    phi: &Matrix<F>,
    psi: &Matrix<F>,
    src: &CrossedModule<F>,
    actor: &Actor<F>,
) -> Result<XModActionData<F>> {
    let report = check_xmod_hom(phi, psi, src, &actor.xmod)?;
    if !report.is_empty() {
        return Err(Error::HomCheck(report.sorted()));
    }
    let tgt = &actor.base;
    let (nm, np, nl, nd) = (src.l.dim(), src.d.dim(), tgt.l.dim(), tgt.d.dim());
    let quads: Vec<Tetramultiplier<F>> = (0..nm).map(|m| actor.dl_space.combine_quad(&phi.column(m))).collect();
    let octs: Vec<XModTetramultiplier<F>> = (0..np).map(|p| actor.xmod_space.combine_oct(&psi.column(p))).collect();

    let xi1 = |op| Bilinear::from_fn(nm, nd, nl, |m, x| quads[m].l(op).column(x));
    let xi2 = |op| Bilinear::from_fn(nd, nm, nl, |x, m| quads[m].r(op).column(x));
    let act = |on_l: bool, n: usize| {
        let part = |p: usize| if on_l { &octs[p].on_l } else { &octs[p].on_d };
        let left = |op| Bilinear::from_fn(np, n, n, |p, a| part(p).l(op).column(a));
        let right = |op| Bilinear::from_fn(n, np, n, |a, p| part(p).r(op).column(a));
        Action::new(left(L), right(L), left(R), right(R))
    };
    XModActionData::new(src.clone(), tgt.clone(), act(true, nl)?, act(false, nd)?, xi1(L), xi1(R), xi2(L), xi2(R))
}

/// The morphism into the actor of `data.target` defined by the data.
pub fn action_data_to_hom<F: Field>(data: &XModActionData<F>) -> Result<ActorMorphism<F>> {
    let actor = build_actor(&data.target)?;
    action_data_to_hom_with(data, actor)
}

pub fn action_data_to_hom_with<F: Field>(data: &XModActionData<F>, actor: Actor<F>) -> Result<ActorMorphism<F>> {
    if actor.base != data.target {
        return Err(Error::ContextMismatch("actor of a different crossed module".into()));
    }
    let (nm, np) = (data.source.l.dim(), data.source.d.dim());
    let mut phi_cols = Vec::with_capacity(nm);
    for m in 0..nm {
        let e = unit(nm, m);
        let t = Tetramultiplier::from_maps(
            QuadKind::Relative,
            [
                data.xi1_l.left_multiplication(&e),
                data.xi2_l.right_multiplication(&e),
                data.xi1_r.left_multiplication(&e),
                data.xi2_r.right_multiplication(&e),
            ],
        )?;
        phi_cols.push(actor.dl_space.quad_coordinates(&t)?);
    }
    let quad_of = |a: &Action<F>, p: &[F]| {
        Tetramultiplier::from_maps(
            QuadKind::Single,
            [
                a.dl.left_multiplication(p),
                a.ld.right_multiplication(p),
                a.dl_r.left_multiplication(p),
                a.ld_r.right_multiplication(p),
            ],
        )
    };
    let mut psi_cols = Vec::with_capacity(np);
    for p in 0..np {
        let e = unit(np, p);
        let o = XModTetramultiplier {
            on_l: quad_of(&data.p_on_l, &e)?,
            on_d: quad_of(&data.p_on_d, &e)?,
        };
        psi_cols.push(actor.xmod_space.oct_coordinates(&o)?);
    }
    let phi = Matrix::from_columns(actor.xmod.l.dim(), &phi_cols)?;
    let psi = Matrix::from_columns(actor.xmod.d.dim(), &psi_cols)?;
    let report = check_xmod_hom(&phi, &psi, &data.source, &actor.xmod)?;
    Ok(ActorMorphism {
        actor,
        phi,
        psi,
        report,
    })
}

/// `m` placed at rows `r0..` and columns `c0..` of a zero matrix.
fn placed<F: Field>(rows: usize, cols: usize, r0: usize, c0: usize, m: &Matrix<F>) -> Matrix<F> {
    let mut out = Matrix::zeros(rows, cols);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.set(r0 + r, c0 + c, m.get(r, c).clone());
        }
    }
    out
}

/// `(L ⋊ M, D ⋊ P, (μ, η))` with the maps of its split extension. Bases
/// list `L` (resp. `D`) first.
#[derive(Clone, Debug)]
pub struct SemidirectXMod<F> {
    pub xmod: CrossedModule<F>,
    /// `(L ⋊ M → M, D ⋊ P → P)`
    pub projection: (Matrix<F>, Matrix<F>),
    /// `(M → L ⋊ M, P → D ⋊ P)`
    pub section: (Matrix<F>, Matrix<F>),
    /// `(L → L ⋊ M, D → D ⋊ P)`
    pub inclusion: (Matrix<F>, Matrix<F>),
}

pub fn semidirect_xmod<F: Field>(data: &XModActionData<F>) -> Result<SemidirectXMod<F>> {
    let report = check_xmod_action_data(data);
    if !report.is_empty() {
        return Err(Error::ActionDataCheck(report.sorted()));
    }
    Ok(semidirect_xmod_unchecked(data))
}

pub(crate) fn semidirect_xmod_unchecked<F: Field>(data: &XModActionData<F>) -> SemidirectXMod<F> {
    let (src, tgt) = (&data.source, &data.target);
    let (nm, np, nl, nd) = (src.l.dim(), src.d.dim(), tgt.l.dim(), tgt.d.dim());
    let m_on_l = induced_action_via(&src.mu, &data.p_on_l).expect("η has P rows");
    let lm = semidirect_unchecked(&tgt.l, &src.l, &m_on_l);
    let dp = semidirect_unchecked(&tgt.d, &src.d, &data.p_on_d);
    let e = Eval { d: data };
    let (n, k) = (nl + nm, nd + np);

    // (x, p) ∗ (a, m) = (x∗a + p∗a + ξ₂(x, m), p∗m)
    let left = |op| {
        Bilinear::from_fn(k, n, n, |i, j| {
            let (xp, am) = (unit(k, i), unit(n, j));
            let (x, p, a, m) = (&xp[..nd], &xp[nd..], &am[..nl], &am[nl..]);
            let mut v = add_vec(&add_vec(&e.dl(op, x, a), &e.pl(op, p, a)), &e.xi2(op, x, m));
            v.extend(e.pm(op, p, m));
            v
        })
    };
    // (a, m) ∗ (x, p) = (a∗x + a∗p + ξ₁(m, x), m∗p)
    let right = |op| {
        Bilinear::from_fn(n, k, n, |i, j| {
            let (am, xp) = (unit(n, i), unit(k, j));
            let (x, p, a, m) = (&xp[..nd], &xp[nd..], &am[..nl], &am[nl..]);
            let mut v = add_vec(&add_vec(&e.ld(op, a, x), &e.lp(op, a, p)), &e.xi1(op, m, x));
            v.extend(e.mp(op, m, p));
            v
        })
    };
    let action = Action::new(left(L), right(L), left(R), right(R)).expect("shapes by construction");
    let mu = placed(k, n, 0, 0, &tgt.mu).add(&placed(k, n, nd, nl, &src.mu));
    let xmod = CrossedModule::new(lm, dp, mu, action).expect("shapes by construction");
    SemidirectXMod {
        xmod,
        projection: (placed(nm, n, 0, nl, &Matrix::identity(nm)), placed(np, k, 0, nd, &Matrix::identity(np))),
        section: (placed(n, nm, nl, 0, &Matrix::identity(nm)), placed(k, np, nd, 0, &Matrix::identity(np))),
        inclusion: (placed(n, nl, 0, 0, &Matrix::identity(nl)), placed(k, nd, 0, 0, &Matrix::identity(nd))),
    }
}

fn prefixed(prefix: &str, r: AxiomReport) -> AxiomReport {
    let mut out = AxiomReport::new();
    for v in r.violations {
        out.push(Violation {
            label: format!("{prefix}:{}", v.label),
            ..v
        });
    }
    out
}

fn matrix_eq<F: Field>(r: &mut AxiomReport, label: &str, a: &Matrix<F>, b: &Matrix<F>) {
    for c in 0..a.cols() {
        r.check(label, &[c], &sub_vec(&a.column(c), &b.column(c)));
    }
}

/// The split extension `(L,D,μ) → semidirect ⇄ (M,P,η)`: projection,
/// section and inclusion are morphisms, the section is a right inverse of
/// the projection and the inclusion composes to zero with it.
pub fn split_extension_report<F: Field>(s: &SemidirectXMod<F>, data: &XModActionData<F>) -> Result<AxiomReport> {
    let mut r = check_crossed_module(&s.xmod)?;
    let (pl, pd) = &s.projection;
    let (sl, sd) = &s.section;
    let (il, id) = &s.inclusion;
    r.extend(prefixed("Projection", check_xmod_hom(pl, pd, &s.xmod, &data.source)?));
    r.extend(prefixed("Section", check_xmod_hom(sl, sd, &data.source, &s.xmod)?));
    r.extend(prefixed("Inclusion", check_xmod_hom(il, id, &data.target, &s.xmod)?));
    let (nm, np) = (data.source.l.dim(), data.source.d.dim());
    matrix_eq(&mut r, "Retract(L)", &pl.mul(sl), &Matrix::identity(nm));
    matrix_eq(&mut r, "Retract(D)", &pd.mul(sd), &Matrix::identity(np));
    matrix_eq(&mut r, "Exact(L)", &pl.mul(il), &Matrix::zeros(nm, il.cols()));
    matrix_eq(&mut r, "Exact(D)", &pd.mul(id), &Matrix::zeros(np, id.cols()));
    Ok(r)
}

/// `(L^D, st_D(L) ∩ Z(D))`, with `Z(D)` taken to be `Ann(D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Center<F> {
    pub l_fixed: SubspaceBasis<F>,
    pub d_center: SubspaceBasis<F>,
}

pub fn center<F: Field>(xm: &CrossedModule<F>) -> Center<F> {
    let (n, m) = (xm.l.dim(), xm.d.dim());
    let a = &xm.action;
    let mut fixed = Vec::new();
    let mut stab = Vec::new();
    for op in Op::BOTH {
        for x in 0..m {
            fixed.push(a.acting_left(op).left_multiplication(&unit(m, x)));
            fixed.push(a.acting_right(op).right_multiplication(&unit(m, x)));
        }
        for i in 0..n {
            stab.push(a.acting_left(op).right_multiplication(&unit(n, i)));
            stab.push(a.acting_right(op).left_multiplication(&unit(n, i)));
        }
    }
    let l_fixed = Matrix::vstack(n, &fixed).nullspace();
    let st = Matrix::vstack(m, &stab).nullspace();
    let d_center = st.intersect(&annihilator(&xm.d)).expect("same ambient");
    Center { l_fixed, d_center }
}

/// The center as a crossed module, in the canonical bases of its parts.
pub fn center_crossed_module<F: Field>(xm: &CrossedModule<F>, c: &Center<F>) -> Result<CrossedModule<F>> {
    let l = xm.l.restrict(&c.l_fixed)?;
    let d = xm.d.restrict(&c.d_center)?;
    let mut cols = Vec::with_capacity(c.l_fixed.dim());
    for (i, v) in c.l_fixed.vectors().iter().enumerate() {
        cols.push(c.d_center.coordinates(&xm.mu.apply(v))?.ok_or_else(|| Error::Closure {
            what: "image of the fixed part under the structure map".into(),
            witness: vec![i],
        })?);
    }
    let mu = Matrix::from_columns(d.dim(), &cols)?;
    let (n, m) = (l.dim(), d.dim());
    // the stabilizer acts trivially on all of L
    CrossedModule::new(l, d, mu, Action::trivial(m, n))
}

#[derive(Clone, Debug)]
pub struct CenterCheck<F> {
    pub center: Center<F>,
    pub ker_phi: SubspaceBasis<F>,
    pub ker_psi: SubspaceBasis<F>,
    pub conditions: ConditionReport<F>,
    /// `Center(L)` / `Center(D)` violations witnessed by `[side, index]`,
    /// side 0 for a kernel vector outside the center and 1 for the converse;
    /// advisory when no condition holds.
    pub report: AxiomReport,
}

fn compare<F: Field>(r: &mut AxiomReport, label: &str, ker: &SubspaceBasis<F>, cen: &SubspaceBasis<F>) -> Result<()> {
    for (side, (a, b)) in [(ker, cen), (cen, ker)].into_iter().enumerate() {
        for (i, v) in a.vectors().iter().enumerate() {
            if !b.contains(v)? {
                r.push(Violation::new(label, vec![side, i], v));
            }
        }
    }
    Ok(())
}

/// Compares the kernel of the canonical morphism with the center.
pub fn verify_center_is_kernel<F: Field>(xm: &CrossedModule<F>) -> Result<CenterCheck<F>> {
    let c = center(xm);
    let morphism = canonical_morphism(xm)?;
    let ker_phi = morphism.phi.nullspace();
    let ker_psi = morphism.psi.nullspace();
    let conditions = check_conditions(xm);
    let mut report = AxiomReport::new();
    compare(&mut report, "Center(L)", &ker_phi, &c.l_fixed)?;
    compare(&mut report, "Center(D)", &ker_psi, &c.d_center)?;
    report.advisory = !conditions.any();
    Ok(CenterCheck {
        center: c,
        ker_phi,
        ker_psi,
        conditions,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::{q, Rational};

    fn e2_line() -> SubspaceBasis<Rational> {
        SubspaceBasis::span(2, vec![vec![q("0"), q("1")]]).unwrap()
    }

    fn ideal_xm() -> CrossedModule<Rational> {
        CrossedModule::from_ideal(&fixtures::d2(), &e2_line()).unwrap()
    }

    #[test]
    fn conditions_on_fixtures() {
        let c = check_conditions(&CrossedModule::identity(&fixtures::d2::<Rational>()));
        assert!(c.con1 && c.con2 && c.con3 && c.con4);
        let a2 = Dialgebra::<Rational>::abelian(2);
        let c = check_conditions(&CrossedModule::zero_map(&a2, &a2, Action::trivial(2, 2)).unwrap());
        assert!(!c.any());
        assert!(!check_conditions(&ideal_xm()).any());
    }

    #[test]
    fn conjugation_data_round_trip() {
        let xm = CrossedModule::identity(&fixtures::d2::<Rational>());
        let data = XModActionData::conjugation(&xm);
        assert!(check_xmod_action_data(&data).is_empty());
        let canon = canonical_morphism(&xm).unwrap();
        assert!(canon.report.is_empty());
        let back = hom_to_action_data(&canon.phi, &canon.psi, &xm, &canon.actor).unwrap();
        assert_eq!(back, data);
        let hom = action_data_to_hom_with(&data, canon.actor.clone()).unwrap();
        assert!(hom.report.is_empty());
        assert_eq!((hom.phi, hom.psi), (canon.phi, canon.psi));
    }

    #[test]
    fn zeroed_xi_is_reported() {
        let xm = CrossedModule::identity(&fixtures::d2::<Rational>());
        let mut data = XModActionData::conjugation(&xm);
        data.xi2_l = Bilinear::zeros(2, 2, 2);
        let r = check_xmod_action_data(&data);
        assert!(r.violations.iter().any(|v| v.label == "DiM1a" && v.witness == [0, 0]));
    }

    #[test]
    fn ideal_fixtures() {
        let d2 = fixtures::d2::<Rational>();
        let target = ideal_xm();
        let data = XModActionData::conjugation(&target);
        assert!(check_xmod_action_data(&data).is_empty());
        let p_on_l = target.action.clone();
        let data = XModActionData::from_zero_source(&d2, &target, p_on_l, Action::by_products(&d2)).unwrap();
        assert!(check_xmod_action_data(&data).is_empty());
        assert!(action_data_to_hom(&data).unwrap().report.is_empty());
        let s = semidirect_xmod(&data).unwrap();
        assert!(split_extension_report(&s, &data).unwrap().is_empty());
    }

    #[test]
    fn semidirect_of_self_action() {
        let xm = CrossedModule::identity(&fixtures::d2::<Rational>());
        let data = XModActionData::conjugation(&xm);
        let s = semidirect_xmod(&data).unwrap();
        assert_eq!((s.xmod.l.dim(), s.xmod.d.dim()), (4, 4));
        assert!(split_extension_report(&s, &data).unwrap().is_empty());
        let z = XModActionData::conjugation(&CrossedModule::<Rational>::zero());
        assert_eq!(semidirect_xmod(&z).unwrap().xmod.d.dim(), 0);
    }

    #[test]
    fn centers() {
        let a2 = Dialgebra::<Rational>::abelian(2);
        let c = center(&CrossedModule::zero_map(&a2, &a2, Action::trivial(2, 2)).unwrap());
        assert!(c.l_fixed.is_full() && c.d_center.is_full());
        for xm in [CrossedModule::identity(&fixtures::d2::<Rational>()), ideal_xm(), CrossedModule::zero_over(&fixtures::d2())] {
            let check = verify_center_is_kernel(&xm).unwrap();
            assert!(check.report.is_empty());
            assert!(check.center.l_fixed.is_zero() && check.center.d_center.is_zero());
            center_crossed_module(&xm, &check.center).unwrap();
        }
    }

    #[test]
    fn families_hold_for_genuine_actions() {
        let xm = CrossedModule::identity(&fixtures::d2::<Rational>());
        assert!(inequality_families(&XModActionData::conjugation(&xm)).is_empty());
    }
}
