//! Tetramultiplier spaces, their products, `Δ`, the octuple action and the
//! actor crossed module.
//!
//! Every space is the nullspace of a linear system obtained by evaluating
//! generated identity templates with a multiplier sort `T` whose products are
//! the unknown maps. Coordinates are flattened block by block: `l⊣, r⊣, l⊢,
//! r⊢`, each row-major with rows indexed by the target. Octuples store the
//! four maps on `L` followed by the four maps on `D`.

use crate::action::{check_crossed_module, register, Action, CrossedModule};
use crate::dialgebra::{annihilator, is_perfect, Dialgebra};
use crate::error::{Error, Result};
use crate::identity::{generate_mixed_identities, Context, Op, Sort, TSide};
use crate::linalg::{unit, Matrix, SubspaceBasis};
use crate::report::{AxiomReport, Violation};
use crate::scalar::Field;
use crate::tensor::Bilinear;

/// Which defining system a quadruple satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadKind {
    /// Self-maps of one dialgebra.
    Single,
    /// Maps `D → L` through an action.
    Relative,
}

/// A quadruple `(l⊣, r⊣, l⊢, r⊢)` of linear maps with a common shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tetramultiplier<F> {
    pub kind: QuadKind,
    pub l_left: Matrix<F>,
    pub r_left: Matrix<F>,
    pub l_right: Matrix<F>,
    pub r_right: Matrix<F>,
}

impl<F: Field> Tetramultiplier<F> {
    pub fn zero(kind: QuadKind, rows: usize, cols: usize) -> Self {
        let z = Matrix::zeros(rows, cols);
        Tetramultiplier {
            kind,
            l_left: z.clone(),
            r_left: z.clone(),
            l_right: z.clone(),
            r_right: z,
        }
    }

    pub fn from_maps(kind: QuadKind, maps: [Matrix<F>; 4]) -> Result<Self> {
        let shape = (maps[0].rows(), maps[0].cols());
        if maps.iter().any(|m| (m.rows(), m.cols()) != shape) {
            return Err(Error::Input("the four maps of a quadruple must share a shape".into()));
        }
        let [l_left, r_left, l_right, r_right] = maps;
        Ok(Tetramultiplier {
            kind,
            l_left,
            r_left,
            l_right,
            r_right,
        })
    }

    /// `(rows, cols)` of each map: target by source dimension.
    pub fn shape(&self) -> (usize, usize) {
        (self.l_left.rows(), self.l_left.cols())
    }

    pub fn maps(&self) -> [&Matrix<F>; 4] {
        [&self.l_left, &self.r_left, &self.l_right, &self.r_right]
    }

    pub fn l(&self, op: Op) -> &Matrix<F> {
        match op {
            Op::Left => &self.l_left,
            Op::Right => &self.l_right,
        }
    }

    pub fn r(&self, op: Op) -> &Matrix<F> {
        match op {
            Op::Left => &self.r_left,
            Op::Right => &self.r_right,
        }
    }

    pub fn flatten(&self) -> Vec<F> {
        self.maps().iter().flat_map(|m| m.as_slice().iter().cloned()).collect()
    }

    pub fn unflatten(kind: QuadKind, rows: usize, cols: usize, v: &[F]) -> Result<Self> {
        let n = rows * cols;
        if v.len() != 4 * n {
            return Err(Error::DimensionMismatch {
                context: "flattened quadruple".into(),
                expected: 4 * n,
                found: v.len(),
            });
        }
        let block = |i: usize| Matrix::from_flat(rows, cols, v[i * n..(i + 1) * n].to_vec());
        Tetramultiplier::from_maps(kind, [block(0)?, block(1)?, block(2)?, block(3)?])
    }

    pub fn is_zero(&self) -> bool {
        self.maps().iter().all(|m| m.is_zero())
    }

    fn map_each(&self, f: impl Fn(&Matrix<F>) -> Matrix<F>) -> Self {
        Tetramultiplier {
            kind: self.kind,
            l_left: f(&self.l_left),
            r_left: f(&self.r_left),
            l_right: f(&self.l_right),
            r_right: f(&self.r_right),
        }
    }
}

/// An octuple: a quadruple on `L` and a quadruple on `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModTetramultiplier<F> {
    /// `(λ⊣, ρ⊣, λ⊢, ρ⊢)`
    pub on_l: Tetramultiplier<F>,
    /// `(κ⊣, ω⊣, κ⊢, ω⊢)`
    pub on_d: Tetramultiplier<F>,
}

impl<F: Field> XModTetramultiplier<F> {
    pub fn zero(l_dim: usize, d_dim: usize) -> Self {
        XModTetramultiplier {
            on_l: Tetramultiplier::zero(QuadKind::Single, l_dim, l_dim),
            on_d: Tetramultiplier::zero(QuadKind::Single, d_dim, d_dim),
        }
    }

    pub fn flatten(&self) -> Vec<F> {
        let mut v = self.on_l.flatten();
        v.extend(self.on_d.flatten());
        v
    }

    pub fn unflatten(l_dim: usize, d_dim: usize, v: &[F]) -> Result<Self> {
        let split = 4 * l_dim * l_dim;
        if v.len() != split + 4 * d_dim * d_dim {
            return Err(Error::DimensionMismatch {
                context: "flattened octuple".into(),
                expected: split + 4 * d_dim * d_dim,
                found: v.len(),
            });
        }
        Ok(XModTetramultiplier {
            on_l: Tetramultiplier::unflatten(QuadKind::Single, l_dim, l_dim, &v[..split])?,
            on_d: Tetramultiplier::unflatten(QuadKind::Single, d_dim, d_dim, &v[split..])?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.on_l.is_zero() && self.on_d.is_zero()
    }
}

/// The three kinds of tetramultiplier space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// `Tetra(L)`: quadruples of self-maps.
    Single,
    /// `Tetra(D, L)`: quadruples of maps `D → L`.
    Relative,
    /// `Tetra(L, D, μ)`: octuples.
    CrossedModule,
}

impl SpaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Single => "L",
            SpaceKind::Relative => "DL",
            SpaceKind::CrossedModule => "XMOD",
        }
    }
}

/// A tetramultiplier space as a subspace of flattened coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TetraSpace<F> {
    kind: SpaceKind,
    l_dim: usize,
    d_dim: usize,
    /// `μ` for relative spaces, used by the products.
    mu: Option<Matrix<F>>,
    basis: SubspaceBasis<F>,
}

impl<F: Field> TetraSpace<F> {
    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ambient_dim()
    }

    pub fn basis(&self) -> &SubspaceBasis<F> {
        &self.basis
    }

    /// `(rows, cols)` of each quadruple map.
    fn quad_shape(&self) -> (usize, usize) {
        match self.kind {
            SpaceKind::Single => (self.l_dim, self.l_dim),
            _ => (self.l_dim, self.d_dim),
        }
    }

    fn quad_kind(&self) -> QuadKind {
        match self.kind {
            SpaceKind::Relative => QuadKind::Relative,
            _ => QuadKind::Single,
        }
    }

    /// The `i`-th basis quadruple. Panics for octuple spaces.
    pub fn quad(&self, i: usize) -> Tetramultiplier<F> {
        assert_ne!(self.kind, SpaceKind::CrossedModule, "octuple space has no quadruples");
        let (r, c) = self.quad_shape();
        Tetramultiplier::unflatten(self.quad_kind(), r, c, &self.basis.vectors()[i]).expect("basis vector length")
    }

    /// The `i`-th basis octuple. Panics for quadruple spaces.
    pub fn oct(&self, i: usize) -> XModTetramultiplier<F> {
        assert_eq!(self.kind, SpaceKind::CrossedModule, "quadruple space has no octuples");
        XModTetramultiplier::unflatten(self.l_dim, self.d_dim, &self.basis.vectors()[i]).expect("basis vector length")
    }

    pub fn quads(&self) -> Vec<Tetramultiplier<F>> {
        (0..self.dim()).map(|i| self.quad(i)).collect()
    }

    pub fn octs(&self) -> Vec<XModTetramultiplier<F>> {
        (0..self.dim()).map(|i| self.oct(i)).collect()
    }

    fn check_quad(&self, t: &Tetramultiplier<F>) -> Result<()> {
        if self.kind == SpaceKind::CrossedModule || t.kind != self.quad_kind() || t.shape() != self.quad_shape() {
            return Err(Error::ContextMismatch(format!(
                "{:?} quadruple of shape {:?} against a Tetra({}) space",
                t.kind,
                t.shape(),
                self.kind.name()
            )));
        }
        Ok(())
    }

    fn check_oct(&self, o: &XModTetramultiplier<F>) -> Result<()> {
        let ok = self.kind == SpaceKind::CrossedModule
            && o.on_l.shape() == (self.l_dim, self.l_dim)
            && o.on_d.shape() == (self.d_dim, self.d_dim);
        if !ok {
            return Err(Error::ContextMismatch(format!(
                "octuple on dims ({}, {}) against a Tetra({}) space",
                o.on_l.shape().0,
                o.on_d.shape().0,
                self.kind.name()
            )));
        }
        Ok(())
    }

    pub fn contains_quad(&self, t: &Tetramultiplier<F>) -> Result<bool> {
        self.check_quad(t)?;
        self.basis.contains(&t.flatten())
    }

    pub fn contains_oct(&self, o: &XModTetramultiplier<F>) -> Result<bool> {
        self.check_oct(o)?;
        self.basis.contains(&o.flatten())
    }

    /// Coordinates in the basis; `NotMember` if outside the space.
    pub fn quad_coordinates(&self, t: &Tetramultiplier<F>) -> Result<Vec<F>> {
        self.check_quad(t)?;
        self.basis
            .coordinates(&t.flatten())?
            .ok_or_else(|| Error::NotMember(format!("quadruple in Tetra({})", self.kind.name())))
    }

    pub fn oct_coordinates(&self, o: &XModTetramultiplier<F>) -> Result<Vec<F>> {
        self.check_oct(o)?;
        self.basis
            .coordinates(&o.flatten())?
            .ok_or_else(|| Error::NotMember("octuple in Tetra(L,D,μ)".into()))
    }

    pub fn combine_quad(&self, coords: &[F]) -> Tetramultiplier<F> {
        let (r, c) = self.quad_shape();
        Tetramultiplier::unflatten(self.quad_kind(), r, c, &self.basis.combine(coords)).expect("ambient length")
    }

    pub fn combine_oct(&self, coords: &[F]) -> XModTetramultiplier<F> {
        XModTetramultiplier::unflatten(self.l_dim, self.d_dim, &self.basis.combine(coords)).expect("ambient length")
    }
}

/// Nullspace of stacked constraint blocks, reducing as it goes so that the
/// working matrix never holds more rows than unknowns plus one block.
pub(crate) fn solve_blocks<F: Field>(n: usize, blocks: Vec<Matrix<F>>) -> SubspaceBasis<F> {
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut pending = 0;
    let mut acc = Vec::new();
    for b in blocks {
        pending += b.rows();
        acc.push(b);
        if pending >= 4 * n.max(8) {
            rows = reduce(n, rows, std::mem::take(&mut acc));
            pending = 0;
        }
    }
    rows = reduce(n, rows, acc);
    Matrix::from_rows(n, rows).expect("rows have n entries").nullspace()
}

fn reduce<F: Field>(n: usize, rows: Vec<Vec<F>>, blocks: Vec<Matrix<F>>) -> Vec<Vec<F>> {
    let mut parts = vec![Matrix::from_rows(n, rows).expect("rows have n entries")];
    parts.extend(blocks);
    let (r, pivots) = Matrix::vstack(n, &parts).rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Declares the four unknown maps of a quadruple in flattening order.
fn declare_quad<F: Field>(ctx: &mut Context<'_, F>, on: Sort, out: Sort) {
    for op in Op::BOTH {
        ctx.unknown(op, on, out, TSide::Left);
        ctx.unknown(op, on, out, TSide::Right);
    }
}

/// `Tetra(L)`: the 15 defining identities in `4·n²` unknowns.
pub fn tetra_space<F: Field>(l: &Dialgebra<F>) -> TetraSpace<F> {
    let n = l.dim();
    let mut ctx = Context::new();
    ctx.sort(Sort::L, n).sort(Sort::T, 1);
    for op in Op::BOTH {
        ctx.product(Sort::L, op, Sort::L, l.product(op), Sort::L);
    }
    declare_quad(&mut ctx, Sort::L, Sort::L);
    let templates = generate_mixed_identities(&[(Sort::T, 1), (Sort::L, 2)]).expect("three variables");
    let blocks = ctx.constraints(&templates).expect("all rules declared");
    TetraSpace {
        kind: SpaceKind::Single,
        l_dim: n,
        d_dim: n,
        mu: None,
        basis: solve_blocks(ctx.n_unknowns(), blocks),
    }
}

fn require_crossed_module<F: Field>(xm: &CrossedModule<F>) -> Result<()> {
    let report = check_crossed_module(xm)?;
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::CrossedModuleCheck(report.sorted()))
    }
}

/// `Tetra(D, L)`: quadruples of maps `D → L` satisfying the 15 identities
/// written through the action.
pub fn tetra_dl_space<F: Field>(xm: &CrossedModule<F>) -> Result<TetraSpace<F>> {
    require_crossed_module(xm)?;
    Ok(tetra_dl_space_unchecked(xm))
}

pub(crate) fn tetra_dl_space_unchecked<F: Field>(xm: &CrossedModule<F>) -> TetraSpace<F> {
    let mut ctx = Context::new();
    register(&mut ctx, (Sort::D, &xm.d), (Sort::L, &xm.l), &xm.action);
    ctx.sort(Sort::T, 1);
    declare_quad(&mut ctx, Sort::D, Sort::L);
    let templates = generate_mixed_identities(&[(Sort::T, 1), (Sort::D, 2)]).expect("three variables");
    let blocks = ctx.constraints(&templates).expect("all rules declared");
    TetraSpace {
        kind: SpaceKind::Relative,
        l_dim: xm.l.dim(),
        d_dim: xm.d.dim(),
        mu: Some(xm.mu.clone()),
        basis: solve_blocks(ctx.n_unknowns(), blocks),
    }
}

/// `Tetra(L, D, μ)`: octuples satisfying both single systems, the four
/// intertwining conditions with `μ` and the 30 mixed conditions.
pub fn xmod_tetra_space<F: Field>(xm: &CrossedModule<F>) -> Result<TetraSpace<F>> {
    require_crossed_module(xm)?;
    Ok(xmod_tetra_space_unchecked(xm))
}

pub(crate) fn xmod_tetra_space_unchecked<F: Field>(xm: &CrossedModule<F>) -> TetraSpace<F> {
    let (n, m) = (xm.l.dim(), xm.d.dim());
    let mut ctx = Context::new();
    register(&mut ctx, (Sort::D, &xm.d), (Sort::L, &xm.l), &xm.action);
    ctx.sort(Sort::T, 1);
    declare_quad(&mut ctx, Sort::L, Sort::L);
    let mut d_blocks = Vec::new();
    for op in Op::BOTH {
        d_blocks.push(ctx.unknown(op, Sort::D, Sort::D, TSide::Left));
        d_blocks.push(ctx.unknown(op, Sort::D, Sort::D, TSide::Right));
    }
    let mut templates = generate_mixed_identities(&[(Sort::T, 1), (Sort::L, 2)]).expect("three variables");
    templates.extend(generate_mixed_identities(&[(Sort::T, 1), (Sort::D, 2)]).expect("three variables"));
    templates.extend(generate_mixed_identities(&[(Sort::T, 1), (Sort::D, 1), (Sort::L, 1)]).expect("three variables"));
    let total = ctx.n_unknowns();
    let mut blocks = ctx.constraints(&templates).expect("all rules declared");

    // μ ∘ (map on L) = (map on D) ∘ μ, one block per map and basis vector of L
    let l_blocks: Vec<_> = (0..4)
        .map(|i| crate::identity::Block {
            offset: i * n * n,
            rows: n,
            cols: n,
        })
        .collect();
    for (lb, db) in l_blocks.iter().zip(&d_blocks) {
        for c in 0..n {
            let lhs = xm.mu.mul(&lb.apply(&unit(n, c), total));
            let rhs = db.apply(&xm.mu.column(c), total);
            blocks.push(lhs.sub(&rhs));
        }
    }
    TetraSpace {
        kind: SpaceKind::CrossedModule,
        l_dim: n,
        d_dim: m,
        mu: None,
        basis: solve_blocks(total, blocks),
    }
}

fn compose<F: Field>(a: &Matrix<F>, mid: Option<&Matrix<F>>, b: &Matrix<F>) -> Matrix<F> {
    match mid {
        Some(m) => a.mul(&m.mul(b)),
        None => a.mul(b),
    }
}

/// The product formula shared by all quadruple products and actions:
/// `t₁ ⊣ t₂ = (l₁⊣ l₂⊢, r₂⊣ r₁⊣, l₁⊢ l₂⊢, r₂⊣ r₁⊢)` and
/// `t₁ ⊢ t₂ = (l₁⊢ l₂⊣, r₂⊣ r₁⊣, l₁⊢ l₂⊢, r₂⊢ r₁⊣)`, with `mid` inserted
/// between the factors when given.
fn quad_formula<F: Field>(
    kind: QuadKind,
    t1: [&Matrix<F>; 4],
    t2: [&Matrix<F>; 4],
    op: Op,
    mid: Option<&Matrix<F>>,
) -> Tetramultiplier<F> {
    let [l1l, r1l, l1r, r1r] = t1;
    let [l2l, r2l, l2r, r2r] = t2;
    let c = |a, b| compose(a, mid, b);
    let maps = match op {
        Op::Left => [c(l1l, l2r), c(r2l, r1l), c(l1r, l2r), c(r2l, r1r)],
        Op::Right => [c(l1r, l2l), c(r2l, r1l), c(l1r, l2r), c(r2r, r1l)],
    };
    Tetramultiplier::from_maps(kind, maps).expect("composed maps share a shape")
}

/// Product in `Tetra(L)` or `Tetra(D, L)`; the latter composes through `μ`.
pub fn tetra_product<F: Field>(
    space: &TetraSpace<F>,
    t1: &Tetramultiplier<F>,
    t2: &Tetramultiplier<F>,
    op: Op,
) -> Result<Tetramultiplier<F>> {
    space.check_quad(t1)?;
    space.check_quad(t2)?;
    Ok(quad_formula(t1.kind, t1.maps(), t2.maps(), op, space.mu.as_ref()))
}

fn single_product<F: Field>(t1: &Tetramultiplier<F>, t2: &Tetramultiplier<F>, op: Op) -> Result<Tetramultiplier<F>> {
    if t1.kind != QuadKind::Single || t2.kind != QuadKind::Single || t1.shape() != t2.shape() {
        return Err(Error::ContextMismatch("componentwise product of unlike quadruples".into()));
    }
    Ok(quad_formula(QuadKind::Single, t1.maps(), t2.maps(), op, None))
}

/// Componentwise product of octuples.
pub fn xmod_tetra_product<F: Field>(
    o1: &XModTetramultiplier<F>,
    o2: &XModTetramultiplier<F>,
    op: Op,
) -> Result<XModTetramultiplier<F>> {
    Ok(XModTetramultiplier {
        on_l: single_product(&o1.on_l, &o2.on_l, op)?,
        on_d: single_product(&o1.on_d, &o2.on_d, op)?,
    })
}

/// `Δ(t) = ((l⊣μ, r⊣μ, l⊢μ, r⊢μ), (μl⊣, μr⊣, μl⊢, μr⊢))` for `t` in the
/// relative space.
pub fn delta<F: Field>(dl_space: &TetraSpace<F>, t: &Tetramultiplier<F>) -> Result<XModTetramultiplier<F>> {
    if dl_space.kind != SpaceKind::Relative {
        return Err(Error::ContextMismatch("Δ is defined on Tetra(D,L)".into()));
    }
    if !dl_space.contains_quad(t)? {
        return Err(Error::NotMember("argument of Δ in Tetra(D,L)".into()));
    }
    let mu = dl_space.mu.as_ref().expect("relative spaces carry μ");
    Ok(delta_unchecked(mu, t))
}

fn delta_unchecked<F: Field>(mu: &Matrix<F>, t: &Tetramultiplier<F>) -> XModTetramultiplier<F> {
    let mut on_l = t.map_each(|m| m.mul(mu));
    on_l.kind = QuadKind::Single;
    let mut on_d = t.map_each(|m| mu.mul(m));
    on_d.kind = QuadKind::Single;
    XModTetramultiplier { on_l, on_d }
}

/// Which side of the quadruple the octuple stands on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `o ∗ t`
    Left,
    /// `t ∗ o`
    Right,
}

/// The action of octuples on relative quadruples:
/// `o ⊣ t = (λ⊣ l⊢, r⊣ ω⊣, λ⊢ l⊢, r⊣ ω⊢)`, `o ⊢ t = (λ⊢ l⊣, r⊣ ω⊣, λ⊢ l⊢, r⊢ ω⊣)`,
/// `t ⊣ o = (l⊣ κ⊢, ρ⊣ r⊣, l⊢ κ⊢, ρ⊣ r⊢)`, `t ⊢ o = (l⊢ κ⊣, ρ⊣ r⊣, l⊢ κ⊢, ρ⊢ r⊣)`.
pub fn octuple_act<F: Field>(
    o: &XModTetramultiplier<F>,
    t: &Tetramultiplier<F>,
    op: Op,
    side: Side,
) -> Result<Tetramultiplier<F>> {
    let (rows, cols) = t.shape();
    if t.kind != QuadKind::Relative || o.on_l.shape() != (rows, rows) || o.on_d.shape() != (cols, cols) {
        return Err(Error::ContextMismatch(format!(
            "octuple on dims ({}, {}) acting on a {:?} quadruple of shape {:?}",
            o.on_l.shape().0,
            o.on_d.shape().0,
            t.kind,
            t.shape()
        )));
    }
    let (lam, rho, kap, om) = (&o.on_l, &o.on_l, &o.on_d, &o.on_d);
    Ok(match side {
        // (λ, ω) plays the first factor
        Side::Left => quad_formula(
            QuadKind::Relative,
            [&lam.l_left, &om.r_left, &lam.l_right, &om.r_right],
            t.maps(),
            op,
            None,
        ),
        // (κ, ρ) plays the second factor
        Side::Right => quad_formula(
            QuadKind::Relative,
            t.maps(),
            [&kap.l_left, &rho.r_left, &kap.l_right, &rho.r_right],
            op,
            None,
        ),
    })
}

/// `a ∈ L ↦ (x ↦ a⊣x, x ↦ x⊣a, x ↦ a⊢x, x ↦ x⊢a)`, maps `D → L`.
pub fn embed_l<F: Field>(xm: &CrossedModule<F>, a: &[F]) -> Tetramultiplier<F> {
    let act = &xm.action;
    Tetramultiplier {
        kind: QuadKind::Relative,
        l_left: act.ld.left_multiplication(a),
        r_left: act.dl.right_multiplication(a),
        l_right: act.ld_r.left_multiplication(a),
        r_right: act.dl_r.right_multiplication(a),
    }
}

/// `x ∈ D ↦` the left and right multiplications by `x` on `L` and on `D`.
pub fn embed_d<F: Field>(xm: &CrossedModule<F>, x: &[F]) -> XModTetramultiplier<F> {
    let act = &xm.action;
    let (dl, dr) = (xm.d.product(Op::Left), xm.d.product(Op::Right));
    XModTetramultiplier {
        on_l: Tetramultiplier {
            kind: QuadKind::Single,
            l_left: act.dl.left_multiplication(x),
            r_left: act.ld.right_multiplication(x),
            l_right: act.dl_r.left_multiplication(x),
            r_right: act.ld_r.right_multiplication(x),
        },
        on_d: Tetramultiplier {
            kind: QuadKind::Single,
            l_left: dl.left_multiplication(x),
            r_left: dl.right_multiplication(x),
            l_right: dr.left_multiplication(x),
            r_right: dr.right_multiplication(x),
        },
    }
}

/// `a ∈ L ↦ (x ↦ a⊣x, …)` for a single dialgebra.
pub fn embed_single<F: Field>(l: &Dialgebra<F>, a: &[F]) -> Tetramultiplier<F> {
    let (pl, pr) = (l.product(Op::Left), l.product(Op::Right));
    Tetramultiplier {
        kind: QuadKind::Single,
        l_left: pl.left_multiplication(a),
        r_left: pl.right_multiplication(a),
        l_right: pr.left_multiplication(a),
        r_right: pr.right_multiplication(a),
    }
}

/// Which algebra of a crossed module an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    L,
    D,
}

/// The image of an element under the canonical embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Embedded<F> {
    Quad(Tetramultiplier<F>),
    Oct(XModTetramultiplier<F>),
}

/// Embeds `v` and confirms membership in the corresponding space.
pub fn embed_element<F: Field>(xm: &CrossedModule<F>, which: Part, v: &[F]) -> Result<Embedded<F>> {
    let (dim, space) = match which {
        Part::L => (xm.l.dim(), tetra_dl_space(xm)?),
        Part::D => (xm.d.dim(), xmod_tetra_space(xm)?),
    };
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            context: format!("element of {which:?}"),
            expected: dim,
            found: v.len(),
        });
    }
    match which {
        Part::L => {
            let t = embed_l(xm, v);
            space.quad_coordinates(&t)?;
            Ok(Embedded::Quad(t))
        }
        Part::D => {
            let o = embed_d(xm, v);
            space.oct_coordinates(&o)?;
            Ok(Embedded::Oct(o))
        }
    }
}

/// The candidate actor `(Tetra(D,L), Tetra(L,D,μ), Δ)` with both spaces.
#[derive(Clone, Debug)]
pub struct Actor<F> {
    /// The crossed module whose actor this is.
    pub base: CrossedModule<F>,
    pub dl_space: TetraSpace<F>,
    pub xmod_space: TetraSpace<F>,
    pub xmod: CrossedModule<F>,
}

fn closure(what: String, witness: Vec<usize>) -> impl FnOnce(Error) -> Error {
    move |e| match e {
        Error::NotMember(_) => Error::Closure { what, witness },
        other => other,
    }
}

fn quad_dialgebra<F: Field>(space: &TetraSpace<F>) -> Result<Dialgebra<F>> {
    let basis = space.quads();
    let k = basis.len();
    let mut tensors = Vec::new();
    for op in Op::BOTH {
        let mut t = Bilinear::zeros(k, k, k);
        for i in 0..k {
            for j in 0..k {
                let p = tetra_product(space, &basis[i], &basis[j], op)?;
                let c = space
                    .quad_coordinates(&p)
                    .map_err(closure(format!("{op} product in Tetra({})", space.kind.name()), vec![i, j]))?;
                for (r, v) in c.into_iter().enumerate() {
                    t.set(i, j, r, v);
                }
            }
        }
        tensors.push(t);
    }
    let right = tensors.pop().expect("two products");
    let left = tensors.pop().expect("two products");
    let labels = (1..=k).map(|i| format!("t{i}")).collect();
    Dialgebra::new(labels, left, right)
}

fn oct_dialgebra<F: Field>(space: &TetraSpace<F>) -> Result<Dialgebra<F>> {
    let basis = space.octs();
    let k = basis.len();
    let mut tensors = Vec::new();
    for op in Op::BOTH {
        let mut t = Bilinear::zeros(k, k, k);
        for i in 0..k {
            for j in 0..k {
                let p = xmod_tetra_product(&basis[i], &basis[j], op)?;
                let c = space
                    .oct_coordinates(&p)
                    .map_err(closure(format!("{op} product in Tetra(L,D,μ)"), vec![i, j]))?;
                for (r, v) in c.into_iter().enumerate() {
                    t.set(i, j, r, v);
                }
            }
        }
        tensors.push(t);
    }
    let right = tensors.pop().expect("two products");
    let left = tensors.pop().expect("two products");
    let labels = (1..=k).map(|i| format!("o{i}")).collect();
    Dialgebra::new(labels, left, right)
}

/// Assembles the actor crossed module in the canonical bases of both spaces.
pub fn build_actor<F: Field>(xm: &CrossedModule<F>) -> Result<Actor<F>> {
    require_crossed_module(xm)?;
    let dl_space = tetra_dl_space_unchecked(xm);
    let xmod_space = xmod_tetra_space_unchecked(xm);
    let l = quad_dialgebra(&dl_space)?;
    let d = oct_dialgebra(&xmod_space)?;
    let quads = dl_space.quads();
    let octs = xmod_space.octs();

    let mut delta_cols = Vec::with_capacity(quads.len());
    for (i, t) in quads.iter().enumerate() {
        let image = delta_unchecked(&xm.mu, t);
        delta_cols.push(
            xmod_space
                .oct_coordinates(&image)
                .map_err(closure("Δ of a basis quadruple".into(), vec![i]))?,
        );
    }
    let mu = Matrix::from_columns(octs.len(), &delta_cols)?;

    let (k, q) = (octs.len(), quads.len());
    let mut tensors = Vec::new();
    for op in Op::BOTH {
        let mut ol = Bilinear::zeros(k, q, q);
        let mut lo = Bilinear::zeros(q, k, q);
        for (i, o) in octs.iter().enumerate() {
            for (j, t) in quads.iter().enumerate() {
                let c = dl_space
                    .quad_coordinates(&octuple_act(o, t, op, Side::Left)?)
                    .map_err(closure(format!("octuple {op} quadruple"), vec![i, j]))?;
                for (r, v) in c.into_iter().enumerate() {
                    ol.set(i, j, r, v);
                }
                let c = dl_space
                    .quad_coordinates(&octuple_act(o, t, op, Side::Right)?)
                    .map_err(closure(format!("quadruple {op} octuple"), vec![j, i]))?;
                for (r, v) in c.into_iter().enumerate() {
                    lo.set(j, i, r, v);
                }
            }
        }
        tensors.push((ol, lo));
    }
    let (dl_r, ld_r) = tensors.pop().expect("two products");
    let (dl, ld) = tensors.pop().expect("two products");
    let action = Action::new(dl, ld, dl_r, ld_r)?;
    let xmod = CrossedModule::new(l, d, mu, action)?;
    Ok(Actor {
        base: xm.clone(),
        dl_space,
        xmod_space,
        xmod,
    })
}

impl<F: Field> Actor<F> {
    /// Coordinates of the embedding of `a ∈ L` in the relative space basis.
    pub fn embed_l_coordinates(&self, a: &[F]) -> Result<Vec<F>> {
        self.dl_space.quad_coordinates(&embed_l(&self.base, a))
    }

    pub fn embed_d_coordinates(&self, x: &[F]) -> Result<Vec<F>> {
        self.xmod_space.oct_coordinates(&embed_d(&self.base, x))
    }
}

/// Does the dialgebra have trivial annihilator or satisfy `D⊣D = D = D⊢D`?
pub fn tetra_is_actor<F: Field>(d: &Dialgebra<F>) -> bool {
    annihilator(d).is_zero() || is_perfect(d)
}

/// The map sending each basis element of `b` to the quadruple of its action
/// maps on `d`, as a `4·d.dim² × b.dim` matrix of flattened quadruples.
/// The report flags images outside `Tetra(d)` (`Member`) and failures of
/// multiplicativity (`Hom`); the latter is advisory unless `Tetra(d)` is
/// known to be the actor.
pub fn action_to_tetra_morphism<F: Field>(
    b: &Dialgebra<F>,
    d: &Dialgebra<F>,
    a: &Action<F>,
) -> Result<(Matrix<F>, AxiomReport)> {
    let report = crate::action::check_action(b, d, a)?;
    if !report.is_empty() {
        return Err(Error::ActionCheck(report.sorted()));
    }
    let (k, n) = (b.dim(), d.dim());
    let space = tetra_space(d);
    let image = |x: &[F]| Tetramultiplier {
        kind: QuadKind::Single,
        l_left: a.dl.left_multiplication(x),
        r_left: a.ld.right_multiplication(x),
        l_right: a.dl_r.left_multiplication(x),
        r_right: a.ld_r.right_multiplication(x),
    };
    let images: Vec<Tetramultiplier<F>> = (0..k).map(|i| image(&unit(k, i))).collect();
    let mut report = AxiomReport::new();
    for (i, t) in images.iter().enumerate() {
        if !space.contains_quad(t)? {
            report.push(Violation::new::<F>("Member", vec![i], &[]));
        }
    }
    let mut hom = AxiomReport::new();
    for op in Op::BOTH {
        for i in 0..k {
            for j in 0..k {
                let lhs = image(&b.mul(op, &unit(k, i), &unit(k, j)));
                let rhs = quad_formula(QuadKind::Single, images[i].maps(), images[j].maps(), op, None);
                hom.check("Hom", &[i, j], &crate::linalg::sub_vec(&lhs.flatten(), &rhs.flatten()));
            }
        }
    }
    hom.advisory = !hom.is_empty() && !tetra_is_actor(d);
    report.extend(hom);
    let cols: Vec<Vec<F>> = images.iter().map(|t| t.flatten()).collect();
    Ok((Matrix::from_columns(4 * n * n, &cols)?, report))
}
