//! Multi-sorted instantiation of the five dialgebra axioms.
//!
//! Every family of mixed equalities used in the crate (action axioms,
//! compatibility of two actions, the defining identities of tetramultipliers)
//! is obtained here from the axioms `Di1`–`Di5` by assigning a sort to each of
//! the three variables. Products between sorts are resolved through a
//! [`Context`]; a missing rule is an error, never an implicit zero.
//!
//! A context may also contain one *multiplier* sort whose products are unknown
//! linear maps. Evaluating an identity then yields a linear system in the
//! coordinates of those maps, which is how every tetramultiplier space is
//! computed.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{unit, Matrix};
use crate::report::AxiomReport;
use crate::scalar::Field;
use crate::tensor::Bilinear;

/// The two products: `Left` is `⊣`, `Right` is `⊢`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Left,
    Right,
}

impl Op {
    pub const BOTH: [Op; 2] = [Op::Left, Op::Right];

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Left => "⊣",
            Op::Right => "⊢",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::Left => "left",
            Op::Right => "right",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Di1,
    Di2,
    Di3,
    Di4,
    Di5,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::Di1, Axiom::Di2, Axiom::Di3, Axiom::Di4, Axiom::Di5];

    /// Both sides over the variables 0, 1, 2.
    pub fn sides(self) -> (Expr, Expr) {
        use Op::{Left as L, Right as R};
        let (a, b, c, d) = match self {
            // (x ⊣ y) ⊣ z = x ⊣ (y ⊢ z)
            Axiom::Di1 => (L, L, L, R),
            // (x ⊣ y) ⊣ z = x ⊣ (y ⊣ z)
            Axiom::Di2 => (L, L, L, L),
            // (x ⊢ y) ⊣ z = x ⊢ (y ⊣ z)
            Axiom::Di3 => (R, L, R, L),
            // (x ⊣ y) ⊢ z = x ⊢ (y ⊢ z)
            Axiom::Di4 => (L, R, R, R),
            // (x ⊢ y) ⊢ z = x ⊢ (y ⊢ z)
            Axiom::Di5 => (R, R, R, R),
        };
        let lhs = Expr::prod(b, Expr::prod(a, Expr::Var(0), Expr::Var(1)), Expr::Var(2));
        let rhs = Expr::prod(c, Expr::Var(0), Expr::prod(d, Expr::Var(1), Expr::Var(2)));
        (lhs, rhs)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Binary expression tree over numbered variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    Prod(Op, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn prod(op: Op, a: Expr, b: Expr) -> Expr {
        Expr::Prod(op, Box::new(a), Box::new(b))
    }

    fn render<S: fmt::Display>(&self, sorts: &[S], out: &mut String, top: bool) {
        match self {
            Expr::Var(v) => out.push_str(&format!("{}{}", sorts[*v], v)),
            Expr::Prod(op, a, b) => {
                if !top {
                    out.push('(');
                }
                a.render(sorts, out, false);
                out.push_str(&format!(" {op} "));
                b.render(sorts, out, false);
                if !top {
                    out.push(')');
                }
            }
        }
    }
}

/// One axiom with a sort attached to each variable position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityTemplate<S> {
    pub axiom: Axiom,
    pub lhs: Expr,
    pub rhs: Expr,
    pub sorts: [S; 3],
}

impl<S: Copy + Eq + fmt::Display> IdentityTemplate<S> {
    /// `Di1` when all sorts agree, otherwise `mixed(Di1,D·L·L)`.
    pub fn label(&self) -> String {
        if self.sorts.iter().all(|s| *s == self.sorts[0]) {
            self.axiom.to_string()
        } else {
            format!(
                "mixed({},{}·{}·{})",
                self.axiom, self.sorts[0], self.sorts[1], self.sorts[2]
            )
        }
    }

    /// Human-readable form, e.g. `(T0 ⊣ L1) ⊣ L2 = T0 ⊣ (L1 ⊢ L2)`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.lhs.render(&self.sorts, &mut s, true);
        s.push_str(" = ");
        self.rhs.render(&self.sorts, &mut s, true);
        s
    }
}

/// All instances of `Di1`–`Di5` whose variables carry the given sort
/// multiplicities. Sort sequences are enumerated lexicographically in the
/// order the sorts are listed, and the axiom varies fastest within a sequence.
pub fn generate_mixed_identities<S: Copy + Eq>(counts: &[(S, usize)]) -> Result<Vec<IdentityTemplate<S>>> {
    let total: usize = counts.iter().map(|(_, c)| c).sum();
    if total != 3 {
        return Err(Error::InvalidSortCounts(total));
    }
    let mut remaining: Vec<usize> = counts.iter().map(|(_, c)| *c).collect();
    let mut sequences = Vec::new();
    let mut current = Vec::with_capacity(3);
    permutations(&mut remaining, &mut current, &mut sequences);

    let mut out = Vec::with_capacity(sequences.len() * 5);
    for seq in sequences {
        let sorts = [counts[seq[0]].0, counts[seq[1]].0, counts[seq[2]].0];
        for axiom in Axiom::ALL {
            let (lhs, rhs) = axiom.sides();
            out.push(IdentityTemplate {
                axiom,
                lhs,
                rhs,
                sorts,
            });
        }
    }
    Ok(out)
}

fn permutations(remaining: &mut [usize], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == 3 {
        out.push(current.clone());
        return;
    }
    for s in 0..remaining.len() {
        if remaining[s] == 0 {
            continue;
        }
        remaining[s] -= 1;
        current.push(s);
        permutations(remaining, current, out);
        current.pop();
        remaining[s] += 1;
    }
}

/// Sorts used throughout the crate. `T` is the multiplier sort whose
/// products are unknown linear maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    L,
    D,
    P,
    M,
    T,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A block of unknown coordinates holding a linear map row-major:
/// entry `(r, c)` of the map lives at `offset + r * cols + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub offset: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Block {
    /// The unknown map applied to a known vector, as a matrix over the unknowns.
    pub fn apply<F: Field>(&self, v: &[F], n_unknowns: usize) -> Matrix<F> {
        assert_eq!(v.len(), self.cols);
        let mut m = Matrix::zeros(self.rows, n_unknowns);
        for r in 0..self.rows {
            for (c, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    m.set(r, self.offset + r * self.cols + c, x.clone());
                }
            }
        }
        m
    }

    pub fn end(&self) -> usize {
        self.offset + self.rows * self.cols
    }
}

pub(crate) enum Rule<'a, F> {
    Product { tensor: &'a Bilinear<F>, out: Sort },
    /// `T op X`: an unknown map `X → out` applied to the right operand.
    MapOfRight { block: Block, out: Sort },
    /// `X op T`: an unknown map `X → out` applied to the left operand.
    MapOfLeft { block: Block, out: Sort },
}

/// Value of a subexpression: a known vector, or a vector depending linearly
/// on the unknowns (`out_dim × n_unknowns`).
enum Value<F> {
    Known(Vec<F>),
    Linear(Matrix<F>),
    Multiplier,
}

/// A total association `(sort, op, sort) → rule` together with the dimension
/// of every sort.
pub(crate) struct Context<'a, F> {
    dims: BTreeMap<Sort, usize>,
    rules: BTreeMap<(Sort, Op, Sort), Rule<'a, F>>,
    n_unknowns: usize,
}

impl<'a, F: Field> Context<'a, F> {
    pub fn new() -> Self {
        Context {
            dims: BTreeMap::new(),
            rules: BTreeMap::new(),
            n_unknowns: 0,
        }
    }

    pub fn sort(&mut self, s: Sort, dim: usize) -> &mut Self {
        self.dims.insert(s, dim);
        self
    }

    pub fn product(&mut self, a: Sort, op: Op, b: Sort, tensor: &'a Bilinear<F>, out: Sort) -> &mut Self {
        debug_assert_eq!(Some(&tensor.left_dim()), self.dims.get(&a));
        debug_assert_eq!(Some(&tensor.right_dim()), self.dims.get(&b));
        self.rules.insert((a, op, b), Rule::Product { tensor, out });
        self
    }

    /// Declares the unknown maps `t op ·` (`map_of_right`) and `· op t`
    /// (`map_of_left`) from sort `on` to sort `out`, allocating coordinates.
    pub fn unknown(&mut self, op: Op, on: Sort, out: Sort, side_of_t: TSide) -> Block {
        let block = Block {
            offset: self.n_unknowns,
            rows: self.dims[&out],
            cols: self.dims[&on],
        };
        self.n_unknowns = block.end();
        match side_of_t {
            TSide::Left => self.rules.insert((Sort::T, op, on), Rule::MapOfRight { block, out }),
            TSide::Right => self.rules.insert((on, op, Sort::T), Rule::MapOfLeft { block, out }),
        };
        block
    }

    pub fn n_unknowns(&self) -> usize {
        self.n_unknowns
    }

    fn rule(&self, a: Sort, op: Op, b: Sort) -> Result<&Rule<'a, F>> {
        self.rules
            .get(&(a, op, b))
            .ok_or_else(|| Error::MissingRule(format!("{a} {op} {b}")))
    }

    fn eval(&self, e: &Expr, sorts: &[Sort; 3], idx: &[usize; 3]) -> Result<(Value<F>, Sort)> {
        match e {
            Expr::Var(v) => {
                let s = sorts[*v];
                if s == Sort::T {
                    Ok((Value::Multiplier, s))
                } else {
                    Ok((Value::Known(unit(self.dims[&s], idx[*v])), s))
                }
            }
            Expr::Prod(op, a, b) => {
                let (va, sa) = self.eval(a, sorts, idx)?;
                let (vb, sb) = self.eval(b, sorts, idx)?;
                match (self.rule(sa, *op, sb)?, va, vb) {
                    (Rule::Product { tensor, out }, Value::Known(x), Value::Known(y)) => {
                        Ok((Value::Known(tensor.apply(&x, &y)), *out))
                    }
                    (Rule::Product { tensor, out }, Value::Linear(x), Value::Known(y)) => {
                        Ok((Value::Linear(tensor.right_multiplication(&y).mul(&x)), *out))
                    }
                    (Rule::Product { tensor, out }, Value::Known(x), Value::Linear(y)) => {
                        Ok((Value::Linear(tensor.left_multiplication(&x).mul(&y)), *out))
                    }
                    (Rule::MapOfRight { block, out }, Value::Multiplier, Value::Known(y)) => {
                        Ok((Value::Linear(block.apply(&y, self.n_unknowns)), *out))
                    }
                    (Rule::MapOfLeft { block, out }, Value::Known(x), Value::Multiplier) => {
                        Ok((Value::Linear(block.apply(&x, self.n_unknowns)), *out))
                    }
                    _ => Err(Error::MissingRule(format!(
                        "{sa} {op} {sb} (operand shapes not supported)"
                    ))),
                }
            }
        }
    }

    /// Basis-index tuples for the non-multiplier positions of a template.
    fn instances(&self, sorts: &[Sort; 3]) -> Vec<[usize; 3]> {
        let ranges: Vec<usize> = sorts
            .iter()
            .map(|s| if *s == Sort::T { 1 } else { self.dims[s] })
            .collect();
        let mut out = Vec::new();
        for i in 0..ranges[0] {
            for j in 0..ranges[1] {
                for k in 0..ranges[2] {
                    out.push([i, j, k]);
                }
            }
        }
        out
    }

    /// Evaluates identities without unknowns on every basis triple.
    pub fn check(&self, templates: &[IdentityTemplate<Sort>], report: &mut AxiomReport) -> Result<()> {
        for t in templates {
            let label = t.label();
            for idx in self.instances(&t.sorts) {
                let (l, _) = self.eval(&t.lhs, &t.sorts, &idx)?;
                let (r, _) = self.eval(&t.rhs, &t.sorts, &idx)?;
                match (l, r) {
                    (Value::Known(l), Value::Known(r)) => {
                        let diff = crate::linalg::sub_vec(&l, &r);
                        report.check(&label, &idx, &diff);
                    }
                    _ => return Err(Error::MissingRule(format!("{label}: identity involves unknowns"))),
                }
            }
        }
        Ok(())
    }

    /// The linear constraints on the unknowns imposed by the templates, one
    /// row per coordinate of every instance. Duplicate rows are kept.
    pub fn constraints(&self, templates: &[IdentityTemplate<Sort>]) -> Result<Vec<Matrix<F>>> {
        let mut out = Vec::new();
        for t in templates {
            for idx in self.instances(&t.sorts) {
                let (l, _) = self.eval(&t.lhs, &t.sorts, &idx)?;
                let (r, _) = self.eval(&t.rhs, &t.sorts, &idx)?;
                match (l, r) {
                    (Value::Linear(l), Value::Linear(r)) => out.push(l.sub(&r)),
                    _ => {
                        return Err(Error::MissingRule(format!(
                            "{}: expected exactly one multiplier on each side",
                            t.label()
                        )))
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Which side of the product the multiplier sort occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TSide {
    Left,
    Right,
}
