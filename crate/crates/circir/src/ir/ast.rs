use std::collections::BTreeSet;
use std::fmt;

use super::span::Span;
use super::value::{BinOp, ScalarTy, ScalarValue};

/// A host participating in the program, e.g. `Server` or `Client`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Host(pub String);

impl Host {
    pub fn new(name: impl Into<String>) -> Host {
        Host(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Host {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A variable name. The name `_` is the non-binding wildcard.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub String);

impl Var {
    pub fn new(name: impl Into<String>) -> Var {
        Var(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_wildcard(&self) -> bool {
        self.0 == "_"
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A protocol/format annotation as written in the source, e.g.
/// `Local(Client)`, `MPC(Server, Client)` or `Commit(Server; Client)`.
///
/// For `Commit`, `owner` holds the host before the `;`. The parser expands
/// bare names (`@MPC`) to the full declared host universe, so host lists
/// are always explicit in the AST.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProtocolSpec {
    pub name: String,
    pub owner: Option<Host>,
    pub hosts: Vec<Host>,
    pub span: Span,
}

impl ProtocolSpec {
    pub fn new(name: impl Into<String>, hosts: Vec<Host>) -> ProtocolSpec {
        ProtocolSpec {
            name: name.into(),
            owner: None,
            hosts,
            span: Span::default(),
        }
    }

    pub fn commit(owner: Host, verifiers: Vec<Host>) -> ProtocolSpec {
        ProtocolSpec {
            name: "Commit".to_string(),
            owner: Some(owner),
            hosts: verifiers,
            span: Span::default(),
        }
    }
}

/// Atomic expressions: scalar literals and variable references.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AtomicExpr {
    pub kind: AtomicKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AtomicKind {
    Lit(ScalarValue),
    Var(Var),
}

impl AtomicExpr {
    pub fn lit(s: ScalarValue) -> AtomicExpr {
        AtomicExpr { kind: AtomicKind::Lit(s), span: Span::default() }
    }

    pub fn int(n: i64) -> AtomicExpr {
        AtomicExpr::lit(ScalarValue::Int(n))
    }

    pub fn var(name: impl Into<String>) -> AtomicExpr {
        AtomicExpr { kind: AtomicKind::Var(Var::new(name)), span: Span::default() }
    }

    pub fn as_var(&self) -> Option<&Var> {
        match &self.kind {
            AtomicKind::Var(v) => Some(v),
            AtomicKind::Lit(_) => None,
        }
    }

    pub fn as_lit(&self) -> Option<ScalarValue> {
        match &self.kind {
            AtomicKind::Lit(s) => Some(*s),
            AtomicKind::Var(_) => None,
        }
    }
}

/// An index binder `x < a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexBound {
    pub var: Var,
    pub bound: AtomicExpr,
}

/// Scalar expressions: the computation language of circuit bodies.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarExpr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExprKind {
    Atom(AtomicExpr),
    Lookup { array: Var, indices: Vec<AtomicExpr> },
    BinOp { op: BinOp, lhs: Box<ScalarExpr>, rhs: Box<ScalarExpr> },
    Reduce { op: BinOp, init: Box<ScalarExpr>, bound: IndexBound, body: Box<ScalarExpr> },
}

impl ScalarExpr {
    pub fn atom(a: AtomicExpr) -> ScalarExpr {
        ScalarExpr { kind: ExprKind::Atom(a), span: Span::default() }
    }

    pub fn lookup(array: impl Into<String>, indices: Vec<AtomicExpr>) -> ScalarExpr {
        ScalarExpr {
            kind: ExprKind::Lookup { array: Var::new(array), indices },
            span: Span::default(),
        }
    }

    pub fn binop(op: BinOp, lhs: ScalarExpr, rhs: ScalarExpr) -> ScalarExpr {
        ScalarExpr {
            kind: ExprKind::BinOp { op, lhs: Box::new(lhs), rhs: Box::new(rhs) },
            span: Span::default(),
        }
    }

    pub fn reduce(op: BinOp, init: ScalarExpr, bound: IndexBound, body: ScalarExpr) -> ScalarExpr {
        ScalarExpr {
            kind: ExprKind::Reduce {
                op,
                init: Box::new(init),
                bound,
                body: Box::new(body),
            },
            span: Span::default(),
        }
    }

    /// Infers the scalar element type of the expression given the element
    /// types of variables in scope. Returns None when a variable is
    /// unknown or an operator does not apply; the checker reports those
    /// cases with proper diagnostics.
    pub fn elem_ty(&self, lookup: &dyn Fn(&Var) -> Option<ScalarTy>) -> Option<ScalarTy> {
        match &self.kind {
            ExprKind::Atom(a) => match &a.kind {
                AtomicKind::Lit(s) => Some(s.ty()),
                AtomicKind::Var(v) => lookup(v),
            },
            ExprKind::Lookup { array, .. } => lookup(array),
            ExprKind::BinOp { op, lhs, .. } => op.result_ty(lhs.elem_ty(lookup)?),
            ExprKind::Reduce { body, .. } => body.elem_ty(lookup),
        }
    }
}

fn atomic_free_vars(a: &AtomicExpr, out: &mut BTreeSet<Var>) {
    if let AtomicKind::Var(v) = &a.kind {
        out.insert(v.clone());
    }
}

fn expr_free_vars(e: &ScalarExpr, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
    match &e.kind {
        ExprKind::Atom(a) => {
            if let AtomicKind::Var(v) = &a.kind {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
        }
        ExprKind::Lookup { array, indices } => {
            if !bound.contains(array) {
                out.insert(array.clone());
            }
            for idx in indices {
                if let AtomicKind::Var(v) = &idx.kind {
                    if !bound.contains(v) {
                        out.insert(v.clone());
                    }
                }
            }
        }
        ExprKind::BinOp { lhs, rhs, .. } => {
            expr_free_vars(lhs, bound, out);
            expr_free_vars(rhs, bound, out);
        }
        ExprKind::Reduce { init, bound: ib, body, .. } => {
            // The binder scopes over the body only, not the init or the
            // bound expression.
            expr_free_vars(init, bound, out);
            if let AtomicKind::Var(v) = &ib.bound.kind {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            bound.push(ib.var.clone());
            expr_free_vars(body, bound, out);
            bound.pop();
        }
    }
}

/// Free variables of a scalar expression. The binder of a `reduce` is
/// bound within its body.
pub fn free_vars(e: &ScalarExpr) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    expr_free_vars(e, &mut Vec::new(), &mut out);
    out
}

/// Free variables of a comprehension: binder bounds plus the body with the
/// binders removed.
pub fn comprehension_free_vars(binders: &[IndexBound], body: &ScalarExpr) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    let mut bound: Vec<Var> = Vec::new();
    for b in binders {
        if let AtomicKind::Var(v) = &b.bound.kind {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        }
        bound.push(b.var.clone());
    }
    expr_free_vars(body, &mut bound, &mut out);
    out
}

/// A type: element type plus a list of dimension sizes, each a literal or
/// a size variable. An empty dimension list is the zero-dimensional
/// (scalar) type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Type {
    pub elem: ScalarTy,
    pub dims: Vec<AtomicExpr>,
    pub span: Span,
}

impl Type {
    pub fn scalar(elem: ScalarTy) -> Type {
        Type { elem, dims: Vec::new(), span: Span::default() }
    }

    pub fn array(elem: ScalarTy, dims: Vec<AtomicExpr>) -> Type {
        Type { elem, dims, span: Span::default() }
    }
}

/// Commands appearing on the right of `val` bindings in non-circuit
/// functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Command {
    pub kind: CommandKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CommandKind {
    Atom(AtomicExpr),
    Call { func: String, size_args: Vec<AtomicExpr>, args: Vec<AtomicExpr> },
    Input { host: Host, ty: Type },
    Output { host: Host, value: AtomicExpr },
}

/// One `var@format` binder on the left of a `val` statement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Binding {
    pub var: Var,
    pub format: ProtocolSpec,
}

/// A circuit statement `let x[i < n, ...] = e` materializing one array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircuitStmt {
    pub target: Var,
    pub binders: Vec<IndexBound>,
    pub body: ScalarExpr,
    pub span: Span,
}

/// Statements of non-circuit functions.
///
/// `ComputeLet` is the surface-dialect form that inlines an array
/// comprehension annotated with the computation protocol executing it; the
/// splitter compiles it away and strict IR forbids it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StmtKind {
    Let {
        bindings: Vec<Binding>,
        command: Command,
    },
    ComputeLet {
        binding: Binding,
        binders: Vec<IndexBound>,
        body: ScalarExpr,
    },
    If {
        cond: AtomicExpr,
        then_branch: Vec<Stmt>,
        else_branch: Vec<Stmt>,
    },
}

/// A typed parameter `x: t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Param {
    pub var: Var,
    pub ty: Type,
    pub span: Span,
}

/// A circuit function: straight-line array computation on one protocol,
/// parameterized by sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircuitFun {
    pub name: String,
    pub size_params: Vec<Var>,
    pub protocol: ProtocolSpec,
    pub inputs: Vec<Param>,
    pub outputs: Vec<Param>,
    pub body: Vec<CircuitStmt>,
    pub returns: Vec<Var>,
    pub span: Span,
}

/// A non-circuit function: control flow, I/O, and calls.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fun {
    pub name: String,
    pub size_params: Vec<Var>,
    pub inputs: Vec<Param>,
    pub outputs: Vec<Param>,
    pub body: Vec<Stmt>,
    pub returns: Vec<Var>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Decl {
    Circuit(CircuitFun),
    Fun(Fun),
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Circuit(c) => &c.name,
            Decl::Fun(f) => &f.name,
        }
    }

    pub fn span(&self) -> Span {
        match self {
            Decl::Circuit(c) => c.span,
            Decl::Fun(f) => f.span,
        }
    }
}

/// A whole program: the declared host universe, the declarations, and the
/// entry-point function name (by convention `main`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub hosts: Vec<Host>,
    pub decls: Vec<Decl>,
    pub entry: String,
}

impl Program {
    pub fn decl(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.name() == name)
    }

    pub fn fun(&self, name: &str) -> Option<&Fun> {
        match self.decl(name) {
            Some(Decl::Fun(f)) => Some(f),
            _ => None,
        }
    }

    pub fn circuit(&self, name: &str) -> Option<&CircuitFun> {
        match self.decl(name) {
            Some(Decl::Circuit(c)) => Some(c),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: &str) -> Var {
        Var::new(n)
    }

    #[test]
    fn free_vars_of_lookup() {
        // x[i, j] → {x, i, j}
        let e = ScalarExpr::lookup("x", vec![AtomicExpr::var("i"), AtomicExpr::var("j")]);
        let fv = free_vars(&e);
        assert_eq!(fv, [var("x"), var("i"), var("j")].into_iter().collect());
    }

    #[test]
    fn reduce_binder_is_bound() {
        // reduce(+, 0, i < n, a[i]) → {n, a}
        let e = ScalarExpr::reduce(
            BinOp::Add,
            ScalarExpr::atom(AtomicExpr::int(0)),
            IndexBound { var: var("i"), bound: AtomicExpr::var("n") },
            ScalarExpr::lookup("a", vec![AtomicExpr::var("i")]),
        );
        assert_eq!(free_vars(&e), [var("n"), var("a")].into_iter().collect());
    }

    #[test]
    fn literal_has_no_free_vars() {
        let e = ScalarExpr::atom(AtomicExpr::int(5));
        assert!(free_vars(&e).is_empty());
    }

    #[test]
    fn reduce_binder_not_bound_in_init() {
        // reduce(+, i, i < n, a[i]): the init's i is free.
        let e = ScalarExpr::reduce(
            BinOp::Add,
            ScalarExpr::atom(AtomicExpr::var("i")),
            IndexBound { var: var("i"), bound: AtomicExpr::var("n") },
            ScalarExpr::lookup("a", vec![AtomicExpr::var("i")]),
        );
        assert!(free_vars(&e).contains(&var("i")));
    }

    #[test]
    fn spans_do_not_affect_equality() {
        let mut a = AtomicExpr::int(1);
        let b = AtomicExpr::int(1);
        a.span = Span::new(10, 11, 3, 4);
        assert_eq!(a, b);
    }
}
