//! Contractors: operators that shrink a box without losing any feasible
//! point, and the propagation loop that runs them to a joint fixed point.

use crate::boxes::IntervalBox;
use crate::expr::Expr;
use crate::interval::{project_inverse, ElemOp, Interval};
use crate::problem::{CatalogBinding, Problem};
use std::collections::VecDeque;

/// Relative width reduction below which a contraction is not worth
/// propagating further.
pub const PROPAGATION_THRESHOLD: f64 = 1e-3;

/// Forward-backward constraint projection: contracts `b` against
/// `body(x) in bounds`. Returns the canonical empty box when the constraint
/// is proven unsatisfiable over `b`.
pub fn hc4_revise(body: &Expr, bounds: &Interval, b: &IntervalBox) -> IntervalBox {
    let tape = forward(body, b);
    let mut out = b.clone();
    if backward(body, &tape, *bounds, &mut out).is_none() || out.is_empty() {
        return IntervalBox::empty(b.dim());
    }
    out
}

/// Per-node value ranges from the forward evaluation sweep.
struct Tape {
    val: Interval,
    kids: Vec<Tape>,
}

fn forward(e: &Expr, b: &IntervalBox) -> Tape {
    match e {
        Expr::Const(c) => Tape { val: Interval::point(*c), kids: vec![] },
        Expr::Var(i) => Tape { val: b.comp(*i), kids: vec![] },
        Expr::Neg(a) => {
            let t = forward(a, b);
            Tape { val: t.val.neg(), kids: vec![t] }
        }
        Expr::Add(a, c) => {
            let (ta, tc) = (forward(a, b), forward(c, b));
            Tape { val: ta.val.add(&tc.val), kids: vec![ta, tc] }
        }
        Expr::Sub(a, c) => {
            let (ta, tc) = (forward(a, b), forward(c, b));
            Tape { val: ta.val.sub(&tc.val), kids: vec![ta, tc] }
        }
        Expr::Mul(a, c) => {
            let (ta, tc) = (forward(a, b), forward(c, b));
            Tape { val: ta.val.mul(&tc.val), kids: vec![ta, tc] }
        }
        Expr::Div(a, c) => {
            let (ta, tc) = (forward(a, b), forward(c, b));
            Tape { val: ta.val.div(&tc.val), kids: vec![ta, tc] }
        }
        Expr::Pow(a, k) => {
            let t = forward(a, b);
            Tape { val: t.val.pow(*k), kids: vec![t] }
        }
        Expr::Sqrt(a) => {
            let t = forward(a, b);
            Tape { val: t.val.sqrt(), kids: vec![t] }
        }
    }
}

/// Pushes the contracted target range back down the tree, narrowing box
/// components at the variable leaves. Returns None once anything empties.
fn backward(e: &Expr, tape: &Tape, target: Interval, b: &mut IntervalBox) -> Option<()> {
    let t = tape.val.intersect(&target);
    if t.is_empty() {
        return None;
    }
    match e {
        Expr::Const(_) => Some(()),
        Expr::Var(i) => {
            let narrowed = b.comp(*i).intersect(&t);
            if narrowed.is_empty() {
                return None;
            }
            b.set(*i, narrowed);
            Some(())
        }
        Expr::Neg(a) => {
            let p = project_inverse(ElemOp::Neg, t, &[tape.kids[0].val]);
            backward(a, &tape.kids[0], p[0], b)
        }
        Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) | Expr::Div(x, y) => {
            let op = match e {
                Expr::Add(..) => ElemOp::Add,
                Expr::Sub(..) => ElemOp::Sub,
                Expr::Mul(..) => ElemOp::Mul,
                _ => ElemOp::Div,
            };
            let p = project_inverse(op, t, &[tape.kids[0].val, tape.kids[1].val]);
            backward(x, &tape.kids[0], p[0], b)?;
            backward(y, &tape.kids[1], p[1], b)
        }
        Expr::Pow(a, k) => {
            let p = project_inverse(ElemOp::Pow(*k), t, &[tape.kids[0].val]);
            backward(a, &tape.kids[0], p[0], b)
        }
        Expr::Sqrt(a) => {
            let p = project_inverse(ElemOp::Sqrt, t, &[tape.kids[0].val]);
            backward(a, &tape.kids[0], p[0], b)
        }
    }
}

/// Catalog contractor: the bound variables must jointly match one item, so
/// each bound component shrinks to the hull of the surviving items'
/// property values. No item inside the box means no feasible point.
pub fn clutch(binding: &CatalogBinding, b: &IntervalBox) -> IntervalBox {
    let items = binding.catalog.items_in(b, &binding.vars);
    if items.is_empty() {
        return IntervalBox::empty(b.dim());
    }
    let mut out = b.clone();
    for (j, &v) in binding.vars.iter().enumerate() {
        let mut hull = Interval::EMPTY;
        for &it in &items {
            hull = hull.hull(&Interval::point(binding.catalog.item(it)[j]));
        }
        out.set(v, hull);
    }
    out
}

/// One contractor in the propagation loop.
#[derive(Clone, Debug)]
pub enum Contractor {
    /// Forward-backward projection of constraint `number` (1-based display
    /// numbering shared with catalog constraints).
    Hc4 { number: usize, body: Expr, bounds: Interval, scope: Vec<usize> },
    /// Catalog contractor for `problem.catalogs[binding]`.
    Clutch { number: usize, binding: usize, scope: Vec<usize> },
    /// Upper-bound cut on the objective, rebuilt whenever the incumbent
    /// improves.
    ObjCut { body: Expr, bounds: Interval, scope: Vec<usize> },
}

impl Contractor {
    pub fn scope(&self) -> &[usize] {
        match self {
            Contractor::Hc4 { scope, .. }
            | Contractor::Clutch { scope, .. }
            | Contractor::ObjCut { scope, .. } => scope,
        }
    }

    /// Wake-up rank: catalog contractors run before projections, and the
    /// objective cut runs last.
    fn rank(&self) -> u8 {
        match self {
            Contractor::Clutch { .. } => 0,
            Contractor::Hc4 { .. } => 1,
            Contractor::ObjCut { .. } => 2,
        }
    }

    pub fn apply(&self, problem: &Problem, b: &IntervalBox) -> IntervalBox {
        match self {
            Contractor::Hc4 { body, bounds, .. } | Contractor::ObjCut { body, bounds, .. } => {
                hc4_revise(body, bounds, b)
            }
            Contractor::Clutch { binding, .. } => clutch(&problem.catalogs[*binding], b),
        }
    }
}

/// True when the shrink from `before` to `after` is worth propagating.
fn significant(before: &Interval, after: &Interval, tau: f64) -> bool {
    if after.is_empty() {
        return !before.is_empty();
    }
    let wb = before.width();
    let wa = after.width();
    if wa >= wb {
        return false;
    }
    if wb == f64::INFINITY {
        return true;
    }
    (wb - wa) > tau * wb
}

/// Runs the contractors to a joint fixed point with FIFO revival: applying
/// a contractor that significantly narrows some variables wakes every
/// contractor whose scope touches them. `awake` seeds the queue. The
/// observer sees every application that changed the box at all, and the
/// returned count tallies every application.
pub fn fixed_point(
    problem: &Problem,
    contractors: &[Contractor],
    start: &IntervalBox,
    awake: &[usize],
    mut observe: impl FnMut(usize, &IntervalBox, &IntervalBox),
) -> (IntervalBox, usize) {
    let mut b = start.clone();
    let mut queued = vec![false; contractors.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &i in awake {
        if !queued[i] {
            queued[i] = true;
            queue.push_back(i);
        }
    }
    let mut applications = 0usize;
    while let Some(ci) = queue.pop_front() {
        queued[ci] = false;
        let before = b.clone();
        let after = contractors[ci].apply(problem, &before);
        applications += 1;
        if after != before {
            observe(ci, &before, &after);
        }
        if after.is_empty() {
            return (IntervalBox::empty(b.dim()), applications);
        }
        let changed: Vec<usize> = (0..b.dim())
            .filter(|&v| significant(&before.comp(v), &after.comp(v), PROPAGATION_THRESHOLD))
            .collect();
        b = after;
        if changed.is_empty() {
            continue;
        }
        let mut woken: Vec<usize> = (0..contractors.len())
            .filter(|&i| !queued[i])
            .filter(|&i| contractors[i].scope().iter().any(|v| changed.contains(v)))
            .collect();
        woken.sort_by_key(|&i| (contractors[i].rank(), i));
        for i in woken {
            queued[i] = true;
            queue.push_back(i);
        }
    }
    (b, applications)
}
