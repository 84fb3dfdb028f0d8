//! Branch-and-bound minimization over boxes with catalog choices.
//!
//! Each node holds a box. Processing a node runs the catalog contraction it
//! inherited from branching, evaluates a lower bound, contracts to a fixed
//! point, probes for a better incumbent, tightens the incumbent cut, and
//! either discards the node or splits it. Every action emits a trace event.

use crate::boxes::IntervalBox;
use crate::contract::{clutch, fixed_point, Contractor};
use crate::interval::Interval;
use crate::problem::Problem;
use crate::trace::{After, DiscardCause, Phase, TraceEvent};
use std::collections::BinaryHeap;

pub const DEFAULT_EPSILON: f64 = 1e-6;
/// Components at most this wide are not split further.
pub const ATOMIC_WIDTH: f64 = 1e-9;
/// Largest constraint violation accepted when certifying a probe point.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-8;

/// Node extraction order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exploration {
    /// Smallest lower bound first; ties go to the older node.
    Best,
    /// Deepest first; ties go to the younger node.
    Depth,
    /// Shallowest first; ties go to the older node.
    Breadth,
}

/// Split variable selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branching {
    /// Largest product of objective derivative magnitude and width; falls
    /// back to the widest component when every score is zero.
    Smear,
    /// Widest component; ties go to the smallest index.
    Largest,
    /// Cycles through the variables by node depth, skipping narrow ones.
    RoundRobin,
}

/// How upper bounds are searched inside a node.
#[derive(Clone, Debug, PartialEq)]
pub enum UbStrategy {
    /// Fix each catalog to the item nearest the box midpoint, then contract
    /// the rest and test the midpoint. Skipped entirely when any catalog
    /// has two items at exactly the nearest distance.
    NearestProbe,
    /// Try item combinations exhaustively (up to `cap` of them), keeping
    /// the best feasible point.
    Enumerate { cap: usize },
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Required improvement margin: the search discards regions that cannot
    /// beat the incumbent by more than this.
    pub epsilon: f64,
    pub exploration: Exploration,
    pub branching: Branching,
    /// Variables to split first, in order, while they remain wide enough;
    /// the branching rule takes over afterwards.
    pub branch_override: Vec<usize>,
    pub ub: UbStrategy,
    /// Stop after processing this many nodes.
    pub max_nodes: Option<u64>,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            epsilon: DEFAULT_EPSILON,
            exploration: Exploration::Best,
            branching: Branching::Smear,
            branch_override: Vec::new(),
            ub: UbStrategy::NearestProbe,
            max_nodes: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// The queue was exhausted with an incumbent: it is optimal within
    /// epsilon down to the reported lower bound.
    Optimal,
    /// The queue was exhausted without any feasible point and without
    /// unresolved atomic boxes.
    Infeasible,
    /// The node budget ran out, or atomic boxes below the branching
    /// resolution were left without an incumbent.
    Limit,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Discards {
    /// Parent bound already at or above the incumbent.
    pub inherited: u64,
    /// Recomputed bound at or above the incumbent.
    pub fresh: u64,
    /// Contraction proved the box infeasible.
    pub empty: u64,
    /// Too narrow to split further.
    pub atomic: u64,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub status: Status,
    /// Best objective value found; infinite when no feasible point exists.
    pub objective: f64,
    pub point: Option<Vec<f64>>,
    /// Chosen item per catalog (0-based), aligned with `problem.catalogs`;
    /// empty when there is no incumbent.
    pub items: Vec<usize>,
    /// Certified lower bound on the global optimum.
    pub lower_bound: f64,
    /// Nodes extracted from the queue.
    pub nodes: u64,
    pub discards: Discards,
}

struct Node {
    id: u64,
    bx: IntervalBox,
    lb: f64,
    depth: u64,
    pending_clutch: bool,
}

/// Heap entry ordered so that `BinaryHeap::pop` yields the node the chosen
/// exploration strategy wants next.
struct Queued {
    primary: f64,
    secondary: u64,
    node: Node,
}

impl Queued {
    fn new(exploration: Exploration, node: Node) -> Queued {
        let (primary, secondary) = match exploration {
            Exploration::Best => (node.lb, node.id),
            Exploration::Depth => (-(node.depth as f64), u64::MAX - node.id),
            Exploration::Breadth => (node.depth as f64, node.id),
        };
        Queued { primary, secondary, node }
    }
}

impl PartialEq for Queued {
    fn eq(&self, other: &Queued) -> bool {
        self.primary.total_cmp(&other.primary).is_eq() && self.secondary == other.secondary
    }
}
impl Eq for Queued {}
impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Queued) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Queued {
    fn cmp(&self, other: &Queued) -> std::cmp::Ordering {
        // reversed: the max-heap must pop the smallest key
        other
            .primary
            .total_cmp(&self.primary)
            .then_with(|| other.secondary.cmp(&self.secondary))
    }
}

/// Runs the search, passing every trace event to `on_event` as it happens.
pub fn solve(
    problem: &Problem,
    options: &Options,
    mut on_event: impl FnMut(TraceEvent),
) -> Solution {
    let m = problem.constraints.len();
    let ncat = problem.catalogs.len();
    let objcut = m + ncat;
    let mut contractors: Vec<Contractor> = Vec::with_capacity(objcut + 1);
    for (i, c) in problem.constraints.iter().enumerate() {
        contractors.push(Contractor::Hc4 {
            number: i + 1,
            body: c.body.clone(),
            bounds: c.bounds,
            scope: c.body.vars(),
        });
    }
    for (j, b) in problem.catalogs.iter().enumerate() {
        contractors.push(Contractor::Clutch {
            number: problem.catalog_constraint_number(j),
            binding: j,
            scope: b.vars.clone(),
        });
    }
    // Inactive until the first incumbent: an empty scope keeps it asleep.
    contractors.push(Contractor::ObjCut {
        body: problem.objective.clone(),
        bounds: Interval::WHOLE,
        scope: Vec::new(),
    });
    let phase_of = |ci: usize| {
        if ci == objcut {
            Phase::ObjCut
        } else if ci < m {
            Phase::Hc4(ci + 1)
        } else {
            Phase::Clutch(ci + 1)
        }
    };

    let mut best_f = f64::INFINITY;
    let mut best_point: Option<Vec<f64>> = None;
    let mut best_items: Vec<usize> = Vec::new();
    let mut discards = Discards::default();
    let mut nodes: u64 = 0;
    let mut atomic_lb = f64::INFINITY;
    let mut next_id: u64 = 2;
    let mut limit_hit = false;

    let mut heap = BinaryHeap::new();
    heap.push(Queued::new(
        options.exploration,
        Node {
            id: 1,
            bx: problem.domains.clone(),
            lb: f64::NEG_INFINITY,
            depth: 0,
            pending_clutch: false,
        },
    ));

    'search: loop {
        if options.max_nodes.is_some_and(|l| nodes >= l) && !heap.is_empty() {
            limit_hit = true;
            break;
        }
        let Some(q) = heap.pop() else { break };
        let node = q.node;
        nodes += 1;
        let mut b = node.bx;
        on_event(TraceEvent {
            node: node.id,
            phase: Phase::Extract,
            before: b.clone(),
            after: After::One(b.clone()),
            value: Some(node.lb),
        });
        let discard = |cause: DiscardCause, bx: &IntervalBox, on_event: &mut dyn FnMut(TraceEvent)| {
            on_event(TraceEvent {
                node: node.id,
                phase: Phase::Discard(cause),
                before: bx.clone(),
                after: After::One(bx.clone()),
                value: None,
            });
        };
        if b.is_empty() {
            discards.empty += 1;
            discard(DiscardCause::Empty, &b, &mut on_event);
            continue;
        }
        if best_f - options.epsilon < node.lb {
            discards.inherited += 1;
            discard(DiscardCause::Inherited, &b, &mut on_event);
            continue;
        }
        if node.pending_clutch {
            for j in 0..ncat {
                let after = clutch(&problem.catalogs[j], &b);
                if after != b {
                    on_event(TraceEvent {
                        node: node.id,
                        phase: Phase::Clutch(problem.catalog_constraint_number(j)),
                        before: b.clone(),
                        after: After::One(after.clone()),
                        value: None,
                    });
                }
                if after.is_empty() {
                    discards.empty += 1;
                    discard(DiscardCause::Empty, &after, &mut on_event);
                    continue 'search;
                }
                b = after;
            }
        }
        let lb = node.lb.max(problem.objective.eval_interval(&b).lo());
        on_event(TraceEvent {
            node: node.id,
            phase: Phase::LowerBound,
            before: b.clone(),
            after: After::One(b.clone()),
            value: Some(lb),
        });
        if best_f - options.epsilon < lb {
            discards.fresh += 1;
            discard(DiscardCause::Fresh, &b, &mut on_event);
            continue;
        }

        // Contract to a fixed point, probe for a better incumbent, and
        // refilter under the tightened cut until nothing improves.
        let mut first_pass = true;
        let emptied = loop {
            let awake: Vec<usize> = if first_pass {
                let mut v: Vec<usize> = (0..m + ncat).collect();
                if best_f < f64::INFINITY {
                    v.push(objcut);
                }
                v
            } else {
                vec![objcut]
            };
            first_pass = false;
            let node_id = node.id;
            let (after, _) = fixed_point(problem, &contractors, &b, &awake, |ci, bb, aa| {
                on_event(TraceEvent {
                    node: node_id,
                    phase: phase_of(ci),
                    before: bb.clone(),
                    after: After::One(aa.clone()),
                    value: None,
                });
            });
            b = after;
            if b.is_empty() {
                break true;
            }
            let found = match &options.ub {
                UbStrategy::NearestProbe => nearest_probe(problem, &contractors[..m], &b),
                UbStrategy::Enumerate { cap } => {
                    enumerate_probe(problem, &contractors[..m], &b, *cap)
                }
            };
            match found {
                Some((point, f, items)) if f < best_f => {
                    best_f = f;
                    best_point = Some(point);
                    best_items = items;
                    on_event(TraceEvent {
                        node: node.id,
                        phase: Phase::UpperBound,
                        before: b.clone(),
                        after: After::One(b.clone()),
                        value: Some(f),
                    });
                    contractors[objcut] = Contractor::ObjCut {
                        body: problem.objective.clone(),
                        bounds: Interval::new(f64::NEG_INFINITY, best_f - options.epsilon),
                        scope: problem.objective.vars(),
                    };
                }
                _ => break false,
            }
        };
        if emptied {
            discards.empty += 1;
            discard(DiscardCause::Empty, &IntervalBox::empty(b.dim()), &mut on_event);
            continue;
        }

        match pick_branch_var(problem, options, &b, node.depth) {
            None => {
                discards.atomic += 1;
                atomic_lb = atomic_lb.min(lb);
                discard(DiscardCause::Atomic, &b, &mut on_event);
            }
            Some(v) => {
                let (lower, upper) = b.split(v);
                on_event(TraceEvent {
                    node: node.id,
                    phase: Phase::Branch(v),
                    before: b.clone(),
                    after: After::Two(lower.clone(), upper.clone()),
                    value: None,
                });
                for bx in [upper, lower] {
                    heap.push(Queued::new(
                        options.exploration,
                        Node {
                            id: next_id,
                            bx,
                            lb,
                            depth: node.depth + 1,
                            pending_clutch: true,
                        },
                    ));
                    next_id += 1;
                }
            }
        }
    }

    let queue_lb = heap
        .iter()
        .map(|q| q.node.lb)
        .fold(f64::INFINITY, f64::min);
    let (status, lower_bound) = if limit_hit {
        (Status::Limit, best_f.min(queue_lb).min(atomic_lb))
    } else if best_f < f64::INFINITY {
        (Status::Optimal, best_f.min(atomic_lb))
    } else if atomic_lb < f64::INFINITY {
        (Status::Limit, atomic_lb)
    } else {
        (Status::Infeasible, f64::INFINITY)
    };
    Solution {
        status,
        objective: best_f,
        point: best_point,
        items: best_items,
        lower_bound,
        nodes,
        discards,
    }
}

/// Runs the search and collects the trace.
pub fn solve_collect(problem: &Problem, options: &Options) -> (Solution, Vec<TraceEvent>) {
    let mut events = Vec::new();
    let solution = solve(problem, options, |e| events.push(e));
    (solution, events)
}

/// Fixes every catalog to its midpoint-nearest item and certifies the
/// resulting point. Returns the point, its objective value, and the items.
fn nearest_probe(
    problem: &Problem,
    regular: &[Contractor],
    b: &IntervalBox,
) -> Option<(Vec<f64>, f64, Vec<usize>)> {
    let mid = b.midpoint();
    let mut chosen = Vec::with_capacity(problem.catalogs.len());
    for binding in &problem.catalogs {
        let inside = binding.catalog.items_in(b, &binding.vars);
        let mut best: Option<(usize, f64)> = None;
        let mut tied = false;
        for &it in &inside {
            let d2: f64 = binding
                .vars
                .iter()
                .enumerate()
                .map(|(j, &v)| {
                    let d = binding.catalog.item(it)[j] - mid[v];
                    d * d
                })
                .sum();
            match best {
                None => best = Some((it, d2)),
                Some((bit, bd2)) => {
                    if d2 < bd2 {
                        best = Some((it, d2));
                        tied = false;
                    } else if d2 == bd2 && binding.catalog.item(it) != binding.catalog.item(bit) {
                        // a tie between duplicate rows is immaterial; only
                        // distinct items make "the nearest" ambiguous
                        tied = true;
                    }
                }
            }
        }
        let (it, _) = best?;
        if tied {
            return None;
        }
        chosen.push(it);
    }
    probe_with_items(problem, regular, b, &chosen)
}

/// Tries item combinations in lexicographic order, up to `cap` probes, and
/// keeps the best certified point.
fn enumerate_probe(
    problem: &Problem,
    regular: &[Contractor],
    b: &IntervalBox,
    cap: usize,
) -> Option<(Vec<f64>, f64, Vec<usize>)> {
    let per: Vec<Vec<usize>> = problem
        .catalogs
        .iter()
        .map(|binding| binding.catalog.items_in(b, &binding.vars))
        .collect();
    if per.iter().any(Vec::is_empty) {
        return None;
    }
    if per.is_empty() {
        return probe_with_items(problem, regular, b, &[]);
    }
    let mut combo = vec![0usize; per.len()];
    let mut best: Option<(Vec<f64>, f64, Vec<usize>)> = None;
    for _ in 0..cap {
        let items: Vec<usize> = combo.iter().zip(&per).map(|(&i, list)| list[i]).collect();
        if let Some((p, f, its)) = probe_with_items(problem, regular, b, &items) {
            if best.as_ref().is_none_or(|(_, bf, _)| f < *bf) {
                best = Some((p, f, its));
            }
        }
        let mut j = 0;
        loop {
            combo[j] += 1;
            if combo[j] < per[j].len() {
                break;
            }
            combo[j] = 0;
            j += 1;
            if j == per.len() {
                return best;
            }
        }
    }
    best
}

/// Pins the catalog variables to the given items, contracts the remaining
/// variables under the regular constraints only, and certifies the midpoint.
fn probe_with_items(
    problem: &Problem,
    regular: &[Contractor],
    b: &IntervalBox,
    items: &[usize],
) -> Option<(Vec<f64>, f64, Vec<usize>)> {
    let mut pb = b.clone();
    for (binding, &it) in problem.catalogs.iter().zip(items) {
        for (j, &v) in binding.vars.iter().enumerate() {
            let val = binding.catalog.item(it)[j];
            if !pb.comp(v).contains(val) {
                return None;
            }
            pb.set(v, Interval::point(val));
        }
    }
    let awake: Vec<usize> = (0..regular.len()).collect();
    let (pb, _) = fixed_point(problem, regular, &pb, &awake, |_, _, _| {});
    if pb.is_empty() {
        return None;
    }
    let point = pb.midpoint();
    if problem
        .constraints
        .iter()
        .any(|c| c.violation(&point) > FEASIBILITY_TOLERANCE)
    {
        return None;
    }
    let f = problem.objective.eval_point(&point);
    if !f.is_finite() {
        return None;
    }
    Some((point, f, items.to_vec()))
}

fn widest(b: &IntervalBox) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for i in 0..b.dim() {
        let w = b.comp(i).width();
        if w > ATOMIC_WIDTH && best.is_none_or(|(_, bw)| w > bw) {
            best = Some((i, w));
        }
    }
    best.map(|(i, _)| i)
}

fn pick_branch_var(
    problem: &Problem,
    options: &Options,
    b: &IntervalBox,
    depth: u64,
) -> Option<usize> {
    let n = b.dim();
    for &v in &options.branch_override {
        if b.comp(v).width() > ATOMIC_WIDTH {
            return Some(v);
        }
    }
    match options.branching {
        Branching::Largest => widest(b),
        Branching::RoundRobin => {
            let start = (depth % n as u64) as usize;
            (0..n)
                .map(|k| (start + k) % n)
                .find(|&v| b.comp(v).width() > ATOMIC_WIDTH)
        }
        Branching::Smear => {
            let (_, grad) = problem.objective.gradient_interval(b);
            let mut best: Option<(usize, f64)> = None;
            for (i, g) in grad.iter().enumerate() {
                let w = b.comp(i).width();
                if w <= ATOMIC_WIDTH {
                    continue;
                }
                let score = g.magnitude() * w;
                if best.is_none_or(|(_, s)| score > s) {
                    best = Some((i, score));
                }
            }
            match best {
                Some((_, 0.0)) => widest(b),
                Some((i, _)) => Some(i),
                None => None,
            }
        }
    }
}
