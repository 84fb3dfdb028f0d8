//! Search trace: one event per solver action on a node, with the box
//! before and after. Events render as aligned text rows or JSON objects.

use crate::boxes::IntervalBox;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscardCause {
    /// The bound inherited from the parent already exceeds the incumbent.
    Inherited,
    /// The bound recomputed on the contracted box exceeds the incumbent.
    Fresh,
    /// Contraction emptied the box.
    Empty,
    /// No component is wide enough to split further.
    Atomic,
}

impl DiscardCause {
    pub fn label(&self) -> &'static str {
        match self {
            DiscardCause::Inherited => "inherited",
            DiscardCause::Fresh => "fresh",
            DiscardCause::Empty => "empty",
            DiscardCause::Atomic => "atomic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    /// A node leaves the queue; the value is its inherited bound.
    Extract,
    /// The node's lower bound after evaluating the objective.
    LowerBound,
    /// Projection of the numbered constraint.
    Hc4(usize),
    /// Catalog contraction of the numbered constraint.
    Clutch(usize),
    /// The incumbent cut on the objective.
    ObjCut,
    /// The incumbent improved; the value is the new best objective.
    UpperBound,
    /// The node split on the given variable.
    Branch(usize),
    /// The node left the search.
    Discard(DiscardCause),
}

/// Box state after the action: contraction yields one box, branching two.
#[derive(Clone, Debug, PartialEq)]
pub enum After {
    One(IntervalBox),
    Two(IntervalBox, IntervalBox),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceEvent {
    pub node: u64,
    pub phase: Phase,
    pub before: IntervalBox,
    pub after: After,
    pub value: Option<f64>,
}

fn value_text(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v}")
    }
}

fn endpoint_json(v: f64) -> Value {
    if v == f64::INFINITY {
        json!("inf")
    } else if v == f64::NEG_INFINITY {
        json!("-inf")
    } else {
        json!(v)
    }
}

fn box_json(b: &IntervalBox) -> Value {
    if b.is_empty() {
        return json!("empty");
    }
    Value::Array(
        b.components()
            .iter()
            .map(|c| Value::Array(vec![endpoint_json(c.lo()), endpoint_json(c.hi())]))
            .collect(),
    )
}

impl TraceEvent {
    fn phase_text(&self, var_names: &[String]) -> String {
        match self.phase {
            Phase::Extract => "EXTRACT".into(),
            Phase::LowerBound => "LB".into(),
            Phase::Hc4(n) => format!("HC4(c{n})"),
            Phase::Clutch(n) => format!("CLUTCH(c{n})"),
            Phase::ObjCut => "OBJ-CUT".into(),
            Phase::UpperBound => "UB".into(),
            Phase::Branch(v) => format!("BRANCH({})", var_names[v]),
            Phase::Discard(c) => format!("DISCARD({})", c.label()),
        }
    }

    /// One pipe-separated row: node, phase, box before, box after, and the
    /// associated value when the phase carries one.
    pub fn text_line(&self, var_names: &[String]) -> String {
        let after = match &self.after {
            After::One(b) => b.to_string(),
            After::Two(lo, hi) => format!("{lo} u {hi}"),
        };
        let mut line = format!(
            "n{} | {} | {} | {}",
            self.node,
            self.phase_text(var_names),
            self.before,
            after
        );
        if let Some(v) = self.value {
            line.push_str(&format!(" | {}", value_text(v)));
        }
        line
    }

    pub fn json_value(&self, var_names: &[String]) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("node".into(), json!(self.node));
        let phase = match self.phase {
            Phase::Extract => "extract",
            Phase::LowerBound => "lb",
            Phase::Hc4(_) => "hc4",
            Phase::Clutch(_) => "clutch",
            Phase::ObjCut => "objcut",
            Phase::UpperBound => "ub",
            Phase::Branch(_) => "branch",
            Phase::Discard(_) => "discard",
        };
        obj.insert("phase".into(), json!(phase));
        match self.phase {
            Phase::Hc4(n) | Phase::Clutch(n) => {
                obj.insert("constraint".into(), json!(n));
            }
            Phase::Branch(v) => {
                obj.insert("var".into(), json!(var_names[v]));
            }
            Phase::Discard(c) => {
                obj.insert("cause".into(), json!(c.label()));
            }
            _ => {}
        }
        obj.insert("before".into(), box_json(&self.before));
        let after = match &self.after {
            After::One(b) if b.is_empty() => json!("empty"),
            After::One(b) => Value::Array(vec![box_json(b)]),
            After::Two(lo, hi) => Value::Array(vec![box_json(lo), box_json(hi)]),
        };
        obj.insert("after".into(), after);
        if let Some(v) = self.value {
            obj.insert("value".into(), endpoint_json(v));
        }
        Value::Object(obj)
    }
}
