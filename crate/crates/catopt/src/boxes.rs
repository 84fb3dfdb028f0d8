//! Axis-aligned boxes, one interval per decision variable.

use crate::interval::Interval;
use std::fmt;

/// The Cartesian product of one interval per variable. A box is empty as
/// soon as any component is empty; all empty boxes of a dimension are the
/// same set and compare equal.
#[derive(Clone, Debug)]
pub struct IntervalBox {
    comps: Vec<Interval>,
}

impl IntervalBox {
    pub fn new(comps: Vec<Interval>) -> IntervalBox {
        assert!(!comps.is_empty(), "box needs at least one component");
        IntervalBox { comps }
    }

    /// The empty box of the given dimension.
    pub fn empty(dim: usize) -> IntervalBox {
        IntervalBox::new(vec![Interval::EMPTY; dim])
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comp(&self, i: usize) -> Interval {
        self.comps[i]
    }

    pub fn set(&mut self, i: usize, v: Interval) {
        self.comps[i] = v;
    }

    pub fn components(&self) -> &[Interval] {
        &self.comps
    }

    pub fn is_empty(&self) -> bool {
        self.comps.iter().any(Interval::is_empty)
    }

    pub fn intersect(&self, other: &IntervalBox) -> IntervalBox {
        assert_eq!(self.dim(), other.dim());
        IntervalBox::new(
            self.comps.iter().zip(&other.comps).map(|(a, b)| a.intersect(b)).collect(),
        )
    }

    pub fn contains_point(&self, p: &[f64]) -> bool {
        assert_eq!(self.dim(), p.len());
        self.comps.iter().zip(p).all(|(c, &v)| c.contains(v))
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.comps.iter().map(Interval::midpoint).collect()
    }

    /// Splits component `i` at its midpoint into the lower and upper halves.
    pub fn split(&self, i: usize) -> (IntervalBox, IntervalBox) {
        let c = self.comps[i];
        let m = c.midpoint();
        let mut lower = self.clone();
        let mut upper = self.clone();
        lower.set(i, Interval::new(c.lo(), m));
        upper.set(i, Interval::new(m, c.hi()));
        (lower, upper)
    }
}

impl PartialEq for IntervalBox {
    fn eq(&self, other: &IntervalBox) -> bool {
        self.dim() == other.dim()
            && (self.is_empty() && other.is_empty() || self.comps == other.comps)
    }
}

impl std::ops::Index<usize> for IntervalBox {
    type Output = Interval;
    fn index(&self, i: usize) -> &Interval {
        &self.comps[i]
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "EMPTY");
        }
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
