//! Optimization problem definition: bounded variables, an objective to
//! minimize, relational constraints, and catalog bindings that tie groups of
//! variables to the rows of a component table.

use crate::boxes::IntervalBox;
use crate::catalog::Catalog;
use crate::expr::Expr;
use crate::interval::Interval;
use thiserror::Error;

/// A relational constraint: the body expression must take a value inside
/// `bounds`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub body: Expr,
    pub bounds: Interval,
}

impl Constraint {
    /// How far a point violates the constraint; 0 when satisfied.
    pub fn violation(&self, p: &[f64]) -> f64 {
        let v = self.body.eval_point(p);
        if v.is_nan() {
            return f64::INFINITY;
        }
        (self.bounds.lo() - v).max(v - self.bounds.hi()).max(0.0)
    }
}

/// Ties one variable per catalog property to the catalog rows: the bound
/// variables must jointly equal some item's property values.
#[derive(Clone, Debug)]
pub struct CatalogBinding {
    pub catalog: Catalog,
    pub vars: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub var_names: Vec<String>,
    /// Marks variables declared as item properties.
    pub prop_vars: Vec<bool>,
    pub domains: IntervalBox,
    pub objective: Expr,
    pub constraints: Vec<Constraint>,
    pub catalogs: Vec<CatalogBinding>,
}

#[derive(Debug, Error, PartialEq)]
pub enum ProblemError {
    #[error("variable `{0}` has an unbounded domain; give it finite bounds")]
    UnboundedDomain(String),
    #[error("catalog `{name}` has {props} properties but binds {vars} variables")]
    BindingArity { name: String, props: usize, vars: usize },
    #[error("variable `{0}` is bound to more than one catalog")]
    BoundTwice(String),
    #[error("variable `{0}` is bound to a catalog but not declared with `prop`")]
    BindingNonProp(String),
    #[error("`prop` variable `{0}` is not bound to any catalog")]
    UnboundProp(String),
    #[error("catalog `{0}` binds the same variable twice")]
    RepeatedBindingVar(String),
}

impl Problem {
    /// Validates the cross-references between variables, domains, and
    /// catalog bindings.
    pub fn validate(&self) -> Result<(), ProblemError> {
        for (i, name) in self.var_names.iter().enumerate() {
            let d = self.domains.comp(i);
            if d.lo().is_infinite() || d.hi().is_infinite() {
                return Err(ProblemError::UnboundedDomain(name.clone()));
            }
        }
        let mut bound = vec![false; self.var_names.len()];
        for b in &self.catalogs {
            if b.vars.len() != b.catalog.num_props() {
                return Err(ProblemError::BindingArity {
                    name: b.catalog.name.clone(),
                    props: b.catalog.num_props(),
                    vars: b.vars.len(),
                });
            }
            for (i, &v) in b.vars.iter().enumerate() {
                if b.vars[..i].contains(&v) {
                    return Err(ProblemError::RepeatedBindingVar(b.catalog.name.clone()));
                }
                if bound[v] {
                    return Err(ProblemError::BoundTwice(self.var_names[v].clone()));
                }
                bound[v] = true;
                if !self.prop_vars[v] {
                    return Err(ProblemError::BindingNonProp(self.var_names[v].clone()));
                }
            }
        }
        for (i, (&p, b)) in self.prop_vars.iter().zip(&bound).enumerate() {
            if p && !b {
                return Err(ProblemError::UnboundProp(self.var_names[i].clone()));
            }
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    /// 1-based display number of the first catalog constraint; regular
    /// constraints are numbered from 1 in declaration order and catalog
    /// constraints continue the sequence.
    pub fn catalog_constraint_number(&self, catalog_idx: usize) -> usize {
        self.constraints.len() + catalog_idx + 1
    }
}
