//! Weighted levelled-forest generating series and the recursions that
//! determine them.
//!
//! Every series here is a sum over (minimal representatives of) levelled
//! forests of `prod_v g_{level(v)}^{...} / |Aut|`. The exponent of `g0`
//! records the number of trees, `g_k` records the out-degree data of level
//! `k`, and the total degree equals the number of leaves.
//!
//! | series                 | forests counted                                   |
//! |------------------------|---------------------------------------------------|
//! | `tree_a`               | type A trees, constant term 1                     |
//! | `forest_a`             | type A forests, `exp(g0 * tree_a) - 1`            |
//! | `forest_a_halved`      | `forest_a` with `g0 -> g0 / 2` (weak B/D forests) |
//! | `strong_step`          | `shift(forest_a_halved)`                          |
//! | `strong_tree_b`        | type B strong trees                               |
//! | `series_b`             | all type B forests                                |
//! | `strong_tree_d`        | type D strong trees                               |
//! | `series_d`             | all type D forests                                |
//!
//! Degree alone does not give a finite truncation: the degree-1 part of
//! `tree_a` is `sum_k g_k / 2` (a chain of unary vertices above a cherry).
//! Series are therefore computed in the quotient that also kills `g_i` for
//! `i > D`. A monomial without bad gaps has valency at most its degree and no
//! operator used here ever lowers an index, so this loses nothing that a
//! Poincaré polynomial of degree `<= D` can see.

use num_traits::Zero;

use crate::algebra::rational::{integer, rational};
use crate::algebra::{Monomial, Rational, Series, Truncation, MAX_INDEX};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Largest output degree supported by the packed monomial representation.
pub const MAX_DEGREE: u32 = MAX_INDEX;

/// The ring the recursions run in for output degree `degree`: one extra
/// degree (division by `g1` loses the top degree) and variables up to
/// `g_degree`.
pub fn working_truncation(degree: u32) -> Result<Truncation> {
    if degree > MAX_DEGREE {
        return Err(Error::Contract(format!(
            "degree {degree} exceeds the supported maximum {MAX_DEGREE}"
        )));
    }
    Truncation::new(degree + 1, degree.max(1))
}

fn output_truncation(degree: u32) -> Result<Truncation> {
    Truncation::new(degree, degree.max(1))
}

fn to_output(s: &Series, degree: u32) -> Result<Series> {
    let out = output_truncation(degree)?;
    Ok(Series::from_terms(
        out,
        s.terms().iter().filter(|(m, _)| out.admits(m)).cloned(),
    ))
}

/// One application of `P -> (exp(g1 * shift(P)) - 1) / g1`.
pub fn tree_a_step(p: &Series, exec: Execution) -> Result<Series> {
    let trunc = p.truncation();
    let g1 = Series::var(trunc, 1)?;
    let arg = g1.mul_with(&p.shift(), exec)?;
    arg.exp0_with(exec)?.sub(&Series::one(trunc))?.div_var(1)
}

/// One application of `Q -> E + shift(Q) * (1 + E)`.
pub fn strong_tree_b_step(q: &Series, strong_step: &Series, exec: Execution) -> Result<Series> {
    let one_plus = strong_step.add(&Series::one(q.truncation()))?;
    strong_step.add(&q.shift().mul_with(&one_plus, exec)?)
}

/// One application of `Q -> (1 + E) * shift(Q) + 2E - g1`.
pub fn strong_tree_d_step(q: &Series, strong_step: &Series, exec: Execution) -> Result<Series> {
    let trunc = q.truncation();
    let one_plus = strong_step.add(&Series::one(trunc))?;
    let g1 = Series::var(trunc, 1)?;
    one_plus
        .mul_with(&q.shift(), exec)?
        .add(&strong_step.scale(&integer(2)))?
        .sub(&g1)
}

/// Iterates `step` from `start` until two consecutive iterates agree.
///
/// Each pass fixes every term of the next valency, and valency is bounded by
/// the truncation degree, so more than `degree + 2` passes means the map is
/// not the contraction it should be.
fn fixpoint(name: &str, start: Series, step: impl Fn(&Series) -> Result<Series>) -> Result<Series> {
    let limit = start.truncation_degree() + 2;
    let mut current = start;
    for _ in 0..limit {
        let next = step(&current)?;
        if next == current {
            return Ok(current);
        }
        current = next;
    }
    Err(Error::Consistency(format!(
        "{name} did not reach a fixed point within {limit} iterations"
    )))
}

/// Fixed point of [`tree_a_step`] in `trunc`, starting from 1.
pub fn solve_tree_a(trunc: Truncation, exec: Execution) -> Result<Series> {
    fixpoint("tree series (type A)", Series::one(trunc), |p| {
        tree_a_step(p, exec)
    })
}

/// Fixed point of [`strong_tree_b_step`], starting from 0.
pub fn solve_strong_tree_b(strong_step: &Series, exec: Execution) -> Result<Series> {
    fixpoint(
        "strong tree series (type B)",
        Series::zero(strong_step.truncation()),
        |q| strong_tree_b_step(q, strong_step, exec),
    )
}

/// Fixed point of [`strong_tree_d_step`], starting from 0.
pub fn solve_strong_tree_d(strong_step: &Series, exec: Execution) -> Result<Series> {
    fixpoint(
        "strong tree series (type D)",
        Series::zero(strong_step.truncation()),
        |q| strong_tree_d_step(q, strong_step, exec),
    )
}

/// `exp(g0 * tree) - 1`.
pub fn forest_from_tree(tree: &Series, exec: Execution) -> Result<Series> {
    let trunc = tree.truncation();
    Series::var(trunc, 0)?
        .mul_with(tree, exec)?
        .exp0_with(exec)?
        .sub(&Series::one(trunc))
}

/// The converged series in the working ring, before truncation to the
/// output degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkingSeries {
    pub tree_a: Series,
    pub forest_a: Series,
    pub forest_a_halved: Series,
    pub strong_step: Series,
    pub strong_tree_b: Series,
    pub strong_tree_d: Series,
}

/// All forest-counting series truncated at a common degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesBundle {
    pub degree: u32,
    pub tree_a: Series,
    pub forest_a: Series,
    pub forest_a_halved: Series,
    pub strong_step: Series,
    pub strong_tree_b: Series,
    pub series_b: Series,
    pub strong_tree_d: Series,
    pub series_d: Series,
    pub working: WorkingSeries,
}

impl SeriesBundle {
    pub fn compute(degree: u32) -> Result<Self> {
        Self::compute_with(degree, Execution::default())
    }

    pub fn compute_with(degree: u32, exec: Execution) -> Result<Self> {
        let (tree_a, forest_a, forest_a_halved) = type_a_working(degree, exec)?;
        let trunc = tree_a.truncation();
        let strong_step = forest_a_halved.shift();
        let strong_tree_b = solve_strong_tree_b(&strong_step, exec)?;
        let strong_tree_d = solve_strong_tree_d(&strong_step, exec)?;

        let d1 = strong_tree_d.homogeneous(1);
        if !d1.is_zero() {
            return Err(Error::Consistency(format!(
                "strong tree series (type D) has degree-1 part {d1}"
            )));
        }

        let halved_plus_one = forest_a_halved.add(&Series::one(trunc))?;
        let series_b = forest_a_halved.add(&halved_plus_one.mul_with(&strong_tree_b, exec)?)?;
        let series_d = forest_a_halved
            .scale(&integer(2))
            .add(&halved_plus_one.mul_with(&strong_tree_d, exec)?)?;

        Ok(SeriesBundle {
            degree,
            tree_a: to_output(&tree_a, degree)?,
            forest_a: to_output(&forest_a, degree)?,
            forest_a_halved: to_output(&forest_a_halved, degree)?,
            strong_step: to_output(&strong_step, degree)?,
            strong_tree_b: to_output(&strong_tree_b, degree)?,
            series_b: to_output(&series_b, degree)?,
            strong_tree_d: to_output(&strong_tree_d, degree)?,
            series_d: to_output(&series_d, degree)?,
            working: WorkingSeries {
                tree_a,
                forest_a,
                forest_a_halved,
                strong_step,
                strong_tree_b,
                strong_tree_d,
            },
        })
    }
}

// The tree fixpoint is only trustworthy one degree below the working
// truncation; the forest built from it is exact in the whole working ring
// because multiplying by g0 pushes the unreliable top degree out.
fn type_a_working(degree: u32, exec: Execution) -> Result<(Series, Series, Series)> {
    let trunc = working_truncation(degree)?;
    let tree = solve_tree_a(trunc, exec)?;
    let forest = forest_from_tree(&tree, exec)?;
    let halved = forest.scale_var(0, &rational(1, 2));
    Ok((tree, forest, halved))
}

/// The type A tree series, truncated at `degree` (and at `g_degree`).
pub fn compute_tree_series_a(degree: u32) -> Result<Series> {
    let tree = solve_tree_a(working_truncation(degree)?, Execution::default())?;
    to_output(&tree, degree)
}

/// The type A forest series `exp(g0 * tree_a) - 1`.
pub fn compute_forest_series_a(degree: u32) -> Result<Series> {
    let (_, forest, _) = type_a_working(degree, Execution::default())?;
    to_output(&forest, degree)
}

/// The type A forest series with `g0` halved.
pub fn compute_forest_series_a_halved(degree: u32) -> Result<Series> {
    let (_, _, halved) = type_a_working(degree, Execution::default())?;
    to_output(&halved, degree)
}

pub fn compute_strong_tree_series_b(degree: u32) -> Result<Series> {
    Ok(SeriesBundle::compute(degree)?.strong_tree_b)
}

pub fn compute_series_b(degree: u32) -> Result<Series> {
    Ok(SeriesBundle::compute(degree)?.series_b)
}

pub fn compute_strong_tree_series_d(degree: u32) -> Result<Series> {
    Ok(SeriesBundle::compute(degree)?.strong_tree_d)
}

pub fn compute_series_d(degree: u32) -> Result<Series> {
    Ok(SeriesBundle::compute(degree)?.series_d)
}

/// Coefficient lookup by `(index, exponent)` pairs; convenience for tests
/// and reports.
pub fn coefficient_of(s: &Series, pairs: &[(u32, u32)]) -> Result<Rational> {
    Ok(s.coefficient(&Monomial::from_exponents(pairs.iter().copied())?))
}

/// True when every coefficient is strictly positive.
pub fn all_positive(s: &Series) -> bool {
    s.terms()
        .iter()
        .all(|(_, c)| crate::algebra::rational::is_positive(c))
}

/// True when no coefficient is negative.
pub fn all_nonnegative(s: &Series) -> bool {
    s.terms().iter().all(|(_, c)| c >= &Rational::zero())
}
