//! Exact linear feasibility over the rationals.
//!
//! Systems mix strict (`a·x < b`) and non-strict (`a·x ≤ b`) inequalities.
//! Feasibility is decided by Fourier–Motzkin elimination, last variable first,
//! and a witness is rebuilt by back-substitution. The dimensions used here are
//! tiny (issue spaces of dimension one to three), which keeps the elimination
//! blow-up irrelevant in practice.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::model::{Rational, SpatialPoint};

/// `coefficients · x < constant` when `strict`, otherwise `≤`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearInequality {
    pub coefficients: Vec<Rational>,
    pub constant: Rational,
    pub strict: bool,
}

impl LinearInequality {
    pub fn new(coefficients: Vec<Rational>, constant: Rational, strict: bool) -> Self {
        LinearInequality { coefficients, constant, strict }
    }

    /// `0 ≤ 0`, the seed face covering all of space.
    pub fn trivial(dimension: usize) -> Self {
        LinearInequality::new(vec![Rational::zero(); dimension], Rational::zero(), false)
    }

    pub fn dimension(&self) -> usize {
        self.coefficients.len()
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coefficients.iter().zip(x).fold(Rational::zero(), |acc, (a, v)| acc + a * v)
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        if self.strict {
            lhs < self.constant
        } else {
            lhs <= self.constant
        }
    }

    /// The complementary half-space: `a·x ≤ b` becomes `-a·x < -b` and vice versa.
    pub fn negated(&self) -> Self {
        LinearInequality {
            coefficients: self.coefficients.iter().map(|a| -a).collect(),
            constant: -&self.constant,
            strict: !self.strict,
        }
    }

    fn is_constant(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    /// Holds when all coefficients vanish: `0 < b` or `0 ≤ b`.
    fn constant_holds(&self) -> bool {
        if self.strict {
            self.constant.is_positive()
        } else {
            !self.constant.is_negative()
        }
    }

    /// Scales so that the first nonzero coefficient is ±1.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coefficients.iter().find(|a| !a.is_zero()).map(|a| a.abs()) {
            if !lead.is_one() {
                for a in &mut self.coefficients {
                    *a /= &lead;
                }
                self.constant /= &lead;
            }
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalitySystem {
    pub dimension: usize,
    pub inequalities: Vec<LinearInequality>,
}

impl InequalitySystem {
    pub fn new(dimension: usize, inequalities: Vec<LinearInequality>) -> Self {
        debug_assert!(inequalities.iter().all(|i| i.dimension() == dimension));
        InequalitySystem { dimension, inequalities }
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        self.inequalities.iter().all(|i| i.is_satisfied_by(x))
    }

    pub fn feasible(&self) -> Option<SpatialPoint> {
        feasible(self)
    }
}

/// Normalizes, drops tautologies and keeps only the tightest of parallel
/// constraints. Returns `None` as soon as a constant constraint fails.
fn reduce(rows: impl IntoIterator<Item = LinearInequality>) -> Option<Vec<LinearInequality>> {
    let mut out: Vec<LinearInequality> = Vec::new();
    let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
    for row in rows {
        if row.is_constant() {
            if !row.constant_holds() {
                return None;
            }
            continue;
        }
        let row = row.normalized();
        match index.get(&row.coefficients) {
            Some(&at) => {
                let kept = &mut out[at];
                if row.constant < kept.constant || (row.constant == kept.constant && row.strict) {
                    kept.constant = row.constant;
                    kept.strict = row.strict;
                }
            }
            None => {
                index.insert(row.coefficients.clone(), out.len());
                out.push(row);
            }
        }
    }
    Some(out)
}

/// Projects out variable `var`; every row must only involve variables `0..=var`.
fn eliminate(rows: &[LinearInequality], var: usize) -> Option<Vec<LinearInequality>> {
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut kept = Vec::new();
    for row in rows {
        let a = &row.coefficients[var];
        if a.is_positive() {
            upper.push(row);
        } else if a.is_negative() {
            lower.push(row);
        } else {
            kept.push(row.clone());
        }
    }
    let mut combined = kept;
    for up in &upper {
        let up_scale = up.coefficients[var].clone();
        for lo in &lower {
            let lo_scale = -&lo.coefficients[var];
            let coefficients = up
                .coefficients
                .iter()
                .zip(&lo.coefficients)
                .map(|(u, l)| u * &lo_scale + l * &up_scale)
                .collect::<Vec<_>>();
            debug_assert!(coefficients[var].is_zero());
            combined.push(LinearInequality {
                coefficients,
                constant: &up.constant * &lo_scale + &lo.constant * &up_scale,
                strict: up.strict || lo.strict,
            });
        }
    }
    reduce(combined)
}

/// Picks a value for `x[var]` satisfying every row given `x[..var]`.
fn choose(rows: &[LinearInequality], var: usize, x: &[Rational]) -> Rational {
    let mut lower: Option<(Rational, bool)> = None;
    let mut upper: Option<(Rational, bool)> = None;
    for row in rows {
        let a = &row.coefficients[var];
        if a.is_zero() {
            continue;
        }
        let residual = (0..var).fold(row.constant.clone(), |acc, j| acc - &row.coefficients[j] * &x[j]);
        let bound = residual / a;
        let slot = if a.is_positive() { &mut upper } else { &mut lower };
        let tighter = match slot {
            None => true,
            Some((current, current_strict)) => {
                let better = if a.is_positive() { bound < *current } else { bound > *current };
                better || (bound == *current && row.strict && !*current_strict)
            }
        };
        if tighter {
            *slot = Some((bound, row.strict));
        }
    }
    match (lower, upper) {
        (Some((lo, _)), Some((hi, _))) if lo == hi => lo,
        (Some((lo, _)), Some((hi, _))) => (lo + hi) / Rational::from_integer(2.into()),
        (Some((lo, _)), None) => lo + Rational::one(),
        (None, Some((hi, _))) => hi - Rational::one(),
        (None, None) => Rational::zero(),
    }
}

/// Returns a point satisfying every inequality of `system`, or `None` if the
/// system is infeasible. Deterministic for a fixed input order; the empty
/// system yields the origin.
pub fn feasible(system: &InequalitySystem) -> Option<SpatialPoint> {
    let d = system.dimension;
    // levels[k] only involves variables 0..k
    let mut levels = vec![Vec::new(); d + 1];
    levels[d] = reduce(system.inequalities.iter().cloned())?;
    for var in (0..d).rev() {
        levels[var] = eliminate(&levels[var + 1], var)?;
    }
    debug_assert!(levels[0].is_empty());

    let mut x = vec![Rational::zero(); d];
    for var in 0..d {
        x[var] = choose(&levels[var + 1], var, &x);
    }
    assert!(
        system.is_satisfied_by(&x),
        "elimination produced a point violating the system: {x:?}"
    );
    Some(SpatialPoint(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::integer;

    fn ineq(coeffs: &[i64], constant: i64, strict: bool) -> LinearInequality {
        LinearInequality::new(coeffs.iter().map(|&c| integer(c)).collect(), integer(constant), strict)
    }

    #[test]
    fn closed_unit_interval() {
        let sys = InequalitySystem::new(1, vec![ineq(&[1], 1, false), ineq(&[-1], 0, false)]);
        let w = feasible(&sys).unwrap();
        assert!(w.0[0] >= integer(0) && w.0[0] <= integer(1));
    }

    #[test]
    fn contradictory_strict_pair() {
        let sys = InequalitySystem::new(1, vec![ineq(&[1], 0, true), ineq(&[-1], 0, true)]);
        assert_eq!(feasible(&sys), None);
    }

    #[test]
    fn touching_closed_pair_is_a_point() {
        let sys = InequalitySystem::new(1, vec![ineq(&[1], 0, false), ineq(&[-1], 0, false)]);
        assert_eq!(feasible(&sys).unwrap().0, vec![integer(0)]);
    }

    #[test]
    fn empty_system_is_origin() {
        assert_eq!(feasible(&InequalitySystem::new(3, vec![])), Some(SpatialPoint::origin(3)));
    }

    #[test]
    fn trivial_seed_and_false_constant() {
        let sys = InequalitySystem::new(2, vec![LinearInequality::trivial(2)]);
        assert!(feasible(&sys).is_some());
        let sys = InequalitySystem::new(2, vec![ineq(&[0, 0], -1, false)]);
        assert_eq!(feasible(&sys), None);
        let sys = InequalitySystem::new(2, vec![ineq(&[0, 0], 0, true)]);
        assert_eq!(feasible(&sys), None);
    }

    #[test]
    fn open_triangle() {
        // x > 0, y > 0, x + y < 1
        let sys = InequalitySystem::new(
            2,
            vec![ineq(&[-1, 0], 0, true), ineq(&[0, -1], 0, true), ineq(&[1, 1], 1, true)],
        );
        assert!(feasible(&sys).is_some());
        // x ≥ 0, y ≥ 0, x + y < 0
        let sys = InequalitySystem::new(
            2,
            vec![ineq(&[-1, 0], 0, false), ineq(&[0, -1], 0, false), ineq(&[1, 1], 0, true)],
        );
        assert_eq!(feasible(&sys), None);
    }

    #[test]
    fn unbounded_directions_offset_by_one() {
        let sys = InequalitySystem::new(2, vec![ineq(&[-1, 0], -5, false)]);
        let w = feasible(&sys).unwrap();
        assert_eq!(w.0, vec![integer(6), integer(0)]);
    }

    #[test]
    fn deterministic() {
        let sys = InequalitySystem::new(
            2,
            vec![ineq(&[1, 2], 3, true), ineq(&[-3, 1], 2, false), ineq(&[0, -1], 4, false)],
        );
        assert_eq!(feasible(&sys), feasible(&sys.clone()));
    }
}
