use std::collections::BTreeSet;

use num_traits::Zero;

use super::DiffScheme;
use crate::error::{Error, Result};
use crate::exact::{factorial, pow, solve_linear_exact, Rational};

/// Solves the order-n Vandermonde conditions `sum A_i a_i^j = n! delta_jn`
/// (`j = 0..=n`) for coefficients on the given nodes.
///
/// With more than `n + 1` nodes the free coefficients are set to zero,
/// which leaves the minimal scheme on the first `n + 1` nodes in the order
/// given.
pub fn grd_from_nodes(nodes: &[Rational], n: u32) -> Result<DiffScheme> {
    if nodes.len() <= n as usize {
        return Err(Error::domain(format!(
            "order {n} needs at least {} nodes, got {}",
            n + 1,
            nodes.len()
        )));
    }
    let distinct: BTreeSet<_> = nodes.iter().collect();
    if distinct.len() != nodes.len() {
        return Err(Error::domain("nodes must be distinct"));
    }

    let rows: Vec<Vec<Rational>> = (0..=n)
        .map(|j| nodes.iter().map(|a| pow(a, j as i64)).collect())
        .collect();
    let rhs: Vec<Rational> = (0..=n)
        .map(|j| if j == n { factorial(n) } else { Rational::zero() })
        .collect();

    let solution = match solve_linear_exact(&rows, &rhs) {
        Ok(s) => s,
        Err(Error::Infeasible) => {
            return Err(Error::Inconsistent(
                "Vandermonde system on distinct nodes reported infeasible".into(),
            ))
        }
        Err(e) => return Err(e),
    };
    DiffScheme::from_terms(solution.values.into_iter().zip(nodes.iter().cloned()))
}
