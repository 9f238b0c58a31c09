use num_traits::Zero;

use super::Rational;
use crate::error::{Error, Result};

/// One exact solution of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub values: Vec<Rational>,
    /// Number of free variables; each was set to zero.
    pub free_variables: usize,
}

/// Solves `rows * x = rhs` over Q by reduced row echelon elimination.
///
/// Underdetermined systems get their free variables set to zero. Returns
/// [`Error::Infeasible`] when the system is inconsistent.
pub fn solve_linear_exact(rows: &[Vec<Rational>], rhs: &[Rational]) -> Result<Solution> {
    if rows.len() != rhs.len() {
        return Err(Error::domain(format!(
            "{} equations but {} right-hand sides",
            rows.len(),
            rhs.len()
        )));
    }
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::domain("coefficient rows have unequal length"));
    }

    // Augmented matrix.
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..width {
        let Some(found) = (next_row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(next_row, found);
        let inv = m[next_row][col].recip();
        for v in m[next_row][col..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[next_row].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == next_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == m.len() {
            break;
        }
    }

    if m[next_row..].iter().any(|row| !row[width].is_zero()) {
        return Err(Error::Infeasible);
    }

    let mut values = vec![Rational::zero(); width];
    for (row, &col) in pivots.iter().enumerate() {
        values[col] = m[row][width].clone();
    }
    Ok(Solution {
        values,
        free_variables: width - pivots.len(),
    })
}
