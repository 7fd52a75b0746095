//! Brute-force reference solver for absorbing birth-death walks.
//!
//! Everything here is computed by setting up the first-step linear system
//! over the interior states and solving it with dense Gaussian elimination.
//! No closed forms are used anywhere, so the results are an independent
//! oracle for the analytic crate. This crate is test support only; it is
//! consumed exclusively through dev-dependencies.

/// Absorption ("win") probability for a ±1 walk started at 0 with an upper
/// absorbing barrier at `+n` and a lower one at `-m`, up-step probability `p`.
///
/// Solves h(i) = p·h(i+1) + (1-p)·h(i-1) over the n+m-1 interior states with
/// h(n) = 1, h(-m) = 0, and returns h(0).
pub fn win_probability(p: f64, n: usize, m: usize) -> f64 {
    assert!(n >= 1 && m >= 1, "both barriers must be at least one step away");
    assert!(p > 0.0 && p < 1.0, "p must lie strictly inside (0, 1)");
    let dim = n + m - 1;
    let mut matrix = interior_matrix(p, n, m);
    // Only the state adjacent to the winning barrier picks up a constant term.
    let mut rhs = vec![0.0; dim];
    rhs[dim - 1] = p;
    let solution = solve_dense(&mut matrix, &mut rhs);
    solution[m - 1]
}

/// Expected number of steps until absorption at either barrier, from 0.
///
/// Solves k(i) = 1 + p·k(i+1) + (1-p)·k(i-1) with k(n) = k(-m) = 0.
pub fn expected_steps(p: f64, n: usize, m: usize) -> f64 {
    assert!(n >= 1 && m >= 1, "both barriers must be at least one step away");
    assert!(p > 0.0 && p < 1.0, "p must lie strictly inside (0, 1)");
    let mut matrix = interior_matrix(p, n, m);
    let mut rhs = vec![1.0; n + m - 1];
    let solution = solve_dense(&mut matrix, &mut rhs);
    solution[m - 1]
}

/// (I - Q) for the interior states -m+1 ..= n-1, indexed bottom to top.
fn interior_matrix(p: f64, n: usize, m: usize) -> Vec<Vec<f64>> {
    let dim = n + m - 1;
    let q = 1.0 - p;
    let mut matrix = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        matrix[i][i] = 1.0;
        if i + 1 < dim {
            matrix[i][i + 1] = -p;
        }
        if i > 0 {
            matrix[i][i - 1] = -q;
        }
    }
    matrix
}

/// Dense Gaussian elimination with partial pivoting; consumes its inputs.
fn solve_dense(matrix: &mut [Vec<f64>], rhs: &mut [f64]) -> Vec<f64> {
    let dim = rhs.len();
    for col in 0..dim {
        let pivot = (col..dim)
            .max_by(|&a, &b| {
                matrix[a][col]
                    .abs()
                    .partial_cmp(&matrix[b][col].abs())
                    .unwrap()
            })
            .unwrap();
        matrix.swap(col, pivot);
        rhs.swap(col, pivot);
        assert!(matrix[col][col] != 0.0, "singular interior system");
        let (pivot_rows, rest) = matrix.split_at_mut(col + 1);
        let pivot_row = &pivot_rows[col];
        for (offset, row) in rest.iter_mut().enumerate() {
            let factor = row[col] / pivot_row[col];
            if factor == 0.0 {
                continue;
            }
            for (entry, &pivot_entry) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *entry -= factor * pivot_entry;
            }
            rhs[col + 1 + offset] -= factor * rhs[col];
        }
    }
    let mut solution = vec![0.0; dim];
    for row in (0..dim).rev() {
        let eliminated: f64 = matrix[row][row + 1..]
            .iter()
            .zip(&solution[row + 1..])
            .map(|(coefficient, known)| coefficient * known)
            .sum();
        solution[row] = (rhs[row] - eliminated) / matrix[row][row];
    }
    solution
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_interior_state_is_exact() {
        // n = m = 1: the start is the only interior state, so h(0) = p and
        // the walk always absorbs in exactly one step.
        assert!((win_probability(0.37, 1, 1) - 0.37).abs() < 1e-15);
        assert!((expected_steps(0.37, 1, 1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hand_solved_two_state_chain() {
        // n = 2, m = 1: h(0) = p·h(1), h(1) = p + (1-p)·h(0)
        // => h(0) = p^2 / (1 - p(1-p)).
        let p = 0.6;
        let expected = p * p / (1.0 - p * (1.0 - p));
        assert!((win_probability(p, 2, 1) - expected).abs() < 1e-14);
    }

    #[test]
    fn symmetric_fair_walk() {
        for nm in 1..=10 {
            let got = win_probability(0.5, nm, nm);
            assert!(
                (got - 0.5).abs() < 1e-12,
                "fair walk with equal barriers must win half the time, got {got}"
            );
        }
    }

    #[test]
    fn fair_walk_steps_are_product_of_barriers() {
        // Classical result: expected absorption time n·m for p = 1/2.
        for (n, m) in [(1, 1), (2, 3), (5, 5), (8, 2)] {
            let got = expected_steps(0.5, n, m);
            let want = (n * m) as f64;
            assert!((got - want).abs() < 1e-9, "n={n} m={m}: {got} vs {want}");
        }
    }
}
