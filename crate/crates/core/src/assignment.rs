//! Dense linear assignment by shortest augmenting paths with dual potentials
//! (Jonker–Volgenant style), `O(k^3)` for a `k x k` cost matrix.

use alloc::vec;
use alloc::vec::Vec;

/// Minimum-cost perfect matching of rows to columns.
///
/// `costs` is row-major `k x k` with finite entries. Returns `col_of_row`.
pub fn solve(k: usize, costs: &[f64]) -> Vec<usize> {
    debug_assert_eq!(costs.len(), k * k);
    if k == 0 {
        return Vec::new();
    }
    // 1-based arrays; column 0 is the virtual source of each augmentation.
    let mut u = vec![0.0f64; k + 1];
    let mut v = vec![0.0f64; k + 1];
    let mut row_of_col = vec![0usize; k + 1];
    let mut way = vec![0usize; k + 1];
    let mut min_slack = vec![f64::INFINITY; k + 1];
    let mut used = vec![false; k + 1];

    for row in 1..=k {
        row_of_col[0] = row;
        let mut j0 = 0usize;
        min_slack.iter_mut().for_each(|s| *s = f64::INFINITY);
        used.iter_mut().for_each(|b| *b = false);
        loop {
            used[j0] = true;
            let i0 = row_of_col[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=k {
                if used[j] {
                    continue;
                }
                let reduced = costs[(i0 - 1) * k + (j - 1)] - u[i0] - v[j];
                if reduced < min_slack[j] {
                    min_slack[j] = reduced;
                    way[j] = j0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for j in 0..=k {
                if used[j] {
                    u[row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
            if row_of_col[j0] == 0 {
                break;
            }
        }
        // Flip the augmenting path back to the source.
        loop {
            let j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut col_of_row = vec![0usize; k];
    for j in 1..=k {
        col_of_row[row_of_col[j] - 1] = j - 1;
    }
    col_of_row
}
