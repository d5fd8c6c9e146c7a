//! Exact solvers for the uniform-marginal transportation LP.
//!
//! Both solvers work on the scaled problem in which every row supplies `m`
//! integer units and every column demands `n` integer units, so all basic
//! flows are integers and vertex arithmetic is exact; costs stay in `f64`.

use crate::error::{Error, Result};
use crate::transport::CostMatrix;

/// Shortest-augmenting-path assignment solver for square cost matrices.
///
/// Returns `row_of_col`: the row matched to each column of an optimal
/// permutation. Runs in `O(n^3)` and terminates after exactly `n`
/// augmentations.
pub(crate) fn solve_assignment(cost: &CostMatrix) -> Vec<usize> {
    let n = cost.n_rows();
    debug_assert_eq!(n, cost.n_cols());
    // 1-based arrays; index 0 is the virtual unmatched column.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost.at(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| p[j] - 1).collect()
}

/// Transportation simplex returning the basic cells `(row, col, flow)` of an
/// optimal vertex in the integer scaling (row supplies `m`, column demands
/// `n`). Zero-flow basic cells may appear under degeneracy.
pub(crate) fn solve_transportation(cost: &CostMatrix) -> Result<Vec<(usize, usize, i64)>> {
    let (n, m) = (cost.n_rows(), cost.n_cols());
    let node_count = n + m;
    let col_node = |j: usize| n + j;

    // Northwest-corner start: a staircase spanning tree with n + m - 1 cells.
    let mut flow: Vec<i64> = Vec::with_capacity(node_count - 1);
    let mut cell: Vec<(usize, usize)> = Vec::with_capacity(node_count - 1);
    {
        let mut supply = vec![m as i64; n];
        let mut demand = vec![n as i64; m];
        let (mut i, mut j) = (0usize, 0usize);
        loop {
            let q = supply[i].min(demand[j]);
            cell.push((i, j));
            flow.push(q);
            supply[i] -= q;
            demand[j] -= q;
            if i == n - 1 && j == m - 1 {
                break;
            }
            if supply[i] == 0 && i < n - 1 {
                i += 1;
            } else {
                j += 1;
            }
        }
    }

    let mut in_basis = vec![false; n * m];
    for &(i, j) in &cell {
        in_basis[i * m + j] = true;
    }
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for (b, &(i, j)) in cell.iter().enumerate() {
        adjacency[i].push(b);
        adjacency[col_node(j)].push(b);
    }

    let eps = 1e-11 * (1.0 + cost.max_entry());
    let mut u = vec![0.0f64; n];
    let mut v = vec![0.0f64; m];
    let mut visited = vec![false; node_count];
    let mut prev_node = vec![usize::MAX; node_count];
    let mut prev_edge = vec![usize::MAX; node_count];
    let max_pivots = 10_000 + 20 * n * m;

    for _pivot in 0..max_pivots {
        // Duals from the spanning tree: u[i] + v[j] = cost(i, j) on basic
        // cells, anchored at u[0] = 0.
        visited.iter_mut().for_each(|f| *f = false);
        u[0] = 0.0;
        visited[0] = true;
        let mut stack = vec![0usize];
        while let Some(node) = stack.pop() {
            for &b in &adjacency[node] {
                let (i, j) = cell[b];
                let other = if node < n { col_node(j) } else { i };
                if !visited[other] {
                    visited[other] = true;
                    if node < n {
                        v[j] = cost.at(i, j) - u[i];
                    } else {
                        u[i] = cost.at(i, j) - v[j];
                    }
                    stack.push(other);
                }
            }
        }

        // Dantzig pricing over non-basic cells.
        let mut best_rc = -eps;
        let mut entering: Option<(usize, usize)> = None;
        for i in 0..n {
            for j in 0..m {
                if in_basis[i * m + j] {
                    continue;
                }
                let rc = cost.at(i, j) - u[i] - v[j];
                if rc < best_rc {
                    best_rc = rc;
                    entering = Some((i, j));
                }
            }
        }
        let (ei, ej) = match entering {
            None => return Ok(cell.iter().cloned().zip(flow).map(|((i, j), f)| (i, j, f)).collect()),
            Some(e) => e,
        };

        // Unique tree path from the entering row node to its column node.
        visited.iter_mut().for_each(|f| *f = false);
        visited[ei] = true;
        let target = col_node(ej);
        let mut queue = std::collections::VecDeque::from([ei]);
        while let Some(node) = queue.pop_front() {
            if node == target {
                break;
            }
            for &b in &adjacency[node] {
                let (i, j) = cell[b];
                let other = if node < n { col_node(j) } else { i };
                if !visited[other] {
                    visited[other] = true;
                    prev_node[other] = node;
                    prev_edge[other] = b;
                    queue.push_back(other);
                }
            }
        }
        debug_assert!(visited[target], "basis must span all nodes");
        let mut path = Vec::new();
        let mut node = target;
        while node != ei {
            path.push(prev_edge[node]);
            node = prev_node[node];
        }
        path.reverse();

        // Alternate signs along the cycle: entering cell +, then -, +, ...
        // starting from the row end of the path.
        let mut theta = i64::MAX;
        let mut leaving_pos = usize::MAX;
        for (pos, &b) in path.iter().enumerate().step_by(2) {
            if flow[b] < theta {
                theta = flow[b];
                leaving_pos = pos;
            }
        }
        for (pos, &b) in path.iter().enumerate() {
            if pos % 2 == 0 {
                flow[b] -= theta;
            } else {
                flow[b] += theta;
            }
        }

        // Replace the leaving cell with the entering one in the same slot.
        let leave = path[leaving_pos];
        let (li, lj) = cell[leave];
        in_basis[li * m + lj] = false;
        in_basis[ei * m + ej] = true;
        adjacency[li].retain(|&b| b != leave);
        adjacency[col_node(lj)].retain(|&b| b != leave);
        adjacency[ei].push(leave);
        adjacency[col_node(ej)].push(leave);
        cell[leave] = (ei, ej);
        flow[leave] = theta;
    }
    Err(Error::SolverStalled)
}
