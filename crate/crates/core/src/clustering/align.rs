//! Renaming labels of one frame to agree with the previous frame.

/// Permutes the names in `cur` so that agreement with `prev` is maximal,
/// solving the assignment problem on the `k × k` overlap matrix.
pub fn align_labels(prev: &[usize], cur: &[usize], k: usize) -> Vec<usize> {
    let mut overlap = vec![vec![0i64; k]; k];
    for (&p, &c) in prev.iter().zip(cur) {
        overlap[c][p] += 1;
    }
    let max = overlap.iter().flatten().copied().max().unwrap_or(0);
    let cost: Vec<Vec<i64>> = overlap
        .iter()
        .map(|row| row.iter().map(|&o| max - o).collect())
        .collect();
    let perm = hungarian(&cost);
    cur.iter().map(|&c| perm[c]).collect()
}

/// Aligns every frame to its (already aligned) predecessor.
pub fn align_sequence(frames: &mut [Vec<usize>], k: usize) {
    for t in 1..frames.len() {
        let aligned = align_labels(&frames[t - 1], &frames[t], k);
        frames[t] = aligned;
    }
}

/// Minimum-cost perfect matching on a square matrix; returns `row -> column`.
fn hungarian(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    // potentials and matching are 1-indexed; index 0 is a sentinel column
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut col_row = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        col_row[0] = i;
        let mut j0 = 0;
        let mut minv = vec![i64::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = col_row[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[col_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if col_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_row[j0] = col_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_col = vec![0; n];
    for j in 1..=n {
        row_col[col_row[j] - 1] = j - 1;
    }
    row_col
}
