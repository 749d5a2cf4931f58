//! Slow, obviously-correct reference implementations used by the test
//! suites. Nothing here shares code with `subtile-core`: shapes are plain
//! cell lists and every search is a direct backtracking loop.

use std::collections::BTreeSet;

use rand::Rng;

/// Cells as `(x, y)`; `x` is the column, `y` the row.
pub type Shape = Vec<(i32, i32)>;

/// Translates to the origin and sorts.
pub fn normalize(cells: &[(i32, i32)]) -> Shape {
    let mx = cells.iter().map(|c| c.0).min().unwrap_or(0);
    let my = cells.iter().map(|c| c.1).min().unwrap_or(0);
    let mut out: Shape = cells.iter().map(|&(x, y)| (x - mx, y - my)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn rect(h: i32, w: i32) -> Shape {
    let mut out = Vec::new();
    for x in 0..w {
        for y in 0..h {
            out.push((x, y));
        }
    }
    normalize(&out)
}

/// Distinct images under the chosen subgroup, computed by brute matrix
/// application of all eight signed permutations.
pub fn orientations(cells: &[(i32, i32)], rotations: bool, reflections: bool) -> Vec<Shape> {
    let mats: [[i32; 4]; 8] = [
        [1, 0, 0, 1],
        [0, -1, 1, 0],
        [-1, 0, 0, -1],
        [0, 1, -1, 0],
        [-1, 0, 0, 1],
        [0, -1, -1, 0],
        [1, 0, 0, -1],
        [0, 1, 1, 0],
    ];
    let allowed: Vec<usize> = match (rotations, reflections) {
        (false, false) => vec![0],
        (false, true) => vec![0, 4],
        (true, false) => vec![0, 1, 2, 3],
        (true, true) => (0..8).collect(),
    };
    let mut out: Vec<Shape> = Vec::new();
    for k in allowed {
        let [a, b, c, d] = mats[k];
        let img: Shape = cells.iter().map(|&(x, y)| (a * x + b * y, c * x + d * y)).collect();
        let img = normalize(&img);
        if !out.contains(&img) {
            out.push(img);
        }
    }
    out
}

/// A placed shape: index into the shape list plus the offset.
pub type Placed = (usize, i32, i32);

fn anchor(s: &Shape) -> (i32, i32) {
    // first cell in row-major order (lowest y, then lowest x)
    *s.iter().min_by_key(|&&(x, y)| (y, x)).unwrap()
}

/// Every tiling of the `n x m` board by `shapes` (duplicate shapes are the
/// caller's problem), filling cells in row-major order. Stops once `limit`
/// tilings have been collected.
pub fn all_tilings(shapes: &[Shape], n: usize, m: usize, limit: usize) -> Vec<Vec<Placed>> {
    let mut grid = vec![false; n * m];
    let mut cur = Vec::new();
    let mut out = Vec::new();
    walk(shapes, n, m, &mut grid, &mut cur, &mut out, limit);
    out
}

fn walk(
    shapes: &[Shape],
    n: usize,
    m: usize,
    grid: &mut [bool],
    cur: &mut Vec<Placed>,
    out: &mut Vec<Vec<Placed>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let Some(first) = grid.iter().position(|&f| !f) else {
        out.push(cur.clone());
        return;
    };
    let (fx, fy) = ((first % m) as i32, (first / m) as i32);
    for (i, s) in shapes.iter().enumerate() {
        let (ax, ay) = anchor(s);
        let (ox, oy) = (fx - ax, fy - ay);
        let fits = s.iter().all(|&(x, y)| {
            let (x, y) = (x + ox, y + oy);
            x >= 0 && y >= 0 && (x as usize) < m && (y as usize) < n && !grid[y as usize * m + x as usize]
        });
        if !fits {
            continue;
        }
        for &(x, y) in s {
            grid[(y + oy) as usize * m + (x + ox) as usize] = true;
        }
        cur.push((i, ox, oy));
        walk(shapes, n, m, grid, cur, out, limit);
        cur.pop();
        for &(x, y) in s {
            grid[(y + oy) as usize * m + (x + ox) as usize] = false;
        }
    }
}

/// Number of tilings; fine up to a few hundred thousand.
pub fn count_tilings(shapes: &[Shape], n: usize, m: usize) -> u64 {
    all_tilings(shapes, n, m, usize::MAX).len() as u64
}

/// All count vectors (indexed by `class[shape]`) of tilings of the board.
pub fn count_vectors(shapes: &[Shape], class: &[usize], classes: usize, n: usize, m: usize) -> BTreeSet<Vec<u32>> {
    all_tilings(shapes, n, m, usize::MAX)
        .into_iter()
        .map(|t| {
            let mut v = vec![0u32; classes];
            for (i, _, _) in t {
                v[class[i]] += 1;
            }
            v
        })
        .collect()
}

/// Whether the pieces counted by `v` can be split across some
/// `n x m'` / `n x (m - m')` pair of boards with both sides tiled.
pub fn splits(shapes: &[Shape], class: &[usize], classes: usize, n: usize, m: usize, v: &[u32]) -> bool {
    (1..m).any(|left| {
        let lv = count_vectors(shapes, class, classes, n, left);
        let rv = count_vectors(shapes, class, classes, n, m - left);
        lv.iter().any(|u| {
            u.iter().zip(v).all(|(a, b)| a <= b) && rv.contains(&v.iter().zip(u).map(|(b, a)| b - a).collect::<Vec<_>>())
        })
    })
}

/// Largest width `m <= m_max` with a tiling multiset that cannot split, or 0.
pub fn beta(shapes: &[Shape], class: &[usize], classes: usize, n: usize, m_max: usize) -> usize {
    let mut best = 0;
    for m in 1..=m_max {
        let vs = count_vectors(shapes, class, classes, n, m);
        if vs.iter().any(|v| !splits(shapes, class, classes, n, m, v)) {
            best = m;
        }
    }
    best
}

/// Equal-sum split by reachable-sum dynamic programming.
pub fn partition_exists(values: &[u64]) -> bool {
    let total: u64 = values.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let half = (total / 2) as usize;
    let mut reach = vec![false; half + 1];
    reach[0] = true;
    for &v in values {
        let v = v as usize;
        for s in (v..=half).rev() {
            if reach[s - v] {
                reach[s] = true;
            }
        }
    }
    reach[half]
}

/// Non-decreasing sequences of positive integers with at most `max_len`
/// terms and sum at most `max_sum`.
pub fn small_multisets(max_len: usize, max_sum: u64) -> Vec<Vec<u64>> {
    fn go(cur: &mut Vec<u64>, lo: u64, left: u64, max_len: usize, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for v in lo..=left {
            cur.push(v);
            go(cur, v, left - v, max_len, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max_sum, max_len, &mut out);
    out
}

/// Cells of the board covered by `t`, or `None` if pieces overlap or leave
/// the board.
pub fn cover(shapes: &[Shape], n: usize, m: usize, t: &[Placed]) -> Option<Vec<bool>> {
    let mut grid = vec![false; n * m];
    for &(i, ox, oy) in t {
        for &(x, y) in &shapes[i] {
            let (x, y) = (x + ox, y + oy);
            if x < 0 || y < 0 || x as usize >= m || y as usize >= n {
                return None;
            }
            let k = y as usize * m + x as usize;
            if grid[k] {
                return None;
            }
            grid[k] = true;
        }
    }
    Some(grid)
}

/// A random row-convex region of an `n x m` box with a unit-height piece
/// list matching each row's width.
#[derive(Debug, Clone)]
pub struct RowConvexCase {
    pub n: usize,
    pub m: usize,
    /// `(start, len)` per row.
    pub rows: Vec<(u32, u32)>,
    /// `(row, width)` per piece.
    pub pieces: Vec<(u32, u32)>,
}

pub fn random_row_convex<R: Rng>(rng: &mut R, max_n: usize, max_m: usize) -> RowConvexCase {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    let mut rows = Vec::with_capacity(n);
    let mut pieces = Vec::new();
    for y in 0..n {
        let start = rng.gen_range(0..=m);
        let len = rng.gen_range(0..=m - start);
        rows.push((start as u32, len as u32));
        let mut left = len;
        while left > 0 {
            let w = rng.gen_range(1..=left);
            pieces.push((y as u32, w as u32));
            left -= w;
        }
    }
    RowConvexCase { n, m, rows, pieces }
}
