//! Exact integer convex-hull membership and small determinants.

/// Determinant by fraction-free Gaussian elimination (Bareiss).
pub(crate) fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

pub(crate) fn det_i64(rows: &[Vec<i64>]) -> i128 {
    det(rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect())
}

/// Rank of a set of integer vectors.
pub(crate) fn rank(vectors: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = vectors
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                let pivot = m[rank].clone();
                for (v, &q) in m[r].iter_mut().zip(&pivot) {
                    *v = *v * a - q * b;
                }
                let g = m[r].iter().fold(0i128, |g, &v| gcd(g, v));
                if g > 1 {
                    m[r].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Calls `f` on every `r`-subset of `0..k` in lexicographic order until it
/// returns `true`.
pub(crate) fn any_combination(k: usize, r: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, k: usize, r: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == r {
            return f(cur);
        }
        for i in start..k {
            if k - i < r - cur.len() {
                break;
            }
            cur.push(i);
            if rec(i + 1, k, r, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, k, r, &mut Vec::with_capacity(r), f)
}

/// Is `p` in the closed simplex spanned by the affinely independent points
/// `simplex`? Returns `None` if the points are affinely dependent.
fn in_simplex(p: &[i64], simplex: &[&[i64]]) -> Option<bool> {
    let s0 = simplex[0];
    let n = p.len();
    let r = simplex.len() - 1;
    let b: Vec<i128> = (0..n).map(|i| (p[i] - s0[i]) as i128).collect();
    if r == 0 {
        return Some(b.iter().all(|&v| v == 0));
    }
    // columns s_i - s0
    let cols: Vec<Vec<i128>> = simplex[1..]
        .iter()
        .map(|s| (0..n).map(|i| (s[i] - s0[i]) as i128).collect())
        .collect();
    let dot = |u: &[i128], v: &[i128]| -> i128 { u.iter().zip(v).map(|(a, b)| a * b).sum() };
    let gram: Vec<Vec<i128>> = cols
        .iter()
        .map(|ci| cols.iter().map(|cj| dot(ci, cj)).collect())
        .collect();
    let g = det(gram.clone());
    if g == 0 {
        return None;
    }
    let rhs: Vec<i128> = cols.iter().map(|c| dot(c, &b)).collect();
    let num: Vec<i128> = (0..r)
        .map(|i| {
            let mut gi = gram.clone();
            for (row, &v) in gi.iter_mut().zip(&rhs) {
                row[i] = v;
            }
            det(gi)
        })
        .collect();
    // p must lie in the affine hull: sum num_i c_i == g * b
    let in_hull = (0..n).all(|k| cols.iter().zip(&num).map(|(c, l)| c[k] * l).sum::<i128>() == g * b[k]);
    if !in_hull {
        return Some(false);
    }
    // gram determinant is positive for independent columns
    Some(num.iter().all(|&l| l >= 0) && num.iter().sum::<i128>() <= g)
}

/// Exact test `p ∈ conv(points)` via Carathéodory: `p` lies in the hull iff
/// it lies in some simplex spanned by at most `n + 1` affinely independent
/// points.
pub(crate) fn in_convex_hull(p: &[i64], points: &[&[i64]]) -> bool {
    let n = p.len();
    let k = points.len();
    (0..=n.min(k.saturating_sub(1))).any(|r| {
        any_combination(k, r + 1, &mut |idx| {
            let simplex: Vec<&[i64]> = idx.iter().map(|&i| points[i]).collect();
            in_simplex(p, &simplex) == Some(true)
        })
    })
}
