//! Exact integer linear algebra on small dense matrices.
//!
//! Vectors are stored as `i64` and every intermediate product is formed in
//! `i128`. Results are normalized (primitive vectors, gcd-reduced rows) so
//! entries stay near the size of the input; a result that does not fit back
//! into `i64` panics. The intended workloads are ranks up to about 8.

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
pub fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub(crate) fn narrow(x: i128) -> i64 {
    i64::try_from(x).unwrap_or_else(|_| panic!("integer {x} does not fit into i64"))
}

pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

pub(crate) fn dot_wide(a: &[i64], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y).sum()
}

pub(crate) fn widen(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| x as i128).collect()
}

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
pub(crate) fn make_primitive(v: &mut [i128]) {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

pub fn primitive(v: &[i64]) -> Vec<i64> {
    let mut w = widen(v);
    make_primitive(&mut w);
    w.into_iter().map(narrow).collect()
}

pub(crate) fn narrow_vec(v: &[i128]) -> Vec<i64> {
    v.iter().map(|&x| narrow(x)).collect()
}

pub fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| widen(r)).collect();
    echelonize(&mut m).len()
}

/// Fraction-free row echelon form; returns the pivot columns. Rows are kept
/// primitive, zero rows are dropped.
fn echelonize(m: &mut Vec<Vec<i128>>) -> Vec<usize> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, p);
        if m[row][col] < 0 {
            m[row].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..m.len() {
            if i != row && m[i][col] != 0 {
                let (a, b) = (m[row][col], m[i][col]);
                let g = gcd(a, b);
                let (fa, fb) = (a / g, b / g);
                let pivot_row = m[row].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = fa * *x - fb * *y;
                }
                make_primitive(&mut m[i]);
            }
        }
        make_primitive(&mut m[row]);
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    pivots
}

/// Canonical basis of the rational span of `rows`: the reduced row echelon
/// form with each row scaled to a primitive integer vector with positive
/// pivot. Returns the basis together with its pivot columns.
pub fn span_basis(rows: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<usize>) {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| widen(r)).collect();
    let pivots = echelonize(&mut m);
    (m.iter().map(|r| narrow_vec(r)).collect(), pivots)
}

/// Reduces `v` modulo the span of a basis produced by [`span_basis`], giving
/// the unique representative with zero pivot coordinates, scaled to be
/// primitive (positive multiples only).
pub fn reduce_modulo(v: &[i64], basis: &[Vec<i64>], pivots: &[usize]) -> Vec<i64> {
    let mut w = widen(v);
    for (b, &p) in basis.iter().zip(pivots) {
        if w[p] != 0 {
            let (a, c) = (b[p] as i128, w[p]);
            let g = gcd(a, c);
            let (fa, fc) = (a / g, c / g);
            for (x, &y) in w.iter_mut().zip(b) {
                *x = fa * *x - fc * y as i128;
            }
            make_primitive(&mut w);
        }
    }
    make_primitive(&mut w);
    narrow_vec(&w)
}

/// Determinant of a square matrix (Bareiss elimination).
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| widen(r)).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Row-style Hermite normal form of a full-row-rank integer matrix: echelon,
/// positive pivots, entries above a pivot reduced into `[0, pivot)`.
pub fn hermite_rows(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| widen(r)).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        // gcd-combine everything below into `row`
        for i in row + 1..m.len() {
            if m[i][col] == 0 {
                continue;
            }
            let (a, b) = (m[row][col], m[i][col]);
            let (g, x, y) = extended_gcd(a, b);
            let (fa, fb) = (a / g, b / g);
            let (r0, r1) = (m[row].clone(), m[i].clone());
            for j in 0..cols {
                m[row][j] = x * r0[j] + y * r1[j];
                m[i][j] = fa * r1[j] - fb * r0[j];
            }
        }
        if m[row][col] == 0 {
            continue;
        }
        if m[row][col] < 0 {
            m[row].iter_mut().for_each(|x| *x = -*x);
        }
        let p = m[row][col];
        for i in 0..row {
            let q = m[i][col].div_euclid(p);
            if q != 0 {
                let pr = m[row].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x -= q * y;
                }
            }
        }
        row += 1;
    }
    m.truncate(row);
    m.iter().map(|r| narrow_vec(r)).collect()
}

/// Lattice basis (in Hermite normal form) of `{x in Z^n : r.x = 0 for all rows r}`.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    // Column operations on A, mirrored on U = I, bring A to column echelon
    // form; the trailing columns of U span the kernel lattice.
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| widen(r)).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let mut col = 0;
    for i in 0..a.len() {
        if col == n {
            break;
        }
        for j in col + 1..n {
            if a[i][j] == 0 {
                continue;
            }
            let (p, q) = (a[i][col], a[i][j]);
            let (g, x, y) = extended_gcd(p, q);
            let (fp, fq) = (p / g, q / g);
            let combine = |m: &mut Vec<Vec<i128>>| {
                for r in m.iter_mut() {
                    let (c0, c1) = (r[col], r[j]);
                    r[col] = x * c0 + y * c1;
                    r[j] = fp * c1 - fq * c0;
                }
            };
            combine(&mut a);
            combine(&mut u);
        }
        if a[i][col] != 0 {
            col += 1;
        }
    }
    let basis: Vec<Vec<i64>> = (col..n).map(|j| narrow_vec(&u.iter().map(|r| r[j]).collect::<Vec<_>>())).collect();
    if basis.is_empty() {
        return basis;
    }
    hermite_rows(&basis)
}

/// Coordinates of `v` in a basis given in row Hermite normal form, if `v`
/// lies in the lattice the basis spans.
pub fn hermite_coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let mut residual = widen(v);
    let mut coords = Vec::with_capacity(basis.len());
    for b in basis {
        let p = b.iter().position(|&x| x != 0)?;
        let pivot = b[p] as i128;
        if residual[p] % pivot != 0 {
            return None;
        }
        let c = residual[p] / pivot;
        for (x, &y) in residual.iter_mut().zip(b) {
            *x -= c * y as i128;
        }
        coords.push(narrow(c));
    }
    residual.iter().all(|&x| x == 0).then_some(coords)
}

/// Lower-triangular column Hermite form `H = W U` of a nonsingular square
/// matrix `W` (given by rows); returns the diagonal of `H`, all positive.
pub(crate) fn column_hermite_diagonal(w: &[Vec<i64>]) -> Vec<i128> {
    let n = w.len();
    let mut a: Vec<Vec<i128>> = w.iter().map(|r| widen(r)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if a[i][j] == 0 {
                continue;
            }
            let (p, q) = (a[i][i], a[i][j]);
            let (g, x, y) = extended_gcd(p, q);
            let (fp, fq) = (p / g, q / g);
            for r in a.iter_mut() {
                let (c0, c1) = (r[i], r[j]);
                r[i] = x * c0 + y * c1;
                r[j] = fp * c1 - fq * c0;
            }
        }
        assert!(a[i][i] != 0, "matrix is singular");
        if a[i][i] < 0 {
            for r in a.iter_mut() {
                r[i] = -r[i];
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Adjugate of a square matrix: `adj(W) * W = det(W) * I`.
pub(crate) fn adjugate(w: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let n = w.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> =
                (0..n).filter(|&r| r != i).map(|r| (0..n).filter(|&c| c != j).map(|c| w[r][c]).collect()).collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            // adj[j][i] = cofactor(i, j)
            adj[j][i] = sign * determinant(&minor);
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&[vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]), 1);
        assert_eq!(determinant(&[vec![1, 0], vec![1, 2]]), 2);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn kernel_of_coordinate_ray() {
        let k = integer_kernel(&[vec![0, 0, 1]], 3);
        assert_eq!(k, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let k = integer_kernel(&[vec![2, 4]], 2);
        assert_eq!(k, vec![vec![2, -1]]);
        assert!(integer_kernel(&[vec![1, 0], vec![0, 1]], 2).is_empty());
    }

    #[test]
    fn kernel_is_saturated() {
        // x + y + z = 0 has lattice basis of determinant one in its span
        let k = integer_kernel(&[vec![1, 1, 1]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(v, &[1, 1, 1]), 0);
        }
        assert_eq!(hermite_coordinates(&k, &[1, -1, 0]).map(|c| c.len()), Some(2));
        assert_eq!(hermite_coordinates(&k, &[0, 1, -1]).map(|c| c.len()), Some(2));
    }

    #[test]
    fn span_and_reduction() {
        let (b, p) = span_basis(&[vec![2, 2, 0], vec![0, 3, 3]]);
        assert_eq!(b, vec![vec![1, 0, -1], vec![0, 1, 1]]);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(reduce_modulo(&[1, 0, 0], &b, &p), vec![0, 0, 1]);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
    }

    #[test]
    fn column_hermite_diagonal_multiplies_to_determinant() {
        let w = vec![vec![1, 1], vec![0, 2]];
        let d = column_hermite_diagonal(&w);
        assert_eq!(d.iter().product::<i128>(), 2);
        let adj = adjugate(&w);
        assert_eq!(adj, vec![vec![2, -1], vec![0, 1]]);
    }
}
