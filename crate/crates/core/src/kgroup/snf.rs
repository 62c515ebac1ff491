//! Smith normal form over the integers and integer linear solving.

/// Dense integer matrix as rows.
pub type IntMatrix = Vec<Vec<i64>>;

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    m.swap(a, b);
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row[a] += k * row[b]`
fn add_row(m: &mut IntMatrix, a: usize, b: usize, k: i64) {
    let src = m[b].clone();
    for (x, y) in m[a].iter_mut().zip(src) {
        *x += k * y;
    }
}

/// `col[a] += k * col[b]`
fn add_col(m: &mut IntMatrix, a: usize, b: usize, k: i64) {
    for row in m.iter_mut() {
        row[a] += k * row[b];
    }
}

fn negate_row(m: &mut IntMatrix, a: usize) {
    m[a].iter_mut().for_each(|x| *x = -*x);
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()).collect()
}

/// `(U, D, V)` with `U A V = D`, `U` and `V` unimodular and the diagonal of
/// `D` nonnegative with each entry dividing the next.
pub fn smith_normal_form(a: &IntMatrix, cols: usize) -> (IntMatrix, IntMatrix, IntMatrix) {
    let rows = a.len();
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != 0)
            .min_by_key(|&(i, j)| d[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            let q = d[i][t] / d[t][t];
            if q != 0 {
                add_row(&mut d, i, t, -q);
                add_row(&mut u, i, t, -q);
            }
            clean &= d[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = d[t][j] / d[t][t];
            if q != 0 {
                add_col(&mut d, j, t, -q);
                add_col(&mut v, j, t, -q);
            }
            clean &= d[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // divisibility: fold in any entry the pivot does not divide
        let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| d[i][j] % d[t][t] != 0);
        if let Some((i, _)) = bad {
            add_row(&mut d, t, i, 1);
            add_row(&mut u, t, i, 1);
            continue;
        }
        if d[t][t] < 0 {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    (u, d, v)
}

/// An integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, cols: usize, b: &[i64]) -> Option<Vec<i64>> {
    let rows = a.len();
    let (u, d, v) = smith_normal_form(a, cols);
    let ub: Vec<i64> = u.iter().map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum()).collect();
    let mut y = vec![0i64; cols];
    for i in 0..rows {
        let di = if i < cols { d[i][i] } else { 0 };
        if di == 0 {
            if ub[i] != 0 {
                return None;
            }
        } else {
            if ub[i] % di != 0 {
                return None;
            }
            y[i] = ub[i] / di;
        }
    }
    Some(v.iter().map(|row| row.iter().zip(&y).map(|(x, z)| x * z).sum()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(m: &IntMatrix) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: IntMatrix = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum()
    }

    #[test]
    fn diagonal_two_three() {
        let (u, d, v) = smith_normal_form(&vec![vec![2, 0], vec![0, 3]], 2);
        assert_eq!(d, vec![vec![1, 0], vec![0, 6]]);
        assert_eq!(det(&u).abs(), 1);
        assert_eq!(det(&v).abs(), 1);
    }

    #[test]
    fn identity_and_zero() {
        let id = identity(3);
        let (u, d, v) = smith_normal_form(&id, 3);
        assert_eq!((u, d.clone(), v), (id.clone(), id, identity(3)));
        let z = vec![vec![0; 4]; 2];
        assert_eq!(smith_normal_form(&z, 4).1, z);
    }

    #[test]
    fn solves_only_lattice_points() {
        let a = vec![vec![2, 4], vec![0, 6]];
        assert_eq!(solve_integer(&a, 2, &[2, 0]), Some(vec![1, 0]));
        assert!(solve_integer(&a, 2, &[1, 0]).is_none());
        let x = solve_integer(&a, 2, &[6, 6]).unwrap();
        assert_eq!(mat_mul(&a, &x.iter().map(|c| vec![*c]).collect(), 2, 1), vec![vec![6], vec![6]]);
    }
}
