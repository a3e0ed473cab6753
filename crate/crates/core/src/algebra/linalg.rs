use crate::error::{Error, Result};

use super::poly_x::inverse_mod;
use super::{poly_gcd, Field, PolyX, RatX};

/// Row-major dense matrix.
pub type Matrix<F> = Vec<Vec<F>>;

/// Reduced row echelon form. Pivot columns are searched in the order given by
/// `order` (default: left to right); columns outside `order` are carried along
/// but never chosen as pivots. Returns the reduced matrix and the pivot column
/// of each nonzero row.
pub fn rref<F: Field>(m: &Matrix<F>, order: Option<&[usize]>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let ncols = a.first().map_or(0, |r| r.len());
    let default: Vec<usize> = (0..ncols).collect();
    let order = order.unwrap_or(&default);
    let mut pivots = Vec::new();
    let mut row = 0;
    for &col in order {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].inv();
        if !inv.is_one() {
            for c in 0..ncols {
                if !a[row][c].is_zero() {
                    a[row][c] = a[row][c].mul(&inv);
                }
            }
        }
        for r in 0..a.len() {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..ncols {
                if !a[row][c].is_zero() {
                    a[r][c] = a[r][c].sub(&f.mul(&a[row][c]));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m, None).1.len()
}

/// Basis of `{v : M v = 0}` with `ncols` entries per vector.
pub fn nullspace<F: Field>(m: &Matrix<F>, ncols: usize) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m, None);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = r[i][free].neg();
        }
        out.push(v);
    }
    out
}

pub fn transpose<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let ncols = m.first().map_or(0, |r| r.len());
    (0..ncols)
        .map(|c| m.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// Basis of `{a : a M = 0}`.
pub fn left_kernel<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    nullspace(&transpose(m), m.len())
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let inner = b.len();
    let ncols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|c| {
                    let mut acc = F::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][c].is_zero() {
                            acc = acc.add(&row[k].mul(&b[k][c]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `v M` for a row vector `v`.
pub fn vec_mat<F: Field>(v: &[F], m: &Matrix<F>) -> Vec<F> {
    mat_mul(&vec![v.to_vec()], m).pop().unwrap()
}

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect()
}

/// Inverse of a square matrix; `None` if singular.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.len();
    let aug: Matrix<F> = m
        .iter()
        .zip(identity::<F>(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let order: Vec<usize> = (0..n).collect();
    let (r, pivots) = rref(&aug, Some(&order));
    (pivots.len() == n).then(|| r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn determinant<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            a.swap(p, col);
            det = det.neg();
        }
        det = det.mul(&a[col][col]);
        let inv = a[col][col].inv();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for c in col..n {
                if !a[col][c].is_zero() {
                    a[r][c] = a[r][c].sub(&f.mul(&a[col][c]));
                }
            }
        }
    }
    det
}

/// Solves `A y = b`; `None` if inconsistent. Free variables are set to zero.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| r.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    let order: Vec<usize> = (0..ncols).collect();
    let (r, pivots) = rref(&aug, Some(&order));
    if r[pivots.len()..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut y = vec![F::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        y[p] = r[i][ncols].clone();
    }
    Some(y)
}

/// Solves `S g ≡ rhs (mod v)` with `deg g_i < deg v`. Fails with
/// `SingularModular` when `det S` shares a factor with `v`.
pub fn solve_mod_v(s: &Matrix<PolyX>, rhs: &[PolyX], v: &PolyX) -> Result<Vec<PolyX>> {
    let reduce = |p: &PolyX| RatX::from_poly(p.rem(v));
    let sm: Matrix<RatX> = s.iter().map(|r| r.iter().map(reduce).collect()).collect();
    let singular = || Error::SingularModular {
        modulus: v.to_string(),
    };
    let det = determinant(&sm);
    if det.is_zero() {
        return Err(singular());
    }
    // det is a polynomial since the entries are.
    if !poly_gcd(det.num(), v).is_one() {
        return Err(singular());
    }
    let b: Vec<RatX> = rhs.iter().map(reduce).collect();
    let y = solve(&sm, &b).ok_or_else(singular)?;
    y.iter()
        .map(|yi| {
            let inv = inverse_mod(yi.den(), v).ok_or_else(singular)?;
            Ok((yi.num() * &inv).rem(v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, Q};

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        rows.iter().map(|r| r.iter().map(|&a| q(a)).collect()).collect()
    }

    #[test]
    fn nullspace_small() {
        assert!(nullspace(&identity::<Q>(3), 3).is_empty());
        let z = qm(&[&[0, 0], &[0, 0]]);
        assert_eq!(nullspace(&z, 2), qm(&[&[1, 0], &[0, 1]]));
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let mv = mat_mul(&m, &transpose(&vec![v]));
            assert!(mv.iter().all(|r| r[0] == q(0)));
        }
    }

    #[test]
    fn inverse_and_det() {
        let m = qm(&[&[2, 1], &[7, 4]]);
        assert_eq!(determinant(&m), q(1));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert!(inverse(&qm(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_mod_identity() {
        let v = PolyX::from_ints(&[1, 0, 1]);
        let s = vec![
            vec![PolyX::one(), PolyX::zero()],
            vec![PolyX::zero(), PolyX::one()],
        ];
        let rhs = vec![PolyX::from_ints(&[1, 2, 3]), PolyX::from_ints(&[0, 0, 0, 1])];
        let g = solve_mod_v(&s, &rhs, &v).unwrap();
        assert_eq!(g[0], rhs[0].rem(&v));
        assert_eq!(g[1], rhs[1].rem(&v));
    }

    #[test]
    fn solve_mod_singular() {
        let v = PolyX::from_ints(&[0, 1]);
        let s = vec![vec![PolyX::x()]];
        assert!(matches!(
            solve_mod_v(&s, &[PolyX::one()], &v),
            Err(Error::SingularModular { .. })
        ));
    }
}
