//! Determinants: division-free (Berkowitz) over any ring, and certified `u`-orders over series.

use num_traits::Zero;

use super::poly::UniPoly;
use super::scalar::{Field, Ring};
use super::series::{SeriesOrder, TruncSeries};

/// Square matrix as a vector of rows.
pub type Matrix<R> = Vec<Vec<R>>;

/// Characteristic polynomial `det(x I - a)` by Berkowitz's algorithm.
pub fn charpoly<R: Ring>(a: &Matrix<R>) -> UniPoly<R> {
    let n = a.len();
    if n == 0 {
        return UniPoly::constant(R::one());
    }
    let mut c: Vec<R> = vec![R::one(), -a[0][0].clone()];
    for r in 1..n {
        let mut col = Vec::with_capacity(r + 2);
        col.push(R::one());
        col.push(-a[r][r].clone());
        let mut v: Vec<R> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let q = (0..r).fold(R::zero(), |acc, k| acc + a[r][k].clone() * v[k].clone());
            col.push(-q);
            v = (0..r).map(|i| (0..r).fold(R::zero(), |acc, k| acc + a[i][k].clone() * v[k].clone())).collect();
        }
        let next: Vec<R> = (0..r + 2)
            .map(|i| (0..=i.min(r)).fold(R::zero(), |acc, j| acc + col[i - j].clone() * c[j].clone()))
            .collect();
        c = next;
    }
    c.reverse();
    UniPoly::new(c)
}

/// Determinant by fraction-free (Bareiss) elimination, falling back to
/// [`charpoly`] if some exact division is not available in the ring.
pub fn det<R: Ring>(a: &Matrix<R>) -> R {
    bareiss(a).unwrap_or_else(|| {
        let c0 = charpoly(a).coeff(0);
        if a.len().is_multiple_of(2) {
            c0
        } else {
            -c0
        }
    })
}

fn bareiss<R: Ring>(a: &Matrix<R>) -> Option<R> {
    let n = a.len();
    if n == 0 {
        return Some(R::one());
    }
    let mut m = a.clone();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Some(R::zero());
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = t.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Some(if negate { -d } else { d })
}

/// The `u`-order of the determinant of a matrix of series, working modulo `u^prec`.
///
/// Full pivoting on an entry of minimal order keeps every remaining entry known
/// modulo `u^prec`, so the result is exact once every pivot is found; otherwise a
/// lower bound is returned.
pub fn series_det_order<F: Field>(a: &Matrix<TruncSeries<F>>, prec: usize) -> SeriesOrder {
    let mut m: Matrix<TruncSeries<F>> = a.iter().map(|row| row.iter().map(|x| x.truncate(prec)).collect()).collect();
    let n = m.len();
    let prec = m.iter().flatten().map(|x| x.prec()).min().unwrap_or(prec).min(prec);
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut total = 0usize;
    while !rows.is_empty() {
        let mut best: Option<(usize, usize, usize)> = None;
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                if let SeriesOrder::Exact(v) = m[r][c].order() {
                    if best.is_none_or(|b| v < b.2) {
                        best = Some((ri, ci, v));
                    }
                }
            }
        }
        let Some((ri, ci, v)) = best else {
            return SeriesOrder::AtLeast(total + prec);
        };
        let pr = rows.remove(ri);
        let pc = cols.remove(ci);
        total += v;
        let eps_inv = m[pr][pc].shift_down(v).inv_to(prec - v).expect("pivot has a unit part");
        let pivot_row: Vec<TruncSeries<F>> = cols.iter().map(|&c| m[pr][c].shift_down(v)).collect();
        for &r in &rows {
            let head = &m[r][pc];
            if head.is_zero() {
                continue;
            }
            let factor = head.shift_down(v) * eps_inv.clone();
            for (k, &c) in cols.iter().enumerate() {
                let t = (factor.clone() * pivot_row[k].clone()).shift_up(v);
                m[r][c] = (m[r][c].clone() - t).truncate(prec);
            }
        }
    }
    SeriesOrder::Exact(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::scalar::{rat, Rational};
    use crate::exact_arith::series::EXACT;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det(&m(&[&[2]])), rat(2));
        assert_eq!(det(&m(&[&[1, 2], &[3, 4]])), rat(-2));
        assert_eq!(det(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), rat(6));
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of x^2 - 3x + 2
        let a = m(&[&[0, -2], &[1, 3]]);
        assert_eq!(charpoly(&a), UniPoly::new(vec![rat(2), rat(-3), rat(1)]));
    }

    #[test]
    fn series_order_of_diagonal() {
        let s = |c: &[i64]| TruncSeries::new(c.iter().map(|&x| rat(x)).collect::<Vec<_>>(), EXACT);
        let a = vec![vec![s(&[0, 1]), s(&[1])], vec![s(&[0, 0, 1]), s(&[0, 1])]];
        // det = u^2 - u^2 = 0
        assert_eq!(series_det_order(&a, 10), SeriesOrder::AtLeast(10));
        let b = vec![vec![s(&[0, 1]), s(&[0, 0, 1])], vec![s(&[1]), s(&[0, 0, 0, 1])]];
        // det = u^4 - u^2
        assert_eq!(series_det_order(&b, 10), SeriesOrder::Exact(2));
    }
}
