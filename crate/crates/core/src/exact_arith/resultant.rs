//! Sylvester resultants and discriminants.

use num_traits::{One, Zero};

use super::det::{det, series_det_order, Matrix};
use super::poly::UniPoly;
use super::scalar::{Field, Ring};
use super::series::{SeriesOrder, SeriesPoly};
use crate::error::ArithError;

/// Sylvester matrix: `deg g` shifted rows of `f` above `deg f` shifted rows of `g`,
/// coefficients listed from the leading one down.
pub fn sylvester_matrix<R: Ring>(f: &UniPoly<R>, g: &UniPoly<R>) -> Matrix<R> {
    let d = f.deg0();
    let e = g.deg0();
    let n = d + e;
    let mut m = vec![vec![R::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate().take(e) {
        for j in 0..=d {
            row[i + j] = f.coeff(d - j);
        }
    }
    for (i, row) in m.iter_mut().skip(e).enumerate() {
        for j in 0..=e {
            row[i + j] = g.coeff(e - j);
        }
    }
    m
}

fn check_inputs<R: Ring>(f: &UniPoly<R>, g: &UniPoly<R>) -> Result<(), ArithError> {
    if f.is_zero() || g.is_zero() {
        return Err(ArithError::ZeroInput("resultant with the zero polynomial"));
    }
    if f.deg0() == 0 && g.deg0() == 0 {
        return Err(ArithError::ConstantResultant);
    }
    Ok(())
}

/// `Res(f, g)` as the Sylvester determinant, over any integral domain.
pub fn resultant<R: Ring>(f: &UniPoly<R>, g: &UniPoly<R>) -> Result<R, ArithError> {
    check_inputs(f, g)?;
    Ok(det(&sylvester_matrix(f, g)))
}

/// `Res(f, g)` over a field by the Euclidean recursion; agrees with [`resultant`].
pub fn resultant_field<F: Field>(f: &UniPoly<F>, g: &UniPoly<F>) -> Result<F, ArithError> {
    check_inputs(f, g)?;
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = F::one();
    loop {
        let m = a.deg0();
        let n = b.deg0();
        if n == 0 {
            return Ok(acc * b.coeff(0).pow(m as u32));
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Ok(F::zero());
        }
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc = acc * b.lc().pow((m - r.deg0()) as u32);
        a = std::mem::replace(&mut b, r);
    }
}

/// `Disc(f) = (-1)^{d(d-1)/2} Res(f, f') / a0`.
pub fn discriminant<R: Ring>(f: &UniPoly<R>) -> Result<R, ArithError> {
    let d = f.degree().ok_or(ArithError::ZeroInput("discriminant of zero"))?;
    if d == 0 {
        return Err(ArithError::ConstantDiscriminant);
    }
    if d == 1 {
        return Ok(R::one());
    }
    let r = resultant(f, &f.derivative())?;
    let q = r.div_exact(&f.lc()).expect("leading coefficient divides Res(f, f')");
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}

/// `u`-order of `Res_v(f, g)` for series coefficients, certified below the working precision.
pub fn resultant_order<F: Field>(f: &SeriesPoly<F>, g: &SeriesPoly<F>, prec: usize) -> Result<SeriesOrder, ArithError> {
    check_inputs(f, g)?;
    Ok(series_det_order(&sylvester_matrix(f, g), prec))
}

/// `u`-order of `Disc_v(f)` for monic `f` with series coefficients.
pub fn discriminant_order<F: Field>(f: &SeriesPoly<F>, prec: usize) -> Result<SeriesOrder, ArithError> {
    let d = f.degree().ok_or(ArithError::ZeroInput("discriminant of zero"))?;
    if d == 0 {
        return Err(ArithError::ConstantDiscriminant);
    }
    debug_assert!(f.lc().is_one(), "discriminant order expects a monic polynomial");
    if d == 1 {
        return Ok(SeriesOrder::Exact(0));
    }
    resultant_order(f, &f.derivative(), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::scalar::{rat, Rational};

    fn qp(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(c.iter().map(|&x| rat(x)).collect())
    }

    /// Bivariate `Σ c[j] v^j`, each `c[j]` a polynomial in `u`.
    fn bp(c: &[&[i64]]) -> UniPoly<UniPoly<Rational>> {
        UniPoly::new(c.iter().map(|r| qp(r)).collect())
    }

    #[test]
    fn res_examples() {
        // Res_v(v^2 - u, v + u) = u^2 - u
        let f = bp(&[&[0, -1], &[], &[1]]);
        let g = bp(&[&[0, 1], &[1]]);
        assert_eq!(resultant(&f, &g).unwrap(), qp(&[0, -1, 1]));
        assert_eq!(resultant(&qp(&[5]), &qp(&[1, 0, 1])).unwrap(), rat(25));
        assert!(resultant(&qp(&[5]), &qp(&[3])).is_err());
    }

    #[test]
    fn euclid_agrees_with_sylvester() {
        let f = qp(&[3, -1, 4, 1]);
        let g = qp(&[-5, 9, 2]);
        assert_eq!(resultant_field(&f, &g).unwrap(), resultant(&f, &g).unwrap());
        assert_eq!(resultant_field(&g, &f).unwrap(), resultant(&g, &f).unwrap());
    }

    #[test]
    fn disc_examples() {
        // Disc_v(v^2 - u^3) = 4u^3
        assert_eq!(discriminant(&bp(&[&[0, 0, 0, -1], &[], &[1]])).unwrap(), qp(&[0, 0, 0, 4]));
        // v^2 + 3v + 7: 9 - 28
        assert_eq!(discriminant(&qp(&[7, 3, 1])).unwrap(), rat(-19));
        assert!(discriminant(&qp(&[7])).is_err());
    }
}
