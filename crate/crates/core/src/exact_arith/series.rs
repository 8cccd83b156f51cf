//! Power series in `u` truncated modulo `u^N`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::scalar::{Field, Ring};

/// Precision of a series that is known exactly (a polynomial).
pub const EXACT: usize = usize::MAX;

/// Order of a truncated series: exact when below the precision, a lower bound otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeriesOrder {
    Exact(usize),
    AtLeast(usize),
}

impl SeriesOrder {
    pub fn exact(self) -> Option<usize> {
        match self {
            SeriesOrder::Exact(n) => Some(n),
            SeriesOrder::AtLeast(_) => None,
        }
    }

    /// The known lower bound (the order itself when exact).
    pub fn bound(self) -> usize {
        match self {
            SeriesOrder::Exact(n) | SeriesOrder::AtLeast(n) => n,
        }
    }
}

impl fmt::Display for SeriesOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesOrder::Exact(n) => write!(f, "{n}"),
            SeriesOrder::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

/// `c[0] + c[1] u + ... + O(u^prec)`.
#[derive(Clone)]
pub struct TruncSeries<R> {
    c: Vec<R>,
    prec: usize,
}

impl<R: Ring> TruncSeries<R> {
    pub fn new(mut c: Vec<R>, prec: usize) -> Self {
        if c.len() > prec {
            c.truncate(prec);
        }
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        TruncSeries { c, prec }
    }

    pub fn exact(c: Vec<R>) -> Self {
        Self::new(c, EXACT)
    }

    pub fn constant(a: R) -> Self {
        Self::exact(vec![a])
    }

    pub fn from_poly(p: &UniPoly<R>, prec: usize) -> Self {
        Self::new(p.coeffs().to_vec(), prec)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::zero)
    }

    /// Lowers the precision to `n` (never raises it).
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.c.clone(), n.min(self.prec))
    }

    /// Treats the stored coefficients as exact up to `n`; used when a polynomial is read as a series.
    pub fn with_prec(&self, n: usize) -> Self {
        Self::new(self.c.clone(), n)
    }

    pub fn order(&self) -> SeriesOrder {
        match self.c.iter().position(|x| !x.is_zero()) {
            Some(i) => SeriesOrder::Exact(i),
            None => SeriesOrder::AtLeast(self.prec),
        }
    }

    /// Multiplication by `u^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.c.is_empty() {
            return Self { c: vec![], prec: self.prec.saturating_add(k) };
        }
        let mut c = vec![R::zero(); k];
        c.extend(self.c.iter().cloned());
        Self { c, prec: self.prec.saturating_add(k) }
    }

    /// Division by `u^k`; the caller guarantees the low coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.c.iter().take(k).all(|x| x.is_zero()));
        let prec = if self.prec == EXACT { EXACT } else { self.prec.saturating_sub(k) };
        Self::new(self.c.iter().skip(k).cloned().collect(), prec)
    }

    pub fn scale(&self, a: &R) -> Self {
        Self::new(self.c.iter().map(|x| x.clone() * a.clone()).collect(), self.prec)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries::new(self.c.iter().map(f).collect(), self.prec)
    }

    pub fn to_poly(&self) -> UniPoly<R> {
        UniPoly::new(self.c.clone())
    }
}

impl<F: Field> TruncSeries<F> {
    /// Inverse modulo `u^n` of a series with a unit constant term.
    pub fn inv_to(&self, n: usize) -> Option<Self> {
        let a0 = self.coeff(0).inv()?;
        let n = n.min(self.prec);
        let mut b: Vec<F> = Vec::with_capacity(n.min(1 << 20));
        if n == 0 {
            return Some(Self::new(vec![], 0));
        }
        b.push(a0.clone());
        for k in 1..n {
            let mut s = F::zero();
            for i in 1..=k.min(self.c.len().saturating_sub(1)) {
                s = s + self.c[i].clone() * b[k - i].clone();
            }
            b.push(-(s * a0.clone()));
        }
        Some(Self::new(b, n))
    }
}

impl<R: Ring> PartialEq for TruncSeries<R> {
    /// Agreement up to the common precision.
    fn eq(&self, o: &Self) -> bool {
        let n = self.prec.min(o.prec);
        let len = self.c.len().max(o.c.len()).min(n);
        (0..len).all(|i| self.coeff(i) == o.coeff(i))
    }
}

impl<R: Ring> fmt::Debug for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.c.iter()).finish()?;
        if self.prec != EXACT {
            write!(f, " + O(u^{})", self.prec)?;
        }
        Ok(())
    }
}

impl<R: Ring> Zero for TruncSeries<R> {
    fn zero() -> Self {
        TruncSeries { c: vec![], prec: EXACT }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl<R: Ring> One for TruncSeries<R> {
    fn one() -> Self {
        TruncSeries { c: vec![R::one()], prec: EXACT }
    }
}

impl<R: Ring> Add for TruncSeries<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let prec = self.prec.min(o.prec);
        let (mut long, short) = if self.c.len() >= o.c.len() { (self.c, o.c) } else { (o.c, self.c) };
        for (i, b) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + b;
        }
        Self::new(long, prec)
    }
}

impl<R: Ring> Neg for TruncSeries<R> {
    type Output = Self;
    fn neg(self) -> Self {
        TruncSeries { c: self.c.into_iter().map(|x| -x).collect(), prec: self.prec }
    }
}

impl<R: Ring> Sub for TruncSeries<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ring> Mul for TruncSeries<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let prec = self.prec.min(o.prec);
        if self.c.is_empty() || o.c.is_empty() {
            return Self { c: vec![], prec };
        }
        let len = (self.c.len() + o.c.len() - 1).min(prec);
        let mut c = vec![R::zero(); len];
        for (i, a) in self.c.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(len - i) {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(c, prec)
    }
}

impl<R: Ring> Ring for TruncSeries<R> {
    fn from_int(n: i64) -> Self {
        Self::constant(R::from_int(n))
    }

    /// Exact quotient when the divisor is `u^k` times a unit and the dividend has order at least `k`.
    fn div_exact(&self, d: &Self) -> Option<Self> {
        let k = d.order().exact()?;
        if let SeriesOrder::Exact(a) = self.order() {
            if a < k {
                return None;
            }
        }
        let num = if self.c.is_empty() {
            Self::new(vec![], if self.prec == EXACT { EXACT } else { self.prec.saturating_sub(k) })
        } else {
            self.shift_down(k)
        };
        let den = d.shift_down(k);
        let lead = den.coeff(0);
        let prec = num.prec.min(den.prec);
        if prec == EXACT {
            // Polynomial division, exact only when it terminates.
            let q = UniPoly::new(num.c.clone()).div_exact_poly(&UniPoly::new(den.c.clone()))?;
            return Some(Self::exact(q.into_coeffs()));
        }
        let mut r = num.c.clone();
        let mut q = Vec::new();
        for i in 0..prec {
            let ri = if i < r.len() { r[i].clone() } else { R::zero() };
            let t = ri.div_exact(&lead)?;
            if !t.is_zero() {
                for (j, dj) in den.c.iter().enumerate() {
                    if i + j >= prec {
                        break;
                    }
                    if i + j >= r.len() {
                        r.resize(i + j + 1, R::zero());
                    }
                    r[i + j] = r[i + j].clone() - t.clone() * dj.clone();
                }
            }
            q.push(t);
        }
        Some(Self::new(q, prec))
    }
}

/// Bivariate data as a polynomial in `v` whose coefficients are series in `u`.
pub type SeriesPoly<R> = UniPoly<TruncSeries<R>>;

/// Common precision of a series polynomial (min over coefficients).
pub fn series_poly_prec<R: Ring>(p: &SeriesPoly<R>) -> usize {
    p.coeffs().iter().map(|c| c.prec()).min().unwrap_or(EXACT)
}

/// Reads an exact bivariate polynomial (coefficients in `u`) as a series polynomial mod `u^n`.
pub fn to_series_poly<R: Ring>(p: &UniPoly<UniPoly<R>>, n: usize) -> SeriesPoly<R> {
    UniPoly::new(p.coeffs().iter().map(|c| TruncSeries::from_poly(c, n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::scalar::{rat, Rational};

    fn s(c: &[i64], n: usize) -> TruncSeries<Rational> {
        TruncSeries::new(c.iter().map(|&x| rat(x)).collect(), n)
    }

    #[test]
    fn product_takes_min_precision() {
        let a = s(&[1, 1], 5);
        let b = s(&[1, 2, 3], 3);
        let p = a * b;
        assert_eq!(p.prec(), 3);
        assert_eq!(p, s(&[1, 3, 5], 3));
    }

    #[test]
    fn order_semantics() {
        assert_eq!(s(&[0, 0, 4], 10).order(), SeriesOrder::Exact(2));
        assert_eq!(s(&[0, 0, 0], 10).order(), SeriesOrder::AtLeast(10));
    }

    #[test]
    fn geometric_inverse() {
        let a = s(&[1, -1], EXACT);
        let inv = a.inv_to(6).unwrap();
        assert_eq!(inv, s(&[1, 1, 1, 1, 1, 1], 6));
        assert_eq!(inv.prec(), 6);
    }

    #[test]
    fn exact_division_by_u_power() {
        let a = s(&[0, 0, 2, 2], 8);
        let d = s(&[0, 1, 1], 8);
        let q = a.div_exact(&d).unwrap();
        assert_eq!(q.prec(), 7);
        assert_eq!(q, s(&[0, 2], 7));
    }
}
