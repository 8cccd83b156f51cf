//! Dense univariate polynomials over an arbitrary [`Ring`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{Field, Ring};
use crate::error::ArithError;

/// Polynomial `c[0] + c[1] x + ... + c[n] x^n`, stored without trailing zeros.
#[derive(Clone, PartialEq)]
pub struct UniPoly<R> {
    c: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn constant(a: R) -> Self {
        Self::new(vec![a])
    }

    /// The monomial `a x^k`.
    pub fn monomial(a: R, k: usize) -> Self {
        let mut c = vec![R::zero(); k + 1];
        c[k] = a;
        Self::new(c)
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_one())
    }

    /// Lowest index with a nonzero coefficient.
    pub fn low_order(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.c.iter().map(f).collect())
    }

    pub fn scale(&self, a: &R) -> Self {
        Self::new(self.c.iter().map(|x| x.clone() * a.clone()).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![R::zero(); k];
        c.extend(self.c.iter().cloned());
        Self { c }
    }

    /// Exact division by `x^k`; drops the low coefficients.
    pub fn unshift(&self, k: usize) -> Self {
        Self::new(self.c.iter().skip(k).cloned().collect())
    }

    /// Keeps only the coefficients of `x^0 .. x^(n-1)`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.c.iter().take(n).cloned().collect())
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for a in self.c.iter().rev() {
            acc = acc * x.clone() + a.clone();
        }
        acc
    }

    /// Horner evaluation at an element of an algebra over `R`.
    pub fn eval_with<S: Ring>(&self, x: &S, lift: impl Fn(&R) -> S) -> S {
        let mut acc = S::zero();
        for a in self.c.iter().rev() {
            acc = acc * x.clone() + lift(a);
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.eval_with(g, |a| UniPoly::constant(a.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.clone() * R::from_int(i as i64))
                .collect(),
        )
    }

    /// Remainder modulo a monic polynomial; valid over any ring.
    pub fn rem_monic(&self, m: &Self) -> Self {
        self.div_rem_monic(m).1
    }

    pub fn div_rem_monic(&self, m: &Self) -> (Self, Self) {
        let dm = m.degree().expect("division by zero polynomial");
        debug_assert!(m.is_monic(), "rem_monic needs a monic divisor");
        if self.c.len() <= dm {
            return (Self::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let mut q = vec![R::zero(); r.len() - dm];
        for k in (dm..r.len()).rev() {
            let a = std::mem::replace(&mut r[k], R::zero());
            if a.is_zero() {
                continue;
            }
            for (j, mj) in m.c.iter().enumerate().take(dm) {
                let idx = k - dm + j;
                r[idx] = r[idx].clone() - a.clone() * mj.clone();
            }
            q[k - dm] = a;
        }
        r.truncate(dm);
        (Self::new(q), Self::new(r))
    }

    /// Pseudo-remainder `lc(m)^(deg self - deg m + 1) * self mod m`.
    pub fn pseudo_rem(&self, m: &Self) -> Self {
        let dm = m.degree().expect("division by zero polynomial");
        let lc = m.lc();
        let mut r = self.clone();
        let mut steps = match self.degree() {
            Some(ds) if ds >= dm => ds - dm + 1,
            _ => 0,
        };
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            let a = r.lc();
            r = r.scale(&lc) - m.scale(&a).shift(dr - dm);
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&lc.pow(steps as u32));
        }
        r
    }

    /// Exact division, coefficient ring permitting.
    pub fn div_exact_poly(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let ds = self.degree().unwrap();
        if ds < dd {
            return None;
        }
        let lc = d.lc();
        let mut r = self.c.clone();
        let mut q = vec![R::zero(); ds - dd + 1];
        for k in (dd..=ds).rev() {
            let a = std::mem::replace(&mut r[k], R::zero());
            if a.is_zero() {
                continue;
            }
            let t = a.div_exact(&lc)?;
            for j in 0..dd {
                let idx = k - dd + j;
                r[idx] = r[idx].clone() - t.clone() * d.c[j].clone();
            }
            q[k - dd] = t;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    pub fn render(&self, var: &str) -> String
    where
        R: fmt::Display,
    {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let coef = format!("{a}");
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if mono.is_empty() {
                format!("({coef})")
            } else if a.is_one() {
                mono
            } else {
                format!("({coef})*{mono}")
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl<F: Field> UniPoly<F> {
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().unwrap();
        self.scale(&inv)
    }

    pub fn div_rem(&self, m: &Self) -> (Self, Self) {
        let dm = m.degree().expect("division by zero polynomial");
        if self.c.len() <= dm {
            return (Self::zero(), self.clone());
        }
        let inv = m.lc().inv().unwrap();
        let mut r = self.c.clone();
        let mut q = vec![F::zero(); r.len() - dm];
        for k in (dm..r.len()).rev() {
            let a = std::mem::replace(&mut r[k], F::zero());
            if a.is_zero() {
                continue;
            }
            let t = a * inv.clone();
            for j in 0..dm {
                let idx = k - dm + j;
                r[idx] = r[idx].clone() - t.clone() * m.c[j].clone();
            }
            q[k - dm] = t;
        }
        r.truncate(dm);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, m: &Self) -> Self {
        self.div_rem(m).1
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0 - q.clone() * s1.clone();
            s0 = std::mem::replace(&mut s1, s);
            let t = t0 - q * t1.clone();
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Square-free part (product of the distinct monic irreducible factors).
    pub fn squarefree_part(&self) -> Self {
        let g = uni_gcd_unchecked(self, &self.derivative());
        self.div_rem(&g).0.monic()
    }
}

fn uni_gcd_unchecked<F: Field>(f: &UniPoly<F>, g: &UniPoly<F>) -> UniPoly<F> {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = std::mem::replace(&mut b, r);
    }
    a.monic()
}

/// Monic greatest common divisor.
pub fn uni_gcd<F: Field>(f: &UniPoly<F>, g: &UniPoly<F>) -> Result<UniPoly<F>, ArithError> {
    if f.is_zero() && g.is_zero() {
        return Err(ArithError::ZeroInput("gcd of two zero polynomials"));
    }
    check_same_domain(f, g)?;
    Ok(uni_gcd_unchecked(f, g))
}

fn check_same_domain<F: Field>(f: &UniPoly<F>, g: &UniPoly<F>) -> Result<(), ArithError> {
    let mut all = f.c.iter().chain(g.c.iter());
    if let Some(first) = all.next() {
        if all.any(|x| !first.same_domain(x)) {
            return Err(ArithError::DomainMismatch);
        }
    }
    Ok(())
}

/// Square-free decomposition `f = lc * prod g_i^{m_i}` (Yun), multiplicities increasing.
pub fn squarefree_decompose<F: Field>(f: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    assert!(!f.is_zero(), "square-free decomposition of zero");
    let mut out = Vec::new();
    if f.deg0() == 0 {
        return out;
    }
    let fp = f.derivative();
    let a0 = uni_gcd_unchecked(f, &fp);
    let mut b = f.div_rem(&a0).0;
    let mut c = fp.div_rem(&a0).0;
    let mut d = c - b.derivative();
    let mut i = 1;
    loop {
        let a = uni_gcd_unchecked(&b, &d);
        if a.deg0() > 0 {
            out.push((a.monic(), i));
        }
        b = b.div_rem(&a).0;
        if b.deg0() == 0 {
            break;
        }
        c = d.div_rem(&a).0;
        d = c - b.derivative();
        i += 1;
    }
    out
}

impl<R: Ring> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.c.iter()).finish()
    }
}

impl<R: Ring> Zero for UniPoly<R> {
    fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl<R: Ring> One for UniPoly<R> {
    fn one() -> Self {
        UniPoly { c: vec![R::one()] }
    }
}

impl<R: Ring> Add for UniPoly<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (mut long, short) = if self.c.len() >= o.c.len() { (self.c, o.c) } else { (o.c, self.c) };
        for (i, b) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + b;
        }
        Self::new(long)
    }
}

impl<R: Ring> Neg for UniPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        UniPoly { c: self.c.into_iter().map(|x| -x).collect() }
    }
}

impl<R: Ring> Sub for UniPoly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ring> Mul for UniPoly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(c)
    }
}

impl<R: Ring> Ring for UniPoly<R> {
    fn from_int(n: i64) -> Self {
        Self::constant(R::from_int(n))
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.div_exact_poly(d)
    }
}
