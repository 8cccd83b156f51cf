//! Number fields ℚ[t]/(m(t)) with a single primitive generator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::{uni_gcd, UniPoly};
use super::resultant::resultant_field;
use super::scalar::{fmt_rational, Field, Rational, Ring};
use crate::error::ArithError;

/// ℚ[t]/(m(t)) for a monic irreducible `m`.
#[derive(Clone, PartialEq)]
pub struct NumberField {
    minpoly: UniPoly<Rational>,
}

impl NumberField {
    /// The caller vouches for irreducibility; `m` is made monic.
    pub fn new(m: &UniPoly<Rational>) -> Arc<Self> {
        assert!(m.deg0() >= 1, "defining polynomial must have degree at least 1");
        Arc::new(NumberField { minpoly: m.monic() })
    }

    pub fn minpoly(&self) -> &UniPoly<Rational> {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg0()
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/({})", render_rational_poly(&self.minpoly, "t"))
    }
}

/// A coefficient domain: `None` is ℚ itself.
pub type FieldRef = Option<Arc<NumberField>>;

pub fn field_degree(k: &FieldRef) -> usize {
    k.as_ref().map_or(1, |f| f.degree())
}

fn same_field(a: &FieldRef, b: &FieldRef) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => Arc::ptr_eq(x, y) || x.minpoly == y.minpoly,
        (None, None) => true,
        _ => false,
    }
}

/// Element of a number field, stored as a reduced polynomial in the generator.
///
/// Elements built without a field (`from_int`, `zero`, `one`, ...) are rational
/// constants and combine with elements of any field.
#[derive(Clone)]
pub struct NfElem {
    field: FieldRef,
    c: UniPoly<Rational>,
}

impl NfElem {
    pub fn rational(q: Rational) -> Self {
        NfElem { field: None, c: UniPoly::constant(q) }
    }

    /// The generator `t` of `k` (or `0` when `k` is ℚ, which has no generator).
    pub fn generator(k: &Arc<NumberField>) -> Self {
        Self::from_poly(&Some(k.clone()), &UniPoly::x())
    }

    pub fn from_poly(k: &FieldRef, p: &UniPoly<Rational>) -> Self {
        match k {
            None => {
                assert!(p.deg0() == 0, "non-constant element over Q");
                NfElem { field: None, c: p.clone() }
            }
            Some(f) => {
                let c = if p.len() > f.degree() { p.rem_monic(&f.minpoly) } else { p.clone() };
                NfElem { field: Some(f.clone()), c }
            }
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    /// Representative polynomial in the generator.
    pub fn poly(&self) -> &UniPoly<Rational> {
        &self.c
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.c.deg0() == 0 {
            Some(self.c.coeff(0))
        } else {
            None
        }
    }

    /// Re-homes a rational constant into `k`; elements already in a field are unchanged.
    pub fn in_field(&self, k: &FieldRef) -> Self {
        if self.field.is_none() && k.is_some() {
            NfElem { field: k.clone(), c: self.c.clone() }
        } else {
            self.clone()
        }
    }

    fn join(a: &FieldRef, b: &FieldRef) -> FieldRef {
        match (a, b) {
            (None, x) | (x, None) => x.clone(),
            (Some(x), Some(y)) => {
                assert!(
                    Arc::ptr_eq(x, y) || x.minpoly == y.minpoly,
                    "arithmetic between elements of different number fields"
                );
                Some(x.clone())
            }
        }
    }

    /// Norm down to ℚ.
    pub fn norm(&self) -> Rational {
        match &self.field {
            None => self.c.coeff(0),
            Some(f) => {
                if self.c.is_zero() {
                    return Rational::zero();
                }
                resultant_field(&f.minpoly, &self.c).expect("nonconstant minpoly")
            }
        }
    }
}

impl PartialEq for NfElem {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_rational_poly(&self.c, "t"))
    }
}

/// Renders `c0 + c1 t + ...` highest degree first, e.g. `t^2 - 1/3`.
pub fn render_rational_poly(p: &UniPoly<Rational>, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, a) in p.coeffs().iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let neg = a < &Rational::zero();
        let mag = if neg { -a.clone() } else { a.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&fmt_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", fmt_rational(&mag), mono));
        }
    }
    out
}

impl Zero for NfElem {
    fn zero() -> Self {
        NfElem { field: None, c: UniPoly::zero() }
    }
    fn is_zero(&self) -> bool {
        self.c.is_zero()
    }
}

impl One for NfElem {
    fn one() -> Self {
        NfElem::rational(Rational::one())
    }
}

impl Add for NfElem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        NfElem { field: Self::join(&self.field, &o.field), c: self.c + o.c }
    }
}

impl Sub for NfElem {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        NfElem { field: Self::join(&self.field, &o.field), c: self.c - o.c }
    }
}

impl Neg for NfElem {
    type Output = Self;
    fn neg(self) -> Self {
        NfElem { field: self.field, c: -self.c }
    }
}

impl Mul for NfElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let field = Self::join(&self.field, &o.field);
        let prod = self.c * o.c;
        match &field {
            Some(f) if prod.len() > f.degree() => NfElem { c: prod.rem_monic(&f.minpoly), field },
            _ => NfElem { field, c: prod },
        }
    }
}

impl Ring for NfElem {
    fn from_int(n: i64) -> Self {
        NfElem::rational(Rational::from_int(n))
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        Some(self.clone() * d.inv()?)
    }
}

impl Field for NfElem {
    fn inv(&self) -> Option<Self> {
        if self.c.is_zero() {
            return None;
        }
        match &self.field {
            None => Some(NfElem::rational(self.c.coeff(0).recip())),
            Some(f) => {
                if self.c.deg0() == 0 {
                    return Some(NfElem { field: self.field.clone(), c: UniPoly::constant(self.c.coeff(0).recip()) });
                }
                let (g, s, _) = self.c.xgcd(&f.minpoly);
                debug_assert!(g.is_one(), "defining polynomial is reducible");
                Some(NfElem::from_poly(&self.field, &s))
            }
        }
    }

    fn from_rational(q: &Rational) -> Self {
        NfElem::rational(q.clone())
    }

    fn coords(&self) -> Vec<Rational> {
        let n = self.field.as_ref().map_or(1, |f| f.degree());
        (0..n).map(|i| self.c.coeff(i)).collect()
    }

    fn same_domain(&self, other: &Self) -> bool {
        self.field.is_none() || other.field.is_none() || same_field(&self.field, &other.field)
    }
}

/// Map from a field `K` into an extension `L`, determined by the image of the generator of `K`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FieldRef,
    target: FieldRef,
    image: NfElem,
}

impl Embedding {
    pub fn identity(k: &FieldRef) -> Self {
        let image = match k {
            Some(f) => NfElem::generator(f),
            None => NfElem::zero(),
        };
        Embedding { source: k.clone(), target: k.clone(), image }
    }

    pub fn source(&self) -> &FieldRef {
        &self.source
    }

    pub fn target(&self) -> &FieldRef {
        &self.target
    }

    pub fn apply(&self, a: &NfElem) -> NfElem {
        if a.field.is_none() || self.source.is_none() {
            return a.in_field(&self.target);
        }
        a.c.eval_with(&self.image, |q| NfElem::rational(q.clone())).in_field(&self.target)
    }

    pub fn apply_poly(&self, p: &UniPoly<NfElem>) -> UniPoly<NfElem> {
        p.map(|a| self.apply(a))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Embedding) -> Embedding {
        let image = if self.source.is_none() { NfElem::zero() } else { next.apply(&self.image) };
        Embedding { source: self.source.clone(), target: next.target.clone(), image }
    }
}

/// Result of adjoining a root of an irreducible polynomial.
#[derive(Clone, Debug)]
pub struct Extension {
    pub field: FieldRef,
    pub embedding: Embedding,
    /// The adjoined root, as an element of `field`.
    pub root: NfElem,
}

/// Adjoins a root of `p` to `k`, flattening to a primitive element over ℚ.
/// Irreducibility of `p` over `k` is checked.
pub fn field_extend(k: &FieldRef, p: &UniPoly<NfElem>) -> Result<Extension, ArithError> {
    if p.deg0() == 0 {
        return Err(ArithError::ZeroInput("cannot adjoin a root of a constant"));
    }
    let factors = super::factor::factor_over(k, p)?;
    if factors.len() > 1 || factors[0].1 > 1 {
        let f = &factors[0].0;
        return Err(ArithError::Reducible(f.render("x")));
    }
    Ok(field_extend_unchecked(k, p))
}

/// [`field_extend`] for a `p` already known to be irreducible over `k`.
pub fn field_extend_unchecked(k: &FieldRef, p: &UniPoly<NfElem>) -> Extension {
    let p = p.monic();
    let deg = p.deg0();
    assert!(deg >= 1);
    if deg == 1 {
        let root = -p.coeff(0).in_field(k);
        return Extension { field: k.clone(), embedding: Embedding::identity(k), root };
    }
    let base = match k {
        None => {
            let rp = p.map(|a| a.as_rational().expect("rational polynomial over Q"));
            let field = Some(NumberField::new(&rp));
            let root = NfElem::generator(field.as_ref().unwrap());
            return Extension { embedding: Embedding { source: None, target: field.clone(), image: NfElem::zero() }, field, root };
        }
        Some(f) => f.clone(),
    };
    let m = base.minpoly.clone();
    // Coefficients of p as polynomials in the generator t of K.
    let pt: Vec<UniPoly<Rational>> = p.coeffs().iter().map(|a| a.c.clone()).collect();
    let mut c = 0i64;
    let norm = loop {
        let n = shifted_norm(&m, &pt, c);
        if uni_gcd(&n, &n.derivative()).map(|g| g.deg0() == 0).unwrap_or(false) {
            break n;
        }
        c += 1;
    };
    let field = Some(NumberField::new(&norm));
    let theta = NfElem::generator(field.as_ref().unwrap());
    // gcd over L of m(t) and p(theta - c t) in the variable t is t - alpha.
    let ml: UniPoly<NfElem> = m.map(|q| NfElem::rational(q.clone()).in_field(&field));
    let lin = UniPoly::new(vec![theta.clone(), NfElem::from_int(-c).in_field(&field)]);
    let mut composed: UniPoly<NfElem> = UniPoly::zero();
    for coef in pt.iter().rev() {
        let cpoly = coef.map(|q| NfElem::rational(q.clone()).in_field(&field));
        composed = composed * lin.clone() + cpoly;
    }
    let g = uni_gcd(&ml, &composed).expect("nonzero");
    assert_eq!(g.deg0(), 1, "primitive element search produced a non-separating shift");
    let alpha = -g.coeff(0);
    let root = theta - NfElem::from_int(c) * alpha.clone();
    Extension { embedding: Embedding { source: k.clone(), target: field.clone(), image: alpha }, field, root }
}

/// `Res_t(m(t), P(x - c t, t))` as a polynomial in `x`, where `P(y, t) = Σ pt[j](t) y^j`.
pub(crate) fn shifted_norm(m: &UniPoly<Rational>, pt: &[UniPoly<Rational>], c: i64) -> UniPoly<Rational> {
    let deg = m.deg0() * (pt.len() - 1);
    let shift = UniPoly::new(vec![Rational::zero(), Rational::from_int(-c)]);
    let xs: Vec<Rational> = (0..=deg as i64).map(Rational::from_int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let lin = shift.clone() + UniPoly::constant(x.clone());
            let mut acc: UniPoly<Rational> = UniPoly::zero();
            for coef in pt.iter().rev() {
                acc = acc * lin.clone() + coef.clone();
            }
            if acc.is_zero() {
                Rational::zero()
            } else {
                resultant_field(m, &acc).expect("nonconstant minpoly")
            }
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly<Rational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (xs[i].clone() - xs[i - j].clone());
        }
    }
    let mut p = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = p * UniPoly::new(vec![-xs[i].clone(), Rational::one()]) + UniPoly::constant(dd[i].clone());
    }
    p
}

/// Adjoins a primitive `n`-th root of unity to `k`.
pub fn adjoin_root_of_unity(k: &FieldRef, n: usize) -> Extension {
    let cyc = cyclotomic(n);
    let lifted = cyc.map(|q| NfElem::rational(q.clone()).in_field(k));
    let factors = super::factor::factor_over(k, &lifted).expect("cyclotomic polynomial is squarefree");
    let least = factors.into_iter().map(|(f, _)| f).min_by(super::factor::cmp_poly).unwrap();
    field_extend_unchecked(k, &least)
}

/// The `n`-th cyclotomic polynomial over ℚ.
pub fn cyclotomic(n: usize) -> UniPoly<Rational> {
    assert!(n >= 1);
    let mut p = UniPoly::monomial(Rational::one(), n) - UniPoly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_rem(&cyclotomic(d)).0;
        }
    }
    p
}
