//! Univariate factorization over ℚ and over number fields.

use std::cmp::Ordering;

use algebraics::polynomial::Polynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::numfield::{shifted_norm, FieldRef, NfElem};
use super::poly::{squarefree_decompose, uni_gcd, UniPoly};
use super::scalar::{cmp_coords, Field, Rational, Ring};
use crate::error::ArithError;

/// Deterministic order on polynomials: by degree, then coefficientwise from the constant term.
pub fn cmp_poly<F: Field>(a: &UniPoly<F>, b: &UniPoly<F>) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            match cmp_coords(&x.coords(), &y.coords()) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// Scales to a primitive integer polynomial with positive leading coefficient.
pub fn primitive_integer(p: &UniPoly<Rational>) -> Vec<BigInt> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| &c / &g * &sign).collect()
}

fn irreducible_rational(sqfree: &UniPoly<Rational>) -> Vec<UniPoly<Rational>> {
    if sqfree.deg0() <= 1 {
        return vec![sqfree.monic()];
    }
    let zp: Polynomial<BigInt> = primitive_integer(sqfree).into();
    zp.factor()
        .polynomial_factors
        .into_iter()
        .map(|f| UniPoly::new(f.polynomial.into_coefficients().into_iter().map(Rational::from_integer).collect()).monic())
        .collect()
}

/// Monic irreducible factors over ℚ with multiplicities, in [`cmp_poly`] order.
/// The product of the factors times a rational constant is `f`.
pub fn factor_rational(f: &UniPoly<Rational>) -> Vec<(UniPoly<Rational>, usize)> {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    let mut out = Vec::new();
    for (g, m) in squarefree_decompose(f) {
        for h in irreducible_rational(&g) {
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    out
}

/// Monic irreducible factors of `f` over `k` with multiplicities (Trager's norm method).
pub fn factor_over(k: &FieldRef, f: &UniPoly<NfElem>) -> Result<Vec<(UniPoly<NfElem>, usize)>, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroInput("factoring the zero polynomial"));
    }
    let mut out = Vec::new();
    for (g, m) in squarefree_decompose(&f.map(|a| a.in_field(k))) {
        for h in trager(k, &g)? {
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

fn trager(k: &FieldRef, g: &UniPoly<NfElem>) -> Result<Vec<UniPoly<NfElem>>, ArithError> {
    if g.deg0() <= 1 {
        return Ok(vec![g.monic()]);
    }
    let Some(base) = k else {
        let q = g.map(|a| a.as_rational().expect("rational coefficients over Q"));
        return Ok(irreducible_rational(&q).into_iter().map(|h| h.map(|c| NfElem::rational(c.clone()))).collect());
    };
    let pt: Vec<UniPoly<Rational>> = g.coeffs().iter().map(|a| a.poly().clone()).collect();
    let mut c = 0i64;
    let norm = loop {
        let n = shifted_norm(base.minpoly(), &pt, c);
        if uni_gcd(&n, &n.derivative())?.deg0() == 0 {
            break n;
        }
        c += 1;
    };
    let parts = irreducible_rational(&norm);
    if parts.len() == 1 {
        return Ok(vec![g.monic()]);
    }
    // N_i(x + c t) shares exactly one irreducible factor with g.
    let shift = UniPoly::new(vec![NfElem::generator(base) * NfElem::from_int(c), NfElem::one()]);
    let mut out = Vec::with_capacity(parts.len());
    for part in parts {
        let lifted = part.map(|q| NfElem::rational(q.clone()).in_field(k)).compose(&shift);
        let h = uni_gcd(g, &lifted)?;
        if h.deg0() > 0 {
            out.push(h);
        }
    }
    Ok(out)
}
