//! Hensel lifting of coprime factorizations and Weierstrass preparation.

use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::scalar::Field;
use super::series::{series_poly_prec, to_series_poly, SeriesPoly, TruncSeries};
use crate::error::ArithError;

/// Exact bivariate polynomial: coefficients of `v^j` are polynomials in `u`.
pub type BiPoly<F> = UniPoly<UniPoly<F>>;

/// `F ≡ W·U mod u^N` with `W` a Weierstrass polynomial of degree `order` and `U` a unit.
#[derive(Clone, Debug)]
pub struct Weierstrass<F: Field> {
    pub w: SeriesPoly<F>,
    pub unit: SeriesPoly<F>,
    pub order: usize,
}

/// The `u^k` slice of a series polynomial, as a polynomial in `v`.
fn slice<F: Field>(f: &SeriesPoly<F>, k: usize) -> UniPoly<F> {
    UniPoly::new(f.coeffs().iter().map(|c| c.coeff(k)).collect())
}

fn assemble<F: Field>(slices: &[UniPoly<F>], prec: usize) -> SeriesPoly<F> {
    let deg = slices.iter().map(|s| s.len()).max().unwrap_or(0);
    UniPoly::new(
        (0..deg)
            .map(|j| TruncSeries::new(slices.iter().map(|s| s.coeff(j)).collect(), prec))
            .collect(),
    )
}

/// Lifts `F(0, v) = g0·h0` (with `g0` monic and coprime to `h0`) to `F ≡ G·H mod u^n`,
/// where `G` is monic of degree `deg g0` and `G ≡ g0`, `H ≡ h0` at `u = 0`.
pub fn hensel_lift_pair<F: Field>(
    f: &SeriesPoly<F>,
    g0: &UniPoly<F>,
    h0: &UniPoly<F>,
    n: usize,
) -> Result<(SeriesPoly<F>, SeriesPoly<F>), ArithError> {
    let n = n.min(series_poly_prec(f));
    assert!(g0.is_monic(), "lifted factor must be monic");
    if slice(f, 0) != g0.clone() * h0.clone() {
        return Err(ArithError::ZeroInput("F(0, v) is not the product of the given factors"));
    }
    let b = g0.deg0();
    let (one, s, _) = h0.xgcd(g0);
    if !one.is_one() {
        return Err(ArithError::ZeroInput("factors to lift are not coprime"));
    }
    let mut gs: Vec<UniPoly<F>> = vec![g0.clone()];
    let mut hs: Vec<UniPoly<F>> = vec![h0.clone()];
    for k in 1..n {
        let mut r = slice(f, k);
        for i in 1..k {
            r = r - gs[i].clone() * hs[k - i].clone();
        }
        let gk = if b == 0 { UniPoly::zero() } else { (r.clone() * s.clone()).rem(g0) };
        let hk = (r - h0.clone() * gk.clone()).div_rem(g0).0;
        gs.push(gk);
        hs.push(hk);
    }
    let mut g = assemble(&gs, n);
    // The leading coefficient of G is exactly 1.
    let mut gc = g.clone().into_coeffs();
    gc.resize(b + 1, TruncSeries::zero());
    gc[b] = TruncSeries::one();
    g = UniPoly::new(gc);
    Ok((g, assemble(&hs, n)))
}

/// Weierstrass preparation of a series polynomial modulo `u^n`.
pub fn weierstrass_series<F: Field>(f: &SeriesPoly<F>, n: usize) -> Result<Weierstrass<F>, ArithError> {
    let f0 = slice(f, 0);
    let Some(b) = f0.low_order() else {
        let mult = f
            .coeffs()
            .iter()
            .filter_map(|c| c.order().exact())
            .min()
            .unwrap_or(series_poly_prec(f));
        return Err(ArithError::NotVGeneral(mult));
    };
    let g0 = UniPoly::monomial(F::one(), b);
    let h0 = f0.unshift(b);
    let (w, unit) = hensel_lift_pair(f, &g0, &h0, n)?;
    Ok(Weierstrass { w, unit, order: b })
}

/// Weierstrass preparation of an exact bivariate polynomial modulo `u^n`.
pub fn weierstrass<F: Field>(f: &BiPoly<F>, n: usize) -> Result<Weierstrass<F>, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroInput("Weierstrass preparation of zero"));
    }
    if f.coeffs().iter().all(|c| c.coeff(0).is_zero()) {
        let mult = f.coeffs().iter().filter_map(|c| c.low_order()).min().unwrap_or(0);
        return Err(ArithError::NotVGeneral(mult));
    }
    weierstrass_series(&to_series_poly(f, n), n)
}
