//! Helpers for exact bivariate polynomials `Σ_j c_j(u) v^j`.

use num_traits::{One, Zero};

use super::hensel::BiPoly;
use super::poly::{uni_gcd, UniPoly};
use super::resultant::resultant_field;
use super::scalar::{Field, Ring};
use super::series::TruncSeries;

/// Builds from `(u-exponent, v-exponent, coefficient)` triples.
pub fn bi_from_terms<R: Ring>(terms: &[(usize, usize, R)]) -> BiPoly<R> {
    let dv = terms.iter().map(|t| t.1).max().map_or(0, |d| d + 1);
    let mut rows: Vec<Vec<R>> = vec![Vec::new(); dv];
    for (i, j, c) in terms {
        let row = &mut rows[*j];
        if row.len() <= *i {
            row.resize(i + 1, R::zero());
        }
        row[*i] = row[*i].clone() + c.clone();
    }
    UniPoly::new(rows.into_iter().map(UniPoly::new).collect())
}

pub fn bi_map<R: Ring, S: Ring>(p: &BiPoly<R>, f: impl Fn(&R) -> S) -> BiPoly<S> {
    p.map(|row| row.map(&f))
}

/// `p(0, 0)`.
pub fn bi_constant<R: Ring>(p: &BiPoly<R>) -> R {
    p.coeff(0).coeff(0)
}

/// Order of `v` in `p(0, v)`, `None` when `p(0, v)` vanishes identically.
pub fn v_order_at_zero<R: Ring>(p: &BiPoly<R>) -> Option<usize> {
    p.coeffs().iter().position(|c| !c.coeff(0).is_zero())
}

/// Largest `k` with `u^k | p` (zero for the zero polynomial).
pub fn u_power<R: Ring>(p: &BiPoly<R>) -> usize {
    p.coeffs().iter().filter_map(|c| c.low_order()).min().unwrap_or(0)
}

/// `p / u^k`.
pub fn strip_u<R: Ring>(p: &BiPoly<R>, k: usize) -> BiPoly<R> {
    p.map(|c| c.unshift(k))
}

pub fn partial_v<R: Ring>(p: &BiPoly<R>) -> BiPoly<R> {
    p.derivative()
}

pub fn partial_u<R: Ring>(p: &BiPoly<R>) -> BiPoly<R> {
    p.map(|c| c.derivative())
}

/// `p(v, u)`.
pub fn swap_uv<R: Ring>(p: &BiPoly<R>) -> BiPoly<R> {
    let mut terms = Vec::new();
    for (j, c) in p.coeffs().iter().enumerate() {
        for (i, a) in c.coeffs().iter().enumerate() {
            if !a.is_zero() {
                terms.push((j, i, a.clone()));
            }
        }
    }
    bi_from_terms(&terms)
}

/// Total degree in `u` (maximum over the `v` coefficients).
pub fn u_degree<R: Ring>(p: &BiPoly<R>) -> usize {
    p.coeffs().iter().map(|c| c.deg0()).max().unwrap_or(0)
}

/// `p(t^q, s(t))` modulo `t^prec`.
pub fn eval_on_series<F: Field>(p: &BiPoly<F>, s: &TruncSeries<F>, q: usize, prec: usize) -> TruncSeries<F> {
    let s = s.truncate(prec);
    let mut acc = TruncSeries::new(vec![], prec);
    for c in p.coeffs().iter().rev() {
        let mut stretched = vec![F::zero(); (c.deg0() * q + 1).min(prec)];
        for (i, a) in c.coeffs().iter().enumerate() {
            if i * q < prec {
                stretched[i * q] = a.clone();
            }
        }
        acc = acc * s.clone() + TruncSeries::new(stretched, prec);
    }
    acc
}

/// Whether `p` has no repeated factor of positive `v`-degree, decided through
/// `Res_v(p, ∂p/∂v)` at enough integer values of `u` to exclude its vanishing.
pub fn squarefree_in_v<F: Field>(p: &BiPoly<F>) -> bool {
    let dv = p.deg0();
    if dv == 0 {
        return true;
    }
    let dp = partial_v(p);
    let bound = u_degree(p) * (2 * dv) + 1;
    for k in 0..=bound as i64 {
        let u0 = F::from_int(k);
        let lc = p.lc().eval(&u0);
        if lc.is_zero() {
            continue;
        }
        let f0 = p.map(|c| UniPoly::constant(c.eval(&u0))).map(|c| c.coeff(0));
        let g0 = dp.map(|c| UniPoly::constant(c.eval(&u0))).map(|c| c.coeff(0));
        if g0.is_zero() {
            continue;
        }
        if f0.deg0() == 0 || !resultant_field(&f0, &g0).map(|r| r.is_zero()).unwrap_or(true) {
            return true;
        }
    }
    false
}

fn u_content<F: Field>(p: &BiPoly<F>) -> UniPoly<F> {
    let mut g = UniPoly::zero();
    for c in p.coeffs().iter().filter(|c| !c.is_zero()) {
        g = if g.is_zero() { c.monic() } else { uni_gcd(&g, c).expect("nonzero") };
        if g.deg0() == 0 {
            break;
        }
    }
    g
}

fn primitive<F: Field>(p: &BiPoly<F>) -> BiPoly<F> {
    let c = u_content(p);
    p.map(|x| x.div_rem(&c).0)
}

/// Greatest common divisor in `K[u][v]`, normalized so its leading coefficient is monic in `u`.
pub fn bi_gcd<F: Field>(a: &BiPoly<F>, b: &BiPoly<F>) -> BiPoly<F> {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let content = uni_gcd(&u_content(a), &u_content(b)).expect("nonzero");
    let (mut x, mut y) = (primitive(a), primitive(b));
    if x.deg0() < y.deg0() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        if y.deg0() == 0 {
            x = UniPoly::one();
            break;
        }
        let r = x.pseudo_rem(&y);
        x = std::mem::replace(&mut y, if r.is_zero() { r } else { primitive(&r) });
    }
    normalize(&x.map(|c| c.clone() * content.clone()))
}

fn normalize<F: Field>(p: &BiPoly<F>) -> BiPoly<F> {
    if p.is_zero() {
        return p.clone();
    }
    let lead = p.lc().lc().inv().expect("nonzero");
    p.map(|c| c.scale(&lead))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::scalar::{rat, Rational};

    fn bp(terms: &[(usize, usize, i64)]) -> BiPoly<Rational> {
        bi_from_terms(&terms.iter().map(|&(i, j, c)| (i, j, rat(c))).collect::<Vec<_>>())
    }

    #[test]
    fn gcd_of_products() {
        let a = bp(&[(0, 2, 1), (3, 0, -1)]); // v^2 - u^3
        let b = bp(&[(0, 1, 1), (1, 0, -1)]); // v - u
        let c = bp(&[(0, 1, 1), (2, 0, 1)]); // v + u^2
        let g = bi_gcd(&(a.clone() * b.clone()), &(a.clone() * c.clone()));
        assert_eq!(g, a);
        assert_eq!(bi_gcd(&b, &c), bp(&[(0, 0, 1)]));
    }

    #[test]
    fn squarefree_detection() {
        let a = bp(&[(0, 2, 1), (3, 0, -1)]);
        assert!(squarefree_in_v(&a));
        assert!(!squarefree_in_v(&(a.clone() * a)));
    }

    #[test]
    fn series_substitution() {
        // (v^2 - u^3) at v = t^3, u = t^2 vanishes
        let a = bp(&[(0, 2, 1), (3, 0, -1)]);
        let s = TruncSeries::new(vec![rat(0), rat(0), rat(0), rat(1)], 20);
        assert!(eval_on_series(&a, &s, 2, 20).is_zero());
    }
}
