//! Intersection multiplicities, Milnor numbers and the local equation of a pulled-back
//! curve, each available through a resultant route and a series route.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::curves::LocalFrame;
use crate::error::{ArithError, Error, Result};
use crate::exact_arith::bivariate::{bi_gcd, bi_map, partial_u, partial_v, strip_u, swap_uv, u_power, v_order_at_zero};
use crate::exact_arith::det::charpoly;
use crate::exact_arith::numfield::FieldRef;
use crate::exact_arith::resultant::{discriminant_order, resultant_order};
use crate::exact_arith::scalar::Rational;
use crate::exact_arith::series::{to_series_poly, SeriesPoly};
use crate::exact_arith::{weierstrass, BiPoly, NfElem, SeriesOrder, TruncSeries, UniPoly};
use crate::puiseux::{newton_puiseux, substitute, BranchSet, PuiseuxOrder};

/// Working precision schedule: start at `start`, double until `cap`.
///
/// Coefficient heights grow with the truncation index, so a low start that
/// doubles is much cheaper than a generous one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub start: usize,
    pub cap: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { start: 2, cap: 1024 }
    }
}

impl Precision {
    fn steps(self) -> impl Iterator<Item = usize> {
        let cap = self.cap.max(1);
        std::iter::successors(Some(self.start.clamp(1, cap)), move |&n| (n < cap).then(|| (2 * n).min(cap)))
    }
}

/// An intersection multiplicity; infinite exactly when the germs share a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Multiplicity {
    Finite(usize),
    #[serde(serialize_with = "infinite_str")]
    Infinite,
}

fn infinite_str<S: serde::Serializer>(s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str("infinite")
}

impl Multiplicity {
    pub fn finite(self) -> Option<usize> {
        match self {
            Multiplicity::Finite(n) => Some(n),
            Multiplicity::Infinite => None,
        }
    }

}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => f.write_str("infinite"),
        }
    }
}

/// The number field of the coefficients (ℚ when all are rational).
pub fn field_of(p: &BiPoly<NfElem>) -> FieldRef {
    p.coeffs().iter().flat_map(|c| c.coeffs()).find_map(|a| a.field().clone())
}

fn vanishes_at_origin(p: &BiPoly<NfElem>) -> bool {
    p.coeff(0).coeff(0).is_zero()
}

/// Order of `v` in `f(0, v)`.
pub fn v_general_order(f: &BiPoly<NfElem>) -> Result<usize, ArithError> {
    v_order_at_zero(f).ok_or_else(|| ArithError::NotVGeneral(u_power(f)))
}

/// `i₀(u, g) = ord_v g(0, v)`.
fn with_u_axis(g: &BiPoly<NfElem>) -> Multiplicity {
    if g.is_zero() {
        return Multiplicity::Infinite;
    }
    v_order_at_zero(g).map_or(Multiplicity::Infinite, Multiplicity::Finite)
}

/// Splits off the powers of `u`: `i₀(u^a f, u^b g) = a·i₀(u, g) + b·i₀(f, u) + i₀(f, g)`,
/// infinite when both are divisible by `u`.
fn split_u_powers(f: &BiPoly<NfElem>, g: &BiPoly<NfElem>) -> (Multiplicity, BiPoly<NfElem>, BiPoly<NfElem>) {
    let (a, b) = (u_power(f), u_power(g));
    let (f1, g1) = (strip_u(f, a), strip_u(g, b));
    if a > 0 && b > 0 {
        return (Multiplicity::Infinite, f1, g1);
    }
    let along = |p: &BiPoly<NfElem>| v_order_at_zero(p).expect("u does not divide a stripped polynomial");
    (Multiplicity::Finite(a * along(&g1) + b * along(&f1)), f1, g1)
}

fn common_component_at_origin(f: &BiPoly<NfElem>, g: &BiPoly<NfElem>) -> bool {
    let h = bi_gcd(f, g);
    h.deg0() > 0 && vanishes_at_origin(&h)
}

/// `i₀(f, g)` as the `u`-order of `Res_v` of the Weierstrass parts.
pub fn intersection_multiplicity(f: &BiPoly<NfElem>, g: &BiPoly<NfElem>, prec: Precision) -> Result<Multiplicity> {
    if f.is_zero() || g.is_zero() {
        return Ok(Multiplicity::Infinite);
    }
    if !vanishes_at_origin(f) || !vanishes_at_origin(g) {
        return Ok(Multiplicity::Finite(0));
    }
    let (axis, f1, g1) = split_u_powers(f, g);
    let Multiplicity::Finite(axis) = axis else { return Ok(Multiplicity::Infinite) };
    if !vanishes_at_origin(&f1) || !vanishes_at_origin(&g1) {
        return Ok(Multiplicity::Finite(axis));
    }
    for n in prec.steps() {
        let wf = weierstrass(&f1, n)?;
        let wg = weierstrass(&g1, n)?;
        if let SeriesOrder::Exact(o) = resultant_order(&wf.w, &wg.w, n)? {
            return Ok(Multiplicity::Finite(axis + o));
        }
    }
    if common_component_at_origin(&f1, &g1) {
        return Ok(Multiplicity::Infinite);
    }
    Err(ArithError::PrecisionCap { cap: prec.cap }.into())
}

/// `i₀(f, g) = Σ o_u(g(u, s(u)))` over the roots `s` of `f`.
pub fn intersection_multiplicity_puiseux(f: &BiPoly<NfElem>, g: &BiPoly<NfElem>, prec: Precision) -> Result<Multiplicity> {
    if f.is_zero() || g.is_zero() {
        return Ok(Multiplicity::Infinite);
    }
    if !vanishes_at_origin(f) || !vanishes_at_origin(g) {
        return Ok(Multiplicity::Finite(0));
    }
    let a = u_power(f);
    let f1 = strip_u(f, a);
    let axis = match with_u_axis(g) {
        Multiplicity::Finite(k) => a * k,
        Multiplicity::Infinite if a == 0 => 0,
        Multiplicity::Infinite => return Ok(Multiplicity::Infinite),
    };
    let branches = newton_puiseux(&f1, &field_of(&f1))?;
    let mut total = Rational::zero();
    for b in &branches.branches {
        let gb = b.embed_poly(g);
        let mut found = None;
        for n in prec.steps() {
            match substitute(&gb, &b.series(n)?).order() {
                PuiseuxOrder::Finite(o) => {
                    found = Some(o);
                    break;
                }
                PuiseuxOrder::Infinite => return Ok(Multiplicity::Infinite),
                PuiseuxOrder::AtLeast(_) => {}
            }
        }
        let Some(o) = found else {
            return if common_component_at_origin(&f1, g) {
                Ok(Multiplicity::Infinite)
            } else {
                Err(ArithError::PrecisionCap { cap: prec.cap }.into())
            };
        };
        total += o * Rational::from_integer(b.covered.into());
    }
    integral(&total).map(|t| Multiplicity::Finite(axis + t))
}

fn integral(q: &Rational) -> Result<usize> {
    if !q.is_integer() || q < &Rational::zero() {
        return Err(Error::Consistency(format!("non-integral local count {q}")));
    }
    Ok(q.to_integer().try_into().expect("fits in usize"))
}

/// `μ₀(f) = o_u(Disc W_f) − (b − 1)`.
pub fn milnor_number(f: &BiPoly<NfElem>, prec: Precision) -> Result<usize> {
    if !vanishes_at_origin(f) {
        return Ok(0);
    }
    let b = v_general_order(f)?;
    if b <= 1 {
        return Ok(0);
    }
    for n in prec.steps() {
        let w = weierstrass(f, n)?;
        if let SeriesOrder::Exact(o) = discriminant_order(&w.w, n)? {
            return o
                .checked_sub(b - 1)
                .ok_or_else(|| Error::Consistency(format!("discriminant order {o} below b - 1 = {}", b - 1)));
        }
    }
    if !crate::exact_arith::bivariate::squarefree_in_v(f) {
        return Err(ArithError::NonReduced.into());
    }
    Err(ArithError::PrecisionCap { cap: prec.cap }.into())
}

/// `μ₀(f) = i₀(∂f/∂u, ∂f/∂v)`.
pub fn milnor_direct(f: &BiPoly<NfElem>, prec: Precision) -> Result<Multiplicity> {
    if !vanishes_at_origin(f) {
        return Ok(Multiplicity::Finite(0));
    }
    intersection_multiplicity(&partial_u(f), &partial_v(f), prec)
}

/// A class of conjugate branches.
#[derive(Clone, Debug, Serialize)]
pub struct BranchClass {
    pub polydromy: usize,
    /// Branches over ℂ in the class.
    pub count: usize,
    pub field_degree: usize,
    /// Milnor number of each branch of the class.
    pub milnor: usize,
    /// Leading terms of the representative.
    pub head: String,
}

/// Local invariants of a reduced germ together with its branch decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct GermInvariants {
    pub order: usize,
    pub milnor: usize,
    pub branch_count: usize,
    /// One entry per branch over ℂ.
    pub polydromies: Vec<usize>,
    pub classes: Vec<BranchClass>,
    /// `Σ_{i≠j} i₀(h_i, h_j)` over ordered pairs of distinct branches.
    pub pairwise_sum: usize,
}

/// Milnor number of one branch of polydromy `n` whose series has exponent numerators `support`.
fn branch_milnor(n: usize, support: &[usize]) -> (usize, usize) {
    let mut sum = 0;
    for k in 1..n {
        sum += support.iter().find(|&&i| (i * k) % n != 0).copied().expect("support is coprime to the polydromy");
    }
    (sum + 1 - n, sum)
}

/// Branch decomposition of `f` and the additivity check
/// `μ₀(f) = Σ μ₀(h_i) + Σ_{i≠j} i₀(h_i, h_j) − r + 1`.
pub fn branch_invariants(f: &BiPoly<NfElem>, prec: Precision) -> Result<GermInvariants> {
    let order = if vanishes_at_origin(f) { v_general_order(f)? } else { 0 };
    let milnor = milnor_number(f, prec)?;
    if order == 0 {
        return Ok(GermInvariants { order, milnor, branch_count: 0, polydromies: vec![], classes: vec![], pairwise_sum: 0 });
    }
    let set: BranchSet = newton_puiseux(f, &field_of(f))?;
    let mut classes = Vec::new();
    let mut internal = Vec::new();
    for b in &set.branches {
        let head = b.head();
        let support: Vec<usize> = head.support().collect();
        let (mu, inner) = branch_milnor(b.polydromy(), &support);
        internal.push(inner);
        let shown = b.series(8).map(|s| s.render(4)).unwrap_or_else(|_| head.render(4));
        classes.push(BranchClass { polydromy: b.polydromy(), count: b.count(), field_degree: b.field_degree(), milnor: mu, head: shown });
    }
    let mut cross = Rational::zero();
    for a in 0..classes.len() {
        for c in 0..classes.len() {
            let i = set.pair_sum(a, c);
            cross += if a == c { i - Rational::from_integer((classes[a].count * internal[a]).into()) } else { i };
        }
    }
    let pairwise_sum = integral(&cross)?;
    let branch_count: usize = classes.iter().map(|c| c.count).sum();
    let polydromies = classes.iter().flat_map(|c| std::iter::repeat_n(c.polydromy, c.count)).collect();
    let from_branches = classes.iter().map(|c| c.count * c.milnor).sum::<usize>() + pairwise_sum + 1;
    if from_branches < branch_count || from_branches - branch_count != milnor {
        return Err(Error::Consistency(format!(
            "branch additivity fails: discriminant route gives {milnor}, branch route gives {}",
            from_branches as i64 - branch_count as i64
        )));
    }
    Ok(GermInvariants { order, milnor, branch_count, polydromies, classes, pairwise_sum })
}

/// The germs `(h, l)` of a frame, with `u` and `v` exchanged when `h` is not `v`-general.
pub fn frame_germs(frame: &LocalFrame) -> Result<(BiPoly<NfElem>, BiPoly<NfElem>, bool)> {
    if v_order_at_zero(&frame.h).is_some() {
        return Ok((frame.h.clone(), frame.l.clone(), false));
    }
    let h = swap_uv(&frame.h);
    match v_order_at_zero(&h) {
        Some(_) => Ok((h, swap_uv(&frame.l), true)),
        None => Err(ArithError::NotVGeneral(u_power(&frame.h)).into()),
    }
}

/// `Φ(u, ω) = Π_s (ω^d + l(u, s(u)))` over the roots `s` of `h`, modulo `u^n`:
/// the characteristic polynomial of multiplication by `−l` on `A[v]/(W_h)`, evaluated at `ω^d`.
pub fn local_phi(frame: &LocalFrame, n: usize) -> Result<SeriesPoly<NfElem>> {
    let (h, l, _) = frame_germs(frame)?;
    phi_from_germs(&h, &l, frame.d, n)
}

fn phi_from_germs(h: &BiPoly<NfElem>, l: &BiPoly<NfElem>, d: usize, n: usize) -> Result<SeriesPoly<NfElem>> {
    let w = weierstrass(h, n)?;
    let b = w.order;
    let ls = to_series_poly(l, n);
    let mut m = vec![vec![TruncSeries::zero(); b]; b];
    for j in 0..b {
        let col = (UniPoly::monomial(TruncSeries::one(), j) * ls.clone()).rem_monic(&w.w);
        for (i, row) in m.iter_mut().enumerate() {
            row[j] = -col.coeff(i);
        }
    }
    let chi = charpoly(&m);
    let mut phi = vec![TruncSeries::zero(); b * d + 1];
    for (k, c) in chi.coeffs().iter().enumerate() {
        phi[k * d] = c.clone();
    }
    Ok(UniPoly::new(phi))
}

/// Milnor number of `Φ` at the origin, from the order of its `ω`-discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    /// `ω`-degree of `Φ`.
    pub degree: usize,
    pub disc_order: usize,
    pub milnor: usize,
    pub precision: usize,
    /// Whether `u` and `v` were exchanged to make `h` `v`-general.
    pub swapped: bool,
}

pub fn phi_milnor(frame: &LocalFrame, prec: Precision) -> Result<PhiReport> {
    let (h, l, swapped) = frame_germs(frame)?;
    for n in prec.steps() {
        let phi = phi_from_germs(&h, &l, frame.d, n)?;
        let degree = phi.deg0();
        if degree <= 1 {
            return Ok(PhiReport { degree, disc_order: 0, milnor: 0, precision: n, swapped });
        }
        if let SeriesOrder::Exact(o) = discriminant_order(&phi, n)? {
            let milnor = o
                .checked_sub(degree - 1)
                .ok_or_else(|| Error::Consistency(format!("discriminant order {o} of a degree {degree} polynomial")))?;
            return Ok(PhiReport { degree, disc_order: o, milnor, precision: n, swapped });
        }
    }
    Err(ArithError::PrecisionCap { cap: prec.cap }.into())
}

/// Outcome of testing `Φ` for repeated factors.
#[derive(Clone, Debug)]
pub struct SquarefreeCheck {
    pub squarefree: bool,
    pub disc_order: SeriesOrder,
    /// A common factor of the truncations of `Φ` and `∂Φ/∂ω`, when one exists.
    pub witness: Option<BiPoly<NfElem>>,
}

pub fn phi_squarefree_check(phi: &SeriesPoly<NfElem>) -> Result<SquarefreeCheck> {
    let n = crate::exact_arith::series::series_poly_prec(phi);
    if phi.deg0() <= 1 {
        return Ok(SquarefreeCheck { squarefree: true, disc_order: SeriesOrder::Exact(0), witness: None });
    }
    let disc_order = discriminant_order(phi, n)?;
    if disc_order.exact().is_some() {
        return Ok(SquarefreeCheck { squarefree: true, disc_order, witness: None });
    }
    let exact: BiPoly<NfElem> = phi.map(|c| c.to_poly());
    let g = bi_gcd(&exact, &partial_v(&exact));
    let witness = (g.deg0() > 0).then(|| bi_map(&g, |a| a.clone()));
    Ok(SquarefreeCheck { squarefree: false, disc_order, witness })
}

/// `i₀(h, l)` for a frame, where `l` is smooth: the order of `h` along the root of `l`.
pub fn frame_intersection(frame: &LocalFrame, prec: Precision) -> Result<Multiplicity> {
    intersection_multiplicity(&frame.h, &frame.l, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::bivariate::bi_from_terms;
    use crate::exact_arith::Ring;

    fn bp(terms: &[(usize, usize, i64)]) -> BiPoly<NfElem> {
        bi_from_terms(&terms.iter().map(|&(i, j, c)| (i, j, NfElem::from_int(c))).collect::<Vec<_>>())
    }

    const P: Precision = Precision { start: 8, cap: 256 };

    #[test]
    fn v_general_examples() {
        assert_eq!(v_general_order(&bp(&[(0, 2, 1), (3, 0, -1)])).unwrap(), 2);
        assert!(matches!(v_general_order(&bp(&[(1, 1, 1), (1, 0, 1)])), Err(ArithError::NotVGeneral(1))));
        assert_eq!(v_general_order(&bp(&[(0, 1, 1), (2, 0, 1)])).unwrap(), 1);
    }

    #[test]
    fn intersection_examples() {
        let cusp = bp(&[(0, 2, 1), (3, 0, -1)]);
        let v = bp(&[(0, 1, 1)]);
        let u = bp(&[(1, 0, 1)]);
        assert_eq!(intersection_multiplicity(&v, &u, P).unwrap(), Multiplicity::Finite(1));
        assert_eq!(intersection_multiplicity(&cusp, &v, P).unwrap(), Multiplicity::Finite(3));
        assert_eq!(intersection_multiplicity(&cusp, &cusp, P).unwrap(), Multiplicity::Infinite);
        assert_eq!(intersection_multiplicity(&u, &u, P).unwrap(), Multiplicity::Infinite);
    }

    #[test]
    fn puiseux_route_examples() {
        let cusp = bp(&[(0, 2, 1), (3, 0, -1)]);
        let g = bp(&[(0, 1, 1), (2, 0, -1)]);
        assert_eq!(intersection_multiplicity_puiseux(&cusp, &g, P).unwrap(), Multiplicity::Finite(3));
        let f = bp(&[(0, 1, 1), (1, 0, -1)]);
        let g = bp(&[(0, 1, 1), (1, 0, -2)]);
        assert_eq!(intersection_multiplicity_puiseux(&f, &g, P).unwrap(), Multiplicity::Finite(1));
        let f = bp(&[(0, 2, 1), (2, 0, -1)]);
        assert_eq!(intersection_multiplicity_puiseux(&f, &bp(&[(0, 1, 1)]), P).unwrap(), Multiplicity::Finite(2));
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(milnor_number(&bp(&[(0, 2, 1), (3, 0, -1)]), P).unwrap(), 2);
        assert_eq!(milnor_number(&bp(&[(0, 2, 1), (2, 0, -1)]), P).unwrap(), 1);
        assert_eq!(milnor_number(&bp(&[(0, 1, 1), (2, 0, 1)]), P).unwrap(), 0);
        // (v - u)(v - 2u)(v + u)
        let triple = bp(&[(0, 1, 1), (1, 0, -1)]) * bp(&[(0, 1, 1), (1, 0, -2)]) * bp(&[(0, 1, 1), (1, 0, 1)]);
        assert_eq!(milnor_direct(&triple, P).unwrap(), Multiplicity::Finite(4));
        assert_eq!(milnor_direct(&bp(&[(1, 1, 1)]), P).unwrap(), Multiplicity::Finite(1));
        assert_eq!(milnor_direct(&bp(&[(0, 2, 1), (3, 0, -1)]), P).unwrap(), Multiplicity::Finite(2));
    }

    #[test]
    fn branch_examples() {
        let node = branch_invariants(&bp(&[(0, 2, 1), (2, 0, -1)]), P).unwrap();
        assert_eq!((node.branch_count, node.pairwise_sum, node.milnor), (2, 2, 1));
        let cusp = branch_invariants(&bp(&[(0, 2, 1), (3, 0, -1)]), P).unwrap();
        assert_eq!((cusp.branch_count, cusp.milnor, cusp.polydromies.clone()), (1, 2, vec![2]));
        let f = bp(&[(0, 2, 1), (3, 0, -1)]) * bp(&[(0, 1, 1), (1, 0, -1)]);
        let g = branch_invariants(&f, P).unwrap();
        assert_eq!((g.branch_count, g.pairwise_sum, g.milnor), (2, 4, 5));
    }

    #[test]
    fn squarefree_control() {
        let phi: SeriesPoly<NfElem> = to_series_poly(&bp(&[(0, 2, 1), (1, 0, -1)]), 16);
        assert!(phi_squarefree_check(&phi).unwrap().squarefree);
        let sq = phi.clone() * phi;
        let check = phi_squarefree_check(&sq).unwrap();
        assert!(!check.squarefree);
        assert_eq!(check.witness.unwrap().deg0(), 2);
    }
}
