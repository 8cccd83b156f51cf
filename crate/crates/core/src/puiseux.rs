//! Fractionary power series and the Newton–Puiseux algorithm.
//!
//! Roots of `f(u, v) = 0` near the origin are grouped into classes: one class per
//! chain of irreducible edge-polynomial factors. A class is stored through one
//! representative series over an explicit extension field, together with the
//! number of roots of `f` it stands for.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::ArithError;
use crate::exact_arith::bivariate::{bi_map, eval_on_series, squarefree_in_v, u_degree, v_order_at_zero};
use crate::exact_arith::factor::{cmp_poly, factor_over};
use crate::exact_arith::numfield::{adjoin_root_of_unity, field_extend_unchecked, Embedding, FieldRef};
use crate::exact_arith::scalar::{fmt_rational, ratio, Rational};
use crate::exact_arith::{weierstrass, BiPoly, NfElem, TruncSeries, UniPoly, EXACT};

/// Order of a fractionary series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PuiseuxOrder {
    Finite(Rational),
    /// Every trusted coefficient vanishes.
    AtLeast(Rational),
    /// The series is exactly zero.
    Infinite,
}

impl PuiseuxOrder {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            PuiseuxOrder::Finite(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for PuiseuxOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PuiseuxOrder::Finite(r) => f.write_str(&fmt_rational(r)),
            PuiseuxOrder::AtLeast(r) => write!(f, ">= {}", fmt_rational(r)),
            PuiseuxOrder::Infinite => f.write_str("infinite"),
        }
    }
}

/// `Σ a_i u^{i/n}`, trusted for `i < trunc` (`trunc == EXACT` for a finite sum).
#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    ram: usize,
    coeffs: Vec<NfElem>,
    trunc: usize,
    field: FieldRef,
}

impl PuiseuxSeries {
    pub fn new(ram: usize, mut coeffs: Vec<NfElem>, trunc: usize, field: FieldRef) -> Self {
        assert!(ram >= 1, "ramification index must be positive");
        coeffs.truncate(trunc.min(coeffs.len()));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let coeffs = coeffs.into_iter().map(|c| c.in_field(&field)).collect();
        PuiseuxSeries { ram, coeffs, trunc, field }
    }

    /// Series in `t = u^{1/ram}`.
    pub fn from_series(ram: usize, s: &TruncSeries<NfElem>, field: FieldRef) -> Self {
        Self::new(ram, s.coeffs().to_vec(), s.prec(), field)
    }

    pub fn ram(&self) -> usize {
        self.ram
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeff(&self, i: usize) -> NfElem {
        self.coeffs.get(i).cloned().unwrap_or_else(NfElem::zero)
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    /// Exponent bound `T`: exponents below it are trusted. `None` when exact.
    pub fn bound(&self) -> Option<Rational> {
        (!self.is_exact()).then(|| ratio(self.trunc as i64, self.ram as i64))
    }

    /// Numerators `i` of the nonzero terms.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }

    pub fn order(&self) -> PuiseuxOrder {
        match self.support().next() {
            Some(i) => PuiseuxOrder::Finite(ratio(i as i64, self.ram as i64)),
            None if self.is_exact() => PuiseuxOrder::Infinite,
            None => PuiseuxOrder::AtLeast(ratio(self.trunc as i64, self.ram as i64)),
        }
    }

    /// As a truncated series in `t = u^{1/ram}`.
    pub fn to_series(&self) -> TruncSeries<NfElem> {
        TruncSeries::new(self.coeffs.clone(), self.trunc)
    }

    /// Reduces the ramification index so that it is coprime to the support.
    pub fn normalize(&self) -> Self {
        let g = self.support().fold(self.ram, |g, i| g.gcd(&i));
        if g <= 1 {
            return self.clone();
        }
        let coeffs = self.coeffs.iter().step_by(g).cloned().collect();
        let trunc = if self.is_exact() { EXACT } else { self.trunc / g };
        Self::new(self.ram / g, coeffs, trunc, self.field.clone())
    }

    /// Polydromy order: the ramification index of the normal form.
    pub fn polydromy(&self) -> usize {
        self.normalize().ram
    }

    /// Re-expresses the series with ramification index `ram · k`.
    pub fn stretch(&self, k: usize) -> Self {
        let mut c = vec![NfElem::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * k] = a.clone();
        }
        let trunc = if self.is_exact() { EXACT } else { self.trunc * k };
        Self::new(self.ram * k, c, trunc, self.field.clone())
    }

    /// Maps the coefficients into a larger field.
    pub fn embed(&self, emb: &Embedding) -> Self {
        Self::new(self.ram, self.coeffs.iter().map(|a| emb.apply(a)).collect(), self.trunc, emb.target().clone())
    }

    /// All `ram` conjugates `a_i ↦ ζ^{αi} a_i` (`α = 1..=ram`), over the field extended by a
    /// primitive `ram`-th root of unity `ζ`. The last entry is the series itself.
    pub fn conjugates(&self) -> Vec<PuiseuxSeries> {
        let n = self.ram;
        if n == 1 {
            return vec![self.clone()];
        }
        let ext = adjoin_root_of_unity(&self.field, n);
        let base = self.embed(&ext.embedding);
        let mut out = Vec::with_capacity(n);
        let mut step = NfElem::one();
        for _ in 1..=n {
            step = step * ext.root.clone();
            let mut twist = NfElem::one().in_field(&ext.field);
            let c = base
                .coeffs
                .iter()
                .map(|a| {
                    let r = a.clone() * twist.clone();
                    twist = twist.clone() * step.clone();
                    r
                })
                .collect();
            out.push(Self::new(n, c, self.trunc, ext.field.clone()));
        }
        out
    }

    /// The conjugate with index `α` (`1..=ram`).
    pub fn conjugate(&self, alpha: usize) -> PuiseuxSeries {
        assert!((1..=self.ram).contains(&alpha), "conjugate index out of range");
        self.conjugates().swap_remove(alpha - 1)
    }

    /// Renders up to `terms` nonzero terms, e.g. `u^(3/2) - 1/2*u^2 + ...`.
    pub fn render(&self, terms: usize) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut more = false;
        for i in self.support() {
            if parts.len() == terms {
                more = true;
                break;
            }
            let e = ratio(i as i64, self.ram as i64);
            let mono = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                "u".into()
            } else if e.is_integer() {
                format!("u^{}", e)
            } else {
                format!("u^({})", fmt_rational(&e))
            };
            let a = &self.coeffs[i];
            let coef = match a.as_rational() {
                Some(q) if q.is_one() && !mono.is_empty() => String::new(),
                Some(q) if (-q.clone()).is_one() && !mono.is_empty() => "-".into(),
                Some(q) => fmt_rational(&q),
                None => format!("({a})"),
            };
            parts.push(match (coef.as_str(), mono.is_empty()) {
                (c, true) => c.to_string(),
                ("" | "-", false) => format!("{coef}{mono}"),
                (_, false) => format!("{coef}*{mono}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        let mut s = parts.join(" + ").replace("+ -", "- ");
        if more || !self.is_exact() {
            s.push_str(" + ...");
        }
        s
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(6))
    }
}

/// `g(u, s(u))`. The coefficients of `g` must be rational or lie in the field of `s`.
/// Precision is not lost: the result is trusted below the same exponent bound as `s`.
pub fn substitute(g: &BiPoly<NfElem>, s: &PuiseuxSeries) -> PuiseuxSeries {
    let g = bi_map(g, |a| a.in_field(&s.field));
    let t = s.to_series();
    if s.is_exact() {
        let deg = u_degree(&g) * s.ram + g.deg0() * s.coeffs.len() + 1;
        let r = eval_on_series(&g, &TruncSeries::new(t.coeffs().to_vec(), deg), s.ram, deg);
        return PuiseuxSeries::new(s.ram, r.coeffs().to_vec(), EXACT, s.field.clone());
    }
    let r = eval_on_series(&g, &t, s.ram, s.trunc);
    PuiseuxSeries::new(s.ram, r.coeffs().to_vec(), s.trunc, s.field.clone())
}

#[derive(Clone, Debug)]
enum Tail {
    /// The root is exactly the prefix.
    Exact,
    /// Polynomial of `v`-order 1 whose small root is the tail.
    Simple(BiPoly<NfElem>),
}

/// A class of roots of `f` sharing one chain of Newton-polygon choices.
///
/// The representative is `prefix(t) + t^exp · tail(t)` with `u = t^ram`; its
/// conjugates under `t ↦ ζt` and under the embeddings of `field` over the base
/// field make up `covered` roots of `f`, i.e. `covered / polydromy` branches over ℂ.
#[derive(Clone, Debug)]
pub struct Branch {
    pub field: FieldRef,
    /// Base field into `field`.
    pub embedding: Embedding,
    pub covered: usize,
    ram: usize,
    prefix: UniPoly<NfElem>,
    exp: usize,
    tail: Tail,
    path: Vec<usize>,
}

impl Branch {
    pub fn polydromy(&self) -> usize {
        self.ram
    }

    /// Number of branches over ℂ in the class.
    pub fn count(&self) -> usize {
        self.covered / self.ram
    }

    /// Degree of the field of the representative over ℚ.
    pub fn field_degree(&self) -> usize {
        self.field.as_ref().map_or(1, |k| k.degree())
    }

    /// Exponents of the terms that fix the polydromy and the characteristic exponents.
    pub fn head(&self) -> PuiseuxSeries {
        PuiseuxSeries::new(self.ram, self.prefix.coeffs().to_vec(), EXACT, self.field.clone())
    }

    /// Representative series trusted for exponents below `bound`.
    pub fn series(&self, bound: usize) -> Result<PuiseuxSeries, ArithError> {
        let trunc = bound.saturating_mul(self.ram);
        match &self.tail {
            Tail::Exact => Ok(self.head()),
            Tail::Simple(f) => {
                let mut c = self.prefix.coeffs().to_vec();
                if trunc > self.exp {
                    let n = trunc - self.exp;
                    let w = weierstrass(f, n)?;
                    let root = -w.w.coeff(0);
                    c.resize(trunc, NfElem::zero());
                    for (i, a) in root.coeffs().iter().enumerate() {
                        c[self.exp + i] = c[self.exp + i].clone() + a.clone();
                    }
                }
                Ok(PuiseuxSeries::new(self.ram, c, trunc, self.field.clone()))
            }
        }
    }

    /// Maps a polynomial over the base field into the field of the representative.
    pub fn embed_poly(&self, g: &BiPoly<NfElem>) -> BiPoly<NfElem> {
        bi_map(g, |a| self.embedding.apply(a))
    }
}

#[derive(Clone, Debug)]
struct Group {
    /// Exponent of the first term beyond the common prefix; `None` for an exact root.
    gamma: Option<Rational>,
    edge: usize,
    delta: usize,
    q: usize,
    child: Child,
}

#[derive(Clone, Debug)]
enum Child {
    Leaf,
    Node(Vec<Group>),
}

/// All roots of a germ at the origin, as root classes.
#[derive(Clone, Debug)]
pub struct BranchSet {
    pub branches: Vec<Branch>,
    /// The `v`-order of the germ, equal to `Σ covered`.
    pub order: usize,
    root: Child,
}

impl BranchSet {
    /// Number of branches over ℂ.
    pub fn branch_count(&self) -> usize {
        self.branches.iter().map(Branch::count).sum()
    }

    /// `Σ o_u(x − y)` over pairs of distinct roots `x` in class `a`, `y` in class `b`.
    pub fn pair_sum(&self, a: usize, b: usize) -> Rational {
        let pa = &self.branches[a].path;
        let pb = &self.branches[b].path;
        match &self.root {
            Child::Leaf => Rational::zero(),
            Child::Node(groups) => pair_sum(groups, pa, pb),
        }
    }
}

fn covered_along(groups: &[Group], path: &[usize]) -> usize {
    let g = &groups[path[0]];
    let below = match &g.child {
        Child::Leaf => 1,
        Child::Node(sub) => covered_along(sub, &path[1..]),
    };
    g.delta * g.q * below
}

fn contact(a: &Group, b: &Group) -> Rational {
    match (&a.gamma, &b.gamma) {
        (Some(x), Some(_)) if a.edge == b.edge => x.clone(),
        (Some(x), Some(y)) => x.clone().min(y.clone()),
        (Some(x), None) | (None, Some(x)) => x.clone(),
        (None, None) => unreachable!("two exact roots in one node"),
    }
}

fn pair_sum(groups: &[Group], pa: &[usize], pb: &[usize]) -> Rational {
    let ca = Rational::from_integer(covered_along(groups, pa).into());
    let cb = Rational::from_integer(covered_along(groups, pb).into());
    let (ga, gb) = (&groups[pa[0]], &groups[pb[0]]);
    if pa[0] != pb[0] {
        return ca * cb * contact(ga, gb);
    }
    let Some(gamma) = &ga.gamma else { return Rational::zero() };
    let same = pa == pb;
    let here = if same { gamma.clone() * (ca.clone() * ca.clone() - ca) } else { gamma.clone() * ca * cb };
    let below = match &ga.child {
        Child::Leaf => Rational::zero(),
        Child::Node(sub) => pair_sum(sub, &pa[1..], &pb[1..]),
    };
    here + Rational::from_integer(ga.delta.into()) * below
}

struct PathState {
    field: FieldRef,
    embedding: Embedding,
    prefix: UniPoly<NfElem>,
    exp: usize,
    ram: usize,
    covered: usize,
    path: Vec<usize>,
}

/// Newton–Puiseux expansion of the roots of `f` at the origin.
///
/// `f` has coefficients in `field`, is `v`-general, and must have no repeated factor.
pub fn newton_puiseux(f: &BiPoly<NfElem>, field: &FieldRef) -> Result<BranchSet, ArithError> {
    let f = bi_map(f, |a| a.in_field(field));
    let Some(order) = v_order_at_zero(&f) else {
        let mult = f.coeffs().iter().filter_map(|c| c.low_order()).min().unwrap_or(0);
        return Err(ArithError::NotVGeneral(mult));
    };
    if order > 0 && !squarefree_in_v(&f) {
        return Err(ArithError::NonReduced);
    }
    let mut branches = Vec::new();
    let state = PathState {
        field: field.clone(),
        embedding: Embedding::identity(field),
        prefix: UniPoly::zero(),
        exp: 0,
        ram: 1,
        covered: 1,
        path: Vec::new(),
    };
    let root = if order == 0 { Child::Node(Vec::new()) } else { expand(f, state, &mut branches)? };
    debug_assert_eq!(branches.iter().map(|b| b.covered).sum::<usize>(), order);
    Ok(BranchSet { branches, order, root })
}

fn leaf(state: PathState, tail: Tail, out: &mut Vec<Branch>) -> Child {
    out.push(Branch {
        field: state.field,
        embedding: state.embedding,
        covered: state.covered,
        ram: state.ram,
        prefix: state.prefix,
        exp: state.exp,
        tail,
        path: state.path,
    });
    Child::Leaf
}

fn expand(mut f: BiPoly<NfElem>, state: PathState, out: &mut Vec<Branch>) -> Result<Child, ArithError> {
    let mut m = v_order_at_zero(&f).expect("node polynomial is v-general");
    if m == 1 {
        return Ok(leaf(state, Tail::Simple(f), out));
    }
    let mut groups = Vec::new();
    if f.coeff(0).is_zero() {
        let mut p = state.path.clone();
        p.push(0);
        let exact = PathState { path: p, prefix: state.prefix.clone(), embedding: state.embedding.clone(), field: state.field.clone(), ..state };
        leaf(exact, Tail::Exact, out);
        groups.push(Group { gamma: None, edge: usize::MAX, delta: 1, q: 1, child: Child::Leaf });
        f = f.unshift(1);
        m -= 1;
    }
    let ords: Vec<Option<usize>> = (0..=m).map(|i| f.coeff(i).low_order()).collect();
    let mut edges = Vec::new();
    let mut cur = 0usize;
    while cur < m {
        let jc = ords[cur].expect("hull vertex") as i64;
        let mut best: Option<(usize, Rational)> = None;
        for (k, jk) in ords.iter().enumerate().skip(cur + 1) {
            let Some(jk) = jk else { continue };
            let slope = ratio(*jk as i64 - jc, (k - cur) as i64);
            if best.as_ref().is_none_or(|(_, s)| slope <= *s) {
                best = Some((k, slope));
            }
        }
        let (next, _) = best.expect("the point (m, 0) is present");
        edges.push((cur, next));
        cur = next;
    }
    // Increasing slope γ: right to left along the polygon.
    edges.reverse();
    for (edge_id, &(c, k)) in edges.iter().enumerate() {
        let jc = ords[c].unwrap();
        let jk = ords[k].unwrap();
        let g = (jc - jk).gcd(&(k - c));
        let (p, q) = ((jc - jk) / g, (k - c) / g);
        let shift = q * jc + p * c;
        let edge_poly = UniPoly::new((0..=(k - c) / q).map(|l| f.coeff(c + l * q).coeff(jc - l * p)).collect());
        for (psi, _) in factor_over(&state.field, &edge_poly)? {
            let ext1 = field_extend_unchecked(&state.field, &psi);
            let (field, step, c0) = if q == 1 {
                (ext1.field.clone(), ext1.embedding.clone(), ext1.root.clone())
            } else {
                let binom = UniPoly::monomial(NfElem::one().in_field(&ext1.field), q) - UniPoly::constant(ext1.root.clone());
                let least = factor_over(&ext1.field, &binom)?
                    .into_iter()
                    .map(|(h, _)| h)
                    .min_by(cmp_poly)
                    .expect("nonconstant");
                let ext2 = field_extend_unchecked(&ext1.field, &least);
                (ext2.field.clone(), ext1.embedding.then(&ext2.embedding), ext2.root)
            };
            let fe = bi_map(&f, |a| step.apply(a));
            let child_f = child_poly(&fe, p, q, &c0, shift);
            let mut prefix = vec![NfElem::zero(); state.exp * q + p + 1];
            for (i, a) in state.prefix.coeffs().iter().enumerate() {
                prefix[i * q] = step.apply(a);
            }
            prefix[state.exp * q + p] = c0.clone();
            let mut path = state.path.clone();
            path.push(groups.len());
            let child_state = PathState {
                field: field.clone(),
                embedding: state.embedding.then(&step),
                prefix: UniPoly::new(prefix),
                exp: state.exp * q + p,
                ram: state.ram * q,
                covered: state.covered * psi.deg0() * q,
                path,
            };
            let child = expand(child_f, child_state, out)?;
            groups.push(Group { gamma: Some(ratio(p as i64, q as i64)), edge: edge_id, delta: psi.deg0(), q, child });
        }
    }
    Ok(Child::Node(groups))
}

/// `u1^{-shift} f(u1^q, u1^p (c0 + v1))`.
fn child_poly(f: &BiPoly<NfElem>, p: usize, q: usize, c0: &NfElem, shift: usize) -> BiPoly<NfElem> {
    let dv = f.deg0();
    let lin = UniPoly::new(vec![c0.clone(), NfElem::one()]);
    let mut powers = vec![UniPoly::one()];
    for i in 1..=dv {
        powers.push(powers[i - 1].clone() * lin.clone());
    }
    let du = u_degree(f) * q + dv * p;
    let mut rows: Vec<Vec<NfElem>> = vec![vec![NfElem::zero(); du + 1 - shift.min(du)]; dv + 1];
    for (i, ci) in f.coeffs().iter().enumerate() {
        for (j, a) in ci.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = q * j + p * i - shift;
            for (l, b) in powers[i].coeffs().iter().enumerate() {
                rows[l][e] = rows[l][e].clone() + a.clone() * b.clone();
            }
        }
    }
    UniPoly::new(rows.into_iter().map(UniPoly::new).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::bivariate::bi_from_terms;
    use crate::exact_arith::scalar::rat;
    use crate::exact_arith::Ring;

    fn bp(terms: &[(usize, usize, i64)]) -> BiPoly<NfElem> {
        bi_from_terms(&terms.iter().map(|&(i, j, c)| (i, j, NfElem::from_int(c))).collect::<Vec<_>>())
    }

    fn q(n: i64, d: i64) -> Rational {
        ratio(n, d)
    }

    #[test]
    fn order_examples() {
        let s = PuiseuxSeries::new(2, vec![NfElem::zero(), NfElem::zero(), NfElem::zero(), NfElem::zero(), NfElem::one(), NfElem::one()], 12, None);
        assert_eq!(s.order(), PuiseuxOrder::Finite(rat(2)));
        let z = PuiseuxSeries::new(1, vec![], 10, None);
        assert_eq!(z.order(), PuiseuxOrder::AtLeast(rat(10)));
        let c = PuiseuxSeries::new(2, vec![NfElem::zero(), NfElem::zero(), NfElem::zero(), NfElem::one()], EXACT, None);
        assert_eq!(c.order(), PuiseuxOrder::Finite(q(3, 2)));
        assert_eq!(c.render(3), "u^(3/2)");
    }

    #[test]
    fn conjugate_examples() {
        let s = PuiseuxSeries::new(2, vec![NfElem::zero(), NfElem::zero(), NfElem::zero(), NfElem::one()], EXACT, None);
        let c = s.conjugate(1);
        assert_eq!(c.coeff(3), -NfElem::one());
        assert_eq!(s.conjugate(2).coeff(3), NfElem::one());
        let t = PuiseuxSeries::new(3, vec![NfElem::zero(), NfElem::one(), NfElem::one()], EXACT, None);
        let all = t.conjugates();
        assert_eq!(all.len(), 3);
        assert_eq!(all[2].coeff(1), NfElem::one());
        assert_eq!(all[2].coeff(2), NfElem::one());
        assert_ne!(all[0].coeff(1), all[1].coeff(1));
        for c in &all {
            assert_eq!(c.order(), t.order());
        }
    }

    #[test]
    fn substitute_examples() {
        let s = PuiseuxSeries::new(2, vec![NfElem::zero(), NfElem::zero(), NfElem::zero(), NfElem::one()], 40, None);
        assert_eq!(substitute(&bp(&[(0, 1, 1)]), &s).order(), PuiseuxOrder::Finite(q(3, 2)));
        assert_eq!(substitute(&bp(&[(0, 2, 1), (3, 0, -1)]), &s).order(), PuiseuxOrder::AtLeast(rat(20)));
        let l = PuiseuxSeries::new(1, vec![NfElem::zero(), NfElem::one(), NfElem::one()], EXACT, None);
        assert_eq!(substitute(&bp(&[(0, 1, 1), (1, 0, -1)]), &l).order(), PuiseuxOrder::Finite(rat(2)));
    }

    #[test]
    fn cusp_has_one_class() {
        let bs = newton_puiseux(&bp(&[(0, 2, 1), (3, 0, -1)]), &None).unwrap();
        assert_eq!(bs.order, 2);
        assert_eq!(bs.branches.len(), 1);
        let b = &bs.branches[0];
        assert_eq!((b.polydromy(), b.count()), (2, 1));
        let s = b.series(10).unwrap();
        assert_eq!(s.support().collect::<Vec<_>>(), vec![3]);
        assert_eq!(bs.pair_sum(0, 0), rat(3));
    }

    #[test]
    fn node_with_binomial_tail() {
        // v^2 - u^2 - u^3: v = ±u sqrt(1 + u)
        let bs = newton_puiseux(&bp(&[(0, 2, 1), (2, 0, -1), (3, 0, -1)]), &None).unwrap();
        assert_eq!(bs.branches.len(), 2);
        let expect = [rat(1), q(1, 2), q(-1, 8)];
        for b in &bs.branches {
            let s = b.series(4).unwrap();
            let sign = s.coeff(1).as_rational().unwrap();
            for (k, e) in expect.iter().enumerate() {
                assert_eq!(s.coeff(k + 1).as_rational().unwrap(), sign.clone() * e.clone());
            }
        }
        assert_eq!(bs.pair_sum(0, 1) + bs.pair_sum(1, 0), rat(2));
    }

    #[test]
    fn factored_lines_and_exact_roots() {
        let bs = newton_puiseux(&bp(&[(0, 2, 1), (1, 1, -3), (2, 0, 2)]), &None).unwrap();
        let mut leads: Vec<Rational> = bs.branches.iter().map(|b| b.series(3).unwrap().coeff(1).as_rational().unwrap()).collect();
        leads.sort();
        assert_eq!(leads, vec![rat(1), rat(2)]);
        // v (v - u^2): an exact zero root
        let bs = newton_puiseux(&bp(&[(0, 2, 1), (2, 1, -1)]), &None).unwrap();
        assert_eq!(bs.branches.len(), 2);
        assert!(bs.branches.iter().any(|b| b.series(5).unwrap().is_exact()));
        assert_eq!(bs.pair_sum(0, 1), rat(2));
    }

    #[test]
    fn irrational_class_over_q() {
        // v^2 - 2u^2: one class over Q(sqrt2) covering both lines
        let bs = newton_puiseux(&bp(&[(0, 2, 1), (2, 0, -2)]), &None).unwrap();
        assert_eq!(bs.branches.len(), 1);
        let b = &bs.branches[0];
        assert_eq!((b.covered, b.count(), b.field_degree()), (2, 2, 2));
        assert_eq!(bs.pair_sum(0, 0), rat(2));
    }

    #[test]
    fn repeated_factor_rejected() {
        let f = bp(&[(0, 2, 1), (2, 0, -1)]);
        let sq = f.clone() * f;
        assert_eq!(newton_puiseux(&sq, &None).unwrap_err(), ArithError::NonReduced);
    }

    #[test]
    fn conjugate_product_recovers_weierstrass_part() {
        // v^3 - u^2 (1 + u): roots need a cube root of unity
        let f = bp(&[(0, 3, 1), (2, 0, -1), (3, 0, -1)]);
        let bs = newton_puiseux(&f, &None).unwrap();
        assert_eq!(bs.branches.len(), 1);
        let s = bs.branches[0].series(6).unwrap();
        let conj = s.conjugates();
        let field = conj[0].field().clone();
        let mut prod: UniPoly<TruncSeries<NfElem>> = UniPoly::one();
        for c in &conj {
            prod = prod * UniPoly::new(vec![-c.to_series(), TruncSeries::one()]);
        }
        // Back in u: only exponents divisible by 3 survive.
        let w = crate::exact_arith::weierstrass(&f, 6).unwrap();
        for j in 0..=3 {
            let pc = prod.coeff(j);
            for i in 0..18 {
                let expect = if i % 3 == 0 { w.w.coeff(j).coeff(i / 3).in_field(&field) } else { NfElem::zero() };
                assert_eq!(pc.coeff(i), expect, "v^{j} t^{i}");
            }
        }
    }
}
