//! Self-intersection of the components of the pullback of a plane curve `E: g = 0`
//! to the Fermat surface `x^d + y^d + z^d + w^d = 0`.
//!
//! The components meet only over `D ∩ E`, where `D` is the Fermat curve
//! `x^d + y^d + z^d = 0`; everything is assembled from local invariants there.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::curves::{fermat_form, irreducibility_check, local_frame, HomPoly3, Irreducibility};
use crate::error::{Error, Result};
use crate::exact_arith::factor::{factor_over, factor_rational};
use crate::exact_arith::numfield::{field_degree, field_extend_unchecked, render_rational_poly, FieldRef};
use crate::exact_arith::resultant::resultant;
use crate::exact_arith::scalar::Rational;
use crate::exact_arith::{uni_gcd, BiPoly, NfElem, Ring, UniPoly};
use crate::local_invariants::{
    branch_invariants, field_of, frame_germs, intersection_multiplicity, intersection_multiplicity_puiseux, local_phi,
    phi_milnor, phi_squarefree_check, Multiplicity, Precision,
};
use crate::puiseux::{newton_puiseux, substitute, PuiseuxOrder};

/// One Galois orbit of points of `D ∩ E`, given by a representative over its field.
#[derive(Clone, Debug)]
pub struct LocusPoint {
    pub field: FieldRef,
    pub point: [NfElem; 3],
    /// Number of geometric points in the orbit.
    pub class_degree: usize,
}

fn lift(q: &Rational, k: &FieldRef) -> NfElem {
    NfElem::rational(q.clone()).in_field(k)
}

fn lift_poly(p: &UniPoly<Rational>, k: &FieldRef) -> UniPoly<NfElem> {
    p.map(|q| lift(q, k))
}

/// `p(y0, z)` as a polynomial in `z`, for `p` given as coefficients of `z^j` in `ℚ[y]`.
fn specialize(p: &BiPoly<Rational>, y0: &NfElem, k: &FieldRef) -> UniPoly<NfElem> {
    p.map(|c| c.eval_with(y0, |q| lift(q, k)))
}

/// Galois orbits of `D ∩ E`: points with `x ≠ 0` through `Res_z` and a gcd over the field
/// of `y`, then the points on `x = 0`.
pub fn intersection_locus(g: &HomPoly3, d: usize) -> Result<Vec<LocusPoint>> {
    let fermat = fermat_form(d)?;
    let gz = g.dehomogenize_x();
    let fz = fermat.dehomogenize_x();
    let elim = if gz.deg0() == 0 { gz.coeff(0).pow(d as u32) } else { resultant(&gz, &fz)? };
    if elim.is_zero() {
        return Err(Error::SharedComponent);
    }
    let mut out = Vec::new();
    if elim.deg0() > 0 {
        for (phi, _) in factor_rational(&elim) {
            let ext = field_extend_unchecked(&None, &lift_poly(&phi, &None));
            let k = ext.field.clone();
            let gk = specialize(&gz, &ext.root, &k);
            let fk = specialize(&fz, &ext.root, &k);
            let common = if gk.is_zero() { fk } else { uni_gcd(&gk, &fk)? };
            if common.deg0() == 0 {
                continue;
            }
            for (psi, _) in factor_over(&k, &common.squarefree_part())? {
                let ext2 = field_extend_unchecked(&k, &psi);
                let field = ext2.field.clone();
                let point = [NfElem::one().in_field(&field), ext2.embedding.apply(&ext.root), ext2.root.clone()];
                out.push(LocusPoint { class_degree: field_degree(&field), field, point });
            }
        }
    }
    // On x = 0 the point [0, 0, 1] is never on D, so y = 1.
    let mut g0 = vec![Rational::zero(); g.degree() + 1];
    for (e, c) in g.terms() {
        if e[0] == 0 {
            g0[e[2] as usize] += c;
        }
    }
    let g0 = UniPoly::new(g0);
    let f0 = UniPoly::monomial(Rational::one(), d) + UniPoly::one();
    let common = if g0.is_zero() { f0 } else { uni_gcd(&g0, &f0)? };
    if common.deg0() > 0 {
        for (psi, _) in factor_rational(&common) {
            let ext = field_extend_unchecked(&None, &lift_poly(&psi, &None));
            let field = ext.field.clone();
            let point = [NfElem::zero(), NfElem::one().in_field(&field), ext.root.clone()];
            out.push(LocusPoint { class_degree: field_degree(&field), field, point });
        }
    }
    Ok(out)
}

/// Checks run at each point class.
#[derive(Clone, Debug, Serialize)]
pub struct PointChecks {
    /// Direct Milnor number of `Φ` equals `(d−1)i_p + dμ_E − d + 1`.
    #[serde(rename = "formula_B")]
    pub formula_b: bool,
    /// `Φ` has no repeated factor.
    pub reduced: bool,
    /// Resultant and series routes agree on `i_p`.
    pub halphen: bool,
    /// `μ_E` is recovered from the branch decomposition of `E`.
    pub branch_additivity: bool,
    /// `Σ` over branches of `E` of their intersection with `D` equals `i_p`.
    pub branch_contacts: bool,
}

/// Invariants at one Galois orbit of `D ∩ E`.
#[derive(Clone, Debug, Serialize)]
pub struct PointClass {
    pub field_minpoly: String,
    pub class_degree: usize,
    pub point: [String; 3],
    pub chart: String,
    pub i_p: usize,
    #[serde(rename = "mu_E")]
    pub mu_e: usize,
    pub r_p: usize,
    pub mu_scheme: usize,
    /// Intersection multiplicity with `D` of each branch of `E` at the point.
    pub branch_contacts: Vec<usize>,
    pub checks: PointChecks,
}

fn render_minpoly(k: &FieldRef) -> String {
    match k {
        None => "t".into(),
        Some(f) => render_rational_poly(f.minpoly(), "t"),
    }
}

/// Fills in the local invariants of one orbit, cross-checking every dual route.
pub fn point_invariants(g: &HomPoly3, d: usize, pc: &LocusPoint, prec: Precision) -> Result<PointClass> {
    let frame = local_frame(g, d, &pc.point, &pc.field)?;
    let where_ = format!("at [{}, {}, {}]", pc.point[0], pc.point[1], pc.point[2]);
    let i_p = match intersection_multiplicity(&frame.h, &frame.l, prec)? {
        Multiplicity::Finite(n) => n,
        Multiplicity::Infinite => return Err(Error::SharedComponent),
    };
    let halphen = intersection_multiplicity_puiseux(&frame.h, &frame.l, prec)? == Multiplicity::Finite(i_p);
    if !halphen {
        return Err(Error::Consistency(format!("resultant and series routes disagree on i_p {where_}")));
    }
    let (h, l, _) = frame_germs(&frame)?;
    let germ = branch_invariants(&h, prec)?;
    let contacts = branch_contacts(&h, &l, prec)?;
    let branch_contacts_ok = contacts.iter().sum::<usize>() == i_p;
    if !branch_contacts_ok {
        return Err(Error::Consistency(format!("branch contacts {contacts:?} do not sum to i_p = {i_p} {where_}")));
    }
    let phi = phi_milnor(&frame, prec)?;
    let formula = (d - 1) * i_p + d * germ.milnor + 1 - d;
    if phi.milnor != formula {
        return Err(Error::Consistency(format!(
            "Milnor number of the local equation is {} but (d-1)i_p + d mu_E - d + 1 = {formula} {where_}",
            phi.milnor
        )));
    }
    let reduced = phi_squarefree_check(&local_phi(&frame, phi.precision)?)?.squarefree;
    if !reduced {
        return Err(Error::Consistency(format!("local equation has a repeated factor {where_}")));
    }
    Ok(PointClass {
        field_minpoly: render_minpoly(&pc.field),
        class_degree: pc.class_degree,
        point: [pc.point[0].to_string(), pc.point[1].to_string(), pc.point[2].to_string()],
        chart: frame.chart.to_string(),
        i_p,
        mu_e: germ.milnor,
        r_p: germ.branch_count,
        mu_scheme: phi.milnor,
        branch_contacts: contacts,
        checks: PointChecks { formula_b: true, reduced, halphen, branch_additivity: true, branch_contacts: branch_contacts_ok },
    })
}

/// `i₀(h_i, l)` for every branch `h_i` of `h` over ℂ, in class order.
fn branch_contacts(h: &BiPoly<NfElem>, l: &BiPoly<NfElem>, prec: Precision) -> Result<Vec<usize>> {
    let set = newton_puiseux(h, &field_of(h))?;
    let mut out = Vec::new();
    for b in &set.branches {
        let lb = b.embed_poly(l);
        let mut bound = prec.start;
        let o = loop {
            match substitute(&lb, &b.series(bound)?).order() {
                PuiseuxOrder::Finite(o) => break o,
                PuiseuxOrder::Infinite => return Err(Error::SharedComponent),
                PuiseuxOrder::AtLeast(_) if bound >= prec.cap => {
                    return Err(crate::ArithError::PrecisionCap { cap: prec.cap }.into());
                }
                PuiseuxOrder::AtLeast(_) => bound *= 2,
            }
        };
        let contact = o * Rational::from_integer(b.polydromy().into());
        let contact: usize = contact.to_integer().try_into().expect("nonnegative");
        out.extend(std::iter::repeat_n(contact, b.count()));
    }
    Ok(out)
}

/// How `μ_P(C)` of a single component is chosen when it is not certified.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum MuPolicy {
    /// Components assumed smooth over `D ∩ E`; `C²` is then a lower bound.
    #[default]
    Zero,
    /// Values per point class (report order); missing classes count as 0.
    PerClass(BTreeMap<usize, usize>),
}

impl MuPolicy {
    /// Parses lines `<class index> <mu>`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|w| w.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidArgument(format!("mu policy line {}: {e}", n + 1)))?;
            let [class, mu] = nums[..] else {
                return Err(Error::InvalidArgument(format!("mu policy line {}: expected `<class> <mu>`", n + 1)));
            };
            map.insert(class, mu);
        }
        Ok(MuPolicy::PerClass(map))
    }

    fn label(&self) -> &'static str {
        match self {
            MuPolicy::Zero => "zero",
            MuPolicy::PerClass(_) => "file",
        }
    }

    fn value(&self, class: usize) -> usize {
        match self {
            MuPolicy::Zero => 0,
            MuPolicy::PerClass(m) => m.get(&class).copied().unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    pub k: Option<usize>,
    pub mu_policy: MuPolicy,
    pub precision: Option<Precision>,
}

/// Default precision schedule for a curve of degree `e` against `D` of degree `d`.
pub fn default_precision(d: usize, e: usize) -> Precision {
    let m = d.max(e);
    Precision { start: 2, cap: (4 * d * e * m * m).max(64) }
}

/// `C²` and the pairwise sum for one candidate number of components.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KCandidate {
    pub k: usize,
    /// Whether `k` is proven to be the number of components.
    pub certified: bool,
    /// Whether `k` survives the local necessary condition.
    pub admissible: bool,
    pub mu_policy: String,
    #[serde(rename = "C2")]
    pub c2: i64,
    pub pairwise_sum: i64,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Stats {
    pub gap: i64,
    pub ratio_num: String,
    pub ratio_den: String,
    pub genus_bound_ok: bool,
    pub sum_mu_e: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfIntersectionReport {
    pub d: usize,
    pub e: usize,
    pub curve: String,
    pub classes: Vec<PointClass>,
    pub intersection_count: usize,
    pub bezout_sum: usize,
    pub bezout_ok: bool,
    pub m_verified: bool,
    pub k_candidates: Vec<KCandidate>,
    pub stats: Stats,
    pub notes: Vec<String>,
}

/// Sums over geometric points of `D ∩ E`.
#[derive(Clone, Copy, Debug)]
pub struct LocusTotals {
    pub count: i64,
    pub sum_mu_e: i64,
}

fn totals(classes: &[PointClass]) -> LocusTotals {
    LocusTotals {
        count: classes.iter().map(|c| c.class_degree as i64).sum(),
        sum_mu_e: classes.iter().map(|c| (c.class_degree * c.mu_e) as i64).sum(),
    }
}

fn check_divides(k: usize, d: usize) -> Result<()> {
    if k == 0 || !d.is_multiple_of(k) {
        return Err(Error::InvalidArgument(format!("k = {k} does not divide d = {d}")));
    }
    Ok(())
}

/// `Σ_{i≠j} C_i·C_j = d(d−1)e + dΣμ_E − kΣμ_P(C) − (d−k)·#`.
pub fn pairwise_sum(d: usize, e: usize, k: usize, t: LocusTotals, sum_mu_c: i64) -> Result<i64> {
    check_divides(k, d)?;
    let (d, e, k) = (d as i64, e as i64, k as i64);
    Ok(d * (d - 1) * e + d * t.sum_mu_e - k * sum_mu_c - (d - k) * t.count)
}

/// `C² = (d/k)e² − (d(d−1)/k)e − (d/k)Σμ_E + Σμ_P(C) + (d/k − 1)·#`.
pub fn self_intersection(d: usize, e: usize, k: usize, t: LocusTotals, sum_mu_c: i64) -> Result<i64> {
    check_divides(k, d)?;
    let q = (d / k) as i64;
    let (d, e) = (d as i64, e as i64);
    Ok(q * e * e - q * (d - 1) * e - q * t.sum_mu_e + sum_mu_c + (q - 1) * t.count)
}

/// Gap `e² − (d−1)e − Σμ_E`, ratio `Σμ_E / e²` and the bound `Σμ_E ≤ (e−1)(e−2)`.
pub fn sufcond_statistics(d: usize, e: usize, classes: &[PointClass]) -> Stats {
    let t = totals(classes);
    let (di, ei) = (d as i64, e as i64);
    let ratio = Rational::new(t.sum_mu_e.into(), (ei * ei).into());
    Stats {
        gap: ei * ei - (di - 1) * ei - t.sum_mu_e,
        ratio_num: ratio.numer().to_string(),
        ratio_den: ratio.denom().to_string(),
        genus_bound_ok: t.sum_mu_e <= (ei - 1) * (ei - 2),
        sum_mu_e: t.sum_mu_e as usize,
    }
}

/// What is known about the number of components `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KDecision {
    Certified(usize),
    /// Divisors of `d` with the necessary-condition flag.
    Candidates(Vec<(usize, bool)>),
}

/// Each component covers every branch of `E`, so `k` divides `d` and the intersection
/// multiplicity with `D` of every branch. For lines this is also sufficient.
pub fn detect_k(d: usize, e: usize, classes: &[PointClass]) -> KDecision {
    let bound = classes.iter().flat_map(|c| c.branch_contacts.iter()).fold(d, |g, &c| g.gcd(&c));
    if e == 1 || bound == 1 {
        return KDecision::Certified(bound);
    }
    KDecision::Candidates((1..=d).filter(|k| d.is_multiple_of(*k)).map(|k| (k, bound % k == 0)).collect())
}

/// Certified `μ_P(C)` for one component at a point with invariants `pc`, if available.
fn certified_mu_c(e: usize, d: usize, k: usize, pc: &PointClass) -> Option<usize> {
    if k == 1 {
        return Some(pc.mu_scheme);
    }
    // A line is smooth; each component is locally ω^{d/k} = t^{i_p/k}·unit.
    (e == 1).then(|| (d / k - 1) * (pc.i_p / k - 1))
}

/// Runs the whole pipeline for `g` against the Fermat curve of degree `d`.
pub fn analyze(g: &HomPoly3, d: usize, opts: &AnalyzeOptions) -> Result<SelfIntersectionReport> {
    if d < 2 {
        return Err(Error::InvalidArgument("d must be at least 2".into()));
    }
    if let Some(k) = opts.k {
        check_divides(k, d)?;
    }
    let e = g.degree();
    let mut notes = Vec::new();
    let irr = irreducibility_check(g);
    if let Irreducibility::Reducible(f) = &irr.over_q {
        return Err(Error::Reducible(f.render()));
    }
    if !irr.absolute_certified {
        notes.push(format!("irreducible over Q; {}", irr.note));
    }
    let prec = opts.precision.unwrap_or_else(|| default_precision(d, e));
    let locus = intersection_locus(g, d)?;
    let classes = locus.iter().map(|pc| point_invariants(g, d, pc, prec)).collect::<Result<Vec<_>>>()?;
    let t = totals(&classes);
    let bezout_sum: usize = classes.iter().map(|c| c.class_degree * c.i_p).sum();
    let m_verified = classes.iter().all(|c| c.checks.reduced);

    let decision = detect_k(d, e, &classes);
    let mut ks: Vec<(usize, bool, bool)> = match &decision {
        KDecision::Certified(k) => vec![(*k, true, true)],
        KDecision::Candidates(c) => c.iter().map(|&(k, adm)| (k, false, adm)).collect(),
    };
    if let Some(k) = opts.k {
        let known = ks.iter().find(|c| c.0 == k).copied();
        ks = vec![known.unwrap_or((k, false, false))];
    }
    match &decision {
        KDecision::Certified(k) if e == 1 => notes.push(format!("linear case: the pullback splits into {k} components")),
        KDecision::Certified(_) => notes.push("branch contacts with D are coprime: the pullback is irreducible".into()),
        KDecision::Candidates(_) => notes.push("k undecided: every divisor of d is reported".into()),
    }
    let mut uses_policy = false;
    let mut k_candidates = Vec::new();
    for (k, certified, admissible) in ks {
        let mut label = "certified";
        let mut sum_mu_c = 0i64;
        for (i, pc) in classes.iter().enumerate() {
            let mu = match certified_mu_c(e, d, k, pc) {
                Some(mu) => mu,
                None => {
                    label = opts.mu_policy.label();
                    uses_policy = true;
                    opts.mu_policy.value(i)
                }
            };
            sum_mu_c += (pc.class_degree * mu) as i64;
        }
        let c2 = self_intersection(d, e, k, t, sum_mu_c)?;
        let pairwise = pairwise_sum(d, e, k, t, sum_mu_c)?;
        let consistent = (d * e * e) as i64 == k as i64 * c2 + pairwise;
        if k == 1 && c2 != (d * e * e) as i64 {
            return Err(Error::Consistency(format!("k = 1 gives C^2 = {c2}, expected d e^2 = {}", d * e * e)));
        }
        if !consistent {
            return Err(Error::Consistency(format!("d e^2 != k C^2 + pairwise sum for k = {k}")));
        }
        k_candidates.push(KCandidate { k, certified, admissible, mu_policy: label.into(), c2, pairwise_sum: pairwise, consistent });
    }
    if uses_policy && opts.mu_policy == MuPolicy::Zero {
        notes.push("mu_P(C) taken as 0 where not certified: those C2 values are lower bounds".into());
    }
    let bezout_ok = bezout_sum == d * e;
    if !bezout_ok {
        return Err(Error::Consistency(format!("Bezout sum {bezout_sum} differs from d e = {}", d * e)));
    }
    Ok(SelfIntersectionReport {
        d,
        e,
        curve: g.render(),
        stats: sufcond_statistics(d, e, &classes),
        intersection_count: t.count as usize,
        classes,
        bezout_sum,
        bezout_ok,
        m_verified,
        k_candidates,
        notes,
    })
}

impl SelfIntersectionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "curve {} (e = {}) on the Fermat surface of degree {}", self.curve, self.e, self.d);
        let _ = writeln!(s, "D.E = {} over {} points ({} classes)", self.bezout_sum, self.intersection_count, self.classes.len());
        for (i, c) in self.classes.iter().enumerate() {
            let _ = writeln!(
                s,
                "  [{i}] {} points over Q[t]/({}) chart {}: i_p = {}, mu_E = {}, r_p = {}, mu_P = {}",
                c.class_degree, c.field_minpoly, c.chart, c.i_p, c.mu_e, c.r_p, c.mu_scheme
            );
        }
        for k in &self.k_candidates {
            let status = match (k.certified, k.admissible) {
                (true, _) => "certified",
                (false, true) => "admissible",
                (false, false) => "excluded",
            };
            let _ = writeln!(
                s,
                "k = {} ({status}, mu policy {}): C^2 = {}, pairwise sum = {}",
                k.k, k.mu_policy, k.c2, k.pairwise_sum
            );
        }
        let st = &self.stats;
        let _ = writeln!(
            s,
            "gap = {}, sum mu_E / e^2 = {}/{}, genus bound {}",
            st.gap,
            st.ratio_num,
            st.ratio_den,
            if st.genus_bound_ok { "holds" } else { "fails" }
        );
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}
