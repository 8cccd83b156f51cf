//! Homogeneous plane curves, the Fermat form and local frames at intersection points.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::factor::factor_rational;
use crate::exact_arith::hensel::{hensel_lift_pair, BiPoly};
use crate::exact_arith::numfield::{FieldRef, NfElem};
use crate::exact_arith::scalar::{fmt_rational, Field, Rational, Ring};
use crate::exact_arith::series::to_series_poly;
use crate::exact_arith::UniPoly;

const VARS: [char; 3] = ['x', 'y', 'z'];

/// Exponent triple `(a, b, c)` of `x^a y^b z^c`.
pub type Exponents = [u32; 3];

/// A nonzero homogeneous polynomial in `x, y, z` with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct HomPoly3 {
    degree: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl HomPoly3 {
    /// Builds from monomials, merging repeats and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut degree = None;
        for e in map.keys() {
            let d = e.iter().sum::<u32>() as usize;
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(Error::Inhomogeneous(d0.max(d), d0.min(d))),
                _ => {}
            }
        }
        let degree = degree.ok_or(Error::ZeroPolynomial)?;
        Ok(HomPoly3 { degree, terms: map })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn coeff(&self, e: Exponents) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Evaluation at a point with coordinates in any field containing ℚ.
    pub fn eval<F: Field>(&self, p: &[F; 3]) -> F {
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = F::from_rational(c);
            for i in 0..3 {
                t = t * p[i].pow(e[i]);
            }
            acc = acc + t;
        }
        acc
    }

    /// Partial derivative with respect to variable `i` (0, 1, 2 for x, y, z); `None` if it vanishes.
    pub fn partial(&self, i: usize) -> Option<HomPoly3> {
        let terms = self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut e2 = *e;
            e2[i] -= 1;
            (e2, c * Rational::from_int(e[i] as i64))
        });
        HomPoly3::from_terms(terms).ok()
    }

    /// Applies `x -> x + a z`, `y -> y + b z`.
    pub fn shear(&self, a: &Rational, b: &Rational) -> HomPoly3 {
        let x = lin([Rational::one(), Rational::zero(), a.clone()]);
        let y = lin([Rational::zero(), Rational::one(), b.clone()]);
        let z = lin([Rational::zero(), Rational::zero(), Rational::one()]);
        self.substitute(&[x, y, z])
    }

    /// Substitutes linear forms (or any forms of a common degree) for `x, y, z`.
    pub fn substitute(&self, forms: &[Sparse; 3]) -> HomPoly3 {
        let mut acc: Sparse = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut t: Sparse = BTreeMap::from([([0, 0, 0], c.clone())]);
            for i in 0..3 {
                for _ in 0..e[i] {
                    t = sparse_mul(&t, &forms[i]);
                }
            }
            for (k, v) in t {
                *acc.entry(k).or_insert_with(Rational::zero) += v;
            }
        }
        HomPoly3::from_terms(acc).expect("invertible substitution keeps the form nonzero")
    }

    /// Canonical text form, highest monomial (lexicographic in x, y, z exponents) first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = (0..3)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { VARS[i].to_string() } else { format!("{}^{}", VARS[i], e[i]) })
                .collect();
            if mono.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&fmt_rational(&mag));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    /// `g(1, y, z)` as a polynomial in `z` with coefficients in `y`.
    pub fn dehomogenize_x(&self) -> BiPoly<Rational> {
        let mut rows: Vec<Vec<Rational>> = vec![vec![]; self.degree + 1];
        for (e, c) in &self.terms {
            let row = &mut rows[e[2] as usize];
            let j = e[1] as usize;
            if row.len() <= j {
                row.resize(j + 1, Rational::zero());
            }
            row[j] += c;
        }
        UniPoly::new(rows.into_iter().map(UniPoly::new).collect())
    }
}

impl fmt::Display for HomPoly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for HomPoly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly3({})", self.render())
    }
}

/// Sparse trivariate polynomial, used for substitutions.
pub type Sparse = BTreeMap<Exponents, Rational>;

fn lin(c: [Rational; 3]) -> Sparse {
    let mut m = BTreeMap::new();
    for (i, ci) in c.into_iter().enumerate() {
        if !ci.is_zero() {
            let mut e = [0, 0, 0];
            e[i] = 1;
            m.insert(e, ci);
        }
    }
    m
}

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out: Sparse = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `x^d + y^d + z^d`.
pub fn fermat_form(d: usize) -> Result<HomPoly3> {
    if d < 1 {
        return Err(Error::InvalidArgument("Fermat degree must be at least 1".into()));
    }
    let d = d as u32;
    HomPoly3::from_terms([([d, 0, 0], Rational::one()), ([0, d, 0], Rational::one()), ([0, 0, d], Rational::one())])
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn natural(&mut self) -> Result<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn exponent(&mut self) -> Result<u32> {
        let start = self.pos;
        let n = self.natural()?;
        u32::try_from(n).map_err(|_| Error::Syntax { pos: start, msg: "exponent too large".into() })
    }

    /// One term after its sign: `[coef] [*] factor * factor ...`.
    fn term(&mut self) -> Result<(Exponents, Rational)> {
        let mut coef = Rational::one();
        let mut exps = [0u32; 3];
        let mut need_factor = true;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.natural()?;
            let mut q = Rational::from_integer(num);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let at = self.pos;
                let den = self.natural()?;
                if den.is_zero() {
                    return Err(Error::Syntax { pos: at, msg: "zero denominator".into() });
                }
                q /= Rational::from_integer(den);
            }
            coef = q;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((exps, coef));
            }
        }
        loop {
            match self.peek() {
                Some(c @ (b'x' | b'y' | b'z')) => {
                    self.pos += 1;
                    let i = (c - b'x') as usize;
                    let mut k = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        k = self.exponent()?;
                    }
                    exps[i] += k;
                }
                Some(_) if need_factor => return self.err("expected x, y or z"),
                None if need_factor => return self.err("unexpected end of input"),
                _ => return Ok((exps, coef)),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
                need_factor = true;
            } else {
                return Ok((exps, coef));
            }
        }
    }
}

/// Parses `terms joined by + or -`, each an optional rational coefficient followed by
/// `*`-joined factors `x`, `y`, `z` with optional `^k`.
pub fn parse_poly(text: &str) -> Result<HomPoly3> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut neg = false;
        match p.peek() {
            None if first => return p.err("empty input"),
            None => return p.err("dangling operator"),
            Some(b'+') | Some(b'-') => {
                neg = p.s[p.pos] == b'-';
                p.pos += 1;
            }
            Some(_) if first => {}
            Some(_) => return p.err("expected + or -"),
        }
        let (e, c) = p.term()?;
        terms.push((e, if neg { -c } else { c }));
        first = false;
        match p.peek() {
            None => break,
            Some(b'+') | Some(b'-') => continue,
            Some(_) => return p.err("unexpected character"),
        }
    }
    HomPoly3::from_terms(terms)
}

/// Outcome of the irreducibility test over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A proper factor over ℚ.
    Reducible(HomPoly3),
}

/// Irreducibility over ℚ plus whether irreducibility over ℂ could be confirmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityReport {
    pub over_q: Irreducibility,
    pub absolute_certified: bool,
    pub note: String,
}

/// Decides irreducibility over ℚ by bivariate factorization of a dehomogenization.
pub fn irreducibility_check(g: &HomPoly3) -> IrreducibilityReport {
    let over_q = if g.degree() <= 1 { Irreducibility::Irreducible } else { rational_factor(g) };
    let (absolute_certified, note) = match (&over_q, g.degree()) {
        (Irreducibility::Reducible(_), _) => (false, "reducible over Q".to_string()),
        (_, 0 | 1) => (true, "line".to_string()),
        (_, 2) => {
            let nonsingular = !conic_determinant(g).is_zero();
            let note = if nonsingular { "smooth conic" } else { "singular conic; absolute irreducibility not certified" };
            (nonsingular, note.to_string())
        }
        _ => match smooth_rational_point(g, 6) {
            Some(p) => (true, format!("smooth rational point [{}, {}, {}]", p[0], p[1], p[2])),
            None => (false, "absolute irreducibility not certified".to_string()),
        },
    };
    IrreducibilityReport { over_q, absolute_certified, note }
}

/// Determinant of the symmetric matrix of a ternary quadratic form (scaled by 8).
fn conic_determinant(g: &HomPoly3) -> Rational {
    let c = |e: Exponents| g.coeff(e);
    let two = Rational::from_int(2);
    let m = [
        [two.clone() * c([2, 0, 0]), c([1, 1, 0]), c([1, 0, 1])],
        [c([1, 1, 0]), two.clone() * c([0, 2, 0]), c([0, 1, 1])],
        [c([1, 0, 1]), c([0, 1, 1]), two * c([0, 0, 2])],
    ];
    m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
        - m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
        + m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone())
}

/// A point with small integer coordinates where `g` vanishes and is smooth.
fn smooth_rational_point(g: &HomPoly3, bound: i64) -> Option<[i64; 3]> {
    let partials: Vec<Option<HomPoly3>> = (0..3).map(|i| g.partial(i)).collect();
    let q = |v: i64| Rational::from_int(v);
    for x in 0..=bound {
        for y in -bound..=bound {
            for z in -bound..=bound {
                if (x, y, z) == (0, 0, 0) || (x == 0 && (y < 0 || (y == 0 && z < 0))) {
                    continue;
                }
                let p = [q(x), q(y), q(z)];
                if !g.eval(&p).is_zero() {
                    continue;
                }
                if partials.iter().flatten().any(|d| !d.eval(&p).is_zero()) {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

fn rational_factor(g: &HomPoly3) -> Irreducibility {
    // Make the z^e coefficient nonzero so g(1, y, z) has full degree in z.
    let shears = (0i64..).flat_map(|s| (0..=s).map(move |a| (a, s - a)));
    let (a, b, h) = shears
        .map(|(a, b)| {
            let (a, b) = (Rational::from_int(a), Rational::from_int(b));
            let h = g.shear(&a, &b);
            (a, b, h)
        })
        .find(|(_, _, h)| !h.coeff([0, 0, h.degree() as u32]).is_zero())
        .expect("some shear works");
    let e = h.degree();
    let f = h.dehomogenize_x();
    let lc = f.lc().coeff(0);
    let f = f.map(|c| c.scale(&lc.inv().unwrap()));
    // Specialize y = s with f(s, z) squarefree of full degree.
    let mut s = 0i64;
    let (fs, spec) = loop {
        let shift = UniPoly::new(vec![Rational::from_int(s), Rational::one()]);
        let fs: BiPoly<Rational> = f.map(|c| c.compose(&shift));
        let spec = UniPoly::new(fs.coeffs().iter().map(|c| c.coeff(0)).collect());
        let sqfree = crate::exact_arith::uni_gcd(&spec, &spec.derivative()).map(|g| g.deg0() == 0).unwrap_or(false);
        if sqfree {
            break (fs, spec);
        }
        s += 1;
    };
    let locals: Vec<UniPoly<Rational>> = factor_rational(&spec).into_iter().map(|(p, _)| p).collect();
    if locals.len() == 1 {
        return Irreducibility::Irreducible;
    }
    let prec = e + 1;
    // Lift each local factor against the product of the others.
    let series = to_series_poly(&fs, prec);
    let mut lifted: Vec<BiPoly<Rational>> = Vec::new();
    for i in 0..locals.len() {
        let rest = locals.iter().enumerate().filter(|(j, _)| *j != i).fold(UniPoly::one(), |acc, (_, p)| acc * p.clone());
        let (gi, _) = hensel_lift_pair(&series, &locals[i], &rest, prec).expect("coprime local factors");
        lifted.push(gi.map(|c| c.to_poly()));
    }
    let trunc = |p: &BiPoly<Rational>| p.map(|c| c.truncate(prec));
    // Recombine subsets by trial division; the first hit is a proper factor.
    let idx: Vec<usize> = (0..lifted.len()).collect();
    for size in 1..=idx.len() / 2 {
        for subset in combinations(&idx, size) {
            let cand = subset.iter().fold(UniPoly::one(), |acc: BiPoly<Rational>, &i| trunc(&(acc * lifted[i].clone())));
            if fs.rem_monic(&cand).is_zero() {
                // Undo the y shift and the shear, then homogenize.
                let back = UniPoly::new(vec![Rational::from_int(-s), Rational::one()]);
                let unshifted: BiPoly<Rational> = cand.map(|c| c.compose(&back));
                return Irreducibility::Reducible(homogenize_yz(&unshifted).shear(&-a.clone(), &-b.clone()));
            }
        }
    }
    Irreducibility::Irreducible
}

/// Homogenizes `p(y, z)` (coefficients of `z^j` are polynomials in `y`) with `x`.
fn homogenize_yz(p: &BiPoly<Rational>) -> HomPoly3 {
    let deg = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| j + c.deg0())
        .max()
        .unwrap_or(0);
    let mut terms = Vec::new();
    for (j, c) in p.coeffs().iter().enumerate() {
        for (i, a) in c.coeffs().iter().enumerate() {
            if !a.is_zero() {
                terms.push(([(deg - i - j) as u32, i as u32, j as u32], a.clone()));
            }
        }
    }
    HomPoly3::from_terms(terms).expect("nonzero factor")
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Which projective coordinates serve as the dehomogenizing one and the `v` direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chart {
    pub dehom: usize,
    pub v_dir: usize,
    pub u_dir: usize,
}

impl Chart {
    /// Fixed trial order `(x;z), (x;y), (y;z), (y;x), (z;y), (z;x)`.
    pub const ORDER: [(usize, usize); 6] = [(0, 2), (0, 1), (1, 2), (1, 0), (2, 1), (2, 0)];

    pub fn new(dehom: usize, v_dir: usize) -> Self {
        Chart { dehom, v_dir, u_dir: 3 - dehom - v_dir }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", VARS[self.dehom], VARS[self.v_dir])
    }
}

/// Local equations of `E` (`h`) and of `D` (`l`) in affine coordinates `(u, v)` centred at a point.
#[derive(Clone, Debug)]
pub struct LocalFrame {
    pub chart: Chart,
    pub field: FieldRef,
    /// Affine coordinates of the point: `(u-coordinate, v-coordinate)`.
    pub base: (NfElem, NfElem),
    pub h: BiPoly<NfElem>,
    pub l: BiPoly<NfElem>,
    pub d: usize,
}

/// `c + u` as a bivariate polynomial.
fn u_shift(c: &NfElem) -> BiPoly<NfElem> {
    UniPoly::constant(UniPoly::new(vec![c.clone(), NfElem::one()]))
}

/// `c + v` as a bivariate polynomial.
fn v_shift(c: &NfElem) -> BiPoly<NfElem> {
    UniPoly::new(vec![UniPoly::constant(c.clone()), UniPoly::constant(NfElem::one())])
}

/// Builds `h` and `l` at `p`, choosing the first chart whose dehomogenizing and `v`
/// coordinates are both nonzero at `p`.
pub fn local_frame(g: &HomPoly3, d: usize, p: &[NfElem; 3], field: &FieldRef) -> Result<LocalFrame> {
    let fermat = fermat_form(d)?;
    if !g.eval(p).is_zero() || !fermat.eval(p).is_zero() {
        return Err(Error::NotOnIntersection);
    }
    let chart = Chart::ORDER
        .iter()
        .map(|&(a, v)| Chart::new(a, v))
        .find(|c| !p[c.dehom].is_zero() && !p[c.v_dir].is_zero())
        .ok_or_else(|| Error::Consistency("no chart has nonzero dehomogenizing and v coordinates".into()))?;
    let inv = p[chart.dehom].inv().expect("nonzero");
    let cu = (p[chart.u_dir].clone() * inv.clone()).in_field(field);
    let cv = (p[chart.v_dir].clone() * inv).in_field(field);
    let mut coords: [BiPoly<NfElem>; 3] = [UniPoly::one(), UniPoly::one(), UniPoly::one()];
    coords[chart.u_dir] = u_shift(&cu);
    coords[chart.v_dir] = v_shift(&cv);
    let h = expand(g, &coords);
    let l = expand(&fermat, &coords);
    Ok(LocalFrame { chart, field: field.clone(), base: (cu, cv), h, l, d })
}

fn expand(g: &HomPoly3, coords: &[BiPoly<NfElem>; 3]) -> BiPoly<NfElem> {
    let mut powers: [Vec<BiPoly<NfElem>>; 3] = [vec![UniPoly::one()], vec![UniPoly::one()], vec![UniPoly::one()]];
    for i in 0..3 {
        for k in 1..=g.degree() {
            let next = powers[i][k - 1].clone() * coords[i].clone();
            powers[i].push(next);
        }
    }
    let mut acc: BiPoly<NfElem> = UniPoly::zero();
    for (e, c) in g.terms() {
        let t = powers[0][e[0] as usize].clone() * powers[1][e[1] as usize].clone() * powers[2][e[2] as usize].clone();
        let cn = NfElem::from_rational(c);
        acc = acc + t.map(|row| row.scale(&cn));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let f = parse_poly("x^5+y^5+z^5").unwrap();
        assert_eq!(f.degree(), 5);
        assert_eq!(f.terms().len(), 3);
        assert_eq!(f, fermat_form(5).unwrap());
        assert_eq!(parse_poly("y - 2*x").unwrap().degree(), 1);
        assert_eq!(parse_poly("x^2*y - z^3").unwrap().degree(), 3);
        assert_eq!(parse_poly(" -1/2 * x*y + 3/4*z^2 ").unwrap().render(), "-1/2*x*y + 3/4*z^2");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_poly("x^2 + y"), Err(Error::Inhomogeneous(2, 1))));
        assert!(matches!(parse_poly("x - x"), Err(Error::ZeroPolynomial)));
        assert!(matches!(parse_poly("x + * y"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("x + w"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("2/0*x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn render_roundtrip() {
        for s in ["x^2 - y*z", "y + x", "x^3 + x^2*z + x*y*z + 3*y^3 - 2/3*z^3", "7"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.render()).unwrap(), p);
        }
    }

    #[test]
    fn fermat_examples() {
        assert_eq!(fermat_form(1).unwrap().render(), "x + y + z");
        assert_eq!(fermat_form(2).unwrap().render(), "x^2 + y^2 + z^2");
        assert!(fermat_form(0).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        let r = irreducibility_check(&parse_poly("y - 2*x").unwrap());
        assert_eq!(r.over_q, Irreducibility::Irreducible);
        assert!(r.absolute_certified);
        let r = irreducibility_check(&parse_poly("x^2 - y*z").unwrap());
        assert_eq!(r.over_q, Irreducibility::Irreducible);
        assert!(r.absolute_certified);
        let r = irreducibility_check(&parse_poly("x^2 + y^2").unwrap());
        assert_eq!(r.over_q, Irreducibility::Irreducible);
        assert!(!r.absolute_certified);
    }

    #[test]
    fn reducible_found() {
        let r = irreducibility_check(&parse_poly("x^2 - y^2").unwrap());
        let Irreducibility::Reducible(f) = r.over_q else { panic!("expected a factor") };
        assert_eq!(f.degree(), 1);
        let r = irreducibility_check(&parse_poly("x^3 - x*y*z + x^2*z - y*z^2").unwrap());
        // (x + z)(x^2 - y z)
        let Irreducibility::Reducible(f) = r.over_q else { panic!("expected a factor") };
        assert!(f.degree() == 1 || f.degree() == 2);
    }

    #[test]
    fn frame_for_split_line() {
        let g = parse_poly("y + x").unwrap();
        let p = [NfElem::one(), -NfElem::one(), NfElem::zero()];
        let fr = local_frame(&g, 5, &p, &None).unwrap();
        assert_eq!(fr.chart.to_string(), "x;y");
        assert!(fr.h.coeff(0).coeff(0).is_zero());
        assert!(fr.l.coeff(0).coeff(0).is_zero());
        assert_eq!(fr.l.coeff(1).coeff(0), NfElem::from_int(5));
    }

    #[test]
    fn point_off_curves_rejected() {
        let g = parse_poly("y + x").unwrap();
        let p = [NfElem::one(), NfElem::one(), NfElem::zero()];
        assert!(matches!(local_frame(&g, 5, &p, &None), Err(Error::NotOnIntersection)));
    }
}
