//! Weil heights, radicals of points of P², and place-set statistics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::field::{json_int, parse_json_int, split_prime, valuation, Field, NFElement, PrimeIdeal};
use crate::arith::integer::{factor_integer, rat_ord_p};
use crate::error::{Error, Result};
use crate::real::{Real, DEFAULT_PREC};

/// Three-valued outcome of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Decision {
    True,
    False,
    Undecided,
}

impl Decision {
    pub fn from_bool(b: bool) -> Decision {
        if b {
            Decision::True
        } else {
            Decision::False
        }
    }

    pub fn and(self, o: Decision) -> Decision {
        match (self, o) {
            (Decision::False, _) | (_, Decision::False) => Decision::False,
            (Decision::True, Decision::True) => Decision::True,
            _ => Decision::Undecided,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Decision::True => "TRUE",
            Decision::False => "FALSE",
            Decision::Undecided => "UNDECIDED",
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `Σ c_i log m_i` over a basis of pairwise coprime integers `m_i >= 2`,
/// plus an optional interval residual for contributions with no such form
/// (archimedean logs in fields other than Q and imaginary quadratic ones).
///
/// Logs of pairwise coprime integers are Q-linearly independent, so the
/// formal part is zero iff it has no terms.
#[derive(Clone, Debug)]
pub struct LogQuantity {
    terms: Vec<(BigRational, BigInt)>,
    residual: Option<Real>,
}

impl PartialEq for LogQuantity {
    fn eq(&self, o: &Self) -> bool {
        self.residual.is_none() && o.residual.is_none() && self.formal_eq(o)
    }
}

fn normalize(mut raw: Vec<(BigRational, BigInt)>) -> Vec<(BigRational, BigInt)> {
    raw.retain(|(c, m)| !c.is_zero() && !m.is_one());
    let mut out: Vec<(BigRational, BigInt)> = Vec::new();
    while let Some((c, m)) = raw.pop() {
        let mut hit = None;
        for (i, (_, b)) in out.iter().enumerate() {
            let g = m.gcd(b);
            if !g.is_one() {
                hit = Some((i, g));
                break;
            }
        }
        match hit {
            None => out.push((c, m)),
            Some((i, g)) => {
                let (c2, b) = out.swap_remove(i);
                let sum = &c + &c2;
                for (cc, mm) in [(c, &m / &g), (c2, &b / &g), (sum, g)] {
                    if !cc.is_zero() && !mm.is_one() {
                        raw.push((cc, mm));
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

impl LogQuantity {
    pub fn zero() -> LogQuantity {
        LogQuantity { terms: Vec::new(), residual: None }
    }

    pub fn from_terms(terms: Vec<(BigRational, BigInt)>) -> LogQuantity {
        assert!(terms.iter().all(|(_, m)| m.is_positive()), "log of a non-positive integer");
        LogQuantity { terms: normalize(terms), residual: None }
    }

    /// log m for m >= 1.
    pub fn log_int(m: &BigInt) -> LogQuantity {
        LogQuantity::from_terms(vec![(BigRational::one(), m.clone())])
    }

    /// log q for q > 0.
    pub fn log_rat(q: &BigRational) -> LogQuantity {
        assert!(q.is_positive(), "log of a non-positive rational");
        LogQuantity::from_terms(vec![
            (BigRational::one(), q.numer().clone()),
            (-BigRational::one(), q.denom().clone()),
        ])
    }

    pub fn from_real(r: Real) -> LogQuantity {
        LogQuantity { terms: Vec::new(), residual: Some(r) }
    }

    pub fn terms(&self) -> &[(BigRational, BigInt)] {
        &self.terms
    }

    pub fn residual(&self) -> Option<&Real> {
        self.residual.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.residual.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.residual.is_none()
    }

    /// Same formal part; residuals, if any, are ignored.
    pub fn formal_eq(&self, o: &LogQuantity) -> bool {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().map(|(c, m)| (-c, m.clone())));
        normalize(t).is_empty()
    }

    pub fn add(&self, o: &LogQuantity) -> LogQuantity {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        let residual = match (&self.residual, &o.residual) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (Some(a), Some(b)) => Some(a.add(b)),
        };
        LogQuantity { terms: normalize(t), residual }
    }

    pub fn scale(&self, c: &BigRational) -> LogQuantity {
        if c.is_zero() {
            return LogQuantity::zero();
        }
        LogQuantity {
            terms: self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect(),
            residual: self.residual.as_ref().map(|r| r.scale(c)),
        }
    }

    pub fn neg(&self) -> LogQuantity {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, o: &LogQuantity) -> LogQuantity {
        self.add(&o.neg())
    }

    /// Interval enclosure of the full value.
    pub fn to_real(&self, prec: u32) -> Real {
        let mut acc = Real::zero(prec);
        for (c, m) in &self.terms {
            let l = Real::from_bigint(m, prec + 16).ln().expect("m >= 2");
            acc = acc.add(&l.scale(c));
        }
        if let Some(r) = &self.residual {
            acc = acc.add(r);
        }
        acc.with_prec(prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_real(64).mid_f64()
    }

    /// Sign of the value: `Some(1)`, `Some(0)`, `Some(-1)`, or `None` if
    /// the enclosure at `prec` straddles zero.
    pub fn sign(&self, prec: u32) -> Option<i32> {
        if self.residual.is_none() {
            if self.terms.is_empty() {
                return Some(0);
            }
            if self.terms.iter().all(|(c, _)| c.is_positive()) {
                return Some(1);
            }
            if self.terms.iter().all(|(c, _)| c.is_negative()) {
                return Some(-1);
            }
        }
        let r = self.to_real(prec);
        if r.is_positive() {
            Some(1)
        } else if r.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    /// `self <= o` at one precision.
    pub fn le_at(&self, o: &LogQuantity, prec: u32) -> Decision {
        match o.sub(self).sign(prec) {
            Some(s) => Decision::from_bool(s >= 0),
            None => Decision::Undecided,
        }
    }

    pub fn lt_at(&self, o: &LogQuantity, prec: u32) -> Decision {
        match o.sub(self).sign(prec) {
            Some(s) => Decision::from_bool(s > 0),
            None => Decision::Undecided,
        }
    }

    /// `self <= o`, doubling the precision from `prec` up to 1024 bits.
    pub fn le(&self, o: &LogQuantity, prec: u32) -> Decision {
        let mut p = prec;
        loop {
            let d = self.le_at(o, p);
            if d != Decision::Undecided || p >= 1024 {
                return d;
            }
            p *= 2;
        }
    }

    pub fn to_json(&self, prec: u32) -> Value {
        let r = self.to_real(prec);
        let mut v = json!({
            "terms": self.terms.iter().map(|(c, m)| json!([c.to_string(), json_int(m)])).collect::<Vec<_>>(),
            "float": r.mid_string(30),
            "err": r.err_string(),
        });
        if let Some(res) = &self.residual {
            v["residual"] = json!([res.lo().to_string(), res.hi().to_string()]);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<LogQuantity> {
        let bad = || Error::InvalidInput("malformed log quantity".into());
        let arr = v.get("terms").and_then(Value::as_array).ok_or_else(bad)?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let c: BigRational = match &pair[0] {
                Value::String(s) => s.parse().map_err(|_| bad())?,
                Value::Number(n) => BigRational::from_integer(n.as_i64().ok_or_else(bad)?.into()),
                _ => return Err(bad()),
            };
            let m = parse_json_int(&pair[1])?;
            if !m.is_positive() {
                return Err(bad());
            }
            terms.push((c, m));
        }
        let mut q = LogQuantity::from_terms(terms);
        if let Some(r) = v.get("residual").and_then(Value::as_array) {
            if r.len() != 2 {
                return Err(bad());
            }
            let lo: BigRational = r[0].as_str().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let hi: BigRational = r[1].as_str().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            q.residual = Some(Real::from_bounds(&lo, &hi, DEFAULT_PREC));
        }
        Ok(q)
    }
}

impl fmt::Display for LogQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exact = if self.terms.is_empty() {
            None
        } else if self.terms.iter().all(|(c, _)| c.is_integer()) {
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            for (c, m) in &self.terms {
                let e = c.to_integer();
                let k = e.abs().to_u32().unwrap_or(u32::MAX);
                if e.is_positive() {
                    num *= m.pow(k);
                } else {
                    den *= m.pow(k);
                }
            }
            Some(if den.is_one() { format!("log {num}") } else { format!("log({num}/{den})") })
        } else {
            let parts: Vec<String> = self
                .terms
                .iter()
                .map(|(c, m)| if c.is_one() { format!("log {m}") } else { format!("({c})*log {m}") })
                .collect();
            Some(parts.join(" + "))
        };
        match (exact, &self.residual) {
            (None, None) => f.write_str("0"),
            (Some(s), None) => f.write_str(&s),
            (None, Some(r)) => write!(f, "{}", r.mid_string(20)),
            (Some(s), Some(r)) => write!(f, "{s} + {}", r.mid_string(20)),
        }
    }
}

/// A point of P^n(K).
#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    field: Field,
    coords: Vec<NFElement>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<NFElement>) -> Result<ProjectivePoint> {
        let field = coords
            .first()
            .map(|c| c.field().clone())
            .ok_or_else(|| Error::InvalidInput("empty point".into()))?;
        if coords.len() < 2 {
            return Err(Error::InvalidInput("a projective point needs at least two coordinates".into()));
        }
        if coords.iter().any(|c| c.field() != &field) {
            return Err(Error::InvalidInput("coordinates from different fields".into()));
        }
        if coords.iter().all(NFElement::is_zero) {
            return Err(Error::DegeneratePoint);
        }
        Ok(ProjectivePoint { field, coords })
    }

    pub fn from_rationals(field: &Field, qs: &[BigRational]) -> Result<ProjectivePoint> {
        ProjectivePoint::new(qs.iter().map(|q| field.from_rational(q.clone())).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[NFElement] {
        &self.coords
    }

    pub fn scale(&self, l: &NFElement) -> Result<ProjectivePoint> {
        if l.is_zero() {
            return Err(Error::DegeneratePoint);
        }
        ProjectivePoint::new(self.coords.iter().map(|c| c.mul(l)).collect())
    }

    pub fn to_json(&self) -> Value {
        if self.field.is_rational() {
            return json!(self.coords.iter().map(|c| c.coords()[0].to_string()).collect::<Vec<_>>());
        }
        json!(self.coords.iter().map(NFElement::to_json).collect::<Vec<_>>())
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, o: &Self) -> bool {
        if self.field != o.field || self.coords.len() != o.coords.len() {
            return false;
        }
        let i = self.coords.iter().position(|c| !c.is_zero()).expect("nonzero point");
        let (xi, yi) = (&self.coords[i], &o.coords[i]);
        self.coords.iter().zip(&o.coords).all(|(x, y)| x.mul(yi) == y.mul(xi))
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", s.join(" : "))
    }
}

pub fn rational_prime(p: &BigInt) -> PrimeIdeal {
    PrimeIdeal { p: p.clone(), e: 1, f: 1, g_mod_p: vec![0, 1] }
}

fn split(k: &Field, p: &BigInt) -> Result<Vec<PrimeIdeal>> {
    if k.is_rational() {
        return Ok(vec![rational_prime(p)]);
    }
    split_prime(k, p).map_err(|e| match e {
        Error::IndexDivisorUnsupported(s) => Error::UnsupportedField(format!("index divisor {s}")),
        e => e,
    })
}

fn primes_of_rationals(qs: &[BigRational]) -> Result<BTreeSet<BigInt>> {
    let mut out = BTreeSet::new();
    for q in qs {
        out.extend(factor_integer(q.numer())?.primes());
        out.extend(factor_integer(q.denom())?.primes());
    }
    Ok(out)
}

/// Valuations of the nonzero coordinates at every prime where one of them
/// is nonzero.
pub fn valuation_table(p: &ProjectivePoint) -> Result<BTreeMap<PrimeIdeal, Vec<Option<i64>>>> {
    let k = &p.field;
    let mut table = BTreeMap::new();
    if k.is_rational() {
        let qs: Vec<BigRational> = p.coords.iter().filter(|c| !c.is_zero()).map(|c| c.coords()[0].clone()).collect();
        for pr in primes_of_rationals(&qs)? {
            let vals = p
                .coords
                .iter()
                .map(|c| (!c.is_zero()).then(|| rat_ord_p(&c.coords()[0], &pr)))
                .collect();
            table.insert(rational_prime(&pr), vals);
        }
        return Ok(table);
    }
    let mut ps = BTreeSet::new();
    for c in p.coords.iter().filter(|c| !c.is_zero()) {
        ps.extend(c.support_primes()?);
    }
    for pr in ps {
        for ideal in split(k, &pr)? {
            let mut vals = Vec::with_capacity(p.coords.len());
            for c in &p.coords {
                vals.push(if c.is_zero() { None } else { Some(valuation(c, &ideal)?) });
            }
            table.insert(ideal, vals);
        }
    }
    Ok(table)
}

#[derive(Clone, Debug)]
pub struct Heights {
    /// h_K, relative to the field of definition.
    pub relative: LogQuantity,
    /// h = h_K / [K:Q].
    pub absolute: LogQuantity,
}

/// Relative and absolute logarithmic Weil height of a projective point.
pub fn proj_height(pt: &ProjectivePoint, prec: u32) -> Result<Heights> {
    let k = &pt.field;
    let d = k.degree();
    let relative = if k.is_rational() {
        let qs: Vec<BigRational> = pt.coords.iter().map(|c| c.coords()[0].clone()).collect();
        let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = qs.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        let m = ints.iter().map(|n| (n / &g).abs()).max().expect("nonempty");
        LogQuantity::log_int(&m)
    } else {
        let mut finite = Vec::new();
        for (ideal, vals) in valuation_table(pt)? {
            let min = vals.iter().flatten().min().copied().expect("nonzero coordinate");
            if min != 0 {
                finite.push((BigRational::from_integer(BigInt::from(-min * ideal.f as i64)), ideal.p.clone()));
            }
        }
        let fin = LogQuantity::from_terms(finite);
        let arch = if pt.coords.iter().all(NFElement::is_rational) {
            let m = pt.coords.iter().map(|c| c.coords()[0].abs()).max().expect("nonempty");
            LogQuantity::log_rat(&m).scale(&BigRational::from_integer(BigInt::from(d)))
        } else if k.is_imaginary_quadratic() {
            let n = pt.coords.iter().filter(|c| !c.is_zero()).map(NFElement::norm).max().expect("nonzero coordinate");
            LogQuantity::log_rat(&n)
        } else {
            LogQuantity::from_real(archimedean_part(pt, prec)?)
        };
        fin.add(&arch)
    };
    let absolute = relative.scale(&BigRational::new(BigInt::one(), BigInt::from(d)));
    Ok(Heights { relative, absolute })
}

fn archimedean_part(pt: &ProjectivePoint, prec: u32) -> Result<Real> {
    let emb = pt.field.embeddings();
    let wp = prec + 32;
    let mut best: Option<Vec<(Real, u32)>> = None;
    for c in pt.coords.iter().filter(|c| !c.is_zero()) {
        let v = emb.abs_at_places(&c.as_poly(), wp)?;
        best = Some(match best {
            None => v,
            Some(b) => b.into_iter().zip(v).map(|((x, d), (y, _))| (x.max(&y), d)).collect(),
        });
    }
    let mut acc = Real::zero(wp);
    for (x, d) in best.expect("nonzero coordinate") {
        acc = acc.add(&x.ln()?.mul_int(d as i64));
    }
    Ok(acc.with_prec(prec))
}

#[derive(Clone, Debug)]
pub struct RadicalResult {
    pub value: LogQuantity,
    pub primes: Vec<PrimeIdeal>,
}

/// rad_K(x0:x1:x2): Σ log N(𝔭) over primes where the three valuations are
/// not all equal, skipping primes in `exclude`.
pub fn radical(pt: &ProjectivePoint, exclude: Option<&PlaceSet>) -> Result<RadicalResult> {
    if pt.coords.len() != 3 {
        return Err(Error::InvalidInput("the radical is defined on points of P^2".into()));
    }
    if pt.coords.iter().any(NFElement::is_zero) {
        return Err(Error::ZeroCoordinate);
    }
    let mut primes = Vec::new();
    let mut terms = Vec::new();
    for (ideal, vals) in valuation_table(pt)? {
        if vals.iter().all(|v| *v == vals[0]) {
            continue;
        }
        if exclude.is_some_and(|s| s.contains(&ideal)) {
            continue;
        }
        terms.push((BigRational::from_integer(BigInt::from(ideal.f)), ideal.p.clone()));
        primes.push(ideal);
    }
    Ok(RadicalResult { value: LogQuantity::from_terms(terms), primes })
}

/// A set S of places of K. Archimedean places carry N(v) = 1.
#[derive(Clone, Debug)]
pub struct PlaceSet {
    field: Field,
    finite: BTreeSet<PrimeIdeal>,
    archimedean: bool,
}

#[derive(Clone, Debug)]
pub struct SigmaStats {
    pub sigma: LogQuantity,
    pub card: usize,
    pub primes: BTreeSet<BigInt>,
    /// Largest residual characteristic, 1 for an empty set.
    pub max_p: BigInt,
}

impl PlaceSet {
    pub fn new(field: &Field, places: Vec<PrimeIdeal>, archimedean: bool) -> Result<PlaceSet> {
        let n = places.len();
        let finite: BTreeSet<PrimeIdeal> = places.into_iter().collect();
        if finite.len() != n {
            return Err(Error::InvalidInput("repeated place".into()));
        }
        Ok(PlaceSet { field: field.clone(), finite, archimedean })
    }

    /// All places of K above the given rational primes.
    pub fn above_primes(field: &Field, primes: &[BigInt], archimedean: bool) -> Result<PlaceSet> {
        let mut finite = BTreeSet::new();
        for p in primes {
            finite.extend(split(field, p)?);
        }
        Ok(PlaceSet { field: field.clone(), finite, archimedean })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn places(&self) -> impl Iterator<Item = &PrimeIdeal> {
        self.finite.iter()
    }

    pub fn includes_archimedean(&self) -> bool {
        self.archimedean
    }

    pub fn contains(&self, p: &PrimeIdeal) -> bool {
        self.finite.contains(p)
    }

    pub fn card(&self) -> usize {
        self.finite.len()
    }

    pub fn sigma(&self) -> LogQuantity {
        LogQuantity::from_terms(
            self.finite
                .iter()
                .map(|p| (BigRational::from_integer(BigInt::from(p.f)), p.p.clone()))
                .collect(),
        )
    }

    pub fn residual_chars(&self) -> BTreeSet<BigInt> {
        self.finite.iter().map(|p| p.p.clone()).collect()
    }

    pub fn max_p(&self) -> BigInt {
        self.finite.iter().map(|p| p.p.clone()).max().unwrap_or_else(BigInt::one)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_json(),
            "finite_places": self.finite.iter().map(PrimeIdeal::to_json).collect::<Vec<_>>(),
            "include_archimedean": self.archimedean,
        })
    }
}

pub fn sigma_stats(s: &PlaceSet) -> SigmaStats {
    let sigma = s.sigma();
    let primes = s.residual_chars();
    let max_p = s.max_p();
    let card = s.card();
    assert_eq!(
        LogQuantity::log_int(&max_p).le(&sigma, DEFAULT_PREC),
        Decision::True,
        "log P <= Σ_S"
    );
    assert!(card <= s.field.degree() * primes.len(), "card S <= [K:Q] card P(S)");
    SigmaStats { sigma, card, primes, max_p }
}

/// All places of L above S. Supported: K = Q, or L = K.
pub fn lift_places(s: &PlaceSet, l: &Field) -> Result<PlaceSet> {
    let out = if s.field == *l {
        s.clone()
    } else if s.field.is_rational() {
        let ps: Vec<BigInt> = s.residual_chars().into_iter().collect();
        PlaceSet::above_primes(l, &ps, s.archimedean)?
    } else {
        return Err(Error::UnsupportedExtension(format!("{} over {}", l, s.field)));
    };
    let rel = BigRational::from_integer(BigInt::from(l.degree() / s.field.degree()));
    let diff = s.sigma().scale(&rel).sub(&out.sigma());
    assert!(diff.is_exact() && diff.terms().iter().all(|(c, _)| c.is_positive()), "Σ_S' <= [L:K] Σ_S");
    Ok(out)
}

/// h_K(a:b:a+b) <= h_K(a:a+b) + [K:Q] log 2.
pub fn check_sum_height(a: &NFElement, b: &NFElement, prec: u32) -> Result<Decision> {
    let c = a.add(b);
    let k = a.field();
    let lhs = proj_height(&ProjectivePoint::new(vec![a.clone(), b.clone(), c.clone()])?, prec)?.relative;
    let rhs = proj_height(&ProjectivePoint::new(vec![a.clone(), c])?, prec)?
        .relative
        .add(&LogQuantity::log_int(&BigInt::from(2)).scale(&BigRational::from_integer(BigInt::from(k.degree()))));
    Ok(lhs.le(&rhs, prec))
}

/// h_L(P) = [L:K] h_K(P) for a point over Q viewed in L.
pub fn check_height_extension(qs: &[BigRational], l: &Field, prec: u32) -> Result<Decision> {
    let q = crate::arith::field::rationals();
    let hk = proj_height(&ProjectivePoint::from_rationals(&q, qs)?, prec)?.relative;
    let hl = proj_height(&ProjectivePoint::from_rationals(l, qs)?, prec)?.relative;
    let scaled = hk.scale(&BigRational::from_integer(BigInt::from(l.degree())));
    Ok(scaled.le(&hl, prec).and(hl.le(&scaled, prec)))
}

/// Both sides of ([K:Q] card P(S))^-1 Σ_S <= log P <= Σ_S.
pub fn check_max_char(s: &PlaceSet, prec: u32) -> Decision {
    let st = sigma_stats(s);
    if st.primes.is_empty() {
        return Decision::True;
    }
    let logp = LogQuantity::log_int(&st.max_p);
    let k = BigRational::new(BigInt::one(), BigInt::from(s.field.degree() * st.primes.len()));
    st.sigma.scale(&k).le(&logp, prec).and(logp.le(&st.sigma, prec))
}

pub fn check_card(s: &PlaceSet) -> Decision {
    Decision::from_bool(s.card() <= s.field.degree() * s.residual_chars().len())
}

/// Σ_S' <= [L:K] Σ_S for S' the lift of S to L.
pub fn check_lift(s: &PlaceSet, l: &Field, prec: u32) -> Result<Decision> {
    let lifted = lift_places(s, l)?;
    let rel = BigRational::from_integer(BigInt::from(l.degree() / s.field.degree()));
    Ok(lifted.sigma().le(&s.sigma().scale(&rel), prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{quadratic_field, rationals};
    use crate::arith::integer::{int, rat};

    fn qpt(v: &[(i64, i64)]) -> ProjectivePoint {
        let q = rationals();
        ProjectivePoint::from_rationals(&q, &v.iter().map(|&(n, d)| rat(n, d)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn coprime_basis_normalization() {
        let q = LogQuantity::from_terms(vec![(rat(1, 1), int(12)), (rat(-1, 1), int(18))]);
        // log 12 - log 18 = log 2 - log 3
        assert_eq!(q.terms(), &[(rat(1, 1), int(2)), (rat(-1, 1), int(3))]);
        assert!(LogQuantity::log_int(&int(6)).sub(&LogQuantity::log_int(&int(2))).sub(&LogQuantity::log_int(&int(3))).is_zero());
        assert_eq!(LogQuantity::log_int(&int(4)), LogQuantity::log_int(&int(2)).scale(&rat(2, 1)));
        assert_eq!(format!("{}", LogQuantity::log_int(&int(2)).add(&LogQuantity::log_int(&int(3)))), "log 6");
    }

    #[test]
    fn comparisons() {
        let a = LogQuantity::log_int(&int(9));
        let b = LogQuantity::log_int(&int(6));
        assert_eq!(b.le(&a, 128), Decision::True);
        assert_eq!(a.le(&b, 128), Decision::False);
        assert_eq!(a.le(&a, 128), Decision::True);
        assert_eq!(a.lt_at(&a, 128), Decision::False);
        // 3 log 2 < 2 log 3
        let x = LogQuantity::log_int(&int(8));
        assert_eq!(x.le(&a, 128), Decision::True);
    }

    #[test]
    fn json_round_trip() {
        let q = LogQuantity::from_terms(vec![(rat(3, 2), int(5)), (rat(-1, 1), int(7))]);
        let v = q.to_json(128);
        assert_eq!(LogQuantity::from_json(&v).unwrap(), q);
        assert!(v["float"].as_str().unwrap().starts_with("0.468246719595837"), "{v}");
    }

    #[test]
    fn height_examples() {
        let h = proj_height(&qpt(&[(1, 1), (8, 1), (9, 1)]), 128).unwrap();
        assert_eq!(h.absolute, LogQuantity::log_int(&int(9)));
        let h = proj_height(&qpt(&[(1, 1), (1, 1)]), 128).unwrap();
        assert!(h.absolute.is_zero());
        let qi = quadratic_field(-1).unwrap();
        let p = ProjectivePoint::from_rationals(&qi, &[rat(1, 2), rat(1, 1)]).unwrap();
        let h = proj_height(&p, 128).unwrap();
        assert_eq!(h.relative, LogQuantity::log_int(&int(4)));
        assert_eq!(h.absolute, LogQuantity::log_int(&int(2)));
    }

    #[test]
    fn height_is_scaling_invariant() {
        let qi = quadratic_field(-1).unwrap();
        let i = qi.gen();
        let p = ProjectivePoint::new(vec![qi.from_int(3), i.add(&qi.from_int(2)), qi.from_rational(rat(5, 7))]).unwrap();
        let l = i.scale(&rat(2, 1)).add(&qi.from_int(1));
        let h1 = proj_height(&p, 128).unwrap().relative;
        let h2 = proj_height(&p.scale(&l).unwrap(), 128).unwrap().relative;
        assert_eq!(h1, h2);
        assert_eq!(p, p.scale(&l).unwrap());
    }

    #[test]
    fn real_quadratic_height_encloses_numeric_value() {
        let k = quadratic_field(2).unwrap();
        let s = k.gen();
        // (1 : sqrt 2) has h_K = log|sqrt 2| + log|-sqrt 2| ... = log 2
        let p = ProjectivePoint::new(vec![k.from_int(1), s]).unwrap();
        let h = proj_height(&p, 128).unwrap().relative;
        assert!(h.to_real(128).contains(&BigRational::zero()) == false);
        assert!((h.to_f64() - 2f64.ln()).abs() < 1e-12);
        // units have height-zero ratios: (1 : 1 + sqrt 2) has h_K = log(1 + sqrt 2)
        let u = k.gen().add(&k.from_int(1));
        let h = proj_height(&ProjectivePoint::new(vec![k.from_int(1), u]).unwrap(), 128).unwrap().relative;
        assert!((h.to_f64() - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-12);
    }

    #[test]
    fn radical_examples() {
        let r = radical(&qpt(&[(1, 1), (8, 1), (9, 1)]), None).unwrap();
        assert_eq!(r.value, LogQuantity::log_int(&int(6)));
        assert_eq!(r.primes.len(), 2);
        let r = radical(&qpt(&[(3, 8), (5, 8), (1, 1)]), None).unwrap();
        assert_eq!(r.value, LogQuantity::log_int(&int(30)));
        let r = radical(&qpt(&[(1, 1), (1, 1), (1, 1)]), None).unwrap();
        assert!(r.value.is_zero() && r.primes.is_empty());
        assert_eq!(radical(&qpt(&[(0, 1), (1, 1), (1, 1)]), None).unwrap_err(), Error::ZeroCoordinate);
    }

    #[test]
    fn sigma_examples() {
        let q = rationals();
        let s = PlaceSet::above_primes(&q, &[int(2), int(3), int(5)], true).unwrap();
        let st = sigma_stats(&s);
        assert_eq!(st.sigma, LogQuantity::log_int(&int(30)));
        assert_eq!((st.card, st.max_p.clone()), (3, int(5)));
        let qi = quadratic_field(-1).unwrap();
        let s = PlaceSet::above_primes(&qi, &[int(5)], false).unwrap();
        assert_eq!(sigma_stats(&s).sigma, LogQuantity::log_int(&int(25)));
        let e = sigma_stats(&PlaceSet::new(&q, vec![], true).unwrap());
        assert!(e.sigma.is_zero());
        assert_eq!((e.card, e.max_p), (0, int(1)));
        let dup = PlaceSet::new(&q, vec![rational_prime(&int(2)), rational_prime(&int(2))], false);
        assert!(dup.is_err());
    }

    #[test]
    fn lift_examples() {
        let q = rationals();
        let qi = quadratic_field(-1).unwrap();
        let s5 = PlaceSet::above_primes(&q, &[int(5)], false).unwrap();
        let l = lift_places(&s5, &qi).unwrap();
        assert_eq!(l.card(), 2);
        assert_eq!(l.sigma(), s5.sigma().scale(&rat(2, 1)));
        let s2 = PlaceSet::above_primes(&q, &[int(2)], false).unwrap();
        let l = lift_places(&s2, &qi).unwrap();
        assert_eq!(l.sigma(), LogQuantity::log_int(&int(2)));
        assert_eq!(check_lift(&s2, &qi, 128).unwrap(), Decision::True);
        let empty = PlaceSet::new(&q, vec![], false).unwrap();
        assert_eq!(lift_places(&empty, &qi).unwrap().card(), 0);
        let k2 = quadratic_field(2).unwrap();
        let s = PlaceSet::above_primes(&qi, &[int(5)], false).unwrap();
        assert!(matches!(lift_places(&s, &k2), Err(Error::UnsupportedExtension(_))));
    }

    #[test]
    fn section_two_checks() {
        let qi = quadratic_field(-1).unwrap();
        let a = qi.gen().add(&qi.from_int(3));
        let b = qi.from_rational(rat(-7, 2));
        assert_eq!(check_sum_height(&a, &b, 128).unwrap(), Decision::True);
        assert_eq!(check_height_extension(&[rat(1, 2), rat(3, 1)], &qi, 128).unwrap(), Decision::True);
        let k = quadratic_field(7).unwrap();
        assert_eq!(check_height_extension(&[rat(5, 3), rat(1, 1)], &k, 128).unwrap(), Decision::True);
        let s = PlaceSet::above_primes(&qi, &[int(2), int(3), int(13)], false).unwrap();
        assert_eq!(check_max_char(&s, 128), Decision::True);
        assert_eq!(check_card(&s), Decision::True);
    }
}
