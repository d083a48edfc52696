//! Belyi maps P¹ → P¹ for rational branch sets, exact certification of
//! their critical values, and fiber fields over rational base points.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::field::{make_number_field, make_number_field_with_generators, split_prime, DiscProvenance};
use crate::arith::integer::{factor_integer, ord_p, primes_up_to};
use crate::arith::poly::{QPoly, ZPoly};
use crate::arith::qfactor::{factor_over_q, factor_zpoly};
use crate::heights::Decision;
use crate::{Error, Result};

pub const DEFAULT_DEGREE_CAP: u64 = 1_000_000;

/// A point of P¹(Q).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum P1Point {
    Finite(BigRational),
    Infinity,
}

impl P1Point {
    pub fn int(n: i64) -> P1Point {
        P1Point::Finite(BigRational::from_integer(n.into()))
    }

    pub fn rat(n: i64, d: i64) -> P1Point {
        P1Point::Finite(BigRational::new(n.into(), d.into()))
    }

    /// Accepts integers, fractions `m/n`, and `inf`/`∞`.
    pub fn parse(s: &str) -> Result<P1Point> {
        let t = s.trim();
        if ["inf", "infinity", "∞", "oo"].contains(&t.to_ascii_lowercase().as_str()) {
            return Ok(P1Point::Infinity);
        }
        let bad = || Error::NonRationalBranchPoint(t.to_string());
        let (a, b) = t.split_once('/').unwrap_or((t, "1"));
        let n: BigInt = a.trim().parse().map_err(|_| bad())?;
        let d: BigInt = b.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Ok(P1Point::Infinity);
        }
        Ok(P1Point::Finite(BigRational::new(n, d)))
    }

    /// Coprime homogeneous coordinates (p : q) with q ≥ 0.
    pub fn homogeneous(&self) -> (BigInt, BigInt) {
        match self {
            P1Point::Finite(x) => (x.numer().clone(), x.denom().clone()),
            P1Point::Infinity => (BigInt::one(), BigInt::zero()),
        }
    }

    pub fn from_homogeneous(p: &BigInt, q: &BigInt) -> P1Point {
        if q.is_zero() {
            P1Point::Infinity
        } else {
            P1Point::Finite(BigRational::new(p.clone(), q.clone()))
        }
    }

    pub fn is_special(&self) -> bool {
        match self {
            P1Point::Infinity => true,
            P1Point::Finite(x) => x.is_zero() || x.is_one(),
        }
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(x) => write!(f, "{x}"),
            P1Point::Infinity => write!(f, "inf"),
        }
    }
}

/// Homogeneous coordinates of the value 0, 1 and ∞.
fn special_points() -> [P1Point; 3] {
    [P1Point::int(0), P1Point::int(1), P1Point::Infinity]
}

/// x ↦ num(x)/den(x) with coprime integer polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    num: ZPoly,
    den: ZPoly,
}

fn zpoly_json(p: &ZPoly) -> Value {
    json!(p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn zpoly_from_json(v: &Value) -> Result<ZPoly> {
    let arr = v.as_array().ok_or_else(|| Error::InvalidInput("polynomial must be a coefficient array".into()))?;
    let c = arr
        .iter()
        .map(|x| match x {
            Value::String(s) => s.parse::<BigInt>().map_err(|_| Error::InvalidInput(format!("bad coefficient {s}"))),
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::InvalidInput(format!("bad coefficient {n}"))),
            _ => Err(Error::InvalidInput("bad coefficient".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ZPoly::new(c))
}

fn joint_content(a: &ZPoly, b: &ZPoly) -> BigInt {
    let g = a.content().gcd(&b.content());
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

impl RationalMap {
    pub fn new(num: ZPoly, den: ZPoly) -> Result<RationalMap> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if num.degree() <= 0 && den.degree() <= 0 {
            return Err(Error::InvalidInput("constant map".into()));
        }
        if !num.is_zero() && num.to_q().gcd(&den.to_q()).degree() > 0 {
            return Err(Error::InvalidInput("numerator and denominator share a factor".into()));
        }
        if num.is_zero() {
            return Err(Error::InvalidInput("constant map".into()));
        }
        Ok(RationalMap::normalized(num, den))
    }

    fn normalized(num: ZPoly, den: ZPoly) -> RationalMap {
        let g = joint_content(&num, &den);
        let mut num = ZPoly::new(num.coeffs().iter().map(|c| c / &g).collect());
        let mut den = ZPoly::new(den.coeffs().iter().map(|c| c / &g).collect());
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RationalMap { num, den }
    }

    pub fn identity() -> RationalMap {
        RationalMap { num: ZPoly::x(), den: ZPoly::one() }
    }

    /// (a x + b)/(c x + d).
    pub fn mobius(m: &Mobius) -> RationalMap {
        RationalMap::normalized(
            ZPoly::new(vec![m.0[1].clone(), m.0[0].clone()]),
            ZPoly::new(vec![m.0[3].clone(), m.0[2].clone()]),
        )
    }

    /// Scaled polynomial φ_{m,n}(x) = C·x^m(1−x)^n as a map.
    pub fn phi(m: u64, n: u64) -> RationalMap {
        RationalMap::identity().post_phi(m, n)
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree()) as usize
    }

    /// N^h(p, q) with the map's formal degree.
    fn hom(&self, f: &ZPoly, p: &BigInt, q: &BigInt) -> BigInt {
        let n = self.degree();
        let mut acc = BigInt::zero();
        let mut qp = BigInt::one();
        let mut terms = vec![BigInt::zero(); n + 1];
        for (i, t) in terms.iter_mut().enumerate().rev() {
            *t = f.coeff(i) * &qp;
            qp *= q;
        }
        let mut pp = BigInt::one();
        for t in &terms {
            acc += t * &pp;
            pp *= p;
        }
        acc
    }

    pub fn eval(&self, x: &P1Point) -> P1Point {
        let (p, q) = x.homogeneous();
        let a = self.hom(&self.num, &p, &q);
        let b = self.hom(&self.den, &p, &q);
        let g = a.gcd(&b);
        let (mut a, mut b) = (a / &g, b / &g);
        if b.is_negative() {
            a = -a;
            b = -b;
        }
        P1Point::from_homogeneous(&a, &b)
    }

    /// σ ∘ f.
    pub fn post_mobius(&self, m: &Mobius) -> RationalMap {
        let [a, b, c, d] = &m.0;
        RationalMap::normalized(
            self.num.scale(a).add(&self.den.scale(b)),
            self.num.scale(c).add(&self.den.scale(d)),
        )
    }

    /// φ_{m,n} ∘ f with φ_{m,n}(x) = (m+n)^{m+n}/(m^m n^n)·x^m(1−x)^n.
    pub fn post_phi(&self, m: u64, n: u64) -> RationalMap {
        let (a, b) = phi_constant(m, n);
        let diff = self.den.sub(&self.num);
        RationalMap::normalized(
            self.num.pow(m).mul(&diff.pow(n)).scale(&a),
            self.den.pow(m + n).scale(&b),
        )
    }

    /// The fiber form N − c·D (D for c = ∞), primitive, as a polynomial in x
    /// whose homogeneous degree is the map degree.
    pub fn fiber_poly(&self, c: &P1Point) -> ZPoly {
        let (p, q) = c.homogeneous();
        let f = if q.is_zero() { self.den.clone() } else { self.num.scale(&q).sub(&self.den.scale(&p)) };
        f.primitive()
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": zpoly_json(&self.num), "den": zpoly_json(&self.den), "degree": self.degree() })
    }

    pub fn from_json(v: &Value) -> Result<RationalMap> {
        let v = v.get("map").unwrap_or(v);
        let num = zpoly_from_json(v.get("num").ok_or_else(|| Error::InvalidInput("map needs num".into()))?)?;
        let den = zpoly_from_json(v.get("den").ok_or_else(|| Error::InvalidInput("map needs den".into()))?)?;
        RationalMap::new(num, den)
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == 0 && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num.fmt_var("x"))
        } else {
            write!(f, "({})/({})", self.num.fmt_var("x"), self.den.fmt_var("x"))
        }
    }
}

fn phi_constant(m: u64, n: u64) -> (BigInt, BigInt) {
    let s = BigInt::from(m + n).pow(u32::try_from(m + n).expect("exponent fits"));
    let t = BigInt::from(m).pow(m as u32) * BigInt::from(n).pow(n as u32);
    let g = s.gcd(&t);
    (s / &g, t / g)
}

fn phi_value(m: u64, n: u64, x: &BigRational) -> BigRational {
    let (a, b) = phi_constant(m, n);
    let one = BigRational::one();
    BigRational::new(a, b) * num_traits::pow(x.clone(), m as usize) * num_traits::pow(&one - x, n as usize)
}

/// Integer matrix [a, b, c, d] acting as x ↦ (a x + b)/(c x + d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius(pub [BigInt; 4]);

impl Mobius {
    fn from_i64(m: [i64; 4]) -> Mobius {
        Mobius(m.map(BigInt::from))
    }

    pub fn apply(&self, x: &P1Point) -> P1Point {
        let (p, q) = x.homogeneous();
        let [a, b, c, d] = &self.0;
        let u = a * &p + b * &q;
        let v = c * &p + d * &q;
        let g = u.gcd(&v);
        let (mut u, mut v) = (u / &g, v / &g);
        if v.is_negative() || (v.is_zero() && u.is_negative()) {
            u = -u;
            v = -v;
        }
        P1Point::from_homogeneous(&u, &v)
    }

    /// The Möbius map sending x0 ↦ 0, x1 ↦ 1, x2 ↦ ∞.
    pub fn normalizing(x0: &P1Point, x1: &P1Point, x2: &P1Point) -> Result<Mobius> {
        if x0 == x1 || x1 == x2 || x0 == x2 {
            return Err(Error::InvalidInput("normalizing points must be distinct".into()));
        }
        let (p0, q0) = x0.homogeneous();
        let (p2, q2) = x2.homogeneous();
        // rows vanish at x0 and x2 respectively
        let top = [q0.clone(), -p0];
        let bot = [q2.clone(), -p2];
        let (p1, q1) = x1.homogeneous();
        let u = &top[0] * &p1 + &top[1] * &q1;
        let v = &bot[0] * &p1 + &bot[1] * &q1;
        let m = Mobius([&top[0] * &v, &top[1] * &v, &bot[0] * &u, &bot[1] * &u]);
        let g = m.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        Ok(Mobius(m.0.map(|x| x / &g)))
    }
}

/// The six Möbius maps permuting {0, 1, ∞}, in tie-break order.
pub fn s3_maps() -> [(&'static str, Mobius); 6] {
    [
        ("x", Mobius::from_i64([1, 0, 0, 1])),
        ("1-x", Mobius::from_i64([-1, 1, 0, 1])),
        ("1/x", Mobius::from_i64([0, 1, 1, 0])),
        ("1/(1-x)", Mobius::from_i64([0, 1, -1, 1])),
        ("(x-1)/x", Mobius::from_i64([1, -1, 1, 0])),
        ("x/(x-1)", Mobius::from_i64([1, 0, 1, -1])),
    ]
}

/// The S₃ move bringing λ into (0,1) with least m+n, then least (m, n).
fn best_move(lambda: &P1Point) -> (usize, u64, u64) {
    let mut best: Option<(BigInt, BigInt, usize)> = None;
    for (i, (_, s)) in s3_maps().iter().enumerate() {
        if let P1Point::Finite(x) = s.apply(lambda) {
            if x.is_positive() && x < BigRational::one() {
                let key = (x.denom().clone(), x.numer().clone(), i);
                if best.as_ref().is_none_or(|b| (&key.0, &key.1) < (&b.0, &b.1)) {
                    best = Some(key);
                }
            }
        }
    }
    let (den, m, i) = best.expect("a non-special rational has an S3 image in (0,1)");
    let den = den.to_u64().unwrap_or(u64::MAX);
    let m = m.to_u64().unwrap_or(u64::MAX);
    (i, m, den.saturating_sub(m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    Normalize { mobius: Mobius, points: [P1Point; 3] },
    Permute { name: String, mobius: Mobius, lambda: P1Point },
    Phi { m: u64, n: u64, degree: u64 },
}

impl TraceStep {
    pub fn to_json(&self) -> Value {
        let mj = |m: &Mobius| json!(m.0.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        match self {
            TraceStep::Normalize { mobius, points } => json!({
                "step": "normalize",
                "mobius": mj(mobius),
                "points": points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "degree_factor": 1,
            }),
            TraceStep::Permute { name, mobius, lambda } => json!({
                "step": "permute", "map": name, "mobius": mj(mobius), "lambda": lambda.to_string(), "degree_factor": 1,
            }),
            TraceStep::Phi { m, n, degree } => json!({
                "step": "phi", "m": m, "n": n, "degree_factor": m + n, "degree": degree,
            }),
        }
    }

    pub fn degree_factor(&self) -> u64 {
        match self {
            TraceStep::Phi { m, n, .. } => m + n,
            _ => 1,
        }
    }
}

/// A homogeneous form given as a polynomial in x plus its homogeneous
/// degree, raised to `exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFactor {
    pub poly: ZPoly,
    pub hdeg: usize,
    pub exp: u64,
}

impl WitnessFactor {
    /// Upper bound on the number of distinct points of P¹ where it vanishes.
    fn point_bound(&self) -> usize {
        let d = self.poly.degree().max(0) as usize;
        d + usize::from(self.hdeg > d)
    }
}

/// A factorization of the fiber form over `value` into forms whose
/// distinct zeros can be counted from their degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberWitness {
    pub value: P1Point,
    pub factors: Vec<WitnessFactor>,
}

impl FiberWitness {
    fn scaled(&self, k: u64) -> Vec<WitnessFactor> {
        self.factors.iter().map(|f| WitnessFactor { exp: f.exp * k, ..f.clone() }).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value.to_string(),
            "factors": self.factors.iter().map(|f| json!({
                "poly": zpoly_json(&f.poly), "hdeg": f.hdeg, "exp": f.exp,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<FiberWitness> {
        let bad = || Error::InvalidInput("malformed fiber witness".into());
        let value = P1Point::parse(v.get("value").and_then(Value::as_str).ok_or_else(bad)?)?;
        let factors = v
            .get("factors")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|f| {
                Ok(WitnessFactor {
                    poly: zpoly_from_json(f.get("poly").ok_or_else(bad)?)?,
                    hdeg: f.get("hdeg").and_then(Value::as_u64).ok_or_else(bad)? as usize,
                    exp: f.get("exp").and_then(Value::as_u64).ok_or_else(bad)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(FiberWitness { value, factors })
    }
}

fn single(f: ZPoly, hdeg: usize) -> Vec<WitnessFactor> {
    vec![WitnessFactor { poly: f, hdeg, exp: 1 }]
}

/// Exact ramification over 0, 1, ∞ certified by Riemann–Hurwitz.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationCertificate {
    pub degree: usize,
    /// (value, Σ (e_P − 1) over the fiber)
    pub ramification: Vec<(P1Point, usize)>,
}

/// Checks each witness against the map by exact polynomial identity and
/// bounds the ramification over its value from below. If the bounds add up
/// to 2n − 2 no other value is critical.
pub fn verify_witnesses(f: &RationalMap, ws: &[FiberWitness]) -> Result<Option<RamificationCertificate>> {
    let n = f.degree();
    let mut total = 0usize;
    let mut seen = BTreeSet::new();
    let mut ram = Vec::new();
    for w in ws {
        if !seen.insert(w.value.clone()) {
            return Err(Error::InvalidInput(format!("duplicate witness for {}", w.value)));
        }
        let hsum: u64 = w.factors.iter().map(|x| x.hdeg as u64 * x.exp).sum();
        if hsum != n as u64 || w.factors.iter().any(|x| x.poly.degree() > x.hdeg as isize || x.poly.is_zero()) {
            return Ok(None);
        }
        let target = f.fiber_poly(&w.value);
        let mut prod = ZPoly::one();
        for x in &w.factors {
            prod = prod.mul(&x.poly.pow(x.exp));
        }
        if !proportional(&target, &prod) {
            return Ok(None);
        }
        let pts: usize = w.factors.iter().map(WitnessFactor::point_bound).sum();
        let r = n.saturating_sub(pts);
        total += r;
        ram.push((w.value.clone(), r));
    }
    if n >= 1 && total == 2 * n - 2 {
        Ok(Some(RamificationCertificate { degree: n, ramification: ram }))
    } else if n >= 1 && total > 2 * n - 2 {
        Err(Error::InvariantViolated("ramification exceeds the Riemann-Hurwitz total".into()))
    } else {
        Ok(None)
    }
}

fn proportional(a: &ZPoly, b: &ZPoly) -> bool {
    if a.degree() != b.degree() || a.is_zero() || b.is_zero() {
        return false;
    }
    let (la, lb) = (a.lc(), b.lc());
    a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| x * &lb == y * &la)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriticalValue {
    /// Minimal polynomial over Q (primitive, positive leading coefficient)
    /// with its multiplicity in the discriminant.
    Finite { min_poly: ZPoly, multiplicity: u32 },
    Infinity,
}

impl CriticalValue {
    pub fn rational(&self) -> Option<P1Point> {
        match self {
            CriticalValue::Infinity => Some(P1Point::Infinity),
            CriticalValue::Finite { min_poly, .. } if min_poly.degree() == 1 => {
                Some(P1Point::Finite(BigRational::new(-min_poly.coeff(0), min_poly.coeff(1))))
            }
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CriticalValue::Infinity => json!({ "value": "inf" }),
            CriticalValue::Finite { min_poly, multiplicity } => {
                let mut v = json!({ "min_poly": min_poly.fmt_var("y"), "multiplicity": multiplicity });
                if let Some(p) = self.rational() {
                    v["value"] = json!(p.to_string());
                }
                v
            }
        }
    }
}

/// Lagrange interpolation through (x_i, y_i).
fn interpolate(pts: &[(BigInt, BigInt)]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in pts.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = QPoly::one();
        let mut denom = BigInt::one();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i != j {
                basis = basis.mul(&QPoly::new(vec![BigRational::from_integer(-xj), BigRational::one()]));
                denom *= xi - xj;
            }
        }
        acc = acc.add(&basis.scale(&BigRational::new(yi.clone(), denom)));
    }
    acc
}

/// disc_x(num − y·den) as a polynomial in y, by evaluation at 2n − 1
/// points where the x-degree is n and interpolation.
pub fn discriminant_in_y(f: &RationalMap) -> QPoly {
    let n = f.degree();
    let need = 2 * n - 1;
    let (an, bn) = (f.num.coeff(n), f.den.coeff(n));
    let mut pts = Vec::with_capacity(need);
    let mut y = BigInt::zero();
    while pts.len() < need {
        if &an - &y * &bn != BigInt::zero() {
            let g = f.num.sub(&f.den.scale(&y));
            pts.push((y.clone(), g.discriminant()));
        }
        y += 1;
    }
    interpolate(&pts)
}

/// Finite critical values from the discriminant in y, plus ∞ when the
/// fiber over ∞ has a repeated point.
pub fn critical_values(f: &RationalMap) -> Result<Vec<CriticalValue>> {
    let n = f.degree();
    let mut out = Vec::new();
    if n >= 2 {
        let delta = discriminant_in_y(f);
        if delta.is_zero() {
            return Err(Error::InvariantViolated("map is inseparable or degenerate".into()));
        }
        if delta.degree() > 0 {
            for (g, e) in factor_over_q(&delta).factors {
                let g = if g.lc().is_negative() { g.neg() } else { g };
                out.push(CriticalValue::Finite { min_poly: g, multiplicity: e });
            }
        }
        let d = &f.den;
        let inf_ram = (d.degree() as usize) + 2 <= n || (d.degree() >= 1 && d.to_q().gcd(&d.to_q().derivative()).degree() > 0);
        if inf_ram {
            out.push(CriticalValue::Infinity);
        }
    }
    Ok(out)
}

fn in_01inf(c: &CriticalValue) -> bool {
    c.rational().is_some_and(|p| p.is_special())
}

/// How the certificate's critical values were established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertMethod {
    Discriminant,
    RiemannHurwitz,
    Both,
}

impl CertMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertMethod::Discriminant => "discriminant",
            CertMethod::RiemannHurwitz => "riemann-hurwitz",
            CertMethod::Both => "discriminant+riemann-hurwitz",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BelyiCertificate {
    pub map: RationalMap,
    pub branch_input: Vec<P1Point>,
    pub critical_values: Vec<P1Point>,
    pub image_of_input: Vec<(P1Point, P1Point)>,
    pub trace: Vec<TraceStep>,
    pub witnesses: Vec<FiberWitness>,
    pub ramification: Vec<(P1Point, usize)>,
    pub method: CertMethod,
}

impl BelyiCertificate {
    pub fn degree(&self) -> usize {
        self.map.degree()
    }

    pub fn trace_degree(&self) -> u64 {
        self.trace.iter().map(TraceStep::degree_factor).product()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "map": self.map.to_json(),
            "degree": self.degree(),
            "branch_input": self.branch_input.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "critical_values": self.critical_values.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "image_of_input": self.image_of_input.iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect::<Vec<_>>(),
            "ramification": self.ramification.iter().map(|(a, r)| json!([a.to_string(), r])).collect::<Vec<_>>(),
            "trace": self.trace.iter().map(TraceStep::to_json).collect::<Vec<_>>(),
            "witnesses": self.witnesses.iter().map(FiberWitness::to_json).collect::<Vec<_>>(),
            "method": self.method.as_str(),
        })
    }
}

/// Degree up to which certificates are also checked by the discriminant.
pub const DISCRIMINANT_CHECK_MAX_DEGREE: usize = 24;

/// Re-derives the critical values of `f` without using the construction:
/// the discriminant route for small degree and, when witnesses are given,
/// the Riemann–Hurwitz count. Returns the critical values if they lie in
/// {0, 1, ∞}.
pub fn certify_belyi(f: &RationalMap, witnesses: &[FiberWitness]) -> Result<(Vec<P1Point>, Vec<(P1Point, usize)>, CertMethod)> {
    let n = f.degree();
    let rh = if witnesses.is_empty() { None } else { verify_witnesses(f, witnesses)? };
    let disc = if n <= DISCRIMINANT_CHECK_MAX_DEGREE || rh.is_none() {
        let cv = critical_values(f)?;
        if !cv.iter().all(in_01inf) {
            return Err(Error::InvariantViolated(format!(
                "critical values outside {{0,1,inf}}: {}",
                cv.iter().map(|c| c.to_json().to_string()).collect::<Vec<_>>().join(", ")
            )));
        }
        let mut pts: Vec<P1Point> = cv.iter().filter_map(CriticalValue::rational).collect();
        pts.sort();
        Some(pts)
    } else {
        None
    };
    let from_rh = rh.as_ref().map(|c| {
        let mut pts: Vec<P1Point> = c.ramification.iter().filter(|(_, r)| *r > 0).map(|(p, _)| p.clone()).collect();
        pts.sort();
        pts
    });
    let ram = rh.map(|c| c.ramification).unwrap_or_default();
    match (disc, from_rh) {
        (Some(a), Some(b)) => {
            if a != b {
                return Err(Error::InvariantViolated("discriminant and Riemann-Hurwitz disagree".into()));
            }
            Ok((a, ram, CertMethod::Both))
        }
        (Some(a), None) => Ok((a, ram, CertMethod::Discriminant)),
        (None, Some(b)) => Ok((b, ram, CertMethod::RiemannHurwitz)),
        (None, None) => unreachable!(),
    }
}

struct Tracked {
    value: P1Point,
    factors: Vec<WitnessFactor>,
}

struct Builder {
    map: RationalMap,
    tracked: Vec<Tracked>,
    trace: Vec<TraceStep>,
    cap: u64,
}

impl Builder {
    fn outstanding(&self) -> Vec<P1Point> {
        self.tracked.iter().filter(|t| !t.value.is_special()).map(|t| t.value.clone()).collect()
    }

    fn permute(&mut self, name: &str, s: &Mobius, lambda: &P1Point) {
        self.map = self.map.post_mobius(s);
        for t in &mut self.tracked {
            t.value = s.apply(&t.value);
        }
        self.trace.push(TraceStep::Permute { name: name.into(), mobius: s.clone(), lambda: lambda.clone() });
    }

    fn take(&mut self, v: &P1Point) -> Tracked {
        let i = self.tracked.iter().position(|t| &t.value == v).expect("tracked value");
        self.tracked.remove(i)
    }

    fn phi(&mut self, m: u64, n: u64) -> Result<()> {
        let k = self.map.degree() as u64;
        let deg = k.checked_mul(m + n).filter(|&d| d <= self.cap).ok_or(Error::DegreeOverflow {
            degree: k.saturating_mul(m + n),
            cap: self.cap,
        })?;
        let lambda = P1Point::Finite(BigRational::new(m.into(), (m + n).into()));
        let old = self.map.clone();
        self.map = old.post_phi(m, n);
        let hd = deg as usize;
        let [zero, one, inf] = special_points();
        let t0 = self.take(&zero);
        let t1 = self.take(&one);
        let ti = self.take(&inf);
        let tl = self.take(&lambda);
        let mut others: Vec<(P1Point, Tracked)> = std::mem::take(&mut self.tracked)
            .into_iter()
            .map(|t| {
                let P1Point::Finite(c) = &t.value else { unreachable!() };
                (P1Point::Finite(phi_value(m, n, c)), t)
            })
            .collect();
        let mut new = Vec::new();
        let mut f0 = t0.factors.iter().map(|f| WitnessFactor { exp: f.exp * m, ..f.clone() }).collect::<Vec<_>>();
        f0.extend(t1.factors.iter().map(|f| WitnessFactor { exp: f.exp * n, ..f.clone() }));
        new.push(Tracked { value: zero.clone(), factors: f0 });
        new.push(Tracked { value: inf.clone(), factors: FiberWitness { value: inf.clone(), factors: ti.factors }.scaled(m + n) });
        // fiber over 1: λ doubled, outstanding values landing on 1, and the rest
        let mut f1 = FiberWitness { value: one.clone(), factors: tl.factors }.scaled(2);
        let mut known = old.fiber_poly(&lambda).pow(2);
        for (_, t) in others.iter().filter(|(img, _)| img == &one) {
            known = known.mul(&old.fiber_poly(&t.value));
            f1.extend(t.factors.iter().cloned());
        }
        others.retain(|(img, _)| img != &one);
        push_quotient(&mut f1, &self.map.fiber_poly(&one), &known, hd)?;
        new.push(Tracked { value: one, factors: f1 });
        others.sort_by(|a, b| a.0.cmp(&b.0));
        let mut i = 0;
        while i < others.len() {
            let img = others[i].0.clone();
            let mut fs = Vec::new();
            let mut known = ZPoly::one();
            while i < others.len() && others[i].0 == img {
                known = known.mul(&old.fiber_poly(&others[i].1.value));
                fs.extend(others[i].1.factors.iter().cloned());
                i += 1;
            }
            push_quotient(&mut fs, &self.map.fiber_poly(&img), &known, hd)?;
            new.push(Tracked { value: img, factors: fs });
        }
        self.tracked = new;
        self.trace.push(TraceStep::Phi { m, n, degree: deg });
        Ok(())
    }
}

/// Appends target/known as a witness factor of homogeneous degree
/// hd − (homogeneous degree already accounted for).
fn push_quotient(fs: &mut Vec<WitnessFactor>, target: &ZPoly, known: &ZPoly, hd: usize) -> Result<()> {
    let used: u64 = fs.iter().map(|f| f.hdeg as u64 * f.exp).sum();
    let rest = hd as u64 - used;
    let q = target
        .to_q()
        .exact_div(&known.to_q())
        .ok_or_else(|| Error::InvariantViolated("fiber form is not divisible by the known part".into()))?;
    let (_, qz) = q.content_primitive();
    if rest > 0 || qz.degree() > 0 {
        fs.push(WitnessFactor { poly: qz, hdeg: rest as usize, exp: 1 });
    }
    Ok(())
}

fn normalize_set(b: &[P1Point]) -> Vec<P1Point> {
    let mut set: Vec<P1Point> = b.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    for s in special_points() {
        if set.len() >= 3 {
            break;
        }
        if !set.contains(&s) {
            set.push(s);
        }
    }
    set.sort();
    set
}

/// Degree the construction would reach from a normalizing triple, or None
/// once it passes `cap`.
fn simulate(values: &[P1Point], cap: u64) -> Option<u64> {
    let mut vals: Vec<BigRational> = values
        .iter()
        .filter(|v| !v.is_special())
        .map(|v| match v {
            P1Point::Finite(x) => x.clone(),
            P1Point::Infinity => unreachable!(),
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut deg = 1u64;
    while !vals.is_empty() {
        let (idx, (si, m, n)) = vals
            .iter()
            .map(|x| best_move(&P1Point::Finite(x.clone())))
            .enumerate()
            .min_by_key(|(j, (_, m, n))| (m + n, *m, *n, *j))
            .unwrap();
        deg = deg.checked_mul(m + n).filter(|&d| d <= cap)?;
        let s = &s3_maps()[si].1;
        let mut next = BTreeSet::new();
        for (j, x) in vals.iter().enumerate() {
            if j == idx {
                continue;
            }
            if let P1Point::Finite(y) = s.apply(&P1Point::Finite(x.clone())) {
                let z = phi_value(m, n, &y);
                if !z.is_zero() && !z.is_one() {
                    next.insert(z);
                }
            }
        }
        vals = next.into_iter().collect();
    }
    Some(deg)
}

/// Builds a Belyi map for the branch set: a normalizing Möbius map, then
/// alternating S₃ moves and φ_{m,n} until every designated value lies in
/// {0, 1, ∞}; the result is re-certified independently.
pub fn belyi_for_branch_set(b: &[P1Point], cap: u64) -> Result<BelyiCertificate> {
    let set = normalize_set(b);
    let specials = special_points();
    let triple: [P1Point; 3] = if specials.iter().all(|s| set.contains(s)) {
        specials.clone()
    } else {
        let mut best: Option<(u64, [P1Point; 3])> = None;
        for x0 in &set {
            for x1 in &set {
                for x2 in &set {
                    let Ok(mu) = Mobius::normalizing(x0, x1, x2) else { continue };
                    let imgs: Vec<P1Point> = set.iter().map(|p| mu.apply(p)).collect();
                    if let Some(d) = simulate(&imgs, cap) {
                        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                            best = Some((d, [x0.clone(), x1.clone(), x2.clone()]));
                        }
                    }
                }
            }
        }
        match best {
            Some((_, t)) => t,
            None => return Err(Error::DegreeOverflow { degree: cap.saturating_add(1), cap }),
        }
    };
    let mu = Mobius::normalizing(&triple[0], &triple[1], &triple[2])?;
    let map = RationalMap::mobius(&mu);
    let mut values: BTreeSet<P1Point> = specials.iter().cloned().collect();
    values.extend(set.iter().map(|p| mu.apply(p)));
    let tracked = values
        .into_iter()
        .map(|v| {
            let f = map.fiber_poly(&v);
            Tracked { value: v, factors: single(f, 1) }
        })
        .collect();
    let mut bld = Builder {
        map,
        tracked,
        trace: vec![TraceStep::Normalize { mobius: mu, points: triple }],
        cap,
    };
    loop {
        let out = bld.outstanding();
        if out.is_empty() {
            break;
        }
        let (lambda, (si, m, n)) = out
            .iter()
            .map(|x| (x.clone(), best_move(x)))
            .min_by(|a, b| {
                let ka = (a.1 .1 + a.1 .2, a.1 .1, a.1 .2);
                let kb = (b.1 .1 + b.1 .2, b.1 .1, b.1 .2);
                ka.cmp(&kb).then(a.0.cmp(&b.0))
            })
            .unwrap();
        let (deg, cap) = (bld.map.degree() as u64, bld.cap);
        if deg.saturating_mul(m + n) > cap {
            return Err(Error::DegreeOverflow { degree: deg.saturating_mul(m + n), cap });
        }
        if si != 0 {
            let (name, s) = &s3_maps()[si];
            bld.permute(name, s, &lambda);
        }
        bld.phi(m, n)?;
    }
    let witnesses: Vec<FiberWitness> = bld
        .tracked
        .into_iter()
        .map(|t| FiberWitness { value: t.value, factors: t.factors })
        .collect();
    let map = bld.map;
    let (critical_values, ramification, method) = certify_belyi(&map, &witnesses)?;
    let image_of_input: Vec<(P1Point, P1Point)> = set.iter().map(|p| (p.clone(), map.eval(p))).collect();
    if !image_of_input.iter().all(|(_, y)| y.is_special()) {
        return Err(Error::InvariantViolated("branch point not sent into {0,1,inf}".into()));
    }
    let cert = BelyiCertificate {
        map,
        branch_input: set,
        critical_values,
        image_of_input,
        trace: bld.trace,
        witnesses,
        ramification,
        method,
    };
    if cert.trace_degree() != cert.degree() as u64 {
        return Err(Error::InvariantViolated("degree differs from the trace product".into()));
    }
    Ok(cert)
}

/// Parses a branch list such as `0,1,inf,1/3`.
pub fn parse_branch_set(s: &str) -> Result<Vec<P1Point>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(P1Point::parse).collect()
}

#[derive(Clone, Debug)]
pub struct FiberFactor {
    pub poly: ZPoly,
    pub degree: usize,
    pub poly_disc: BigInt,
    pub field_disc: BigInt,
    pub provenance: DiscProvenance,
    /// None when some prime could not be decided.
    pub ramified: Option<Vec<BigInt>>,
    pub outside: Vec<BigInt>,
    pub decision: Decision,
}

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub y: BigRational,
    pub degree: usize,
    pub infinity_in_fiber: bool,
    pub factors: Vec<FiberFactor>,
    pub bad_primes: Vec<BigInt>,
    pub s: Vec<BigInt>,
    pub holds: Decision,
}

impl FiberReport {
    pub fn to_json(&self) -> Value {
        let strs = |v: &[BigInt]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        json!({
            "y": self.y.to_string(),
            "map_degree": self.degree,
            "infinity_in_fiber": self.infinity_in_fiber,
            "S": strs(&self.s),
            "bad_primes": strs(&self.bad_primes),
            "holds": self.holds.as_str(),
            "factors": self.factors.iter().map(|f| json!({
                "min_poly": f.poly.fmt_var("x"),
                "degree": f.degree,
                "poly_disc": f.poly_disc.to_string(),
                "field_disc": f.field_disc.to_string(),
                "disc_provenance": f.provenance.as_str(),
                "ramified": f.ramified.as_ref().map(|r| strs(r)),
                "ramified_outside": strs(&f.outside),
                "decision": f.decision.as_str(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn degree_sum(&self) -> usize {
        self.factors.iter().map(|f| f.degree).sum::<usize>() + usize::from(self.infinity_in_fiber)
    }
}

fn add_prime_divisors(n: &BigInt, out: &mut BTreeSet<BigInt>) -> Result<()> {
    if n.is_zero() {
        return Ok(());
    }
    for (p, _) in factor_integer(n)?.factors {
        out.insert(p);
    }
    Ok(())
}

/// A sound overestimate of the primes where the map has bad reduction:
/// primes up to the degree, leading coefficients, Res(num, den), and the
/// discriminants and leading coefficients of the reduced fibers over each
/// rational critical value.
pub fn bad_primes(f: &RationalMap) -> Result<Vec<BigInt>> {
    let n = f.degree();
    let mut out: BTreeSet<BigInt> = primes_up_to(n as u64).into_iter().map(BigInt::from).collect();
    for p in [f.num.coeff(n), f.den.coeff(n)] {
        add_prime_divisors(&p, &mut out)?;
    }
    add_prime_divisors(&f.num.resultant(&f.den), &mut out)?;
    let cv = critical_values(f)?;
    let mut values: Vec<P1Point> = cv.iter().filter_map(CriticalValue::rational).collect();
    for s in special_points() {
        if !values.contains(&s) {
            values.push(s);
        }
    }
    for c in values {
        let g = f.fiber_poly(&c);
        if g.degree() < 1 {
            continue;
        }
        let r = g.to_q().squarefree_part();
        let (_, rz) = r.content_primitive();
        add_prime_divisors(&rz.lc(), &mut out)?;
        if rz.degree() >= 2 {
            add_prime_divisors(&rz.discriminant(), &mut out)?;
        }
    }
    for c in cv.iter() {
        if let CriticalValue::Finite { min_poly, .. } = c {
            if min_poly.degree() >= 2 {
                add_prime_divisors(&min_poly.lc(), &mut out)?;
                add_prime_divisors(&min_poly.discriminant(), &mut out)?;
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// a^{n−1}·g(x/a): the monic integer polynomial of a·θ.
fn monic_transform(g: &ZPoly) -> ZPoly {
    let n = g.degree() as usize;
    let a = g.lc();
    let c = (0..=n).map(|i| g.coeff(i) * a.pow((n - i) as u32) / &a).collect();
    ZPoly::new(c)
}

/// Monic polynomial of c·θ for the least c making it integral.
fn minimal_monic(g: &ZPoly) -> Option<ZPoly> {
    let n = g.degree() as usize;
    let lc = g.lc();
    let mut c = BigInt::one();
    for (p, e) in factor_integer(&lc).ok()?.factors {
        let need = (0..n)
            .filter(|&i| !g.coeff(i).is_zero())
            .map(|i| {
                let short = i64::from(e) - i64::from(ord_p(&g.coeff(i), &p));
                Integer::div_ceil(&short.max(0), &((n - i) as i64))
            })
            .max()
            .unwrap_or(0);
        c *= p.pow(need as u32);
    }
    let coeffs = (0..=n).map(|i| g.coeff(i) * c.pow((n - i) as u32) / &lc).collect();
    Some(ZPoly::new(coeffs))
}

/// Integral generators c(θ − k) and c/(θ − k) of Q(θ) for small shifts k,
/// whose indices can avoid primes that divide the index of Z[a·θ].
fn other_generators(g: &ZPoly) -> Vec<ZPoly> {
    let n = g.degree();
    let mut out = Vec::new();
    for k in -3i64..=3 {
        let Some(shifted) = g.to_q().compose(&QPoly::from_ints(&[k, 1])).to_zpoly_exact() else { continue };
        let rev = ZPoly::new(shifted.coeffs().iter().rev().cloned().collect());
        for h in [shifted, rev] {
            let h = h.primitive();
            if h.degree() != n {
                continue;
            }
            let h = if h.lc().is_negative() { h.neg() } else { h };
            out.extend(minimal_monic(&h));
        }
    }
    out
}

pub fn fiber_fields(f: &RationalMap, y: &BigRational, s: &[BigInt]) -> Result<FiberReport> {
    let n = f.degree();
    let fy = f.fiber_poly(&P1Point::Finite(y.clone()));
    let dx = fy.degree().max(0) as usize;
    if dx + 2 <= n || (dx >= 1 && fy.to_q().gcd(&fy.to_q().derivative()).degree() > 0) {
        return Err(Error::CriticalFiber(y.to_string()));
    }
    let bad = bad_primes(f)?;
    let allowed: BTreeSet<BigInt> = bad.iter().chain(s.iter()).cloned().collect();
    let mut factors = Vec::new();
    if dx >= 1 {
        for (g, _) in factor_zpoly(&fy).factors {
            let g = if g.lc().is_negative() { g.neg() } else { g };
            let h = monic_transform(&g);
            let k = if g.degree() >= 3 {
                make_number_field_with_generators(&h, &other_generators(&g), usize::MAX)?
            } else {
                make_number_field(&h, usize::MAX, None)?
            };
            let deg = g.degree() as usize;
            let (ramified, outside, decision) = ramification_outside(&k, &allowed)?;
            factors.push(FiberFactor {
                poly: g,
                degree: deg,
                poly_disc: k.poly_disc().clone(),
                field_disc: k.field_disc().clone(),
                provenance: k.disc_provenance(),
                ramified,
                outside,
                decision: Decision::from_bool(deg <= n).and(decision),
            });
        }
    }
    let holds = factors.iter().fold(Decision::True, |acc, f| acc.and(f.decision));
    Ok(FiberReport {
        y: y.clone(),
        degree: n,
        infinity_in_fiber: dx + 1 == n,
        factors,
        bad_primes: bad,
        s: s.to_vec(),
        holds,
    })
}

/// Ramified primes of the field, those outside `allowed`, and whether
/// "ramified ⊆ allowed" holds. With an inexact discriminant each candidate
/// prime outside `allowed` is settled by Dedekind's criterion when it
/// applies.
fn ramification_outside(
    k: &crate::arith::field::NumberField,
    allowed: &BTreeSet<BigInt>,
) -> Result<(Option<Vec<BigInt>>, Vec<BigInt>, Decision)> {
    if k.degree() == 1 {
        return Ok((Some(vec![]), vec![], Decision::True));
    }
    let mut rest = k.field_disc().abs();
    for p in allowed {
        while !rest.is_zero() && (&rest % p).is_zero() {
            rest /= p;
        }
    }
    let exact = k.disc_provenance() == DiscProvenance::Exact;
    let candidates: Vec<BigInt> = match factor_integer(&k.field_disc().abs()) {
        Ok(fac) => fac.factors.into_iter().map(|(p, _)| p).collect(),
        Err(_) => {
            return Ok((None, vec![], if rest.is_one() { Decision::True } else { Decision::Undecided }));
        }
    };
    let mut ramified = Vec::new();
    let mut outside = Vec::new();
    let mut undecided = false;
    for p in candidates {
        let is_ram = if exact {
            Some(true)
        } else {
            match split_prime(k, &p) {
                Ok(ideals) => Some(ideals.iter().any(|q| q.e > 1)),
                Err(Error::IndexDivisorUnsupported(_)) | Err(Error::UnsupportedField(_)) => None,
                Err(e) => return Err(e),
            }
        };
        match is_ram {
            Some(true) => {
                if !allowed.contains(&p) {
                    outside.push(p.clone());
                }
                ramified.push(p);
            }
            Some(false) => {}
            None => {
                if !allowed.contains(&p) {
                    undecided = true;
                }
            }
        }
    }
    let decision = if !outside.is_empty() {
        Decision::False
    } else if undecided {
        Decision::Undecided
    } else {
        Decision::True
    };
    Ok(((!undecided).then_some(ramified), outside, decision))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_ints(c)
    }

    fn pts(s: &str) -> Vec<P1Point> {
        parse_branch_set(s).unwrap()
    }

    #[test]
    fn identity_for_three_points() {
        let c = belyi_for_branch_set(&pts("0,1,inf"), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(c.degree(), 1);
        assert_eq!(c.map, RationalMap::identity());
        assert!(c.critical_values.is_empty());
    }

    #[test]
    fn one_third() {
        let c = belyi_for_branch_set(&pts("0,1,inf,1/3"), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(c.degree(), 3);
        assert_eq!(c.map, RationalMap::new(z(&[0, 27, -54, 27]), z(&[4])).unwrap());
        assert_eq!(c.map.eval(&P1Point::rat(1, 3)), P1Point::int(1));
        assert_eq!(c.critical_values, vec![P1Point::int(0), P1Point::int(1), P1Point::Infinity]);
        assert_eq!(c.method, CertMethod::Both);
    }

    #[test]
    fn minus_one_via_permutation() {
        let c = belyi_for_branch_set(&pts("0,1,inf,-1"), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(c.degree(), 2);
        assert!(matches!(&c.trace[1], TraceStep::Permute { name, .. } if name == "1/(1-x)"));
        assert_eq!(c.map.eval(&P1Point::int(-1)), P1Point::int(1));
        let expected = RationalMap::mobius(&Mobius::from_i64([0, 1, -1, 1])).post_phi(1, 1);
        assert_eq!(c.map, expected);
    }

    #[test]
    fn critical_value_examples() {
        let sq = RationalMap::new(z(&[0, 0, 1]), z(&[1])).unwrap();
        let cv: Vec<_> = critical_values(&sq).unwrap().iter().filter_map(CriticalValue::rational).collect();
        assert_eq!(cv, vec![P1Point::int(0), P1Point::Infinity]);
        let d = discriminant_in_y(&RationalMap::new(z(&[0, 4, -4]), z(&[1])).unwrap());
        assert_eq!(d, QPoly::from_ints(&[16, -16]));
        let g = RationalMap::phi(1, 1);
        let cv: Vec<_> = critical_values(&g).unwrap().iter().filter_map(CriticalValue::rational).collect();
        assert_eq!(cv, vec![P1Point::int(1), P1Point::Infinity]);
    }

    #[test]
    fn non_belyi_map_has_other_critical_values() {
        let f = RationalMap::new(z(&[0, -3, 0, 1]), z(&[1])).unwrap();
        let cv = critical_values(&f).unwrap();
        let vals: Vec<_> = cv.iter().filter_map(CriticalValue::rational).collect();
        assert!(vals.contains(&P1Point::int(2)) && vals.contains(&P1Point::int(-2)));
    }

    #[test]
    fn two_extra_points_compose() {
        let c = belyi_for_branch_set(&pts("0,1,inf,1/2,-1"), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(c.trace_degree(), c.degree() as u64);
        for (_, y) in &c.image_of_input {
            assert!(y.is_special());
        }
        let ram: usize = c.ramification.iter().map(|(_, r)| r).sum();
        assert_eq!(ram, 2 * c.degree() - 2);
    }

    #[test]
    fn branch_set_without_specials() {
        let c = belyi_for_branch_set(&pts("2,3,5"), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(c.degree(), 1);
        let c = belyi_for_branch_set(&pts("2,3,5,7"), DEFAULT_DEGREE_CAP).unwrap();
        assert!(c.image_of_input.iter().all(|(_, y)| y.is_special()));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let r = belyi_for_branch_set(&pts("0,1,inf,1/3,5/7,-11/12"), 50);
        assert!(matches!(r, Err(Error::DegreeOverflow { cap: 50, .. })));
    }

    #[test]
    fn non_rational_points_are_rejected() {
        assert!(matches!(parse_branch_set("0,1,sqrt2"), Err(Error::NonRationalBranchPoint(_))));
    }

    #[test]
    fn tampered_witness_fails() {
        let c = belyi_for_branch_set(&pts("0,1,inf,1/3"), DEFAULT_DEGREE_CAP).unwrap();
        let mut ws = c.witnesses.clone();
        ws[0].factors[0].exp += 1;
        assert!(verify_witnesses(&c.map, &ws).unwrap().is_none());
    }

    #[test]
    fn fiber_examples() {
        let sq = RationalMap::new(z(&[0, 0, 1]), z(&[1])).unwrap();
        let r = fiber_fields(&sq, &BigRational::from_integer(2.into()), &[2.into()]).unwrap();
        assert_eq!(r.factors.len(), 1);
        assert_eq!(r.factors[0].field_disc, BigInt::from(8));
        assert_eq!(r.factors[0].ramified, Some(vec![BigInt::from(2)]));
        assert_eq!(r.holds, Decision::True);
        let r = fiber_fields(&sq, &BigRational::from_integer(4.into()), &[]).unwrap();
        assert_eq!(r.factors.iter().map(|f| f.degree).collect::<Vec<_>>(), vec![1, 1]);
        let g = RationalMap::phi(1, 1);
        let r = fiber_fields(&g, &BigRational::new(1.into(), 2.into()), &[2.into()]).unwrap();
        assert_eq!(r.factors.len(), 1);
        assert_eq!(r.factors[0].field_disc, BigInt::from(8));
        assert_eq!(r.holds, Decision::True);
        assert!(matches!(fiber_fields(&g, &BigRational::one(), &[]), Err(Error::CriticalFiber(_))));
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = belyi_for_branch_set(&pts("0,1,inf,1/3"), DEFAULT_DEGREE_CAP).unwrap();
        let v = c.to_json();
        let m = RationalMap::from_json(&v).unwrap();
        assert_eq!(m, c.map);
        let ws: Vec<FiberWitness> = v["witnesses"].as_array().unwrap().iter().map(|w| FiberWitness::from_json(w).unwrap()).collect();
        assert!(verify_witnesses(&m, &ws).unwrap().is_some());
    }
}
