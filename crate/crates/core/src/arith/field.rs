//! Number fields Q[x]/(m), their elements, and prime ideals via Dedekind
//! splitting.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::fp::FpPoly;
use super::integer::{factor_integer, is_prime, ord_p, rat_ord_p};
use super::poly::{QPoly, ZPoly};
use super::qfactor::{irreducible_mod_some_prime, is_irreducible_over_q};
use super::roots::Embeddings;
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscProvenance {
    Exact,
    PolyDisc,
    User,
}

impl DiscProvenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            DiscProvenance::Exact => "exact",
            DiscProvenance::PolyDisc => "poly_disc",
            DiscProvenance::User => "user",
        }
    }
}

/// A basis generator ω of an order containing Z[θ], used for splitting
/// and valuations. For quadratic fields ω generates the maximal order.
#[derive(Clone, Debug)]
struct OrderData {
    poly: ZPoly,
    /// θ written as a polynomial in ω.
    theta: QPoly,
}

#[derive(Debug)]
pub struct NumberField {
    min_poly: ZPoly,
    degree: usize,
    signature: (usize, usize),
    poly_disc: BigInt,
    field_disc: BigInt,
    provenance: DiscProvenance,
    order: OrderData,
    embeddings: OnceLock<Embeddings>,
}

pub type Field = Arc<NumberField>;

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.min_poly == o.min_poly
    }
}

impl Eq for NumberField {}

pub fn json_int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) if v.unsigned_abs() < (1u64 << 53) => json!(v),
        _ => json!(n.to_string()),
    }
}

/// Builds Q[x]/(m) for a monic integer polynomial m.
pub fn make_number_field(min_poly: &ZPoly, degree_cap: usize, user_disc: Option<BigInt>) -> Result<Field> {
    let n = min_poly.degree();
    if n < 1 || !min_poly.is_monic() {
        return Err(Error::InvalidInput("minimal polynomial must be monic of degree >= 1".into()));
    }
    let n = n as usize;
    if n > degree_cap {
        return Err(Error::DegreeCapExceeded { degree: n, cap: degree_cap });
    }
    if n > 1 && !irreducible_mod_some_prime(min_poly, 12) && !is_irreducible_over_q(min_poly) {
        return Err(Error::ReducibleMinPoly);
    }
    let r1 = min_poly.to_q().count_real_roots();
    let signature = (r1, (n - r1) / 2);
    let poly_disc = if n == 1 { BigInt::one() } else { min_poly.discriminant() };
    let x = ZPoly::x();
    let (field_disc, provenance, order) = match n {
        1 => (BigInt::one(), DiscProvenance::Exact, OrderData { poly: x.clone(), theta: x.to_q() }),
        2 => {
            let (d, order) = quadratic_order(min_poly)?;
            (d, DiscProvenance::Exact, order)
        }
        _ => {
            let order = OrderData { poly: min_poly.clone(), theta: x.to_q() };
            match user_disc {
                Some(d) => {
                    let d = d.abs();
                    if d.is_zero() || !(poly_disc.abs() % &d).is_zero() {
                        return Err(Error::InvalidInput(format!("D_K = {d} does not divide |disc(m)| = {}", poly_disc.abs())));
                    }
                    let idx2 = poly_disc.abs() / &d;
                    let idx = num_integer::Roots::sqrt(&idx2);
                    if &idx * &idx != idx2 {
                        return Err(Error::InvalidInput(format!("|disc(m)|/D_K = {idx2} is not a square")));
                    }
                    (d, DiscProvenance::User, order)
                }
                None if z_theta_is_maximal(min_poly, &poly_disc) => (poly_disc.abs(), DiscProvenance::Exact, order),
                None => (poly_disc.abs(), DiscProvenance::PolyDisc, order),
            }
        }
    };
    Ok(Arc::new(NumberField {
        min_poly: min_poly.clone(),
        degree: n,
        signature,
        poly_disc,
        field_disc,
        provenance,
        order,
        embeddings: OnceLock::new(),
    }))
}

/// As `make_number_field`, but D_K is also certified prime by prime: at
/// each p with p² | disc(m) it is enough that one of `others` passes
/// Dedekind's criterion at p. Each entry of `others` must be the monic
/// minimal polynomial of an algebraic integer generating the same field.
pub fn make_number_field_with_generators(min_poly: &ZPoly, others: &[ZPoly], degree_cap: usize) -> Result<Field> {
    let k = make_number_field(min_poly, degree_cap, None)?;
    if k.provenance != DiscProvenance::PolyDisc {
        return Ok(k);
    }
    let Ok(fac) = factor_integer(&k.poly_disc) else { return Ok(k) };
    let n = min_poly.degree();
    let mut d = BigInt::one();
    for (p, e) in &fac.factors {
        let v = if *e < 2 {
            *e
        } else {
            let Some(pu) = p.to_u64().filter(|&x| x < 1 << 62) else { return Ok(k) };
            let maximal_at_p = std::iter::once(min_poly)
                .chain(others.iter().filter(|h| h.degree() == n && h.is_monic()))
                .find(|h| dedekind_criterion(h, &h.reduce_mod(pu).factor(), pu));
            match maximal_at_p {
                Some(h) => ord_p(&h.discriminant(), p),
                None => return Ok(k),
            }
        };
        d *= p.pow(v);
    }
    let mut nf = Arc::try_unwrap(k).unwrap_or_else(|_| unreachable!("fresh field"));
    nf.field_disc = d;
    nf.provenance = DiscProvenance::Exact;
    Ok(Arc::new(nf))
}

/// Z[θ] is the maximal order when Dedekind's criterion passes at every p
/// with p² | disc(m); then D_K = disc(m).
fn z_theta_is_maximal(m: &ZPoly, disc: &BigInt) -> bool {
    let Ok(fac) = factor_integer(disc) else { return false };
    fac.factors.iter().filter(|(_, e)| *e >= 2).all(|(p, _)| match p.to_u64() {
        Some(pu) if pu < (1u64 << 62) => dedekind_criterion(m, &m.reduce_mod(pu).factor(), pu),
        _ => false,
    })
}

/// The rational field Q, as Q[x]/(x).
pub fn rationals() -> Field {
    static Q: OnceLock<Field> = OnceLock::new();
    Q.get_or_init(|| make_number_field(&ZPoly::x(), 1, None).unwrap()).clone()
}

/// Q(sqrt(d)) via x^2 - d.
pub fn quadratic_field(d: i64) -> Result<Field> {
    make_number_field(&ZPoly::from_ints(&[-d, 0, 1]), 2, None)
}

fn quadratic_order(m: &ZPoly) -> Result<(BigInt, OrderData)> {
    let b = m.coeff(1);
    let c = m.coeff(0);
    let delta = &b * &b - &c * 4;
    let fac = factor_integer(&delta)?;
    let mut d0 = BigInt::from(fac.sign);
    let mut f = BigInt::one();
    for (p, e) in &fac.factors {
        if e % 2 == 1 {
            d0 *= p;
        }
        f *= p.pow(e / 2);
    }
    let four = BigInt::from(4);
    let one_mod4 = d0.mod_floor(&four).is_one();
    let disc = if one_mod4 { d0.abs() } else { d0.abs() * 4 };
    // s = sqrt(d0) = (2θ + b)/f and θ = (f s - b)/2
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let (poly, theta) = if one_mod4 {
        // ω = (1 + s)/2, s = 2ω - 1
        let poly = ZPoly::new(vec![(BigInt::one() - &d0) / 4, -BigInt::one(), BigInt::one()]);
        let fr = BigRational::from_integer(f.clone());
        let c0 = (-&fr - BigRational::from_integer(b.clone())) * &half;
        (poly, QPoly::new(vec![c0, fr]))
    } else {
        let poly = ZPoly::new(vec![-d0.clone(), BigInt::zero(), BigInt::one()]);
        let c0 = -BigRational::from_integer(b.clone()) * &half;
        let c1 = BigRational::from_integer(f.clone()) * &half;
        (poly, QPoly::new(vec![c0, c1]))
    };
    Ok((disc, OrderData { poly, theta }))
}

impl NumberField {
    pub fn min_poly(&self) -> &ZPoly {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn poly_disc(&self) -> &BigInt {
        &self.poly_disc
    }

    pub fn field_disc(&self) -> &BigInt {
        &self.field_disc
    }

    pub fn disc_provenance(&self) -> DiscProvenance {
        self.provenance
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    pub fn is_imaginary_quadratic(&self) -> bool {
        self.degree == 2 && self.signature.0 == 0
    }

    /// Polynomial of the order generator used for splitting.
    pub fn order_poly(&self) -> &ZPoly {
        &self.order.poly
    }

    pub fn embeddings(&self) -> &Embeddings {
        self.embeddings.get_or_init(|| Embeddings::new(&self.min_poly))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "min_poly": self.min_poly.coeffs().iter().map(json_int).collect::<Vec<_>>(),
            "disc": json_int(&self.field_disc),
            "disc_provenance": self.provenance.as_str(),
            "degree": self.degree,
            "signature": [self.signature.0, self.signature.1],
            "poly_disc": json_int(&self.poly_disc),
        })
    }

    pub fn from_json(v: &Value, degree_cap: usize) -> Result<Field> {
        let coeffs = v
            .get("min_poly")
            .and_then(|m| m.as_array())
            .ok_or_else(|| Error::InvalidInput("field JSON needs a min_poly array".into()))?;
        let mut c = Vec::new();
        for x in coeffs {
            c.push(parse_json_int(x)?);
        }
        let user = match (v.get("disc"), v.get("disc_provenance").and_then(|p| p.as_str())) {
            (Some(d), Some("user")) => Some(parse_json_int(d)?),
            _ => None,
        };
        make_number_field(&ZPoly::new(c), degree_cap, user)
    }

    pub fn element(self: &Arc<Self>, coords: Vec<BigRational>) -> NFElement {
        NFElement::new(self.clone(), coords)
    }

    pub fn from_rational(self: &Arc<Self>, q: BigRational) -> NFElement {
        let mut c = vec![BigRational::zero(); self.degree];
        c[0] = q;
        NFElement { field: self.clone(), coords: c }
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> NFElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The generator θ.
    pub fn gen(self: &Arc<Self>) -> NFElement {
        let mut c = vec![BigRational::zero(); self.degree];
        if self.degree == 1 {
            c[0] = BigRational::from_integer(-self.min_poly.coeff(0));
        } else {
            c[1] = BigRational::one();
        }
        NFElement { field: self.clone(), coords: c }
    }
}

pub fn parse_json_int(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    v.as_str()
        .and_then(|s| s.trim().parse::<BigInt>().ok())
        .ok_or_else(|| Error::InvalidInput(format!("not an integer: {v}")))
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "Q")
        } else {
            write!(f, "Q[x]/({})", self.min_poly)
        }
    }
}

#[derive(Clone, Debug)]
pub struct NFElement {
    field: Field,
    coords: Vec<BigRational>,
}

impl PartialEq for NFElement {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.coords == o.coords
    }
}

impl Eq for NFElement {}

impl NFElement {
    pub fn new(field: Field, mut coords: Vec<BigRational>) -> NFElement {
        let n = field.degree;
        if coords.len() > n {
            let p = QPoly::new(coords).rem(&field.min_poly.to_q());
            coords = p.coeffs().to_vec();
        }
        coords.resize(n, BigRational::zero());
        NFElement { field, coords }
    }

    fn from_poly(field: &Field, p: &QPoly) -> NFElement {
        let r = p.rem(&field.min_poly.to_q());
        let mut c = r.coeffs().to_vec();
        c.resize(field.degree, BigRational::zero());
        NFElement { field: field.clone(), coords: c }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn as_poly(&self) -> QPoly {
        if self.field.degree == 1 {
            return QPoly::constant(self.coords[0].clone());
        }
        QPoly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    pub fn add(&self, o: &NFElement) -> NFElement {
        NFElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &NFElement) -> NFElement {
        NFElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> NFElement {
        NFElement { field: self.field.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, q: &BigRational) -> NFElement {
        NFElement { field: self.field.clone(), coords: self.coords.iter().map(|a| a * q).collect() }
    }

    pub fn mul(&self, o: &NFElement) -> NFElement {
        if self.field.degree == 1 {
            return NFElement { field: self.field.clone(), coords: vec![&self.coords[0] * &o.coords[0]] };
        }
        NFElement::from_poly(&self.field, &self.as_poly().mul(&o.as_poly()))
    }

    pub fn inv(&self) -> Result<NFElement> {
        if self.is_zero() {
            return Err(Error::DomainError("inverse of zero".into()));
        }
        if self.field.degree == 1 {
            return Ok(NFElement { field: self.field.clone(), coords: vec![BigRational::one() / &self.coords[0]] });
        }
        // extended Euclid of a(x) against m(x)
        let m = self.field.min_poly.to_q();
        let (mut r0, mut r1) = (m, self.as_poly());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let c = r0.coeff(0);
        Ok(NFElement::from_poly(&self.field, &t0.scale(&(BigRational::one() / c))))
    }

    pub fn div(&self, o: &NFElement) -> Result<NFElement> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> NFElement {
        let mut acc = self.field.from_int(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// N_{K/Q}(x).
    pub fn norm(&self) -> BigRational {
        if self.field.degree == 1 {
            return self.coords[0].clone();
        }
        let a = self.as_poly();
        if a.is_zero() {
            return BigRational::zero();
        }
        self.field.min_poly.to_q().resultant(&a)
    }

    /// Coordinates in the order basis 1, ω, ..., ω^(n-1).
    pub fn order_coords(&self) -> Vec<BigRational> {
        let n = self.field.degree;
        if n == 1 || self.field.order.poly == self.field.min_poly {
            return self.coords.clone();
        }
        let p = self.as_poly().compose(&self.field.order.theta).rem(&self.field.order.poly.to_q());
        let mut c = p.coeffs().to_vec();
        c.resize(n, BigRational::zero());
        c
    }

    /// Rational primes at which some valuation of `self` can be nonzero.
    pub fn support_primes(&self) -> Result<Vec<BigInt>> {
        if self.is_zero() {
            return Err(Error::ZeroCoordinate);
        }
        let w = self.order_coords();
        let d = w.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let a: Vec<BigInt> = w.iter().map(|x| (x * BigRational::from_integer(d.clone())).to_integer()).collect();
        let ap = ZPoly::new(a);
        let norm = if self.field.degree == 1 {
            ap.coeff(0)
        } else {
            self.field.order.poly.resultant(&ap)
        };
        let mut ps = factor_integer(&d)?.primes();
        ps.extend(factor_integer(&norm)?.primes());
        ps.sort();
        ps.dedup();
        Ok(ps)
    }

    pub fn to_json(&self) -> Value {
        json!(self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        write!(f, "{}", self.as_poly().fmt_var("a"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub p: BigInt,
    pub e: u32,
    pub f: u32,
    /// Monic factor of the order polynomial modulo p, coefficients ascending.
    pub g_mod_p: Vec<u64>,
}

impl PrimeIdeal {
    pub fn norm(&self) -> BigInt {
        self.p.pow(self.f)
    }

    pub fn p_u64(&self) -> u64 {
        self.p.to_u64().expect("split primes fit in 62 bits")
    }

    pub fn gbar(&self) -> FpPoly {
        FpPoly::new(self.p_u64(), self.g_mod_p.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": json_int(&self.p),
            "e": self.e,
            "f": self.f,
            "g_mod_p": self.g_mod_p,
        })
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.g_mod_p.len() <= 2 && self.e == 1 && self.f == 1 && self.g_mod_p.len() == 2 && self.g_mod_p[0] == 0 {
            return write!(f, "({})", self.p);
        }
        write!(f, "({}, {})", self.p, self.gbar().fmt_var("w"))
    }
}

pub fn ideal_norm(p: &PrimeIdeal) -> BigInt {
    p.norm()
}

fn small_prime(p: &BigInt) -> Result<u64> {
    match p.to_u64() {
        Some(v) if v < (1u64 << 62) => Ok(v),
        _ => Err(Error::UnsupportedField(format!("prime {p} exceeds the 62-bit splitting limit"))),
    }
}

/// Prime ideals above p with their (e, f).
pub fn split_prime(k: &NumberField, p: &BigInt) -> Result<Vec<PrimeIdeal>> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let pu = small_prime(p)?;
    let f = k.order.poly.reduce_mod(pu);
    let facs = f.factor();
    if k.degree >= 3 && !dedekind_criterion(&k.order.poly, &facs, pu) {
        return Err(Error::IndexDivisorUnsupported(p.to_string()));
    }
    let out: Vec<PrimeIdeal> = facs
        .iter()
        .map(|(g, e)| PrimeIdeal { p: p.clone(), e: *e, f: g.degree() as u32, g_mod_p: g.coeffs().to_vec() })
        .collect();
    debug_assert_eq!(out.iter().map(|q| (q.e * q.f) as usize).sum::<usize>(), k.degree);
    Ok(out)
}

/// True when p does not divide the index of Z[θ].
fn dedekind_criterion(f: &ZPoly, facs: &[(FpPoly, u32)], p: u64) -> bool {
    if facs.iter().all(|(_, e)| *e == 1) {
        return true;
    }
    let lift = |g: &FpPoly| ZPoly::new(g.coeffs().iter().map(|&a| BigInt::from(a)).collect());
    let mut g = ZPoly::one();
    let mut h = ZPoly::one();
    for (gi, ei) in facs {
        let l = lift(gi);
        g = g.mul(&l);
        h = h.mul(&l.pow(*ei as u64 - 1));
    }
    let pb = BigInt::from(p);
    let diff = g.mul(&h).sub(f);
    let big_f = ZPoly::new(diff.coeffs().iter().map(|c| c / &pb).collect());
    let fbar = big_f.reduce_mod(p);
    let d = fbar.gcd(&g.reduce_mod(p)).gcd(&h.reduce_mod(p));
    d.degree() == 0
}

/// v_𝔭(x) for nonzero x.
pub fn valuation(x: &NFElement, pr: &PrimeIdeal) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroCoordinate);
    }
    let k = &x.field;
    if k.degree == 1 {
        return Ok(rat_ord_p(&x.coords[0], &pr.p));
    }
    let pu = small_prime(&pr.p)?;
    if k.degree >= 3 {
        let facs = k.order.poly.reduce_mod(pu).factor();
        if !dedekind_criterion(&k.order.poly, &facs, pu) {
            return Err(Error::UnsupportedField(format!("index divisor {}", pr.p)));
        }
    }
    let w = x.order_coords();
    let d = w.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let a = ZPoly::new(w.iter().map(|c| (c * BigRational::from_integer(d.clone())).to_integer()).collect());
    let vd = ord_p(&d, &pr.p) as i64 * pr.e as i64;
    Ok(valuation_integral(&a, &k.order.poly, pr, pu) - vd)
}

/// Valuation of an integral element a(ω) using γ = h(ω)/p, h = lift of m/g mod p.
fn valuation_integral(a: &ZPoly, m: &ZPoly, pr: &PrimeIdeal, p: u64) -> i64 {
    let gbar = pr.gbar();
    let hbar = m.reduce_mod(p).exact_div(&gbar);
    let h = ZPoly::new(hbar.coeffs().iter().map(|&c| BigInt::from(c)).collect());
    let pb = BigInt::from(p);
    let mq = m.to_q();
    let mut cur = a.clone();
    let mut k = 0;
    loop {
        let prod = cur.mul(&h).to_q().rem(&mq).to_zpoly_exact().expect("monic reduction stays integral");
        if prod.coeffs().iter().all(|c| (c % &pb).is_zero()) {
            cur = ZPoly::new(prod.coeffs().iter().map(|c| c / &pb).collect());
            k += 1;
        } else {
            return k;
        }
    }
}
