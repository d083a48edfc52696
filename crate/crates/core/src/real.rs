//! Outward-rounded interval arithmetic over dyadic rationals.
//!
//! Every [`Real`] is a closed interval `[lo, hi]` whose endpoints are
//! numbers `m * 2^e`. Operations round the lower endpoint down and the
//! upper endpoint up, so the true value is always enclosed.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_PREC: u32 = 128;

/// Largest |x| accepted by `exp`.
const EXP_LIMIT: f64 = 1.0e7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Round {
    Down,
    Up,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

fn shr_round(m: &BigInt, k: u64, dir: Round) -> BigInt {
    let d = pow2(k);
    match dir {
        Round::Down => m.div_floor(&d),
        Round::Up => -((-m).div_floor(&d)),
    }
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }.normalized()
    }

    pub fn from_int(n: &BigInt) -> Self {
        Dyadic::new(n.clone(), 0)
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        if self.mant.is_zero() {
            0
        } else if self.mant.is_negative() {
            -1
        } else {
            1
        }
    }

    fn round(self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self;
        }
        let k = bits - prec as u64;
        Dyadic::new(shr_round(&self.mant, k, dir), self.exp + k as i64)
    }

    fn add_exact(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    fn mul_exact(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    /// Quotient `num/den` rounded to `prec` bits.
    fn div_round(num: &BigInt, den: &BigInt, exp: i64, prec: u32, dir: Round) -> Dyadic {
        if num.is_zero() {
            return Dyadic::zero();
        }
        let (n, d) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let shift = prec as i64 + 2 + d.bits() as i64 - n.bits() as i64;
        let shift = shift.max(0);
        let scaled = n << shift as u64;
        let q = match dir {
            Round::Down => scaled.div_floor(&d),
            Round::Up => -((-scaled).div_floor(&d)),
        };
        Dyadic::new(q, exp - shift).round(prec, dir)
    }

    fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Dyadic {
        Dyadic::div_round(q.numer(), q.denom(), 0, prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), pow2((-self.exp) as u64))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let drop = (bits - 60).max(0);
        let m = (&self.mant >> drop as u64).to_f64().unwrap_or(f64::NAN);
        let e = self.exp + drop;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2000 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }

    /// Position of the leading bit: `|x|` lies in `[2^(t-1), 2^t)`.
    fn top(&self) -> i64 {
        self.mant.bits() as i64 + self.exp
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (s1, s2) = (self.signum(), other.signum());
        if s1 != s2 {
            return s1.cmp(&s2);
        }
        if s1 == 0 {
            return Ordering::Equal;
        }
        let (t1, t2) = (self.top(), other.top());
        if t1 != t2 {
            let c = t1.cmp(&t2);
            return if s1 > 0 { c } else { c.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

/// Fixed-point value `v * 2^-w` with absolute error at most `err * 2^-w`.
struct Fixed {
    v: BigInt,
    err: BigInt,
}

fn atanh_recip_fixed(zn: &BigInt, zd: &BigInt, w: u32) -> Fixed {
    // atanh(z) = z + z^3/3 + z^5/5 + ... with |z| <= 1/3
    let one = pow2(w as u64);
    let z = (zn * &one).div_floor(zd);
    let z2 = (&z * &z).div_floor(&one);
    let mut term = z.clone();
    let mut sum = BigInt::zero();
    let mut n: u64 = 0;
    let mut j: u64 = 0;
    while !term.is_zero() {
        sum += &term / BigInt::from(2 * j + 1);
        term = (&term * &z2) / &one;
        j += 1;
        n += 1;
    }
    Fixed { v: sum, err: BigInt::from(4 * n + 16) }
}

thread_local! {
    static LN2: RefCell<HashMap<u32, (BigInt, BigInt)>> = RefCell::new(HashMap::new());
}

fn ln2_fixed(w: u32) -> Fixed {
    LN2.with(|c| {
        if let Some((v, e)) = c.borrow().get(&w) {
            return Fixed { v: v.clone(), err: e.clone() };
        }
        let a = atanh_recip_fixed(&BigInt::one(), &BigInt::from(3), w);
        let f = Fixed { v: a.v * 2, err: a.err * 2 };
        c.borrow_mut().insert(w, (f.v.clone(), f.err.clone()));
        f
    })
}

/// ln(x) for a positive dyadic point.
fn ln_fixed(x: &Dyadic, w: u32) -> Fixed {
    let bits = x.mant.bits();
    let mut k = bits as i64 + x.exp;
    let den = pow2(bits);
    let mut num = x.mant.clone();
    if &num * 4 < &den * 3 {
        num <<= 1u32;
        k -= 1;
    }
    // x = 2^k * num/den with num/den in [3/4, 3/2)
    let zn = &num - &den;
    let zd = &num + &den;
    let a = atanh_recip_fixed(&zn, &zd, w);
    let l2 = ln2_fixed(w);
    let kk = BigInt::from(k);
    Fixed {
        v: &kk * &l2.v + a.v * 2,
        err: kk.abs() * &l2.err + a.err * 2,
    }
}

/// exp(x) for a dyadic point, as `(value, err, scale)` meaning `(value ± err) * 2^scale`.
fn exp_fixed(x: &Dyadic, w: u32) -> Result<(BigInt, BigInt, i64)> {
    let xf = x.to_f64();
    if !xf.is_finite() || xf.abs() > EXP_LIMIT {
        return Err(Error::DomainError(format!("exp argument out of range ({xf:e})")));
    }
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    let ww = w + 8 + (64 - (k.unsigned_abs() + 1).leading_zeros());
    let l2 = ln2_fixed(ww);
    let one = pow2(ww as u64);
    // X = floor(x * 2^ww)
    let (xv, xerr) = if x.exp >= -(ww as i64) {
        (&x.mant << (x.exp + ww as i64) as u64, BigInt::zero())
    } else {
        (x.mant.div_floor(&pow2((-(x.exp + ww as i64)) as u64)), BigInt::one())
    };
    let kk = BigInt::from(k);
    let r = xv - &kk * &l2.v;
    let rerr = xerr + kk.abs() * &l2.err;
    let mut term = one.clone();
    let mut sum = BigInt::zero();
    let mut n: u64 = 0;
    while !term.is_zero() {
        sum += &term;
        n += 1;
        term = (&term * &r) / (&one * BigInt::from(n));
        if n > 10_000 {
            break;
        }
    }
    let err = BigInt::from(3 * n + 8) + rerr * 2;
    Ok((sum, err, k - ww as i64))
}

#[derive(Clone, Debug)]
pub struct Real {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Real {
    pub fn from_int(n: i64, prec: u32) -> Real {
        let d = Dyadic::from_int(&BigInt::from(n));
        Real { lo: d.clone(), hi: d, prec }
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Real {
        let d = Dyadic::from_int(n);
        Real { lo: d.clone().round(prec, Round::Down), hi: d.round(prec, Round::Up), prec }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Real {
        Real {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
            prec,
        }
    }

    /// Interval from two rational bounds, `lo <= hi`.
    pub fn from_bounds(lo: &BigRational, hi: &BigRational, prec: u32) -> Real {
        Real {
            lo: Dyadic::from_rational(lo, prec, Round::Down),
            hi: Dyadic::from_rational(hi, prec, Round::Up),
            prec,
        }
    }

    pub fn from_f64_exact(x: f64, prec: u32) -> Real {
        let q = BigRational::from_float(x).expect("finite float");
        Real::from_rational(&q, prec)
    }

    pub fn zero(prec: u32) -> Real {
        Real::from_int(0, prec)
    }

    pub fn one(prec: u32) -> Real {
        Real::from_int(1, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(mut self, prec: u32) -> Real {
        self.prec = prec;
        self
    }

    pub fn lo(&self) -> BigRational {
        self.lo.to_rational()
    }

    pub fn hi(&self) -> BigRational {
        self.hi.to_rational()
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }

    pub fn mid(&self) -> BigRational {
        (self.lo() + self.hi()) / BigRational::from_integer(BigInt::from(2))
    }

    /// Half-width of the interval.
    pub fn radius(&self) -> BigRational {
        (self.hi() - self.lo()) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo() <= q && q <= &self.hi()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    fn p(&self, o: &Real) -> u32 {
        self.prec.max(o.prec)
    }

    pub fn add(&self, o: &Real) -> Real {
        let prec = self.p(o);
        Real {
            lo: self.lo.add_exact(&o.lo).round(prec, Round::Down),
            hi: self.hi.add_exact(&o.hi).round(prec, Round::Up),
            prec,
        }
    }

    pub fn neg(&self) -> Real {
        Real { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }

    pub fn sub(&self, o: &Real) -> Real {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Real) -> Real {
        let prec = self.p(o);
        let c = [
            self.lo.mul_exact(&o.lo),
            self.lo.mul_exact(&o.hi),
            self.hi.mul_exact(&o.lo),
            self.hi.mul_exact(&o.hi),
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Real { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up), prec }
    }

    pub fn scale(&self, q: &BigRational) -> Real {
        self.mul(&Real::from_rational(q, self.prec))
    }

    pub fn mul_int(&self, n: i64) -> Real {
        self.mul(&Real::from_int(n, self.prec))
    }

    pub fn div(&self, o: &Real) -> Result<Real> {
        if o.contains_zero() {
            return Err(Error::DomainError("division by an interval containing 0".into()));
        }
        let prec = self.p(o);
        let mut lows = Vec::with_capacity(4);
        let mut highs = Vec::with_capacity(4);
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let (n, d) = (&a.mant, &b.mant);
                lows.push(Dyadic::div_round(n, d, a.exp - b.exp, prec, Round::Down));
                highs.push(Dyadic::div_round(n, d, a.exp - b.exp, prec, Round::Up));
            }
        }
        Ok(Real {
            lo: lows.into_iter().min().unwrap(),
            hi: highs.into_iter().max().unwrap(),
            prec,
        })
    }

    pub fn recip(&self) -> Result<Real> {
        Real::one(self.prec).div(self)
    }

    pub fn max(&self, o: &Real) -> Real {
        Real {
            lo: self.lo.clone().max(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            prec: self.p(o),
        }
    }

    pub fn min(&self, o: &Real) -> Real {
        Real {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().min(o.hi.clone()),
            prec: self.p(o),
        }
    }

    /// Hull of two intervals.
    pub fn join(&self, o: &Real) -> Real {
        Real {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            prec: self.p(o),
        }
    }

    pub fn ln(&self) -> Result<Real> {
        if self.lo.signum() <= 0 {
            return Err(Error::DomainError("log of a non-positive quantity".into()));
        }
        let w = self.prec + 32;
        let lo = ln_fixed(&self.lo, w);
        let hi = if self.lo == self.hi {
            None
        } else {
            Some(ln_fixed(&self.hi, w))
        };
        let hi = hi.as_ref().unwrap_or(&lo);
        let e = -(w as i64);
        Ok(Real {
            lo: Dyadic::new(&lo.v - &lo.err, e).round(self.prec, Round::Down),
            hi: Dyadic::new(&hi.v + &hi.err, e).round(self.prec, Round::Up),
            prec: self.prec,
        })
    }

    /// max(ln x, 1), extended by 1 for x <= 0.
    pub fn log_plus(&self) -> Real {
        let one = Real::one(self.prec);
        if self.hi.signum() <= 0 {
            return one;
        }
        if self.lo.signum() <= 0 {
            let up = Real { lo: self.hi.clone(), hi: self.hi.clone(), prec: self.prec };
            let l = up.ln().expect("positive");
            return Real { lo: one.lo.clone(), hi: l.hi.max(one.hi.clone()), prec: self.prec };
        }
        self.ln().expect("positive").max(&one)
    }

    pub fn exp(&self) -> Result<Real> {
        let w = self.prec + 32;
        let (lv, le, ls) = exp_fixed(&self.lo, w)?;
        let lo = Dyadic::new(lv - le, ls).round(self.prec, Round::Down);
        let hi = if self.lo == self.hi {
            let (hv, he, hs) = exp_fixed(&self.hi, w)?;
            Dyadic::new(hv + he, hs)
        } else {
            let (hv, he, hs) = exp_fixed(&self.hi, w)?;
            Dyadic::new(hv + he, hs)
        };
        let lo = if lo.signum() < 0 { Dyadic::zero() } else { lo };
        Ok(Real { lo, hi: hi.round(self.prec, Round::Up), prec: self.prec })
    }

    pub fn powi(&self, n: u32) -> Real {
        if n == 0 {
            return Real::one(self.prec);
        }
        if n % 2 == 0 && self.contains_zero() {
            let a = self.abs_max_dyadic();
            if a.is_zero() {
                return Real::zero(self.prec);
            }
            let top = Real { lo: a.clone(), hi: a, prec: self.prec }.powi(n);
            return Real { lo: Dyadic::zero(), hi: top.hi, prec: self.prec };
        }
        let mut acc = Real::one(self.prec);
        let mut base = self.clone();
        let mut k = n;
        if n % 2 == 0 && self.is_negative() {
            base = base.neg();
        }
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn abs_max_dyadic(&self) -> Dyadic {
        let a = if self.lo.signum() < 0 { self.lo.neg() } else { self.lo.clone() };
        let b = if self.hi.signum() < 0 { self.hi.neg() } else { self.hi.clone() };
        a.max(b)
    }

    /// x^y for x >= 0.
    pub fn pow(&self, y: &Real) -> Result<Real> {
        if self.lo.signum() > 0 {
            return self.ln()?.mul(y).exp();
        }
        if self.lo.signum() < 0 {
            return Err(Error::DomainError("real power of a negative quantity".into()));
        }
        if y.lo.signum() <= 0 {
            return Err(Error::DomainError("0 raised to a non-positive power".into()));
        }
        if self.hi.signum() == 0 {
            return Ok(Real::zero(self.prec));
        }
        let top = Real { lo: self.hi.clone(), hi: self.hi.clone(), prec: self.prec };
        let a = top.pow(&Real { lo: y.lo.clone(), hi: y.lo.clone(), prec: self.prec })?;
        let b = top.pow(&Real { lo: y.hi.clone(), hi: y.hi.clone(), prec: self.prec })?;
        Ok(Real { lo: Dyadic::zero(), hi: a.hi.max(b.hi), prec: self.prec })
    }

    pub fn sqrt(&self) -> Result<Real> {
        if self.lo.signum() < 0 {
            return Err(Error::DomainError("square root of a negative quantity".into()));
        }
        Ok(Real {
            lo: dyadic_sqrt(&self.lo, self.prec, Round::Down),
            hi: dyadic_sqrt(&self.hi, self.prec, Round::Up),
            prec: self.prec,
        })
    }

    /// Certified `self <= o`: `Some(true)`, `Some(false)`, or `None` when the
    /// intervals overlap.
    pub fn le(&self, o: &Real) -> Option<bool> {
        if self.hi <= o.lo {
            Some(true)
        } else if self.lo > o.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn lt(&self, o: &Real) -> Option<bool> {
        if self.hi < o.lo {
            Some(true)
        } else if self.lo >= o.hi {
            Some(false)
        } else {
            None
        }
    }

    /// Decimal rendering of the midpoint with `digits` significant digits.
    pub fn mid_string(&self, digits: usize) -> String {
        format_decimal(&self.mid(), digits)
    }

    pub fn err_string(&self) -> String {
        format_sci(&self.radius())
    }
}

fn dyadic_sqrt(x: &Dyadic, prec: u32, dir: Round) -> Dyadic {
    if x.is_zero() {
        return Dyadic::zero();
    }
    let mut e = x.exp;
    let mut m = x.mant.clone();
    let want = 2 * prec as i64 + 4;
    let shift = (want - m.bits() as i64).max(0);
    let mut shift = shift;
    if (e - shift) % 2 != 0 {
        shift += 1;
    }
    m <<= shift as u64;
    e -= shift;
    let r = m.sqrt();
    let r = if dir == Round::Up && &r * &r != m { r + 1 } else { r };
    Dyadic::new(r, e / 2).round(prec, dir)
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.mid_string(20), self.err_string())
    }
}

/// Rational rendered in plain decimal with `digits` significant digits.
pub fn format_decimal(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ip = a.to_integer();
    let int_digits = if ip.is_zero() { 0 } else { ip.to_string().len() };
    let frac_digits = if int_digits >= digits {
        0
    } else if int_digits > 0 {
        digits - int_digits
    } else {
        // leading zeros after the point do not count as significant
        let mut lead = 0usize;
        let mut t = a.clone();
        let ten = BigRational::from_integer(BigInt::from(10));
        while t < BigRational::one() && lead < 400 {
            t *= &ten;
            lead += 1;
        }
        digits + lead - 1
    };
    let scale = BigInt::from(10).pow(frac_digits as u32);
    let scaled = (a * BigRational::from_integer(scale.clone())).round().to_integer();
    let s = scaled.to_string();
    let out = if frac_digits == 0 {
        s
    } else {
        let s = format!("{:0>width$}", s, width = frac_digits + 1);
        let (i, fr) = s.split_at(s.len() - frac_digits);
        let fr = fr.trim_end_matches('0');
        if fr.is_empty() {
            i.to_string()
        } else {
            format!("{i}.{fr}")
        }
    };
    if neg {
        format!("-{out}")
    } else {
        out
    }
}

/// Short scientific rendering, rounded up, for error radii.
pub fn format_sci(q: &BigRational) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let a = q.abs();
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut e: i64 = 0;
    let mut t = a.clone();
    while t >= ten {
        t /= &ten;
        e += 1;
    }
    while t < BigRational::one() {
        t *= &ten;
        e -= 1;
    }
    let m = (t * BigRational::from_integer(BigInt::from(100))).ceil().to_integer();
    let m = m.to_u64().unwrap_or(999);
    let (m, e) = if m >= 1000 { (100, e + 1) } else { (m, e) };
    format!("{}.{:02}e{}", m / 100, m % 100, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn shifting_negative_mantissa_rounds_down() {
        assert_eq!(shr_round(&BigInt::from(-5), 1, Round::Down), BigInt::from(-3));
        assert_eq!(shr_round(&BigInt::from(-5), 1, Round::Up), BigInt::from(-2));
        assert_eq!(shr_round(&BigInt::from(5), 1, Round::Up), BigInt::from(3));
    }

    #[test]
    fn ln_encloses_known_values() {
        let l2 = Real::from_int(2, 128).ln().unwrap();
        assert!(l2.lo_f64() <= std::f64::consts::LN_2 + 1e-15);
        assert!(l2.hi_f64() >= std::f64::consts::LN_2 - 1e-15);
        assert!(l2.radius() < r(1, 1) / BigRational::from_integer(pow2(120)));
        let l1 = Real::from_int(1, 128).ln().unwrap();
        assert!(l1.contains(&BigRational::zero()));
        let l30 = Real::from_int(30, 128).ln().unwrap();
        assert!((l30.mid_f64() - 30f64.ln()).abs() < 1e-14);
        let small = Real::from_rational(&r(1, 1000), 128).ln().unwrap();
        assert!((small.mid_f64() - (0.001f64).ln()).abs() < 1e-13);
    }

    #[test]
    fn exp_inverts_ln() {
        for x in [r(0, 1), r(1, 1), r(-7, 3), r(50, 1), r(-50, 1), r(1234, 10)] {
            let e = Real::from_rational(&x, 128).exp().unwrap();
            let back = e.ln().unwrap();
            assert!(back.contains(&x) || (back.mid() - &x).abs() < r(1, 1_000_000_000));
            assert!((back.mid_f64() - x.to_f64().unwrap()).abs() < 1e-12);
        }
        let e1 = Real::one(128).exp().unwrap();
        assert!((e1.mid_f64() - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn sqrt_and_pow() {
        let s = Real::from_int(2, 128).sqrt().unwrap();
        let sq = s.mul(&s);
        assert!(sq.contains(&r(2, 1)));
        let p = Real::from_int(3, 128).pow(&Real::from_int(20, 128)).unwrap();
        assert!(p.contains(&BigRational::from_integer(BigInt::from(3).pow(20u32))));
        assert_eq!(Real::from_int(-3, 64).powi(2).lo(), r(9, 1));
    }

    #[test]
    fn comparisons_are_certified() {
        let a = Real::from_int(6, 128).ln().unwrap();
        let b = Real::from_int(9, 128).ln().unwrap();
        assert_eq!(a.le(&b), Some(true));
        assert_eq!(b.le(&a), Some(false));
        assert_eq!(a.le(&a), None);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&r(1, 3), 5), "0.33333");
        assert_eq!(format_decimal(&r(-22, 7), 4), "-3.143");
        assert_eq!(format_decimal(&r(1, 1000), 3), "0.001");
        assert_eq!(format_sci(&r(1, 3000)), "3.34e-4");
    }
}
