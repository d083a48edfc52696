//! Dense univariate polynomials over Q and Z, coefficients ascending.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::FpPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly {
    c: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        trim(&mut c);
        QPoly { c }
    }

    pub fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub fn x() -> Self {
        QPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(a: BigRational) -> Self {
        QPoly::new(vec![a])
    }

    pub fn monomial(a: BigRational, k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = a;
        QPoly::new(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        QPoly::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }

    pub fn scale(&self, a: &BigRational) -> QPoly {
        QPoly::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn pow(&self, mut e: u32) -> QPoly {
        let mut acc = QPoly::one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        if self.c.len() < d.c.len() {
            return (QPoly::zero(), self.clone());
        }
        let inv = BigRational::one() / d.lc();
        let mut r = self.c.clone();
        let mut quo = vec![BigRational::zero(); self.c.len() - dd];
        for k in (0..quo.len()).rev() {
            let t = &r[k + dd] * &inv;
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &t * b;
                }
            }
            quo[k] = t;
        }
        r.truncate(dd);
        (QPoly::new(quo), QPoly::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.divrem(d).1
    }

    /// Quotient when `d` divides `self`.
    pub fn exact_div(&self, d: &QPoly) -> Option<QPoly> {
        let (qq, r) = self.divrem(d);
        r.is_zero().then_some(qq)
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let inv = BigRational::one() / self.lc();
        self.scale(&inv)
    }

    /// Monic gcd; zero only when both inputs are zero.
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Rescaling that keeps coefficient sizes in check during Euclid.
    fn primitive_rational(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let (_, z) = self.content_primitive();
        z.to_q()
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * q(i as i64)).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// self(g(x)).
    pub fn compose(&self, g: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(g).add(&QPoly::constant(a.clone()));
        }
        acc
    }

    /// `self = content * primitive` with the primitive part in Z[x] and a
    /// positive leading coefficient.
    pub fn content_primitive(&self) -> (BigRational, ZPoly) {
        if self.is_zero() {
            return (BigRational::zero(), ZPoly::zero());
        }
        let l = self.c.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<BigInt> = self.c.iter().map(|a| (a * BigRational::from_integer(l.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|a| a / &g).collect();
        (BigRational::new(g, l), ZPoly::new(prim))
    }

    /// Squarefree decomposition `self = lc * prod f_i^i` (Yun).
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() < 1 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.exact_div(&a).unwrap();
        let mut c = fp.exact_div(&a).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).unwrap();
            c = d.exact_div(&a).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).unwrap().monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Number of distinct real roots (Sturm sequence).
    pub fn count_real_roots(&self) -> usize {
        let f = self.squarefree_part();
        if f.degree() < 1 {
            return 0;
        }
        let seq = sturm_sequence(&f);
        let at_pos: Vec<i32> = seq.iter().map(|p| sign(&p.lc())).collect();
        let at_neg: Vec<i32> = seq
            .iter()
            .map(|p| sign(&p.lc()) * if p.degree() % 2 == 0 { 1 } else { -1 })
            .collect();
        sign_changes(&at_neg) - sign_changes(&at_pos)
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_roots_in(&self, a: &BigRational, b: &BigRational) -> usize {
        let f = self.squarefree_part();
        if f.degree() < 1 {
            return 0;
        }
        let seq = sturm_sequence(&f);
        let va: Vec<i32> = seq.iter().map(|p| sign(&p.eval(a))).collect();
        let vb: Vec<i32> = seq.iter().map(|p| sign(&p.eval(b))).collect();
        sign_changes(&va).saturating_sub(sign_changes(&vb))
    }

    pub fn to_zpoly_exact(&self) -> Option<ZPoly> {
        if self.c.iter().all(|a| a.is_integer()) {
            Some(ZPoly::new(self.c.iter().map(|a| a.to_integer()).collect()))
        } else {
            None
        }
    }

    /// Resultant over Q.
    pub fn resultant(&self, o: &QPoly) -> BigRational {
        let (ca, za) = self.content_primitive();
        let (cb, zb) = o.content_primitive();
        if self.is_zero() || o.is_zero() {
            return BigRational::zero();
        }
        let m = za.degree() as i32;
        let n = zb.degree() as i32;
        let r = za.resultant(&zb);
        BigRational::from_integer(r) * pow_q(&ca, n) * pow_q(&cb, m)
    }

    pub fn discriminant(&self) -> BigRational {
        let n = self.degree();
        assert!(n >= 1);
        let r = self.resultant(&self.derivative());
        let s = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        r * q(s) / self.lc()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        fmt_terms(self.c.iter().map(|a| (sign(a), a.abs().to_string())).collect(), var)
    }
}

fn pow_q(a: &BigRational, e: i32) -> BigRational {
    num_traits::pow::pow(a.clone(), e as usize)
}

fn sign(a: &BigRational) -> i32 {
    if a.is_zero() {
        0
    } else if a.is_negative() {
        -1
    } else {
        1
    }
}

fn sign_changes(s: &[i32]) -> usize {
    let nz: Vec<i32> = s.iter().copied().filter(|&x| x != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sturm_sequence(f: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // positive rescaling keeps signs intact
        let (c, z) = r.neg().content_primitive();
        let mut p = z.to_q();
        if c.is_negative() {
            p = p.neg();
        }
        seq.push(p);
    }
    seq
}

fn fmt_terms(terms: Vec<(i32, String)>, var: &str) -> String {
    let mut out = String::new();
    for (i, (s, a)) in terms.iter().enumerate().rev() {
        if *s == 0 {
            continue;
        }
        let body = match i {
            0 => a.clone(),
            1 if a == "1" => var.to_string(),
            1 => format!("{a}*{var}"),
            _ if a == "1" => format!("{var}^{i}"),
            _ => format!("{a}*{var}^{i}"),
        };
        if out.is_empty() {
            if *s < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if *s < 0 { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        trim(&mut c);
        ZPoly { c }
    }

    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly::new(vec![BigInt::one()])
    }

    pub fn x() -> Self {
        ZPoly::new(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(a: BigInt) -> Self {
        ZPoly::new(vec![a])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        ZPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|a| a.is_one())
    }

    pub fn to_q(&self) -> QPoly {
        QPoly::new(self.c.iter().map(|a| BigRational::from_integer(a.clone())).collect())
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let n = self.c.len().max(o.c.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        let n = self.c.len().max(o.c.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        ZPoly::new(c)
    }

    pub fn scale(&self, a: &BigInt) -> ZPoly {
        ZPoly::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn pow(&self, mut e: u64) -> ZPoly {
        let mut acc = ZPoly::one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn eval_q(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + BigRational::from_integer(a.clone());
        }
        acc
    }

    /// Homogenized value `sum c_i n^i d^(k-i)` at `x = n/d` for a chosen degree `k`.
    pub fn eval_homogeneous(&self, n: &BigInt, d: &BigInt, k: usize) -> BigInt {
        let mut acc = BigInt::zero();
        let mut npow = BigInt::one();
        let mut dpow: Vec<BigInt> = Vec::with_capacity(k + 1);
        let mut t = BigInt::one();
        for _ in 0..=k {
            dpow.push(t.clone());
            t *= d;
        }
        for i in 0..=k {
            let ci = self.coeff(i);
            if !ci.is_zero() {
                acc += ci * &npow * &dpow[k - i];
            }
            npow *= n;
        }
        acc
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        ZPoly::new(self.c.iter().map(|a| a / &g).collect())
    }

    pub fn reduce_mod(&self, p: u64) -> FpPoly {
        let pb = BigInt::from(p);
        FpPoly::new(p, self.c.iter().map(|a| a.mod_floor(&pb).to_u64().unwrap()).collect())
    }

    /// Coefficients reduced to the symmetric range around 0 modulo `m`.
    pub fn mod_symmetric(&self, m: &BigInt) -> ZPoly {
        let half = m >> 1u32;
        ZPoly::new(
            self.c
                .iter()
                .map(|a| {
                    let r = a.mod_floor(m);
                    if r > half {
                        r - m
                    } else {
                        r
                    }
                })
                .collect(),
        )
    }

    pub fn mod_positive(&self, m: &BigInt) -> ZPoly {
        ZPoly::new(self.c.iter().map(|a| a.mod_floor(m)).collect())
    }

    /// Exact quotient over Z, or None if `d` does not divide `self` in Z[x].
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if self.c.len() < d.c.len() {
            return None;
        }
        let dd = d.c.len() - 1;
        let lc = d.lc();
        let mut r = self.c.clone();
        let mut quo = vec![BigInt::zero(); self.c.len() - dd];
        for k in (0..quo.len()).rev() {
            let (t, rem) = r[k + dd].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &t * b;
                }
            }
            quo[k] = t;
        }
        if r[..dd].iter().any(|a| !a.is_zero()) {
            return None;
        }
        Some(ZPoly::new(quo))
    }

    /// Pseudo-remainder `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn prem(&self, d: &ZPoly) -> ZPoly {
        let dd = d.c.len() - 1;
        if self.c.len() < d.c.len() {
            return self.clone();
        }
        let lc = d.lc();
        let mut r = self.c.clone();
        let steps = self.c.len() - dd;
        for k in (0..steps).rev() {
            let t = r[k + dd].clone();
            for a in r.iter_mut().take(k + dd + 1) {
                *a *= &lc;
            }
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &t * b;
                }
            }
        }
        r.truncate(dd);
        ZPoly::new(r)
    }

    /// Resultant via the subresultant PRS.
    pub fn resultant(&self, o: &ZPoly) -> BigInt {
        if self.is_zero() || o.is_zero() {
            return BigInt::zero();
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut s = BigInt::one();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
            if (a.degree() * b.degree()) % 2 == 1 {
                s = -s;
            }
        }
        if b.degree() == 0 {
            return s * b.lc().pow(a.degree() as u32);
        }
        let ca = a.content();
        let cb = b.content();
        a = ZPoly::new(a.c.iter().map(|x| x / &ca).collect());
        b = ZPoly::new(b.c.iter().map(|x| x / &cb).collect());
        let t = ca.pow(b.degree() as u32) * cb.pow(a.degree() as u32);
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = (a.degree() - b.degree()) as u32;
            if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
                s = -s;
            }
            let r = a.prem(&b);
            if r.is_zero() {
                return BigInt::zero();
            }
            a = b;
            let div = &g * h.pow(delta);
            b = ZPoly::new(r.c.iter().map(|x| x / &div).collect());
            g = a.lc();
            h = if delta == 0 {
                h
            } else {
                g.pow(delta) / h.pow(delta - 1)
            };
            if b.degree() == 0 {
                let da = a.degree() as u32;
                let hh = b.lc().pow(da) / h.pow(da.saturating_sub(1));
                return s * t * hh;
            }
        }
    }

    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        assert!(n >= 1);
        let r = self.resultant(&self.derivative());
        let s = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        r * BigInt::from(s) / self.lc()
    }

    /// Max absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.c.iter().map(|a| a.abs()).max().unwrap_or_else(BigInt::zero)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        fmt_terms(
            self.c
                .iter()
                .map(|a| {
                    let s = if a.is_zero() { 0 } else if a.is_negative() { -1 } else { 1 };
                    (s, a.abs().to_string())
                })
                .collect(),
            var,
        )
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::integer::rat;

    #[test]
    fn division_and_gcd() {
        let f = QPoly::from_ints(&[-1, 0, 1]);
        let g = QPoly::from_ints(&[1, 1]);
        let (qq, r) = f.divrem(&g);
        assert_eq!(qq, QPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let h = QPoly::from_ints(&[-1, 0, 0, 1]);
        assert_eq!(f.gcd(&h), QPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn resultant_and_discriminant() {
        let f = ZPoly::from_ints(&[1, 0, 1]);
        assert_eq!(f.discriminant(), BigInt::from(-4));
        let g = ZPoly::from_ints(&[-30, 0, 1]);
        assert_eq!(g.discriminant(), BigInt::from(120));
        let cubic = ZPoly::from_ints(&[-2, 0, 0, 1]);
        assert_eq!(cubic.discriminant(), BigInt::from(-108));
        let a = ZPoly::from_ints(&[-2, 3, 0, 5, 1]);
        let b = ZPoly::from_ints(&[7, -1, 4]);
        let rq = a.to_q().resultant(&b.to_q());
        assert_eq!(rq, BigRational::from_integer(a.resultant(&b)));
        // Res(f, g) = lc(f)^deg g prod g(roots of f) for f = (x-1)(x-2)
        let f2 = ZPoly::from_ints(&[2, -3, 1]);
        let g2 = ZPoly::from_ints(&[5, 0, 1]);
        assert_eq!(f2.resultant(&g2), BigInt::from(6 * 9));
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(QPoly::from_ints(&[1, 0, 1]).count_real_roots(), 0);
        assert_eq!(QPoly::from_ints(&[-2, 0, 0, 1]).count_real_roots(), 1);
        assert_eq!(QPoly::from_ints(&[0, -1, 0, 1]).count_real_roots(), 3);
        let f = QPoly::from_ints(&[0, -1, 0, 1]);
        assert_eq!(f.count_roots_in(&rat(-1, 2), &rat(2, 1)), 2);
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        let a = QPoly::from_ints(&[0, 1]);
        let b = QPoly::from_ints(&[1, -1]);
        let f = a.pow(3).mul(&b.pow(2));
        let d = f.squarefree_decomposition();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], (b.monic(), 2));
        assert_eq!(d[1], (a, 3));
        assert_eq!(f.squarefree_part(), QPoly::from_ints(&[0, -1, 1]));
    }

    #[test]
    fn primitive_parts() {
        let f = QPoly::new(vec![rat(1, 2), rat(-3, 4)]);
        let (c, z) = f.content_primitive();
        assert_eq!(z, ZPoly::from_ints(&[-2, 3]));
        assert_eq!(c, rat(-1, 4));
        assert_eq!(ZPoly::from_ints(&[2, -3, 1]).div_exact(&ZPoly::from_ints(&[-1, 1])), Some(ZPoly::from_ints(&[-2, 1])));
        assert_eq!(ZPoly::from_ints(&[1, 0, 2]).div_exact(&ZPoly::from_ints(&[0, 2])), None);
    }

    #[test]
    fn display() {
        assert_eq!(QPoly::from_ints(&[1, 0, -1]).fmt_var("t"), "-t^2 + 1");
        assert_eq!(ZPoly::from_ints(&[0, 2, 1]).to_string(), "x^2 + 2*x");
    }
}
