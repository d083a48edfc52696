//! Certified enclosures of the complex roots of a monic integer
//! polynomial, and of |σ(a)| at each archimedean place.
//!
//! Roots are approximated (Aberth in f64, then Newton in fixed point) and
//! certified with the Weierstrass/Gershgorin inclusion: with
//! `W_j = f(z_j) / prod_{k != j} (z_j - z_k)`, the discs `D(z_j, n|W_j|)`
//! cover all roots and each connected component holds as many roots as
//! discs. Pairwise disjoint discs therefore isolate one root each.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{QPoly, ZPoly};
use crate::error::{Error, Result};
use crate::real::Real;

const MAX_BITS: u32 = 4096;

#[derive(Clone, Debug)]
struct CI {
    re: Real,
    im: Real,
}

impl CI {
    fn real(x: Real) -> CI {
        let p = x.prec();
        CI { re: x, im: Real::zero(p) }
    }

    fn add(&self, o: &CI) -> CI {
        CI { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    fn sub(&self, o: &CI) -> CI {
        CI { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    fn mul(&self, o: &CI) -> CI {
        CI {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    fn abs2(&self) -> Real {
        self.re.powi(2).add(&self.im.powi(2))
    }

    fn abs(&self) -> Real {
        self.abs2().sqrt().expect("non-negative")
    }
}

/// Certified root discs at a given working precision.
#[derive(Clone, Debug)]
struct Certified {
    bits: u32,
    /// Centers, real roots first, then one representative per conjugate pair (Im > 0).
    centers: Vec<(BigRational, BigRational)>,
    /// Upper bounds on the disc radii, same order.
    radii: Vec<BigRational>,
    r1: usize,
}

#[derive(Debug)]
pub struct Embeddings {
    f: ZPoly,
    r1: usize,
    cache: Mutex<Option<Certified>>,
}

type C64 = (f64, f64);

fn cmul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cdiv(a: C64, b: C64) -> C64 {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

fn horner64(c: &[f64], z: C64) -> (C64, C64) {
    let mut p = (0.0, 0.0);
    let mut dp = (0.0, 0.0);
    for &a in c.iter().rev() {
        dp = cmul(dp, z);
        dp = (dp.0 + p.0, dp.1 + p.1);
        p = cmul(p, z);
        p = (p.0 + a, p.1);
    }
    (p, dp)
}

fn aberth(f: &ZPoly) -> Vec<C64> {
    let n = f.degree() as usize;
    let c: Vec<f64> = f.coeffs().iter().map(|a| a.to_f64().unwrap_or(f64::MAX)).collect();
    let mut r: f64 = 0.0;
    for k in 1..=n {
        r = r.max(c[n - k].abs().powf(1.0 / k as f64));
    }
    let r = 2.0 * r.max(1e-3);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            (r * t.cos(), r * t.sin())
        })
        .collect();
    for _ in 0..2000 {
        let mut maxw: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner64(&c, z[k]);
            if p.0 == 0.0 && p.1 == 0.0 {
                continue;
            }
            let ratio = cdiv(p, dp);
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = (z[k].0 - z[j].0, z[k].1 - z[j].1);
                    let inv = cdiv((1.0, 0.0), d);
                    s = (s.0 + inv.0, s.1 + inv.1);
                }
            }
            let rs = cmul(ratio, s);
            let w = cdiv(ratio, (1.0 - rs.0, -rs.1));
            if w.0.is_finite() && w.1.is_finite() {
                z[k] = (z[k].0 - w.0, z[k].1 - w.1);
                maxw = maxw.max((w.0.hypot(w.1)) / (1.0 + z[k].0.hypot(z[k].1)));
            }
        }
        if maxw < 1e-15 {
            break;
        }
    }
    z
}

/// Fixed-point complex Newton refinement; values scaled by 2^w.
fn newton_fixed(f: &ZPoly, z0: C64, real: bool, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << w;
    let to_fixed = |x: f64| -> BigInt {
        let q = BigRational::from_float(x).unwrap_or_else(BigRational::zero);
        (q * BigRational::from_integer(one.clone())).round().to_integer()
    };
    let coeffs: Vec<BigInt> = f.coeffs().iter().map(|a| a << w).collect();
    let dcoeffs: Vec<BigInt> = f.derivative().coeffs().iter().map(|a| a << w).collect();
    let mut re = to_fixed(z0.0);
    let mut im = if real { BigInt::zero() } else { to_fixed(z0.1) };
    let eval = |c: &[BigInt], re: &BigInt, im: &BigInt| -> (BigInt, BigInt) {
        let (mut a, mut b) = (BigInt::zero(), BigInt::zero());
        for k in c.iter().rev() {
            let na = ((&a * re - &b * im) >> w) + k;
            let nb = (&a * im + &b * re) >> w;
            a = na;
            b = nb;
        }
        (a, b)
    };
    let iters = 6 + (32 - (w / 48).max(1).leading_zeros());
    for _ in 0..iters {
        let (a, b) = eval(&coeffs, &re, &im);
        let (c, d) = eval(&dcoeffs, &re, &im);
        let den = &c * &c + &d * &d;
        if den.is_zero() {
            break;
        }
        let qre = ((&a * &c + &b * &d) << w) / &den;
        let qim = ((&b * &c - &a * &d) << w) / &den;
        re -= qre;
        if !real {
            im -= qim;
        }
    }
    (re, im)
}

fn dyadic(m: &BigInt, w: u32) -> BigRational {
    BigRational::new(m.clone(), BigInt::one() << w)
}

fn exact(q: &BigRational, prec: u32) -> Real {
    Real::from_rational(q, prec)
}

impl Embeddings {
    pub fn new(f: &ZPoly) -> Embeddings {
        let r1 = f.to_q().count_real_roots();
        Embeddings { f: f.clone(), r1, cache: Mutex::new(None) }
    }

    pub fn real_places(&self) -> usize {
        self.r1
    }

    pub fn complex_places(&self) -> usize {
        (self.f.degree() as usize - self.r1) / 2
    }

    fn certify(&self, bits: u32) -> Result<Certified> {
        if let Some(c) = self.cache.lock().unwrap().as_ref() {
            if c.bits >= bits {
                return Ok(c.clone());
            }
        }
        let n = self.f.degree() as usize;
        let mut approx = aberth(&self.f);
        approx.sort_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap().then(a.0.partial_cmp(&b.0).unwrap()));
        let r1 = self.r1;
        let mut reals: Vec<C64> = approx[..r1].iter().map(|z| (z.0, 0.0)).collect();
        reals.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut uppers: Vec<C64> = approx[r1..].iter().filter(|z| z.1 > 0.0).copied().collect();
        uppers.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.partial_cmp(&b.1).unwrap()));
        if uppers.len() * 2 + r1 != n {
            return Err(Error::PrecisionExhausted(bits));
        }
        let mut w = bits.max(64);
        loop {
            let mut centers = Vec::with_capacity(r1 + uppers.len());
            for z in &reals {
                let (re, _) = newton_fixed(&self.f, *z, true, w);
                centers.push((dyadic(&re, w), BigRational::zero()));
            }
            for z in &uppers {
                let (re, im) = newton_fixed(&self.f, *z, false, w);
                centers.push((dyadic(&re, w), dyadic(&im, w)));
            }
            if let Some(radii) = self.inclusion_radii(&centers, r1, w) {
                let c = Certified { bits: w, centers, radii, r1 };
                *self.cache.lock().unwrap() = Some(c.clone());
                return Ok(c);
            }
            w *= 2;
            if w > MAX_BITS {
                return Err(Error::PrecisionExhausted(bits));
            }
        }
    }

    /// Disc radii if the inclusion discs are pairwise disjoint.
    fn inclusion_radii(&self, centers: &[(BigRational, BigRational)], r1: usize, w: u32) -> Option<Vec<BigRational>> {
        let n = self.f.degree() as usize;
        let prec = 2 * w + 64;
        let mut all: Vec<CI> = Vec::with_capacity(n);
        for (i, (re, im)) in centers.iter().enumerate() {
            all.push(CI { re: exact(re, prec), im: exact(im, prec) });
            if i >= r1 {
                all.push(CI { re: exact(re, prec), im: exact(&-im, prec) });
            }
        }
        let coeffs: Vec<Real> = self.f.coeffs().iter().map(|a| Real::from_bigint(a, prec)).collect();
        let mut radii = Vec::with_capacity(n);
        for j in 0..n {
            let mut v = CI::real(Real::zero(prec));
            for a in coeffs.iter().rev() {
                v = v.mul(&all[j]).add(&CI::real(a.clone()));
            }
            let mut den = Real::one(prec);
            for k in 0..n {
                if k != j {
                    den = den.mul(&all[j].sub(&all[k]).abs2());
                }
            }
            if !den.is_positive() {
                return None;
            }
            let wj2 = v.abs2().div(&den).ok()?;
            let r = wj2.sqrt().ok()?.mul_int(n as i64);
            radii.push(r.hi());
        }
        for j in 0..n {
            for k in j + 1..n {
                let d2 = all[j].sub(&all[k]).abs2();
                let s = exact(&(&radii[j] + &radii[k]), prec).powi(2);
                if s.lt(&d2) != Some(true) {
                    return None;
                }
            }
        }
        // keep only the representatives' radii
        let mut out = Vec::with_capacity(centers.len());
        let mut idx = 0;
        for i in 0..centers.len() {
            out.push(radii[idx].clone());
            idx += if i >= r1 { 2 } else { 1 };
        }
        Some(out)
    }

    /// `|σ_v(a(θ))|` and the local degree `d_v` for every archimedean place,
    /// real places first.
    pub fn abs_at_places(&self, a: &QPoly, prec: u32) -> Result<Vec<(Real, u32)>> {
        let mut bits = prec + 32;
        loop {
            let cert = self.certify(bits)?;
            match self.try_abs(a, &cert, prec) {
                Some(v) => return Ok(v),
                None => {
                    bits = cert.bits * 2;
                    if bits > MAX_BITS {
                        return Err(Error::PrecisionExhausted(prec));
                    }
                }
            }
        }
    }

    fn try_abs(&self, a: &QPoly, cert: &Certified, prec: u32) -> Option<Vec<(Real, u32)>> {
        let wp = 2 * cert.bits + 64;
        // Taylor coefficients a^(k)(z)/k! via repeated synthetic division
        let mut out = Vec::with_capacity(cert.centers.len());
        for (i, (re, im)) in cert.centers.iter().enumerate() {
            let z = CI { re: exact(re, wp), im: exact(im, wp) };
            let rho = exact(&cert.radii[i], wp);
            let mut coeffs: Vec<CI> = a.coeffs().iter().map(|c| CI::real(exact(c, wp))).collect();
            let mut taylor = Vec::new();
            while !coeffs.is_empty() {
                // divide by (x - z): remainder is the next Taylor coefficient
                let mut acc = CI::real(Real::zero(wp));
                let mut quo = Vec::with_capacity(coeffs.len());
                for c in coeffs.iter().rev() {
                    acc = acc.mul(&z).add(c);
                    quo.push(acc.clone());
                }
                let rem = quo.pop().unwrap();
                quo.reverse();
                taylor.push(rem);
                coeffs = quo;
            }
            if taylor.is_empty() {
                return None;
            }
            let center = taylor[0].abs();
            let mut err = Real::zero(wp);
            let mut rp = Real::one(wp);
            for t in taylor.iter().skip(1) {
                rp = rp.mul(&rho);
                err = err.add(&t.abs().mul(&rp));
            }
            let lo = center.sub(&err);
            if !lo.is_positive() {
                return None;
            }
            let hi = center.add(&err);
            let v = Real::from_bounds(&lo.lo(), &hi.hi(), prec);
            out.push((v, if i < cert.r1 { 1 } else { 2 }));
        }
        Some(out)
    }

    /// Interval enclosures of the roots as (re, im) pairs, one per place.
    pub fn root_enclosures(&self, prec: u32) -> Result<Vec<(Real, Real)>> {
        let cert = self.certify(prec + 32)?;
        Ok(cert
            .centers
            .iter()
            .zip(&cert.radii)
            .map(|((re, im), r)| {
                (Real::from_bounds(&(re - r), &(re + r), prec), Real::from_bounds(&(im - r), &(im + r), prec))
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::integer::rat;

    #[test]
    fn quadratic_roots() {
        let e = Embeddings::new(&ZPoly::from_ints(&[-2, 0, 1]));
        let r = e.root_enclosures(128).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].0.mid_f64() + 2f64.sqrt()).abs() < 1e-15);
        assert!((r[1].0.mid_f64() - 2f64.sqrt()).abs() < 1e-15);
        let g = Embeddings::new(&ZPoly::from_ints(&[1, 0, 1]));
        let r = g.root_enclosures(128).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].1.mid_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn abs_values_of_elements() {
        let e = Embeddings::new(&ZPoly::from_ints(&[-2, 0, 0, 1]));
        // a = 1 + θ with θ = cbrt 2
        let a = QPoly::new(vec![rat(1, 1), rat(1, 1)]);
        let v = e.abs_at_places(&a, 128).unwrap();
        assert_eq!(v.len(), 2);
        let c = 2f64.cbrt();
        assert!((v[0].0.mid_f64() - (1.0 + c)).abs() < 1e-14);
        assert_eq!(v[0].1, 1);
        assert_eq!(v[1].1, 2);
        // |1 + c ω|^2 * (1 + c) = N(1 + θ) = 3
        let prod = v[0].0.mul(&v[1].0.powi(2));
        assert!(prod.contains(&rat(3, 1)) || (prod.mid_f64() - 3.0).abs() < 1e-30);
        assert!(prod.radius() < rat(1, 1_000_000_000));
    }

    #[test]
    fn degree_eight_field() {
        let f = ZPoly::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let e = Embeddings::new(&f);
        let v = e.abs_at_places(&QPoly::new(vec![rat(0, 1), rat(1, 1)]), 128).unwrap();
        assert_eq!(v.len(), 4);
        for (x, d) in v {
            assert_eq!(d, 2);
            assert!(x.contains(&rat(1, 1)) || (x.mid_f64() - 1.0).abs() < 1e-20);
        }
    }
}
