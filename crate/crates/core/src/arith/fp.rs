//! Polynomials over a prime field F_p (p < 2^63) and their factorization.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

#[inline]
fn mm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mm(r, b, p);
        }
        b = mm(b, b, p);
        e >>= 1;
    }
    r
}

impl FpPoly {
    pub fn new(p: u64, c: Vec<u64>) -> Self {
        let mut c: Vec<u64> = c.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_i64(p: u64, c: &[i64]) -> Self {
        FpPoly::new(p, c.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect())
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + self.p - o.coeff(i)) % self.p).collect())
    }

    pub fn neg(&self) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|&a| (self.p - a) % self.p).collect())
    }

    pub fn scale(&self, a: u64) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|&x| mm(x, a, self.p)).collect())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        let small = p < (1 << 31);
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                if small {
                    acc[i + j] += a as u128 * b as u128;
                    if acc[i + j] >= 1 << 120 {
                        acc[i + j] %= p as u128;
                    }
                } else {
                    acc[i + j] = (acc[i + j] + mm(a, b, p) as u128) % p as u128;
                }
            }
        }
        FpPoly::new(p, acc.into_iter().map(|x| (x % p as u128) as u64).collect())
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let dd = d.c.len() - 1;
        let inv = inv_mod(d.lc(), p);
        let mut r = self.c.clone();
        let mut quo = vec![0u64; self.c.len() - dd];
        for k in (0..quo.len()).rev() {
            let t = mm(r[k + dd], inv, p);
            if t != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mm(t, b, p)) % p;
                }
            }
            quo[k] = t;
        }
        r.truncate(dd);
        (FpPoly::new(p, quo), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    pub fn exact_div(&self, d: &FpPoly) -> FpPoly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*o = g monic.
    pub fn xgcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| mm(a, i as u64 % self.p, self.p)).collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0;
        for &a in self.c.iter().rev() {
            acc = (mm(acc, x, self.p) + a) % self.p;
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// g with g^p = self, assuming self' = 0.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    /// Squarefree decomposition of a monic polynomial.
    pub fn squarefree_decomposition(&self) -> Vec<(FpPoly, u32)> {
        let p = self.p;
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree() < 1 {
            return out;
        }
        let fd = f.derivative();
        if fd.is_zero() {
            for (g, m) in f.pth_root().squarefree_decomposition() {
                out.push((g, m * p as u32));
            }
            return out;
        }
        let mut c = f.gcd(&fd);
        let mut w = f.exact_div(&c);
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.exact_div(&y);
            if fac.degree() > 0 {
                out.push((fac, i));
            }
            w = y;
            c = c.exact_div(&w);
            i += 1;
        }
        if c.degree() > 0 {
            for (g, m) in c.pth_root().squarefree_decomposition() {
                out.push((g, m * p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    fn distinct_degree(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = FpPoly::x(p);
        let pe = BigUint::from(p);
        let mut h = x.clone();
        let mut d = 1;
        while f.degree() >= 2 * d as isize {
            h = h.pow_mod(&pe, &f);
            let g = h.sub(&x).gcd(&f);
            if !g.is_one() {
                f = f.exact_div(&g);
                h = h.rem(&f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.degree() > 0 {
            let dd = f.degree() as usize;
            out.push((f, dd));
        }
        out
    }

    /// Splits a monic squarefree product of degree-`d` irreducibles.
    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
        let n = self.degree() as usize;
        if n == d {
            out.push(self.clone());
            return;
        }
        let p = self.p;
        let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
        loop {
            let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.degree() < 1 {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(nd-1)) mod f
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                a.pow_mod(&exp, self).sub(&FpPoly::one(p))
            };
            let g = b.gcd(self);
            if g.degree() > 0 && g.degree() < n as isize {
                let h = self.exact_div(&g);
                g.equal_degree(d, rng, out);
                h.equal_degree(d, rng, out);
                return;
            }
        }
    }

    /// Monic irreducible factors with multiplicities, sorted canonically.
    pub fn factor(&self) -> Vec<(FpPoly, u32)> {
        assert!(!self.is_zero(), "cannot factor the zero polynomial");
        let mut rng = ChaCha8Rng::seed_from_u64(self.p ^ (self.c.len() as u64).rotate_left(32));
        let mut out = Vec::new();
        for (g, m) in self.squarefree_decomposition() {
            for (h, d) in g.distinct_degree() {
                let mut pieces = Vec::new();
                h.equal_degree(d, &mut rng, &mut pieces);
                out.extend(pieces.into_iter().map(|q| (q, m)));
            }
        }
        out.sort_by(|a, b| a.0.canonical_key().cmp(&b.0.canonical_key()));
        out
    }

    fn canonical_key(&self) -> (usize, Vec<u64>) {
        (self.c.len(), self.c.clone())
    }

    pub fn is_irreducible(&self) -> bool {
        let f = self.factor();
        f.len() == 1 && f[0].1 == 1
    }

    /// Number of distinct roots in an algebraic closure.
    pub fn distinct_root_count(&self) -> usize {
        self.squarefree_decomposition().iter().map(|(g, _)| g.degree() as usize).sum()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            parts.push(match (i, a) {
                (0, _) => a.to_string(),
                (1, 1) => var.to_string(),
                (1, _) => format!("{a}*{var}"),
                (_, 1) => format!("{var}^{i}"),
                _ => format!("{a}*{var}^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.fmt_var("x"), self.p)
    }
}

/// Factorization of `f` over F_p; `f` given by integer coefficients.
pub fn factor_poly_mod_p(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    f.factor()
}
