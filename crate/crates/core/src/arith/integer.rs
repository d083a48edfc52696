//! Integer factorization, primality, and p-adic orders.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 20;

static EFFORT_CAP: AtomicU64 = AtomicU64::new(20_000_000);
static BIT_CAP: AtomicU64 = AtomicU64::new(512);

/// Sets the process-wide Pollard-rho iteration budget and input bit cap.
pub fn set_factor_caps(effort: u64, bits: u64) {
    EFFORT_CAP.store(effort.max(1), Ordering::Relaxed);
    BIT_CAP.store(bits.max(1), Ordering::Relaxed);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeCertificate {
    TrialDivision,
    MillerRabin,
    Bpsw,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntFactorization {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
    pub certificates: Vec<PrimeCertificate>,
}

impl IntFactorization {
    pub fn reconstruct(&self) -> BigInt {
        let mut n = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            n *= p.pow(*e);
        }
        n
    }

    pub fn primes(&self) -> Vec<BigInt> {
        self.factors.iter().map(|(p, _)| p.clone()).collect()
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> BigInt {
        self.factors.iter().fold(BigInt::one(), |acc, (p, _)| acc * p)
    }
}

pub fn small_primes() -> &'static [u32] {
    static P: OnceLock<Vec<u32>> = OnceLock::new();
    P.get_or_init(|| primes_up_to(TRIAL_LIMIT).into_iter().map(|p| p as u32).collect())
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    let mut limit = 64u64;
    loop {
        let ps = primes_up_to(limit);
        if ps.len() >= count {
            return ps[..count].to_vec();
        }
        limit *= 2;
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

fn mr_u64(n: u64, a: u64) -> bool {
    let d0 = n - 1;
    let s = d0.trailing_zeros();
    let d = d0 >> s;
    let mut x = powmod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mulmod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37].iter().all(|&a| mr_u64(n, a))
}

fn mr_big(n: &BigInt, a: &BigInt) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x = x.mod_floor(n);
    if x.is_odd() {
        (x + n) >> 1
    } else {
        x >> 1
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigInt) -> bool {
    let r = n.sqrt();
    if &r * &r == *n {
        return false;
    }
    let mut d = 5i64;
    loop {
        let j = jacobi(&BigInt::from(d), n);
        if j == -1 {
            break;
        }
        if j == 0 && BigInt::from(d.abs()) != *n {
            return false;
        }
        d = if d > 0 { -(d + 2) } else { -(d - 2) };
    }
    let dd = BigInt::from(d);
    let p = BigInt::one();
    let q = BigInt::from((1 - d) / 4);
    let np1: BigInt = n + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;
    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = q.mod_floor(n);
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - &qk * 2u32).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if k.bit(i) {
            let nu = half_mod(&p * &u + &v, n);
            let nv = half_mod(&dd * &u + &p * &v, n);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * 2u32).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Primality with the certificate kind that decided it.
pub fn prime_certificate(n: &BigInt) -> Option<PrimeCertificate> {
    if n < &BigInt::from(2) {
        return None;
    }
    if let Some(m) = n.to_u64() {
        if m < TRIAL_LIMIT * TRIAL_LIMIT {
            // every prime factor would be below the trial limit
            let r = m.sqrt();
            for &p in small_primes() {
                let p = p as u64;
                if p > r {
                    break;
                }
                if m % p == 0 {
                    return None;
                }
            }
            return Some(PrimeCertificate::TrialDivision);
        }
        return is_prime_u64(m).then_some(PrimeCertificate::MillerRabin);
    }
    for &p in &small_primes()[..64] {
        if (n % p).is_zero() {
            return None;
        }
    }
    let det_bound: BigInt = "3317044064679887385961981".parse().unwrap();
    if n < &det_bound {
        let ok = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41]
            .iter()
            .all(|&a| mr_big(n, &BigInt::from(a)));
        return ok.then_some(PrimeCertificate::MillerRabin);
    }
    (mr_big(n, &BigInt::from(2)) && strong_lucas(n)).then_some(PrimeCertificate::Bpsw)
}

pub fn is_prime(n: &BigInt) -> bool {
    prime_certificate(n).is_some()
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn rho_u64(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mulmod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let mut x = y;
    let mut ys = y;
    let m = 64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mulmod(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if r * r == n {
        split_u64(r, out);
        split_u64(r, out);
        return;
    }
    let mut c = 1;
    loop {
        if let Some(d) = rho_u64(n, c) {
            split_u64(d, out);
            split_u64(n / d, out);
            return;
        }
        c += 1;
    }
}

/// Factorization of a positive machine integer, primes ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n <= 1 {
        return out;
    }
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        if n < TRIAL_LIMIT * TRIAL_LIMIT {
            out.push((n, 1));
        } else {
            let mut ps = Vec::new();
            split_u64(n, &mut ps);
            ps.sort_unstable();
            for p in ps {
                match out.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => out.push((p, 1)),
                }
            }
        }
    }
    out
}

fn rho_big(n: &BigInt, c: u64, budget: &mut u64) -> Option<BigInt> {
    let cc = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &cc) % n;
    let mut y = BigInt::from(2);
    let mut r: u64 = 1;
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 128u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = m.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            if *budget < steps {
                return None;
            }
            *budget -= steps;
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

fn split_big(n: BigInt, budget: &mut u64, out: &mut Vec<BigInt>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if let Some(m) = n.to_u64() {
        for (p, e) in factor_u64(m) {
            for _ in 0..e {
                out.push(BigInt::from(p));
            }
        }
        return Ok(());
    }
    if is_prime(&n) {
        out.push(n);
        return Ok(());
    }
    let r = n.sqrt();
    if &r * &r == n {
        split_big(r.clone(), budget, out)?;
        return split_big(r, budget, out);
    }
    let mut c = 1;
    loop {
        if *budget == 0 {
            return Err(Error::FactorTimeout(format!("{}-bit cofactor", n.bits())));
        }
        if let Some(d) = rho_big(&n, c, budget) {
            let other = &n / &d;
            split_big(d, budget, out)?;
            return split_big(other, budget, out);
        }
        c += 1;
    }
}

/// Complete factorization of a nonzero integer.
pub fn factor_integer(n: &BigInt) -> Result<IntFactorization> {
    if n.is_zero() {
        return Err(Error::InvalidInput("cannot factor 0".into()));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let cap = BIT_CAP.load(Ordering::Relaxed);
    if m.bits() > cap {
        return Err(Error::FactorTimeout(format!("{}-bit input exceeds the {cap}-bit cap", m.bits())));
    }
    let mut primes: Vec<BigInt> = Vec::new();
    if let Some(s) = m.to_u64() {
        for (p, e) in factor_u64(s) {
            for _ in 0..e {
                primes.push(BigInt::from(p));
            }
        }
    } else {
        for &p in small_primes() {
            let pb = BigInt::from(p);
            if &pb * &pb > m {
                break;
            }
            while (&m % p).is_zero() {
                m /= p;
                primes.push(pb.clone());
            }
        }
        let mut budget = EFFORT_CAP.load(Ordering::Relaxed);
        split_big(m, &mut budget, &mut primes)?;
    }
    primes.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    let certificates = factors
        .iter()
        .map(|(p, _)| prime_certificate(p).expect("factor passed primality"))
        .collect();
    Ok(IntFactorization { sign, factors, certificates })
}

/// Distinct prime divisors of a nonzero integer.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    Ok(factor_integer(n)?.primes())
}

/// ord_p(n) for n != 0.
pub fn ord_p(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

pub fn rat_ord_p(q: &BigRational, p: &BigInt) -> i64 {
    ord_p(q.numer(), p) as i64 - ord_p(q.denom(), p) as i64
}

/// True when every prime factor of `n` lies in `primes`.
pub fn is_smooth(n: &BigInt, primes: &[BigInt]) -> bool {
    if n.is_zero() {
        return false;
    }
    let mut m = n.abs();
    for p in primes {
        while (&m % p).is_zero() {
            m /= p;
        }
    }
    m.is_one()
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial(n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if m > 1 {
            out.push((m, 1));
        }
        out
    }

    #[test]
    fn spec_examples() {
        let f = factor_integer(&int(60)).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(f.factors, vec![(int(2), 2), (int(3), 1), (int(5), 1)]);
        let f = factor_integer(&int(-1)).unwrap();
        assert_eq!((f.sign, f.factors.len()), (-1, 0));
        let f = factor_integer(&int(6436341)).unwrap();
        assert_eq!(f.factors, vec![(int(3), 10), (int(109), 1)]);
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in (1u64..20_000).chain((1_000_000u64 - 3000)..1_000_000) {
            let f = factor_integer(&int(n as i64)).unwrap();
            let expected: Vec<(BigInt, u32)> = trial(n).into_iter().map(|(p, e)| (int(p as i64), e)).collect();
            assert_eq!(f.factors, expected, "n = {n}");
            assert_eq!(f.reconstruct(), int(n as i64));
        }
    }

    #[test]
    fn large_composites_split() {
        let p: BigInt = "2147483647".parse().unwrap();
        let q: BigInt = "1000000007".parse().unwrap();
        let r: BigInt = "4294967311".parse().unwrap();
        let n = &p * &q * &r * &r;
        let f = factor_integer(&n).unwrap();
        assert_eq!(f.reconstruct(), n);
        assert_eq!(f.factors.len(), 3);
        let big: BigInt = "170141183460469231731687303715884105727".parse().unwrap();
        assert_eq!(prime_certificate(&big), Some(PrimeCertificate::Bpsw));
        let carmichael = int(561);
        assert!(!is_prime(&carmichael));
        let psp: BigInt = "3825123056546413051".parse().unwrap();
        assert!(!is_prime(&psp));
    }

    #[test]
    fn lucas_rejects_strong_pseudoprimes_to_base_two() {
        // 2047 = 23 * 89 passes Miller-Rabin to base 2
        assert!(mr_big(&int(2047), &int(2)));
        assert!(!strong_lucas(&int(2047)));
        assert!(strong_lucas(&int(1_000_003)));
    }

    #[test]
    fn jacobi_small_table() {
        assert_eq!(jacobi(&int(2), &int(7)), 1);
        assert_eq!(jacobi(&int(3), &int(7)), -1);
        assert_eq!(jacobi(&int(-1), &int(5)), 1);
        assert_eq!(jacobi(&int(5), &int(15)), 0);
    }

    #[test]
    fn orders() {
        assert_eq!(ord_p(&int(-48), &int(2)), 4);
        assert_eq!(rat_ord_p(&rat(1, 2), &int(2)), -1);
        assert!(is_smooth(&int(-96), &[int(2), int(3)]));
        assert!(!is_smooth(&int(10), &[int(2), int(3)]));
    }
}
