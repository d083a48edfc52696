//! Factorization over Q: squarefree decomposition, then Zassenhaus
//! (factor mod p, Hensel lift, recombine).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::FpPoly;
use super::integer::small_primes;
use super::poly::{QPoly, ZPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFactorization {
    /// Rational unit with `f = unit * prod g_i^e_i`.
    pub unit: BigRational,
    /// Primitive irreducible factors with positive leading coefficient.
    pub factors: Vec<(ZPoly, u32)>,
}

impl QFactorization {
    pub fn reconstruct(&self) -> QPoly {
        let mut acc = QPoly::constant(self.unit.clone());
        for (g, e) in &self.factors {
            acc = acc.mul(&g.to_q().pow(*e));
        }
        acc
    }
}

pub fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (mut r0, mut r1) = (a.mod_floor(m), m.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
    }
    r0.is_one().then(|| s0.mod_floor(m))
}

fn fp_to_z(f: &FpPoly) -> ZPoly {
    ZPoly::new(f.coeffs().iter().map(|&a| BigInt::from(a)).collect())
}

fn z_to_fp(f: &ZPoly, p: u64) -> FpPoly {
    f.reduce_mod(p)
}

/// Lifts `f ≡ a*b (mod p)` to `f ≡ A*B (mod p^k)`; `f`, `a`, `b` monic.
fn hensel_pair(f: &ZPoly, a: &FpPoly, b: &FpPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, s, t) = a.xgcd(b);
    let pb = BigInt::from(p);
    let mut big_a = fp_to_z(a);
    let mut big_b = fp_to_z(b);
    let mut m = pb.clone();
    for _ in 1..k {
        let next = &m * &pb;
        let e = f.sub(&big_a.mul(&big_b)).mod_positive(&next);
        let e = ZPoly::new(e.coeffs().iter().map(|x| x / &m).collect());
        let ep = z_to_fp(&e, p);
        let alpha = t.mul(&ep).rem(a);
        let beta = s.mul(&ep).rem(b);
        big_a = big_a.add(&fp_to_z(&alpha).scale(&m)).mod_positive(&next);
        big_b = big_b.add(&fp_to_z(&beta).scale(&m)).mod_positive(&next);
        m = next;
    }
    (big_a, big_b)
}

fn multi_lift(f: &ZPoly, facs: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    if facs.len() == 1 {
        return vec![f.clone()];
    }
    let mid = facs.len() / 2;
    let prod = |fs: &[FpPoly]| fs.iter().fold(FpPoly::one(p), |acc, g| acc.mul(g));
    let a = prod(&facs[..mid]);
    let b = prod(&facs[mid..]);
    let (big_a, big_b) = hensel_pair(f, &a, &b, p, k);
    let mut out = multi_lift(&big_a, &facs[..mid], p, k);
    out.extend(multi_lift(&big_b, &facs[mid..], p, k));
    out
}

fn combinations(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, s, &mut Vec::new(), &mut out);
    out
}

/// Picks a prime of good reduction giving few modular factors.
fn choose_prime(f: &ZPoly) -> (u64, Vec<FpPoly>) {
    let lc = f.lc();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for &p in small_primes().iter().skip(1) {
        let p = p as u64;
        if (&lc % p).is_zero() {
            continue;
        }
        let fp = z_to_fp(f, p);
        if fp.degree() != f.degree() || fp.gcd(&fp.derivative()).degree() > 0 {
            continue;
        }
        let facs: Vec<FpPoly> = fp.factor().into_iter().map(|(g, _)| g).collect();
        if facs.len() == 1 {
            return (p, facs);
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    best.expect("a squarefree polynomial has good primes")
}

fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.degree();
    if n <= 1 {
        return vec![f.primitive()];
    }
    if f.coeff(0).is_zero() {
        let rest = f.div_exact(&ZPoly::x()).unwrap();
        let mut out = vec![ZPoly::x()];
        out.extend(zassenhaus(&rest));
        return out;
    }
    let (p, facs) = choose_prime(f);
    if facs.len() == 1 {
        return vec![f.primitive()];
    }
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let bound = f.lc().abs() * (BigInt::one() << (n as u64)) * (norm2.sqrt() + 1);
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= &bound * 2 {
        pk *= &pb;
        k += 1;
    }
    let lc_inv = modinv(&f.lc(), &pk).unwrap();
    let monic = f.scale(&lc_inv).mod_positive(&pk);
    let mut lifted = multi_lift(&monic, &facs, p, k);
    let mut out = Vec::new();
    let mut cur = f.clone();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = None;
        for subset in combinations(lifted.len(), s) {
            let lc = cur.lc();
            let mut g = ZPoly::constant(lc.clone());
            for &i in &subset {
                g = g.mul(&lifted[i]).mod_symmetric(&pk);
            }
            let g = g.primitive();
            if let Some(qq) = cur.div_exact(&g) {
                found = Some((subset, g, qq));
                break;
            }
        }
        match found {
            Some((subset, g, qq)) => {
                out.push(g);
                cur = qq;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, h)| h)
                    .collect();
            }
            None => s += 1,
        }
    }
    if cur.degree() > 0 {
        out.push(cur.primitive());
    }
    out
}

fn canonical(v: &mut [(ZPoly, u32)]) {
    v.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())).then(a.1.cmp(&b.1)));
}

pub fn factor_over_q(f: &QPoly) -> QFactorization {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let (unit, z) = f.content_primitive();
    let mut factors = Vec::new();
    if z.degree() >= 1 {
        for (g, m) in z.to_q().squarefree_decomposition() {
            let (_, gz) = g.content_primitive();
            for h in zassenhaus(&gz) {
                factors.push((h, m));
            }
        }
    }
    canonical(&mut factors);
    QFactorization { unit, factors }
}

pub fn factor_zpoly(f: &ZPoly) -> QFactorization {
    factor_over_q(&f.to_q())
}

pub fn is_irreducible_over_q(f: &ZPoly) -> bool {
    if f.degree() < 1 {
        return false;
    }
    let fac = factor_zpoly(f);
    fac.factors.len() == 1 && fac.factors[0].1 == 1
}

/// Distinct rational roots, ascending.
pub fn rational_roots(f: &QPoly) -> Vec<BigRational> {
    let mut roots: Vec<BigRational> = factor_over_q(f)
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == 1)
        .map(|(g, _)| BigRational::new(-g.coeff(0), g.coeff(1)))
        .collect();
    roots.sort();
    roots
}

/// Small-prime sanity guard used by callers that want a cheap proof of
/// irreducibility before running the full factorization.
pub fn irreducible_mod_some_prime(f: &ZPoly, tries: usize) -> bool {
    let lc = f.lc();
    small_primes()
        .iter()
        .take(tries)
        .map(|&p| p as u64)
        .filter(|p| !(&lc % *p).is_zero())
        .any(|p| {
            let fp = z_to_fp(f, p);
            fp.degree() == f.degree() && fp.is_irreducible()
        })
}

pub fn to_u64_prime(p: &BigInt) -> Option<u64> {
    p.to_u64().filter(|&x| x < (1u64 << 62))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_ints(c)
    }

    #[test]
    fn combinations_enumerate_all() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(5, 1).len(), 5);
    }

    #[test]
    fn factors_products_of_known_irreducibles() {
        let a = z(&[1, 0, 1]);
        let b = z(&[-2, 0, 0, 1]);
        let c = z(&[3, -1]);
        let f = a.mul(&b).mul(&c).mul(&c);
        let fac = factor_zpoly(&f);
        assert_eq!(fac.reconstruct(), f.to_q());
        let degs: Vec<(isize, u32)> = fac.factors.iter().map(|(g, e)| (g.degree(), *e)).collect();
        assert_eq!(degs, vec![(1, 2), (2, 1), (3, 1)]);
        assert_eq!(fac.unit, BigRational::one());
    }

    #[test]
    fn swinnerton_dyer_style_polynomial_is_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime into degree <= 2 pieces
        let f = z(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible_over_q(&f));
        let g = z(&[1, 0, 1]).mul(&z(&[1, 1, 1]));
        assert!(!is_irreducible_over_q(&g));
    }

    #[test]
    fn non_monic_and_rational_roots() {
        let f = z(&[-3, 8]).mul(&z(&[5, 3])).mul(&z(&[1, 0, 2]));
        let fac = factor_zpoly(&f);
        assert_eq!(fac.factors.len(), 3);
        let roots = rational_roots(&f.to_q());
        assert_eq!(roots, vec![BigRational::new((-5).into(), 3.into()), BigRational::new(3.into(), 8.into())]);
    }

    #[test]
    fn cyclotomic_x12_minus_1() {
        let f = ZPoly::from_ints(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let fac = factor_zpoly(&f);
        assert_eq!(fac.factors.len(), 6);
        assert_eq!(fac.reconstruct(), f.to_q());
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(modinv(&BigInt::from(3), &BigInt::from(7)), Some(BigInt::from(5)));
        assert_eq!(modinv(&BigInt::from(6), &BigInt::from(9)), None);
    }
}
