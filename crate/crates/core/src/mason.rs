//! Mason's theorem over k[t] for k = Q or F_p: radicals, degree heights,
//! and exhaustive or random sweeps.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::fp::{inv_mod, FpPoly};
use crate::arith::poly::QPoly;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Q,
    Fp(u64),
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Q => write!(f, "Q"),
            Base::Fp(p) => write!(f, "F{p}"),
        }
    }
}

impl Base {
    pub fn parse(s: &str) -> Result<Base> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Base::Q);
        }
        let digits = t.trim_start_matches(['F', 'f']).trim_start_matches('_');
        let p: u64 = digits.parse().map_err(|_| Error::InvalidInput(format!("unknown base field {s:?}")))?;
        if !crate::arith::integer::is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(Base::Fp(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FFPoly {
    Q(QPoly),
    Fp(FpPoly),
}

impl FFPoly {
    /// Reduces a rational polynomial into the given base.
    pub fn from_q(f: &QPoly, base: Base) -> Result<FFPoly> {
        match base {
            Base::Q => Ok(FFPoly::Q(f.clone())),
            Base::Fp(p) => {
                let pb = BigInt::from(p);
                let mut c = Vec::with_capacity(f.coeffs().len());
                for a in f.coeffs() {
                    let d = a.denom().mod_floor(&pb);
                    if d.is_zero() {
                        return Err(Error::InvalidInput(format!("coefficient {a} has denominator divisible by {p}")));
                    }
                    let n = a.numer().mod_floor(&pb).to_u64().unwrap();
                    c.push(n * inv_mod(d.to_u64().unwrap(), p) % p);
                }
                Ok(FFPoly::Fp(FpPoly::new(p, c)))
            }
        }
    }

    pub fn base(&self) -> Base {
        match self {
            FFPoly::Q(_) => Base::Q,
            FFPoly::Fp(f) => Base::Fp(f.modulus()),
        }
    }

    pub fn degree(&self) -> isize {
        match self {
            FFPoly::Q(f) => f.degree(),
            FFPoly::Fp(f) => f.degree(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FFPoly::Q(f) => f.is_zero(),
            FFPoly::Fp(f) => f.is_zero(),
        }
    }

    fn same(&self, o: &FFPoly) -> Result<()> {
        if self.base() != o.base() {
            return Err(Error::InvalidInput(format!("mixed bases {} and {}", self.base(), o.base())));
        }
        Ok(())
    }

    pub fn add(&self, o: &FFPoly) -> Result<FFPoly> {
        self.same(o)?;
        Ok(match (self, o) {
            (FFPoly::Q(a), FFPoly::Q(b)) => FFPoly::Q(a.add(b)),
            (FFPoly::Fp(a), FFPoly::Fp(b)) => FFPoly::Fp(a.add(b)),
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, o: &FFPoly) -> Result<FFPoly> {
        self.same(o)?;
        Ok(match (self, o) {
            (FFPoly::Q(a), FFPoly::Q(b)) => FFPoly::Q(a.mul(b)),
            (FFPoly::Fp(a), FFPoly::Fp(b)) => FFPoly::Fp(a.mul(b)),
            _ => unreachable!(),
        })
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FFPoly) -> Result<FFPoly> {
        self.same(o)?;
        Ok(match (self, o) {
            (FFPoly::Q(a), FFPoly::Q(b)) => FFPoly::Q(a.gcd(b)),
            (FFPoly::Fp(a), FFPoly::Fp(b)) => FFPoly::Fp(a.gcd(b)),
            _ => unreachable!(),
        })
    }

    pub fn derivative(&self) -> FFPoly {
        match self {
            FFPoly::Q(f) => FFPoly::Q(f.derivative()),
            FFPoly::Fp(f) => FFPoly::Fp(f.derivative()),
        }
    }

    pub fn monic(&self) -> FFPoly {
        match self {
            FFPoly::Q(f) => FFPoly::Q(f.monic()),
            FFPoly::Fp(f) => FFPoly::Fp(f.monic()),
        }
    }
}

impl fmt::Display for FFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FFPoly::Q(g) => write!(f, "{}", g.fmt_var("t")),
            FFPoly::Fp(g) => write!(f, "{}", g.fmt_var("t")),
        }
    }
}

/// Monic squarefree part. In characteristic p the Frobenius part is
/// handled by p-th root extraction inside the squarefree decomposition.
pub fn poly_radical(f: &FFPoly) -> Result<FFPoly> {
    if f.is_zero() {
        return Err(Error::InvalidInput("radical of the zero polynomial".into()));
    }
    Ok(match f {
        FFPoly::Q(g) => FFPoly::Q(g.squarefree_part()),
        FFPoly::Fp(g) => {
            let p = g.modulus();
            FFPoly::Fp(g.squarefree_decomposition().into_iter().fold(FpPoly::one(p), |acc, (h, _)| acc.mul(&h)))
        }
    })
}

pub fn radical_degree(f: &FFPoly) -> Result<usize> {
    Ok(poly_radical(f)?.degree().max(0) as usize)
}

/// h(a_0 : … : a_n) on P¹ over k(t): Σ over places of −min v, which for
/// polynomial coordinates is max deg − deg gcd.
pub fn ff_height(coords: &[FFPoly]) -> Result<usize> {
    let nz: Vec<&FFPoly> = coords.iter().filter(|c| !c.is_zero()).collect();
    let first = nz.first().ok_or(Error::ZeroCoordinate)?;
    let mut g = (*first).clone();
    for c in &nz[1..] {
        g = g.gcd(c)?;
    }
    let top = nz.iter().map(|c| c.degree()).max().unwrap();
    Ok((top - g.degree()) as usize)
}

#[derive(Clone, Debug)]
pub struct FFTriple {
    pub a: FFPoly,
    pub b: FFPoly,
    pub c: FFPoly,
}

impl FFTriple {
    pub fn new(a: FFPoly, b: FFPoly, c: FFPoly) -> Result<FFTriple> {
        a.same(&b)?;
        a.same(&c)?;
        if a.add(&b)? != c {
            return Err(Error::InvalidInput(format!("{a} + {b} != {c}")));
        }
        if [&a, &b, &c].iter().all(|x| x.degree() <= 0) {
            return Err(Error::InvalidInput("all three polynomials are constant".into()));
        }
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::ZeroCoordinate);
        }
        Ok(FFTriple { a, b, c })
    }

    pub fn base(&self) -> Base {
        self.a.base()
    }
}

impl fmt::Display for FFTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}) over {}", self.a, self.b, self.c, self.base())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasonReport {
    pub applicable: bool,
    pub reason: Option<String>,
    pub max_deg: usize,
    pub rad_deg: usize,
    pub holds: bool,
    pub slack: i64,
}

impl MasonReport {
    pub fn to_json(&self) -> Value {
        json!({
            "applicable": self.applicable,
            "reason": self.reason,
            "max_deg": self.max_deg,
            "rad_deg": self.rad_deg,
            "holds": self.holds,
            "slack": self.slack,
        })
    }
}

pub fn mason_check(t: &FFTriple) -> Result<MasonReport> {
    if t.a.gcd(&t.b)?.degree() > 0 {
        return Err(Error::InvariantViolated(format!("{} and {} are not coprime", t.a, t.b)));
    }
    let max_deg = [&t.a, &t.b, &t.c].iter().map(|x| x.degree()).max().unwrap() as usize;
    let rad_deg = radical_degree(&t.a.mul(&t.b)?.mul(&t.c)?)?;
    let slack = rad_deg as i64 - 1 - max_deg as i64;
    let frobenius = matches!(t.base(), Base::Fp(_)) && [&t.a, &t.b, &t.c].iter().all(|x| x.derivative().is_zero());
    if frobenius {
        return Ok(MasonReport {
            applicable: false,
            reason: Some("a' = b' = c' = 0".into()),
            max_deg,
            rad_deg,
            holds: slack >= 0,
            slack,
        });
    }
    Ok(MasonReport { applicable: true, reason: None, max_deg, rad_deg, holds: slack >= 0, slack })
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub base: String,
    pub max_deg: usize,
    /// Ordered pairs (a, b) visited after scaling a to be monic.
    pub pairs: u64,
    /// Pairs given the full exact check.
    pub checked: u64,
    pub applicable: u64,
    pub inapplicable: u64,
    pub violations: Vec<String>,
    /// Slack counts over fully checked applicable instances.
    pub slack_hist: BTreeMap<i64, u64>,
}

impl SweepReport {
    fn merge(mut self, o: SweepReport) -> SweepReport {
        self.pairs += o.pairs;
        self.checked += o.checked;
        self.applicable += o.applicable;
        self.inapplicable += o.inapplicable;
        self.violations.extend(o.violations);
        for (k, v) in o.slack_hist {
            *self.slack_hist.entry(k).or_default() += v;
        }
        self
    }

    fn record(&mut self, t: &FFTriple, r: &MasonReport) {
        self.checked += 1;
        if !r.applicable {
            self.inapplicable += 1;
            return;
        }
        self.applicable += 1;
        *self.slack_hist.entry(r.slack).or_default() += 1;
        if !r.holds {
            self.violations.push(t.to_string());
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "base": self.base,
            "max_deg": self.max_deg,
            "pairs": self.pairs,
            "checked": self.checked,
            "applicable": self.applicable,
            "inapplicable": self.inapplicable,
            "violations": self.violations,
            "slack_hist": self.slack_hist.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
        })
    }

    pub fn csv_rows(&self) -> Vec<[String; 4]> {
        self.slack_hist
            .iter()
            .map(|(k, v)| [self.base.clone(), self.max_deg.to_string(), k.to_string(), v.to_string()])
            .collect()
    }
}

fn fp_from_index(mut idx: usize, p: u64, len: usize) -> FpPoly {
    let mut c = Vec::with_capacity(len);
    for _ in 0..len {
        c.push((idx % p as usize) as u64);
        idx /= p as usize;
    }
    FpPoly::new(p, c)
}

/// Every pair (a, b) of polynomials of degree ≤ `max_deg` over F_p with a
/// monic (scaling is a symmetry of the statement) and c = a + b ≠ 0.
///
/// With `full` each coprime pair gets the exact check. Otherwise the sum
/// deg rad a + deg rad b + deg rad c, which equals deg rad(abc) for
/// coprime triples, screens pairs first and only those with slack ≤ 0
/// are checked exactly.
pub fn sweep_fp(p: u64, max_deg: usize, full: bool) -> Result<SweepReport> {
    if !crate::arith::integer::is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let len = max_deg + 1;
    let n = (p as usize).checked_pow(len as u32).filter(|&n| n <= 1 << 26).ok_or(Error::BudgetExceeded)?;
    let polys: Vec<FpPoly> = (0..n).map(|i| fp_from_index(i, p, len)).collect();
    let deg: Vec<i8> = polys.iter().map(|f| f.degree() as i8).collect();
    let rd: Vec<i8> = polys
        .par_iter()
        .map(|f| if f.is_zero() { -1 } else { radical_degree(&FFPoly::Fp(f.clone())).unwrap() as i8 })
        .collect();
    let pw: Vec<usize> = (0..len).map(|i| (p as usize).pow(i as u32)).collect();
    let base = Base::Fp(p);
    let monic_a: Vec<usize> = (1..n).filter(|&i| polys[i].lc() == 1).collect();
    let rep = monic_a
        .par_iter()
        .map(|&a| {
            let mut rep = SweepReport::default();
            let ad: Vec<usize> = (0..len).map(|i| (a / pw[i]) % p as usize).collect();
            let mut bd = vec![0usize; len];
            let mut c = a;
            for b in 0..n {
                if b != 0 && c != 0 {
                    rep.pairs += 1;
                    let md = deg[a].max(deg[b]).max(deg[c]);
                    if md > 0 && (full || rd[a] + rd[b] + rd[c] <= md + 1) {
                        let t = FFTriple {
                            a: FFPoly::Fp(polys[a].clone()),
                            b: FFPoly::Fp(polys[b].clone()),
                            c: FFPoly::Fp(polys[c].clone()),
                        };
                        if polys[a].gcd(&polys[b]).degree() == 0 {
                            let r = mason_check(&t).expect("coprime");
                            rep.record(&t, &r);
                        }
                    }
                }
                for i in 0..len {
                    let old = (ad[i] + bd[i]) % p as usize;
                    bd[i] += 1;
                    if bd[i] == p as usize {
                        bd[i] = 0;
                    }
                    let new = (ad[i] + bd[i]) % p as usize;
                    c = c + new * pw[i] - old * pw[i];
                    if bd[i] != 0 {
                        break;
                    }
                }
            }
            rep
        })
        .reduce(SweepReport::default, SweepReport::merge);
    Ok(SweepReport { base: base.to_string(), max_deg, ..rep })
}

fn random_qpoly(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> QPoly {
    let d = rng.gen_range(0..=max_deg);
    let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
    if c[d] == 0 {
        c[d] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    QPoly::from_ints(&c)
}

/// Random coprime triples a + b = c over Q with integer coefficients in
/// [−bound, bound] and degrees ≤ `max_deg`.
pub fn random_q_triples(count: usize, max_deg: usize, bound: i64, seed: u64) -> Vec<FFTriple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = random_qpoly(&mut rng, max_deg, bound);
        let b = random_qpoly(&mut rng, max_deg, bound);
        let c = a.add(&b);
        if a.is_zero() || b.is_zero() || c.is_zero() || (a.degree() <= 0 && b.degree() <= 0) {
            continue;
        }
        if a.gcd(&b).degree() > 0 {
            continue;
        }
        out.push(FFTriple { a: FFPoly::Q(a), b: FFPoly::Q(b), c: FFPoly::Q(c) });
    }
    out
}

pub fn sweep_q_random(count: usize, max_deg: usize, bound: i64, seed: u64) -> Result<SweepReport> {
    let triples = random_q_triples(count, max_deg, bound, seed);
    let rep = triples
        .par_iter()
        .map(|t| {
            let mut rep = SweepReport { pairs: 1, ..Default::default() };
            let r = mason_check(t).expect("coprime by construction");
            rep.record(t, &r);
            rep
        })
        .reduce(SweepReport::default, SweepReport::merge);
    Ok(SweepReport { base: "Q".into(), max_deg, ..rep })
}

pub fn q_coeff(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
