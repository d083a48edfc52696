//! Bound functions B(u, v, w, z, d): an expression algebra with certified
//! interval evaluation, the built-in profiles, the two cover combinators,
//! the Σ and discriminant lemma checkers, and corpus reports.
//!
//! Variables: u = Σ_T, v = card T, w = max P(T), z = log D_L, d = [L:Q].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::abc::ABCTriple;
use crate::arith::field::{DiscProvenance, Field};
use crate::arith::integer::{first_primes, prime_divisors};
use crate::heights::{proj_height, radical, Decision, LogQuantity, PlaceSet};
use crate::real::Real;
use crate::{Error, Result};

/// Smallest two-decimal value above `min_c0(10^5)`.
pub const DEFAULT_C0: (i64, i64) = (139, 100);

pub fn default_c0() -> BigRational {
    BigRational::new(DEFAULT_C0.0.into(), DEFAULT_C0.1.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    U,
    V,
    W,
    Z,
    D,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::U, Var::V, Var::W, Var::Z, Var::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["u", "v", "w", "z", "d"][self.index()]
    }

    pub fn parse(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

mod rat_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

/// Parses `n`, `n/m` or a finite decimal such as `1.25` exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().ok()?;
        let d: BigInt = b.trim().parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    if let Some((a, b)) = s.split_once('.') {
        if b.is_empty() || !b.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = a.starts_with('-');
        let ip: BigInt = if a.is_empty() || a == "-" || a == "+" { BigInt::zero() } else { a.parse().ok()? };
        let scale = BigInt::from(10).pow(b.len() as u32);
        let frac: BigInt = b.parse().ok()?;
        let mut n = ip.abs() * &scale + frac;
        if neg {
            n = -n;
        }
        return Some(BigRational::new(n, scale));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum BoundExpr {
    Num {
        #[serde(with = "rat_str")]
        value: BigRational,
    },
    Const {
        name: String,
    },
    Var {
        var: Var,
    },
    Add {
        args: Vec<BoundExpr>,
    },
    Mul {
        args: Vec<BoundExpr>,
    },
    Div {
        num: Box<BoundExpr>,
        den: Box<BoundExpr>,
    },
    Pow {
        base: Box<BoundExpr>,
        exp: Box<BoundExpr>,
    },
    Exp {
        arg: Box<BoundExpr>,
    },
    Log {
        arg: Box<BoundExpr>,
    },
    LogPlus {
        arg: Box<BoundExpr>,
    },
    Max {
        args: Vec<BoundExpr>,
    },
    /// Passes `arg` through, failing with a domain error unless `arg > above`.
    Guard {
        arg: Box<BoundExpr>,
        #[serde(with = "rat_str")]
        above: BigRational,
    },
    /// `inner` evaluated at the five substituted variables.
    Compose {
        inner: Box<BoundExpr>,
        subst: Vec<BoundExpr>,
    },
}

pub fn num(n: i64) -> BoundExpr {
    BoundExpr::Num { value: BigRational::from_integer(n.into()) }
}

pub fn numq(q: BigRational) -> BoundExpr {
    BoundExpr::Num { value: q }
}

pub fn cst(name: &str) -> BoundExpr {
    BoundExpr::Const { name: name.to_string() }
}

pub fn var(v: Var) -> BoundExpr {
    BoundExpr::Var { var: v }
}

pub fn add(args: Vec<BoundExpr>) -> BoundExpr {
    BoundExpr::Add { args }
}

pub fn mul(args: Vec<BoundExpr>) -> BoundExpr {
    BoundExpr::Mul { args }
}

pub fn div(a: BoundExpr, b: BoundExpr) -> BoundExpr {
    BoundExpr::Div { num: Box::new(a), den: Box::new(b) }
}

pub fn pow(a: BoundExpr, b: BoundExpr) -> BoundExpr {
    BoundExpr::Pow { base: Box::new(a), exp: Box::new(b) }
}

pub fn exp(a: BoundExpr) -> BoundExpr {
    BoundExpr::Exp { arg: Box::new(a) }
}

pub fn ln(a: BoundExpr) -> BoundExpr {
    BoundExpr::Log { arg: Box::new(a) }
}

pub fn logp(a: BoundExpr) -> BoundExpr {
    BoundExpr::LogPlus { arg: Box::new(a) }
}

pub fn max(args: Vec<BoundExpr>) -> BoundExpr {
    BoundExpr::Max { args }
}

pub fn compose(inner: BoundExpr, subst: [BoundExpr; 5]) -> BoundExpr {
    BoundExpr::Compose { inner: Box::new(inner), subst: subst.into() }
}

/// max(x, 1): the log⁺ of a quantity already given as a logarithm.
fn floor1(x: BoundExpr) -> BoundExpr {
    max(vec![x, num(1)])
}

/// Linear form Σ coef_i·var_i + constant, constant `None` when it is not rational.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine {
    pub coef: [BigRational; 5],
    pub constant: Option<BigRational>,
}

impl Affine {
    fn constant(q: Option<BigRational>) -> Affine {
        Affine { coef: std::array::from_fn(|_| BigRational::zero()), constant: q }
    }

    fn is_constant(&self) -> bool {
        self.coef.iter().all(Zero::is_zero)
    }

    fn add(&self, o: &Affine) -> Affine {
        Affine {
            coef: std::array::from_fn(|i| &self.coef[i] + &o.coef[i]),
            constant: match (&self.constant, &o.constant) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        }
    }

    fn scale(&self, q: &BigRational) -> Affine {
        Affine {
            coef: std::array::from_fn(|i| &self.coef[i] * q),
            constant: self.constant.as_ref().map(|c| c * q),
        }
    }

    pub fn coefficient(&self, v: Var) -> &BigRational {
        &self.coef[v.index()]
    }
}

pub type Consts = BTreeMap<String, Real>;

impl BoundExpr {
    pub fn eval(&self, env: &[Real; 5], consts: &Consts, prec: u32) -> Result<Real> {
        Ok(match self {
            BoundExpr::Num { value } => Real::from_rational(value, prec),
            BoundExpr::Const { name } => {
                consts.get(name).cloned().ok_or_else(|| Error::UnboundConstant(name.clone()))?
            }
            BoundExpr::Var { var } => env[var.index()].clone(),
            BoundExpr::Add { args } => {
                let mut acc = Real::zero(prec);
                for a in args {
                    acc = acc.add(&a.eval(env, consts, prec)?);
                }
                acc
            }
            BoundExpr::Mul { args } => {
                let mut acc = Real::one(prec);
                for a in args {
                    acc = acc.mul(&a.eval(env, consts, prec)?);
                }
                acc
            }
            BoundExpr::Div { num, den } => {
                let n = num.eval(env, consts, prec)?;
                let d = den.eval(env, consts, prec)?;
                if d.contains_zero() {
                    return Err(Error::DomainError("bound divides by a quantity that may vanish".into()));
                }
                n.div(&d)?
            }
            BoundExpr::Pow { base, exp } => {
                let b = base.eval(env, consts, prec)?;
                let e = exp.eval(env, consts, prec)?;
                real_pow(&b, &e)?
            }
            BoundExpr::Exp { arg } => arg.eval(env, consts, prec)?.exp()?,
            BoundExpr::Log { arg } => arg.eval(env, consts, prec)?.ln()?,
            BoundExpr::LogPlus { arg } => arg.eval(env, consts, prec)?.log_plus(),
            BoundExpr::Max { args } => {
                let mut it = args.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::InvalidInput("max of nothing".into()))?
                    .eval(env, consts, prec)?;
                let mut acc = first;
                for a in it {
                    acc = acc.max(&a.eval(env, consts, prec)?);
                }
                acc
            }
            BoundExpr::Guard { arg, above } => {
                let x = arg.eval(env, consts, prec)?;
                if x.lo() <= *above {
                    return Err(Error::DomainError(format!("quantity must exceed {above}")));
                }
                x
            }
            BoundExpr::Compose { inner, subst } => {
                let vals: Vec<Real> = subst.iter().map(|s| s.eval(env, consts, prec)).collect::<Result<_>>()?;
                let inner_env: [Real; 5] = vals
                    .try_into()
                    .map_err(|_| Error::InvalidInput("composition needs five substitutions".into()))?;
                inner.eval(&inner_env, consts, prec)?
            }
        })
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |e| {
            if let BoundExpr::Const { name } = e {
                out.insert(name.clone());
            }
        });
        out
    }

    fn children(&self) -> Vec<&BoundExpr> {
        match self {
            BoundExpr::Num { .. } | BoundExpr::Const { .. } | BoundExpr::Var { .. } => vec![],
            BoundExpr::Add { args } | BoundExpr::Mul { args } | BoundExpr::Max { args } => args.iter().collect(),
            BoundExpr::Div { num, den } => vec![num, den],
            BoundExpr::Pow { base, exp } => vec![base, exp],
            BoundExpr::Exp { arg } | BoundExpr::Log { arg } | BoundExpr::LogPlus { arg } => vec![arg],
            BoundExpr::Guard { arg, .. } => vec![arg],
            BoundExpr::Compose { inner, subst } => std::iter::once(&**inner).chain(subst.iter()).collect(),
        }
    }

    fn visit(&self, f: &mut dyn FnMut(&BoundExpr)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    fn map_children(&self, f: &dyn Fn(&BoundExpr) -> BoundExpr) -> BoundExpr {
        let b = |e: &BoundExpr| Box::new(f(e));
        match self {
            BoundExpr::Num { .. } | BoundExpr::Const { .. } | BoundExpr::Var { .. } => self.clone(),
            BoundExpr::Add { args } => add(args.iter().map(f).collect()),
            BoundExpr::Mul { args } => mul(args.iter().map(f).collect()),
            BoundExpr::Max { args } => max(args.iter().map(f).collect()),
            BoundExpr::Div { num, den } => BoundExpr::Div { num: b(num), den: b(den) },
            BoundExpr::Pow { base, exp } => BoundExpr::Pow { base: b(base), exp: b(exp) },
            BoundExpr::Exp { arg } => BoundExpr::Exp { arg: b(arg) },
            BoundExpr::Log { arg } => BoundExpr::Log { arg: b(arg) },
            BoundExpr::LogPlus { arg } => BoundExpr::LogPlus { arg: b(arg) },
            BoundExpr::Guard { arg, above } => BoundExpr::Guard { arg: b(arg), above: above.clone() },
            BoundExpr::Compose { inner, subst } => {
                BoundExpr::Compose { inner: b(inner), subst: subst.iter().map(f).collect() }
            }
        }
    }

    /// Replaces variables by expressions (no Compose nodes in `self`).
    fn substitute(&self, subst: &[BoundExpr]) -> BoundExpr {
        match self {
            BoundExpr::Var { var } => subst[var.index()].clone(),
            _ => self.map_children(&|e| e.substitute(subst)),
        }
    }

    /// Inlines every composition.
    pub fn expand(&self) -> BoundExpr {
        match self {
            BoundExpr::Compose { inner, subst } => {
                let s: Vec<BoundExpr> = subst.iter().map(BoundExpr::expand).collect();
                inner.expand().substitute(&s)
            }
            _ => self.map_children(&BoundExpr::expand),
        }
    }

    pub fn replace_const(&self, name: &str, by: &BoundExpr) -> BoundExpr {
        match self {
            BoundExpr::Const { name: n } if n == name => by.clone(),
            _ => self.map_children(&|e| e.replace_const(name, by)),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let e = self.expand();
        let mut out = BTreeSet::new();
        e.visit(&mut |x| {
            if let BoundExpr::Var { var } = x {
                out.insert(*var);
            }
        });
        out
    }

    /// Linear form of an expanded expression, if it is affine in the variables.
    pub fn affine(&self, consts: &BTreeMap<String, BigRational>) -> Option<Affine> {
        match self {
            BoundExpr::Num { value } => Some(Affine::constant(Some(value.clone()))),
            BoundExpr::Const { name } => Some(Affine::constant(consts.get(name).cloned())),
            BoundExpr::Var { var } => {
                let mut a = Affine::constant(Some(BigRational::zero()));
                a.coef[var.index()] = BigRational::one();
                Some(a)
            }
            BoundExpr::Add { args } => {
                let mut acc = Affine::constant(Some(BigRational::zero()));
                for x in args {
                    acc = acc.add(&x.affine(consts)?);
                }
                Some(acc)
            }
            BoundExpr::Mul { args } => {
                let mut scalar = BigRational::one();
                let mut lin: Option<Affine> = None;
                for x in args {
                    let a = x.affine(consts)?;
                    if a.is_constant() {
                        scalar *= a.constant?;
                    } else if lin.is_none() {
                        lin = Some(a);
                    } else {
                        return None;
                    }
                }
                Some(match lin {
                    Some(l) => l.scale(&scalar),
                    None => Affine::constant(Some(scalar)),
                })
            }
            BoundExpr::Div { num, den } => {
                let d = den.affine(consts)?;
                if !d.is_constant() {
                    return None;
                }
                let d = d.constant?;
                if d.is_zero() {
                    return None;
                }
                Some(num.affine(consts)?.scale(&d.recip()))
            }
            BoundExpr::Compose { .. } => self.expand().affine(consts),
            _ => {
                if self.vars().is_empty() {
                    Some(Affine::constant(None))
                } else {
                    None
                }
            }
        }
    }

    /// Multiplicative factors of an expanded product tree.
    pub fn factors(&self) -> Vec<BoundExpr> {
        match self {
            BoundExpr::Mul { args } => args.iter().flat_map(BoundExpr::factors).collect(),
            _ => vec![self.clone()],
        }
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, args: &[BoundExpr], sep: &str| -> fmt::Result {
            write!(f, "(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")
        };
        match self {
            BoundExpr::Num { value } => write!(f, "{value}"),
            BoundExpr::Const { name } => write!(f, "{name}"),
            BoundExpr::Var { var } => write!(f, "{}", var.name()),
            BoundExpr::Add { args } => join(f, args, " + "),
            BoundExpr::Mul { args } => join(f, args, "·"),
            BoundExpr::Max { args } => {
                write!(f, "max")?;
                join(f, args, ", ")
            }
            BoundExpr::Div { num, den } => write!(f, "({num})/({den})"),
            BoundExpr::Pow { base, exp } => write!(f, "({base})^({exp})"),
            BoundExpr::Exp { arg } => write!(f, "exp({arg})"),
            BoundExpr::Log { arg } => write!(f, "log({arg})"),
            BoundExpr::LogPlus { arg } => write!(f, "log⁺({arg})"),
            BoundExpr::Guard { arg, .. } => write!(f, "{arg}"),
            BoundExpr::Compose { inner, subst } => {
                write!(f, "[{inner}]∘")?;
                join(f, subst, ", ")
            }
        }
    }
}

fn small_int(r: &Real) -> Option<i64> {
    let lo = r.lo();
    (lo == r.hi() && lo.is_integer()).then(|| lo.to_integer().to_i64()).flatten().filter(|n| n.abs() <= 1 << 20)
}

fn real_pow(b: &Real, e: &Real) -> Result<Real> {
    if let Some(n) = small_int(e) {
        let p = b.powi(n.unsigned_abs() as u32);
        return if n >= 0 { Ok(p) } else { p.recip() };
    }
    if b.is_negative() || b.lo().is_negative() {
        return Err(Error::DomainError("real power of a possibly negative base".into()));
    }
    b.pow(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PaperExplicit,
    UserHypothetical,
    DerivedEmpirical,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::PaperExplicit => "paper-explicit",
            Provenance::UserHypothetical => "user-hypothetical",
            Provenance::DerivedEmpirical => "derived-empirical",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constant {
    #[serde(with = "opt_rat")]
    pub value: Option<BigRational>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

mod opt_rat {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&q.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<BigRational>, D::Error> {
        match Option::<String>::deserialize(d)? {
            None => Ok(None),
            Some(s) => super::parse_rational(&s)
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundProfile {
    pub name: String,
    pub expr: BoundExpr,
    pub constants: BTreeMap<String, Constant>,
    /// Sub-expressions exposed for inspection, in the same variables.
    #[serde(default)]
    pub named: BTreeMap<String, BoundExpr>,
    #[serde(default)]
    pub conventions: Vec<String>,
    #[serde(default)]
    pub transforms: usize,
}

/// A point of the domain u ≥ 0, v ≥ 0, w ≥ 1, z ≥ 0, d ≥ 1.
#[derive(Clone, Debug)]
pub struct Env {
    pub vals: [Real; 5],
}

impl Env {
    pub fn new(u: Real, v: Real, w: Real, z: Real, d: Real) -> Result<Env> {
        let env = Env { vals: [u, v, w, z, d] };
        let floors = [0, 0, 1, 0, 1];
        for (x, (fl, name)) in env.vals.iter().zip(floors.iter().zip(["u", "v", "w", "z", "d"])) {
            if x.hi() < BigRational::from_integer((*fl).into()) {
                return Err(Error::DomainError(format!("{name} must be at least {fl}")));
            }
        }
        Ok(env)
    }

    pub fn from_rationals(q: [BigRational; 5], prec: u32) -> Result<Env> {
        let [u, v, w, z, d] = q.map(|x| Real::from_rational(&x, prec));
        Env::new(u, v, w, z, d)
    }

    pub fn from_f64(x: [f64; 5], prec: u32) -> Result<Env> {
        let [u, v, w, z, d] = x.map(|t| Real::from_f64_exact(t, prec));
        Env::new(u, v, w, z, d)
    }

    pub fn get(&self, v: Var) -> &Real {
        &self.vals[v.index()]
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for v in Var::ALL {
            m.insert(v.name().into(), json!(self.get(v).mid_f64()));
        }
        Value::Object(m)
    }
}

impl BoundProfile {
    fn new(name: &str, expr: BoundExpr) -> BoundProfile {
        BoundProfile {
            name: name.into(),
            expr,
            constants: BTreeMap::new(),
            named: BTreeMap::new(),
            conventions: Vec::new(),
            transforms: 0,
        }
    }

    fn with(mut self, name: &str, value: BigRational, provenance: Provenance, note: &str) -> BoundProfile {
        self.constants.insert(name.into(), Constant { value: Some(value), provenance, note: note.into() });
        self
    }

    fn hyp(self, name: &str, value: i64) -> BoundProfile {
        self.with(name, BigRational::from_integer(value.into()), Provenance::UserHypothetical, "default")
    }

    fn paper(self, name: &str, value: BigRational, note: &str) -> BoundProfile {
        self.with(name, value, Provenance::PaperExplicit, note)
    }

    fn named(mut self, name: &str, e: BoundExpr) -> BoundProfile {
        self.named.insert(name.into(), e);
        self
    }

    fn convention(mut self, c: &str) -> BoundProfile {
        self.conventions.push(c.into());
        self
    }

    pub fn set_constant(&mut self, name: &str, value: BigRational, provenance: Provenance) {
        let note = self.constants.get(name).map(|c| c.note.clone()).unwrap_or_default();
        self.constants.insert(name.into(), Constant { value: Some(value), provenance, note });
    }

    pub fn unbind(&mut self, name: &str) {
        if let Some(c) = self.constants.get_mut(name) {
            c.value = None;
        }
    }

    pub fn constant(&self, name: &str) -> Option<&BigRational> {
        self.constants.get(name).and_then(|c| c.value.as_ref())
    }

    /// Constants still at a hypothetical value; every report lists them.
    pub fn hypothetical(&self) -> Vec<String> {
        let used = self.used_constants();
        self.constants
            .iter()
            .filter(|(k, c)| c.provenance == Provenance::UserHypothetical && used.contains(*k))
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn used_constants(&self) -> BTreeSet<String> {
        let mut s = self.expr.constants();
        for e in self.named.values() {
            s.extend(e.constants());
        }
        s
    }

    fn bound_consts(&self, exprs: &[&BoundExpr], prec: u32) -> Result<Consts> {
        let mut out = Consts::new();
        for e in exprs {
            for name in e.constants() {
                let v = self.constant(&name).ok_or_else(|| Error::UnboundConstant(name.clone()))?;
                out.insert(name, Real::from_rational(v, prec));
            }
        }
        Ok(out)
    }

    pub fn eval(&self, env: &Env, prec: u32) -> Result<Real> {
        let c = self.bound_consts(&[&self.expr], prec)?;
        self.expr.eval(&env.vals, &c, prec)
    }

    pub fn eval_named(&self, name: &str, env: &Env, prec: u32) -> Result<Real> {
        let e = self
            .named
            .get(name)
            .ok_or_else(|| Error::InvalidInput(format!("profile {} has no sub-expression {name}", self.name)))?;
        let c = self.bound_consts(&[e], prec)?;
        e.eval(&env.vals, &c, prec)
    }

    pub fn rational_constants(&self) -> BTreeMap<String, BigRational> {
        self.constants.iter().filter_map(|(k, c)| c.value.clone().map(|v| (k.clone(), v))).collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("profile serializes")
    }

    pub fn from_json(v: &Value) -> Result<BoundProfile> {
        serde_json::from_value(v.clone()).map_err(|e| Error::InvalidInput(format!("bad profile: {e}")))
    }
}

pub fn eval_bound(b: &BoundProfile, env: &Env, prec: u32) -> Result<Real> {
    b.eval(env, prec)
}

fn u() -> BoundExpr {
    var(Var::U)
}
fn v() -> BoundExpr {
    var(Var::V)
}
fn w() -> BoundExpr {
    var(Var::W)
}
fn z() -> BoundExpr {
    var(Var::Z)
}
fn d() -> BoundExpr {
    var(Var::D)
}

fn q(n: i64, m: i64) -> BigRational {
    BigRational::new(n.into(), m.into())
}

const LOGP: &str = "log⁺(x) = max(log x, 1)";
const LOGD: &str = "log D_K enters as max(z, 1)";

pub fn abc_profile() -> BoundProfile {
    let e = add(vec![mul(vec![add(vec![num(1), cst("eps")]), u()]), cst("c")]);
    BoundProfile::new("abc", e).hyp("c", 1).with("eps", q(1, 2), Provenance::UserHypothetical, "default")
}

pub fn abc_siegel_profile() -> BoundProfile {
    let den = add(vec![cst("neg_chi"), mul(vec![num(-1), cst("eps")])]);
    let e = add(vec![div(u(), den.clone()), div(mul(vec![num(2), z()]), den), cst("kappa")]);
    BoundProfile::new("abc-siegel", e)
        .paper("neg_chi", q(1, 1), "-χ(U) for P¹ minus three points")
        .with("eps", q(1, 2), Provenance::UserHypothetical, "default, needs eps < -χ")
        .hyp("kappa", 1)
}

pub fn se_abc_profile() -> BoundProfile {
    let k12 = add(vec![cst("k1"), cst("k2")]);
    let g1 = mul(vec![k12.clone(), cst("d_f")]);
    let g2 = mul(vec![cst("c0"), cst("k2"), cst("d_f"), ln(cst("d_f")), d()]);
    let g3 = add(vec![
        mul(vec![cst("d_f"), cst("k2"), z()]),
        mul(vec![
            cst("d_f"),
            add(vec![mul(vec![d(), ln(num(2))]), mul(vec![cst("k0"), k12]), cst("k3")]),
        ]),
    ]);
    let r = add(vec![u(), cst("k0")]);
    let e = add(vec![mul(vec![g1.clone(), u()]), mul(vec![g2.clone(), div(r.clone(), logp(r))]), g3.clone()]);
    BoundProfile::new("se-abc", e)
        .named("gamma_1", g1)
        .named("gamma_2", g2)
        .named("gamma_3", g3)
        .hyp("k0", 1)
        .hyp("k1", 1)
        .hyp("k2", 1)
        .hyp("k3", 1)
        .hyp("d_f", 1)
        .with("c0", default_c0(), Provenance::DerivedEmpirical, "min_c0(10^5) rounded up")
        .convention("(rad + k0)/log⁺(rad + k0)")
}

pub fn abc_exp_profile() -> BoundProfile {
    let g1 = mul(vec![cst("alpha"), d()]);
    let g2 = add(vec![mul(vec![num(2), d()]), num(-1)]);
    let g3 = mul(vec![cst("alpha"), d()]);
    let e = exp(add(vec![mul(vec![g1.clone(), u()]), mul(vec![g2.clone(), z()]), g3.clone()]));
    BoundProfile::new("abc-exp", e)
        .named("gamma_1", g1)
        .named("gamma_2", g2)
        .named("gamma_3", g3)
        .hyp("alpha", 1)
}

fn gamma_t() -> BoundExpr {
    mul(vec![
        pow(cst("c_K"), add(vec![v(), num(1)])),
        pow(v(), add(vec![mul(vec![num(5), v()]), num(10)])),
    ])
}

pub fn bugeaud_gyory_profile() -> BoundProfile {
    let rt = cst("R_T");
    let e = mul(vec![
        gamma_t(),
        pow(w(), d()),
        rt.clone(),
        logp(rt.clone()),
        div(logp(mul(vec![w(), rt])), logp(w())),
        cst("log_H"),
    ]);
    BoundProfile::new("bugeaud-gyory", e)
        .named("gamma", gamma_t())
        .hyp("c_K", 1)
        .hyp("R_T", 1)
        .hyp("log_H", 1)
        .convention(LOGP)
        .convention("R_T exact over Q as the product of log p over S")
}

/// The same bound after R_T log⁺R_T (log⁺(P R_T)/log⁺P) ≤ 2 R_T².
pub fn bugeaud_gyory_squared() -> BoundProfile {
    let e = mul(vec![gamma_t(), pow(w(), d()), num(2), pow(cst("R_T"), num(2)), cst("log_H")]);
    BoundProfile::new("bugeaud-gyory-2rt2", e).hyp("c_K", 1).hyp("R_T", 1).hyp("log_H", 1)
}

pub fn four_var_profile() -> BoundProfile {
    let e = mul(vec![
        cst("c2"),
        gamma_t(),
        pow(w(), d()),
        exp(z()),
        pow(floor1(z()), add(vec![mul(vec![num(2), d()]), num(-2)])),
        pow(cst("prod_log"), num(2)),
    ]);
    BoundProfile::new("4var", e)
        .hyp("c2", 1)
        .hyp("c_K", 1)
        .hyp("prod_log", 1)
        .convention(LOGD)
        .convention("prod_log = product of log N(p) over S")
}

/// R_T ≤ c1·√D_K·(log D_K)^{d−1}·∏ log N(p).
pub fn regulator_bound_expr() -> BoundExpr {
    mul(vec![
        cst("c1"),
        exp(div(z(), num(2))),
        pow(floor1(z()), add(vec![d(), num(-1)])),
        cst("prod_log"),
    ])
}

/// T-regulator over Q: ∏_{p∈S} log p.
pub fn regulator_over_q(primes: &[BigInt], prec: u32) -> Result<Real> {
    let mut acc = Real::one(prec);
    for p in primes {
        acc = acc.mul(&Real::from_bigint(p, prec).ln()?);
    }
    Ok(acc)
}

pub fn bilu_constants(m: u64, n: u64) -> (BigInt, BigInt, BigInt) {
    let (m, n) = (BigInt::from(m), BigInt::from(n));
    let n1 = [n.pow(5), 16 * n.pow(2) * m.pow(2), 256 * m.pow(3)].into_iter().max().unwrap();
    let n2 = [n.pow(4), 10 * m.pow(2) * &n].into_iter().max().unwrap();
    let n3 = [&m * n.pow(7), 500 * m.pow(2) * n.pow(4)].into_iter().max().unwrap();
    (n1, n2, n3)
}

pub fn bilu_profile(m: u64, n: u64) -> BoundProfile {
    let (n1, n2, n3) = bilu_constants(m, n);
    let big_n = m.max(n).max(3);
    let psi = add(vec![
        mul(vec![
            num(100),
            v(),
            cst("N2"),
            add(vec![logp(mul(vec![cst("N"), v()])), cst("N4")]),
        ]),
        mul(vec![d(), cst("N3"), add(vec![cst("h_g"), mul(vec![cst("N5"), cst("N")])])]),
    ]);
    let e = mul(vec![
        pow(w(), mul(vec![cst("N1"), d()])),
        exp(mul(vec![cst("N2"), add(vec![z(), u()])])),
        exp(psi.clone()),
    ]);
    let z_ = |x: BigInt| BigRational::from_integer(x);
    BoundProfile::new("bilu", e)
        .named("psi", psi)
        .paper("N1", z_(n1), "max{n^5, 16n^2m^2, 256m^3}")
        .paper("N2", z_(n2), "max{n^4, 10m^2n}")
        .paper("N3", z_(n3), "max{mn^7, 500m^2n^4}")
        .paper("N", z_(big_n.into()), "max{m, n, 3}")
        .paper("m", z_(m.into()), "degree in y")
        .paper("n", z_(n.into()), "degree in x")
        .hyp("N4", 1)
        .hyp("N5", 1)
        .with("h_g", BigRational::zero(), Provenance::UserHypothetical, "height of the curve equation")
        .convention("∏ N(p) over S = exp(u)")
        .convention("O(1) and O(N) in ψ exposed as N4 and N5·N")
        .convention("log(N card S) read as log⁺")
}

pub fn stewart_yu_profile() -> BoundProfile {
    let e = mul(vec![cst("eta"), pow(u(), num(3)), exp(div(u(), num(3)))]);
    BoundProfile::new("stewart-yu", e).hyp("eta", 1)
}

pub fn cor_p1_profile() -> BoundProfile {
    let e = mul(vec![
        pow(cst("c_d"), v()),
        pow(v(), mul(vec![num(5), add(vec![v(), num(2)])])),
        pow(w(), d()),
        pow(logp(w()), mul(vec![num(2), v()])),
        exp(z()),
        pow(floor1(z()), add(vec![mul(vec![num(2), d()]), num(-2)])),
    ]);
    BoundProfile::new("cor-p1", e).hyp("c_d", 1).convention(LOGP).convention(LOGD)
}

/// The corollary in its original variables (t, s separate).
pub fn cor_p1_direct(c_d: &Real, t: u32, s: u32, p: &BigInt, d_k: &BigInt, d: u32) -> Result<Real> {
    let prec = c_d.prec();
    let tp = Real::from_int(t as i64, prec);
    let pr = Real::from_bigint(p, prec);
    let dk = Real::from_bigint(d_k, prec);
    Ok(c_d
        .powi(t)
        .mul(&tp.powi(5 * (t + 2)))
        .mul(&pr.powi(d))
        .mul(&pr.log_plus().powi(2 * s))
        .mul(&dk)
        .mul(&dk.log_plus().powi(2 * d - 2)))
}

pub fn g0_profile() -> BoundProfile {
    let e = mul(vec![
        pow(cst("c_dphi"), v()),
        pow(v(), add(vec![mul(vec![num(5), v()]), cst("c1")])),
        pow(w(), d()),
        pow(logp(w()), add(vec![mul(vec![num(2), v()]), cst("c2")])),
        exp(z()),
        pow(floor1(z()), add(vec![mul(vec![num(2), d()]), num(-2)])),
    ]);
    BoundProfile::new("g0", e).hyp("c_dphi", 1).hyp("c1", 1).hyp("c2", 1).convention(LOGP).convention(LOGD)
}

pub fn baker_serre_profile() -> BoundProfile {
    let gd = mul(vec![
        cst("k7"),
        add(vec![
            z(),
            u(),
            cst("k8"),
            mul(vec![
                d(),
                cst("k9"),
                div(add(vec![u(), cst("k10")]), add(vec![logp(u()), cst("k11")])),
            ]),
        ]),
    ]);
    let e = mul(vec![
        pow(cst("k_d"), v()),
        pow(v(), add(vec![mul(vec![cst("k1"), v()]), cst("k2")])),
        pow(w(), mul(vec![cst("k3"), d()])),
        pow(logp(w()), add(vec![mul(vec![cst("k4"), v()]), cst("k5")])),
        exp(gd.clone()),
        pow(gd.clone(), add(vec![mul(vec![cst("k6"), d()]), num(-2)])),
    ]);
    let mut p = BoundProfile::new("baker-serre", e).named("gamma_d", gd).convention(LOGP);
    for k in ["k_d", "k1", "k2", "k3", "k4", "k5", "k6", "k7", "k8", "k9", "k10", "k11"] {
        p = p.hyp(k, 1);
    }
    p
}

pub fn ellip_profile() -> BoundProfile {
    let r = add(vec![u(), cst("c5")]);
    let gd = mul(vec![
        num(4),
        add(vec![
            z(),
            u(),
            cst("c4"),
            mul(vec![cst("c0"), ln(num(4)), d(), div(r.clone(), logp(r))]),
        ]),
    ]);
    let e = mul(vec![
        cst("gamma_E"),
        pow(cst("c_d"), add(vec![v(), cst("c1")])),
        pow(v(), add(vec![mul(vec![num(20), v()]), cst("c2")])),
        pow(w(), mul(vec![num(4), d()])),
        pow(logp(w()), add(vec![mul(vec![num(8), v()]), cst("c3")])),
        exp(gd.clone()),
        pow(gd.clone(), add(vec![mul(vec![num(8), d()]), num(-2)])),
    ]);
    let mut p = BoundProfile::new("ellip", e)
        .named("gamma_d", gd)
        .with("c0", default_c0(), Provenance::DerivedEmpirical, "min_c0(10^5) rounded up")
        .convention(LOGP);
    for k in ["gamma_E", "c_d", "c1", "c2", "c3", "c4", "c5"] {
        p = p.hyp(k, 1);
    }
    p
}

pub fn se_hypothesis_profile() -> BoundProfile {
    let e = add(vec![mul(vec![cst("k1"), u()]), mul(vec![cst("k2"), z()]), cst("k3")]);
    BoundProfile::new("se-hypothesis", e).hyp("k1", 1).hyp("k2", 1).hyp("k3", 1)
}

pub fn cdfonctions_profile() -> BoundProfile {
    let e = add(vec![mul(vec![cst("c1"), v()]), mul(vec![cst("c2"), z()]), cst("c3")]);
    BoundProfile::new("cdfonctions", e)
        .paper("c1", q(1, 1), "genus 0")
        .paper("c2", q(1, 1), "genus 0")
        .hyp("c3", 1)
        .convention("z carries 2g_L - 2")
}

pub fn builtin_profiles() -> Vec<BoundProfile> {
    vec![
        abc_profile(),
        abc_siegel_profile(),
        se_abc_profile(),
        abc_exp_profile(),
        bugeaud_gyory_profile(),
        four_var_profile(),
        bilu_profile(3, 2),
        stewart_yu_profile(),
        cor_p1_profile(),
        g0_profile(),
        baker_serre_profile(),
        ellip_profile(),
        se_hypothesis_profile(),
        cdfonctions_profile(),
    ]
}

pub fn builtin_profile(name: &str) -> Result<BoundProfile> {
    builtin_profiles()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown profile {name}")))
}

fn check_nonneg(x: &BigRational, what: &str) -> Result<()> {
    if x.is_negative() {
        return Err(Error::DomainError(format!("{what} must be non-negative")));
    }
    Ok(())
}

/// B_X(u,v,w,z,d) = γ·B_Y(u+u_φ, v+v_φ, w+w_φ, z, d).
pub fn morph_fini_transform(
    by: &BoundProfile,
    u_phi: &BigRational,
    v_phi: &BigRational,
    w_phi: &BigRational,
    gamma: &BigRational,
) -> Result<BoundProfile> {
    for (x, n) in [(u_phi, "u_phi"), (v_phi, "v_phi"), (w_phi, "w_phi")] {
        check_nonneg(x, n)?;
    }
    if !gamma.is_positive() {
        return Err(Error::DomainError("gamma must be positive".into()));
    }
    let k = by.transforms + 1;
    let nm = |s: &str| format!("mf{k}.{s}");
    let shift = |x: BoundExpr, s: &str| add(vec![x, cst(&nm(s))]);
    let expr = mul(vec![
        cst(&nm("gamma")),
        compose(by.expr.clone(), [shift(u(), "u_phi"), shift(v(), "v_phi"), shift(w(), "w_phi"), z(), d()]),
    ]);
    let mut out = by.clone();
    out.name = format!("morph-fini({})", by.name);
    out.expr = expr;
    out.transforms = k;
    out.named.clear();
    for (x, s) in [(u_phi, "u_phi"), (v_phi, "v_phi"), (w_phi, "w_phi"), (gamma, "gamma")] {
        out.constants.insert(nm(s), Constant { value: Some(x.clone()), provenance: Provenance::UserHypothetical, note: "cover data".into() });
    }
    Ok(out)
}

/// B_Y(u,v,w,z,d) = γ·B_X(d_φ(u+u_φ), d_φ(v+v_φ), w+w_φ, γ_d, d_φ·d) with
/// γ_d = d_φ(z + u + u_φ + c₀·d·log d_φ·(u+u_φ)/log(u+u_φ)).
///
/// With `strict` the last log is literal and requires u + u_φ > 1;
/// otherwise it is log⁺, which keeps γ_d monotone on the whole domain.
#[allow(clippy::too_many_arguments)]
pub fn revet_etale_transform(
    bx: &BoundProfile,
    d_phi: u32,
    u_phi: &BigRational,
    v_phi: &BigRational,
    w_phi: &BigRational,
    gamma: &BigRational,
    c0: &BigRational,
    strict: bool,
) -> Result<BoundProfile> {
    if d_phi == 0 {
        return Err(Error::DomainError("d_phi must be at least 1".into()));
    }
    for (x, n) in [(u_phi, "u_phi"), (v_phi, "v_phi"), (w_phi, "w_phi")] {
        check_nonneg(x, n)?;
    }
    if !gamma.is_positive() || !c0.is_positive() {
        return Err(Error::DomainError("gamma and c0 must be positive".into()));
    }
    let k = bx.transforms + 1;
    let nm = |s: &str| format!("re{k}.{s}");
    let dp = cst(&nm("d_phi"));
    let s = add(vec![u(), cst(&nm("u_phi"))]);
    let log_s = if strict {
        ln(BoundExpr::Guard { arg: Box::new(s.clone()), above: BigRational::one() })
    } else {
        logp(s.clone())
    };
    let gd = mul(vec![
        dp.clone(),
        add(vec![
            z(),
            s.clone(),
            mul(vec![cst(&nm("c0")), d(), ln(dp.clone()), div(s.clone(), log_s)]),
        ]),
    ]);
    let expr = mul(vec![
        cst(&nm("gamma")),
        compose(
            bx.expr.clone(),
            [
                mul(vec![dp.clone(), s]),
                mul(vec![dp.clone(), add(vec![v(), cst(&nm("v_phi"))])]),
                add(vec![w(), cst(&nm("w_phi"))]),
                gd.clone(),
                mul(vec![dp, d()]),
            ],
        ),
    ]);
    let mut out = bx.clone();
    out.name = format!("revet-etale({})", bx.name);
    out.expr = expr;
    out.transforms = k;
    out.named.clear();
    out.named.insert("gamma_d".into(), gd);
    let dq = BigRational::from_integer(d_phi.into());
    for (x, s, prov) in [
        (&dq, "d_phi", Provenance::UserHypothetical),
        (u_phi, "u_phi", Provenance::UserHypothetical),
        (v_phi, "v_phi", Provenance::UserHypothetical),
        (w_phi, "w_phi", Provenance::UserHypothetical),
        (gamma, "gamma", Provenance::UserHypothetical),
        (c0, "c0", Provenance::DerivedEmpirical),
    ] {
        out.constants.insert(nm(s), Constant { value: Some(x.clone()), provenance: prov, note: "cover data".into() });
    }
    if !strict {
        out.conventions.push("γ_d uses log⁺(u + u_φ)".into());
    }
    Ok(out)
}

/// Exponents read off the expanded factors of a profile shaped like the
/// elliptic-curve corollary.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentPattern {
    /// Exponent of the factor whose base is P (plus shifts).
    pub p: Affine,
    /// Exponent of the factor whose base is log⁺ P.
    pub log_p: Affine,
    /// Exponent of the factor whose base is the place count.
    pub s: Affine,
    /// Exponent of the factor whose base is γ_d (possibly floored at 1).
    pub gamma_d: Affine,
    pub has_exp_gamma_d: bool,
}

pub fn exponent_pattern(b: &BoundProfile) -> Result<ExponentPattern> {
    let consts = b.rational_constants();
    let e = b.expr.expand();
    let mut p = None;
    let mut log_p = None;
    let mut s = None;
    let mut gamma = None;
    let mut has_exp = false;
    let missing = |what: &str| Error::InvariantViolated(format!("no {what} factor in {}", b.name));
    for f in e.factors() {
        match &f {
            BoundExpr::Exp { arg } => {
                let vs = arg.vars();
                has_exp |= vs.contains(&Var::Z) && vs.contains(&Var::U);
            }
            BoundExpr::Pow { base, exp } => {
                let vs = base.vars();
                let ex = || exp.affine(&consts).ok_or_else(|| Error::InvariantViolated(format!("non-affine exponent {exp}")));
                if vs.is_empty() {
                    continue;
                }
                if matches!(**base, BoundExpr::LogPlus { .. }) && vs == BTreeSet::from([Var::W]) {
                    log_p = Some(ex()?);
                } else if vs == BTreeSet::from([Var::W]) {
                    p = Some(ex()?);
                } else if vs == BTreeSet::from([Var::V]) {
                    s = Some(ex()?);
                } else if vs.contains(&Var::Z) {
                    gamma = Some(ex()?);
                }
            }
            _ => {}
        }
    }
    Ok(ExponentPattern {
        p: p.ok_or_else(|| missing("P"))?,
        log_p: log_p.ok_or_else(|| missing("log P"))?,
        s: s.ok_or_else(|| missing("card S"))?,
        gamma_d: gamma.ok_or_else(|| missing("γ_d"))?,
        has_exp_gamma_d: has_exp,
    })
}

impl ExponentPattern {
    /// The elliptic corollary's exponents 4d, 8s + c, 20s + c, 8d − 2.
    pub fn matches_ellip(&self) -> bool {
        let z = BigRational::zero();
        let n = |k: i64| BigRational::from_integer(k.into());
        let only = |a: &Affine, v: Var, c: i64| {
            Var::ALL.iter().all(|&x| if x == v { a.coefficient(x) == &n(c) } else { a.coefficient(x) == &z })
        };
        only(&self.p, Var::D, 4)
            && self.p.constant == Some(z.clone())
            && only(&self.log_p, Var::V, 8)
            && only(&self.s, Var::V, 20)
            && only(&self.gamma_d, Var::D, 8)
            && self.gamma_d.constant == Some(n(-2))
            && self.has_exp_gamma_d
    }
}

/// The corollary's construction: a degree-2 finite map then the degree-4
/// multiplication-by-2 cover, over the P¹ profile.
pub fn ellip_reconstruction(c0: &BigRational) -> Result<BoundProfile> {
    let one = BigRational::one();
    let zero = BigRational::zero();
    let mf = morph_fini_transform(&cor_p1_profile(), &one, &one, &one, &one)?;
    revet_etale_transform(&mf, 4, &zero, &zero, &zero, &one, c0, false)
}

#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    pub pairs: usize,
    pub violations: Vec<(Env, Env)>,
    pub undecided: usize,
    pub domain_errors: usize,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn sample_env(rng: &mut ChaCha8Rng) -> [BigRational; 5] {
    [
        q(rng.gen_range(0..=400), 8),
        q(rng.gen_range(0..=80), 8),
        q(rng.gen_range(8..=8000), 8),
        q(rng.gen_range(0..=160), 8),
        q(rng.gen_range(8..=64), 8),
    ]
}

/// Samples ordered pairs e ≤ e' (coordinatewise) and looks for a certified
/// decrease B(e') < B(e).
pub fn check_monotonicity(b: &BoundProfile, pairs: usize, seed: u64, prec: u32) -> Result<MonotonicityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let envs: Vec<([BigRational; 5], [BigRational; 5])> = (0..pairs)
        .map(|_| {
            let a = sample_env(&mut rng);
            let mut c = a.clone();
            let mask = rng.gen_range(1u8..32);
            for (i, x) in c.iter_mut().enumerate() {
                if mask & (1 << i) != 0 {
                    *x += q(rng.gen_range(1..=40), 8);
                }
            }
            (a, c)
        })
        .collect();
    let outcomes: Vec<Result<Option<(Env, Env, bool)>>> = envs
        .into_par_iter()
        .map(|(a, c)| {
            let ea = Env::from_rationals(a, prec)?;
            let ec = Env::from_rationals(c, prec)?;
            match (b.eval(&ea, prec), b.eval(&ec, prec)) {
                (Ok(x), Ok(y)) => Ok(Some((ea, ec, y.lt(&x) == Some(true)))),
                (Err(Error::UnboundConstant(n)), _) | (_, Err(Error::UnboundConstant(n))) => Err(Error::UnboundConstant(n)),
                _ => Ok(None),
            }
        })
        .collect();
    let mut rep = MonotonicityReport { pairs, violations: vec![], undecided: 0, domain_errors: 0 };
    for o in outcomes {
        match o? {
            None => rep.domain_errors += 1,
            Some((ea, ec, true)) => rep.violations.push((ea, ec)),
            Some(_) => {}
        }
    }
    Ok(rep)
}

/// `r·log T_r / T_r` maximised over 3 ≤ r ≤ r_max, T_r = Σ_{i≤r} log p_i.
#[derive(Clone, Debug)]
pub struct MinC0 {
    pub value: Real,
    pub argmax: usize,
    pub r_max: usize,
}

pub fn min_c0(r_max: usize, prec: u32) -> Result<MinC0> {
    if r_max < 3 {
        return Err(Error::InvalidInput("r_max must be at least 3".into()));
    }
    let primes = first_primes(r_max);
    let mut t = 0f64;
    let mut scores = Vec::with_capacity(r_max);
    for (i, p) in primes.iter().enumerate() {
        t += (*p as f64).ln();
        let r = (i + 1) as f64;
        scores.push(if i >= 2 { r * t.ln() / t } else { f64::NEG_INFINITY });
    }
    let best = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut out: Option<(Real, usize)> = None;
    for (i, s) in scores.iter().enumerate() {
        if *s < best - 1e-9 {
            continue;
        }
        let mut tr = Real::zero(prec);
        for p in &primes[..=i] {
            tr = tr.add(&Real::from_int(*p as i64, prec).ln()?);
        }
        let val = tr.ln()?.mul_int((i + 1) as i64).div(&tr)?;
        out = match out {
            Some((b, j)) if b.hi() >= val.hi() => Some((b, j)),
            _ => Some((val, i + 1)),
        };
    }
    let (value, argmax) = out.expect("at least one candidate");
    Ok(MinC0 { value, argmax, r_max })
}

/// Smallest two-decimal rational above the certified enclosure.
pub fn round_up_2dp(x: &Real) -> BigRational {
    let hi = x.hi() * BigRational::from_integer(100.into());
    BigRational::new(hi.ceil().to_integer(), 100.into())
}

#[derive(Clone, Debug)]
pub struct SigmaLemma {
    pub holds: Decision,
    pub first: Decision,
    pub second: Decision,
    pub card_p: usize,
    pub bound_p: Real,
    pub bound_s: Real,
    pub margin: Real,
}

fn x_over_log(x: &Real) -> Result<Real> {
    x.div(&x.ln()?)
}

pub fn check_sigma_lemma(s: &PlaceSet, c0: &BigRational, prec: u32) -> Result<SigmaLemma> {
    let chars = s.residual_chars();
    if chars.len() < 3 {
        return Err(Error::HypothesisNotMet(format!("card P(S) = {} < 3", chars.len())));
    }
    let sigma_p = LogQuantity::from_terms(chars.iter().map(|p| (BigRational::one(), p.clone())).collect());
    let sigma_s = s.sigma();
    let same = sigma_p.sub(&sigma_s).is_zero();
    let card = Real::from_int(chars.len() as i64, prec);
    let mut p = prec;
    loop {
        let bp = x_over_log(&sigma_p.to_real(p))?.scale(c0);
        let bs = x_over_log(&sigma_s.to_real(p))?.scale(c0);
        let first = card.le(&bp);
        let second = if same { Some(true) } else { bp.le(&bs) };
        if (first.is_some() && second.is_some()) || p >= 1024 {
            let dec = |o: Option<bool>| o.map(Decision::from_bool).unwrap_or(Decision::Undecided);
            let (first, second) = (dec(first), dec(second));
            return Ok(SigmaLemma {
                holds: first.and(second),
                first,
                second,
                card_p: chars.len(),
                margin: bp.sub(&card),
                bound_p: bp,
                bound_s: bs,
            });
        }
        p *= 2;
    }
}

#[derive(Clone, Debug)]
pub struct DiscriminantLemma {
    pub holds: Decision,
    pub lhs: Real,
    pub rhs: Real,
}

/// Primes dividing the discriminant of `l`, which must be exact.
pub fn ramified_primes(l: &Field) -> Result<Vec<BigInt>> {
    if l.disc_provenance() != DiscProvenance::Exact {
        return Err(Error::InexactDiscriminant);
    }
    prime_divisors(l.field_disc())
}

pub fn check_discriminant_lemma(
    k: &Field,
    l: &Field,
    r: &PlaceSet,
    c0: &BigRational,
    prec: u32,
) -> Result<DiscriminantLemma> {
    if l.disc_provenance() != DiscProvenance::Exact || k.disc_provenance() != DiscProvenance::Exact {
        return Err(Error::InexactDiscriminant);
    }
    let chars = r.residual_chars();
    if chars.len() < 3 {
        return Err(Error::HypothesisNotMet(format!("card P(R) = {} < 3", chars.len())));
    }
    if l.degree() % k.degree() != 0 {
        return Err(Error::InvalidInput("[L:Q] is not a multiple of [K:Q]".into()));
    }
    let n = (l.degree() / k.degree()) as i64;
    let mut p = prec;
    loop {
        let lhs = Real::from_bigint(&l.field_disc().abs(), p).ln()?;
        let sr = r.sigma().to_real(p);
        let log_n = Real::from_int(n, p).ln()?;
        let tail = x_over_log(&sr)?.mul(&log_n).scale(c0).mul_int(k.degree() as i64);
        let rhs = Real::from_bigint(&k.field_disc().abs(), p).ln()?.add(&sr).add(&tail).mul_int(n);
        if let Some(b) = lhs.le(&rhs) {
            return Ok(DiscriminantLemma { holds: Decision::from_bool(b), lhs, rhs });
        }
        if p >= 1024 {
            return Ok(DiscriminantLemma { holds: Decision::Undecided, lhs, rhs });
        }
        p *= 2;
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub h: Real,
    pub env: Env,
}

/// One entry per triple: h = h_K(a:b:c), u = rad, v = number of radical
/// places, w = their largest characteristic, z = log D_K, d = [K:Q].
pub fn corpus_from_triples(ts: &[ABCTriple], prec: u32) -> Result<Vec<CorpusEntry>> {
    ts.iter()
        .map(|t| {
            let pt = t.point();
            let h = proj_height(&pt, prec)?.relative.to_real(prec);
            let rad = radical(&pt, None)?;
            let k = t.field();
            let wmax = rad.primes.iter().map(|p| p.p.clone()).max().unwrap_or_else(BigInt::one);
            let env = Env::new(
                rad.value.to_real(prec),
                Real::from_int(rad.primes.len() as i64, prec),
                Real::from_bigint(&wmax, prec),
                Real::from_bigint(&k.field_disc().abs(), prec).ln()?,
                Real::from_int(k.degree() as i64, prec),
            )?;
            Ok(CorpusEntry { label: t.to_string(), h, env })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub profile: String,
    pub free: String,
    /// Smallest tested value at which every entry satisfies h ≤ B.
    pub minimal: BigRational,
    /// Largest tested value at which some entry fails (zero when none does).
    pub lower: BigRational,
    pub default: Option<BigRational>,
    /// Labels of entries with h > B at the default value.
    pub violations_at_default: Vec<String>,
    pub hypothetical: Vec<String>,
}

impl CorpusReport {
    pub fn to_json(&self) -> Value {
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        json!({
            "profile": self.profile,
            "free_constant": self.free,
            "minimal": f(&self.minimal),
            "minimal_exact": self.minimal.to_string(),
            "lower": f(&self.lower),
            "default": self.default.as_ref().map(f),
            "violations_at_default": self.violations_at_default,
            "hypothetical_constants": self.hypothetical,
        })
    }
}

fn holds_at(b: &BoundProfile, free: &str, c: &BigRational, corpus: &[CorpusEntry], prec: u32) -> Result<Vec<bool>> {
    let mut bb = b.clone();
    bb.set_constant(free, c.clone(), Provenance::DerivedEmpirical);
    corpus
        .par_iter()
        .map(|e| match bb.eval(&e.env, prec) {
            Ok(v) => Ok(e.h.le(&v) == Some(true)),
            Err(Error::UnboundConstant(n)) => Err(Error::UnboundConstant(n)),
            Err(_) => Ok(false),
        })
        .collect()
}

fn assert_monotone_in(b: &BoundProfile, free: &str, top: &BigRational, corpus: &[CorpusEntry], prec: u32) -> Result<()> {
    let samples: Vec<BigRational> = (0..=16).map(|i| top * q(i, 2)).collect();
    for e in corpus {
        let mut prev: Option<Real> = None;
        for c in &samples {
            let mut bb = b.clone();
            bb.set_constant(free, c.clone(), Provenance::DerivedEmpirical);
            let Ok(val) = bb.eval(&e.env, prec) else { continue };
            if let Some(p) = &prev {
                if val.lt(p) == Some(true) {
                    return Err(Error::NonMonotoneConstant(free.into()));
                }
            }
            prev = Some(val);
        }
    }
    Ok(())
}

pub fn corpus_report(b: &BoundProfile, corpus: &[CorpusEntry], free: &str, prec: u32) -> Result<CorpusReport> {
    if corpus.is_empty() {
        return Err(Error::InvalidInput("empty corpus".into()));
    }
    if !b.used_constants().contains(free) {
        return Err(Error::UnboundConstant(free.into()));
    }
    let default = b.constant(free).cloned();
    let violations_at_default = match &default {
        Some(c) => holds_at(b, free, c, corpus, prec)?
            .into_iter()
            .zip(corpus)
            .filter(|(ok, _)| !ok)
            .map(|(_, e)| e.label.clone())
            .collect(),
        None => vec![],
    };
    let all = |c: &BigRational| -> Result<bool> { Ok(holds_at(b, free, c, corpus, prec)?.into_iter().all(|x| x)) };
    let mut lo = BigRational::zero();
    let mut hi = BigRational::one();
    if all(&lo)? {
        hi = lo.clone();
    } else {
        let mut steps = 0;
        while !all(&hi)? {
            lo = hi.clone();
            hi *= BigRational::from_integer(2.into());
            steps += 1;
            if steps > 400 {
                return Err(Error::NonMonotoneConstant(free.into()));
            }
        }
        assert_monotone_in(b, free, &hi, corpus, prec)?;
        let tol = q(1, 1_000_000);
        while &hi - &lo > &hi * &tol {
            let mid = (&lo + &hi) / BigRational::from_integer(2.into());
            if all(&mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    Ok(CorpusReport {
        profile: b.name.clone(),
        free: free.into(),
        minimal: hi,
        lower: lo,
        default,
        violations_at_default,
        hypothetical: b.hypothetical().into_iter().filter(|c| c != free).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{quadratic_field, rationals};
    use crate::heights::rational_prime;

    const P: u32 = 128;

    fn env(x: [f64; 5]) -> Env {
        Env::from_f64(x, P).unwrap()
    }

    fn env_u(u: Real) -> Env {
        Env::new(u, Real::zero(P), Real::one(P), Real::zero(P), Real::one(P)).unwrap()
    }

    fn close(r: &Real, x: f64, rel: f64) -> bool {
        (r.mid_f64() - x).abs() <= rel * x.abs().max(1e-300)
    }

    fn log6() -> Real {
        Real::from_int(6, P).ln().unwrap()
    }

    #[test]
    fn stewart_yu_at_log6() {
        let b = stewart_yu_profile();
        let y = b.eval(&env_u(log6()), P).unwrap();
        let x = 6f64.ln();
        assert!(close(&y, x.powi(3) * (x / 3.0).exp(), 1e-12));
        assert!((y.mid_f64() - 10.4526).abs() < 1e-3);
    }

    #[test]
    fn abc_profile_identity() {
        let mut b = abc_profile();
        b.set_constant("eps", BigRational::zero(), Provenance::UserHypothetical);
        b.set_constant("c", BigRational::zero(), Provenance::UserHypothetical);
        let y = b.eval(&env_u(log6()), P).unwrap();
        assert!(close(&y, 6f64.ln(), 1e-15));
    }

    #[test]
    fn unbound_constant_is_reported() {
        let mut b = stewart_yu_profile();
        b.unbind("eta");
        assert!(matches!(b.eval(&env_u(log6()), P), Err(Error::UnboundConstant(n)) if n == "eta"));
    }

    #[test]
    fn cor_p1_direct_plugin() {
        let y = cor_p1_direct(&Real::one(P), 3, 1, &BigInt::from(5), &BigInt::one(), 1).unwrap();
        let oracle = 3f64.powi(25) * 5.0 * 5f64.ln().powi(2);
        assert!(close(&y, oracle, 1e-12));
    }

    #[test]
    fn cor_p1_profile_matches_direct_when_t_equals_s() {
        let b = cor_p1_profile();
        let e = Env::new(Real::zero(P), Real::from_int(2, P), Real::from_int(7, P), Real::zero(P), Real::one(P)).unwrap();
        let y = b.eval(&e, P).unwrap();
        let direct = cor_p1_direct(&Real::one(P), 2, 2, &BigInt::from(7), &BigInt::one(), 1).unwrap();
        assert!(close(&y, direct.mid_f64(), 1e-12));
    }

    #[test]
    fn bilu_constants_at_3_2() {
        let (a, b, c) = bilu_constants(3, 2);
        assert_eq!((a, b, c), (6912.into(), 180.into(), 72000.into()));
        let p = bilu_profile(3, 2);
        assert_eq!(p.constant("N1"), Some(&BigRational::from_integer(6912.into())));
    }

    #[test]
    fn named_gammas() {
        let mut se = se_abc_profile();
        se.set_constant("d_f", q(2, 1), Provenance::UserHypothetical);
        let g1 = se.eval_named("gamma_1", &env([0.0, 0.0, 1.0, 0.0, 1.0]), P).unwrap();
        assert!(g1.contains(&q(4, 1)));
        let ex = abc_exp_profile();
        let g2 = ex.eval_named("gamma_2", &env([0.0, 0.0, 1.0, 0.0, 3.0]), P).unwrap();
        assert!(g2.contains(&q(5, 1)) && g2.lo() == g2.hi());
    }

    #[test]
    fn morph_fini_identity_and_shift() {
        let b = cor_p1_profile();
        let z0 = BigRational::zero();
        let one = BigRational::one();
        let m = morph_fini_transform(&b, &z0, &z0, &z0, &one).unwrap();
        let e = env([2.0, 3.0, 5.0, 1.5, 2.0]);
        let (x, y) = (b.eval(&e, P).unwrap(), m.eval(&e, P).unwrap());
        assert!(close(&x, y.mid_f64(), 1e-20));

        let lin = BoundProfile::new("u", u());
        let l2 = q(6931471805599453, 10_000_000_000_000_000);
        let m = morph_fini_transform(&lin, &l2, &z0, &z0, &q(3, 1)).unwrap();
        let y = m.eval(&env([1.25, 0.0, 1.0, 0.0, 1.0]), P).unwrap();
        assert!(close(&y, 3.0 * (1.25 + 0.6931471805599453), 1e-14));
    }

    fn p1_oracle(c_d: f64, u: f64, v: f64, w: f64, z: f64, d: f64) -> f64 {
        let _ = u;
        c_d.powf(v) * v.powf(5.0 * (v + 2.0)) * w.powf(d) * w.ln().max(1.0).powf(2.0 * v) * z.exp() * z.max(1.0).powf(2.0 * d - 2.0)
    }

    #[test]
    fn morph_fini_over_p1_matches_hand_expansion() {
        let b = cor_p1_profile();
        let l30 = 30f64.ln();
        let lq = q(340119738166215537, 100_000_000_000_000_000);
        let m = morph_fini_transform(&b, &lq, &q(3, 1), &q(5, 1), &q(2, 1)).unwrap();
        let samples = [
            [0.0, 0.0, 1.0, 0.0, 1.0],
            [1.5, 1.0, 2.0, 0.5, 1.0],
            [3.0, 2.0, 7.0, 2.0, 2.0],
            [10.0, 4.0, 11.0, 3.0, 3.0],
            [0.25, 0.5, 1.5, 5.0, 1.0],
        ];
        for s in samples {
            let y = m.eval(&env(s), P).unwrap();
            let o = 2.0 * p1_oracle(1.0, s[0] + l30, s[1] + 3.0, s[2] + 5.0, s[3], s[4]);
            assert!(close(&y, o, 1e-9), "{s:?}: {} vs {o}", y.mid_f64());
        }
    }

    #[test]
    fn revet_degree_one_reduces() {
        let zb = BoundProfile::new("z", z());
        let z0 = BigRational::zero();
        let one = BigRational::one();
        let r = revet_etale_transform(&zb, 1, &z0, &z0, &z0, &one, &default_c0(), false).unwrap();
        let y = r.eval(&env([2.5, 1.0, 3.0, 4.0, 2.0]), P).unwrap();
        assert!(close(&y, 6.5, 1e-20));
    }

    #[test]
    fn revet_gamma_d_at_u_plus_uphi_e() {
        let zb = BoundProfile::new("z", z());
        let z0 = BigRational::zero();
        let e_f = std::f64::consts::E;
        let uphi = q(1, 2);
        let u0 = e_f - 0.5;
        let c0 = default_c0();
        for strict in [false, true] {
            let r = revet_etale_transform(&zb, 2, &uphi, &z0, &z0, &BigRational::one(), &c0, strict).unwrap();
            let e = env([u0, 0.0, 1.0, 1.25, 3.0]);
            let gd = r.eval_named("gamma_d", &e, P).unwrap();
            let s = u0 + 0.5;
            let o = 2.0 * (1.25 + s + 1.39 * 3.0 * 2f64.ln() * s / s.ln());
            assert!(close(&gd, o, 1e-12));
            assert!(close(&r.eval(&e, P).unwrap(), o, 1e-12));
        }
    }

    #[test]
    fn strict_revet_rejects_small_u() {
        let zb = BoundProfile::new("z", z());
        let z0 = BigRational::zero();
        let r = revet_etale_transform(&zb, 2, &z0, &z0, &z0, &BigRational::one(), &default_c0(), true).unwrap();
        assert!(matches!(r.eval(&env([0.5, 0.0, 1.0, 0.0, 1.0]), P), Err(Error::DomainError(_))));
        let lax = revet_etale_transform(&zb, 2, &z0, &z0, &z0, &BigRational::one(), &default_c0(), false).unwrap();
        assert!(lax.eval(&env([0.5, 0.0, 1.0, 0.0, 1.0]), P).is_ok());
    }

    #[test]
    fn ellip_pattern_reproduced() {
        let b = ellip_reconstruction(&default_c0()).unwrap();
        let pat = exponent_pattern(&b).unwrap();
        assert!(pat.matches_ellip(), "{pat:?}");
        let direct = exponent_pattern(&ellip_profile()).unwrap();
        assert!(direct.matches_ellip());
        let base = exponent_pattern(&cor_p1_profile()).unwrap();
        assert!(!base.matches_ellip());
    }

    #[test]
    fn profiles_roundtrip_json() {
        for b in builtin_profiles() {
            let back = BoundProfile::from_json(&b.to_json()).unwrap();
            assert_eq!(back, b);
        }
        let r = ellip_reconstruction(&default_c0()).unwrap();
        assert_eq!(BoundProfile::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn builtin_profiles_are_monotone() {
        for b in builtin_profiles() {
            let rep = check_monotonicity(&b, 60, 7, 64).unwrap();
            assert!(rep.passed(), "{}: {:?}", b.name, rep.violations.first().map(|(a, c)| (a.to_json(), c.to_json())));
            assert_eq!(rep.domain_errors, 0, "{}", b.name);
        }
    }

    #[test]
    fn four_var_is_bugeaud_gyory_with_regulator_bound() {
        let bg = bugeaud_gyory_squared();
        let c1 = q(3, 2);
        let log_h = q(5, 2);
        let rt = regulator_bound_expr().replace_const("c1", &numq(c1.clone()));
        let mut composed = bg.clone();
        composed.expr = bg.expr.replace_const("R_T", &rt);
        composed.set_constant("log_H", log_h.clone(), Provenance::UserHypothetical);
        composed.set_constant("prod_log", q(7, 3), Provenance::UserHypothetical);
        let mut fv = four_var_profile();
        fv.set_constant("c2", q(2, 1) * &c1 * &c1 * &log_h, Provenance::UserHypothetical);
        fv.set_constant("prod_log", q(7, 3), Provenance::UserHypothetical);
        for s in [[0.0, 1.0, 2.0, 0.5, 1.0], [2.0, 3.0, 5.0, 1.0, 2.0], [4.0, 2.0, 7.0, 3.0, 3.0], [1.0, 4.0, 3.0, 2.5, 4.0], [0.0, 5.0, 13.0, 4.0, 2.0]] {
            let e = env(s);
            let a = composed.eval(&e, P).unwrap();
            let b = fv.eval(&e, P).unwrap();
            assert!(close(&a, b.mid_f64(), 1e-25), "{s:?}");
        }
    }

    #[test]
    fn min_c0_values() {
        let m3 = min_c0(3, P).unwrap();
        let t = 30f64.ln();
        assert!(close(&m3.value, 3.0 * t.ln() / t, 1e-14));
        assert!((m3.value.mid_f64() - 1.0797).abs() < 1e-4);
        let mut prev = 0.0;
        for r in [3, 5, 10, 50, 200] {
            let m = min_c0(r, P).unwrap().value.mid_f64();
            assert!(m >= prev);
            prev = m;
        }
    }

    #[test]
    fn default_c0_is_rounded_min_c0() {
        let oracle = {
            let mut t = 0f64;
            let mut best = 0f64;
            for (i, p) in first_primes(100_000).iter().enumerate() {
                t += (*p as f64).ln();
                if i >= 2 {
                    best = best.max((i + 1) as f64 * t.ln() / t);
                }
            }
            best
        };
        let m = min_c0(100_000, P).unwrap();
        assert!(close(&m.value, oracle, 1e-12));
        assert_eq!(round_up_2dp(&m.value), default_c0());
    }

    #[test]
    fn sigma_lemma_examples() {
        let qf = rationals();
        let s = PlaceSet::above_primes(&qf, &[2.into(), 3.into(), 5.into()], true).unwrap();
        let r = check_sigma_lemma(&s, &q(2, 1), P).unwrap();
        assert_eq!(r.holds, Decision::True);
        let t = 30f64.ln();
        assert!(close(&r.bound_p, 2.0 * t / t.ln(), 1e-14));
        let small = PlaceSet::new(&qf, vec![rational_prime(&2.into()), rational_prime(&3.into())], false).unwrap();
        assert!(matches!(check_sigma_lemma(&small, &q(2, 1), P), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn discriminant_lemma_examples() {
        let qf = rationals();
        let l = quadratic_field(30).unwrap();
        let r = PlaceSet::above_primes(&qf, &ramified_primes(&l).unwrap(), false).unwrap();
        let rep = check_discriminant_lemma(&qf, &l, &r, &q(2, 1), P).unwrap();
        let t = 30f64.ln();
        assert!(close(&rep.rhs, 2.0 * (t + 2.0 * 2f64.ln() * t / t.ln()), 1e-13));
        assert!(close(&rep.lhs, 120f64.ln(), 1e-14));
        assert_eq!(rep.holds, Decision::True);
        let l = quadratic_field(210).unwrap();
        let r = PlaceSet::above_primes(&qf, &ramified_primes(&l).unwrap(), false).unwrap();
        assert_eq!(check_discriminant_lemma(&qf, &l, &r, &default_c0(), P).unwrap().holds, Decision::True);
        let l = quadratic_field(-1).unwrap();
        let r = PlaceSet::above_primes(&qf, &ramified_primes(&l).unwrap(), false).unwrap();
        assert!(matches!(check_discriminant_lemma(&qf, &l, &r, &q(2, 1), P), Err(Error::HypothesisNotMet(_))));
    }

    fn triples(ts: &[(i64, i64, i64)]) -> Vec<ABCTriple> {
        ts.iter().map(|&(a, b, c)| ABCTriple::from_ints(&a.into(), &b.into(), &c.into()).unwrap()).collect()
    }

    #[test]
    fn corpus_stewart_yu_eta() {
        let c = corpus_from_triples(&triples(&[(1, 8, 9)]), P).unwrap();
        let rep = corpus_report(&stewart_yu_profile(), &c, "eta", P).unwrap();
        let x = 6f64.ln();
        let oracle = 9f64.ln() / (x.powi(3) * (x / 3.0).exp());
        let got = rep.minimal.to_f64().unwrap();
        assert!((got - oracle).abs() <= 2e-6 * oracle, "{got} vs {oracle}");
        assert!(rep.violations_at_default.is_empty());
    }

    #[test]
    fn corpus_abc_c() {
        let mut b = abc_profile();
        b.set_constant("eps", BigRational::zero(), Provenance::UserHypothetical);
        let c = corpus_from_triples(&triples(&[(1, 8, 9), (2, 6436341, 6436343)]), P).unwrap();
        let rep = corpus_report(&b, &c, "c", P).unwrap();
        let oracle = (9f64.ln() - 6f64.ln()).max(6436343f64.ln() - 15042f64.ln());
        let got = rep.minimal.to_f64().unwrap();
        assert!((got - oracle).abs() <= 2e-6 * oracle);
        assert_eq!(rep.violations_at_default, vec!["(2, 6436341, 6436343)".to_string()]);
    }

    #[test]
    fn corpus_dominated_profile_has_zero_minimum() {
        let b = BoundProfile::new("exp", mul(vec![cst("k"), exp(u())])).hyp("k", 1);
        let c = corpus_from_triples(&triples(&[(1, 8, 9), (1, 2, 3), (5, 27, 32)]), P).unwrap();
        let rep = corpus_report(&b, &c, "k", P).unwrap();
        assert!(rep.minimal <= BigRational::one());
        assert!(rep.violations_at_default.is_empty());
    }

    #[test]
    fn non_monotone_free_constant_is_detected() {
        let k = cst("k");
        let e = mul(vec![k.clone(), exp(add(vec![num(3), mul(vec![q_expr(-1, 2), k])]))]);
        let b = BoundProfile::new("hump", e).hyp("k", 1);
        let c = corpus_from_triples(&triples(&[(1, 8, 9)]), P).unwrap();
        assert!(matches!(corpus_report(&b, &c, "k", P), Err(Error::NonMonotoneConstant(_))));
    }

    fn q_expr(n: i64, m: i64) -> BoundExpr {
        numq(q(n, m))
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("1.25"), Some(q(5, 4)));
        assert_eq!(parse_rational("-0.5"), Some(q(-1, 2)));
        assert_eq!(parse_rational("7/3"), Some(q(7, 3)));
        assert_eq!(parse_rational("12"), Some(q(12, 1)));
        assert_eq!(parse_rational("x"), None);
    }
}
