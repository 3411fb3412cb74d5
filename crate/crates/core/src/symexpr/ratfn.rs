//! Canonical scalar expressions: rational functions in coordinate symbols and
//! `sin`/`cos`/`exp` atoms.
//!
//! A `ScalarExpr` is stored as `num / Π fᵢ^kᵢ` where `num` is a Laurent
//! polynomial (monomial denominators live in its negative exponents) and each
//! `fᵢ` is a monic polynomial without monomial content. After every operation
//! denominator factors dividing the numerator are cancelled, so a zero
//! expression always has the literal zero numerator.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::coeff::{ratio_to_f64, Coeff};
use super::poly::{Monomial, Poly, Var};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct RatFn {
    num: Poly,
    den: BTreeMap<Poly, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarExpr(Arc<RatFn>);

/// Why an evaluation could not produce a finite value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    Pole,
    NotRational,
    UnboundSymbol(String),
}

pub type ExactPoint = BTreeMap<Arc<str>, BigRational>;

impl ScalarExpr {
    fn from_parts(num: Poly, den: BTreeMap<Poly, u32>) -> Self {
        ScalarExpr(Arc::new(reduce(num, den)))
    }

    pub fn from_poly(p: Poly) -> Self {
        ScalarExpr(Arc::new(RatFn { num: p, den: BTreeMap::new() }))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Coeff::from_int(n))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self::constant(Coeff::ratio(num, den))
    }

    pub fn imag_unit() -> Self {
        Self::constant(Coeff::i())
    }

    pub fn sym(name: &str) -> Self {
        Self::from_poly(Poly::var(Var::sym(name)))
    }

    fn from_var(v: Var, e: i32) -> Self {
        Self::from_poly(Poly::term(Monomial::var(v, e), Coeff::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        if self.0.den.is_empty() {
            self.0.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.den.is_empty()
    }

    /// Number of numerator terms plus denominator terms; a rough size measure.
    pub fn size(&self) -> usize {
        self.0.num.len() + self.0.den.keys().map(Poly::len).sum::<usize>()
    }

    fn lead_is_negative(&self) -> bool {
        self.0.num.leading().is_some_and(|(_, c)| c.is_negative_lead())
    }

    pub fn sin(arg: &ScalarExpr) -> Self {
        if arg.is_zero() {
            return Self::zero();
        }
        if arg.lead_is_negative() {
            return -Self::from_var(Var::Sin(-arg), 1);
        }
        Self::from_var(Var::Sin(arg.clone()), 1)
    }

    pub fn cos(arg: &ScalarExpr) -> Self {
        if arg.is_zero() {
            return Self::one();
        }
        if arg.lead_is_negative() {
            return Self::from_var(Var::Cos(-arg), 1);
        }
        Self::from_var(Var::Cos(arg.clone()), 1)
    }

    /// `exp` with the argument split over its terms: `exp(p/q · m)` becomes
    /// the atom `exp(m/q)` raised to `p`, so `exp(-z)·exp(z)` cancels.
    pub fn exp(arg: &ScalarExpr) -> Self {
        if arg.is_zero() {
            return Self::one();
        }
        if !arg.is_polynomial() {
            if arg.lead_is_negative() {
                return Self::from_var(Var::Exp(-arg), -1);
            }
            return Self::from_var(Var::Exp(arg.clone()), 1);
        }
        let mut mono = Monomial::one();
        for (m, c) in arg.0.num.terms() {
            let factor = if c.is_real() {
                let r = c.re();
                let p = r.numer().clone();
                let q = r.denom().clone();
                match i32::try_from(p) {
                    Ok(p) if p.abs() <= 64 => {
                        let base = Poly::term(m.clone(), Coeff::real(BigRational::new(1.into(), q)));
                        Monomial::var(Var::Exp(ScalarExpr::from_poly(base)), p)
                    }
                    _ => exp_atom_signed(Poly::term(m.clone(), c.clone())),
                }
            } else {
                exp_atom_signed(Poly::term(m.clone(), c.clone()))
            };
            mono = mono.mul(&factor);
        }
        Self::from_poly(Poly::term(mono, Coeff::one()))
    }

    pub fn neg(&self) -> Self {
        ScalarExpr(Arc::new(RatFn { num: self.0.num.neg(), den: self.0.den.clone() }))
    }

    pub fn add(&self, other: &ScalarExpr) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.0.den == other.0.den {
            return Self::from_parts(self.0.num.add(&other.0.num), self.0.den.clone());
        }
        let mut lcm = self.0.den.clone();
        for (f, k) in &other.0.den {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(*k);
        }
        let na = lift(&self.0.num, &self.0.den, &lcm);
        let nb = lift(&other.0.num, &other.0.den, &lcm);
        Self::from_parts(na.add(&nb), lcm)
    }

    pub fn sub(&self, other: &ScalarExpr) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ScalarExpr) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let mut den = self.0.den.clone();
        for (f, k) in &other.0.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        Self::from_parts(self.0.num.mul(&other.0.num), den)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarExpr(Arc::new(RatFn { num: self.0.num.scale(c), den: self.0.den.clone() }))
    }

    /// Multiplicative inverse; `None` for the zero expression.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let content = self.0.num.content_monomial();
        let stripped = self.0.num.mul_term(&Monomial::one().div(&content), &Coeff::one());
        let (q, lc) = stripped.monic();
        let lc_inv = lc.inv()?;
        let mut num = Poly::term(Monomial::one().div(&content), lc_inv);
        let mut den = BTreeMap::new();
        let q_is_unit = q.as_constant().is_some();
        let mut q_absorbed = q_is_unit;
        for (f, k) in &self.0.den {
            let mut k = *k;
            if !q_absorbed && f == &q {
                k -= 1;
                q_absorbed = true;
            }
            if k > 0 {
                num = num.mul(&f.pow(k));
            }
        }
        if !q_absorbed {
            den.insert(q, 1);
        }
        Some(Self::from_parts(num, den))
    }

    pub fn checked_div(&self, other: &ScalarExpr) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }

    pub fn powi(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        if e == 0 {
            return Some(Self::one());
        }
        if let Some((m, c)) = base.0.num.as_monomial().filter(|_| base.is_polynomial()) {
            return Some(Self::from_poly(Poly::term(m.pow(e as i32), c.pow(e))));
        }
        let num = base.0.num.pow(e);
        let den = base.0.den.iter().map(|(f, k)| (f.clone(), k * e)).collect();
        Some(ScalarExpr(Arc::new(RatFn { num, den })))
    }

    /// Exact square root up to sign, when numerator and denominator are squares.
    pub fn sqrt_exact(&self) -> Option<Self> {
        let num = self.0.num.sqrt_exact()?;
        let mut out = Self::from_poly(num);
        for (f, k) in &self.0.den {
            let piece = if k % 2 == 0 {
                Self::from_poly(f.pow(k / 2))
            } else {
                Self::from_poly(f.sqrt_exact()?.pow(*k))
            };
            out = out.checked_div(&piece)?;
        }
        Some(out)
    }

    /// Partial derivative with respect to the coordinate symbol `x`.
    pub fn diff(&self, x: &str) -> Self {
        let mut cache = HashMap::new();
        let dnum = poly_diff(&self.0.num, x, &mut cache);
        if self.0.den.is_empty() {
            return dnum;
        }
        let inv_den = ScalarExpr(Arc::new(RatFn { num: Poly::one(), den: self.0.den.clone() }));
        let mut out = dnum.mul(&inv_den);
        for (f, k) in &self.0.den {
            let df = poly_diff(f, x, &mut cache);
            if df.is_zero() {
                continue;
            }
            let mut den = self.0.den.clone();
            *den.get_mut(f).unwrap() += 1;
            let part = Self::from_parts(self.0.num.scale(&Coeff::from_int(-(*k as i64))), den);
            out = out.add(&part.mul(&df));
        }
        out
    }

    /// Every coordinate symbol occurring anywhere, including atom arguments.
    pub fn symbols(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<Arc<str>>) {
        let polys = std::iter::once(&self.0.num).chain(self.0.den.keys());
        for p in polys {
            for v in p.vars() {
                match v {
                    Var::Sym(s) => {
                        out.insert(s.clone());
                    }
                    Var::Sin(a) | Var::Cos(a) | Var::Exp(a) => a.collect_symbols(out),
                }
            }
        }
    }

    pub fn has_atoms(&self) -> bool {
        std::iter::once(&self.0.num)
            .chain(self.0.den.keys())
            .any(|p| p.vars().any(Var::is_atom))
    }

    pub fn is_real(&self) -> bool {
        fn poly_real(p: &Poly) -> bool {
            p.terms().all(|(m, c)| {
                c.is_real()
                    && m.factors().iter().all(|(v, _)| match v {
                        Var::Sym(_) => true,
                        Var::Sin(a) | Var::Cos(a) | Var::Exp(a) => a.is_real(),
                    })
            })
        }
        poly_real(&self.0.num) && self.0.den.keys().all(poly_real)
    }

    /// Substitute expressions for symbols; unmapped symbols stay as they are.
    pub fn subst(&self, map: &dyn Fn(&str) -> Option<ScalarExpr>) -> Self {
        let mut cache: HashMap<Var, ScalarExpr> = HashMap::new();
        let num = eval_poly_symbolic(&self.0.num, map, &mut cache, &|c| c.clone());
        let mut out = num;
        for (f, k) in &self.0.den {
            let fv = eval_poly_symbolic(f, map, &mut cache, &|c| c.clone());
            let fk = fv.powi(*k as i32).expect("integer power");
            out = out.checked_div(&fk).expect("substitution produced a zero denominator");
        }
        out
    }

    /// Complex conjugate, taken through atom arguments as well.
    pub fn conj(&self) -> Self {
        if self.is_real() {
            return self.clone();
        }
        let mut cache: HashMap<Var, ScalarExpr> = HashMap::new();
        let conj_coeff = |c: &Coeff| c.conj();
        let num = eval_poly_conj(&self.0.num, &mut cache, &conj_coeff);
        let mut out = num;
        for (f, k) in &self.0.den {
            let fv = eval_poly_conj(f, &mut cache, &conj_coeff);
            out = out.checked_div(&fv.powi(*k as i32).unwrap()).unwrap();
        }
        out
    }

    /// Exact value at a rational point; fails on atoms or poles.
    pub fn eval_exact(&self, point: &ExactPoint) -> Result<Coeff, EvalError> {
        let num = eval_poly_exact(&self.0.num, point)?;
        let mut den = Coeff::one();
        for (f, k) in &self.0.den {
            let v = eval_poly_exact(f, point)?;
            if v.is_zero() {
                return Err(EvalError::Pole);
            }
            den = &den * &v.pow(*k);
        }
        Ok(&num / &den)
    }

    /// Floating-point value together with the magnitude scale of the numerator
    /// terms (used to judge cancellation against a tolerance).
    pub fn eval_complex(&self, point: &BTreeMap<Arc<str>, f64>) -> Result<(Complex64, f64), EvalError> {
        let (num, scale) = eval_poly_complex(&self.0.num, point)?;
        let mut den = Complex64::new(1.0, 0.0);
        for (f, k) in &self.0.den {
            let (v, s) = eval_poly_complex(f, point)?;
            if v.norm() <= 1e-12 * s.max(1e-300) {
                return Err(EvalError::Pole);
            }
            den *= v.powu(*k);
        }
        let val = num / den;
        let scale = scale / den.norm();
        if !val.re.is_finite() || !val.im.is_finite() {
            return Err(EvalError::Pole);
        }
        Ok((val, scale))
    }

    pub(crate) fn numerator(&self) -> &Poly {
        &self.0.num
    }

    pub(crate) fn denominator_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.0.den.iter().map(|(f, k)| (f, *k))
    }
}

fn exp_atom_signed(arg: Poly) -> Monomial {
    let e = ScalarExpr::from_poly(arg);
    if e.lead_is_negative() {
        Monomial::var(Var::Exp(-&e), -1)
    } else {
        Monomial::var(Var::Exp(e), 1)
    }
}

/// Numerator rescaled from denominator `from` to the larger denominator `to`.
fn lift(num: &Poly, from: &BTreeMap<Poly, u32>, to: &BTreeMap<Poly, u32>) -> Poly {
    let mut out = num.clone();
    for (f, k) in to {
        let have = from.get(f).copied().unwrap_or(0);
        if *k > have {
            out = out.mul(&f.pow(k - have));
        }
    }
    out
}

fn reduce(mut num: Poly, den: BTreeMap<Poly, u32>) -> RatFn {
    if num.is_zero() {
        return RatFn { num, den: BTreeMap::new() };
    }
    let mut kept = BTreeMap::new();
    for (f, mut k) in den {
        while k > 0 {
            match num.div_exact(&f) {
                Some(q) => {
                    num = q;
                    k -= 1;
                }
                None => break,
            }
        }
        if k > 0 {
            kept.insert(f, k);
        }
    }
    RatFn { num, den: kept }
}

fn atom_diff(v: &Var, x: &str) -> ScalarExpr {
    match v {
        Var::Sym(s) => {
            if &**s == x {
                ScalarExpr::one()
            } else {
                ScalarExpr::zero()
            }
        }
        Var::Sin(a) => {
            let da = a.diff(x);
            if da.is_zero() {
                da
            } else {
                ScalarExpr::cos(a).mul(&da)
            }
        }
        Var::Cos(a) => {
            let da = a.diff(x);
            if da.is_zero() {
                da
            } else {
                ScalarExpr::sin(a).mul(&da).neg()
            }
        }
        Var::Exp(a) => {
            let da = a.diff(x);
            if da.is_zero() {
                da
            } else {
                ScalarExpr::from_var(v.clone(), 1).mul(&da)
            }
        }
    }
}

fn poly_diff(p: &Poly, x: &str, cache: &mut HashMap<Var, ScalarExpr>) -> ScalarExpr {
    let mut plain = Poly::zero();
    let mut extra = ScalarExpr::zero();
    for (m, c) in p.terms() {
        for (v, e) in m.factors() {
            let rest = m.div(&Monomial::var(v.clone(), 1));
            let k = c * &Coeff::from_int(*e as i64);
            match v {
                Var::Sym(s) => {
                    if &**s == x {
                        plain = plain.add(&Poly::term(rest, k));
                    }
                }
                _ => {
                    let dv = cache.entry(v.clone()).or_insert_with(|| atom_diff(v, x)).clone();
                    if !dv.is_zero() {
                        extra = extra.add(&ScalarExpr::from_poly(Poly::term(rest, k)).mul(&dv));
                    }
                }
            }
        }
    }
    ScalarExpr::from_poly(plain).add(&extra)
}

fn eval_poly_symbolic(
    p: &Poly,
    map: &dyn Fn(&str) -> Option<ScalarExpr>,
    cache: &mut HashMap<Var, ScalarExpr>,
    coeff: &dyn Fn(&Coeff) -> Coeff,
) -> ScalarExpr {
    let mut out = ScalarExpr::zero();
    for (m, c) in p.terms() {
        let mut t = ScalarExpr::constant(coeff(c));
        for (v, e) in m.factors() {
            let val = cache
                .entry(v.clone())
                .or_insert_with(|| match v {
                    Var::Sym(s) => map(s).unwrap_or_else(|| ScalarExpr::sym(s)),
                    Var::Sin(a) => ScalarExpr::sin(&a.subst(map)),
                    Var::Cos(a) => ScalarExpr::cos(&a.subst(map)),
                    Var::Exp(a) => ScalarExpr::exp(&a.subst(map)),
                })
                .clone();
            t = t.mul(&val.powi(*e).expect("substituted a zero into a negative power"));
        }
        out = out.add(&t);
    }
    out
}

fn eval_poly_conj(p: &Poly, cache: &mut HashMap<Var, ScalarExpr>, coeff: &dyn Fn(&Coeff) -> Coeff) -> ScalarExpr {
    let mut out = ScalarExpr::zero();
    for (m, c) in p.terms() {
        let mut t = ScalarExpr::constant(coeff(c));
        for (v, e) in m.factors() {
            let val = cache
                .entry(v.clone())
                .or_insert_with(|| match v {
                    Var::Sym(s) => ScalarExpr::sym(s),
                    Var::Sin(a) => ScalarExpr::sin(&a.conj()),
                    Var::Cos(a) => ScalarExpr::cos(&a.conj()),
                    Var::Exp(a) => ScalarExpr::from_var(Var::Exp(a.conj()), 1),
                })
                .clone();
            t = t.mul(&val.powi(*e).unwrap());
        }
        out = out.add(&t);
    }
    out
}

fn eval_poly_exact(p: &Poly, point: &ExactPoint) -> Result<Coeff, EvalError> {
    let mut acc = Coeff::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (v, e) in m.factors() {
            let Var::Sym(s) = v else {
                return Err(EvalError::NotRational);
            };
            let val = point.get(s).ok_or_else(|| EvalError::UnboundSymbol(s.to_string()))?;
            if *e < 0 && val.is_zero() {
                return Err(EvalError::Pole);
            }
            let pw = if *e >= 0 {
                num_traits::pow(val.clone(), *e as usize)
            } else {
                num_traits::pow(val.recip(), (-*e) as usize)
            };
            t = &t * &Coeff::real(pw);
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

fn eval_var_complex(v: &Var, point: &BTreeMap<Arc<str>, f64>) -> Result<Complex64, EvalError> {
    Ok(match v {
        Var::Sym(s) => {
            Complex64::new(*point.get(s).ok_or_else(|| EvalError::UnboundSymbol(s.to_string()))?, 0.0)
        }
        Var::Sin(a) => a.eval_complex(point)?.0.sin(),
        Var::Cos(a) => a.eval_complex(point)?.0.cos(),
        Var::Exp(a) => a.eval_complex(point)?.0.exp(),
    })
}

fn eval_poly_complex(p: &Poly, point: &BTreeMap<Arc<str>, f64>) -> Result<(Complex64, f64), EvalError> {
    let mut cache: HashMap<&Var, Complex64> = HashMap::new();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (m, c) in p.terms() {
        let mut t = c.to_complex64();
        for (v, e) in m.factors() {
            let val = match cache.get(v) {
                Some(x) => *x,
                None => {
                    let x = eval_var_complex(v, point)?;
                    cache.insert(v, x);
                    x
                }
            };
            if *e < 0 && val.norm() == 0.0 {
                return Err(EvalError::Pole);
            }
            t *= val.powi(*e);
        }
        scale += t.norm();
        acc += t;
    }
    Ok((acc, scale))
}

// ---------------------------------------------------------------------------
// operators

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::neg(self)
    }
}

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::neg(&self)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: &ScalarExpr) -> ScalarExpr {
                ScalarExpr::$inner(self, rhs)
            }
        }
        impl $trait<ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: ScalarExpr) -> ScalarExpr {
                ScalarExpr::$inner(&self, &rhs)
            }
        }
        impl $trait<&ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: &ScalarExpr) -> ScalarExpr {
                ScalarExpr::$inner(&self, rhs)
            }
        }
        impl $trait<ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: ScalarExpr) -> ScalarExpr {
                ScalarExpr::$inner(self, &rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl From<i64> for ScalarExpr {
    fn from(n: i64) -> Self {
        ScalarExpr::int(n)
    }
}

impl std::iter::Sum for ScalarExpr {
    fn sum<I: Iterator<Item = ScalarExpr>>(iter: I) -> Self {
        iter.fold(ScalarExpr::zero(), |a, b| a.add(&b))
    }
}

// ---------------------------------------------------------------------------
// printing

fn fmt_var(v: &Var, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match v {
        Var::Sym(s) => write!(f, "{s}"),
        Var::Sin(a) => write!(f, "sin({a})"),
        Var::Cos(a) => write!(f, "cos({a})"),
        Var::Exp(a) => write!(f, "exp({a})"),
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (k, (v, e)) in m.factors().iter().enumerate() {
        if k > 0 {
            write!(f, "*")?;
        }
        fmt_var(v, f)?;
        if *e < 0 {
            write!(f, "^({e})")?;
        } else if *e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

struct PolyDisplay<'a>(&'a Poly);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.0.terms().rev().enumerate() {
            let (neg, mag) = if c.is_real() && c.re().is_negative() { (true, -c) } else { (false, c.clone()) };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap_num = !self.0.den.is_empty() && self.0.num.len() > 1;
        if wrap_num {
            write!(f, "({})", PolyDisplay(&self.0.num))?;
        } else {
            write!(f, "{}", PolyDisplay(&self.0.num))?;
        }
        if self.0.den.is_empty() {
            return Ok(());
        }
        write!(f, "/(")?;
        for (k, (p, e)) in self.0.den.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "({})", PolyDisplay(p))?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        write!(f, ")")
    }
}

pub(crate) fn point_to_f64(point: &ExactPoint) -> BTreeMap<Arc<str>, f64> {
    point.iter().map(|(k, v)| (k.clone(), ratio_to_f64(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> ScalarExpr {
        ScalarExpr::sym(n)
    }

    #[test]
    fn cancellation_to_zero() {
        let x = s("x");
        let y = s("y");
        let e = (&x + &y) * (&x - &y) - (&x * &x - &y * &y);
        assert!(e.is_zero());
        let q = (&x * &x - &y * &y).checked_div(&(&x - &y)).unwrap();
        assert_eq!(q, &x + &y);
    }

    #[test]
    fn rational_function_sums() {
        let x = s("x");
        let a = ScalarExpr::one().checked_div(&(&x + &ScalarExpr::one())).unwrap();
        let b = ScalarExpr::one().checked_div(&(&x - &ScalarExpr::one())).unwrap();
        let lhs = &a + &b;
        let rhs = (x.scale(&Coeff::from_int(2)))
            .checked_div(&(&x * &x - ScalarExpr::one()))
            .unwrap();
        assert!((lhs - rhs).is_zero());
    }

    #[test]
    fn exponentials_cancel() {
        let z = s("z");
        let e = ScalarExpr::exp(&z) * ScalarExpr::exp(&-&z);
        assert!(e.is_one());
        assert_eq!(ScalarExpr::exp(&z).diff("z"), ScalarExpr::exp(&z));
    }

    #[test]
    fn trig_derivatives_and_parity() {
        let x = s("x");
        assert_eq!(ScalarExpr::sin(&x).diff("x"), ScalarExpr::cos(&x));
        assert_eq!(ScalarExpr::sin(&-&x), -ScalarExpr::sin(&x));
        assert_eq!(ScalarExpr::cos(&-&x), ScalarExpr::cos(&x));
    }

    #[test]
    fn quotient_rule() {
        let x = s("x");
        let f = ScalarExpr::one().checked_div(&(&x * &x + ScalarExpr::one())).unwrap();
        let expected = (x.scale(&Coeff::from_int(-2)))
            .checked_div(&(&x * &x + ScalarExpr::one()).powi(2).unwrap())
            .unwrap();
        assert!((f.diff("x") - expected).is_zero());
    }

    #[test]
    fn square_root_of_rational_square() {
        let x = s("x");
        let d = &x * &x + ScalarExpr::one();
        let e = ScalarExpr::int(64).checked_div(&d.powi(6).unwrap()).unwrap();
        let r = e.sqrt_exact().unwrap();
        let expected = ScalarExpr::int(8).checked_div(&d.powi(3).unwrap()).unwrap();
        assert!(r == expected || r == -expected);
    }
}
