//! Sparse multivariate Laurent polynomials over the Gaussian rationals.
//!
//! Variables are coordinate symbols or transcendental atoms (`sin`, `cos`,
//! `exp` of a canonical argument). Terms are kept in a `BTreeMap` ordered by
//! graded lexicographic order, so the leading term is the last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use super::coeff::Coeff;
use super::ratfn::ScalarExpr;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Sym(Arc<str>),
    Sin(ScalarExpr),
    Cos(ScalarExpr),
    Exp(ScalarExpr),
}

impl Var {
    pub fn sym(name: &str) -> Self {
        Var::Sym(Arc::from(name))
    }

    pub fn is_atom(&self) -> bool {
        !matches!(self, Var::Sym(_))
    }
}

/// Product of variable powers; exponents are nonzero and variables sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| *e as i64).sum()
    }

    pub fn exponent(&self, v: &Var) -> i32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    fn merge(&self, other: &Monomial, sign: i32) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => {
                        out.push((va.clone(), *ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((vb.clone(), sign * eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        let e = ea + sign * eb;
                        if e != 0 {
                            out.push((va.clone(), e));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((va, ea)), None) => {
                    out.push((va.clone(), *ea));
                    a.next();
                }
                (None, Some((vb, eb))) => {
                    out.push((vb.clone(), sign * eb));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        self.merge(other, 1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        self.merge(other, -1)
    }

    pub fn pow(&self, e: i32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, x)| (v.clone(), x * e)).collect())
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|(_, e)| *e > 0)
    }

    /// Componentwise minimum of exponents (absent variables count as 0).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => {
                        if *ea < 0 {
                            out.push((va.clone(), *ea));
                        }
                        a.next();
                    }
                    Ordering::Greater => {
                        if *eb < 0 {
                            out.push((vb.clone(), *eb));
                        }
                        b.next();
                    }
                    Ordering::Equal => {
                        let e = (*ea).min(*eb);
                        if e != 0 {
                            out.push((va.clone(), e));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((va, ea)), None) => {
                    if *ea < 0 {
                        out.push((va.clone(), *ea));
                    }
                    a.next();
                }
                (None, Some((vb, eb))) => {
                    if *eb < 0 {
                        out.push((vb.clone(), *eb));
                    }
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    pub fn sqrt(&self) -> Option<Monomial> {
        if self.0.iter().any(|(_, e)| e % 2 != 0) {
            return None;
        }
        Some(Monomial(self.0.iter().map(|(v, e)| (v.clone(), e / 2)).collect()))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order; smaller variables are more significant.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut a, mut b) = (self.0.iter(), other.0.iter());
        let (mut x, mut y) = (a.next(), b.next());
        loop {
            match (x, y) {
                (None, None) => return Ordering::Equal,
                (Some((_, ea)), None) => return ea.cmp(&0),
                (None, Some((_, eb))) => return 0.cmp(eb),
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        x = a.next();
                        y = b.next();
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Coeff) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Poly::constant(Coeff::one())
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Monomial::var(v, 1), Coeff::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let s = slot.get() + &c;
                if s.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &Coeff) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul_term(&self, mono: &Monomial, k: &Coeff) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c * k)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Largest monomial dividing every term (exponents may be negative).
    pub fn content_monomial(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for m in it {
            g = g.gcd(m);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact quotient by `d`, or `None` when `d` does not divide `self`.
    ///
    /// `d` must be free of monomial content; `self` may be a Laurent polynomial.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some((dm, dc)) = d.as_monomial() {
            let inv = dc.inv()?;
            return Some(Poly {
                terms: self.terms.iter().map(|(m, c)| (m.div(dm), c * &inv)).collect(),
            });
        }
        let shift = self.content_monomial();
        let mut rem = self.mul_term(&Monomial::one().div(&shift), &Coeff::one());
        let (dlm, dlc) = d.leading().unwrap();
        let dlc_inv = dlc.inv()?;
        let mut quot = Poly::zero();
        // Every quotient term must be a genuine monomial; the bound caps work
        // on inputs that are clearly not divisible.
        let budget = 64 + 4 * rem.len() * d.len();
        for _ in 0..budget {
            let Some((rlm, rlc)) = rem.leading() else {
                return Some(quot.mul_term(&shift, &Coeff::one()));
            };
            let qm = rlm.div(dlm);
            if !qm.is_nonneg() && !qm.is_one() {
                return None;
            }
            let qc = rlc * &dlc_inv;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        None
    }

    /// Exact square root up to sign, when `self` is a perfect square.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let content = self.content_monomial();
        let root_content = content.sqrt()?;
        let reduced = self.mul_term(&Monomial::one().div(&content), &Coeff::one());
        let (lm, lc) = reduced.leading().unwrap();
        let mut root = Poly::term(lm.sqrt()?, lc.sqrt_exact()?);
        let min_deg = reduced.terms.keys().map(Monomial::degree).min().unwrap_or(0);
        let (rlm, rlc) = {
            let (m, c) = root.leading().unwrap();
            (m.clone(), c.clone())
        };
        let two_lead_inv = (&Coeff::from_int(2) * &rlc).inv()?;
        let mut rem = reduced.sub(&root.mul(&root));
        let budget = 4 * reduced.len() + 16;
        for _ in 0..budget {
            let Some((m, c)) = rem.leading() else {
                return Some(root.mul_term(&root_content, &Coeff::one()));
            };
            let tm = m.div(&rlm);
            if !(tm.is_nonneg() || tm.is_one()) || 2 * tm.degree() < min_deg {
                return None;
            }
            let tc = c * &two_lead_inv;
            let t = Poly::term(tm, tc);
            // (root + t)^2 = root^2 + 2 root t + t^2
            rem = rem.sub(&root.mul(&t).scale(&Coeff::from_int(2))).sub(&t.mul(&t));
            root = root.add(&t);
        }
        None
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| v))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Scalar multiple that makes the leading coefficient one, and that multiple.
    pub fn monic(&self) -> (Poly, Coeff) {
        match self.leading() {
            None => (Poly::zero(), Coeff::one()),
            Some((_, c)) => {
                let inv = c.inv().unwrap();
                (self.scale(&inv), c.clone())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(Var::sym("x"))
    }
    fn y() -> Poly {
        Poly::var(Var::sym("y"))
    }

    #[test]
    fn exact_division_detects_factors() {
        let a = x().add(&y());
        let b = x().sub(&y());
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.add(&Poly::one()).div_exact(&a), None);
    }

    #[test]
    fn square_roots_of_squares() {
        let p = x().add(&y().scale(&Coeff::from_int(3))).add(&Poly::one());
        let sq = p.mul(&p);
        let r = sq.sqrt_exact().unwrap();
        assert!(r == p || r == p.neg());
        assert!(sq.add(&x()).sqrt_exact().is_none());
    }

    #[test]
    fn grlex_leading_term() {
        let p = x().mul(&x()).add(&x().mul(&y()).mul(&y()));
        let (m, _) = p.leading().unwrap();
        assert_eq!(m.degree(), 3);
    }
}
