use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use super::Ring;
use crate::error::{Error, Result};

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// Sparse polynomial: nonzero terms sorted in decreasing monomial order.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ring == other.ring
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, Coeff::one())
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Poly {
        Poly::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &Ring, n: i64) -> Poly {
        Poly::constant(ring, ring.coeffs().from_int(n))
    }

    pub fn var(ring: &Ring, i: usize) -> Poly {
        Poly::monomial(ring, Monomial::var(ring.nvars(), i, 1), Coeff::one())
    }

    /// Single term; the coefficient is normalized into the ring's domain.
    pub fn monomial(ring: &Ring, mono: Monomial, c: Coeff) -> Poly {
        let c = ring.coeffs().normalize(c).expect("coefficient outside domain");
        let terms = if c.is_zero() { Vec::new() } else { vec![Term { mono, coeff: c }] };
        Poly { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Ring, raw: Vec<(Monomial, Coeff)>) -> Result<Poly> {
        let dom = ring.coeffs();
        let mut terms = Vec::with_capacity(raw.len());
        for (mono, c) in raw {
            if mono.exps().len() != ring.nvars() {
                return Err(Error::usage("exponent vector length differs from variable count"));
            }
            terms.push(Term { mono, coeff: dom.normalize(c)? });
        }
        Ok(Poly::from_sorted_candidates(ring, terms))
    }

    fn from_sorted_candidates(ring: &Ring, mut terms: Vec<Term>) -> Poly {
        terms.sort_by(|a, b| ring.cmp_mono(&b.mono, &a.mono));
        let dom = ring.coeffs();
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = dom.add(&last.coeff, &t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Poly { ring: ring.clone(), terms: out }
    }

    pub(crate) fn from_ordered_terms(ring: &Ring, terms: Vec<Term>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| ring.cmp_mono(&w[0].mono, &w[1].mono) == Ordering::Greater));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one() && self.terms[0].coeff.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn constant_value(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::zero()),
            [t] if t.mono.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lc(&self) -> Coeff {
        self.terms.first().map(|t| t.coeff.clone()).unwrap_or_else(Coeff::zero)
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.exps()[var]).max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.mono.exps()[var] > 0)
    }

    /// Sum of coefficient heights; with the total degree this forms the size
    /// measure used by search heuristics.
    pub fn height(&self) -> num_bigint::BigInt {
        let dom = self.ring.coeffs();
        self.terms.iter().map(|t| dom.height(&t.coeff)).sum()
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Poly, subtract: bool) -> Poly {
        let dom = self.ring.coeffs();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                self.ring.cmp_mono(&a[i].mono, &b[j].mono)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { dom.neg(&b[j].coeff) } else { b[j].coeff.clone() };
                    out.push(Term { mono: b[j].mono.clone(), coeff: c });
                    j += 1;
                }
                Ordering::Equal => {
                    let c =
                        if subtract { dom.sub(&a[i].coeff, &b[j].coeff) } else { dom.add(&a[i].coeff, &b[j].coeff) };
                    if !c.is_zero() {
                        out.push(Term { mono: a[i].mono.clone(), coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { ring: self.ring.clone(), terms: out }
    }

    fn product(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].mono, &other.terms[0].coeff);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].mono, &self.terms[0].coeff);
        }
        let dom = self.ring.coeffs();
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for s in &self.terms {
            for t in &other.terms {
                raw.push(Term { mono: s.mono.mul(&t.mono), coeff: dom.mul(&s.coeff, &t.coeff) });
            }
        }
        Poly::from_sorted_candidates(&self.ring, raw)
    }

    /// Multiplication by a single term keeps the term order.
    pub fn mul_term(&self, mono: &Monomial, c: &Coeff) -> Poly {
        let dom = self.ring.coeffs();
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { mono: t.mono.mul(mono), coeff: dom.mul(&t.coeff, c) })
            .filter(|t| !t.coeff.is_zero())
            .collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        match self.constant_value() {
            Some(c) => self.ring.coeffs().is_unit(&c),
            None => false,
        }
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Poly> {
        let c = self.constant_value()?;
        let inv = self.ring.coeffs().inv(&c)?;
        Some(Poly::constant(&self.ring, inv))
    }

    /// Returns `(u, a)` with `self = u * a`, `u` a unit and `a` canonical:
    /// positive leading coefficient over `Z`, monic over a field.
    pub fn canonical_associate(&self) -> (Poly, Poly) {
        let dom = self.ring.coeffs();
        let u = dom.unit_part(&self.lc());
        let inv = dom.inv(&u).expect("unit part is invertible");
        (Poly::constant(&self.ring, u), self.scale(&inv))
    }

    pub fn canonical(&self) -> Poly {
        self.canonical_associate().1
    }

    pub fn is_associate_of(&self, other: &Poly) -> bool {
        self.canonical() == other.canonical()
    }

    /// Exact quotient `self / b`: `Ok(None)` when `b` does not divide `self`.
    /// Every returned quotient has been re-multiplied against `self`.
    pub fn exact_div(&self, b: &Poly) -> Result<Option<Poly>> {
        self.ring.check_same(&b.ring)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dom = self.ring.coeffs();
        let lt = &b.terms[0];
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(t) = rem.terms.first() {
            if !lt.mono.divides(&t.mono) {
                return Ok(None);
            }
            let Some(c) = dom.div_exact(&t.coeff, &lt.coeff) else {
                return Ok(None);
            };
            let m = lt.mono.quotient_of(&t.mono);
            rem = rem.merge(&b.mul_term(&m, &c), true);
            quot.push(Term { mono: m, coeff: c });
        }
        let q = Poly::from_ordered_terms(&self.ring, quot);
        if &(&q * b) != self {
            return Err(Error::internal("exact division failed its multiplication check"));
        }
        Ok(Some(q))
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.exact_div(self)?.is_some())
    }

    /// Multivariate division by a single divisor. Every term divisible by the
    /// leading monomial of `b` is reduced; over the integers coefficients are
    /// reduced to their remainder modulo the leading coefficient.
    pub fn div_rem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.ring.check_same(&b.ring)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dom = self.ring.coeffs();
        let lt = &b.terms[0];
        let mut work = self.clone();
        let mut quot = Poly::zero(&self.ring);
        let mut rem = Vec::new();
        while let Some(t) = work.terms.first().cloned() {
            if lt.mono.divides(&t.mono) {
                let (qc, rc) = dom.div_rem(&t.coeff, &lt.coeff);
                if !qc.is_zero() {
                    let m = lt.mono.quotient_of(&t.mono);
                    work = work.merge(&b.mul_term(&m, &qc), true);
                    quot = quot.merge(&Poly::monomial(&self.ring, m, qc), false);
                    if !rc.is_zero() {
                        // leading term is now the remainder coefficient
                        let head = work.terms.remove(0);
                        rem.push(head);
                    }
                    continue;
                }
            }
            rem.push(work.terms.remove(0));
        }
        Ok((quot, Poly::from_ordered_terms(&self.ring, rem)))
    }

    /// Evaluates variable `var` at `value`, returning a polynomial in the same ring.
    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.ring);
        let mut powers: Vec<Poly> = vec![Poly::one(&self.ring)];
        for t in &self.terms {
            let e = t.mono.exps()[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut exps = t.mono.exps().to_vec();
            exps[var] = 0;
            let rest = Poly::monomial(&self.ring, Monomial::new(exps), t.coeff.clone());
            acc = &acc + &(&rest * &powers[e]);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let dom = self.ring.coeffs();
        let raw = self
            .terms
            .iter()
            .filter(|t| t.mono.exps()[var] > 0)
            .map(|t| {
                let e = t.mono.exps()[var];
                let mut exps = t.mono.exps().to_vec();
                exps[var] -= 1;
                Term { mono: Monomial::new(exps), coeff: dom.mul(&t.coeff, &dom.from_int(e as i64)) }
            })
            .collect();
        Poly::from_sorted_candidates(&self.ring, raw)
    }

    /// Coefficients with respect to `var`: entry `k` collects the terms of
    /// degree `k` in `var`, with that variable removed.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut parts: Vec<Vec<Term>> = vec![Vec::new(); deg + 1];
        for t in &self.terms {
            let mut exps = t.mono.exps().to_vec();
            let e = exps[var] as usize;
            exps[var] = 0;
            parts[e].push(Term { mono: Monomial::new(exps), coeff: t.coeff.clone() });
        }
        parts.into_iter().map(|ts| Poly::from_sorted_candidates(&self.ring, ts)).collect()
    }

    pub fn from_coefficients_in(ring: &Ring, var: usize, coeffs: &[Poly]) -> Poly {
        let mut raw = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for t in &c.terms {
                let mut exps = t.mono.exps().to_vec();
                exps[var] += k as u32;
                raw.push(Term { mono: Monomial::new(exps), coeff: t.coeff.clone() });
            }
        }
        Poly::from_sorted_candidates(ring, raw)
    }

    /// Integer content for `Z` coefficients, 1 for field coefficients (0 for zero).
    pub fn coefficient_content(&self) -> Coeff {
        let dom = self.ring.coeffs();
        self.terms.iter().fold(Coeff::zero(), |acc, t| dom.gcd(&acc, &t.coeff))
    }

    /// Copy of this polynomial re-expressed in a different ring with the same
    /// variables and coefficient domain (e.g. another monomial order).
    pub fn reorder(&self, ring: &Ring) -> Result<Poly> {
        if ring.nvars() != self.ring.nvars() || ring.coeffs() != self.ring.coeffs() {
            return Err(Error::DescriptorMismatch(self.ring.to_string(), ring.to_string()));
        }
        Ok(Poly::from_sorted_candidates(ring, self.terms.clone()))
    }

    /// Canonical comparison key: degree, then printed form.
    pub fn sort_key(&self) -> (u32, usize, String) {
        (self.total_degree().unwrap_or(0), self.terms.len(), self.to_string())
    }

    pub(crate) fn neg_in_place(&self) -> Poly {
        let dom = self.ring.coeffs();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|t| Term { mono: t.mono.clone(), coeff: dom.neg(&t.coeff) }).collect(),
        }
    }
}

fn fmt_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let mag = t.coeff.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || t.mono.is_one() {
                factors.push(fmt_coeff(&mag));
            }
            for (v, &e) in self.ring.vars().iter().zip(t.mono.exps()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("operands from different rings")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_in_place()
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_in_place()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{parse_poly, CoeffDomain, MonomialOrder};

    fn qx() -> Ring {
        Ring::polynomial(CoeffDomain::Rationals, &["x"], MonomialOrder::Lex).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = qx();
        assert_eq!(p(&r, "x + 1") * p(&r, "x - 1"), p(&r, "x^2 - 1"));
    }

    #[test]
    fn hand_expansion_over_zx() {
        let r = Ring::zx();
        assert_eq!(p(&r, "2*x + 3") * p(&r, "3*x + 2"), p(&r, "6*x^2 + 13*x + 6"));
    }

    #[test]
    fn exact_division_examples() {
        let r = Ring::zx();
        let q = p(&r, "6*x^2 + 13*x + 6").exact_div(&p(&r, "2*x + 3")).unwrap();
        assert_eq!(q, Some(p(&r, "3*x + 2")));
        let a = p(&r, "x^2 - 7");
        assert_eq!(a.exact_div(&Poly::one(&r)).unwrap(), Some(a.clone()));
        let r = qx();
        assert_eq!(p(&r, "x^2 + 1").exact_div(&p(&r, "x + 1")).unwrap(), None);
        assert_eq!(p(&r, "x").exact_div(&Poly::zero(&r)), Err(Error::DivisionByZero));
    }

    #[test]
    fn units_and_associates() {
        let r = Ring::zx();
        assert!(Poly::from_int(&r, -1).is_unit());
        assert!(!Poly::from_int(&r, 2).is_unit());
        let r = qx();
        assert!(!p(&r, "x").is_unit());
        let (u, a) = p(&r, "-3*x").canonical_associate();
        assert_eq!(u, Poly::from_int(&r, -3));
        assert_eq!(a, p(&r, "x"));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = Poly::var(&qx(), 0);
        let b = Poly::var(&Ring::zx(), 0);
        assert!(matches!(a.checked_add(&b), Err(Error::DescriptorMismatch(..))));
    }

    #[test]
    fn remainder_division_in_zx() {
        let r = Ring::zx();
        let (q, rem) = p(&r, "3*x + 4").div_rem(&Poly::from_int(&r, 3)).unwrap();
        assert_eq!(q, p(&r, "x + 1"));
        assert_eq!(rem, Poly::one(&r));
    }
}
