//! Best-effort factorization for desk-scale inputs.
//!
//! Integers are factored by trial division. Polynomials are split by content,
//! monomial extraction and squarefree decomposition; what remains is handled
//! by big-prime Zassenhaus (univariate over `Z`/`Q`), Cantor-Zassenhaus
//! (univariate over `F_p`), and Kronecker substitution reducing the
//! multivariate case to the univariate one. Whenever a search budget runs out
//! the result is flagged incomplete instead of guessing.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::coeff::big;
use super::gcd::{content_in, gcd};
use super::unifactor::{factor_squarefree_mod_p, zassenhaus, ModPoly};
use super::{Coeff, CoeffDomain, Monomial, MonomialOrder, Poly, Ring};
use crate::error::{Error, Result};

const TRIAL_DIVISION_LIMIT: u64 = 2_000_000;
const MAX_IMAGE_DEGREE: u64 = 48;
const SUBSET_BUDGET: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Unit with `unit * prod(p^e) == input`.
    pub unit: Poly,
    /// Canonical prime factors with multiplicities, sorted canonically.
    pub factors: Vec<(Poly, u32)>,
    /// False when some reported factor could not be certified irreducible.
    pub complete: bool,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut acc = self.unit.clone();
        for (p, e) in &self.factors {
            acc = &acc * &p.pow(*e);
        }
        acc
    }
}

pub fn factor(a: &Poly) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::usage("cannot factor zero"));
    }
    if a.is_unit() {
        return Err(Error::usage("cannot factor a unit"));
    }
    let ring = a.ring().clone();
    let mut out = Vec::new();
    let mut complete = true;
    let (_, f) = a.canonical_associate();
    let content = f.coefficient_content();
    let mut f = f;
    if matches!(ring.coeffs(), CoeffDomain::Integers) && !content.is_one() {
        let (primes, done) = factor_integer(content.numer());
        complete &= done;
        for (p, e) in primes {
            for _ in 0..e {
                out.push(Poly::constant(&ring, big(p.clone())));
            }
        }
        f = f.exact_div(&Poly::constant(&ring, content))?.ok_or_else(|| Error::internal("content does not divide"))?;
    }
    if !f.is_unit() {
        complete &= split(&f, &mut out)?;
    }
    let mut merged: BTreeMap<(u32, usize, String), (Poly, u32)> = BTreeMap::new();
    for p in out {
        let p = p.canonical();
        merged.entry(p.sort_key()).and_modify(|e| e.1 += 1).or_insert((p, 1));
    }
    let factors: Vec<(Poly, u32)> = merged.into_values().collect();
    let mut prod = Poly::one(&ring);
    for (p, e) in &factors {
        prod = &prod * &p.pow(*e);
    }
    let unit = a
        .exact_div(&prod)?
        .filter(|u| u.is_unit())
        .ok_or_else(|| Error::internal("factors do not multiply back to the input"))?;
    Ok(Factorization { unit, factors, complete })
}

/// Trial division; the flag is false when a cofactor above the search limit remains unproven.
pub(crate) fn factor_integer(n: &BigInt) -> (Vec<(BigInt, u32)>, bool) {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    let mut steps = 0u64;
    while &d * &d <= n {
        if steps > TRIAL_DIVISION_LIMIT {
            out.push((n, 1));
            return (out, false);
        }
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
        steps += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    (out, true)
}

fn divide(a: &Poly, b: &Poly) -> Result<Poly> {
    a.exact_div(b)?.ok_or_else(|| Error::internal(format!("expected {b} to divide {a}")))
}

/// Pushes the irreducible factors of a primitive non-unit `f` onto `out`.
fn split(f: &Poly, out: &mut Vec<Poly>) -> Result<bool> {
    let ring = f.ring().clone();
    let n = ring.nvars();
    if f.is_unit() {
        return Ok(true);
    }
    if f.is_constant() {
        // field coefficients: constants are units; integer content was removed already
        return Err(Error::internal(format!("unexpected constant factor {f}")));
    }
    // monomial content
    let mut mins = vec![u32::MAX; n];
    for t in f.terms() {
        for (m, e) in mins.iter_mut().zip(t.mono.exps()) {
            *m = (*m).min(*e);
        }
    }
    if mins.iter().any(|&e| e > 0) {
        let mono = Monomial::new(mins.clone());
        for (v, &e) in mins.iter().enumerate() {
            for _ in 0..e {
                out.push(Poly::var(&ring, v));
            }
        }
        let rest = divide(f, &Poly::monomial(&ring, mono, Coeff::one()))?;
        return if rest.is_unit() { Ok(true) } else { split(&rest, out) };
    }
    // content with respect to each variable
    for v in 0..n {
        if !f.involves(v) {
            continue;
        }
        let c = content_in(f, v)?;
        if !c.is_unit() {
            let rest = divide(f, &c)?;
            let a = split(&c, out)?;
            let b = split(&rest, out)?;
            return Ok(a && b);
        }
    }
    // characteristic p with every derivative zero: f is a p-th power
    if let CoeffDomain::PrimeField(p) = ring.coeffs() {
        if (0..n).all(|v| f.derivative(v).is_zero()) {
            let p = *p as u32;
            let raw = f
                .terms()
                .iter()
                .map(|t| (Monomial::new(t.mono.exps().iter().map(|e| e / p).collect()), t.coeff.clone()))
                .collect();
            let root = Poly::from_terms(&ring, raw)?;
            let mut inner = Vec::new();
            let ok = split(&root, &mut inner)?;
            for _ in 0..p {
                out.extend(inner.iter().cloned());
            }
            return Ok(ok);
        }
    }
    // squarefree splitting
    for v in 0..n {
        let d = f.derivative(v);
        if d.is_zero() {
            continue;
        }
        let g = gcd(f, &d)?;
        if !g.is_unit() {
            let rest = divide(f, &g)?;
            let a = split(&g, out)?;
            let b = split(&rest, out)?;
            return Ok(a && b);
        }
        break;
    }
    // linear in some variable and primitive there: irreducible
    if (0..n).any(|v| f.degree_in(v) == Some(1)) {
        out.push(f.canonical());
        return Ok(true);
    }
    match find_factor(f)? {
        Search::Found(h) => {
            let rest = divide(f, &h)?;
            let a = split(&h.canonical(), out)?;
            let b = split(&rest.canonical(), out)?;
            Ok(a && b)
        }
        Search::Irreducible => {
            out.push(f.canonical());
            Ok(true)
        }
        Search::GaveUp => {
            out.push(f.canonical());
            Ok(false)
        }
    }
}

enum Search {
    Found(Poly),
    Irreducible,
    GaveUp,
}

fn involved_vars(f: &Poly) -> Vec<usize> {
    (0..f.ring().nvars()).filter(|&v| f.involves(v)).collect()
}

fn find_factor(f: &Poly) -> Result<Search> {
    let vars = involved_vars(f);
    if vars.len() == 1 {
        return univariate_search(f, vars[0]);
    }
    let ring = f.ring();
    // Kronecker substitution with mixed radix: x_{v_k} -> t^(w_k), w_{k+1} = w_k * (deg_{v_k} f + 1).
    let radix: Vec<u64> = vars.iter().map(|&v| f.degree_in(v).unwrap_or(0) as u64 + 1).collect();
    let image_ring = Ring::polynomial(ring.coeffs().clone(), &["t"], MonomialOrder::Lex)?;
    let mut raw = Vec::new();
    for t in f.terms() {
        let mut e = 0u64;
        let mut w = 1u64;
        for (k, &v) in vars.iter().enumerate() {
            e += t.mono.exps()[v] as u64 * w;
            w = w.saturating_mul(radix[k]);
        }
        if e > MAX_IMAGE_DEGREE {
            return Ok(Search::GaveUp);
        }
        raw.push((Monomial::new(vec![e as u32]), t.coeff.clone()));
    }
    let image = Poly::from_terms(&image_ring, raw)?;
    let fact = factor(&image)?;
    if !fact.complete {
        return Ok(Search::GaveUp);
    }
    let parts: Vec<Poly> = fact
        .factors
        .iter()
        .filter(|(p, _)| !p.is_constant())
        .flat_map(|(p, e)| std::iter::repeat_n(p.clone(), *e as usize))
        .collect();
    // recombine sub-multisets of the univariate image factors
    let mut tried = 0usize;
    for size in 1..=parts.len() / 2 {
        for subset in (0..parts.len()).combinations(size) {
            tried += 1;
            if tried > SUBSET_BUDGET {
                return Ok(Search::GaveUp);
            }
            let mut prod = Poly::one(&image_ring);
            for &i in &subset {
                prod = &prod * &parts[i];
            }
            for sign in [1i64, -1] {
                if sign < 0 && ring.coeffs().is_field() {
                    continue;
                }
                let Some(cand) = inverse_kronecker(ring, &vars, &radix, &prod, sign) else {
                    continue;
                };
                if cand.is_constant() {
                    continue;
                }
                if let Some(q) = f.exact_div(&cand)? {
                    if !q.is_unit() {
                        return Ok(Search::Found(cand));
                    }
                }
            }
        }
    }
    Ok(Search::Irreducible)
}

/// `f` is primitive, squarefree and involves only `var`.
fn univariate_search(f: &Poly, var: usize) -> Result<Search> {
    let ring = f.ring();
    let deg = f.degree_in(var).unwrap_or(0) as usize;
    let mut dense = vec![Coeff::zero(); deg + 1];
    for t in f.terms() {
        dense[t.mono.exps()[var] as usize] = t.coeff.clone();
    }
    let parts: Vec<Vec<Coeff>> = match ring.coeffs() {
        CoeffDomain::PrimeField(p) => {
            let p = *p;
            let m = ModPoly::new(p, dense.iter().map(|c| c.to_integer().to_u64().unwrap_or(0)).collect());
            factor_squarefree_mod_p(&m.monic(), p)
                .into_iter()
                .map(|g| g.coeffs().iter().map(|&c| big(BigInt::from(c))).collect())
                .collect()
        }
        _ => {
            let den = dense.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let ints: Vec<BigInt> = dense.iter().map(|c| (c * big(den.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            let ints: Vec<BigInt> = ints.into_iter().map(|c| c / &g).collect();
            match zassenhaus(&ints) {
                Some(parts) => parts.into_iter().map(|g| g.into_iter().map(big).collect()).collect(),
                None => return Ok(Search::GaveUp),
            }
        }
    };
    if parts.len() < 2 {
        return Ok(Search::Irreducible);
    }
    let raw = parts[0]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (Monomial::var(ring.nvars(), var, e as u32), c.clone()))
        .collect();
    Ok(Search::Found(Poly::from_terms(ring, raw)?))
}

fn inverse_kronecker(ring: &Ring, vars: &[usize], radix: &[u64], g: &Poly, sign: i64) -> Option<Poly> {
    let mut raw = Vec::new();
    for t in g.terms() {
        let mut exps = vec![0u32; ring.nvars()];
        let mut rest = t.mono.exps()[0] as u64;
        for (k, &v) in vars.iter().enumerate() {
            exps[v] = (rest % radix[k]) as u32;
            rest /= radix[k];
        }
        if rest != 0 {
            return None;
        }
        raw.push((Monomial::new(exps), &t.coeff * BigRational::from_integer(sign.into())));
    }
    Poly::from_terms(ring, raw).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{parse_poly, MonomialOrder};

    fn p(r: &Ring, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    fn strings(f: &Factorization) -> Vec<(String, u32)> {
        f.factors.iter().map(|(p, e)| (p.to_string(), *e)).collect()
    }

    #[test]
    fn integers() {
        let z = Ring::integers();
        let f = factor(&Poly::from_int(&z, 6)).unwrap();
        assert_eq!(strings(&f), vec![("2".into(), 1), ("3".into(), 1)]);
        assert!(f.complete);
        let f = factor(&Poly::from_int(&z, -360)).unwrap();
        assert_eq!(f.expand(), Poly::from_int(&z, -360));
        assert_eq!(f.unit, Poly::from_int(&z, -1));
    }

    #[test]
    fn prime_power_and_difference_of_squares() {
        let r = Ring::qxy();
        let f = factor(&p(&r, "x^2")).unwrap();
        assert_eq!(strings(&f), vec![("x".into(), 2)]);
        let qx = Ring::polynomial(CoeffDomain::Rationals, &["x"], MonomialOrder::Lex).unwrap();
        let f = factor(&p(&qx, "x^2 - 1")).unwrap();
        assert_eq!(strings(&f), vec![("x + 1".into(), 1), ("x - 1".into(), 1)]);
    }

    #[test]
    fn univariate_quartic() {
        let r = Ring::zx();
        let a = p(&r, "(x^2 + x + 1) * (x^2 - 2) * 6");
        let f = factor(&a).unwrap();
        assert!(f.complete);
        assert_eq!(f.expand(), a);
        assert_eq!(f.factors.len(), 4);
        let irr = factor(&p(&r, "x^4 + 1")).unwrap();
        assert_eq!(irr.factors.len(), 1);
    }

    #[test]
    fn kronecker_substitution_bivariate() {
        let r = Ring::qxy();
        let a = p(&r, "(x*y + 2) * (x*y - 3)");
        let f = factor(&a).unwrap();
        assert!(f.complete);
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(), a);
        let big = p(&r, "(x^3*y^2 + x + y^3 + 1) * (x^3*y^3 - 2*x^2 + y + 5)");
        let f = factor(&big).unwrap();
        assert_eq!(f.expand(), big);
        assert!(!f.complete || f.factors.len() == 2);
        let f = factor(&p(&r, "x^2 + y^2")).unwrap();
        assert_eq!(f.factors.len(), 1);
    }

    #[test]
    fn prime_field_search() {
        let r = Ring::polynomial(CoeffDomain::PrimeField(2), &["x"], MonomialOrder::Lex).unwrap();
        let f = factor(&p(&r, "x^2 + 1")).unwrap();
        assert_eq!(strings(&f), vec![("x + 1".into(), 2)]);
        let f = factor(&p(&r, "x^2 + x + 1")).unwrap();
        assert_eq!(f.factors.len(), 1);
        let f = factor(&p(&r, "x^4 + x")).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert!(f.complete);
    }

    #[test]
    fn rejects_zero_and_units() {
        let r = Ring::zx();
        assert!(factor(&Poly::zero(&r)).is_err());
        assert!(factor(&Poly::from_int(&r, -1)).is_err());
    }
}
