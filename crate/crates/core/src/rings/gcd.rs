//! Multivariate gcd by content / primitive-part recursion with a subresultant
//! remainder sequence in the main variable.

use super::{Coeff, Poly};
use crate::error::{Error, Result};

/// Canonical-associate greatest common divisor.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    a.ring().check_same(b.ring())?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    Ok(gcd_rec(a, b)?.canonical())
}

pub fn gcd_all<'a>(items: impl IntoIterator<Item = &'a Poly>) -> Result<Option<Poly>> {
    let mut acc: Option<Poly> = None;
    for p in items {
        acc = Some(match acc {
            None => p.canonical(),
            Some(g) if g.is_zero() && p.is_zero() => g,
            Some(g) => gcd(&g, p)?,
        });
    }
    Ok(acc)
}

pub fn lcm(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() || b.is_zero() {
        return Ok(Poly::zero(a.ring()));
    }
    let g = gcd(a, b)?;
    let q = a.exact_div(&g)?.ok_or_else(|| Error::internal("gcd does not divide its argument"))?;
    Ok((&q * b).canonical())
}

/// Gcd of the coefficients of `a` viewed as a polynomial in `var`.
pub fn content_in(a: &Poly, var: usize) -> Result<Poly> {
    let coeffs = a.coefficients_in(var);
    let mut acc = Poly::zero(a.ring());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = gcd_rec(&acc, c)?;
        if acc.is_unit() {
            break;
        }
    }
    Ok(acc.canonical())
}

fn first_var(a: &Poly, b: &Poly) -> Option<usize> {
    (0..a.ring().nvars()).find(|&v| a.involves(v) || b.involves(v))
}

fn gcd_rec(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() {
        return Ok(b.canonical());
    }
    if b.is_zero() {
        return Ok(a.canonical());
    }
    let Some(v) = first_var(a, b) else {
        let dom = a.ring().coeffs();
        let g: Coeff = dom.gcd(&a.lc(), &b.lc());
        return Ok(Poly::constant(a.ring(), g));
    };
    if !a.involves(v) {
        return gcd_rec(a, &content_in(b, v)?);
    }
    if !b.involves(v) {
        return gcd_rec(&content_in(a, v)?, b);
    }
    let ca = content_in(a, v)?;
    let cb = content_in(b, v)?;
    let pa = div(a, &ca)?;
    let pb = div(b, &cb)?;
    let g = subresultant_gcd(&pa, &pb, v)?;
    let c = gcd_rec(&ca, &cb)?;
    Ok((&c * &g).canonical())
}

fn div(a: &Poly, b: &Poly) -> Result<Poly> {
    a.exact_div(b)?.ok_or_else(|| Error::internal(format!("expected {b} to divide {a}")))
}

fn deg(u: &[Poly]) -> usize {
    u.len() - 1
}

fn trim(mut u: Vec<Poly>) -> Vec<Poly> {
    while u.len() > 1 && u.last().unwrap().is_zero() {
        u.pop();
    }
    u
}

/// Pseudo-remainder of `a` by `b`, both dense in the main variable.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r = a.to_vec();
    let mut count = (deg(a) + 1).saturating_sub(db) as u32;
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = deg(&r);
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly> = r.iter().map(|c| c * &lb).collect();
        for (k, bk) in b.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(&lr * bk);
        }
        r = trim(next);
        count = count.saturating_sub(1);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        if deg(&r) < db {
            break;
        }
    }
    let scale = lb.pow(count);
    r.iter().map(|c| c * &scale).collect()
}

fn is_zero_uni(u: &[Poly]) -> bool {
    u.iter().all(|c| c.is_zero())
}

fn subresultant_gcd(a: &Poly, b: &Poly, v: usize) -> Result<Poly> {
    let ring = a.ring();
    let mut pa = a.coefficients_in(v);
    let mut pb = b.coefficients_in(v);
    if deg(&pa) < deg(&pb) {
        std::mem::swap(&mut pa, &mut pb);
    }
    let mut g = Poly::one(ring);
    let mut h = Poly::one(ring);
    loop {
        let d = (deg(&pa) - deg(&pb)) as u32;
        let r = trim(prem(&pa, &pb));
        if is_zero_uni(&r) {
            break;
        }
        if deg(&r) == 0 {
            return Ok(Poly::one(ring));
        }
        pa = pb;
        let denom = &g * &h.pow(d);
        pb = r.iter().map(|c| div(c, &denom)).collect::<Result<Vec<_>>>()?;
        g = pa[deg(&pa)].clone();
        if d > 0 {
            let num = g.pow(d);
            h = div(&num, &h.pow(d - 1))?;
        }
    }
    let res = Poly::from_coefficients_in(ring, v, &pb);
    let c = content_in(&res, v)?;
    div(&res, &c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{parse_poly, CoeffDomain, MonomialOrder, Ring};

    fn p(r: &Ring, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn integer_gcd() {
        let z = Ring::integers();
        assert_eq!(gcd(&Poly::from_int(&z, 4), &Poly::from_int(&z, 6)).unwrap(), Poly::from_int(&z, 2));
        assert_eq!(gcd(&Poly::from_int(&z, -4), &Poly::zero(&z)).unwrap(), Poly::from_int(&z, 4));
    }

    #[test]
    fn content_and_primitive_part() {
        let r = Ring::zx();
        assert_eq!(gcd(&p(&r, "2*x + 2"), &p(&r, "4*x + 4")).unwrap(), p(&r, "2*x + 2"));
        assert_eq!(gcd(&p(&r, "6*x^2 - 6"), &p(&r, "4*x + 4")).unwrap(), p(&r, "2*x + 2"));
    }

    #[test]
    fn monomial_gcd() {
        let r = Ring::qxy();
        assert_eq!(gcd(&p(&r, "x^2*y"), &p(&r, "x*y^2")).unwrap(), p(&r, "x*y"));
    }

    #[test]
    fn bivariate_common_factor() {
        let r = Ring::qxy();
        let a = p(&r, "(x + y)^2 * (x - 1)");
        let b = p(&r, "(x + y) * (y^2 + 3) * (x - 1)^2");
        assert_eq!(gcd(&a, &b).unwrap(), p(&r, "x^2 + x*y - x - y"));
    }

    #[test]
    fn zero_zero_is_undefined() {
        let r = Ring::qxy();
        assert_eq!(gcd(&Poly::zero(&r), &Poly::zero(&r)), Err(Error::UndefinedGcd));
    }

    #[test]
    fn prime_field_gcd() {
        let r = Ring::polynomial(CoeffDomain::PrimeField(3), &["x", "y"], MonomialOrder::GrevLex).unwrap();
        let a = p(&r, "(x + 2*y) * (x^2 + 1)");
        let b = p(&r, "(x + 2*y) * (y + 1)");
        assert_eq!(gcd(&a, &b).unwrap(), p(&r, "x + 2*y"));
    }
}
