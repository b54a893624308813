//! Exact arithmetic over the supported factorial domains: `Z`, and polynomial
//! rings in finitely many variables over `Z`, `Q` or a prime field.
//!
//! The integers are modelled as a polynomial ring in zero variables with
//! integer coefficients, so a single sparse polynomial type covers every ring.

mod coeff;
mod factor;
mod gcd;
mod parse;
mod poly;
mod unifactor;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

pub use coeff::{Coeff, CoeffDomain};
pub use factor::{factor, Factorization};
pub use gcd::{content_in, gcd, gcd_all, lcm};
pub use parse::parse_poly;
pub use poly::{Monomial, Poly, Term};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Polynomial,
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    kind: RingKind,
    coeffs: CoeffDomain,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// Shared handle to a ring descriptor. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingDescriptor>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

fn valid_var_name(v: &str) -> bool {
    let mut chars = v.chars();
    matches!(chars.next(), Some('a'..='z')) && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

impl Ring {
    pub fn integers() -> Ring {
        Ring(Arc::new(RingDescriptor {
            kind: RingKind::Integers,
            coeffs: CoeffDomain::Integers,
            vars: Vec::new(),
            order: MonomialOrder::GrevLex,
        }))
    }

    pub fn polynomial<S: AsRef<str>>(coeffs: CoeffDomain, vars: &[S], order: MonomialOrder) -> Result<Ring> {
        if let CoeffDomain::PrimeField(p) = coeffs {
            CoeffDomain::prime_field(p)?;
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_var_name(v) {
                return Err(Error::usage(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::usage(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Ring(Arc::new(RingDescriptor { kind: RingKind::Polynomial, coeffs, vars, order })))
    }

    /// `Z[x]`, the ring of the first motivating example.
    pub fn zx() -> Ring {
        Ring::polynomial(CoeffDomain::Integers, &["x"], MonomialOrder::GrevLex).unwrap()
    }

    /// `Q[x, y]` with lex order `x > y`.
    pub fn qxy() -> Ring {
        Ring::polynomial(CoeffDomain::Rationals, &["x", "y"], MonomialOrder::Lex).unwrap()
    }

    pub fn kind(&self) -> RingKind {
        self.0.kind
    }

    pub fn coeffs(&self) -> &CoeffDomain {
        &self.0.coeffs
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// Rings on which Euclidean division is available: `Z`, and univariate
    /// (or constant) polynomial rings over a field.
    pub fn is_euclidean(&self) -> bool {
        if self.coeffs().is_field() {
            self.nvars() <= 1
        } else {
            self.nvars() == 0
        }
    }

    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order() {
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.exps().iter().zip(b.exps()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Polynomial => {
                write!(f, "{}[{}]", self.coeffs(), self.vars().join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_validation() {
        assert!(Ring::polynomial(CoeffDomain::Rationals, &["x", "x"], MonomialOrder::Lex).is_err());
        assert!(Ring::polynomial(CoeffDomain::Rationals, &["X"], MonomialOrder::Lex).is_err());
        assert!(Ring::polynomial(CoeffDomain::Rationals, &[""], MonomialOrder::Lex).is_err());
        assert!(Ring::polynomial(CoeffDomain::PrimeField(6), &["x"], MonomialOrder::Lex).is_err());
        assert!(Ring::polynomial(CoeffDomain::PrimeField(5), &["x1", "y"], MonomialOrder::Lex).is_ok());
    }

    #[test]
    fn euclidean_members() {
        assert!(Ring::integers().is_euclidean());
        assert!(!Ring::zx().is_euclidean());
        assert!(!Ring::qxy().is_euclidean());
        let qx = Ring::polynomial(CoeffDomain::Rationals, &["x"], MonomialOrder::Lex).unwrap();
        assert!(qx.is_euclidean());
    }

    #[test]
    fn grevlex_breaks_ties_by_last_variable() {
        let r = Ring::polynomial(CoeffDomain::Rationals, &["x", "y", "z"], MonomialOrder::GrevLex).unwrap();
        // x*z < y^2 in grevlex
        let xz = Monomial::new(vec![1, 0, 1]);
        let yy = Monomial::new(vec![0, 2, 0]);
        assert_eq!(r.cmp_mono(&xz, &yy), Ordering::Less);
    }
}
