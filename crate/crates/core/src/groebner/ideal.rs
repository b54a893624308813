use std::fmt;

use super::{FreeVector, Submodule};
use crate::error::{Error, Result};
use crate::rings::{gcd_all, Poly, Ring};

/// Ideal given by generators; comparisons go through reduced Gröbner bases.
#[derive(Clone, Debug)]
pub struct Ideal {
    sub: Submodule,
}

impl Ideal {
    /// An empty generator list denotes the zero ideal.
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal> {
        let gens = if gens.is_empty() { vec![Poly::zero(ring)] } else { gens };
        let vecs = gens.into_iter().map(|g| FreeVector::new(ring, vec![g])).collect::<Result<Vec<_>>>()?;
        Ok(Ideal { sub: Submodule::new(ring, 1, vecs)? })
    }

    pub fn principal(p: &Poly) -> Ideal {
        Ideal::new(p.ring(), vec![p.clone()]).expect("one generator")
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::principal(&Poly::one(ring))
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::principal(&Poly::zero(ring))
    }

    pub fn ring(&self) -> &Ring {
        self.sub.ring()
    }

    pub fn generators(&self) -> Vec<Poly> {
        self.sub.generators().iter().map(|v| v.get(0).clone()).collect()
    }

    pub fn groebner_basis(&self) -> Result<Vec<Poly>> {
        Ok(self.sub.groebner_basis()?.into_iter().map(|v| v.get(0).clone()).collect())
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        self.sub.contains(&FreeVector::new(self.ring(), vec![p.clone()])?)
    }

    /// Coefficients expressing `p` in the generators.
    pub fn membership(&self, p: &Poly) -> Result<Option<Vec<Poly>>> {
        self.sub.membership(&FreeVector::new(self.ring(), vec![p.clone()])?)
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        Ok(self.sub.normal_form(&FreeVector::new(self.ring(), vec![p.clone()])?)?.get(0).clone())
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.sub.equals(&other.sub)
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        for g in self.generators() {
            if !other.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit_ideal(&self) -> Result<bool> {
        self.contains(&Poly::one(self.ring()))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators().iter().all(|g| g.is_zero())
    }

    /// A generator of the ideal when it is principal. In a factorial domain
    /// the ideal is principal iff it contains the gcd of its generators.
    pub fn principal_generator(&self) -> Result<Option<Poly>> {
        let gens: Vec<Poly> = self.generators().into_iter().filter(|g| !g.is_zero()).collect();
        let Some(g) = gcd_all(gens.iter())? else {
            return Ok(Some(Poly::zero(self.ring())));
        };
        Ok(if self.contains(&g)? { Some(g.canonical()) } else { None })
    }

    /// Some generator of one ideal with nonzero normal form modulo the other,
    /// witnessing that the two ideals differ.
    pub fn separating_element(&self, other: &Ideal) -> Result<Option<(Poly, bool)>> {
        for g in self.generators() {
            if !other.contains(&g)? {
                return Ok(Some((g, true)));
            }
        }
        for g in other.generators() {
            if !self.contains(&g)? {
                return Ok(Some((g, false)));
            }
        }
        Ok(None)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring().check_same(other.ring())?;
        let mut gens = Vec::new();
        for a in self.generators() {
            for b in other.generators() {
                gens.push(&a * &b);
            }
        }
        Ideal::new(self.ring(), gens)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring().check_same(other.ring())?;
        let mut gens = self.generators();
        gens.extend(other.generators());
        Ideal::new(self.ring(), gens)
    }

    /// `(self : other) = {r : r other ⊆ self}`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        let parts = other
            .generators()
            .iter()
            .map(|g| self.sub.colon(&FreeVector::new(self.ring(), vec![g.clone()])?))
            .collect::<Result<Vec<_>>>()?;
        Ideal::intersection(self.ring(), &parts)
    }

    /// Intersection, computed as the colon of the diagonal vector into the
    /// direct sum of the ideals.
    pub fn intersection(ring: &Ring, ideals: &[Ideal]) -> Result<Ideal> {
        match ideals.len() {
            0 => return Ok(Ideal::unit(ring)),
            1 => return Ok(ideals[0].clone()),
            _ => {}
        }
        let t = ideals.len();
        let mut gens = Vec::new();
        for (k, i) in ideals.iter().enumerate() {
            ring.check_same(i.ring())?;
            for g in i.generators() {
                if !g.is_zero() {
                    gens.push(FreeVector::from_sparse(ring, t, &[(k, g)])?);
                }
            }
        }
        let sum = Submodule::new(ring, t, gens)?;
        let diag = FreeVector::new(ring, vec![Poly::one(ring); t])?;
        let out = sum.colon(&diag)?;
        for i in ideals {
            if !out.is_subset_of(i)? {
                return Err(Error::internal("intersection is not contained in a factor"));
            }
        }
        Ok(out)
    }

    /// Reduced Gröbner basis rendered as a list; the canonical printed form.
    pub fn canonical_strings(&self) -> Result<Vec<String>> {
        let gb = self.groebner_basis()?;
        Ok(if gb.is_empty() { vec!["0".into()] } else { gb.iter().map(|p| p.to_string()).collect() })
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}
