use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{Poly, Ring};

/// Element of the free module `R^rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeVector {
    ring: Ring,
    comps: Vec<Poly>,
}

impl FreeVector {
    pub fn new(ring: &Ring, comps: Vec<Poly>) -> Result<FreeVector> {
        for c in &comps {
            ring.check_same(c.ring())?;
        }
        Ok(FreeVector { ring: ring.clone(), comps })
    }

    pub(crate) fn from_vec(ring: &Ring, comps: Vec<Poly>) -> FreeVector {
        FreeVector { ring: ring.clone(), comps }
    }

    pub fn zero(ring: &Ring, rank: usize) -> FreeVector {
        FreeVector { ring: ring.clone(), comps: vec![Poly::zero(ring); rank] }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(ring: &Ring, rank: usize, i: usize) -> FreeVector {
        let mut v = FreeVector::zero(ring, rank);
        v.comps[i] = Poly::one(ring);
        v
    }

    pub fn from_sparse(ring: &Ring, rank: usize, entries: &[(usize, Poly)]) -> Result<FreeVector> {
        let mut v = FreeVector::zero(ring, rank);
        for (i, p) in entries {
            if *i >= rank {
                return Err(Error::usage(format!("index {i} outside rank {rank}")));
            }
            ring.check_same(p.ring())?;
            v.comps[*i] = &v.comps[*i] + p;
        }
        Ok(v)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn get(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<Poly> {
        self.comps
    }

    /// Nonzero components with their indices.
    pub fn entries(&self) -> Vec<(usize, &Poly)> {
        self.comps.iter().enumerate().filter(|(_, p)| !p.is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, r: &Poly) -> FreeVector {
        FreeVector { ring: self.ring.clone(), comps: self.comps.iter().map(|c| c * r).collect() }
    }

    pub fn add(&self, other: &FreeVector) -> Result<FreeVector> {
        self.check(other)?;
        Ok(FreeVector {
            ring: self.ring.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &FreeVector) -> Result<FreeVector> {
        self.check(other)?;
        Ok(FreeVector {
            ring: self.ring.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        })
    }

    /// `sum_i coeffs[i] * vectors[i]`.
    pub fn combination(ring: &Ring, rank: usize, coeffs: &[Poly], vectors: &[FreeVector]) -> Result<FreeVector> {
        if coeffs.len() != vectors.len() {
            return Err(Error::usage("coefficient count does not match vector count"));
        }
        let mut acc = FreeVector::zero(ring, rank);
        for (c, v) in coeffs.iter().zip(vectors) {
            if !c.is_zero() {
                acc = acc.add(&v.scale(c))?;
            }
        }
        Ok(acc)
    }

    fn check(&self, other: &FreeVector) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.rank() != other.rank() {
            return Err(Error::usage(format!("rank {} vs rank {}", self.rank(), other.rank())));
        }
        Ok(())
    }
}

impl fmt::Display for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
