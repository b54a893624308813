use std::sync::{Arc, OnceLock};

use super::engine::{buchberger, normal_form, reduce_basis, reduce_top, Counter, Options, Vector};
use super::{FreeVector, Ideal};
use crate::error::{Error, Result};
use crate::linalg::RingMatrix;
use crate::rings::{Poly, Ring};

#[derive(Debug)]
struct Augmented {
    basis: Vec<Vector>,
    syzygies: Vec<FreeVector>,
}

/// Finitely generated submodule of `R^rank` with lazily cached Gröbner data.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: Ring,
    rank: usize,
    gens: Vec<FreeVector>,
    reduced: OnceLock<Result<Arc<Vec<Vector>>>>,
    augmented: OnceLock<Result<Arc<Augmented>>>,
}

impl Submodule {
    pub fn new(ring: &Ring, rank: usize, gens: Vec<FreeVector>) -> Result<Submodule> {
        for g in &gens {
            ring.check_same(g.ring())?;
            if g.rank() != rank {
                return Err(Error::usage(format!("generator of rank {} in a rank-{rank} module", g.rank())));
            }
        }
        Ok(Submodule { ring: ring.clone(), rank, gens, reduced: OnceLock::new(), augmented: OnceLock::new() })
    }

    /// Column span of `m` inside `R^rows`.
    pub fn from_columns(m: &RingMatrix) -> Submodule {
        let gens = m.columns().into_iter().map(|c| FreeVector::from_vec(m.ring(), c)).collect();
        Submodule::new(m.ring(), m.rows(), gens).expect("columns share the ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[FreeVector] {
        &self.gens
    }

    fn reduced(&self) -> Result<Arc<Vec<Vector>>> {
        self.reduced
            .get_or_init(|| {
                if self.rank == 0 {
                    return Ok(Arc::new(Vec::new()));
                }
                let mut counter = Counter::new();
                let gens = self.gens.iter().map(|g| g.components().to_vec()).collect();
                let opts = Options { product_criterion: self.rank == 1 };
                let gb = buchberger(&self.ring, gens, opts, &mut counter)?;
                Ok(Arc::new(reduce_basis(&self.ring, gb, &mut counter)?))
            })
            .clone()
    }

    fn augmented(&self) -> Result<Arc<Augmented>> {
        self.augmented
            .get_or_init(|| {
                let s = self.gens.len();
                let total = self.rank + s;
                let mut counter = Counter::new();
                let gens: Vec<Vector> = self
                    .gens
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        let mut v = g.components().to_vec();
                        v.extend((0..s).map(|k| if k == i { Poly::one(&self.ring) } else { Poly::zero(&self.ring) }));
                        v
                    })
                    .collect();
                if total == 0 {
                    return Ok(Arc::new(Augmented { basis: Vec::new(), syzygies: Vec::new() }));
                }
                let basis = buchberger(&self.ring, gens, Options { product_criterion: false }, &mut counter)?;
                let mut syzygies = Vec::new();
                for b in &basis {
                    if b[..self.rank].iter().all(|p| p.is_zero()) {
                        let syz = FreeVector::from_vec(&self.ring, b[self.rank..].to_vec());
                        if !syz.is_zero() && !syzygies.contains(&syz) {
                            syzygies.push(syz);
                        }
                    }
                }
                for z in &syzygies {
                    let image = FreeVector::combination(&self.ring, self.rank, z.components(), &self.gens)?;
                    if !image.is_zero() {
                        return Err(Error::internal("syzygy does not annihilate the generators"));
                    }
                }
                Ok(Arc::new(Augmented { basis, syzygies }))
            })
            .clone()
    }

    /// Reduced Gröbner basis under the position-over-term order.
    pub fn groebner_basis(&self) -> Result<Vec<FreeVector>> {
        Ok(self.reduced()?.iter().map(|v| FreeVector::from_vec(&self.ring, v.clone())).collect())
    }

    /// Canonical remainder of `v` modulo the submodule.
    pub fn normal_form(&self, v: &FreeVector) -> Result<FreeVector> {
        self.check(v)?;
        let gb = self.reduced()?;
        let mut counter = Counter::new();
        let r = normal_form(&self.ring, &gb, v.components().to_vec(), &mut counter)?;
        Ok(FreeVector::from_vec(&self.ring, r))
    }

    pub fn contains(&self, v: &FreeVector) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Coefficients `c` with `v = sum c_i * gens_i`, re-verified, or `None`
    /// when `v` is not in the submodule.
    pub fn membership(&self, v: &FreeVector) -> Result<Option<Vec<Poly>>> {
        self.check(v)?;
        if v.is_zero() {
            return Ok(Some(vec![Poly::zero(&self.ring); self.gens.len()]));
        }
        let aug = self.augmented()?;
        let mut work = v.components().to_vec();
        work.extend((0..self.gens.len()).map(|_| Poly::zero(&self.ring)));
        let mut counter = Counter::new();
        let r = reduce_top(&self.ring, &aug.basis, work, self.rank, &mut counter)?;
        if r[..self.rank].iter().any(|p| !p.is_zero()) {
            return Ok(None);
        }
        let witness: Vec<Poly> = r[self.rank..].iter().map(|p| -p.clone()).collect();
        let back = FreeVector::combination(&self.ring, self.rank, &witness, &self.gens)?;
        if &back != v {
            return Err(Error::internal("membership witness does not reproduce the vector"));
        }
        Ok(Some(witness))
    }

    /// Generators of the module of relations among the generators.
    pub fn syzygies(&self) -> Result<Vec<FreeVector>> {
        Ok(self.augmented()?.syzygies.clone())
    }

    /// The ideal `{r : r v in S}`, each generator re-certified by membership.
    pub fn colon(&self, v: &FreeVector) -> Result<Ideal> {
        self.check(v)?;
        let mut gens = vec![v.clone()];
        gens.extend(self.gens.iter().cloned());
        let ext = Submodule::new(&self.ring, self.rank, gens)?;
        let mut firsts: Vec<Poly> = ext.syzygies()?.iter().map(|z| z.get(0).clone()).filter(|p| !p.is_zero()).collect();
        if v.is_zero() {
            firsts = vec![Poly::one(&self.ring)];
        }
        for r in &firsts {
            if !self.contains(&v.scale(r))? {
                return Err(Error::internal(format!("colon generator {r} does not multiply into the module")));
            }
        }
        Ideal::new(&self.ring, firsts)
    }

    /// Equality of submodules, decided by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &Submodule) -> Result<bool> {
        self.ring.check_same(&other.ring)?;
        if self.rank != other.rank {
            return Ok(false);
        }
        Ok(*self.reduced()? == *other.reduced()?)
    }

    pub fn contains_all(&self, vs: &[FreeVector]) -> Result<bool> {
        for v in vs {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check(&self, v: &FreeVector) -> Result<()> {
        self.ring.check_same(v.ring())?;
        if v.rank() != self.rank {
            return Err(Error::usage(format!("vector of rank {} vs module of rank {}", v.rank(), self.rank)));
        }
        Ok(())
    }
}
