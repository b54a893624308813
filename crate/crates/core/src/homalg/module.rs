use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{FreeVector, Submodule};
use crate::linalg::RingMatrix;
use crate::rings::{Poly, Ring};

/// `M = R^g / (column span of the relation matrix)`.
#[derive(Clone, Debug)]
pub struct FPModule {
    ring: Ring,
    generators: usize,
    relations: RingMatrix,
    span: OnceLock<Submodule>,
}

impl PartialEq for FPModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators && self.relations == other.relations
    }
}

impl Eq for FPModule {}

impl FPModule {
    /// `relations` has one row per generator and one column per relation.
    pub fn new(ring: &Ring, generators: usize, relations: RingMatrix) -> Result<FPModule> {
        ring.check_same(relations.ring())?;
        if relations.rows() != generators {
            return Err(Error::usage(format!(
                "relation matrix has {} rows for {generators} generators",
                relations.rows()
            )));
        }
        Ok(FPModule { ring: ring.clone(), generators, relations, span: OnceLock::new() })
    }

    /// Cokernel of a matrix.
    pub fn from_matrix(m: &RingMatrix) -> FPModule {
        FPModule::new(m.ring(), m.rows(), m.clone()).expect("rows match")
    }

    /// `R/(a)`.
    pub fn cyclic(a: &Poly) -> FPModule {
        FPModule::from_matrix(&RingMatrix::diagonal(a.ring(), std::slice::from_ref(a)))
    }

    /// The free module `R^g`.
    pub fn free(ring: &Ring, g: usize) -> FPModule {
        FPModule::new(ring, g, RingMatrix::zeros(ring, g, 0)).expect("rows match")
    }

    pub fn zero(ring: &Ring) -> FPModule {
        FPModule::free(ring, 0)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &RingMatrix {
        &self.relations
    }

    /// The relation submodule of `R^g`.
    pub fn relation_module(&self) -> &Submodule {
        self.span.get_or_init(|| Submodule::from_columns(&self.relations))
    }

    /// Whether `v` represents zero in `M`.
    pub fn is_zero_element(&self, v: &FreeVector) -> Result<bool> {
        self.relation_module().contains(v)
    }

    pub fn is_zero_module(&self) -> Result<bool> {
        for i in 0..self.generators {
            if !self.is_zero_element(&FreeVector::unit(&self.ring, self.generators, i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn direct_sum(&self, other: &FPModule) -> Result<FPModule> {
        let rel = RingMatrix::block_diag(&self.relations, &other.relations)?;
        FPModule::new(&self.ring, self.generators + other.generators, rel)
    }

    /// `M / <gens>`: the generators are appended to the relations.
    pub fn quotient_by(&self, gens: &[FreeVector]) -> Result<FPModule> {
        let mut cols = self.relations.columns();
        for g in gens {
            self.check(g)?;
            cols.push(g.components().to_vec());
        }
        FPModule::new(&self.ring, self.generators, RingMatrix::from_columns(&self.ring, self.generators, &cols)?)
    }

    /// Presentation of the submodule generated by `gens`: relations are the
    /// first coordinates of syzygies of `[gens | relations]`.
    pub fn submodule_presentation(&self, gens: &[FreeVector]) -> Result<FPModule> {
        let k = gens.len();
        let mut all: Vec<FreeVector> = gens.to_vec();
        for g in gens {
            self.check(g)?;
        }
        all.extend(self.relations.columns().into_iter().map(|c| FreeVector::from_vec(&self.ring, c)));
        let sub = Submodule::new(&self.ring, self.generators, all)?;
        let cols: Vec<Vec<Poly>> = sub
            .syzygies()?
            .iter()
            .map(|z| z.components()[..k].to_vec())
            .filter(|c| c.iter().any(|p| !p.is_zero()))
            .collect();
        FPModule::new(&self.ring, k, RingMatrix::from_columns(&self.ring, k, &cols)?)
    }

    /// Drops relations that vanish and generators eliminated by a relation
    /// with a unit coefficient. Returns the smaller module together with the
    /// isomorphism: `to_new` maps old generators, `to_old` maps new ones.
    pub fn simplify(&self) -> Result<(FPModule, RingMatrix, RingMatrix)> {
        let ring = &self.ring;
        let mut rel = self.relations.clone();
        let mut keep: Vec<usize> = (0..self.generators).collect();
        // to_new: columns are images of old generators in the kept coordinates (rows indexed like `keep`)
        let mut to_new = RingMatrix::identity(ring, self.generators);
        loop {
            let mut found = None;
            'search: for c in 0..rel.cols() {
                for r in 0..rel.rows() {
                    if rel.get(r, c).is_unit() {
                        found = Some((r, c));
                        break 'search;
                    }
                }
            }
            let Some((r, c)) = found else { break };
            let u_inv = rel.get(r, c).unit_inverse().expect("unit");
            // e_r = -u^{-1} sum_{i != r} rel[i][c] e_i
            let mut sub = vec![Poly::zero(ring); rel.rows()];
            for i in 0..rel.rows() {
                if i != r {
                    sub[i] = -(rel.get(i, c) * &u_inv);
                }
            }
            let mut next_to_new = RingMatrix::zeros(ring, rel.rows() - 1, to_new.cols());
            for j in 0..to_new.cols() {
                let coeff_r = to_new.get(r, j).clone();
                let mut row_out = 0;
                for i in 0..rel.rows() {
                    if i == r {
                        continue;
                    }
                    let v = to_new.get(i, j) + &(&coeff_r * &sub[i]);
                    next_to_new.set(row_out, j, v);
                    row_out += 1;
                }
            }
            let mut cols = Vec::new();
            for j in 0..rel.cols() {
                if j == c {
                    continue;
                }
                let factor = rel.get(r, j) * &u_inv;
                let col: Vec<Poly> =
                    (0..rel.rows()).filter(|&i| i != r).map(|i| rel.get(i, j) - &(&factor * rel.get(i, c))).collect();
                cols.push(col);
            }
            rel = RingMatrix::from_columns(ring, rel.rows() - 1, &cols)?;
            to_new = next_to_new;
            keep.remove(r);
        }
        let nonzero: Vec<Vec<Poly>> = rel.columns().into_iter().filter(|c| c.iter().any(|p| !p.is_zero())).collect();
        let rel = RingMatrix::from_columns(ring, keep.len(), &nonzero)?;
        let mut to_old = RingMatrix::zeros(ring, self.generators, keep.len());
        for (j, &k) in keep.iter().enumerate() {
            to_old.set(k, j, Poly::one(ring));
        }
        Ok((FPModule::new(ring, keep.len(), rel)?, to_new, to_old))
    }

    pub(crate) fn check(&self, v: &FreeVector) -> Result<()> {
        self.ring.check_same(v.ring())?;
        if v.rank() != self.generators {
            return Err(Error::usage(format!(
                "element of rank {} in a module with {} generators",
                v.rank(),
                self.generators
            )));
        }
        Ok(())
    }
}
