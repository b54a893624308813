use super::FPModule;
use crate::error::{Error, Result};
use crate::groebner::{FreeVector, Submodule};
use crate::linalg::RingMatrix;
use crate::rings::Poly;

/// Homomorphism given on generators: column `j` of `matrix` is the image of
/// the `j`-th source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    pub source: FPModule,
    pub target: FPModule,
    pub matrix: RingMatrix,
}

impl ModuleHom {
    pub fn new(source: &FPModule, target: &FPModule, matrix: RingMatrix) -> Result<ModuleHom> {
        if matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count() {
            return Err(Error::usage(format!(
                "a {}x{} matrix cannot map {} generators to {}",
                matrix.rows(),
                matrix.cols(),
                source.generator_count(),
                target.generator_count()
            )));
        }
        Ok(ModuleHom { source: source.clone(), target: target.clone(), matrix })
    }

    pub fn identity(m: &FPModule) -> ModuleHom {
        ModuleHom::new(m, m, RingMatrix::identity(m.ring(), m.generator_count())).expect("square")
    }

    /// Every source relation maps into the target relations.
    pub fn is_well_defined(&self) -> Result<bool> {
        let image = self.matrix.mul(self.source.relations())?;
        let target = self.target.relation_module();
        for c in image.columns() {
            if !target.contains(&FreeVector::from_vec(self.target.ring(), c))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn apply(&self, v: &FreeVector) -> Result<FreeVector> {
        self.source.check(v)?;
        FreeVector::new(self.target.ring(), self.matrix.apply(v.components())?)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if self.target != other.source {
            return Err(Error::usage("composition of homomorphisms with mismatched modules"));
        }
        ModuleHom::new(&self.source, &other.target, other.matrix.mul(&self.matrix)?)
    }

    /// Image plus target relations, as a submodule of the target's free cover.
    fn image_span(&self) -> Result<Submodule> {
        let all = self.matrix.hstack(self.target.relations())?;
        Ok(Submodule::from_columns(&all))
    }

    pub fn is_surjective(&self) -> Result<bool> {
        let span = self.image_span()?;
        let g = self.target.generator_count();
        for j in 0..g {
            if !span.contains(&FreeVector::unit(self.target.ring(), g, j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Generators (in the source's free cover) of the preimage of the target
    /// relations; the hom is injective iff these all lie in the source
    /// relations.
    pub fn kernel_generators(&self) -> Result<Vec<FreeVector>> {
        let g = self.source.generator_count();
        let span = self.image_span()?;
        Ok(span
            .syzygies()?
            .iter()
            .map(|z| FreeVector::from_vec(self.source.ring(), z.components()[..g].to_vec()))
            .filter(|v| !v.is_zero())
            .collect())
    }

    pub fn is_injective(&self) -> Result<bool> {
        let rel = self.source.relation_module();
        for k in self.kernel_generators()? {
            if !rel.contains(&k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For a surjective hom, a right inverse on generators: each target
    /// generator is written as the image of a source element.
    pub fn section(&self) -> Result<Option<ModuleHom>> {
        let g_src = self.source.generator_count();
        let g_tgt = self.target.generator_count();
        let span = self.image_span()?;
        let mut cols = Vec::with_capacity(g_tgt);
        for j in 0..g_tgt {
            let Some(w) = span.membership(&FreeVector::unit(self.target.ring(), g_tgt, j))? else {
                return Ok(None);
            };
            cols.push(w[..g_src].to_vec());
        }
        let m = RingMatrix::from_columns(self.source.ring(), g_src, &cols)?;
        Ok(Some(ModuleHom::new(&self.target, &self.source, m)?))
    }

    /// Whether `self` and `other` agree as maps of modules.
    pub fn agrees_with(&self, other: &ModuleHom) -> Result<bool> {
        let diff = RingMatrix::from_columns(
            self.target.ring(),
            self.target.generator_count(),
            &self
                .matrix
                .columns()
                .iter()
                .zip(other.matrix.columns())
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - &y).collect())
                .collect::<Vec<Vec<Poly>>>(),
        )?;
        for c in diff.columns() {
            if !self.target.is_zero_element(&FreeVector::from_vec(self.target.ring(), c))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the hom is zero as a map of modules.
    pub fn is_zero(&self) -> Result<bool> {
        for c in self.matrix.columns() {
            if !self.target.is_zero_element(&FreeVector::from_vec(self.target.ring(), c))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Generators of `Hom(M, N)`: solutions `Φ` of `Φ·A = B·Y`, with
/// homomorphisms that vanish as module maps dropped.
pub fn hom_module(m: &FPModule, n: &FPModule) -> Result<Vec<ModuleHom>> {
    m.ring().check_same(n.ring())?;
    let ring = m.ring();
    let (gm, gn) = (m.generator_count(), n.generator_count());
    if gn == 0 || gm == 0 {
        return Ok(Vec::new());
    }
    let a = m.relations();
    let b = n.relations();
    let (rm, rn) = (a.cols(), b.cols());
    let phi_vars = gn * gm;
    let vars = phi_vars + rn * rm;
    let eqs = gn * rm;
    // variable order: Φ[i][k] at i*gm + k, then Y[l][c] at phi_vars + l*rm + c
    let mut columns: Vec<Vec<Poly>> = vec![vec![Poly::zero(ring); eqs]; vars];
    for c in 0..rm {
        for i in 0..gn {
            let row = i * rm + c;
            for k in 0..gm {
                columns[i * gm + k][row] = a.get(k, c).clone();
            }
            for l in 0..rn {
                columns[phi_vars + l * rm + c][row] = -b.get(i, l).clone();
            }
        }
    }
    let solutions: Vec<Vec<Poly>> = if eqs == 0 {
        (0..phi_vars)
            .map(|v| (0..phi_vars).map(|w| if v == w { Poly::one(ring) } else { Poly::zero(ring) }).collect())
            .collect()
    } else {
        let vecs = columns.into_iter().map(|c| FreeVector::new(ring, c)).collect::<Result<Vec<_>>>()?;
        Submodule::new(ring, eqs, vecs)?.syzygies()?.into_iter().map(|z| z.components()[..phi_vars].to_vec()).collect()
    };
    let mut out: Vec<ModuleHom> = Vec::new();
    for s in solutions {
        let mut phi = RingMatrix::zeros(ring, gn, gm);
        for i in 0..gn {
            for k in 0..gm {
                phi.set(i, k, s[i * gm + k].clone());
            }
        }
        let h = ModuleHom::new(m, n, phi)?;
        if h.is_zero()? || out.iter().any(|o| o.matrix == h.matrix) {
            continue;
        }
        if !h.is_well_defined()? {
            return Err(Error::internal("hom generator is not well defined"));
        }
        out.push(h);
    }
    Ok(out)
}
