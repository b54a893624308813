use super::FPModule;
use crate::error::{Error, Result};
use crate::groebner::{FreeVector, Ideal, Submodule};
use crate::linalg::{determinant, RingMatrix};
use crate::rings::Poly;

/// `Ann(M)`: the intersection of the colon ideals of the generators.
pub fn annihilator(m: &FPModule) -> Result<Ideal> {
    let g = m.generator_count();
    let parts =
        (0..g).map(|i| element_annihilator(m, &FreeVector::unit(m.ring(), g, i))).collect::<Result<Vec<_>>>()?;
    let ann = Ideal::intersection(m.ring(), &parts)?;
    for a in ann.generators() {
        for i in 0..g {
            let v = FreeVector::unit(m.ring(), g, i).scale(&a);
            if !m.is_zero_element(&v)? {
                return Err(Error::internal(format!("{a} does not kill generator {i}")));
            }
        }
    }
    Ok(ann)
}

/// `Ann(x) = {r : r x = 0 in M}`.
pub fn element_annihilator(m: &FPModule, x: &FreeVector) -> Result<Ideal> {
    m.check(x)?;
    m.relation_module().colon(x)
}

/// The dualized presentation sequence of a square full-rank matrix:
/// `Hom(M, R)` vanishes and `Ext^1(M, R)` is presented by the transpose.
#[derive(Clone, Debug)]
pub struct DualSequence {
    /// `true` once the columns of the transpose were certified to have no
    /// syzygies.
    pub hom_is_zero: bool,
    pub ext1: FPModule,
}

pub fn hom_dual_sequence(m: &RingMatrix) -> Result<DualSequence> {
    if !m.is_square() {
        return Err(Error::usage(format!("expected a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    if determinant(m)?.is_zero() {
        return Err(Error::FullRankRequired);
    }
    let t = m.transpose();
    if !Submodule::from_columns(&t).syzygies()?.is_empty() {
        return Err(Error::internal("transpose of a full-rank matrix has syzygies"));
    }
    Ok(DualSequence { hom_is_zero: true, ext1: FPModule::from_matrix(&t) })
}

/// `F_L -> ... -> F_1 -> F_0 -> M`, with `maps[0]` the presentation.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub module: FPModule,
    pub maps: Vec<RingMatrix>,
    /// The last map is injective, so the resolution is finite.
    pub complete: bool,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Rank of `F_i`.
    pub fn rank(&self, i: usize) -> usize {
        match i {
            0 => self.module.generator_count(),
            _ => self.maps.get(i - 1).map_or(0, |d| d.cols()),
        }
    }

    /// Checks `d_i d_{i+1} = 0` for consecutive maps.
    pub fn is_complex(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if !w[0].mul(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Iterated syzygies, stopping early once a map is injective.
pub fn free_resolution(m: &FPModule, length: usize) -> Result<FreeResolution> {
    if length == 0 {
        return Err(Error::usage("resolution length must be at least 1"));
    }
    let ring = m.ring();
    let first = nonzero_columns(m.relations());
    let mut maps = Vec::new();
    let mut complete = first.cols() == 0;
    if !complete {
        maps.push(first);
    }
    while !complete && maps.len() < length {
        let last = maps.last().expect("nonempty");
        let syz = Submodule::from_columns(last).syzygies()?;
        if syz.is_empty() {
            complete = true;
            break;
        }
        let cols: Vec<Vec<Poly>> = syz.into_iter().map(|v| v.into_components()).collect();
        maps.push(RingMatrix::from_columns(ring, last.cols(), &cols)?);
    }
    if !complete {
        let last = maps.last().expect("nonempty");
        complete = Submodule::from_columns(last).syzygies()?.is_empty();
    }
    let res = FreeResolution {
        module: FPModule::new(
            ring,
            m.generator_count(),
            maps.first().cloned().unwrap_or_else(|| RingMatrix::zeros(ring, m.generator_count(), 0)),
        )?,
        maps,
        complete,
    };
    if !res.is_complex()? {
        return Err(Error::internal("resolution maps do not compose to zero"));
    }
    Ok(res)
}

fn nonzero_columns(m: &RingMatrix) -> RingMatrix {
    let cols: Vec<Vec<Poly>> = m.columns().into_iter().filter(|c| c.iter().any(|p| !p.is_zero())).collect();
    RingMatrix::from_columns(m.ring(), m.rows(), &cols).expect("same row count")
}

/// `Ext^i(M, R)`: homology of the dualized resolution at `F_i^*`, presented
/// by kernel generators modulo the image.
pub fn ext(m: &FPModule, i: usize) -> Result<FPModule> {
    let res = free_resolution(m, i + 1)?;
    ext_from_resolution(&res, i)
}

pub(crate) fn ext_from_resolution(res: &FreeResolution, i: usize) -> Result<FPModule> {
    let ring = res.module.ring();
    let n_i = res.rank(i);
    if n_i == 0 {
        return Ok(FPModule::zero(ring));
    }
    if !res.complete && res.length() < i + 1 {
        return Err(Error::Budget(format!("resolution too short for Ext^{i}")));
    }
    // kernel of d_{i+1}^T: F_i^* -> F_{i+1}^*
    let kernel: Vec<FreeVector> = match res.maps.get(i) {
        None => (0..n_i).map(|k| FreeVector::unit(ring, n_i, k)).collect(),
        Some(d) => Submodule::from_columns(&d.transpose()).syzygies()?,
    };
    let image = match i {
        0 => RingMatrix::zeros(ring, n_i, 0),
        _ => res.maps[i - 1].transpose(),
    };
    let ambient = FPModule::new(ring, n_i, image)?;
    ambient.submodule_presentation(&kernel)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradeValue {
    Exactly(usize),
    AtLeast(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grade {
    pub value: GradeValue,
    /// Set for the zero module, whose grade is infinite by convention.
    pub degenerate: bool,
}

/// Smallest `i <= limit` with `Ext^i(M, R) != 0`.
pub fn grade(m: &FPModule, limit: usize) -> Result<Grade> {
    if limit == 0 {
        return Err(Error::usage("grade search limit must be at least 1"));
    }
    let rel = m.relations();
    if rel.is_square() && rel.rows() > 0 {
        let det = determinant(rel)?;
        if !det.is_zero() && !det.is_unit() {
            return Ok(Grade { value: GradeValue::Exactly(1), degenerate: false });
        }
    }
    if m.is_zero_module()? {
        return Ok(Grade { value: GradeValue::AtLeast(limit + 1), degenerate: true });
    }
    let res = free_resolution(m, limit + 1)?;
    for i in 0..=limit {
        if !ext_from_resolution(&res, i)?.is_zero_module()? {
            return Ok(Grade { value: GradeValue::Exactly(i), degenerate: false });
        }
    }
    Ok(Grade { value: GradeValue::AtLeast(limit + 1), degenerate: false })
}
