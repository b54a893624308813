use itertools::Itertools;

use super::ext::{annihilator, grade, Grade, GradeValue};
use super::{hom_module, FPModule, ModuleHom};
use crate::error::{Error, Result};
use crate::groebner::{FreeVector, Ideal, Submodule};
use crate::linalg::{
    determinant, minors, smith_normal_form, transpose_certificate_from_diagonal, ElementaryOp, EquivalenceCertificate,
    RingMatrix, Tracked,
};
use crate::rings::{Monomial, Poly, Ring};
use crate::testkit::{default_probes, specialization_oracle, Probe, ProbeOutcome};

/// Limits for the isomorphism search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoBounds {
    /// Largest monomial degree in the coefficient pool.
    pub degree: u32,
    /// Largest absolute integer coefficient in the pool.
    pub height: i64,
    /// Candidate homomorphisms tried before giving up.
    pub max_candidates: usize,
    /// Specialization probes; `None` selects the default pool.
    pub probes: Option<Vec<Probe>>,
}

impl Default for IsoBounds {
    fn default() -> Self {
        IsoBounds { degree: 2, height: 3, max_candidates: 2000, probes: None }
    }
}

/// An isomorphism together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub forward: ModuleHom,
    pub inverse: ModuleHom,
}

impl IsoWitness {
    /// Both maps are well defined and compose to the identity either way.
    pub fn verify(&self) -> Result<bool> {
        let f = &self.forward;
        let g = &self.inverse;
        if f.source != g.target || f.target != g.source {
            return Ok(false);
        }
        if !f.is_well_defined()? || !g.is_well_defined()? {
            return Ok(false);
        }
        Ok(f.then(g)?.agrees_with(&ModuleHom::identity(&f.source))?
            && g.then(f)?.agrees_with(&ModuleHom::identity(&f.target))?)
    }
}

/// Machine-checkable evidence that two modules are not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// `Fitt_index` differs; both reduced bases are recorded.
    Fitting {
        index: usize,
        left: Vec<String>,
        right: Vec<String>,
    },
    Annihilator {
        left: Vec<String>,
        right: Vec<String>,
    },
    /// Smith invariants differ after base change.
    Specialization {
        probe: Probe,
        left: Vec<String>,
        right: Vec<String>,
    },
}

impl Obstruction {
    /// Recomputes the invariant on both modules and confirms the mismatch.
    pub fn verify(&self, m: &FPModule, n: &FPModule) -> Result<bool> {
        match self {
            Obstruction::Fitting { index, .. } => {
                Ok(!module_fitting_ideal(m, *index)?.equals(&module_fitting_ideal(n, *index)?)?)
            }
            Obstruction::Annihilator { .. } => Ok(!annihilator(m)?.equals(&annihilator(n)?)?),
            Obstruction::Specialization { probe, .. } => Ok(matches!(
                specialization_oracle(m, n, std::slice::from_ref(probe))?,
                ProbeOutcome::Distinguished { .. }
            )),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Obstruction::Fitting { index, left, right } => {
                format!("Fitt_{index} differs: ({}) vs ({})", left.join(", "), right.join(", "))
            }
            Obstruction::Annihilator { left, right } => {
                format!("annihilators differ: ({}) vs ({})", left.join(", "), right.join(", "))
            }
            Obstruction::Specialization { probe, left, right } => {
                format!("under {probe}: invariants [{}] vs [{}]", left.join(", "), right.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoResult {
    Yes(IsoWitness),
    No(Obstruction),
    /// The candidate search ran out of bounds; nothing is concluded.
    Unknown {
        candidates: usize,
    },
}

/// `Fitt_j(M)`: the ideal of `(g - j)`-minors of the presentation.
pub fn module_fitting_ideal(m: &FPModule, j: usize) -> Result<Ideal> {
    let g = m.generator_count();
    if j >= g {
        return Ok(Ideal::unit(m.ring()));
    }
    let k = g - j;
    if k > m.relations().cols() {
        return Ok(Ideal::zero(m.ring()));
    }
    Ideal::new(m.ring(), minors(m.relations(), k)?)
}

/// First invariant separating the modules, if any.
pub fn invariant_obstruction(m: &FPModule, n: &FPModule, probes: &[Probe]) -> Result<Option<Obstruction>> {
    let top = m.generator_count().max(n.generator_count());
    for j in 0..=top {
        let (a, b) = (module_fitting_ideal(m, j)?, module_fitting_ideal(n, j)?);
        if !a.equals(&b)? {
            return Ok(Some(Obstruction::Fitting {
                index: j,
                left: a.canonical_strings()?,
                right: b.canonical_strings()?,
            }));
        }
    }
    let (a, b) = (annihilator(m)?, annihilator(n)?);
    if !a.equals(&b)? {
        return Ok(Some(Obstruction::Annihilator { left: a.canonical_strings()?, right: b.canonical_strings()? }));
    }
    if let ProbeOutcome::Distinguished { probe, left, right } = specialization_oracle(m, n, probes)? {
        return Ok(Some(Obstruction::Specialization { probe, left, right }));
    }
    Ok(None)
}

/// Coefficient pool `c * mono` ordered by degree, then monomial, then
/// height, positive sign first.
pub fn coefficient_pool(ring: &Ring, degree: u32, height: i64) -> Vec<Poly> {
    let n = ring.nvars();
    let mut monos: Vec<Monomial> = Vec::new();
    for d in 0..=degree {
        let mut layer: Vec<Monomial> = (0..n)
            .combinations_with_replacement(d as usize)
            .map(|vars| {
                let mut e = vec![0u32; n];
                for v in vars {
                    e[v] += 1;
                }
                Monomial::new(e)
            })
            .collect();
        layer.sort_by(|a, b| ring.cmp_mono(b, a));
        monos.extend(layer);
    }
    let mut pool: Vec<Poly> = Vec::new();
    for mono in &monos {
        for c in 1..=height.max(1) {
            for s in [c, -c] {
                let p = Poly::monomial(ring, mono.clone(), ring.coeffs().from_int(s));
                if !p.is_zero() && !pool.contains(&p) {
                    pool.push(p);
                }
            }
        }
    }
    pool.sort_by_key(|p| p.total_degree().unwrap_or(0));
    pool
}

/// Walks combinations `sum c_k h_k` of the generators with coefficients from
/// the pool: growing pool prefixes, then supports by size, then coefficient
/// tuples in lexicographic order.
pub(crate) fn search_combinations(
    gens: &[ModuleHom],
    pool: &[Poly],
    budget: usize,
    tried: &mut usize,
    mut accept: impl FnMut(&ModuleHom) -> Result<bool>,
) -> Result<Option<ModuleHom>> {
    let k = gens.len();
    if k == 0 {
        return Ok(None);
    }
    let (source, target) = (&gens[0].source, &gens[0].target);
    let ring = source.ring();
    for level in 1..=pool.len() {
        for size in 1..=k {
            for support in (0..k).combinations(size) {
                for idx in (0..size).map(|_| 0..level).multi_cartesian_product() {
                    if !idx.contains(&(level - 1)) {
                        continue;
                    }
                    if *tried >= budget {
                        return Ok(None);
                    }
                    *tried += 1;
                    let mut m = RingMatrix::zeros(ring, target.generator_count(), source.generator_count());
                    for (&s, &c) in support.iter().zip(&idx) {
                        for i in 0..m.rows() {
                            for j in 0..m.cols() {
                                let v = m.get(i, j) + &(&pool[c] * gens[s].matrix.get(i, j));
                                m.set(i, j, v);
                            }
                        }
                    }
                    if m.is_zero() {
                        continue;
                    }
                    let h = ModuleHom::new(source, target, m)?;
                    if accept(&h)? {
                        return Ok(Some(h));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn try_isomorphism(h: &ModuleHom) -> Result<Option<IsoWitness>> {
    if !h.is_well_defined()? || !h.is_surjective()? || !h.is_injective()? {
        return Ok(None);
    }
    let Some(inverse) = h.section()? else {
        return Err(Error::internal("surjective hom without a section"));
    };
    let w = IsoWitness { forward: h.clone(), inverse };
    if !w.verify()? {
        return Err(Error::internal("bijective hom failed the inverse check"));
    }
    Ok(Some(w))
}

fn permutation_matrix(ring: &Ring, perm: &[usize]) -> RingMatrix {
    let mut m = RingMatrix::zeros(ring, perm.len(), perm.len());
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, Poly::one(ring));
    }
    m
}

/// Decides `M ≅ N`: invariants first (a mismatch is a certified No), then a
/// bounded search through combinations of `Hom(M, N)` generators.
pub fn is_isomorphic(m: &FPModule, n: &FPModule, bounds: &IsoBounds) -> Result<IsoResult> {
    m.ring().check_same(n.ring())?;
    let ring = m.ring();
    if m == n {
        let id = ModuleHom::identity(m);
        return Ok(IsoResult::Yes(IsoWitness { forward: id.clone(), inverse: id }));
    }
    let (ms, m_to_new, m_to_old) = m.simplify()?;
    let (ns, n_to_new, n_to_old) = n.simplify()?;
    let probes = bounds.probes.clone().unwrap_or_else(|| default_probes(ring));
    if let Some(obs) = invariant_obstruction(&ms, &ns, &probes)? {
        if !obs.verify(m, n)? {
            return Err(Error::internal(format!("obstruction did not re-verify: {}", obs.describe())));
        }
        return Ok(IsoResult::No(obs));
    }
    let lift = |w: IsoWitness| -> Result<IsoWitness> {
        let forward = n_to_old.mul(&w.forward.matrix)?.mul(&m_to_new)?;
        let inverse = m_to_old.mul(&w.inverse.matrix)?.mul(&n_to_new)?;
        let out = IsoWitness { forward: ModuleHom::new(m, n, forward)?, inverse: ModuleHom::new(n, m, inverse)? };
        if !out.verify()? {
            return Err(Error::internal("lifted isomorphism failed verification"));
        }
        Ok(out)
    };
    let (g, h) = (ms.generator_count(), ns.generator_count());
    if g == 0 && h == 0 {
        let zero = ModuleHom::new(&ms, &ns, RingMatrix::zeros(ring, 0, 0))?;
        return Ok(IsoResult::Yes(lift(IsoWitness { forward: zero.clone(), inverse: zero })?));
    }
    let mut tried = 0usize;
    if g == h && g <= 4 {
        for perm in (0..g).permutations(g) {
            tried += 1;
            let cand = ModuleHom::new(&ms, &ns, permutation_matrix(ring, &perm))?;
            if let Some(w) = try_isomorphism(&cand)? {
                return Ok(IsoResult::Yes(lift(w)?));
            }
        }
    }
    let gens = hom_module(&ms, &ns)?;
    let pool = coefficient_pool(ring, bounds.degree, bounds.height);
    let mut witness = None;
    search_combinations(&gens, &pool, bounds.max_candidates, &mut tried, |cand| {
        witness = try_isomorphism(cand)?;
        Ok(witness.is_some())
    })?;
    match witness {
        Some(w) => Ok(IsoResult::Yes(lift(w)?)),
        None => Ok(IsoResult::Unknown { candidates: tried }),
    }
}

/// A nonzero injective homomorphism `source -> target` from the bounded
/// search over `Hom(source, target)`.
pub fn find_injective_hom(source: &FPModule, target: &FPModule, bounds: &IsoBounds) -> Result<Option<ModuleHom>> {
    let gens = hom_module(source, target)?;
    let pool = coefficient_pool(source.ring(), bounds.degree, bounds.height);
    let mut tried = 0;
    search_combinations(&gens, &pool, bounds.max_candidates, &mut tried, |h| {
        Ok(!h.is_zero()? && h.is_well_defined()? && h.is_injective()?)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QgWitness {
    /// `P m Q = m^T`.
    Equivalence(EquivalenceCertificate),
    /// `coker m ≅ coker m^T`.
    Isomorphism(IsoWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QgResult {
    Yes { witness: QgWitness, grade: Grade },
    No(Obstruction),
    Unknown { candidates: usize },
}

/// Whether `coker m` is quasi-Gorenstein, i.e. isomorphic to
/// `Ext^1(coker m, R) = coker m^T`.
pub fn is_quasi_gorenstein(m: &RingMatrix, bounds: &IsoBounds) -> Result<QgResult> {
    if !m.is_square() {
        return Err(Error::usage(format!("expected a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let det = determinant(m)?;
    if det.is_zero() {
        return Err(Error::FullRankRequired);
    }
    if det.is_unit() {
        return Err(Error::usage("determinant is a unit, so the module is zero"));
    }
    let module = FPModule::from_matrix(m);
    let gr = grade(&module, 1)?;
    if gr.value != GradeValue::Exactly(1) {
        return Err(Error::internal("full-rank square presentation without grade 1"));
    }
    if !Submodule::from_columns(m).syzygies()?.is_empty() {
        return Err(Error::internal("full-rank presentation is not injective"));
    }
    if let Some(cert) = permutation_transpose(m)? {
        return Ok(QgResult::Yes { witness: QgWitness::Equivalence(cert), grade: gr });
    }
    if m.ring().is_euclidean() {
        let snf = smith_normal_form(m)?;
        let cert = transpose_certificate_from_diagonal(&snf.certificate)?;
        return Ok(QgResult::Yes { witness: QgWitness::Equivalence(cert), grade: gr });
    }
    let dual = FPModule::from_matrix(&m.transpose());
    Ok(match is_isomorphic(&module, &dual, bounds)? {
        IsoResult::Yes(w) => QgResult::Yes { witness: QgWitness::Isomorphism(w), grade: gr },
        IsoResult::No(o) => QgResult::No(o),
        IsoResult::Unknown { candidates } => QgResult::Unknown { candidates },
    })
}

/// Row and column permutations with `P m Q = m^T`, for `n <= 4`.
pub fn permutation_transpose(m: &RingMatrix) -> Result<Option<EquivalenceCertificate>> {
    let n = m.rows();
    if !m.is_square() || n > 4 {
        return Ok(None);
    }
    let t = m.transpose();
    for rows in (0..n).permutations(n) {
        for cols in (0..n).permutations(n) {
            let ok = (0..n).all(|i| (0..n).all(|j| m.get(rows[i], cols[j]) == t.get(i, j)));
            if !ok {
                continue;
            }
            let mut tr = Tracked::new(m);
            for op in swaps(&rows, true).into_iter().chain(swaps(&cols, false)) {
                tr.apply(op)?;
            }
            if tr.current() != &t {
                return Err(Error::internal("permutation swaps did not reproduce the transpose"));
            }
            return Ok(Some(tr.into_certificate().checked()?));
        }
    }
    Ok(None)
}

/// Swaps turning the identity arrangement into `perm` (row/column `i` of the
/// result is `perm[i]` of the input).
fn swaps(perm: &[usize], rows: bool) -> Vec<ElementaryOp> {
    let mut cur: Vec<usize> = (0..perm.len()).collect();
    let mut out = Vec::new();
    for i in 0..perm.len() {
        let j = cur.iter().position(|&c| c == perm[i]).expect("permutation");
        if j != i {
            cur.swap(i, j);
            out.push(if rows { ElementaryOp::SwapRows(i, j) } else { ElementaryOp::SwapCols(i, j) });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitVerdict {
    Split(IsoWitness),
    NotSplit(Obstruction),
    Unknown { candidates: usize },
}

#[derive(Clone, Debug)]
pub struct SplitReport {
    pub submodule: FPModule,
    pub quotient: FPModule,
    pub verdict: SplitVerdict,
}

/// Tests `M ≅ M' ⊕ M/M'` for the submodule generated by `sub`.
pub fn split_test(m: &FPModule, sub: &[FreeVector], bounds: &IsoBounds) -> Result<SplitReport> {
    let submodule = m.submodule_presentation(sub)?;
    let quotient = m.quotient_by(sub)?;
    let sum = submodule.direct_sum(&quotient)?;
    let verdict = match is_isomorphic(m, &sum, bounds)? {
        IsoResult::Yes(w) => SplitVerdict::Split(w),
        IsoResult::No(o) => SplitVerdict::NotSplit(o),
        IsoResult::Unknown { candidates } => SplitVerdict::Unknown { candidates },
    };
    Ok(SplitReport { submodule, quotient, verdict })
}
