use crate::error::Result;
use crate::groebner::Ideal;
use crate::homalg::{module_fitting_ideal, FPModule};
use crate::linalg::{determinant, RingMatrix};
use crate::rings::{factor, Factorization, Poly, Ring};

/// One candidate diagonal form and the Fitting ideal that rules it out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateMismatch {
    /// Diagonal entries, padded with 1 to the matrix size.
    pub entries: Vec<Poly>,
    /// `j` in `Fitt_j`; for an `n x n` matrix this is the ideal of
    /// `(n - j)`-minors.
    pub index: usize,
    /// Reduced basis of the Fitting ideal of the input.
    pub matrix_ideal: Vec<String>,
    /// Reduced basis of the Fitting ideal of the candidate.
    pub candidate_ideal: Vec<String>,
    /// Generator lying in exactly one of the two ideals.
    pub witness: Poly,
    /// Whether `witness` is a generator of the input's ideal (true) or the
    /// candidate's (false).
    pub witness_in_matrix_ideal: bool,
}

/// Exhaustive refutation of every diagonal form compatible with `det`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionRecord {
    pub det: Poly,
    pub factorization: Factorization,
    pub candidates: Vec<CandidateMismatch>,
}

/// Multisets of at most `parts` nonzero exponent vectors summing to `total`.
fn vector_partitions(total: &[u32], parts: usize, cap: usize) -> Option<Vec<Vec<Vec<u32>>>> {
    fn rec(
        rem: &[u32],
        max: Option<&[u32]>,
        parts: usize,
        acc: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
        cap: usize,
    ) -> bool {
        if rem.iter().all(|&e| e == 0) {
            out.push(acc.clone());
            return out.len() <= cap;
        }
        if acc.len() == parts {
            return true;
        }
        let mut v = vec![0u32; rem.len()];
        loop {
            let mut k = 0;
            while k < v.len() {
                if v[k] < rem[k] {
                    v[k] += 1;
                    break;
                }
                v[k] = 0;
                k += 1;
            }
            if k == v.len() {
                return true;
            }
            if max.is_none_or(|m| v.as_slice() <= m) {
                let next: Vec<u32> = rem.iter().zip(&v).map(|(r, x)| r - x).collect();
                acc.push(v.clone());
                let ok = rec(&next, Some(&v), parts, acc, out, cap);
                acc.pop();
                if !ok {
                    return false;
                }
            }
        }
    }
    let mut out = Vec::new();
    if rec(total, None, parts, &mut Vec::new(), &mut out, cap) {
        Some(out)
    } else {
        None
    }
}

/// Diagonal forms up to order and units whose product is `det`, each padded
/// with 1 to length `n` and sorted canonically. `None` when more than `cap`.
pub fn candidate_diagonals(ring: &Ring, fact: &Factorization, n: usize, cap: usize) -> Option<Vec<Vec<Poly>>> {
    let total: Vec<u32> = fact.factors.iter().map(|(_, e)| *e).collect();
    let parts = vector_partitions(&total, n, cap)?;
    let mut out: Vec<Vec<Poly>> = parts
        .into_iter()
        .map(|blocks| {
            let mut entries: Vec<Poly> = blocks
                .iter()
                .map(|v| fact.factors.iter().zip(v).fold(Poly::one(ring), |acc, ((p, _), &e)| &acc * &p.pow(e)))
                .collect();
            while entries.len() < n {
                entries.push(Poly::one(ring));
            }
            entries.sort_by_key(|p| p.sort_key());
            entries
        })
        .collect();
    out.sort_by_key(|c| c.iter().map(|p| p.sort_key()).collect::<Vec<_>>());
    out.dedup();
    Some(out)
}

pub(super) enum NoPath {
    Refuted(ObstructionRecord),
    /// Candidates with the same Fitting ideals as the input.
    Survivors(Vec<Vec<Poly>>),
    Incomplete(String),
}

fn first_mismatch(
    m: &FPModule,
    fitting: &mut Vec<Option<Ideal>>,
    cand: &[Poly],
    steps: &mut usize,
) -> Result<Option<CandidateMismatch>> {
    let ring = m.ring();
    let d = FPModule::from_matrix(&RingMatrix::diagonal(ring, cand));
    for j in 0..cand.len() {
        *steps += 1;
        if fitting[j].is_none() {
            fitting[j] = Some(module_fitting_ideal(m, j)?);
        }
        let left = fitting[j].as_ref().unwrap();
        let right = module_fitting_ideal(&d, j)?;
        if let Some((witness, side)) = left.separating_element(&right)? {
            return Ok(Some(CandidateMismatch {
                entries: cand.to_vec(),
                index: j,
                matrix_ideal: left.canonical_strings()?,
                candidate_ideal: right.canonical_strings()?,
                witness,
                witness_in_matrix_ideal: side,
            }));
        }
    }
    Ok(None)
}

pub(super) fn no_path(m: &RingMatrix, det: &Poly, fact: &Factorization, budget: usize) -> Result<(NoPath, usize)> {
    if !fact.complete {
        return Ok((NoPath::Incomplete("determinant factorization is incomplete".into()), 0));
    }
    let n = m.rows();
    let Some(cands) = candidate_diagonals(m.ring(), fact, n, budget) else {
        return Ok((NoPath::Incomplete(format!("more than {budget} candidate diagonals")), 0));
    };
    let module = FPModule::from_matrix(m);
    let mut fitting = vec![None; n];
    let mut steps = 0;
    let mut mismatches = Vec::new();
    let mut survivors = Vec::new();
    for c in cands {
        if steps >= budget {
            return Ok((NoPath::Incomplete("candidate budget exhausted".into()), steps));
        }
        match first_mismatch(&module, &mut fitting, &c, &mut steps)? {
            Some(mm) => mismatches.push(mm),
            None => survivors.push(c),
        }
    }
    if survivors.is_empty() {
        let record = ObstructionRecord { det: det.clone(), factorization: fact.clone(), candidates: mismatches };
        return Ok((NoPath::Refuted(record), steps));
    }
    Ok((NoPath::Survivors(survivors), steps))
}

impl ObstructionRecord {
    /// Recomputes the determinant, its factorization, the candidate list and
    /// every ideal inequality from scratch.
    pub fn verify(&self, m: &RingMatrix) -> Result<bool> {
        let ring = m.ring();
        if !m.is_square() || determinant(m)? != self.det || self.factorization.expand() != self.det {
            return Ok(false);
        }
        let fresh = factor(&self.det)?;
        if !fresh.complete || fresh.factors != self.factorization.factors {
            return Ok(false);
        }
        let Some(cands) = candidate_diagonals(ring, &fresh, m.rows(), usize::MAX) else {
            return Ok(false);
        };
        let recorded: Vec<&Vec<Poly>> = self.candidates.iter().map(|c| &c.entries).collect();
        if cands.len() != recorded.len() || cands.iter().zip(&recorded).any(|(a, b)| a != *b) {
            return Ok(false);
        }
        let module = FPModule::from_matrix(m);
        for c in &self.candidates {
            let left = module_fitting_ideal(&module, c.index)?;
            let right = module_fitting_ideal(&FPModule::from_matrix(&RingMatrix::diagonal(ring, &c.entries)), c.index)?;
            if left.canonical_strings()? != c.matrix_ideal || right.canonical_strings()? != c.candidate_ideal {
                return Ok(false);
            }
            let (inside, outside) = if c.witness_in_matrix_ideal { (&left, &right) } else { (&right, &left) };
            if !inside.contains(&c.witness)? || outside.contains(&c.witness)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
