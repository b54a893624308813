//! Equivalence of full-rank square matrices to diagonal form: a certificate
//! when a diagonal form is found, a Fitting-ideal refutation of every
//! candidate diagonal form otherwise, and a report cross-checking the
//! module-theoretic characterizations of diagonalizability.

mod obstruction;
mod report;
mod search;

pub use crate::linalg::transpose_certificate_from_diagonal;
pub use obstruction::{candidate_diagonals, CandidateMismatch, ObstructionRecord};
pub use report::{analyze, AnalyzeBounds, Condition, ConditionStatus, DiagnosisReport, Finding, FindingStatus};

use crate::error::{Error, Result};
use crate::linalg::{determinant, smith_normal_form, unimodular_inverse, EquivalenceCertificate, RingMatrix};
use crate::rings::{factor, Factorization};

/// Limits for [`diagonalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagBounds {
    /// Largest monomial degree of a multiplier in the operation pool.
    pub degree: u32,
    /// Largest absolute integer coefficient of a multiplier.
    pub height: i64,
    /// Depth of the pool search between two pivots.
    pub depth: usize,
    /// Total work: search states for the constructive path (70%) plus
    /// Fitting comparisons for the refutation path (30%).
    pub steps: usize,
}

impl Default for DiagBounds {
    fn default() -> Self {
        DiagBounds { degree: 2, height: 3, depth: 2, steps: 20_000 }
    }
}

impl DiagBounds {
    fn split(&self) -> (usize, usize) {
        let yes = self.steps * 7 / 10;
        (yes.max(1), (self.steps - yes).max(1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagonalization {
    /// `P m Q = D` with `D` diagonal.
    Yes(EquivalenceCertificate),
    No(ObstructionRecord),
    Unknown {
        states: usize,
        comparisons: usize,
        reason: String,
    },
}

impl Diagonalization {
    pub fn is_yes(&self) -> bool {
        matches!(self, Diagonalization::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Diagonalization::No(_))
    }
}

/// Determinant and its factorization, or `FullRankRequired`.
pub(crate) fn screen(m: &RingMatrix) -> Result<(crate::rings::Poly, Factorization)> {
    if !m.is_square() {
        return Err(Error::usage(format!("expected a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let det = determinant(m)?;
    if det.is_zero() {
        return Err(Error::FullRankRequired);
    }
    let fact = if det.is_unit() {
        Factorization { unit: det.clone(), factors: Vec::new(), complete: true }
    } else {
        factor(&det)?
    };
    Ok((det, fact))
}

/// Decides whether `m` is equivalent to a diagonal matrix, within bounds.
pub fn diagonalize(m: &RingMatrix, bounds: &DiagBounds) -> Result<Diagonalization> {
    let (det, fact) = screen(m)?;
    if m.ring().is_euclidean() {
        return Ok(Diagonalization::Yes(smith_normal_form(m)?.certificate));
    }
    if det.is_unit() {
        let n = m.rows();
        let cert = EquivalenceCertificate {
            source: m.clone(),
            left: unimodular_inverse(m)?,
            right: RingMatrix::identity(m.ring(), n),
            target: RingMatrix::identity(m.ring(), n),
            transcript: Vec::new(),
        };
        return Ok(Diagonalization::Yes(cert.checked()?));
    }
    let (yes_budget, no_budget) = bounds.split();
    let (no, comparisons) = obstruction::no_path(m, &det, &fact, no_budget)?;
    let reason = match no {
        obstruction::NoPath::Refuted(record) => return Ok(Diagonalization::No(record)),
        obstruction::NoPath::Survivors(s) => {
            format!("{} candidate diagonal form(s) share every Fitting ideal", s.len())
        }
        obstruction::NoPath::Incomplete(r) => r,
    };
    let yes = search::yes_path(m, bounds, yes_budget)?;
    Ok(match yes.certificate {
        Some(cert) => Diagonalization::Yes(cert),
        None => Diagonalization::Unknown {
            states: yes.states,
            comparisons,
            reason: format!("{reason}; no diagonal form within {} search states", yes.states),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{fitting_ideal, verify_certificate, ElementaryOp, Tracked};
    use crate::rings::{parse_poly, Poly, Ring};
    use crate::testkit::{scramble, ScrambleRecipe};

    fn mat(r: &Ring, rows: &[&[&str]]) -> RingMatrix {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        RingMatrix::parse(r, &rows).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn nilpotent_block_is_refuted() {
        let r = Ring::qxy();
        let m = mat(&r, &[&["x", "y"], &["0", "x"]]);
        let Diagonalization::No(rec) = diagonalize(&m, &DiagBounds::default()).unwrap() else { panic!() };
        assert_eq!(rec.det.to_string(), "x^2");
        let entries: Vec<Vec<String>> =
            rec.candidates.iter().map(|c| c.entries.iter().map(|e| e.to_string()).collect()).collect();
        assert_eq!(entries, [vec!["1", "x^2"], vec!["x", "x"]]);
        for c in &rec.candidates {
            assert_eq!(c.index, 1);
            assert_eq!(c.matrix_ideal, ["y", "x"]);
        }
        assert_eq!(rec.candidates[0].candidate_ideal, ["1"]);
        assert_eq!(rec.candidates[1].candidate_ideal, ["x"]);
        assert!(rec.verify(&m).unwrap());
        let mut forged = rec.clone();
        forged.candidates.pop();
        assert!(!forged.verify(&m).unwrap());
    }

    #[test]
    fn integer_polynomial_example_diagonalizes() {
        let zx = Ring::zx();
        let m = mat(&zx, &[&["2", "x"], &["0", "3"]]);
        let Diagonalization::Yes(cert) = diagonalize(&m, &DiagBounds::default()).unwrap() else { panic!() };
        assert!(verify_certificate(&cert).is_valid());
        assert!(cert.replay().unwrap());
        assert_eq!(cert.target.diagonal_entries().iter().map(|e| e.to_string()).collect::<Vec<_>>(), ["1", "6"]);
        let t = transpose_certificate_from_diagonal(&cert).unwrap();
        assert_eq!(t.target, m.transpose());
    }

    #[test]
    fn hand_transcript_verifies() {
        let zx = Ring::zx();
        let m = mat(&zx, &[&["2", "x"], &["0", "3"]]);
        let mut tr = Tracked::new(&m);
        let ops = [
            ElementaryOp::AddCol { target: 1, source: 0, factor: p(&zx, "x + 2") },
            ElementaryOp::AddRow { target: 0, source: 1, factor: p(&zx, "-x - 1") },
            ElementaryOp::AddCol { target: 0, source: 1, factor: p(&zx, "-2") },
            ElementaryOp::AddRow { target: 1, source: 0, factor: p(&zx, "-3") },
            ElementaryOp::SwapCols(0, 1),
        ];
        for op in ops {
            tr.apply(op).unwrap();
        }
        let cert = tr.into_certificate();
        assert_eq!(cert.target.to_strings(), [["1", "0"], ["0", "-6"]]);
        assert!(verify_certificate(&cert).is_valid());
    }

    #[test]
    fn euclidean_and_unit_cases() {
        let z = Ring::integers();
        let m = mat(&z, &[&["2", "4"], &["6", "8"]]);
        assert!(diagonalize(&m, &DiagBounds::default()).unwrap().is_yes());
        let r = Ring::qxy();
        let u = mat(&r, &[&["1", "x"], &["0", "1"]]);
        let Diagonalization::Yes(c) = diagonalize(&u, &DiagBounds::default()).unwrap() else { panic!() };
        assert!(c.target.to_strings() == [["1", "0"], ["0", "1"]]);
        let s = mat(&r, &[&["x", "x"], &["y", "y"]]);
        assert_eq!(diagonalize(&s, &DiagBounds::default()).unwrap_err(), Error::FullRankRequired);
    }

    #[test]
    fn scrambled_diagonals_recover() {
        let r = Ring::qxy();
        let d = RingMatrix::diagonal(&r, &[p(&r, "x*y"), p(&r, "x + 1"), p(&r, "y - 1")]);
        for seed in 0..4 {
            let recipe = ScrambleRecipe::random(&r, 3, seed, 6, 1, 2);
            let s = scramble(&d, &recipe).unwrap().target;
            let Diagonalization::Yes(cert) = diagonalize(&s, &DiagBounds::default()).unwrap() else {
                panic!("seed {seed}")
            };
            assert!(cert.target.is_diagonal());
            for k in 0..=3 {
                assert!(fitting_ideal(&cert.target, k).unwrap().equals(&fitting_ideal(&d, k).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn analyze_reports() {
        let r = Ring::qxy();
        let rep = analyze(&mat(&r, &[&["x", "0"], &["0", "y - 1"]]), &AnalyzeBounds::default()).unwrap();
        assert!(rep.conditions.iter().all(|c| c.status == ConditionStatus::Holds), "{:?}", rep.conditions);
        assert!(rep.discrepancies.is_empty());

        let rep = analyze(&mat(&r, &[&["x", "y"], &["0", "x"]]), &AnalyzeBounds::default()).unwrap();
        assert!(matches!(rep.qg, Some(crate::homalg::QgResult::Yes { .. })));
        assert!(rep.diagonal.as_ref().unwrap().is_no());
        let st: Vec<ConditionStatus> = rep.conditions.iter().map(|c| c.status).collect();
        assert_eq!(st[2..], [ConditionStatus::Fails, ConditionStatus::Fails]);
        assert!(rep.discrepancies.is_empty(), "{:?}", rep.discrepancies);

        let zx = Ring::zx();
        let rep = analyze(&mat(&zx, &[&["2", "x"], &["0", "3"]]), &AnalyzeBounds::default()).unwrap();
        assert!(rep.discrepancies.iter().any(|d| d.starts_with("published claim")));
        assert!(rep.findings.iter().all(|f| f.status != FindingStatus::Violated));

        let rep = analyze(&mat(&r, &[&["x", "x"], &["y", "y"]]), &AnalyzeBounds::default()).unwrap();
        assert!(!rep.full_rank && rep.degenerate.is_some());
    }
}
