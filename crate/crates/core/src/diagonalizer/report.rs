use super::{diagonalize, screen, DiagBounds, Diagonalization};
use crate::error::{Error, Result};
use crate::filtration::{
    filtration_from_decomposition, sample_lattice, search_minimal_cyclic_filtration, verify_filtration,
    CyclicFiltration, FiltrationBounds, FiltrationSearch, SearchOutcome,
};
use crate::homalg::{
    ext, free_resolution, grade, is_isomorphic, is_quasi_gorenstein, FPModule, GradeValue, IsoBounds, IsoResult,
    QgResult,
};
use crate::linalg::{transpose_certificate_from_diagonal, EquivalenceCertificate, RingMatrix, Verification};
use crate::rings::{Factorization, Poly, Ring};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeBounds {
    pub diagonal: DiagBounds,
    pub iso: IsoBounds,
    pub filtration: FiltrationBounds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionStatus {
    Holds,
    Fails,
    Undetermined,
}

/// One of the four equivalent characterizations of diagonalizability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: &'static str,
    pub status: ConditionStatus,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FindingStatus {
    /// The implication was carried out and its output verified.
    Realized,
    /// Both sides were computed and agree.
    Consistent,
    /// Computed results contradict the implication.
    Violated,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub implication: &'static str,
    pub status: FindingStatus,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct DiagnosisReport {
    pub matrix: RingMatrix,
    pub det: Option<Poly>,
    pub factorization: Option<Factorization>,
    pub full_rank: bool,
    /// Full rank with non-unit determinant: the cokernel has a length-one
    /// free resolution and is nonzero.
    pub pd_one: bool,
    /// Why the remaining analyses were skipped or qualified.
    pub degenerate: Option<String>,
    pub qg: Option<QgResult>,
    pub filtration: Option<FiltrationSearch>,
    /// Quasi-Gorenstein status of each `M_i` of a found filtration.
    pub filtration_submodules_qg: Vec<ConditionStatus>,
    pub diagonal: Option<Diagonalization>,
    pub transpose_certificate: Option<EquivalenceCertificate>,
    /// Non-unit diagonal entries of the certificate target.
    pub decomposition: Vec<Poly>,
    pub unit_entries: usize,
    pub decomposition_filtration: Option<(CyclicFiltration, Verification)>,
    pub conditions: Vec<Condition>,
    pub findings: Vec<Finding>,
    pub discrepancies: Vec<String>,
}

/// Published claims about specific matrices, checked against certificates.
const KNOWN_CLAIMS: &[(&str, &[&[&str]], bool, bool)] = &[("Z[x]", &[&["2", "x"], &["0", "3"]], false, false)];

fn known_claim(m: &RingMatrix) -> Option<(bool, bool)> {
    KNOWN_CLAIMS.iter().find_map(|(ring, rows, diag, transpose)| {
        let r = match *ring {
            "Z[x]" => Ring::zx(),
            _ => return None,
        };
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        let claimed = RingMatrix::parse(&r, &rows).ok()?;
        (&claimed == m).then_some((*diag, *transpose))
    })
}

/// Quasi-Gorenstein test for an arbitrary finitely presented module: grade
/// equals projective dimension and the top Ext is isomorphic to the module.
fn module_is_qg(m: &FPModule, bounds: &IsoBounds) -> Result<ConditionStatus> {
    let res = free_resolution(m, m.generator_count() + 2)?;
    if !res.complete {
        return Ok(ConditionStatus::Undetermined);
    }
    let pd = res.length();
    if grade(m, pd.max(1))?.value != GradeValue::Exactly(pd) {
        return Ok(ConditionStatus::Fails);
    }
    Ok(match is_isomorphic(&ext(m, pd)?, m, bounds)? {
        IsoResult::Yes(_) => ConditionStatus::Holds,
        IsoResult::No(_) => ConditionStatus::Fails,
        IsoResult::Unknown { .. } => ConditionStatus::Undetermined,
    })
}

fn entries(v: &[Poly]) -> String {
    v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

/// Runs every analysis on `m` and cross-checks the results. Degenerate
/// inputs produce a flagged report instead of an error.
pub fn analyze(m: &RingMatrix, bounds: &AnalyzeBounds) -> Result<DiagnosisReport> {
    let mut rep = DiagnosisReport {
        matrix: m.clone(),
        det: None,
        factorization: None,
        full_rank: false,
        pd_one: false,
        degenerate: None,
        qg: None,
        filtration: None,
        filtration_submodules_qg: Vec::new(),
        diagonal: None,
        transpose_certificate: None,
        decomposition: Vec::new(),
        unit_entries: 0,
        decomposition_filtration: None,
        conditions: Vec::new(),
        findings: Vec::new(),
        discrepancies: Vec::new(),
    };
    let (det, fact) = match screen(m) {
        Ok(x) => x,
        Err(Error::FullRankRequired) => {
            rep.degenerate = Some("determinant is zero; the matrix is not of full rank".into());
            return Ok(rep);
        }
        Err(Error::Usage(msg)) => {
            rep.degenerate = Some(msg);
            return Ok(rep);
        }
        Err(e) => return Err(e),
    };
    rep.full_rank = true;
    rep.pd_one = !det.is_unit();
    rep.det = Some(det.clone());
    rep.factorization = Some(fact);
    if det.is_unit() {
        rep.degenerate = Some("determinant is a unit; the module is zero".into());
    }
    let module = FPModule::from_matrix(m);
    if rep.pd_one {
        rep.qg = Some(is_quasi_gorenstein(m, &bounds.iso)?);
        let search = search_minimal_cyclic_filtration(&module, &bounds.filtration)?;
        if let SearchOutcome::Found(f) = &search.outcome {
            for i in 1..=f.length() {
                let sub = module.submodule_presentation(&f.submodule_generators(i))?;
                rep.filtration_submodules_qg.push(module_is_qg(&sub, &bounds.iso)?);
            }
        }
        rep.filtration = Some(search);
    }
    let diag = diagonalize(m, &bounds.diagonal)?;
    if let Diagonalization::Yes(cert) = &diag {
        let t = transpose_certificate_from_diagonal(cert)?;
        rep.transpose_certificate = Some(t);
        let d = cert.target.diagonal_entries();
        rep.unit_entries = d.iter().filter(|e| e.is_unit()).count();
        rep.decomposition = d.into_iter().filter(|e| !e.is_unit()).collect();
        if !rep.decomposition.is_empty() {
            let f = filtration_from_decomposition(m.ring(), &rep.decomposition)?;
            let lattice = sample_lattice(&f.module, &bounds.filtration)?;
            let v = verify_filtration(&f, &lattice)?;
            rep.decomposition_filtration = Some((f, v));
        }
    }
    rep.diagonal = Some(diag);
    cross_check(&mut rep);
    Ok(rep)
}

fn cross_check(rep: &mut DiagnosisReport) {
    let diag = rep.diagonal.as_ref().expect("diagonalization ran");
    let qg_status = match &rep.qg {
        Some(QgResult::Yes { .. }) => ConditionStatus::Holds,
        Some(QgResult::No(_)) => ConditionStatus::Fails,
        Some(QgResult::Unknown { .. }) => ConditionStatus::Undetermined,
        None => ConditionStatus::Holds,
    };
    let transpose_status = if rep.transpose_certificate.is_some() { ConditionStatus::Holds } else { qg_status };

    let mut findings = Vec::new();
    match diag {
        Diagonalization::Yes(cert) => {
            let d = entries(&cert.target.diagonal_entries());
            findings.push(Finding {
                implication: "diagonal => equivalent to transpose",
                status: FindingStatus::Realized,
                detail: format!("transpose certificate built from P m Q = diag({d}) and verified"),
            });
            if qg_status == ConditionStatus::Fails {
                findings.push(Finding {
                    implication: "diagonal => quasi-Gorenstein",
                    status: FindingStatus::Violated,
                    detail: "a diagonal form was certified but the quasi-Gorenstein test refuted".into(),
                });
            }
            findings.push(Finding {
                implication: "diagonal => cyclic decomposition",
                status: FindingStatus::Realized,
                detail: if rep.decomposition.is_empty() {
                    "every diagonal entry is a unit; the module is zero".into()
                } else {
                    format!("module is the direct sum of R/(d) for d in [{}]", entries(&rep.decomposition))
                },
            });
            match &rep.decomposition_filtration {
                Some((_, Verification::Valid)) => findings.push(Finding {
                    implication: "cyclic decomposition => minimal cyclic filtration",
                    status: FindingStatus::Realized,
                    detail: "filtration built from the decomposition verifies; its terms are direct sums of cyclic quasi-Gorenstein modules".into(),
                }),
                Some((_, Verification::Invalid(why))) => findings.push(Finding {
                    implication: "cyclic decomposition => minimal cyclic filtration",
                    status: FindingStatus::Violated,
                    detail: format!("filtration built from the decomposition fails verification: {why}"),
                }),
                None => findings.push(Finding {
                    implication: "cyclic decomposition => minimal cyclic filtration",
                    status: FindingStatus::NotApplicable,
                    detail: "no non-unit diagonal entries".into(),
                }),
            }
            if let Some(FiltrationSearch { outcome: SearchOutcome::NoneWithinBounds, .. }) = &rep.filtration {
                findings.push(Finding {
                    implication: "diagonal => filtration search succeeds",
                    status: FindingStatus::Consistent,
                    detail: "the bounded search found no minimal chain; this is relative to the sampling bounds \
                             and the minimality reading, and the decomposition filtration stands"
                        .into(),
                });
            }
        }
        Diagonalization::No(rec) => {
            findings.push(Finding {
                implication: "not diagonal => no cyclic decomposition",
                status: FindingStatus::Realized,
                detail: format!(
                    "all {} candidate diagonal forms differ from the matrix in some Fitting ideal",
                    rec.candidates.len()
                ),
            });
            let found = matches!(&rep.filtration, Some(FiltrationSearch { outcome: SearchOutcome::Found(_), .. }));
            let all_qg = rep.filtration_submodules_qg.iter().all(|s| *s == ConditionStatus::Holds);
            findings.push(Finding {
                implication: "not diagonal => no minimal filtration by quasi-Gorenstein submodules",
                status: if found && all_qg && qg_status == ConditionStatus::Holds {
                    FindingStatus::Violated
                } else {
                    FindingStatus::Consistent
                },
                detail: if found {
                    format!(
                        "search found a minimal chain; submodule quasi-Gorenstein status {:?}",
                        rep.filtration_submodules_qg
                    )
                } else {
                    "the bounded search found no minimal chain".into()
                },
            });
        }
        Diagonalization::Unknown { .. } => {}
    }

    let filtration_clause = match (diag, &rep.filtration) {
        (Diagonalization::Yes(_), _) if rep.decomposition_filtration.as_ref().is_none_or(|(_, v)| v.is_valid()) => {
            (ConditionStatus::Holds, "realized by the decomposition filtration".to_string())
        }
        (_, Some(FiltrationSearch { outcome: SearchOutcome::Found(_), .. }))
            if rep.filtration_submodules_qg.iter().all(|s| *s == ConditionStatus::Holds) =>
        {
            (ConditionStatus::Holds, "search found a minimal chain of quasi-Gorenstein submodules".to_string())
        }
        (_, Some(FiltrationSearch { outcome: SearchOutcome::Found(_), .. })) => (
            ConditionStatus::Undetermined,
            "search found a minimal chain; its submodules are not all certified quasi-Gorenstein".to_string(),
        ),
        (_, Some(_)) => (ConditionStatus::Undetermined, "no minimal chain within the search bounds".to_string()),
        (_, None) => (ConditionStatus::Undetermined, "filtration search not run".to_string()),
    };
    let combine = |a: ConditionStatus, what: &str| -> Condition {
        let (status, reason) = match (a, filtration_clause.0) {
            (ConditionStatus::Fails, _) => (ConditionStatus::Fails, format!("{what} fails")),
            (ConditionStatus::Holds, ConditionStatus::Holds) => {
                (ConditionStatus::Holds, format!("{what} holds; filtration {}", filtration_clause.1))
            }
            _ => (ConditionStatus::Undetermined, format!("{what}: {a:?}; filtration clause: {}", filtration_clause.1)),
        };
        Condition { name: "", status, reason }
    };
    let (diag_status, diag_reason) = match diag {
        Diagonalization::Yes(c) => {
            (ConditionStatus::Holds, format!("certificate to diag({})", entries(&c.target.diagonal_entries())))
        }
        Diagonalization::No(_) => {
            (ConditionStatus::Fails, "every candidate diagonal form is refuted by a Fitting ideal".into())
        }
        Diagonalization::Unknown { reason, .. } => (ConditionStatus::Undetermined, reason.clone()),
    };
    let mut c1 = combine(qg_status, "quasi-Gorenstein");
    c1.name = "quasi_gorenstein_with_filtration";
    let mut c2 = combine(transpose_status, "equivalence to the transpose");
    c2.name = "transpose_with_filtration";
    let c3 = Condition {
        name: "cyclic_decomposition",
        status: diag_status,
        reason: match diag_status {
            ConditionStatus::Holds => "read off the diagonal form".into(),
            ConditionStatus::Fails => {
                "the Fitting ideals of every n-summand cyclic decomposition differ from the module's".into()
            }
            ConditionStatus::Undetermined => diag_reason.clone(),
        },
    };
    let c4 = Condition { name: "diagonal", status: diag_status, reason: diag_reason };
    let statuses = [c1.status, c2.status, c3.status, c4.status];
    if statuses.contains(&ConditionStatus::Holds) && statuses.contains(&ConditionStatus::Fails) {
        rep.discrepancies.push(format!(
            "conditions disagree: {}",
            [&c1, &c2, &c3, &c4].iter().map(|c| format!("{}={:?}", c.name, c.status)).collect::<Vec<_>>().join(", ")
        ));
    }
    for f in &findings {
        if f.status == FindingStatus::Violated {
            rep.discrepancies.push(format!("{}: {}", f.implication, f.detail));
        }
    }
    if rep.unit_entries > 0 && !rep.decomposition.is_empty() {
        rep.discrepancies.push(format!(
            "the diagonal form has {} unit entr{}; the corresponding summands R/(u) are zero",
            rep.unit_entries,
            if rep.unit_entries == 1 { "y" } else { "ies" }
        ));
    }
    if let (Some((claim_diag, claim_transpose)), Diagonalization::Yes(cert)) = (known_claim(&rep.matrix), diag) {
        let d = entries(&cert.target.diagonal_entries());
        if !claim_diag {
            rep.discrepancies.push(format!(
                "published claim: this matrix is not equivalent to a diagonal matrix; the verified certificate reaches diag({d})"
            ));
        }
        if !claim_transpose && rep.transpose_certificate.is_some() {
            rep.discrepancies.push(
                "published claim: this matrix is not equivalent to its transpose; a verified certificate shows it is"
                    .into(),
            );
        }
    }
    rep.conditions = vec![c1, c2, c3, c4];
    rep.findings = findings;
}
