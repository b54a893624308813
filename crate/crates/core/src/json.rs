//! File formats. Every document carries `"schema": "diagcert/1"` and unknown
//! fields are rejected; polynomials are strings in the parser's grammar.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diagonalizer::{DiagnosisReport, Diagonalization, ObstructionRecord};
use crate::error::{Error, Result};
use crate::filtration::{CyclicFiltration, Evidence, FiltrationSearch, RejectReason, SearchOutcome};
use crate::groebner::FreeVector;
use crate::homalg::{FPModule, GradeValue, IsoWitness, ModuleHom, Obstruction, QgResult, QgWitness};
use crate::linalg::{verify_certificate, ElementaryOp, EquivalenceCertificate, RingMatrix, SmithForm};
use crate::rings::{parse_poly, CoeffDomain, MonomialOrder, Poly, Ring, RingKind};

pub const SCHEMA: &str = "diagcert/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingJson {
    /// `integers` or `polynomial`.
    pub kind: String,
    /// `integers`, `rationals` or `prime_field`; polynomial rings only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub variables: Vec<String>,
    /// `lex` or `grevlex`; defaults to `grevlex`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

impl RingJson {
    pub fn from_ring(r: &Ring) -> RingJson {
        match r.kind() {
            RingKind::Integers => RingJson {
                kind: "integers".into(),
                coefficients: None,
                modulus: None,
                variables: Vec::new(),
                order: None,
            },
            RingKind::Polynomial => {
                let (coefficients, modulus) = match r.coeffs() {
                    CoeffDomain::Integers => ("integers", None),
                    CoeffDomain::Rationals => ("rationals", None),
                    CoeffDomain::PrimeField(p) => ("prime_field", Some(*p)),
                };
                RingJson {
                    kind: "polynomial".into(),
                    coefficients: Some(coefficients.into()),
                    modulus,
                    variables: r.vars().to_vec(),
                    order: Some(match r.order() {
                        MonomialOrder::Lex => "lex".into(),
                        MonomialOrder::GrevLex => "grevlex".into(),
                    }),
                }
            }
        }
    }

    pub fn to_ring(&self) -> Result<Ring> {
        match self.kind.as_str() {
            "integers" => {
                if self.coefficients.is_some() || self.modulus.is_some() || !self.variables.is_empty() {
                    return Err(Error::usage("the integers take no coefficients, modulus or variables"));
                }
                Ok(Ring::integers())
            }
            "polynomial" => {
                let coeffs = match (self.coefficients.as_deref(), self.modulus) {
                    (Some("integers"), None) => CoeffDomain::Integers,
                    (Some("rationals"), None) => CoeffDomain::Rationals,
                    (Some("prime_field"), Some(p)) => CoeffDomain::PrimeField(p),
                    (Some("prime_field"), None) => return Err(Error::usage("prime_field needs a modulus")),
                    (Some(c), _) => return Err(Error::usage(format!("unknown coefficient domain {c:?}"))),
                    (None, _) => return Err(Error::usage("polynomial ring needs coefficients")),
                };
                if self.variables.is_empty() {
                    return Err(Error::usage("polynomial ring needs at least one variable"));
                }
                let order = match self.order.as_deref() {
                    None | Some("grevlex") => MonomialOrder::GrevLex,
                    Some("lex") => MonomialOrder::Lex,
                    Some(o) => return Err(Error::usage(format!("unknown monomial order {o:?}"))),
                };
                Ring::polynomial(coeffs, &self.variables, order)
            }
            k => Err(Error::usage(format!("unknown ring kind {k:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub schema: String,
    pub ring: RingJson,
    pub matrix: Vec<Vec<String>>,
}

/// Presentation `R^generators / (column span of relations)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub schema: String,
    pub ring: RingJson,
    pub generators: usize,
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum OpJson {
    SwapRows { a: usize, b: usize },
    SwapCols { a: usize, b: usize },
    AddRow { target: usize, source: usize, factor: String },
    AddCol { target: usize, source: usize, factor: String },
    ScaleRow { index: usize, unit: String },
    ScaleCol { index: usize, unit: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub schema: String,
    pub ring: RingJson,
    pub source: Vec<Vec<String>>,
    pub left: Vec<Vec<String>>,
    pub right: Vec<Vec<String>>,
    pub target: Vec<Vec<String>>,
    #[serde(default)]
    pub transcript: Vec<OpJson>,
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Input {
    Matrix(RingMatrix),
    Module(FPModule),
    Certificate(EquivalenceCertificate),
}

fn check_schema(s: &str) -> Result<()> {
    if s != SCHEMA {
        return Err(Error::usage(format!("unsupported schema {s:?}, expected {SCHEMA:?}")));
    }
    Ok(())
}

fn poly_at(ring: &Ring, s: &str, what: &str) -> Result<Poly> {
    parse_poly(ring, s).map_err(|e| match e {
        Error::Parse { position, message } => Error::Parse { position, message: format!("{what}: {message} in {s:?}") },
        other => other,
    })
}

pub fn parse_grid(ring: &Ring, rows: &[Vec<String>], name: &str) -> Result<Vec<Vec<Poly>>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().map(|(j, s)| poly_at(ring, s, &format!("{name}[{i}][{j}]"))).collect())
        .collect()
}

fn grid_matrix(ring: &Ring, rows: &[Vec<String>], name: &str) -> Result<RingMatrix> {
    RingMatrix::new(ring, parse_grid(ring, rows, name)?)
}

pub fn grid(m: &RingMatrix) -> Vec<Vec<String>> {
    m.to_strings()
}

impl OpJson {
    pub fn from_op(op: &ElementaryOp) -> OpJson {
        match op {
            ElementaryOp::SwapRows(a, b) => OpJson::SwapRows { a: *a, b: *b },
            ElementaryOp::SwapCols(a, b) => OpJson::SwapCols { a: *a, b: *b },
            ElementaryOp::AddRow { target, source, factor } => {
                OpJson::AddRow { target: *target, source: *source, factor: factor.to_string() }
            }
            ElementaryOp::AddCol { target, source, factor } => {
                OpJson::AddCol { target: *target, source: *source, factor: factor.to_string() }
            }
            ElementaryOp::ScaleRow { index, unit } => OpJson::ScaleRow { index: *index, unit: unit.to_string() },
            ElementaryOp::ScaleCol { index, unit } => OpJson::ScaleCol { index: *index, unit: unit.to_string() },
        }
    }

    pub fn to_op(&self, ring: &Ring) -> Result<ElementaryOp> {
        Ok(match self {
            OpJson::SwapRows { a, b } => ElementaryOp::SwapRows(*a, *b),
            OpJson::SwapCols { a, b } => ElementaryOp::SwapCols(*a, *b),
            OpJson::AddRow { target, source, factor } => {
                ElementaryOp::AddRow { target: *target, source: *source, factor: poly_at(ring, factor, "factor")? }
            }
            OpJson::AddCol { target, source, factor } => {
                ElementaryOp::AddCol { target: *target, source: *source, factor: poly_at(ring, factor, "factor")? }
            }
            OpJson::ScaleRow { index, unit } => {
                ElementaryOp::ScaleRow { index: *index, unit: poly_at(ring, unit, "unit")? }
            }
            OpJson::ScaleCol { index, unit } => {
                ElementaryOp::ScaleCol { index: *index, unit: poly_at(ring, unit, "unit")? }
            }
        })
    }
}

impl CertificateDoc {
    pub fn from_certificate(c: &EquivalenceCertificate) -> CertificateDoc {
        CertificateDoc {
            schema: SCHEMA.into(),
            ring: RingJson::from_ring(c.source.ring()),
            source: grid(&c.source),
            left: grid(&c.left),
            right: grid(&c.right),
            target: grid(&c.target),
            transcript: c.transcript.iter().map(OpJson::from_op).collect(),
        }
    }

    pub fn to_certificate(&self) -> Result<EquivalenceCertificate> {
        check_schema(&self.schema)?;
        let ring = self.ring.to_ring()?;
        Ok(EquivalenceCertificate {
            source: grid_matrix(&ring, &self.source, "source")?,
            left: grid_matrix(&ring, &self.left, "left")?,
            right: grid_matrix(&ring, &self.right, "right")?,
            target: grid_matrix(&ring, &self.target, "target")?,
            transcript: self.transcript.iter().map(|o| o.to_op(&ring)).collect::<Result<_>>()?,
        })
    }
}

impl MatrixDoc {
    pub fn from_matrix(m: &RingMatrix) -> MatrixDoc {
        MatrixDoc { schema: SCHEMA.into(), ring: RingJson::from_ring(m.ring()), matrix: grid(m) }
    }

    pub fn to_matrix(&self) -> Result<RingMatrix> {
        check_schema(&self.schema)?;
        grid_matrix(&self.ring.to_ring()?, &self.matrix, "matrix")
    }
}

impl ModuleDoc {
    pub fn to_module(&self) -> Result<FPModule> {
        check_schema(&self.schema)?;
        let ring = self.ring.to_ring()?;
        let rel = if self.relations.is_empty() {
            RingMatrix::zeros(&ring, self.generators, 0)
        } else {
            grid_matrix(&ring, &self.relations, "relations")?
        };
        FPModule::new(&ring, self.generators, rel)
    }
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::usage(format!("invalid document: {e}")))
}

/// Parses any supported document, dispatching on its fields.
pub fn parse_input(text: &str) -> Result<Input> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: 0,
        message: format!("invalid JSON at line {} column {}: {e}", e.line(), e.column()),
    })?;
    let obj = v.as_object().ok_or_else(|| Error::usage("document must be a JSON object"))?;
    if obj.contains_key("left") {
        Ok(Input::Certificate(from_value::<CertificateDoc>(v)?.to_certificate()?))
    } else if obj.contains_key("relations") {
        Ok(Input::Module(from_value::<ModuleDoc>(v)?.to_module()?))
    } else {
        Ok(Input::Matrix(from_value::<MatrixDoc>(v)?.to_matrix()?))
    }
}

fn strings(v: &[Poly]) -> Vec<String> {
    v.iter().map(|p| p.to_string()).collect()
}

fn vector(v: &FreeVector) -> Vec<String> {
    strings(v.components())
}

/// Certificate with the independent verifier's verdict attached.
pub fn certificate_json(c: &EquivalenceCertificate) -> Value {
    let verdict = verify_certificate(c);
    let mut v = serde_json::to_value(CertificateDoc::from_certificate(c)).expect("serializable");
    v["verified"] = json!(verdict.is_valid());
    v
}

pub fn smith_json(s: &SmithForm) -> Value {
    json!({
        "schema": SCHEMA,
        "invariant_factors": strings(&s.invariant_factors),
        "certificate": certificate_json(&s.certificate),
    })
}

fn hom_json(h: &ModuleHom) -> Value {
    json!({ "matrix": grid(&h.matrix) })
}

fn iso_json(w: &IsoWitness) -> Value {
    json!({
        "forward": hom_json(&w.forward),
        "inverse": hom_json(&w.inverse),
        "verified": w.verify().unwrap_or(false),
    })
}

pub fn obstruction_json(o: &Obstruction, m: &FPModule, n: &FPModule) -> Value {
    let body = match o {
        Obstruction::Fitting { index, left, right } => {
            json!({ "kind": "fitting", "index": index, "left": left, "right": right })
        }
        Obstruction::Annihilator { left, right } => json!({ "kind": "annihilator", "left": left, "right": right }),
        Obstruction::Specialization { probe, left, right } => {
            json!({ "kind": "specialization", "probe": probe, "left": left, "right": right })
        }
    };
    json!({ "description": o.describe(), "obstruction": body, "verified": o.verify(m, n).unwrap_or(false) })
}

pub fn qg_json(m: &RingMatrix, r: &QgResult) -> Value {
    match r {
        QgResult::Yes { witness, grade } => {
            let w = match witness {
                QgWitness::Equivalence(c) => json!({ "equivalence": certificate_json(c) }),
                QgWitness::Isomorphism(w) => json!({ "isomorphism": iso_json(w) }),
            };
            let grade = match grade.value {
                GradeValue::Exactly(g) => json!({ "exactly": g }),
                GradeValue::AtLeast(g) => json!({ "at_least": g }),
            };
            json!({ "verdict": "yes", "grade": grade, "witness": w })
        }
        QgResult::No(o) => {
            let a = FPModule::from_matrix(m);
            let b = FPModule::from_matrix(&m.transpose());
            json!({ "verdict": "no", "obstruction": obstruction_json(o, &a, &b) })
        }
        QgResult::Unknown { candidates } => json!({ "verdict": "unknown", "candidates_tried": candidates }),
    }
}

pub fn obstruction_record_json(m: &RingMatrix, r: &ObstructionRecord) -> Value {
    json!({
        "det": r.det.to_string(),
        "factorization": {
            "unit": r.factorization.unit.to_string(),
            "factors": r.factorization.factors.iter().map(|(p, e)| json!([p.to_string(), e])).collect::<Vec<_>>(),
            "complete": r.factorization.complete,
        },
        "candidates": r.candidates.iter().map(|c| json!({
            "diagonal": strings(&c.entries),
            "fitting_index": c.index,
            "matrix_ideal": c.matrix_ideal,
            "candidate_ideal": c.candidate_ideal,
            "witness": c.witness.to_string(),
            "witness_in_matrix_ideal": c.witness_in_matrix_ideal,
        })).collect::<Vec<_>>(),
        "verified": r.verify(m).unwrap_or(false),
    })
}

pub fn diagonalization_json(m: &RingMatrix, d: &Diagonalization) -> Value {
    match d {
        Diagonalization::Yes(c) => json!({
            "verdict": "yes",
            "diagonal": strings(&c.target.diagonal_entries()),
            "certificate": certificate_json(c),
        }),
        Diagonalization::No(r) => json!({ "verdict": "no", "obstruction": obstruction_record_json(m, r) }),
        Diagonalization::Unknown { states, comparisons, reason } => json!({
            "verdict": "unknown",
            "search_states": states,
            "fitting_comparisons": comparisons,
            "reason": reason,
        }),
    }
}

fn chain_json(steps: &[(FreeVector, Vec<String>)]) -> Value {
    json!(steps.iter().map(|(v, k)| json!({ "element": vector(v), "ideal": k })).collect::<Vec<_>>())
}

pub fn filtration_chain_json(f: &CyclicFiltration) -> Value {
    json!(f
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let evidence = match &s.evidence {
                Evidence::Sampled { candidates } => json!({ "sampled": candidates }),
                Evidence::Divisibility { remaining } => json!({ "divisibility": remaining }),
            };
            json!({
                "generators": f.submodule_generators(i + 1).iter().map(vector).collect::<Vec<_>>(),
                "element": vector(&s.element),
                "quotient_ideal": s.key,
                "evidence": evidence,
            })
        })
        .collect::<Vec<_>>())
}

pub fn filtration_json(s: &FiltrationSearch) -> Value {
    let outcome = match &s.outcome {
        SearchOutcome::Found(f) => json!({ "verdict": "found", "chain": filtration_chain_json(f) }),
        SearchOutcome::NoneWithinBounds => json!({ "verdict": "none_within_bounds" }),
    };
    let rejected: Vec<Value> = s
        .rejected
        .iter()
        .map(|r| {
            let reason = match &r.reason {
                RejectReason::NotMinimal { smaller } => json!({ "not_minimal": { "smaller": smaller } }),
                RejectReason::DeadEnd { outside } => json!({ "dead_end": { "outside": outside } }),
            };
            json!({ "steps": chain_json(&r.steps), "completion": chain_json(&r.completion), "reason": reason })
        })
        .collect();
    json!({
        "outcome": outcome,
        "lattice": s.lattice.entries.iter().map(|e| e.key.clone()).collect::<Vec<_>>(),
        "rejected": rejected,
        "nodes": s.nodes,
        "truncated": s.truncated,
        "reading": s.reading,
        "bounds": { "degree": s.bounds.degree, "height": s.bounds.height, "max_nodes": s.bounds.max_nodes },
    })
}

/// `NotApplicable` -> `not_applicable`.
fn snake(name: &str) -> String {
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_uppercase() && i > 0 {
            out.push('_');
        }
        out.extend(c.to_lowercase());
    }
    out
}

pub fn report_json(r: &DiagnosisReport) -> Value {
    let m = &r.matrix;
    json!({
        "schema": SCHEMA,
        "ring": RingJson::from_ring(m.ring()),
        "matrix": grid(m),
        "det": r.det.as_ref().map(|d| d.to_string()),
        "factorization": r.factorization.as_ref().map(|f| json!({
            "unit": f.unit.to_string(),
            "factors": f.factors.iter().map(|(p, e)| json!([p.to_string(), e])).collect::<Vec<_>>(),
            "complete": f.complete,
        })),
        "full_rank": r.full_rank,
        "pd_one": r.pd_one,
        "degenerate": r.degenerate,
        "quasi_gorenstein": r.qg.as_ref().map(|q| qg_json(m, q)),
        "filtration": r.filtration.as_ref().map(filtration_json),
        "filtration_submodules_qg": r.filtration_submodules_qg.iter().map(|s| format!("{s:?}").to_lowercase()).collect::<Vec<_>>(),
        "diagonalizable": r.diagonal.as_ref().map(|d| diagonalization_json(m, d)),
        "transpose_certificate": r.transpose_certificate.as_ref().map(certificate_json),
        "decomposition": strings(&r.decomposition),
        "unit_entries": r.unit_entries,
        "decomposition_filtration": r.decomposition_filtration.as_ref().map(|(f, v)| json!({
            "chain": filtration_chain_json(f),
            "verified": v.is_valid(),
        })),
        "conditions": r.conditions.iter().map(|c| json!({
            "name": c.name,
            "status": snake(&format!("{:?}", c.status)),
            "reason": c.reason,
        })).collect::<Vec<_>>(),
        "findings": r.findings.iter().map(|f| json!({
            "implication": f.implication,
            "status": snake(&format!("{:?}", f.status)),
            "detail": f.detail,
        })).collect::<Vec<_>>(),
        "discrepancies": r.discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents_round_trip() {
        let r = Ring::qxy();
        let m = RingMatrix::parse(&r, &[vec!["x", "y"], vec!["0", "x"]]).unwrap();
        let text = serde_json::to_string(&MatrixDoc::from_matrix(&m)).unwrap();
        let Input::Matrix(back) = parse_input(&text).unwrap() else { panic!() };
        assert_eq!(back, m);
        let z = Ring::integers();
        let s = crate::linalg::smith_normal_form(&RingMatrix::parse(&z, &[vec!["2", "4"], vec!["6", "8"]]).unwrap())
            .unwrap();
        let text = serde_json::to_string(&CertificateDoc::from_certificate(&s.certificate)).unwrap();
        let Input::Certificate(c) = parse_input(&text).unwrap() else { panic!() };
        assert_eq!(c, s.certificate);
    }

    #[test]
    fn rejects_bad_documents() {
        let extra = r#"{"schema":"diagcert/1","ring":{"kind":"integers"},"matrix":[["1"]],"extra":1}"#;
        assert!(matches!(parse_input(extra), Err(Error::Usage(_))));
        let schema = r#"{"schema":"other","ring":{"kind":"integers"},"matrix":[["1"]]}"#;
        assert!(matches!(parse_input(schema), Err(Error::Usage(_))));
        let poly = r#"{"schema":"diagcert/1","ring":{"kind":"integers"},"matrix":[["1 +"]]}"#;
        match parse_input(poly) {
            Err(Error::Parse { message, .. }) => assert!(message.starts_with("matrix[0][0]")),
            other => panic!("{other:?}"),
        }
    }
}
