//! Element annihilators, cyclic filtrations and the search for minimal
//! ones.
//!
//! Minimality is read stage by stage: the annihilator of each new cyclic
//! quotient must be minimal under inclusion among the annihilators of all
//! sampled candidates at that stage that lie in the sampled lattice.
//! Backtracking happens only among equally minimal choices.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::groebner::{FreeVector, Ideal};
use crate::homalg::{coefficient_pool, element_annihilator, FPModule};
use crate::linalg::{RingMatrix, Verification};
use crate::rings::{parse_poly, Poly, Ring};

/// Recorded in every search report.
pub const MINIMALITY_READING: &str = "each quotient annihilator is minimal under inclusion among the \
     annihilators of sampled candidates at its stage; the lattice consists of exact element annihilators";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationBounds {
    /// Largest monomial degree of a coefficient in sampled elements.
    pub degree: u32,
    /// Largest absolute integer coefficient in sampled elements.
    pub height: i64,
    /// Search nodes (partial chains) explored before giving up.
    pub max_nodes: usize,
    /// Rejected chains kept for the report.
    pub max_rejected: usize,
}

impl Default for FiltrationBounds {
    fn default() -> Self {
        FiltrationBounds { degree: 1, height: 2, max_nodes: 64, max_rejected: 16 }
    }
}

#[derive(Clone, Debug)]
pub struct SampleEntry {
    pub element: FreeVector,
    pub annihilator: Ideal,
    /// Printed reduced Gröbner basis; equal ideals have equal keys.
    pub key: Vec<String>,
    pub principal: Option<Poly>,
}

/// Annihilators of the elements `sum c_i e_i` with coefficients from the
/// bounded pool, one element per associate class.
#[derive(Clone, Debug)]
pub struct AnnihilatorSample {
    pub module: FPModule,
    pub entries: Vec<SampleEntry>,
    pub degree: u32,
    pub height: i64,
}

impl AnnihilatorSample {
    /// Distinct ideals in order of first appearance.
    pub fn ideals(&self) -> Vec<(&[String], &Ideal)> {
        let mut out: Vec<(&[String], &Ideal)> = Vec::new();
        for e in &self.entries {
            if !out.iter().any(|(k, _)| *k == e.key.as_slice()) {
                out.push((&e.key, &e.annihilator));
            }
        }
        out
    }

    pub fn contains_key(&self, key: &[String]) -> bool {
        self.entries.iter().any(|e| e.key == key)
    }

    /// Recomputes every annihilator.
    pub fn verify(&self) -> Result<bool> {
        for e in &self.entries {
            if element_annihilator(&self.module, &e.element)?.canonical_strings()? != e.key {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Nonzero elements with pool coefficients, one per associate class, ordered
/// by coefficient degree, then support size, then pool position.
pub fn sample_elements(ring: &Ring, g: usize, degree: u32, height: i64) -> Vec<FreeVector> {
    let pool = coefficient_pool(ring, degree, height);
    let mut choices: Vec<Option<usize>> = vec![None];
    choices.extend((0..pool.len()).map(Some));
    let mut tuples: Vec<Vec<Option<usize>>> = (0..g).map(|_| choices.clone()).multi_cartesian_product().collect();
    if g == 0 {
        tuples.clear();
    }
    tuples.sort_by_key(|t| {
        let deg = t.iter().flatten().map(|&i| pool[i].total_degree().unwrap_or(0)).max().unwrap_or(0);
        let support = t.iter().flatten().count();
        (deg, support, t.iter().map(|c| c.map_or(0, |i| i + 1)).collect::<Vec<_>>())
    });
    let mut out: Vec<FreeVector> = Vec::new();
    let mut seen: HashSet<FreeVector> = HashSet::new();
    for t in tuples {
        if t.iter().all(|c| c.is_none()) {
            continue;
        }
        let comps: Vec<Poly> = t.iter().map(|c| c.map_or_else(|| Poly::zero(ring), |i| pool[i].clone())).collect();
        let v = normalize(FreeVector::new(ring, comps).expect("same ring"));
        if seen.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

/// Scales by a unit so the first nonzero component is canonical.
fn normalize(v: FreeVector) -> FreeVector {
    let Some((_, first)) = v.entries().into_iter().next() else {
        return v;
    };
    let (unit, _) = first.canonical_associate();
    match unit.unit_inverse() {
        Some(inv) => v.scale(&inv),
        None => v,
    }
}

pub fn sample_lattice(m: &FPModule, bounds: &FiltrationBounds) -> Result<AnnihilatorSample> {
    let ring = m.ring();
    let g = m.generator_count();
    let mut entries = vec![SampleEntry {
        element: FreeVector::zero(ring, g),
        annihilator: Ideal::unit(ring),
        key: vec!["1".to_string()],
        principal: Some(Poly::one(ring)),
    }];
    for v in sample_elements(ring, g, bounds.degree, bounds.height) {
        let ann = element_annihilator(m, &v)?;
        entries.push(SampleEntry {
            key: ann.canonical_strings()?,
            principal: ann.principal_generator()?,
            element: v,
            annihilator: ann,
        });
    }
    Ok(AnnihilatorSample { module: m.clone(), entries, degree: bounds.degree, height: bounds.height })
}

/// `M / <gens>`.
pub fn quotient_presentation(m: &FPModule, gens: &[FreeVector]) -> Result<FPModule> {
    m.quotient_by(gens)
}

/// Why the chosen ideal counts as minimal at its stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Distinct in-lattice annihilators of the sampled candidates; none is
    /// strictly contained in the chosen one.
    Sampled { candidates: Vec<Vec<String>> },
    /// Generators `λ` still present when this summand was peeled; none
    /// generates a strictly smaller ideal.
    Divisibility { remaining: Vec<String> },
}

#[derive(Clone, Debug)]
pub struct FiltrationStep {
    /// `M_{i+1} = M_i + <element>`.
    pub element: FreeVector,
    /// Annihilator of the image of `element` in `M / M_i`.
    pub ideal: Ideal,
    pub key: Vec<String>,
    pub evidence: Evidence,
}

/// `0 = M_0 ⊊ M_1 ⊊ ... ⊊ M_k = M` with cyclic quotients.
#[derive(Clone, Debug)]
pub struct CyclicFiltration {
    pub module: FPModule,
    pub steps: Vec<FiltrationStep>,
}

impl CyclicFiltration {
    pub fn length(&self) -> usize {
        self.steps.len()
    }

    /// Generators of `M_i`.
    pub fn submodule_generators(&self, i: usize) -> Vec<FreeVector> {
        self.steps[..i].iter().map(|s| s.element.clone()).collect()
    }

    pub fn quotient_ideals(&self) -> Vec<&Ideal> {
        self.steps.iter().map(|s| &s.ideal).collect()
    }
}

fn ideal_from_key(ring: &Ring, key: &[String]) -> Result<Ideal> {
    let gens = key.iter().map(|s| parse_poly(ring, s)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

fn strictly_inside(a: &Ideal, b: &Ideal) -> Result<bool> {
    Ok(a.is_subset_of(b)? && !b.is_subset_of(a)?)
}

/// Checks the chain against the module and the lattice sample: each step
/// adds a nonzero element whose annihilator is as recorded and lies in the
/// sample, the chain ends at `M`, and every evidence record is consistent.
pub fn verify_filtration(f: &CyclicFiltration, lattice: &AnnihilatorSample) -> Result<Verification> {
    let m = &f.module;
    let ring = m.ring();
    if &lattice.module != m {
        return Ok(Verification::Invalid("lattice sample belongs to another module".into()));
    }
    for (i, step) in f.steps.iter().enumerate() {
        let q = m.quotient_by(&f.submodule_generators(i))?;
        if q.is_zero_element(&step.element)? {
            return Ok(Verification::Invalid(format!("step {} adds nothing", i + 1)));
        }
        let ann = element_annihilator(&q, &step.element)?;
        if ann.canonical_strings()? != step.key || !ann.equals(&step.ideal)? {
            return Ok(Verification::Invalid(format!("step {} annihilator differs from the record", i + 1)));
        }
        if !lattice.contains_key(&step.key) {
            return Ok(Verification::Invalid(format!("step {} ideal is outside the sampled lattice", i + 1)));
        }
        match &step.evidence {
            Evidence::Sampled { candidates } => {
                if !candidates.contains(&step.key) {
                    return Ok(Verification::Invalid(format!("step {} ideal missing from its candidates", i + 1)));
                }
                for c in candidates {
                    if strictly_inside(&ideal_from_key(ring, c)?, &step.ideal)? {
                        return Ok(Verification::Invalid(format!("step {} is not minimal", i + 1)));
                    }
                }
            }
            Evidence::Divisibility { remaining } => {
                for r in remaining {
                    if strictly_inside(&Ideal::principal(&parse_poly(ring, r)?), &step.ideal)? {
                        return Ok(Verification::Invalid(format!("step {} is not divisibility-maximal", i + 1)));
                    }
                }
            }
        }
    }
    if !m.quotient_by(&f.submodule_generators(f.length()))?.is_zero_module()? {
        return Ok(Verification::Invalid("chain does not reach the module".into()));
    }
    Ok(Verification::Valid)
}

/// The chain built from `M = ⊕ R/(λ_i)` by repeatedly peeling a summand whose
/// ideal is minimal among those left; incomparable choices go to the
/// canonically first generator.
pub fn filtration_from_decomposition(ring: &Ring, lambdas: &[Poly]) -> Result<CyclicFiltration> {
    if lambdas.is_empty() {
        return Err(Error::usage("at least one diagonal entry is required"));
    }
    for l in lambdas {
        ring.check_same(l.ring())?;
        if l.is_zero() {
            return Err(Error::usage("diagonal entries must be nonzero"));
        }
    }
    let n = lambdas.len();
    let module = FPModule::from_matrix(&RingMatrix::diagonal(ring, lambdas));
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut peeled: Vec<(usize, Vec<String>)> = Vec::new();
    while !remaining.is_empty() {
        let mut best: Option<usize> = None;
        for &j in &remaining {
            let mut minimal = true;
            for &k in &remaining {
                if k != j && lambdas[j].divides(&lambdas[k])? && !lambdas[k].divides(&lambdas[j])? {
                    minimal = false;
                    break;
                }
            }
            if minimal && best.is_none_or(|b| lambdas[j].canonical().sort_key() < lambdas[b].canonical().sort_key()) {
                best = Some(j);
            }
        }
        let j = best.expect("a divisibility-maximal entry exists");
        let names = remaining.iter().map(|&k| lambdas[k].canonical().to_string()).collect();
        peeled.push((j, names));
        remaining.retain(|&k| k != j);
    }
    let mut steps = Vec::with_capacity(n);
    let mut gens: Vec<FreeVector> = Vec::new();
    for (j, names) in peeled.into_iter().rev() {
        let e = FreeVector::unit(ring, n, j);
        let ann = element_annihilator(&module.quotient_by(&gens)?, &e)?;
        steps.push(FiltrationStep {
            key: ann.canonical_strings()?,
            ideal: ann,
            element: e.clone(),
            evidence: Evidence::Divisibility { remaining: names },
        });
        gens.push(e);
    }
    Ok(CyclicFiltration { module, steps })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RejectReason {
    /// A strictly smaller in-lattice annihilator was available at this stage.
    NotMinimal { smaller: Vec<String> },
    /// Every candidate of the next quotient has an annihilator outside the
    /// lattice.
    DeadEnd { outside: Vec<Vec<String>> },
}

/// A chain the search considered and discarded: `steps` is the prefix
/// explored, `completion` a greedy continuation to the full module (empty
/// when none was found).
#[derive(Clone, Debug)]
pub struct RejectedChain {
    pub steps: Vec<(FreeVector, Vec<String>)>,
    pub completion: Vec<(FreeVector, Vec<String>)>,
    pub reason: RejectReason,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(CyclicFiltration),
    /// No minimal chain among the sampled candidates; relative to the bounds.
    NoneWithinBounds,
}

#[derive(Clone, Debug)]
pub struct FiltrationSearch {
    pub outcome: SearchOutcome,
    pub lattice: AnnihilatorSample,
    pub rejected: Vec<RejectedChain>,
    pub bounds: FiltrationBounds,
    pub nodes: usize,
    /// The node budget ran out before the search space was exhausted.
    pub truncated: bool,
    pub reading: &'static str,
}

struct Candidate {
    element: FreeVector,
    ideal: Ideal,
    key: Vec<String>,
}

struct Search<'a> {
    module: &'a FPModule,
    lattice: &'a AnnihilatorSample,
    elements: Vec<FreeVector>,
    bounds: &'a FiltrationBounds,
    nodes: usize,
    truncated: bool,
    rejected: Vec<RejectedChain>,
}

impl Search<'_> {
    fn candidates(&self, gens: &[FreeVector]) -> Result<(FPModule, Vec<Candidate>, Vec<Vec<String>>)> {
        let q = self.module.quotient_by(gens)?;
        let mut viable = Vec::new();
        let mut outside: Vec<Vec<String>> = Vec::new();
        for e in &self.elements {
            if q.is_zero_element(e)? {
                continue;
            }
            let ideal = element_annihilator(&q, e)?;
            let key = ideal.canonical_strings()?;
            if self.lattice.contains_key(&key) {
                viable.push(Candidate { element: e.clone(), ideal, key });
            } else if !outside.contains(&key) {
                outside.push(key);
            }
        }
        Ok((q, viable, outside))
    }

    fn record(&mut self, chain: RejectedChain) {
        if self.rejected.len() < self.bounds.max_rejected {
            self.rejected.push(chain);
        }
    }

    /// Any in-lattice continuation to the full module, smallest ideals first.
    fn greedy_completion(&self, start: &[FreeVector]) -> Result<Vec<(FreeVector, Vec<String>)>> {
        let mut gens = start.to_vec();
        let mut out = Vec::new();
        for _ in 0..=self.module.generator_count() + 2 {
            let (q, viable, _) = self.candidates(&gens)?;
            if q.is_zero_module()? {
                return Ok(out);
            }
            let Some(c) = pick_minimal(&viable)?.into_iter().next() else {
                return Ok(Vec::new());
            };
            out.push((viable[c].element.clone(), viable[c].key.clone()));
            gens.push(viable[c].element.clone());
        }
        Ok(Vec::new())
    }

    fn dfs(&mut self, prefix: &mut Vec<FiltrationStep>) -> Result<bool> {
        if self.nodes >= self.bounds.max_nodes {
            self.truncated = true;
            return Ok(false);
        }
        self.nodes += 1;
        let gens: Vec<FreeVector> = prefix.iter().map(|s| s.element.clone()).collect();
        let (q, viable, outside) = self.candidates(&gens)?;
        if q.is_zero_module()? {
            return Ok(true);
        }
        let described = |p: &[FiltrationStep]| p.iter().map(|s| (s.element.clone(), s.key.clone())).collect::<Vec<_>>();
        if viable.is_empty() {
            self.record(RejectedChain {
                steps: described(prefix),
                completion: Vec::new(),
                reason: RejectReason::DeadEnd { outside },
            });
            return Ok(false);
        }
        let mut distinct: Vec<&Candidate> = Vec::new();
        for c in &viable {
            if !distinct.iter().any(|d| d.key == c.key) {
                distinct.push(c);
            }
        }
        let keys: Vec<Vec<String>> = distinct.iter().map(|c| c.key.clone()).collect();
        let minimal_idx = pick_minimal(&viable)?;
        let minimal_keys: Vec<Vec<String>> = minimal_idx.iter().map(|&i| viable[i].key.clone()).unique().collect();
        for d in &distinct {
            if minimal_keys.contains(&d.key) {
                continue;
            }
            let smaller = minimal_keys
                .iter()
                .find(|k| viable.iter().any(|c| &c.key == *k && strictly_inside(&c.ideal, &d.ideal).unwrap_or(false)))
                .cloned()
                .unwrap_or_default();
            let mut start = gens.clone();
            start.push(d.element.clone());
            let completion = self.greedy_completion(&start)?;
            let mut steps = described(prefix);
            steps.push((d.element.clone(), d.key.clone()));
            self.record(RejectedChain { steps, completion, reason: RejectReason::NotMinimal { smaller } });
        }
        let mut explored: Vec<FPModule> = Vec::new();
        for key in &minimal_keys {
            for c in viable.iter().filter(|c| &c.key == key) {
                let mut next = gens.clone();
                next.push(c.element.clone());
                let sub = self.module.quotient_by(&next)?;
                let mut duplicate = false;
                for e in &explored {
                    if e.relation_module().equals(sub.relation_module())? {
                        duplicate = true;
                        break;
                    }
                }
                if duplicate {
                    continue;
                }
                explored.push(sub);
                prefix.push(FiltrationStep {
                    element: c.element.clone(),
                    ideal: c.ideal.clone(),
                    key: c.key.clone(),
                    evidence: Evidence::Sampled { candidates: keys.clone() },
                });
                if self.dfs(prefix)? {
                    return Ok(true);
                }
                prefix.pop();
                if self.truncated {
                    return Ok(false);
                }
            }
        }
        Ok(false)
    }
}

/// Indices of candidates whose ideal is minimal under inclusion, ordered by
/// the canonical order of the ideal's generators, then by position.
fn pick_minimal(cands: &[Candidate]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, c) in cands.iter().enumerate() {
        let mut minimal = true;
        for d in cands {
            if d.key != c.key && strictly_inside(&d.ideal, &c.ideal)? {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(i);
        }
    }
    let order = |i: &usize| -> Vec<(u32, usize, String)> {
        cands[*i].ideal.groebner_basis().unwrap_or_default().iter().map(|p| p.sort_key()).collect()
    };
    out.sort_by_cached_key(|i| (order(i), *i));
    Ok(out)
}

/// Bounded search for a minimal cyclic filtration.
pub fn search_minimal_cyclic_filtration(m: &FPModule, bounds: &FiltrationBounds) -> Result<FiltrationSearch> {
    let lattice = sample_lattice(m, bounds)?;
    let mut search = Search {
        module: m,
        lattice: &lattice,
        elements: sample_elements(m.ring(), m.generator_count(), bounds.degree, bounds.height),
        bounds,
        nodes: 0,
        truncated: false,
        rejected: Vec::new(),
    };
    let mut prefix = Vec::new();
    let found = search.dfs(&mut prefix)?;
    let (nodes, truncated, rejected) = (search.nodes, search.truncated, search.rejected);
    let outcome = if found {
        let f = CyclicFiltration { module: m.clone(), steps: prefix };
        if let Verification::Invalid(why) = verify_filtration(&f, &lattice)? {
            return Err(Error::internal(format!("search produced an invalid filtration: {why}")));
        }
        SearchOutcome::Found(f)
    } else {
        SearchOutcome::NoneWithinBounds
    };
    Ok(FiltrationSearch {
        outcome,
        lattice,
        rejected,
        bounds: bounds.clone(),
        nodes,
        truncated,
        reading: MINIMALITY_READING,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::annihilator;

    fn p(r: &Ring, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    fn module(r: &Ring, rows: &[&[&str]]) -> FPModule {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        FPModule::from_matrix(&RingMatrix::parse(r, &rows).unwrap())
    }

    fn keys(s: &AnnihilatorSample) -> Vec<String> {
        s.ideals().iter().map(|(k, _)| k.join(",")).collect()
    }

    #[test]
    fn lattice_samples() {
        let z = Ring::integers();
        let s = sample_lattice(&module(&z, &[&["4"]]), &FiltrationBounds::default()).unwrap();
        assert_eq!(keys(&s), ["1", "4", "2"]);
        assert!(s.verify().unwrap());
        let s = sample_lattice(&module(&z, &[&["2", "0"], &["0", "3"]]), &FiltrationBounds::default()).unwrap();
        for k in ["2", "3", "6"] {
            assert!(keys(&s).contains(&k.to_string()));
        }
        let r = Ring::qxy();
        let s = sample_lattice(&module(&r, &[&["x", "y"], &["0", "x"]]), &FiltrationBounds::default()).unwrap();
        assert!(keys(&s).contains(&"x".to_string()));
        assert!(keys(&s).contains(&"x^2".to_string()));
    }

    #[test]
    fn quotients() {
        let r = Ring::qxy();
        let m = module(&r, &[&["x", "y"], &["0", "x"]]);
        let (q, _, _) = quotient_presentation(&m, &[FreeVector::unit(&r, 2, 0)]).unwrap().simplify().unwrap();
        assert_eq!(q.generator_count(), 1);
        assert!(annihilator(&q).unwrap().equals(&Ideal::principal(&p(&r, "x"))).unwrap());
        assert_eq!(quotient_presentation(&m, &[]).unwrap(), m);
        let all = [FreeVector::unit(&r, 2, 0), FreeVector::unit(&r, 2, 1)];
        assert!(quotient_presentation(&m, &all).unwrap().is_zero_module().unwrap());
    }

    #[test]
    fn decomposition_filtrations() {
        let z = Ring::integers();
        let f = filtration_from_decomposition(&z, &[p(&z, "2"), p(&z, "3")]).unwrap();
        assert_eq!(f.steps.iter().map(|s| s.key.join(",")).collect::<Vec<_>>(), ["3", "2"]);
        let lattice = sample_lattice(&f.module, &FiltrationBounds::default()).unwrap();
        assert!(verify_filtration(&f, &lattice).unwrap().is_valid());
        let r = Ring::qxy();
        let f = filtration_from_decomposition(&r, &[p(&r, "x"), p(&r, "x^2")]).unwrap();
        assert_eq!(f.steps.last().unwrap().key, ["x^2"]);
        let f = filtration_from_decomposition(&r, &[p(&r, "x")]).unwrap();
        assert_eq!(f.length(), 1);
    }

    #[test]
    fn minimal_search_examples() {
        let z = Ring::integers();
        let s = search_minimal_cyclic_filtration(&module(&z, &[&["4"]]), &FiltrationBounds::default()).unwrap();
        let SearchOutcome::Found(f) = &s.outcome else { panic!() };
        assert_eq!(f.length(), 1);
        assert_eq!(f.steps[0].key, ["4"]);
        assert!(s.rejected.iter().any(|c| c.steps.len() == 1 && c.steps[0].1 == ["2"] && c.completion.len() == 1));
        let s =
            search_minimal_cyclic_filtration(&module(&z, &[&["2", "0"], &["0", "3"]]), &FiltrationBounds::default())
                .unwrap();
        let SearchOutcome::Found(f) = &s.outcome else { panic!() };
        assert_eq!(f.length(), 1);
        assert_eq!(f.steps[0].key, ["6"]);
    }

    #[test]
    fn nilpotent_block_has_no_minimal_filtration() {
        let r = Ring::qxy();
        let s =
            search_minimal_cyclic_filtration(&module(&r, &[&["x", "y"], &["0", "x"]]), &FiltrationBounds::default())
                .unwrap();
        assert!(matches!(s.outcome, SearchOutcome::NoneWithinBounds));
        assert!(!s.truncated);
        let e1 = FreeVector::unit(&r, 2, 0);
        let e2 = FreeVector::unit(&r, 2, 1);
        // 0 ⊊ <e1> ⊊ M: quotients R/(x) twice, not minimal at the first step
        assert!(s.rejected.iter().any(|c| c.steps == [(e1.clone(), vec!["x".to_string()])]
            && c.completion.len() == 1
            && matches!(&c.reason, RejectReason::NotMinimal { smaller } if smaller == &["x^2"])));
        // 0 ⊊ <e2> ⊊ M: the quotient is the residue field, outside the lattice
        assert!(s.rejected.iter().any(|c| c.steps == [(e2.clone(), vec!["x^2".to_string()])]
            && matches!(&c.reason, RejectReason::DeadEnd { outside } if outside.contains(&vec!["y".to_string(), "x".to_string()]))));
    }

    #[test]
    fn stagewise_minimality_can_miss_decomposition_chains() {
        // e1 + e2 has the smallest annihilator (xy) but leaves the residue
        // field behind, while peeling the summands gives a valid chain
        let r = Ring::qxy();
        let m = module(&r, &[&["x", "0"], &["0", "y"]]);
        let s = search_minimal_cyclic_filtration(&m, &FiltrationBounds::default()).unwrap();
        assert!(matches!(s.outcome, SearchOutcome::NoneWithinBounds));
        assert!(!s.truncated);
        let f = filtration_from_decomposition(&r, &[p(&r, "x"), p(&r, "y")]).unwrap();
        assert!(verify_filtration(&f, &s.lattice).unwrap().is_valid());
    }
}
