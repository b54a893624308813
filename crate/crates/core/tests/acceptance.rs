//! Acceptance suite: one PASS/FAIL line per criterion, with timings. Runs
//! without the libtest harness so the lines are always printed.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use diagcert::diagonalizer::{
    analyze, diagonalize, transpose_certificate_from_diagonal, AnalyzeBounds, DiagBounds, Diagonalization,
    FindingStatus,
};
use diagcert::filtration::{
    filtration_from_decomposition, sample_lattice, search_minimal_cyclic_filtration, verify_filtration,
    FiltrationBounds, RejectReason, SearchOutcome,
};
use diagcert::groebner::{FreeVector, Ideal};
use diagcert::homalg::{
    annihilator, ext, find_injective_hom, grade, hom_dual_sequence, is_isomorphic, is_quasi_gorenstein, split_test,
    FPModule, GradeValue, IsoBounds, IsoResult, IsoWitness, Obstruction, QgResult, QgWitness, SplitVerdict,
};
use diagcert::json::{parse_input, Input};
use diagcert::linalg::{
    fitting_ideal, smith_normal_form, verify_certificate, ElementaryOp, EquivalenceCertificate, RingMatrix,
};
use diagcert::rings::{parse_poly, Poly, Ring};
use diagcert::testkit::{
    default_probes, minors_gcd_snf_oracle, scramble, specialization_oracle, ProbeOutcome, ScrambleRecipe,
};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Every verdict produced by the suite, re-checked as it is recorded.
#[derive(Default)]
struct Soundness {
    certificates: usize,
    obstructions: usize,
    isomorphisms: usize,
    failures: Vec<String>,
}

impl Soundness {
    fn certificate(&mut self, what: &str, c: &EquivalenceCertificate) {
        self.certificates += 1;
        if !verify_certificate(c).is_valid() {
            self.failures.push(format!("{what}: certificate rejected"));
        }
    }

    fn obstruction(&mut self, what: &str, o: &Obstruction, m: &FPModule, n: &FPModule) {
        self.obstructions += 1;
        if !o.verify(m, n).unwrap_or(false) {
            self.failures.push(format!("{what}: obstruction does not re-verify"));
        }
    }

    fn record(&mut self, what: &str, m: &RingMatrix, r: &diagcert::diagonalizer::ObstructionRecord) {
        self.obstructions += 1;
        if !r.verify(m).unwrap_or(false) {
            self.failures.push(format!("{what}: obstruction record does not re-verify"));
        }
    }

    fn isomorphism(&mut self, what: &str, w: &IsoWitness, m: &FPModule, n: &FPModule) {
        self.isomorphisms += 1;
        if !w.verify().unwrap_or(false) {
            self.failures.push(format!("{what}: isomorphism witness rejected"));
        }
        match specialization_oracle(m, n, &default_probes(m.ring())) {
            Ok(ProbeOutcome::Indistinguishable) => {}
            Ok(ProbeOutcome::Distinguished { probe, .. }) => {
                self.failures.push(format!("{what}: isomorphic modules distinguished under {probe}"))
            }
            Err(e) => self.failures.push(format!("{what}: probe failed: {e}")),
        }
    }

    fn diagonalization(&mut self, what: &str, m: &RingMatrix, d: &Diagonalization) {
        match d {
            Diagonalization::Yes(c) => {
                self.certificate(what, c);
                if !c.target.is_diagonal() {
                    self.failures.push(format!("{what}: certificate target is not diagonal"));
                }
            }
            Diagonalization::No(r) => self.record(what, m, r),
            Diagonalization::Unknown { .. } => {}
        }
    }

    fn qg(&mut self, what: &str, m: &RingMatrix, r: &QgResult) {
        let a = FPModule::from_matrix(m);
        let b = FPModule::from_matrix(&m.transpose());
        match r {
            QgResult::Yes { witness: QgWitness::Equivalence(c), .. } => self.certificate(what, c),
            QgResult::Yes { witness: QgWitness::Isomorphism(w), .. } => self.isomorphism(what, w, &a, &b),
            QgResult::No(o) => self.obstruction(what, o, &a, &b),
            QgResult::Unknown { .. } => {}
        }
    }

    fn iso(&mut self, what: &str, r: &IsoResult, m: &FPModule, n: &FPModule) {
        match r {
            IsoResult::Yes(w) => self.isomorphism(what, w, m, n),
            IsoResult::No(o) => self.obstruction(what, o, m, n),
            IsoResult::Unknown { .. } => {}
        }
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn fixture(name: &str) -> Input {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|err| panic!("{}: {err}", path.display()));
    parse_input(&text).unwrap_or_else(|err| panic!("{}: {err}", path.display()))
}

fn fixture_matrix(name: &str) -> RingMatrix {
    match fixture(name) {
        Input::Matrix(m) => m,
        _ => panic!("{name} is not a matrix"),
    }
}

fn p(r: &Ring, s: &str) -> Poly {
    parse_poly(r, s).unwrap()
}

fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| p(r, g)).collect()).unwrap()
}

fn snf_oracle_agreement(s: &mut Soundness) -> Outcome {
    let z = Ring::integers();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..500 {
        let (rows, cols) = (rng.gen_range(2..=4), rng.gen_range(2..=4));
        let grid: Vec<Vec<Poly>> =
            (0..rows).map(|_| (0..cols).map(|_| Poly::from_int(&z, rng.gen_range(-20..=20))).collect()).collect();
        let m = e(RingMatrix::new(&z, grid))?;
        let snf = e(smith_normal_form(&m))?;
        s.certificate(&format!("snf case {case}"), &snf.certificate);
        let oracle = e(minors_gcd_snf_oracle(&m))?;
        let got: Vec<_> = snf.invariant_factors.iter().map(|d| d.constant_value().map(|c| c.to_integer())).collect();
        for (i, (g, o)) in got.iter().zip(&oracle).enumerate() {
            let g = g.clone().unwrap_or_default();
            ensure(g.abs() == o.abs(), format!("case {case}: d_{} = {g}, oracle {o}", i + 1))?;
        }
        for w in snf.invariant_factors.windows(2) {
            ensure(e(w[0].divides(&w[1]))?, format!("case {case}: divisibility chain broken"))?;
        }
    }
    Ok("500 matrices agree with the minors-gcd oracle".into())
}

fn nilpotent_block_fixture(s: &mut Soundness) -> Outcome {
    let m = fixture_matrix("qxy_nilpotent_block.json");
    let r = m.ring().clone();
    let module = FPModule::from_matrix(&m);
    ensure(e(e(annihilator(&module))?.equals(&ideal(&r, &["x^2"])))?, "annihilator is not (x^2)")?;

    let qg = e(is_quasi_gorenstein(&m, &IsoBounds::default()))?;
    s.qg("nilpotent block qg", &m, &qg);
    let QgResult::Yes { witness: QgWitness::Equivalence(c), .. } = &qg else {
        return Err(format!("quasi-Gorenstein verdict {qg:?}"));
    };
    ensure(
        c.transcript.iter().all(|op| matches!(op, ElementaryOp::SwapRows(..) | ElementaryOp::SwapCols(..))),
        "qg certificate is not a permutation certificate",
    )?;
    ensure(verify_certificate(c).is_valid() && c.target == m.transpose(), "permutation certificate rejected")?;

    let d = e(diagonalize(&m, &DiagBounds::default()))?;
    s.diagonalization("nilpotent block diagonalize", &m, &d);
    let Diagonalization::No(rec) = &d else { return Err(format!("diagonalize gave {d:?}")) };
    ensure(rec.det.to_string() == "x^2" && rec.factorization.complete, "determinant record")?;
    let cands: Vec<(Vec<String>, usize, Vec<String>, Vec<String>)> = rec
        .candidates
        .iter()
        .map(|c| {
            (
                c.entries.iter().map(|e| e.to_string()).collect(),
                c.index,
                c.matrix_ideal.clone(),
                c.candidate_ideal.clone(),
            )
        })
        .collect();
    let xy = vec!["y".to_string(), "x".to_string()];
    let expect = vec![
        (vec!["1".to_string(), "x^2".to_string()], 1, xy.clone(), vec!["1".to_string()]),
        (vec!["x".to_string(), "x".to_string()], 1, xy, vec!["x".to_string()]),
    ];
    ensure(cands == expect, format!("candidates {cands:?}"))?;

    let search = e(search_minimal_cyclic_filtration(&module, &FiltrationBounds::default()))?;
    ensure(matches!(search.outcome, SearchOutcome::NoneWithinBounds), "filtration search found a chain")?;
    let e1 = FreeVector::unit(&r, 2, 0);
    let e2 = FreeVector::unit(&r, 2, 1);
    let first = search.rejected.iter().any(|c| {
        c.steps == [(e1.clone(), vec!["x".to_string()])]
            && c.completion.len() == 1
            && c.completion[0].1 == ["x"]
            && matches!(&c.reason, RejectReason::NotMinimal { .. })
    });
    let second = search.rejected.iter().any(|c| {
        c.steps == [(e2.clone(), vec!["x^2".to_string()])]
            && matches!(&c.reason, RejectReason::DeadEnd { outside } if outside.contains(&vec!["y".to_string(), "x".to_string()]))
    });
    ensure(first, "chain <e1> with quotient R/(x) not among rejected candidates")?;
    ensure(second, "chain <e2> with residue-field quotient not among rejected candidates")?;
    Ok("Ann = (x^2); qg Yes by permutation; diagonalize No over 2 candidates; both displayed chains rejected".into())
}

fn integer_polynomial_fixture(s: &mut Soundness) -> Outcome {
    let Input::Certificate(hand) = fixture("zx_upper_triangular_certificate.json") else {
        return Err("certificate fixture is not a certificate".into());
    };
    let m = fixture_matrix("zx_upper_triangular.json");
    ensure(hand.source == m, "certificate fixture has a different source")?;
    let verdict = verify_certificate(&hand);
    s.certificate("hand transcript", &hand);
    ensure(e(hand.replay())?, "hand transcript does not replay")?;
    let target: Vec<String> = hand.target.diagonal_entries().iter().map(|p| p.to_string()).collect();
    let rep = e(analyze(&m, &AnalyzeBounds::default()))?;
    if let Some(d) = &rep.diagonal {
        s.diagonalization("integer polynomial analyze", &m, d);
    }
    if let Some(q) = &rep.qg {
        s.qg("integer polynomial qg", &m, q);
    }
    if let Some(t) = &rep.transpose_certificate {
        s.certificate("integer polynomial transpose", t);
    }
    ensure(rep.findings.iter().all(|f| f.status != FindingStatus::Violated), "report has a violated implication")?;
    ensure(!rep.discrepancies.iter().any(|d| d.starts_with("conditions disagree")), "report conditions disagree")?;
    let diagonal = rep.diagonal.as_ref().is_some_and(|d| d.is_yes());
    let noted = rep.discrepancies.iter().any(|d| d.contains("not equivalent to a diagonal matrix"));
    ensure(diagonal == verdict.is_valid(), "analyze disagrees with the hand transcript")?;
    ensure(noted == diagonal, "discrepancy note missing or spurious")?;
    Ok(format!(
        "hand transcript {verdict:?} reaching diag({}); report consistent; discrepancy noted",
        target.join(", ")
    ))
}

fn scramble_round_trip(s: &mut Soundness) -> Outcome {
    let r = Ring::qxy();
    let irreducibles = ["x", "y", "x + 1", "y - 1", "x + y"];
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=3);
        let entries: Vec<Poly> = (0..n)
            .map(|_| {
                let k = rng.gen_range(1..=2);
                (0..k).fold(Poly::one(&r), |acc, _| acc * p(&r, irreducibles[rng.gen_range(0..5)]))
            })
            .collect();
        let d = RingMatrix::diagonal(&r, &entries);
        let ops = rng.gen_range(1..=6);
        let scrambled = e(scramble(&d, &ScrambleRecipe::random(&r, n, seed, ops, 1, 2)))?;
        s.certificate(&format!("scramble {seed}"), &scrambled);
        let m = scrambled.target;
        let res = e(diagonalize(&m, &DiagBounds::default()))?;
        s.diagonalization(&format!("scramble {seed}"), &m, &res);
        let Diagonalization::Yes(cert) = res else { return Err(format!("seed {seed}: no diagonal form found")) };
        for k in 0..=n {
            let same = e(e(fitting_ideal(&cert.target, k))?.equals(&e(fitting_ideal(&d, k))?))?;
            ensure(same, format!("seed {seed}: Fitting ideal {k} differs"))?;
        }
        let t = e(transpose_certificate_from_diagonal(&cert))?;
        s.certificate(&format!("scramble {seed} transpose"), &t);
        let lambdas: Vec<Poly> = cert.target.diagonal_entries().into_iter().filter(|x| !x.is_unit()).collect();
        let f = e(filtration_from_decomposition(&r, &lambdas))?;
        let lattice = e(sample_lattice(&f.module, &FiltrationBounds::default()))?;
        ensure(
            e(verify_filtration(&f, &lattice))?.is_valid(),
            format!("seed {seed}: decomposition filtration rejected"),
        )?;
    }
    Ok("100 scrambles recovered with matching Fitting ideals".into())
}

fn homological_fixtures(s: &mut Soundness) -> Outcome {
    let full_rank = [
        "zx_upper_triangular.json",
        "qxy_nilpotent_block.json",
        "z_cyclic4.json",
        "qxy_diagonal.json",
        "z_two_by_two.json",
    ];
    for name in full_rank {
        let m = fixture_matrix(name);
        let seq = e(hom_dual_sequence(&m))?;
        ensure(seq.hom_is_zero, format!("{name}: Hom(M, R) is not zero"))?;
        ensure(seq.ext1.relations() == &m.transpose(), format!("{name}: Ext^1 is not presented by the transpose"))?;
        let g = e(grade(&FPModule::from_matrix(&m), 2))?;
        ensure(g.value == GradeValue::Exactly(1), format!("{name}: grade {:?}", g.value))?;
    }
    let Input::Module(k) = fixture("qxy_koszul.json") else { return Err("Koszul fixture is not a module".into()) };
    let e2 = e(ext(&k, 2))?;
    let iso = e(is_isomorphic(&e2, &k, &IsoBounds::default()))?;
    s.iso("Koszul self-duality", &iso, &e2, &k);
    ensure(matches!(iso, IsoResult::Yes(_)), format!("Ext^2(R/(x,y)) vs R/(x,y): {iso:?}"))?;
    Ok("Hom = 0, Ext^1 = coker m^T, grade 1 on 5 fixtures; Ext^2 of R/(x,y) certified isomorphic".into())
}

fn submodule_embedding(s: &mut Soundness) -> Outcome {
    let m = FPModule::from_matrix(&fixture_matrix("qxy_nilpotent_block.json"));
    let r = m.ring().clone();
    let e1 = FreeVector::unit(&r, 2, 0);
    let (quotient, _, _) = e(e(m.quotient_by(std::slice::from_ref(&e1)))?.simplify())?;
    let cyclic = FPModule::cyclic(&p(&r, "x"));
    let iso = e(is_isomorphic(&quotient, &cyclic, &IsoBounds::default()))?;
    s.iso("M/M' vs R/(x)", &iso, &quotient, &cyclic);
    ensure(matches!(iso, IsoResult::Yes(_)), "M/M' is not R/(x)")?;
    let dual = e(ext(&quotient, 1))?;
    let iso = e(is_isomorphic(&dual, &cyclic, &IsoBounds::default()))?;
    s.iso("Ext^1(M/M') vs R/(x)", &iso, &dual, &cyclic);
    ensure(matches!(iso, IsoResult::Yes(_)), "Ext^1(M/M', R) is not R/(x)")?;
    let h = e(find_injective_hom(&dual, &m, &IsoBounds::default()))?.ok_or("no injective homomorphism found")?;
    ensure(e(h.is_well_defined())? && e(h.is_injective())?, "homomorphism is not an injective module map")?;
    let image = e(h.apply(&FreeVector::unit(&r, 1, 0)))?;
    let same = e(e(m.quotient_by(&[image]))?.relation_module().equals(e(m.quotient_by(&[e1]))?.relation_module()))?;
    ensure(same, "image is not <e1>")?;
    Ok("injective map Ext^1(M/M', R) = R/(x) -> M with image <e1> certified".into())
}

fn splitting(s: &mut Soundness) -> Outcome {
    let z = Ring::integers();
    let z4 = FPModule::cyclic(&p(&z, "4"));
    let two = e(FreeVector::new(&z, vec![p(&z, "2")]))?;
    let rep = e(split_test(&z4, &[two], &IsoBounds::default()))?;
    let direct = e(rep.submodule.direct_sum(&rep.quotient))?;
    match &rep.verdict {
        SplitVerdict::NotSplit(o @ Obstruction::Fitting { .. }) => s.obstruction("Z/4 split", o, &z4, &direct),
        other => return Err(format!("Z/4 split verdict {other:?}")),
    }
    let m = FPModule::from_matrix(&RingMatrix::diagonal(&z, &[p(&z, "2"), p(&z, "3")]));
    let rep = e(split_test(&m, &[FreeVector::unit(&z, 2, 0)], &IsoBounds::default()))?;
    let direct = e(rep.submodule.direct_sum(&rep.quotient))?;
    match &rep.verdict {
        SplitVerdict::Split(w) => s.isomorphism("R/(2) + R/(3) split", w, &m, &direct),
        other => return Err(format!("R/(2) + R/(3) split verdict {other:?}")),
    }
    let search = e(search_minimal_cyclic_filtration(&z4, &FiltrationBounds::default()))?;
    let SearchOutcome::Found(f) = &search.outcome else { return Err("Z/4 has no minimal filtration".into()) };
    ensure(f.length() == 1 && f.steps[0].key == ["4"], "Z/4 minimal filtration is not the length-1 chain")?;
    let lattice = e(sample_lattice(&z4, &FiltrationBounds::default()))?;
    ensure(e(verify_filtration(f, &lattice))?.is_valid(), "Z/4 filtration does not verify")?;
    ensure(
        search.rejected.iter().any(|c| c.steps.len() == 1 && c.steps[0].1 == ["2"]),
        "the chain through 2Z/4 is not among the rejected candidates",
    )?;
    Ok("Z/2 -> Z/4 -> Z/2 not split (Fitting); R/(2) + R/(3) split; Z/4 minimal chain has length 1".into())
}

fn soundness_sweep(s: &mut Soundness) -> Outcome {
    for name in ["zx_upper_triangular.json", "qxy_nilpotent_block.json", "qxy_diagonal.json", "z_cyclic4.json"] {
        let m = fixture_matrix(name);
        let d = e(diagonalize(&m, &DiagBounds::default()))?;
        s.diagonalization(name, &m, &d);
        let q = e(is_quasi_gorenstein(&m, &IsoBounds::default()))?;
        s.qg(name, &m, &q);
    }
    let r = Ring::qxy();
    let nil = FPModule::from_matrix(&fixture_matrix("qxy_nilpotent_block.json"));
    let xx = FPModule::from_matrix(&RingMatrix::diagonal(&r, &[p(&r, "x"), p(&r, "x")]));
    let x2 = FPModule::cyclic(&p(&r, "x^2"));
    for (what, a, b) in [("M vs R/x + R/x", &nil, &xx), ("M vs R/x^2", &nil, &x2), ("M vs M^T", &nil, &nil)] {
        let res = e(is_isomorphic(a, b, &IsoBounds::default()))?;
        s.iso(what, &res, a, b);
    }
    ensure(s.failures.is_empty(), s.failures.join("; "))?;
    ensure(s.certificates > 0 && s.obstructions > 0 && s.isomorphisms > 0, "sweep saw no verdicts")?;
    Ok(format!(
        "{} certificates, {} obstructions, {} isomorphisms re-verified; no probe contradicts an isomorphism",
        s.certificates, s.obstructions, s.isomorphisms
    ))
}

fn main() {
    let criteria: [(&str, Duration, fn(&mut Soundness) -> Outcome); 8] = [
        ("Smith form agrees with the minors oracle", Duration::from_secs(10), snf_oracle_agreement),
        ("nilpotent block over Q[x,y]", Duration::from_secs(5), nilpotent_block_fixture),
        ("upper triangular matrix over Z[x]", Duration::from_secs(60), integer_polynomial_fixture),
        ("scrambled diagonal round trip", Duration::from_secs(60), scramble_round_trip),
        ("Hom, Ext and grade fixtures", Duration::from_secs(60), homological_fixtures),
        ("submodule embedding via Ext", Duration::from_secs(60), submodule_embedding),
        ("splitting and Z/4 filtration", Duration::from_secs(60), splitting),
        ("soundness sweep", Duration::from_secs(60), soundness_sweep),
    ];
    let mut sound = Soundness::default();
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&mut sound)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > *limit => Err(format!("took {elapsed:.2?}, target {limit:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
