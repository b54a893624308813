//! Independent oracles and seeded generators: the minors-gcd elementary
//! divisor formula, random unimodular scrambling and finite-quotient
//! specialization probes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homalg::FPModule;
use crate::linalg::{minors, smith_normal_form, ElementaryOp, EquivalenceCertificate, RingMatrix, Tracked};
use crate::rings::{Coeff, CoeffDomain, Monomial, MonomialOrder, Poly, Ring};

/// Invariant factors of an integer matrix from `d_k = D_k / D_{k-1}`, where
/// `D_k` is the gcd of the `k x k` minors. Trailing zeros mark rank
/// deficiency.
pub fn minors_gcd_snf_oracle(m: &RingMatrix) -> Result<Vec<BigInt>> {
    if m.ring().nvars() != 0 || m.ring().coeffs() != &CoeffDomain::Integers {
        return Err(Error::usage("the minors oracle works over Z only"));
    }
    let k_max = m.rows().min(m.cols());
    let mut prev = BigInt::one();
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let d = minors(m, k)?
            .iter()
            .map(|p| p.constant_value().map_or_else(BigInt::zero, |c| c.to_integer()))
            .fold(BigInt::zero(), |acc, v| acc.gcd(&v));
        if d.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), k_max - k + 1));
            break;
        }
        out.push(&d / &prev);
        prev = d;
    }
    Ok(out)
}

/// A replayable list of elementary operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrambleRecipe {
    pub seed: Option<u64>,
    pub ops: Vec<ElementaryOp>,
}

impl ScrambleRecipe {
    pub fn empty() -> ScrambleRecipe {
        ScrambleRecipe { seed: None, ops: Vec::new() }
    }

    /// `count` random additions (and occasional swaps) on an `n x n` matrix,
    /// with multipliers `c * m`, `|c| <= height`, `deg m <= degree`.
    pub fn random(ring: &Ring, n: usize, seed: u64, count: usize, degree: u32, height: i64) -> ScrambleRecipe {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ops = Vec::with_capacity(count);
        if n < 2 {
            return ScrambleRecipe { seed: Some(seed), ops };
        }
        for _ in 0..count {
            let target = rng.gen_range(0..n);
            let mut source = rng.gen_range(0..n - 1);
            if source >= target {
                source += 1;
            }
            let row = rng.gen_bool(0.5);
            if rng.gen_ratio(1, 8) {
                ops.push(if row {
                    ElementaryOp::SwapRows(target, source)
                } else {
                    ElementaryOp::SwapCols(target, source)
                });
                continue;
            }
            let factor = random_multiplier(ring, &mut rng, degree, height);
            ops.push(if row {
                ElementaryOp::AddRow { target, source, factor }
            } else {
                ElementaryOp::AddCol { target, source, factor }
            });
        }
        ScrambleRecipe { seed: Some(seed), ops }
    }
}

fn random_multiplier(ring: &Ring, rng: &mut ChaCha8Rng, degree: u32, height: i64) -> Poly {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-height.max(1)..=height.max(1));
    }
    let mut exps = vec![0u32; ring.nvars()];
    let mut budget = rng.gen_range(0..=degree);
    while budget > 0 && !exps.is_empty() {
        let i = rng.gen_range(0..exps.len());
        exps[i] += 1;
        budget -= 1;
    }
    Poly::monomial(ring, Monomial::new(exps), ring.coeffs().from_int(c))
}

/// Applies the recipe to `d`, returning the certificate `P d Q = scrambled`.
pub fn scramble(d: &RingMatrix, recipe: &ScrambleRecipe) -> Result<EquivalenceCertificate> {
    let mut t = Tracked::new(d);
    for op in &recipe.ops {
        t.apply(op.clone())?;
    }
    t.into_certificate().checked()
}

/// Base change to a ring where modules are classified by Smith forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Probe {
    /// `Z`-type coefficients: substitute integers for every variable and
    /// optionally reduce modulo `p^e`.
    IntegerPoint { values: Vec<i64>, modulus: Option<(u64, u32)> },
    /// Field coefficients: substitute values for every variable except
    /// `keep`, which becomes the variable of a univariate ring; with `keep`
    /// absent the result is a finite-dimensional vector space.
    FieldLine { keep: Option<usize>, values: Vec<i64> },
}

impl fmt::Display for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probe::IntegerPoint { values, modulus } => {
                write!(f, "point {values:?}")?;
                if let Some((p, e)) = modulus {
                    write!(f, " mod {p}^{e}")?;
                }
                Ok(())
            }
            Probe::FieldLine { keep: Some(k), values } => write!(f, "line through var {k}, others {values:?}"),
            Probe::FieldLine { keep: None, values } => write!(f, "point {values:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProbeOutcome {
    /// The specialized modules have different invariant factors.
    Distinguished {
        probe: Probe,
        left: Vec<String>,
        right: Vec<String>,
    },
    Indistinguishable,
}

/// The default probe pool: values in `{0, 1, -1}` for each variable, and
/// for integer coefficients the moduli `p^e` with `p in {2, 3, 5}`, `e <= 2`.
pub fn default_probes(ring: &Ring) -> Vec<Probe> {
    let n = ring.nvars();
    let mut points: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        points = points
            .into_iter()
            .flat_map(|p| {
                [0i64, 1, -1].into_iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
        if points.len() > 81 {
            points.truncate(81);
        }
    }
    let mut out = Vec::new();
    match ring.coeffs() {
        CoeffDomain::Integers => {
            for p in &points {
                out.push(Probe::IntegerPoint { values: p.clone(), modulus: None });
                for prime in [2u64, 3, 5] {
                    for e in 1..=2 {
                        out.push(Probe::IntegerPoint { values: p.clone(), modulus: Some((prime, e)) });
                    }
                }
            }
        }
        _ => {
            for keep in 0..n {
                for p in &points {
                    if p[keep] == 0 {
                        out.push(Probe::FieldLine { keep: Some(keep), values: p.clone() });
                    }
                }
            }
            for p in &points {
                out.push(Probe::FieldLine { keep: None, values: p.clone() });
            }
        }
    }
    out.dedup();
    out
}

/// Canonical invariant factors (units dropped) of the specialized module.
pub fn specialized_invariants(m: &FPModule, probe: &Probe) -> Result<Vec<String>> {
    let ring = m.ring();
    let (target, keep, values, modulus) = match probe {
        Probe::IntegerPoint { values, modulus } => {
            if ring.coeffs() != &CoeffDomain::Integers {
                return Err(Error::usage("integer probes need integer coefficients"));
            }
            (Ring::integers(), None, values, *modulus)
        }
        Probe::FieldLine { keep, values } => {
            if !ring.coeffs().is_field() {
                return Err(Error::usage("line probes need field coefficients"));
            }
            let vars: &[&str] = if keep.is_some() { &["t"] } else { &[] };
            (Ring::polynomial(ring.coeffs().clone(), vars, MonomialOrder::Lex)?, *keep, values, None)
        }
    };
    if values.len() != ring.nvars() || keep.is_some_and(|k| k >= ring.nvars()) {
        return Err(Error::usage(format!("probe {probe} does not match {ring}")));
    }
    let g = m.generator_count();
    let mut cols: Vec<Vec<Poly>> = m
        .relations()
        .columns()
        .iter()
        .map(|c| c.iter().map(|p| specialize(p, &target, keep, values)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    if let Some((p, e)) = modulus {
        if CoeffDomain::prime_field(p).is_err() {
            return Err(Error::usage(format!("{p} is not prime")));
        }
        let pe = Poly::constant(&target, Coeff::from_integer(BigInt::from(p).pow(e)));
        for i in 0..g {
            let mut c = vec![Poly::zero(&target); g];
            c[i] = pe.clone();
            cols.push(c);
        }
    }
    if g == 0 {
        return Ok(Vec::new());
    }
    let a = RingMatrix::from_columns(&target, g, &cols)?;
    let snf = smith_normal_form(&a)?;
    let mut inv: Vec<String> =
        snf.invariant_factors.iter().filter(|d| !d.is_unit()).map(|d| d.canonical().to_string()).collect();
    let zeros = g.saturating_sub(snf.invariant_factors.len());
    inv.extend(std::iter::repeat_n("0".to_string(), zeros));
    Ok(inv)
}

fn specialize(p: &Poly, target: &Ring, keep: Option<usize>, values: &[i64]) -> Result<Poly> {
    let dom = p.ring().coeffs();
    let mut raw = Vec::with_capacity(p.terms().len());
    for t in p.terms() {
        let mut c: Coeff = t.coeff.clone();
        let mut t_exp = 0;
        for (i, &e) in t.mono.exps().iter().enumerate() {
            if Some(i) == keep {
                t_exp = e;
            } else {
                c = dom.mul(&c, &dom.from_bigint(BigInt::from(values[i]).pow(e)));
            }
        }
        let mono = Monomial::new(if keep.is_some() { vec![t_exp] } else { Vec::new() });
        raw.push((mono, c));
    }
    Poly::from_terms(target, raw)
}

/// Compares the specialized modules under each probe; a difference refutes
/// isomorphism over the original ring.
pub fn specialization_oracle(m: &FPModule, n: &FPModule, probes: &[Probe]) -> Result<ProbeOutcome> {
    m.ring().check_same(n.ring())?;
    for probe in probes {
        let left = specialized_invariants(m, probe)?;
        let right = specialized_invariants(n, probe)?;
        if left != right {
            return Ok(ProbeOutcome::Distinguished { probe: probe.clone(), left, right });
        }
    }
    Ok(ProbeOutcome::Indistinguishable)
}
