//! Buchberger's algorithm on dense module elements under a position-over-term
//! order (lower position index is larger). Over `Z`-type coefficients the
//! basis is a strong Gröbner basis: S-polynomials are complemented by
//! gcd-polynomials and leading coefficients are reduced by Euclidean division.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rings::{Coeff, CoeffDomain, Monomial, Poly, Ring, Term};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

static BUDGET_OVERRIDE: AtomicU64 = AtomicU64::new(0);

/// Overrides the per-computation reduction budget; `None` restores the
/// default (or the `DIAGCERT_BUDGET` environment variable when set).
pub fn set_step_budget(limit: Option<u64>) {
    BUDGET_OVERRIDE.store(limit.unwrap_or(0), AtomicOrdering::SeqCst);
}

pub fn step_budget() -> u64 {
    match BUDGET_OVERRIDE.load(AtomicOrdering::SeqCst) {
        0 => std::env::var("DIAGCERT_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|&n| n > 0)
            .unwrap_or(DEFAULT_STEP_BUDGET),
        n => n,
    }
}

pub(crate) struct Counter {
    used: u64,
    limit: u64,
}

impl Counter {
    pub(crate) fn new() -> Counter {
        Counter { used: 0, limit: step_budget() }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::Budget(format!("more than {} reduction steps", self.limit)));
        }
        Ok(())
    }
}

pub(crate) type Vector = Vec<Poly>;

pub(crate) fn lead(v: &[Poly]) -> Option<(usize, &Term)> {
    v.iter().enumerate().find(|(_, p)| !p.is_zero()).map(|(i, p)| (i, p.leading_term().expect("nonzero")))
}

/// Compares leading positions/monomials: `Greater` means `a` is larger.
pub(crate) fn cmp_lead(ring: &Ring, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| ring.cmp_mono(a.1, b.1))
}

#[derive(Clone)]
struct Elem {
    v: Vector,
    pos: usize,
    lm: Monomial,
    lc: Coeff,
}

impl Elem {
    fn new(v: Vector) -> Option<Elem> {
        let (pos, t) = lead(&v)?;
        let (lm, lc) = (t.mono.clone(), t.coeff.clone());
        Some(Elem { v, pos, lm, lc })
    }
}

fn sub_multiple(v: &mut Vector, g: &Vector, m: &Monomial, c: &Coeff) {
    for (a, b) in v.iter_mut().zip(g) {
        if !b.is_zero() {
            *a = &*a - &b.mul_term(m, c);
        }
    }
}

fn add_multiple(v: &mut Vector, g: &Vector, m: &Monomial, c: &Coeff) {
    for (a, b) in v.iter_mut().zip(g) {
        if !b.is_zero() {
            *a = &*a + &b.mul_term(m, c);
        }
    }
}

fn pop_lead_term(v: &mut Vector, pos: usize) -> Term {
    let ring = v[pos].ring().clone();
    let mut terms = std::mem::replace(&mut v[pos], Poly::zero(&ring)).into_terms();
    let head = terms.remove(0);
    v[pos] = Poly::from_ordered_terms(&ring, terms);
    head
}

fn head_ring(v: &Vector) -> Ring {
    v[0].ring().clone()
}

/// Reduces leading terms until the leading term is irreducible.
fn reduce_lead(dom: &CoeffDomain, mut v: Vector, basis: &[Elem], counter: &mut Counter) -> Result<Vector> {
    loop {
        let Some((pos, t)) = lead(&v) else {
            return Ok(v);
        };
        let (m, c) = (t.mono.clone(), t.coeff.clone());
        let divisors = || basis.iter().filter(|g| g.pos == pos && g.lm.divides(&m));
        let mut step: Option<(&Elem, Coeff)> = None;
        for g in divisors() {
            if let Some(q) = dom.div_exact(&c, &g.lc) {
                step = Some((g, q));
                break;
            }
        }
        if step.is_none() && !dom.is_field() {
            for g in divisors() {
                let (q, _) = dom.div_rem(&c, &g.lc);
                if !q.is_zero() {
                    step = Some((g, q));
                    break;
                }
            }
        }
        let Some((g, q)) = step else {
            return Ok(v);
        };
        counter.tick()?;
        let mq = g.lm.quotient_of(&m);
        sub_multiple(&mut v, &g.v, &mq, &q);
    }
}

/// Full normal form. Over `Z`-type coefficients each term is reduced by the
/// divisor with the smallest leading coefficient, which makes the remainder
/// canonical for a strong Gröbner basis.
fn full_nf(dom: &CoeffDomain, mut v: Vector, basis: &[Elem], counter: &mut Counter) -> Result<Vector> {
    let ring = head_ring(&v);
    let mut out: Vec<Vec<Term>> = vec![Vec::new(); v.len()];
    loop {
        let Some((pos, t)) = lead(&v) else {
            break;
        };
        let (m, c) = (t.mono.clone(), t.coeff.clone());
        let mut best: Option<&Elem> = None;
        for g in basis.iter().filter(|g| g.pos == pos && g.lm.divides(&m)) {
            if dom.is_field() {
                best = Some(g);
                break;
            }
            if best.is_none_or(|b| g.lc.abs() < b.lc.abs()) {
                best = Some(g);
            }
        }
        match best {
            Some(g) => {
                counter.tick()?;
                let mq = g.lm.quotient_of(&m);
                let (q, r) = if dom.is_field() {
                    (dom.div_exact(&c, &g.lc).expect("field division"), Coeff::zero())
                } else {
                    dom.div_rem(&c, &g.lc)
                };
                if !q.is_zero() {
                    sub_multiple(&mut v, &g.v, &mq, &q);
                }
                if !r.is_zero() {
                    out[pos].push(pop_lead_term(&mut v, pos));
                }
            }
            None => out[pos].push(pop_lead_term(&mut v, pos)),
        }
    }
    Ok(out.into_iter().map(|ts| Poly::from_ordered_terms(&ring, ts)).collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Gcd,
    S,
}

struct Pair {
    i: usize,
    j: usize,
    kind: Kind,
    lcm: Monomial,
}

pub(crate) struct Options {
    /// Only valid for ideals (rank one).
    pub product_criterion: bool,
}

/// Runs Buchberger's algorithm and returns a (strong) Gröbner basis of the
/// submodule generated by `gens`. All vectors must share one length.
pub(crate) fn buchberger(ring: &Ring, gens: Vec<Vector>, opts: Options, counter: &mut Counter) -> Result<Vec<Vector>> {
    let dom = ring.coeffs().clone();
    let field = dom.is_field();
    let mut basis: Vec<Elem> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_s: HashSet<(usize, usize)> = HashSet::new();

    let insert =
        |v: Vector, basis: &mut Vec<Elem>, pending: &mut Vec<Pair>, pending_s: &mut HashSet<(usize, usize)>| {
            let Some(mut e) = Elem::new(v) else { return };
            let norm = if field {
                dom.inv(&e.lc).expect("nonzero field element")
            } else if e.lc.is_negative() {
                -Coeff::one()
            } else {
                Coeff::one()
            };
            if !norm.is_one() {
                let one = Monomial::one(ring.nvars());
                e.v = e.v.iter().map(|p| p.mul_term(&one, &norm)).collect();
                e = Elem::new(e.v).expect("nonzero");
            }
            let j = basis.len();
            for (i, g) in basis.iter().enumerate() {
                if g.pos != e.pos {
                    continue;
                }
                let lcm = g.lm.lcm(&e.lm);
                pending.push(Pair { i, j, kind: Kind::S, lcm: lcm.clone() });
                pending_s.insert((i, j));
                if !field && dom.div_exact(&e.lc, &g.lc).is_none() && dom.div_exact(&g.lc, &e.lc).is_none() {
                    pending.push(Pair { i, j, kind: Kind::Gcd, lcm });
                }
            }
            basis.push(e);
        };

    for g in gens {
        let r = reduce_lead(&dom, g, &basis, counter)?;
        insert(r, &mut basis, &mut pending, &mut pending_s);
    }
    while !pending.is_empty() {
        let idx = (0..pending.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pending[a], &pending[b]);
                p.lcm
                    .degree()
                    .cmp(&q.lcm.degree())
                    .then_with(|| ring.cmp_mono(&p.lcm, &q.lcm))
                    .then_with(|| p.kind.cmp(&q.kind))
                    .then_with(|| p.j.cmp(&q.j))
                    .then_with(|| p.i.cmp(&q.i))
            })
            .expect("nonempty");
        let pair = pending.swap_remove(idx);
        counter.tick()?;
        let (gi, gj) = (&basis[pair.i], &basis[pair.j]);
        let s = match pair.kind {
            Kind::S => {
                pending_s.remove(&(pair.i, pair.j));
                if field && opts.product_criterion && gi.lm.coprime(&gj.lm) {
                    continue;
                }
                if field {
                    let chain = basis.iter().enumerate().any(|(k, gk)| {
                        k != pair.i
                            && k != pair.j
                            && gk.pos == gi.pos
                            && gk.lm.divides(&pair.lcm)
                            && !pending_s.contains(&(pair.i.min(k), pair.i.max(k)))
                            && !pending_s.contains(&(pair.j.min(k), pair.j.max(k)))
                    });
                    if chain {
                        continue;
                    }
                }
                let (ci, cj) = if field {
                    (dom.inv(&gi.lc).expect("unit"), dom.inv(&gj.lc).expect("unit"))
                } else {
                    let g = dom.gcd(&gi.lc, &gj.lc);
                    let l = (&gi.lc * &gj.lc / g).abs();
                    (&l / &gi.lc, &l / &gj.lc)
                };
                let mut s: Vector = gi.v.iter().map(|p| p.mul_term(&gi.lm.quotient_of(&pair.lcm), &ci)).collect();
                sub_multiple(&mut s, &gj.v, &gj.lm.quotient_of(&pair.lcm), &cj);
                s
            }
            Kind::Gcd => {
                let (_, u, w) = dom.ext_gcd(&gi.lc, &gj.lc);
                let mut s: Vector = gi.v.iter().map(|p| p.mul_term(&gi.lm.quotient_of(&pair.lcm), &u)).collect();
                add_multiple(&mut s, &gj.v, &gj.lm.quotient_of(&pair.lcm), &w);
                s
            }
        };
        let r = reduce_lead(&dom, s, &basis, counter)?;
        insert(r, &mut basis, &mut pending, &mut pending_s);
    }
    Ok(basis.into_iter().map(|e| e.v).collect())
}

/// Minimal, tail-reduced, normalized and sorted basis: the reduced Gröbner
/// basis, unique for a fixed order.
pub(crate) fn reduce_basis(ring: &Ring, basis: Vec<Vector>, counter: &mut Counter) -> Result<Vec<Vector>> {
    let dom = ring.coeffs().clone();
    let elems: Vec<Elem> = basis.into_iter().filter_map(Elem::new).collect();
    let strongly_divides =
        |a: &Elem, b: &Elem| a.pos == b.pos && a.lm.divides(&b.lm) && dom.div_exact(&b.lc, &a.lc).is_some();
    let keep: Vec<Elem> = elems
        .iter()
        .enumerate()
        .filter(|(i, e)| {
            !elems
                .iter()
                .enumerate()
                .any(|(j, f)| j != *i && strongly_divides(f, e) && (!strongly_divides(e, f) || j < *i))
        })
        .map(|(_, e)| e.clone())
        .collect();
    let mut out = Vec::with_capacity(keep.len());
    for e in &keep {
        let mut tail = e.v.clone();
        let head = pop_lead_term(&mut tail, e.pos);
        let mut r = full_nf(&dom, tail, &keep, counter)?;
        r[e.pos] = &r[e.pos] + &Poly::from_ordered_terms(ring, vec![head]);
        out.push(r);
    }
    out.sort_by(|a, b| {
        let (pa, ta) = lead(a).expect("nonzero");
        let (pb, tb) = lead(b).expect("nonzero");
        cmp_lead(ring, (pa, &ta.mono), (pb, &tb.mono)).then_with(|| ta.coeff.cmp(&tb.coeff))
    });
    Ok(out)
}

/// Normal form against a Gröbner basis produced by [`buchberger`].
pub(crate) fn normal_form(ring: &Ring, basis: &[Vector], v: Vector, counter: &mut Counter) -> Result<Vector> {
    let elems: Vec<Elem> = basis.iter().cloned().filter_map(Elem::new).collect();
    full_nf(ring.coeffs(), v, &elems, counter)
}

/// Reduces leading terms in positions below `stop` only; with an augmented
/// basis the remainder's lower block carries the membership witness.
pub(crate) fn reduce_top(
    ring: &Ring,
    basis: &[Vector],
    v: Vector,
    stop: usize,
    counter: &mut Counter,
) -> Result<Vector> {
    let elems: Vec<Elem> = basis.iter().cloned().filter_map(Elem::new).filter(|e| e.pos < stop).collect();
    reduce_lead(ring.coeffs(), v, &elems, counter)
}
