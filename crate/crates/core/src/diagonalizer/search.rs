use std::collections::HashSet;

use super::DiagBounds;
use crate::error::Result;
use crate::homalg::coefficient_pool;
use crate::linalg::{apply_elementary, smith_normal_form, ElementaryOp, EquivalenceCertificate, RingMatrix, Tracked};
use crate::rings::{CoeffDomain, Poly, Ring};

fn size(p: &Poly) -> u64 {
    if p.is_zero() {
        return 0;
    }
    let deg = p.total_degree().unwrap_or(0) as u64;
    let h = p.height().bits();
    1 + 4 * deg + h + 2 * (p.terms().len() as u64 - 1)
}

fn potential(m: &RingMatrix, t: usize) -> u64 {
    let n = m.rows();
    let mut s = 0;
    for i in t..n {
        for j in t..n {
            let e = m.get(i, j);
            s += size(e);
            if i != j && !e.is_zero() {
                s += 8;
            }
        }
    }
    s
}

fn minor_diagonal(m: &RingMatrix, t: usize) -> bool {
    let n = m.rows();
    (t..n).all(|i| (t..n).all(|j| i == j || m.get(i, j).is_zero()))
}

/// An entry of the trailing minor that is a unit, or failing that one that
/// divides every entry of its row and column.
fn pivot_candidate(m: &RingMatrix, t: usize) -> Result<Option<(usize, usize)>> {
    let n = m.rows();
    let mut units = Vec::new();
    let mut dividing: Vec<(u64, usize, usize)> = Vec::new();
    for i in t..n {
        for j in t..n {
            let e = m.get(i, j);
            if e.is_zero() {
                continue;
            }
            if e.is_unit() {
                units.push((i, j));
                continue;
            }
            let mut ok = true;
            for k in t..n {
                if (k != j && !e.divides(m.get(i, k))?) || (k != i && !e.divides(m.get(k, j))?) {
                    ok = false;
                    break;
                }
            }
            if ok {
                dividing.push((size(e), i, j));
            }
        }
    }
    if let Some(&u) = units.first() {
        return Ok(Some(u));
    }
    dividing.sort();
    Ok(dividing.first().map(|&(_, i, j)| (i, j)))
}

fn goal(m: &RingMatrix, t: usize) -> Result<bool> {
    Ok(minor_diagonal(m, t) || pivot_candidate(m, t)?.is_some())
}

/// Moves the pivot to `(t, t)`, normalizes a unit to 1 and clears its row
/// and column with exact quotients.
fn pivot_at(tr: &mut Tracked, t: usize, i: usize, j: usize) -> Result<()> {
    if i != t {
        tr.apply(ElementaryOp::SwapRows(t, i))?;
    }
    if j != t {
        tr.apply(ElementaryOp::SwapCols(t, j))?;
    }
    let p = tr.current().get(t, t).clone();
    if let Some(inv) = p.unit_inverse() {
        if !p.is_one() {
            tr.apply(ElementaryOp::ScaleRow { index: t, unit: inv })?;
        }
    }
    let n = tr.current().rows();
    for k in t + 1..n {
        let pivot = tr.current().get(t, t).clone();
        let e = tr.current().get(k, t).clone();
        if !e.is_zero() {
            let q = e.exact_div(&pivot)?.expect("pivot divides its column");
            tr.apply(ElementaryOp::AddRow { target: k, source: t, factor: -q })?;
        }
        let e = tr.current().get(t, k).clone();
        if !e.is_zero() {
            let q = e.exact_div(&pivot)?.expect("pivot divides its row");
            tr.apply(ElementaryOp::AddCol { target: k, source: t, factor: -q })?;
        }
    }
    Ok(())
}

fn lead_poly(p: &Poly) -> Option<Poly> {
    p.leading_term().map(|t| Poly::monomial(p.ring(), t.mono.clone(), t.coeff.clone()))
}

/// Multipliers that cancel a leading term or a whole entry of `a` against
/// the matching entry of `b`.
fn reduction_factors(a: &[Poly], b: &[Poly], t: usize, out: &mut Vec<Poly>) -> Result<()> {
    for c in t..a.len() {
        if a[c].is_zero() || b[c].is_zero() {
            continue;
        }
        if let Some(q) = a[c].exact_div(&b[c])? {
            out.push(-q);
        }
        if let (Some(la), Some(lb)) = (lead_poly(&a[c]), lead_poly(&b[c])) {
            if let Some(q) = la.exact_div(&lb)? {
                out.push(-q);
            }
        }
    }
    Ok(())
}

fn moves(m: &RingMatrix, t: usize, pool: &[Poly]) -> Result<Vec<ElementaryOp>> {
    let n = m.rows();
    let mut out = Vec::new();
    let rows = m.to_rows();
    let cols = m.columns();
    for a in t..n {
        for b in t..n {
            if a == b {
                continue;
            }
            let mut rf = Vec::new();
            reduction_factors(&rows[a], &rows[b], t, &mut rf)?;
            rf.extend(pool.iter().cloned());
            let mut seen = HashSet::new();
            for f in rf {
                if seen.insert(f.clone()) {
                    out.push(ElementaryOp::AddRow { target: a, source: b, factor: f });
                }
            }
            let mut cf = Vec::new();
            reduction_factors(&cols[a], &cols[b], t, &mut cf)?;
            cf.extend(pool.iter().cloned());
            let mut seen = HashSet::new();
            for f in cf {
                if seen.insert(f.clone()) {
                    out.push(ElementaryOp::AddCol { target: a, source: b, factor: f });
                }
            }
        }
    }
    Ok(out)
}

struct Dfs<'a> {
    t: usize,
    pool: &'a [Poly],
    budget: usize,
    visited: HashSet<Vec<Poly>>,
}

impl Dfs<'_> {
    fn run(&mut self, m: &RingMatrix, limit: usize, path: &mut Vec<ElementaryOp>) -> Result<bool> {
        let mut children = Vec::new();
        for op in moves(m, self.t, self.pool)? {
            if self.budget == 0 {
                return Ok(false);
            }
            self.budget -= 1;
            let c = apply_elementary(m, &op)?;
            if goal(&c, self.t)? {
                path.push(op);
                return Ok(true);
            }
            children.push((potential(&c, self.t), op, c));
        }
        if limit <= 1 {
            return Ok(false);
        }
        children.sort_by_key(|c| c.0);
        for (_, op, c) in children {
            if !self.visited.insert(c.entries().to_vec()) {
                continue;
            }
            path.push(op);
            if self.run(&c, limit - 1, path)? {
                return Ok(true);
            }
            path.pop();
            if self.budget == 0 {
                return Ok(false);
            }
        }
        Ok(false)
    }
}

/// Iterative deepening over operation sequences on the trailing minor until
/// a pivot appears or the minor is diagonal.
fn deepen(
    m: &RingMatrix,
    t: usize,
    pool: &[Poly],
    depth: usize,
    budget: &mut usize,
) -> Result<Option<Vec<ElementaryOp>>> {
    for limit in 1..=depth {
        let mut dfs = Dfs { t, pool, budget: *budget, visited: HashSet::new() };
        dfs.visited.insert(m.entries().to_vec());
        let mut path = Vec::new();
        let found = dfs.run(m, limit, &mut path)?;
        *budget = dfs.budget;
        if found {
            return Ok(Some(path));
        }
        if *budget == 0 {
            break;
        }
    }
    Ok(None)
}

/// Over integer coefficients, replaces a block of constant diagonal entries
/// by its Smith form using integer operations.
fn normalize_constants(tr: &mut Tracked) -> Result<()> {
    let ring = tr.current().ring().clone();
    if *ring.coeffs() != CoeffDomain::Integers || ring.nvars() == 0 {
        return Ok(());
    }
    let idx: Vec<usize> = (0..tr.current().rows())
        .filter(|&i| {
            let e = tr.current().get(i, i);
            e.is_constant() && !e.is_zero() && !e.is_unit()
        })
        .collect();
    if idx.len() < 2 {
        return Ok(());
    }
    let z = Ring::integers();
    let entries: Vec<Poly> =
        idx.iter().map(|&i| Poly::constant(&z, tr.current().get(i, i).constant_value().unwrap())).collect();
    let snf = smith_normal_form(&RingMatrix::diagonal(&z, &entries))?;
    let lift = |p: &Poly| Poly::constant(&ring, p.constant_value().unwrap_or_else(|| ring.coeffs().from_int(0)));
    for op in &snf.certificate.transcript {
        let mapped = match op {
            ElementaryOp::SwapRows(a, b) => ElementaryOp::SwapRows(idx[*a], idx[*b]),
            ElementaryOp::SwapCols(a, b) => ElementaryOp::SwapCols(idx[*a], idx[*b]),
            ElementaryOp::AddRow { target, source, factor } => {
                ElementaryOp::AddRow { target: idx[*target], source: idx[*source], factor: lift(factor) }
            }
            ElementaryOp::AddCol { target, source, factor } => {
                ElementaryOp::AddCol { target: idx[*target], source: idx[*source], factor: lift(factor) }
            }
            ElementaryOp::ScaleRow { index, unit } => ElementaryOp::ScaleRow { index: idx[*index], unit: lift(unit) },
            ElementaryOp::ScaleCol { index, unit } => ElementaryOp::ScaleCol { index: idx[*index], unit: lift(unit) },
        };
        tr.apply(mapped)?;
    }
    Ok(())
}

pub(super) struct YesPath {
    pub certificate: Option<EquivalenceCertificate>,
    pub states: usize,
}

/// Unit-creation search: pivot, clear, recurse on the minor; between pivots
/// search first with reduction moves only, then with the multiplier pool.
pub(super) fn yes_path(m: &RingMatrix, bounds: &DiagBounds, budget: usize) -> Result<YesPath> {
    let pool = coefficient_pool(m.ring(), bounds.degree, bounds.height);
    let n = m.rows();
    let mut tr = Tracked::new(m);
    let mut left = budget;
    let mut t = 0;
    while t < n {
        if minor_diagonal(tr.current(), t) {
            break;
        }
        if let Some((i, j)) = pivot_candidate(tr.current(), t)? {
            pivot_at(&mut tr, t, i, j)?;
            t += 1;
            continue;
        }
        let mut path = deepen(tr.current(), t, &[], bounds.depth + 4, &mut left)?;
        if path.is_none() && left > 0 {
            path = deepen(tr.current(), t, &pool, bounds.depth, &mut left)?;
        }
        match path {
            Some(ops) => {
                for op in ops {
                    tr.apply(op)?;
                }
            }
            None => return Ok(YesPath { certificate: None, states: budget - left }),
        }
    }
    normalize_constants(&mut tr)?;
    let cert = tr.into_certificate().checked()?;
    Ok(YesPath { certificate: Some(cert), states: budget - left })
}
