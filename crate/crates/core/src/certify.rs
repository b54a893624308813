//! Independent re-check of equivalence certificates.
//!
//! Deliberately self-contained: it depends on the ring arithmetic only and
//! has its own matrix product and Laplace-expansion determinant, so that a
//! bug in the elimination code cannot vouch for itself.

use crate::rings::Poly;

type Grid = [Vec<Poly>];

fn shape(a: &Grid) -> (usize, usize) {
    (a.len(), a.first().map_or(0, |r| r.len()))
}

fn product(a: &Grid, b: &Grid) -> Option<Vec<Vec<Poly>>> {
    let (ar, ac) = shape(a);
    let (br, bc) = shape(b);
    if ac != br || a.iter().any(|r| r.len() != ac) || b.iter().any(|r| r.len() != bc) {
        return None;
    }
    let ring = a.first()?.first()?.ring().clone();
    let mut out = vec![vec![Poly::zero(&ring); bc]; ar];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let mut acc = Poly::zero(&ring);
            for k in 0..ac {
                acc = acc.checked_add(&a[i][k].checked_mul(&b[k][j]).ok()?).ok()?;
            }
            *slot = acc;
        }
    }
    Some(out)
}

fn laplace(a: &Grid) -> Option<Poly> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) || n == 0 {
        return None;
    }
    if n == 1 {
        return Some(a[0][0].clone());
    }
    let ring = a[0][0].ring().clone();
    let mut acc = Poly::zero(&ring);
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = a[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = a[0][j].checked_mul(&laplace(&minor)?).ok()?;
        acc = if j % 2 == 0 { acc.checked_add(&term).ok()? } else { acc.checked_sub(&term).ok()? };
    }
    Some(acc)
}

/// `Ok(())` iff `det(left)` and `det(right)` are units and
/// `left * source * right == target`; otherwise the first failing check.
pub fn check_equivalence(source: &Grid, left: &Grid, right: &Grid, target: &Grid) -> Result<(), String> {
    let (sr, sc) = shape(source);
    if shape(left) != (sr, sr) || shape(right) != (sc, sc) || shape(target) != (sr, sc) {
        return Err("certificate dimensions are inconsistent".into());
    }
    if sr == 0 || sc == 0 {
        return Ok(());
    }
    let dl = laplace(left).ok_or("left transform is malformed")?;
    if !dl.is_unit() {
        return Err(format!("det(P) = {dl} is not a unit"));
    }
    let dr = laplace(right).ok_or("right transform is malformed")?;
    if !dr.is_unit() {
        return Err(format!("det(Q) = {dr} is not a unit"));
    }
    let lm = product(left, source).ok_or("P*m is malformed")?;
    let prod = product(&lm, right).ok_or("P*m*Q is malformed")?;
    for i in 0..sr {
        for j in 0..sc {
            if prod[i][j] != target[i][j] {
                return Err(format!(
                    "(P*m*Q)[{},{}] = {} but D[{},{}] = {}",
                    i + 1,
                    j + 1,
                    prod[i][j],
                    i + 1,
                    j + 1,
                    target[i][j]
                ));
            }
        }
    }
    Ok(())
}
