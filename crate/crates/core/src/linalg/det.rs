use itertools::Itertools;

use super::RingMatrix;
use crate::error::{Error, Result};
use crate::rings::Poly;

/// Fraction-free Bareiss elimination; matrices up to 3x3 are cross-checked
/// against cofactor expansion.
pub fn determinant(m: &RingMatrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::usage(format!("determinant of a non-square {}x{} matrix", m.rows(), m.cols())));
    }
    let d = bareiss(m)?;
    if m.rows() <= 3 {
        let c = cofactor(m);
        if c != d {
            return Err(Error::internal(format!("Bareiss gave {d}, cofactor expansion gave {c}")));
        }
    }
    Ok(d)
}

fn bareiss(m: &RingMatrix) -> Result<Poly> {
    let n = m.rows();
    let ring = m.ring();
    if n == 0 {
        return Ok(Poly::one(ring));
    }
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = Poly::one(ring);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Poly::zero(ring));
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev)?.ok_or_else(|| Error::internal("inexact Bareiss division"))?;
            }
            a[i][k] = Poly::zero(ring);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Laplace expansion along the first row.
pub(crate) fn cofactor(m: &RingMatrix) -> Poly {
    let n = m.rows();
    if n == 0 {
        return Poly::one(m.ring());
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = Poly::zero(m.ring());
    let rest: Vec<usize> = (1..n).collect();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = m.get(0, j) * &cofactor(&m.submatrix(&rest, &cols));
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// All `k x k` minors in row-major subset order.
pub fn minors(m: &RingMatrix, k: usize) -> Result<Vec<Poly>> {
    if k > m.rows().min(m.cols()) {
        return Err(Error::usage(format!("minor size {k} exceeds matrix dimensions {}x{}", m.rows(), m.cols())));
    }
    if k == 0 {
        return Ok(vec![Poly::one(m.ring())]);
    }
    let mut out = Vec::new();
    for rows in (0..m.rows()).combinations(k) {
        for cols in (0..m.cols()).combinations(k) {
            out.push(determinant(&m.submatrix(&rows, &cols))?);
        }
    }
    Ok(out)
}

/// Adjugate, so that `m * adj(m) = det(m) * I`.
pub fn adjugate(m: &RingMatrix) -> Result<RingMatrix> {
    if !m.is_square() {
        return Err(Error::usage("adjugate of a non-square matrix"));
    }
    let n = m.rows();
    let mut adj = RingMatrix::zeros(m.ring(), n, n);
    if n == 1 {
        adj.set(0, 0, Poly::one(m.ring()));
        return Ok(adj);
    }
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let c = determinant(&m.submatrix(&rows, &cols))?;
            adj.set(j, i, if (i + j) % 2 == 0 { c } else { -c });
        }
    }
    Ok(adj)
}

/// Exact inverse of a matrix whose determinant is a unit.
pub fn unimodular_inverse(m: &RingMatrix) -> Result<RingMatrix> {
    let d = determinant(m)?;
    let inv = d.unit_inverse().ok_or_else(|| Error::usage(format!("determinant {d} is not a unit")))?;
    let adj = adjugate(m)?;
    let mut out = adj.clone();
    for i in 0..adj.rows() {
        for j in 0..adj.cols() {
            out.set(i, j, adj.get(i, j) * &inv);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Ring;

    #[test]
    fn small_determinants() {
        let zx = Ring::zx();
        let m = RingMatrix::parse(&zx, &[vec!["2", "x"], vec!["0", "3"]]).unwrap();
        assert_eq!(determinant(&m).unwrap().to_string(), "6");
        let q = Ring::qxy();
        let m = RingMatrix::parse(&q, &[vec!["x", "y"], vec!["0", "x"]]).unwrap();
        assert_eq!(determinant(&m).unwrap().to_string(), "x^2");
    }

    #[test]
    fn bareiss_needs_row_swaps() {
        let z = Ring::integers();
        let m = RingMatrix::parse(
            &z,
            &[vec!["0", "1", "2", "3"], vec!["1", "0", "4", "1"], vec!["2", "5", "0", "1"], vec!["3", "1", "1", "0"]],
        )
        .unwrap();
        assert_eq!(bareiss(&m).unwrap(), cofactor(&m));
    }

    #[test]
    fn inverse_of_unimodular() {
        let zx = Ring::zx();
        let m = RingMatrix::parse(&zx, &[vec!["x + 2", "1"], vec!["1", "0"]]).unwrap();
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RingMatrix::identity(&zx, 2));
        let singular = RingMatrix::parse(&zx, &[vec!["2"]]).unwrap();
        assert!(unimodular_inverse(&singular).is_err());
    }

    #[test]
    fn non_square_is_a_usage_error() {
        let z = Ring::integers();
        let m = RingMatrix::parse(&z, &[vec!["1", "2"]]).unwrap();
        assert!(matches!(determinant(&m), Err(Error::Usage(_))));
    }
}
