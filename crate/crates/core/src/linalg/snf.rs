use num_bigint::BigInt;
use num_traits::Signed;

use super::{ElementaryOp, EquivalenceCertificate, RingMatrix, Tracked};
use crate::error::{Error, Result};
use crate::rings::{Poly, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub certificate: EquivalenceCertificate,
    /// Canonical diagonal entries `d_1 | d_2 | ...` (zeros last).
    pub invariant_factors: Vec<Poly>,
}

fn euclidean_size(p: &Poly) -> BigInt {
    if p.ring().nvars() == 0 {
        if p.ring().coeffs().is_field() {
            BigInt::from(0)
        } else {
            p.lc().numer().abs()
        }
    } else {
        BigInt::from(p.total_degree().unwrap_or(0))
    }
}

fn pivot(m: &RingMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let e = m.get(i, j);
            if e.is_zero() {
                continue;
            }
            let s = euclidean_size(e);
            if best.as_ref().is_none_or(|(_, b)| s < *b) {
                best = Some(((i, j), s));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Smith normal form over `Z`, `Q[x]` or `F_p[x]` with a certificate.
pub fn smith_normal_form(m: &RingMatrix) -> Result<SmithForm> {
    let ring: Ring = m.ring().clone();
    if !ring.is_euclidean() {
        return Err(Error::NotEuclidean(ring.to_string()));
    }
    let mut tr = Tracked::new(m);
    let k = m.rows().min(m.cols());
    for t in 0..k {
        loop {
            let Some((pi, pj)) = pivot(tr.current(), t) else {
                break;
            };
            if pi != t {
                tr.apply(ElementaryOp::SwapRows(t, pi))?;
            }
            if pj != t {
                tr.apply(ElementaryOp::SwapCols(t, pj))?;
            }
            let p = tr.current().get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m.rows() {
                let e = tr.current().get(i, t).clone();
                if e.is_zero() {
                    continue;
                }
                let (q, r) = e.div_rem(&p)?;
                if !q.is_zero() {
                    tr.apply(ElementaryOp::AddRow { target: i, source: t, factor: -q })?;
                }
                dirty |= !r.is_zero();
            }
            for j in t + 1..m.cols() {
                let e = tr.current().get(t, j).clone();
                if e.is_zero() {
                    continue;
                }
                let (q, r) = e.div_rem(&p)?;
                if !q.is_zero() {
                    tr.apply(ElementaryOp::AddCol { target: j, source: t, factor: -q })?;
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot, enforced here
            let cur = tr.current();
            let offender =
                (t + 1..m.rows()).find(|&i| (t + 1..m.cols()).any(|j| !p.divides(cur.get(i, j)).unwrap_or(false)));
            match offender {
                Some(i) => tr.apply(ElementaryOp::AddRow { target: t, source: i, factor: Poly::one(&ring) })?,
                None => break,
            }
        }
        let d = tr.current().get(t, t).clone();
        if !d.is_zero() {
            let (u, _) = d.canonical_associate();
            if !u.is_one() {
                let inv = u.unit_inverse().ok_or_else(|| Error::internal("unit part not invertible"))?;
                tr.apply(ElementaryOp::ScaleRow { index: t, unit: inv })?;
            }
        }
    }
    let cert = tr.into_certificate().checked()?;
    let factors = cert.target.diagonal_entries();
    if !cert.target.is_diagonal() {
        return Err(Error::internal("Smith form is not diagonal"));
    }
    for w in factors.windows(2) {
        if !w[0].divides(&w[1]).unwrap_or(w[0].is_zero() && w[1].is_zero()) {
            return Err(Error::internal(format!("divisibility chain broken: {} does not divide {}", w[0], w[1])));
        }
    }
    Ok(SmithForm { certificate: cert, invariant_factors: factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::verify_certificate;
    use crate::rings::{CoeffDomain, MonomialOrder};

    fn strings(s: &SmithForm) -> Vec<String> {
        s.invariant_factors.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn integer_examples() {
        let z = Ring::integers();
        let s = smith_normal_form(&RingMatrix::parse(&z, &[vec!["2", "4"], vec!["6", "8"]]).unwrap()).unwrap();
        assert_eq!(strings(&s), ["2", "4"]);
        let s = smith_normal_form(&RingMatrix::parse(&z, &[vec!["6", "0"], vec!["0", "2"]]).unwrap()).unwrap();
        assert_eq!(strings(&s), ["2", "6"]);
        assert!(verify_certificate(&s.certificate).is_valid());
        assert!(s.certificate.replay().unwrap());
        let s = smith_normal_form(&RingMatrix::parse(&z, &[vec!["3", "0"], vec!["0", "5"]]).unwrap()).unwrap();
        assert_eq!(strings(&s), ["1", "15"]);
    }

    #[test]
    fn univariate_field() {
        let qx = Ring::polynomial(CoeffDomain::Rationals, &["x"], MonomialOrder::Lex).unwrap();
        let s = smith_normal_form(&RingMatrix::parse(&qx, &[vec!["x", "0"], vec!["0", "x"]]).unwrap()).unwrap();
        assert_eq!(strings(&s), ["x", "x"]);
        let s =
            smith_normal_form(&RingMatrix::parse(&qx, &[vec!["2*x", "x^2 - 1"], vec!["x + 1", "0"]]).unwrap()).unwrap();
        assert_eq!(strings(&s), ["1", "x^3 + x^2 - x - 1"]);
    }

    #[test]
    fn rejects_non_euclidean() {
        let m = RingMatrix::parse(&Ring::zx(), &[vec!["x"]]).unwrap();
        assert!(matches!(smith_normal_form(&m), Err(Error::NotEuclidean(_))));
    }

    #[test]
    fn rectangular_and_singular() {
        let z = Ring::integers();
        let s =
            smith_normal_form(&RingMatrix::parse(&z, &[vec!["2", "4", "6"], vec!["4", "8", "12"]]).unwrap()).unwrap();
        assert_eq!(strings(&s), ["2", "0"]);
    }
}
