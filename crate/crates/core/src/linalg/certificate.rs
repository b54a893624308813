use super::{apply_elementary, unimodular_inverse, ElementaryOp, RingMatrix};
use crate::certify;
use crate::error::{Error, Result};

/// Witness `P * m * Q = D` with `P`, `Q` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    pub source: RingMatrix,
    pub left: RingMatrix,
    pub right: RingMatrix,
    pub target: RingMatrix,
    /// Elementary operations that produced the transforms, in order. Empty
    /// when the transforms were obtained some other way.
    pub transcript: Vec<ElementaryOp>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Valid,
    Invalid(String),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }
}

/// Re-checks a certificate with the independent verifier; the transcript is
/// ignored.
pub fn verify_certificate(cert: &EquivalenceCertificate) -> Verification {
    let ring = cert.source.ring();
    for (name, m) in [("P", &cert.left), ("Q", &cert.right), ("D", &cert.target)] {
        if m.ring() != ring {
            return Verification::Invalid(format!("{name} lives over {} not {ring}", m.ring()));
        }
    }
    match certify::check_equivalence(
        &cert.source.to_rows(),
        &cert.left.to_rows(),
        &cert.right.to_rows(),
        &cert.target.to_rows(),
    ) {
        Ok(()) => Verification::Valid,
        Err(reason) => Verification::Invalid(reason),
    }
}

/// Applies elementary operations while accumulating the transforms.
#[derive(Clone, Debug)]
pub struct Tracked {
    source: RingMatrix,
    current: RingMatrix,
    left: RingMatrix,
    right: RingMatrix,
    transcript: Vec<ElementaryOp>,
}

impl Tracked {
    pub fn new(m: &RingMatrix) -> Tracked {
        Tracked {
            source: m.clone(),
            current: m.clone(),
            left: RingMatrix::identity(m.ring(), m.rows()),
            right: RingMatrix::identity(m.ring(), m.cols()),
            transcript: Vec::new(),
        }
    }

    pub fn current(&self) -> &RingMatrix {
        &self.current
    }

    pub fn transcript(&self) -> &[ElementaryOp] {
        &self.transcript
    }

    pub fn apply(&mut self, op: ElementaryOp) -> Result<()> {
        self.current = apply_elementary(&self.current, &op)?;
        if op.is_row_op() {
            self.left = apply_elementary(&self.left, &op)?;
        } else {
            self.right = apply_elementary(&self.right, &op)?;
        }
        self.transcript.push(op);
        Ok(())
    }

    pub fn into_certificate(self) -> EquivalenceCertificate {
        EquivalenceCertificate {
            source: self.source,
            left: self.left,
            right: self.right,
            target: self.current,
            transcript: self.transcript,
        }
    }
}

impl EquivalenceCertificate {
    /// Replays the transcript from the source and checks it reproduces the
    /// stored transforms and target.
    pub fn replay(&self) -> Result<bool> {
        let mut t = Tracked::new(&self.source);
        for op in &self.transcript {
            t.apply(op.clone())?;
        }
        Ok(t.left == self.left && t.right == self.right && t.current == self.target)
    }

    /// Fails unless the independent verifier accepts the certificate.
    pub fn checked(self) -> Result<Self> {
        match verify_certificate(&self) {
            Verification::Valid => Ok(self),
            Verification::Invalid(r) => Err(Error::internal(format!("certificate rejected: {r}"))),
        }
    }
}

/// From `P m Q = D` with `D` diagonal, a certificate `P' m Q' = m^T` with
/// `P' = Q^{-T} P` and `Q' = Q P^{-T}`.
pub fn transpose_certificate_from_diagonal(cert: &EquivalenceCertificate) -> Result<EquivalenceCertificate> {
    if !cert.target.is_diagonal() || !cert.target.is_square() {
        return Err(Error::usage("certificate target is not a square diagonal matrix"));
    }
    let p_inv_t = unimodular_inverse(&cert.left)?.transpose();
    let q_inv_t = unimodular_inverse(&cert.right)?.transpose();
    EquivalenceCertificate {
        source: cert.source.clone(),
        left: q_inv_t.mul(&cert.left)?,
        right: cert.right.mul(&p_inv_t)?,
        target: cert.source.transpose(),
        transcript: Vec::new(),
    }
    .checked()
}
