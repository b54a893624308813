use std::fmt;

use super::RingMatrix;
use crate::error::{Error, Result};
use crate::rings::Poly;

/// Invertible elementary row and column operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryOp {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    /// `row[target] += factor * row[source]`
    AddRow {
        target: usize,
        source: usize,
        factor: Poly,
    },
    /// `col[target] += factor * col[source]`
    AddCol {
        target: usize,
        source: usize,
        factor: Poly,
    },
    ScaleRow {
        index: usize,
        unit: Poly,
    },
    ScaleCol {
        index: usize,
        unit: Poly,
    },
}

impl ElementaryOp {
    pub fn is_row_op(&self) -> bool {
        matches!(self, ElementaryOp::SwapRows(..) | ElementaryOp::AddRow { .. } | ElementaryOp::ScaleRow { .. })
    }

    /// The inverse operation.
    pub fn inverse(&self) -> ElementaryOp {
        match self {
            ElementaryOp::AddRow { target, source, factor } => {
                ElementaryOp::AddRow { target: *target, source: *source, factor: -factor.clone() }
            }
            ElementaryOp::AddCol { target, source, factor } => {
                ElementaryOp::AddCol { target: *target, source: *source, factor: -factor.clone() }
            }
            ElementaryOp::ScaleRow { index, unit } => {
                ElementaryOp::ScaleRow { index: *index, unit: unit.unit_inverse().expect("scale factors are units") }
            }
            ElementaryOp::ScaleCol { index, unit } => {
                ElementaryOp::ScaleCol { index: *index, unit: unit.unit_inverse().expect("scale factors are units") }
            }
            swap => swap.clone(),
        }
    }
}

impl fmt::Display for ElementaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryOp::SwapRows(a, b) => write!(f, "R{} <-> R{}", a + 1, b + 1),
            ElementaryOp::SwapCols(a, b) => write!(f, "C{} <-> C{}", a + 1, b + 1),
            ElementaryOp::AddRow { target, source, factor } => {
                write!(f, "R{} += ({factor})*R{}", target + 1, source + 1)
            }
            ElementaryOp::AddCol { target, source, factor } => {
                write!(f, "C{} += ({factor})*C{}", target + 1, source + 1)
            }
            ElementaryOp::ScaleRow { index, unit } => write!(f, "R{} *= {unit}", index + 1),
            ElementaryOp::ScaleCol { index, unit } => write!(f, "C{} *= {unit}", index + 1),
        }
    }
}

fn check_index(i: usize, bound: usize, what: &str) -> Result<()> {
    if i >= bound {
        return Err(Error::usage(format!("{what} index {i} out of range (size {bound})")));
    }
    Ok(())
}

/// Applies `op` to `m`: row operations act on the left, column operations on
/// the right.
pub fn apply_elementary(m: &RingMatrix, op: &ElementaryOp) -> Result<RingMatrix> {
    let mut out = m.clone();
    let (r, c) = (m.rows(), m.cols());
    match op {
        ElementaryOp::SwapRows(a, b) => {
            check_index(*a, r, "row")?;
            check_index(*b, r, "row")?;
            for j in 0..c {
                out.set(*a, j, m.get(*b, j).clone());
                out.set(*b, j, m.get(*a, j).clone());
            }
        }
        ElementaryOp::SwapCols(a, b) => {
            check_index(*a, c, "column")?;
            check_index(*b, c, "column")?;
            for i in 0..r {
                out.set(i, *a, m.get(i, *b).clone());
                out.set(i, *b, m.get(i, *a).clone());
            }
        }
        ElementaryOp::AddRow { target, source, factor } => {
            check_index(*target, r, "row")?;
            check_index(*source, r, "row")?;
            m.ring().check_same(factor.ring())?;
            if target == source {
                return Err(Error::usage("row addition needs distinct rows"));
            }
            for j in 0..c {
                out.set(*target, j, m.get(*target, j) + &(factor * m.get(*source, j)));
            }
        }
        ElementaryOp::AddCol { target, source, factor } => {
            check_index(*target, c, "column")?;
            check_index(*source, c, "column")?;
            m.ring().check_same(factor.ring())?;
            if target == source {
                return Err(Error::usage("column addition needs distinct columns"));
            }
            for i in 0..r {
                out.set(i, *target, m.get(i, *target) + &(factor * m.get(i, *source)));
            }
        }
        ElementaryOp::ScaleRow { index, unit } => {
            check_index(*index, r, "row")?;
            m.ring().check_same(unit.ring())?;
            if !unit.is_unit() {
                return Err(Error::usage(format!("cannot scale by non-unit {unit}")));
            }
            for j in 0..c {
                out.set(*index, j, m.get(*index, j) * unit);
            }
        }
        ElementaryOp::ScaleCol { index, unit } => {
            check_index(*index, c, "column")?;
            m.ring().check_same(unit.ring())?;
            if !unit.is_unit() {
                return Err(Error::usage(format!("cannot scale by non-unit {unit}")));
            }
            for i in 0..r {
                out.set(i, *index, m.get(i, *index) * unit);
            }
        }
    }
    Ok(out)
}
