use core::fmt;

use crate::ground::{Biset, Mask};

/// Errors shared by every module of the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Ground set size outside the supported range for the requested object.
    GroundSetSize { n: usize, max: usize },
    /// Two objects built over different ground sets were combined.
    GroundSetMismatch { left: usize, right: usize },
    /// A biset was built from overlapping positive and negative parts.
    NotDisjoint { pos: Mask, neg: Mask },
    /// A permutation was not a bijection on the ground set.
    InvalidPermutation,
    /// A sign vector contained an entry other than +1 or -1.
    InvalidSignVector,
    /// A scaling vector had a zero or negative entry.
    ScalingNotPositive,
    /// A value table had the wrong length for its ground set.
    TableLength { expected: usize, got: usize },
    /// The value at the empty set (or empty biset) was nonzero.
    NonzeroAtEmpty,
    /// A set function with the wrong kind tag was passed to an operation.
    KindMismatch,
    /// The pair passed as an orthant does not cover the ground set.
    NotAnOrthant,
    /// A point expected to lie in a polyhedron does not.
    NotAMember,
    /// An index was not saturated on the requested side.
    NotSaturated { index: usize, positive: bool },
    /// Integral enumeration over an unbounded polyhedron without a user box.
    UnboundedEnumeration,
    /// An exhaustive check was requested beyond its size cap.
    CheckTooLarge { n: usize, max: usize },
    /// The query point is not one of the listed candidates.
    NotInCandidates,
    /// No least element of this majorization kind exists for this family.
    UnsupportedCombination,
    /// Integral data was required but a non-integral value was found.
    NotIntegral,
    /// Integral request with a scaling vector other than all-ones.
    ScalingNotUnit,
    /// The point set was empty.
    EmptyPointSet,
    /// The generated polyhedron is empty (invalid source table).
    EmptyPolyhedron,
    /// An iterative solver failed to certify an exact optimum.
    Unconverged,
    /// A vector had the wrong dimension.
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GroundSetSize { n, max } => {
                write!(f, "ground set of size {n} exceeds the supported maximum {max}")
            }
            Error::GroundSetMismatch { left, right } => {
                write!(f, "ground sets differ: {left} vs {right}")
            }
            Error::NotDisjoint { pos, neg } => {
                write!(f, "biset parts overlap: {pos} and {neg}")
            }
            Error::InvalidPermutation => write!(f, "not a permutation of the ground set"),
            Error::InvalidSignVector => write!(f, "sign vector entries must be +1 or -1"),
            Error::ScalingNotPositive => write!(f, "scaling entries must be strictly positive"),
            Error::TableLength { expected, got } => {
                write!(f, "value table has length {got}, expected {expected}")
            }
            Error::NonzeroAtEmpty => write!(f, "value at the empty (bi)set must be 0"),
            Error::KindMismatch => write!(f, "set function kind incompatible with operation"),
            Error::NotAnOrthant => write!(f, "pair does not cover the ground set"),
            Error::NotAMember => write!(f, "point is not a member of the polyhedron"),
            Error::NotSaturated { index, positive } => {
                let sign = if *positive { '+' } else { '-' };
                write!(f, "index {} is not {sign}-saturated", index + 1)
            }
            Error::UnboundedEnumeration => {
                write!(f, "enumeration requires a bounding box for this family")
            }
            Error::CheckTooLarge { n, max } => {
                write!(f, "exhaustive check capped at n <= {max}, got n = {n}")
            }
            Error::NotInCandidates => write!(f, "query point is not among the candidates"),
            Error::UnsupportedCombination => {
                write!(f, "no least element of this kind exists for this family")
            }
            Error::NotIntegral => write!(f, "integral data required"),
            Error::ScalingNotUnit => {
                write!(f, "integral least elements require unit scaling (a = 1)")
            }
            Error::EmptyPointSet => write!(f, "point set is empty"),
            Error::EmptyPolyhedron => write!(f, "polyhedron is empty"),
            Error::Unconverged => write!(f, "solver failed to certify an exact optimum"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "vector has dimension {got}, expected {expected}")
            }
        }
    }
}

/// A violated or tight constraint of one of the polyhedra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `x(A) <= f(A)` (or `>=` for supermodular sources).
    Subset(Mask),
    /// `x(S) - x(T) <= h(S,T)`.
    Biset(Biset),
    /// The element-sum equality of a base polyhedron.
    BaseSum,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Subset(a) => write!(f, "subset {a}"),
            Constraint::Biset(u) => write!(f, "biset {u}"),
            Constraint::BaseSum => write!(f, "element-sum equality"),
        }
    }
}
