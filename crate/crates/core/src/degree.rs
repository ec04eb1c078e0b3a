//! Degree vectors in N^k.
//!
//! `Degree` deliberately does not implement `PartialOrd`: the natural order
//! is the coordinatewise partial order, exposed through [`Degree::le`].
//! Sorting uses [`Degree::cmp_lex`].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    pub fn from_vec(coords: Vec<u32>) -> Self {
        Degree(coords)
    }

    /// The basis vector e_i, with colors numbered from 1.
    pub fn basis(k: usize, color: usize) -> Self {
        let mut d = Self::zero(k);
        d.0[color - 1] = 1;
        d
    }

    /// The vector (c, …, c).
    pub fn constant(k: usize, c: u32) -> Self {
        Degree(vec![c; k])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// Coordinate of color `color` (1-based).
    pub fn get(&self, color: usize) -> u32 {
        self.0[color - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn le(&self, other: &Degree) -> bool {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn add(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, defined when `other ≤ self`.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        if !other.le(self) {
            return None;
        }
        Some(Degree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `self - other`; panics unless `other ≤ self`.
    pub fn sub(&self, other: &Degree) -> Degree {
        self.checked_sub(other).unwrap_or_else(|| panic!("degree {other} is not below {self}"))
    }

    pub fn cmp_lex(&self, other: &Degree) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// All degrees `d` with `self ≤ d ≤ upper`, lexicographically ordered.
    pub fn box_to(&self, upper: &Degree) -> Vec<Degree> {
        if !self.le(upper) {
            return Vec::new();
        }
        let mut out = vec![self.clone()];
        for i in 0..self.rank() {
            let mut next = Vec::new();
            for d in &out {
                for c in self.0[i]..=upper.0[i] {
                    let mut e = d.clone();
                    e.0[i] = c;
                    next.push(e);
                }
            }
            out = next;
        }
        out.sort_by(|a, b| a.cmp_lex(b));
        out
    }

    /// All degrees below `self`.
    pub fn below(&self) -> Vec<Degree> {
        Degree::zero(self.rank()).box_to(self)
    }

    pub fn check_rank(&self, k: usize) -> Result<()> {
        if self.rank() == k {
            Ok(())
        } else {
            Err(Error::RankMismatch { expected: k, got: self.rank() })
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Join of a collection of degrees; `zero(k)` for the empty collection.
pub fn join_all<'a>(k: usize, degrees: impl IntoIterator<Item = &'a Degree>) -> Degree {
    degrees.into_iter().fold(Degree::zero(k), |acc, d| acc.join(d))
}
