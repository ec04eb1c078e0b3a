//! Linear combinations of cylinder indicators and of rank-one operators.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::boundary::BasicSet;
use crate::degree::Degree;

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(n.into(), d.into())
}

/// An element of the slice module X_n: `Σ c_j χ_{A_j}` with every A_j in A^n.
/// Terms may overlap; equality is decided extensionally by the product
/// system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderFunction {
    slice: Degree,
    terms: BTreeMap<BasicSet, Scalar>,
}

impl CylinderFunction {
    pub fn zero(slice: Degree) -> Self {
        CylinderFunction { slice, terms: BTreeMap::new() }
    }

    /// `χ_A` in slice n; the caller guarantees `A ∈ A^n`.
    pub fn indicator(slice: Degree, set: BasicSet) -> Self {
        let mut f = Self::zero(slice);
        f.add_term(set, Scalar::one());
        f
    }

    pub fn slice(&self) -> &Degree {
        &self.slice
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasicSet, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, set: BasicSet, c: Scalar) {
        if c.is_zero() || set.is_degenerate() {
            return;
        }
        debug_assert!(set.in_slice(&self.slice));
        match self.terms.entry(set) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &CylinderFunction) -> CylinderFunction {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> CylinderFunction {
        let mut out = Self::zero(self.slice.clone());
        for (s, v) in &self.terms {
            out.add_term(s.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &CylinderFunction) -> CylinderFunction {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// The same function regarded in another slice; every head must have
    /// degree at least `slice`.
    pub fn reslice(&self, slice: Degree) -> CylinderFunction {
        debug_assert!(self.terms.keys().all(|s| s.in_slice(&slice)));
        CylinderFunction { slice, terms: self.terms.clone() }
    }
}

/// `Σ c Θ_{ket,bra}` in K(X_n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactOp {
    slice: Degree,
    terms: Vec<(Scalar, BasicSet, BasicSet)>,
}

impl CompactOp {
    pub fn zero(slice: Degree) -> Self {
        CompactOp { slice, terms: Vec::new() }
    }

    /// Θ_{ket,bra}; both sets must lie in A^n.
    pub fn theta(slice: Degree, ket: BasicSet, bra: BasicSet) -> Self {
        let mut op = Self::zero(slice);
        op.push(Scalar::one(), ket, bra);
        op
    }

    pub fn slice(&self) -> &Degree {
        &self.slice
    }

    pub fn terms(&self) -> &[(Scalar, BasicSet, BasicSet)] {
        &self.terms
    }

    pub fn push(&mut self, c: Scalar, ket: BasicSet, bra: BasicSet) {
        if c.is_zero() || ket.is_degenerate() || bra.is_degenerate() {
            return;
        }
        debug_assert!(ket.in_slice(&self.slice) && bra.in_slice(&self.slice));
        self.terms.push((c, ket, bra));
    }

    pub fn add(&self, other: &CompactOp) -> CompactOp {
        assert_eq!(self.slice, other.slice);
        let mut out = self.clone();
        for (c, k, b) in &other.terms {
            out.push(c.clone(), k.clone(), b.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> CompactOp {
        let mut out = Self::zero(self.slice.clone());
        for (v, k, b) in &self.terms {
            out.push(v * c, k.clone(), b.clone());
        }
        out
    }

    /// Sorts terms and merges repeated (ket, bra) pairs.
    pub fn canonical(&self) -> CompactOp {
        let mut merged: BTreeMap<(BasicSet, BasicSet), Scalar> = BTreeMap::new();
        for (c, k, b) in &self.terms {
            *merged.entry((k.clone(), b.clone())).or_insert_with(Scalar::zero) += c;
        }
        let mut out = Self::zero(self.slice.clone());
        for ((k, b), c) in merged {
            out.push(c, k, b);
        }
        out
    }
}

/// An element of X̃_q: components indexed by degrees r ≤ q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleElement {
    bound: Degree,
    components: Vec<CylinderFunction>,
}

impl TupleElement {
    pub fn zero(bound: Degree) -> Self {
        TupleElement { bound, components: Vec::new() }
    }

    /// A tuple with the single component `f` at `f.slice()`.
    pub fn single(bound: Degree, f: CylinderFunction) -> Self {
        debug_assert!(f.slice().le(&bound));
        TupleElement { bound, components: vec![f] }
    }

    pub fn bound(&self) -> &Degree {
        &self.bound
    }

    pub fn components(&self) -> &[CylinderFunction] {
        &self.components
    }

    pub fn component(&self, r: &Degree) -> Option<&CylinderFunction> {
        self.components.iter().find(|f| f.slice() == r)
    }

    /// Replaces or inserts the component at `f.slice()`.
    pub fn set(&mut self, f: CylinderFunction) {
        self.components.retain(|g| g.slice() != f.slice());
        if !f.is_empty() {
            self.components.push(f);
            self.components.sort_by(|a, b| a.slice().cmp_lex(b.slice()));
        }
    }

    pub fn sub(&self, other: &TupleElement) -> TupleElement {
        let mut out = self.clone();
        for g in &other.components {
            let f = match out.component(g.slice()) {
                Some(f) => f.sub(g),
                None => g.scale(&-Scalar::one()),
            };
            out.set(f);
        }
        out
    }
}
