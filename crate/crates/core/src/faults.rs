//! Deliberate corruptions of the closed-form constructions.
//!
//! Used only by mutation tests to show that the verification suite can fail.
//! Every flag defaults to off.

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Faults {
    /// Intersection: drop the first ν ∈ F when building F_α.
    pub f_alpha_skip_left: bool,
    /// Intersection: drop the first ξ ∈ G when building F_α.
    pub f_alpha_skip_right: bool,
    /// Compact alignment: omit a component of H_{γ,α}
    /// (0: the F₁ part, 1: the F₂ part, 2: the G₁ part).
    pub h_skip: [bool; 3],
    /// Compact alignment: omit a component of J_{ρ,β}
    /// (0: the G₂ part, 1: the G₁ part, 2: the F₂ part).
    pub j_skip: [bool; 3],
    /// Compact alignment: drop the first (κ,H) of each index family.
    pub h_drop_first: bool,
    /// Compact alignment: drop the first (ω,J) of each index family.
    pub j_drop_first: bool,
}

impl Faults {
    pub fn none() -> Self {
        Self::default()
    }
}
