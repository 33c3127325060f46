use std::fmt;

use super::{Formula, Quantifier};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Sigma,
    Pi,
}

/// Position of a formula in the quantifier-alternation hierarchy.
///
/// Level 0 is the quantifier-free class, where Sigma and Pi coincide; it is
/// reported with side [`Side::Sigma`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrefixClass {
    pub level: usize,
    pub side: Side,
}

impl PrefixClass {
    pub fn new(level: usize, side: Side) -> Self {
        let side = if level == 0 { Side::Sigma } else { side };
        PrefixClass { level, side }
    }

    pub fn sigma(level: usize) -> Self {
        PrefixClass::new(level, Side::Sigma)
    }

    pub fn pi(level: usize) -> Self {
        PrefixClass::new(level, Side::Pi)
    }

    /// Class inclusion: `Sigma_s` and `Pi_s` are both contained in
    /// `Sigma_s'` and `Pi_s'` for every `s' > s`.
    pub fn is_subclass_of(&self, other: &PrefixClass) -> bool {
        self.level == 0
            || other.level > self.level
            || (other.level == self.level && other.side == self.side)
    }
}

impl fmt::Display for PrefixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.level, self.side) {
            (0, _) => write!(f, "Sigma 0 (= Pi 0)"),
            (s, Side::Sigma) => write!(f, "Sigma {s}"),
            (s, Side::Pi) => write!(f, "Pi {s}"),
        }
    }
}

/// Minimal prefix class of `f`, read off the written prefix. Free variables
/// and the matrix are ignored.
pub fn classify(f: &Formula) -> PrefixClass {
    let blocks = f.blocks();
    match blocks.first() {
        None => PrefixClass::sigma(0),
        Some((Quantifier::Exists, _)) => PrefixClass::sigma(blocks.len()),
        Some((Quantifier::Forall, _)) => PrefixClass::pi(blocks.len()),
    }
}
