//! Four-state per-arc vectors.
//!
//! A coordinate holds a 2-bit mask over the two directions of one undirected
//! arc: `0` none, `1` forward, `2` backward, `3` both. Intersecting IET terms
//! is the bitwise join of the masks, so a single pass over `m` coordinates
//! replaces a pass over `2m` explicitly doubled arcs.

use std::fmt;

use crate::error::{Error, Result};
use crate::network::{Direction, Network};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AugmentedVector {
    states: Vec<u8>,
}

impl AugmentedVector {
    pub fn zeros(len: usize) -> Self {
        AugmentedVector { states: vec![0; len] }
    }

    /// Builds a vector from raw states; every state must be in `0..=3`.
    pub fn from_states(states: Vec<u8>) -> Result<Self> {
        if let Some(bad) = states.iter().find(|&&s| s > 3) {
            return Err(Error::InvalidPath(format!("augmented state {bad} is not in 0..=3")));
        }
        Ok(AugmentedVector { states })
    }

    pub fn states(&self) -> &[u8] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.iter().all(|&s| s == 0)
    }

    pub fn contains(&self, coordinate: usize, dir: Direction) -> bool {
        self.states[coordinate] & dir.mask() != 0
    }

    pub(crate) fn set(&mut self, coordinate: usize, dir: Direction) {
        self.states[coordinate] |= dir.mask();
    }

    /// Coordinate-wise mask inclusion: every direction of `self` is in `other`.
    pub fn is_subset_of(&self, other: &AugmentedVector) -> bool {
        self.states.len() == other.states.len() && self.states.iter().zip(&other.states).all(|(a, b)| a & !b == 0)
    }

    /// Join without a probability factor.
    pub fn join(&self, other: &AugmentedVector) -> Result<AugmentedVector> {
        check_len(self.len(), other.len())?;
        Ok(AugmentedVector { states: self.states.iter().zip(&other.states).map(|(a, b)| a | b).collect() })
    }

    /// The directed arcs `(tail, head)` present in the vector.
    pub fn directed_arcs(&self, net: &Network) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (state, arc) in self.states.iter().zip(net.arcs()) {
            for dir in Direction::BOTH {
                if state & dir.mask() != 0 {
                    out.push(arc.endpoints(dir));
                }
            }
        }
        out
    }
}

impl fmt::Display for AugmentedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, s) in self.states.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// Intersection `T ∩ P` of a term with a path, together with the factor that
/// turns `Pr(T)` into `Pr(T ∩ P)`: the product of the probabilities of the
/// directions newly contributed by `path`.
pub fn combine(term: &AugmentedVector, path: &AugmentedVector, net: &Network) -> Result<(AugmentedVector, f64)> {
    check_len(term.len(), path.len())?;
    check_len(net.arc_count(), term.len())?;
    let mut states = term.states.clone();
    let mut factor = 1.0;
    for ((state, &add), arc) in states.iter_mut().zip(&path.states).zip(net.arcs()) {
        let new_bits = add & !*state;
        if new_bits == 0 {
            continue;
        }
        if new_bits & Direction::Forward.mask() != 0 {
            factor *= arc.p_fwd;
        }
        if new_bits & Direction::Backward.mask() != 0 {
            factor *= arc.p_bwd;
        }
        *state |= add;
    }
    Ok((AugmentedVector { states }, factor))
}

/// Probability that every direction present in `v` works.
pub fn vector_probability(v: &AugmentedVector, net: &Network) -> Result<f64> {
    check_len(net.arc_count(), v.len())?;
    Ok(v.states
        .iter()
        .zip(net.arcs())
        .map(|(&s, arc)| match s {
            0 => 1.0,
            1 => arc.p_fwd,
            2 => arc.p_bwd,
            _ => arc.p_fwd * arc.p_bwd,
        })
        .product())
}

/// Whether `v` is the complete term, i.e. equal to the join `full` of all
/// minimal-path vectors.
pub fn is_complete(v: &AugmentedVector, full: &AugmentedVector) -> Result<bool> {
    check_len(full.len(), v.len())?;
    Ok(v == full)
}
