//! Binary-addition-tree (BAT) enumeration of binary vectors.
//!
//! A single working vector starts at all zeros. Each step scans from the
//! first coordinate: a `1` becomes `0` and the scan moves on, the first `0`
//! becomes `1` and the new vector is emitted. Enumeration halts after the
//! all-ones vector.

use crate::error::{Error, Result};

pub const MAX_BAT_LEN: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BatVector {
    coords: Vec<bool>,
}

impl BatVector {
    pub fn zeros(len: usize) -> Self {
        BatVector { coords: vec![false; len] }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        BatVector { coords: bits.iter().map(|&b| b != 0).collect() }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, idx: usize) -> bool {
        self.coords[idx]
    }

    pub fn coords(&self) -> &[bool] {
        &self.coords
    }

    pub fn bits(&self) -> Vec<u8> {
        self.coords.iter().map(|&c| c as u8).collect()
    }

    /// Coordinate `k` maps to bit `k`.
    pub fn to_mask(&self) -> u64 {
        self.coords.iter().enumerate().fold(0, |acc, (k, &c)| acc | ((c as u64) << k))
    }

    /// Moves to the BAT successor in place. Returns `false`, leaving the
    /// vector all-zero, once the all-ones vector has been passed.
    pub fn advance(&mut self) -> bool {
        for c in self.coords.iter_mut() {
            if !*c {
                *c = true;
                return true;
            }
            *c = false;
        }
        false
    }

    /// The BAT successor, or `None` for the all-ones vector.
    pub fn successor(&self) -> Option<BatVector> {
        let mut next = self.clone();
        next.advance().then_some(next)
    }
}

impl std::fmt::Display for BatVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("(")?;
        for (idx, &c) in self.coords.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c as u8)?;
        }
        f.write_str(")")
    }
}

/// Visits all `2^m` vectors of length `m` in BAT order, reusing one vector.
pub fn bat_enumerate(m: usize, mut visit: impl FnMut(&BatVector)) -> Result<u64> {
    if !(1..=MAX_BAT_LEN).contains(&m) {
        return Err(Error::TooLarge { what: "BAT vector length", found: m, limit: MAX_BAT_LEN });
    }
    let mut x = BatVector::zeros(m);
    let mut count = 0u64;
    loop {
        visit(&x);
        count += 1;
        if !x.advance() {
            return Ok(count);
        }
    }
}
