//! Boolean functions `f: {0,1}^N -> {0,1}` stored as truth tables.
//!
//! Inputs are addressed by integer index. Bit `x_1` is the most significant
//! bit of the index, so for `N = 4` the index `0b0100` has `x_2 = 1`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Largest supported input length. Truth tables and adversary matrices are
/// dense, so this is already well past desk scale for the spectral code.
pub const MAX_BITS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Or,
    And,
    Parity,
    Majority,
    Constant0,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Or,
        Family::And,
        Family::Parity,
        Family::Majority,
        Family::Constant0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Or => "or",
            Family::And => "and",
            Family::Parity => "parity",
            Family::Majority => "majority",
            Family::Constant0 => "constant0",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|fam| fam.name() == lower)
            .ok_or_else(|| Error::InvalidArgument(alloc::format!("unknown function family '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n_bits: usize,
    table: Vec<bool>,
}

impl BooleanFunction {
    /// Builds one of the named families on `n_bits` inputs.
    pub fn named(family: Family, n_bits: usize) -> Result<Self> {
        check_bits(n_bits)?;
        if family == Family::Majority && n_bits.is_multiple_of(2) {
            return Err(Error::InvalidArgument(alloc::format!(
                "majority needs an odd number of bits, got {n_bits}"
            )));
        }
        let n = n_bits as u32;
        Self::from_fn(n_bits, |x| {
            let ones = (x as u64).count_ones();
            match family {
                Family::Or => ones > 0,
                Family::And => ones == n,
                Family::Parity => ones % 2 == 1,
                Family::Majority => 2 * ones > n,
                Family::Constant0 => false,
            }
        })
    }

    pub fn from_fn(n_bits: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        check_bits(n_bits)?;
        let table = (0..1usize << n_bits).map(f).collect();
        Ok(Self { n_bits, table })
    }

    /// Builds a function from a 0/1 table of length `2^n_bits`.
    pub fn from_table(n_bits: usize, table: &[u8]) -> Result<Self> {
        check_bits(n_bits)?;
        let expected = 1usize << n_bits;
        if table.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: table.len(),
            });
        }
        let table = table
            .iter()
            .enumerate()
            .map(|(x, &v)| match v {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::InvalidArgument(alloc::format!(
                    "truth table entry {x} is {other}, expected 0 or 1"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n_bits, table })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    /// Number of inputs, `2^N`.
    pub fn num_inputs(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn table_bits(&self) -> Vec<u8> {
        self.table.iter().map(|&b| b as u8).collect()
    }

    pub fn eval(&self, x: usize) -> Result<bool> {
        self.table.get(x).copied().ok_or(Error::IndexOutOfRange {
            index: x,
            bound: self.table.len(),
        })
    }

    /// Unchecked variant of [`eval`](Self::eval).
    ///
    /// Panics if `x >= 2^N`.
    pub fn output(&self, x: usize) -> bool {
        self.table[x]
    }

    pub fn is_constant(&self) -> bool {
        self.table.iter().all(|&v| v == self.table[0])
    }

    /// Pairs `(x, y)` with `x < y` and `f(x) != f(y)`.
    pub fn differing_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.num_inputs();
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if self.table[x] != self.table[y] {
                    pairs.push((x, y));
                }
            }
        }
        pairs
    }
}

fn check_bits(n_bits: usize) -> Result<()> {
    if n_bits == 0 || n_bits > MAX_BITS {
        return Err(Error::InvalidArgument(alloc::format!(
            "n_bits must be in 1..={MAX_BITS}, got {n_bits}"
        )));
    }
    Ok(())
}

/// The bit `x_j` of input `x`, with `j` in `1..=n_bits` and `x_1` the most
/// significant bit.
#[inline]
pub fn bit(x: usize, j: usize, n_bits: usize) -> bool {
    (x >> (n_bits - j)) & 1 == 1
}

#[inline]
pub fn hamming(x: usize, y: usize) -> u32 {
    (x ^ y).count_ones()
}

/// Sorted 1-based positions `j` at which `x_j != y_j`.
pub fn differing_indices(x: usize, y: usize, n_bits: usize) -> Result<Vec<usize>> {
    check_bits(n_bits)?;
    let bound = 1usize << n_bits;
    for v in [x, y] {
        if v >= bound {
            return Err(Error::IndexOutOfRange { index: v, bound });
        }
    }
    Ok((1..=n_bits)
        .filter(|&j| bit(x, j, n_bits) != bit(y, j, n_bits))
        .collect())
}
