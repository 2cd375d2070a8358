//! The grading bit `b`: `0` for the orthogonal (symmetric form) case, `1`
//! for the symplectic (antisymmetric form) case.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Grading {
    Orthogonal,
    Symplectic,
}

impl Grading {
    pub fn from_bit(b: u8) -> Result<Self> {
        match b {
            0 => Ok(Grading::Orthogonal),
            1 => Ok(Grading::Symplectic),
            _ => Err(Error::Parse(format!("grading must be 0 or 1, got {b}"))),
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Grading::Orthogonal => 0,
            Grading::Symplectic => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Grading::Symplectic
    }

    pub fn other(self) -> Self {
        match self {
            Grading::Orthogonal => Grading::Symplectic,
            Grading::Symplectic => Grading::Orthogonal,
        }
    }

    /// `s^b` for a sign `s = ±1`.
    pub fn power(self, sign: i32) -> i32 {
        if self.is_odd() {
            sign
        } else {
            1
        }
    }

    /// The loop weight `z = (-1)^b N`.
    pub fn loop_weight(self, n: usize) -> Q {
        let n = q(n as i64);
        if self.is_odd() {
            -n
        } else {
            n
        }
    }
}

impl TryFrom<u8> for Grading {
    type Error = Error;
    fn try_from(b: u8) -> Result<Self> {
        Grading::from_bit(b)
    }
}

impl From<Grading> for u8 {
    fn from(g: Grading) -> u8 {
        g.bit()
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}
