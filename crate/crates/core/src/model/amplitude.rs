use std::fmt;

use crate::grading::Grading;
use crate::poly::{Poly, RatFunc};
use crate::rational::Q;

/// An exact function of `N` (a polynomial whenever the propagator weights
/// are), tagged with the grading it was computed for.
#[derive(Clone, Debug, PartialEq)]
pub struct Amplitude {
    grading: Grading,
    value: RatFunc,
}

impl Amplitude {
    pub fn new(grading: Grading, value: RatFunc) -> Self {
        Amplitude { grading, value }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn value(&self) -> &RatFunc {
        &self.value
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.value.as_poly()
    }

    pub fn eval(&self, n: &Q) -> Option<Q> {
        self.value.eval(n)
    }

    /// The value with `N ↦ -N` and the grading flipped.
    pub fn dual(&self) -> Amplitude {
        Amplitude {
            grading: self.grading.other(),
            value: self.value.reflect(),
        }
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value.display_in("N"))
    }
}
