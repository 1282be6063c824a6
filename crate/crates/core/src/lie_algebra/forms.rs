use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::exact_field::Rational;

/// Slot labels of [`TwoFormCE`], in storage order.
pub const TWO_FORM_SLOTS: [&str; 3] = ["θ¹∧θ²", "θ∧θ¹", "θ∧θ²"];

/// Left-invariant 1-form `α = α₁θ¹ + α₂θ² + α₃θ` in the dual basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize)]
pub struct OneFormCE {
    pub coeffs: [Rational; 3],
}

/// Left-invariant 2-form with coefficients on `θ¹∧θ²`, `θ∧θ¹`, `θ∧θ²` (this order everywhere).
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct TwoFormCE {
    pub coeffs: [Rational; 3],
}

impl OneFormCE {
    pub fn new(a1: Rational, a2: Rational, a3: Rational) -> Self {
        OneFormCE { coeffs: [a1, a2, a3] }
    }

    /// The dual basis form `θⁱ` (index 2 is `θ`).
    pub fn dual(i: usize) -> Self {
        let mut coeffs = [Rational::zero(), Rational::zero(), Rational::zero()];
        coeffs[i] = Rational::one();
        OneFormCE { coeffs }
    }

    pub fn eval(&self, u: &[Rational]) -> Rational {
        self.coeffs.iter().zip(u).map(|(a, x)| a * x).sum()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        OneFormCE { coeffs: self.coeffs.clone().map(|c| c * s) }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn wedge(&self, other: &OneFormCE) -> TwoFormCE {
        let [a1, a2, a3] = &self.coeffs;
        let [b1, b2, b3] = &other.coeffs;
        TwoFormCE {
            coeffs: [a1 * b2 - a2 * b1, a3 * b1 - a1 * b3, a3 * b2 - a2 * b3],
        }
    }
}

impl TwoFormCE {
    pub fn new(c12: Rational, c31: Rational, c32: Rational) -> Self {
        TwoFormCE { coeffs: [c12, c31, c32] }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        TwoFormCE { coeffs: self.coeffs.clone().map(|c| c * s) }
    }

    /// Bilinear evaluation `β(u, v)`.
    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let [c12, c31, c32] = &self.coeffs;
        let minor = |i: usize, j: usize| &u[i] * &v[j] - &u[j] * &v[i];
        c12 * minor(0, 1) + c31 * minor(2, 0) + c32 * minor(2, 1)
    }

    /// Nonzero slots as `(label, coefficient)`.
    pub fn nonzero_slots(&self) -> Vec<(&'static str, Rational)> {
        TWO_FORM_SLOTS
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (*l, c.clone()))
            .collect()
    }
}

impl fmt::Debug for TwoFormCE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coeffs;
        write!(f, "{a}·θ¹∧θ² + {b}·θ∧θ¹ + {c}·θ∧θ²")
    }
}

macro_rules! form_binop {
    ($T:ident, $Trait:ident, $method:ident) => {
        impl $Trait<&$T> for &$T {
            type Output = $T;
            fn $method(self, rhs: &$T) -> $T {
                $T {
                    coeffs: [
                        $Trait::$method(&self.coeffs[0], &rhs.coeffs[0]),
                        $Trait::$method(&self.coeffs[1], &rhs.coeffs[1]),
                        $Trait::$method(&self.coeffs[2], &rhs.coeffs[2]),
                    ],
                }
            }
        }
        impl $Trait<$T> for $T {
            type Output = $T;
            fn $method(self, rhs: $T) -> $T {
                $Trait::$method(&self, &rhs)
            }
        }
    };
}

form_binop!(OneFormCE, Add, add);
form_binop!(OneFormCE, Sub, sub);
form_binop!(TwoFormCE, Add, add);
form_binop!(TwoFormCE, Sub, sub);

impl Neg for &TwoFormCE {
    type Output = TwoFormCE;
    fn neg(self) -> TwoFormCE {
        TwoFormCE { coeffs: self.coeffs.clone().map(|c| -c) }
    }
}
