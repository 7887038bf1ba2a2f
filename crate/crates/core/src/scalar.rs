//! Scalar abstractions shared by the real, complex and differentiated
//! evaluation paths.
//!
//! The rational formulas of the instanton/Painlevé correspondence are
//! written once, generically over [`Field`], and evaluated on `f64`,
//! [`Complex64`] or a second-order [`Jet`] (truncated Taylor series) when
//! derivatives along the flow are needed.

use core::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Arithmetic needed by the rational formulas.
pub trait Field:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;

    fn square(self) -> Self {
        self * self
    }

    fn cube(self) -> Self {
        self * self * self
    }
}

impl Field for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
}

impl Field for Complex64 {
    fn from_f64(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }
}

/// Truncated Taylor series `c₀ + c₁h + c₂h²` in one variable.
///
/// Arithmetic drops everything beyond `h²`, which is exact for first and
/// second derivatives of compositions of rational operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T> {
    pub c: [T; 3],
}

impl<T: Field> Jet<T> {
    pub fn new(c0: T, c1: T, c2: T) -> Self {
        Jet { c: [c0, c1, c2] }
    }

    pub fn constant(v: T) -> Self {
        let z = T::from_f64(0.0);
        Jet { c: [v, z, z] }
    }

    /// The independent variable itself, expanded about `v`.
    pub fn variable(v: T) -> Self {
        Jet::new(v, T::from_f64(1.0), T::from_f64(0.0))
    }

    pub fn value(&self) -> T {
        self.c[0]
    }

    pub fn first_derivative(&self) -> T {
        self.c[1]
    }

    pub fn second_derivative(&self) -> T {
        self.c[2] * T::from_f64(2.0)
    }
}

impl Jet<f64> {
    pub fn to_complex(self) -> Jet<Complex64> {
        Jet::new(
            Complex64::from(self.c[0]),
            Complex64::from(self.c[1]),
            Complex64::from(self.c[2]),
        )
    }
}

impl<T: Field> Add for Jet<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Jet::new(self.c[0] + o.c[0], self.c[1] + o.c[1], self.c[2] + o.c[2])
    }
}

impl<T: Field> Sub for Jet<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Jet::new(self.c[0] - o.c[0], self.c[1] - o.c[1], self.c[2] - o.c[2])
    }
}

impl<T: Field> Neg for Jet<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet::new(-self.c[0], -self.c[1], -self.c[2])
    }
}

impl<T: Field> Mul for Jet<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let [a0, a1, a2] = self.c;
        let [b0, b1, b2] = o.c;
        Jet::new(a0 * b0, a0 * b1 + a1 * b0, a0 * b2 + a1 * b1 + a2 * b0)
    }
}

impl<T: Field> Div for Jet<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let [a0, a1, a2] = self.c;
        let [b0, b1, b2] = o.c;
        let q0 = a0 / b0;
        let q1 = (a1 - q0 * b1) / b0;
        let q2 = (a2 - q0 * b2 - q1 * b1) / b0;
        Jet::new(q0, q1, q2)
    }
}

impl<T: Field> Field for Jet<T> {
    fn from_f64(v: f64) -> Self {
        Jet::constant(T::from_f64(v))
    }
}

/// Absolute value of a complex number, without requiring `std`.
pub(crate) fn cabs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}
