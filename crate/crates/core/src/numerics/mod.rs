//! Shared numerical machinery: special functions, complex Gaussian integrals,
//! adaptive and Gauss–Hermite quadrature.

pub mod gaussian;
pub mod hermite;
pub mod quadrature;
pub mod special;

pub use gaussian::{gaussian_integral, QuadraticForm};
pub use quadrature::semi_infinite_quadrature;
pub use special::{dawson, erfi_damped};

/// Complex scalar used for displacements and overlaps.
pub type Complex = num_complex::Complex64;

/// Alias matching the domain vocabulary.
pub type ComplexAmplitude = Complex;

pub(crate) const I: Complex = Complex::new(0.0, 1.0);

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}
