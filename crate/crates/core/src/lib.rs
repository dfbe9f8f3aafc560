//! Numerical machinery for rescaled Appell polynomials.
//!
//! An Appell family is generated by an entire function `g` with `g(0) != 0`
//! through `exp(x z) / g(z) = sum p_n(x) z^n / n!`. This crate evaluates the
//! rescaled polynomials `pi_n(x) = p_n(n x)` three independent ways and keeps
//! them in agreement:
//!
//! * [`gf::eval_rescaled_direct`] — direct coefficient evaluation (the oracle),
//! * [`contour::evaluate`] — a principal-value integral over `[-pi, pi]` plus
//!   residues at the zeros of `g(e^{i theta}/x)` with nonnegative imaginary part,
//! * [`sdrep::evaluate`] — the same integrand pushed onto the steepest-descent
//!   curve through the saddle at `theta = 0`, with residues reclassified
//!   against that curve.
//!
//! On top of the exact representations sit the large-`n` asymptotic expansions
//! ([`asym`]), the zero-attractor construction from dominance comparisons
//! ([`attractor`]), and the Bernoulli specialization with its closed cosine
//! and polylogarithm forms ([`bernoulli`]).
//!
//! All potentially huge values (factors like `(e x)^n`) travel as
//! [`logc::LogComplex`], a complex number stored in log-magnitude/phase form.

pub mod asym;
pub mod attractor;
pub mod bernoulli;
pub mod contour;
pub mod gf;
pub mod logc;
pub mod poly;
pub mod quad;
pub mod sdpath;
pub mod sdrep;
pub mod series;

mod bigfloat;
mod roots;

pub use gf::GeneratingFunction;
pub use logc::LogComplex;
pub use poly::PolynomialC;

/// Complex double used throughout.
pub type C64 = num_complex::Complex64;
