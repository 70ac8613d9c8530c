//! Floating-point cross-checks that the exact layer cannot express:
//! the integral equation, the radial Fourier transform, the sphere measure
//! and state overlaps.

mod checks;
mod quadrature;
mod special;

pub use checks::{
    fourier_radial_check, fourier_ratio_spread, integral_equation_residual, integral_equation_residual_for_profile,
    overlap_matrix_check, radial_measure_integral, sphere_area, sphere_area_check, sphere_measure_check,
    state_overlap, CheckReport, MeasureIntegral, Tolerances, FOURIER_GRID, INTEGRAL_GRID,
};
pub use quadrature::{graded_panels, sphere_average, GaussLegendre, QuadratureSpec, Refinement, Scheme};
pub use special::{legendre_q, spherical_bessel_j};
