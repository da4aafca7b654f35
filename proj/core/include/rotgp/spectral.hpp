#pragma once

#include <array>

#include "rotgp/field.hpp"

namespace rotgp {

// Pseudospectral calculus on the periodic box. Every operator is exact for
// trigonometric polynomials below the Nyquist frequency.

ComplexField to_spectrum(const ComplexField& f);
ComplexField to_spectrum(const ScalarField& f);
ComplexField from_spectrum(const ComplexField& fhat);
ScalarField real_from_spectrum(const ComplexField& fhat);

VectorField grad(const ScalarField& f);
ComplexVector grad(const ComplexField& f);
ScalarField div(const VectorField& v);
/// Scalar curl d1 v2 - d2 v1.
ScalarField curl2d(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
ComplexField laplacian(const ComplexField& f);
ScalarField partial(const ScalarField& f, int axis);

/// Perpendicular gradient (-d2 f, d1 f); divergence free by construction.
VectorField perp_grad(const ScalarField& stream);

/// Returns g with g(x) = f(x + shift), exact for band-limited f.
ComplexField translate(const ComplexField& f, Vec2 shift);
ScalarField translate(const ScalarField& f, Vec2 shift);

/// Zero the modes outside the two-thirds band.
ComplexField dealias(const ComplexField& f);
void dealias_spectrum(ComplexField& fhat);
/// Same band centred on mode `centre` (indices taken modulo N).
void dealias_spectrum(ComplexField& fhat, std::array<int, 2> centre);

/// Fraction of spectral energy above half of the two-thirds band (|m| > N/6
/// along either axis). Grows when gradients steepen.
double spectral_tail_fraction(const ScalarField& f);

// Quadrature: the trapezoid rule on the periodic box.
double integrate(const ScalarField& f);
double l2_norm(const ScalarField& f);
double l2_norm(const ComplexField& f);
double l2_norm(const VectorField& v);
double l1_norm(const ScalarField& f);
/// L2 norm computed from the spectrum (Parseval).
double spectral_l2_norm(const ComplexField& f);
double max_abs(const ScalarField& f);
double max_abs(const ComplexField& f);
double max_norm(const VectorField& v);

}  // namespace rotgp
