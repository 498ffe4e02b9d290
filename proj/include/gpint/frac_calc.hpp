#pragma once

#include "gpint/grid_function.hpp"

namespace gpint {

struct BesovParams {
    double beta;
};

/// Weyl-form left Riemann-Liouville fractional derivative of order beta on
/// the grid, with product-integration (linear increments against the exact
/// kernel) for the singular integral. Value at s = 0 is 0 by convention.
/// No zero-subtraction is applied; callers working with f_{0+} subtract f(0).
GridFunction rl_derivative_left(const GridFunction& f, double beta);

/// Right fractional derivative of order `order`, applied to
/// g_{t-}(s) = g(s) - g(t) on [0, t]; t must be a grid point. Value at s = t
/// is 0 by convention. The complex unit prefactor of the Weyl form is dropped.
GridFunction rl_derivative_right(const GridFunction& g, double order, double t);

/// Left Riemann-Liouville fractional integral of order beta (test oracle for
/// the left-inverse property).
GridFunction rl_integral_left(const GridFunction& f, double beta);

/// Two-term fractional Besov seminorm of f restricted to [0, t].
double besov_norm_w2(const GridFunction& f, double beta, double t);

struct W1Result {
    double value = 0.0;
    bool overflow = false;
};

/// Supremum-type fractional Besov seminorm. The overflow flag is set when the
/// grid value exceeds the sentinel or keeps growing under grid coarsening
/// comparison (an empirical stand-in for non-membership).
W1Result besov_norm_w1(const GridFunction& g, double beta, double sentinel = 1e6);

/// Generalized Lebesgue-Stieltjes integral of f against g over [0, t]:
/// the Lebesgue integral of the product of the two fractional derivatives,
/// plus the boundary term f(0) (g(t) - g(0)).
double gls_integral(const GridFunction& f, const GridFunction& g, double beta, double t);

struct GlsResult {
    double value = 0.0;
    bool overflow_f = false;
    bool overflow_g = false;
};

/// gls_integral plus empirical admissibility flags: a derivative whose sup
/// grows by more than 10x against one grid coarsening is flagged.
GlsResult gls_integral_checked(const GridFunction& f, const GridFunction& g, double beta,
                               double t);

/// A-priori bound sup_s |D^{1-beta} g_{t-}(s)| * ||f||_{t,beta}.
double gls_bound(const GridFunction& f, const GridFunction& g, double beta, double t);

/// Default splitting order for integrands against alpha-Holder integrators:
/// interior of the admissible window (1 - alpha, 1/2).
double default_beta(double alpha);

}  // namespace gpint
