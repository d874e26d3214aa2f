#pragma once

// Stability of the switched linear system x_{k+1} = S_{sigma(k)} x_k under
// arbitrary switching: decided by comparing the exact radius of the pair
// against 1, with an explicit indifference band for values at the boundary.

#include "rojsr/rankone_jsr.hpp"

namespace rojsr::stability {

enum class StabilityClass { Stable, Unstable, Marginal };

std::string class_name(StabilityClass c);

struct StabilityVerdict {
    StabilityClass cls = StabilityClass::Marginal;
    double rho = 0.0;
    double band = 0.0; ///< half-width of the Marginal band actually applied
    ExactJsrResult certificate;
};

/// Runs the certified solver and classifies rho against 1.  When certification
/// exhausts its budget the verdict falls back to the bounded estimate with the
/// band widened to max(tol, 1e-6); the certificate carries certified = false
/// so callers can see the downgrade.  Propagates RankTooHigh / ZeroMatrix from
/// solver construction.
StabilityVerdict decide_stability(const Matrix& S1, const Matrix& S2, double tol = 1e-9,
                                  long ell_budget = 20000);

/// Empirical growth exponent (1/N) log ||S(w^n)|| of the periodic switching
/// sequence repeating `base_word` n_periods times, N the total length.  The
/// product is renormalized once per period, so long horizons cannot overflow.
/// Returns -infinity when the period product is exactly zero.
double growth_exponent(const Matrix& S1, const Matrix& S2, const bounds::Word& base_word,
                       long n_periods);

} // namespace rojsr::stability
