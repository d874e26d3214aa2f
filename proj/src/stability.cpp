#include "rojsr/stability.hpp"

#include <cmath>
#include <limits>

namespace rojsr::stability {

std::string class_name(StabilityClass c) {
    switch (c) {
    case StabilityClass::Stable:
        return "Stable";
    case StabilityClass::Unstable:
        return "Unstable";
    case StabilityClass::Marginal:
        return "Marginal";
    }
    return "Marginal";
}

StabilityVerdict decide_stability(const Matrix& S1, const Matrix& S2, double tol,
                                  long ell_budget) {
    if (!(tol > 0.0))
        throw std::invalid_argument("decide_stability: tol must be positive");
    RankOnePairSolver solver(S1, S2);
    ExactJsrResult res = solver.solve_certified(tol, ell_budget);

    StabilityVerdict v;
    v.rho = res.value;
    v.band = res.certified ? tol : std::max(tol, 1e-6);
    v.certificate = res;
    if (res.value < 1.0 - v.band)
        v.cls = StabilityClass::Stable;
    else if (res.value > 1.0 + v.band)
        v.cls = StabilityClass::Unstable;
    else
        v.cls = StabilityClass::Marginal;
    return v;
}

double growth_exponent(const Matrix& S1, const Matrix& S2, const bounds::Word& base_word,
                       long n_periods) {
    matcore::check_square_finite(S1, "growth_exponent");
    matcore::check_square_finite(S2, "growth_exponent");
    if (S1.rows() != S2.rows())
        throw DimensionMismatch("growth_exponent: S1 and S2 dimensions differ");
    if (base_word.letters.empty())
        throw std::invalid_argument("growth_exponent: base word must be nonempty");
    for (int c : base_word.letters)
        if (c != 1 && c != 2)
            throw std::invalid_argument("growth_exponent: word letters must be 1 or 2");
    if (n_periods < 1)
        throw std::invalid_argument("growth_exponent: n_periods must be >= 1");

    const Eigen::Index d = S1.rows();
    Matrix P = Matrix::Identity(d, d);
    double acc = 0.0;
    for (long k = 0; k < n_periods; ++k) {
        for (int c : base_word.letters)
            P = P * (c == 1 ? S1 : S2);
        const double s = matcore::two_norm(P);
        if (s == 0.0)
            return -std::numeric_limits<double>::infinity();
        acc += std::log(s);
        P /= s;
    }
    return acc / static_cast<double>(n_periods * static_cast<long>(base_word.letters.size()));
}

} // namespace rojsr::stability
