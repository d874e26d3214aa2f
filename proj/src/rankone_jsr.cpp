#include "rojsr/rankone_jsr.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace rojsr {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
} // namespace

// Incumbent candidate with a deterministic preference order: strictly larger
// value wins; on exact ties a pure power beats a mixed pair, and pairs prefer
// the smaller ell + m, then the smaller ell.  The order is comparator-based,
// so the outcome does not depend on scan order.
struct RankOnePairSolver::BestCandidate {
    bool set = false;
    double value = 0.0;
    bool pure = false;
    bool pure_full = false;
    PowerPair pair;

    void consider_pure(double v, bool full_role) {
        if (!set || v > value) {
            set = true;
            value = v;
            pure = true;
            pure_full = full_role;
        }
    }

    void consider_pair(double v, long ell, long m) {
        if (!set || v > value) {
            set = true;
            value = v;
            pure = false;
            pair = PowerPair{ell, m};
            return;
        }
        if (v == value && !pure) {
            const long ks = ell + m;
            const long bs = pair.ell + pair.m;
            if (ks < bs || (ks == bs && ell < pair.ell))
                pair = PowerPair{ell, m};
        }
    }
};

RankOnePairSolver::RankOnePairSolver(Matrix S1, Matrix S2, double rank_tol) {
    matcore::check_square_finite(S1, "RankOnePairSolver");
    matcore::check_square_finite(S2, "RankOnePairSolver");
    if (S1.rows() != S2.rows())
        throw DimensionMismatch("RankOnePairSolver: S1 and S2 dimensions differ");

    const bool z1 = (S1.norm() == 0.0);
    const bool z2 = (S2.norm() == 0.0);
    if (z1 && z2)
        throw ZeroMatrix("RankOnePairSolver: both matrices are zero");

    if (z2) {
        // Every word containing the second letter collapses to zero, so the
        // radius of the pair is exactly rho(S1).
        full_ = std::move(S1);
        ro_ = std::move(S2);
        zero_rank_one_ = true;
        log_r_ = kNegInf;
        rho_full_ = matcore::spectral_radius(full_);
        return;
    }

    try {
        factors_ = matcore::rank_one_factorize(S2, rank_tol);
        full_ = std::move(S1);
        ro_ = std::move(S2);
    } catch (const RankTooHigh& e2) {
        try {
            factors_ = matcore::rank_one_factorize(S1, rank_tol);
        } catch (const std::exception&) {
            throw RankTooHigh(std::string("RankOnePairSolver: neither matrix has rank one (") +
                              e2.what() + ")");
        }
        swapped_ = true;
        full_ = std::move(S2);
        ro_ = std::move(S1);
    }

    // r is used as the solver's value of rho(rank-one factor) everywhere, so
    // exact ties (e.g. g(0) against the pure witness) resolve bitwise.
    r_ = std::abs(factors_->inner());
    log_r_ = r_ > 0.0 ? std::log(r_) : kNegInf;
    u_norm_ = factors_->u.norm();
    rho_full_ = matcore::spectral_radius(full_);

    w_ = factors_->v.transpose(); // unit norm by the factorization contract
    log_g_.push_back(log_r_);
    log_wnorm_.push_back(0.0);
}

const matcore::RankOneFactors& RankOnePairSolver::factors() const {
    if (!factors_)
        throw ZeroMatrix("RankOnePairSolver: the rank-one-role matrix is zero; no factors exist");
    return *factors_;
}

void RankOnePairSolver::ensure_growth_locked(long ell) const {
    while (static_cast<long>(log_g_.size()) <= ell) {
        if (w_zero_) {
            log_g_.push_back(kNegInf);
            log_wnorm_.push_back(kNegInf);
            continue;
        }
        Eigen::RowVectorXd next = w_ * full_;
        const double s = next.norm();
        if (s == 0.0) {
            w_zero_ = true;
            log_g_.push_back(kNegInf);
            log_wnorm_.push_back(kNegInf);
            continue;
        }
        w_ = next / s;
        w_log_ += std::log(s);
        const double ip = std::abs((w_ * factors_->u).value());
        log_g_.push_back(ip > 0.0 ? w_log_ + std::log(ip) : kNegInf);
        log_wnorm_.push_back(w_log_);
    }
}

double RankOnePairSolver::log_growth(long ell) const {
    std::lock_guard<std::mutex> lock(mu_);
    ensure_growth_locked(ell);
    return log_g_[ell];
}

double RankOnePairSolver::log_row_norm(long ell) const {
    std::lock_guard<std::mutex> lock(mu_);
    ensure_growth_locked(ell);
    return log_wnorm_[ell];
}

double RankOnePairSolver::scalar_growth(long ell) const {
    if (ell < 0)
        throw std::invalid_argument("scalar_growth: ell must be >= 0");
    if (zero_rank_one_)
        return 0.0;
    if (ell == 0)
        return r_;
    const double lg = log_growth(ell);
    return lg == kNegInf ? 0.0 : std::exp(lg);
}

double RankOnePairSolver::candidate_from_log(long ell, long m) const {
    if (ell < 0)
        throw std::invalid_argument("candidate_value: ell must be >= 0");
    if (m < 1)
        throw std::invalid_argument("candidate_value: m must be >= 1");
    if (zero_rank_one_)
        return 0.0;
    if (ell == 0)
        return r_; // (r * r^(m-1))^(1/m) = r exactly
    double lg = log_growth(ell);
    if (lg == kNegInf)
        return 0.0;
    if (m > 1) {
        if (r_ == 0.0)
            return 0.0;
        lg += static_cast<double>(m - 1) * log_r_;
    }
    return std::exp(lg / static_cast<double>(ell + m));
}

double RankOnePairSolver::candidate_value(PowerPair pp) const {
    return candidate_from_log(pp.ell, pp.m);
}

double RankOnePairSolver::candidate_value_matrix_check(PowerPair pp, long total_power_budget) const {
    if (pp.ell < 0 || pp.m < 1)
        throw std::invalid_argument("candidate_value_matrix_check: need ell >= 0 and m >= 1");
    if (pp.ell + pp.m > total_power_budget) {
        std::ostringstream os;
        os << "candidate_value_matrix_check: ell + m = " << pp.ell + pp.m
           << " exceeds the power budget of " << total_power_budget;
        throw Overflow(os.str());
    }
    Matrix P = matcore::mat_pow(full_, pp.ell) * matcore::mat_pow(ro_, pp.m);
    if (!P.allFinite())
        throw Overflow("candidate_value_matrix_check: dense matrix power left double range");
    const double rho = matcore::spectral_radius(P);
    return std::pow(rho, 1.0 / static_cast<double>(pp.ell + pp.m));
}

Witness RankOnePairSolver::pure_witness(bool full_role) const {
    Witness w;
    w.kind = (full_role != swapped_) ? WitnessKind::PureS1 : WitnessKind::PureS2;
    return w;
}

ExactJsrResult RankOnePairSolver::make_result(const BestCandidate& best, bool certified,
                                              long explored, double gap) const {
    ExactJsrResult res;
    res.value = best.value;
    if (best.pure)
        res.witness = pure_witness(best.pure_full);
    else if (best.pair.ell == 0)
        res.witness = pure_witness(false); // F^0 R^m is a pure power of the rank-one factor
    else
        res.witness = Witness{WitnessKind::Pair, best.pair};
    res.certified = certified;
    res.explored_ell_max = explored;
    res.gap = gap;
    res.roles_swapped = swapped_;
    return res;
}

ExactJsrResult RankOnePairSolver::solve_bounded(long ell_max, long m_max) const {
    if (ell_max < 0)
        throw std::invalid_argument("solve_bounded: ell_max must be >= 0");
    if (m_max < 1)
        throw std::invalid_argument("solve_bounded: m_max must be >= 1");

    if (zero_rank_one_) {
        BestCandidate best;
        best.consider_pure(rho_full_, true);
        return make_result(best, false, ell_max, 0.0);
    }

    // The literal truncated search: the rectangle of candidates and nothing
    // else.  A short rectangle can genuinely miss the radius (and even sit
    // below rho(S1)); solve_certified is the mode that closes the search.
    BestCandidate best;
    for (long ell = 0; ell <= ell_max; ++ell)
        for (long m = 1; m <= m_max; ++m)
            best.consider_pair(candidate_from_log(ell, m), ell, m);
    return make_result(best, false, ell_max, 0.0);
}

ExactJsrResult RankOnePairSolver::solve_certified(double tol, long ell_budget) const {
    if (!(tol > 0.0))
        throw std::invalid_argument("solve_certified: tol must be positive");
    if (ell_budget < 0)
        throw std::invalid_argument("solve_certified: ell_budget must be >= 0");

    if (zero_rank_one_) {
        BestCandidate best;
        best.consider_pure(rho_full_, true);
        return make_result(best, true, 0, 0.0);
    }

    BestCandidate best;
    best.consider_pure(rho_full_, true);
    best.consider_pure(r_, false);

    // Norm ladder for the full-role factor: logN[j] = log ||F^(2^j)||_2 with
    // the powers kept renormalized.  For any level J with beta = exp(logN[J] /
    // 2^J) the bound ||F^s||_2 <= C_J * beta^s holds for every s >= 0, where
    // log C_J = sum_{j<J} max(0, logN[j] - 2^j log beta): split s into
    // multiples of 2^J (each contributes beta^(2^J) exactly) plus binary
    // remainder levels (each contributes at most its slack factor).
    constexpr int kMaxLevels = 44;
    std::vector<double> logN;
    Matrix P;
    double plog = 0.0;
    bool dead = false; // a squared power became exactly zero; ladder stops
    {
        const double s0 = full_.cwiseAbs().maxCoeff();
        if (s0 == 0.0) {
            dead = true;
        } else {
            P = full_ / s0;
            plog = std::log(s0);
            logN.push_back(plog + std::log(matcore::two_norm(P)));
        }
    }
    auto advance_ladder = [&]() {
        if (dead || static_cast<int>(logN.size()) >= kMaxLevels)
            return;
        Matrix Q = P * P;
        const double s = Q.cwiseAbs().maxCoeff();
        if (s == 0.0) {
            dead = true;
            return;
        }
        P = Q / s;
        plog = 2.0 * plog + std::log(s);
        logN.push_back(plog + std::log(matcore::two_norm(P)));
    };

    const double log_u = std::log(u_norm_);

    long ell = 0;
    while (ell <= ell_budget) {
        best.consider_pair(candidate_from_log(ell, 1), ell, 1);

        // Termination test.  Candidates with m >= 2 are dominated: their value
        // is monotone in m between the m = 1 value and r (both <= best), so
        // only the m = 1 tail over ell' > ell needs a bound.
        const double lwn = log_row_norm(ell);
        if (lwn == kNegInf) {
            // v^T F^ell vanished exactly, so every remaining candidate is 0.
            return make_result(best, true, ell, 0.0);
        }
        const double alpha = best.value;
        const double threshold = alpha * (1.0 + tol);
        if (threshold > 0.0 && !logN.empty()) {
            // g(ell') <= ||v^T F^ell|| * ||F^(ell'-ell)|| * ||u|| and the
            // level bound give T(ell') = (D * beta^(ell'-ell))^(1/(ell'+1))
            // with D = ||w|| ||u|| C_J; T is monotone between its endpoints,
            // so sup over ell' > ell is max(T(ell+1), beta).  Levels trade
            // beta (smaller for large J) against C_J (larger), so try all.
            bool stopped = false;
            double slack = 0.0;
            for (std::size_t J = 0; J < logN.size() && !stopped; ++J) {
                const double lb = logN[J] / std::ldexp(1.0, static_cast<int>(J));
                const double beta = std::exp(lb);
                if (!(beta <= threshold))
                    continue;
                double logC = 0.0;
                for (std::size_t j = 0; j < J; ++j)
                    logC += std::max(0.0, logN[j] - std::ldexp(1.0, static_cast<int>(j)) * lb);
                const double logT = (lwn + log_u + logC + lb) / static_cast<double>(ell + 2);
                const double tail = std::max(beta, std::exp(logT));
                if (tail <= threshold) {
                    stopped = true;
                    slack = std::max(0.0, tail / alpha - 1.0);
                }
            }
            if (stopped)
                return make_result(best, true, ell, slack);
        }
        advance_ladder(); // one level per failed test; bounded total work
        ++ell;
    }
    return make_result(best, false, ell_budget, 0.0);
}

bounds::Word optimal_word(const ExactJsrResult& result, long repeat) {
    if (repeat < 1)
        throw std::invalid_argument("optimal_word: repeat must be >= 1");
    const int first = result.roles_swapped ? 2 : 1;
    const int second = result.roles_swapped ? 1 : 2;

    std::vector<int> block;
    switch (result.witness.kind) {
    case WitnessKind::PureS1:
        block.push_back(1);
        break;
    case WitnessKind::PureS2:
        block.push_back(2);
        break;
    case WitnessKind::Pair: {
        const PowerPair& pp = result.witness.pair;
        if (pp.ell < 0 || pp.m < 1)
            throw std::invalid_argument("optimal_word: malformed witness pair");
        block.insert(block.end(), static_cast<std::size_t>(pp.ell), first);
        block.insert(block.end(), static_cast<std::size_t>(pp.m), second);
        break;
    }
    }

    bounds::Word w;
    w.letters.reserve(block.size() * static_cast<std::size_t>(repeat));
    for (long i = 0; i < repeat; ++i)
        w.letters.insert(w.letters.end(), block.begin(), block.end());
    return w;
}

} // namespace rojsr
