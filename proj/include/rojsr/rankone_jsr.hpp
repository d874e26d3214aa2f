#pragma once

// Exact generalized/joint spectral radius of a pair {S1, S2} of real d x d
// matrices in which one factor has rank one.  For such a pair the radius is
// attained on a product of the form F^l R (F the full-rank-role factor, R the
// rank-one-role factor), and with R = u v^T every candidate collapses to the
// scalar formula
//
//     rho(F^l R^m)^(1/(l+m)) = (|v^T F^l u| * |v^T u|^(m-1))^(1/(l+m)),
//
// so the search is one-dimensional in l and never forms a matrix power.

#include <mutex>
#include <optional>
#include <vector>

#include "rojsr/jsr_bounds.hpp"
#include "rojsr/matcore.hpp"

namespace rojsr {

/// Exponents of a candidate product S1^ell S2^m (in role order; see
/// ExactJsrResult::roles_swapped).
struct PowerPair {
    long ell = 0; ///< power of the full-rank-role factor, >= 0
    long m = 1;   ///< power of the rank-one-role factor, >= 1

    bool operator==(const PowerPair&) const = default;
};

enum class WitnessKind { Pair, PureS1, PureS2 };

/// Which product realizes the radius.  Pure witnesses always refer to the
/// original argument order; a Pair refers to role order.
struct Witness {
    WitnessKind kind = WitnessKind::Pair;
    PowerPair pair; ///< meaningful only when kind == Pair
};

struct ExactJsrResult {
    double value = 0.0;
    Witness witness;
    bool certified = false;
    long explored_ell_max = 0;
    double gap = 0.0;          ///< certified slack: unexplored candidates <= value * (1 + gap)
    bool roles_swapped = false; ///< true when S1 supplied the rank-one factor
};

/// Solver for one pair.  Construction factors the rank-one member (swapping
/// roles transparently when rank(S1) = 1 < rank(S2)) and all queries share an
/// append-only, internally synchronized memo of the scalar growth sequence.
class RankOnePairSolver {
public:
    /// Throws RankTooHigh when neither matrix has rank one and ZeroMatrix when
    /// both are zero.  A zero S2 (with any S1) is accepted: the radius is then
    /// rho(S1) exactly.
    RankOnePairSolver(Matrix S1, Matrix S2, double rank_tol = 1e-9);

    /// g(ell) = |v^T F^ell u|, computed by iterating the row vector v^T F^l
    /// with renormalization.  g(0) = |v^T u| = rho of the rank-one factor.
    double scalar_growth(long ell) const;

    /// (g(ell) * r^(m-1))^(1/(ell+m)) where r = |v^T u|; returns 0 when the
    /// product has spectral radius zero.
    double candidate_value(PowerPair pp) const;

    /// Same value through the dense route: spectral_radius(F^ell R^m)^(1/(ell+m)).
    /// Slow and overflow-prone by design; kept as an independent cross-check.
    /// Throws Overflow when ell + m exceeds the budget or the product leaves
    /// double range.
    double candidate_value_matrix_check(PowerPair pp, long total_power_budget = 200) const;

    /// Max of candidate_value over 0 <= ell <= ell_max, 1 <= m <= m_max: the
    /// value a truncated search would report.  Never certified; ties break
    /// toward the smallest ell + m, then the smallest ell.
    ExactJsrResult solve_bounded(long ell_max, long m_max) const;

    /// Exact radius with a termination certificate.  Scans m = 1 candidates in
    /// increasing ell (m >= 2 is dominated: the candidate value is monotone in
    /// m between the m = 1 value and r) and stops once a norm tail bound shows
    /// every unexplored candidate is <= value * (1 + tol).  On budget
    /// exhaustion the result carries certified = false and the best value
    /// found, which is still a valid lower estimate.
    ExactJsrResult solve_certified(double tol = 1e-9, long ell_budget = 20000) const;

    bool roles_swapped() const noexcept { return swapped_; }
    bool rank_one_is_zero() const noexcept { return zero_rank_one_; }
    /// Factors of the rank-one-role matrix; throws ZeroMatrix in the zero-S2
    /// degenerate case.
    const matcore::RankOneFactors& factors() const;
    double rank_one_radius() const noexcept { return r_; }
    double full_role_radius() const noexcept { return rho_full_; }
    const Matrix& full_role() const noexcept { return full_; }
    const Matrix& rank_one_role() const noexcept { return ro_; }

private:
    struct BestCandidate;

    void ensure_growth_locked(long ell) const;
    double log_growth(long ell) const;   ///< log g(ell), -inf when g(ell) = 0
    double log_row_norm(long ell) const; ///< log ||v^T F^ell||_2, -inf once zero
    double candidate_from_log(long ell, long m) const;
    Witness pure_witness(bool full_role) const;
    ExactJsrResult make_result(const BestCandidate& best, bool certified, long explored,
                               double gap) const;

    Matrix full_;
    Matrix ro_;
    std::optional<matcore::RankOneFactors> factors_;
    double r_ = 0.0;
    double log_r_ = 0.0;
    double rho_full_ = 0.0;
    double u_norm_ = 0.0;
    bool swapped_ = false;
    bool zero_rank_one_ = false;

    // growth memo: log_g_[l] = log g(l), log_wnorm_[l] = log ||v^T F^l||_2;
    // w_ is the renormalized row vector v^T F^l for the largest computed l,
    // with accumulated log scale w_log_.
    mutable std::mutex mu_;
    mutable std::vector<double> log_g_;
    mutable std::vector<double> log_wnorm_;
    mutable Eigen::RowVectorXd w_;
    mutable double w_log_ = 0.0;
    mutable bool w_zero_ = false;
};

/// Expands a witness into an explicit word over {1, 2} in the original letter
/// order, repeated `repeat` times.  A Pair (ell, m) becomes the block
/// 1^ell 2^m (or 2^ell 1^m when roles were swapped); pure witnesses become the
/// single letter.
bounds::Word optimal_word(const ExactJsrResult& result, long repeat = 1);

} // namespace rojsr
