#pragma once

// Brute-force lower/upper bounds on the joint spectral radius of a finite
// matrix family, independent of any structural assumption on the family.
// Lower bounds enumerate Lyndon words (spectral radius is invariant under
// cyclic rotation, and every word is a rotation of a power of a Lyndon word,
// so nothing is lost).  Upper bounds take the best norm-based level estimate.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "rojsr/matcore.hpp"

namespace rojsr::bounds {

/// A finite word over the alphabet {1, ..., K}; letter i selects S_i.
struct Word {
    std::vector<int> letters;

    bool operator==(const Word&) const = default;
    std::size_t size() const { return letters.size(); }
    std::string str() const; ///< digits concatenated, e.g. "11112"
};

enum class NormKind { Two, Frobenius };

std::string norm_name(NormKind k);

struct BoundsResult {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    int depth = 0;
    Word argmax_word;    ///< word realizing `lower`; empty when only the upper side ran
    std::string norm_id; ///< norm used by the upper side; empty when only the lower side ran
};

/// All Lyndon words of length <= max_len over {1..alphabet}, in lexicographic
/// order (Duval's generation).
std::vector<Word> lyndon_words(int max_len, int alphabet);

/// max over words w of length <= depth of rho(S(w))^(1/|w|), restricted to
/// Lyndon words (exact by cyclic invariance).  Branches whose optimistic
/// norm-completion cannot beat the incumbent are pruned.  Ties go to the
/// lexicographically smallest word.
BoundsResult lower_bound(const std::vector<Matrix>& S, int depth);

/// min over 1 <= n <= depth of max_{|w| = n} ||S(w)||^(1/n).  Throws
/// BudgetExceeded when the enumeration would need more than `budget` matrix
/// products (default 2^22).
BoundsResult upper_bound(const std::vector<Matrix>& S, int depth,
                         NormKind norm = NormKind::Two,
                         std::size_t budget = std::size_t(1) << 22);

/// Both sides at once, merged into a single result.
BoundsResult compute_bounds(const std::vector<Matrix>& S, int depth,
                            NormKind norm = NormKind::Two,
                            std::size_t budget = std::size_t(1) << 22);

struct SandwichReport {
    double lower = 0.0;
    double exact = 0.0;
    double upper = 0.0;
    int depth = 0;
    bool ok = false;
};

/// Checks lower - slack <= exact <= upper + slack against freshly computed
/// bounds.  Returns the report on success and throws ViolatedSandwich when the
/// ordering fails; a failure means either the exact engine or the enumeration
/// is wrong.
SandwichReport sandwich_check(const std::vector<Matrix>& S, double exact, int depth,
                              NormKind norm = NormKind::Two, double slack = 1e-9);

} // namespace rojsr::bounds
