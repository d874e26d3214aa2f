#include "rojsr/jsr_bounds.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace rojsr::bounds {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void validate_family(const std::vector<Matrix>& S, const char* where) {
    if (S.empty())
        throw std::invalid_argument(std::string(where) + ": family must be nonempty");
    for (const Matrix& A : S) {
        matcore::check_square_finite(A, where);
        if (A.rows() != S.front().rows())
            throw DimensionMismatch(std::string(where) + ": family members have mixed dimensions");
    }
}

double apply_norm(const Matrix& A, NormKind k) {
    return k == NormKind::Two ? matcore::two_norm(A) : matcore::frobenius_norm(A);
}

} // namespace

std::string Word::str() const {
    std::string s;
    s.reserve(letters.size());
    for (int c : letters)
        s += static_cast<char>('0' + c);
    return s;
}

std::string norm_name(NormKind k) {
    return k == NormKind::Two ? "two" : "frobenius";
}

std::vector<Word> lyndon_words(int max_len, int alphabet) {
    if (max_len < 1)
        throw std::invalid_argument("lyndon_words: max_len must be >= 1");
    if (alphabet < 1 || alphabet > 9)
        throw std::invalid_argument("lyndon_words: alphabet size must be in [1, 9]");

    std::vector<Word> out;
    std::vector<int> w{1}; // current Lyndon word, letters in {1..alphabet}
    while (true) {
        out.push_back(Word{w});
        // Duval step: extend w periodically to max_len, strip trailing maximal
        // letters, then increment the last survivor.
        std::vector<int> x;
        x.reserve(max_len);
        for (int i = 0; i < max_len; ++i)
            x.push_back(w[i % w.size()]);
        while (!x.empty() && x.back() == alphabet)
            x.pop_back();
        if (x.empty())
            break;
        ++x.back();
        w = std::move(x);
    }
    return out;
}

BoundsResult lower_bound(const std::vector<Matrix>& S, int depth) {
    validate_family(S, "lower_bound");
    if (depth < 1)
        throw std::invalid_argument("lower_bound: depth must be >= 1");
    const int K = static_cast<int>(S.size());
    const Eigen::Index d = S.front().rows();

    double max_log_norm = kNegInf;
    for (const Matrix& A : S) {
        const double n = matcore::two_norm(A);
        if (n > 0.0)
            max_log_norm = std::max(max_log_norm, std::log(n));
    }

    double best = -1.0;
    Word best_word;

    // Pre-necklace depth-first search (letters 0-based internally); a node of
    // length t with period p is a Lyndon word exactly when p == t.
    std::vector<int> a(static_cast<std::size_t>(depth) + 1, 0);
    std::vector<Matrix> prod(static_cast<std::size_t>(depth) + 1);
    prod[0] = Matrix::Identity(d, d);

    std::function<void(int, int)> rec = [&](int t, int p) {
        for (int c = a[t + 1 - p]; c < K; ++c) {
            a[t + 1] = c;
            const int np = (c == a[t + 1 - p]) ? p : t + 1;
            prod[t + 1] = prod[t] * S[c];
            if (np == t + 1) {
                const double rho = matcore::spectral_radius(prod[t + 1]);
                const double val = std::pow(rho, 1.0 / (t + 1));
                if (val > best) {
                    best = val;
                    best_word.letters.assign(a.begin() + 1, a.begin() + t + 2);
                    for (int& l : best_word.letters)
                        ++l;
                }
            }
            if (t + 1 < depth) {
                // Optimistic completion: a word of length n extending this
                // prefix has rho(S(w))^(1/n) <= (||prefix|| * M^(n-t-1))^(1/n),
                // which is monotone in n between the endpoints.
                const double pn = matcore::two_norm(prod[t + 1]);
                if (pn == 0.0)
                    continue; // every extension has zero product
                const double lp = std::log(pn);
                const double h_lo = (lp + max_log_norm) / (t + 2);
                const double h_hi = (lp + (depth - t - 1) * max_log_norm) / depth;
                const double optimistic = std::exp(std::max(h_lo, h_hi));
                if (best >= 0.0 && optimistic <= best)
                    continue;
                rec(t + 1, np);
            }
        }
    };
    rec(0, 1);

    BoundsResult r;
    r.lower = best;
    r.depth = depth;
    r.argmax_word = std::move(best_word);
    return r;
}

BoundsResult upper_bound(const std::vector<Matrix>& S, int depth, NormKind norm,
                         std::size_t budget) {
    validate_family(S, "upper_bound");
    if (depth < 1)
        throw std::invalid_argument("upper_bound: depth must be >= 1");
    const int K = static_cast<int>(S.size());
    const Eigen::Index d = S.front().rows();

    long double need = 0.0L;
    long double level = 1.0L;
    for (int n = 1; n <= depth; ++n) {
        level *= K;
        need += level;
        if (need > static_cast<long double>(budget)) {
            std::ostringstream os;
            os << "upper_bound: enumerating " << K << "^1..." << K << "^" << depth
               << " products needs more than the budget of " << budget;
            throw BudgetExceeded(os.str());
        }
    }

    // Products are kept renormalized to unit max-entry with the scale carried
    // in log space, so deep enumerations cannot overflow.
    std::vector<double> level_log_max(static_cast<std::size_t>(depth) + 1, kNegInf);
    std::vector<Matrix> prod(static_cast<std::size_t>(depth) + 1);
    std::vector<double> plog(static_cast<std::size_t>(depth) + 1, 0.0);
    prod[0] = Matrix::Identity(d, d);

    std::function<void(int)> rec = [&](int n) {
        for (int c = 0; c < K; ++c) {
            Matrix P = prod[n] * S[c];
            const double s = P.cwiseAbs().maxCoeff();
            if (s == 0.0)
                continue; // zero product; contributes norm 0 at every deeper level
            prod[n + 1] = P / s;
            plog[n + 1] = plog[n] + std::log(s);
            const double lvl = plog[n + 1] + std::log(apply_norm(prod[n + 1], norm));
            level_log_max[n + 1] = std::max(level_log_max[n + 1], lvl);
            if (n + 1 < depth)
                rec(n + 1);
        }
    };
    rec(0);

    double best_log = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= depth; ++n)
        best_log = std::min(best_log, level_log_max[n] / n);

    BoundsResult r;
    r.upper = std::exp(best_log);
    r.depth = depth;
    r.norm_id = norm_name(norm);
    return r;
}

BoundsResult compute_bounds(const std::vector<Matrix>& S, int depth, NormKind norm,
                            std::size_t budget) {
    BoundsResult lo = lower_bound(S, depth);
    BoundsResult up = upper_bound(S, depth, norm, budget);
    BoundsResult r;
    r.lower = lo.lower;
    r.upper = up.upper;
    r.depth = depth;
    r.argmax_word = std::move(lo.argmax_word);
    r.norm_id = std::move(up.norm_id);
    return r;
}

SandwichReport sandwich_check(const std::vector<Matrix>& S, double exact, int depth,
                              NormKind norm, double slack) {
    BoundsResult b = compute_bounds(S, depth, norm);
    SandwichReport rep;
    rep.lower = b.lower;
    rep.exact = exact;
    rep.upper = b.upper;
    rep.depth = depth;
    rep.ok = (b.lower <= exact + slack) && (exact <= b.upper + slack);
    if (!rep.ok) {
        std::ostringstream os;
        os.precision(17);
        os << "sandwich violated at depth " << depth << ": lower = " << b.lower
           << ", exact = " << exact << ", upper = " << b.upper;
        throw ViolatedSandwich(os.str(), b.lower, exact, b.upper);
    }
    return rep;
}

} // namespace rojsr::bounds
