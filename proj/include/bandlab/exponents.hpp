#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/rational.hpp>

namespace bandlab {

/// Exact rational exponents, as fractions of n.
using Rat = boost::rational<long long>;

namespace detail {

// Per-k exponent of the one-factor sum T_k, taking for each k the best of the
// three mechanisms the estimate is assembled from.  All quantities are
// fractions of n; k ranges over [0, u+v].
//
//  - pointwise rank bound:   1 - max(0, 1-2k)/2   (trivial 1 once k >= 1/2)
//  - second-moment bound:    max(5/4 - k/2, 1/2 + k/2), needs k >= 1/2
//  - averaged-defect bound:  max(7/8 + k/8, 19/20); the inner split threshold
//    3/10 + k/3 must dominate 3(1-k)/4, i.e. k >= 27/65
inline Rat typeI_pointwise(Rat k) {
    if (k >= Rat(1, 2)) return Rat(1);
    return Rat(1, 2) + k;
}

inline bool typeI_moment_valid(Rat k) { return k >= Rat(1, 2); }
inline Rat typeI_moment(Rat k) {
    return std::max(Rat(5, 4) - k / 2, Rat(1, 2) + k / 2);
}

inline bool typeI_average_valid(Rat k) { return k >= Rat(27, 65); }
inline Rat typeI_average(Rat k) {
    return std::max(Rat(7, 8) + k / 8, Rat(19, 20));
}

inline Rat typeI_best_at(Rat k) {
    Rat best = typeI_pointwise(k);
    if (typeI_moment_valid(k)) best = std::min(best, typeI_moment(k));
    if (typeI_average_valid(k)) best = std::min(best, typeI_average(k));
    return best;
}

}  // namespace detail

/// Exponent of Sigma_1 for cutoffs (u, v): the worst multiplier degree in
/// [0, u+v] under the best applicable mechanism.  Piecewise linear in k, so
/// the maximum is scanned over the breakpoints.
inline Rat typeI_exponent(Rat u, Rat v) {
    const Rat w = u + v;
    static const Rat breakpoints[] = {Rat(0),      Rat(27, 65), Rat(3, 7),
                                      Rat(9, 20),  Rat(1, 2),   Rat(3, 5),
                                      Rat(3, 4),   Rat(9, 10),  Rat(1)};
    Rat best(0);
    bool first = true;
    auto consider = [&](Rat k) {
        const Rat e = detail::typeI_best_at(k);
        if (first || e > best) best = e;
        first = false;
    };
    for (const Rat& k : breakpoints)
        if (k <= w) consider(k);
    consider(w);
    return best;
}

struct ExponentAudit {
    Rat type_one;         // Sigma_1 exponent
    Rat type_two_first;   // 3/2 - u - v/2, from q^(n-(u+v)/2) (q^(n-u))^(1/2)
    Rat type_two_second;  // 7/4 - u/2 - v, from q^(n-(u+v)/2) (q^(3n/2-v))^(1/2)
    Rat maximum;
    bool saving;  // maximum < 1
};

/// Evaluates the three exponent expressions at cutoffs (u, v), exactly.
inline ExponentAudit exponent_audit(Rat u, Rat v) {
    if (u < Rat(0) || v < Rat(0))
        throw std::invalid_argument("exponent_audit: cutoffs must be nonnegative");
    if (u + v >= Rat(1))
        throw std::invalid_argument("exponent_audit: invalid cutoffs, need u + v < 1");
    ExponentAudit a{typeI_exponent(u, v), Rat(3, 2) - u - v / 2, Rat(7, 4) - u / 2 - v,
                    Rat(0), false};
    a.maximum = std::max({a.type_one, a.type_two_first, a.type_two_second});
    a.saving = a.maximum < Rat(1);
    return a;
}

struct ExponentGridResult {
    Rat u, v, maximum;
};

/// Minimizes the maximum exponent over all cutoff pairs with denominators up
/// to max_den.  Ties keep the first pair in scan order.
inline ExponentGridResult exponent_grid_search(int max_den = 20) {
    std::vector<Rat> grid;
    for (long long den = 1; den <= max_den; ++den)
        for (long long num = 0; num < den; ++num)
            if (std::gcd(num, den) == 1) grid.push_back(Rat(num, den));

    ExponentGridResult best{Rat(0), Rat(0), Rat(2)};
    bool found = false;
    for (const Rat& u : grid)
        for (const Rat& v : grid) {
            if (u + v >= Rat(1)) continue;
            const ExponentAudit a = exponent_audit(u, v);
            if (!found || a.maximum < best.maximum) {
                best = ExponentGridResult{u, v, a.maximum};
                found = true;
            }
        }
    return best;
}

}  // namespace bandlab
