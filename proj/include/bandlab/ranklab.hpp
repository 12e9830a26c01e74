#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "bandlab/bandform.hpp"
#include "bandlab/budget.hpp"
#include "bandlab/matrix.hpp"

namespace bandlab {

struct ExceptionalPairError : std::domain_error {
    ExceptionalPairError() : std::domain_error("exceptional pair: g1* g1 = g2* g2") {}
};

/// (N+1) x (N+1) Toeplitz matrix with entry (a,b) = H_{b-a}.
inline MatrixFq toeplitz_from_symbol(const LaurentSymbol& H, int N) {
    if (N < 0) throw std::invalid_argument("toeplitz_from_symbol: N must be >= 0");
    MatrixFq m(H.field(), N + 1, N + 1);
    for (int a = 0; a <= N; ++a)
        for (int b = 0; b <= N; ++b) m.at(a, b) = H.coeff(b - a);
    return m;
}

/// Matrix of the polar form of h -> Q_{A,2}(gh) on V_N, i.e. of
/// B_{g,N}(h,w) = B_A(gh, gw).  Equals 2 * Toeplitz(A g(z) g(1/z), N); the
/// factor 2 is nonzero for odd q and never affects ranks.
inline MatrixFq polar_matrix_multiplier(const BandSpec& spec, const Poly& g, int N) {
    if (g.is_zero()) throw std::invalid_argument("polar_matrix_multiplier: zero multiplier");
    const LaurentSymbol sym = symbol_A(spec) * autocorrelation_symbol(g);
    return Fq::from_int(spec.field(), 2) * toeplitz_from_symbol(sym, N);
}

/// Radical of a polar form on V_N: its dimension and an explicit basis.
struct RadicalReport {
    int dimension;
    std::vector<Poly> basis;  // elements of V_N annihilating the form
};

namespace detail {

inline RadicalReport radical_from_matrix(const MatrixFq& m) {
    const auto kernel = nullspace(m);
    RadicalReport rep{int(kernel.size()), {}};
    rep.basis.reserve(kernel.size());
    for (const auto& v : kernel) rep.basis.emplace_back(m.field(), v);
    return rep;
}

}  // namespace detail

/// Delta_A(g;N) = N + 1 - rank B_{g,N}, with the radical basis.
inline RadicalReport delta_A(const BandSpec& spec, const Poly& g, int N) {
    return detail::radical_from_matrix(polar_matrix_multiplier(spec, g, N));
}

/// Radical computed through the gap criterion instead of the polar matrix:
/// with g = t^r g0, g0(0) != 0, and F = P g0 g0*, h lies in the radical iff
/// [z^j] F(z) h(z) = 0 for d0 <= j <= d0 + N, d0 = deg g0 + m.
inline RadicalReport radical_via_gap(const BandSpec& spec, const Poly& g, int N) {
    if (g.is_zero()) throw std::invalid_argument("radical_via_gap: zero multiplier");
    if (N < 0) throw std::invalid_argument("radical_via_gap: N must be >= 0");
    const auto [r, g0] = remove_zero_factor(g);
    (void)r;
    const Poly F = symbol_P(spec) * g0 * reciprocal_star(g0);
    const int d0 = g0.degree() + spec.bandwidth();

    MatrixFq m(spec.field(), N + 1, N + 1);
    for (int j = 0; j <= N; ++j)
        for (int a = 0; a <= N; ++a) m.at(j, a) = F.coeff(d0 + j - a);
    return detail::radical_from_matrix(m);
}

/// Element of the reciprocal space R_d: T of degree <= 2d with
/// T_s = T_{2d-s}, stored through the half coordinates x_0..x_d.
class ReciprocalSymbol {
public:
    ReciprocalSymbol(const FieldSpec& field, int d, std::vector<Fq> half)
        : field_(&field), d_(d), half_(std::move(half)) {
        if (d_ < 0) throw std::invalid_argument("ReciprocalSymbol: centre must be >= 0");
        if (half_.size() != std::size_t(d_) + 1)
            throw std::invalid_argument("ReciprocalSymbol: need d+1 half coordinates");
        for (const Fq& x : half_)
            if (!x.attached() || !x.field().same(field))
                throw std::invalid_argument("ReciprocalSymbol: coefficient from a different field");
    }

    static ReciprocalSymbol zero(const FieldSpec& field, int d) {
        return ReciprocalSymbol(field, d, std::vector<Fq>(d + 1, Fq::zero(field)));
    }

    /// Half coordinates from the base-q digits of idx (x_0 least significant).
    static ReciprocalSymbol from_index(const FieldSpec& field, int d, std::uint64_t idx) {
        std::vector<Fq> half;
        half.reserve(d + 1);
        for (int a = 0; a <= d; ++a) {
            half.push_back(Fq::from_index(field, idx % field.q()));
            idx /= field.q();
        }
        return ReciprocalSymbol(field, d, std::move(half));
    }

    /// Interpret a palindromic polynomial (T_s = T_{2d-s}) as a member of R_d.
    static ReciprocalSymbol from_poly(const Poly& T, int d) {
        const FieldSpec& F = T.field();
        if (T.degree() > 2 * d)
            throw std::invalid_argument("ReciprocalSymbol: degree exceeds 2d");
        std::vector<Fq> half(d + 1, Fq::zero(F));
        for (int a = 0; a <= d; ++a) {
            const Fq up = T.coeff(d + a), down = T.coeff(d - a);
            if (up != down)
                throw std::invalid_argument("ReciprocalSymbol: polynomial is not reciprocal about d");
            half[a] = up;
        }
        return ReciprocalSymbol(F, d, std::move(half));
    }

    const FieldSpec& field() const { return *field_; }
    int centre() const { return d_; }
    const std::vector<Fq>& half() const { return half_; }

    Fq coeff(int s) const {
        const int a = s < d_ ? d_ - s : s - d_;
        if (s < 0 || a > d_) return Fq::zero(*field_);
        return half_[a];
    }

    bool is_zero() const {
        for (const Fq& x : half_)
            if (!x.is_zero()) return false;
        return true;
    }

    Poly to_poly() const {
        std::vector<Fq> c(2 * d_ + 1, Fq::zero(*field_));
        for (int s = 0; s <= 2 * d_; ++s) c[s] = coeff(s);
        return Poly(*field_, std::move(c));
    }

private:
    const FieldSpec* field_;
    int d_;
    std::vector<Fq> half_;
};

/// Delta(T;N) = dim { H in V_N : [z^e] T(z) H(z) = 0 for d <= e <= d+N }.
inline int delta_T(const ReciprocalSymbol& T, int N) {
    if (N < 0) throw std::invalid_argument("delta_T: N must be >= 0");
    const int d = T.centre();
    MatrixFq m(T.field(), N + 1, N + 1);
    for (int j = 0; j <= N; ++j)
        for (int a = 0; a <= N; ++a) m.at(j, a) = T.coeff(d + j - a);
    return N + 1 - rank_fq(m);
}

/// Matrix of L_H : R_d -> F_q^{N+1}, T -> ([z^{d+j}] T H)_{0<=j<=N}, in the
/// half coordinates x_0..x_d.  Row j, column a carries sum of H_s over
/// indices s with |j-s| = a.
inline MatrixFq build_LH(const Poly& H, int d, int N) {
    if (d < 0 || N < 0) throw std::invalid_argument("build_LH: d, N must be >= 0");
    MatrixFq m(H.field(), N + 1, d + 1);
    for (int j = 0; j <= N; ++j) {
        m.at(j, 0) = H.coeff(j);
        for (int a = 1; a <= d; ++a) m.at(j, a) = H.coeff(j - a) + H.coeff(j + a);
    }
    return m;
}

/// Explicit pivot-set size from the endpoint-rank argument:
/// |J| = floor((R-1)/2) - max(0, R-d) + 1 clamped at 0, R = deg H - ord H.
/// Requires H nonzero and H in V_N.
inline int lh_rank_floor(const Poly& H, int d, int N) {
    if (H.is_zero()) throw std::invalid_argument("lh_rank_floor: zero polynomial");
    if (H.degree() > N) throw std::invalid_argument("lh_rank_floor: H must lie in V_N");
    const int R = H.degree() - ord_at_zero(H);
    if (R == 0) return 0;
    const int size = (R - 1) / 2 - std::max(0, R - d) + 1;
    return std::max(0, size);
}

struct IncidenceResult {
    bigint by_symbol;       // sum over T in R_d of q^Delta(T;N)
    bigint by_kernel;       // pair count via kernels of L_H over H in V_N
    double monitor_exponent;  // d + 3N/4 + 1, for shape monitoring only
};

/// The incidence count both ways; the two totals must agree exactly.
inline IncidenceResult incidence_sum(const FieldSpec& F, int d, int N,
                                     const Budget& budget = Budget{}) {
    if (d < 0 || N < 0) throw std::invalid_argument("incidence_sum: d, N must be >= 0");
    const std::uint64_t symbols = monic_count(F, d + 1);  // q^(d+1)
    const std::uint64_t polys = monic_count(F, N + 1);    // q^(N+1)
    const std::uint64_t elim = std::uint64_t(N + 1) * (N + 1) * (N + 1);
    const std::uint64_t lh = std::uint64_t(N + 1) * (d + 1) * (d + 1);
    budget.require(symbols * elim + polys * lh);

    IncidenceResult out{0, 0, d + 0.75 * N + 1.0};
    for (std::uint64_t idx = 0; idx < symbols; ++idx) {
        const auto T = ReciprocalSymbol::from_index(F, d, idx);
        out.by_symbol += boost::multiprecision::pow(bigint(F.q()), unsigned(delta_T(T, N)));
    }
    for (std::uint64_t idx = 0; idx < polys; ++idx) {
        std::vector<Fq> c;
        c.reserve(N + 1);
        std::uint64_t v = idx;
        for (int i = 0; i <= N; ++i) {
            c.push_back(Fq::from_index(F, v % F.q()));
            v /= F.q();
        }
        const Poly H(F, std::move(c));
        const int kernel_dim =
            H.is_zero() ? d + 1 : d + 1 - rank_fq(build_LH(H, d, N));
        out.by_kernel += boost::multiprecision::pow(bigint(F.q()), unsigned(kernel_dim));
    }
    return out;
}

struct RankFloor {
    int rank;
    int floor;
    bool ok() const { return rank >= floor; }
};

/// Rank of h -> Q_{A,2}(h g1) - Q_{A,2}(h g2) on V_i against the explicit
/// floor max(0, i-k-m+1).  Reciprocal-equal pairs are exceptional.
inline RankFloor typeII_rank_check(const BandSpec& spec, const Poly& g1, const Poly& g2,
                                   int i) {
    if (i < 0) throw std::invalid_argument("typeII_rank_check: i must be >= 0");
    const LaurentSymbol H = symbol_of_pair_difference(spec, g1, g2);
    if (H.is_zero()) throw ExceptionalPairError{};
    const int k = g1.degree(), m = spec.bandwidth();
    return RankFloor{rank_fq(toeplitz_from_symbol(H, i)), std::max(0, i - k - m + 1)};
}

/// Polar rank of h -> Q_{A,2}(gh) on V_N against max(0, N-k-m+1).
inline RankFloor typeI_rank_check(const BandSpec& spec, const Poly& g, int N) {
    if (g.is_zero()) throw std::invalid_argument("typeI_rank_check: zero multiplier");
    if (!g.is_monic()) throw std::invalid_argument("typeI_rank_check: g must be monic");
    const LaurentSymbol H = symbol_A(spec) * autocorrelation_symbol(g);
    const int k = g.degree(), m = spec.bandwidth();
    return RankFloor{rank_fq(toeplitz_from_symbol(H, N)), std::max(0, N - k - m + 1)};
}

/// Affine hyperplane { x : <normal, x> = offset }; only the direction space
/// (the kernel of the normal functional) matters for restricted ranks.
struct AffineHyperplane {
    std::vector<Fq> normal;
    Fq offset;
};

/// Rank of the bilinear form M restricted to the direction space of the
/// hyperplane.  The ambient rank exceeds this by at most 2.
inline int monic_slice_rank(const MatrixFq& M, const AffineHyperplane& plane) {
    if (M.rows() != M.cols()) throw std::invalid_argument("monic_slice_rank: square matrix required");
    if (plane.normal.size() != M.rows())
        throw std::invalid_argument("monic_slice_rank: normal has wrong length");
    const FieldSpec& F = M.field();
    MatrixFq functional(F, 1, M.cols());
    bool nonzero = false;
    for (std::size_t c = 0; c < M.cols(); ++c) {
        functional.at(0, c) = plane.normal[c];
        nonzero = nonzero || !plane.normal[c].is_zero();
    }
    if (!nonzero) throw std::invalid_argument("monic_slice_rank: zero normal is not a hyperplane");

    const auto basis = nullspace(functional);  // direction space, dim = n-1
    MatrixFq W(F, M.cols(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t r = 0; r < M.cols(); ++r) W.at(r, j) = basis[j][r];
    return rank_fq(W.transpose() * M * W);
}

/// Convenience: the monic slice of V_N fixes the top digit to 1.
inline AffineHyperplane monic_slice(const FieldSpec& F, int N) {
    AffineHyperplane plane{std::vector<Fq>(N + 1, Fq::zero(F)), Fq::one(F)};
    plane.normal[N] = Fq::one(F);
    return plane;
}

}  // namespace bandlab
