#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bandlab/field.hpp"

namespace bandlab {

/// Dense matrix over F_q.
class MatrixFq {
public:
    MatrixFq(const FieldSpec& field, std::size_t rows, std::size_t cols)
        : field_(&field), rows_(rows), cols_(cols),
          a_(rows * cols, Fq::zero(field)) {}

    static MatrixFq identity(const FieldSpec& field, std::size_t n) {
        MatrixFq m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Fq::one(field);
        return m;
    }

    const FieldSpec& field() const { return *field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Fq& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Fq& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    MatrixFq transpose() const {
        MatrixFq m(*field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
        return m;
    }

    friend MatrixFq operator+(const MatrixFq& a, const MatrixFq& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("MatrixFq: shape mismatch");
        MatrixFq m = a;
        for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = m.a_[i] + b.a_[i];
        return m;
    }

    friend MatrixFq operator*(const MatrixFq& a, const MatrixFq& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("MatrixFq: shape mismatch");
        MatrixFq m(*a.field_, a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Fq& v = a.at(r, k);
                if (v.is_zero()) continue;
                for (std::size_t c = 0; c < b.cols_; ++c)
                    m.at(r, c) = m.at(r, c) + v * b.at(k, c);
            }
        return m;
    }

    friend MatrixFq operator*(const Fq& s, const MatrixFq& a) {
        MatrixFq m = a;
        for (Fq& x : m.a_) x = s * x;
        return m;
    }

    friend bool operator==(const MatrixFq& a, const MatrixFq& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const MatrixFq& a, const MatrixFq& b) { return !(a == b); }

private:
    const FieldSpec* field_;
    std::size_t rows_, cols_;
    std::vector<Fq> a_;
};

struct Echelon {
    MatrixFq rref;
    std::vector<std::size_t> pivots;  // pivot column per pivot row
    int rank;
};

/// Reduced row echelon form with deterministic pivoting: columns left to
/// right, first nonzero row wins.
inline Echelon reduced_echelon(MatrixFq m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t pc = 0; pc < cols && pr < rows; ++pc) {
        std::size_t sel = pr;
        while (sel < rows && m.at(sel, pc).is_zero()) ++sel;
        if (sel == rows) continue;
        if (sel != pr)
            for (std::size_t c = 0; c < cols; ++c) std::swap(m.at(sel, c), m.at(pr, c));
        const Fq inv = m.at(pr, pc).inverse();
        for (std::size_t c = 0; c < cols; ++c) m.at(pr, c) = inv * m.at(pr, c);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr) continue;
            const Fq factor = m.at(r, pc);
            if (factor.is_zero()) continue;
            for (std::size_t c = 0; c < cols; ++c)
                m.at(r, c) = m.at(r, c) - factor * m.at(pr, c);
        }
        pivots.push_back(pc);
        ++pr;
    }
    return Echelon{std::move(m), std::move(pivots), int(pr)};
}

/// Exact rank over F_q.
inline int rank_fq(const MatrixFq& m) { return reduced_echelon(m).rank; }

/// Canonical nullspace basis from the RREF: one vector per free column, with
/// a 1 in the free coordinate.  Two matrices with the same nullspace produce
/// identical bases.
inline std::vector<std::vector<Fq>> nullspace(const MatrixFq& m) {
    const Echelon e = reduced_echelon(m);
    const FieldSpec& F = m.field();
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : e.pivots) is_pivot[p] = true;

    std::vector<std::vector<Fq>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Fq> v(cols, Fq::zero(F));
        v[free] = Fq::one(F);
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.rref.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Equal row spans, decided by comparing unique RREFs.
inline bool same_span(const FieldSpec& F, const std::vector<std::vector<Fq>>& a,
                      const std::vector<std::vector<Fq>>& b, std::size_t dim) {
    auto pack = [&](const std::vector<std::vector<Fq>>& rows) {
        MatrixFq m(F, rows.size(), dim);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != dim)
                throw std::invalid_argument("same_span: vector of wrong length");
            for (std::size_t c = 0; c < dim; ++c) m.at(r, c) = rows[r][c];
        }
        return reduced_echelon(std::move(m));
    };
    const Echelon ea = pack(a), eb = pack(b);
    if (ea.rank != eb.rank) return false;
    for (int r = 0; r < ea.rank; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if (ea.rref.at(r, c) != eb.rref.at(r, c)) return false;
    return true;
}

}  // namespace bandlab
