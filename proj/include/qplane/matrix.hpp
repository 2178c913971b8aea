#pragma once

// Minimal dense matrices over a scalar backend, with rank by fraction-free
// (Bareiss) elimination for exact scalars and complete-pivoting elimination
// with a tolerance for floats.

#include "qplane/scalar.hpp"

#include <cassert>
#include <cmath>
#include <vector>

namespace qplane {

template <class K>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, K::zero()) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = K::one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const K& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
    K& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& v : r.a_) v = -v;
        return r;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        Matrix r = a;
        for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += b.a_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        Matrix r = a;
        for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= b.a_[k];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        assert(a.cols_ == b.rows_);
        Matrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }
    friend Matrix operator*(const K& c, Matrix a) {
        for (auto& v : a.a_) v *= c;
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (size_t k = 0; k < a.a_.size(); ++k)
            if (a.a_[k] != b.a_[k]) return false;
        return true;
    }

    // vertical stack
    friend Matrix vstack(const Matrix& top, const Matrix& bottom) {
        assert(top.cols_ == bottom.cols_);
        Matrix r(top.rows_ + bottom.rows_, top.cols_);
        for (int i = 0; i < top.rows_; ++i)
            for (int j = 0; j < top.cols_; ++j) r.at(i, j) = top.at(i, j);
        for (int i = 0; i < bottom.rows_; ++i)
            for (int j = 0; j < top.cols_; ++j) r.at(top.rows_ + i, j) = bottom.at(i, j);
        return r;
    }
    friend Matrix hstack(const Matrix& left, const Matrix& right) {
        assert(left.rows_ == right.rows_);
        Matrix r(left.rows_, left.cols_ + right.cols_);
        for (int i = 0; i < left.rows_; ++i) {
            for (int j = 0; j < left.cols_; ++j) r.at(i, j) = left.at(i, j);
            for (int j = 0; j < right.cols_; ++j) r.at(i, left.cols_ + j) = right.at(i, j);
        }
        return r;
    }

private:
    int rows_, cols_;
    std::vector<K> a_;
};

// Fraction-free (Bareiss) elimination rank; exact over the rational-complex
// backend.
inline int rank(const Matrix<ExactScalar>& m) {
    Matrix<ExactScalar> a = m;
    const int R = a.rows(), C = a.cols();
    int rank = 0;
    ExactScalar prev_pivot = ExactScalar::one();
    for (int col = 0; col < C && rank < R; ++col) {
        int pivot = -1;
        for (int r = rank; r < R; ++r)
            if (!a.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = 0; j < C; ++j) std::swap(a.at(pivot, j), a.at(rank, j));
        const ExactScalar p = a.at(rank, col);
        for (int r = rank + 1; r < R; ++r) {
            const ExactScalar f = a.at(r, col);
            for (int j = 0; j < C; ++j)
                a.at(r, j) = (p * a.at(r, j) - f * a.at(rank, j)) / prev_pivot;
        }
        prev_pivot = p;
        ++rank;
    }
    return rank;
}

// Complete-pivoting elimination with the backend tolerance.  `warn` is set
// when some pivot lands in the smeared band around the tolerance, meaning
// the rank decision is ill-conditioned.
inline int rank_float(const Matrix<FloatScalar>& m, bool* warn = nullptr) {
    Matrix<FloatScalar> a = m;
    const int R = a.rows(), C = a.cols();
    const double tol = FloatScalar::tolerance;
    if (warn) *warn = false;
    int rank = 0;
    std::vector<bool> used_col(C, false);
    for (int step = 0; step < std::min(R, C); ++step) {
        double best = 0.0;
        int bi = -1, bj = -1;
        for (int i = rank; i < R; ++i)
            for (int j = 0; j < C; ++j) {
                if (used_col[j]) continue;
                double v = std::abs(a.at(i, j).value());
                if (v > best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (warn && best > tol / 10 && best < tol * 10) *warn = true;
        if (bi < 0 || best <= tol) break;
        if (bi != rank)
            for (int j = 0; j < C; ++j) std::swap(a.at(bi, j), a.at(rank, j));
        used_col[bj] = true;
        const FloatScalar p = a.at(rank, bj);
        for (int i = rank + 1; i < R; ++i) {
            const FloatScalar f = a.at(i, bj) / p;
            for (int j = 0; j < C; ++j) a.at(i, j) -= f * a.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

template <class K>
int rank_of(const Matrix<K>& m, bool* warn = nullptr);

template <>
inline int rank_of<ExactScalar>(const Matrix<ExactScalar>& m, bool* warn) {
    if (warn) *warn = false;
    return rank(m);
}
template <>
inline int rank_of<FloatScalar>(const Matrix<FloatScalar>& m, bool* warn) {
    return rank_float(m, warn);
}

}  // namespace qplane
