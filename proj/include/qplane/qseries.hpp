#pragma once

// The truncated local formal q-algebra: elements of C_q[[x,y]] in ordered
// normal form sum a_{ik} x^i y^k, cut off at a total degree N.  The product
// is implemented three independent ways (the double-sum formula and the two
// one-sided layer formulas) and cross-checked in the suites.

#include "qplane/scalar.hpp"
#include "qplane/series.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace qplane {

template <class K>
class QSeries {
public:
    QSeries(const QParam<K>& q, int trunc)
        : q_(&q), trunc_(trunc), coeffs_((trunc + 1) * (trunc + 1), K::zero()) {
        assert(trunc >= 0);
    }

    static QSeries unit(const QParam<K>& q, int trunc) {
        QSeries f(q, trunc);
        f.at(0, 0) = K::one();
        return f;
    }
    static QSeries gen_x(const QParam<K>& q, int trunc) {
        QSeries f(q, trunc);
        f.at(1, 0) = K::one();
        return f;
    }
    static QSeries gen_y(const QParam<K>& q, int trunc) {
        QSeries f(q, trunc);
        f.at(0, 1) = K::one();
        return f;
    }
    static QSeries monomial(const QParam<K>& q, int trunc, int i, int k,
                            const K& c = K::one()) {
        QSeries f(q, trunc);
        if (i + k <= trunc) f.at(i, k) = c;
        return f;
    }

    const QParam<K>& q() const { return *q_; }
    int trunc() const { return trunc_; }

    // coefficient of x^i y^k
    const K& at(int i, int k) const { return coeffs_[size_t(i) * (trunc_ + 1) + k]; }
    K& at(int i, int k) { return coeffs_[size_t(i) * (trunc_ + 1) + k]; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    QSeries operator-() const {
        QSeries r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    QSeries& operator+=(const QSeries& o) {
        check_compatible(o);
        for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    QSeries& operator-=(const QSeries& o) {
        check_compatible(o);
        for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    QSeries& operator*=(const K& c) {
        for (auto& a : coeffs_) a *= c;
        return *this;
    }
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(QSeries a, const K& c) { return a *= c; }
    friend QSeries operator*(const K& c, QSeries a) { return a *= c; }

    // equality on all coefficients with i + k <= trunc
    friend bool operator==(const QSeries& a, const QSeries& b) {
        a.check_compatible(b);
        for (int i = 0; i <= a.trunc_; ++i)
            for (int k = 0; i + k <= a.trunc_; ++k)
                if (a.at(i, k) != b.at(i, k)) return false;
        return true;
    }
    friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

    // x-graded layers: f = sum_n f_n(x) y^n
    Series1<K> y_layer(int n) const {
        Series1<K> r(trunc_);
        for (int i = 0; i + n <= trunc_; ++i) r.coeff(i) = at(i, n);
        return r;
    }
    // y-graded layers: f = sum_n x^n f_n(y)
    Series1<K> x_layer(int n) const {
        Series1<K> r(trunc_);
        for (int k = 0; n + k <= trunc_; ++k) r.coeff(k) = at(n, k);
        return r;
    }

    void check_compatible(const QSeries& o) const {
        if (q_ != o.q_ && !(q_->value() == o.q_->value()))
            throw std::invalid_argument("QSeries: mismatched q");
        if (trunc_ != o.trunc_)
            throw std::invalid_argument("QSeries: mismatched truncation");
    }

private:
    const QParam<K>* q_;
    int trunc_;
    std::vector<K> coeffs_;
};

// Coefficient of x^m y^n in f*g is sum_{s+t=m, i+j=n} a_{si} q^{it} b_{tj}.
template <class K>
QSeries<K> qmul(const QSeries<K>& f, const QSeries<K>& g) {
    f.check_compatible(g);
    const auto& q = f.q();
    const int N = f.trunc();
    QSeries<K> r(q, N);
    for (int s = 0; s <= N; ++s)
        for (int i = 0; s + i <= N; ++i) {
            const K& a = f.at(s, i);
            if (a.is_zero()) continue;
            for (int t = 0; s + t <= N; ++t) {
                const K aq = a * q.power(unsigned(i) * unsigned(t));
                for (int j = 0; s + t + i + j <= N; ++j) {
                    const K& b = g.at(t, j);
                    if (b.is_zero()) continue;
                    r.at(s + t, i + j) += aq * b;
                }
            }
        }
    return r;
}

// f*g = sum_n ( sum_{i+j=n} f_i(x) g_j(q^i x) ) y^n
template <class K>
QSeries<K> qmul_left_form(const QSeries<K>& f, const QSeries<K>& g) {
    f.check_compatible(g);
    const auto& q = f.q();
    const int N = f.trunc();
    QSeries<K> r(q, N);
    for (int i = 0; i <= N; ++i) {
        Series1<K> fi = f.y_layer(i);
        if (fi.is_zero()) continue;
        for (int j = 0; i + j <= N; ++j) {
            Series1<K> gj = g.y_layer(j).scale_var(q.power(i));
            Series1<K> prod = fi * gj;
            for (int m = 0; m + i + j <= N; ++m) r.at(m, i + j) += prod.coeff(m);
        }
    }
    return r;
}

// f*g = sum_n x^n ( sum_{i+j=n} f_i(q^j y) g_j(y) )
template <class K>
QSeries<K> qmul_right_form(const QSeries<K>& f, const QSeries<K>& g) {
    f.check_compatible(g);
    const auto& q = f.q();
    const int N = f.trunc();
    QSeries<K> r(q, N);
    for (int i = 0; i <= N; ++i) {
        Series1<K> fi = f.x_layer(i);
        if (fi.is_zero()) continue;
        for (int j = 0; i + j <= N; ++j) {
            Series1<K> fij = fi.scale_var(q.power(j));
            Series1<K> prod = fij * g.x_layer(j);
            for (int m = 0; m + i + j <= N; ++m) r.at(i + j, m) += prod.coeff(m);
        }
    }
    return r;
}

// the one continuous character (0,0) of C_q[[x,y]]
template <class K>
K trivial_character(const QSeries<K>& f) {
    return f.at(0, 0);
}

// Rad C_q[[x,y]] = ker(0,0)
template <class K>
bool radical_test(const QSeries<K>& f) {
    return f.at(0, 0).is_zero();
}

}  // namespace qplane
