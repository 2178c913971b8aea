#pragma once

// Exact truncated power series in one and two commuting variables.
//
// Arithmetic is exact on every stored coefficient; degrees above the cutoff
// are undefined (dropped), never silently zero.  Operations that shrink the
// trustworthy degree window say so next to their definition; identity suites
// keep enough degree headroom in their inputs that all comparisons stay
// inside the window.

#include "qplane/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <utility>
#include <vector>

namespace qplane {

template <class K>
class Series1 {
public:
    Series1() : coeffs_(1, K::zero()) {}
    explicit Series1(int trunc) : coeffs_(trunc + 1, K::zero()) { assert(trunc >= 0); }
    Series1(int trunc, std::vector<K> coeffs) : coeffs_(std::move(coeffs)) {
        coeffs_.resize(trunc + 1, K::zero());
    }

    static Series1 constant(int trunc, const K& c) {
        Series1 s(trunc);
        s.coeffs_[0] = c;
        return s;
    }
    // z^k within the cutoff
    static Series1 monomial(int trunc, int k, const K& c = K::one()) {
        Series1 s(trunc);
        if (k <= trunc) s.coeffs_[k] = c;
        return s;
    }

    int trunc() const { return int(coeffs_.size()) - 1; }
    const K& coeff(int k) const { return coeffs_[k]; }
    K& coeff(int k) { return coeffs_[k]; }
    const K& at_zero() const { return coeffs_[0]; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    Series1 operator-() const {
        Series1 r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    Series1& operator+=(const Series1& o) {
        assert(trunc() == o.trunc());
        for (int k = 0; k <= trunc(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    Series1& operator-=(const Series1& o) {
        assert(trunc() == o.trunc());
        for (int k = 0; k <= trunc(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    Series1& operator*=(const K& c) {
        for (auto& a : coeffs_) a *= c;
        return *this;
    }
    friend Series1 operator+(Series1 a, const Series1& b) { return a += b; }
    friend Series1 operator-(Series1 a, const Series1& b) { return a -= b; }
    friend Series1 operator*(Series1 a, const K& c) { return a *= c; }
    friend Series1 operator*(const K& c, Series1 a) { return a *= c; }

    // Cauchy product, exact below the shared cutoff.
    friend Series1 operator*(const Series1& a, const Series1& b) {
        assert(a.trunc() == b.trunc());
        Series1 r(a.trunc());
        for (int i = 0; i <= a.trunc(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (int j = 0; i + j <= a.trunc(); ++j)
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return r;
    }

    friend bool operator==(const Series1& a, const Series1& b) {
        assert(a.trunc() == b.trunc());
        for (int k = 0; k <= a.trunc(); ++k)
            if (a.coeffs_[k] != b.coeffs_[k]) return false;
        return true;
    }
    friend bool operator!=(const Series1& a, const Series1& b) { return !(a == b); }

    // f(c*z): coeffs[k] *= c^k
    Series1 scale_var(const K& c) const {
        Series1 r(trunc());
        K p = K::one();
        for (int k = 0; k <= trunc(); ++k) {
            r.coeffs_[k] = coeffs_[k] * p;
            p *= c;
        }
        return r;
    }

    // multiplication by z^d; top d coefficients fall off the cutoff
    Series1 shift_up(int d) const {
        Series1 r(trunc());
        for (int k = trunc(); k >= d; --k) r.coeffs_[k] = coeffs_[k - d];
        return r;
    }

    Series1 resized(int new_trunc) const {
        Series1 r(new_trunc);
        for (int k = 0; k <= std::min(trunc(), new_trunc); ++k) r.coeffs_[k] = coeffs_[k];
        return r;
    }

    const std::vector<K>& coeffs() const { return coeffs_; }

private:
    std::vector<K> coeffs_;
};

// P_d(f)(z) = f(z) - sum_{i<d} f^(i)(0)/i! z^i; projection onto O(d).
template <class K>
Series1<K> project_pd(const Series1<K>& f, int d) {
    assert(d >= 0 && d <= f.trunc() + 1);
    Series1<K> r = f;
    for (int i = 0; i < d && i <= f.trunc(); ++i) r.coeff(i) = K::zero();
    return r;
}

// Delta_q(f)(z) = f(qz)
template <class K>
Series1<K> translate_q(const Series1<K>& f, const QParam<K>& q) {
    return f.scale_var(q.value());
}

// z^{-d} f for f in O(d); cutoff drops by d. Errors if f has a nonzero
// coefficient below degree d.
template <class K>
Series1<K> divide_by_var(const Series1<K>& f, int d) {
    for (int i = 0; i < d; ++i)
        if (!f.coeff(i).is_zero())
            throw std::domain_error("divide_by_var: series not in O(" + std::to_string(d) + ")");
    Series1<K> r(f.trunc() - d >= 0 ? f.trunc() - d : 0);
    for (int k = 0; k + d <= f.trunc(); ++k) r.coeff(k) = f.coeff(k + d);
    return r;
}

// (f(z) - f(0)) / z at the same cutoff; top coefficient is undefined in the
// series sense but zero-filled (window shrinks by one degree).
template <class K>
Series1<K> diff_quot(const Series1<K>& f) {
    Series1<K> r(f.trunc());
    for (int k = 0; k + 1 <= f.trunc(); ++k) r.coeff(k) = f.coeff(k + 1);
    return r;
}

template <class K>
class Series2 {
public:
    Series2() : nu_(0), nv_(0), coeffs_(1, K::zero()) {}
    Series2(int nu, int nv) : nu_(nu), nv_(nv), coeffs_((nu + 1) * (nv + 1), K::zero()) {
        assert(nu >= 0 && nv >= 0);
    }

    static Series2 constant(int nu, int nv, const K& c) {
        Series2 s(nu, nv);
        s.at(0, 0) = c;
        return s;
    }
    static Series2 monomial(int nu, int nv, int i, int j, const K& c = K::one()) {
        Series2 s(nu, nv);
        if (i <= nu && j <= nv) s.at(i, j) = c;
        return s;
    }
    // embed u^i layers of a one-variable series (variable = u)
    static Series2 from_u(int nu, int nv, const Series1<K>& f) {
        Series2 s(nu, nv);
        for (int i = 0; i <= std::min(nu, f.trunc()); ++i) s.at(i, 0) = f.coeff(i);
        return s;
    }
    static Series2 from_v(int nu, int nv, const Series1<K>& g) {
        Series2 s(nu, nv);
        for (int j = 0; j <= std::min(nv, g.trunc()); ++j) s.at(0, j) = g.coeff(j);
        return s;
    }

    int trunc_u() const { return nu_; }
    int trunc_v() const { return nv_; }

    const K& at(int i, int j) const { return coeffs_[size_t(i) * (nv_ + 1) + j]; }
    K& at(int i, int j) { return coeffs_[size_t(i) * (nv_ + 1) + j]; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }
    // zero on all coefficients with i + j <= w
    bool is_zero_within(int w) const {
        for (int i = 0; i <= nu_; ++i)
            for (int j = 0; j <= nv_ && i + j <= w; ++j)
                if (!at(i, j).is_zero()) return false;
        return true;
    }

    Series2 operator-() const {
        Series2 r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    Series2& operator+=(const Series2& o) {
        assert(nu_ == o.nu_ && nv_ == o.nv_);
        for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    Series2& operator-=(const Series2& o) {
        assert(nu_ == o.nu_ && nv_ == o.nv_);
        for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    Series2& operator*=(const K& c) {
        for (auto& a : coeffs_) a *= c;
        return *this;
    }
    friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
    friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }
    friend Series2 operator*(Series2 a, const K& c) { return a *= c; }
    friend Series2 operator*(const K& c, Series2 a) { return a *= c; }

    friend Series2 operator*(const Series2& a, const Series2& b) {
        assert(a.nu_ == b.nu_ && a.nv_ == b.nv_);
        Series2 r(a.nu_, a.nv_);
        for (int i = 0; i <= a.nu_; ++i)
            for (int j = 0; j <= a.nv_; ++j) {
                if (a.at(i, j).is_zero()) continue;
                for (int s = 0; i + s <= a.nu_; ++s)
                    for (int t = 0; j + t <= a.nv_; ++t)
                        r.at(i + s, j + t) += a.at(i, j) * b.at(s, t);
            }
        return r;
    }

    friend bool operator==(const Series2& a, const Series2& b) {
        assert(a.nu_ == b.nu_ && a.nv_ == b.nv_);
        for (size_t k = 0; k < a.coeffs_.size(); ++k)
            if (a.coeffs_[k] != b.coeffs_[k]) return false;
        return true;
    }
    friend bool operator!=(const Series2& a, const Series2& b) { return !(a == b); }

    bool equal_within(const Series2& o, int w) const {
        Series2 d = *this;
        d -= o;
        return d.is_zero_within(w);
    }

    // partial evaluations
    Series1<K> eval_v0() const {  // h(u, 0)
        Series1<K> r(nu_);
        for (int i = 0; i <= nu_; ++i) r.coeff(i) = at(i, 0);
        return r;
    }
    Series1<K> eval_u0() const {  // h(0, v)
        Series1<K> r(nv_);
        for (int j = 0; j <= nv_; ++j) r.coeff(j) = at(0, j);
        return r;
    }

    // h(c*u, v), h(u, c*v)
    Series2 scale_u(const K& c) const {
        Series2 r(nu_, nv_);
        K p = K::one();
        for (int i = 0; i <= nu_; ++i) {
            for (int j = 0; j <= nv_; ++j) r.at(i, j) = at(i, j) * p;
            p *= c;
        }
        return r;
    }
    Series2 scale_v(const K& c) const {
        Series2 r(nu_, nv_);
        for (int i = 0; i <= nu_; ++i) {
            K p = K::one();
            for (int j = 0; j <= nv_; ++j) {
                r.at(i, j) = at(i, j) * p;
                p *= c;
            }
        }
        return r;
    }

    // multiplications by u and v; the top layer falls off the cutoff
    Series2 mul_u() const {
        Series2 r(nu_, nv_);
        for (int i = nu_; i >= 1; --i)
            for (int j = 0; j <= nv_; ++j) r.at(i, j) = at(i - 1, j);
        return r;
    }
    Series2 mul_v() const {
        Series2 r(nu_, nv_);
        for (int i = 0; i <= nu_; ++i)
            for (int j = nv_; j >= 1; --j) r.at(i, j) = at(i, j - 1);
        return r;
    }

    // substitution h(c*u + shift of v): diagonal evaluation h(u, c*u) as a
    // one-variable series; exact up to total degree min(nu, nv)... every
    // anti-diagonal i+j=m with m <= nu+nv contributes, and the result is
    // exact for m <= min window asserted by callers.
    Series1<K> eval_diag(const K& c) const {  // h(t, c*t)
        int n = nu_ + nv_;
        Series1<K> r(n);
        for (int i = 0; i <= nu_; ++i) {
            K p = K::one();
            for (int j = 0; j <= nv_; ++j) {
                r.coeff(i + j) += at(i, j) * p;
                p *= c;
            }
        }
        return r;
    }
    // h(c*t, t)
    Series1<K> eval_diag_u(const K& c) const {
        int n = nu_ + nv_;
        Series1<K> r(n);
        for (int j = 0; j <= nv_; ++j) {
            K p = K::one();
            for (int i = 0; i <= nu_; ++i) {
                r.coeff(i + j) += at(i, j) * p;
                p *= c;
            }
        }
        return r;
    }

    Series2 swap_vars() const {
        Series2 r(nv_, nu_);
        for (int i = 0; i <= nu_; ++i)
            for (int j = 0; j <= nv_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    const std::vector<K>& raw() const { return coeffs_; }

private:
    int nu_, nv_;
    std::vector<K> coeffs_;
};

// theta_u(u,v) = (theta(u,v) - theta(0,v)) / u; the u-window shrinks by one.
template <class K>
Series2<K> diff_quot_u(const Series2<K>& h) {
    Series2<K> r(h.trunc_u(), h.trunc_v());
    for (int i = 0; i + 1 <= h.trunc_u(); ++i)
        for (int j = 0; j <= h.trunc_v(); ++j) r.at(i, j) = h.at(i + 1, j);
    return r;
}

// theta_v(u,v) = (theta(u,v) - theta(u,0)) / v
template <class K>
Series2<K> diff_quot_v(const Series2<K>& h) {
    Series2<K> r(h.trunc_u(), h.trunc_v());
    for (int i = 0; i <= h.trunc_u(); ++i)
        for (int j = 0; j + 1 <= h.trunc_v(); ++j) r.at(i, j) = h.at(i, j + 1);
    return r;
}

// zeta(u,v) = zeta(u,0) + zeta(0,v) + uv * zeta_uv(u,v), valid when
// zeta(0,0) = 0.  Returns (zeta(u,0), zeta(0,v), zeta_uv).
template <class K>
struct SplitAtOrigin {
    Series1<K> on_u;   // zeta(u, 0)
    Series1<K> on_v;   // zeta(0, v)
    Series2<K> mixed;  // zeta_uv
};

template <class K>
SplitAtOrigin<K> split_at_origin(const Series2<K>& z) {
    if (!z.at(0, 0).is_zero())
        throw std::domain_error("split_at_origin: zeta(0,0) != 0");
    SplitAtOrigin<K> r{z.eval_v0(), z.eval_u0(), Series2<K>(z.trunc_u(), z.trunc_v())};
    for (int i = 0; i + 1 <= z.trunc_u(); ++i)
        for (int j = 0; j + 1 <= z.trunc_v(); ++j) r.mixed.at(i, j) = z.at(i + 1, j + 1);
    return r;
}

// Divide h(u,v) by (v - c*u): returns r with (v - c*u) r = h, requiring that
// h vanishes along v = c*u (checked within the total-degree window `w`,
// default = full anti-diagonal range).  Works through the exact triangular
// change of variables t = v - c*u; total degree is preserved, so the result
// is trustworthy on total degrees <= min(nu, nv) - ... callers budget one
// degree for the division.
template <class K>
Series2<K> divide_linear(const Series2<K>& h, const K& c, int check_window = -1) {
    int nu = h.trunc_u(), nv = h.trunc_v();
    // shear: p(u, t) = h(u, c*u + t);  p_{a,b} = sum_{j>=b, i+j=a+b} C(j,b) c^{j-b} h_{i,j}
    Series2<K> p(nu, nv);
    {
        // binomials up to nv
        std::vector<std::vector<K>> binom(nv + 1, std::vector<K>(nv + 1, K::zero()));
        for (int n = 0; n <= nv; ++n) {
            binom[n][0] = K::one();
            for (int k = 1; k <= n; ++k)
                binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : K::zero());
        }
        std::vector<K> cpow(nv + 1);
        cpow[0] = K::one();
        for (int k = 1; k <= nv; ++k) cpow[k] = cpow[k - 1] * c;
        for (int i = 0; i <= nu; ++i)
            for (int j = 0; j <= nv; ++j) {
                if (h.at(i, j).is_zero()) continue;
                for (int b = 0; b <= j; ++b) {
                    int a = i + j - b;
                    if (a <= nu) p.at(a, b) += binom[j][b] * cpow[j - b] * h.at(i, j);
                }
            }
    }
    if (check_window < 0) check_window = std::min(nu, nv);
    for (int a = 0; a <= std::min(nu, check_window); ++a)
        if (!p.at(a, 0).is_zero())
            throw std::domain_error("divide_linear: series does not vanish on v = c*u");
    // drop the t^0 layer, then unshear: r(u,v) = q(u, v - c*u)
    Series2<K> qq(nu, nv);
    for (int a = 0; a <= nu; ++a)
        for (int b = 0; b + 1 <= nv; ++b) qq.at(a, b) = p.at(a, b + 1);
    Series2<K> r(nu, nv);
    {
        std::vector<std::vector<K>> binom(nv + 1, std::vector<K>(nv + 1, K::zero()));
        for (int n = 0; n <= nv; ++n) {
            binom[n][0] = K::one();
            for (int k = 1; k <= n; ++k)
                binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : K::zero());
        }
        std::vector<K> cpow(nv + 1);
        cpow[0] = K::one();
        for (int k = 1; k <= nv; ++k) cpow[k] = cpow[k - 1] * (-c);
        for (int i = 0; i <= nu; ++i)
            for (int j = 0; j <= nv; ++j) {
                if (qq.at(i, j).is_zero()) continue;
                for (int b = 0; b <= j; ++b) {
                    int a = i + j - b;
                    if (a <= nu) r.at(a, b) += binom[j][b] * cpow[j - b] * qq.at(i, j);
                }
            }
    }
    return r;
}

// factor h(x1,x2) = (x2 - x1) f(x1,x2) when h vanishes on the diagonal
template <class K>
Series2<K> divide_diagonal(const Series2<K>& h) {
    try {
        return divide_linear(h, K::one());
    } catch (const std::domain_error&) {
        throw std::domain_error("divide_diagonal: not diagonal-divisible");
    }
}

}  // namespace qplane
