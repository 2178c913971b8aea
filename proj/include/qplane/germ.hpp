#pragma once

// Germ pairs O(U) = O(U_x) x_C O(U_y) and the graded copies O(d).
//
// The reduced models O_d (image of the d-isomorphism (f,g) -> (z^-d f, w^-d g))
// are the canonical in-memory representation; raw O(d) pairs appear only in
// the conversion routines and in the raw forms of the N/M operators, which
// are kept for the conjugation cross-checks.

#include "qplane/scalar.hpp"
#include "qplane/series.hpp"

#include <stdexcept>
#include <utility>

namespace qplane {

// A pair (f(z), g(w)) with f(0) = g(0): section of the structure sheaf.
template <class K>
class GermPair {
public:
    GermPair(Series1<K> f, Series1<K> g) : f_(std::move(f)), g_(std::move(g)) {
        if (f_.at_zero() != g_.at_zero())
            throw std::domain_error("GermPair: f(0) != g(0)");
    }
    static GermPair zero(int trunc) { return GermPair(Series1<K>(trunc), Series1<K>(trunc)); }
    static GermPair constant(int trunc, const K& c) {
        return GermPair(Series1<K>::constant(trunc, c), Series1<K>::constant(trunc, c));
    }

    const Series1<K>& f() const { return f_; }
    const Series1<K>& g() const { return g_; }
    int trunc() const { return f_.trunc(); }
    bool is_zero() const { return f_.is_zero() && g_.is_zero(); }

    GermPair operator-() const { return GermPair(-f_, -g_); }
    friend GermPair operator+(const GermPair& a, const GermPair& b) {
        return GermPair(a.f_ + b.f_, a.g_ + b.g_);
    }
    friend GermPair operator-(const GermPair& a, const GermPair& b) {
        return GermPair(a.f_ - b.f_, a.g_ - b.g_);
    }
    friend GermPair operator*(const K& c, const GermPair& p) {
        return GermPair(c * p.f_, c * p.g_);
    }
    friend bool operator==(const GermPair& a, const GermPair& b) {
        return a.f_ == b.f_ && a.g_ == b.g_;
    }
    friend bool operator!=(const GermPair& a, const GermPair& b) { return !(a == b); }

private:
    Series1<K> f_, g_;
};

// Reduced O_d model: a germ pair together with its degree d.
template <class K>
class GradedElement {
public:
    GradedElement(GermPair<K> pair, int degree) : pair_(std::move(pair)), degree_(degree) {
        if (degree < 0) throw std::domain_error("GradedElement: negative degree");
    }
    const GermPair<K>& pair() const { return pair_; }
    int degree() const { return degree_; }

    friend bool operator==(const GradedElement& a, const GradedElement& b) {
        return a.degree_ == b.degree_ && a.pair_ == b.pair_;
    }
    friend bool operator!=(const GradedElement& a, const GradedElement& b) { return !(a == b); }

private:
    GermPair<K> pair_;
    int degree_;
};

// Raw O(d) pair (z^d f, w^d g); not a GermPair (its constant terms vanish
// for d >= 1 and the shared evaluation lives at order d).
template <class K>
struct RawGradedPair {
    Series1<K> f, g;  // vanish to order d; f^(d)(0)/d! = g^(d)(0)/d!
    int degree = 0;
};

// the d-isomorphism and its inverse
template <class K>
RawGradedPair<K> raise_degree(const GradedElement<K>& e) {
    return RawGradedPair<K>{e.pair().f().shift_up(e.degree()), e.pair().g().shift_up(e.degree()),
                            e.degree()};
}

template <class K>
GradedElement<K> lower_degree(const RawGradedPair<K>& r) {
    return GradedElement<K>(
        GermPair<K>(divide_by_var(r.f, r.degree).resized(r.f.trunc()),
                    divide_by_var(r.g, r.degree).resized(r.g.trunc())),
        r.degree);
}

// multiplication operators z(f,g) = (zf, 0) and w(f,g) = (0, wg)
template <class K>
GermPair<K> mult_z(const GermPair<K>& p) {
    return GermPair<K>(p.f().shift_up(1), Series1<K>(p.trunc()));
}
template <class K>
GermPair<K> mult_w(const GermPair<K>& p) {
    return GermPair<K>(Series1<K>(p.trunc()), p.g().shift_up(1));
}

template <class K>
GradedElement<K> mult_z(const GradedElement<K>& e) {
    return GradedElement<K>(mult_z(e.pair()), e.degree());
}
template <class K>
GradedElement<K> mult_w(const GradedElement<K>& e) {
    return GradedElement<K>(mult_w(e.pair()), e.degree());
}

// ---- the reduced operators O_d -> O_{d+1} ----
//
//   N_x(f,g) = ((f - f(0))/z,  f'(0))
//   N_y(f,g) = q^{d+1} (g'(0), (g(qw) - g(0))/(qw))
//   M_x(f,g) = (g'(0), (g - g(0))/w)
//   M_y(f,g) = q^{l+1} ((f(qz) - f(0))/(qz), f'(0))
//
// Each consumes one degree of the window (difference quotient).

template <class K>
GradedElement<K> op_N_x(const GradedElement<K>& e, const QParam<K>&) {
    const auto& p = e.pair();
    Series1<K> left = diff_quot(p.f());
    Series1<K> right = Series1<K>::constant(p.trunc(), p.f().coeff(1));
    return GradedElement<K>(GermPair<K>(std::move(left), std::move(right)), e.degree() + 1);
}

template <class K>
GradedElement<K> op_N_y(const GradedElement<K>& e, const QParam<K>& q) {
    const auto& p = e.pair();
    const K pre = q.power(unsigned(e.degree()) + 1);
    // (g(qw) - g(0)) / (qw) = Delta_q(diff_quot(g))  since both scale coeff k of
    // the quotient by q^k: coeff k of the quotient of g(qw) is q^{k+1} g_{k+1} / q
    Series1<K> right = diff_quot(p.g()).scale_var(q.value());
    Series1<K> left = Series1<K>::constant(p.trunc(), p.g().coeff(1));
    return GradedElement<K>(GermPair<K>(pre * left, pre * right), e.degree() + 1);
}

template <class K>
GradedElement<K> op_M_x(const GradedElement<K>& e, const QParam<K>&) {
    const auto& p = e.pair();
    Series1<K> left = Series1<K>::constant(p.trunc(), p.g().coeff(1));
    Series1<K> right = diff_quot(p.g());
    return GradedElement<K>(GermPair<K>(std::move(left), std::move(right)), e.degree() + 1);
}

template <class K>
GradedElement<K> op_M_y(const GradedElement<K>& e, const QParam<K>& q) {
    const auto& p = e.pair();
    const K pre = q.power(unsigned(e.degree()) + 1);
    Series1<K> left = diff_quot(p.f()).scale_var(q.value());
    Series1<K> right = Series1<K>::constant(p.trunc(), p.f().coeff(1));
    return GradedElement<K>(GermPair<K>(pre * left, pre * right), e.degree() + 1);
}

// ---- the raw operators O(d) -> O(d+1) ----
//
//   N_x(F,G) = (P_{d+1} F,  F^{(d+1)}(0)/(d+1)! w^{d+1})
//   N_y(F,G) = (q^{d+1} G^{(d+1)}(0)/(d+1)! z^{d+1},  P_{d+1} Delta_q G)
//   M_x(F,G) = (G^{(l+1)}(0)/(l+1)! z^{l+1},  P_{l+1} G)
//   M_y(F,G) = (P_{l+1} Delta_q F,  q^{l+1} F^{(l+1)}(0)/(l+1)! w^{l+1})

template <class K>
RawGradedPair<K> raw_N_x(const RawGradedPair<K>& r, const QParam<K>&) {
    int d1 = r.degree + 1;
    return RawGradedPair<K>{project_pd(r.f, d1),
                            Series1<K>::monomial(r.g.trunc(), d1, r.f.coeff(d1)), d1};
}
template <class K>
RawGradedPair<K> raw_N_y(const RawGradedPair<K>& r, const QParam<K>& q) {
    int d1 = r.degree + 1;
    return RawGradedPair<K>{
        Series1<K>::monomial(r.f.trunc(), d1, q.power(unsigned(d1)) * r.g.coeff(d1)),
        project_pd(translate_q(r.g, q), d1), d1};
}
template <class K>
RawGradedPair<K> raw_M_x(const RawGradedPair<K>& r, const QParam<K>&) {
    int d1 = r.degree + 1;
    return RawGradedPair<K>{Series1<K>::monomial(r.f.trunc(), d1, r.g.coeff(d1)),
                            project_pd(r.g, d1), d1};
}
template <class K>
RawGradedPair<K> raw_M_y(const RawGradedPair<K>& r, const QParam<K>& q) {
    int d1 = r.degree + 1;
    return RawGradedPair<K>{
        project_pd(translate_q(r.f, q), d1),
        Series1<K>::monomial(r.g.trunc(), d1, q.power(unsigned(d1)) * r.f.coeff(d1)), d1};
}

}  // namespace qplane
