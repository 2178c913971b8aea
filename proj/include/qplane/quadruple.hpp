#pragma once

// Compatible and free quadruples: the concrete model of O_{d,l} = O_d (x) O_l.
//
// The four components live in the four variable pairs
//   c1(z1,z2), c2(z1,w2), c3(w1,z2), c4(w1,w2);
// compatible quadruples satisfy the four edge conditions of the fibered
// product; free quadruples (elements of Z(U)) carry none.

#include "qplane/germ.hpp"
#include "qplane/scalar.hpp"
#include "qplane/series.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace qplane {

enum class Var { z1, z2, w1, w2 };

template <class K>
class Quadruple {
public:
    // components share a square cutoff (N, N)
    Quadruple(Series2<K> c1, Series2<K> c2, Series2<K> c3, Series2<K> c4, bool compatible)
        : c_{std::move(c1), std::move(c2), std::move(c3), std::move(c4)}, compat_(compatible) {
        if (compat_ && !edges_match())
            throw std::domain_error("Quadruple: edge compatibility violated");
    }

    static Quadruple zero(int n, bool compatible = true) {
        return Quadruple(Series2<K>(n, n), Series2<K>(n, n), Series2<K>(n, n), Series2<K>(n, n),
                         compatible);
    }
    static Quadruple free(Series2<K> c1, Series2<K> c2, Series2<K> c3, Series2<K> c4) {
        return Quadruple(std::move(c1), std::move(c2), std::move(c3), std::move(c4), false);
    }

    const Series2<K>& c1() const { return c_[0]; }
    const Series2<K>& c2() const { return c_[1]; }
    const Series2<K>& c3() const { return c_[2]; }
    const Series2<K>& c4() const { return c_[3]; }
    const Series2<K>& comp(int i) const { return c_[i]; }

    bool compatible() const { return compat_; }
    int trunc() const { return c_[0].trunc_u(); }

    bool is_zero() const {
        return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
    }
    bool is_zero_within(int w) const {
        return c_[0].is_zero_within(w) && c_[1].is_zero_within(w) && c_[2].is_zero_within(w) &&
               c_[3].is_zero_within(w);
    }

    bool edges_match() const {
        // c1(z1,0)=c2(z1,0), c3(w1,0)=c4(w1,0), c1(0,z2)=c3(0,z2), c2(0,w2)=c4(0,w2)
        return c_[0].eval_v0() == c_[1].eval_v0() && c_[2].eval_v0() == c_[3].eval_v0() &&
               c_[0].eval_u0() == c_[2].eval_u0() && c_[1].eval_u0() == c_[3].eval_u0();
    }

    Quadruple operator-() const { return Quadruple(-c_[0], -c_[1], -c_[2], -c_[3], compat_); }
    friend Quadruple operator+(const Quadruple& a, const Quadruple& b) {
        return Quadruple(a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2],
                         a.c_[3] + b.c_[3], a.compat_ && b.compat_);
    }
    friend Quadruple operator-(const Quadruple& a, const Quadruple& b) {
        return Quadruple(a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2],
                         a.c_[3] - b.c_[3], a.compat_ && b.compat_);
    }
    friend Quadruple operator*(const K& s, const Quadruple& a) {
        return Quadruple(s * a.c_[0], s * a.c_[1], s * a.c_[2], s * a.c_[3], a.compat_);
    }
    friend bool operator==(const Quadruple& a, const Quadruple& b) {
        return a.c_[0] == b.c_[0] && a.c_[1] == b.c_[1] && a.c_[2] == b.c_[2] &&
               a.c_[3] == b.c_[3];
    }
    friend bool operator!=(const Quadruple& a, const Quadruple& b) { return !(a == b); }

    bool equal_within(const Quadruple& o, int w) const {
        for (int i = 0; i < 4; ++i)
            if (!c_[i].equal_within(o.c_[i], w)) return false;
        return true;
    }

private:
    std::array<Series2<K>, 4> c_;
    bool compat_;
};

// elementary tensor of two germ pairs: (f1 f2, f1 g2, g1 f2, g1 g2).
// Outer products: component (i,j) is a_i * b_j.
template <class K>
Quadruple<K> tensor_embed(const GermPair<K>& a, const GermPair<K>& b, int n) {
    auto outer = [n](const Series1<K>& u, const Series1<K>& v) {
        Series2<K> r(n, n);
        for (int i = 0; i <= std::min(n, u.trunc()); ++i) {
            if (u.coeff(i).is_zero()) continue;
            for (int j = 0; j <= std::min(n, v.trunc()); ++j)
                r.at(i, j) = u.coeff(i) * v.coeff(j);
        }
        return r;
    };
    return Quadruple<K>(outer(a.f(), b.f()), outer(a.f(), b.g()), outer(a.g(), b.f()),
                        outer(a.g(), b.g()), true);
}

// componentwise variable actions; consume one window degree
template <class K>
Quadruple<K> mult_var(Var v, const Quadruple<K>& z) {
    if (!z.compatible()) throw std::invalid_argument("mult_var: free quadruple");
    const int n = z.trunc();
    Series2<K> zero(n, n);
    switch (v) {
        case Var::z1:
            return Quadruple<K>(z.c1().mul_u(), z.c2().mul_u(), zero, zero, true);
        case Var::z2:
            return Quadruple<K>(z.c1().mul_v(), zero, z.c3().mul_v(), zero, true);
        case Var::w1:
            return Quadruple<K>(zero, zero, z.c3().mul_u(), z.c4().mul_u(), true);
        case Var::w2:
            return Quadruple<K>(zero, z.c2().mul_v(), zero, z.c4().mul_v(), true);
    }
    throw std::logic_error("unreachable");
}

// same actions extended to free quadruples (needed by the operator T)
template <class K>
Quadruple<K> mult_var_free(Var v, const Quadruple<K>& z) {
    const int n = z.trunc();
    Series2<K> zero(n, n);
    switch (v) {
        case Var::z1:
            return Quadruple<K>::free(z.c1().mul_u(), z.c2().mul_u(), zero, zero);
        case Var::z2:
            return Quadruple<K>::free(z.c1().mul_v(), zero, z.c3().mul_v(), zero);
        case Var::w1:
            return Quadruple<K>::free(zero, zero, z.c3().mul_u(), z.c4().mul_u());
        case Var::w2:
            return Quadruple<K>::free(zero, z.c2().mul_v(), zero, z.c4().mul_v());
    }
    throw std::logic_error("unreachable");
}

// ---- lifted difference operators on quadruples (window shrinks by one) ----

// M_{x2,l}(z) = ((d c2/d w2 (z1,0), (c2)_{w2}), (d c4/d w2 (w1,0), (c4)_{w2}))
template <class K>
Quadruple<K> lifted_M_x2(const Quadruple<K>& z, const QParam<K>&, int /*l*/) {
    if (!z.compatible()) throw std::invalid_argument("lifted_M_x2: free quadruple");
    const int n = z.trunc();
    Series2<K> q2 = diff_quot_v(z.c2());
    Series2<K> q4 = diff_quot_v(z.c4());
    return Quadruple<K>(Series2<K>::from_u(n, n, q2.eval_v0()), q2,
                        Series2<K>::from_u(n, n, q4.eval_v0()), q4, true);
}

// M_{y2,l}(z) = q^{l+1} (((c1)_{z2}(z1,q z2), d c1/d z2 (z1,0)),
//                        ((c3)_{z2}(w1,q z2), d c3/d z2 (w1,0)))
template <class K>
Quadruple<K> lifted_M_y2(const Quadruple<K>& z, const QParam<K>& q, int l) {
    if (!z.compatible()) throw std::invalid_argument("lifted_M_y2: free quadruple");
    const int n = z.trunc();
    const K pre = q.power(unsigned(l) + 1);
    Series2<K> q1 = diff_quot_v(z.c1()).scale_v(q.value());
    Series2<K> q3 = diff_quot_v(z.c3()).scale_v(q.value());
    Series2<K> d1 = Series2<K>::from_u(n, n, diff_quot_v(z.c1()).eval_v0());
    Series2<K> d3 = Series2<K>::from_u(n, n, diff_quot_v(z.c3()).eval_v0());
    return Quadruple<K>(pre * q1, pre * d1, pre * q3, pre * d3, true);
}

// N_{x1,d}(z) = (((c1)_{z1}, (c2)_{z1}), (d c1/d z1 (0,z2), d c2/d z1 (0,w2)))
template <class K>
Quadruple<K> lifted_N_x1(const Quadruple<K>& z, const QParam<K>&, int /*d*/) {
    if (!z.compatible()) throw std::invalid_argument("lifted_N_x1: free quadruple");
    const int n = z.trunc();
    Series2<K> q1 = diff_quot_u(z.c1());
    Series2<K> q2 = diff_quot_u(z.c2());
    return Quadruple<K>(q1, q2, Series2<K>::from_v(n, n, q1.eval_u0()),
                        Series2<K>::from_v(n, n, q2.eval_u0()), true);
}

// N_{y1,d}(z) = q^{d+1} ((d c3/d w1 (0,z2), d c4/d w1 (0,w2)),
//                        ((c3)_{w1}(q w1, z2), (c4)_{w1}(q w1, w2)))
template <class K>
Quadruple<K> lifted_N_y1(const Quadruple<K>& z, const QParam<K>& q, int d) {
    if (!z.compatible()) throw std::invalid_argument("lifted_N_y1: free quadruple");
    const int n = z.trunc();
    const K pre = q.power(unsigned(d) + 1);
    Series2<K> q3 = diff_quot_u(z.c3()).scale_u(q.value());
    Series2<K> q4 = diff_quot_u(z.c4()).scale_u(q.value());
    Series2<K> d3 = Series2<K>::from_v(n, n, diff_quot_u(z.c3()).eval_u0());
    Series2<K> d4 = Series2<K>::from_v(n, n, diff_quot_u(z.c4()).eval_u0());
    return Quadruple<K>(pre * d3, pre * d4, pre * q3, pre * q4, true);
}

// pi_{d,l}(h) = (h1(z, q^d z), h4(q^l w, w)), the q^{dl} normalization dropped
// (the diagonal-complex convention).  Exact on degrees <= trunc.
template <class K>
GradedElement<K> pi_dl(const Quadruple<K>& h, const QParam<K>& q, int d, int l) {
    if (!h.compatible()) throw std::invalid_argument("pi_dl: free quadruple");
    const int n = h.trunc();
    Series1<K> f = h.c1().eval_diag(q.power(unsigned(d))).resized(n);
    Series1<K> g = h.c4().eval_diag_u(q.power(unsigned(l))).resized(n);
    return GradedElement<K>(GermPair<K>(std::move(f), std::move(g)), d + l);
}

// The same diagonal component with the q^{dl} factor kept: the reduced form
// of the multiplication morphism O(d,l) -> O(d+l).  This is the convention
// the Gamma corrections are measured against; the raw products of alpha_d
// images reproduce it on the nose.
template <class K>
GradedElement<K> pi_dl_mult(const Quadruple<K>& h, const QParam<K>& q, int d, int l) {
    GradedElement<K> base = pi_dl(h, q, d, l);
    const K s = q.power(unsigned(d) * unsigned(l));
    return GradedElement<K>(s * base.pair(), base.degree());
}

// A compatible quadruple decomposed into elementary tensors of monomial germ
// pairs: the finite-rank analogue of O_{d,l} = O_d (x) O_l.  Terms are
// (coefficient, left germ, right germ) with germs drawn from the monomial
// basis {(1,1)} u {(z^i,0)} u {(0,w^j)}.
template <class K>
struct TensorTerm {
    K coeff;
    GermPair<K> left, right;
};

template <class K>
std::vector<TensorTerm<K>> tensor_decompose(const Quadruple<K>& z) {
    if (!z.compatible()) throw std::invalid_argument("tensor_decompose: free quadruple");
    const int n = z.trunc();
    std::vector<TensorTerm<K>> out;
    auto unit = [&] { return GermPair<K>::constant(n, K::one()); };
    auto zmon = [&](int i) {
        return GermPair<K>(Series1<K>::monomial(n, i), Series1<K>(n));
    };
    auto wmon = [&](int j) {
        return GermPair<K>(Series1<K>(n), Series1<K>::monomial(n, j));
    };
    auto push = [&](const K& c, GermPair<K> a, GermPair<K> b) {
        if (!c.is_zero()) out.push_back(TensorTerm<K>{c, std::move(a), std::move(b)});
    };
    push(z.c1().at(0, 0), unit(), unit());
    for (int i = 1; i <= n; ++i) push(z.c1().at(i, 0), zmon(i), unit());
    for (int j = 1; j <= n; ++j) push(z.c1().at(0, j), unit(), zmon(j));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) push(z.c1().at(i, j), zmon(i), zmon(j));
    for (int j = 1; j <= n; ++j) push(z.c2().at(0, j), unit(), wmon(j));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) push(z.c2().at(i, j), zmon(i), wmon(j));
    for (int i = 1; i <= n; ++i) push(z.c3().at(i, 0), wmon(i), unit());
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) push(z.c3().at(i, j), wmon(i), zmon(j));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) push(z.c4().at(i, j), wmon(i), wmon(j));
    return out;
}

template <class K>
Quadruple<K> tensor_recompose(const std::vector<TensorTerm<K>>& terms, int n) {
    Quadruple<K> acc = Quadruple<K>::zero(n);
    for (const auto& t : terms) acc = acc + t.coeff * tensor_embed(t.left, t.right, n);
    return acc;
}

}  // namespace qplane
