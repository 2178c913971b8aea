#pragma once

// Truncated sections of the structure sheaf F_q = O[[y]] x_{C[[x,y]]} [[x]]O:
// an F-side (layers F[n](z) of y^n) and a G-side (layers G[n](w) of x^n),
// tied by the compatibility grid  F[k].coeff(i) = G[i].coeff(k).
//
// The grid is checked eagerly on construction, which turns it into a free
// invariant test after every operation.

#include "qplane/germ.hpp"
#include "qplane/scalar.hpp"
#include "qplane/series.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace qplane {

template <class K>
class FqElement {
public:
    FqElement(const QParam<K>& q, int trunc, std::vector<Series1<K>> F, std::vector<Series1<K>> G)
        : q_(&q), trunc_(trunc), F_(std::move(F)), G_(std::move(G)) {
        if (int(F_.size()) != trunc_ + 1 || int(G_.size()) != trunc_ + 1)
            throw std::invalid_argument("FqElement: layer count != trunc + 1");
        for (auto& s : F_)
            if (s.trunc() != trunc_) throw std::invalid_argument("FqElement: layer cutoff");
        for (auto& s : G_)
            if (s.trunc() != trunc_) throw std::invalid_argument("FqElement: layer cutoff");
        check_grid();
    }

    static FqElement zero(const QParam<K>& q, int trunc) {
        return FqElement(q, trunc, std::vector<Series1<K>>(trunc + 1, Series1<K>(trunc)),
                         std::vector<Series1<K>>(trunc + 1, Series1<K>(trunc)));
    }
    static FqElement unit(const QParam<K>& q, int trunc) {
        auto e = zero(q, trunc);
        e.F_[0].coeff(0) = K::one();
        e.G_[0].coeff(0) = K::one();
        return e;
    }
    // ordered monomial x^i y^k: F[k] = z^i, G[i] = w^k
    static FqElement monomial(const QParam<K>& q, int trunc, int i, int k,
                              const K& c = K::one()) {
        auto e = zero(q, trunc);
        if (i <= trunc && k <= trunc) {
            e.F_[k].coeff(i) = c;
            e.G_[i].coeff(k) = c;
        }
        return e;
    }
    static FqElement gen_x(const QParam<K>& q, int trunc) { return monomial(q, trunc, 1, 0); }
    static FqElement gen_y(const QParam<K>& q, int trunc) { return monomial(q, trunc, 0, 1); }

    const QParam<K>& q() const { return *q_; }
    int trunc() const { return trunc_; }
    const Series1<K>& F(int n) const { return F_[n]; }
    const Series1<K>& G(int n) const { return G_[n]; }

    bool is_zero() const {
        for (const auto& s : F_)
            if (!s.is_zero()) return false;
        for (const auto& s : G_)
            if (!s.is_zero()) return false;
        return true;
    }

    FqElement operator-() const {
        FqElement r = *this;
        for (auto& s : r.F_) s = -s;
        for (auto& s : r.G_) s = -s;
        return r;
    }
    friend FqElement operator+(const FqElement& a, const FqElement& b) {
        a.check_compatible(b);
        FqElement r = a;
        for (int n = 0; n <= a.trunc_; ++n) {
            r.F_[n] += b.F_[n];
            r.G_[n] += b.G_[n];
        }
        return r;
    }
    friend FqElement operator-(const FqElement& a, const FqElement& b) {
        a.check_compatible(b);
        FqElement r = a;
        for (int n = 0; n <= a.trunc_; ++n) {
            r.F_[n] -= b.F_[n];
            r.G_[n] -= b.G_[n];
        }
        return r;
    }
    friend FqElement operator*(const K& c, FqElement a) {
        for (auto& s : a.F_) s *= c;
        for (auto& s : a.G_) s *= c;
        return a;
    }
    friend bool operator==(const FqElement& a, const FqElement& b) {
        a.check_compatible(b);
        return a.F_ == b.F_ && a.G_ == b.G_;
    }
    friend bool operator!=(const FqElement& a, const FqElement& b) { return !(a == b); }

    void check_compatible(const FqElement& o) const {
        if (trunc_ != o.trunc_) throw std::invalid_argument("FqElement: mismatched truncation");
        if (q_ != o.q_ && !(q_->value() == o.q_->value()))
            throw std::invalid_argument("FqElement: mismatched q");
    }

private:
    void check_grid() const {
        for (int k = 0; k <= trunc_; ++k)
            for (int i = 0; i <= trunc_; ++i)
                if (F_[k].coeff(i) != G_[i].coeff(k))
                    throw std::domain_error("FqElement: compatibility grid violated");
    }

    const QParam<K>* q_;
    int trunc_;
    std::vector<Series1<K>> F_, G_;
};

// p_d: projection onto F_q(U)^d.  Define p_d = 0 for d > trunc, so that
// sum_{d<=N} p_d = id holds on the truncated element.
template <class K>
FqElement<K> fq_project_pd(const FqElement<K>& x, int d) {
    const int N = x.trunc();
    if (d > N) return FqElement<K>::zero(x.q(), N);
    std::vector<Series1<K>> F(N + 1, Series1<K>(N)), G(N + 1, Series1<K>(N));
    // F side: layer d keeps F[d] minus the sub-d line read off the G side
    // (zero by the grid); layers k > d carry the z^d line G[d].coeff(k).
    F[d] = x.F(d);
    for (int i = 0; i < d; ++i) F[d].coeff(i) -= x.G(i).coeff(d);
    for (int k = d + 1; k <= N; ++k) F[k] = Series1<K>::monomial(N, d, x.G(d).coeff(k));
    G[d] = x.G(d);
    for (int i = 0; i < d; ++i) G[d].coeff(i) -= x.F(i).coeff(d);
    for (int i = d + 1; i <= N; ++i) G[i] = Series1<K>::monomial(N, d, x.F(d).coeff(i));
    return FqElement<K>(x.q(), N, std::move(F), std::move(G));
}

// alpha_d: O(d) -> F_q(U)^d on the raw pair (f, g) (both vanishing to order d
// with matching order-d coefficients).
template <class K>
FqElement<K> alpha_d(const RawGradedPair<K>& r, const QParam<K>& q) {
    const int N = r.f.trunc();
    const int d = r.degree;
    if (d > N) throw std::invalid_argument("alpha_d: degree above cutoff");
    for (int i = 0; i < d; ++i)
        if (!r.f.coeff(i).is_zero() || !r.g.coeff(i).is_zero())
            throw std::domain_error("alpha_d: pair not in O(d)");
    if (r.f.coeff(d) != r.g.coeff(d))
        throw std::domain_error("alpha_d: evaluations s_d != t_d");
    std::vector<Series1<K>> F(N + 1, Series1<K>(N)), G(N + 1, Series1<K>(N));
    F[d] = r.f;
    for (int k = d + 1; k <= N; ++k) F[k] = Series1<K>::monomial(N, d, r.g.coeff(k));
    G[d] = r.g;
    for (int i = d + 1; i <= N; ++i) G[i] = Series1<K>::monomial(N, d, r.f.coeff(i));
    return FqElement<K>(q, N, std::move(F), std::move(G));
}

template <class K>
FqElement<K> alpha_d(const GradedElement<K>& e, const QParam<K>& q) {
    return alpha_d(raise_degree(e), q);
}

// left inverse of alpha_d: read the y^d / x^d layers back off
template <class K>
RawGradedPair<K> alpha_d_inverse_raw(const FqElement<K>& x, int d) {
    return RawGradedPair<K>{x.F(d), x.G(d), d};
}

template <class K>
GradedElement<K> alpha_d_inverse(const FqElement<K>& x, int d) {
    return lower_degree(alpha_d_inverse_raw(x, d));
}

// Lambda(f,g) = (f_0, g_0): the retraction F_q(U) -> O(U)
template <class K>
GermPair<K> lambda_retract(const FqElement<K>& x) {
    return GermPair<K>(x.F(0), x.G(0));
}

// fibered product: F side by the left layer formula, G side by the right one
template <class K>
FqElement<K> fq_mul(const FqElement<K>& a, const FqElement<K>& b) {
    a.check_compatible(b);
    const auto& q = a.q();
    const int N = a.trunc();
    std::vector<Series1<K>> F(N + 1, Series1<K>(N)), G(N + 1, Series1<K>(N));
    for (int i = 0; i <= N; ++i) {
        if (a.F(i).is_zero()) continue;
        for (int j = 0; i + j <= N; ++j)
            F[i + j] += a.F(i) * b.F(j).scale_var(q.power(unsigned(i)));
    }
    for (int i = 0; i <= N; ++i) {
        if (a.G(i).is_zero()) continue;
        for (int j = 0; i + j <= N; ++j)
            G[i + j] += a.G(i).scale_var(q.power(unsigned(j))) * b.G(j);
    }
    // the constructor re-checks the grid; a violation here is a bug upstream
    return FqElement<K>(q, N, std::move(F), std::move(G));
}

// graded generator actions on the reduced model:
//   L_x = z + M_x,  L_y = q^d w + M_y,  R_x = q^d z + N_y,  R_y = w + N_x
enum class Generator { L_x, L_y, R_x, R_y };

template <class K>
std::pair<GradedElement<K>, GradedElement<K>> generator_action_graded(Generator gen,
                                                                      const GradedElement<K>& e,
                                                                      const QParam<K>& q) {
    const int d = e.degree();
    const K qd = q.power(unsigned(d));
    switch (gen) {
        case Generator::L_x:
            return {mult_z(e), op_M_x(e, q)};
        case Generator::L_y:
            return {GradedElement<K>(qd * mult_w(e.pair()), d), op_M_y(e, q)};
        case Generator::R_x:
            return {GradedElement<K>(qd * mult_z(e.pair()), d), op_N_y(e, q)};
        case Generator::R_y:
            return {mult_w(e), op_N_x(e, q)};
    }
    throw std::logic_error("unreachable");
}

}  // namespace qplane
