#pragma once

// Left and right diagonal q-complexes:
//
//   left  (over C[[x1,x2]][[y]]):   d0 = [N_y ; x2 - q x1 D_{y,q}],
//                                   d1 = [x2 - x1 D_{y,q} , -N_y],
//                                   pi(h) = h_0(x,x)
//   right (over [[x]]C[[y1,y2]]):   d0 = [y1 - q y2 D_{x,q} ; N_x],
//                                   d1 = [N_x , y2 D_{x,q} - y1],
//                                   pi(h) = h_0(y,y)
//
// The formal model (truncated power-series coefficients) and the holomorphic
// model (truncated polynomial coefficients) coincide coefficientwise at a
// finite cutoff; both entry points run the same exact arithmetic, and the
// witness constructors below are the closed forms from the exactness proofs.

#include "qplane/scalar.hpp"
#include "qplane/series.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace qplane {

// layers[n] = coefficient of y^n (left) or x^n (right), a 2-variable series
template <class K>
class ChainElement {
public:
    ChainElement(int layers, int coeff_trunc)
        : layers_(layers + 1, Series2<K>(coeff_trunc, coeff_trunc)) {}
    explicit ChainElement(std::vector<Series2<K>> layers) : layers_(std::move(layers)) {}

    int top_layer() const { return int(layers_.size()) - 1; }
    int coeff_trunc() const { return layers_[0].trunc_u(); }
    const Series2<K>& layer(int n) const { return layers_[n]; }
    Series2<K>& layer(int n) { return layers_[n]; }

    bool is_zero() const {
        for (const auto& s : layers_)
            if (!s.is_zero()) return false;
        return true;
    }
    // zero within a coefficient window on every layer up to `top`
    bool is_zero_within(int top, int w) const {
        for (int n = 0; n <= std::min(top, top_layer()); ++n)
            if (!layers_[n].is_zero_within(w)) return false;
        return true;
    }

    ChainElement operator-() const {
        ChainElement r = *this;
        for (auto& s : r.layers_) s = -s;
        return r;
    }
    friend ChainElement operator+(const ChainElement& a, const ChainElement& b) {
        ChainElement r = a;
        for (size_t k = 0; k < r.layers_.size(); ++k) r.layers_[k] += b.layers_[k];
        return r;
    }
    friend ChainElement operator-(const ChainElement& a, const ChainElement& b) {
        ChainElement r = a;
        for (size_t k = 0; k < r.layers_.size(); ++k) r.layers_[k] -= b.layers_[k];
        return r;
    }
    friend bool operator==(const ChainElement& a, const ChainElement& b) {
        return a.layers_ == b.layers_;
    }

    bool equal_within(const ChainElement& o, int top, int w) const {
        for (int n = 0; n <= std::min({top, top_layer(), o.top_layer()}); ++n)
            if (!layers_[n].equal_within(o.layers_[n], w)) return false;
        return true;
    }

private:
    std::vector<Series2<K>> layers_;
};

template <class K>
using ChainPair = std::pair<ChainElement<K>, ChainElement<K>>;

enum class Side { left, right };

// shift operator N (layer n of the output is layer n-1 of the input)
template <class K>
ChainElement<K> chain_shift(const ChainElement<K>& f) {
    ChainElement<K> r(f.top_layer(), f.coeff_trunc());
    for (int n = 1; n <= f.top_layer(); ++n) r.layer(n) = f.layer(n - 1);
    return r;
}

// q-diagonal D: layer n scaled by q^n
template <class K>
ChainElement<K> chain_qdiag(const ChainElement<K>& f, const QParam<K>& q) {
    ChainElement<K> r = f;
    for (int n = 0; n <= f.top_layer(); ++n) r.layer(n) *= q.power(unsigned(n));
    return r;
}

// left: (x2 - q^{n+s} x1) on layer n; right: (y1 - q^{n+s} y2) on layer n.
// `s` is the extra power (0 for the d1 row, 1 for the d0 row).
template <class K>
ChainElement<K> chain_pencil(const ChainElement<K>& f, const QParam<K>& q, Side side, int s) {
    ChainElement<K> r(f.top_layer(), f.coeff_trunc());
    for (int n = 0; n <= f.top_layer(); ++n) {
        const K qs = q.power(unsigned(n + s));
        if (side == Side::left)
            r.layer(n) = f.layer(n).mul_v() - qs * f.layer(n).mul_u();
        else
            r.layer(n) = f.layer(n).mul_u() - qs * f.layer(n).mul_v();
    }
    return r;
}

template <class K>
ChainPair<K> formal_d0(const ChainElement<K>& h, const QParam<K>& q, Side side) {
    if (side == Side::left)
        return {chain_shift(h), chain_pencil(h, q, side, 1)};
    return {chain_pencil(h, q, side, 1), chain_shift(h)};
}

template <class K>
ChainElement<K> formal_d1(const ChainPair<K>& fg, const QParam<K>& q, Side side) {
    if (side == Side::left)
        return chain_pencil(fg.first, q, side, 0) - chain_shift(fg.second);
    return chain_shift(fg.first) - chain_pencil(fg.second, q, side, 0);
}

// pi(h) = h_0 on the diagonal
template <class K>
Series1<K> formal_pi(const ChainElement<K>& h) {
    return h.layer(0).eval_diag(K::one()).resized(h.coeff_trunc());
}

// ker(d1) -> preimage under d0.   Left: h = sum f_{n+1} y^n; right mirrored.
// The argument must satisfy d1(f,g) = 0; checked within the stated windows.
template <class K>
ChainElement<K> witness_d0_preimage(const ChainPair<K>& fg, const QParam<K>& q, Side side,
                                    int top, int w) {
    if (!formal_d1(fg, q, side).is_zero_within(top, w))
        throw std::domain_error("witness_d0_preimage: not in ker d1");
    const ChainElement<K>& lead = (side == Side::left) ? fg.first : fg.second;
    if (!lead.layer(0).is_zero_within(w))
        throw std::domain_error("witness_d0_preimage: layer 0 nonzero, not a kernel element");
    ChainElement<K> h(lead.top_layer(), lead.coeff_trunc());
    for (int n = 0; n + 1 <= lead.top_layer(); ++n) h.layer(n) = lead.layer(n + 1);
    return h;
}

// ker(pi) -> preimage under d1 via the Taylor-formula factorization
// h_0 = (x2 - x1) f_0 (left) or h_0 = (y2 - y1) g_0 (right).
template <class K>
ChainPair<K> witness_d1_preimage(const ChainElement<K>& h, const QParam<K>& q, Side side) {
    (void)q;
    Series1<K> diag = formal_pi(h);
    if (!diag.is_zero()) throw std::domain_error("witness_d1_preimage: not in ker pi");
    Series2<K> quotient = divide_diagonal(h.layer(0));
    ChainElement<K> a(h.top_layer(), h.coeff_trunc());
    ChainElement<K> b(h.top_layer(), h.coeff_trunc());
    if (side == Side::left) {
        a.layer(0) = quotient;                    // f = f_0
        for (int n = 0; n + 1 <= h.top_layer(); ++n) b.layer(n) = -h.layer(n + 1);
    } else {
        for (int n = 0; n + 1 <= h.top_layer(); ++n) a.layer(n) = h.layer(n + 1);
        b.layer(0) = quotient;                    // g = g_0
    }
    return {std::move(a), std::move(b)};
}

// The holomorphic complexes run the same operators over truncated polynomial
// coefficients; at a finite cutoff the two coefficient models carry the same
// data, so the entry points coincide.
template <class K>
ChainPair<K> holo_d0(const ChainElement<K>& h, const QParam<K>& q, Side side) {
    return formal_d0(h, q, side);
}
template <class K>
ChainElement<K> holo_d1(const ChainPair<K>& fg, const QParam<K>& q, Side side) {
    return formal_d1(fg, q, side);
}
template <class K>
Series1<K> holo_pi(const ChainElement<K>& h) {
    return formal_pi(h);
}
template <class K>
ChainElement<K> holo_witness_d0_preimage(const ChainPair<K>& fg, const QParam<K>& q, Side side,
                                         int top, int w) {
    return witness_d0_preimage(fg, q, side, top, w);
}
template <class K>
ChainPair<K> holo_witness_d1_preimage(const ChainElement<K>& h, const QParam<K>& q, Side side) {
    return witness_d1_preimage(h, q, side);
}

}  // namespace qplane
