#pragma once

// The diagonal cochain complex O_q(d,l):
//
//   0 -> O_{d,l} --d0--> O_{d,l}^2 --d1--> O_{d,l} --pi--> O_{d+l} -> 0
//
//   d0 = [ w1 - q^{l+1} w2 ; z2 - q^{d+1} z1 ],
//   d1 = [ z2 - q^d z1 , q^l w2 - w1 ],
//
// together with the operator T on free quadruples (whose image is ker d1),
// its inverses, the splitting Phi/Psi of H^1, and the homotopies tau0/tau1.
// Every witness below is a closed-form construction;
// no linear solving anywhere.

#include "qplane/germ.hpp"
#include "qplane/quadruple.hpp"
#include "qplane/scalar.hpp"
#include "qplane/series.hpp"

#include <stdexcept>
#include <utility>

namespace qplane {

template <class K>
struct DiagParams {
    const QParam<K>* q;
    int d = 0, l = 0;
    int trunc = 0;

    DiagParams(const QParam<K>& qq, int dd, int ll, int n) : q(&qq), d(dd), l(ll), trunc(n) {}
    const QParam<K>& qp() const { return *q; }
};

template <class K>
using QuadruplePair = std::pair<Quadruple<K>, Quadruple<K>>;

// d0(z) = ((w1 - q^{l+1} w2) z, (z2 - q^{d+1} z1) z); consumes one window degree
template <class K>
QuadruplePair<K> diag_d0(const Quadruple<K>& z, const DiagParams<K>& p) {
    if (!z.compatible()) throw std::invalid_argument("diag_d0: free quadruple");
    const auto& q = p.qp();
    Quadruple<K> row1 =
        mult_var(Var::w1, z) - q.power(unsigned(p.l) + 1) * mult_var(Var::w2, z);
    Quadruple<K> row2 =
        mult_var(Var::z2, z) - q.power(unsigned(p.d) + 1) * mult_var(Var::z1, z);
    return {std::move(row1), std::move(row2)};
}

// d1(a, b) = (z2 - q^d z1) a + (q^l w2 - w1) b
template <class K>
Quadruple<K> diag_d1(const QuadruplePair<K>& ab, const DiagParams<K>& p) {
    if (!ab.first.compatible() || !ab.second.compatible())
        throw std::invalid_argument("diag_d1: free quadruple");
    const auto& q = p.qp();
    return mult_var(Var::z2, ab.first) - q.power(unsigned(p.d)) * mult_var(Var::z1, ab.first) +
           q.power(unsigned(p.l)) * mult_var(Var::w2, ab.second) - mult_var(Var::w1, ab.second);
}

template <class K>
GradedElement<K> diag_pi(const Quadruple<K>& h, const DiagParams<K>& p) {
    return pi_dl(h, p.qp(), p.d, p.l);
}

template <class K>
bool is_cocycle(const QuadruplePair<K>& ab, const DiagParams<K>& p, int window) {
    return diag_d1(ab, p).is_zero_within(window);
}

// h / u with h(0, v) required to vanish (within the stored block)
template <class K>
Series2<K> shift_down_u(const Series2<K>& h) {
    for (int j = 0; j <= h.trunc_v(); ++j)
        if (!h.at(0, j).is_zero())
            throw std::domain_error("shift_down_u: series not divisible by u");
    Series2<K> r(h.trunc_u(), h.trunc_v());
    for (int i = 0; i + 1 <= h.trunc_u(); ++i)
        for (int j = 0; j <= h.trunc_v(); ++j) r.at(i, j) = h.at(i + 1, j);
    return r;
}

template <class K>
Series2<K> shift_down_v(const Series2<K>& h) {
    for (int i = 0; i <= h.trunc_u(); ++i)
        if (!h.at(i, 0).is_zero())
            throw std::domain_error("shift_down_v: series not divisible by v");
    Series2<K> r(h.trunc_u(), h.trunc_v());
    for (int i = 0; i <= h.trunc_u(); ++i)
        for (int j = 0; j + 1 <= h.trunc_v(); ++j) r.at(i, j) = h.at(i, j + 1);
    return r;
}

// T: Z(U) -> O_{d,l}^2.  theta is a free quadruple; the output pair lies in
// ker d1.  Consumes one window degree.
template <class K>
QuadruplePair<K> op_T(const Quadruple<K>& theta, const DiagParams<K>& p) {
    const auto& q = p.qp();
    const int n = theta.trunc();
    const K ql1 = q.power(unsigned(p.l) + 1);
    const K qd1 = q.power(unsigned(p.d) + 1);
    Series2<K> zero(n, n);

    Series2<K> zeta2 = (-ql1) * theta.c2().mul_v();               // -q^{l+1} w2 theta2
    Series2<K> zeta3 = theta.c3().mul_u();                        // w1 theta3
    // zeta4 = w1 theta3(w1,0) - q^{l+1} w2 theta2(0,w2) + w1 w2 theta4
    Series2<K> zeta4 = Series2<K>::from_u(n, n, theta.c3().eval_v0()).mul_u() -
                       ql1 * Series2<K>::from_v(n, n, theta.c2().eval_u0()).mul_v() +
                       theta.c4().mul_u().mul_v();
    Quadruple<K> zeta(zero, std::move(zeta2), std::move(zeta3), std::move(zeta4), true);

    // eta1 = -q^{d+1} z1 theta2(z1,0) + z2 theta3(0,z2) + z1 z2 theta1
    Series2<K> eta1 = (-qd1) * Series2<K>::from_u(n, n, theta.c2().eval_v0()).mul_u() +
                      Series2<K>::from_v(n, n, theta.c3().eval_u0()).mul_v() +
                      theta.c1().mul_u().mul_v();
    Series2<K> eta2 = (-qd1) * theta.c2().mul_u();                // -q^{d+1} z1 theta2
    Series2<K> eta3 = theta.c3().mul_v();                         // z2 theta3
    Quadruple<K> eta(std::move(eta1), std::move(eta2), std::move(eta3), zero, true);

    return {std::move(zeta), std::move(eta)};
}

// T^{-1} on ker(d1); rejects non-cocycles.  The divisions are exact shifts,
// so inputs should carry enough degree headroom that the divisibility checks
// are meaningful on the stored block.
template <class K>
Quadruple<K> op_T_inverse(const QuadruplePair<K>& ab, const DiagParams<K>& p, int window = -1) {
    const auto& q = p.qp();
    const int n = ab.first.trunc();
    if (window < 0) window = n - 1;
    if (!is_cocycle(ab, p, window)) throw std::domain_error("op_T_inverse: not a cocycle");
    const Quadruple<K>& zeta = ab.first;
    const Quadruple<K>& eta = ab.second;
    const K ql1 = q.power(unsigned(p.l) + 1);
    const K qd1 = q.power(unsigned(p.d) + 1);

    // zeta2 = -q^{l+1} w2 theta2  =>  theta2 = -q^{-l-1} zeta2 / w2
    Series2<K> theta2 = (-(K::one() / ql1)) * shift_down_v(zeta.c2());
    // zeta3 = w1 theta3
    Series2<K> theta3 = shift_down_u(zeta.c3());
    // zeta4 - w1 theta3(w1,0) + q^{l+1} w2 theta2(0,w2) = w1 w2 theta4
    Series2<K> rem4 = zeta.c4() - Series2<K>::from_u(n, n, theta3.eval_v0()).mul_u() +
                      ql1 * Series2<K>::from_v(n, n, theta2.eval_u0()).mul_v();
    Series2<K> theta4 = shift_down_u(shift_down_v(rem4));
    // eta1 + q^{d+1} z1 theta2(z1,0) - z2 theta3(0,z2) = z1 z2 theta1
    Series2<K> rem1 = eta.c1() +
                      qd1 * Series2<K>::from_u(n, n, theta2.eval_v0()).mul_u() -
                      Series2<K>::from_v(n, n, theta3.eval_u0()).mul_v();
    Series2<K> theta1 = shift_down_u(shift_down_v(rem1));
    return Quadruple<K>::free(std::move(theta1), std::move(theta2), std::move(theta3),
                              std::move(theta4));
}

// T^{-1} d0 in closed form,
//   theta = ( (a1)_{z1} - q^{d+1} (a1)_{z2}, a2, a3, (a4)_{w2} - q^{l+1} (a4)_{w1} ).
template <class K>
Quadruple<K> op_Tinv_d0(const Quadruple<K>& a, const DiagParams<K>& p) {
    if (!a.compatible()) throw std::invalid_argument("op_Tinv_d0: free quadruple");
    const auto& q = p.qp();
    Series2<K> theta1 = diff_quot_u(a.c1()) - q.power(unsigned(p.d) + 1) * diff_quot_v(a.c1());
    Series2<K> theta4 = diff_quot_v(a.c4()) - q.power(unsigned(p.l) + 1) * diff_quot_u(a.c4());
    return Quadruple<K>::free(std::move(theta1), a.c2(), a.c3(), std::move(theta4));
}

// membership conditions (Theta) of I(U), checked as one-variable polynomial
// identities within the window
template <class K>
bool theta_conditions_hold(const Quadruple<K>& theta, const DiagParams<K>& p, int window) {
    const auto& q = p.qp();
    if (theta.c2().at(0, 0) != theta.c3().at(0, 0)) return false;
    // theta1(z1, q^{d+1} z1) = (theta2(z1,0) - theta3(0, q^{d+1} z1)) / z1
    {
        Series1<K> lhs = theta.c1().eval_diag(q.power(unsigned(p.d) + 1));
        Series1<K> num =
            theta.c2().eval_v0() - theta.c3().eval_u0().scale_var(q.power(unsigned(p.d) + 1));
        if (!num.coeff(0).is_zero()) return false;
        Series1<K> rhs = diff_quot(num.resized(theta.trunc()));
        for (int k = 0; k <= window && k <= theta.trunc() - 1; ++k)
            if (lhs.coeff(k) != rhs.coeff(k)) return false;
    }
    // theta4(q^{l+1} w2, w2) = (theta2(0,w2) - theta3(q^{l+1} w2, 0)) / w2
    {
        Series1<K> lhs = theta.c4().eval_diag_u(q.power(unsigned(p.l) + 1));
        Series1<K> num =
            theta.c2().eval_u0() - theta.c3().eval_v0().scale_var(q.power(unsigned(p.l) + 1));
        if (!num.coeff(0).is_zero()) return false;
        Series1<K> rhs = diff_quot(num.resized(theta.trunc()));
        for (int k = 0; k <= window && k <= theta.trunc() - 1; ++k)
            if (lhs.coeff(k) != rhs.coeff(k)) return false;
    }
    return true;
}

// Reassemble the compatible quadruple alpha with T^{-1} d0 (alpha) = theta for
// theta in I(U) (the converse of the closed form above).
template <class K>
Quadruple<K> quadruple_from_theta(const Quadruple<K>& theta, const DiagParams<K>& p) {
    const auto& q = p.qp();
    const int n = theta.trunc();
    const K qd1 = q.power(unsigned(p.d) + 1);
    const K ql1 = q.power(unsigned(p.l) + 1);
    // (z2 - q^{d+1} z1) a1 = -q^{d+1} z1 theta2(z1,0) + z2 theta3(0,z2) + z1 z2 theta1
    Series2<K> rhs1 = -qd1 * Series2<K>::from_u(n, n, theta.c2().eval_v0()).mul_u() +
                      Series2<K>::from_v(n, n, theta.c3().eval_u0()).mul_v() +
                      theta.c1().mul_u().mul_v();
    Series2<K> a1 = divide_linear(rhs1, qd1, n - 1);
    // (w1 - q^{l+1} w2) a4 = w1 theta3(w1,0) - q^{l+1} w2 theta2(0,w2) + w1 w2 theta4
    Series2<K> rhs4 = Series2<K>::from_u(n, n, theta.c3().eval_v0()).mul_u() -
                      ql1 * Series2<K>::from_v(n, n, theta.c2().eval_u0()).mul_v() +
                      theta.c4().mul_u().mul_v();
    // divide by (u - q^{l+1} v) in (u,v) = (w1,w2): swap, divide by (v' - c u'), swap back
    Series2<K> a4 = divide_linear(rhs4.swap_vars(), ql1, n - 1).swap_vars();
    return Quadruple<K>(std::move(a1), theta.c2(), theta.c3(), std::move(a4), true);
}

// Phi: Z(U) -> O(U), the H^1 representative map
template <class K>
GermPair<K> op_Phi(const Quadruple<K>& theta, const DiagParams<K>& p) {
    const auto& q = p.qp();
    const int n = theta.trunc();
    const K qd1 = q.power(unsigned(p.d) + 1);
    const K ql1 = q.power(unsigned(p.l) + 1);
    // f(z) = z theta1(z, q^{d+1} z) - theta2(z,0) + theta3(0, q^{d+1} z)
    Series1<K> f = theta.c1().eval_diag(qd1).resized(n).shift_up(1) - theta.c2().eval_v0() +
                   theta.c3().eval_u0().scale_var(qd1);
    // g(w) = w theta4(q^{l+1} w, w) - theta2(0,w) + theta3(q^{l+1} w, 0)
    Series1<K> g = theta.c4().eval_diag_u(ql1).resized(n).shift_up(1) - theta.c2().eval_u0() +
                   theta.c3().eval_v0().scale_var(ql1);
    return GermPair<K>(std::move(f), std::move(g));
}

// Psi(f,g) = (f_z(z1), 0, f(0), g_w(w2)): continuous right inverse of Phi
template <class K>
Quadruple<K> op_Psi(const GermPair<K>& fg, int n) {
    Series2<K> t1 = Series2<K>::from_u(n, n, diff_quot(fg.f()));
    Series2<K> t3 = Series2<K>::constant(n, n, fg.f().at_zero());
    Series2<K> t4 = Series2<K>::from_v(n, n, diff_quot(fg.g()));
    return Quadruple<K>::free(std::move(t1), Series2<K>(n, n), std::move(t3), std::move(t4));
}

// Split a cocycle beta = d0(alpha) + T(Psi(rep)): returns the H^1
// representative and the coboundary preimage alpha.
template <class K>
struct H1Split {
    GermPair<K> representative;
    Quadruple<K> coboundary_preimage;
};

template <class K>
H1Split<K> cohomology_h1_split(const QuadruplePair<K>& beta, const DiagParams<K>& p,
                               int window = -1) {
    Quadruple<K> theta = op_T_inverse(beta, p, window);
    GermPair<K> rep = op_Phi(theta, p);
    Quadruple<K> proj = op_Psi(rep, theta.trunc());
    Quadruple<K> in_IU = theta - proj;  // ker Phi = I(U)
    Quadruple<K> alpha = quadruple_from_theta(in_IU, p);
    return H1Split<K>{std::move(rep), std::move(alpha)};
}

// ---- the contracting homotopies ----

// tau0(f,g) = (f(z1), -f(0) + f(z1) + g(w2), g(0), g(w2))
template <class K>
Quadruple<K> homotopy_tau0(const GermPair<K>& fg, int n) {
    Series2<K> c1 = Series2<K>::from_u(n, n, fg.f());
    Series2<K> c2 = Series2<K>::from_u(n, n, fg.f()) + Series2<K>::from_v(n, n, fg.g());
    c2.at(0, 0) -= fg.f().at_zero();
    Series2<K> c3 = Series2<K>::constant(n, n, fg.g().at_zero());
    Series2<K> c4 = Series2<K>::from_v(n, n, fg.g());
    return Quadruple<K>(std::move(c1), std::move(c2), std::move(c3), std::move(c4), true);
}

// tau1(zeta) = [alpha; beta] with the displayed component formulas
template <class K>
QuadruplePair<K> homotopy_tau1(const Quadruple<K>& zeta, const DiagParams<K>& p) {
    if (!zeta.compatible()) throw std::invalid_argument("homotopy_tau1: free quadruple");
    const auto& q = p.qp();
    const int n = zeta.trunc();
    const K qd = q.power(unsigned(p.d));
    const K ql = q.power(unsigned(p.l));

    // alpha1 = (zeta1(z1,z2) - zeta1(z1, q^d z1)) / (z2 - q^d z1)
    Series2<K> f_embedded(n, n);
    {
        Series1<K> f = zeta.c1().eval_diag(qd).resized(n);
        f_embedded = Series2<K>::from_u(n, n, f);
    }
    Series2<K> alpha1 = divide_linear(zeta.c1() - f_embedded, qd, n - 1);
    Series2<K> chi2 = diff_quot_v(diff_quot_u(zeta.c2()));  // (zeta2)_{z1 w2}
    const K qd_inv = K::one() / qd;
    Series2<K> alpha2 = Series2<K>::from_u(n, n, alpha1.eval_v0()) - qd_inv * chi2.mul_v();
    Series2<K> alpha3 = Series2<K>::from_v(n, n, alpha1.eval_u0());
    Series2<K> alpha4 = Series2<K>::constant(n, n, alpha1.at(0, 0)) -
                        qd_inv * Series2<K>::from_v(n, n, chi2.eval_u0()).mul_v();
    Quadruple<K> alpha(std::move(alpha1), std::move(alpha2), std::move(alpha3),
                       std::move(alpha4), true);

    // beta4 = (zeta4(w1,w2) - zeta4(q^l w2, w2)) / (q^l w2 - w1)
    Series2<K> g_embedded(n, n);
    {
        Series1<K> g = zeta.c4().eval_diag_u(ql).resized(n);
        g_embedded = Series2<K>::from_v(n, n, g);
    }
    Series2<K> beta4 =
        -divide_linear((zeta.c4() - g_embedded).swap_vars(), ql, n - 1).swap_vars();
    Series2<K> chi3 = diff_quot_v(diff_quot_u(zeta.c3()));  // (zeta3)_{w1 z2}
    Series2<K> beta1 = Series2<K>::constant(n, n, beta4.at(0, 0)) -
                       Series2<K>::from_v(n, n, chi3.eval_u0()).mul_v();
    Series2<K> beta2 = Series2<K>::from_v(n, n, beta4.eval_u0());
    Series2<K> beta3 = Series2<K>::from_u(n, n, beta4.eval_v0()) - chi3.mul_v();
    Quadruple<K> beta(std::move(beta1), std::move(beta2), std::move(beta3), std::move(beta4),
                      true);

    return {std::move(alpha), std::move(beta)};
}

// ---- the partial difference operators M_{d,l}, N_{d,l} on pairs ----

// M_{d,l} = [ M_{x2,l}  M_{y2,l} ] : O_{d,l}^2 -> O_{d,l+1}
template <class K>
Quadruple<K> op_M_dl(const QuadruplePair<K>& ab, const DiagParams<K>& p) {
    return lifted_M_x2(ab.first, p.qp(), p.l) + lifted_M_y2(ab.second, p.qp(), p.l);
}

// N_{d,l} = [ N_{y1,d}  N_{x1,d} ] : O_{d,l}^2 -> O_{d+1,l}
template <class K>
Quadruple<K> op_N_dl(const QuadruplePair<K>& ab, const DiagParams<K>& p) {
    return lifted_N_y1(ab.first, p.qp(), p.d) + lifted_N_x1(ab.second, p.qp(), p.d);
}

// Coboundary criterion: if beta in ker d1 has M beta in ker pi_{d,l+1} or N beta in
// ker pi_{d+1,l}, then beta = d0(alpha).  Returns whether the hypothesis
// holds within the window, and when it does, the recovered preimage.
template <class K>
struct CoboundaryResult {
    bool hypothesis;
    bool preimage_valid;
    Quadruple<K> preimage;
};

template <class K>
CoboundaryResult<K> coboundary_criterion(const QuadruplePair<K>& beta, const DiagParams<K>& p, int window) {
    if (!is_cocycle(beta, p, window)) throw std::domain_error("coboundary_criterion: not a cocycle");
    const auto& q = p.qp();
    GradedElement<K> piM = pi_dl(op_M_dl(beta, p), q, p.d, p.l + 1);
    GradedElement<K> piN = pi_dl(op_N_dl(beta, p), q, p.d + 1, p.l);
    bool hypo_M = piM.pair().f().resized(window).is_zero() &&
                  piM.pair().g().resized(window).is_zero();
    bool hypo_N = piN.pair().f().resized(window).is_zero() &&
                  piN.pair().g().resized(window).is_zero();
    const bool hypothesis = hypo_M || hypo_N;
    if (!hypothesis)
        return CoboundaryResult<K>{false, false, Quadruple<K>::zero(beta.first.trunc())};
    Quadruple<K> theta = op_T_inverse(beta, p, window);
    return CoboundaryResult<K>{true, true, quadruple_from_theta(theta, p)};
}

}  // namespace qplane
