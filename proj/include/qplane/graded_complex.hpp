#pragma once

// The graded differentials of the F_q bimodule complex, restricted to the
// cells O_{d,l}:
//
//   d0|O_{d,l} = diag_d0 + M0_{d,l} + N0_{d,l},
//        M0 = [-q M_{y2,l} ; M_{x2,l}] : O_{d,l} -> O_{d,l+1}^2,
//        N0 = [N_{x1,d} ; -q N_{y1,d}] : O_{d,l} -> O_{d+1,l}^2,
//   d1|O_{d,l}^2 = diag_d1 + M_{d,l} - N_{d,l},
//
// lower triangular in the index order (i,j) < (s,t) iff i+j < s+t, or i < s
// when i+j = s+t (left-increasing; the mirrored right-increasing order is
// exposed as an option).

#include "qplane/diag_complex.hpp"
#include "qplane/fqelement.hpp"
#include "qplane/quadruple.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qplane {

struct CellIndex {
    int d = 0, l = 0;
};

enum class HomogeneousOrder { left_increasing, right_increasing };

inline bool cell_less(const CellIndex& a, const CellIndex& b,
                      HomogeneousOrder ord = HomogeneousOrder::left_increasing) {
    if (a.d + a.l != b.d + b.l) return a.d + a.l < b.d + b.l;
    return ord == HomogeneousOrder::left_increasing ? a.d < b.d : a.l < b.l;
}

inline bool operator<(const CellIndex& a, const CellIndex& b) { return cell_less(a, b); }

// M0_{d,l} : O_{d,l} -> O_{d,l+1}^2
template <class K>
QuadruplePair<K> op_M0_dl(const Quadruple<K>& z, const DiagParams<K>& p) {
    const auto& q = p.qp();
    return {(-q.value()) * lifted_M_y2(z, q, p.l), lifted_M_x2(z, q, p.l)};
}

// N0_{d,l} : O_{d,l} -> O_{d+1,l}^2
template <class K>
QuadruplePair<K> op_N0_dl(const Quadruple<K>& z, const DiagParams<K>& p) {
    const auto& q = p.qp();
    return {lifted_N_x1(z, q, p.d), (-q.value()) * lifted_N_y1(z, q, p.d)};
}

// graded chains: one compatible quadruple per cell with d + l <= max degree
template <class K>
class GradedChain {
public:
    GradedChain(int max_degree, int trunc) : maxn_(max_degree), trunc_(trunc) {}

    int max_degree() const { return maxn_; }
    int trunc() const { return trunc_; }

    bool has(int d, int l) const { return cells_.count({d, l}) != 0; }
    const Quadruple<K>& at(int d, int l) const {
        auto it = cells_.find({d, l});
        if (it == cells_.end()) throw std::out_of_range("GradedChain: empty cell");
        return it->second;
    }
    Quadruple<K> at_or_zero(int d, int l) const {
        auto it = cells_.find({d, l});
        return it == cells_.end() ? Quadruple<K>::zero(trunc_) : it->second;
    }
    void set(int d, int l, Quadruple<K> q) {
        if (d < 0 || l < 0 || d + l > maxn_) throw std::out_of_range("GradedChain: bad cell");
        cells_.insert_or_assign(CellIndex{d, l}, std::move(q));
    }

    // cells in the chosen linear order
    std::vector<CellIndex> indices(HomogeneousOrder ord = HomogeneousOrder::left_increasing) const {
        std::vector<CellIndex> out;
        for (const auto& [k, v] : cells_) out.push_back(k);
        std::sort(out.begin(), out.end(),
                  [ord](const CellIndex& a, const CellIndex& b) { return cell_less(a, b, ord); });
        return out;
    }

private:
    struct Cmp {
        bool operator()(const CellIndex& a, const CellIndex& b) const { return cell_less(a, b); }
    };
    int maxn_, trunc_;
    std::map<CellIndex, Quadruple<K>, Cmp> cells_;
};

template <class K>
struct GradedChainPair {
    GradedChain<K> first, second;
    GradedChainPair(int max_degree, int trunc)
        : first(max_degree, trunc), second(max_degree, trunc) {}
};

// (d0 xi)_{i,j} = diag_d0 xi_{i,j} + M0 xi_{i,j-1} + N0 xi_{i-1,j}
template <class K>
GradedChainPair<K> graded_d0(const GradedChain<K>& xi, const QParam<K>& q) {
    GradedChainPair<K> out(xi.max_degree(), xi.trunc());
    for (int n = 0; n <= xi.max_degree(); ++n)
        for (int i = 0; i <= n; ++i) {
            const int j = n - i;
            DiagParams<K> here(q, i, j, xi.trunc());
            QuadruplePair<K> acc = diag_d0(xi.at_or_zero(i, j), here);
            if (j >= 1) {
                DiagParams<K> src(q, i, j - 1, xi.trunc());
                QuadruplePair<K> m = op_M0_dl(xi.at_or_zero(i, j - 1), src);
                acc.first = acc.first + m.first;
                acc.second = acc.second + m.second;
            }
            if (i >= 1) {
                DiagParams<K> src(q, i - 1, j, xi.trunc());
                QuadruplePair<K> nn = op_N0_dl(xi.at_or_zero(i - 1, j), src);
                acc.first = acc.first + nn.first;
                acc.second = acc.second + nn.second;
            }
            out.first.set(i, j, std::move(acc.first));
            out.second.set(i, j, std::move(acc.second));
        }
    return out;
}

// (d1 psi)_{i,j} = diag_d1 psi_{i,j} + M_{i,j-1} psi_{i,j-1} - N_{i-1,j} psi_{i-1,j}
template <class K>
GradedChain<K> graded_d1(const GradedChainPair<K>& psi, const QParam<K>& q) {
    GradedChain<K> out(psi.first.max_degree(), psi.first.trunc());
    const int N = psi.first.trunc();
    for (int n = 0; n <= psi.first.max_degree(); ++n)
        for (int i = 0; i <= n; ++i) {
            const int j = n - i;
            DiagParams<K> here(q, i, j, N);
            Quadruple<K> acc = diag_d1({psi.first.at_or_zero(i, j), psi.second.at_or_zero(i, j)},
                                       here);
            if (j >= 1) {
                DiagParams<K> src(q, i, j - 1, N);
                acc = acc + op_M_dl<K>({psi.first.at_or_zero(i, j - 1),
                                        psi.second.at_or_zero(i, j - 1)},
                                       src);
            }
            if (i >= 1) {
                DiagParams<K> src(q, i - 1, j, N);
                acc = acc - op_N_dl<K>({psi.first.at_or_zero(i - 1, j),
                                        psi.second.at_or_zero(i - 1, j)},
                                       src);
            }
            out.set(i, j, std::move(acc));
        }
    return out;
}

// ---- the Gamma corrections of the multiplication morphism ----

// F_q product defect of an elementary tensor: the full multiplication minus
// the alpha-image of the multiplication diagonal pi_dl_mult (the q^{dl}
// factor of the (d,l)-isomorphism must be kept here, or the low-degree
// layers fail to cancel); Gamma_m is the p_m projection of the defect.
template <class K>
FqElement<K> gamma_defect(const GradedElement<K>& zeta, const GradedElement<K>& eta,
                          const QParam<K>& q) {
    FqElement<K> prod = fq_mul(alpha_d(zeta, q), alpha_d(eta, q));
    Quadruple<K> tensor = tensor_embed(zeta.pair(), eta.pair(), zeta.pair().trunc());
    GradedElement<K> pi = pi_dl_mult(tensor, q, zeta.degree(), eta.degree());
    return prod - alpha_d(pi, q);
}

// Gamma^{d,l}_m (zeta (x) eta) as a reduced graded element of degree m;
// vanishes for m <= d + l.
template <class K>
GradedElement<K> gamma_correction(const GradedElement<K>& zeta, const GradedElement<K>& eta,
                                  int m, const QParam<K>& q) {
    if (m > zeta.pair().trunc()) throw std::out_of_range("gamma_correction: m above cutoff");
    FqElement<K> defect = gamma_defect(zeta, eta, q);
    return alpha_d_inverse(fq_project_pd(defect, m), m);
}

}  // namespace qplane
