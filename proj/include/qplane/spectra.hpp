#pragma once

// Taylor spectrum of finite-dimensional q-modules via the Koszul complex
// coming from the bimodule resolution of the quantum plane, and the Putinar
// spectrum as its q-closure.
//
// At a point gamma = (lambda, mu) of C_xy (lambda mu = 0) the complex is
//
//   0 -> X --d1--> X^2 --d0--> X -> 0,
//   d1 v       = ((mu I - q S) v, (T - q lambda I) v),
//   d0 (v1,v2) = (T - lambda I) v1 + (S - mu I) v2.
//
// The suites pin these blocks down independently: they first confirm the
// expansion d0 d1 = S T - q T S + (q - 1) lambda mu I on unconstrained
// inputs, which forces d0 d1 = 0 exactly under TS = q^{-1}ST and
// lambda mu = 0.

#include "qplane/matrix.hpp"
#include "qplane/qtopology.hpp"
#include "qplane/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qplane {

template <class K>
struct MatrixQModule {
    QParam<K> q;
    Matrix<K> T, S;

    MatrixQModule(QParam<K> qq, Matrix<K> t, Matrix<K> s)
        : q(std::move(qq)), T(std::move(t)), S(std::move(s)) {
        if (T.rows() != T.cols() || S.rows() != S.cols() || T.rows() != S.rows())
            throw std::invalid_argument("MatrixQModule: T, S must be square of equal size");
        if (!relation_holds())
            throw std::domain_error("MatrixQModule: TS != q^{-1} ST");
    }

    int dim() const { return T.rows(); }

    bool relation_holds() const {
        // TS = q^{-1} ST  <=>  q TS - ST = 0
        Matrix<K> lhs = q.value() * (T * S) - S * T;
        return lhs.is_zero();
    }
};

template <class K>
struct KoszulBlocks {
    Matrix<K> d1;  // 2n x n, stacked ((mu - qS); (T - q lambda))
    Matrix<K> d0;  // n x 2n, [(T - lambda) (S - mu)]
};

// blocks at an arbitrary (even off-axis) point; used by the symbolic oracle
template <class K>
KoszulBlocks<K> koszul_blocks_unchecked(const Matrix<K>& T, const Matrix<K>& S, const K& qv,
                                        const K& lambda, const K& mu) {
    const int n = T.rows();
    Matrix<K> In = Matrix<K>::identity(n);
    Matrix<K> top = (mu * In) - qv * S;
    Matrix<K> bottom = T - (qv * lambda) * In;
    Matrix<K> left = T - lambda * In;
    Matrix<K> right = S - mu * In;
    return KoszulBlocks<K>{vstack(top, bottom), hstack(left, right)};
}

template <class K>
KoszulBlocks<K> koszul_at(const MatrixQModule<K>& M, const QPoint& gamma);

template <>
inline KoszulBlocks<ExactScalar> koszul_at(const MatrixQModule<ExactScalar>& M,
                                           const QPoint& gamma) {
    ExactScalar lambda = gamma.axis == Axis::x ? gamma.value : ExactScalar::zero();
    ExactScalar mu = gamma.axis == Axis::y ? gamma.value : ExactScalar::zero();
    auto blocks = koszul_blocks_unchecked(M.T, M.S, M.q.value(), lambda, mu);
    if (!(blocks.d0 * blocks.d1).is_zero())
        throw std::logic_error("koszul_at: d0 d1 != 0 for a valid module/point");
    return blocks;
}

template <>
inline KoszulBlocks<FloatScalar> koszul_at(const MatrixQModule<FloatScalar>& M,
                                           const QPoint& gamma) {
    FloatScalar lambda = gamma.axis == Axis::x
                             ? FloatScalar(gamma.value.re_double(), gamma.value.im_double())
                             : FloatScalar::zero();
    FloatScalar mu = gamma.axis == Axis::y
                         ? FloatScalar(gamma.value.re_double(), gamma.value.im_double())
                         : FloatScalar::zero();
    return koszul_blocks_unchecked(M.T, M.S, M.q.value(), lambda, mu);
}

struct HomologyProfile {
    QPoint point;
    int h0 = 0, h1 = 0, h2 = 0;
    bool condition_warning = false;  // float backend: pivots straddled the tolerance

    bool resolvent() const { return h0 == 0 && h1 == 0 && h2 == 0; }
};

// h2 = nullity(d1), h1 = nullity(d0) - rank(d1), h0 = n - rank(d0)
template <class K>
HomologyProfile homology_at(const MatrixQModule<K>& M, const QPoint& gamma) {
    auto blocks = koszul_at(M, gamma);
    const int n = M.dim();
    bool w1 = false, w0 = false;
    int r1 = rank_of(blocks.d1, &w1);
    int r0 = rank_of(blocks.d0, &w0);
    HomologyProfile p;
    p.point = gamma;
    p.h2 = n - r1;
    p.h1 = (2 * n - r0) - r1;
    p.h0 = n - r0;
    p.condition_warning = w1 || w0;
    return p;
}

struct SpectrumReport {
    std::vector<HomologyProfile> samples;
    std::vector<QPoint> taylor_points;  // scanned points with nonvanishing homology
    std::optional<Region> putinar;      // q-closure of the scanned spectrum points
};

// Rationalize a double to a small-denominator fraction (continued fractions).
inline std::optional<Rational> snap_rational(double x, long max_den = 1000000,
                                             double tol = 1e-7) {
    if (!std::isfinite(x)) return std::nullopt;
    double a = x;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(a);
        if (fl > 9e17 || fl < -9e17) return std::nullopt;
        long ai = long(fl);
        long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = a - double(ai);
        if (std::abs(double(p1) / double(q1) - x) < tol * std::max(1.0, std::abs(x))) break;
        if (rem < 1e-15) break;
        a = 1.0 / rem;
    }
    if (q1 == 0) return std::nullopt;
    Rational r(p1, q1);
    r.canonicalize();
    if (std::abs(r.get_d() - x) > tol * std::max(1.0, std::abs(x))) return std::nullopt;
    return r;
}

// Candidate eigenvalues of an exact matrix: float eigensolve (done by the
// caller, passed in), snapped to exact scalars and confirmed by an exact
// rank drop of (A - lambda I).  Sound but not claimed complete; the scan
// semantics never assert completeness.
inline std::vector<ExactScalar> confirm_exact_eigenvalues(
    const Matrix<ExactScalar>& A, const std::vector<std::pair<double, double>>& approx) {
    std::vector<ExactScalar> out;
    const int n = A.rows();
    for (auto [re, im] : approx) {
        auto r = snap_rational(re);
        auto i = snap_rational(im);
        if (!r || !i) continue;
        ExactScalar lam(*r, *i);
        Matrix<ExactScalar> shifted = A - lam * Matrix<ExactScalar>::identity(n);
        if (rank(shifted) < n) {
            bool dup = false;
            for (const auto& seen : out)
                if (seen == lam) dup = true;
            if (!dup) out.push_back(lam);
        }
    }
    return out;
}

// profiles at the candidate points plus the q-closure of the flagged subset
template <class K>
SpectrumReport taylor_spectrum_scan(const MatrixQModule<K>& M, const std::vector<QPoint>& pts,
                                    const QParam<ExactScalar>* region_q = nullptr) {
    SpectrumReport rep;
    for (const auto& g : pts) {
        HomologyProfile p = homology_at(M, g);
        if (!p.resolvent()) rep.taylor_points.push_back(g);
        rep.samples.push_back(std::move(p));
    }
    if (region_q) {
        QRegionXY data;
        for (const auto& g : rep.taylor_points) {
            if (g.is_origin())
                data.add_origin();
            else
                data.add(g.axis, PointSetPrim{{g.value}});
        }
        rep.putinar = q_closure_region(Region(*region_q, std::move(data)));
    }
    return rep;
}

// sigma(F_q, X) = q-closure of sigma(T,S) for Banach q-modules
inline Region putinar_from_taylor(const Region& taylor) { return q_closure_region(taylor); }

// The l_p example at the region level: input sigma(T,S) =
// ((D_{|q|^{-1}} \ D_1^o) x {0}) u {(0,1)}; output must equal
// (C \ D_1^o x {0}) u {(0, q^{-n}) : n >= 0}.
struct Example8Report {
    Region taylor;
    Region putinar;
    Region expected;
    bool region_equality;
    bool input_not_closed;  // the gap between the spectra
};

inline Example8Report example8_report(const QParam<ExactScalar>& q) {
    require_contractive(q);
    QRegionXY taylor_data;
    taylor_data.add(Axis::x, AnnulusPrim{Radius(Rational(1)), Radius(Rational(1), -1), true,
                                         true, false});
    taylor_data.add(Axis::y, PointSetPrim{{ExactScalar::one()}});
    Region taylor(q, std::move(taylor_data));

    Region putinar = putinar_from_taylor(taylor);

    QRegionXY expected_data;
    expected_data.add(Axis::x, AnnulusPrim{Radius(Rational(1)), Radius(), true, false, true});
    expected_data.add(Axis::y, BackwardOrbitPrim{ExactScalar::one()});
    Region expected(q, std::move(expected_data));

    Example8Report rep{taylor, putinar, expected, putinar == expected, !(putinar == taylor)};
    return rep;
}

}  // namespace qplane
