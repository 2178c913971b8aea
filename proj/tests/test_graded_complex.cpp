#include "qplane/graded_complex.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qplane;
using S = ExactScalar;

namespace {
std::mt19937_64 rng(31415);

S rnd() {
    long n = long(rng() % 9) - 4;
    Rational re(n, 1 + long(rng() % 3));
    re.canonicalize();
    return S(re, Rational(long(rng() % 5) - 2, 2));
}

GermPair<S> rnd_pair(int trunc, int max_deg) {
    Series1<S> f(trunc), g(trunc);
    for (int k = 1; k <= max_deg; ++k) {
        f.coeff(k) = rnd();
        g.coeff(k) = rnd();
    }
    S c = rnd();
    f.coeff(0) = c;
    g.coeff(0) = c;
    return GermPair<S>(std::move(f), std::move(g));
}

Quadruple<S> rnd_compatible(int n, int max_deg, int terms = 3) {
    Quadruple<S> acc = Quadruple<S>::zero(n);
    for (int t = 0; t < terms; ++t)
        acc = acc + tensor_embed(rnd_pair(n, max_deg / 2), rnd_pair(n, max_deg / 2), n);
    return acc;
}
}  // namespace

TEST_CASE("index order is graded then left-increasing, with the mirror option") {
    CHECK(cell_less({0, 1}, {2, 0}));
    CHECK(cell_less({0, 2}, {1, 1}));
    CHECK(cell_less({1, 1}, {2, 0}));
    CHECK_FALSE(cell_less({2, 0}, {1, 1}));
    // right-increasing order flips within a homogeneous block
    CHECK(cell_less({2, 0}, {1, 1}, HomogeneousOrder::right_increasing));
    CHECK(cell_less({1, 1}, {0, 2}, HomogeneousOrder::right_increasing));
    CHECK(cell_less({0, 2}, {1, 2}, HomogeneousOrder::right_increasing));
}

TEST_CASE("all five (dmn) operator identities hold for i+j <= 6") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 8;
    const int w = N - 3;
    for (int i = 0; i + 0 <= 6; ++i)
        for (int j = 0; i + j <= 6; ++j) {
            for (int it = 0; it < 4; ++it) {
                auto z = rnd_compatible(N, N - 3);
                QuadruplePair<S> zp{rnd_compatible(N, N - 3), rnd_compatible(N, N - 3)};

                // 1: d1_{i,j} M0_{i,j-1} = -M_{i,j-1} d0_{i,j-1}
                if (j >= 1) {
                    DiagParams<S> src(q, i, j - 1, N);
                    DiagParams<S> dst(q, i, j, N);
                    auto lhs = diag_d1(op_M0_dl(z, src), dst);
                    auto rhs = op_M_dl(diag_d0(z, src), src);
                    CHECK(lhs.equal_within(-rhs, w));
                }
                // 2: d1_{i,j} N0_{i-1,j} = N_{i-1,j} d0_{i-1,j}
                if (i >= 1) {
                    DiagParams<S> src(q, i - 1, j, N);
                    DiagParams<S> dst(q, i, j, N);
                    auto lhs = diag_d1(op_N0_dl(z, src), dst);
                    auto rhs = op_N_dl(diag_d0(z, src), src);
                    CHECK(lhs.equal_within(rhs, w));
                }
                // 3: M_{i,j-1} M0_{i,j-2} = 0
                if (j >= 2) {
                    DiagParams<S> a(q, i, j - 2, N);
                    DiagParams<S> b(q, i, j - 1, N);
                    auto out = op_M_dl(op_M0_dl(z, a), b);
                    CHECK(out.is_zero_within(w));
                }
                // 4: M_{i,j-1} N0_{i-1,j-1} = N_{i-1,j} M0_{i-1,j-1}
                if (i >= 1 && j >= 1) {
                    DiagParams<S> src(q, i - 1, j - 1, N);
                    DiagParams<S> viaM(q, i, j - 1, N);
                    DiagParams<S> viaN(q, i - 1, j, N);
                    auto lhs = op_M_dl(op_N0_dl(z, src), viaM);
                    auto rhs = op_N_dl(op_M0_dl(z, src), viaN);
                    CHECK(lhs.equal_within(rhs, w));
                }
                // 5: N_{i-1,j} N0_{i-2,j} = 0
                if (i >= 2) {
                    DiagParams<S> a(q, i - 2, j, N);
                    DiagParams<S> b(q, i - 1, j, N);
                    auto out = op_N_dl(op_N0_dl(z, a), b);
                    CHECK(out.is_zero_within(w));
                }
            }
        }
}

TEST_CASE("assembled graded d1 d0 = 0") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 8;
    const int maxn = 4;
    for (int it = 0; it < 3; ++it) {
        GradedChain<S> xi(maxn, N);
        for (int d = 0; d <= maxn; ++d)
            for (int l = 0; d + l <= maxn; ++l) xi.set(d, l, rnd_compatible(N, N - 4));
        auto step = graded_d0(xi, q);
        auto out = graded_d1(step, q);
        for (int d = 0; d <= maxn; ++d)
            for (int l = 0; d + l <= maxn; ++l) CHECK(out.at(d, l).is_zero_within(N - 3));
    }
}

TEST_CASE("assembled differentials are lower triangular in the cell order") {
    auto q = make_q(S(Rational(1, 3)));
    const int N = 6;
    const int maxn = 3;
    // a chain supported at one cell maps into cells >= it only
    GradedChain<S> xi(maxn, N);
    xi.set(1, 1, rnd_compatible(N, N - 3));
    for (int d = 0; d <= maxn; ++d)
        for (int l = 0; d + l <= maxn; ++l)
            if (!(d == 1 && l == 1)) xi.set(d, l, Quadruple<S>::zero(N));
    auto step = graded_d0(xi, q);
    for (int d = 0; d <= maxn; ++d)
        for (int l = 0; d + l <= maxn; ++l) {
            bool at_or_above = !cell_less({d, l}, {1, 1});
            if (!at_or_above) {
                CHECK(step.first.at(d, l).is_zero());
                CHECK(step.second.at(d, l).is_zero());
            }
        }
}

TEST_CASE("Gamma corrections vanish at and below d+l") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 8;
    for (int d = 0; d + 0 <= 3; ++d)
        for (int l = 0; d + l <= 3; ++l) {
            for (int it = 0; it < 5; ++it) {
                auto zeta = GradedElement<S>(rnd_pair(N, (N - d - l) / 2), d);
                auto eta = GradedElement<S>(rnd_pair(N, (N - d - l) / 2), l);
                for (int m = 0; m <= d + l; ++m) {
                    auto g = gamma_correction(zeta, eta, m, q);
                    CHECK(g.pair().f().is_zero());
                    CHECK(g.pair().g().is_zero());
                }
            }
        }
}

TEST_CASE("constant (x) constant has no tail at all") {
    auto q = make_q(S(Rational(2, 7)));
    const int N = 6;
    auto one = GradedElement<S>(GermPair<S>::constant(N, rnd()), 0);
    auto two = GradedElement<S>(GermPair<S>::constant(N, rnd()), 0);
    for (int m = 1; m <= N; ++m) {
        auto g = gamma_correction(one, two, m, q);
        CHECK(g.pair().f().is_zero());
        CHECK(g.pair().g().is_zero());
    }
}

TEST_CASE("(z,w) (x) (z,w) at d = l = 0 has the explicit m = 1 defect") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 6;
    GermPair<S> zw(Series1<S>::monomial(N, 1), Series1<S>::monomial(N, 1));
    GradedElement<S> e(zw, 0);
    // product in F_q: alpha_0(z,w)^2; pi_{0,0} = (z^2, w^2); the defect is the
    // degree >= 1 part of the product
    auto defect = gamma_defect(e, e, q);
    CHECK(fq_project_pd(defect, 0).is_zero());
    auto g1 = gamma_correction(e, e, 1, q);
    // computed via the fibered product once and frozen: the m=1 layer carries
    // the cross terms of x y and y x images
    auto prod = fq_mul(alpha_d(e, q), alpha_d(e, q));
    auto direct = alpha_d_inverse(fq_project_pd(prod, 1), 1);
    CHECK(g1.pair().f() == direct.pair().f());
    CHECK(g1.pair().g() == direct.pair().g());
    CHECK_FALSE((g1.pair().f().is_zero() && g1.pair().g().is_zero()));
}

TEST_CASE("graded expansion of fq_mul matches pi + sum of Gammas componentwise") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 8;
    for (int d = 0; d + 0 <= 4; ++d)
        for (int l = 0; d + l <= 4; ++l) {
            for (int it = 0; it < 5; ++it) {
                auto zeta = GradedElement<S>(rnd_pair(N, (N - d - l) / 2), d);
                auto eta = GradedElement<S>(rnd_pair(N, (N - d - l) / 2), l);
                auto prod = fq_mul(alpha_d(zeta, q), alpha_d(eta, q));
                auto tensor = tensor_embed(zeta.pair(), eta.pair(), N);
                auto pi = pi_dl_mult(tensor, q, d, l);
                // degree d+l component is alpha_{d+l}(pi); above it, the Gammas
                auto expected_dl = alpha_d(pi, q);
                CHECK(fq_project_pd(prod, d + l) == expected_dl);
                for (int m = d + l + 1; m <= N; ++m) {
                    auto gm = gamma_correction(zeta, eta, m, q);
                    CHECK(fq_project_pd(prod, m) == alpha_d(gm, q));
                }
                // and nothing below d+l
                for (int m = 0; m < d + l; ++m) CHECK(fq_project_pd(prod, m).is_zero());
            }
        }
}

TEST_CASE("graded pi kills graded d1 on one-cell chains") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 6;
    // psi supported at one cell (d,l) with elementary-tensor components; the
    // identity reduces to: for every n,
    //   sum_{d+l=n} pi(M psi_{d,l-1} - N psi_{d-1,l}) + sum_{i+j<n} Gamma_n((d1 psi)_{i,j}) = 0,
    // where Gamma_n of a general compatible quadruple is evaluated through its
    // tensor decomposition.
    auto gamma_general = [&](const Quadruple<S>& h, int d, int l, int m) {
        auto terms = tensor_decompose(h);
        Series1<S> f(N), g(N);
        for (const auto& t : terms) {
            auto gm = gamma_correction(GradedElement<S>(t.left, d),
                                       GradedElement<S>(t.right, l), m, q);
            f += t.coeff * gm.pair().f();
            g += t.coeff * gm.pair().g();
        }
        return GermPair<S>(std::move(f), std::move(g));
    };
    auto pi_of = [&](const Quadruple<S>& h, int d, int l) { return pi_dl_mult(h, q, d, l); };

    for (int d = 0; d <= 1; ++d)
        for (int l = 0; l <= 1; ++l) {
            auto a = tensor_embed(rnd_pair(N, 2), rnd_pair(N, 2), N);
            auto b = tensor_embed(rnd_pair(N, 2), rnd_pair(N, 2), N);
            DiagParams<S> p(q, d, l, N);
            QuadruplePair<S> psi{a, b};

            // (d1 psi) lives at (d,l), (d,l+1), (d+1,l)
            auto at_dl = diag_d1(psi, p);
            auto at_dl1 = op_M_dl(psi, p);   // lands in (d, l+1)
            auto at_d1l = op_N_dl(psi, p);   // lands in (d+1, l), enters with -

            const int w = N - 3;
            // n = d+l+1 terms: pi_{d,l+1}(M psi) - pi_{d+1,l}(N psi) ... each
            // homogeneous block must cancel against the Gamma of (d1 psi)_{d,l}
            {
                auto t1 = pi_of(at_dl1, d, l + 1).pair();
                auto t2 = pi_of(at_d1l, d + 1, l).pair();
                auto t3 = gamma_general(at_dl, d, l, d + l + 1);
                Series1<S> f = t1.f() - t2.f() + t3.f();
                Series1<S> g = t1.g() - t2.g() + t3.g();
                CHECK(f.resized(w).is_zero());
                CHECK(g.resized(w).is_zero());
            }
            // n = d+l: pi_{d,l}((d1 psi)_{d,l}) = 0 alone
            {
                auto t0 = pi_of(at_dl, d, l).pair();
                CHECK(t0.f().resized(w).is_zero());
                CHECK(t0.g().resized(w).is_zero());
            }
        }
}
