#include "qplane/fqelement.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qplane;
using S = ExactScalar;

namespace {
std::mt19937_64 rng(37);

S rnd() {
    long n = long(rng() % 9) - 4;
    Rational re(n, 1 + long(rng() % 3));
    re.canonicalize();
    return S(re, Rational(long(rng() % 5) - 2, 2));
}

// random element via its free coefficient grid A[i,k]
FqElement<S> rnd_fq(const QParam<S>& q, int N) {
    std::vector<Series1<S>> F(N + 1, Series1<S>(N)), G(N + 1, Series1<S>(N));
    for (int i = 0; i <= N; ++i)
        for (int k = 0; k <= N; ++k) {
            S a = rnd();
            F[k].coeff(i) = a;
            G[i].coeff(k) = a;
        }
    return FqElement<S>(q, N, std::move(F), std::move(G));
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
}  // namespace

TEST_CASE("grid violations are rejected eagerly") {
    auto q = make_q(S(Rational(1, 2)));
    std::vector<Series1<S>> F(4, Series1<S>(3)), G(4, Series1<S>(3));
    F[1].coeff(2) = S::one();  // G[2].coeff(1) left zero
    CHECK_THROWS_AS(FqElement<S>(q, 3, F, G), std::domain_error);
}

TEST_CASE("monomials satisfy the grid and multiply like the q-plane") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 6;
    auto x = FqElement<S>::gen_x(q, N);
    auto y = FqElement<S>::gen_y(q, N);
    auto xy = FqElement<S>::monomial(q, N, 1, 1);
    CHECK(fq_mul(x, y) == xy);
    CHECK(fq_mul(y, x) == q.value() * xy);

    auto f = rnd_fq(q, N);
    CHECK(fq_mul(FqElement<S>::unit(q, N), f) == f);
    CHECK(fq_mul(f, FqElement<S>::unit(q, N)) == f);
}

TEST_CASE("decomposition: sum of projections is the identity, p_d p_m = delta p_d") {
    auto q = make_q(S(Rational(2, 5)));
    const int N = 6;
    for (int it = 0; it < 10; ++it) {
        auto xi = rnd_fq(q, N);
        auto acc = FqElement<S>::zero(q, N);
        for (int d = 0; d <= N; ++d) acc = acc + fq_project_pd(xi, d);
        CHECK(acc == xi);
        for (int d = 0; d <= N; ++d) {
            auto pd = fq_project_pd(xi, d);
            CHECK(fq_project_pd(pd, d) == pd);
            for (int m = 0; m <= N; ++m)
                if (m != d) CHECK(fq_project_pd(pd, m).is_zero());
        }
    }
}

TEST_CASE("alpha_d embeds O(d) onto the range of p_d") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 7;
    for (int d = 0; d <= 4; ++d) {
        for (int it = 0; it < 6; ++it) {
            auto e = GradedElement<S>(rnd_pair(N, N - d), d);
            auto img = alpha_d(e, q);
            CHECK(fq_project_pd(img, d) == img);
            for (int m = 0; m <= N; ++m)
                if (m != d) CHECK(fq_project_pd(img, m).is_zero());
            // left inverse through the layer read-off
            CHECK(alpha_d_inverse(img, d).pair().f().resized(N - d) ==
                  e.pair().f().resized(N - d));
        }
    }
}

TEST_CASE("alpha_0 of the constant pair is the unit; alpha_1 on the raw pair (z, w)") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 5;
    auto one = alpha_d(GradedElement<S>(GermPair<S>::constant(N, S::one()), 0), q);
    CHECK(one == FqElement<S>::unit(q, N));

    // raw pair (z, w) in O(1): F[1] = z, G[1] = w, nothing else
    RawGradedPair<S> raw{Series1<S>::monomial(N, 1), Series1<S>::monomial(N, 1), 1};
    auto img = alpha_d(raw, q);
    CHECK(img.F(1) == Series1<S>::monomial(N, 1));
    CHECK(img.G(1) == Series1<S>::monomial(N, 1));
    for (int k = 0; k <= N; ++k)
        if (k != 1) {
            CHECK(img.F(k).is_zero());
            CHECK(img.G(k).is_zero());
        }
}

TEST_CASE("Lambda is a retraction with right inverse alpha_0") {
    auto q = make_q(S(Rational(1, 3)));
    const int N = 6;
    for (int it = 0; it < 10; ++it) {
        auto fg = rnd_pair(N, N);
        CHECK(lambda_retract(alpha_d(GradedElement<S>(fg, 0), q)) == fg);
    }
    // p_0(x) is all of x: the order-0 part of the generator x survives whole
    auto x = FqElement<S>::gen_x(q, N);
    CHECK(fq_project_pd(x, 0) == x);
}

TEST_CASE("radical part: Lambda vanishes iff p_0 does") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 5;
    for (int it = 0; it < 10; ++it) {
        auto xi = rnd_fq(q, N);
        bool lambda_zero = lambda_retract(xi).is_zero();
        bool p0_zero = fq_project_pd(xi, 0).is_zero();
        CHECK(lambda_zero == p0_zero);
    }
}

TEST_CASE("Runge surrogate: monomial reconstruction is exact at the cutoff") {
    auto q = make_q(S(Rational(1, 2), Rational(1, 5)));
    const int N = 5;
    for (int it = 0; it < 6; ++it) {
        auto xi = rnd_fq(q, N);
        auto acc = FqElement<S>::zero(q, N);
        for (int i = 0; i <= N; ++i)
            for (int k = 0; k <= N; ++k) {
                S a = xi.F(k).coeff(i);
                if (!a.is_zero()) acc = acc + a * FqElement<S>::monomial(q, N, i, k);
            }
        CHECK(acc == xi);
    }
}

TEST_CASE("fq_mul agrees with the double-sum product through the grid") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 6;
    for (int it = 0; it < 6; ++it) {
        auto a = rnd_fq(q, N), b = rnd_fq(q, N);
        auto prod = fq_mul(a, b);
        // coefficient of x^m y^n: sum_{s+t=m, i+j=n} A[s,i] q^{it} B[t,j]
        for (int m = 0; m <= N; ++m)
            for (int n = 0; m + n <= N; ++n) {
                S want = S::zero();
                for (int s = 0; s <= m; ++s)
                    for (int i = 0; i <= n; ++i)
                        want += a.F(i).coeff(s) * q.power(unsigned(i) * unsigned(m - s)) *
                                b.F(n - i).coeff(m - s);
                CHECK(prod.F(n).coeff(m) == want);
            }
    }
}

TEST_CASE("graded generator actions match the fibered product") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 10;
    auto gen_elem = [&](Generator g) {
        return g == Generator::L_x || g == Generator::R_x ? FqElement<S>::gen_x(q, N)
                                                          : FqElement<S>::gen_y(q, N);
    };
    for (Generator g : {Generator::L_x, Generator::L_y, Generator::R_x, Generator::R_y}) {
        for (int d = 0; d <= 6; ++d) {
            for (int it = 0; it < 20; ++it) {
                auto e = GradedElement<S>(rnd_pair(N, (N - d) - 2), d);
                auto [deg_d, deg_d1] = generator_action_graded(g, e, q);

                bool left = (g == Generator::L_x || g == Generator::L_y);
                auto embedded = alpha_d(e, q);
                auto prod = left ? fq_mul(gen_elem(g), embedded) : fq_mul(embedded, gen_elem(g));

                const int w = N - d - 2;
                auto got_d = alpha_d_inverse(fq_project_pd(prod, d), d);
                CHECK(got_d.pair().f().resized(w) == deg_d.pair().f().resized(w));
                CHECK(got_d.pair().g().resized(w) == deg_d.pair().g().resized(w));
                auto got_d1 = alpha_d_inverse(fq_project_pd(prod, d + 1), d + 1);
                CHECK(got_d1.pair().f().resized(w) == deg_d1.pair().f().resized(w));
                CHECK(got_d1.pair().g().resized(w) == deg_d1.pair().g().resized(w));
                // nothing leaks outside degrees d and d+1
                for (int m = 0; m <= N; ++m)
                    if (m != d && m != d + 1) CHECK(fq_project_pd(prod, m).is_zero());
            }
        }
    }
}

TEST_CASE("generator actions on the constant pair in closed form") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 5;
    auto one = GradedElement<S>(GermPair<S>::constant(N, S::one()), 0);
    auto [lx_d, lx_d1] = generator_action_graded(Generator::L_x, one, q);
    CHECK(lx_d.pair().f() == Series1<S>::monomial(N, 1));
    CHECK(lx_d.pair().g().is_zero());
    CHECK(lx_d1.pair().is_zero());

    auto [ry_d, ry_d1] = generator_action_graded(Generator::R_y, one, q);
    CHECK(ry_d.pair().f().is_zero());
    CHECK(ry_d.pair().g() == Series1<S>::monomial(N, 1));
    CHECK(ry_d1.pair().is_zero());
}
