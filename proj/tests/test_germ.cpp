#include "qplane/germ.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qplane;
using S = ExactScalar;

namespace {
std::mt19937_64 rng(99);

S rnd() {
    long n = long(rng() % 9) - 4;
    Rational re(n, 1 + long(rng() % 3));
    re.canonicalize();
    return S(re, Rational(long(rng() % 5) - 2));
}

// random germ pair with degree headroom
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

TEST_CASE("germ pairs enforce f(0) = g(0)") {
    Series1<S> f = Series1<S>::constant(4, S::one());
    Series1<S> g(4);
    CHECK_THROWS_AS(GermPair<S>(f, g), std::domain_error);
    CHECK_NOTHROW(GermPair<S>(f, Series1<S>::constant(4, S::one())));
}

TEST_CASE("multiplication operators z and w") {
    auto one = GermPair<S>::constant(4, S::one());
    auto zp = mult_z(one);
    CHECK(zp.f() == Series1<S>::monomial(4, 1));
    CHECK(zp.g().is_zero());

    // w(z, w) = (0, w^2)
    GermPair<S> zw(Series1<S>::monomial(4, 1), Series1<S>::monomial(4, 1));
    auto wp = mult_w(zw);
    CHECK(wp.f().is_zero());
    CHECK(wp.g() == Series1<S>::monomial(4, 2));

    // z w = w z = 0
    for (int it = 0; it < 10; ++it) {
        auto p = rnd_pair(6, 5);
        CHECK(mult_z(mult_w(p)).is_zero());
        CHECK(mult_w(mult_z(p)).is_zero());
    }
}

TEST_CASE("d-isomorphism round trip intertwines z and w") {
    for (int d = 0; d <= 3; ++d) {
        for (int it = 0; it < 10; ++it) {
            auto p = rnd_pair(10, 10 - d - 1);
            GradedElement<S> e(p, d);
            CHECK(lower_degree(raise_degree(e)) == e);

            // raising then multiplying by z equals multiplying then raising
            auto raised = raise_degree(e);
            RawGradedPair<S> zr{raised.f.shift_up(1), Series1<S>(10), d};
            auto lowered = lower_degree(zr);
            CHECK(lowered.pair().f().resized(9 - d) == mult_z(e).pair().f().resized(9 - d));
        }
    }
}

TEST_CASE("reduced N and M operators on small inputs") {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 6;
    // N_x(z^2, w^2) = (z, 0)
    GermPair<S> sq(Series1<S>::monomial(N, 2), Series1<S>::monomial(N, 2));
    GradedElement<S> e(sq, 1);
    auto nx = op_N_x(e, q);
    CHECK(nx.degree() == 2);
    CHECK(nx.pair().f() == Series1<S>::monomial(N, 1));
    CHECK(nx.pair().g().is_zero());

    // M_x(z^2, w^2) = (0, w)
    auto mx = op_M_x(e, q);
    CHECK(mx.pair().f().is_zero());
    CHECK(mx.pair().g() == Series1<S>::monomial(N, 1));

    // N_y(0, w) = q^{d+1} (1, 1)
    GermPair<S> ow(Series1<S>(N), Series1<S>::monomial(N, 1));
    for (int d = 0; d <= 3; ++d) {
        auto ny = op_N_y(GradedElement<S>(ow, d), q);
        S pre = q.power(unsigned(d) + 1);
        CHECK(ny.pair().f() == Series1<S>::constant(N, pre));
        CHECK(ny.pair().g() == Series1<S>::constant(N, pre));
    }
}

TEST_CASE("reduced operators agree with raw ones after conjugation") {
    auto q = make_q(S(Rational(1, 3), Rational(1, 4)));
    const int N = 12;
    for (int d = 0; d <= 4; ++d) {
        for (int it = 0; it < 10; ++it) {
            auto p = rnd_pair(N, N - d - 2);
            GradedElement<S> e(p, d);
            const int w = N - d - 2;  // window after raise/op/lower

            auto check_pair = [&](const GradedElement<S>& back, const GradedElement<S>& red) {
                CHECK(back.degree() == red.degree());
                CHECK(back.pair().f().resized(w) == red.pair().f().resized(w));
                CHECK(back.pair().g().resized(w) == red.pair().g().resized(w));
            };
            check_pair(lower_degree(raw_N_x(raise_degree(e), q)), op_N_x(e, q));
            check_pair(lower_degree(raw_N_y(raise_degree(e), q)), op_N_y(e, q));
            check_pair(lower_degree(raw_M_x(raise_degree(e), q)), op_M_x(e, q));
            check_pair(lower_degree(raw_M_y(raise_degree(e), q)), op_M_y(e, q));
        }
    }
}
