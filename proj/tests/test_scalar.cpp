#include "qplane/scalar.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qplane;

namespace {
ExactScalar rnd_scalar(std::mt19937_64& rng, long bound = 6) {
    auto draw = [&](long b) { return long(rng() % (2 * b + 1)) - b; };
    Rational re(draw(bound), 1 + long(rng() % 4));
    Rational im(draw(bound), 1 + long(rng() % 4));
    re.canonicalize();
    im.canonicalize();
    return ExactScalar(re, im);
}
}  // namespace

TEST_CASE("exact scalar ring laws hold literally") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        ExactScalar a = rnd_scalar(rng), b = rnd_scalar(rng), c = rnd_scalar(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("rational parse and serialize round") {
    ExactScalar s = ExactScalar::parse("-3/4", "7/2");
    CHECK(rational_to_string(s.re()) == "-3/4");
    CHECK(rational_to_string(s.im()) == "7/2");
    CHECK_THROWS_AS(rational_from_string("1/0x"), std::invalid_argument);
}

TEST_CASE("make_q classifies by |q|^2 exactly") {
    auto half = make_q(ExactScalar(Rational(1, 2)));
    CHECK(half.modulus_class() == ModulusClass::contractive);

    auto two = make_q(ExactScalar(Rational(2)));
    CHECK(two.modulus_class() == ModulusClass::expanding);

    // q = i/2: |q|^2 = 1/4, computed exactly
    auto iq = make_q(ExactScalar(Rational(0), Rational(1, 2)));
    CHECK(iq.modulus_class() == ModulusClass::contractive);
    CHECK(cmp(iq.modulus_sq(), Rational(1, 4)) == 0);

    // unit-circle points classify as unimodular
    auto uni = make_q(ExactScalar(Rational(3, 5), Rational(4, 5)));
    CHECK(uni.modulus_class() == ModulusClass::unimodular);

    CHECK_THROWS_AS(make_q(ExactScalar(Rational(0))), std::domain_error);
    CHECK_THROWS_AS(make_q(ExactScalar(Rational(1))), std::domain_error);
}

TEST_CASE("q powers multiply exactly up to 64") {
    auto q = make_q(ExactScalar(Rational(2, 3), Rational(-1, 5)));
    for (unsigned m = 0; m <= 64; ++m)
        for (unsigned n : {0u, 1u, 5u, 17u, 64u - m % 65u})
            if (m + n <= 128) CHECK(q.power(m) * q.power(n) == q.power(m + n));
}

TEST_CASE("float scalar compares within tolerance") {
    FloatScalar a(1.0), b(1.0 + 1e-12);
    CHECK(a == b);
    FloatScalar c(1.0 + 1e-6);
    CHECK(a != c);
}
