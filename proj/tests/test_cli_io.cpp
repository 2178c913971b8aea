#include "qplane/json_io.hpp"
#include "qplane/prng.hpp"
#include "qplane/suites.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qplane;
using S = ExactScalar;

TEST_CASE("scalar and series JSON round trips preserve exactness") {
    Prng rng(11);
    for (int it = 0; it < 30; ++it) {
        S s = rng.scalar();
        CHECK(exact_scalar_from_json(to_json(s)) == s);
    }
    for (int it = 0; it < 10; ++it) {
        auto f = rng.series1(7, 7);
        CHECK(series1_from_json<S>(to_json(f)) == f);
        auto h = rng.series2(5, 10);
        CHECK(series2_from_json<S>(to_json(h)) == h);
    }
}

TEST_CASE("qseries sparse triplets round trip") {
    auto q = make_q(S(Rational(1, 2)));
    Prng rng(13);
    for (int it = 0; it < 8; ++it) {
        QSeries<S> f(q, 6);
        for (int i = 0; i <= 6; ++i)
            for (int k = 0; i + k <= 6; ++k)
                if (rng.below(3) == 0) f.at(i, k) = rng.scalar();
        CHECK(qseries_from_json<S>(to_json(f), q) == f);
    }
}

TEST_CASE("quadruple and fq element round trips") {
    auto q = make_q(S(Rational(1, 2)));
    Prng rng(17);
    for (int it = 0; it < 6; ++it) {
        auto z = rng.compatible_quadruple(5, 4);
        CHECK(quadruple_from_json<S>(to_json(z)) == z);
    }
    for (int it = 0; it < 6; ++it) {
        const int N = 5;
        std::vector<Series1<S>> F(N + 1, Series1<S>(N)), G(N + 1, Series1<S>(N));
        for (int i = 0; i <= N; ++i)
            for (int k = 0; k <= N; ++k) {
                S a = rng.scalar();
                F[k].coeff(i) = a;
                G[i].coeff(k) = a;
            }
        FqElement<S> xi(q, N, F, G);
        CHECK(fqelement_from_json<S>(to_json(xi), q) == xi);
    }
}

TEST_CASE("region JSON round trips through the canonical form") {
    auto q = make_q(S(Rational(1, 2)));
    QRegionXY d;
    d.add(Axis::x, AnnulusPrim{Radius(Rational(1)), Radius(Rational(1), -1), true, true, false});
    d.add(Axis::y, PointSetPrim{{S::one(), S(Rational(3, 2))}});
    d.add(Axis::y, BackwardOrbitPrim{S(Rational(2, 3))});
    Region r(q, std::move(d));
    auto back = region_from_json(to_json(r), q);
    CHECK(back == r);
}

TEST_CASE("matrix round trips") {
    Prng rng(23);
    Matrix<S> m(3, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) m.at(i, j) = rng.scalar();
    CHECK(matrix_from_json<S>(to_json(m)) == m);
}

TEST_CASE("scalar text parsing for the CLI") {
    CHECK(parse_scalar_text("1/2") == S(Rational(1, 2)));
    CHECK(parse_scalar_text("-3/4,1/8") == S(Rational(-3, 4), Rational(1, 8)));
    CHECK_THROWS_AS(parse_scalar_text("abc"), std::invalid_argument);
}

TEST_CASE("suite reports are byte-identical across worker counts") {
    SuiteConfig cfg;
    cfg.suite = "diagonal";
    cfg.q_text = "1/2";
    cfg.trunc = 8;
    cfg.max_degree = 3;
    cfg.seed = 987654321;
    auto q = make_q(parse_scalar_text(cfg.q_text));
    auto cells = build_cells(cfg.suite, q, cfg);

    cfg.workers = 1;
    auto r1 = run_cells(cells, cfg);
    std::string bytes1 = report_json(cfg, r1).dump(2);

    cfg.workers = 3;
    auto r3 = run_cells(cells, cfg);
    std::string bytes3 = report_json(cfg, r3).dump(2);

    CHECK(bytes1 == bytes3);
    bool all_pass = true;
    for (const auto& r : r1) all_pass = all_pass && r.pass;
    CHECK(all_pass);
}

TEST_CASE("failing cells carry the cell, identity and a counterexample") {
    // a synthetic cell that always fails demonstrates the report contract
    std::vector<Cell> cells;
    cells.push_back(Cell{"demo", 2, 3, "always_fails",
                         [](Prng&) { return std::optional<std::string>("input was 42"); }});
    SuiteConfig cfg;
    auto rs = run_cells(cells, cfg);
    REQUIRE(rs.size() == 1);
    CHECK_FALSE(rs[0].pass);
    auto j = report_json(cfg, rs);
    CHECK(j.at("cells").at(0).at("d") == 2);
    CHECK(j.at("cells").at(0).at("l") == 3);
    CHECK(j.at("cells").at(0).at("identity") == "always_fails");
    CHECK(j.at("cells").at(0).at("counterexample") == "input was 42");
    CHECK_FALSE(j.at("pass").get<bool>());
}
