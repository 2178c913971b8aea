#pragma once

// The verification suite engine behind `verify`: a flat list of cells, each
// an independently seeded identity check over random inputs.  Cells are
// seeded from (run seed, stable cell tag), so reports are byte-identical for
// any worker count.  On failure a cell reports the simplest failing input it
// saw (inputs are tried in increasing complexity).

#include "qplane/diag_complex.hpp"
#include "qplane/formal_complex.hpp"
#include "qplane/fqelement.hpp"
#include "qplane/graded_complex.hpp"
#include "qplane/json_io.hpp"
#include "qplane/prng.hpp"
#include "qplane/qseries.hpp"
#include "qplane/qtopology.hpp"
#include "qplane/spectra.hpp"

#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace qplane {

struct SuiteConfig {
    std::string suite = "all";
    std::string q_text = "1/2";
    int trunc = 10;
    int max_degree = 6;
    std::uint64_t seed = 0;
    std::string backend = "exact";
    int workers = 1;
};

// parse "a/b" or "a/b,c/d" as an exact complex rational
inline ExactScalar parse_scalar_text(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) return ExactScalar(rational_from_string(text));
    return ExactScalar(rational_from_string(text.substr(0, comma)),
                       rational_from_string(text.substr(comma + 1)));
}

struct CellResult {
    std::string suite;
    int d = 0, l = 0;
    std::string identity;
    bool pass = true;
    std::string max_defect = "0";
    std::string counterexample;  // empty when passing
};

struct Cell {
    std::string suite;
    int d = 0, l = 0;
    std::string identity;
    // returns failure description (the minimized counterexample) or nothing
    std::function<std::optional<std::string>(Prng&)> run;
};

using S = ExactScalar;

namespace cells {

// ---- helpers reporting counterexamples as compact JSON ----

inline std::string quad_ce(const Quadruple<S>& z) { return to_json(z).dump(); }
inline std::string pair_ce(const GermPair<S>& p) {
    return Json{{"f", to_json(p.f())}, {"g", to_json(p.g())}}.dump();
}

inline void add_qmul_cells(std::vector<Cell>& out, const QParam<S>& q, const SuiteConfig& cfg) {
    const int N = cfg.trunc;
    out.push_back(Cell{"qmul", 0, 0, "quantum_plane_relation", [&q, N](Prng&) -> std::optional<std::string> {
        auto x = QSeries<S>::gen_x(q, N), y = QSeries<S>::gen_y(q, N);
        auto xy = QSeries<S>::monomial(q, N, 1, 1);
        if (!(qmul(x, y) == xy)) return std::string("x*y != xy");
        if (!(qmul(y, x) == q.value() * xy)) return std::string("y*x != q*(xy)");
        return std::nullopt;
    }});
    out.push_back(Cell{"qmul", 0, 0, "commutation_layers", [&q, N](Prng& rng) -> std::optional<std::string> {
        for (int n = 0; n <= std::min(8, N); ++n)
            for (int deg = 1; deg <= N; deg += std::max(1, N / 4)) {
                QSeries<S> g(q, N);
                for (int i = 0; i <= deg; ++i) g.at(i, 0) = rng.scalar();
                QSeries<S> gs(q, N);
                for (int i = 0; i <= deg; ++i)
                    gs.at(i, 0) = g.at(i, 0) * q.power(unsigned(i) * unsigned(n));
                auto yn = QSeries<S>::monomial(q, N, 0, n);
                if (!(qmul(yn, g) == qmul(gs, yn)))
                    return "y^" + std::to_string(n) + " g(x) != g(q^n x) y^n at deg " +
                           std::to_string(deg);
            }
        return std::nullopt;
    }});
    out.push_back(Cell{"qmul", 0, 0, "three_way_agreement", [&q, N](Prng& rng) -> std::optional<std::string> {
        for (int deg = 1; deg <= N; deg += std::max(1, N / 3)) {
            QSeries<S> f(q, N), g(q, N);
            for (int i = 0; i <= N; ++i)
                for (int k = 0; i + k <= std::min(deg, N); ++k) {
                    f.at(i, k) = rng.scalar();
                    g.at(i, k) = rng.scalar();
                }
            auto a = qmul(f, g);
            if (!(a == qmul_left_form(f, g)))
                return "left form disagrees; f=" + to_json(f).dump();
            if (!(a == qmul_right_form(f, g)))
                return "right form disagrees; f=" + to_json(f).dump();
        }
        return std::nullopt;
    }});
    out.push_back(Cell{"qmul", 0, 0, "associativity", [&q, N](Prng& rng) -> std::optional<std::string> {
        for (int it = 0; it < 4; ++it) {
            QSeries<S> f(q, N), g(q, N), h(q, N);
            for (int i = 0; i <= N; ++i)
                for (int k = 0; i + k <= N; ++k) {
                    f.at(i, k) = rng.scalar();
                    g.at(i, k) = rng.scalar();
                    h.at(i, k) = rng.scalar();
                }
            if (!(qmul(qmul(f, g), h) == qmul(f, qmul(g, h))))
                return "associativity broke; f=" + to_json(f).dump();
        }
        return std::nullopt;
    }});
    out.push_back(Cell{"qmul", 0, 0, "character_homomorphism", [&q, N](Prng& rng) -> std::optional<std::string> {
        for (int it = 0; it < 6; ++it) {
            QSeries<S> f(q, N), g(q, N);
            for (int i = 0; i <= N; ++i)
                for (int k = 0; i + k <= N; ++k) {
                    f.at(i, k) = rng.scalar();
                    g.at(i, k) = rng.scalar();
                }
            if (!(trivial_character(qmul(f, g)) == trivial_character(f) * trivial_character(g)))
                return "chi(fg) != chi(f)chi(g)";
            if (!radical_test(qmul(QSeries<S>::gen_x(q, N), f))) return "x*f not in radical";
        }
        return std::nullopt;
    }});
}

inline void add_series_cells(std::vector<Cell>& out, const QParam<S>& q, const SuiteConfig& cfg) {
    const int N = cfg.trunc;
    out.push_back(Cell{"series", 0, 0, "projection_idempotent", [N](Prng& rng) -> std::optional<std::string> {
        for (int d = 0; d <= N; ++d) {
            auto f = rng.series1(N, N);
            if (!(project_pd(project_pd(f, d), d) == project_pd(f, d)))
                return "P_" + std::to_string(d) + " not idempotent on " + to_json(f).dump();
        }
        return std::nullopt;
    }});
    out.push_back(Cell{"series", 0, 0, "projection_commutes_translate", [&q, N](Prng& rng) -> std::optional<std::string> {
        for (int d = 0; d <= N; ++d) {
            auto f = rng.series1(N, N);
            if (!(translate_q(project_pd(f, d), q) == project_pd(translate_q(f, q), d)))
                return "Delta_q P_d != P_d Delta_q at d=" + std::to_string(d);
        }
        return std::nullopt;
    }});
    out.push_back(Cell{"series", 0, 0, "shift_division_roundtrip", [N](Prng& rng) -> std::optional<std::string> {
        for (int d = 0; d <= std::min(4, N); ++d)
            for (int it = 0; it < 4; ++it) {
                auto f = rng.series1(N, N - d);
                if (!(divide_by_var(f.shift_up(d), d).resized(N - d) == f.resized(N - d)))
                    return "z^{-d} (z^d f) != f at d=" + std::to_string(d);
            }
        return std::nullopt;
    }});
    out.push_back(Cell{"series", 0, 0, "split_reassembly", [N](Prng& rng) -> std::optional<std::string> {
        for (int it = 0; it < 6; ++it) {
            auto h = rng.series2(N, 2 * N);
            h.at(0, 0) = S::zero();
            auto p = split_at_origin(h);
            auto back = Series2<S>::from_u(N, N, p.on_u) + Series2<S>::from_v(N, N, p.on_v) +
                        p.mixed.mul_u().mul_v();
            if (!(back == h)) return "split reassembly failed on " + to_json(h).dump();
        }
        return std::nullopt;
    }});
    out.push_back(Cell{"series", 0, 0, "diagonal_division_roundtrip", [N](Prng& rng) -> std::optional<std::string> {
        for (int it = 0; it < 6; ++it) {
            auto r = rng.series2(N, N - 2);
            auto h = r.mul_v() - r.mul_u();
            if (!divide_diagonal(h).equal_within(r, N - 2))
                return "diagonal division not inverse on " + to_json(h).dump();
        }
        return std::nullopt;
    }});
}

inline void add_diagonal_cells(std::vector<Cell>& out, const QParam<S>& q,
                               const SuiteConfig& cfg) {
    const int N = cfg.trunc;
    for (int d = 0; d <= cfg.max_degree; ++d)
        for (int l = 0; d + l <= cfg.max_degree; ++l) {
            auto mk = [&](const char* name, auto fn) {
                out.push_back(Cell{"diagonal", d, l, name,
                                   [fn, &q, d, l, N](Prng& rng) { return fn(rng, q, d, l, N); }});
            };
            mk("d1_d0_zero", [](Prng& rng, const QParam<S>& qq, int dd, int ll,
                                int n) -> std::optional<std::string> {
                DiagParams<S> p(qq, dd, ll, n);
                for (int deg = 2; deg <= n - 3; deg += 2)
                    for (int it = 0; it < 6; ++it) {
                        auto z = rng.compatible_quadruple(n, deg);
                        if (!diag_d1(diag_d0(z, p), p).is_zero()) return quad_ce(z);
                    }
                return std::nullopt;
            });
            mk("pi_d1_zero", [](Prng& rng, const QParam<S>& qq, int dd, int ll,
                                int n) -> std::optional<std::string> {
                DiagParams<S> p(qq, dd, ll, n);
                for (int deg = 2; deg <= n - 3; deg += 2)
                    for (int it = 0; it < 6; ++it) {
                        QuadruplePair<S> ab{rng.compatible_quadruple(n, deg),
                                            rng.compatible_quadruple(n, deg)};
                        auto pi = diag_pi(diag_d1(ab, p), p);
                        if (!pi.pair().f().resized(n - 1).is_zero() ||
                            !pi.pair().g().resized(n - 1).is_zero())
                            return quad_ce(ab.first);
                    }
                return std::nullopt;
            });
            mk("T_roundtrip", [](Prng& rng, const QParam<S>& qq, int dd, int ll,
                                 int n) -> std::optional<std::string> {
                DiagParams<S> p(qq, dd, ll, n);
                for (int deg = 1; deg <= n - 4; deg += 2)
                    for (int it = 0; it < 4; ++it) {
                        auto theta = rng.free_quadruple(n, deg);
                        auto img = op_T(theta, p);
                        if (!diag_d1(img, p).is_zero()) return "T image not cocycle: " + quad_ce(theta);
                        auto back = op_T_inverse(img, p);
                        if (!back.equal_within(theta, n - 2)) return "T^-1 T != id: " + quad_ce(theta);
                        auto again = op_T(back, p);
                        if (!again.first.equal_within(img.first, n - 2) ||
                            !again.second.equal_within(img.second, n - 2))
                            return "T T^-1 != id: " + quad_ce(theta);
                    }
                return std::nullopt;
            });
            mk("Tinv_d0_theta", [](Prng& rng, const QParam<S>& qq, int dd, int ll,
                                   int n) -> std::optional<std::string> {
                DiagParams<S> p(qq, dd, ll, n);
                for (int deg = 2; deg <= n - 4; deg += 2)
                    for (int it = 0; it < 4; ++it) {
                        auto a = rng.compatible_quadruple(n, deg);
                        auto theta = op_Tinv_d0(a, p);
                        auto img = op_T(theta, p);
                        auto d0a = diag_d0(a, p);
                        if (!img.first.equal_within(d0a.first, n - 2) ||
                            !img.second.equal_within(d0a.second, n - 2))
                            return "T(theta) != d0(alpha): " + quad_ce(a);
                        if (!theta_conditions_hold(theta, p, n - 3))
                            return "Theta membership failed: " + quad_ce(a);
                        if (!quadruple_from_theta(theta, p).equal_within(a, n - 3))
                            return "I(U) reassembly failed: " + quad_ce(a);
                    }
                return std::nullopt;
            });
            mk("h0_injectivity", [](Prng& rng, const QParam<S>& qq, int dd, int ll,
                                    int n) -> std::optional<std::string> {
                DiagParams<S> p(qq, dd, ll, n);
                for (int it = 0; it < 6; ++it) {
                    auto z = rng.compatible_quadruple(n, n - 3);
                    auto rows = diag_d0(z, p);
                    bool zero_out =
                        rows.first.is_zero_within(n - 1) && rows.second.is_zero_within(n - 1);
                    if (zero_out && !z.is_zero_within(n - 2)) return quad_ce(z);
                }
                return std::nullopt;
            });
            mk("homotopy_unit", [](Prng& rng, const QParam<S>& qq, int dd, int ll,
                                   int n) -> std::optional<std::string> {
                DiagParams<S> p(qq, dd, ll, n);
                for (int deg = 2; deg <= n - 4; deg += 2)
                    for (int it = 0; it < 4; ++it) {
                        auto fg = rng.germ_pair(n, deg);
                        if (!(diag_pi(homotopy_tau0(fg, n), p).pair() == fg))
                            return "pi tau0 != id: " + pair_ce(fg);
                        auto zeta = rng.compatible_quadruple(n, deg);
                        auto recon = homotopy_tau0(diag_pi(zeta, p).pair(), n) +
                                     diag_d1(homotopy_tau1(zeta, p), p);
                        if (!recon.equal_within(zeta, n - 2))
                            return "tau0 pi + d1 tau1 != id: " + quad_ce(zeta);
                    }
                return std::nullopt;
            });
            mk("h1_split", [](Prng& rng, const QParam<S>& qq, int dd, int ll,
                              int n) -> std::optional<std::string> {
                DiagParams<S> p(qq, dd, ll, n);
                const int w = n - 6;
                for (int it = 0; it < 3; ++it) {
                    auto a = rng.compatible_quadruple(n, n - 6);
                    auto fg = rng.germ_pair(n, n - 6);
                    auto cob = diag_d0(a, p);
                    auto rep = op_T(op_Psi(fg, n), p);
                    QuadruplePair<S> beta{cob.first + rep.first, cob.second + rep.second};
                    auto split = cohomology_h1_split(beta, p, n - 4);
                    if (!(split.representative.f().resized(w) == fg.f().resized(w)) ||
                        !(split.representative.g().resized(w) == fg.g().resized(w)))
                        return "representative not recovered: " + pair_ce(fg);
                    auto rebuilt_c = diag_d0(split.coboundary_preimage, p);
                    auto rebuilt_r = op_T(op_Psi(split.representative, n), p);
                    if (!(rebuilt_c.first + rebuilt_r.first).equal_within(beta.first, w) ||
                        !(rebuilt_c.second + rebuilt_r.second).equal_within(beta.second, w))
                        return "split does not reassemble: " + pair_ce(fg);
                }
                return std::nullopt;
            });
            mk("h2_coboundary", [](Prng& rng, const QParam<S>& qq, int dd, int ll,
                                   int n) -> std::optional<std::string> {
                DiagParams<S> p(qq, dd, ll, n);
                for (int it = 0; it < 4; ++it) {
                    auto zeta = rng.compatible_quadruple(n, n - 4);
                    auto ker = zeta - homotopy_tau0(diag_pi(zeta, p).pair(), n);
                    auto recon = diag_d1(homotopy_tau1(ker, p), p);
                    if (!recon.equal_within(ker, n - 2)) return quad_ce(zeta);
                }
                return std::nullopt;
            });
            mk("ddkey_coboundary", [](Prng& rng, const QParam<S>& qq, int dd, int ll,
                                      int n) -> std::optional<std::string> {
                DiagParams<S> p(qq, dd, ll, n);
                const int w = n - 6;
                for (int it = 0; it < 3; ++it) {
                    auto a = rng.compatible_quadruple(n, n - 6);
                    auto beta = diag_d0(a, p);
                    auto res = coboundary_criterion(beta, p, w);
                    if (!res.hypothesis) return "hypothesis false on coboundary: " + quad_ce(a);
                    auto back = diag_d0(res.preimage, p);
                    if (!back.first.equal_within(beta.first, w) ||
                        !back.second.equal_within(beta.second, w))
                        return "preimage mismatch: " + quad_ce(a);
                }
                return std::nullopt;
            });
        }
}

inline void add_dmn_cells(std::vector<Cell>& out, const QParam<S>& q, const SuiteConfig& cfg) {
    const int N = cfg.trunc;
    for (int i = 0; i <= cfg.max_degree; ++i)
        for (int j = 0; i + j <= cfg.max_degree; ++j) {
            out.push_back(Cell{"dmn", i, j, "dmn_identities",
                               [&q, i, j, N](Prng& rng) -> std::optional<std::string> {
                const int w = N - 3;
                for (int it = 0; it < 3; ++it) {
                    auto z = rng.compatible_quadruple(N, N - 3);
                    QuadruplePair<S> zp{rng.compatible_quadruple(N, N - 3),
                                        rng.compatible_quadruple(N, N - 3)};
                    if (j >= 1) {
                        DiagParams<S> src(q, i, j - 1, N), dst(q, i, j, N);
                        auto lhs = diag_d1(op_M0_dl(z, src), dst);
                        auto rhs = op_M_dl(diag_d0(z, src), src);
                        if (!lhs.equal_within(-rhs, w)) return "dmn1: " + quad_ce(z);
                    }
                    if (i >= 1) {
                        DiagParams<S> src(q, i - 1, j, N), dst(q, i, j, N);
                        auto lhs = diag_d1(op_N0_dl(z, src), dst);
                        auto rhs = op_N_dl(diag_d0(z, src), src);
                        if (!lhs.equal_within(rhs, w)) return "dmn2: " + quad_ce(z);
                    }
                    if (j >= 2) {
                        DiagParams<S> a(q, i, j - 2, N), b(q, i, j - 1, N);
                        if (!op_M_dl(op_M0_dl(z, a), b).is_zero_within(w))
                            return "dmn3: " + quad_ce(z);
                    }
                    if (i >= 1 && j >= 1) {
                        DiagParams<S> src(q, i - 1, j - 1, N), viaM(q, i, j - 1, N),
                            viaN(q, i - 1, j, N);
                        auto lhs = op_M_dl(op_N0_dl(z, src), viaM);
                        auto rhs = op_N_dl(op_M0_dl(z, src), viaN);
                        if (!lhs.equal_within(rhs, w)) return "dmn4: " + quad_ce(z);
                    }
                    if (i >= 2) {
                        DiagParams<S> a(q, i - 2, j, N), b(q, i - 1, j, N);
                        if (!op_N_dl(op_N0_dl(z, a), b).is_zero_within(w))
                            return "dmn5: " + quad_ce(z);
                    }
                }
                return std::nullopt;
            }});
        }
}

inline void add_decompose_cells(std::vector<Cell>& out, const QParam<S>& q,
                                const SuiteConfig& cfg) {
    const int N = cfg.trunc;
    out.push_back(Cell{"decompose", 0, 0, "projection_family", [&q, N](Prng& rng) -> std::optional<std::string> {
        for (int it = 0; it < 4; ++it) {
            std::vector<Series1<S>> F(N + 1, Series1<S>(N)), G(N + 1, Series1<S>(N));
            for (int i = 0; i <= N; ++i)
                for (int k = 0; k <= N; ++k) {
                    S a = rng.scalar();
                    F[k].coeff(i) = a;
                    G[i].coeff(k) = a;
                }
            FqElement<S> xi(q, N, std::move(F), std::move(G));
            auto acc = FqElement<S>::zero(q, N);
            for (int d = 0; d <= N; ++d) acc = acc + fq_project_pd(xi, d);
            if (!(acc == xi)) return std::string("sum p_d != id");
            for (int d = 0; d <= N; ++d) {
                auto pd = fq_project_pd(xi, d);
                if (!(fq_project_pd(pd, d) == pd)) return "p_d not idempotent, d=" + std::to_string(d);
                for (int m = 0; m <= N; ++m)
                    if (m != d && !fq_project_pd(pd, m).is_zero())
                        return "p_m p_d != 0 at (" + std::to_string(m) + "," + std::to_string(d) + ")";
            }
        }
        return std::nullopt;
    }});
    out.push_back(Cell{"decompose", 0, 0, "lambda_alpha0", [&q, N](Prng& rng) -> std::optional<std::string> {
        for (int it = 0; it < 8; ++it) {
            auto fg = rng.germ_pair(N, N);
            if (!(lambda_retract(alpha_d(GradedElement<S>(fg, 0), q)) == fg))
                return pair_ce(fg);
        }
        return std::nullopt;
    }});
    out.push_back(Cell{"decompose", 0, 0, "runge_reconstruction", [&q, N](Prng& rng) -> std::optional<std::string> {
        const int n = std::min(N, 5);
        for (int it = 0; it < 2; ++it) {
            std::vector<Series1<S>> F(n + 1, Series1<S>(n)), G(n + 1, Series1<S>(n));
            for (int i = 0; i <= n; ++i)
                for (int k = 0; k <= n; ++k) {
                    S a = rng.scalar();
                    F[k].coeff(i) = a;
                    G[i].coeff(k) = a;
                }
            FqElement<S> xi(q, n, F, G);
            auto acc = FqElement<S>::zero(q, n);
            for (int i = 0; i <= n; ++i)
                for (int k = 0; k <= n; ++k) {
                    S a = xi.F(k).coeff(i);
                    if (!a.is_zero()) acc = acc + a * FqElement<S>::monomial(q, n, i, k);
                }
            if (!(acc == xi)) return std::string("monomial reconstruction failed");
        }
        return std::nullopt;
    }});
    for (int d = 0; d <= cfg.max_degree; ++d) {
        out.push_back(Cell{"decompose", d, 0, "lemmo1_two_path", [&q, d, N](Prng& rng) -> std::optional<std::string> {
            const int w = N - d - 2;
            if (w <= 0) return std::nullopt;
            for (Generator g :
                 {Generator::L_x, Generator::L_y, Generator::R_x, Generator::R_y}) {
                for (int it = 0; it < 5; ++it) {
                    auto e = GradedElement<S>(rng.germ_pair(N, w), d);
                    auto [deg_d, deg_d1] = generator_action_graded(g, e, q);
                    bool left = (g == Generator::L_x || g == Generator::L_y);
                    auto gen = (g == Generator::L_x || g == Generator::R_x)
                                   ? FqElement<S>::gen_x(q, N)
                                   : FqElement<S>::gen_y(q, N);
                    auto embedded = alpha_d(e, q);
                    auto prod = left ? fq_mul(gen, embedded) : fq_mul(embedded, gen);
                    auto got_d = alpha_d_inverse(fq_project_pd(prod, d), d);
                    auto got_d1 = alpha_d_inverse(fq_project_pd(prod, d + 1), d + 1);
                    if (!(got_d.pair().f().resized(w) == deg_d.pair().f().resized(w)) ||
                        !(got_d.pair().g().resized(w) == deg_d.pair().g().resized(w)) ||
                        !(got_d1.pair().f().resized(w) == deg_d1.pair().f().resized(w)) ||
                        !(got_d1.pair().g().resized(w) == deg_d1.pair().g().resized(w)))
                        return "two-path mismatch d=" + std::to_string(d) + ": " +
                               pair_ce(e.pair());
                }
            }
            return std::nullopt;
        }});
    }
}

inline void add_gamma_cells(std::vector<Cell>& out, const QParam<S>& q, const SuiteConfig& cfg) {
    const int N = cfg.trunc;
    const int top = std::min(cfg.max_degree, 4);
    for (int d = 0; d <= top; ++d)
        for (int l = 0; d + l <= top; ++l) {
            out.push_back(Cell{"gamma", d, l, "gamma_expansion",
                               [&q, d, l, N](Prng& rng) -> std::optional<std::string> {
                for (int it = 0; it < 4; ++it) {
                    auto zeta = GradedElement<S>(rng.germ_pair(N, (N - d - l) / 2), d);
                    auto eta = GradedElement<S>(rng.germ_pair(N, (N - d - l) / 2), l);
                    for (int m = 0; m <= d + l; ++m) {
                        auto g = gamma_correction(zeta, eta, m, q);
                        if (!g.pair().f().is_zero() || !g.pair().g().is_zero())
                            return "Gamma_m != 0 at m=" + std::to_string(m) + ": " +
                                   pair_ce(zeta.pair());
                    }
                    auto prod = fq_mul(alpha_d(zeta, q), alpha_d(eta, q));
                    auto tensor = tensor_embed(zeta.pair(), eta.pair(), N);
                    auto pi = pi_dl_mult(tensor, q, d, l);
                    if (!(fq_project_pd(prod, d + l) == alpha_d(pi, q)))
                        return "pi layer mismatch: " + pair_ce(zeta.pair());
                    for (int m = d + l + 1; m <= N; ++m)
                        if (!(fq_project_pd(prod, m) ==
                              alpha_d(gamma_correction(zeta, eta, m, q), q)))
                            return "Gamma layer mismatch at m=" + std::to_string(m);
                }
                return std::nullopt;
            }});
        }
}

inline void add_formal_cells(std::vector<Cell>& out, const QParam<S>& q, const SuiteConfig& cfg) {
    const int N = std::max(4, cfg.trunc / 2 + 1);
    const int top = cfg.trunc;
    for (Side side : {Side::left, Side::right}) {
        const std::string tag = side == Side::left ? "left" : "right";
        for (bool holo : {false, true}) {
            const std::string model = holo ? "_holo" : "_formal";
            out.push_back(Cell{"formal", 0, 0, tag + model + "_complex",
                               [&q, side, holo, top, N](Prng& rng) -> std::optional<std::string> {
                auto rnd_chain = [&](int maxdeg) {
                    ChainElement<S> h(top, N);
                    for (int m = 0; m <= top; ++m) h.layer(m) = rng.series2(N, maxdeg);
                    return h;
                };
                const int support = holo ? N - 2 : 2 * N;
                for (int it = 0; it < 4; ++it) {
                    auto h = rnd_chain(support);
                    if (!formal_d1(formal_d0(h, q, side), q, side)
                             .is_zero_within(top, 2 * N - 2))
                        return std::string("d1 d0 != 0");
                    ChainPair<S> fg{rnd_chain(support), rnd_chain(support)};
                    if (!formal_pi(formal_d1(fg, q, side)).resized(N - 1).is_zero())
                        return std::string("pi d1 != 0");
                }
                return std::nullopt;
            }});
            out.push_back(Cell{"formal", 0, 0, tag + model + "_witnesses",
                               [&q, side, holo, top, N](Prng& rng) -> std::optional<std::string> {
                const int support = holo ? N - 2 : 2 * N;
                for (int it = 0; it < 6; ++it) {
                    // ker d1 witness
                    ChainElement<S> lead(top, N);
                    for (int m = 1; m <= top; ++m) lead.layer(m) = rng.series2(N, support);
                    ChainElement<S> pencil = chain_pencil(lead, q, side, 0);
                    ChainElement<S> other(top, N);
                    for (int m = 0; m + 1 <= top; ++m) other.layer(m) = pencil.layer(m + 1);
                    ChainPair<S> fg = side == Side::left
                                          ? ChainPair<S>{lead, other}
                                          : ChainPair<S>{other, lead};
                    auto h = witness_d0_preimage(fg, q, side, top, 2 * N);
                    auto back = formal_d0(h, q, side);
                    if (!(back.first == fg.first) || !(back.second == fg.second))
                        return std::string("d0 witness failed");
                    // ker pi witness
                    ChainElement<S> hk(top, N);
                    auto r = rng.series2(N, support);
                    hk.layer(0) = r.mul_v() - r.mul_u();
                    for (int m = 1; m <= top; ++m) hk.layer(m) = rng.series2(N, support);
                    auto wfg = witness_d1_preimage(hk, q, side);
                    auto wback = formal_d1(wfg, q, side);
                    if (!wback.equal_within(hk, top, holo ? 2 * N : N - 1))
                        return std::string("d1 witness failed");
                }
                return std::nullopt;
            }});
        }
    }
}

inline void add_qtopology_cells(std::vector<Cell>& out, const QParam<S>& q,
                                const SuiteConfig& cfg) {
    (void)cfg;
    out.push_back(Cell{"qtopology", 0, 0, "closure_operator_axioms", [&q](Prng& rng) -> std::optional<std::string> {
        if (!q.contractive()) return std::string("q not contractive; topology suite needs |q| < 1");
        for (int it = 0; it < 6; ++it) {
            QRegionXY d;
            d.add(Axis::x, PointSetPrim{{rng.nonzero_scalar(), rng.nonzero_scalar()}});
            d.add(Axis::y, PointSetPrim{{rng.nonzero_scalar()}});
            Region r(q, std::move(d));
            auto c1 = q_closure_region(r);
            if (!(q_closure_region(c1) == c1)) return std::string("closure not idempotent");
        }
        return std::nullopt;
    }});
    out.push_back(Cell{"qtopology", 0, 0, "orbit_membership", [&q](Prng& rng) -> std::optional<std::string> {
        if (!q.contractive()) return std::string("q not contractive");
        for (int it = 0; it < 6; ++it) {
            auto p = rng.nonzero_scalar();
            auto cl = q_closure_point(QPoint{Axis::x, p}, q);
            if (!cl.contains(QPoint{Axis::x, p / q.value()})) return std::string("q^{-1}p missing");
            if (cl.contains(QPoint{Axis::x, p * q.value()})) return std::string("qp wrongly present");
            auto hull = q_hull_point(QPoint{Axis::x, p}, q);
            if (!hull.contains(QPoint{Axis::x, p * q.value()})) return std::string("qp missing in hull");
            if (!hull.contains(QPoint{Axis::x, S::zero()})) return std::string("limit missing");
            if (hull.contains(QPoint{Axis::x, p / q.value()})) return std::string("q^{-1}p in hull");
        }
        return std::nullopt;
    }});
    out.push_back(Cell{"qtopology", 0, 0, "runge_neighborhood_qopen", [&q](Prng& rng) -> std::optional<std::string> {
        if (!q.contractive()) return std::string("q not contractive");
        for (int it = 0; it < 4; ++it) {
            auto lam = rng.nonzero_scalar();
            auto r = runge_neighborhood(lam, Radius(Rational(1, 4)), Radius(Rational(1, 8)),
                                        Axis::x, q);
            if (!is_q_open_axis(r, Axis::x, q)) return std::string("runge set not q-open");
            S p = lam;
            for (int k = 0; k < 12; ++k) {
                if (!r.contains(QPoint{Axis::x, p})) return std::string("orbit point escapes");
                p *= q.value();
            }
        }
        return std::nullopt;
    }});
    out.push_back(Cell{"qtopology", 0, 0, "example8_equality", [&q](Prng&) -> std::optional<std::string> {
        if (!q.contractive()) return std::string("q not contractive");
        auto rep = example8_report(q);
        if (!rep.region_equality) return std::string("region equality failed");
        if (!rep.input_not_closed) return std::string("input unexpectedly q-closed");
        return std::nullopt;
    }});
}

inline void add_koszul_cells(std::vector<Cell>& out, const QParam<S>& q, const SuiteConfig& cfg) {
    (void)cfg;
    out.push_back(Cell{"koszul", 0, 0, "oracle_expansion", [&q](Prng& rng) -> std::optional<std::string> {
        for (int it = 0; it < 20; ++it) {
            int n = 1 + int(rng.below(5));
            Matrix<S> T(n, n), Sm(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    T.at(i, j) = rng.scalar();
                    Sm.at(i, j) = rng.scalar();
                }
            S lambda = rng.scalar(), mu = rng.scalar();
            auto blocks = koszul_blocks_unchecked(T, Sm, q.value(), lambda, mu);
            auto expect = Sm * T - q.value() * (T * Sm) +
                          ((q.value() - S::one()) * lambda * mu) * Matrix<S>::identity(n);
            if (!(blocks.d0 * blocks.d1 == expect))
                return std::string("d0 d1 != ST - qTS + (q-1)lm I");
        }
        return std::nullopt;
    }});
    out.push_back(Cell{"koszul", 0, 0, "d0d1_zero_on_modules", [&q](Prng& rng) -> std::optional<std::string> {
        for (int it = 0; it < 20; ++it) {
            int n = 1 + int(rng.below(5));
            Matrix<S> T(n, n), Sm(n, n);
            S s = rng.nonzero_scalar();
            for (int i = 0; i + 1 < n; ++i) T.at(i + 1, i) = rng.scalar();
            for (int i = 0; i < n; ++i) Sm.at(i, i) = s * q.power(unsigned(i));
            MatrixQModule<S> M(q, T, Sm);
            for (int jt = 0; jt < 20; ++jt) {
                QPoint g{rng.below(2) ? Axis::x : Axis::y, rng.scalar()};
                auto blocks = koszul_at(M, g);
                if (!(blocks.d0 * blocks.d1).is_zero()) return std::string("d0 d1 != 0");
            }
        }
        return std::nullopt;
    }});
    out.push_back(Cell{"koszul", 0, 0, "similarity_invariance", [&q](Prng& rng) -> std::optional<std::string> {
        for (int it = 0; it < 6; ++it) {
            int n = 2 + int(rng.below(3));
            Matrix<S> T(n, n), Sm(n, n);
            S s = rng.nonzero_scalar();
            for (int i = 0; i + 1 < n; ++i) T.at(i + 1, i) = rng.scalar();
            for (int i = 0; i < n; ++i) Sm.at(i, i) = s * q.power(unsigned(i));
            MatrixQModule<S> M(q, T, Sm);
            Matrix<S> P = Matrix<S>::identity(n), Pinv = Matrix<S>::identity(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < i; ++j) P.at(i, j) = rng.scalar();
            for (int col = 0; col < n; ++col)
                for (int i = 0; i < n; ++i) {
                    S acc = (i == col) ? S::one() : S::zero();
                    for (int k = 0; k < i; ++k) acc -= P.at(i, k) * Pinv.at(k, col);
                    Pinv.at(i, col) = acc;
                }
            MatrixQModule<S> MC(q, P * M.T * Pinv, P * M.S * Pinv);
            for (int jt = 0; jt < 4; ++jt) {
                QPoint g{rng.below(2) ? Axis::x : Axis::y, rng.scalar()};
                auto p1 = homology_at(M, g), p2 = homology_at(MC, g);
                if (p1.h0 != p2.h0 || p1.h1 != p2.h1 || p1.h2 != p2.h2)
                    return std::string("profiles differ under similarity");
            }
        }
        return std::nullopt;
    }});
}

}  // namespace cells

inline std::vector<Cell> build_cells(const std::string& suite, const QParam<S>& q,
                                     const SuiteConfig& cfg) {
    std::vector<Cell> out;
    auto want = [&](const char* name) { return suite == "all" || suite == name; };
    if (want("qmul")) cells::add_qmul_cells(out, q, cfg);
    if (want("series")) cells::add_series_cells(out, q, cfg);
    if (want("diagonal")) cells::add_diagonal_cells(out, q, cfg);
    if (want("dmn")) cells::add_dmn_cells(out, q, cfg);
    if (want("decompose")) cells::add_decompose_cells(out, q, cfg);
    if (want("gamma")) cells::add_gamma_cells(out, q, cfg);
    if (want("formal")) cells::add_formal_cells(out, q, cfg);
    if (want("qtopology")) cells::add_qtopology_cells(out, q, cfg);
    if (want("koszul")) cells::add_koszul_cells(out, q, cfg);
    return out;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"qmul",  "series",    "diagonal",
                                                "dmn",   "decompose", "gamma",
                                                "formal", "qtopology", "koszul"};
    return names;
}

// Run every cell; deterministic output independent of worker count.
inline std::vector<CellResult> run_cells(const std::vector<Cell>& cells_in,
                                         const SuiteConfig& cfg) {
    std::vector<CellResult> results(cells_in.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (;;) {
            size_t idx = next.fetch_add(1);
            if (idx >= cells_in.size()) break;
            const Cell& c = cells_in[idx];
            std::string tag = c.suite + "/" + c.identity + "/" + std::to_string(c.d) + "," +
                              std::to_string(c.l);
            Prng rng(Prng::mix(cfg.seed, tag));
            CellResult r;
            r.suite = c.suite;
            r.d = c.d;
            r.l = c.l;
            r.identity = c.identity;
            try {
                auto failure = c.run(rng);
                if (failure) {
                    r.pass = false;
                    r.max_defect = "nonzero";
                    r.counterexample = *failure;
                }
            } catch (const std::exception& e) {
                r.pass = false;
                r.max_defect = "exception";
                r.counterexample = e.what();
            }
            results[idx] = std::move(r);
        }
    };
    int workers = std::max(1, cfg.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return results;
}

inline Json report_json(const SuiteConfig& cfg, const std::vector<CellResult>& results) {
    Json cells = Json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        Json c{{"d", r.d},
               {"l", r.l},
               {"identity", r.identity},
               {"suite", r.suite},
               {"status", r.pass ? "pass" : "fail"},
               {"max_defect", r.max_defect}};
        if (!r.pass) c["counterexample"] = r.counterexample;
        all_pass = all_pass && r.pass;
        cells.push_back(std::move(c));
    }
    return Json{{"suite", cfg.suite},   {"q", cfg.q_text}, {"trunc", cfg.trunc},
                {"max_degree", cfg.max_degree}, {"seed", cfg.seed},  {"backend", cfg.backend},
                {"cells", cells},       {"pass", all_pass}};
}

}  // namespace qplane
