// Command-line driver: verification suites, spectrum scans, q-topology
// computations and report/plot emission.
//
// Exit codes: 0 pass, 1 identity failure, 2 usage error.

#include "qplane/json_io.hpp"
#include "qplane/suites.hpp"

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace qplane;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    Json j;
    in >> j;
    return j;
}

std::vector<std::pair<double, double>> eigen_approx(const Matrix<ExactScalar>& m) {
    const int n = m.rows();
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = std::complex<double>(m.at(i, j).re_double(), m.at(i, j).im_double());
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
    std::vector<std::pair<double, double>> out;
    for (int i = 0; i < n; ++i) out.push_back({solver.eigenvalues()[i].real(),
                                               solver.eigenvalues()[i].imag()});
    return out;
}

// spectrum candidates: confirmed eigenvalues of T on the x-axis, of S on the
// y-axis, the origin, plus any user-supplied points
std::vector<QPoint> default_candidates(const MatrixQModule<ExactScalar>& M) {
    std::vector<QPoint> pts;
    pts.push_back(QPoint{Axis::x, ExactScalar::zero()});
    for (const auto& lam : confirm_exact_eigenvalues(M.T, eigen_approx(M.T)))
        if (!lam.is_zero()) pts.push_back(QPoint{Axis::x, lam});
    for (const auto& mu : confirm_exact_eigenvalues(M.S, eigen_approx(M.S)))
        if (!mu.is_zero()) pts.push_back(QPoint{Axis::y, mu});
    return pts;
}

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// static two-panel SVG: scanned points on C_x and C_y colored by resolvent
// status, plus the Putinar backward-orbit rays
std::string spectrum_svg(const Json& report) {
    const int W = 820, H = 420, panel = 380, margin = 20;
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
        << "' viewBox='0 0 " << W << " " << H << "'>\n";
    svg << "<rect width='" << W << "' height='" << H << "' fill='white'/>\n";

    double max_abs = 1.0;
    if (report.contains("samples"))
        for (const auto& s : report.at("samples")) {
            auto v = exact_scalar_from_json(s.at("point").at("value"));
            max_abs = std::max(max_abs, std::sqrt(v.abs_sq().get_d()));
        }
    const double scale = (panel / 2.0 - 14.0) / max_abs;

    auto panel_origin = [&](Axis a) {
        double cx = margin + panel / 2.0 + (a == Axis::y ? panel + margin * 2 : 0);
        double cy = margin + panel / 2.0;
        return std::pair<double, double>{cx, cy};
    };
    for (Axis a : {Axis::x, Axis::y}) {
        auto [cx, cy] = panel_origin(a);
        svg << "<rect x='" << format_float(cx - panel / 2.0) << "' y='"
            << format_float(cy - panel / 2.0) << "' width='" << panel << "' height='" << panel
            << "' fill='none' stroke='#999'/>\n";
        svg << "<line x1='" << format_float(cx - panel / 2.0) << "' y1='" << format_float(cy)
            << "' x2='" << format_float(cx + panel / 2.0) << "' y2='" << format_float(cy)
            << "' stroke='#ddd'/>\n";
        svg << "<line x1='" << format_float(cx) << "' y1='" << format_float(cy - panel / 2.0)
            << "' x2='" << format_float(cx) << "' y2='" << format_float(cy + panel / 2.0)
            << "' stroke='#ddd'/>\n";
        svg << "<text x='" << format_float(cx - panel / 2.0 + 6) << "' y='"
            << format_float(cy - panel / 2.0 + 16) << "' font-size='13' fill='#333'>"
            << (a == Axis::x ? "C_x plane" : "C_y plane") << "</text>\n";
    }

    // Putinar orbit rays: repeated |q|^{-1} scalings of each backward-orbit base
    if (report.contains("putinar")) {
        const Json& put = report.at("putinar");
        auto qv = exact_scalar_from_json(put.at("q"));
        const Rational qmod_sq = qv.abs_sq();
        for (Axis a : {Axis::x, Axis::y}) {
            auto [cx, cy] = panel_origin(a);
            for (const auto& prim : put.at(a == Axis::x ? "x" : "y")) {
                if (prim.at("kind") == "backward_orbit") {
                    auto base = exact_scalar_from_json(prim.at("base"));
                    std::complex<double> p(base.re_double(), base.im_double());
                    std::complex<double> qc(qv.re_double(), qv.im_double());
                    for (int k = 0; k < 12; ++k) {
                        double px = cx + p.real() * scale, py = cy - p.imag() * scale;
                        if (std::abs(px - cx) > panel / 2.0 || std::abs(py - cy) > panel / 2.0)
                            break;
                        svg << "<circle cx='" << format_float(px) << "' cy='" << format_float(py)
                            << "' r='2.5' fill='none' stroke='#d33'/>\n";
                        p /= qc;
                    }
                } else if (prim.at("kind") == "annulus") {
                    auto r1 = radius_from_json(prim.at("r1"));
                    double rr = std::sqrt(r1.sq(qmod_sq).get_d());
                    svg << "<circle cx='" << format_float(cx) << "' cy='" << format_float(cy)
                        << "' r='" << format_float(rr * scale)
                        << "' fill='none' stroke='#d33' stroke-dasharray='4 3'/>\n";
                }
            }
        }
    }

    if (report.contains("samples"))
        for (const auto& s : report.at("samples")) {
            Axis a = s.at("point").at("axis") == "y" ? Axis::y : Axis::x;
            auto [cx, cy] = panel_origin(a);
            auto v = exact_scalar_from_json(s.at("point").at("value"));
            bool res = s.at("resolvent").get<bool>();
            svg << "<circle cx='" << format_float(cx + v.re_double() * scale) << "' cy='"
                << format_float(cy - v.im_double() * scale) << "' r='4' fill='"
                << (res ? "#2a2" : "#d33") << "'/>\n";
        }

    svg << "<text x='" << margin << "' y='" << H - 8
        << "' font-size='12' fill='#333'>red = spectrum, green = resolvent; open circles: "
           "Putinar backward orbits</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

int cmd_verify(const SuiteConfig& cfg_in, const std::string& out_path) {
    SuiteConfig cfg = cfg_in;
    if (cfg.trunc < 2) {
        std::cerr << "usage error: --trunc must be >= 2\n";
        return kExitUsage;
    }
    if (cfg.max_degree < 0) {
        std::cerr << "usage error: --max-degree must be >= 0\n";
        return kExitUsage;
    }
    if (cfg.backend != "exact") {
        std::cerr << "usage error: identity suites run on the exact backend; the float "
                     "backend exists for `spectrum` scans\n";
        return kExitUsage;
    }
    bool known = cfg.suite == "all";
    for (const auto& n : suite_names()) known = known || cfg.suite == n;
    if (!known) {
        std::cerr << "usage error: unknown suite '" << cfg.suite << "'\n";
        return kExitUsage;
    }
    std::optional<QParam<ExactScalar>> q;
    try {
        q.emplace(make_q(parse_scalar_text(cfg.q_text)));
    } catch (const std::exception& e) {
        std::cerr << "usage error: bad q: " << e.what() << "\n";
        return kExitUsage;
    }
    if ((cfg.suite == "qtopology" || cfg.suite == "all") && !q->contractive()) {
        std::cerr << "usage error: topology suites need |q| < 1 (got |q|^2 = "
                  << rational_to_string(q->modulus_sq()) << ")\n";
        return kExitUsage;
    }
    auto cells = build_cells(cfg.suite, *q, cfg);
    auto results = run_cells(cells, cfg);
    emit(report_json(cfg, results).dump(2) + "\n", out_path);
    for (const auto& r : results)
        if (!r.pass) return kExitFailure;
    return kExitPass;
}

template <class K>
int spectrum_with_backend(const Json& mod, const Json* points_json, const std::string& out_path);

template <>
int spectrum_with_backend<ExactScalar>(const Json& mod, const Json* points_json,
                                       const std::string& out_path) {
    auto qv = exact_scalar_from_json(mod.at("q"));
    auto q = make_q(qv);
    auto T = matrix_from_json<ExactScalar>(mod.at("T"));
    auto Sm = matrix_from_json<ExactScalar>(mod.at("S"));
    std::optional<MatrixQModule<ExactScalar>> M;
    try {
        M.emplace(q, std::move(T), std::move(Sm));
    } catch (const std::domain_error&) {
        std::cerr << "validation error: module violates TS = q^{-1}ST\n";
        return kExitUsage;
    }
    auto pts = default_candidates(*M);
    if (points_json)
        for (const auto& p : *points_json) pts.push_back(qpoint_from_json(p));
    auto rep = taylor_spectrum_scan(*M, pts, &q);
    emit(to_json(rep).dump(2) + "\n", out_path);
    return kExitPass;
}

template <>
int spectrum_with_backend<FloatScalar>(const Json& mod, const Json* points_json,
                                       const std::string& out_path) {
    auto qe = make_q(exact_scalar_from_json(mod.at("q")));
    auto qf = make_q(float_scalar_from_json(mod.at("q")));
    auto T = matrix_from_json<FloatScalar>(mod.at("T"));
    auto Sm = matrix_from_json<FloatScalar>(mod.at("S"));
    std::optional<MatrixQModule<FloatScalar>> M;
    try {
        M.emplace(qf, std::move(T), std::move(Sm));
    } catch (const std::domain_error&) {
        std::cerr << "validation error: module violates TS = q^{-1}ST (within tolerance)\n";
        return kExitUsage;
    }
    std::vector<QPoint> pts{QPoint{Axis::x, ExactScalar::zero()}};
    if (points_json)
        for (const auto& p : *points_json) pts.push_back(qpoint_from_json(p));
    auto rep = taylor_spectrum_scan(*M, pts, &qe);
    emit(to_json(rep).dump(2) + "\n", out_path);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computer algebra for the contractive quantum plane"};
    app.require_subcommand(1);

    SuiteConfig cfg;
    std::string out_path, module_path, points_path, in_path, backend = "exact";

    auto* verify = app.add_subcommand("verify", "run identity suites");
    verify->add_option("--q", cfg.q_text, "q as a rational 'a/b' or complex 'a/b,c/d'");
    verify->add_option("--trunc", cfg.trunc, "series truncation degree");
    verify->add_option("--max-degree", cfg.max_degree, "largest homogeneous degree d+l");
    verify->add_option("--seed", cfg.seed, "random seed");
    verify->add_option("--suite", cfg.suite, "suite name or 'all'");
    verify->add_option("--backend", cfg.backend, "exact|float");
    verify->add_option("--workers", cfg.workers, "parallel workers");
    verify->add_option("--out", out_path, "write the JSON report here");

    auto* spectrum = app.add_subcommand("spectrum", "Taylor/Putinar spectrum scan");
    spectrum->add_option("--module", module_path, "module JSON {q, T, S}")->required();
    spectrum->add_option("--points", points_path, "extra candidate points JSON");
    spectrum->add_option("--backend", backend, "exact|float");
    spectrum->add_option("--out", out_path, "write the report here");

    auto* qclosure = app.add_subcommand("qclosure", "q-closure of a region");
    qclosure->add_option("--q", cfg.q_text, "contractive q");
    qclosure->add_option("--in", in_path, "region JSON")->required();
    qclosure->add_option("--out", out_path, "write the closed region here");

    auto* decompose = app.add_subcommand("decompose", "graded components of an F_q element");
    decompose->add_option("--q", cfg.q_text, "q");
    decompose->add_option("--in", in_path, "FqElement JSON")->required();
    decompose->add_option("--out", out_path, "write the decomposition here");

    auto* example8 = app.add_subcommand("example8", "reproduce the shift/diagonal example");
    example8->add_option("--q", cfg.q_text, "contractive q");
    example8->add_option("--out", out_path, "write the report here");

    auto* plot = app.add_subcommand("plot", "render a spectrum report as SVG");
    plot->add_option("--in", in_path, "spectrum report JSON")->required();
    plot->add_option("--out", out_path, "SVG output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(cfg, out_path);

        if (spectrum->parsed()) {
            Json mod = load_json(module_path);
            std::optional<Json> pts;
            if (!points_path.empty()) pts = load_json(points_path);
            if (backend == "float")
                return spectrum_with_backend<FloatScalar>(mod, pts ? &*pts : nullptr, out_path);
            if (backend != "exact") {
                std::cerr << "usage error: unknown backend '" << backend << "'\n";
                return kExitUsage;
            }
            return spectrum_with_backend<ExactScalar>(mod, pts ? &*pts : nullptr, out_path);
        }

        if (qclosure->parsed()) {
            auto q = make_q(parse_scalar_text(cfg.q_text));
            auto region = region_from_json(load_json(in_path), q);
            emit(to_json(q_closure_region(region)).dump(2) + "\n", out_path);
            return kExitPass;
        }

        if (decompose->parsed()) {
            auto q = make_q(parse_scalar_text(cfg.q_text));
            Json j = load_json(in_path);
            auto xi = fqelement_from_json<ExactScalar>(j, q);
            Json comps = Json::array();
            auto acc = FqElement<ExactScalar>::zero(q, xi.trunc());
            for (int d = 0; d <= xi.trunc(); ++d) {
                auto pd = fq_project_pd(xi, d);
                acc = acc + pd;
                if (!pd.is_zero()) comps.push_back(Json{{"d", d}, {"component", to_json(pd)}});
            }
            bool ok = acc == xi;
            emit(Json{{"components", comps}, {"sum_matches", ok}}.dump(2) + "\n", out_path);
            return ok ? kExitPass : kExitFailure;
        }

        if (example8->parsed()) {
            auto q = make_q(parse_scalar_text(cfg.q_text));
            auto rep = example8_report(q);
            Json j{{"region_equality", rep.region_equality},
                   {"input_not_closed", rep.input_not_closed},
                   {"taylor", to_json(rep.taylor)},
                   {"putinar", to_json(rep.putinar)},
                   {"expected", to_json(rep.expected)}};
            std::cout << "region equality: " << (rep.region_equality ? "true" : "false") << "\n";
            emit(j.dump(2) + "\n", out_path.empty() ? std::string() : out_path);
            return rep.region_equality ? kExitPass : kExitFailure;
        }

        if (plot->parsed()) {
            emit(spectrum_svg(load_json(in_path)), out_path);
            return kExitPass;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
