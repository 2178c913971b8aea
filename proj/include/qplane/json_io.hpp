#pragma once

// JSON wire formats.  Exact scalars serialize their parts as rational
// strings "p/q"; the float backend uses plain numbers.

#include "qplane/fqelement.hpp"
#include "qplane/germ.hpp"
#include "qplane/matrix.hpp"
#include "qplane/qseries.hpp"
#include "qplane/qtopology.hpp"
#include "qplane/quadruple.hpp"
#include "qplane/scalar.hpp"
#include "qplane/series.hpp"
#include "qplane/spectra.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace qplane {

using Json = nlohmann::json;

inline Json to_json(const ExactScalar& s) {
    return Json{{"re", rational_to_string(s.re())}, {"im", rational_to_string(s.im())}};
}
inline Json to_json(const FloatScalar& s) {
    return Json{{"re", s.re_double()}, {"im", s.im_double()}};
}

inline ExactScalar exact_scalar_from_json(const Json& j) {
    if (j.is_number()) return ExactScalar(rational_from_string(j.dump()));
    if (j.is_string()) return ExactScalar(rational_from_string(j.get<std::string>()));
    auto get_part = [&](const char* k) {
        if (!j.contains(k)) return Rational(0);
        const Json& v = j.at(k);
        if (v.is_string()) return rational_from_string(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
        throw std::invalid_argument("exact scalar parts must be rational strings or integers");
    };
    return ExactScalar(get_part("re"), get_part("im"));
}

inline FloatScalar float_scalar_from_json(const Json& j) {
    if (j.is_number()) return FloatScalar(j.get<double>());
    double re = j.value("re", 0.0);
    double im = j.value("im", 0.0);
    if (j.contains("re") && j.at("re").is_string())
        re = rational_from_string(j.at("re").get<std::string>()).get_d();
    if (j.contains("im") && j.at("im").is_string())
        im = rational_from_string(j.at("im").get<std::string>()).get_d();
    return FloatScalar(re, im);
}

template <class K>
K scalar_from_json(const Json& j);
template <>
inline ExactScalar scalar_from_json<ExactScalar>(const Json& j) {
    return exact_scalar_from_json(j);
}
template <>
inline FloatScalar scalar_from_json<FloatScalar>(const Json& j) {
    return float_scalar_from_json(j);
}

template <class K>
Json to_json(const Series1<K>& f) {
    Json coeffs = Json::array();
    for (int k = 0; k <= f.trunc(); ++k) coeffs.push_back(to_json(f.coeff(k)));
    return Json{{"trunc", f.trunc()}, {"coeffs", coeffs}};
}

template <class K>
Series1<K> series1_from_json(const Json& j) {
    int trunc = j.at("trunc").get<int>();
    Series1<K> f(trunc);
    const Json& coeffs = j.at("coeffs");
    for (int k = 0; k <= trunc && k < int(coeffs.size()); ++k)
        f.coeff(k) = scalar_from_json<K>(coeffs.at(k));
    return f;
}

template <class K>
Json to_json(const Series2<K>& h) {
    Json rows = Json::array();
    for (int i = 0; i <= h.trunc_u(); ++i) {
        Json row = Json::array();
        for (int jx = 0; jx <= h.trunc_v(); ++jx) row.push_back(to_json(h.at(i, jx)));
        rows.push_back(row);
    }
    return Json{{"trunc", Json::array({h.trunc_u(), h.trunc_v()})}, {"coeffs", rows}};
}

template <class K>
Series2<K> series2_from_json(const Json& j) {
    int nu = j.at("trunc").at(0).get<int>();
    int nv = j.at("trunc").at(1).get<int>();
    Series2<K> h(nu, nv);
    const Json& rows = j.at("coeffs");
    for (int i = 0; i <= nu && i < int(rows.size()); ++i)
        for (int jx = 0; jx <= nv && jx < int(rows.at(i).size()); ++jx)
            h.at(i, jx) = scalar_from_json<K>(rows.at(i).at(jx));
    return h;
}

// QSeries: sparse triplet list [[i, k, scalar], ...]
template <class K>
Json to_json(const QSeries<K>& f) {
    Json triplets = Json::array();
    for (int i = 0; i <= f.trunc(); ++i)
        for (int k = 0; i + k <= f.trunc(); ++k)
            if (!f.at(i, k).is_zero())
                triplets.push_back(Json::array({i, k, to_json(f.at(i, k))}));
    return Json{{"q", to_json(f.q().value())}, {"trunc", f.trunc()}, {"coeffs", triplets}};
}

template <class K>
QSeries<K> qseries_from_json(const Json& j, const QParam<K>& q) {
    int trunc = j.at("trunc").get<int>();
    QSeries<K> f(q, trunc);
    for (const auto& t : j.at("coeffs"))
        f.at(t.at(0).get<int>(), t.at(1).get<int>()) = scalar_from_json<K>(t.at(2));
    return f;
}

template <class K>
Json to_json(const Quadruple<K>& z) {
    return Json{{"compat", z.compatible()},
                {"z1z2", to_json(z.c1())},
                {"z1w2", to_json(z.c2())},
                {"w1z2", to_json(z.c3())},
                {"w1w2", to_json(z.c4())}};
}

template <class K>
Quadruple<K> quadruple_from_json(const Json& j) {
    return Quadruple<K>(series2_from_json<K>(j.at("z1z2")), series2_from_json<K>(j.at("z1w2")),
                        series2_from_json<K>(j.at("w1z2")), series2_from_json<K>(j.at("w1w2")),
                        j.value("compat", true));
}

template <class K>
Json to_json(const FqElement<K>& x) {
    Json F = Json::array(), G = Json::array();
    for (int n = 0; n <= x.trunc(); ++n) {
        F.push_back(to_json(x.F(n)));
        G.push_back(to_json(x.G(n)));
    }
    return Json{{"q", to_json(x.q().value())}, {"trunc", x.trunc()}, {"F", F}, {"G", G}};
}

template <class K>
FqElement<K> fqelement_from_json(const Json& j, const QParam<K>& q) {
    int trunc = j.at("trunc").get<int>();
    std::vector<Series1<K>> F, G;
    for (const auto& s : j.at("F")) F.push_back(series1_from_json<K>(s).resized(trunc));
    for (const auto& s : j.at("G")) G.push_back(series1_from_json<K>(s).resized(trunc));
    F.resize(trunc + 1, Series1<K>(trunc));
    G.resize(trunc + 1, Series1<K>(trunc));
    return FqElement<K>(q, trunc, std::move(F), std::move(G));
}

// ---- regions ----

inline Json to_json(const Radius& r) {
    return Json{{"coeff", rational_to_string(r.coeff())}, {"qpow", r.qpow()}};
}
inline Radius radius_from_json(const Json& j) {
    if (j.is_string()) return Radius(rational_from_string(j.get<std::string>()));
    return Radius(rational_from_string(j.at("coeff").get<std::string>()),
                  j.value("qpow", 0));
}

inline Json to_json(const RegionPrim& p) {
    if (auto* d = std::get_if<DiskPrim>(&p))
        return Json{{"kind", "disk"},
                    {"center", to_json(d->center)},
                    {"r", to_json(d->r)},
                    {"closed", d->closed}};
    if (auto* a = std::get_if<AnnulusPrim>(&p)) {
        Json j{{"kind", "annulus"},
               {"r1", to_json(a->r1)},
               {"inner_closed", a->inner_closed},
               {"outer_closed", a->outer_closed},
               {"unbounded", a->unbounded}};
        if (!a->unbounded) j["r2"] = to_json(a->r2);
        return j;
    }
    if (auto* ao = std::get_if<AnnulusOrbitPrim>(&p))
        return Json{{"kind", "annulus_orbit"},
                    {"r1", to_json(ao->r1)},
                    {"r2", to_json(ao->r2)},
                    {"inner_closed", ao->inner_closed},
                    {"outer_closed", ao->outer_closed}};
    if (auto* b = std::get_if<BackwardOrbitPrim>(&p))
        return Json{{"kind", "backward_orbit"}, {"base", to_json(b->base)}};
    if (auto* f = std::get_if<ForwardOrbitPrim>(&p))
        return Json{{"kind", "forward_orbit"}, {"base", to_json(f->base)}};
    if (auto* s = std::get_if<PointSetPrim>(&p)) {
        Json pts = Json::array();
        for (const auto& v : s->points) pts.push_back(to_json(v));
        return Json{{"kind", "points"}, {"points", pts}};
    }
    return Json{{"kind", "full"}};
}

inline RegionPrim region_prim_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "disk")
        return DiskPrim{exact_scalar_from_json(j.at("center")), radius_from_json(j.at("r")),
                        j.value("closed", false)};
    if (kind == "annulus") {
        AnnulusPrim a;
        a.r1 = radius_from_json(j.at("r1"));
        a.unbounded = j.value("unbounded", false);
        if (!a.unbounded) a.r2 = radius_from_json(j.at("r2"));
        a.inner_closed = j.value("inner_closed", true);
        a.outer_closed = j.value("outer_closed", true);
        return a;
    }
    if (kind == "annulus_orbit")
        return AnnulusOrbitPrim{radius_from_json(j.at("r1")), radius_from_json(j.at("r2")),
                                j.value("inner_closed", true), j.value("outer_closed", true)};
    if (kind == "backward_orbit") return BackwardOrbitPrim{exact_scalar_from_json(j.at("base"))};
    if (kind == "forward_orbit") return ForwardOrbitPrim{exact_scalar_from_json(j.at("base"))};
    if (kind == "points") {
        PointSetPrim s;
        for (const auto& v : j.at("points")) s.points.push_back(exact_scalar_from_json(v));
        return s;
    }
    if (kind == "full") return FullAxisPrim{};
    throw std::invalid_argument("unknown region primitive kind: " + kind);
}

inline Json to_json(const Region& r) {
    Json x = Json::array(), y = Json::array();
    for (const auto& p : r.data().on(Axis::x)) x.push_back(to_json(p));
    for (const auto& p : r.data().on(Axis::y)) y.push_back(to_json(p));
    return Json{{"q", to_json(r.q().value())},
                {"x", x},
                {"y", y},
                {"origin", r.data().origin_flag()}};
}

inline Region region_from_json(const Json& j, const QParam<ExactScalar>& q) {
    QRegionXY data;
    for (const auto& p : j.value("x", Json::array())) data.add(Axis::x, region_prim_from_json(p));
    for (const auto& p : j.value("y", Json::array())) data.add(Axis::y, region_prim_from_json(p));
    if (j.value("origin", false)) data.add_origin();
    return Region(q, std::move(data));
}

inline Json to_json(const QPoint& p) {
    return Json{{"axis", p.axis == Axis::x ? "x" : "y"}, {"value", to_json(p.value)}};
}
inline QPoint qpoint_from_json(const Json& j) {
    QPoint p;
    p.axis = j.at("axis").get<std::string>() == "y" ? Axis::y : Axis::x;
    p.value = exact_scalar_from_json(j.at("value"));
    return p;
}

// ---- modules and spectrum reports ----

template <class K>
Matrix<K> matrix_from_json(const Json& j) {
    int rows = int(j.size());
    int cols = rows ? int(j.at(0).size()) : 0;
    Matrix<K> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int jx = 0; jx < cols; ++jx) m.at(i, jx) = scalar_from_json<K>(j.at(i).at(jx));
    return m;
}

template <class K>
Json to_json(const Matrix<K>& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Json to_json(const HomologyProfile& p) {
    return Json{{"point", to_json(p.point)}, {"h0", p.h0},
                {"h1", p.h1},                {"h2", p.h2},
                {"resolvent", p.resolvent()}, {"condition_warning", p.condition_warning}};
}

inline Json to_json(const SpectrumReport& r) {
    Json samples = Json::array();
    for (const auto& s : r.samples) samples.push_back(to_json(s));
    Json taylor = Json::array();
    for (const auto& p : r.taylor_points) taylor.push_back(to_json(p));
    Json out{{"samples", samples}, {"taylor_points", taylor}};
    if (r.putinar) out["putinar"] = to_json(*r.putinar);
    return out;
}

}  // namespace qplane
