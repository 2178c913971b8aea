#pragma once

// The q-topology of C and C_xy: q-hulls, q-closures and the region algebra
// needed for the spectra (q-spiraling disks, annuli, scaling orbits, finite
// point sets).  Everything is decided exactly over the rational-complex
// backend; radii live in the multiplicative group r = c * |q|^k with c a
// nonnegative rational, so that q-scalings of radii stay representable.

#include "qplane/scalar.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qplane {

enum class Axis { x, y };

// A point of C_xy = C_x u C_y; (x,0) and (y,0) are the same generic point.
struct QPoint {
    Axis axis = Axis::x;
    ExactScalar value;

    bool is_origin() const { return value.is_zero(); }
    friend bool operator==(const QPoint& a, const QPoint& b) {
        if (a.value.is_zero() && b.value.is_zero()) return true;
        return a.axis == b.axis && a.value == b.value;
    }
};

// r = coeff * |q|^qpow, coeff >= 0 rational.  Comparisons square both sides
// and reduce to rational arithmetic using |q|^2.
class Radius {
public:
    Radius() : coeff_(0), qpow_(0) {}
    Radius(Rational coeff, int qpow = 0) : coeff_(std::move(coeff)), qpow_(qpow) {
        if (sgn(coeff_) < 0) throw std::domain_error("Radius: negative coefficient");
        if (sgn(coeff_) == 0) qpow_ = 0;
    }
    static Radius from_abs_sq(const Rational& abs_sq) {
        // exact square root when one exists, otherwise |q|-free failure
        Rational num = abs_sq;  // sqrt of a rational: sqrt num / sqrt den
        mpz_class ns, ds;
        if (!mpz_root(ns.get_mpz_t(), num.get_num().get_mpz_t(), 2) ||
            !mpz_root(ds.get_mpz_t(), num.get_den().get_mpz_t(), 2))
            throw std::domain_error("Radius: modulus is not an exact rational");
        return Radius(Rational(ns, ds));
    }

    const Rational& coeff() const { return coeff_; }
    int qpow() const { return qpow_; }
    bool is_zero() const { return sgn(coeff_) == 0; }

    // r^2 as a rational, given m = |q|^2
    Rational sq(const Rational& m) const {
        Rational r = coeff_ * coeff_;
        if (qpow_ > 0)
            for (int k = 0; k < qpow_; ++k) r *= m;
        else
            for (int k = 0; k < -qpow_; ++k) r /= m;
        return r;
    }

    Radius scaled_qpow(int delta) const {
        return is_zero() ? *this : Radius(coeff_, qpow_ + delta);
    }
    Radius times(const Radius& o) const { return Radius(coeff_ * o.coeff_, qpow_ + o.qpow_); }

    std::string str() const {
        std::string s = rational_to_string(coeff_);
        if (qpow_ != 0) s += "*|q|^" + std::to_string(qpow_);
        return s;
    }

private:
    Rational coeff_;
    int qpow_;
};

inline int radius_cmp(const Radius& a, const Radius& b, const Rational& m) {
    return cmp(a.sq(m), b.sq(m));
}

// ---- region primitives (one axis) ----

struct DiskPrim {  // B(center, r), open or closed; OriginDisk when center = 0
    ExactScalar center;
    Radius r;
    bool closed = false;
};

struct AnnulusPrim {  // r1 <=/< |z| <=/< r2; unbounded outer means r2 = inf
    Radius r1, r2;
    bool inner_closed = true, outer_closed = true;
    bool unbounded = false;
};

// union over k >= 0 of |q|^{-k}-scalings of an annulus (closure of a
// non-wrapping annulus); normalized away whenever consecutive copies touch
struct AnnulusOrbitPrim {
    Radius r1, r2;
    bool inner_closed = true, outer_closed = true;
};

struct BackwardOrbitPrim {  // { q^{-k} p : k >= 0 }, p != 0
    ExactScalar base;
};

struct ForwardOrbitPrim {  // { q^k p : k >= 0 } u {0}
    ExactScalar base;
};

struct PointSetPrim {  // finite, nonzero points
    std::vector<ExactScalar> points;
};

struct FullAxisPrim {};

using RegionPrim = std::variant<DiskPrim, AnnulusPrim, AnnulusOrbitPrim, BackwardOrbitPrim,
                                ForwardOrbitPrim, PointSetPrim, FullAxisPrim>;

template <class K>
class QRegion;

// Region of C_xy as two per-axis primitive unions in canonical form.
// An `origin` flag records whether the (shared) generic point 0 belongs to
// the region when no primitive already contains it.
class QRegionXY {
public:
    QRegionXY() = default;

    static QRegionXY empty() { return QRegionXY(); }
    static QRegionXY full() {
        QRegionXY r;
        r.x_.push_back(FullAxisPrim{});
        r.y_.push_back(FullAxisPrim{});
        return r;
    }

    void add(Axis axis, RegionPrim p) { prims(axis).push_back(std::move(p)); }
    void add_origin() { origin_ = true; }

    const std::vector<RegionPrim>& on(Axis a) const { return a == Axis::x ? x_ : y_; }
    bool origin_flag() const { return origin_; }

    bool is_empty() const { return x_.empty() && y_.empty() && !origin_; }

    std::vector<RegionPrim>& prims(Axis a) { return a == Axis::x ? x_ : y_; }

private:
    std::vector<RegionPrim> x_, y_;
    bool origin_ = false;
};

namespace detail {

// does q^{-k} base == value for some k >= 0? (|q| < 1)
inline bool on_backward_orbit(const ExactScalar& value, const ExactScalar& base,
                              const QParam<ExactScalar>& q) {
    if (base.is_zero() || value.is_zero()) return false;
    Rational vm = value.abs_sq(), bm = base.abs_sq();
    ExactScalar cur = base;
    Rational cm = bm;
    while (cmp(cm, vm) < 0) {
        cur /= q.value();
        cm = cur.abs_sq();
    }
    return cur == value;
}

inline bool on_forward_orbit_with_limit(const ExactScalar& value, const ExactScalar& base,
                                        const QParam<ExactScalar>& q) {
    if (value.is_zero()) return true;  // the limit point
    if (base.is_zero()) return false;
    Rational vm = value.abs_sq();
    ExactScalar cur = base;
    Rational cm = cur.abs_sq();
    while (cmp(cm, vm) > 0) {
        cur *= q.value();
        cm = cur.abs_sq();
    }
    return cur == value;
}

// |value - center| vs r: -1 below, 0 equal, +1 above
inline int dist_cmp(const ExactScalar& value, const ExactScalar& center, const Radius& r,
                    const Rational& m) {
    return cmp((value - center).abs_sq(), r.sq(m));
}

inline bool prim_contains(const RegionPrim& p, const ExactScalar& v,
                          const QParam<ExactScalar>& q) {
    const Rational m = q.modulus_sq();
    if (std::holds_alternative<FullAxisPrim>(p)) return true;
    if (auto* d = std::get_if<DiskPrim>(&p)) {
        int c = dist_cmp(v, d->center, d->r, m);
        return d->closed ? c <= 0 : c < 0;
    }
    if (auto* a = std::get_if<AnnulusPrim>(&p)) {
        int c1 = cmp(v.abs_sq(), a->r1.sq(m));
        if (c1 < 0 || (c1 == 0 && !a->inner_closed)) return false;
        if (a->unbounded) return true;
        int c2 = cmp(v.abs_sq(), a->r2.sq(m));
        return c2 < 0 || (c2 == 0 && a->outer_closed);
    }
    if (auto* a = std::get_if<AnnulusOrbitPrim>(&p)) {
        if (v.is_zero()) return false;
        Rational vv = v.abs_sq();
        Rational lo = a->r1.sq(m), hi = a->r2.sq(m);
        // scale the modulus down into [lo, hi] by multiplying by m = |q|^2
        while (cmp(vv, hi) > 0) vv *= m;
        int c1 = cmp(vv, lo), c2 = cmp(vv, hi);
        return (c1 > 0 || (c1 == 0 && a->inner_closed)) &&
               (c2 < 0 || (c2 == 0 && a->outer_closed));
    }
    if (auto* b = std::get_if<BackwardOrbitPrim>(&p)) return on_backward_orbit(v, b->base, q);
    if (auto* f = std::get_if<ForwardOrbitPrim>(&p))
        return on_forward_orbit_with_limit(v, f->base, q);
    if (auto* s = std::get_if<PointSetPrim>(&p)) {
        for (const auto& pt : s->points)
            if (pt == v) return true;
        return false;
    }
    return false;
}

}  // namespace detail

class Region {
public:
    explicit Region(const QParam<ExactScalar>& q) : q_(&q) {}
    Region(const QParam<ExactScalar>& q, QRegionXY data) : q_(&q), data_(std::move(data)) {
        canonicalize();
    }

    const QParam<ExactScalar>& q() const { return *q_; }
    const QRegionXY& data() const { return data_; }

    bool contains(const QPoint& p) const {
        if (p.is_origin()) {
            if (data_.origin_flag()) return true;
            for (Axis a : {Axis::x, Axis::y})
                for (const auto& prim : data_.on(a))
                    if (detail::prim_contains(prim, ExactScalar::zero(), *q_)) return true;
            return false;
        }
        for (const auto& prim : data_.on(p.axis))
            if (detail::prim_contains(prim, p.value, *q_)) return true;
        return false;
    }

    bool is_empty() const { return data_.is_empty(); }

    friend bool operator==(const Region& a, const Region& b) {
        return a.canonical_key() == b.canonical_key();
    }
    friend bool operator!=(const Region& a, const Region& b) { return !(a == b); }

    // a stable textual canonical form; doubles as the equality key
    std::string canonical_key() const;

    void canonicalize();

private:
    const QParam<ExactScalar>* q_;
    QRegionXY data_;
};

namespace detail {

inline std::string scalar_key(const ExactScalar& s) {
    return s.re().get_str() + "," + s.im().get_str();
}

// normalize a radius so that coeff^2 * m^qpow has qpow in {0,1} when m has a
// rational square root times... we instead normalize by folding even powers
// of |q| into the coefficient: |q|^2 = m is rational.
inline Radius radius_normalize(const Radius& r, const Rational& m) {
    if (r.is_zero()) return Radius(Rational(0));
    Rational c = r.coeff();
    int k = r.qpow();
    while (k >= 2) {
        c *= m;
        k -= 2;
    }
    while (k <= -2) {
        c /= m;
        k += 2;
    }
    if (k != 0) {
        // try to absorb the leftover |q| when m is a perfect rational square
        mpz_class ns, ds;
        if (mpz_root(ns.get_mpz_t(), m.get_num().get_mpz_t(), 2) &&
            mpz_root(ds.get_mpz_t(), m.get_den().get_mpz_t(), 2)) {
            Rational root(ns, ds);
            if (k > 0)
                c *= root;
            else
                c /= root;
            k = 0;
        }
    }
    return Radius(c, k);
}

inline std::string radius_key(const Radius& r, const Rational& m) {
    Radius n = radius_normalize(r, m);
    std::string s = n.coeff().get_str();
    if (n.qpow() != 0) s += "q" + std::to_string(n.qpow());
    return s;
}

}  // namespace detail

inline void Region::canonicalize() {
    const Rational m = q_->modulus_sq();
    for (Axis axis : {Axis::x, Axis::y}) {
        auto& prims = data_.prims(axis);
        bool full = false;
        std::vector<AnnulusPrim> annuli;
        std::vector<AnnulusOrbitPrim> orbits_ann;
        std::vector<DiskPrim> disks;
        std::vector<ExactScalar> points;
        std::vector<ExactScalar> bwd, fwd;
        for (auto& p : prims) {
            if (std::holds_alternative<FullAxisPrim>(p)) full = true;
            else if (auto* a = std::get_if<AnnulusPrim>(&p)) {
                if (!a->unbounded) {
                    int c = radius_cmp(a->r1, a->r2, m);
                    if (c > 0) continue;                                        // empty
                    if (c == 0 && !(a->inner_closed && a->outer_closed)) continue;
                }
                annuli.push_back(*a);
            } else if (auto* ao = std::get_if<AnnulusOrbitPrim>(&p)) {
                // wrapping orbit collapses to one unbounded annulus
                if (radius_cmp(ao->r2, ao->r1.scaled_qpow(-1), m) > 0 ||
                    (radius_cmp(ao->r2, ao->r1.scaled_qpow(-1), m) == 0 &&
                     (ao->outer_closed || ao->inner_closed)))
                    annuli.push_back(AnnulusPrim{ao->r1, Radius(), ao->inner_closed, false, true});
                else
                    orbits_ann.push_back(*ao);
            } else if (auto* d = std::get_if<DiskPrim>(&p)) {
                if (d->r.is_zero() && !d->closed) continue;  // empty
                if (d->r.is_zero()) {
                    if (d->center.is_zero()) data_.add_origin();
                    else points.push_back(d->center);
                } else
                    disks.push_back(*d);
            } else if (auto* b = std::get_if<BackwardOrbitPrim>(&p)) {
                if (!b->base.is_zero()) bwd.push_back(b->base);
            } else if (auto* f = std::get_if<ForwardOrbitPrim>(&p)) {
                if (!f->base.is_zero()) fwd.push_back(f->base);
                data_.add_origin();
            } else if (auto* s = std::get_if<PointSetPrim>(&p)) {
                for (auto& pt : s->points) {
                    if (pt.is_zero()) data_.add_origin();
                    else points.push_back(pt);
                }
            }
        }
        prims.clear();
        if (full) {
            prims.push_back(FullAxisPrim{});
            continue;
        }
        // merge annuli as radial intervals
        if (!annuli.empty()) {
            std::sort(annuli.begin(), annuli.end(), [&](const AnnulusPrim& a, const AnnulusPrim& b) {
                int c = radius_cmp(a.r1, b.r1, m);
                if (c != 0) return c < 0;
                return a.inner_closed && !b.inner_closed;
            });
            std::vector<AnnulusPrim> merged;
            for (const auto& a : annuli) {
                if (!merged.empty()) {
                    AnnulusPrim& last = merged.back();
                    bool overlaps = false;
                    if (last.unbounded)
                        overlaps = true;
                    else {
                        int c = radius_cmp(a.r1, last.r2, m);
                        overlaps = c < 0 || (c == 0 && (a.inner_closed || last.outer_closed));
                    }
                    if (overlaps) {
                        if (!last.unbounded) {
                            if (a.unbounded)
                                last.unbounded = true;
                            else {
                                int c = radius_cmp(a.r2, last.r2, m);
                                if (c > 0) {
                                    last.r2 = a.r2;
                                    last.outer_closed = a.outer_closed;
                                } else if (c == 0)
                                    last.outer_closed = last.outer_closed || a.outer_closed;
                            }
                        }
                        continue;
                    }
                }
                merged.push_back(a);
            }
            annuli = std::move(merged);
        }
        // drop points swallowed by other primitives, dedupe
        auto covered = [&](const ExactScalar& v) {
            for (const auto& a : annuli)
                if (detail::prim_contains(RegionPrim(a), v, *q_)) return true;
            for (const auto& d : disks)
                if (detail::prim_contains(RegionPrim(d), v, *q_)) return true;
            for (const auto& ao : orbits_ann)
                if (detail::prim_contains(RegionPrim(ao), v, *q_)) return true;
            for (const auto& b : bwd)
                if (detail::on_backward_orbit(v, b, *q_)) return true;
            for (const auto& f : fwd)
                if (detail::on_forward_orbit_with_limit(v, f, *q_)) return true;
            return false;
        };
        std::vector<ExactScalar> kept;
        for (const auto& v : points) {
            bool dup = covered(v);
            if (!dup)
                for (const auto& w : kept)
                    if (w == v) dup = true;
            if (!dup) kept.push_back(v);
        }
        // drop backward orbits absorbed by an unbounded annulus
        std::vector<ExactScalar> kept_bwd;
        for (const auto& b : bwd) {
            bool absorbed = false;
            for (const auto& a : annuli)
                if (a.unbounded && detail::prim_contains(RegionPrim(a), b, *q_)) absorbed = true;
            for (const auto& w : kept_bwd)
                if (w == b) absorbed = true;
            if (!absorbed) kept_bwd.push_back(b);
        }
        std::vector<ExactScalar> kept_fwd;
        for (const auto& f : fwd) {
            bool dup = false;
            for (const auto& w : kept_fwd)
                if (w == f) dup = true;
            if (!dup) kept_fwd.push_back(f);
        }
        auto skey = [](const ExactScalar& s) { return detail::scalar_key(s); };
        std::sort(kept.begin(), kept.end(),
                  [&](const ExactScalar& a, const ExactScalar& b) { return skey(a) < skey(b); });
        std::sort(kept_bwd.begin(), kept_bwd.end(),
                  [&](const ExactScalar& a, const ExactScalar& b) { return skey(a) < skey(b); });
        std::sort(kept_fwd.begin(), kept_fwd.end(),
                  [&](const ExactScalar& a, const ExactScalar& b) { return skey(a) < skey(b); });
        std::sort(disks.begin(), disks.end(), [&](const DiskPrim& a, const DiskPrim& b) {
            return skey(a.center) < skey(b.center);
        });
        for (auto& d : disks) prims.push_back(d);
        for (auto& a : annuli) prims.push_back(a);
        for (auto& ao : orbits_ann) prims.push_back(ao);
        for (auto& b : kept_bwd) prims.push_back(BackwardOrbitPrim{b});
        for (auto& f : kept_fwd) prims.push_back(ForwardOrbitPrim{f});
        if (!kept.empty()) prims.push_back(PointSetPrim{std::move(kept)});
    }
}

inline std::string Region::canonical_key() const {
    const Rational m = q_->modulus_sq();
    std::string out;
    for (Axis axis : {Axis::x, Axis::y}) {
        out += axis == Axis::x ? "X:" : "Y:";
        for (const auto& p : data_.on(axis)) {
            if (std::holds_alternative<FullAxisPrim>(p)) out += "[full]";
            else if (auto* d = std::get_if<DiskPrim>(&p))
                out += "[disk " + detail::scalar_key(d->center) + ";" +
                       detail::radius_key(d->r, m) + (d->closed ? ";c]" : ";o]");
            else if (auto* a = std::get_if<AnnulusPrim>(&p))
                out += "[ann " + detail::radius_key(a->r1, m) + (a->inner_closed ? "c" : "o") +
                       ";" + (a->unbounded ? std::string("inf") : detail::radius_key(a->r2, m)) +
                       (a->outer_closed && !a->unbounded ? "c]" : "o]");
            else if (auto* ao = std::get_if<AnnulusOrbitPrim>(&p))
                out += "[annorb " + detail::radius_key(ao->r1, m) +
                       (ao->inner_closed ? "c" : "o") + ";" + detail::radius_key(ao->r2, m) +
                       (ao->outer_closed ? "c]" : "o]");
            else if (auto* b = std::get_if<BackwardOrbitPrim>(&p))
                out += "[bwd " + detail::scalar_key(b->base) + "]";
            else if (auto* f = std::get_if<ForwardOrbitPrim>(&p))
                out += "[fwd " + detail::scalar_key(f->base) + "]";
            else if (auto* s = std::get_if<PointSetPrim>(&p)) {
                out += "[pts";
                for (const auto& v : s->points) out += " " + detail::scalar_key(v);
                out += "]";
            }
        }
        out += ";";
    }
    if (data_.origin_flag()) out += "O";
    return out;
}

// ---- the operations of the q-topology ----

inline void require_contractive(const QParam<ExactScalar>& q) {
    if (!q.contractive())
        throw std::domain_error("q-topology requires a contractive q (|q| < 1)");
}

// closure of a point: {q^{-k} p}; the generic point is dense in all of C_xy
inline Region q_closure_point(const QPoint& p, const QParam<ExactScalar>& q) {
    require_contractive(q);
    QRegionXY out;
    if (p.is_origin()) return Region(q, QRegionXY::full());
    out.add(p.axis, BackwardOrbitPrim{p.value});
    return Region(q, std::move(out));
}

// q-hull of a point: {q^k p} u {0}
inline Region q_hull_point(const QPoint& p, const QParam<ExactScalar>& q) {
    require_contractive(q);
    QRegionXY out;
    if (p.is_origin()) {
        out.add_origin();
        return Region(q, std::move(out));
    }
    out.add(p.axis, ForwardOrbitPrim{p.value});
    return Region(q, std::move(out));
}

// closure of a region, primitive by primitive
inline Region q_closure_region(const Region& r) {
    const auto& q = r.q();
    require_contractive(q);
    const Rational m = q.modulus_sq();
    QRegionXY out;
    bool dense = r.data().origin_flag();  // a region containing 0 is dense
    for (Axis axis : {Axis::x, Axis::y}) {
        for (const auto& p : r.data().on(axis)) {
            if (std::holds_alternative<FullAxisPrim>(p)) {
                dense = true;  // contains the generic point
            } else if (auto* d = std::get_if<DiskPrim>(&p)) {
                // disks containing the origin are dense in all of C_xy
                int c = detail::dist_cmp(ExactScalar::zero(), d->center, d->r, m);
                if (c < 0 || (c == 0 && d->closed)) dense = true;
                else
                    throw std::domain_error(
                        "q_closure_region: closure of a disk missing the origin is not in "
                        "the region algebra");
            } else if (auto* a = std::get_if<AnnulusPrim>(&p)) {
                if (a->unbounded) {
                    out.add(axis, *a);
                    continue;
                }
                // wraps iff r2 >= r1/|q|: backward scalings overlap into [r1, inf)
                int c = radius_cmp(a->r2, a->r1.scaled_qpow(-1), m);
                bool touch_joins = (c == 0 && (a->outer_closed || a->inner_closed));
                if (c > 0 || touch_joins)
                    out.add(axis, AnnulusPrim{a->r1, Radius(), a->inner_closed, false, true});
                else
                    out.add(axis,
                            AnnulusOrbitPrim{a->r1, a->r2, a->inner_closed, a->outer_closed});
            } else if (auto* ao = std::get_if<AnnulusOrbitPrim>(&p)) {
                out.add(axis, *ao);  // already closed
            } else if (auto* b = std::get_if<BackwardOrbitPrim>(&p)) {
                out.add(axis, *b);  // already closed
            } else if (std::holds_alternative<ForwardOrbitPrim>(p)) {
                dense = true;  // contains the generic point
            } else if (auto* s = std::get_if<PointSetPrim>(&p)) {
                for (const auto& v : s->points) {
                    if (v.is_zero()) dense = true;
                    else out.add(axis, BackwardOrbitPrim{v});
                }
            }
        }
    }
    if (dense) return Region(q, QRegionXY::full());
    return Region(q, std::move(out));
}

// ---- q-openness ----

namespace detail {

inline bool prim_open(const RegionPrim& p) {
    if (std::holds_alternative<FullAxisPrim>(p)) return true;
    if (auto* d = std::get_if<DiskPrim>(&p)) return !d->closed && !d->r.is_zero();
    if (auto* a = std::get_if<AnnulusPrim>(&p))
        return !a->inner_closed && (a->unbounded || !a->outer_closed);
    return false;  // orbits, point sets, annulus orbits are never open
}

// q * P as a primitive (exact for the scaling-stable classes)
inline std::optional<RegionPrim> prim_scaled_by_q(const RegionPrim& p,
                                                  const QParam<ExactScalar>& q) {
    if (std::holds_alternative<FullAxisPrim>(p)) return RegionPrim(FullAxisPrim{});
    if (auto* d = std::get_if<DiskPrim>(&p))
        return RegionPrim(DiskPrim{d->center * q.value(), d->r.scaled_qpow(1), d->closed});
    if (auto* a = std::get_if<AnnulusPrim>(&p)) {
        if (a->unbounded) return std::nullopt;  // q * [r1, inf) is again unbounded; handled below
        return RegionPrim(AnnulusPrim{a->r1.scaled_qpow(1), a->r2.scaled_qpow(1),
                                      a->inner_closed, a->outer_closed, false});
    }
    return std::nullopt;
}

// P1 subset of P2, exact for the classes we scale (disks and annuli)
inline bool prim_subset(const RegionPrim& p1, const RegionPrim& p2,
                        const QParam<ExactScalar>& q) {
    const Rational m = q.modulus_sq();
    if (std::holds_alternative<FullAxisPrim>(p2)) return true;
    if (auto* d1 = std::get_if<DiskPrim>(&p1)) {
        if (auto* d2 = std::get_if<DiskPrim>(&p2)) {
            // B(c1,r1) subset B(c2,r2)  iff  |c1-c2| + r1 <= r2.  Squaring
            // twice: with gap = r2^2 - r1^2 - |c1-c2|^2 >= 0 the condition
            // becomes 4 |c1-c2|^2 r1^2 <= gap^2.
            Rational dd = (d1->center - d2->center).abs_sq();
            Rational r1s = d1->r.sq(m), r2s = d2->r.sq(m);
            Rational gap = r2s - r1s - dd;
            if (sgn(gap) < 0) return false;
            int c = cmp(4 * dd * r1s, gap * gap);
            bool strict_ok = d2->closed || !d1->closed;
            return c < 0 || (c == 0 && strict_ok);
        }
    }
    if (auto* a1 = std::get_if<AnnulusPrim>(&p1)) {
        if (auto* a2 = std::get_if<AnnulusPrim>(&p2)) {
            int c1 = radius_cmp(a2->r1, a1->r1, m);
            bool inner_ok = c1 < 0 || (c1 == 0 && (a2->inner_closed || !a1->inner_closed));
            if (!inner_ok) return false;
            if (a2->unbounded) return true;
            if (a1->unbounded) return false;
            int c2 = radius_cmp(a1->r2, a2->r2, m);
            return c2 < 0 || (c2 == 0 && (a2->outer_closed || !a1->outer_closed));
        }
    }
    return false;
}

}  // namespace detail

// Openness plus q-spiraling of one axis part, viewed as a subset of (C, q).
// Exact on single primitives; for unions the spiraling test asks each scaled
// primitive to land inside some single primitive of the region, which covers
// the disk-chain unions of the Runge construction.
inline bool is_q_open_axis(const Region& r, Axis axis, const QParam<ExactScalar>& q) {
    require_contractive(q);
    const auto& prims = r.data().on(axis);
    if (prims.empty()) return !r.data().origin_flag();  // empty is q-open; bare {0} is not
    for (const auto& p : prims)
        if (!detail::prim_open(p)) return false;
    // must contain the origin
    bool zero_in = false;
    for (const auto& p : prims)
        if (detail::prim_contains(p, ExactScalar::zero(), q)) zero_in = true;
    if (!zero_in) return false;
    // q-spiraling per primitive
    for (const auto& p : prims) {
        if (std::holds_alternative<FullAxisPrim>(p)) continue;
        if (auto* a = std::get_if<AnnulusPrim>(&p); a && a->unbounded) {
            // q*[r1,inf) = [q r1, inf) would have to fit in [r1, inf): needs r1 = 0
            if (!a->r1.is_zero()) return false;
            continue;
        }
        auto scaled = detail::prim_scaled_by_q(p, q);
        if (!scaled) return false;
        bool inside = false;
        for (const auto& host : prims)
            if (detail::prim_subset(*scaled, host, q)) inside = true;
        if (!inside) return false;
    }
    return true;
}

// A nonempty q-open subset of C_xy has both axis parts nonempty and q-open
// (each then contains the shared generic point).
inline bool is_q_open(const Region& r, const QParam<ExactScalar>& q) {
    require_contractive(q);
    if (r.is_empty()) return true;  // the empty set is q-open by convention
    if (r.data().on(Axis::x).empty() || r.data().on(Axis::y).empty()) return false;
    return is_q_open_axis(r, Axis::x, q) && is_q_open_axis(r, Axis::y, q);
}

// Runge q-open neighborhood of the q-hull of lambda:
//   U = B(0, eps) u union_{m=0..n} B(q^m lambda, |q|^m delta),
// with n the least index whose next scaled disk fits inside B(0, eps).
inline Region runge_neighborhood(const ExactScalar& lambda, const Radius& eps,
                                 const Radius& delta, Axis axis,
                                 const QParam<ExactScalar>& q) {
    require_contractive(q);
    if (eps.is_zero() || delta.is_zero())
        throw std::domain_error("runge_neighborhood: radii must be positive");
    const Rational m = q.modulus_sq();
    QRegionXY out;
    out.add(axis, DiskPrim{ExactScalar::zero(), eps, false});
    if (!lambda.is_zero()) {
        ExactScalar center = lambda;
        int mm = 0;
        while (true) {
            out.add(axis, DiskPrim{center, delta.scaled_qpow(mm), false});
            // stop once q*B(q^m l, |q|^m d) = B(q^{m+1} l, |q|^{m+1} d) fits in B(0, eps):
            // |q^{m+1} l| + |q|^{m+1} d <= eps
            ExactScalar next = center * q.value();
            Rational a2 = next.abs_sq();
            Rational b2 = delta.scaled_qpow(mm + 1).sq(m);
            Rational e2 = eps.sq(m);
            Rational gap = e2 - a2 - b2;
            bool fits = false;
            if (sgn(gap) >= 0) fits = cmp(4 * a2 * b2, gap * gap) <= 0;
            if (fits) break;
            center = next;
            ++mm;
            if (mm > 100000) throw std::logic_error("runge_neighborhood runaway");
        }
    }
    return Region(q, std::move(out));
}

}  // namespace qplane
