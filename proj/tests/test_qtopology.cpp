#include "qplane/qtopology.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qplane;
using S = ExactScalar;

namespace {
QParam<S> half() { return make_q(S(Rational(1, 2))); }

Region annulus_region(const QParam<S>& q, Axis a, Radius r1, Radius r2, bool ic, bool oc) {
    QRegionXY d;
    d.add(a, AnnulusPrim{r1, r2, ic, oc, false});
    return Region(q, std::move(d));
}
}  // namespace

TEST_CASE("closure of a point is its backward orbit") {
    auto q = half();
    auto r = q_closure_point(QPoint{Axis::x, S::one()}, q);
    // contains q^{-k} for k >= 0, not q
    CHECK(r.contains(QPoint{Axis::x, S::one()}));
    CHECK(r.contains(QPoint{Axis::x, S(Rational(2))}));
    CHECK(r.contains(QPoint{Axis::x, S(Rational(1024))}));
    CHECK_FALSE(r.contains(QPoint{Axis::x, S(Rational(1, 2))}));
    CHECK_FALSE(r.contains(QPoint{Axis::x, S(Rational(3))}));
    CHECK_FALSE(r.contains(QPoint{Axis::y, S(Rational(2))}));

    // p = q^3 gives {q^{3-k}}: q^3, q^2, q, 1, q^{-1}, ...
    auto r3 = q_closure_point(QPoint{Axis::x, S(Rational(1, 8))}, q);
    CHECK(r3.contains(QPoint{Axis::x, S(Rational(1, 8))}));
    CHECK(r3.contains(QPoint{Axis::x, S(Rational(1, 4))}));
    CHECK(r3.contains(QPoint{Axis::x, S::one()}));
    CHECK(r3.contains(QPoint{Axis::x, S(Rational(2))}));
    CHECK_FALSE(r3.contains(QPoint{Axis::x, S(Rational(1, 16))}));
}

TEST_CASE("closure of the empty region is empty") {
    auto q = half();
    auto c = q_closure_region(Region(q, QRegionXY::empty()));
    CHECK(c.is_empty());
    CHECK(c == Region(q, QRegionXY::empty()));
}

TEST_CASE("the generic point is dense") {
    auto q = half();
    auto r = q_closure_point(QPoint{Axis::x, S::zero()}, q);
    CHECK(r == Region(q, QRegionXY::full()));
    CHECK(r.contains(QPoint{Axis::y, S(Rational(17, 3))}));
}

TEST_CASE("q-hull is the forward orbit with its limit") {
    auto q = half();
    auto r = q_hull_point(QPoint{Axis::x, S::one()}, q);
    CHECK(r.contains(QPoint{Axis::x, S::one()}));
    CHECK(r.contains(QPoint{Axis::x, S(Rational(1, 2))}));
    CHECK(r.contains(QPoint{Axis::x, S(Rational(1, 1024))}));
    CHECK(r.contains(QPoint{Axis::x, S::zero()}));  // the limit
    CHECK_FALSE(r.contains(QPoint{Axis::x, S(Rational(2))}));

    // hull of 0 is {0}
    auto r0 = q_hull_point(QPoint{Axis::y, S::zero()}, q);
    CHECK(r0.contains(QPoint{Axis::x, S::zero()}));
    CHECK_FALSE(r0.contains(QPoint{Axis::y, S::one()}));

    // hull subset of closure of hull
    auto ch = q_closure_region(r);
    CHECK(ch.contains(QPoint{Axis::x, S::one()}));
    CHECK(ch.contains(QPoint{Axis::x, S(Rational(1, 2))}));
}

TEST_CASE("orbit directions do not mix") {
    auto q = half();
    auto bwd = q_closure_point(QPoint{Axis::x, S(Rational(3, 7))}, q);
    CHECK_FALSE(bwd.contains(QPoint{Axis::x, S(Rational(3, 14))}));  // q p
    auto fwd = q_hull_point(QPoint{Axis::x, S(Rational(3, 7))}, q);
    CHECK_FALSE(fwd.contains(QPoint{Axis::x, S(Rational(6, 7))}));  // q^{-1} p
}

TEST_CASE("closure of the wrapping annulus is the complement of the open disk") {
    auto q = half();
    // annulus 1 <= |z| <= |q|^{-1} = 2, closed
    auto taylor = annulus_region(q, Axis::x, Radius(Rational(1)), Radius(Rational(1), -1),
                                 true, true);
    auto closed = q_closure_region(taylor);

    QRegionXY want;
    want.add(Axis::x, AnnulusPrim{Radius(Rational(1)), Radius(), true, false, true});
    CHECK(closed == Region(q, std::move(want)));

    CHECK(closed.contains(QPoint{Axis::x, S(Rational(1))}));
    CHECK(closed.contains(QPoint{Axis::x, S(Rational(100))}));
    CHECK_FALSE(closed.contains(QPoint{Axis::x, S(Rational(99, 100))}));
}

TEST_CASE("closure of {(0,1)} is the backward orbit on the y-axis") {
    auto q = half();
    QRegionXY d;
    d.add(Axis::y, PointSetPrim{{S::one()}});
    auto closed = q_closure_region(Region(q, std::move(d)));
    QRegionXY want;
    want.add(Axis::y, BackwardOrbitPrim{S::one()});
    CHECK(closed == Region(q, std::move(want)));
    CHECK(closed.contains(QPoint{Axis::y, S(Rational(4))}));
    CHECK_FALSE(closed.contains(QPoint{Axis::y, S(Rational(1, 2))}));
}

TEST_CASE("closure is idempotent, extensive and monotone on the primitives") {
    auto q = half();
    std::vector<Region> cases;
    cases.push_back(Region(q, QRegionXY::empty()));
    cases.push_back(Region(q, QRegionXY::full()));
    {
        QRegionXY d;
        d.add(Axis::x, PointSetPrim{{S(Rational(3)), S(Rational(1, 3))}});
        d.add(Axis::y, PointSetPrim{{S(Rational(-2))}});
        cases.push_back(Region(q, std::move(d)));
    }
    cases.push_back(annulus_region(q, Axis::x, Radius(Rational(1)), Radius(Rational(3, 2)),
                                   true, true));   // non-wrapping
    cases.push_back(annulus_region(q, Axis::y, Radius(Rational(1)), Radius(Rational(2)),
                                   true, true));   // wrapping
    {
        QRegionXY d;
        d.add(Axis::x, BackwardOrbitPrim{S(Rational(5, 4))});
        cases.push_back(Region(q, std::move(d)));
    }
    {
        QRegionXY d;
        d.add(Axis::x, DiskPrim{S::zero(), Radius(Rational(2)), false});
        cases.push_back(Region(q, std::move(d)));
    }

    std::vector<QPoint> probes;
    for (long k = -3; k <= 3; ++k) {
        probes.push_back(QPoint{Axis::x, S(Rational(1 << 3, 1) * Rational(1, 1 << (k + 3)))});
        probes.push_back(QPoint{Axis::y, S(Rational(3) * Rational(1 << 3, 1 << (k + 3)))});
    }
    probes.push_back(QPoint{Axis::x, S::zero()});

    for (const auto& r : cases) {
        auto c1 = q_closure_region(r);
        auto c2 = q_closure_region(c1);
        CHECK(c1 == c2);  // idempotent
        for (const auto& p : probes) {
            if (r.contains(p)) CHECK(c1.contains(p));  // extensive
        }
    }

    // monotone: closure of a sub-pointset is contained in the closure of the set
    QRegionXY small, big;
    small.add(Axis::x, PointSetPrim{{S(Rational(2))}});
    big.add(Axis::x, PointSetPrim{{S(Rational(2)), S(Rational(5))}});
    auto cs = q_closure_region(Region(q, std::move(small)));
    auto cb = q_closure_region(Region(q, std::move(big)));
    for (const auto& p : probes)
        if (cs.contains(p)) CHECK(cb.contains(p));
}

TEST_CASE("closure of a finite set equals the union of point closures") {
    auto q = half();
    std::vector<S> pts{S(Rational(2)), S(Rational(3, 5))};
    QRegionXY d;
    d.add(Axis::x, PointSetPrim{pts});
    auto whole = q_closure_region(Region(q, std::move(d)));
    QRegionXY u;
    u.add(Axis::x, BackwardOrbitPrim{pts[0]});
    u.add(Axis::x, BackwardOrbitPrim{pts[1]});
    CHECK(whole == Region(q, std::move(u)));
}

TEST_CASE("open origin disks are q-open, annuli are not") {
    auto q = half();
    {
        QRegionXY d;
        d.add(Axis::x, DiskPrim{S::zero(), Radius(Rational(1)), false});
        d.add(Axis::y, DiskPrim{S::zero(), Radius(Rational(2)), false});
        Region r(q, std::move(d));
        CHECK(is_q_open(r, q));
        CHECK(is_q_open_axis(r, Axis::x, q));
    }
    {
        auto r = annulus_region(q, Axis::x, Radius(Rational(1, 2)), Radius(Rational(2)),
                                false, false);
        CHECK_FALSE(is_q_open_axis(r, Axis::x, q));  // no origin, not spiraling
        CHECK_FALSE(is_q_open(r, q));
    }
    {
        // closed disk is not open
        QRegionXY d;
        d.add(Axis::x, DiskPrim{S::zero(), Radius(Rational(1)), true});
        CHECK_FALSE(is_q_open_axis(Region(q, std::move(d)), Axis::x, q));
    }
    CHECK(is_q_open(Region(q, QRegionXY::empty()), q));
    CHECK(is_q_open(Region(q, QRegionXY::full()), q));
}

TEST_CASE("runge neighborhoods cover the q-hull and are q-open") {
    auto q = half();
    auto lam = S(Rational(3));
    auto r = runge_neighborhood(lam, Radius(Rational(1, 4)), Radius(Rational(1, 8)), Axis::x, q);
    CHECK(is_q_open_axis(r, Axis::x, q));
    // the whole forward orbit lies inside
    S p = lam;
    for (int k = 0; k < 24; ++k) {
        CHECK(r.contains(QPoint{Axis::x, p}));
        p *= q.value();
    }
    CHECK(r.contains(QPoint{Axis::x, S::zero()}));

    CHECK_THROWS_AS(runge_neighborhood(lam, Radius(Rational(0)), Radius(Rational(1)), Axis::x, q),
                    std::domain_error);
}

TEST_CASE("non-contractive q is rejected by the topology layer") {
    auto expanding = make_q(S(Rational(2)));
    CHECK_THROWS_AS(q_closure_point(QPoint{Axis::x, S::one()}, expanding), std::domain_error);
    CHECK_THROWS_AS(q_hull_point(QPoint{Axis::x, S::one()}, expanding), std::domain_error);
}

TEST_CASE("non-wrapping annulus closes to the annulus orbit") {
    auto q = half();
    // [1, 3/2]: 3/2 < 1/|q| = 2, gap
    auto r = annulus_region(q, Axis::x, Radius(Rational(1)), Radius(Rational(3, 2)), true, true);
    auto c = q_closure_region(r);
    CHECK(c.contains(QPoint{Axis::x, S(Rational(1))}));
    CHECK(c.contains(QPoint{Axis::x, S(Rational(2))}));      // 2*1
    CHECK(c.contains(QPoint{Axis::x, S(Rational(3))}));      // 2*(3/2)
    CHECK(c.contains(QPoint{Axis::x, S(Rational(5))}));      // in [4, 6]
    CHECK_FALSE(c.contains(QPoint{Axis::x, S(Rational(7, 4))}));  // in the gap (3/2, 2)
    CHECK_FALSE(c.contains(QPoint{Axis::x, S(Rational(7, 2))}));  // in the gap (3, 4)
    CHECK(q_closure_region(c) == c);
}

TEST_CASE("radii with |q| powers compare exactly for irrational |q|") {
    // q = (1+i)/4: |q|^2 = 1/8, so |q| is irrational
    auto q = make_q(S(Rational(1, 4), Rational(1, 4)));
    Radius one(Rational(1));
    Radius qinv(Rational(1), -1);
    CHECK(radius_cmp(one, qinv, q.modulus_sq()) < 0);
    CHECK(radius_cmp(qinv.scaled_qpow(1), one, q.modulus_sq()) == 0);
    // closure of the wrapping annulus still collapses
    auto taylor = annulus_region(q, Axis::x, one, qinv, true, true);
    auto closed = q_closure_region(taylor);
    QRegionXY want;
    want.add(Axis::x, AnnulusPrim{one, Radius(), true, false, true});
    CHECK(closed == Region(q, std::move(want)));
}
