#pragma once

// Deterministic random stream for the verification suites.
//
// The generator is splitmix64 over a 64-bit state; every random value the
// suites consume is derived from raw draws by the fixed recipes below, so a
// (seed, cell) pair reproduces the same inputs on any platform and any
// worker count.  Cells are seeded by mixing the run seed with a stable cell
// identifier, never by draw order.

#include "qplane/germ.hpp"
#include "qplane/quadruple.hpp"
#include "qplane/scalar.hpp"
#include "qplane/series.hpp"

#include <cstdint>
#include <string>

namespace qplane {

class Prng {
public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
    long range(long lo, long hi) { return lo + long(below(std::uint64_t(hi - lo + 1))); }

    static std::uint64_t mix(std::uint64_t seed, const std::string& tag) {
        std::uint64_t h = 1469598103934665603ull ^ seed;
        for (unsigned char c : tag) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }

    // small rational p/q with |p| <= 4, 1 <= q <= 4
    Rational rational() {
        Rational r(range(-4, 4), range(1, 4));
        r.canonicalize();
        return r;
    }

    ExactScalar scalar() { return ExactScalar(rational(), rational()); }
    ExactScalar nonzero_scalar() {
        for (;;) {
            ExactScalar s = scalar();
            if (!s.is_zero()) return s;
        }
    }

    Series1<ExactScalar> series1(int trunc, int max_deg) {
        Series1<ExactScalar> f(trunc);
        for (int k = 0; k <= std::min(trunc, max_deg); ++k) f.coeff(k) = scalar();
        return f;
    }

    Series2<ExactScalar> series2(int n, int max_total) {
        Series2<ExactScalar> h(n, n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n && i + j <= max_total; ++j) h.at(i, j) = scalar();
        return h;
    }

    GermPair<ExactScalar> germ_pair(int trunc, int max_deg) {
        Series1<ExactScalar> f(trunc), g(trunc);
        for (int k = 1; k <= std::min(trunc, max_deg); ++k) {
            f.coeff(k) = scalar();
            g.coeff(k) = scalar();
        }
        ExactScalar c = scalar();
        f.coeff(0) = c;
        g.coeff(0) = c;
        return GermPair<ExactScalar>(std::move(f), std::move(g));
    }

    Quadruple<ExactScalar> compatible_quadruple(int n, int max_deg, int terms = 3) {
        Quadruple<ExactScalar> acc = Quadruple<ExactScalar>::zero(n);
        for (int t = 0; t < terms; ++t)
            acc = acc + tensor_embed(germ_pair(n, max_deg / 2), germ_pair(n, max_deg / 2), n);
        return acc;
    }

    Quadruple<ExactScalar> free_quadruple(int n, int max_deg) {
        return Quadruple<ExactScalar>::free(series2(n, max_deg), series2(n, max_deg),
                                            series2(n, max_deg), series2(n, max_deg));
    }

private:
    std::uint64_t state_;
};

}  // namespace qplane
