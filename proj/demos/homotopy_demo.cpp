// Walk one cell of the diagonal complex: check d1 d0 = 0, split a cocycle
// into its coboundary and H^1 parts, and verify the homotopy identity.

#include "qplane/diag_complex.hpp"
#include "qplane/prng.hpp"

#include <iostream>

using namespace qplane;
using S = ExactScalar;

int main() {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 10;
    DiagParams<S> p(q, /*d=*/1, /*l=*/2, N);
    Prng rng(7);

    auto zeta = rng.compatible_quadruple(N, N - 4);
    std::cout << "d1(d0(zeta)) == 0: " << diag_d1(diag_d0(zeta, p), p).is_zero() << "\n";

    auto recon = homotopy_tau0(diag_pi(zeta, p).pair(), N) + diag_d1(homotopy_tau1(zeta, p), p);
    std::cout << "tau0 pi + d1 tau1 == id: " << recon.equal_within(zeta, N - 2) << "\n";

    // a mixed cocycle: coboundary + embedded germ pair
    auto fg = rng.germ_pair(N, N - 6);
    auto beta_c = diag_d0(rng.compatible_quadruple(N, N - 6), p);
    auto beta_r = op_T(op_Psi(fg, N), p);
    QuadruplePair<S> beta{beta_c.first + beta_r.first, beta_c.second + beta_r.second};
    auto split = cohomology_h1_split(beta, p, N - 4);
    std::cout << "H^1 representative recovered: "
              << (split.representative.f().resized(N - 6) == fg.f().resized(N - 6)) << "\n";
    return 0;
}
