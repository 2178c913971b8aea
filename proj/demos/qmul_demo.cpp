// Multiply two elements of the truncated q-plane algebra three ways and
// print the shared result, then split an F_q section into its graded parts.

#include "qplane/fqelement.hpp"
#include "qplane/json_io.hpp"
#include "qplane/qseries.hpp"

#include <iostream>

using namespace qplane;
using S = ExactScalar;

int main() {
    auto q = make_q(S(Rational(1, 2)));
    const int N = 6;

    // f = x + y, g = 1 + x y
    QSeries<S> f(q, N), g(q, N);
    f.at(1, 0) = S::one();
    f.at(0, 1) = S::one();
    g.at(0, 0) = S::one();
    g.at(1, 1) = S::one();

    auto fg = qmul(f, g);
    std::cout << "f*g (double-sum)  = " << to_json(fg).dump() << "\n";
    std::cout << "left layer form   agrees: " << (fg == qmul_left_form(f, g)) << "\n";
    std::cout << "right layer form  agrees: " << (fg == qmul_right_form(f, g)) << "\n";

    // the m-th graded part of x*y inside F_q
    auto xy = fq_mul(FqElement<S>::gen_x(q, N), FqElement<S>::gen_y(q, N));
    for (int d = 0; d <= N; ++d) {
        auto pd = fq_project_pd(xy, d);
        if (!pd.is_zero()) std::cout << "x*y has a graded component at d = " << d << "\n";
    }
    return 0;
}
