#include "pipestab/coeffs.hpp"

#include <cmath>
#include <string>

namespace pipestab {

ext ZPoly::horner(ext z) const {
    ext acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

ext ZPoly::naive(ext z) const {
    ext acc = 0;
    for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * std::pow(z, static_cast<int>(k));
    return acc;
}

ext ZPoly::y_coeff(int k, ext alpha2) const {
    if (k < 0 || k >= static_cast<int>(c.size())) return 0;
    return c[k] * std::pow(alpha2, k);
}

CoeffSet make_coeffs(const WaveNumbers& wn) {
    CoeffSet s;
    s.wn = wn;
    const ext l = wn.ell();
    const ext n2 = static_cast<ext>(wn.n) * wn.n, n4 = n2 * n2, n6 = n4 * n2;
    const ext l2 = l * l, l3 = l2 * l, l4 = l3 * l;

    s.poly[0].c = {n6 + 2 * (l + 1) * n4, n2 * (3 * n2 + 4 * (l + 1)), 3 * n2 + 2 * (l + 1), 1};
    s.poly[1].c = {4 * (l + 2) * n6, 4 * n4 * (3 * l + 5), 4 * n2 * (3 * l + 4), 4 * (l + 1)};
    s.poly[2].c = {n2 * (l4 + 8 * l3 + 26 * l2 + 32 * l + 13), 3 * l4 + 20 * l3 + 50 * l2 + 36 * l + 3,
                   3 * l2 + 10 * l + 7, 1};
    s.poly[3].c = {n4 * (l3 + 6 * l2 + 11 * l + 6), n2 * (3 * l3 + 15 * l2 + 21 * l + 5),
                   3 * l3 + 12 * l2 + 13 * l + 4, l + 1};
    s.poly[4].c = {8 * n6 * (2 * l2 + 10 * l + 12), 8 * n4 * (5 * l2 + 22 * l + 21),
                   8 * n2 * (3 * l2 + 12 * l + 9), -8 * n2, -8};
    s.poly[5].c = {n2 + 2 * (l + 1), 1};
    s.poly[6].c = {n2 * (l2 + 4 * l + 7), 2 * (l2 + 3 * l + 2), 1};

    s.constant[0] = n2 * (3 * n2 + 4 * (l + 1));
    s.constant[1] = n4 * (2 * (5 * l + 9) - n2);
    s.constant[2] = 4 * n6 * (l + 3);
    s.constant[3] = n4 * (n2 + 2 * l + 18);
    s.constant[4] = 3 * l4 + 20 * l3 + 50 * l2 + 36 * l + 3;
    s.constant[5] = n2 * (l4 - 16 * l3 - 94 * l2 - 136 * l - 27);
    s.constant[6] = 8 * n4 * (l3 + l2 - 11 * l - 15);
    s.constant[7] = 16 * n6 * (l2 + 7 * l + 12);
    return s;
}

ext CoeffSet::d(ext y) const {
    const ext a = wn.alpha;
    return static_cast<ext>(wn.n) * wn.n + a * a * y;
}

ext CoeffSet::d2(ext y) const {
    const ext a = wn.alpha;
    return (wn.ell() + 1) * d(y) - 2 * a * a * y;
}

ext CoeffSet::g(int index, ext y) const {
    if (index < 1 || index > 15) throw InputError("g index must be in 1..15, got " + std::to_string(index));
    if (index <= 7) {
        const ext a = wn.alpha;
        return poly[index - 1].horner(a * a * y);
    }
    return constant[index - 8];
}

std::pair<double, double> eval_d_family(const WaveNumbers& wn, double y) {
    if (wn.n == 0 && wn.alpha == 0) throw InputError("d is identically zero for n = 0, alpha = 0");
    const CoeffSet s = make_coeffs(wn);
    return {static_cast<double>(s.d(y)), static_cast<double>(s.d2(y))};
}

double eval_g(int index, const WaveNumbers& wn, double y) {
    return static_cast<double>(make_coeffs(wn).g(index, y));
}

}  // namespace pipestab
