#include "radial.hpp"

#include <algorithm>
#include <cmath>

namespace offaxis::detail {

double argmax_on_interval(const std::function<double(double)>& f, double lo, double hi) {
    constexpr int kScan = 4000;
    const double h = (hi - lo) / kScan;
    int best = 0;
    double best_value = f(lo);
    for (int k = 1; k <= kScan; ++k) {
        const double v = f(lo + k * h);
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }
    double a = lo + std::max(best - 1, 0) * h;
    double b = lo + std::min(best + 1, kScan) * h;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
        if (f(c) > f(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    const double mid = 0.5 * (a + b);
    return f(mid) >= best_value ? mid : lo + best * h;
}

}  // namespace offaxis::detail
