/* Copyright 2026 The xdac Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "xdac/bench/stats.hpp"

#include <algorithm>
#include <cmath>

namespace xdac::bench {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    LinearFit fit;
    size_t n = std::min(x.size(), y.size());
    if (n < 2) return fit;

    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; i++) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / static_cast<double>(n);
    double my = sy / static_cast<double>(n);

    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; i++) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;

    double ss_res = 0, ss_tot = 0;
    for (size_t i = 0; i < n; i++) {
        double pred = fit.intercept + fit.slope * x[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    fit.r2 = ss_tot == 0 ? (ss_res == 0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
    return fit;
}

double mean(std::span<const double> v) {
    if (v.empty()) return 0;
    double s = 0;
    for (double d : v) s += d;
    return s / static_cast<double>(v.size());
}

double stddev(std::span<const double> v) {
    if (v.size() < 2) return 0;
    double m = mean(v);
    double s = 0;
    for (double d : v) s += (d - m) * (d - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

double coefficient_of_variation(std::span<const double> v) {
    double m = mean(v);
    return m == 0 ? 0 : stddev(v) / m;
}

double percentile(std::vector<double> v, double p) {
    if (v.empty()) return 0;
    p = std::clamp(p, 0.0, 100.0);
    size_t rank = static_cast<size_t>(std::ceil(p / 100.0 * static_cast<double>(v.size())));
    if (rank > 0) rank--;
    std::nth_element(v.begin(), v.begin() + static_cast<long>(rank), v.end());
    return v[rank];
}

}  // namespace xdac::bench
