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

#pragma once

#include <span>
#include <vector>

namespace xdac::bench {

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};

/// Ordinary least squares of y on x. r2 is 1 for a perfect fit; for a
/// constant y it degenerates to 1 when residuals are zero, else 0.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> v);
double stddev(std::span<const double> v);  // population
double coefficient_of_variation(std::span<const double> v);

/// p in [0, 100], nearest-rank on a copy of the data.
double percentile(std::vector<double> v, double p);
inline double median(std::vector<double> v) { return percentile(std::move(v), 50.0); }

}  // namespace xdac::bench
