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

#include "xdac/bench/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "xdac/bench/stats.hpp"

namespace xdac::bench {

BenchReport::BenchReport(std::string experiment, uint64_t seed)
    : experiment_(std::move(experiment)) {
    summary_["schema_version"] = kSchemaVersion;
    summary_["experiment"] = experiment_;
    summary_["seed"] = seed;
}

void BenchReport::add(const std::string& point, const std::string& metric,
                      const std::string& unit, double value) {
    rows_.push_back({point, metric, unit, value});
}

void BenchReport::add_latencies(const std::string& point, const std::vector<double>& ns,
                                size_t warmup_excluded) {
    add(point, "samples", "count", static_cast<double>(ns.size()));
    add(point, "warmup_excluded", "count", static_cast<double>(warmup_excluded));
    add(point, "mean", "ns", mean(ns));
    for (double p : {1.0, 5.0, 10.0, 25.0, 50.0, 75.0, 90.0, 95.0, 99.0}) {
        char name[16];
        std::snprintf(name, sizeof(name), "p%02d", static_cast<int>(p));
        add(point, name, "ns", percentile(ns, p));
    }
    add(point, "min", "ns", percentile(ns, 0));
    add(point, "max", "ns", percentile(ns, 100));
}

double BenchReport::value_of(const std::string& point, const std::string& metric) const {
    for (const auto& r : rows_)
        if (r.point == point && r.metric == metric) return r.value;
    return 0;
}

std::vector<double> BenchReport::values_of(const std::string& metric) const {
    std::vector<double> out;
    for (const auto& r : rows_)
        if (r.metric == metric) out.push_back(r.value);
    return out;
}

std::string BenchReport::to_csv() const {
    std::string out = kCsvHeader;
    out += '\n';
    char buf[64];
    for (const auto& r : rows_) {
        std::snprintf(buf, sizeof(buf), "%.17g", r.value);
        out += experiment_ + "," + r.point + "," + r.metric + "," + r.unit + "," + buf + "\n";
    }
    return out;
}

bool BenchReport::write(const std::string& out_dir) const {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    std::ofstream csv(out_dir + "/report.csv");
    if (!csv) return false;
    csv << to_csv();
    std::ofstream js(out_dir + "/summary.json");
    if (!js) return false;
    js << summary_.dump(2) << "\n";
    return csv.good() && js.good();
}

}  // namespace xdac::bench
