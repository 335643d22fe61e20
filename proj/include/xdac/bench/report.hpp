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

#include <string>
#include <vector>

#include <json.hpp>

namespace xdac::bench {

/// Long-form results table plus a structured summary. The CSV schema is
/// versioned and frozen: one header line, five columns.
class BenchReport {
public:
    static constexpr int kSchemaVersion = 1;
    static constexpr const char* kCsvHeader = "experiment,point,metric,unit,value";

    BenchReport(std::string experiment, uint64_t seed);

    void add(const std::string& point, const std::string& metric, const std::string& unit,
             double value);

    /// Latency samples fold into fixed quantile metrics per point.
    void add_latencies(const std::string& point, const std::vector<double>& ns,
                       size_t warmup_excluded);

    nlohmann::json& summary() { return summary_; }
    const nlohmann::json& summary() const { return summary_; }

    double value_of(const std::string& point, const std::string& metric) const;
    std::vector<double> values_of(const std::string& metric) const;  // grid order

    std::string to_csv() const;

    /// Writes report.csv and summary.json under out_dir.
    bool write(const std::string& out_dir) const;

    const std::string& experiment() const { return experiment_; }

private:
    struct Row {
        std::string point, metric, unit;
        double value;
    };
    std::string experiment_;
    std::vector<Row> rows_;
    nlohmann::json summary_;
};

enum class BenchErrorCode : uint8_t { InsufficientSamples, Io };

struct BenchError {
    BenchErrorCode code;
    std::string detail;
};

}  // namespace xdac::bench
