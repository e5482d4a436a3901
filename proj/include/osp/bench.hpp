/*
 * Copyright 2026 The osp-decide Authors
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

#ifndef OSP_BENCH_HPP
#define OSP_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osp/instance.hpp"

namespace osp::bench {

struct BenchPoint {
    std::size_t types_per_agent = 0;
    std::uint64_t table_size = 0;
    double median_seconds = 0.0;
};

struct BenchReport {
    std::string family;
    std::size_t agents = 2;
    std::vector<BenchPoint> points;
    /// Least-squares slope of log(time) against log(table size); needs three points.
    std::optional<double> slope;
};

struct BenchOptions {
    std::size_t agents = 2;
    std::size_t repetitions = 5;
    /// Each timed sample repeats the decision until at least this long.
    double min_sample_seconds = 2e-3;
    bool parallel = false;
};

/// Family member with every agent holding `types` types: constant,
/// dictatorship, or random (fixed seed, three outcomes).
ChoiceInstance family_instance(const std::string& family, std::size_t agents, std::size_t types);

std::optional<double> fit_loglog_slope(const std::vector<BenchPoint>& points);

BenchReport run(const std::string& family, const std::vector<std::size_t>& sizes, const BenchOptions& options = {});
nlohmann::json report_to_json(const BenchReport& report);

} // namespace osp::bench

#endif
