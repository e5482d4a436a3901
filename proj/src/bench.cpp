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

#include "osp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "osp/decider.hpp"
#include "osp/generators.hpp"

namespace osp::bench {

ChoiceInstance family_instance(const std::string& family, std::size_t agents, std::size_t types) {
    const std::vector<std::size_t> sizes(agents, types);
    if (family == "constant") return gen::constant_rule(sizes);
    if (family == "dictatorship") return gen::dictatorship(sizes);
    if (family == "random") return gen::random_instance({12345, sizes, 3, 0, 3});
    throw std::invalid_argument("unknown family '" + family + "' (expected constant, dictatorship or random)");
}

std::optional<double> fit_loglog_slope(const std::vector<BenchPoint>& points) {
    if (points.size() < 3) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(points.size());
    for (const auto& p : points) {
        const double x = std::log(static_cast<double>(p.table_size));
        const double y = std::log(std::max(p.median_seconds, 1e-12));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom <= 0) return std::nullopt;
    return (n * sxy - sx * sy) / denom;
}

BenchReport run(const std::string& family, const std::vector<std::size_t>& sizes, const BenchOptions& options) {
    using clock = std::chrono::steady_clock;
    BenchReport report;
    report.family = family;
    report.agents = options.agents;
    const DecideOptions decide_options{SelectionPolicy::LowestIndex, false, options.parallel};

    for (auto size : sizes) {
        const auto instance = family_instance(family, options.agents, size);
        volatile bool sink = decide_only(instance, decide_options);

        // Batch enough calls that one sample clears the timer resolution.
        std::size_t batch = 1;
        for (;;) {
            const auto start = clock::now();
            for (std::size_t b = 0; b < batch; ++b) sink = decide_only(instance, decide_options);
            const std::chrono::duration<double> spent = clock::now() - start;
            if (spent.count() >= options.min_sample_seconds || batch >= (std::size_t{1} << 24)) break;
            batch *= 2;
        }

        std::vector<double> samples;
        for (std::size_t r = 0; r < std::max<std::size_t>(options.repetitions, 1); ++r) {
            const auto start = clock::now();
            for (std::size_t b = 0; b < batch; ++b) sink = decide_only(instance, decide_options);
            const std::chrono::duration<double> spent = clock::now() - start;
            samples.push_back(spent.count() / static_cast<double>(batch));
        }
        (void)sink;
        std::sort(samples.begin(), samples.end());
        report.points.push_back({size, stats(instance).table_size, samples[samples.size() / 2]});
    }
    report.slope = fit_loglog_slope(report.points);
    return report;
}

nlohmann::json report_to_json(const BenchReport& report) {
    auto points = nlohmann::json::array();
    for (const auto& p : report.points)
        points.push_back({{"types_per_agent", p.types_per_agent},
                          {"table_size", p.table_size},
                          {"median_seconds", p.median_seconds}});
    nlohmann::json doc{{"family", report.family}, {"agents", report.agents}, {"points", std::move(points)}};
    doc["slope"] = report.slope ? nlohmann::json(*report.slope) : nlohmann::json(nullptr);
    return doc;
}

} // namespace osp::bench
