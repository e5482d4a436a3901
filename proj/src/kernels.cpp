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

#include "osp/kernels.hpp"

#include <omp.h>

namespace osp::kernels {

namespace {

DivergenceTable prepare(const ChoiceInstance& instance, const ProductVertex& vertex, std::size_t agent) {
    DivergenceTable table;
    table.agent = agent;
    table.types = vertex[agent].members();
    table.opponents = opponent_offsets(instance, vertex, agent);
    const auto k = table.types.size();
    table.worst.resize(k);
    table.worst_at.resize(k);
    table.best_dev.resize(k * k);
    table.best_dev_at.resize(k * k);
    return table;
}

// Fills row a: the truthful minimum and the best payoff from each report.
void fill_row(const ChoiceInstance& instance, DivergenceTable& table, std::size_t a) {
    const auto agent = table.agent;
    const auto stride = instance.stride(agent);
    const auto k = table.types.size();
    const auto m = table.opponents.size();
    const auto ta = table.types[a];

    Payoff worst = instance.payoff_at(agent, ta, stride * ta + table.opponents[0]);
    std::size_t worst_at = 0;
    for (std::size_t o = 1; o < m; ++o) {
        auto p = instance.payoff_at(agent, ta, stride * ta + table.opponents[o]);
        if (p < worst) {
            worst = p;
            worst_at = o;
        }
    }
    table.worst[a] = worst;
    table.worst_at[a] = worst_at;

    for (std::size_t b = 0; b < k; ++b) {
        const auto base = stride * table.types[b];
        Payoff best = instance.payoff_at(agent, ta, base + table.opponents[0]);
        std::size_t best_at = 0;
        for (std::size_t o = 1; o < m; ++o) {
            auto p = instance.payoff_at(agent, ta, base + table.opponents[o]);
            if (p > best) {
                best = p;
                best_at = o;
            }
        }
        table.best_dev[a * k + b] = best;
        table.best_dev_at[a * k + b] = best_at;
    }
}

} // namespace

namespace serial {

DivergenceTable divergence_table(const ChoiceInstance& instance, const ProductVertex& vertex, std::size_t agent) {
    auto table = prepare(instance, vertex, agent);
    const auto stride = instance.stride(agent);
    const auto k = table.types.size();
    for (std::size_t a = 0; a < k; ++a) {
        const auto ta = table.types[a];
        for (std::size_t o = 0; o < table.opponents.size(); ++o) {
            auto p = instance.payoff_at(agent, ta, stride * ta + table.opponents[o]);
            if (o == 0 || p < table.worst[a]) {
                table.worst[a] = p;
                table.worst_at[a] = o;
            }
        }
        for (std::size_t b = 0; b < k; ++b) {
            const auto tb = table.types[b];
            for (std::size_t o = 0; o < table.opponents.size(); ++o) {
                auto p = instance.payoff_at(agent, ta, stride * tb + table.opponents[o]);
                if (o == 0 || p > table.best_dev[a * k + b]) {
                    table.best_dev[a * k + b] = p;
                    table.best_dev_at[a * k + b] = o;
                }
            }
        }
    }
    return table;
}

} // namespace serial

namespace omp {

DivergenceTable divergence_table(const ChoiceInstance& instance, const ProductVertex& vertex, std::size_t agent) {
    auto table = prepare(instance, vertex, agent);
    const auto k = static_cast<std::int64_t>(table.types.size());
    const auto cells = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k) * table.opponents.size();
#pragma omp parallel for schedule(static) if (cells >= kParallelThreshold)
    for (std::int64_t a = 0; a < k; ++a) fill_row(instance, table, static_cast<std::size_t>(a));
    return table;
}

} // namespace omp

void set_num_threads(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

} // namespace osp::kernels
