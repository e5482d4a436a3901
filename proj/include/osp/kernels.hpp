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

#ifndef OSP_KERNELS_HPP
#define OSP_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "osp/instance.hpp"

namespace osp {

/**
 * Worst-truthful and best-deviant payoffs of one agent at one vertex.
 *
 * Rows and columns are positions into `types`. For positions a, b:
 *   worst[a]        = min over opponents o of u(types[a], c(types[a], o))
 *   best(a, b)      = max over opponents o of u(types[a], c(types[b], o))
 * and the *_at fields hold the position (into `opponents`) of the first
 * opponent profile attaining the extremum.
 */
struct DivergenceTable {
    std::size_t agent = 0;
    std::vector<TypeIndex> types;
    std::vector<std::size_t> opponents;
    std::vector<Payoff> worst;
    std::vector<std::size_t> worst_at;
    std::vector<Payoff> best_dev;
    std::vector<std::size_t> best_dev_at;

    std::size_t size() const { return types.size(); }
    Payoff best(std::size_t a, std::size_t b) const { return best_dev[a * types.size() + b]; }
    std::size_t best_at(std::size_t a, std::size_t b) const { return best_dev_at[a * types.size() + b]; }
    /// Type at position a strictly prefers the best outcome of reporting b to its worst truthful outcome.
    bool gains(std::size_t a, std::size_t b) const { return worst[a] < best(a, b); }
    bool adjacent(std::size_t a, std::size_t b) const { return a != b && (gains(a, b) || gains(b, a)); }
};

namespace kernels {

/// Straight loops; the reference the parallel kernels are tested against.
namespace serial {
DivergenceTable divergence_table(const ChoiceInstance& instance, const ProductVertex& vertex, std::size_t agent);
}

/// OpenMP over rows of the table. Bit-identical to the serial kernel.
namespace omp {
DivergenceTable divergence_table(const ChoiceInstance& instance, const ProductVertex& vertex, std::size_t agent);

/// Vertices smaller than this (in agent-table cells) run single-threaded.
inline constexpr std::uint64_t kParallelThreshold = 1U << 14;
}

/// Sets the worker count used by the omp kernels (0 = runtime default).
void set_num_threads(int threads);
int max_threads();

} // namespace kernels
} // namespace osp

#endif
