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

#ifndef OSP_ODAG_HPP
#define OSP_ODAG_HPP

#include <optional>
#include <vector>

#include "osp/instance.hpp"
#include "osp/kernels.hpp"

namespace osp {

enum class Kernel { Serial, Parallel };

/**
 * Divergence graph of one agent at a vertex: an undirected graph over the
 * agent's remaining types. {a, b} is an edge iff one of the two types can
 * strictly gain by mimicking the other under some pair of opponent profiles,
 * so no obvious question may separate a from b.
 */
struct DivergenceGraph {
    std::size_t agent = 0;
    std::vector<TypeIndex> types;
    std::vector<std::vector<std::size_t>> adjacency; // by position into `types`

    std::size_t num_edges() const;
    bool has_edge(TypeIndex a, TypeIndex b) const;
};

/// Connected components of the divergence graph, ordered by smallest type.
struct AnswerPartition {
    std::size_t agent = 0;
    std::vector<TypeSet> cells;
};

DivergenceTable divergence_table(const ChoiceInstance& instance, const ProductVertex& vertex, std::size_t agent,
                                 Kernel kernel = Kernel::Serial);

DivergenceGraph divergence_graph(const DivergenceTable& table);
DivergenceGraph divergence_graph(const ChoiceInstance& instance, const ProductVertex& vertex, std::size_t agent,
                                 Kernel kernel = Kernel::Serial);

/// Components of the graph as type sets, ordered by smallest member.
std::vector<TypeSet> connected_components(const DivergenceGraph& graph);

/// Empty when the agent has one type left or its graph is connected.
std::optional<AnswerPartition> answer_partition(const DivergenceTable& table);
std::optional<AnswerPartition> answer_partition(const ChoiceInstance& instance, const ProductVertex& vertex,
                                                std::size_t agent, Kernel kernel = Kernel::Serial);

} // namespace osp

#endif
