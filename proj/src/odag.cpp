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

#include "osp/odag.hpp"

#include <algorithm>
#include <numeric>

namespace osp {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t u) {
        auto r = u;
        while (r != parent_[r]) r = parent_[r];
        while (u != r) {
            auto next = parent_[u];
            parent_[u] = r;
            u = next;
        }
        return r;
    }

    void unite(std::size_t u, std::size_t v) {
        auto ru = find(u), rv = find(v);
        if (ru == rv) return;
        // Keep the smaller index as root so component order is by minimum.
        if (rv < ru) std::swap(ru, rv);
        parent_[rv] = ru;
    }

private:
    std::vector<std::size_t> parent_;
};

void require_valid(const ChoiceInstance& instance, const ProductVertex& vertex, std::size_t agent) {
    if (!instance.valid_vertex(vertex)) throw std::invalid_argument("invalid vertex: every coordinate must be a nonempty subset of the agent's types");
    if (agent >= instance.num_agents()) throw std::invalid_argument("agent index out of range");
}

} // namespace

std::size_t DivergenceGraph::num_edges() const {
    std::size_t degree = 0;
    for (const auto& row : adjacency) degree += row.size();
    return degree / 2;
}

bool DivergenceGraph::has_edge(TypeIndex a, TypeIndex b) const {
    auto pa = std::find(types.begin(), types.end(), a);
    auto pb = std::find(types.begin(), types.end(), b);
    if (pa == types.end() || pb == types.end()) return false;
    const auto& row = adjacency[static_cast<std::size_t>(pa - types.begin())];
    return std::find(row.begin(), row.end(), static_cast<std::size_t>(pb - types.begin())) != row.end();
}

DivergenceTable divergence_table(const ChoiceInstance& instance, const ProductVertex& vertex, std::size_t agent,
                                 Kernel kernel) {
    require_valid(instance, vertex, agent);
    return kernel == Kernel::Parallel ? kernels::omp::divergence_table(instance, vertex, agent)
                                      : kernels::serial::divergence_table(instance, vertex, agent);
}

DivergenceGraph divergence_graph(const DivergenceTable& table) {
    DivergenceGraph graph;
    graph.agent = table.agent;
    graph.types = table.types;
    const auto k = table.size();
    graph.adjacency.resize(k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (table.adjacent(a, b)) {
                graph.adjacency[a].push_back(b);
                graph.adjacency[b].push_back(a);
            }
    for (auto& row : graph.adjacency) std::sort(row.begin(), row.end());
    return graph;
}

DivergenceGraph divergence_graph(const ChoiceInstance& instance, const ProductVertex& vertex, std::size_t agent,
                                 Kernel kernel) {
    return divergence_graph(divergence_table(instance, vertex, agent, kernel));
}

std::vector<TypeSet> connected_components(const DivergenceGraph& graph) {
    const auto k = graph.types.size();
    DisjointSets sets(k);
    for (std::size_t a = 0; a < k; ++a)
        for (auto b : graph.adjacency[a]) sets.unite(a, b);
    // Roots are component minima; positions follow increasing type order.
    std::vector<TypeSet> cells;
    std::vector<std::size_t> cell_of_root(k, k);
    for (std::size_t a = 0; a < k; ++a) {
        auto r = sets.find(a);
        if (cell_of_root[r] == k) {
            cell_of_root[r] = cells.size();
            cells.emplace_back();
        }
        cells[cell_of_root[r]].insert(graph.types[a]);
    }
    return cells;
}

std::optional<AnswerPartition> answer_partition(const DivergenceTable& table) {
    if (table.size() <= 1) return std::nullopt;
    // Union-find straight off the table; no adjacency lists needed here.
    const auto k = table.size();
    DisjointSets sets(k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (table.adjacent(a, b)) sets.unite(a, b);
    AnswerPartition partition;
    partition.agent = table.agent;
    std::vector<std::size_t> cell_of_root(k, k);
    for (std::size_t a = 0; a < k; ++a) {
        auto r = sets.find(a);
        if (cell_of_root[r] == k) {
            cell_of_root[r] = partition.cells.size();
            partition.cells.emplace_back();
        }
        partition.cells[cell_of_root[r]].insert(table.types[a]);
    }
    if (partition.cells.size() < 2) return std::nullopt;
    return partition;
}

std::optional<AnswerPartition> answer_partition(const ChoiceInstance& instance, const ProductVertex& vertex,
                                                std::size_t agent, Kernel kernel) {
    return answer_partition(divergence_table(instance, vertex, agent, kernel));
}

} // namespace osp
