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

#include "osp/decider.hpp"

#include <cstdint>

#include "osp/odag.hpp"

namespace osp {

std::string to_string(SelectionPolicy policy) {
    return policy == SelectionPolicy::RoundRobin ? "roundrobin" : "lowest";
}

SelectionPolicy policy_from_string(const std::string& name) {
    if (name == "lowest") return SelectionPolicy::LowestIndex;
    if (name == "roundrobin") return SelectionPolicy::RoundRobin;
    throw std::invalid_argument("unknown policy '" + name + "' (expected lowest or roundrobin)");
}

namespace {

struct Pending {
    ProductVertex vertex;
    std::size_t next_agent = 0; // round-robin cursor
    std::size_t node = 0;       // arena index in the mechanism, when building one
};

enum class Step { Leaf, Split, Stuck };

struct Expansion {
    Step step = Step::Stuck;
    std::size_t agent = 0;
    std::vector<TypeSet> cells;
    std::uint64_t work = 0;
};

bool constant_on(const ChoiceInstance& instance, const ProductVertex& vertex) {
    const auto profiles = vertex_profiles(instance, vertex);
    for (auto p : profiles)
        if (instance.choice(p) != instance.choice(profiles.front())) return false;
    return true;
}

Expansion expand(const ChoiceInstance& instance, const Pending& pending, const DecideOptions& options) {
    Expansion out;
    const auto& v = pending.vertex;
    if (is_singleton(v) || (options.stop_when_constant && constant_on(instance, v))) {
        out.step = Step::Leaf;
        return out;
    }
    const auto n = instance.num_agents();
    const auto kernel = options.parallel ? Kernel::Parallel : Kernel::Serial;
    const auto first = options.policy == SelectionPolicy::RoundRobin ? pending.next_agent : 0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto agent = (first + k) % n;
        if (v[agent].size() < 2) continue;
        auto table = divergence_table(instance, v, agent, kernel);
        out.work += static_cast<std::uint64_t>(table.size()) * table.size() * table.opponents.size();
        if (auto partition = answer_partition(table)) {
            out.step = Step::Split;
            out.agent = agent;
            out.cells = std::move(partition->cells);
            return out;
        }
    }
    out.step = Step::Stuck;
    return out;
}

DecisionResult run(const ChoiceInstance& instance, const DecideOptions& options, bool build_tree) {
    DecisionResult result;
    result.policy = options.policy;
    MechanismTree tree;

    std::vector<Pending> level;
    level.push_back({instance.root(), 0, 0});
    if (build_tree) tree.nodes.push_back({instance.root(), std::nullopt, {}, std::nullopt});

    const auto n = instance.num_agents();
    bool stuck = false;
    while (!level.empty() && !stuck) {
        ++result.counters.recursion_depth;
        std::uint64_t cost = 0;
        for (const auto& p : level) cost += vertex_table_size(p.vertex);
        result.counters.level_cost.push_back(cost);
        result.counters.vertices_visited += level.size();

        std::vector<Expansion> expansions(level.size());
        const auto count = static_cast<std::int64_t>(level.size());
#pragma omp parallel for schedule(dynamic) if (options.parallel && count > 1)
        for (std::int64_t k = 0; k < count; ++k)
            expansions[static_cast<std::size_t>(k)] = expand(instance, level[static_cast<std::size_t>(k)], options);

        std::vector<Pending> next;
        for (std::size_t k = 0; k < level.size(); ++k) {
            auto& e = expansions[k];
            auto& p = level[k];
            result.counters.work += e.work;
            if (e.step == Step::Stuck) {
                result.failing_vertex = p.vertex;
                stuck = true;
                break;
            }
            if (e.step == Step::Leaf) {
                if (build_tree) tree.nodes[p.node].outcome = instance.choice(vertex_profiles(instance, p.vertex).front());
                continue;
            }
            if (build_tree) tree.nodes[p.node].player = e.agent;
            for (auto cell : e.cells) {
                Pending child{p.vertex, (e.agent + 1) % n, 0};
                child.vertex[e.agent] = cell;
                if (build_tree) {
                    child.node = tree.nodes.size();
                    tree.nodes.push_back({child.vertex, std::nullopt, {}, std::nullopt});
                    tree.nodes[p.node].edges.push_back({cell, child.node});
                }
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }

    result.implementable = !stuck;
    if (result.implementable && build_tree) result.mechanism = std::move(tree);
    return result;
}

} // namespace

DecisionResult decide(const ChoiceInstance& instance, const DecideOptions& options) {
    return run(instance, options, true);
}

bool decide_only(const ChoiceInstance& instance, const DecideOptions& options) {
    return run(instance, options, false).implementable;
}

DecisionResult decide_counted(const ChoiceInstance& instance, const DecideOptions& options) {
    return run(instance, options, false);
}

nlohmann::json decision_to_json(const DecisionResult& result) {
    nlohmann::json doc;
    doc["implementable"] = result.implementable;
    doc["policy"] = to_string(result.policy);
    doc["vertices_visited"] = result.counters.vertices_visited;
    doc["recursion_depth"] = result.counters.recursion_depth;
    doc["work"] = result.counters.work;
    doc["level_cost"] = result.counters.level_cost;
    if (result.failing_vertex) doc["failing_vertex"] = vertex_to_json(*result.failing_vertex);
    if (result.mechanism) doc["mechanism"] = mechanism_to_json(*result.mechanism);
    return doc;
}

} // namespace osp
