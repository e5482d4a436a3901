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

#ifndef OSP_DECIDER_HPP
#define OSP_DECIDER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osp/instance.hpp"
#include "osp/mechanism.hpp"

namespace osp {

/// Which agent is asked at a vertex where several could be.
enum class SelectionPolicy {
    LowestIndex, ///< smallest agent index with a nontrivial answer partition
    RoundRobin,  ///< cycle through agents in a fixed order, skipping those with nothing to ask
};

std::string to_string(SelectionPolicy policy);
SelectionPolicy policy_from_string(const std::string& name);

struct DecideOptions {
    SelectionPolicy policy = SelectionPolicy::LowestIndex;
    /// Emit a leaf as soon as the choice rule is constant on the vertex.
    bool stop_when_constant = false;
    /// Expand each depth level's vertices across OpenMP workers.
    bool parallel = false;
};

struct DecideCounters {
    std::uint64_t vertices_visited = 0;
    /// Levels of recursion, the root being level 1.
    std::size_t recursion_depth = 0;
    /// Divergence-table cells evaluated (opponent profiles scanned).
    std::uint64_t work = 0;
    /// Per level: sum over its vertices of (sum of set sizes) * (product of set sizes).
    std::vector<std::uint64_t> level_cost;
};

struct DecisionResult {
    bool implementable = false;
    SelectionPolicy policy = SelectionPolicy::LowestIndex;
    std::optional<MechanismTree> mechanism;
    /// Non-singleton vertex where no agent can be asked anything.
    std::optional<ProductVertex> failing_vertex;
    DecideCounters counters;
};

/**
 * Decides whether some obviously strategy-proof mechanism implements the
 * choice rule, and builds one when it does.
 *
 * Vertices are split level by level: at each vertex one agent answers with
 * a cell of its answer partition, until every vertex is a single profile
 * (success) or some non-singleton vertex has no agent to ask (failure; the
 * first such vertex in level order is reported). Output does not depend on
 * the number of workers.
 */
DecisionResult decide(const ChoiceInstance& instance, const DecideOptions& options = {});

/// Same verdict as decide() without materializing the mechanism.
bool decide_only(const ChoiceInstance& instance, const DecideOptions& options = {});
DecisionResult decide_counted(const ChoiceInstance& instance, const DecideOptions& options = {});

nlohmann::json decision_to_json(const DecisionResult& result);

} // namespace osp

#endif
