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

#ifndef OSP_MECHANISM_HPP
#define OSP_MECHANISM_HPP

#include <optional>
#include <string>
#include <vector>

#include "osp/instance.hpp"

namespace osp {

struct MechanismEdge {
    TypeSet cell;
    std::size_t child = 0;
};

/// A vertex of an extensive-form mechanism. Nodes without edges are leaves.
struct MechanismNode {
    ProductVertex sets;
    std::optional<std::size_t> player;
    std::vector<MechanismEdge> edges;
    std::optional<Outcome> outcome;

    bool is_leaf() const { return edges.empty(); }
};

/**
 * Rooted tree stored as an arena; node 0 is the root. Every type profile
 * follows one root-to-leaf play, where at each internal node the acting
 * player announces the cell containing its type.
 */
struct MechanismTree {
    std::vector<MechanismNode> nodes;

    static constexpr std::size_t root = 0;

    std::size_t num_leaves() const;
    /// Edges on the longest root-to-leaf path.
    std::size_t depth() const;
};

struct WellformednessViolation {
    std::size_t node = 0;
    std::string rule; // structure, vertex, root coverage, partition, bookkeeping, finite plays, measurability
    std::string detail;
};

std::vector<WellformednessViolation> verify_wellformed(const ChoiceInstance& instance, const MechanismTree& tree);

/// A pair of types that diverge at `node` where the truthful type can do
/// strictly better by mimicking the deviation.
struct OspViolation {
    std::size_t node = 0;
    std::size_t agent = 0;
    TypeIndex type = 0;
    TypeIndex deviation = 0;
    TypeProfile truthful_profile;
    TypeProfile deviant_profile;
    Payoff truthful = 0;
    Payoff deviant = 0;
};

struct OspCheck {
    bool osp = true;
    std::optional<OspViolation> violation;
};

/// Requires a well-formed tree; throws std::invalid_argument otherwise.
OspCheck verify_osp(const ChoiceInstance& instance, const MechanismTree& tree);

nlohmann::json mechanism_to_json(const MechanismTree& tree);
/// Throws InputError when the document does not have the nested vertex shape.
MechanismTree mechanism_from_json(const nlohmann::json& doc, const ChoiceInstance& instance);

nlohmann::json violations_to_json(const std::vector<WellformednessViolation>& violations);
nlohmann::json osp_check_to_json(const OspCheck& check);

} // namespace osp

#endif
