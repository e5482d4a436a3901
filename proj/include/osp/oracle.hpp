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

#ifndef OSP_ORACLE_HPP
#define OSP_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "osp/instance.hpp"

// Exponential-time ground truth over the explicit graph of all product
// vertices. Only meant for small instances; everything here refuses to run
// past the vertex guard rather than answer approximately.
namespace osp::oracle {

inline constexpr std::uint64_t kDefaultGuard = 100000;

class GuardExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleOptions {
    std::uint64_t guard = kDefaultGuard;
    /// Evaluate every edge both through the min/max form and the fully
    /// quantified four-way loop, throwing std::logic_error if they differ.
    bool debug_edges = false;
    /// In children(): compare the split family against the divergence-graph
    /// components and throw std::logic_error on mismatch.
    bool cross_check = false;
};

enum class Mode { Reachability, Childless };

std::uint64_t num_vertices(const ChoiceInstance& instance);
std::uint64_t vertex_id(const ChoiceInstance& instance, const ProductVertex& v);
ProductVertex vertex_at(const ChoiceInstance& instance, std::uint64_t id);

/// True iff `to` shrinks exactly one agent's set of `from` to a proper
/// nonempty subset such that no type on either side of the split can do
/// better by mimicking a type on the other side, for any opponents in `from`.
bool edge_exists(const ChoiceInstance& instance, const ProductVertex& from, const ProductVertex& to,
                 const OracleOptions& options = {});
/// The same condition evaluated literally, one inequality at a time.
bool edge_exists_quantified(const ChoiceInstance& instance, const ProductVertex& from, const ProductVertex& to);

std::vector<ProductVertex> children(const ChoiceInstance& instance, const ProductVertex& vertex,
                                    const OracleOptions& options = {});

struct ExplicitDecision {
    bool implementable = false;
    std::optional<ProductVertex> childless;  // first childless non-singleton vertex (Childless mode)
    std::optional<TypeProfile> unreachable;  // first singleton not reached (Reachability mode)
    std::uint64_t vertices_explored = 0;
};

ExplicitDecision decide_explicit(const ChoiceInstance& instance, Mode mode, const OracleOptions& options = {});

bool has_path(const ChoiceInstance& instance, const ProductVertex& from, const ProductVertex& to,
              const OracleOptions& options = {});

struct ExplicitOdag {
    std::vector<ProductVertex> vertices;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> edges; // indices into `vertices`
};

ExplicitOdag build_odag(const ChoiceInstance& instance, const OracleOptions& options = {});
nlohmann::json odag_to_json(const ExplicitOdag& odag);

} // namespace osp::oracle

#endif
