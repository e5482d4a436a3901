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

#include "osp/oracle.hpp"

#include <algorithm>
#include <deque>

#include "osp/odag.hpp"

namespace osp::oracle {

namespace {

void require_valid(const ChoiceInstance& instance, const ProductVertex& v) {
    if (!instance.valid_vertex(v)) throw std::invalid_argument("invalid vertex");
}

void require_guard(const ChoiceInstance& instance, const OracleOptions& options) {
    const auto count = num_vertices(instance);
    if (count > options.guard)
        throw GuardExceeded("explicit graph has " + std::to_string(count) + " vertices, guard is " +
                            std::to_string(options.guard));
}

// no_gain[a][b]: the type at position a never strictly prefers an outcome of
// reporting b (any opponents in the vertex) to an outcome of reporting a.
struct Compatibility {
    std::vector<TypeIndex> types;
    std::vector<std::vector<bool>> no_gain;
};

Compatibility compatibility(const ChoiceInstance& instance, const ProductVertex& v, std::size_t agent) {
    Compatibility out;
    out.types = v[agent].members();
    const auto k = out.types.size();
    const auto stride = instance.stride(agent);
    const auto opponents = opponent_offsets(instance, v, agent);
    out.no_gain.assign(k, std::vector<bool>(k, true));
    for (std::size_t a = 0; a < k; ++a) {
        const auto ta = out.types[a];
        Payoff worst = instance.payoff_at(agent, ta, stride * ta + opponents.front());
        for (auto o : opponents) worst = std::min(worst, instance.payoff_at(agent, ta, stride * ta + o));
        for (std::size_t b = 0; b < k; ++b) {
            Payoff best = instance.payoff_at(agent, ta, stride * out.types[b] + opponents.front());
            for (auto o : opponents) best = std::max(best, instance.payoff_at(agent, ta, stride * out.types[b] + o));
            out.no_gain[a][b] = worst >= best;
        }
    }
    return out;
}

bool splits(const Compatibility& compat, TypeSet inside) {
    const auto k = compat.types.size();
    for (std::size_t a = 0; a < k; ++a) {
        if (!inside.contains(compat.types[a])) continue;
        for (std::size_t b = 0; b < k; ++b) {
            if (inside.contains(compat.types[b])) continue;
            if (!compat.no_gain[a][b] || !compat.no_gain[b][a]) return false;
        }
    }
    return true;
}

// Agent whose set differs, if `to` is a single-agent proper nonempty shrink of `from`.
std::optional<std::size_t> shrunk_agent(const ProductVertex& from, const ProductVertex& to) {
    std::optional<std::size_t> agent;
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (from[i] == to[i]) continue;
        if (agent || to[i].empty() || !to[i].proper_subset_of(from[i])) return std::nullopt;
        agent = i;
    }
    return agent;
}

std::vector<TypeSet> proper_subsets(TypeSet s) {
    std::vector<TypeSet> out;
    const auto m = s.mask();
    for (auto sub = (m - 1) & m; sub != 0; sub = (sub - 1) & m) out.emplace_back(sub);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::uint64_t num_vertices(const ChoiceInstance& instance) {
    std::uint64_t count = 1;
    for (auto s : instance.type_sizes()) {
        if (s >= 63) return UINT64_MAX;
        const auto per = (std::uint64_t{1} << s) - 1;
        if (count > UINT64_MAX / per) return UINT64_MAX;
        count *= per;
    }
    return count;
}

std::uint64_t vertex_id(const ChoiceInstance& instance, const ProductVertex& v) {
    require_valid(instance, v);
    std::uint64_t id = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto radix = (std::uint64_t{1} << instance.type_size(i)) - 1;
        id = id * radix + (v[i].mask() - 1);
    }
    return id;
}

ProductVertex vertex_at(const ChoiceInstance& instance, std::uint64_t id) {
    ProductVertex v(instance.num_agents());
    for (std::size_t i = instance.num_agents(); i-- > 0;) {
        const auto radix = (std::uint64_t{1} << instance.type_size(i)) - 1;
        v[i] = TypeSet(id % radix + 1);
        id /= radix;
    }
    if (id != 0) throw std::out_of_range("vertex id out of range");
    return v;
}

bool edge_exists(const ChoiceInstance& instance, const ProductVertex& from, const ProductVertex& to,
                 const OracleOptions& options) {
    require_valid(instance, from);
    require_valid(instance, to);
    bool exists = false;
    if (auto agent = shrunk_agent(from, to)) exists = splits(compatibility(instance, from, *agent), to[*agent]);
    if (options.debug_edges && exists != edge_exists_quantified(instance, from, to))
        throw std::logic_error("edge test disagrees with the quantified definition");
    return exists;
}

bool edge_exists_quantified(const ChoiceInstance& instance, const ProductVertex& from, const ProductVertex& to) {
    require_valid(instance, from);
    require_valid(instance, to);
    const auto agent = shrunk_agent(from, to);
    if (!agent) return false;
    const auto i = *agent;
    const auto stride = instance.stride(i);
    const auto opponents = opponent_offsets(instance, from, i);
    const auto inside = to[i];
    const auto outside = from[i] - to[i];
    bool holds = true;
    inside.for_each([&](TypeIndex a) {
        outside.for_each([&](TypeIndex b) {
            for (auto o : opponents)
                for (auto o2 : opponents) {
                    const auto xa = instance.choice(stride * a + o);
                    const auto xb = instance.choice(stride * b + o2);
                    if (instance.utility(i, a, xa) < instance.utility(i, a, xb)) holds = false;
                    if (instance.utility(i, b, xb) < instance.utility(i, b, xa)) holds = false;
                }
        });
    });
    return holds;
}

std::vector<ProductVertex> children(const ChoiceInstance& instance, const ProductVertex& vertex,
                                    const OracleOptions& options) {
    require_valid(instance, vertex);
    std::uint64_t candidates = 0;
    for (auto s : vertex) candidates += (std::uint64_t{1} << s.size());
    if (candidates > options.guard)
        throw GuardExceeded("child enumeration needs " + std::to_string(candidates) + " candidates");

    std::vector<ProductVertex> out;
    for (std::size_t i = 0; i < vertex.size(); ++i) {
        if (vertex[i].size() < 2) continue;
        const auto compat = compatibility(instance, vertex, i);
        std::vector<TypeSet> family;
        for (auto sub : proper_subsets(vertex[i])) {
            bool split = splits(compat, sub);
            if (options.debug_edges) {
                auto to = vertex;
                to[i] = sub;
                if (split != edge_exists_quantified(instance, vertex, to))
                    throw std::logic_error("edge test disagrees with the quantified definition");
            }
            if (!split) continue;
            family.push_back(sub);
            auto child = vertex;
            child[i] = sub;
            out.push_back(std::move(child));
        }
        if (options.cross_check) {
            // A proper subset splits iff it is a union of divergence-graph components.
            const auto components = connected_components(divergence_graph(instance, vertex, i));
            for (auto sub : proper_subsets(vertex[i])) {
                bool union_of_components = true;
                for (auto cell : components)
                    if (!(cell & sub).empty() && !cell.subset_of(sub)) union_of_components = false;
                bool in_family = std::binary_search(family.begin(), family.end(), sub);
                if (union_of_components != in_family)
                    throw std::logic_error("split family disagrees with divergence-graph components");
            }
        }
    }
    return out;
}

namespace {

std::vector<bool> reachable_set(const ChoiceInstance& instance, const ProductVertex& from,
                                const OracleOptions& options, std::uint64_t& explored) {
    std::vector<bool> seen(num_vertices(instance), false);
    std::deque<ProductVertex> queue{from};
    seen[vertex_id(instance, from)] = true;
    while (!queue.empty()) {
        auto v = std::move(queue.front());
        queue.pop_front();
        ++explored;
        for (auto& child : children(instance, v, options)) {
            auto id = vertex_id(instance, child);
            if (seen[id]) continue;
            seen[id] = true;
            queue.push_back(std::move(child));
        }
    }
    return seen;
}

} // namespace

ExplicitDecision decide_explicit(const ChoiceInstance& instance, Mode mode, const OracleOptions& options) {
    require_guard(instance, options);
    ExplicitDecision result;
    result.implementable = true;
    if (mode == Mode::Reachability) {
        const auto seen = reachable_set(instance, instance.root(), options, result.vertices_explored);
        for (std::size_t p = 0; p < instance.num_profiles(); ++p) {
            const auto profile = index_profile(p, instance.type_sizes());
            ProductVertex single;
            for (auto t : profile) single.push_back(TypeSet::single(t));
            if (!seen[vertex_id(instance, single)]) {
                result.implementable = false;
                result.unreachable = profile;
                break;
            }
        }
        return result;
    }
    const auto count = num_vertices(instance);
    for (std::uint64_t id = 0; id < count; ++id) {
        auto v = vertex_at(instance, id);
        ++result.vertices_explored;
        if (is_singleton(v)) continue;
        if (children(instance, v, options).empty()) {
            result.implementable = false;
            result.childless = std::move(v);
            break;
        }
    }
    return result;
}

bool has_path(const ChoiceInstance& instance, const ProductVertex& from, const ProductVertex& to,
              const OracleOptions& options) {
    require_guard(instance, options);
    require_valid(instance, to);
    std::uint64_t explored = 0;
    return reachable_set(instance, from, options, explored)[vertex_id(instance, to)];
}

ExplicitOdag build_odag(const ChoiceInstance& instance, const OracleOptions& options) {
    require_guard(instance, options);
    ExplicitOdag odag;
    const auto count = num_vertices(instance);
    for (std::uint64_t id = 0; id < count; ++id) odag.vertices.push_back(vertex_at(instance, id));
    for (std::uint64_t id = 0; id < count; ++id)
        for (const auto& child : children(instance, odag.vertices[id], options))
            odag.edges.emplace_back(id, vertex_id(instance, child));
    return odag;
}

nlohmann::json odag_to_json(const ExplicitOdag& odag) {
    auto vertices = nlohmann::json::array();
    for (const auto& v : odag.vertices) vertices.push_back(vertex_to_json(v));
    auto edges = nlohmann::json::array();
    for (auto [a, b] : odag.edges) edges.push_back({a, b});
    return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

} // namespace osp::oracle
