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

#include "osp/mechanism.hpp"

#include <algorithm>

namespace osp {

std::size_t MechanismTree::num_leaves() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const MechanismNode& n) { return n.is_leaf(); }));
}

std::size_t MechanismTree::depth() const {
    if (nodes.empty()) return 0;
    std::size_t deepest = 0;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
        auto [node, d] = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, d);
        for (const auto& e : nodes[node].edges) stack.emplace_back(e.child, d + 1);
    }
    return deepest;
}

namespace {

std::string set_string(TypeSet s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](TypeIndex t) {
        if (!first) out += ",";
        out += std::to_string(t);
        first = false;
    });
    return out + "}";
}

// Parent links, or violations if the arena is not a tree rooted at node 0.
std::vector<WellformednessViolation> check_structure(const MechanismTree& tree) {
    std::vector<WellformednessViolation> out;
    if (tree.nodes.empty()) {
        out.push_back({0, "structure", "mechanism has no vertices"});
        return out;
    }
    std::vector<int> parents(tree.nodes.size(), 0);
    for (std::size_t v = 0; v < tree.nodes.size(); ++v)
        for (const auto& e : tree.nodes[v].edges) {
            if (e.child >= tree.nodes.size() || e.child == MechanismTree::root) {
                out.push_back({v, "structure", "edge to invalid child " + std::to_string(e.child)});
                continue;
            }
            if (++parents[e.child] > 1) out.push_back({e.child, "structure", "vertex has more than one parent"});
        }
    if (!out.empty()) return out;
    std::vector<bool> seen(tree.nodes.size(), false);
    std::vector<std::size_t> stack{MechanismTree::root};
    seen[MechanismTree::root] = true;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (const auto& e : tree.nodes[v].edges)
            if (!seen[e.child]) {
                seen[e.child] = true;
                stack.push_back(e.child);
            }
    }
    for (std::size_t v = 0; v < tree.nodes.size(); ++v)
        if (!seen[v]) out.push_back({v, "structure", "vertex unreachable from the root"});
    return out;
}

} // namespace

std::vector<WellformednessViolation> verify_wellformed(const ChoiceInstance& instance, const MechanismTree& tree) {
    auto out = check_structure(tree);
    if (!out.empty()) return out;

    const auto n = instance.num_agents();
    for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
        const auto& sets = tree.nodes[v].sets;
        if (sets.size() != n) {
            out.push_back({v, "vertex", "expected " + std::to_string(n) + " type sets"});
            continue;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!sets[i].subset_of(TypeSet::full(instance.type_size(i))))
                out.push_back({v, "vertex", "type set of agent " + std::to_string(i) + " out of range"});
    }
    if (!out.empty()) return out;

    if (tree.nodes[MechanismTree::root].sets != instance.root())
        out.push_back({MechanismTree::root, "root coverage", "root must carry every type of every agent"});

    std::vector<unsigned> cover(instance.num_profiles(), 0);
    for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
        const auto& node = tree.nodes[v];
        if (node.is_leaf()) {
            if (!node.outcome) {
                out.push_back({v, "measurability", "leaf carries no outcome"});
            }
            const auto profiles = vertex_profiles(instance, node.sets);
            for (auto p : profiles) {
                ++cover[p];
                if (node.outcome && instance.choice(p) != *node.outcome) {
                    out.push_back({v, "measurability",
                                   "profile " + std::to_string(p) + " maps to outcome " +
                                       std::to_string(instance.choice(p)) + ", leaf says " +
                                       std::to_string(*node.outcome)});
                    break;
                }
            }
            continue;
        }

        if (!node.player || *node.player >= n) {
            out.push_back({v, "partition", "internal vertex without a valid acting player"});
            continue;
        }
        const auto i = *node.player;
        TypeSet covered;
        for (const auto& e : node.edges) {
            if (e.cell.empty()) out.push_back({v, "partition", "empty out-edge cell"});
            if (!(covered & e.cell).empty())
                out.push_back({v, "partition", "out-edge cells overlap at " + set_string(covered & e.cell)});
            covered = covered | e.cell;
        }
        if (covered != node.sets[i])
            out.push_back({v, "partition", "out-edge cells " + set_string(covered) + " do not cover " +
                                               set_string(node.sets[i])});

        for (const auto& e : node.edges) {
            const auto& child = tree.nodes[e.child].sets;
            bool ok = child[i] == e.cell;
            for (std::size_t j = 0; j < n && ok; ++j)
                if (j != i && child[j] != node.sets[j]) ok = false;
            if (!ok) out.push_back({e.child, "bookkeeping", "child sets inconsistent with the edge taken"});
        }
    }

    for (std::size_t p = 0; p < cover.size(); ++p)
        if (cover[p] != 1) {
            out.push_back({MechanismTree::root, "finite plays",
                           "profile " + std::to_string(p) + " lies in " + std::to_string(cover[p]) + " leaves"});
            break;
        }
    return out;
}

OspCheck verify_osp(const ChoiceInstance& instance, const MechanismTree& tree) {
    if (!verify_wellformed(instance, tree).empty())
        throw std::invalid_argument("verify_osp requires a well-formed mechanism");

    for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
        const auto& node = tree.nodes[v];
        if (node.is_leaf()) continue;
        const auto i = *node.player;
        const auto stride = instance.stride(i);
        const auto opponents = opponent_offsets(instance, node.sets, i);

        std::vector<std::size_t> cell_of(instance.type_size(i), 0);
        for (std::size_t k = 0; k < node.edges.size(); ++k) node.edges[k].cell.for_each([&](TypeIndex t) { cell_of[t] = k; });

        // Worst truthful payoff of each type against best payoff from each diverging report.
        bool failed = false;
        OspViolation found;
        node.sets[i].for_each([&](TypeIndex a) {
            if (failed) return;
            std::size_t worst_at = opponents[0];
            for (auto o : opponents)
                if (instance.payoff_at(i, a, stride * a + o) < instance.payoff_at(i, a, stride * a + worst_at)) worst_at = o;
            const auto worst = instance.payoff_at(i, a, stride * a + worst_at);
            node.sets[i].for_each([&](TypeIndex b) {
                if (failed || cell_of[a] == cell_of[b]) return;
                for (auto o : opponents) {
                    const auto deviant = instance.payoff_at(i, a, stride * b + o);
                    if (worst < deviant) {
                        failed = true;
                        found = OspViolation{v,
                                             i,
                                             a,
                                             b,
                                             index_profile(stride * a + worst_at, instance.type_sizes()),
                                             index_profile(stride * b + o, instance.type_sizes()),
                                             worst,
                                             deviant};
                        return;
                    }
                }
            });
        });
        if (failed) return OspCheck{false, std::move(found)};
    }
    return OspCheck{};
}

namespace {

nlohmann::json node_to_json(const MechanismTree& tree, std::size_t v) {
    const auto& node = tree.nodes[v];
    nlohmann::json doc;
    if (node.player) doc["player"] = *node.player;
    doc["sets"] = vertex_to_json(node.sets);
    if (node.is_leaf()) {
        if (node.outcome) doc["outcome"] = *node.outcome;
        return doc;
    }
    auto edges = nlohmann::json::array();
    for (const auto& e : node.edges) edges.push_back({{"cell", e.cell.members()}, {"child", node_to_json(tree, e.child)}});
    doc["edges"] = std::move(edges);
    return doc;
}

TypeSet parse_set(const nlohmann::json& doc, std::size_t size, const std::string& field) {
    if (!doc.is_array()) throw InputError(field, "expected an array of type indices");
    TypeSet s;
    for (const auto& t : doc) {
        if (!t.is_number_unsigned() || t.get<std::uint64_t>() >= size) throw InputError(field, "type index out of range");
        s.insert(static_cast<TypeIndex>(t.get<std::uint64_t>()));
    }
    return s;
}

std::size_t parse_node(const nlohmann::json& doc, const ChoiceInstance& instance, MechanismTree& tree,
                       const std::string& path) {
    if (!doc.is_object()) throw InputError(path, "expected a vertex object");
    for (const auto& [key, _] : doc.items())
        if (key != "player" && key != "sets" && key != "edges" && key != "outcome") throw InputError(path + "." + key, "unknown field");
    if (!doc.contains("sets") || !doc["sets"].is_array() || doc["sets"].size() != instance.num_agents())
        throw InputError(path + ".sets", "expected one type list per agent");

    const auto v = tree.nodes.size();
    tree.nodes.emplace_back();
    ProductVertex sets;
    for (std::size_t i = 0; i < instance.num_agents(); ++i)
        sets.push_back(parse_set(doc["sets"][i], instance.type_size(i), path + ".sets[" + std::to_string(i) + "]"));
    tree.nodes[v].sets = std::move(sets);

    if (doc.contains("player")) {
        if (!doc["player"].is_number_unsigned()) throw InputError(path + ".player", "expected an agent index");
        tree.nodes[v].player = doc["player"].get<std::size_t>();
    }
    if (doc.contains("outcome")) {
        if (!doc["outcome"].is_number_unsigned() || doc["outcome"].get<std::uint64_t>() >= instance.num_outcomes())
            throw InputError(path + ".outcome", "outcome index out of range");
        tree.nodes[v].outcome = doc["outcome"].get<Outcome>();
    }
    if (doc.contains("edges")) {
        if (!doc["edges"].is_array()) throw InputError(path + ".edges", "expected an array");
        const auto player = tree.nodes[v].player.value_or(0);
        const auto size = player < instance.num_agents() ? instance.type_size(player) : kMaxTypesPerAgent;
        for (std::size_t k = 0; k < doc["edges"].size(); ++k) {
            const auto& e = doc["edges"][k];
            const auto ep = path + ".edges[" + std::to_string(k) + "]";
            if (!e.is_object() || !e.contains("cell") || !e.contains("child") || e.size() != 2)
                throw InputError(ep, "expected {\"cell\", \"child\"}");
            auto cell = parse_set(e["cell"], size, ep + ".cell");
            auto child = parse_node(e["child"], instance, tree, ep + ".child");
            tree.nodes[v].edges.push_back({cell, child});
        }
    }
    return v;
}

} // namespace

nlohmann::json mechanism_to_json(const MechanismTree& tree) {
    if (tree.nodes.empty()) return nlohmann::json::object();
    return node_to_json(tree, MechanismTree::root);
}

MechanismTree mechanism_from_json(const nlohmann::json& doc, const ChoiceInstance& instance) {
    MechanismTree tree;
    parse_node(doc, instance, tree, "mechanism");
    return tree;
}

nlohmann::json violations_to_json(const std::vector<WellformednessViolation>& violations) {
    auto doc = nlohmann::json::array();
    for (const auto& v : violations) doc.push_back({{"vertex", v.node}, {"rule", v.rule}, {"detail", v.detail}});
    return doc;
}

nlohmann::json osp_check_to_json(const OspCheck& check) {
    nlohmann::json doc{{"osp", check.osp}};
    if (check.violation) {
        const auto& v = *check.violation;
        doc["violation"] = {{"vertex", v.node},
                            {"agent", v.agent},
                            {"type", v.type},
                            {"deviation", v.deviation},
                            {"truthful_profile", v.truthful_profile},
                            {"deviant_profile", v.deviant_profile},
                            {"truthful_payoff", v.truthful},
                            {"deviant_payoff", v.deviant}};
    }
    return doc;
}

} // namespace osp
