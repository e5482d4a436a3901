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

#include "doctest.h"

#include <random>

#include "osp/decider.hpp"
#include "osp/formula.hpp"
#include "osp/generators.hpp"
#include "osp/oracle.hpp"
#include "support/brute_force.hpp"

using namespace osp;

namespace {

ChoiceInstance small_random(std::mt19937_64& rng) {
    gen::RandomSpec spec{rng(), {}, 1 + rng() % 3, 0, 1 + static_cast<Payoff>(rng() % 3)};
    for (auto n = 1 + rng() % 3; n > 0; --n) spec.type_sizes.push_back(1 + rng() % 3);
    return gen::random_instance(spec);
}

} // namespace

TEST_CASE("constant rule on 2x2") {
    auto instance = gen::constant_rule({2, 2});
    auto result = decide(instance);
    REQUIRE(result.implementable);
    REQUIRE(result.mechanism);
    const auto& tree = *result.mechanism;
    CHECK(tree.nodes[0].player == 0u);
    REQUIRE(tree.nodes[0].edges.size() == 2);
    CHECK(tree.nodes[0].edges[0].cell == TypeSet::of({0}));
    CHECK(tree.nodes[0].edges[1].cell == TypeSet::of({1}));
    for (auto e : tree.nodes[0].edges) CHECK(tree.nodes[e.child].player == 1u);
    CHECK(tree.num_leaves() == 4);
    for (const auto& node : tree.nodes)
        if (node.is_leaf()) CHECK(node.outcome == 0u);
    CHECK(result.counters.recursion_depth == 3);
    CHECK(result.counters.vertices_visited == 7);
    CHECK(result.counters.level_cost == std::vector<std::uint64_t>{16, 12, 8});
    CHECK_FALSE(result.failing_vertex);
}

TEST_CASE("stop when constant collapses the constant rule to one leaf") {
    auto result = decide(gen::constant_rule({3, 2}), {SelectionPolicy::LowestIndex, true, false});
    REQUIRE(result.mechanism);
    CHECK(result.mechanism->nodes.size() == 1);
    CHECK(result.mechanism->nodes[0].outcome == 0u);
    CHECK(result.counters.recursion_depth == 1);
}

TEST_CASE("sat reduction of x0 fails at the expected vertex") {
    auto instance = gen::sat_instance(BooleanFormula::parse("x0"));
    auto result = decide(instance);
    CHECK_FALSE(result.implementable);
    CHECK_FALSE(result.mechanism);
    REQUIRE(result.failing_vertex);
    CHECK(*result.failing_vertex == ProductVertex{TypeSet::of({1}), TypeSet::of({0, 1})});
}

TEST_CASE("unsatisfiable formulas give implementable rules") {
    for (auto text : {"false", "(and x0 (not x0))", "(and x1 (not x1) x0)"}) {
        auto instance = gen::sat_instance(BooleanFormula::parse(text, 2));
        CHECK(decide_only(instance));
    }
}

TEST_CASE("dictatorship is implementable with the dictator asked first") {
    auto instance = gen::dictatorship({3, 2});
    auto result = decide(instance);
    REQUIRE(result.mechanism);
    CHECK(result.mechanism->nodes[0].player == 0u);
    CHECK(result.mechanism->nodes[0].edges.size() == 3);
    CHECK(verify_wellformed(instance, *result.mechanism).empty());
    CHECK(verify_osp(instance, *result.mechanism).osp);
}

TEST_CASE("round robin cycles the asked agent") {
    auto instance = gen::constant_rule({2, 2, 2});
    auto result = decide(instance, {SelectionPolicy::RoundRobin, false, false});
    REQUIRE(result.mechanism);
    const auto& tree = *result.mechanism;
    // Along the first play the players are 0, 1, 2.
    std::vector<std::size_t> players;
    for (std::size_t node = 0; !tree.nodes[node].is_leaf(); node = tree.nodes[node].edges[0].child)
        players.push_back(*tree.nodes[node].player);
    CHECK(players == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("policy names round trip") {
    for (auto p : {SelectionPolicy::LowestIndex, SelectionPolicy::RoundRobin})
        CHECK(policy_from_string(to_string(p)) == p);
    CHECK_THROWS_AS(policy_from_string("random"), std::invalid_argument);
}

TEST_CASE("decider agrees with the explicit reachability oracle") {
    std::mt19937_64 rng(101);
    for (int k = 0; k < 300; ++k) {
        auto instance = small_random(rng);
        auto expected = oracle::decide_explicit(instance, oracle::Mode::Reachability).implementable;
        for (auto policy : {SelectionPolicy::LowestIndex, SelectionPolicy::RoundRobin}) {
            auto result = decide(instance, {policy, false, false});
            CHECK(result.implementable == expected);
            CHECK(result.mechanism.has_value() == expected);
            CHECK(result.failing_vertex.has_value() == !expected);
        }
    }
}

TEST_CASE("constructed mechanisms are well formed and pass the literal OSP test") {
    std::mt19937_64 rng(102);
    int built = 0;
    for (int k = 0; k < 300; ++k) {
        auto instance = small_random(rng);
        for (bool stop : {false, true}) {
            auto result = decide(instance, {SelectionPolicy::RoundRobin, stop, false});
            if (!result.mechanism) continue;
            ++built;
            CHECK(verify_wellformed(instance, *result.mechanism).empty());
            CHECK(verify_osp(instance, *result.mechanism).osp);
            CHECK(testing::tree_is_osp_literal(instance, *result.mechanism));
        }
    }
    CHECK(built > 50);
}

TEST_CASE("counter invariants") {
    std::mt19937_64 rng(103);
    for (int k = 0; k < 200; ++k) {
        auto instance = small_random(rng);
        auto result = decide_counted(instance);
        const auto& c = result.counters;
        std::size_t total_types = 0;
        for (auto s : instance.type_sizes()) total_types += s;
        CHECK(c.recursion_depth >= 1);
        CHECK(c.recursion_depth <= total_types);
        CHECK(c.level_cost.size() == c.recursion_depth);
        for (std::size_t d = 1; d < c.level_cost.size(); ++d) CHECK(c.level_cost[d] <= c.level_cost[d - 1]);
        CHECK(c.level_cost.front() == vertex_table_size(instance.root()));
    }
}

TEST_CASE("parallel decide produces the identical result") {
    std::mt19937_64 rng(104);
    for (int k = 0; k < 100; ++k) {
        auto instance = small_random(rng);
        auto a = decide(instance, {SelectionPolicy::LowestIndex, false, false});
        auto b = decide(instance, {SelectionPolicy::LowestIndex, false, true});
        CHECK(decision_to_json(a) == decision_to_json(b));
    }
}

TEST_CASE("decision json") {
    auto doc = decision_to_json(decide(gen::sat_instance(BooleanFormula::parse("x0"))));
    CHECK(doc["implementable"] == false);
    CHECK(doc["policy"] == "lowest");
    CHECK(doc["failing_vertex"] == nlohmann::json::parse("[[1],[0,1]]"));
    CHECK_FALSE(doc.contains("mechanism"));
}

TEST_CASE("one agent: implementable exactly when strategy-proof") {
    std::size_t count = 0;
    for (std::size_t types = 1; types <= 3; ++types)
        for (std::size_t outcomes = 1; outcomes <= 3; ++outcomes)
            testing::for_each_single_agent(types, outcomes, [&](const ChoiceInstance& instance) {
                ++count;
                if (decide_only(instance) != testing::strategy_proof(instance))
                    FAIL("mismatch on " << instance_to_json(instance).dump());
            });
    CHECK(count > 500000);
}

TEST_CASE("two-agent dictatorship has depth two") {
    auto result = decide(gen::dictatorship({2, 2}));
    REQUIRE(result.mechanism);
    CHECK(result.mechanism->depth() == 2);
    CHECK(result.mechanism->nodes[0].player == 0u);
}
