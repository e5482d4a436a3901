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

#include "osp/generators.hpp"
#include "osp/sp_check.hpp"
#include "support/brute_force.hpp"

using namespace osp;

TEST_CASE("single agent rewarded for lying") {
    // c(t) = 1 - t, u(t, x) = 1 iff x = t.
    ChoiceInstance instance({2}, 2, {1, 0}, {{{1, 0}, {0, 1}}});
    auto result = check_sp(instance);
    CHECK_FALSE(result.sp);
    REQUIRE(result.violation);
    CHECK(result.violation->agent == 0);
    CHECK(result.violation->type == 0);
    CHECK(result.violation->deviation == 1);
    CHECK(result.violation->opponents.empty());
    CHECK(result.violation->truthful == 0);
    CHECK(result.violation->deviant == 1);
}

TEST_CASE("constant rule and dictatorship are strategy-proof") {
    CHECK(check_sp(gen::constant_rule({2, 3})).sp);
    auto dict2 = gen::dictatorship({2, 2});
    CHECK(testing::strategy_proof(dict2));
    auto result = check_sp(dict2);
    CHECK(result.sp);
    CHECK_FALSE(result.violation);
}

TEST_CASE("first violation in scan order, with the stored inequality") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        auto instance = gen::random_instance({seed, {2, 3}, 3, 0, 3});
        auto result = check_sp(instance);
        CHECK(result.sp == testing::strategy_proof(instance));
        CHECK(result.comparisons == stats(instance).table_size);
        if (!result.violation) continue;
        const auto& v = *result.violation;
        CHECK(v.truthful < v.deviant);
        TypeProfile truth = v.opponents, lie = v.opponents;
        truth.insert(truth.begin() + static_cast<std::ptrdiff_t>(v.agent), v.type);
        lie.insert(lie.begin() + static_cast<std::ptrdiff_t>(v.agent), v.deviation);
        CHECK(instance.utility(v.agent, v.type, instance.choice(truth)) == v.truthful);
        CHECK(instance.utility(v.agent, v.type, instance.choice(lie)) == v.deviant);
        // Nothing earlier in (agent, type, deviation, opponents) order violates.
        for (std::size_t i = 0; i <= v.agent; ++i)
            for (TypeIndex t = 0; t < instance.type_size(i); ++t)
                for (TypeIndex d = 0; d < instance.type_size(i); ++d) {
                    if (i == v.agent && (t > v.type || (t == v.type && d >= v.deviation))) continue;
                    for (std::size_t p = 0; p < instance.num_profiles(); ++p) {
                        auto prof = index_profile(p, instance.type_sizes());
                        if (prof[i] != t) continue;
                        auto dev = prof;
                        dev[i] = d;
                        CHECK(instance.utility(i, t, instance.choice(prof)) >= instance.utility(i, t, instance.choice(dev)));
                    }
                }
    }
}
