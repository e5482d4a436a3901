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

#ifndef OSP_GENERATORS_HPP
#define OSP_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "osp/formula.hpp"
#include "osp/instance.hpp"

namespace osp::gen {

/// Largest formula variable count accepted by sat_instance (2^(v+1) profiles).
inline constexpr std::size_t kMaxSatVariables = 20;

/**
 * Instance whose strategy-proofness encodes unsatisfiability of `formula`.
 *
 * Agents 0..v-1 carry the variable assignment (binary types, utility
 * identically 0). The last agent is special: reporting type 0 yields outcome
 * 0 and reporting type 1 yields formula(assignment); its type 0 values
 * outcome x at x and its type 1 values everything at 0.
 */
ChoiceInstance sat_instance(const BooleanFormula& formula);

/// Agent 0's report alone picks the outcome outcome_map[t0]; agent 0's type t
/// gets 1 at outcome_map[t] and 0 elsewhere, every other agent gets 0.
/// An empty map means the identity map.
ChoiceInstance dictatorship(const std::vector<std::size_t>& type_sizes, std::vector<Outcome> outcome_map = {});

/// Every profile maps to outcome 0 of two; payoffs distinguish the outcomes.
ChoiceInstance constant_rule(const std::vector<std::size_t>& type_sizes);

struct RandomSpec {
    std::uint64_t seed = 1;
    std::vector<std::size_t> type_sizes{2, 2};
    std::size_t num_outcomes = 2;
    Payoff payoff_min = 0;
    Payoff payoff_max = 3;
};

/**
 * Deterministic in the spec. Draws come from std::mt19937_64 seeded with
 * `seed` (whose output sequence is fixed by the standard), reduced as
 * `lo + draw % (hi - lo + 1)`: first every choice entry in profile order,
 * then every utility entry in (agent, type, outcome) order.
 */
ChoiceInstance random_instance(const RandomSpec& spec);

/// Uniform value in [lo, hi] from one draw, by the same reduction.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

} // namespace osp::gen

#endif
