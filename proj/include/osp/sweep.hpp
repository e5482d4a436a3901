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

#ifndef OSP_SWEEP_HPP
#define OSP_SWEEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "osp/instance.hpp"

namespace osp::sweep {

struct SweepConfig {
    std::size_t max_agents = 3;
    std::size_t max_types = 3;
    std::size_t max_outcomes = 3;
    std::size_t random_count = 1000;
    std::uint64_t seed = 1;
    /// Utility draws crossed with each of the 16 two-agent binary choice tables.
    std::size_t utility_seeds = 20;
    Payoff payoff_max = 3;
    bool parallel = false;
};

struct SweepInstance {
    std::string name;
    ChoiceInstance instance;
};

/// Every 2x2 two-outcome choice table crossed with `utility_seeds` payoff
/// draws (when the bounds allow two agents, types and outcomes), followed
/// by `random_count` instances of random shape within the bounds.
std::vector<SweepInstance> corpus(const SweepConfig& config);

struct CheckTally {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t failed = 0;
    std::vector<std::string> failures; // instance names, first few only

    bool passed() const { return failed == 0; }
};

struct SweepReport {
    std::uint64_t instances = 0;
    std::uint64_t implementable = 0;
    std::vector<CheckTally> checks;

    bool passed() const;
    const CheckTally& check(const std::string& name) const;
};

/// Check names, in report order.
inline constexpr const char* kOracleEquivalence = "oracle equivalence";
inline constexpr const char* kModesAgree = "reachability and childless modes agree";
inline constexpr const char* kConstructionSound = "constructed mechanisms verify";
inline constexpr const char* kCertificatesVerify = "failing vertices certify";
inline constexpr const char* kPolicyIndependent = "policy independence";
inline constexpr const char* kImpliesSp = "implementable implies strategy-proof";

SweepReport run(const std::vector<SweepInstance>& instances, bool parallel = false);
nlohmann::json report_to_json(const SweepReport& report);

} // namespace osp::sweep

#endif
