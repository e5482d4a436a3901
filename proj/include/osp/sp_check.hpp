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

#ifndef OSP_SP_CHECK_HPP
#define OSP_SP_CHECK_HPP

#include <cstdint>
#include <optional>

#include "osp/instance.hpp"

namespace osp {

/// A profitable misreport: truthful payoff < deviant payoff at fixed opponents.
struct SpViolation {
    std::size_t agent = 0;
    TypeIndex type = 0;
    TypeIndex deviation = 0;
    TypeProfile opponents; // types of every agent except `agent`, in agent order
    Payoff truthful = 0;
    Payoff deviant = 0;
};

struct SpResult {
    bool sp = true;
    std::optional<SpViolation> violation;
    std::uint64_t comparisons = 0;
};

/// Full scan over (agent, type, deviation, opponents) in that order; the
/// first violation found is reported. Always performs |c| comparisons.
SpResult check_sp(const ChoiceInstance& instance);

nlohmann::json sp_result_to_json(const SpResult& result);

} // namespace osp

#endif
