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

#include "osp/sp_check.hpp"

namespace osp {

SpResult check_sp(const ChoiceInstance& instance) {
    SpResult result;
    const auto root = instance.root();
    for (std::size_t i = 0; i < instance.num_agents(); ++i) {
        const auto opponents = opponent_offsets(instance, root, i);
        const auto stride = instance.stride(i);
        const auto size = static_cast<TypeIndex>(instance.type_size(i));
        for (TypeIndex t = 0; t < size; ++t) {
            for (TypeIndex dev = 0; dev < size; ++dev) {
                for (auto offset : opponents) {
                    const auto truthful = instance.payoff_at(i, t, stride * t + offset);
                    const auto deviant = instance.payoff_at(i, t, stride * dev + offset);
                    ++result.comparisons;
                    if (truthful < deviant && result.sp) {
                        result.sp = false;
                        auto profile = index_profile(offset, instance.type_sizes());
                        profile.erase(profile.begin() + static_cast<std::ptrdiff_t>(i));
                        result.violation = SpViolation{i, t, dev, std::move(profile), truthful, deviant};
                    }
                }
            }
        }
    }
    return result;
}

nlohmann::json sp_result_to_json(const SpResult& result) {
    nlohmann::json doc;
    doc["sp"] = result.sp;
    doc["comparisons"] = result.comparisons;
    if (result.violation) {
        const auto& v = *result.violation;
        doc["violation"] = {{"agent", v.agent},
                            {"type", v.type},
                            {"deviation", v.deviation},
                            {"opponents", v.opponents},
                            {"truthful_payoff", v.truthful},
                            {"deviant_payoff", v.deviant}};
    }
    return doc;
}

} // namespace osp
