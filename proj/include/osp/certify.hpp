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

#ifndef OSP_CERTIFY_HPP
#define OSP_CERTIFY_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "osp/instance.hpp"

namespace osp {

/// Two full profiles inside the certified vertex. The pair witnesses that
/// agent i's types t[i] and tprime[i] cannot be separated there.
struct WitnessPair {
    TypeProfile t;
    TypeProfile tprime;

    bool operator==(const WitnessPair&) const = default;
};

/**
 * Proof that no obviously strategy-proof mechanism exists: a non-singleton
 * vertex together with, for every agent, witness pairs whose type pairs
 * form a spanning tree of that agent's remaining types. Each pair satisfies
 *   u_i(t_i, c(t)) < u_i(t_i, c(t'))  or  u_i(t'_i, c(t')) < u_i(t'_i, c(t)),
 * so every agent's divergence graph is connected and the vertex has no child.
 */
struct NonOspCertificate {
    ProductVertex vertex;
    std::vector<std::vector<WitnessPair>> witnesses; // per agent
};

class CertificatePrecondition : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Throws CertificatePrecondition if the vertex is a singleton or some
/// agent's divergence graph is disconnected (the vertex has a child).
NonOspCertificate extract_certificate(const ChoiceInstance& instance, const ProductVertex& failing_vertex);

struct CertificateCheck {
    bool valid = false;
    std::string reason; // empty when valid
};

/// Checks the certificate against the instance using only its |T'_i| - 1
/// pairs per agent; never evaluates the quantified edge condition.
CertificateCheck verify_certificate(const ChoiceInstance& instance, const NonOspCertificate& certificate);

nlohmann::json certificate_to_json(const NonOspCertificate& certificate);
/// Throws InputError when the document does not have the certificate shape.
NonOspCertificate certificate_from_json(const nlohmann::json& doc, const ChoiceInstance& instance);

} // namespace osp

#endif
