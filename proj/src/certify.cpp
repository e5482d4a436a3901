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

#include "osp/certify.hpp"

#include <deque>
#include <numeric>

#include "osp/odag.hpp"

namespace osp {

NonOspCertificate extract_certificate(const ChoiceInstance& instance, const ProductVertex& failing_vertex) {
    if (!instance.valid_vertex(failing_vertex)) throw CertificatePrecondition("invalid vertex");
    if (is_singleton(failing_vertex)) throw CertificatePrecondition("vertex is a single profile");

    NonOspCertificate cert;
    cert.vertex = failing_vertex;
    cert.witnesses.resize(instance.num_agents());
    for (std::size_t i = 0; i < instance.num_agents(); ++i) {
        if (failing_vertex[i].size() < 2) continue;
        const auto table = divergence_table(instance, failing_vertex, i);
        const auto k = table.size();
        const auto stride = instance.stride(i);
        auto profile = [&](std::size_t pos, std::size_t opponent) {
            return index_profile(stride * table.types[pos] + table.opponents[opponent], instance.type_sizes());
        };

        // Breadth-first spanning tree from the smallest type.
        std::vector<bool> seen(k, false);
        std::deque<std::size_t> queue{0};
        seen[0] = true;
        while (!queue.empty()) {
            const auto a = queue.front();
            queue.pop_front();
            for (std::size_t b = 0; b < k; ++b) {
                if (seen[b] || !table.adjacent(a, b)) continue;
                seen[b] = true;
                queue.push_back(b);
                if (table.gains(a, b))
                    cert.witnesses[i].push_back({profile(a, table.worst_at[a]), profile(b, table.best_at(a, b))});
                else
                    cert.witnesses[i].push_back({profile(a, table.best_at(b, a)), profile(b, table.worst_at[b])});
            }
        }
        if (cert.witnesses[i].size() + 1 != k)
            throw CertificatePrecondition("agent " + std::to_string(i) +
                                          " can be asked an obvious question at this vertex");
    }
    return cert;
}

namespace {

class Forest {
public:
    explicit Forest(std::size_t size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t u) {
        while (u != parent_[u]) u = parent_[u] = parent_[parent_[u]];
        return u;
    }
    bool unite(std::size_t u, std::size_t v) {
        u = find(u);
        v = find(v);
        if (u == v) return false;
        parent_[v] = u;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

CertificateCheck reject(std::string reason) { return {false, std::move(reason)}; }

} // namespace

CertificateCheck verify_certificate(const ChoiceInstance& instance, const NonOspCertificate& certificate) {
    const auto n = instance.num_agents();
    const auto& vertex = certificate.vertex;
    if (!instance.valid_vertex(vertex)) return reject("vertex is not a product of nonempty type sets");
    if (is_singleton(vertex)) return reject("vertex is a single profile");
    if (certificate.witnesses.size() != n) return reject("expected one witness list per agent");

    for (std::size_t i = 0; i < n; ++i) {
        const auto& pairs = certificate.witnesses[i];
        const auto agent = "agent " + std::to_string(i) + ": ";
        if (pairs.size() + 1 != vertex[i].size())
            return reject(agent + "expected " + std::to_string(vertex[i].size() - 1) + " witness pairs, got " +
                          std::to_string(pairs.size()));
        Forest forest(instance.type_size(i));
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const auto& [t, tp] = pairs[k];
            const auto which = agent + "pair " + std::to_string(k) + ": ";
            if (!vertex_contains(vertex, t) || !vertex_contains(vertex, tp))
                return reject(which + "profile outside the vertex");
            if (t[i] == tp[i]) return reject(which + "self-loop");
            if (!forest.unite(t[i], tp[i])) return reject(which + "closes a cycle");
            const auto x = instance.choice(t);
            const auto xp = instance.choice(tp);
            const bool first = instance.utility(i, t[i], x) < instance.utility(i, t[i], xp);
            const bool second = instance.utility(i, tp[i], xp) < instance.utility(i, tp[i], x);
            if (!first && !second) return reject(which + "neither strict inequality holds");
        }
        // |T'_i| - 1 acyclic edges over T'_i form a spanning tree.
    }
    return {true, {}};
}

nlohmann::json certificate_to_json(const NonOspCertificate& certificate) {
    auto witnesses = nlohmann::json::array();
    for (const auto& pairs : certificate.witnesses) {
        auto list = nlohmann::json::array();
        for (const auto& w : pairs) list.push_back({{"t", w.t}, {"tprime", w.tprime}});
        witnesses.push_back(std::move(list));
    }
    return {{"vertex", vertex_to_json(certificate.vertex)}, {"witnesses", std::move(witnesses)}};
}

namespace {

TypeProfile parse_profile(const nlohmann::json& doc, std::size_t n, const std::string& field) {
    if (!doc.is_array() || doc.size() != n) throw InputError(field, "expected a profile with one type per agent");
    TypeProfile t;
    for (const auto& x : doc) {
        if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= kMaxTypesPerAgent)
            throw InputError(field, "expected type indices");
        t.push_back(x.get<TypeIndex>());
    }
    return t;
}

} // namespace

NonOspCertificate certificate_from_json(const nlohmann::json& doc, const ChoiceInstance& instance) {
    const auto n = instance.num_agents();
    if (!doc.is_object() || !doc.contains("vertex") || !doc.contains("witnesses") || doc.size() != 2)
        throw InputError("certificate", "expected {\"vertex\", \"witnesses\"}");
    NonOspCertificate cert;
    const auto& vdoc = doc["vertex"];
    if (!vdoc.is_array() || vdoc.size() != n) throw InputError("vertex", "expected one type list per agent");
    for (std::size_t i = 0; i < n; ++i) {
        TypeSet s;
        for (auto t : parse_profile(vdoc[i], vdoc[i].is_array() ? vdoc[i].size() : 0, "vertex[" + std::to_string(i) + "]"))
            s.insert(t);
        cert.vertex.push_back(s);
    }
    const auto& wdoc = doc["witnesses"];
    if (!wdoc.is_array() || wdoc.size() != n) throw InputError("witnesses", "expected one witness list per agent");
    cert.witnesses.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto fi = "witnesses[" + std::to_string(i) + "]";
        if (!wdoc[i].is_array()) throw InputError(fi, "expected an array");
        for (std::size_t k = 0; k < wdoc[i].size(); ++k) {
            const auto& w = wdoc[i][k];
            const auto fk = fi + "[" + std::to_string(k) + "]";
            if (!w.is_object() || !w.contains("t") || !w.contains("tprime") || w.size() != 2)
                throw InputError(fk, "expected {\"t\", \"tprime\"}");
            cert.witnesses[i].push_back({parse_profile(w["t"], n, fk + ".t"), parse_profile(w["tprime"], n, fk + ".tprime")});
        }
    }
    return cert;
}

} // namespace osp
