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

#include "osp/instance.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace osp {

namespace {

constexpr std::uint64_t kMaxProfiles = std::uint64_t{1} << 32;

std::string at(const std::string& field, std::size_t index) {
    return field + "[" + std::to_string(index) + "]";
}

std::uint64_t as_unsigned(const nlohmann::json& v, const std::string& field) {
    if (!v.is_number_integer()) throw InputError(field, "expected an integer");
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    auto s = v.get<std::int64_t>();
    if (s < 0) throw InputError(field, "expected a non-negative integer, got " + std::to_string(s));
    return static_cast<std::uint64_t>(s);
}

Payoff as_payoff(const nlohmann::json& v, const std::string& field) {
    if (!v.is_number_integer()) throw InputError(field, "expected a 64-bit signed integer");
    if (v.is_number_unsigned() &&
        v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<Payoff>::max()))
        throw InputError(field, "payoff out of 64-bit signed range");
    return v.get<Payoff>();
}

const nlohmann::json& require_array(const nlohmann::json& v, const std::string& field) {
    if (!v.is_array()) throw InputError(field, "expected an array");
    return v;
}

} // namespace

ChoiceInstance::ChoiceInstance(std::vector<std::size_t> type_sizes, std::size_t num_outcomes,
                               std::vector<Outcome> choice,
                               std::vector<std::vector<std::vector<Payoff>>> utilities,
                               nlohmann::json labels)
    : type_sizes_(std::move(type_sizes)),
      num_outcomes_(num_outcomes),
      choice_(std::move(choice)),
      labels_(std::move(labels)) {
    const std::size_t n = type_sizes_.size();
    if (n == 0) throw InputError("agents", "at least one agent is required");
    if (num_outcomes_ == 0) throw InputError("num_outcomes", "at least one outcome is required");
    if (num_outcomes_ > std::numeric_limits<Outcome>::max())
        throw InputError("num_outcomes", "too many outcomes");

    std::uint64_t profiles = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (type_sizes_[i] == 0) throw InputError(at("type_sizes", i), "every agent needs at least one type");
        if (type_sizes_[i] > kMaxTypesPerAgent)
            throw InputError(at("type_sizes", i),
                             "at most " + std::to_string(kMaxTypesPerAgent) + " types per agent are supported");
        profiles *= type_sizes_[i];
        if (profiles > kMaxProfiles) throw InputError("type_sizes", "profile table too large");
    }

    strides_.assign(n, 1);
    for (std::size_t i = n - 1; i > 0; --i) strides_[i - 1] = strides_[i] * type_sizes_[i];

    if (choice_.size() != profiles)
        throw InputError("choice", "expected " + std::to_string(profiles) + " entries, got " +
                                       std::to_string(choice_.size()));
    for (std::size_t p = 0; p < choice_.size(); ++p)
        if (choice_[p] >= num_outcomes_)
            throw InputError(at("choice", p), "outcome " + std::to_string(choice_[p]) +
                                                  " out of range (num_outcomes = " +
                                                  std::to_string(num_outcomes_) + ")");

    if (utilities.size() != n)
        throw InputError("utilities", "expected one table per agent (" + std::to_string(n) + "), got " +
                                          std::to_string(utilities.size()));
    agent_offset_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        agent_offset_[i] = payoffs_.size();
        const auto field = at("utilities", i);
        if (utilities[i].size() != type_sizes_[i])
            throw InputError(field, "expected " + std::to_string(type_sizes_[i]) + " type rows, got " +
                                        std::to_string(utilities[i].size()));
        for (std::size_t t = 0; t < type_sizes_[i]; ++t) {
            if (utilities[i][t].size() != num_outcomes_)
                throw InputError(at(field, t), "expected " + std::to_string(num_outcomes_) +
                                                   " payoffs, got " + std::to_string(utilities[i][t].size()));
            payoffs_.insert(payoffs_.end(), utilities[i][t].begin(), utilities[i][t].end());
        }
    }
}

Outcome ChoiceInstance::choice(const TypeProfile& profile) const {
    return choice_[profile_index(profile, type_sizes_)];
}

ProductVertex ChoiceInstance::root() const {
    ProductVertex v;
    v.reserve(num_agents());
    for (auto s : type_sizes_) v.push_back(TypeSet::full(s));
    return v;
}

bool ChoiceInstance::valid_vertex(const ProductVertex& v) const {
    if (v.size() != num_agents()) return false;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i].empty() || !v[i].subset_of(TypeSet::full(type_sizes_[i]))) return false;
    return true;
}

InstanceStats stats(const ChoiceInstance& instance) {
    InstanceStats s;
    s.product_types = 1;
    for (auto size : instance.type_sizes()) {
        s.sum_types += size;
        s.product_types *= size;
    }
    s.table_size = s.sum_types * s.product_types;
    return s;
}

std::size_t profile_index(const TypeProfile& profile, std::span<const std::size_t> type_sizes) {
    if (profile.size() != type_sizes.size())
        throw std::out_of_range("profile has " + std::to_string(profile.size()) + " coordinates, expected " +
                                std::to_string(type_sizes.size()));
    std::size_t index = 0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile[i] >= type_sizes[i])
            throw std::out_of_range("profile coordinate " + std::to_string(i) + " = " +
                                    std::to_string(profile[i]) + " out of range");
        index = index * type_sizes[i] + profile[i];
    }
    return index;
}

TypeProfile index_profile(std::size_t index, std::span<const std::size_t> type_sizes) {
    TypeProfile profile(type_sizes.size());
    for (std::size_t i = type_sizes.size(); i-- > 0;) {
        profile[i] = static_cast<TypeIndex>(index % type_sizes[i]);
        index /= type_sizes[i];
    }
    if (index != 0) throw std::out_of_range("profile index out of range");
    return profile;
}

std::uint64_t vertex_volume(const ProductVertex& v) {
    std::uint64_t volume = 1;
    for (auto s : v) volume *= s.size();
    return volume;
}

std::uint64_t vertex_table_size(const ProductVertex& v) {
    std::uint64_t sum = 0;
    for (auto s : v) sum += s.size();
    return sum * vertex_volume(v);
}

bool is_singleton(const ProductVertex& v) {
    for (auto s : v)
        if (s.size() != 1) return false;
    return true;
}

bool vertex_contains(const ProductVertex& v, const TypeProfile& t) {
    if (t.size() != v.size()) return false;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].contains(t[i])) return false;
    return true;
}

namespace {

// Expands the product of the per-agent sets into flat offsets, skipping `skip`.
std::vector<std::size_t> expand(const ChoiceInstance& instance, const ProductVertex& v, std::size_t skip) {
    std::vector<std::size_t> offsets{0};
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j == skip) continue;
        std::vector<std::size_t> next;
        next.reserve(offsets.size() * v[j].size());
        const auto stride = instance.stride(j);
        for (auto base : offsets) v[j].for_each([&](TypeIndex t) { next.push_back(base + stride * t); });
        offsets = std::move(next);
    }
    return offsets;
}

} // namespace

std::vector<std::size_t> opponent_offsets(const ChoiceInstance& instance, const ProductVertex& v,
                                          std::size_t agent) {
    return expand(instance, v, agent);
}

std::vector<std::size_t> vertex_profiles(const ChoiceInstance& instance, const ProductVertex& v) {
    return expand(instance, v, v.size());
}

ChoiceInstance instance_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw InputError("document", "expected a JSON object");
    static const char* const known[] = {"agents", "type_sizes", "num_outcomes", "choice", "utilities", "labels"};
    for (const auto& [key, _] : doc.items()) {
        bool ok = false;
        for (auto k : known) ok = ok || key == k;
        if (!ok) throw InputError(key, "unknown field");
    }
    for (auto k : {"agents", "type_sizes", "num_outcomes", "choice", "utilities"})
        if (!doc.contains(k)) throw InputError(k, "missing field");

    const auto agents = as_unsigned(doc["agents"], "agents");
    if (agents == 0) throw InputError("agents", "at least one agent is required");
    const auto& sizes_doc = require_array(doc["type_sizes"], "type_sizes");
    if (sizes_doc.size() != agents)
        throw InputError("type_sizes", "expected " + std::to_string(agents) + " entries, got " +
                                           std::to_string(sizes_doc.size()));
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < sizes_doc.size(); ++i) {
        auto s = as_unsigned(sizes_doc[i], at("type_sizes", i));
        if (s > kMaxTypesPerAgent) throw InputError(at("type_sizes", i), "too many types");
        sizes.push_back(static_cast<std::size_t>(s));
    }
    const auto outcomes = as_unsigned(doc["num_outcomes"], "num_outcomes");
    if (outcomes > std::numeric_limits<Outcome>::max()) throw InputError("num_outcomes", "too many outcomes");

    const auto& choice_doc = require_array(doc["choice"], "choice");
    std::vector<Outcome> choice;
    choice.reserve(choice_doc.size());
    for (std::size_t p = 0; p < choice_doc.size(); ++p) {
        auto x = as_unsigned(choice_doc[p], at("choice", p));
        if (x >= outcomes)
            throw InputError(at("choice", p), "outcome " + std::to_string(x) + " out of range (num_outcomes = " +
                                                  std::to_string(outcomes) + ")");
        choice.push_back(static_cast<Outcome>(x));
    }

    const auto& util_doc = require_array(doc["utilities"], "utilities");
    std::vector<std::vector<std::vector<Payoff>>> utilities(util_doc.size());
    for (std::size_t i = 0; i < util_doc.size(); ++i) {
        const auto fi = at("utilities", i);
        const auto& rows = require_array(util_doc[i], fi);
        for (std::size_t t = 0; t < rows.size(); ++t) {
            const auto ft = at(fi, t);
            const auto& row = require_array(rows[t], ft);
            std::vector<Payoff> payoffs;
            for (std::size_t x = 0; x < row.size(); ++x) payoffs.push_back(as_payoff(row[x], at(ft, x)));
            utilities[i].push_back(std::move(payoffs));
        }
    }

    nlohmann::json labels = doc.contains("labels") ? doc["labels"] : nlohmann::json(nullptr);
    return ChoiceInstance(std::move(sizes), static_cast<std::size_t>(outcomes), std::move(choice),
                          std::move(utilities), std::move(labels));
}

nlohmann::json instance_to_json(const ChoiceInstance& instance) {
    nlohmann::json doc;
    doc["agents"] = instance.num_agents();
    doc["type_sizes"] = std::vector<std::size_t>(instance.type_sizes().begin(), instance.type_sizes().end());
    doc["num_outcomes"] = instance.num_outcomes();
    doc["choice"] = std::vector<Outcome>(instance.choice_table().begin(), instance.choice_table().end());
    auto utilities = nlohmann::json::array();
    for (std::size_t i = 0; i < instance.num_agents(); ++i) {
        auto rows = nlohmann::json::array();
        for (TypeIndex t = 0; t < instance.type_size(i); ++t) {
            auto row = nlohmann::json::array();
            for (Outcome x = 0; x < instance.num_outcomes(); ++x) row.push_back(instance.utility(i, t, x));
            rows.push_back(std::move(row));
        }
        utilities.push_back(std::move(rows));
    }
    doc["utilities"] = std::move(utilities);
    if (!instance.labels().is_null()) doc["labels"] = instance.labels();
    return doc;
}

ChoiceInstance load_instance(std::string_view serialized) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(serialized);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("document", std::string("parse error: ") + e.what());
    }
    return instance_from_json(doc);
}

ChoiceInstance load_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("document", "cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_instance(buffer.str());
}

std::string serialize_instance(const ChoiceInstance& instance) { return instance_to_json(instance).dump(); }

nlohmann::json vertex_to_json(const ProductVertex& v) {
    auto doc = nlohmann::json::array();
    for (auto s : v) doc.push_back(s.members());
    return doc;
}

ProductVertex vertex_from_json(const nlohmann::json& doc, const ChoiceInstance& instance, const std::string& field) {
    if (!doc.is_array() || doc.size() != instance.num_agents())
        throw InputError(field, "expected one type list per agent");
    ProductVertex v;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto fi = at(field, i);
        if (!doc[i].is_array()) throw InputError(fi, "expected an array of type indices");
        TypeSet s;
        for (std::size_t k = 0; k < doc[i].size(); ++k) {
            auto t = as_unsigned(doc[i][k], at(fi, k));
            if (t >= instance.type_size(i)) throw InputError(at(fi, k), "type index out of range");
            if (s.contains(static_cast<TypeIndex>(t))) throw InputError(at(fi, k), "duplicate type index");
            s.insert(static_cast<TypeIndex>(t));
        }
        if (s.empty()) throw InputError(fi, "type set must be nonempty");
        v.push_back(s);
    }
    return v;
}

nlohmann::json profile_to_json(const TypeProfile& t) { return nlohmann::json(t); }

} // namespace osp
