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

#ifndef OSP_INSTANCE_HPP
#define OSP_INSTANCE_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace osp {

using Payoff = std::int64_t;
using Outcome = std::uint32_t;
using TypeIndex = std::uint32_t;

/// Largest type set an agent may have; per-agent type sets are 64-bit masks.
inline constexpr std::size_t kMaxTypesPerAgent = 64;

/// Raised for malformed documents and for instances that break an invariant.
/// The message names the offending field (and index, when there is one).
class InputError : public std::runtime_error {
public:
    InputError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/**
 * A set of type indices of one agent, stored as a bit mask.
 */
class TypeSet {
public:
    constexpr TypeSet() = default;
    constexpr explicit TypeSet(std::uint64_t mask) : mask_(mask) {}

    static constexpr TypeSet full(std::size_t size) {
        return TypeSet(size >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1);
    }
    static constexpr TypeSet single(TypeIndex t) { return TypeSet(std::uint64_t{1} << t); }
    static TypeSet of(std::initializer_list<TypeIndex> types) {
        TypeSet s;
        for (auto t : types) s.insert(t);
        return s;
    }

    constexpr std::uint64_t mask() const { return mask_; }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
    constexpr bool contains(TypeIndex t) const { return t < 64 && ((mask_ >> t) & 1U) != 0; }
    constexpr TypeIndex lowest() const { return static_cast<TypeIndex>(std::countr_zero(mask_)); }
    constexpr void insert(TypeIndex t) { mask_ |= std::uint64_t{1} << t; }
    constexpr void erase(TypeIndex t) { mask_ &= ~(std::uint64_t{1} << t); }

    constexpr bool subset_of(TypeSet other) const { return (mask_ & ~other.mask_) == 0; }
    constexpr bool proper_subset_of(TypeSet other) const {
        return subset_of(other) && mask_ != other.mask_;
    }

    constexpr TypeSet operator&(TypeSet o) const { return TypeSet(mask_ & o.mask_); }
    constexpr TypeSet operator|(TypeSet o) const { return TypeSet(mask_ | o.mask_); }
    /// Relative complement.
    constexpr TypeSet operator-(TypeSet o) const { return TypeSet(mask_ & ~o.mask_); }
    constexpr bool operator==(const TypeSet&) const = default;
    constexpr auto operator<=>(const TypeSet&) const = default;

    /// Members in increasing order.
    std::vector<TypeIndex> members() const {
        std::vector<TypeIndex> out;
        out.reserve(size());
        for (auto m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<TypeIndex>(std::countr_zero(m)));
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (auto m = mask_; m != 0; m &= m - 1) f(static_cast<TypeIndex>(std::countr_zero(m)));
    }

private:
    std::uint64_t mask_ = 0;
};

/// One type index per agent.
using TypeProfile = std::vector<TypeIndex>;

/// One nonempty type set per agent: a product set of type profiles.
using ProductVertex = std::vector<TypeSet>;

struct InstanceStats {
    std::uint64_t sum_types = 0;
    std::uint64_t product_types = 0;
    std::uint64_t table_size = 0;
};

/**
 * A finite choice rule over explicit tables.
 *
 * Profiles are flattened row-major with the last agent varying fastest.
 * Utilities are ordinal: only their order within one type matters.
 */
class ChoiceInstance {
public:
    ChoiceInstance() = default;

    /// Validates every invariant; throws InputError naming the broken field.
    ChoiceInstance(std::vector<std::size_t> type_sizes, std::size_t num_outcomes,
                   std::vector<Outcome> choice,
                   std::vector<std::vector<std::vector<Payoff>>> utilities,
                   nlohmann::json labels = nullptr);

    std::size_t num_agents() const { return type_sizes_.size(); }
    std::size_t num_outcomes() const { return num_outcomes_; }
    std::span<const std::size_t> type_sizes() const { return type_sizes_; }
    std::size_t type_size(std::size_t agent) const { return type_sizes_[agent]; }
    std::span<const std::size_t> strides() const { return strides_; }
    std::size_t stride(std::size_t agent) const { return strides_[agent]; }
    std::size_t num_profiles() const { return choice_.size(); }
    std::span<const Outcome> choice_table() const { return choice_; }
    const nlohmann::json& labels() const { return labels_; }

    Outcome choice(std::size_t profile_index) const { return choice_[profile_index]; }
    Outcome choice(const TypeProfile& profile) const;

    Payoff utility(std::size_t agent, TypeIndex type, Outcome x) const {
        return payoffs_[agent_offset_[agent] + type * num_outcomes_ + x];
    }

    /// Payoff agent `agent` with true type `type` receives at the given profile.
    Payoff payoff_at(std::size_t agent, TypeIndex type, std::size_t profile_index) const {
        return utility(agent, type, choice_[profile_index]);
    }

    ProductVertex root() const;
    bool valid_vertex(const ProductVertex& v) const;

    friend bool operator==(const ChoiceInstance& a, const ChoiceInstance& b) {
        return a.type_sizes_ == b.type_sizes_ && a.num_outcomes_ == b.num_outcomes_ &&
               a.choice_ == b.choice_ && a.payoffs_ == b.payoffs_ && a.labels_ == b.labels_;
    }

private:
    std::vector<std::size_t> type_sizes_;
    std::vector<std::size_t> strides_;
    std::size_t num_outcomes_ = 0;
    std::vector<Outcome> choice_;
    // Flat utilities: agent_offset_[i] + type * num_outcomes_ + outcome.
    std::vector<Payoff> payoffs_;
    std::vector<std::size_t> agent_offset_;
    nlohmann::json labels_;
};

InstanceStats stats(const ChoiceInstance& instance);

std::size_t profile_index(const TypeProfile& profile, std::span<const std::size_t> type_sizes);
TypeProfile index_profile(std::size_t index, std::span<const std::size_t> type_sizes);

/// Number of profiles in a product vertex.
std::uint64_t vertex_volume(const ProductVertex& v);
/// (sum of per-agent set sizes) * volume: the table size restricted to `v`.
std::uint64_t vertex_table_size(const ProductVertex& v);
bool is_singleton(const ProductVertex& v);
bool vertex_contains(const ProductVertex& v, const TypeProfile& t);

/// Flat indices of every profile in `v` with agent `agent`'s coordinate
/// zeroed, in increasing order. Adding `stride(agent) * t` yields the
/// profiles where that agent has type t.
std::vector<std::size_t> opponent_offsets(const ChoiceInstance& instance, const ProductVertex& v,
                                          std::size_t agent);
/// Flat indices of every profile in `v`, in increasing order.
std::vector<std::size_t> vertex_profiles(const ChoiceInstance& instance, const ProductVertex& v);

ChoiceInstance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const ChoiceInstance& instance);
ChoiceInstance load_instance(std::string_view serialized);
ChoiceInstance load_instance_file(const std::string& path);
std::string serialize_instance(const ChoiceInstance& instance);

nlohmann::json vertex_to_json(const ProductVertex& v);
ProductVertex vertex_from_json(const nlohmann::json& doc, const ChoiceInstance& instance,
                               const std::string& field);
nlohmann::json profile_to_json(const TypeProfile& t);

} // namespace osp

#endif
