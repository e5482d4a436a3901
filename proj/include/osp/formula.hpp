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

#ifndef OSP_FORMULA_HPP
#define OSP_FORMULA_HPP

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace osp {

/**
 * Boolean formula over variables x0..x{n-1} with and/or/not, stored as a
 * node arena (node 0 is the root). Text form is prefix s-expressions:
 *
 *   (and (or x0 (not x1)) x2)
 *
 * `and`/`or` take one or more operands, `not` exactly one. `true` and
 * `false` are constants.
 */
class BooleanFormula {
public:
    enum class Op { Var, Const, Not, And, Or };

    struct Node {
        Op op = Op::Const;
        std::uint32_t var = 0; // Var
        bool value = false;    // Const
        std::vector<std::size_t> operands;
    };

    /// Throws std::invalid_argument with the offending position on bad input.
    /// `num_vars` of 0 means one past the largest variable index used.
    static BooleanFormula parse(std::string_view text, std::size_t num_vars = 0);

    std::size_t num_vars() const { return num_vars_; }
    const std::vector<Node>& nodes() const { return nodes_; }

    /// assignment[k] is the value of variable k.
    bool evaluate(const std::vector<bool>& assignment) const;
    std::string to_string() const;

    /// Brute-force truth table.
    bool satisfiable() const;

    /// Random formula over `num_vars` variables with roughly `size` connectives.
    static BooleanFormula random(std::mt19937_64& rng, std::size_t num_vars, std::size_t size);

private:
    std::size_t num_vars_ = 0;
    std::vector<Node> nodes_;

    bool eval(std::size_t node, const std::vector<bool>& assignment) const;
    std::string print(std::size_t node) const;
};

} // namespace osp

#endif
