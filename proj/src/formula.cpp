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

#include "osp/formula.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace osp {

namespace {

class Parser {
public:
    Parser(std::string_view text, std::vector<BooleanFormula::Node>& nodes) : text_(text), nodes_(nodes) {}

    std::size_t parse_expr() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (text_[pos_] == '(') {
            ++pos_;
            auto op_name = word();
            BooleanFormula::Node node;
            if (op_name == "and") node.op = BooleanFormula::Op::And;
            else if (op_name == "or") node.op = BooleanFormula::Op::Or;
            else if (op_name == "not") node.op = BooleanFormula::Op::Not;
            else fail("unknown connective '" + std::string(op_name) + "'");
            const auto index = nodes_.size();
            nodes_.push_back(node);
            std::vector<std::size_t> operands;
            for (;;) {
                skip_space();
                if (pos_ >= text_.size()) fail("missing ')'");
                if (text_[pos_] == ')') {
                    ++pos_;
                    break;
                }
                operands.push_back(parse_expr());
            }
            if (operands.empty()) fail("connective without operands");
            if (node.op == BooleanFormula::Op::Not && operands.size() != 1) fail("'not' takes exactly one operand");
            nodes_[index].operands = std::move(operands);
            return index;
        }
        auto atom = word();
        BooleanFormula::Node node;
        if (atom == "true" || atom == "false") {
            node.op = BooleanFormula::Op::Const;
            node.value = atom == "true";
        } else if (atom.size() >= 2 && atom[0] == 'x') {
            std::uint64_t var = 0;
            for (auto ch : atom.substr(1)) {
                if (!std::isdigit(static_cast<unsigned char>(ch))) fail("bad variable '" + std::string(atom) + "'");
                var = var * 10 + static_cast<std::uint64_t>(ch - '0');
                if (var > 63) fail("variable index too large");
            }
            node.op = BooleanFormula::Op::Var;
            node.var = static_cast<std::uint32_t>(var);
        } else {
            fail("expected a variable, constant or '('");
        }
        nodes_.push_back(node);
        return nodes_.size() - 1;
    }

    void finish() {
        skip_space();
        if (pos_ != text_.size()) fail("trailing input");
    }

private:
    std::string_view text_;
    std::vector<BooleanFormula::Node>& nodes_;
    std::size_t pos_ = 0;

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view word() {
        skip_space();
        auto start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
               text_[pos_] != ')')
            ++pos_;
        if (start == pos_) fail("expected a word");
        return text_.substr(start, pos_ - start);
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw std::invalid_argument("formula: " + message + " at position " + std::to_string(pos_));
    }
};

} // namespace

BooleanFormula BooleanFormula::parse(std::string_view text, std::size_t num_vars) {
    BooleanFormula f;
    Parser parser(text, f.nodes_);
    parser.parse_expr();
    parser.finish();
    std::size_t used = 0;
    for (const auto& node : f.nodes_)
        if (node.op == Op::Var) used = std::max<std::size_t>(used, node.var + 1);
    if (num_vars != 0 && used > num_vars)
        throw std::invalid_argument("formula: variable x" + std::to_string(used - 1) + " exceeds variable count " +
                                    std::to_string(num_vars));
    f.num_vars_ = num_vars != 0 ? num_vars : used;
    return f;
}

bool BooleanFormula::eval(std::size_t node, const std::vector<bool>& assignment) const {
    const auto& n = nodes_[node];
    switch (n.op) {
    case Op::Var: return assignment.at(n.var);
    case Op::Const: return n.value;
    case Op::Not: return !eval(n.operands[0], assignment);
    case Op::And:
        for (auto o : n.operands)
            if (!eval(o, assignment)) return false;
        return true;
    case Op::Or:
        for (auto o : n.operands)
            if (eval(o, assignment)) return true;
        return false;
    }
    return false;
}

bool BooleanFormula::evaluate(const std::vector<bool>& assignment) const {
    if (assignment.size() < num_vars_) throw std::invalid_argument("assignment too short");
    return eval(0, assignment);
}

std::string BooleanFormula::print(std::size_t node) const {
    const auto& n = nodes_[node];
    switch (n.op) {
    case Op::Var: return "x" + std::to_string(n.var);
    case Op::Const: return n.value ? "true" : "false";
    default: break;
    }
    std::string out = n.op == Op::Not ? "(not" : n.op == Op::And ? "(and" : "(or";
    for (auto o : n.operands) out += " " + print(o);
    return out + ")";
}

std::string BooleanFormula::to_string() const { return print(0); }

bool BooleanFormula::satisfiable() const {
    if (num_vars_ > 24) throw std::invalid_argument("truth table too large");
    std::vector<bool> assignment(num_vars_);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << num_vars_); ++bits) {
        for (std::size_t k = 0; k < num_vars_; ++k) assignment[k] = ((bits >> k) & 1U) != 0;
        if (eval(0, assignment)) return true;
    }
    return false;
}

BooleanFormula BooleanFormula::random(std::mt19937_64& rng, std::size_t num_vars, std::size_t size) {
    if (num_vars == 0) throw std::invalid_argument("random formula needs at least one variable");
    BooleanFormula f;
    f.num_vars_ = num_vars;
    // Grow top-down; each connective consumes budget.
    auto build = [&](auto& self, std::size_t budget) -> std::size_t {
        const auto index = f.nodes_.size();
        f.nodes_.emplace_back();
        if (budget == 0) {
            f.nodes_[index].op = Op::Var;
            f.nodes_[index].var = static_cast<std::uint32_t>(rng() % num_vars);
            return index;
        }
        switch (rng() % 3) {
        case 0: {
            f.nodes_[index].op = Op::Not;
            auto child = self(self, budget - 1);
            f.nodes_[index].operands = {child};
            break;
        }
        default: {
            f.nodes_[index].op = (rng() % 2 == 0) ? Op::And : Op::Or;
            const auto left = (budget - 1) / 2;
            auto a = self(self, left);
            auto b = self(self, budget - 1 - left);
            f.nodes_[index].operands = {a, b};
            break;
        }
        }
        return index;
    };
    build(build, size);
    return f;
}

} // namespace osp
