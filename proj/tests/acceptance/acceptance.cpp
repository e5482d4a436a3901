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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "osp/bench.hpp"
#include "osp/certify.hpp"
#include "osp/decider.hpp"
#include "osp/formula.hpp"
#include "osp/generators.hpp"
#include "osp/mechanism.hpp"
#include "osp/odag.hpp"
#include "osp/oracle.hpp"
#include "osp/sp_check.hpp"
#include "osp/sweep.hpp"
#include "support/brute_force.hpp"

using namespace osp;

namespace {

int failures = 0;
std::map<int, std::string> lines; // printed in criterion order at the end

void report(int number, const std::string& name, bool ok, const std::string& detail) {
    lines[number] = std::string(ok ? "PASS" : "FAIL") + " " + std::to_string(number) + " " + name + ": " + detail;
    if (!ok) ++failures;
}

std::string ratio(std::uint64_t good, std::uint64_t total) {
    return std::to_string(good) + "/" + std::to_string(total);
}

const std::vector<sweep::SweepInstance>& sweep_instances() {
    static const auto instances = sweep::corpus({});
    return instances;
}

// Independent reading of a certificate: pairs inside the vertex, each with
// one strict inequality, and per agent the type pairs connect T'_i with
// exactly |T'_i| - 1 edges.
bool certificate_holds(const ChoiceInstance& instance, const NonOspCertificate& c) {
    const auto& v = c.vertex;
    if (!instance.valid_vertex(v) || is_singleton(v) || c.witnesses.size() != instance.num_agents()) return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto types = v[i].members();
        if (c.witnesses[i].size() + 1 != types.size()) return false;
        std::vector<std::vector<bool>> adj(instance.type_size(i), std::vector<bool>(instance.type_size(i), false));
        for (const auto& w : c.witnesses[i]) {
            if (!vertex_contains(v, w.t) || !vertex_contains(v, w.tprime)) return false;
            const auto a = w.t[i], b = w.tprime[i];
            const auto x = instance.choice(w.t), y = instance.choice(w.tprime);
            if (!(instance.utility(i, a, x) < instance.utility(i, a, y) || instance.utility(i, b, y) < instance.utility(i, b, x)))
                return false;
            adj[a][b] = adj[b][a] = true;
        }
        std::vector<TypeIndex> stack{types.front()};
        TypeSet reached = TypeSet::single(types.front());
        while (!stack.empty()) {
            auto a = stack.back();
            stack.pop_back();
            for (auto b : types)
                if (adj[a][b] && !reached.contains(b)) {
                    reached.insert(b);
                    stack.push_back(b);
                }
        }
        if (reached != v[i]) return false;
    }
    return true;
}

void oracle_criteria() {
    const auto& instances = sweep_instances();
    std::uint64_t agree = 0, modes = 0, built = 0, sound = 0, robin = 0;
    std::uint64_t certs = 0, certs_ok = 0, mutated_certs = 0, mutations = 0, anomalies = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& [name, instance] : instances) {
        const auto result = decide(instance);
        const auto reach = oracle::decide_explicit(instance, oracle::Mode::Reachability).implementable;
        const auto childless = oracle::decide_explicit(instance, oracle::Mode::Childless).implementable;
        agree += decide_only(instance) == reach;
        modes += reach == childless;
        robin += decide_only(instance, {SelectionPolicy::RoundRobin}) == result.implementable;
        if (result.implementable) {
            ++built;
            sound += result.mechanism && verify_wellformed(instance, *result.mechanism).empty() &&
                     verify_osp(instance, *result.mechanism).osp &&
                     testing::tree_is_osp_literal(instance, *result.mechanism);
            continue;
        }
        ++certs;
        const auto cert = extract_certificate(instance, *result.failing_vertex);
        const bool valid = verify_certificate(instance, cert).valid;
        certs_ok += valid && certificate_holds(instance, cert);
        if (!valid) continue;

        // Drop each spanning-tree edge: must always be rejected.
        ++mutated_certs;
        for (std::size_t i = 0; i < cert.witnesses.size(); ++i)
            for (std::size_t k = 0; k < cert.witnesses[i].size(); ++k) {
                auto m = cert;
                m.witnesses[i].erase(m.witnesses[i].begin() + static_cast<std::ptrdiff_t>(k));
                ++mutations;
                anomalies += verify_certificate(instance, m).valid;
            }
        // Change one coordinate of one witness profile: the verifier must
        // agree with the independent reading, and a self-loop must fail.
        for (std::size_t i = 0; i < cert.witnesses.size(); ++i)
            for (std::size_t k = 0; k < cert.witnesses[i].size(); ++k)
                for (int side = 0; side < 2; ++side)
                    for (std::size_t j = 0; j < instance.num_agents(); ++j)
                        for (TypeIndex t = 0; t < instance.type_size(j); ++t) {
                            auto m = cert;
                            auto& p = side == 0 ? m.witnesses[i][k].t : m.witnesses[i][k].tprime;
                            if (p[j] == t) continue;
                            p[j] = t;
                            ++mutations;
                            const bool verdict = verify_certificate(instance, m).valid;
                            anomalies += verdict != certificate_holds(instance, m);
                            anomalies += verdict && m.witnesses[i][k].t[i] == m.witnesses[i][k].tprime[i];
                        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto total = instances.size();
    char time[64];
    std::snprintf(time, sizeof time, " in %.1f s", seconds);
    report(1, "oracle equivalence", agree == total && total == 320 + 1000, ratio(agree, total) + " instances" + time);
    report(2, "reachability and childless modes agree", modes == total, ratio(modes, total));
    report(3, "construction soundness", sound == built && built > 0, ratio(sound, built) + " mechanisms verified");
    report(4, "certification soundness and mutation",
           certs_ok == certs && mutated_certs >= 50 && anomalies == 0,
           ratio(certs_ok, certs) + " certificates verify, " + std::to_string(mutations) + " mutations on " +
               std::to_string(mutated_certs) + " certificates, " + std::to_string(anomalies) + " anomalies");
    report(10, "policy independence", robin == total, ratio(robin, total));
}

void closure_minimality() {
    std::mt19937_64 rng(500);
    const auto& instances = sweep_instances();
    std::uint64_t vertices = 0, families = 0, bad = 0;
    while (vertices < 300) {
        const auto& instance = instances[rng() % instances.size()].instance;
        const auto v = testing::random_subvertex(rng, instance.root());
        if (vertex_volume(v) > 64 || is_singleton(v)) continue;
        ++vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i].size() < 2) continue;
            ++families;
            const auto family = testing::answer_family(instance, v, i);
            bad += !testing::closure_failures(family, v[i]).empty();
            const auto partition = answer_partition(instance, v, i);
            if (family.empty() != !partition) {
                ++bad;
                continue;
            }
            if (!partition) continue;
            auto cells = partition->cells;
            std::sort(cells.begin(), cells.end());
            bad += testing::minimal_elements(family) != cells;
        }
    }
    report(5, "closure and minimality", bad == 0,
           std::to_string(vertices) + " vertices, " + std::to_string(families) + " families, " + std::to_string(bad) +
               " failures");
}

void inheritance_and_paths() {
    std::mt19937_64 rng(600);
    const auto& instances = sweep_instances();
    std::uint64_t edges = 0, paths = 0, bad = 0;
    while (edges < 250 || paths < 250) {
        const auto& instance = instances[rng() % instances.size()].instance;
        const auto v = testing::random_subvertex(rng, instance.root());
        const auto kids = oracle::children(instance, v);
        if (kids.empty()) continue;

        // Inheritance: an edge v => child restricts to any sub-vertex b.
        const auto& child = kids[rng() % kids.size()];
        std::size_t i = 0;
        while (child[i] == v[i]) ++i;
        const auto b = testing::random_subvertex(rng, v);
        const auto meet = child[i] & b[i];
        if (!meet.empty() && meet != b[i]) {
            auto to = b;
            to[i] = meet;
            ++edges;
            bad += !oracle::edge_exists_quantified(instance, b, to);
        }

        // Path restriction: a random walk v => ... => w restricts to b => ... => b & w.
        auto w = v;
        for (auto steps = 1 + rng() % 4; steps > 0; --steps) {
            const auto next = oracle::children(instance, w);
            if (next.empty()) break;
            w = next[rng() % next.size()];
        }
        ProductVertex target(b.size());
        bool nonempty = true;
        for (std::size_t j = 0; j < b.size(); ++j) {
            target[j] = b[j] & w[j];
            nonempty = nonempty && !target[j].empty();
        }
        if (!nonempty) continue;
        ++paths;
        bad += !(target == b || oracle::has_path(instance, b, target));
    }
    report(6, "inheritance and path restriction", bad == 0,
           std::to_string(edges) + " edges, " + std::to_string(paths) + " paths, " + std::to_string(bad) + " failures");
}

void sat_reduction() {
    std::mt19937_64 rng(700);
    int bad = 0, satisfiable = 0;
    for (int k = 0; k < 50; ++k) {
        const auto formula = BooleanFormula::random(rng, 1 + rng() % 3, 1 + rng() % 6);
        const auto instance = gen::sat_instance(formula);
        const bool sp = check_sp(instance).sp;
        satisfiable += formula.satisfiable();
        bad += sp != !formula.satisfiable();
        bad += decide_only(instance) != sp;
    }
    report(7, "sat reduction", bad == 0,
           "50 formulas (" + std::to_string(satisfiable) + " satisfiable), " + std::to_string(bad) + " failures");
}

void sp_counter() {
    int bad = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::mt19937_64 rng(seed);
        gen::RandomSpec spec{seed, {}, 1 + rng() % 4, 0, 5};
        for (auto n = 1 + rng() % 4; n > 0; --n) spec.type_sizes.push_back(1 + rng() % 5);
        const auto instance = gen::random_instance(spec);
        bad += check_sp(instance).comparisons != stats(instance).table_size;
    }
    report(8, "sp comparison count equals table size", bad == 0, std::to_string(20 - bad) + "/20 instances");
}

void scaling() {
    bench::BenchOptions options;
    options.agents = 2;
    bool ok = true;
    std::string detail;
    for (const char* family : {"constant", "dictatorship"}) {
        const auto result = bench::run(family, {2, 4, 8, 16, 32}, options);
        const double slope = result.slope.value_or(99.0);
        ok = ok && slope <= 2.0 + 0.15;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s slope %.3f", family, slope);
        detail += (detail.empty() ? "" : ", ") + std::string(buf);
    }
    report(9, "sub-quadratic scaling", ok, detail + " (limit 2.15)");
}

} // namespace

int main() {
    oracle_criteria();
    closure_minimality();
    inheritance_and_paths();
    sat_reduction();
    sp_counter();
    scaling();
    for (const auto& [_, line] : lines) std::printf("%s\n", line.c_str());
    return failures == 0 ? 0 : 1;
}
