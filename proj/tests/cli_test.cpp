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

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "osp/cli.hpp"
#include "osp/formula.hpp"
#include "osp/generators.hpp"

using namespace osp;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class Scratch {
public:
    Scratch() : dir_(fs::temp_directory_path() / ("osp_cli_test_" + std::to_string(::getpid()))) {
        fs::create_directories(dir_);
    }
    ~Scratch() { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }

private:
    fs::path dir_;
};

} // namespace

TEST_CASE("gen and decide round trip on an implementable rule") {
    Scratch s;
    auto gen = run({"gen", "dict", "--sizes", "3,2", "-o", s.path("dict.json")});
    REQUIRE(gen.code == cli::kYes);
    auto decided = run({"decide", s.path("dict.json"), "--mechanism", s.path("mech.json")});
    CHECK(decided.code == cli::kYes);
    CHECK(decided.json()["implementable"] == true);
    CHECK(decided.err.find("OSP-implementable") != std::string::npos);
    auto verified = run({"verify-mechanism", s.path("dict.json"), s.path("mech.json")});
    CHECK(verified.code == cli::kYes);
    CHECK(verified.json()["osp"] == true);
    CHECK(run({"check-sp", s.path("dict.json")}).code == cli::kYes);
    CHECK(run({"oracle", "decide", s.path("dict.json"), "--mode", "childless"}).code == cli::kYes);

    // No certificate can exist for an implementable rule.
    s.write("bogus.json", R"({"vertex": [[0,1],[0,1]], "witnesses": [[{"t":[0,0],"tprime":[1,0]}], [{"t":[0,0],"tprime":[0,1]}]]})");
    CHECK(run({"verify-certificate", s.path("dict.json"), s.path("bogus.json")}).code == cli::kNo);
}

TEST_CASE("sat instance is refuted with a certificate") {
    Scratch s;
    REQUIRE(run({"gen", "sat", "--formula", "x0", "-o", s.path("sat.json")}).code == cli::kYes);
    auto decided = run({"decide", s.path("sat.json"), "--certificate", s.path("cert.json")});
    CHECK(decided.code == cli::kNo);
    CHECK(decided.json()["failing_vertex"] == nlohmann::json::parse("[[1],[0,1]]"));
    auto verified = run({"verify-certificate", s.path("sat.json"), s.path("cert.json")});
    CHECK(verified.code == cli::kYes);
    CHECK(verified.json()["valid"] == true);

    auto sp = run({"check-sp", s.path("sat.json")});
    CHECK(sp.code == cli::kNo);
    CHECK(sp.json()["comparisons"] == 16);

    auto oracle = run({"oracle", "decide", s.path("sat.json")});
    CHECK(oracle.code == cli::kNo);
    CHECK(oracle.json()["unreachable_profile"] == nlohmann::json::parse("[1,0]"));

    // Malformed certificates are rejected, not treated as input errors.
    s.write("bad.json", R"({"vertex": [[1]], "witnesses": []})");
    auto bad = run({"verify-certificate", s.path("sat.json"), s.path("bad.json")});
    CHECK(bad.code == cli::kNo);
    CHECK(bad.json()["valid"] == false);
}

TEST_CASE("mechanism from another instance is rejected") {
    Scratch s;
    run({"gen", "dict", "--sizes", "2,2", "-o", s.path("dict.json")});
    run({"decide", s.path("dict.json"), "--mechanism", s.path("mech.json")});
    run({"gen", "dict", "--sizes", "2,2", "--map", "1,0", "-o", s.path("flip.json")});
    auto verified = run({"verify-mechanism", s.path("flip.json"), s.path("mech.json")});
    CHECK(verified.code == cli::kNo);
    CHECK(verified.json()["wellformed"] == false);
}

TEST_CASE("policies and options") {
    Scratch s;
    run({"gen", "random", "--seed", "3", "--sizes", "2,2,2", "-o", s.path("r.json")});
    auto a = run({"decide", s.path("r.json"), "--policy", "roundrobin"});
    auto b = run({"decide", s.path("r.json"), "--policy", "lowest", "--parallel", "--threads", "2"});
    CHECK(a.code == b.code);
    CHECK(a.json()["policy"] == "roundrobin");
    CHECK(run({"decide", s.path("r.json"), "--policy", "random"}).code == cli::kUsage);
    CHECK(run({"decide", s.path("r.json"), "--stop-when-constant"}).code == a.code);
}

TEST_CASE("error exit codes") {
    Scratch s;
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"decide"}).code == cli::kUsage);
    CHECK(run({"decide", s.path("missing.json")}).code == cli::kInputError);

    s.write("garbage.json", "{not json");
    CHECK(run({"check-sp", s.path("garbage.json")}).code == cli::kInputError);

    s.write("bad.json", R"({"agents": 1, "type_sizes": [2], "num_outcomes": 2, "choice": [0, 5], "utilities": [[[0,0],[0,0]]]})");
    auto bad = run({"check-sp", s.path("bad.json")});
    CHECK(bad.code == cli::kInputError);
    CHECK(bad.err.find("choice") != std::string::npos);

    CHECK(run({"gen", "sat", "--formula", "(xor x0)"}).code == cli::kInputError);
    CHECK(run({"gen", "dict", "--sizes", "2,x"}).code == cli::kInputError);

    run({"gen", "dict", "--sizes", "9,9,9", "-o", s.path("big.json")});
    auto guarded = run({"oracle", "decide", s.path("big.json"), "--guard", "1000"});
    CHECK(guarded.code == cli::kInputError);
    CHECK(guarded.err.find("too large") != std::string::npos);
}

TEST_CASE("dump-odag and sweep") {
    Scratch s;
    run({"gen", "dict", "--sizes", "2,2", "-o", s.path("d.json")});
    auto dump = run({"oracle", "dump-odag", s.path("d.json")});
    CHECK(dump.code == cli::kYes);
    CHECK(dump.json()["vertices"].size() == 9);

    auto sweep = run({"sweep", "--max-agents", "2", "--max-types", "2", "--max-outcomes", "2", "--random", "20"});
    CHECK(sweep.code == cli::kYes);
    CHECK(sweep.err.find("FAIL") == std::string::npos);
}

TEST_CASE("bench reports a slope") {
    auto bench = run({"bench", "--family", "dictatorship", "--sizes", "2,4,8", "--reps", "1"});
    CHECK(bench.code == cli::kYes);
    CHECK(bench.json()["points"].size() == 3);
    CHECK(bench.json().contains("slope"));
}

TEST_CASE("installed binary") {
    Scratch s;
    const std::string bin = OSP_CLI_BINARY;
    auto sh = [&](const std::string& cmd) {
        int status = std::system((bin + " " + cmd + " > /dev/null 2>&1").c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    CHECK(sh("gen sat --formula '(and x0 (not x0))' -o " + s.path("unsat.json")) == 0);
    CHECK(sh("decide " + s.path("unsat.json")) == 0);
    CHECK(sh("gen sat --formula x1 -o " + s.path("sat.json")) == 0);
    CHECK(sh("decide " + s.path("sat.json")) == 3);
    CHECK(sh("decide") == 1);
    CHECK(sh("decide " + s.path("nope.json")) == 2);
}
