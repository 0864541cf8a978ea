/*
   Copyright 2026 The spforge authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string("cd ") + SPFORGE_SOURCE_DIR + " && " + SPFORGE_CLI_PATH + " " +
                      args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("validate and relations") {
    CHECK(run("validate --superpotential fixtures/weyl.sp").exit_code == 0);
    CHECK(run("validate --superpotential fixtures/d8_gl_phi2.sp").exit_code == 0);
    RunResult rel = run("relations --superpotential fixtures/phi3.sp --k 1");
    CHECK(rel.exit_code == 0);
    CHECK(rel.output.find("x.y + y.x") != std::string::npos);
    CHECK(rel.output.find("x.x") != std::string::npos);
}

TEST_CASE("deform matches the golden structured report byte for byte") {
    RunResult r = run("deform --superpotential fixtures/s3_phi4.sp --k 2 --format structured");
    CHECK(r.exit_code == 0);
    std::string golden = slurp(std::string(SPFORGE_GOLDEN_DIR) + "/deform_s3.json");
    CHECK(r.output == golden);
    // Deterministic across runs.
    RunResult again = run("deform --superpotential fixtures/s3_phi4.sp --k 2 --format structured");
    CHECK(again.output == r.output);
}

TEST_CASE("mathematical failures exit 1, input errors exit 2") {
    // Not a superpotential: condition fails with a witness, exit 1.
    std::string bad_math = SPFORGE_SOURCE_DIR + std::string("/build/bad_math.sp");
    {
        std::ofstream out(bad_math);
        out << "superpotential\ndegree 2\nquiver {\n  vertex 0\n  arrow x 0 0\n  arrow y 0 0\n}\n"
               "expand_cyclic no\nterm x.y + y.x\n";
    }
    RunResult r1 = run("validate --superpotential build/bad_math.sp");
    CHECK(r1.exit_code == 1);
    CHECK(r1.output.find("INVALID") != std::string::npos);
    std::remove(bad_math.c_str());

    // Malformed file: parse error with location, exit 2.
    std::string bad_syntax = SPFORGE_SOURCE_DIR + std::string("/build/bad_syntax.sp");
    {
        std::ofstream out(bad_syntax);
        out << "superpotential\ndegree 2\nterm x.y\n";
    }
    RunResult r2 = run("validate --superpotential build/bad_syntax.sp");
    CHECK(r2.exit_code == 2);
    CHECK(r2.output.find("bad_syntax.sp:3") != std::string::npos);
    std::remove(bad_syntax.c_str());

    // Missing file and bad flags are input errors too.
    CHECK(run("validate --superpotential /nonexistent.sp").exit_code == 2);
    CHECK(run("no-such-command").exit_code == 2);
}

TEST_CASE("pbw-check, cy-check, mckay and obstruct") {
    CHECK(run("pbw-check --theta fixtures/phi3_theta.th").exit_code == 0);
    CHECK(run("cy-check --superpotential fixtures/s3_phi4.sp").exit_code == 0);

    RunResult mk = run("mckay --group fixtures/s3.grp --rep doubled");
    CHECK(mk.exit_code == 0);
    CHECK(mk.output.find("predicted deformation dimension: 2") != std::string::npos);

    RunResult ob = run("obstruct --group fixtures/d52.grp");
    CHECK(ob.exit_code == 0);
    CHECK(ob.output.find("no nontrivial PBW deformations") != std::string::npos);

    RunResult ob2 = run("obstruct --superpotential fixtures/d8_gl_phi2.sp --k 0");
    CHECK(ob2.exit_code == 0);
    CHECK(ob2.output.find("dim Hom(R,V) = 0, dim Hom(R,S) = 1") != std::string::npos);

    // Exactly one input source is required.
    CHECK(run("obstruct").exit_code == 2);
}

TEST_CASE("group closure bound from the environment") {
    std::string cmd = std::string("cd ") + SPFORGE_SOURCE_DIR +
                      " && SPFORGE_MAX_GROUP=3 " + SPFORGE_CLI_PATH +
                      " mckay --group fixtures/s3.grp 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) output.append(buf, n);
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 2);
    CHECK(output.find("closure exceeds bound 3") != std::string::npos);
}

TEST_CASE("pbw-check reports ill-defined assignments with exit 1") {
    std::string th = SPFORGE_SOURCE_DIR + std::string("/build/bad_theta.th");
    {
        std::ofstream out(th);
        // delta_{y.y} Phi_3 = 0, so any nonzero image is inconsistent.
        out << "theta\nsuperpotential ../fixtures/phi3.sp\nk 2\nmap 0 y.y -> e(0)\n";
    }
    RunResult r = run("pbw-check --theta build/bad_theta.th");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("PBW1: fail") != std::string::npos);
    CHECK(r.output.find("witness") != std::string::npos);
    std::remove(th.c_str());
}
