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

#include "spforge/io.hpp"

using namespace spforge;

namespace {

const std::string kFixtures = SPFORGE_FIXTURE_DIR;

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/spforge_io_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("scalar literal syntax") {
    CHECK(io::parse_scalar("3/2") == Cyclotomic(Rational(3, 2)));
    CHECK(io::parse_scalar("z(4)^2") == Cyclotomic(Rational(-1)));
    CHECK(io::parse_scalar("1 + z(3) + z(3)^2") == Cyclotomic());
    CHECK(io::parse_scalar("2*z(8) - z(8)") == Cyclotomic::zeta(8));
    CHECK(io::parse_scalar("-(1/2)*(2 - 4)") == Cyclotomic(Rational(1)));
    CHECK_THROWS_AS(io::parse_scalar("z(0)"), io::ParseError);
    CHECK_THROWS_AS(io::parse_scalar("1 +"), io::ParseError);

    // Round trip through the canonical printer.
    for (const char* text : {"0", "-1", "3/2", "z(12)", "1/2 - 2*z(7)^3", "z(6)"}) {
        Cyclotomic v = io::parse_scalar(text);
        CHECK(io::parse_scalar(v.to_string()) == v);
    }
}

TEST_CASE("element expressions") {
    auto q = Quiver::create({"0"}, {{"x", 0, 0}, {"y", 0, 0}});
    PathAlgebraElement e = io::parse_element(q, "x.y - y.x - e(0)");
    CHECK(e.term_count() == 3);
    CHECK(e.coeff(Path::trivial(0)) == Cyclotomic(Rational(-1)));
    CHECK(io::parse_element(q, e.to_string()) == e);

    PathAlgebraElement f = io::parse_element(q, "(1/2 + z(4)) * x.x + 2 * y");
    CHECK(f.coeff(io::parse_path(q, "x.x")) ==
          Cyclotomic(Rational(1, 2)) + Cyclotomic::zeta(4));
    CHECK(io::parse_element(q, f.to_string()) == f);

    CHECK_THROWS_AS(io::parse_element(q, "w.x"), io::ParseError);

    // Incomposable hand-written paths are rejected with a location.
    auto q2 = Quiver::create({"0", "1"}, {{"a", 0, 1}, {"b", 0, 1}});
    CHECK_THROWS_AS(io::parse_element(q2, "a.b"), io::ParseError);
}

TEST_CASE("superpotential files round trip as values") {
    for (const char* name :
         {"weyl.sp", "phi3.sp", "s3_phi4.sp", "d8_phi4.sp", "preprojective_z2.sp",
          "d8_gl_phi2.sp"}) {
        io::SuperpotentialFile f = io::parse_superpotential_file(kFixtures + "/" + name);
        std::string text = io::serialize_superpotential(f.require());
        std::string tmp = write_temp(name, text);
        io::SuperpotentialFile g = io::parse_superpotential_file(tmp);
        CHECK(g.require().degree() == f.require().degree());
        // Same quiver shape and identical expanded coefficients.
        REQUIRE(g.quiver->arrow_count() == f.quiver->arrow_count());
        for (const auto& [p, c] : f.require().element().terms()) {
            Path gp = io::parse_path(g.quiver, f.quiver->path_to_string(p));
            CHECK(g.require().element().coeff(gp) == c);
        }
        CHECK(g.require().element().term_count() == f.require().element().term_count());
        std::remove(tmp.c_str());
    }

    io::SuperpotentialFile s3 = io::parse_superpotential_file(kFixtures + "/s3_phi4.sp");
    CHECK(s3.quiver->vertex_count() == 3);
    CHECK(s3.quiver->arrow_count() == 10);
    CHECK(s3.degree == 4);
    CHECK(s3.expand_cyclic);

    io::SuperpotentialFile weyl = io::parse_superpotential_file(kFixtures + "/weyl.sp");
    CHECK(weyl.require().element().to_string() == "-e(0) + x.y - y.x");
}

TEST_CASE("group files") {
    io::GroupFile s3 = io::parse_group_file(kFixtures + "/s3.grp");
    CHECK(s3.dimension == 2);
    REQUIRE(s3.generators.size() == 2);
    CHECK(s3.generators[0].at(0, 0) == Cyclotomic::zeta(3));
    CHECK(s3.aliases.at("2>2#1") == "L");
    MatrixGroup g = MatrixGroup::enumerate(s3.generators);
    CHECK(g.order() == 6);

    std::string text = io::serialize_group(s3);
    std::string tmp = write_temp("s3.grp", text);
    io::GroupFile back = io::parse_group_file(tmp);
    CHECK(back.dimension == s3.dimension);
    REQUIRE(back.generators.size() == s3.generators.size());
    for (std::size_t i = 0; i < back.generators.size(); ++i)
        CHECK(back.generators[i] == s3.generators[i]);
    CHECK(back.aliases == s3.aliases);
    std::remove(tmp.c_str());

    io::GroupFile d52 = io::parse_group_file(kFixtures + "/d52.grp");
    CHECK(MatrixGroup::enumerate(d52.generators).order() == 24);
}

TEST_CASE("malformed files report a location") {
    std::string bad1 = write_temp("bad1.sp", "superpotential\ndegree 2\nterm x.y\n");
    CHECK_THROWS_WITH_AS(io::parse_superpotential_file(bad1),
                         doctest::Contains("bad1.sp:3"), io::ParseError);
    std::remove(bad1.c_str());

    std::string bad2 = write_temp("bad2.sp",
                                  "superpotential\ndegree 2\nquiver {\n  vertex 0\n  arrow x 0 "
                                  "0\n  arrow y 0 0\n}\nterm x..y\n");
    CHECK_THROWS_AS(io::parse_superpotential_file(bad2), io::ParseError);
    std::remove(bad2.c_str());

    std::string bad3 = write_temp("bad3.grp", "group\ndimension 2\ngenerator [ 1, 0 ; 0 ]\n");
    try {
        io::parse_group_file(bad3);
        FAIL("expected a parse error");
    } catch (const io::ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.file() == bad3);
    }
    std::remove(bad3.c_str());
}

TEST_CASE("theta files") {
    std::string th = write_temp("t.th",
                                "theta\nsuperpotential " + kFixtures +
                                    "/phi3.sp\nk 1\nmap 1 y -> y\nmap 1 x -> 0 * e(0)\n");
    // the file references an absolute path, dirname resolution keeps it usable
    io::ThetaFile f = io::parse_theta_file(th);
    CHECK(f.k == 1);
    CHECK(f.assignments.size() == 2);
    CHECK(std::get<1>(f.assignments[0]) == "y");
    std::remove(th.c_str());
}

TEST_CASE("quiver file references") {
    std::string qf = write_temp("jordan.q",
                                "# two loops\nquiver {\n  vertex 0\n  arrow x 0 0\n  arrow y 0 "
                                "0\n}\n");
    QuiverPtr q = io::parse_quiver_file(qf);
    CHECK(q->arrow_count() == 2);

    std::string sp = write_temp(
        "byref.sp", "superpotential\ndegree 2\nquiver file " + qf +
                        "\nexpand_cyclic yes\nterm x.y\n");
    io::SuperpotentialFile f = io::parse_superpotential_file(sp);
    CHECK(f.require().element().term_count() == 2);
    std::remove(qf.c_str());
    std::remove(sp.c_str());

    std::string bad = write_temp("bad.q", "quiver {\n  vertex 0\n}\nextra\n");
    CHECK_THROWS_AS(io::parse_quiver_file(bad), io::ParseError);
    std::remove(bad.c_str());
}
