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

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "spforge/cy.hpp"
#include "spforge/gl2.hpp"
#include "spforge/groups.hpp"
#include "spforge/io.hpp"
#include "spforge/pbw.hpp"

using json = nlohmann::ordered_json;
using namespace spforge;

namespace {

// Exit codes: 0 pass, 1 mathematical failure (witnesses reported), 2 input error.
constexpr int kPass = 0;
constexpr int kMathFailure = 1;
constexpr int kInputError = 2;

struct Output {
    std::string command;
    std::vector<std::string> inputs;
    bool structured = false;
    json report;

    explicit Output(std::string cmd) : command(std::move(cmd)) {
        report["command"] = command;
        report["inputs"] = json::array();
        report["verdict"] = nullptr;
        report["dimension"] = nullptr;
        report["basis"] = nullptr;
        report["witnesses"] = json::array();
        report["details"] = json::object();
    }

    void input(const std::string& path) {
        inputs.push_back(path);
        report["inputs"].push_back(path);
    }
    void verdict(bool pass) { report["verdict"] = pass ? "pass" : "fail"; }
    void dimension(long d) { report["dimension"] = d; }
    void basis(const std::vector<std::string>& b) { report["basis"] = b; }
    void witness(const std::string& w) { report["witnesses"].push_back(w); }

    void emit_text_header() const {
        std::cout << command;
        for (const auto& in : inputs) std::cout << " " << in;
        std::cout << "\n";
    }

    int finish(bool pass) {
        verdict(pass);
        if (structured) {
            std::cout << report.dump(2) << "\n";
        }
        return pass ? kPass : kMathFailure;
    }
};

long closure_bound(const io::GroupFile& f) {
    long bound = f.bound.value_or(100000);
    if (const char* env = std::getenv("SPFORGE_MAX_GROUP")) bound = std::atol(env);
    return bound;
}

std::string format_basis_vector(const DeformationSpace& ds, const SparseVector& v) {
    return ds.vector_to_element(v).to_string();
}

int cmd_validate(const std::string& sp_path, bool structured) {
    Output out("validate");
    out.structured = structured;
    out.input(sp_path);
    io::SuperpotentialFile f = io::parse_superpotential_file(sp_path);
    if (!structured) {
        out.emit_text_header();
        std::cout << "degree: " << f.degree << "\n";
        std::cout << "kind: "
                  << (f.valid ? (f.superpotential->kind() == SuperpotentialKind::homogeneous
                                     ? "homogeneous"
                                     : "inhomogeneous")
                              : "invalid")
                  << "\n";
        std::cout << "twisted: " << (f.twist && !f.twist->is_identity() ? "yes" : "no") << "\n";
        std::cout << (f.valid ? "valid superpotential" : "INVALID: " + f.failure) << "\n";
    }
    out.report["details"]["degree"] = f.degree;
    if (!f.valid) out.witness(f.failure);
    return out.finish(f.valid);
}

int cmd_relations(const std::string& sp_path, long k, bool structured) {
    Output out("relations");
    out.structured = structured;
    out.input(sp_path);
    io::SuperpotentialFile f = io::parse_superpotential_file(sp_path);
    if (!f.valid) {
        out.witness(f.failure);
        if (!structured) std::cout << "INVALID: " << f.failure << "\n";
        return out.finish(false);
    }
    RelationGenerators gens = relation_generators(*f.superpotential, k);
    const QuiverPtr& q = f.quiver;
    std::vector<std::string> nonzero, zero;
    for (std::size_t i = 0; i < gens.paths.size(); ++i) {
        std::string line = "delta[" + q->path_to_string(gens.paths[i]) + "] = " +
                           gens.images[i].to_string();
        if (gens.images[i].is_zero())
            zero.push_back("delta[" + q->path_to_string(gens.paths[i]) + "]");
        else
            nonzero.push_back(line);
    }
    if (!structured) {
        out.emit_text_header();
        std::cout << "generators (" << nonzero.size() << " nonzero):\n";
        for (const auto& s : nonzero) std::cout << "  " << s << "\n";
        std::cout << "zero derivatives (" << zero.size() << "):\n";
        for (const auto& s : zero) std::cout << "  " << s << "\n";
    }
    out.report["details"]["nonzero"] = nonzero;
    out.report["details"]["zero"] = zero;
    return out.finish(true);
}

int cmd_deform(const std::string& sp_path, long k, bool structured) {
    Output out("deform");
    out.structured = structured;
    out.input(sp_path);
    io::SuperpotentialFile f = io::parse_superpotential_file(sp_path);
    if (!f.valid) {
        out.witness(f.failure);
        if (!structured) std::cout << "INVALID: " << f.failure << "\n";
        return out.finish(false);
    }
    DeformationSpace ds = deformation_space(*f.superpotential, k);
    out.dimension(ds.dimension);
    std::vector<std::string> basis;
    for (const auto& v : ds.solution.basis()) basis.push_back(format_basis_vector(ds, v));
    out.basis(basis);
    out.report["details"]["note"] = ds.hypotheses_note;
    if (!structured) {
        out.emit_text_header();
        std::cout << "dimension: " << ds.dimension << "\n";
        for (const auto& b : basis) std::cout << "  phi_lower = " << b << "\n";
        std::cout << "note: " << ds.hypotheses_note << "\n";
    }
    return out.finish(true);
}

int cmd_pbw_check(const std::string& theta_path, bool structured) {
    Output out("pbw-check");
    out.structured = structured;
    out.input(theta_path);
    io::ThetaFile tf = io::parse_theta_file(theta_path);
    out.input(tf.superpotential_path);
    io::SuperpotentialFile f = io::parse_superpotential_file(tf.superpotential_path);
    if (!f.valid) {
        out.witness(f.failure);
        if (!structured) std::cout << "INVALID superpotential: " << f.failure << "\n";
        return out.finish(false);
    }
    Superpotential base = Superpotential::make(f.superpotential->top_part(),
                                               f.superpotential->degree(), f.twist);
    std::map<std::pair<long, Path>, PathAlgebraElement> assignments;
    for (const auto& [j, path_text, expr] : tf.assignments) {
        Path p = io::parse_path(f.quiver, path_text);
        PathAlgebraElement img = io::parse_element(f.quiver, expr);
        if (img.is_zero()) continue;
        auto key = std::make_pair(j, p);
        auto it = assignments.find(key);
        if (it == assignments.end())
            assignments.emplace(key, img);
        else
            it->second = it->second + img;
    }
    ThetaMap theta = ThetaMap::make(base, tf.k, assignments);
    PbwReport rep = check_pbw(theta);
    ZeroPbwReport zrep = check_zero_pbw(theta);

    auto emit = [&](const char* name, const ConditionOutcome& c) {
        out.report["details"][name] = c.pass ? "pass" : "fail";
        for (const auto& w : c.witnesses) out.witness(std::string(name) + ": " + w);
        if (!structured) {
            std::cout << name << ": " << (c.pass ? "pass" : "fail") << "\n";
            for (const auto& w : c.witnesses) std::cout << "  witness: " << w << "\n";
        }
    };
    if (!structured) out.emit_text_header();
    emit("PBW1", rep.pbw1);
    emit("PBW2", rep.pbw2);
    emit("PBW3", rep.pbw3);
    emit("PBW4", rep.pbw4);
    emit("ZPBW", zrep.zpbw);
    return out.finish(rep.all_pass());
}

int cmd_cy_check(const std::string& sp_path, bool structured) {
    Output out("cy-check");
    out.structured = structured;
    out.input(sp_path);
    io::SuperpotentialFile f = io::parse_superpotential_file(sp_path);
    if (!f.valid) {
        out.witness(f.failure);
        if (!structured) std::cout << "INVALID: " << f.failure << "\n";
        return out.finish(false);
    }
    const Superpotential& sp = *f.superpotential;
    ComplexPresentation c = build_complex(sp);
    VerificationReport dsq = verify_d_squared(c);
    VerificationReport aug = verify_augmentation(c);
    bool pairing_ok = true;
    Superpotential top = Superpotential::make(sp.top_part(), sp.degree(), sp.twist());
    json blocks = json::array();
    for (long j = 0; j <= sp.degree(); ++j) {
        PairingData pd = pairing(top, j);
        if (!pd.perfect) pairing_ok = false;
        for (const auto& blk : pd.blocks) {
            json b;
            b["j"] = j;
            b["block"] = std::to_string(blk.row_vertex) + "," + std::to_string(blk.col_vertex);
            b["dim_j"] = blk.dim_j;
            b["dim_nj"] = blk.dim_nj;
            b["rank"] = blk.rank;
            b["perfect"] = blk.perfect;
            b["det"] = blk.det.to_string();
            blocks.push_back(b);
            if (!blk.perfect)
                out.witness("pairing block (" + std::to_string(blk.row_vertex) + "," +
                            std::to_string(blk.col_vertex) + ") at j=" + std::to_string(j) +
                            " is not perfect");
        }
    }
    for (const auto& r : dsq.residuals) out.witness("d^2: " + r);
    for (const auto& r : aug.residuals) out.witness("augmentation: " + r);
    out.report["details"]["d_squared"] = dsq.pass ? "pass" : "fail";
    out.report["details"]["augmentation"] = aug.pass ? "pass" : "fail";
    out.report["details"]["pairing"] = pairing_ok ? "pass" : "fail";
    out.report["details"]["pairing_blocks"] = blocks;
    if (!structured) {
        out.emit_text_header();
        std::cout << "d_squared: " << (dsq.pass ? "pass" : "fail") << "\n";
        for (const auto& r : dsq.residuals) std::cout << "  " << r << "\n";
        std::cout << "augmentation: " << (aug.pass ? "pass" : "fail") << "\n";
        for (const auto& r : aug.residuals) std::cout << "  " << r << "\n";
        std::cout << "pairing: " << (pairing_ok ? "pass" : "fail") << "\n";
    }
    return out.finish(dsq.pass && aug.pass && pairing_ok);
}

int cmd_mckay(const std::string& grp_path, const std::string& rep_mode, bool structured) {
    Output out("mckay");
    out.structured = structured;
    out.input(grp_path);
    io::GroupFile gf = io::parse_group_file(grp_path);
    MatrixGroup g = MatrixGroup::enumerate(gf.generators, closure_bound(gf));
    CharacterTable table = character_table(g);
    McKayRep rep = rep_mode == "doubled" ? McKayRep::defining_plus_dual : McKayRep::defining;
    McKayQuiver mk = mckay_quiver(g, table, rep, gf.aliases);
    bool small = is_small(g);
    bool sl = is_in_sl(g);
    out.report["details"]["order"] = g.order();
    out.report["details"]["classes"] = g.class_count();
    out.report["details"]["dims"] = table.dims;
    out.report["details"]["adjacency"] = mk.multiplicities;
    out.report["details"]["twist"] = mk.twist;
    out.report["details"]["small"] = small;
    out.report["details"]["in_sl"] = sl;
    std::optional<SymplecticReflectionReport> refl;
    if (rep == McKayRep::defining_plus_dual)
        refl = symplectic_reflections(g, true);
    else if (g.dimension() % 2 == 0)
        refl = symplectic_reflections(g, false);
    if (refl) {
        out.report["details"]["symplectic_reflection_classes"] =
            static_cast<long>(refl->classes.size());
        out.report["details"]["predicted_dimension"] = refl->predicted_dimension;
    }
    if (!structured) {
        out.emit_text_header();
        std::cout << "order: " << g.order() << ", classes: " << g.class_count() << "\n";
        std::cout << "irreducible degrees:";
        for (long d : table.dims) std::cout << " " << d;
        std::cout << "\nadjacency:\n";
        for (long i = 0; i < table.count(); ++i) {
            std::cout << "  ";
            for (long j = 0; j < table.count(); ++j) std::cout << mk.multiplicities[i][j] << " ";
            std::cout << "\n";
        }
        std::cout << "det twist:";
        for (long t : mk.twist) std::cout << " " << t;
        std::cout << "\nsmall: " << (small ? "yes" : "no") << ", in SL: " << (sl ? "yes" : "no")
                  << "\n";
        if (refl)
            std::cout << "symplectic reflection classes: " << refl->classes.size()
                      << ", predicted deformation dimension: " << refl->predicted_dimension
                      << "\n";
        std::cout << "arrows:\n";
        for (const auto& a : mk.quiver->arrows())
            std::cout << "  " << a.name << ": " << a.tail << " -> " << a.head << "\n";
    }
    return out.finish(true);
}

int cmd_obstruct(const std::string& grp_path, const std::string& sp_path, long k,
                 bool structured) {
    Output out("obstruct");
    out.structured = structured;
    RelationProfile prof;
    QuiverPtr quiver;
    std::optional<TwistDistanceReport> twist_rep;
    if (!grp_path.empty()) {
        out.input(grp_path);
        io::GroupFile gf = io::parse_group_file(grp_path);
        MatrixGroup g = MatrixGroup::enumerate(gf.generators, closure_bound(gf));
        CharacterTable table = character_table(g);
        McKayQuiver mk = mckay_quiver(g, table, McKayRep::defining, gf.aliases);
        prof = profile_from_mckay(mk);
        quiver = mk.quiver;
        twist_rep = check_twist_distance(mk);
    } else {
        out.input(sp_path);
        io::SuperpotentialFile f = io::parse_superpotential_file(sp_path);
        if (!f.valid) {
            out.witness(f.failure);
            if (!structured) std::cout << "INVALID: " << f.failure << "\n";
            return out.finish(false);
        }
        prof = profile_from_superpotential(*f.superpotential, k);
        quiver = f.quiver;
    }
    HomDimensions hd = hom_dimensions(prof, quiver);
    json rels = json::array();
    for (const auto& r : prof.relations) {
        json jr;
        jr["label"] = r.label;
        jr["tail"] = r.tail;
        jr["head"] = r.head;
        jr["distance"] = r.distance ? json(*r.distance) : json(nullptr);
        rels.push_back(jr);
    }
    out.report["details"]["relations"] = rels;
    out.report["details"]["hom_r_v"] = hd.hom_v;
    out.report["details"]["hom_r_s"] = hd.hom_s;
    if (twist_rep) out.report["details"]["twist_distance_ok"] = twist_rep->pass;
    std::string conclusion = hd.no_nontrivial_deformations()
                                 ? "no nontrivial PBW deformations"
                                 : "PBW deformation parameters may exist (dim Hom(R,V) = " +
                                       std::to_string(hd.hom_v) + ", dim Hom(R,S) = " +
                                       std::to_string(hd.hom_s) + ")";
    out.report["details"]["conclusion"] = conclusion;
    if (!structured) {
        out.emit_text_header();
        for (const auto& r : prof.relations)
            std::cout << "relation " << r.label << ": tail " << r.tail << ", head " << r.head
                      << ", distance "
                      << (r.distance ? std::to_string(*r.distance) : std::string("inf")) << "\n";
        std::cout << "dim Hom(R,V) = " << hd.hom_v << ", dim Hom(R,S) = " << hd.hom_s << "\n";
        if (twist_rep)
            std::cout << "twist distance >= 2: " << (twist_rep->pass ? "yes" : "no") << "\n";
        std::cout << conclusion << "\n";
    }
    return out.finish(true);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spforge: quivers with superpotentials over exact cyclotomic arithmetic"};
    app.require_subcommand(1);

    std::string sp_path, grp_path, theta_path, format = "text", rep_mode = "defining";
    long k = 0;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format: text or structured")
            ->check(CLI::IsMember({"text", "structured"}));
    };

    CLI::App* validate = app.add_subcommand("validate", "Check the superpotential condition");
    validate->add_option("--superpotential", sp_path, "Superpotential file")->required();
    add_format(validate);

    CLI::App* relations = app.add_subcommand("relations", "List the relation generators");
    relations->add_option("--superpotential", sp_path)->required();
    relations->add_option("--k", k, "Differentiation length")->required();
    add_format(relations);

    CLI::App* deform = app.add_subcommand("deform", "Solve the coherent deformation space");
    deform->add_option("--superpotential", sp_path)->required();
    deform->add_option("--k", k, "Differentiation length")->required();
    add_format(deform);

    CLI::App* pbw = app.add_subcommand("pbw-check", "PBW and zeroPBW conditions for a theta file");
    pbw->add_option("--theta", theta_path, "Theta file")->required();
    add_format(pbw);

    CLI::App* cy = app.add_subcommand("cy-check", "Complex identities, augmentation and pairing");
    cy->add_option("--superpotential", sp_path)->required();
    add_format(cy);

    CLI::App* mckay = app.add_subcommand("mckay", "McKay quiver with twist and reflection data");
    mckay->add_option("--group", grp_path, "Group file")->required();
    mckay->add_option("--rep", rep_mode, "defining or doubled (h + h*)")
        ->check(CLI::IsMember({"defining", "doubled"}));
    add_format(mckay);

    CLI::App* obstruct = app.add_subcommand("obstruct", "GL2 obstruction analysis");
    obstruct->add_option("--group", grp_path, "Group file (structural profile)");
    obstruct->add_option("--superpotential", sp_path, "Superpotential file (exact profile)");
    obstruct->add_option("--k", k, "Differentiation length for --superpotential");
    add_format(obstruct);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    bool structured = format == "structured";
    try {
        if (*validate) return cmd_validate(sp_path, structured);
        if (*relations) return cmd_relations(sp_path, k, structured);
        if (*deform) return cmd_deform(sp_path, k, structured);
        if (*pbw) return cmd_pbw_check(theta_path, structured);
        if (*cy) return cmd_cy_check(sp_path, structured);
        if (*mckay) return cmd_mckay(grp_path, rep_mode, structured);
        if (*obstruct) {
            if (grp_path.empty() == sp_path.empty()) {
                std::cerr << "obstruct: give exactly one of --group or --superpotential\n";
                return kInputError;
            }
            return cmd_obstruct(grp_path, sp_path, k, structured);
        }
    } catch (const io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
