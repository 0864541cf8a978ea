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

#ifndef SPFORGE_IO_HPP
#define SPFORGE_IO_HPP

#include <array>
#include <cctype>
#include <fstream>
#include <optional>
#include <tuple>
#include <sstream>
#include <string>
#include <vector>

#include "spforge/groups.hpp"
#include "spforge/superpotential.hpp"

namespace spforge::io {

/// Syntax error with location; the CLI maps these to exit code 2.
class ParseError : public std::runtime_error {
   public:
    ParseError(std::string file, long line, const std::string& expected)
        : std::runtime_error((file.empty() ? std::string("<input>") : file) + ":" +
                             std::to_string(line) + ": expected " + expected),
          file_(std::move(file)),
          line_(line),
          expected_(expected) {}

    const std::string& file() const { return file_; }
    long line() const { return line_; }
    const std::string& expected() const { return expected_; }

   private:
    std::string file_;
    long line_;
    std::string expected_;
};

namespace detail {

struct Lexer {
    std::string text;
    std::size_t pos = 0;
    std::string file;
    long line = 1;

    void skip_space() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (c == '\n') {
                ++line;
                ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos;
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_space();
        return pos >= text.size();
    }

    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        skip_space();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) throw ParseError(file, line, std::string("'") + c + "'");
    }

    static bool ident_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    }
    static bool ident_char(char c) {
        return ident_start(c) || (c >= '0' && c <= '9') || c == '_' || c == '\'' || c == '>' ||
               c == '#';
    }

    std::optional<std::string> try_ident() {
        skip_space();
        if (pos >= text.size() || !ident_start(text[pos])) return std::nullopt;
        std::size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) ++pos;
        return text.substr(start, pos - start);
    }

    std::string expect_ident(const std::string& what) {
        auto id = try_ident();
        if (!id) throw ParseError(file, line, what);
        return *id;
    }

    std::optional<mpz_class> try_integer() {
        skip_space();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == digits) {
            pos = start;
            return std::nullopt;
        }
        return mpz_class(text.substr(start, pos - start));
    }

    mpz_class expect_integer(const std::string& what) {
        auto n = try_integer();
        if (!n) throw ParseError(file, line, what);
        return *n;
    }
};

// Scalar grammar: expr := term (('+'|'-') term)*, term := factor ('*' factor)*,
// factor := '-' factor | NUM['/'NUM] | z(N)['^'k] | '(' expr ')'.
inline Cyclotomic parse_scalar_expr(Lexer& lex);

inline Cyclotomic parse_scalar_factor(Lexer& lex) {
    if (lex.accept('-')) return -parse_scalar_factor(lex);
    if (lex.accept('(')) {
        Cyclotomic v = parse_scalar_expr(lex);
        lex.expect(')');
        return v;
    }
    lex.skip_space();
    if (lex.pos < lex.text.size() && lex.text[lex.pos] == 'z' && lex.pos + 1 < lex.text.size() &&
        lex.text[lex.pos + 1] == '(') {
        lex.pos += 2;
        long order = lex.expect_integer("cyclotomic order").get_si();
        lex.expect(')');
        long k = 1;
        if (lex.accept('^')) k = lex.expect_integer("exponent").get_si();
        if (order < 1) throw ParseError(lex.file, lex.line, "order >= 1 in z(N)");
        return Cyclotomic::zeta(order, k);
    }
    auto num = lex.try_integer();
    if (!num) throw ParseError(lex.file, lex.line, "number, z(N) or '('");
    if (lex.accept('/')) {
        mpz_class den = lex.expect_integer("denominator");
        return Cyclotomic(Rational(*num, den));
    }
    return Cyclotomic(Rational(*num));
}

inline Cyclotomic parse_scalar_term(Lexer& lex) {
    Cyclotomic v = parse_scalar_factor(lex);
    while (lex.accept('*')) v *= parse_scalar_factor(lex);
    return v;
}

inline Cyclotomic parse_scalar_expr(Lexer& lex) {
    Cyclotomic v = parse_scalar_term(lex);
    while (true) {
        if (lex.accept('+'))
            v += parse_scalar_term(lex);
        else if (lex.accept('-'))
            v -= parse_scalar_term(lex);
        else
            break;
    }
    return v;
}

// Path component: arrow name or e(vertex-label).
inline Path parse_path(Lexer& lex, const QuiverPtr& q) {
    std::vector<int> ids;
    std::optional<long> trivial;
    bool first = true;
    while (true) {
        lex.skip_space();
        if (lex.pos + 1 < lex.text.size() && lex.text[lex.pos] == 'e' &&
            lex.text[lex.pos + 1] == '(') {
            lex.pos += 2;
            lex.skip_space();
            std::size_t start = lex.pos;
            while (lex.pos < lex.text.size() && lex.text[lex.pos] != ')') ++lex.pos;
            std::string label = lex.text.substr(start, lex.pos - start);
            while (!label.empty() && (label.back() == ' ' || label.back() == '\t'))
                label.pop_back();
            lex.expect(')');
            auto v = q->vertex_id(label);
            if (!v) throw ParseError(lex.file, lex.line, "known vertex label in e(...)");
            if (!first) throw ParseError(lex.file, lex.line, "trivial path to stand alone");
            trivial = *v;
        } else {
            auto name = lex.try_ident();
            if (!name) {
                if (first) throw ParseError(lex.file, lex.line, "arrow name or e(vertex)");
                break;
            }
            auto id = q->arrow_id(*name);
            if (!id) throw ParseError(lex.file, lex.line, "known arrow name, got '" + *name + "'");
            ids.push_back(*id);
        }
        first = false;
        if (!lex.accept('.')) break;
        if (trivial) throw ParseError(lex.file, lex.line, "no composition after e(...)");
    }
    if (trivial) return Path::trivial(*trivial);
    Path p = Path::word(std::move(ids));
    if (!q->is_valid(p))
        throw ParseError(lex.file, lex.line, "composable path (head/tail mismatch)");
    return p;
}

inline bool at_scalar_start(Lexer& lex) {
    lex.skip_space();
    if (lex.pos >= lex.text.size()) return false;
    char c = lex.text[lex.pos];
    if ((c >= '0' && c <= '9') || c == '(') return true;
    if (c == 'z' && lex.pos + 1 < lex.text.size() && lex.text[lex.pos + 1] == '(') return true;
    return false;
}

// Element term: [scalar '*'] path, where a path may also be e(v).
inline void parse_element_term(Lexer& lex, const QuiverPtr& q, PathAlgebraElement& acc,
                               bool negate) {
    Cyclotomic coeff(Rational(negate ? -1 : 1));
    while (lex.accept('-')) coeff = -coeff;
    if (at_scalar_start(lex)) {
        // single factor; composite coefficients use parentheses
        Cyclotomic s = parse_scalar_factor(lex);
        coeff *= s;
        lex.expect('*');
    }
    Path p = parse_path(lex, q);
    acc.add_term(p, coeff);
}

inline PathAlgebraElement parse_element_expr(Lexer& lex, const QuiverPtr& q) {
    PathAlgebraElement acc(q);
    parse_element_term(lex, q, acc, false);
    while (true) {
        if (lex.accept('+'))
            parse_element_term(lex, q, acc, false);
        else if (lex.accept('-'))
            parse_element_term(lex, q, acc, true);
        else
            break;
    }
    return acc;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string dirname(const std::string& path) {
    auto slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

}  // namespace detail

inline Cyclotomic parse_scalar(const std::string& text) {
    detail::Lexer lex{text, 0, "", 1};
    Cyclotomic v = detail::parse_scalar_expr(lex);
    if (!lex.eof()) throw ParseError("", lex.line, "end of expression");
    return v;
}

inline PathAlgebraElement parse_element(const QuiverPtr& q, const std::string& text) {
    detail::Lexer lex{text, 0, "", 1};
    PathAlgebraElement v = detail::parse_element_expr(lex, q);
    if (!lex.eof()) throw ParseError("", lex.line, "end of expression");
    return v;
}

inline Path parse_path(const QuiverPtr& q, const std::string& text) {
    detail::Lexer lex{text, 0, "", 1};
    Path p = detail::parse_path(lex, q);
    if (!lex.eof()) throw ParseError("", lex.line, "end of path");
    return p;
}

namespace detail {

// quiver { vertex <label> ... arrow <name> <tail> <head> ... }
inline QuiverPtr parse_quiver_block(Lexer& lex) {
    lex.expect('{');
    std::vector<std::string> labels;
    std::vector<Arrow> arrows;
    std::vector<std::array<std::string, 3>> raw_arrows;
    while (!lex.accept('}')) {
        std::string kw = lex.expect_ident("'vertex', 'arrow' or '}'");
        if (kw == "vertex") {
            lex.skip_space();
            std::size_t start = lex.pos;
            while (lex.pos < lex.text.size() && !isspace(lex.text[lex.pos])) ++lex.pos;
            labels.push_back(lex.text.substr(start, lex.pos - start));
        } else if (kw == "arrow") {
            std::string name = lex.expect_ident("arrow name");
            auto grab = [&]() {
                lex.skip_space();
                std::size_t start = lex.pos;
                while (lex.pos < lex.text.size() && !isspace(lex.text[lex.pos])) ++lex.pos;
                return lex.text.substr(start, lex.pos - start);
            };
            std::string tail = grab();
            std::string head = grab();
            raw_arrows.push_back({name, tail, head});
        } else {
            throw ParseError(lex.file, lex.line, "'vertex' or 'arrow', got '" + kw + "'");
        }
    }
    auto vertex_of = [&](const std::string& label) -> long {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return static_cast<long>(i);
        throw ParseError(lex.file, lex.line, "declared vertex label, got '" + label + "'");
    };
    for (const auto& [name, tail, head] : raw_arrows)
        arrows.push_back({name, vertex_of(tail), vertex_of(head)});
    return Quiver::create(labels, arrows);
}

inline Twist parse_twist_block(Lexer& lex, const QuiverPtr& q) {
    lex.expect('{');
    Twist tw = Twist::identity(q);
    while (!lex.accept('}')) {
        std::string kw = lex.expect_ident("'vertex', 'arrow' or '}'");
        if (kw == "vertex") {
            lex.skip_space();
            std::size_t start = lex.pos;
            while (lex.pos < lex.text.size() && !isspace(lex.text[lex.pos]) &&
                   lex.text[lex.pos] != '-')
                ++lex.pos;
            std::string from = lex.text.substr(start, lex.pos - start);
            lex.expect('-');
            lex.expect('>');
            lex.skip_space();
            start = lex.pos;
            while (lex.pos < lex.text.size() && !isspace(lex.text[lex.pos])) ++lex.pos;
            std::string to = lex.text.substr(start, lex.pos - start);
            auto vf = q->vertex_id(from), vt = q->vertex_id(to);
            if (!vf || !vt) throw ParseError(lex.file, lex.line, "known vertex labels in twist");
            tw.vertex_map[*vf] = *vt;
        } else if (kw == "arrow") {
            std::string from = lex.expect_ident("arrow name");
            lex.expect('-');
            lex.expect('>');
            std::string to = lex.expect_ident("arrow name");
            auto af = q->arrow_id(from), at = q->arrow_id(to);
            if (!af || !at) throw ParseError(lex.file, lex.line, "known arrow names in twist");
            tw.arrow_map[*af] = static_cast<int>(*at);
        } else {
            throw ParseError(lex.file, lex.line, "'vertex' or 'arrow' in twist block");
        }
    }
    return tw;
}

}  // namespace detail

/// Standalone quiver file: one `quiver { vertex ... arrow ... }` block.
inline QuiverPtr parse_quiver_file(const std::string& path) {
    detail::Lexer lex{detail::read_file(path), 0, path, 1};
    if (lex.expect_ident("'quiver' header") != "quiver")
        throw ParseError(path, lex.line, "'quiver' header");
    QuiverPtr q = detail::parse_quiver_block(lex);
    if (!lex.eof()) throw ParseError(path, lex.line, "end of file after the quiver block");
    return q;
}

struct SuperpotentialFile {
    QuiverPtr quiver;
    long degree = 0;
    std::optional<Twist> twist;
    bool expand_cyclic = false;
    PathAlgebraElement raw;       // the terms as written
    PathAlgebraElement expanded;  // after cyclic expansion when requested
    bool valid = false;
    std::string failure;          // human-readable reason when not valid
    ConditionReport report;
    std::optional<Superpotential> superpotential;  // present iff valid

    const Superpotential& require() const {
        if (!superpotential)
            throw std::invalid_argument("superpotential file is not valid: " + failure);
        return *superpotential;
    }

    SuperpotentialFile() : raw(dummy_quiver()), expanded(dummy_quiver()) {}

   private:
    static QuiverPtr dummy_quiver() {
        static QuiverPtr q = Quiver::create({"0"}, {{"x", 0, 0}});
        return q;
    }
};

/// Superpotential file: quiver, degree, optional twist table, seed terms with
/// an expand_cyclic flag.
inline SuperpotentialFile parse_superpotential_file(const std::string& path) {
    detail::Lexer lex{detail::read_file(path), 0, path, 1};
    SuperpotentialFile out;
    if (lex.expect_ident("'superpotential' header") != "superpotential")
        throw ParseError(path, lex.line, "'superpotential' header");
    std::optional<long> degree;
    std::optional<PathAlgebraElement> terms;
    while (!lex.eof()) {
        std::string kw = lex.expect_ident("directive");
        if (kw == "degree") {
            degree = lex.expect_integer("degree value").get_si();
        } else if (kw == "quiver") {
            // Either an inline block or `quiver file <relative path>`.
            lex.skip_space();
            if (lex.peek() == '{') {
                out.quiver = detail::parse_quiver_block(lex);
            } else {
                std::string kw2 = lex.expect_ident("'{' or 'file'");
                if (kw2 != "file") throw ParseError(path, lex.line, "'{' or 'file'");
                lex.skip_space();
                std::size_t start = lex.pos;
                while (lex.pos < lex.text.size() && !isspace(lex.text[lex.pos])) ++lex.pos;
                std::string rel = lex.text.substr(start, lex.pos - start);
                std::string qpath =
                    rel.starts_with('/') ? rel : detail::dirname(path) + "/" + rel;
                out.quiver = parse_quiver_file(qpath);
            }
            terms.emplace(out.quiver);
        } else if (kw == "twist") {
            if (!out.quiver) throw ParseError(path, lex.line, "quiver before twist");
            out.twist = detail::parse_twist_block(lex, out.quiver);
        } else if (kw == "expand_cyclic") {
            std::string v = lex.expect_ident("yes or no");
            if (v != "yes" && v != "no") throw ParseError(path, lex.line, "yes or no");
            out.expand_cyclic = v == "yes";
        } else if (kw == "term") {
            if (!out.quiver) throw ParseError(path, lex.line, "quiver before terms");
            detail::parse_element_term(lex, out.quiver, *terms, false);
            while (true) {
                if (lex.accept('+'))
                    detail::parse_element_term(lex, out.quiver, *terms, false);
                else if (lex.accept('-'))
                    detail::parse_element_term(lex, out.quiver, *terms, true);
                else
                    break;
            }
        } else {
            throw ParseError(path, lex.line,
                             "'degree', 'quiver', 'twist', 'expand_cyclic' or 'term'");
        }
    }
    if (!out.quiver) throw ParseError(path, lex.line, "a quiver block");
    if (!degree) throw ParseError(path, lex.line, "a degree directive");
    out.degree = *degree;
    out.raw = *terms;
    try {
        out.expanded = out.expand_cyclic ? cyclic_symmetrize(*terms, *degree) : *terms;
    } catch (const std::invalid_argument& e) {
        out.expanded = *terms;
        out.valid = false;
        out.failure = e.what();
        return out;
    }
    out.report = check_condition(out.expanded, *degree, out.twist);
    if (!out.report.pass) {
        out.failure = out.report.message;
        return out;
    }
    if (out.expanded.homogeneous_part(*degree).is_zero()) {
        out.failure = "degree-" + std::to_string(*degree) + " part is zero";
        return out;
    }
    if (out.expanded.top_degree() > *degree) {
        out.failure = "support above the stated degree";
        return out;
    }
    out.valid = true;
    out.superpotential = Superpotential::make(out.expanded, *degree, out.twist);
    return out;
}

inline std::string serialize_superpotential(const Superpotential& sp) {
    const QuiverPtr& q = sp.quiver();
    std::ostringstream out;
    out << "superpotential\n";
    out << "degree " << sp.degree() << "\n";
    out << "quiver {\n";
    for (const auto& label : q->vertex_labels()) out << "  vertex " << label << "\n";
    for (const auto& a : q->arrows())
        out << "  arrow " << a.name << " " << q->vertex_labels()[a.tail] << " "
            << q->vertex_labels()[a.head] << "\n";
    out << "}\n";
    if (sp.twist() && !sp.twist()->is_identity()) {
        out << "twist {\n";
        for (long v = 0; v < q->vertex_count(); ++v)
            out << "  vertex " << q->vertex_labels()[v] << " -> "
                << q->vertex_labels()[sp.twist()->vertex_map[v]] << "\n";
        for (int a = 0; a < q->arrow_count(); ++a)
            out << "  arrow " << q->arrow(a).name << " -> "
                << q->arrow(sp.twist()->arrow_map[a]).name << "\n";
        out << "}\n";
    }
    out << "expand_cyclic no\n";
    for (const auto& [p, c] : sp.element().terms()) {
        std::string cs = c.to_string();
        bool composite = cs.find(' ') != std::string::npos;
        out << "term " << (composite ? "(" + cs + ")" : cs) << " * " << q->path_to_string(p)
            << "\n";
    }
    return out.str();
}

struct GroupFile {
    std::optional<long> order_hint;  // ambient cyclotomic order, informational
    long dimension = 0;
    std::vector<CycMatrix> generators;
    std::map<std::string, std::string> aliases;
    std::optional<long> bound;
};

/// Group file: cyclotomic order, dimension, generator matrices in the scalar
/// literal syntax, optional McKay arrow aliases and closure bound.
inline GroupFile parse_group_file(const std::string& path) {
    detail::Lexer lex{detail::read_file(path), 0, path, 1};
    GroupFile out;
    if (lex.expect_ident("'group' header") != "group")
        throw ParseError(path, lex.line, "'group' header");
    while (!lex.eof()) {
        std::string kw = lex.expect_ident("directive");
        if (kw == "order") {
            out.order_hint = lex.expect_integer("order").get_si();
        } else if (kw == "dimension") {
            out.dimension = lex.expect_integer("dimension").get_si();
        } else if (kw == "bound") {
            out.bound = lex.expect_integer("bound").get_si();
        } else if (kw == "alias") {
            auto grab = [&]() {
                lex.skip_space();
                std::size_t start = lex.pos;
                while (lex.pos < lex.text.size() && !isspace(lex.text[lex.pos])) ++lex.pos;
                if (start == lex.pos) throw ParseError(path, lex.line, "alias token");
                return lex.text.substr(start, lex.pos - start);
            };
            std::string from = grab();
            std::string to = grab();
            out.aliases[from] = to;
        } else if (kw == "generator") {
            if (out.dimension <= 0) throw ParseError(path, lex.line, "dimension before generators");
            lex.expect('[');
            CycMatrix m(out.dimension);
            for (long r = 0; r < out.dimension; ++r) {
                for (long c = 0; c < out.dimension; ++c) {
                    m.at(r, c) = detail::parse_scalar_expr(lex);
                    if (c + 1 < out.dimension) lex.expect(',');
                }
                if (r + 1 < out.dimension) lex.expect(';');
            }
            lex.expect(']');
            out.generators.push_back(std::move(m));
        } else {
            throw ParseError(path, lex.line,
                             "'order', 'dimension', 'generator', 'alias' or 'bound'");
        }
    }
    if (out.generators.empty()) throw ParseError(path, lex.line, "at least one generator");
    return out;
}

inline std::string serialize_group(const GroupFile& g) {
    std::ostringstream out;
    out << "group\n";
    if (g.order_hint) out << "order " << *g.order_hint << "\n";
    out << "dimension " << g.dimension << "\n";
    for (const auto& m : g.generators) {
        out << "generator [ ";
        for (long r = 0; r < g.dimension; ++r) {
            for (long c = 0; c < g.dimension; ++c) {
                out << m.at(r, c).to_string();
                if (c + 1 < g.dimension) out << ", ";
            }
            if (r + 1 < g.dimension) out << " ; ";
        }
        out << " ]\n";
    }
    for (const auto& [from, to] : g.aliases) out << "alias " << from << " " << to << "\n";
    if (g.bound) out << "bound " << *g.bound << "\n";
    return out.str();
}

struct ThetaFile {
    std::string superpotential_path;  // resolved relative to the theta file
    long k = 0;
    // (degree j, generator path as text) -> image expression text
    std::vector<std::tuple<long, std::string, std::string>> assignments;
};

/// Theta file: reference superpotential, differentiation length k, and image
/// assignments `map <j> <path> -> <element expr>`; unassigned images are zero.
inline ThetaFile parse_theta_file(const std::string& path) {
    detail::Lexer lex{detail::read_file(path), 0, path, 1};
    ThetaFile out;
    if (lex.expect_ident("'theta' header") != "theta")
        throw ParseError(path, lex.line, "'theta' header");
    bool have_k = false;
    while (!lex.eof()) {
        std::string kw = lex.expect_ident("directive");
        if (kw == "superpotential") {
            lex.skip_space();
            std::size_t start = lex.pos;
            while (lex.pos < lex.text.size() && !isspace(lex.text[lex.pos])) ++lex.pos;
            std::string rel = lex.text.substr(start, lex.pos - start);
            out.superpotential_path =
                rel.starts_with('/') ? rel : detail::dirname(path) + "/" + rel;
        } else if (kw == "k") {
            out.k = lex.expect_integer("k").get_si();
            have_k = true;
        } else if (kw == "map") {
            long j = lex.expect_integer("degree index").get_si();
            lex.skip_space();
            std::size_t start = lex.pos;
            while (lex.pos < lex.text.size() && !isspace(lex.text[lex.pos])) ++lex.pos;
            std::string pathword = lex.text.substr(start, lex.pos - start);
            lex.expect('-');
            lex.expect('>');
            lex.skip_space();
            start = lex.pos;
            while (lex.pos < lex.text.size() && lex.text[lex.pos] != '\n') ++lex.pos;
            out.assignments.emplace_back(j, pathword, lex.text.substr(start, lex.pos - start));
        } else {
            throw ParseError(path, lex.line, "'superpotential', 'k' or 'map'");
        }
    }
    if (out.superpotential_path.empty())
        throw ParseError(path, lex.line, "a superpotential reference");
    if (!have_k) throw ParseError(path, lex.line, "a k directive");
    return out;
}

}  // namespace spforge::io

#endif  // SPFORGE_IO_HPP
