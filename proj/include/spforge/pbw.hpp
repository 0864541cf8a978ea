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

#ifndef SPFORGE_PBW_HPP
#define SPFORGE_PBW_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spforge/superpotential.hpp"

namespace spforge {

/// K_i of the Koszul (N)-complex: the exact intersection of all
/// V^j (x) R (x) V^k with j + N + k = i, inside the length-i word space.
/// For 0 < i < N this is the full word space and K_0 is the span of the
/// trivial paths.
inline Subspace koszul_intersection(const QuiverPtr& q, const Subspace& relations, long big_n,
                                    long i) {
    if (i < 0) throw std::invalid_argument("koszul_intersection: negative degree");
    PathBasis target = PathBasis::of_length(q, i);
    if (i < big_n) {
        std::vector<SparseVector> all;
        for (long c = 0; c < target.size(); ++c) {
            SparseVector v;
            sv_set(v, c, Cyclotomic(Rational(1)));
            all.push_back(std::move(v));
        }
        return Subspace::from_vectors(target.size(), all);
    }
    PathBasis rel_basis = PathBasis::of_length(q, big_n);
    std::optional<Subspace> acc;
    for (long left = 0; left + big_n <= i; ++left) {
        long right = i - big_n - left;
        std::vector<SparseVector> span;
        for (const auto& rvec : relations.basis()) {
            PathAlgebraElement r = rel_basis.element(rvec);
            for (const Path& u : enumerate_paths(q, left)) {
                PathAlgebraElement ur = monomial(q, u) * r;
                if (ur.is_zero()) continue;
                for (const Path& v : enumerate_paths(q, right)) {
                    PathAlgebraElement urv = ur * monomial(q, v);
                    if (!urv.is_zero()) span.push_back(target.coords(urv));
                }
            }
        }
        Subspace layer = Subspace::from_vectors(target.size(), span);
        acc = acc ? intersect(*acc, layer) : layer;
    }
    return acc ? *acc : Subspace(target.size());
}

/// The relation module R = W_N = span{ delta_p Phi_n : |p| = k } in length-N
/// path coordinates.
inline Subspace relation_subspace(const Superpotential& sp, long k) {
    return relation_space(sp, sp.degree() - k);
}

/// A degree-lowering S^e-map theta = theta_{N-1} + ... + theta_0 on R, given
/// by linear assignments on the generators delta_p Phi_n with |p| = k.
/// Well-definedness on R is what PBW1 decides; construction only enforces the
/// block (head/tail) compatibility that S^e-linearity requires.
class ThetaMap {
   public:
    static ThetaMap make(const Superpotential& base, long k,
                         const std::map<std::pair<long, Path>, PathAlgebraElement>& assignments) {
        ThetaMap t(base, k);
        for (const auto& [key, img] : assignments) {
            const auto& [j, p] = key;
            if (j < 0 || j >= t.big_n_)
                throw std::invalid_argument("ThetaMap: degree index out of range");
            auto it = t.gen_index_.find(p);
            if (it == t.gen_index_.end())
                throw std::invalid_argument("ThetaMap: unknown generator path");
            const QuiverPtr& q = base.quiver();
            for (const auto& [s, c] : img.terms()) {
                (void)c;
                if (s.length() != j)
                    throw std::invalid_argument("ThetaMap: theta_" + std::to_string(j) +
                                                " image has wrong degree");
                if (q->head(s) != q->tail(p) || q->tail(s) != q->head(p))
                    throw std::invalid_argument(
                        "ThetaMap: image breaks head/tail preservation at generator " +
                        q->path_to_string(p));
            }
            t.images_[j][it->second] = t.basis(j).coords(img);
        }
        return t;
    }

    static ThetaMap zero(const Superpotential& base, long k) { return ThetaMap(base, k); }

    const Superpotential& base() const { return base_; }
    long k() const { return k_; }
    long big_n() const { return big_n_; }
    const std::vector<Path>& generator_paths() const { return gens_.paths; }
    const PathAlgebraElement& generator_value(std::size_t i) const { return gens_.images[i]; }

    const PathBasis& basis(long len) const {
        // Precomputed for 0..N+1; immutable afterwards, safe to share.
        return bases_->at(len);
    }

    const SparseVector& image(long j, std::size_t gen) const { return images_.at(j).at(gen); }
    PathAlgebraElement image_element(long j, std::size_t gen) const {
        return basis(j).element(images_.at(j).at(gen));
    }

    const Subspace& relation_span() const { return relation_span_; }
    const SparseMatrix& generator_matrix() const { return genmat_; }

    /// Linear relations among the generators: nullspace basis of the
    /// generator matrix, as coefficient vectors over generator paths.
    std::vector<SparseVector> generator_relations() const {
        return nullspace(genmat_).basis();
    }

    /// theta_j evaluated on an arbitrary element of R via a presentation in
    /// the generators. Nullopt when the element is not in R.
    std::optional<PathAlgebraElement> apply(long j, const PathAlgebraElement& r) const {
        auto lambda = solve(genmat_, basis(big_n_).coords(r));
        if (!lambda) return std::nullopt;
        SparseVector acc;
        for (const auto& [gen, coeff] : *lambda) sv_axpy(acc, coeff, images_.at(j).at(gen));
        return basis(j).element(acc);
    }

   private:
    ThetaMap(const Superpotential& base, long k)
        : base_(base), k_(k), big_n_(base.degree() - k), bases_(std::make_shared<BasisCache>()) {
        if (k < 0 || big_n_ <= 0) throw std::invalid_argument("ThetaMap: need 0 <= k < degree");
        for (long len = 0; len <= big_n_ + 1; ++len)
            bases_->emplace(len, PathBasis::of_length(base.quiver(), len));
        PathAlgebraElement top = base.top_part();
        gens_.k = k;
        gens_.paths = enumerate_paths(base.quiver(), k);
        for (const Path& p : gens_.paths) {
            gen_index_.emplace(p, gens_.images.size());
            PathAlgebraElement img = left_derivative(p, top);
            if (img.is_zero()) gens_.zero_indices.push_back(gens_.images.size());
            gens_.images.push_back(std::move(img));
        }
        const PathBasis& bn = basis(big_n_);
        std::vector<SparseVector> cols;
        for (const auto& img : gens_.images) cols.push_back(bn.coords(img));
        genmat_ = SparseMatrix::from_columns(bn.size(), cols);
        relation_span_ = Subspace::from_vectors(bn.size(), cols);
        images_.resize(big_n_);
        for (long j = 0; j < big_n_; ++j)
            images_[j].assign(gens_.paths.size(), SparseVector{});
    }

    using BasisCache = std::map<long, PathBasis>;

    Superpotential base_;
    long k_;
    long big_n_;
    RelationGenerators gens_;
    std::map<Path, std::size_t> gen_index_;
    std::vector<std::vector<SparseVector>> images_;
    SparseMatrix genmat_{0, 0};
    Subspace relation_span_{0};
    std::shared_ptr<BasisCache> bases_;
};

/// One spanning element of W_{N+1} together with its psi image.
struct PsiImage {
    std::optional<Path> domain_path;  // |p| = k-1 when k >= 1
    SparseVector image;               // length-(j+1) path coordinates
};

/// psi(theta_j) = id (x) theta_j - theta_j (x) id on W_{N+1}. For k >= 1 the
/// domain is spanned by delta_p Phi with |p| = k-1; for k = 0 the Koszul
/// intersection basis of K_{N+1} is used directly.
inline std::vector<PsiImage> psi(const ThetaMap& theta, long j) {
    const Superpotential& sp = theta.base();
    const QuiverPtr& q = sp.quiver();
    long big_n = theta.big_n();
    if (j < 0 || j >= big_n) throw std::invalid_argument("psi: degree index out of range");
    PathAlgebraElement top = sp.top_part();

    std::vector<std::pair<std::optional<Path>, PathAlgebraElement>> domain;
    if (theta.k() >= 1) {
        for (const Path& p : enumerate_paths(q, theta.k() - 1))
            domain.emplace_back(p, left_derivative(p, top));
    } else {
        Subspace k_next = koszul_intersection(q, theta.relation_span(), big_n, big_n + 1);
        const PathBasis& bsp = theta.basis(big_n + 1);
        for (const auto& w : k_next.basis()) domain.emplace_back(std::nullopt, bsp.element(w));
    }

    const PathBasis& out_basis = theta.basis(j + 1);
    std::vector<PsiImage> out;
    for (const auto& [label, w] : domain) {
        PathAlgebraElement acc(q);
        for (int a = 0; a < q->arrow_count(); ++a) {
            Path ap = Path::word({a});
            PathAlgebraElement wa = left_derivative(ap, w);
            if (!wa.is_zero()) {
                auto t = theta.apply(j, wa);
                if (!t)
                    throw std::domain_error("psi: left strip of the domain element is not in R");
                acc = acc + monomial(q, ap) * *t;
            }
            PathAlgebraElement aw = right_derivative(w, ap);
            if (!aw.is_zero()) {
                auto t = theta.apply(j, aw);
                if (!t)
                    throw std::domain_error("psi: right strip of the domain element is not in R");
                acc = acc - *t * monomial(q, ap);
            }
        }
        out.push_back(PsiImage{label, out_basis.coords(acc)});
    }
    return out;
}

struct ConditionOutcome {
    bool pass = true;
    std::vector<std::string> witnesses;
};

struct PbwReport {
    ConditionOutcome pbw1, pbw2, pbw3, pbw4;
    bool all_pass() const { return pbw1.pass && pbw2.pass && pbw3.pass && pbw4.pass; }
};

struct ZeroPbwReport {
    ConditionOutcome pbw1, zpbw;
    bool all_pass() const { return pbw1.pass && zpbw.pass; }
};

namespace detail {

inline std::string lambda_to_string(const ThetaMap& theta, const SparseVector& lambda) {
    const QuiverPtr& q = theta.base().quiver();
    std::string s;
    for (const auto& [i, c] : lambda) {
        if (!s.empty()) s += " + ";
        s += c.to_string() + "*[" + q->path_to_string(theta.generator_paths().at(i)) + "]";
    }
    return s.empty() ? "0" : s;
}

/// PBW1: every linear relation among the generators kills all theta images,
/// i.e. P meets F^{N-1} only in 0.
inline ConditionOutcome check_pbw1(const ThetaMap& theta) {
    ConditionOutcome out;
    for (const auto& lambda : theta.generator_relations()) {
        for (long j = 0; j < theta.big_n(); ++j) {
            SparseVector acc;
            for (const auto& [gen, coeff] : lambda) sv_axpy(acc, coeff, theta.image(j, gen));
            if (!sv_is_zero(acc)) {
                out.pass = false;
                out.witnesses.push_back("relation " + lambda_to_string(theta, lambda) +
                                        " has nonzero theta_" + std::to_string(j) + " image " +
                                        theta.basis(j).element(acc).to_string());
            }
        }
    }
    return out;
}

inline std::string domain_label(const ThetaMap& theta, const PsiImage& im, std::size_t idx) {
    if (im.domain_path) return theta.base().quiver()->path_to_string(*im.domain_path);
    return "K-basis[" + std::to_string(idx) + "]";
}

}  // namespace detail

/// The four PBW-type conditions, each reported with witnesses on failure.
inline PbwReport check_pbw(const ThetaMap& theta) {
    PbwReport rep;
    rep.pbw1 = detail::check_pbw1(theta);
    long big_n = theta.big_n();
    auto psi_top = psi(theta, big_n - 1);

    for (std::size_t i = 0; i < psi_top.size(); ++i) {
        if (!theta.relation_span().contains(psi_top[i].image)) {
            rep.pbw2.pass = false;
            rep.pbw2.witnesses.push_back(
                "psi(theta_" + std::to_string(big_n - 1) + ") image of " +
                detail::domain_label(theta, psi_top[i], i) + " leaves R: " +
                theta.basis(big_n).element(psi_top[i].image).to_string());
        }
    }

    for (long j = 1; j < big_n; ++j) {
        auto psi_lower = psi(theta, j - 1);
        for (std::size_t i = 0; i < psi_top.size(); ++i) {
            if (!rep.pbw2.pass) {
                rep.pbw3.pass = false;
                rep.pbw3.witnesses.push_back("not evaluable: PBW2 failed");
                break;
            }
            auto t = theta.apply(j, theta.basis(big_n).element(psi_top[i].image));
            PathAlgebraElement total = *t + theta.basis(j).element(psi_lower[i].image);
            if (!total.is_zero()) {
                rep.pbw3.pass = false;
                rep.pbw3.witnesses.push_back("theta_" + std::to_string(j) + "(psi(theta_" +
                                             std::to_string(big_n - 1) + ")) + psi(theta_" +
                                             std::to_string(j - 1) + ") at " +
                                             detail::domain_label(theta, psi_top[i], i) + " = " +
                                             total.to_string());
            }
        }
        if (!rep.pbw2.pass) break;
    }

    for (std::size_t i = 0; i < psi_top.size(); ++i) {
        if (!rep.pbw2.pass) {
            rep.pbw4.pass = false;
            rep.pbw4.witnesses.push_back("not evaluable: PBW2 failed");
            break;
        }
        auto t = theta.apply(0, theta.basis(big_n).element(psi_top[i].image));
        if (!t->is_zero()) {
            rep.pbw4.pass = false;
            rep.pbw4.witnesses.push_back("theta_0(psi(theta_" + std::to_string(big_n - 1) +
                                         ")) at " + detail::domain_label(theta, psi_top[i], i) +
                                         " = " + t->to_string());
        }
    }
    return rep;
}

/// zeroPBW: PBW1 plus Im psi(theta_j) = {0} for every j.
inline ZeroPbwReport check_zero_pbw(const ThetaMap& theta) {
    ZeroPbwReport rep;
    rep.pbw1 = detail::check_pbw1(theta);
    for (long j = 0; j < theta.big_n(); ++j) {
        auto images = psi(theta, j);
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (!sv_is_zero(images[i].image)) {
                rep.zpbw.pass = false;
                rep.zpbw.witnesses.push_back(
                    "psi(theta_" + std::to_string(j) + ") at " +
                    detail::domain_label(theta, images[i], i) + " = " +
                    theta.basis(j + 1).element(images[i].image).to_string());
            }
        }
    }
    return rep;
}

struct CoherenceReport {
    bool pass = true;
    std::vector<Path> generator_paths;
    std::optional<SparseVector> witness;  // lambda over generator paths
    std::string message;
};

/// k-coherence: every linear relation among the delta_p Phi_n also kills the
/// full derivatives delta_p Phi'.
inline CoherenceReport check_coherence(const Superpotential& phi_prime, long k) {
    const QuiverPtr& q = phi_prime.quiver();
    CoherenceReport rep;
    rep.generator_paths = enumerate_paths(q, k);
    PathAlgebraElement top = phi_prime.top_part();
    long big_n = phi_prime.degree() - k;
    PathBasis bn = PathBasis::of_length(q, big_n);
    std::vector<SparseVector> cols;
    for (const Path& p : rep.generator_paths) cols.push_back(bn.coords(left_derivative(p, top)));
    SparseMatrix genmat = SparseMatrix::from_columns(bn.size(), cols);
    Subspace relations = nullspace(genmat);
    for (const auto& lambda : relations.basis()) {
        PathAlgebraElement acc(q);
        for (const auto& [i, c] : lambda)
            acc = acc + left_derivative(rep.generator_paths.at(i), phi_prime.element()).scaled(c);
        if (!acc.is_zero()) {
            rep.pass = false;
            rep.witness = lambda;
            std::string ls;
            for (const auto& [i, c] : lambda) {
                if (!ls.empty()) ls += " + ";
                ls += c.to_string() + "*[" + q->path_to_string(rep.generator_paths.at(i)) + "]";
            }
            rep.message = "relation " + ls + " maps to nonzero " + acc.to_string();
            return rep;
        }
    }
    return rep;
}

/// Basis and dimension of the space of k-coherent lower-term coefficient
/// vectors over Phi_n: the zeroPBW parameter space. Its deformation-theoretic
/// reading assumes the base algebra is (n-k)-Koszul and (k+2)-CY, which is
/// not verified here.
struct DeformationSpace {
    Superpotential base;
    long k = 0;
    std::vector<Path> unknowns;  // degree descending, then lexicographic
    Subspace solution;
    long dimension = 0;
    std::string hypotheses_note;

    PathAlgebraElement vector_to_element(const SparseVector& v) const {
        PathAlgebraElement e(base.quiver());
        for (const auto& [i, c] : v) e.add_term(unknowns.at(i), c);
        return e;
    }

    Superpotential assemble(const SparseVector& v) const {
        PathAlgebraElement e = base.element() + vector_to_element(v);
        return Superpotential::make(e, base.degree(), base.twist());
    }

    std::vector<Superpotential> basis_deformations() const {
        std::vector<Superpotential> out;
        for (const auto& v : solution.basis()) out.push_back(assemble(v));
        return out;
    }

    DeformationSpace() : base(dummy()), solution(0) {}

   private:
    static Superpotential dummy() {
        auto q = Quiver::create({"0"}, {{"x", 0, 0}});
        PathAlgebraElement e(q);
        e.add_term(Path::word({0}), Cyclotomic(Rational(1)));
        return Superpotential::make(e, 1);
    }
};

inline DeformationSpace deformation_space(const Superpotential& phi_n, long k) {
    const QuiverPtr& q = phi_n.quiver();
    long n = phi_n.degree();
    if (k < 0 || k >= n) throw std::invalid_argument("deformation_space: need 0 <= k < degree");
    const std::optional<Twist>& tw = phi_n.twist();

    DeformationSpace ds;
    ds.base = phi_n;
    ds.k = k;
    ds.hypotheses_note =
        "zeroPBW parameter space; the interpretation assumes the base algebra is (n-k)-Koszul "
        "and (k+2)-CY, which is not verified here";

    // Unknowns: candidate monomial coefficients, degree descending then lex.
    std::map<Path, long> unknown_index;
    for (long m = n - 1; m >= k; --m) {
        for (const Path& s : enumerate_paths(q, m)) {
            long head = q->head(s), tail = q->tail(s);
            long expected = tw ? tw->vertex_map[tail] : tail;
            if (head != expected) continue;
            unknown_index.emplace(s, static_cast<long>(ds.unknowns.size()));
            ds.unknowns.push_back(s);
        }
    }
    long ucount = static_cast<long>(ds.unknowns.size());

    std::vector<SparseVector> rows;
    Cyclotomic sign = detail::condition_sign(n);

    // (i) n-superpotential condition per degree: c_s - sign * c_partner = 0.
    for (long ui = 0; ui < ucount; ++ui) {
        const Path& s = ds.unknowns[ui];
        if (s.length() == 0) continue;
        int head_arrow = s.arrows().front();
        int a = tw ? tw->inverse_arrow(head_arrow) : head_arrow;
        auto rest = q->strip_prefix(s, Path::word({head_arrow}));
        auto partner = q->compose(*rest, Path::word({a}));
        SparseVector row;
        sv_add_to(row, ui, Cyclotomic(Rational(1)));
        if (partner) {
            auto it = unknown_index.find(*partner);
            if (it != unknown_index.end()) sv_add_to(row, it->second, -sign);
            // partner outside the support set means its coefficient is 0
        }
        if (!sv_is_zero(row)) rows.push_back(std::move(row));
    }

    // (ii) coherence: each relation among the top derivatives must kill every
    // lower degree, coordinatewise over the stripped paths t.
    std::vector<Path> gen_paths = enumerate_paths(q, k);
    PathAlgebraElement top = phi_n.top_part();
    PathBasis bn = PathBasis::of_length(q, n - k);
    std::vector<SparseVector> cols;
    for (const Path& p : gen_paths) cols.push_back(bn.coords(left_derivative(p, top)));
    SparseMatrix genmat = SparseMatrix::from_columns(bn.size(), cols);
    Subspace gen_relations = nullspace(genmat);
    for (const auto& lambda : gen_relations.basis()) {
        for (long lt = 0; lt < n - k; ++lt) {
            for (const Path& t : enumerate_paths(q, lt)) {
                SparseVector row;
                for (const auto& [pi, coeff] : lambda) {
                    auto s = q->compose(gen_paths.at(pi), t);
                    if (!s) continue;
                    auto it = unknown_index.find(*s);
                    if (it != unknown_index.end()) sv_add_to(row, it->second, coeff);
                }
                if (!sv_is_zero(row)) rows.push_back(std::move(row));
            }
        }
    }

    SparseMatrix constraints = SparseMatrix::from_rows(ucount, rows);
    ds.solution = nullspace(constraints);
    ds.dimension = ds.solution.dim();
    return ds;
}

/// The map G of the correspondence: theta_j(delta_p Phi_n) = -delta_p phi_{j+k}.
inline ThetaMap theta_from_superpotential(const Superpotential& phi_prime, long k) {
    CoherenceReport coh = check_coherence(phi_prime, k);
    if (!coh.pass)
        throw std::invalid_argument("theta_from_superpotential: not k-coherent: " + coh.message);
    Superpotential base = Superpotential::make(phi_prime.top_part(), phi_prime.degree(),
                                               phi_prime.twist());
    std::map<std::pair<long, Path>, PathAlgebraElement> assignments;
    long n = phi_prime.degree();
    for (const Path& p : enumerate_paths(phi_prime.quiver(), k)) {
        for (long j = 0; j < n - k; ++j) {
            PathAlgebraElement img = -left_derivative(p, phi_prime.lower_part(j + k));
            if (!img.is_zero()) assignments.insert({{j, p}, img});
        }
    }
    return ThetaMap::make(base, k, assignments);
}

struct SuperpotentialFromTheta {
    PathAlgebraElement element;
    bool is_superpotential = false;
    std::optional<Superpotential> validated;
};

/// The map F: phi_{k+j} := - sum_{|p|=k} p theta_j(delta_p Phi_n). The result
/// is a superpotential exactly when theta is zeroPBW; otherwise the element is
/// returned with the flag cleared.
inline SuperpotentialFromTheta superpotential_from_theta(const ThetaMap& theta) {
    const Superpotential& base = theta.base();
    const QuiverPtr& q = base.quiver();
    SuperpotentialFromTheta out{PathAlgebraElement(q), false, std::nullopt};
    PathAlgebraElement total = base.element();
    for (long j = 0; j < theta.big_n(); ++j) {
        PathAlgebraElement phi_part(q);
        for (std::size_t g = 0; g < theta.generator_paths().size(); ++g) {
            PathAlgebraElement img = theta.image_element(j, g);
            if (!img.is_zero())
                phi_part = phi_part - monomial(q, theta.generator_paths()[g]) * img;
        }
        total = total + phi_part;
    }
    out.element = total;
    ConditionReport rep = check_condition(total, base.degree(), base.twist());
    out.is_superpotential = rep.pass;
    if (rep.pass)
        out.validated = Superpotential::make(total, base.degree(), base.twist());
    return out;
}

struct WzReport {
    bool vanishes = false;
    bool forms_agree = false;
    SparseVector tensor_form;   // length-(n-1) path coordinates
    SparseVector coeff_form;
};

/// Wu-Zhu criterion on a one-vertex quiver: the alternating sum
/// sum_i (-1)^i id^i (x) theta_1 (x) id^(n-2-i) applied to Phi_n, evaluated
/// both directly and through the coefficient cyclic-sum form.
inline WzReport check_wz(const ThetaMap& theta) {
    const Superpotential& sp = theta.base();
    const QuiverPtr& q = sp.quiver();
    if (q->vertex_count() != 1)
        throw std::invalid_argument("check_wz: quiver must have exactly one vertex");
    long n = sp.degree();
    if (theta.k() != n - 2)
        throw std::invalid_argument("check_wz: theta must differentiate by length n-2");
    PathAlgebraElement top = sp.top_part();
    PathBasis out_basis = PathBasis::of_length(q, n - 1);

    WzReport rep;
    // Tensor form.
    PathAlgebraElement acc(q);
    for (long i = 0; i <= n - 2; ++i) {
        Cyclotomic sgn(Rational(i % 2 == 0 ? 1 : -1));
        for (const Path& u : enumerate_paths(q, i)) {
            PathAlgebraElement du = left_derivative(u, top);
            if (du.is_zero()) continue;
            for (const Path& v : enumerate_paths(q, n - 2 - i)) {
                PathAlgebraElement w = right_derivative(du, v);
                if (w.is_zero()) continue;
                auto t = theta.apply(1, w);
                if (!t) throw std::domain_error("check_wz: window is not in R");
                acc = acc + (monomial(q, u) * *t * monomial(q, v)).scaled(sgn);
            }
        }
    }
    rep.tensor_form = out_basis.coords(acc);

    // Coefficient cyclic-sum form over phi_{n-1} = sum_p p theta_1(delta_p Phi).
    PathAlgebraElement phi_n1(q);
    for (std::size_t g = 0; g < theta.generator_paths().size(); ++g)
        phi_n1 = phi_n1 + monomial(q, theta.generator_paths()[g]) * theta.image_element(1, g);
    PathAlgebraElement coeff_acc(q);
    for (const Path& w : out_basis.paths) {
        Cyclotomic val;
        for (long i = 0; i <= n - 2; ++i) {
            // left-rotate the word by i+1
            std::vector<int> word = w.arrows();
            std::rotate(word.begin(), word.begin() + ((i + 1) % (n - 1)), word.end());
            Cyclotomic sgn(Rational((i * n) % 2 == 0 ? 1 : -1));
            val += sgn * phi_n1.coeff(Path::word(word));
        }
        if (!val.is_zero()) coeff_acc.add_term(w, val);
    }
    rep.coeff_form = out_basis.coords(coeff_acc);

    rep.forms_agree = sv_equal(rep.tensor_form, rep.coeff_form);
    rep.vanishes = sv_is_zero(rep.tensor_form);
    return rep;
}

}  // namespace spforge

#endif  // SPFORGE_PBW_HPP
