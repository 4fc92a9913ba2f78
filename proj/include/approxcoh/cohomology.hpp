#pragma once

// Coboundaries, rank defects and the approximate cocycle / coboundary predicates.
//
// Differential: d = -R o dbar o R, where R reverses the argument order and dbar is the bar differential
//   (dbar c)(g_1..g_{n+1}) = g_1.c(g_2..) + sum_i (-1)^i c(.., g_i + g_{i+1}, ..) + (-1)^{n+1} c(g_1..g_n).
// For n = 1 this is  c(g+g') - g'.c(g) - c(g').

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "cochain.hpp"
#include "multilinear.hpp"
#include "rank.hpp"

namespace approxcoh {

enum class Verdict { yes, no, indeterminate };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "true";
        case Verdict::no: return "false";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

/// A_d: homogeneous degree-d values, rank with homogeneous factors. B_d: values in P^d, any positive-degree factors.
struct Filtration {
    enum class Kind { A, B };
    Kind kind = Kind::A;
    unsigned d = 2;

    RankKind rank_kind() const noexcept { return kind == Kind::A ? RankKind::homogeneous : RankKind::inhomogeneous; }
    /// Level n holds the polynomials of rank < n.
    static unsigned levels_for_rank(unsigned r) noexcept { return r + 1; }
    /// c(i, j) with M_i + M_j inside M_{c(i,j)}.
    static unsigned sum_level(unsigned i, unsigned j) noexcept { return i + j; }
};

inline const char* to_string(Filtration::Kind k) { return k == Filtration::Kind::A ? "Ad" : "Bd"; }

/// Rank brackets cached by canonical polynomial and rank kind.
class RankCache {
   public:
    explicit RankCache(RankOptions opt = {}) : opt_(std::move(opt)) {}

    const RankResult& get(const Poly& P, RankKind kind) {
        auto key = std::make_pair(static_cast<int>(kind), P);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        RankOptions o = opt_;
        o.kind = kind;
        return cache_.emplace(std::move(key), rank(P, o)).first->second;
    }
    std::size_t size() const noexcept { return cache_.size(); }
    const RankOptions& options() const noexcept { return opt_; }

   private:
    RankOptions opt_;
    std::map<std::pair<int, Poly>, RankResult> cache_;
};

namespace detail {

inline Cochain reversed(const Cochain& c) {
    if (c.degree() <= 1) return c;
    std::vector<Poly> vals;
    vals.reserve(c.size());
    for (std::uint64_t idx = 0; idx < c.size(); ++idx) {
        auto t = c.decode(idx);
        std::reverse(t.begin(), t.end());
        vals.push_back(c.at(t));
    }
    return Cochain(c.group(), c.degree(), c.action(), std::move(vals));
}

}  // namespace detail

/// The bar differential dbar.
inline Cochain bar_coboundary(const Cochain& c) {
    const auto& G = c.group();
    const PointSpace space = G.space();
    const unsigned n = c.degree();
    const std::uint64_t total = checked_pow(G.size(), n + 1);
    std::vector<Poly> vals;
    vals.reserve(total);
    std::vector<std::uint64_t> g(n + 1), arg(n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        for (unsigned i = n + 1; i-- > 0;) {
            g[i] = rest % G.size();
            rest /= G.size();
        }
        for (unsigned i = 0; i < n; ++i) arg[i] = g[i + 1];
        Poly v = c.act(g[0], c.at(arg));
        for (unsigned i = 0; i < n; ++i) {
            // merge g_i and g_{i+1}
            for (unsigned j = 0, t = 0; j <= n; ++j) {
                if (j == i + 1) continue;
                arg[t++] = j == i ? space.add(g[i], g[i + 1]) : g[j];
            }
            if (i % 2 == 0)
                v -= c.at(arg);
            else
                v += c.at(arg);
        }
        for (unsigned i = 0; i < n; ++i) arg[i] = g[i];
        if (n % 2 == 0)
            v -= c.at(arg);
        else
            v += c.at(arg);
        vals.push_back(std::move(v));
    }
    return Cochain(G, n + 1, c.action(), std::move(vals));
}

/// d = -R o dbar o R; for 1-cochains (d c)(g, g') = c(g + g') - g'.c(g) - c(g').
inline Cochain coboundary(const Cochain& c) { return -detail::reversed(bar_coboundary(detail::reversed(c))); }

struct DefectReport {
    unsigned max_rank_upper = 0;
    unsigned max_rank_lower = 0;
    std::vector<std::uint64_t> argmax;
    /// (lower, upper) bracket -> number of argument tuples.
    std::map<std::pair<unsigned, unsigned>, std::uint64_t> histogram;
    std::uint64_t tuples = 0;
};

/// Rank brackets of every value of d A.
inline DefectReport defect(const Cochain& A, const Filtration& f, RankCache& cache) {
    const Cochain dA = coboundary(A);
    DefectReport rep;
    bool first = true;
    for (std::uint64_t idx = 0; idx < dA.size(); ++idx) {
        const auto& r = cache.get(dA.at(idx), f.rank_kind());
        ++rep.histogram[{r.lower, r.upper}];
        ++rep.tuples;
        if (first || r.upper > rep.max_rank_upper) {
            rep.max_rank_upper = r.upper;
            rep.argmax = dA.decode(idx);
            first = false;
        }
        rep.max_rank_lower = std::max(rep.max_rank_lower, r.lower);
    }
    return rep;
}

inline DefectReport defect(const Cochain& A, const Filtration& f, const RankOptions& opt = {}) {
    RankCache cache(opt);
    return defect(A, f, cache);
}

/// rank(d A) <= i everywhere: yes when the certified upper bounds allow it, no when a lower bound forbids it.
inline Verdict is_approx_cocycle(const DefectReport& rep, unsigned i) {
    if (rep.max_rank_upper <= i) return Verdict::yes;
    if (rep.max_rank_lower > i) return Verdict::no;
    return Verdict::indeterminate;
}

inline Verdict is_approx_cocycle(const Cochain& A, unsigned i, const Filtration& f, RankCache& cache) {
    return is_approx_cocycle(defect(A, f, cache), i);
}

/// Every value of r - d t lies in level i (rank < i). An identically zero residual counts at every level.
inline Verdict is_approx_coboundary(const Cochain& r, const Cochain& t, unsigned i, const Filtration& f,
                                    RankCache& cache) {
    if (t.degree() + 1 != r.degree()) throw PreconditionError("t must have degree one less than r");
    const Cochain residual = r - coboundary(t);
    Verdict v = Verdict::yes;
    for (const auto& val : residual.values()) {
        if (val.is_zero()) continue;
        const auto& rr = cache.get(val, f.rank_kind());
        if (rr.lower >= i) return Verdict::no;
        if (rr.upper >= i) v = Verdict::indeterminate;
    }
    return v;
}

struct TopDegreeReduction {
    Cochain reduced;
    DefectReport translation_defect;
    DefectReport trivial_defect;
    /// Trivial-action defect certified at most i + 1.
    bool bound_holds = false;
};

/// Keeps the degree-d part of every value of a translation cochain and re-reads it with the trivial action.
inline TopDegreeReduction top_degree_reduce(const Cochain& P, unsigned i, RankCache& cache) {
    if (P.action() != Action::translation) throw PreconditionError("top_degree_reduce needs the translation action");
    if (P.degree() != 1) throw PreconditionError("top_degree_reduce needs a degree-1 cochain");
    const unsigned d = P.degree_bound();
    if (d < 2) throw PreconditionError("top_degree_reduce needs degree bound d >= 2");
    auto tdef = defect(P, Filtration{Filtration::Kind::B, d}, cache);
    const Verdict v = is_approx_cocycle(tdef, i);
    if (v != Verdict::yes)
        throw PreconditionError(std::string("input is not a certified approximate translation cocycle at level ") +
                                std::to_string(i) + " (" + to_string(v) + ")");
    std::vector<Poly> vals;
    for (const auto& val : P.values()) vals.push_back(top_degree(val, d));
    Cochain Q(P.group(), 1, Action::trivial, std::move(vals));
    auto qdef = defect(Q, Filtration{Filtration::Kind::A, d}, cache);
    const bool ok = qdef.max_rank_upper <= i + 1;
    return {std::move(Q), std::move(tdef), std::move(qdef), ok};
}

/// E_v bias(A~(v)) over the product domain, exactly.
inline Rational average_multilinear_bias(const Cochain& A, std::uint64_t budget = kDefaultBudget) {
    if (A.degree() != 1) throw PreconditionError("average bias needs a degree-1 cochain");
    const unsigned d = A.degree_bound();
    std::int64_t num = 0, den = 1;
    for (const auto& v : A.values()) {
        const Rational b = vanishing_fraction(polarize(v, d), budget);
        // num/den + b
        const std::int64_t l = std::lcm(den, b.den);
        num = num * (l / den) + b.num * (l / b.den);
        den = l;
    }
    return Rational(num, den * static_cast<std::int64_t>(A.size()));
}

/// chi(v) = sum_j Q_j(v) R_j with fixed homogeneous R_j of degree k_j in [1, d-1] and Q_j linear in v.
struct FiniteRankCertificate {
    std::vector<Poly> factors;                   // R_j
    std::vector<std::vector<Poly>> cofactors;    // cofactors[j][i] = Q_j(e_i)
};

struct FiniteRankSearch {
    std::optional<FiniteRankCertificate> certificate;
    std::uint64_t candidates_tried = 0;
    unsigned max_terms_searched = 0;
};

namespace detail {

/// Canonical nonzero elements up to scalars: first nonzero coefficient equal to 1.
inline std::vector<Poly> projective_elements(const HomogeneousSpace& H) {
    std::vector<Poly> out;
    for (std::uint64_t idx = 1; idx < H.size(); ++idx) {
        Poly e = H.element(idx);
        if (e.terms().begin()->second == 1) out.push_back(std::move(e));
    }
    return out;
}

/// Tries to write every image as sum_j Q_{j} R_j with Q_j homogeneous of degree d - deg R_j.
inline std::optional<std::vector<std::vector<Poly>>> solve_ideal_membership(const std::vector<Poly>& images,
                                                                             const std::vector<Poly>& R, unsigned d) {
    const auto& p = images.front().field();
    const std::size_t n = images.front().nvars();
    const HomogeneousSpace target(p, n, d);
    // columns: every (j, monomial of degree d - deg R_j)
    std::vector<std::pair<std::size_t, Monomial>> cols;
    for (std::size_t j = 0; j < R.size(); ++j) {
        const HomogeneousSpace co(p, n, d - static_cast<unsigned>(R[j].degree()));
        for (const auto& m : co.monomials()) cols.emplace_back(j, m);
    }
    const auto& rows = target.monomials();
    std::map<Monomial, std::size_t, std::greater<Monomial>> row_of;
    for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
    Matrix M(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [m, coef] : R[cols[c].first].terms()) M(row_of.at(m * cols[c].second), c) = coef;
    Matrix B(rows.size(), images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
        for (const auto& [m, coef] : images[i].terms()) B(row_of.at(m), i) = coef;
    auto X = solve(p, M, B);
    if (!X) return std::nullopt;
    std::vector<std::vector<Poly>> Q(R.size());
    for (std::size_t j = 0; j < R.size(); ++j)
        for (std::size_t i = 0; i < images.size(); ++i)
            Q[j].emplace_back(p, n, d - static_cast<unsigned>(R[j].degree()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t i = 0; i < images.size(); ++i) Q[cols[c].first][i].add_term(cols[c].second, (*X)(c, i));
    return Q;
}

}  // namespace detail

/// Searches certificates by increasing number of factors; factor tuples are strictly increasing in the canonical
/// order (degree, then index in the homogeneous space).
inline FiniteRankSearch finite_rank_test(const LinearMap& chi, unsigned max_terms, std::uint64_t budget = kDefaultBudget) {
    const auto& images = chi.images();
    const auto& p = chi.group().p;
    const std::size_t n = images.front().nvars();
    unsigned d = 0;
    for (const auto& im : images) {
        if (!im.is_homogeneous()) throw PreconditionError("finite_rank_test needs homogeneous images");
        if (!im.is_zero()) d = std::max<unsigned>(d, static_cast<unsigned>(im.degree()));
    }
    for (const auto& im : images)
        if (!im.is_zero() && im.degree() != static_cast<int>(d))
            throw PreconditionError("finite_rank_test needs images of one common degree");
    FiniteRankSearch out;
    bool all_zero = true;
    for (const auto& im : images) all_zero = all_zero && im.is_zero();
    if (all_zero) {
        out.certificate = FiniteRankCertificate{};
        return out;
    }
    if (d < 2) return out;
    std::vector<Poly> pool;
    for (unsigned k = 1; k < d; ++k) {
        auto els = detail::projective_elements(HomogeneousSpace(p, n, k));
        pool.insert(pool.end(), els.begin(), els.end());
    }
    for (unsigned t = 1; t <= max_terms && t <= pool.size(); ++t) {
        out.max_terms_searched = t;
        std::vector<std::size_t> pick(t);
        for (unsigned j = 0; j < t; ++j) pick[j] = j;
        while (true) {
            require_budget("finite-rank factor search", ++out.candidates_tried, budget);
            std::vector<Poly> R;
            for (auto j : pick) R.push_back(pool[j]);
            if (auto Q = detail::solve_ideal_membership(images, R, d)) {
                out.certificate = FiniteRankCertificate{std::move(R), std::move(*Q)};
                return out;
            }
            int j = static_cast<int>(t) - 1;
            while (j >= 0 && pick[j] == pool.size() - t + static_cast<std::size_t>(j)) --j;
            if (j < 0) break;
            ++pick[j];
            for (unsigned k = static_cast<unsigned>(j) + 1; k < t; ++k) pick[k] = pick[k - 1] + 1;
        }
    }
    return out;
}

/// Re-expands a finite-rank certificate.
inline bool verify_finite_rank(const LinearMap& chi, const FiniteRankCertificate& cert) {
    for (std::size_t i = 0; i < chi.images().size(); ++i) {
        Poly sum = chi.images()[i].scaled(0);
        for (std::size_t j = 0; j < cert.factors.size(); ++j) {
            sum += cert.cofactors[j][i] * cert.factors[j];
        }
        if (!(sum == chi.images()[i])) return false;
    }
    return true;
}

}  // namespace approxcoh
