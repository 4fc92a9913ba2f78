#pragma once

// Schmidt rank of polynomials over the algebraic closure of F_p, bracketed by certified upper bounds (explicit
// decompositions over some F_{p^m}) and structural lower bounds.
//
// For d <= 3 every term of a decomposition has a linear factor, so the rank is the least codimension of a subspace on
// which P vanishes. Subspaces are enumerated through reduced row echelon bases: pivot sets in lexicographic order,
// then the free entries of the basis matrix (row-major) in lexicographic order of element codes. The first hit wins.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "multilinear.hpp"
#include "poly.hpp"

namespace approxcoh {

enum class RankMethod { quadratic_oracle, subspace_search, greedy, exhaustive };

inline const char* to_string(RankMethod m) {
    switch (m) {
        case RankMethod::quadratic_oracle: return "quadratic-oracle";
        case RankMethod::subspace_search: return "subspace-search";
        case RankMethod::greedy: return "greedy";
        case RankMethod::exhaustive: return "exhaustive";
    }
    return "?";
}

/// Which rank is meant: homogeneous factors (filtration A_d) or arbitrary positive-degree factors (B_d).
enum class RankKind { automatic, homogeneous, inhomogeneous };

struct RankCertificate {
    enum class Kind { decomposition, vanishing_subspace };
    using Term = std::pair<ExtPoly, ExtPoly>;

    Kind kind = Kind::decomposition;
    ExtensionField field;
    /// sum_i first_i * second_i == P, over `field`.
    std::vector<Term> terms;
    /// Forms l_i (n coefficients followed by a constant) cutting out the subspace P vanishes on, when known.
    std::vector<std::vector<Residue>> subspace;

    explicit RankCertificate(ExtensionField f) : field(std::move(f)) {}
    unsigned extension_degree() const noexcept { return field.degree(); }
    std::size_t size() const noexcept { return terms.size(); }
};

struct RankResult {
    unsigned lower = 0;
    unsigned upper = 0;
    std::optional<RankCertificate> certificate;
    RankMethod method = RankMethod::exhaustive;
    /// Least rank certified with coefficients in F_p itself, when the search reached it.
    std::optional<unsigned> base_field_upper;
    /// True when an extension field certified a smaller rank than F_p did.
    bool extension_improved = false;

    bool definite() const noexcept { return lower == upper && certificate.has_value(); }
    std::optional<unsigned> value() const {
        if (definite()) return upper;
        return std::nullopt;
    }
};

struct RankOptions {
    enum class Method { automatic, quad, subspace };
    Method method = Method::automatic;
    RankKind kind = RankKind::automatic;
    /// Largest extension degree m used for upper-bound searches.
    unsigned ext_degree = 2;
    /// Largest codimension searched; nvars when unset.
    std::optional<unsigned> max_r;
    /// Cap on the number of subspaces examined per call.
    std::uint64_t budget = kDefaultBudget;
    /// Throw BudgetExceeded instead of widening the bracket when a search does not fit.
    bool strict = false;
};

namespace detail {

class ExtEvaluator {
   public:
    explicit ExtEvaluator(const ExtPoly& p) : f_(p.field()) {
        for (const auto& [m, c] : p.terms()) {
            Term t{c, {}};
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i]) t.factors.emplace_back(i, m[i]);
            terms_.push_back(std::move(t));
        }
    }
    Residue operator()(std::span<const Residue> x) const {
        Residue acc = 0;
        for (const auto& t : terms_) {
            Residue v = t.coef;
            for (const auto& [i, e] : t.factors) {
                v = f_.mul(v, f_.pow(x[i], e));
                if (v == 0) break;
            }
            acc = f_.add(acc, v);
        }
        return acc;
    }

   private:
    struct Term {
        Residue coef;
        std::vector<std::pair<std::size_t, unsigned>> factors;
    };
    ExtensionField f_;
    std::vector<Term> terms_;
};

inline ExtPoly linear_poly(const ExtensionField& g, std::size_t n, const std::vector<Residue>& form, unsigned bound = 1) {
    ExtPoly l(g, n, std::max(1u, bound));
    for (std::size_t j = 0; j < n; ++j) l.add_term(Monomial::variable(n, j), form[j]);
    l.add_term(Monomial::one(n), form[n]);
    return l;
}

inline std::uint64_t subspace_count(std::size_t n, unsigned r, std::uint64_t q, bool affine) {
    if (r > n) return 0;
    std::uint64_t total = 0;
    std::vector<std::size_t> piv(r);
    for (unsigned k = 0; k < r; ++k) piv[k] = k;
    while (true) {
        std::uint64_t free = affine ? r : 0;
        for (unsigned k = 0; k < r; ++k) free += (n - 1 - piv[k]) - (r - 1 - k);
        total += checked_pow(q, free);
        if (total == UINT64_MAX) return total;
        int k = static_cast<int>(r) - 1;
        while (k >= 0 && piv[k] == n - r + static_cast<unsigned>(k)) --k;
        if (k < 0) break;
        ++piv[k];
        for (unsigned j = static_cast<unsigned>(k) + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
    }
    return total;
}

struct Division {
    std::vector<RankCertificate::Term> terms;
    ExtPoly remainder;
};

/// Writes P = sum_k l_k R_k + remainder where l_k are the rows of an echelon basis (pivot `piv[k]` has coefficient 1,
/// other pivot columns 0) and the remainder involves only non-pivot variables.
inline Division divide_by_forms(const ExtPoly& P, const std::vector<std::size_t>& piv,
                                const std::vector<std::vector<Residue>>& forms) {
    const auto& g = P.field();
    const std::size_t n = P.nvars();
    std::vector<std::vector<Residue>> fwd(n), back(n);
    std::vector<int> row_of(n, -1);
    for (std::size_t k = 0; k < piv.size(); ++k) row_of[piv[k]] = static_cast<int>(k);
    for (std::size_t i = 0; i < n; ++i) {
        fwd[i].assign(n + 1, 0);
        back[i].assign(n + 1, 0);
        if (row_of[i] < 0) {
            fwd[i][i] = 1;
            back[i][i] = 1;
            continue;
        }
        const auto& f = forms[static_cast<std::size_t>(row_of[i])];
        for (std::size_t j = 0; j <= n; ++j) {
            if (j == i) continue;
            fwd[i][j] = g.neg(f[j]);
        }
        fwd[i][i] = 1;
        back[i] = f;
    }
    const ExtPoly hat = P.substitute(fwd, n);
    std::vector<ExtPoly> cof(piv.size(), ExtPoly(g, n, P.degree_bound()));
    ExtPoly rem(g, n, P.degree_bound());
    for (const auto& [m, c] : hat.terms()) {
        std::size_t k = 0;
        while (k < piv.size() && m[piv[k]] == 0) ++k;
        if (k == piv.size()) {
            rem.add_term(m, c);
            continue;
        }
        auto e = m.exponents();
        --e[piv[k]];
        cof[k].add_term(Monomial(std::move(e)), c);
    }
    Division out{{}, rem};
    for (std::size_t k = 0; k < piv.size(); ++k) {
        if (cof[k].is_zero()) continue;
        out.terms.emplace_back(linear_poly(g, n, forms[k]), cof[k].substitute(back, n));
    }
    return out;
}

/// Rewrites terms with constant cofactors (and an extra affine remainder L0) so every factor has positive degree.
inline void repair_constant_cofactors(std::vector<RankCertificate::Term>& terms, ExtPoly extra) {
    const ExtensionField g = extra.field();
    const std::size_t n = extra.nvars();
    ExtPoly L = std::move(extra);
    std::vector<RankCertificate::Term> kept;
    for (auto& t : terms) {
        if (t.second.is_zero()) continue;
        if (t.second.degree() == 0)
            L += t.first * t.second;
        else
            kept.push_back(std::move(t));
    }
    terms = std::move(kept);
    if (L.is_zero()) return;
    if (n == 0) throw PreconditionError("a nonzero constant has no decomposition in zero variables");
    const unsigned bound = std::max<unsigned>(2, static_cast<unsigned>(std::max(1, L.degree())) + 1);
    L = L.with_degree_bound(std::max<unsigned>(L.degree_bound(), bound));
    const ExtPoly y = ExtPoly::variable(g, n, 1, 0);
    const ExtPoly one = ExtPoly::constant(g, n, 1, 1);
    if (L.degree() == 0) {
        // c = -c (y+1)(y-1) + c y y
        const Residue c = L.coefficient(Monomial::one(n));
        terms.emplace_back(y + one, (y - one).scaled(g.neg(c)));
        terms.emplace_back(y, y.scaled(c));
        return;
    }
    // l_j R_j + L = l_j (R_j + a L) + (1 - a l_j) L
    for (auto& [l, R] : terms) {
        for (Residue a = 1; a < g.characteristic(); ++a) {
            ExtPoly nr = R + L.scaled(a);
            ExtPoly nl = one - l.scaled(a);
            if (nr.degree() <= 0 || nl.degree() <= 0) continue;
            R = std::move(nr);
            terms.emplace_back(std::move(nl), L);
            return;
        }
    }
    // L = (y + 1) L - y L
    terms.emplace_back(y + one, L);
    terms.emplace_back(-y, L);
}

struct SubspaceSearch {
    enum class Status { found, exhausted, over_budget };
    Status status = Status::exhausted;
    std::vector<std::size_t> pivots;
    std::vector<std::vector<Residue>> forms;
};

/// Searches codimension-r (affine when `affine`) subspaces of G^n on which P vanishes identically.
inline SubspaceSearch find_vanishing_subspace(const ExtPoly& P, unsigned r, bool affine, std::uint64_t& budget_left) {
    SubspaceSearch out;
    const auto& g = P.field();
    const std::size_t n = P.nvars();
    const std::uint64_t q = g.order();
    if (r > n) return out;
    const std::uint64_t count = subspace_count(n, r, q, affine);
    if (count > budget_left) {
        out.status = SubspaceSearch::Status::over_budget;
        return out;
    }
    budget_left -= count;
    const ExtEvaluator eval(P);
    const unsigned deg = static_cast<unsigned>(std::max(0, P.degree()));
    const unsigned grid = static_cast<unsigned>(std::min<std::uint64_t>(deg + 1, q));

    std::vector<std::size_t> piv(r);
    for (unsigned k = 0; k < r; ++k) piv[k] = k;
    std::vector<Residue> x(n), z;
    while (true) {
        std::vector<bool> is_piv(n, false);
        for (auto c : piv) is_piv[c] = true;
        std::vector<std::size_t> free_cols;
        for (std::size_t j = 0; j < n; ++j)
            if (!is_piv[j]) free_cols.push_back(j);
        // positions (row, column) of free entries in row-major order; column n is the constant
        std::vector<std::pair<unsigned, std::size_t>> slots;
        for (unsigned k = 0; k < r; ++k) {
            for (std::size_t j = piv[k] + 1; j < n; ++j)
                if (!is_piv[j]) slots.emplace_back(k, j);
            if (affine) slots.emplace_back(k, n);
        }
        std::vector<std::vector<Residue>> forms(r, std::vector<Residue>(n + 1, 0));
        for (unsigned k = 0; k < r; ++k) forms[k][piv[k]] = 1;
        std::vector<Residue> vals(slots.size(), 0);
        z.assign(free_cols.size(), 0);
        while (true) {
            for (std::size_t s = 0; s < slots.size(); ++s) forms[slots[s].first][slots[s].second] = vals[s];
            // evaluate on the grid {0..grid-1}^{free}
            bool vanishes = true;
            std::fill(z.begin(), z.end(), 0);
            while (vanishes) {
                for (std::size_t t = 0; t < free_cols.size(); ++t) x[free_cols[t]] = z[t];
                for (unsigned k = 0; k < r; ++k) {
                    Residue v = forms[k][n];
                    for (auto j : free_cols)
                        if (j > piv[k]) v = g.add(v, g.mul(forms[k][j], x[j]));
                    x[piv[k]] = g.neg(v);
                }
                if (eval(x) != 0) vanishes = false;
                std::size_t t = z.size();
                while (t-- > 0) {
                    if (++z[t] < grid) break;
                    z[t] = 0;
                }
                if (t == static_cast<std::size_t>(-1)) break;
            }
            if (vanishes) {
                // confirm formally: the remainder of the division must vanish
                if (divide_by_forms(P, piv, forms).remainder.is_zero()) {
                    out.status = SubspaceSearch::Status::found;
                    out.pivots = piv;
                    out.forms = forms;
                    return out;
                }
            }
            std::size_t s = vals.size();
            while (s-- > 0) {
                if (++vals[s] < q) break;
                vals[s] = 0;
            }
            if (s == static_cast<std::size_t>(-1)) break;
        }
        int k = static_cast<int>(r) - 1;
        while (k >= 0 && piv[k] == n - r + static_cast<unsigned>(k)) --k;
        if (k < 0) break;
        ++piv[k];
        for (unsigned j = static_cast<unsigned>(k) + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

inline RankCertificate certificate_from_subspace(const ExtPoly& P, const SubspaceSearch& hit, bool affine) {
    RankCertificate cert(P.field());
    auto div = divide_by_forms(P, hit.pivots, hit.forms);
    cert.terms = std::move(div.terms);
    cert.subspace = hit.forms;
    if (affine) repair_constant_cofactors(cert.terms, div.remainder);
    return cert;
}

/// Division by the coordinate forms x_0, ..., x_{n-1}; always succeeds.
inline RankCertificate coordinate_certificate(const ExtPoly& P, bool affine) {
    const std::size_t n = P.nvars();
    SubspaceSearch all;
    for (std::size_t i = 0; i < n; ++i) {
        all.pivots.push_back(i);
        std::vector<Residue> f(n + 1, 0);
        f[i] = 1;
        all.forms.push_back(std::move(f));
    }
    RankCertificate cert(P.field());
    auto div = divide_by_forms(P, all.pivots, all.forms);
    cert.terms = std::move(div.terms);
    if (affine || !div.remainder.is_zero()) repair_constant_cofactors(cert.terms, div.remainder);
    return cert;
}

/// Legendre-style square test in F_p (p odd).
inline bool is_square(const PrimeModulus& p, Residue a) { return a == 0 || p.pow(a, (p.value() - 1) / 2) == 1; }

}  // namespace detail

/// True when the certificate's terms multiply out to P and, for homogeneous use, every factor is homogeneous of
/// positive degree; every factor has positive degree in any case.
inline bool verify_certificate(const Poly& P, const RankCertificate& cert, bool homogeneous) {
    const ExtPoly target = P.embed(cert.field);
    unsigned bound = P.degree_bound();
    for (const auto& [a, b] : cert.terms) bound = std::max<unsigned>(bound, a.degree_bound() + b.degree_bound());
    ExtPoly sum(cert.field, P.nvars(), bound);
    for (const auto& [a, b] : cert.terms) {
        if (a.nvars() != P.nvars() || b.nvars() != P.nvars()) return false;
        if (a.degree() <= 0 || b.degree() <= 0) return false;
        if (homogeneous && (!a.is_homogeneous() || !b.is_homogeneous())) return false;
        sum += a * b;
    }
    return sum == target;
}

/// Exact closure rank of a homogeneous quadratic for odd p: ceil(m/2) with m the rank of the symmetric matrix.
/// The certificate pairs diagonal squares a L1^2 + b L2^2 = a (L1 + s L2)(L1 - s L2), s^2 = -b/a, in F_p or F_{p^2}.
inline RankResult quad_rank(const Poly& P, bool with_certificate = true) {
    const auto& p = P.field();
    if (p.value() == 2) throw PreconditionError("quad_rank needs odd p; use subspace search for p = 2");
    if (!P.is_homogeneous() || (!P.is_zero() && P.degree() != 2))
        throw PreconditionError("quad_rank needs a homogeneous quadratic");
    const std::size_t n = P.nvars();
    const Residue half = p.inv(2);
    Matrix B(n, n);
    for (const auto& [m, c] : P.terms()) {
        std::size_t i = n, j = n;
        for (std::size_t t = 0; t < n; ++t)
            if (m[t]) {
                if (i == n) i = t;
                j = t;
            }
        if (i == j) {
            B(i, i) = c;
        } else {
            B(i, j) = p.mul(c, half);
            B(j, i) = B(i, j);
        }
    }
    // diagonalize: Q = sum_k L_k^2 / a_k
    std::vector<Residue> alphas;
    std::vector<std::vector<Residue>> forms;
    Matrix S = B;
    while (!is_zero(S)) {
        std::vector<Residue> u(n, 0);
        Residue a = 0;
        for (std::size_t i = 0; i < n && a == 0; ++i)
            if (S(i, i) != 0) {
                u[i] = 1;
                a = S(i, i);
            }
        for (std::size_t i = 0; i < n && a == 0; ++i)
            for (std::size_t j = i + 1; j < n && a == 0; ++j)
                if (S(i, j) != 0) {
                    u[i] = u[j] = 1;
                    a = p.add(p.add(S(i, i), S(j, j)), p.mul(2, S(i, j)));
                }
        std::vector<Residue> w(n, 0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) w[j] = p.add(w[j], p.mul(u[i], S(i, j)));
        const Residue ainv = p.inv(a);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) S(i, j) = p.sub(S(i, j), p.mul(ainv, p.mul(w[i], w[j])));
        alphas.push_back(ainv);
        forms.push_back(std::move(w));
    }
    const unsigned m = static_cast<unsigned>(forms.size());
    RankResult res;
    res.method = RankMethod::quadratic_oracle;
    res.lower = res.upper = (m + 1) / 2;
    // F_p-rank is m minus the Witt index of the nondegenerate part
    Residue disc = 1;
    for (auto a : alphas) disc = p.mul(disc, a);
    Residue sign = (m / 2) % 2 ? p.neg(1) : 1;
    const bool hyperbolic = m % 2 == 1 || detail::is_square(p, p.mul(sign, disc));
    res.base_field_upper = m % 2 == 1 ? (m + 1) / 2 : (hyperbolic ? m / 2 : m / 2 + 1);
    if (m == 0) res.base_field_upper = 0;
    res.extension_improved = *res.base_field_upper > res.upper;
    if (!with_certificate) return res;

    bool need_ext = false;
    for (unsigned k = 0; k + 1 < m; k += 2)
        if (!detail::is_square(p, p.neg(p.mul(alphas[k + 1], p.inv(alphas[k]))))) need_ext = true;
    const ExtensionField g(p, need_ext ? 2 : 1);
    RankCertificate cert(g);
    auto lin = [&](const std::vector<Residue>& w) {
        std::vector<Residue> f(w);
        f.push_back(0);
        return detail::linear_poly(g, n, f);
    };
    for (unsigned k = 0; k < m; k += 2) {
        const ExtPoly L1 = lin(forms[k]);
        const Residue a1 = g.from_prime(alphas[k]);
        if (k + 1 == m) {
            cert.terms.emplace_back(L1.scaled(a1), L1);
            break;
        }
        const ExtPoly L2 = lin(forms[k + 1]);
        const Residue target = g.neg(g.mul(g.from_prime(alphas[k + 1]), g.inv(a1)));
        Residue s = 0;
        for (Residue x = 1; x < g.order(); ++x)
            if (g.mul(x, x) == target) {
                s = x;
                break;
            }
        cert.terms.emplace_back((L1 + L2.scaled(s)).scaled(a1), L1 - L2.scaled(s));
    }
    res.certificate = std::move(cert);
    return res;
}

namespace detail {

/// Closure rank of a quadratic form over F_2: half the rank of its alternating form, plus one when the form does not
/// vanish on the radical.
inline unsigned quad_rank_char2(const Poly& P) {
    const std::size_t n = P.nvars();
    const PrimeModulus f2(2);
    Matrix A(n, n);
    std::vector<Residue> diag(n, 0);
    for (const auto& [m, c] : P.terms()) {
        std::vector<std::size_t> idx;
        for (std::size_t t = 0; t < n; ++t)
            if (m[t]) idx.push_back(t);
        if (idx.size() == 2) {
            A(idx[0], idx[1]) = c;
            A(idx[1], idx[0]) = c;
        }
    }
    const unsigned m = static_cast<unsigned>(rank(f2, A));
    const Matrix K = kernel(f2, A);
    bool nonzero = false;
    std::vector<Residue> b(n);
    for (std::size_t t = 0; t < K.cols() && !nonzero; ++t) {
        for (std::size_t i = 0; i < n; ++i) b[i] = K(i, t);
        if (P.eval(b) != 0) nonzero = true;
    }
    return m / 2 + (nonzero ? 1 : 0);
}

}  // namespace detail

/// Rank bracket for P. Homogeneous P (or kind = homogeneous) gets the A_d rank with homogeneous factors; otherwise
/// the B_d rank with arbitrary positive-degree factors.
inline RankResult rank(const Poly& P, const RankOptions& opt = {}) {
    const auto& p = P.field();
    const std::size_t n = P.nvars();
    const bool homogeneous =
        opt.kind == RankKind::homogeneous || (opt.kind == RankKind::automatic && P.is_homogeneous());
    if (opt.kind == RankKind::homogeneous && !P.is_homogeneous())
        throw PreconditionError("homogeneous rank requested for an inhomogeneous polynomial");
    const unsigned max_r = opt.max_r.value_or(static_cast<unsigned>(n));
    RankResult res;

    if (P.is_zero()) {
        res.certificate.emplace(ExtensionField(p, 1));
        res.base_field_upper = 0;
        return res;
    }
    const int d = P.degree();
    if (homogeneous && d < 2)
        throw PreconditionError("rank is defined for homogeneous polynomials of degree at least 2");
    if (n == 0) throw PreconditionError("rank of a nonzero constant in zero variables");

    if (!homogeneous && d <= 1) {
        // L = (y + 1) L - y L, c = -c (y+1)(y-1) + c y y
        RankCertificate cert(ExtensionField(p, 1));
        detail::repair_constant_cofactors(cert.terms, P.embed(cert.field));
        res.lower = res.upper = static_cast<unsigned>(cert.size());
        res.base_field_upper = res.upper;
        res.certificate = std::move(cert);
        return res;
    }

    if (homogeneous && d == 2 && p.value() != 2 && opt.method != RankOptions::Method::subspace)
        return quad_rank(P);
    if (opt.method == RankOptions::Method::quad)
        throw PreconditionError("quadratic oracle needs a homogeneous quadratic over odd p");

    std::uint64_t budget_left = opt.budget;
    auto over_budget = [&](std::uint64_t need) {
        if (opt.strict) throw BudgetExceeded("subspace search", need, opt.budget);
    };

    res.method = RankMethod::subspace_search;
    std::optional<RankCertificate> best;
    std::optional<unsigned> best_ext;
    auto take = [&](const detail::SubspaceSearch& hit, const ExtPoly& E, unsigned m) {
        auto cert = detail::certificate_from_subspace(E, hit, !homogeneous);
        if (!best || cert.size() < best->size()) {
            best = std::move(cert);
            best_ext = m;
        }
    };

    unsigned lower = 1;
    if (homogeneous && d == 2 && p.value() == 2) {
        lower = detail::quad_rank_char2(P);
    } else if (d <= 3) {
        // rank 1 means a linear (affine) factor; a Galois orbit of at most d such factors puts one over F_{p^k},
        // k <= d, and F_{p^2}, F_{p^3} contain every such field
        bool complete = true;
        const std::vector<unsigned> degrees = d == 2 ? std::vector<unsigned>{1, 2} : std::vector<unsigned>{1, 2, 3};
        for (unsigned m : degrees) {
            std::optional<ExtensionField> g;
            try {
                g.emplace(p, m);
            } catch (const BudgetExceeded&) {
                complete = false;
                continue;
            }
            const ExtPoly E = P.embed(*g);
            const auto hit = detail::find_vanishing_subspace(E, 1, !homogeneous, budget_left);
            if (hit.status == detail::SubspaceSearch::Status::found) {
                take(hit, E, m);
                if (m == 1) res.base_field_upper = static_cast<unsigned>(best->size());
                if (best->size() == 1) break;
            } else if (hit.status == detail::SubspaceSearch::Status::over_budget) {
                over_budget(detail::subspace_count(n, 1, g->order(), !homogeneous));
                complete = false;
            }
        }
        if (best && best->size() == 1) {
            res.lower = res.upper = 1;
            res.extension_improved = !res.base_field_upper || *res.base_field_upper > 1;
            res.certificate = std::move(best);
            return res;
        }
        if (complete) lower = 2;
    }

    for (unsigned m = 1; m <= std::max(1u, opt.ext_degree); ++m) {
        std::optional<ExtensionField> g;
        try {
            g.emplace(p, m);
        } catch (const BudgetExceeded& e) {
            over_budget(e.required());
            break;
        }
        const ExtPoly E = P.embed(*g);
        for (unsigned r = std::max(lower, 1u); r <= max_r && r <= n; ++r) {
            if (best && r >= best->size()) break;
            const auto hit = detail::find_vanishing_subspace(E, r, !homogeneous, budget_left);
            if (hit.status == detail::SubspaceSearch::Status::found) {
                take(hit, E, m);
                break;
            }
            if (hit.status == detail::SubspaceSearch::Status::over_budget) {
                over_budget(detail::subspace_count(n, r, g->order(), !homogeneous));
                break;
            }
        }
        if (m == 1 && best && best_ext == 1u) res.base_field_upper = static_cast<unsigned>(best->size());
        if (best && best->size() <= lower) break;
    }
    if (!best) {
        best = detail::coordinate_certificate(P.embed(ExtensionField(p, 1)), !homogeneous);
        best_ext = 1;
        res.method = RankMethod::greedy;
        res.base_field_upper = static_cast<unsigned>(best->size());
    }
    res.lower = std::min<unsigned>(lower, static_cast<unsigned>(best->size()));
    res.upper = static_cast<unsigned>(best->size());
    res.extension_improved = res.base_field_upper && *res.base_field_upper > res.upper;
    res.certificate = std::move(best);
    return res;
}

/// Minimal vanishing-subspace codimension over F_{p^m}, m <= ext_degree, for homogeneous P of degree 2 or 3.
inline RankResult strength_rank(const Poly& P, unsigned max_r, unsigned ext_degree,
                                std::uint64_t budget = kDefaultBudget) {
    if (!P.is_homogeneous()) throw PreconditionError("strength_rank needs a homogeneous polynomial");
    if (!P.is_zero() && (P.degree() < 2 || P.degree() > 3))
        throw PreconditionError("strength_rank supports degrees 2 and 3 only");
    RankOptions opt;
    opt.method = RankOptions::Method::subspace;
    opt.kind = RankKind::homogeneous;
    opt.ext_degree = ext_degree;
    opt.max_r = max_r;
    opt.budget = budget;
    opt.strict = true;
    return rank(P, opt);
}

/// -log_p of the bias of T over its full product domain. Bias of a multilinear form is the fraction of
/// (x_1..x_{d-1}) killing the last slot, so it is a positive rational.
struct AnalyticRank {
    Rational bias;
    long double value = 0;
};

inline AnalyticRank analytic_rank(const MultilinearForm& T, std::uint64_t budget = kDefaultBudget) {
    AnalyticRank a;
    a.bias = vanishing_fraction(T, budget);
    a.value = -std::log(a.bias.to_real()) / std::log(static_cast<long double>(T.modulus().value()));
    if (a.value < 0 && a.value > -1e-15L) a.value = 0;
    return a;
}

struct BiasRankConstant {
    Rational min_bias{1, 1};
    std::uint64_t forms_enumerated = 0;
    std::uint64_t forms_within_rank = 0;
};

/// Minimum bias over all d-block multilinear forms with `block_vars` variables per block whose certified rank is at
/// most L.
inline BiasRankConstant bias_rank_constant(PrimeModulus p, unsigned L, unsigned d, std::size_t block_vars,
                                           std::uint64_t budget = kDefaultBudget, const RankOptions& ropt = {}) {
    std::size_t entries = 1;
    for (unsigned k = 0; k < d; ++k) entries *= block_vars;
    const std::uint64_t forms = checked_pow(p.value(), entries);
    require_budget("multilinear form enumeration", forms, budget);
    const PointSpace coeffs(p, entries);
    std::vector<Residue> c(entries);
    std::vector<MultilinearForm::Index> idx(entries, MultilinearForm::Index(d));
    for (std::size_t e = 0; e < entries; ++e) {
        std::size_t rest = e;
        for (unsigned k = d; k-- > 0;) {
            idx[e][k] = static_cast<std::uint16_t>(rest % block_vars);
            rest /= block_vars;
        }
    }
    BiasRankConstant out;
    for (std::uint64_t f = 0; f < forms; ++f) {
        coeffs.decode(f, c);
        MultilinearForm T(p, d, block_vars);
        for (std::size_t e = 0; e < entries; ++e) T.add(idx[e], c[e]);
        ++out.forms_enumerated;
        unsigned upper = 0;
        if (!T.is_zero()) {
            RankOptions o = ropt;
            o.kind = RankKind::homogeneous;
            upper = rank(T.to_poly(), o).upper;
        }
        if (upper > L) continue;
        ++out.forms_within_rank;
        const Rational b = vanishing_fraction(T, budget);
        if (b < out.min_bias) out.min_bias = b;
    }
    if (out.min_bias.num <= 0) throw std::logic_error("bias of a bounded-rank multilinear form vanished");
    return out;
}

}  // namespace approxcoh
