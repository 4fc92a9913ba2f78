#pragma once

// Finite inverse systems and compatible threads, plus the two truncated lifting procedures built on them.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cochain.hpp"
#include "corrector.hpp"
#include "linalg.hpp"

namespace approxcoh {

/// Sets X_0..X_N given by their sizes (elements are 0..size-1 in canonical order) and maps f_n : X_{n+1} -> X_n.
struct InverseSystem {
    std::vector<std::size_t> sizes;
    /// maps[n][x] = f_n(x) for x in X_{n+1}.
    std::vector<std::vector<std::size_t>> maps;

    std::size_t depth() const noexcept { return sizes.empty() ? 0 : sizes.size() - 1; }

    void validate() const {
        if (sizes.empty()) throw PreconditionError("inverse system without levels");
        if (maps.size() != depth()) throw PreconditionError("inverse system needs one map per level transition");
        for (std::size_t n = 0; n < sizes.size(); ++n)
            if (sizes[n] == 0) throw PreconditionError("level " + std::to_string(n) + " of the inverse system is empty");
        for (std::size_t n = 0; n < maps.size(); ++n) {
            if (maps[n].size() != sizes[n + 1])
                throw PreconditionError("map f_" + std::to_string(n) + " is not total");
            for (auto y : maps[n])
                if (y >= sizes[n]) throw PreconditionError("map f_" + std::to_string(n) + " leaves its codomain");
        }
    }
};

struct CompatibleSequence {
    /// elements[n] indexes X_n.
    std::vector<std::size_t> elements;
    /// stable[n] = image of X_N in X_n, the finite-horizon stand-in for the intersection of all images.
    std::vector<std::vector<std::size_t>> stable;
};

inline bool is_compatible(const InverseSystem& sys, const std::vector<std::size_t>& xs) {
    if (xs.size() != sys.sizes.size()) return false;
    for (std::size_t n = 0; n < xs.size(); ++n)
        if (xs[n] >= sys.sizes[n]) return false;
    for (std::size_t n = 0; n + 1 < xs.size(); ++n)
        if (sys.maps[n][xs[n + 1]] != xs[n]) return false;
    return true;
}

/// Picks the first element of the stable image at level 0, then at each level the first stable preimage.
inline CompatibleSequence koenig_select(const InverseSystem& sys) {
    sys.validate();
    const std::size_t N = sys.depth();
    auto image = [&](std::size_t n, const std::vector<char>& in) {
        std::vector<char> out(sys.sizes[n], 0);
        for (std::size_t x = 0; x < in.size(); ++x)
            if (in[x]) out[sys.maps[n][x]] = 1;
        return out;
    };
    // X_{m,n} = image of X_m in X_n; check X_{m+1,n} inside X_{m,n} along the way
    std::vector<std::vector<char>> prev(N + 1);
    for (std::size_t n = 0; n <= N; ++n) prev[n].assign(sys.sizes[n], 1);
    for (std::size_t m = 1; m <= N; ++m) {
        std::vector<char> cur(sys.sizes[m], 1);
        for (std::size_t n = m; n-- > 0;) {
            cur = image(n, cur);
            for (std::size_t x = 0; x < cur.size(); ++x)
                if (cur[x] && !prev[n][x]) throw std::logic_error("image chain is not monotone");
            prev[n] = cur;
        }
    }
    CompatibleSequence out;
    out.stable.resize(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        for (std::size_t x = 0; x < prev[n].size(); ++x)
            if (prev[n][x]) out.stable[n].push_back(x);
        if (out.stable[n].empty()) throw std::logic_error("empty stable image");
    }
    out.elements.push_back(out.stable[0].front());
    for (std::size_t n = 0; n < N; ++n) {
        std::optional<std::size_t> pick;
        for (auto x : out.stable[n + 1])
            if (sys.maps[n][x] == out.elements.back()) {
                pick = x;
                break;
            }
        if (!pick) throw std::logic_error("stable image is not surjective");
        out.elements.push_back(*pick);
    }
    return out;
}

/// A level of a lifting problem has no admissible map.
class EmptyLevel : public PreconditionError {
   public:
    EmptyLevel(std::size_t level, const std::string& what)
        : PreconditionError(what + " (level " + std::to_string(level) + ")"), level_(level) {}
    std::size_t level() const noexcept { return level_; }

   private:
    std::size_t level_;
};

/// Candidate level-n maps as image lists (one polynomial in l variables per basis vector of V_n).
using LevelEnumerator = std::function<std::vector<std::vector<Poly>>(std::size_t level, std::size_t l)>;

struct LiftResult {
    /// chi(e_i) for i < N, as polynomials in all variables of P.
    std::vector<Poly> images;
    unsigned distance = 0;
    /// l(n): number of leading variables carrying P(V_n).
    std::vector<std::size_t> widths;
    std::vector<std::size_t> level_sizes;
    /// Residuals whose rank bracket straddled C; they were treated as violations.
    std::uint64_t undecided = 0;
    CompatibleSequence thread;
    InverseSystem system;
};

namespace detail {

inline std::vector<std::uint64_t> level_points(const PrimeModulus& p, std::size_t n, std::size_t N) {
    // V_n inside V_N: points whose last N - n coordinates vanish
    const PointSpace S(p, n), T(p, N);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < S.size(); ++i) {
        auto v = S.point(i);
        v.resize(N, 0);
        out.push_back(T.index(v));
    }
    return out;
}

}  // namespace detail

/// Truncated lift: V_n = span(e_1..e_n), X_n = linear maps V_n -> N_{l(n)} with rank(P(v) - psi(v)) <= C on V_n, f_n
/// restricts to V_n and projects to N_{l(n)}. Level sets come from `enumerate` when given, else from full enumeration.
inline LiftResult lift_correction(const Cochain& P, unsigned C, const RankOptions& ropt = {},
                                  std::uint64_t budget = kDefaultBudget, const LevelEnumerator& enumerate = {}) {
    if (P.degree() != 1) throw PreconditionError("lift_correction needs a degree-1 cochain");
    const auto& p = P.group().p;
    const std::size_t N = P.group().s, nv = P.nvars();
    const unsigned d = P.degree_bound();
    for (const auto& v : P.values())
        if (!v.is_homogeneous() || (!v.is_zero() && v.degree() != static_cast<int>(d)))
            throw PreconditionError("lift_correction needs homogeneous values of degree " + std::to_string(d));
    LiftResult out;
    std::vector<std::vector<std::uint64_t>> pts(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        pts[n] = detail::level_points(p, n, N);
        std::size_t l = 0;
        for (auto g : pts[n]) l = std::max(l, P.at(g).support_width());
        out.widths.push_back(l);
    }
    const PointSpace VN(p, N);
    std::vector<HomogeneousSpace> spaces;
    std::vector<RankTable> tables;
    std::vector<std::vector<std::vector<std::uint64_t>>> levels(N + 1);  // image indices per admissible map
    std::uint64_t spent = 0;
    for (std::size_t n = 0; n <= N; ++n) {
        const std::size_t l = out.widths[n];
        spaces.emplace_back(p, l, d);
        const auto& H = spaces.back();
        tables.emplace_back(p, l, d, ropt, budget);
        const auto& T = tables.back();
        std::vector<std::uint64_t> target;
        for (auto g : pts[n]) target.push_back(H.index(P.at(g).project(l)));
        std::vector<std::vector<std::uint64_t>> cands;
        if (enumerate) {
            for (const auto& imgs : enumerate(n, l)) {
                if (imgs.size() != n) throw PreconditionError("enumerated map has the wrong number of images");
                std::vector<std::uint64_t> idx;
                for (const auto& q : imgs) idx.push_back(H.index(q.nvars() == l ? q : q.project(l)));
                cands.push_back(std::move(idx));
            }
        } else {
            const std::uint64_t total = checked_pow(H.size(), n);
            spent += checked_mul(total, pts[n].size());
            require_budget("lift level enumeration", spent, budget);
            for (std::uint64_t c = 0; c < total; ++c) cands.push_back(detail::decode_images(c, n, H.size()));
        }
        const PointSpace Vn(p, n);
        for (auto& im : cands) {
            bool ok = true;
            for (std::uint64_t i = 0; i < Vn.size() && ok; ++i) {
                const auto v = Vn.point(i);
                const auto res = H.sub(target[i], detail::chi_at(H, im, v));
                if (T.upper(res) > C) {
                    ok = false;
                    if (T.lower(res) <= C) ++out.undecided;
                }
            }
            if (ok) levels[n].push_back(std::move(im));
        }
        if (levels[n].empty())
            throw EmptyLevel(n, "no linear map satisfies the rank bound " + std::to_string(C));
        out.level_sizes.push_back(levels[n].size());
    }
    out.system.sizes = out.level_sizes;
    for (std::size_t n = 0; n < N; ++n) {
        std::map<std::vector<std::uint64_t>, std::size_t> where;
        for (std::size_t k = 0; k < levels[n].size(); ++k) where.emplace(levels[n][k], k);
        std::vector<std::size_t> f;
        const auto& H1 = spaces[n + 1];
        for (const auto& im : levels[n + 1]) {
            std::vector<std::uint64_t> r;
            for (std::size_t i = 0; i < n; ++i) r.push_back(spaces[n].index(H1.element(im[i]).project(out.widths[n])));
            auto it = where.find(r);
            if (it == where.end()) throw std::logic_error("restriction of an admissible map is not admissible");
            f.push_back(it->second);
        }
        out.system.maps.push_back(std::move(f));
    }
    out.thread = koenig_select(out.system);
    const auto& top = levels[N][out.thread.elements[N]];
    for (auto i : top) out.images.push_back(spaces[N].element(i).with_nvars(nv));
    for (std::uint64_t g = 0; g < VN.size(); ++g) {
        const auto v = VN.point(g);
        Poly chi(p, nv, d);
        for (std::size_t i = 0; i < N; ++i) chi += out.images[i].scaled(v[i]);
        const auto res = rank(P.at(g) - chi, [&] {
            RankOptions o = ropt;
            o.kind = RankKind::homogeneous;
            return o;
        }());
        out.distance = std::max(out.distance, res.upper);
    }
    return out;
}

struct HomFamily {
    /// chi[n][i] = m_n x m_n matrix image of the i-th basis vector of Gamma_n.
    std::vector<std::vector<Matrix>> chi;
    std::vector<std::size_t> level_sizes;
    CompatibleSequence thread;
    InverseSystem system;
};

/// Truncations Gamma_n = F_p^{g_n} and V_n = W_n = F_p^{m_n} with g, m nondecreasing; `a` is tabulated over Gamma_N
/// (lexicographic index) with m_N x m_N values. X_n = homomorphisms chi with rank of the top-left m_n block of
/// a(gamma) - chi(gamma) at most C on Gamma_n; q_n restricts to Gamma_n and takes the top-left block.
inline HomFamily hom_compat_harness(PrimeModulus p, const std::vector<Matrix>& a, unsigned C,
                                    const std::vector<std::size_t>& group_dims,
                                    const std::vector<std::size_t>& space_dims,
                                    std::uint64_t budget = kDefaultBudget) {
    if (group_dims.empty() || group_dims.size() != space_dims.size())
        throw PreconditionError("truncation dimensions must be given for every level");
    for (std::size_t n = 0; n + 1 < group_dims.size(); ++n)
        if (group_dims[n] > group_dims[n + 1] || space_dims[n] > space_dims[n + 1])
            throw PreconditionError("truncation dimensions must be nondecreasing");
    const std::size_t N = group_dims.size() - 1, gN = group_dims.back(), mN = space_dims.back();
    const PointSpace GN(p, gN);
    if (a.size() != GN.size()) throw PreconditionError("a must be tabulated over the top group");
    for (const auto& m : a)
        if (m.rows() != mN || m.cols() != mN) throw PreconditionError("a has values of the wrong shape");
    auto block = [](const Matrix& M, std::size_t m) {
        Matrix r(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) r(i, j) = M(i, j);
        return r;
    };
    HomFamily out;
    std::vector<std::vector<std::vector<Matrix>>> levels(N + 1);
    std::uint64_t spent = 0;
    for (std::size_t n = 0; n <= N; ++n) {
        const std::size_t g = group_dims[n], m = space_dims[n];
        const PointSpace Gn(p, g), Mm(p, m * m);
        const std::uint64_t total = checked_pow(Mm.size(), g);
        spent += checked_mul(total, Gn.size());
        require_budget("homomorphism level enumeration", spent, budget);
        std::vector<Matrix> target;
        for (std::uint64_t i = 0; i < Gn.size(); ++i) {
            auto v = Gn.point(i);
            v.resize(gN, 0);
            target.push_back(block(a[GN.index(v)], m));
        }
        for (std::uint64_t c = 0; c < total; ++c) {
            const auto codes = detail::decode_images(c, g, Mm.size());
            std::vector<Matrix> imgs;
            for (auto code : codes) {
                const auto e = Mm.point(code);
                Matrix M(m, m);
                for (std::size_t k = 0; k < m * m; ++k) M(k / m, k % m) = e[k];
                imgs.push_back(std::move(M));
            }
            bool ok = true;
            for (std::uint64_t i = 0; i < Gn.size() && ok; ++i) {
                const auto v = Gn.point(i);
                Matrix chi(m, m);
                for (std::size_t k = 0; k < g; ++k)
                    if (v[k]) chi = add(p, chi, scale(p, v[k], imgs[k]));
                ok = rank(p, sub(p, target[i], chi)) <= C;
            }
            if (ok) levels[n].push_back(std::move(imgs));
        }
        if (levels[n].empty())
            throw EmptyLevel(n, "no homomorphism satisfies the rank bound " + std::to_string(C));
        out.level_sizes.push_back(levels[n].size());
    }
    out.system.sizes = out.level_sizes;
    for (std::size_t n = 0; n < N; ++n) {
        std::map<std::vector<Matrix>, std::size_t> where;
        for (std::size_t k = 0; k < levels[n].size(); ++k) where.emplace(levels[n][k], k);
        std::vector<std::size_t> f;
        for (const auto& imgs : levels[n + 1]) {
            std::vector<Matrix> r;
            for (std::size_t k = 0; k < group_dims[n]; ++k) r.push_back(block(imgs[k], space_dims[n]));
            auto it = where.find(r);
            if (it == where.end()) throw std::logic_error("restriction of an admissible homomorphism is not admissible");
            f.push_back(it->second);
        }
        out.system.maps.push_back(std::move(f));
    }
    out.thread = koenig_select(out.system);
    for (std::size_t n = 0; n <= N; ++n) out.chi.push_back(levels[n][out.thread.elements[n]]);
    return out;
}

}  // namespace approxcoh
