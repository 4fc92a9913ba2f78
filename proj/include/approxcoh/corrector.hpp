#pragma once

// Correcting homomorphisms: exhaustive minimax and greedy search over linear maps F_p^s -> M^d, the rank-1 algorithm
// for cyclic groups, the noisy-instance synthesizer and the minimax growth experiment.

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cochain.hpp"
#include "cohomology.hpp"
#include "linalg.hpp"
#include "rank.hpp"

namespace approxcoh {

enum class CorrectionMethod { exhaustive, greedy, cyclic_rank1 };

inline const char* to_string(CorrectionMethod m) {
    switch (m) {
        case CorrectionMethod::exhaustive: return "exhaustive";
        case CorrectionMethod::greedy: return "greedy";
        case CorrectionMethod::cyclic_rank1: return "cyclic-rank1";
    }
    return "?";
}

struct CorrectionResult {
    LinearMap chi;
    /// max_v of the certified upper bound of rank(A(v) - chi(v)).
    unsigned distance = 0;
    /// max_v of the lower bound of the same ranks.
    unsigned distance_lower = 0;
    CorrectionMethod method = CorrectionMethod::exhaustive;
    bool optimal = false;
    std::uint64_t candidates = 0;
};

/// Rank brackets of every element of M^d, indexed like HomogeneousSpace.
class RankTable {
   public:
    RankTable(PrimeModulus p, std::size_t n, unsigned d, const RankOptions& opt = {},
              std::uint64_t budget = kDefaultBudget)
        : space_(p, n, d) {
        require_budget("rank table over M^d", space_.size(), budget);
        lower_.resize(space_.size());
        upper_.resize(space_.size());
        RankOptions o = opt;
        o.kind = RankKind::homogeneous;
        for (std::uint64_t i = 0; i < space_.size(); ++i) {
            const Poly e = space_.element(i);
            if (e.is_zero()) continue;
            const auto r = rank(e, o);
            lower_[i] = static_cast<std::uint8_t>(r.lower);
            upper_[i] = static_cast<std::uint8_t>(r.upper);
            if (r.lower != r.upper) exact_ = false;
        }
    }

    const HomogeneousSpace& space() const noexcept { return space_; }
    unsigned lower(std::uint64_t i) const { return lower_[i]; }
    unsigned upper(std::uint64_t i) const { return upper_[i]; }
    /// Every bracket is a single value.
    bool exact() const noexcept { return exact_; }

   private:
    HomogeneousSpace space_;
    std::vector<std::uint8_t> lower_, upper_;
    bool exact_ = true;
};

namespace detail {

struct IndexedCochain {
    std::vector<std::uint64_t> values;   // A(v) as M^d indices
    std::vector<std::vector<Residue>> points;
};

inline IndexedCochain index_cochain(const Cochain& A, const HomogeneousSpace& H) {
    if (A.degree() != 1) throw PreconditionError("correction needs a degree-1 cochain");
    if (A.nvars() != H.nvars() || A.degree_bound() != H.degree())
        throw PreconditionError("cochain values do not live in M^d");
    IndexedCochain ic;
    const PointSpace G = A.group().space();
    for (std::uint64_t g = 0; g < A.size(); ++g) {
        ic.values.push_back(H.index(A.at(g)));
        ic.points.push_back(G.point(g));
    }
    return ic;
}

inline std::uint64_t chi_at(const HomogeneousSpace& H, const std::vector<std::uint64_t>& images,
                            const std::vector<Residue>& v) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < images.size(); ++i)
        if (v[i]) r = H.add(r, H.scale(v[i], images[i]));
    return r;
}

struct Score {
    unsigned max_upper = 0;
    unsigned max_lower = 0;
    unsigned sum_upper = 0;
};

inline Score score(const RankTable& T, const IndexedCochain& A, const std::vector<std::uint64_t>& images,
                   unsigned cutoff = std::numeric_limits<unsigned>::max()) {
    Score s;
    const auto& H = T.space();
    for (std::size_t g = 0; g < A.values.size(); ++g) {
        const auto res = H.sub(A.values[g], chi_at(H, images, A.points[g]));
        s.max_upper = std::max(s.max_upper, T.upper(res));
        s.max_lower = std::max(s.max_lower, T.lower(res));
        s.sum_upper += T.upper(res);
        if (s.max_upper >= cutoff) break;
    }
    return s;
}

inline std::vector<std::uint64_t> decode_images(std::uint64_t code, std::size_t s, std::uint64_t base) {
    std::vector<std::uint64_t> im(s);
    for (std::size_t i = s; i-- > 0;) {
        im[i] = code % base;
        code /= base;
    }
    return im;
}

inline LinearMap to_linear_map(const GroupSpec& G, const HomogeneousSpace& H, const std::vector<std::uint64_t>& im) {
    std::vector<Poly> images;
    for (auto i : im) images.push_back(H.element(i));
    return LinearMap(G, std::move(images));
}

}  // namespace detail

/// Exact min over linear chi of max_v rank(A(v) - chi(v)). Candidates are enumerated with the image of e_1 most
/// significant; the first minimizer wins.
inline CorrectionResult minimax_correct(const Cochain& A, const RankTable& T, std::uint64_t budget = kDefaultBudget,
                                        unsigned workers = 1) {
    const auto& H = T.space();
    const std::size_t s = A.group().s;
    if (s == 0) throw PreconditionError("minimax_correct needs s >= 1");
    const std::uint64_t candidates = checked_pow(H.size(), s);
    require_budget("exhaustive correction", checked_mul(candidates, A.size()), budget);
    const auto ic = detail::index_cochain(A, T.space());

    struct Partial {
        unsigned best = std::numeric_limits<unsigned>::max();
        std::uint64_t arg = 0;
        unsigned min_lower = std::numeric_limits<unsigned>::max();
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(candidates, 64))));
    std::vector<Partial> part(workers);
    auto run = [&](unsigned w, std::uint64_t b, std::uint64_t e) {
        Partial& P = part[w];
        for (std::uint64_t c = b; c < e; ++c) {
            const auto im = detail::decode_images(c, s, H.size());
            // with exact brackets the lower bounds equal the upper ones, so a cutoff is safe
            const unsigned cut = T.exact() ? P.best : std::numeric_limits<unsigned>::max();
            const auto sc = detail::score(T, ic, im, cut);
            if (sc.max_upper < P.best) {
                P.best = sc.max_upper;
                P.arg = c;
            }
            if (!T.exact()) P.min_lower = std::min(P.min_lower, sc.max_lower);
        }
    };
    if (workers == 1) {
        run(0, 0, candidates);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (candidates + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t b = std::min(candidates, w * chunk), e = std::min(candidates, b + chunk);
            pool.emplace_back(run, w, b, e);
        }
        for (auto& t : pool) t.join();
    }
    Partial best;
    for (const auto& P : part) {
        if (P.best < best.best) {
            best.best = P.best;
            best.arg = P.arg;
        }
        best.min_lower = std::min(best.min_lower, P.min_lower);
    }
    const auto im = detail::decode_images(best.arg, s, H.size());
    const auto sc = detail::score(T, ic, im);
    CorrectionResult r{detail::to_linear_map(A.group(), H, im), sc.max_upper, sc.max_lower,
                       CorrectionMethod::exhaustive, false, candidates};
    r.optimal = T.exact() || best.min_lower >= best.best;
    return r;
}

/// Coordinate descent over chi(e_i), objective (max rank, then total rank). Restart 0 starts from chi(e_i) = A(e_i),
/// restart k > 0 from images drawn with a generator seeded by (seed, k).
inline CorrectionResult greedy_correct(const Cochain& A, const RankTable& T, std::uint64_t seed,
                                       unsigned iterations = 64, unsigned restarts = 4) {
    const auto& H = T.space();
    const std::size_t s = A.group().s;
    if (s == 0) throw PreconditionError("greedy_correct needs s >= 1");
    const auto ic = detail::index_cochain(A, H);
    const PointSpace G = A.group().space();
    auto better = [](const detail::Score& a, const detail::Score& b) {
        return a.max_upper != b.max_upper ? a.max_upper < b.max_upper : a.sum_upper < b.sum_upper;
    };
    std::optional<std::pair<detail::Score, std::vector<std::uint64_t>>> best;
    std::uint64_t evaluated = 0;
    for (unsigned rs = 0; rs < std::max(1u, restarts); ++rs) {
        std::vector<std::uint64_t> im(s);
        if (rs == 0) {
            for (std::size_t i = 0; i < s; ++i) {
                std::vector<Residue> e(s, 0);
                e[i] = 1;
                im[i] = ic.values[G.index(e)];
            }
        } else {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), rs};
            std::mt19937_64 rng(seq);
            std::uniform_int_distribution<std::uint64_t> pick(0, H.size() - 1);
            for (auto& x : im) x = pick(rng);
        }
        auto cur = detail::score(T, ic, im);
        ++evaluated;
        for (unsigned it = 0; it < iterations; ++it) {
            bool improved = false;
            for (std::size_t i = 0; i < s; ++i) {
                const auto keep = im[i];
                std::uint64_t arg = keep;
                for (std::uint64_t c = 0; c < H.size(); ++c) {
                    if (c == keep) continue;
                    im[i] = c;
                    const auto sc = detail::score(T, ic, im);
                    ++evaluated;
                    if (better(sc, cur)) {
                        cur = sc;
                        arg = c;
                        improved = true;
                    }
                }
                im[i] = arg;
            }
            if (!improved) break;
        }
        if (!best || better(cur, best->first)) best.emplace(cur, im);
    }
    CorrectionResult r{detail::to_linear_map(A.group(), H, best->second), best->first.max_upper,
                       best->first.max_lower, CorrectionMethod::greedy, false, evaluated};
    return r;
}

/// Maps Z_N or the interval [-N, N] of Z into dim x dim matrices over F_p.
struct MatrixCochain {
    enum class Domain { interval, cyclic };
    PrimeModulus p{2};
    Domain domain = Domain::interval;
    int N = 0;
    std::size_t dim = 0;
    /// interval: entry n + N holds A(n); cyclic: entry n holds A(n), 0 <= n < N.
    std::vector<Matrix> values;

    int lo() const noexcept { return domain == Domain::interval ? -N : 0; }
    int hi() const noexcept { return domain == Domain::interval ? N : N - 1; }
    bool contains(int n) const noexcept { return n >= lo() && n <= hi(); }
    /// Sum in the domain, or nullopt when it leaves the interval.
    std::optional<int> add(int a, int b) const noexcept {
        if (domain == Domain::cyclic) return ((a + b) % N + N) % N;
        if (!contains(a + b)) return std::nullopt;
        return a + b;
    }
    const Matrix& at(int n) const { return values.at(static_cast<std::size_t>(n - lo())); }

    void validate() const {
        if (N <= 0) throw PreconditionError("matrix cochain needs N >= 1");
        const std::size_t expected = static_cast<std::size_t>(hi() - lo() + 1);
        if (values.size() != expected) throw PreconditionError("matrix cochain table is incomplete");
        for (const auto& m : values)
            if (m.rows() != dim || m.cols() != dim) throw PreconditionError("matrix of the wrong shape");
    }
};

struct CyclicCorrection {
    /// chi(n) = n X.
    Matrix X;
    unsigned distance = 0;
    unsigned max_defect_rank = 0;
    /// Which structure produced X: "homomorphism", "common-image", "common-kernel", the same two prefixed by
    /// "normalized-", or "subspace" when no rank-1 structure exists.
    std::string structure;
    bool structure_found = false;
    /// Two defect arguments (m, n), (m', n') whose operators share neither image nor kernel, when no structure exists.
    std::vector<int> counterexample;
};

namespace detail {

inline Matrix matrix_defect(const PrimeModulus& p, const MatrixCochain& A, int m, int n, int mn) {
    return sub(p, sub(p, A.at(mn), A.at(m)), A.at(n));
}

/// Basis columns of the sum of column spaces of `ops`, extended to a basis of F_p^dim; first k columns span the sum.
inline std::pair<Matrix, std::size_t> adapted_basis(const PrimeModulus& p, std::size_t dim,
                                                    const std::vector<Matrix>& ops) {
    Matrix cols(dim, 0);
    std::vector<std::vector<Residue>> basis;
    auto try_add = [&](const std::vector<Residue>& v) {
        Matrix M(dim, basis.size() + 1);
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (std::size_t i = 0; i < dim; ++i) M(i, j) = basis[j][i];
        for (std::size_t i = 0; i < dim; ++i) M(i, basis.size()) = v[i];
        if (rank(p, M) == basis.size() + 1) basis.push_back(v);
    };
    for (const auto& op : ops)
        for (std::size_t j = 0; j < dim && basis.size() < dim; ++j) {
            std::vector<Residue> v(dim);
            for (std::size_t i = 0; i < dim; ++i) v[i] = op(i, j);
            try_add(v);
        }
    const std::size_t k = basis.size();
    for (std::size_t j = 0; j < dim && basis.size() < dim; ++j) {
        std::vector<Residue> e(dim, 0);
        e[j] = 1;
        try_add(e);
    }
    Matrix P(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) P(i, j) = basis[j][i];
    return {P, k};
}

inline Matrix inverse(const PrimeModulus& p, const Matrix& P) {
    auto inv = solve(p, P, Matrix::identity(P.rows()));
    if (!inv) throw std::logic_error("adapted basis is singular");
    return *inv;
}

/// Removes the component of A(1) inside the common image of the defects: B = P (I - E_k) P^{-1} A.
inline Matrix strip_image(const PrimeModulus& p, const Matrix& A1, const Matrix& P, std::size_t k) {
    Matrix C = multiply(p, inverse(p, P), A1);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < C.cols(); ++j) C(i, j) = 0;
    return multiply(p, P, C);
}

}  // namespace detail

/// Rank-1 correction for Z_N or [-N, N]. If all defects share an image line U, splitting A along a basis adapted to
/// U leaves a part with vanishing defect, which is additive and hence n X; the discarded part has rank <= 1. The
/// kernel case is the transpose. If neither holds, the same is tried after subtracting A(0), costing rank(A(0)) <= 1.
inline CyclicCorrection cyclic_rank1_correct(const MatrixCochain& A) {
    A.validate();
    const auto& p = A.p;
    if (p.value() == 2) throw PreconditionError("cyclic_rank1_correct needs odd characteristic");
    std::vector<Matrix> defects;
    std::vector<std::array<int, 2>> args;
    CyclicCorrection out;
    for (int m = A.lo(); m <= A.hi(); ++m)
        for (int n = A.lo(); n <= A.hi(); ++n) {
            const auto mn = A.add(m, n);
            if (!mn) continue;
            Matrix r = detail::matrix_defect(p, A, m, n, *mn);
            const auto rk = static_cast<unsigned>(rank(p, r));
            if (rk > 1)
                throw PreconditionError("defect at (" + std::to_string(m) + ", " + std::to_string(n) + ") has rank " +
                                        std::to_string(rk));
            out.max_defect_rank = std::max(out.max_defect_rank, rk);
            defects.push_back(std::move(r));
            args.push_back({m, n});
        }
    const std::size_t dim = A.dim;
    auto transpose_all = [](const std::vector<Matrix>& v) {
        std::vector<Matrix> t;
        for (const auto& m : v) t.push_back(transpose(m));
        return t;
    };
    const bool has_one = A.contains(1);
    const Matrix A1 = has_one ? A.at(1) : Matrix(dim, dim);

    auto distance_of = [&](const Matrix& X) {
        unsigned d = 0;
        for (int n = A.lo(); n <= A.hi(); ++n) {
            const Matrix chi = scale(p, p.from_int(n), X);
            d = std::max(d, static_cast<unsigned>(rank(p, sub(p, A.at(n), chi))));
        }
        return d;
    };

    struct Candidate {
        std::string name;
        std::size_t k;
        Matrix X;
    };
    std::vector<Candidate> cands;
    auto add_candidates = [&](const std::vector<Matrix>& ops, const Matrix& base1, const std::string& prefix) {
        auto [P, k] = detail::adapted_basis(p, dim, ops);
        cands.push_back({prefix + (k == 0 ? "homomorphism" : "common-image"), k, detail::strip_image(p, base1, P, k)});
        auto [Pt, kt] = detail::adapted_basis(p, dim, transpose_all(ops));
        cands.push_back({prefix + (kt == 0 ? "homomorphism" : "common-kernel"), kt,
                         transpose(detail::strip_image(p, transpose(base1), Pt, kt))});
    };
    add_candidates(defects, A1, "");
    // subtracting A(0) shifts every defect by A(0)
    const Matrix A0 = A.at(0);
    std::vector<Matrix> shifted;
    for (const auto& r : defects) shifted.push_back(add(p, r, A0));
    add_candidates(shifted, has_one ? sub(p, A1, A0) : A1, "normalized-");

    std::optional<std::size_t> pick;
    unsigned best = std::numeric_limits<unsigned>::max();
    for (std::size_t c = 0; c < cands.size(); ++c) {
        const unsigned d = distance_of(cands[c].X);
        if (d < best) {
            best = d;
            pick = c;
        }
    }
    out.X = cands[*pick].X;
    out.distance = best;
    out.structure = cands[*pick].k <= 1 ? cands[*pick].name : "subspace";
    out.structure_found = false;
    for (const auto& c : cands)
        if (c.k <= 1) out.structure_found = true;
    if (!out.structure_found) {
        // two nonzero defects sharing neither image nor kernel
        for (std::size_t a = 0; a < defects.size() && out.counterexample.empty(); ++a)
            for (std::size_t b = a + 1; b < defects.size(); ++b) {
                if (is_zero(defects[a]) || is_zero(defects[b])) continue;
                Matrix both(dim, 2 * dim), bothT(dim, 2 * dim);
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t j = 0; j < dim; ++j) {
                        both(i, j) = defects[a](i, j);
                        both(i, dim + j) = defects[b](i, j);
                        bothT(i, j) = defects[a](j, i);
                        bothT(i, dim + j) = defects[b](j, i);
                    }
                if (rank(p, both) == 2 && rank(p, bothT) == 2) {
                    out.counterexample = {args[a][0], args[a][1], args[b][0], args[b][1]};
                    break;
                }
            }
    }
    return out;
}

/// A random homogeneous polynomial of degree d with rank <= r by construction: sum of r products l_j R_j.
inline Poly random_bounded_rank(PrimeModulus p, std::size_t n, unsigned d, unsigned r, std::mt19937_64& rng) {
    Poly out(p, n, d);
    if (d < 2 || n == 0) return out;
    const HomogeneousSpace L(p, n, 1), R(p, n, d - 1);
    std::uniform_int_distribution<std::uint64_t> pl(1, L.size() - 1), pr(0, R.size() - 1);
    for (unsigned j = 0; j < r; ++j) out += L.element(pl(rng)) * R.element(pr(rng));
    return out.with_degree_bound(d);
}

enum class NoiseModel { constant, iid };

inline const char* to_string(NoiseModel m) { return m == NoiseModel::constant ? "constant" : "iid"; }

struct SynthesizedInstance {
    Cochain A;
    std::vector<Poly> noise;
    DefectReport defect;
};

/// A = chi + noise, each noise value a sum of noise_rank products (so rank <= noise_rank).
inline SynthesizedInstance synthesize(const LinearMap& chi, unsigned noise_rank, NoiseModel model, std::uint64_t seed,
                                      RankCache& cache) {
    const auto& G = chi.group();
    const auto& im0 = chi.images().front();
    const std::size_t n = im0.nvars();
    const unsigned d = im0.degree_bound();
    std::mt19937_64 rng(seed);
    std::vector<Poly> noise, vals;
    const Poly shared = random_bounded_rank(G.p, n, d, noise_rank, rng);
    for (std::uint64_t g = 0; g < G.size(); ++g) {
        noise.push_back(model == NoiseModel::constant ? shared : random_bounded_rank(G.p, n, d, noise_rank, rng));
        vals.push_back((chi.at(g) + noise.back()).with_degree_bound(d));
    }
    Cochain A(G, 1, Action::trivial, std::move(vals));
    auto rep = defect(A, Filtration{Filtration::Kind::A, d}, cache);
    return {std::move(A), std::move(noise), std::move(rep)};
}

struct GrowthConfig {
    unsigned p = 2;
    unsigned d = 2;
    std::vector<std::size_t> n_range{1, 2};
    std::vector<std::size_t> s_range{1, 2};
    std::uint64_t budget = kDefaultBudget;
    /// Cochains drawn per cell when full enumeration does not fit; 0 disables sampling.
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    RankOptions rank{};
};

struct GrowthRow {
    unsigned p = 0, d = 0;
    std::size_t n = 0, s = 0;
    /// Defect level r; the row reports the worst distance over cochains of defect <= r.
    std::optional<unsigned> defect;
    std::optional<unsigned> distance;
    std::string method;
    bool optimal = false;
};

/// For every (n, s): exact minimax distance of every map A : F_p^s -> M^d (or a seeded sample), grouped by defect.
inline std::vector<GrowthRow> minimax_growth_experiment(const GrowthConfig& cfg) {
    const PrimeModulus p(cfg.p);
    std::vector<GrowthRow> rows;
    for (auto n : cfg.n_range)
        for (auto s : cfg.s_range) {
            GrowthRow base;
            base.p = cfg.p;
            base.d = cfg.d;
            base.n = n;
            base.s = s;
            const HomogeneousSpace H(p, n, cfg.d);
            const GroupSpec G(p, s);
            const std::uint64_t chis = checked_pow(H.size(), s);
            const std::uint64_t maps = checked_pow(H.size(), G.size());
            const std::uint64_t per_map = checked_mul(chis, G.size()) + checked_mul(G.size(), G.size());
            bool sampled = false;
            std::uint64_t count = maps;
            if (checked_mul(maps, per_map) > cfg.budget || H.size() > cfg.budget) {
                if (cfg.samples == 0 || checked_mul(cfg.samples, per_map) > cfg.budget || H.size() > cfg.budget) {
                    base.method = "budget-exceeded";
                    rows.push_back(base);
                    continue;
                }
                sampled = true;
                count = cfg.samples;
            }
            const RankTable T(p, n, cfg.d, cfg.rank, cfg.budget);
            const PointSpace GS = G.space();
            std::vector<std::vector<Residue>> pts;
            for (std::uint64_t g = 0; g < G.size(); ++g) pts.push_back(GS.point(g));
            std::mt19937_64 rng(cfg.seed ^ (0x9E3779B97F4A7C15ull * (n * 131 + s)));
            std::uniform_int_distribution<std::uint64_t> pick(0, H.size() - 1);
            // worst[r] = max distance over maps with defect exactly r
            std::vector<int> worst;
            bool exact = T.exact();
            std::vector<std::uint64_t> vals(G.size());
            for (std::uint64_t a = 0; a < count; ++a) {
                if (sampled) {
                    for (auto& v : vals) v = pick(rng);
                } else {
                    std::uint64_t rest = a;
                    for (std::size_t g = G.size(); g-- > 0;) {
                        vals[g] = rest % H.size();
                        rest /= H.size();
                    }
                }
                unsigned def = 0;
                for (std::uint64_t g = 0; g < G.size(); ++g)
                    for (std::uint64_t h = 0; h < G.size(); ++h) {
                        const auto r = H.sub(H.sub(vals[GS.add(g, h)], vals[g]), vals[h]);
                        def = std::max(def, T.upper(r));
                    }
                detail::IndexedCochain ic{vals, pts};
                unsigned best = std::numeric_limits<unsigned>::max();
                for (std::uint64_t c = 0; c < chis && best > 0; ++c) {
                    const auto im = detail::decode_images(c, s, H.size());
                    best = std::min(best, detail::score(T, ic, im, best).max_upper);
                }
                if (worst.size() <= def) worst.resize(def + 1, -1);
                worst[def] = std::max(worst[def], static_cast<int>(best));
            }
            int running = -1;
            for (unsigned r = 0; r < worst.size(); ++r) {
                running = std::max(running, worst[r]);
                GrowthRow row = base;
                row.defect = r;
                if (running >= 0) row.distance = static_cast<unsigned>(running);
                row.method = sampled ? "sampled" : "exhaustive";
                row.optimal = exact && !sampled;
                rows.push_back(row);
            }
        }
    return rows;
}

inline std::string growth_csv(const std::vector<GrowthRow>& rows) {
    std::ostringstream out;
    out << "p,d,n,s,defect,distance,method,optimal\n";
    for (const auto& r : rows) {
        out << r.p << ',' << r.d << ',' << r.n << ',' << r.s << ',';
        if (r.defect) out << *r.defect;
        out << ',';
        if (r.distance) out << *r.distance;
        out << ',' << r.method << ',' << (r.optimal ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace approxcoh
