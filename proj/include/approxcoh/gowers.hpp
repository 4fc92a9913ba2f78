#pragma once

// Gowers U^m norms of phase functions psi(F), iterated differences and the nonclassical Delta-degree.

#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "charsum.hpp"
#include "cochain.hpp"
#include "multilinear.hpp"
#include "poly.hpp"

namespace approxcoh {

/// f = psi(F) for F a polynomial over F_p, or F an explicit table F_p^n -> Z/p^k.
class PhaseFunction {
   public:
    static PhaseFunction from_poly(Poly F) { return PhaseFunction(std::move(F)); }
    static PhaseFunction from_table(PrimeModulus p, std::size_t n, unsigned k, std::vector<Residue> values) {
        if (k == 0) throw PreconditionError("torsion exponent k must be positive");
        const std::uint64_t q = checked_pow(p.value(), k);
        if (q > (1u << 30)) throw PreconditionError("torsion modulus too large");
        if (values.size() != checked_pow(p.value(), n))
            throw PreconditionError("value table must have p^n entries");
        for (auto v : values)
            if (v >= q) throw PreconditionError("table value outside Z/p^k");
        return PhaseFunction(p, n, k, std::move(values));
    }

    const PrimeModulus& modulus() const noexcept { return p_; }
    std::size_t nvars() const noexcept { return n_; }
    unsigned torsion() const noexcept { return k_; }
    Residue value_modulus() const noexcept { return static_cast<Residue>(checked_pow(p_.value(), k_)); }
    bool has_poly() const noexcept { return poly_.has_value(); }
    const Poly& poly() const {
        if (!poly_) throw PreconditionError("phase function has no polynomial carrier");
        return *poly_;
    }
    /// Values at every point of F_p^n, lexicographic order.
    std::vector<Residue> table() const { return poly_ ? CompiledPoly(*poly_).table() : table_; }

   private:
    explicit PhaseFunction(Poly F) : p_(F.field()), n_(F.nvars()), k_(1), poly_(std::move(F)) {}
    PhaseFunction(PrimeModulus p, std::size_t n, unsigned k, std::vector<Residue> values)
        : p_(p), n_(n), k_(k), table_(std::move(values)) {}

    PrimeModulus p_;
    std::size_t n_;
    unsigned k_;
    std::optional<Poly> poly_;
    std::vector<Residue> table_;
};

enum class GowersAlgorithm { naive, derivative };

inline const char* to_string(GowersAlgorithm a) { return a == GowersAlgorithm::naive ? "naive" : "derivative"; }

struct GowersResult {
    unsigned m = 0;
    GowersAlgorithm algorithm = GowersAlgorithm::naive;
    /// Counts of Delta_{v_m}..Delta_{v_1} F(x) = a over all (x, v_1, ..., v_m).
    CharacterSum counts{2, 2};
    /// ||psi(F)||^{2^m} exactly, when it is rational.
    std::optional<Rational> raw_power;
    long double raw_real = 0;
    /// The norm itself.
    long double value = 0;
};

namespace detail {

/// idx[x] = index(x + v) for every x in F_p^n.
inline std::vector<std::uint32_t> translation_table(const PointSpace& space, std::span<const Residue> v) {
    const unsigned p = space.modulus().value();
    const std::size_t n = space.dimension();
    std::vector<std::uint32_t> out(space.size());
    std::vector<Residue> x(n, 0), y(v.begin(), v.end());
    for (std::uint64_t i = 0; i < space.size(); ++i) {
        out[i] = static_cast<std::uint32_t>(space.index(y));
        for (std::size_t t = n; t-- > 0;) {
            y[t] = y[t] + 1 == p ? 0 : y[t] + 1;
            if (++x[t] < p) break;
            x[t] = 0;
        }
    }
    return out;
}

inline void difference_table(const std::vector<Residue>& in, const std::vector<std::uint32_t>& shift, Residue q,
                             std::vector<Residue>& out) {
    out.resize(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = (in[shift[i]] + q - in[i]) % q;
}

inline GowersResult finish(unsigned m, GowersAlgorithm alg, CharacterSum counts) {
    GowersResult r;
    r.m = m;
    r.algorithm = alg;
    r.raw_power = counts.rational();
    r.raw_real = r.raw_power ? r.raw_power->to_real() : counts.value().real();
    if (r.raw_real < 0 && r.raw_real > -1e-12L) r.raw_real = 0;
    r.value = r.raw_real <= 0 ? 0 : std::pow(r.raw_real, 1.0L / static_cast<long double>(1ull << m));
    if (r.raw_power && *r.raw_power == Rational(1, 1)) r.value = 1;
    r.counts = std::move(counts);
    return r;
}

}  // namespace detail

/// Delta_{dirs.back()} ... Delta_{dirs.front()} f. Symbolic for polynomial carriers.
inline PhaseFunction iterated_delta(const PhaseFunction& f, const std::vector<FieldVector>& dirs) {
    for (const auto& h : dirs)
        if (!(h.modulus() == f.modulus()) || h.size() != f.nvars())
            throw PreconditionError("direction does not lie in the domain of the phase function");
    if (f.has_poly()) {
        Poly D = f.poly();
        for (const auto& h : dirs) D = D.delta(h.coords());
        return PhaseFunction::from_poly(std::move(D));
    }
    const PointSpace space(f.modulus(), f.nvars());
    std::vector<Residue> t = f.table(), next;
    for (const auto& h : dirs) {
        detail::difference_table(t, detail::translation_table(space, h.coords()), f.value_modulus(), next);
        std::swap(t, next);
    }
    return PhaseFunction::from_table(f.modulus(), f.nvars(), f.torsion(), std::move(t));
}

/// ||f||_{U^m}. The naive algorithm differences value tables over all direction tuples; the derivative algorithm
/// forms each iterated difference symbolically and reuses bias() through a memo keyed by the canonical polynomial.
inline GowersResult gowers_norm(const PhaseFunction& f, unsigned m, GowersAlgorithm alg,
                                std::uint64_t budget = kDefaultBudget, unsigned workers = 1) {
    if (m == 0) throw PreconditionError("Gowers norm order m must be at least 1");
    const PointSpace space(f.modulus(), f.nvars());
    const unsigned p = f.modulus().value();
    const Residue q = f.value_modulus();
    const std::uint64_t dirs = checked_pow(space.size(), m);

    if (alg == GowersAlgorithm::naive) {
        require_budget("naive Gowers enumeration", checked_mul(dirs, space.size()), budget);
        const std::vector<Residue> base = f.table();
        // outermost direction v_1 is split across workers
        auto counts = parallel_count(p, q, space.size(), workers, [&](std::uint64_t b, std::uint64_t e, CharacterSum& out) {
            std::vector<std::vector<Residue>> level(m + 1);
            level[0] = base;
            // translation tables are cached only while all of them fit comfortably in memory
            const bool cache = checked_mul(space.size(), space.size()) <= (1u << 24);
            std::vector<std::vector<std::uint32_t>> shifts(cache ? space.size() : 1);
            auto shift = [&](std::uint64_t v) -> const std::vector<std::uint32_t>& {
                if (!cache) return shifts[0] = detail::translation_table(space, space.point(v));
                if (shifts[v].empty()) shifts[v] = detail::translation_table(space, space.point(v));
                return shifts[v];
            };
            std::function<void(unsigned)> rec = [&](unsigned depth) {
                if (depth == m) {
                    for (auto val : level[m]) out.record(val);
                    return;
                }
                for (std::uint64_t v = 0; v < space.size(); ++v) {
                    detail::difference_table(level[depth], shift(v), q, level[depth + 1]);
                    rec(depth + 1);
                }
            };
            for (std::uint64_t v1 = b; v1 < e; ++v1) {
                detail::difference_table(level[0], shift(v1), q, level[1]);
                rec(1);
            }
        });
        return detail::finish(m, alg, std::move(counts));
    }

    if (!f.has_poly()) throw PreconditionError("the derivative algorithm needs a polynomial carrier");
    require_budget("derivative Gowers direction tuples", dirs, budget);
    std::map<Poly, CharacterSum> memo;
    std::uint64_t evaluated = 0;
    CharacterSum total(p, p);
    std::vector<Poly> level(m + 1, f.poly());
    std::function<void(unsigned)> rec = [&](unsigned depth) {
        if (depth == m) {
            auto it = memo.find(level[m]);
            if (it == memo.end()) {
                evaluated = evaluated + space.size();
                require_budget("derivative Gowers evaluations", evaluated + dirs, budget);
                it = memo.emplace(level[m], bias(level[m], budget, workers)).first;
            }
            total += it->second;
            return;
        }
        for (std::uint64_t v = 0; v < space.size(); ++v) {
            level[depth + 1] = level[depth].delta(space.point(v));
            rec(depth + 1);
        }
    };
    rec(0);
    return detail::finish(m, alg, std::move(total));
}

/// Least d with every (d+1)-fold difference of f identically zero, searched up to max_d; nullopt above.
/// Differences along the standard basis suffice: Delta_{h+h'} = Delta_h + Delta_{h'} + Delta_{h'} Delta_h, so any
/// product of d+1 difference operators lies in the span of products of at least d+1 basis differences.
inline std::optional<unsigned> delta_degree(const PhaseFunction& f, unsigned max_d,
                                            std::uint64_t budget = kDefaultBudget) {
    const PointSpace space(f.modulus(), f.nvars());
    const std::size_t n = f.nvars();
    const Residue q = f.value_modulus();
    std::vector<std::vector<std::uint32_t>> basis_shift(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Residue> e(n, 0);
        e[i] = 1;
        basis_shift[i] = detail::translation_table(space, e);
    }
    const std::vector<Residue> base = f.table();
    auto all_zero = [](const std::vector<Residue>& t) {
        for (auto v : t)
            if (v) return false;
        return true;
    };
    std::uint64_t work = 0;
    // frontier: all tables Delta_{e_{i_1}}..Delta_{e_{i_j}} f with i_1 <= ... <= i_j that are nonzero
    struct Node {
        std::size_t last;
        std::vector<Residue> table;
    };
    std::vector<Node> frontier;
    if (!all_zero(base)) frontier.push_back({0, base});
    for (unsigned d = 0; d <= max_d; ++d) {
        // frontier holds the nonzero d-fold differences; f has degree <= d iff every (d+1)-fold one vanishes
        std::vector<Node> next;
        for (const auto& node : frontier)
            for (std::size_t i = node.last; i < n; ++i) {
                work += space.size();
                require_budget("delta-degree differencing", work, budget);
                std::vector<Residue> t;
                detail::difference_table(node.table, basis_shift[i], q, t);
                if (!all_zero(t)) next.push_back({i, std::move(t)});
            }
        if (frontier.empty() || next.empty()) {
            if (frontier.empty()) return d == 0 ? std::optional<unsigned>(0) : std::optional<unsigned>(d - 1);
            return d;
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

/// Reads a value table: optional '#' header "p=<p> n=<n> k=<k>", then rows "c_0,...,c_{n-1},value".
inline PhaseFunction read_value_table(std::istream& in) {
    std::string line;
    std::optional<unsigned> p, k;
    std::optional<std::size_t> n;
    std::vector<std::pair<std::vector<Residue>, Residue>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string tok;
            while (hs >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const auto key = tok.substr(0, eq);
                const auto val = std::stoul(tok.substr(eq + 1));
                if (key == "p") p = static_cast<unsigned>(val);
                if (key == "n") n = val;
                if (key == "k") k = static_cast<unsigned>(val);
            }
            continue;
        }
        std::vector<Residue> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                cells.push_back(static_cast<Residue>(std::stoul(cell)));
            } catch (const std::exception&) {
                throw PreconditionError("malformed table cell '" + cell + "'");
            }
        }
        if (cells.empty()) continue;
        const Residue v = cells.back();
        cells.pop_back();
        rows.emplace_back(std::move(cells), v);
    }
    if (!p || !k) throw PreconditionError("value table header must give p and k");
    const std::size_t dim = n.value_or(rows.empty() ? 0 : rows.front().first.size());
    const PrimeModulus pm(*p);
    const PointSpace space(pm, dim);
    if (rows.size() != space.size()) throw PreconditionError("value table must list all p^n points");
    std::vector<Residue> values(space.size(), 0);
    std::vector<bool> seen(space.size(), false);
    for (const auto& [x, v] : rows) {
        if (x.size() != dim) throw PreconditionError("table row has the wrong number of coordinates");
        for (auto c : x)
            if (c >= *p) throw PreconditionError("table coordinate out of range");
        const auto idx = space.index(x);
        if (seen[idx]) throw PreconditionError("duplicate table row");
        seen[idx] = true;
        values[idx] = v;
    }
    return PhaseFunction::from_table(pm, dim, *k, std::move(values));
}

/// The phase (v, x_1, ..., x_d) -> psi(A~(v)(x_1, ..., x_d)) on V x W^d, coordinates flattened as
/// (v | x_1 | ... | x_d). Uses the polarization, so d may reach p.
inline PhaseFunction cocycle_phase(const Cochain& A) {
    if (A.degree() != 1) throw PreconditionError("cocycle_phase needs a degree-1 cochain");
    const unsigned d = A.degree_bound();
    const std::size_t s = A.group().s, n = A.nvars();
    const auto& p = A.group().p;
    std::vector<MultilinearForm> forms;
    for (const auto& v : A.values()) {
        if (!v.is_homogeneous() || (!v.is_zero() && v.degree() != static_cast<int>(d)))
            throw PreconditionError("cocycle_phase needs homogeneous values of degree " + std::to_string(d));
        forms.push_back(polarize(v, d));
    }
    const PointSpace block(p, d * n);
    const PointSpace whole(p, s + d * n);
    std::vector<Residue> values(whole.size());
    std::vector<Residue> x(d * n);
    for (std::uint64_t g = 0; g < A.size(); ++g)
        for (std::uint64_t j = 0; j < block.size(); ++j) {
            block.decode(j, x);
            values[g * block.size() + j] = forms[g].eval(x);
        }
    return PhaseFunction::from_table(p, s + d * n, 1, std::move(values));
}

}  // namespace approxcoh
