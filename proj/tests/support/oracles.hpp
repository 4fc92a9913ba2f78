#pragma once

// Brute-force reference computations for the test suites. Nothing here calls into the library's algorithms; only
// the polynomial container is shared, and its terms are read back directly.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <unordered_set>
#include <vector>

#include "approxcoh/poly.hpp"

namespace oracle {

using approxcoh::Poly;
using u64 = std::uint64_t;

inline unsigned powmod(unsigned a, unsigned e, unsigned p) {
    unsigned long long r = 1, b = a % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<unsigned>(r);
}

inline unsigned inv(unsigned a, unsigned p) { return powmod(a, p - 2, p); }

inline std::vector<unsigned> point(u64 idx, std::size_t n, unsigned p) {
    std::vector<unsigned> x(n);
    for (std::size_t i = n; i-- > 0;) {
        x[i] = static_cast<unsigned>(idx % p);
        idx /= p;
    }
    return x;
}

inline u64 ipow(u64 b, unsigned e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

/// Term-by-term evaluation.
inline unsigned eval(const Poly& P, const std::vector<unsigned>& x) {
    const unsigned p = P.field().value();
    unsigned long long s = 0;
    for (const auto& [m, c] : P.terms()) {
        unsigned long long t = c;
        for (std::size_t i = 0; i < m.size(); ++i) t = t * powmod(x[i], m[i], p) % p;
        s = (s + t) % p;
    }
    return static_cast<unsigned>(s);
}

inline std::vector<unsigned> table(const Poly& P) {
    const unsigned p = P.field().value();
    std::vector<unsigned> t;
    for (u64 i = 0; i < ipow(p, static_cast<unsigned>(P.nvars())); ++i) t.push_back(eval(P, point(i, P.nvars(), p)));
    return t;
}

/// Number of zeros of P divided by p^n, as (count, total).
inline std::pair<u64, u64> zero_count(const Poly& P) {
    u64 z = 0;
    const auto t = table(P);
    for (auto v : t) z += v == 0;
    return {z, t.size()};
}

/// Counts of the alternating sum over the Gowers cube, indexed by its value mod q, for a table f over F_p^n.
inline std::vector<u64> gowers_counts(const std::vector<unsigned>& f, std::size_t n, unsigned p, unsigned q,
                                      unsigned m) {
    const u64 N = ipow(p, static_cast<unsigned>(n));
    std::vector<u64> counts(q, 0);
    auto add = [&](u64 a, u64 b) {
        auto x = point(a, n, p), y = point(b, n, p);
        u64 r = 0;
        for (std::size_t i = 0; i < n; ++i) r = r * p + (x[i] + y[i]) % p;
        return r;
    };
    std::vector<u64> vs(m, 0);
    const u64 total = ipow(N, m + 1);
    for (u64 code = 0; code < total; ++code) {
        u64 c = code;
        const u64 x = c % N;
        c /= N;
        for (unsigned i = 0; i < m; ++i) {
            vs[i] = c % N;
            c /= N;
        }
        long long s = 0;
        for (unsigned S = 0; S < (1u << m); ++S) {
            u64 y = x;
            for (unsigned i = 0; i < m; ++i)
                if (S >> i & 1) y = add(y, vs[i]);
            const int sign = (__builtin_popcount(S) % 2) ? -1 : 1;
            s += sign * static_cast<long long>(f[y]);
        }
        counts[static_cast<unsigned>(((s % static_cast<long long>(q)) + q) % q)]++;
    }
    return counts;
}

/// Smallest k with all (k+1)-fold differences of f zero, up to max_d; -1 when none. Differences are taken in every
/// direction; the set of distinct k-fold difference tables is kept, so the cost is set size times p^{2n}.
inline int difference_degree(const std::vector<unsigned>& f, std::size_t n, unsigned p, unsigned q, unsigned max_d) {
    const u64 N = f.size();
    auto shift = [&](u64 x, u64 h) {
        auto a = point(x, n, p), b = point(h, n, p);
        u64 r = 0;
        for (std::size_t i = 0; i < n; ++i) r = r * p + (a[i] + b[i]) % p;
        return r;
    };
    auto zero = [](const std::vector<unsigned>& t) {
        return std::all_of(t.begin(), t.end(), [](unsigned v) { return v == 0; });
    };
    std::set<std::vector<unsigned>> level;
    if (!zero(f)) level.insert(f);
    for (unsigned k = 0; k <= max_d; ++k) {
        std::set<std::vector<unsigned>> next;
        for (const auto& t : level)
            for (u64 h = 0; h < N; ++h) {
                std::vector<unsigned> d(N);
                for (u64 x = 0; x < N; ++x) d[x] = (t[shift(x, h)] + q - t[x]) % q;
                if (!zero(d)) next.insert(std::move(d));
            }
        if (next.empty()) return static_cast<int>(k);
        level = std::move(next);
    }
    return -1;
}

/// Matrix rank over F_p by elimination on a copy.
inline unsigned matrix_rank(std::vector<std::vector<unsigned>> a, unsigned p) {
    unsigned r = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        const unsigned iv = inv(a[r][c], p);
        for (auto& v : a[r]) v = static_cast<unsigned>(1ull * v * iv % p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const unsigned f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] = (a[i][j] + p - static_cast<unsigned>(1ull * f * a[r][j] % p)) % p;
        }
        ++r;
    }
    return r;
}

/// F_{p^2} = F_p[t]/(t^2 - nr) for odd p; F_4 = F_2[t]/(t^2 + t + 1). Elements are pairs (a, b) = a + b t.
struct Fp2 {
    unsigned p, nr;
    explicit Fp2(unsigned prime) : p(prime), nr(0) {
        if (p == 2) return;
        for (unsigned a = 2; a < p; ++a)
            if (powmod(a, (p - 1) / 2, p) == p - 1) {
                nr = a;
                break;
            }
    }
    unsigned size() const { return p * p; }
    unsigned add(unsigned x, unsigned y) const {
        return (x / p + y / p) % p * p + (x % p + y % p) % p;
    }
    unsigned mul(unsigned x, unsigned y) const {
        const unsigned a = x % p, b = x / p, c = y % p, d = y / p;
        if (p == 2) {
            // t^2 = t + 1
            const unsigned bd = b * d;
            const unsigned r0 = (a * c + bd) % 2, r1 = (a * d + b * c + bd) % 2;
            return r1 * p + r0;
        }
        const unsigned r0 = static_cast<unsigned>((1ull * a * c + 1ull * b * d % p * nr) % p);
        const unsigned r1 = static_cast<unsigned>((1ull * a * d + 1ull * b * c) % p);
        return r1 * p + r0;
    }
};

/// A homogeneous quadratic over F_{p^2} in n variables as its coefficient vector over monomials x_i x_j, i <= j.
using Quad = std::vector<unsigned>;

inline std::size_t quad_slot(std::size_t n, std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
}

inline u64 quad_code(const Quad& q, unsigned base) {
    u64 c = 0;
    for (auto v : q) c = c * base + v;
    return c;
}

/// Rank of a homogeneous quadratic over F_{p^2} by searching sums of products of linear forms; -1 when above max_r.
inline int quadratic_rank_bruteforce(const Poly& P, int max_r = 2) {
    const unsigned p = P.field().value();
    const std::size_t n = P.nvars();
    const Fp2 F(p);
    const std::size_t slots = n * (n + 1) / 2;
    Quad target(slots, 0);
    for (const auto& [m, c] : P.terms()) {
        std::vector<std::size_t> vars;
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned e = 0; e < m[i]; ++e) vars.push_back(i);
        target[quad_slot(n, vars[0], vars[1])] = c;
    }
    const Quad zero(slots, 0);
    if (target == zero) return 0;
    const u64 forms = ipow(F.size(), static_cast<unsigned>(n));
    std::unordered_set<u64> products;
    std::vector<Quad> plist;
    for (u64 a = 1; a < forms; ++a)
        for (u64 b = a; b < forms; ++b) {
            const auto la = point(a, n, F.size()), lb = point(b, n, F.size());
            Quad q(slots, 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const std::size_t s = quad_slot(n, i, j);
                    q[s] = F.add(q[s], F.mul(la[i], lb[j]));
                }
            if (products.insert(quad_code(q, F.size())).second) plist.push_back(q);
        }
    if (products.count(quad_code(target, F.size()))) return 1;
    if (max_r < 2) return -1;
    // target - q in products; negation in F_{p^2} is coordinatewise
    for (const auto& q : plist) {
        Quad d(slots);
        for (std::size_t s = 0; s < slots; ++s) {
            const unsigned v = q[s], a = v % p, b = v / p;
            const unsigned neg = (p - b) % p * p + (p - a) % p;
            d[s] = F.add(target[s], neg);
        }
        if (products.count(quad_code(d, F.size()))) return 2;
    }
    return -1;
}

/// Whether a homogeneous polynomial over F_p splits as a product l * R over F_p (rank <= 1 over the base field),
/// by trying every linear form up to scaling and testing divisibility through values: l | P over F_p iff P vanishes on
/// the hyperplane l = 0 when deg P < p (Ore), so this is used for d < p only.
inline bool vanishes_on_some_hyperplane(const Poly& P) {
    const unsigned p = P.field().value();
    const std::size_t n = P.nvars();
    const auto vals = table(P);
    for (u64 l = 1; l < ipow(p, static_cast<unsigned>(n)); ++l) {
        const auto c = point(l, n, p);
        bool normalized = false;
        for (auto v : c)
            if (v) {
                normalized = v == 1;
                break;
            }
        if (!normalized) continue;
        bool ok = true;
        for (u64 x = 0; x < vals.size() && ok; ++x) {
            const auto xs = point(x, n, p);
            unsigned long long s = 0;
            for (std::size_t i = 0; i < n; ++i) s += 1ull * c[i] * xs[i];
            if (s % p == 0 && vals[x] != 0) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

/// A homogeneous polynomial of degree d in n variables with uniform coefficients.
inline Poly random_homogeneous(unsigned p, std::size_t n, unsigned d, std::mt19937_64& rng) {
    approxcoh::HomogeneousSpace H(approxcoh::PrimeModulus(p), n, d);
    std::uniform_int_distribution<u64> pick(0, H.size() - 1);
    return H.element(pick(rng));
}

}  // namespace oracle
