#pragma once

// Exact character sums: residue-count vectors and the values of E psi(F) derived from them.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "poly.hpp"

namespace approxcoh {

/// Counts of F(x) = a over a finite domain, for residues a in Z/q (q = p for polynomials, q = p^k for torsion tables).
/// The character sum is sum_a counts[a] * exp(2 pi i a / q) / total.
class CharacterSum {
   public:
    CharacterSum(unsigned p, unsigned q) : p_(p), counts_(q, 0) {}
    CharacterSum(unsigned p, std::vector<std::uint64_t> counts) : p_(p), counts_(std::move(counts)) {
        for (auto c : counts_) total_ += c;
    }

    unsigned characteristic() const noexcept { return p_; }
    unsigned modulus() const noexcept { return static_cast<unsigned>(counts_.size()); }
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t total() const noexcept { return total_; }

    void record(Residue a, std::uint64_t times = 1) {
        counts_[a] += times;
        total_ += times;
    }
    CharacterSum& operator+=(const CharacterSum& o) {
        if (o.counts_.size() != counts_.size()) throw PreconditionError("character sums over different moduli");
        for (std::size_t a = 0; a < counts_.size(); ++a) counts_[a] += o.counts_[a];
        total_ += o.total_;
        return *this;
    }

    /// Complex value, summed in increasing residue order.
    std::complex<long double> value() const {
        const long double q = static_cast<long double>(counts_.size());
        long double re = 0, im = 0;
        for (std::size_t a = 0; a < counts_.size(); ++a) {
            if (counts_[a] == 0) continue;
            const long double ang = 2.0L * 3.14159265358979323846264338327950288L * static_cast<long double>(a) / q;
            re += static_cast<long double>(counts_[a]) * std::cos(ang);
            im += static_cast<long double>(counts_[a]) * std::sin(ang);
        }
        return {re / static_cast<long double>(total_), im / static_cast<long double>(total_)};
    }

    /// Coordinates of total * value in the power basis 1, z, ..., z^{phi(q)-1} of Z[z], z a primitive q-th root of
    /// unity (q = p^k). Two sums are equal as complex numbers iff their reduced vectors and totals agree.
    std::vector<std::int64_t> reduced() const {
        const std::size_t q = counts_.size();
        std::size_t block = q / p_;  // p^{k-1}
        const std::size_t phi = q - block;
        std::vector<std::int64_t> c(counts_.begin(), counts_.end());
        // z^{a} for a >= phi: z^{a} = -sum_{j=0}^{p-2} z^{a - (p-1) block + j block}
        for (std::size_t a = q; a-- > phi;) {
            const std::int64_t v = c[a];
            if (v == 0) continue;
            const std::size_t base = a - (p_ - 1) * block;
            for (std::size_t j = 0; j + 1 < p_; ++j) c[base + j * block] -= v;
            c[a] = 0;
        }
        c.resize(phi);
        return c;
    }

    /// The value as an exact rational when it is rational, which holds iff all non-constant basis coordinates vanish.
    std::optional<Rational> rational() const {
        const auto c = reduced();
        for (std::size_t a = 1; a < c.size(); ++a)
            if (c[a] != 0) return std::nullopt;
        return Rational(c[0], static_cast<std::int64_t>(total_));
    }

    friend bool operator==(const CharacterSum& a, const CharacterSum& b) {
        return a.p_ == b.p_ && a.counts_ == b.counts_;
    }

   private:
    unsigned p_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Worker count used when an operation is not told otherwise.
inline unsigned default_workers() {
    if (const char* env = std::getenv("APPROXCOH_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return static_cast<unsigned>(w);
    }
    return 1;
}

/// Splits [0, total) into `workers` contiguous chunks, runs body(begin, end, partial) on each and sums the partial
/// count vectors. The result does not depend on the worker count.
inline CharacterSum parallel_count(unsigned p, unsigned q, std::uint64_t total, unsigned workers,
                                   const std::function<void(std::uint64_t, std::uint64_t, CharacterSum&)>& body) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
    std::vector<CharacterSum> partial(workers, CharacterSum(p, q));
    if (workers == 1) {
        body(0, total, partial[0]);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t b = std::min(total, w * chunk), e = std::min(total, b + chunk);
            pool.emplace_back([&, w, b, e] { body(b, e, partial[w]); });
        }
        for (auto& t : pool) t.join();
    }
    CharacterSum sum(p, q);
    for (const auto& s : partial) sum += s;
    return sum;
}

/// Exact residue counts of P over all of F_p^n.
inline CharacterSum bias(const Poly& poly, std::uint64_t budget = kDefaultBudget, unsigned workers = 1) {
    const unsigned p = poly.field().value();
    const PointSpace space(poly.field(), poly.nvars());
    require_budget("bias enumeration", space.size(), budget);
    const CompiledPoly compiled(poly);
    return parallel_count(p, p, space.size(), workers, [&](std::uint64_t b, std::uint64_t e, CharacterSum& out) {
        std::vector<Residue> x(space.dimension());
        if (b < e) space.decode(b, x);
        for (std::uint64_t idx = b; idx < e; ++idx) {
            out.record(compiled(x));
            for (std::size_t i = x.size(); i-- > 0;) {
                if (++x[i] < p) break;
                x[i] = 0;
            }
        }
    });
}

}  // namespace approxcoh
