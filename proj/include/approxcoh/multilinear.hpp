#pragma once

// Symmetric multilinear forms and the passage P <-> P~ between a homogeneous polynomial of degree d and its
// d-fold iterated difference Delta_{x_d} ... Delta_{x_1} P.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "charsum.hpp"
#include "poly.hpp"

namespace approxcoh {

/// A form T(x_1, ..., x_d) with x_k in F_p^n, linear in each block. Coefficients are keyed by the tuple (j_1, ..., j_d)
/// of the variable picked from each block.
class MultilinearForm {
   public:
    using Index = std::vector<std::uint16_t>;

    MultilinearForm(PrimeModulus p, unsigned blocks, std::size_t block_vars)
        : p_(p), d_(blocks), n_(block_vars) {}

    const PrimeModulus& modulus() const noexcept { return p_; }
    unsigned blocks() const noexcept { return d_; }
    std::size_t block_vars() const noexcept { return n_; }
    const std::map<Index, Residue>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    void add(const Index& idx, Residue c) {
        if (idx.size() != d_) throw PreconditionError("multilinear index has the wrong number of blocks");
        for (auto j : idx)
            if (j >= n_) throw PreconditionError("multilinear index out of range");
        if (c % p_.value() == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(idx, c % p_.value());
        if (!inserted) {
            it->second = p_.add(it->second, c % p_.value());
            if (it->second == 0) coeffs_.erase(it);
        }
    }
    Residue coefficient(const Index& idx) const {
        auto it = coeffs_.find(idx);
        return it == coeffs_.end() ? 0 : it->second;
    }

    /// Evaluates at the concatenated block coordinates (x_1 | x_2 | ... | x_d), each of length n.
    Residue eval(std::span<const Residue> flat) const {
        if (flat.size() != d_ * n_) throw PreconditionError("multilinear form evaluated at a point of wrong size");
        Residue acc = 0;
        for (const auto& [idx, c] : coeffs_) {
            Residue t = c;
            for (unsigned k = 0; k < d_ && t; ++k) t = p_.mul(t, flat[k * n_ + idx[k]]);
            acc = p_.add(acc, t);
        }
        return acc;
    }

    /// The form permuted by blocks: result(x_1..x_d) = T(x_{perm[0]}, ..., x_{perm[d-1]}).
    MultilinearForm permuted(const std::vector<unsigned>& perm) const {
        MultilinearForm r(p_, d_, n_);
        for (const auto& [idx, c] : coeffs_) {
            Index j(d_);
            // T(x_{perm[0]},...) has the factor (x_{perm[k]})_{idx[k]}
            for (unsigned k = 0; k < d_; ++k) j[perm[k]] = idx[k];
            r.add(j, c);
        }
        return r;
    }

    bool is_symmetric() const {
        std::vector<unsigned> perm(d_);
        std::iota(perm.begin(), perm.end(), 0u);
        while (std::next_permutation(perm.begin(), perm.end()))
            if (!(permuted(perm) == *this)) return false;
        return true;
    }

    /// The form as a polynomial in d*n variables, block k variable j at index k*n + j.
    Poly to_poly() const {
        Poly r(p_, d_ * n_, d_);
        for (const auto& [idx, c] : coeffs_) {
            std::vector<std::uint16_t> e(d_ * n_, 0);
            for (unsigned k = 0; k < d_; ++k) e[k * n_ + idx[k]] += 1;
            r.add_term(Monomial(std::move(e)), c);
        }
        return r;
    }

    /// Exact residue counts over the full product domain (F_p^n)^d.
    CharacterSum bias(std::uint64_t budget = kDefaultBudget, unsigned workers = 1) const {
        return approxcoh::bias(to_poly(), budget, workers);
    }

    friend bool operator==(const MultilinearForm& a, const MultilinearForm& b) {
        return a.p_ == b.p_ && a.d_ == b.d_ && a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }

   private:
    PrimeModulus p_;
    unsigned d_;
    std::size_t n_;
    std::map<Index, Residue> coeffs_;
};

namespace detail {
inline Residue factorial_mod(unsigned d, const PrimeModulus& p) {
    Residue f = 1 % p.value();
    for (unsigned i = 2; i <= d; ++i) f = p.mul(f, p.from_int(i));
    return f;
}

/// Degree of a homogeneous polynomial, falling back to the degree bound for zero.
inline unsigned homogeneous_degree(const Poly& poly) {
    if (!poly.is_homogeneous()) throw PreconditionError("polynomial is not homogeneous");
    return poly.is_zero() ? poly.degree_bound() : static_cast<unsigned>(poly.degree());
}

// all tuples (j_1..j_d) whose content (multiset of variable indices) matches the exponent vector
inline void tuples_with_content(std::vector<std::uint16_t>& left, std::vector<std::uint16_t>& cur,
                                std::vector<std::vector<std::uint16_t>>& out) {
    bool done = true;
    for (std::size_t i = 0; i < left.size(); ++i) {
        if (left[i] == 0) continue;
        done = false;
        --left[i];
        cur.push_back(static_cast<std::uint16_t>(i));
        tuples_with_content(left, cur, out);
        cur.pop_back();
        ++left[i];
    }
    if (done) out.push_back(cur);
}
}  // namespace detail

/// The iterated difference Delta_{x_d} ... Delta_{x_1} P of a homogeneous degree-d polynomial, as a d-block form.
/// Defined for every p: the monomial x^e contributes prod_i e_i! to each tuple with content e.
inline MultilinearForm polarize(const Poly& poly, unsigned d) {
    if (!poly.is_homogeneous() || (!poly.is_zero() && poly.degree() != static_cast<int>(d)))
        throw PreconditionError("polarize: polynomial must be homogeneous of degree " + std::to_string(d));
    const auto& p = poly.field();
    MultilinearForm form(p, d, poly.nvars());
    for (const auto& [m, c] : poly.terms()) {
        Residue weight = c;
        for (std::size_t i = 0; i < m.size(); ++i) weight = p.mul(weight, detail::factorial_mod(m[i], p));
        if (weight == 0) continue;
        auto left = m.exponents();
        std::vector<std::uint16_t> cur;
        std::vector<std::vector<std::uint16_t>> tuples;
        detail::tuples_with_content(left, cur, tuples);
        for (const auto& t : tuples) form.add(t, weight);
    }
    return form;
}

/// P~ for homogeneous P of degree d < p.
inline MultilinearForm multilinearize(const Poly& poly) {
    const unsigned d = detail::homogeneous_degree(poly);
    if (d >= poly.field().value())
        throw PreconditionError("multilinearize: degree " + std::to_string(d) + " is not below p = " +
                                std::to_string(poly.field().value()));
    return polarize(poly, d);
}

/// P(x) = T(x, ..., x) / d!, for d < p.
inline Poly diagonal_restore(const MultilinearForm& form, unsigned d) {
    const auto& p = form.modulus();
    if (d >= p.value())
        throw PreconditionError("diagonal_restore: d! is not invertible for d = " + std::to_string(d));
    if (form.blocks() != d) throw PreconditionError("diagonal_restore: form has a different number of blocks");
    const Residue inv_fact = p.inv(detail::factorial_mod(d, p));
    Poly r(p, form.block_vars(), d);
    for (const auto& [idx, c] : form.coefficients()) {
        std::vector<std::uint16_t> e(form.block_vars(), 0);
        for (auto j : idx) ++e[j];
        r.add_term(Monomial(std::move(e)), p.mul(c, inv_fact));
    }
    return r;
}

/// Pr over (x_1..x_{d-1}) that T(x_1, ..., x_{d-1}, .) vanishes identically; equals the bias of T.
inline Rational vanishing_fraction(const MultilinearForm& form, std::uint64_t budget = kDefaultBudget) {
    const auto& p = form.modulus();
    const unsigned d = form.blocks();
    const std::size_t n = form.block_vars();
    if (d == 0) return form.coefficient({}) == 0 ? Rational(1, 1) : Rational(0, 1);
    const PointSpace head(p, (d - 1) * n);
    require_budget("vanishing fraction", head.size(), budget);
    std::uint64_t hits = 0;
    std::vector<Residue> x((d - 1) * n, 0);
    std::vector<Residue> lin(n);
    for (std::uint64_t idx = 0; idx < head.size(); ++idx) {
        head.decode(idx, x);
        std::fill(lin.begin(), lin.end(), 0);
        for (const auto& [t, c] : form.coefficients()) {
            Residue v = c;
            for (unsigned k = 0; k + 1 < d && v; ++k) v = p.mul(v, x[k * n + t[k]]);
            lin[t[d - 1]] = p.add(lin[t[d - 1]], v);
        }
        if (std::all_of(lin.begin(), lin.end(), [](Residue r) { return r == 0; })) ++hits;
    }
    return Rational(static_cast<std::int64_t>(hits), static_cast<std::int64_t>(head.size()));
}

}  // namespace approxcoh
