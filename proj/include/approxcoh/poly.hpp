#pragma once

// Sparse multivariate polynomials over a finite field, difference operators and projections.

#include <compare>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace approxcoh {

/// Exponent vector x_0^{e_0} ... x_{n-1}^{e_{n-1}}. Ordered lexicographically by exponent vector.
class Monomial {
   public:
    Monomial() = default;
    explicit Monomial(std::vector<std::uint16_t> exps) : exps_(std::move(exps)) {}

    static Monomial one(std::size_t n) { return Monomial(std::vector<std::uint16_t>(n, 0)); }
    static Monomial variable(std::size_t n, std::size_t i, std::uint16_t e = 1) {
        std::vector<std::uint16_t> v(n, 0);
        v.at(i) = e;
        return Monomial(std::move(v));
    }

    std::size_t size() const noexcept { return exps_.size(); }
    std::uint16_t operator[](std::size_t i) const { return exps_[i]; }
    const std::vector<std::uint16_t>& exponents() const noexcept { return exps_; }
    unsigned degree() const noexcept {
        unsigned d = 0;
        for (auto e : exps_) d += e;
        return d;
    }
    unsigned max_exponent() const noexcept {
        unsigned m = 0;
        for (auto e : exps_) m = std::max<unsigned>(m, e);
        return m;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        if (a.size() != b.size()) throw PreconditionError("monomial arity mismatch");
        std::vector<std::uint16_t> e(a.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(a.exps_[i] + b.exps_[i]);
        return Monomial(std::move(e));
    }

    auto operator<=>(const Monomial&) const = default;

   private:
    std::vector<std::uint16_t> exps_;
};

namespace detail {
inline std::vector<std::vector<std::uint64_t>> binomials(unsigned n) {
    std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
    for (unsigned i = 0; i <= n; ++i) {
        c[i][0] = 1;
        for (unsigned j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
    }
    return c;
}
}  // namespace detail

/// Polynomial over the field F in nvars variables with total degree at most degree_bound.
/// Terms are stored sparsely in descending lexicographic order of exponent vectors; zero coefficients are never stored.
template <class F>
class BasicPoly {
   public:
    using Terms = std::map<Monomial, Residue, std::greater<Monomial>>;

    BasicPoly(F field, std::size_t nvars, unsigned degree_bound)
        : field_(std::move(field)), nvars_(nvars), bound_(degree_bound) {}

    static BasicPoly constant(F field, std::size_t nvars, unsigned bound, Residue c) {
        BasicPoly r(std::move(field), nvars, bound);
        r.add_term(Monomial::one(nvars), c);
        return r;
    }
    static BasicPoly variable(F field, std::size_t nvars, unsigned bound, std::size_t i) {
        BasicPoly r(std::move(field), nvars, bound);
        r.add_term(Monomial::variable(nvars, i), 1);
        return r;
    }

    const F& field() const noexcept { return field_; }
    std::size_t nvars() const noexcept { return nvars_; }
    unsigned degree_bound() const noexcept { return bound_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Adds c * m to the polynomial.
    void add_term(const Monomial& m, Residue c) {
        if (m.size() != nvars_) throw PreconditionError("monomial arity does not match the polynomial");
        if (m.degree() > bound_)
            throw PreconditionError("monomial degree " + std::to_string(m.degree()) + " exceeds degree bound " +
                                    std::to_string(bound_));
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second = field_.add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    Residue coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }

    /// Total degree; -1 for the zero polynomial.
    int degree() const noexcept {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max<int>(d, static_cast<int>(m.degree()));
        return d;
    }
    int min_degree() const noexcept {
        int d = -1;
        for (const auto& [m, c] : terms_)
            d = d < 0 ? static_cast<int>(m.degree()) : std::min<int>(d, static_cast<int>(m.degree()));
        return d;
    }
    /// The zero polynomial counts as homogeneous.
    bool is_homogeneous() const noexcept { return is_zero() || degree() == min_degree(); }
    /// True when every per-variable exponent is below the field order, i.e. P is the canonical representative
    /// of the function it defines.
    bool is_function_reduced() const noexcept {
        for (const auto& [m, c] : terms_)
            if (m.max_exponent() >= field_.order()) return false;
        return true;
    }
    /// Highest variable index used plus one.
    std::size_t support_width() const noexcept {
        std::size_t w = 0;
        for (const auto& [m, c] : terms_)
            for (std::size_t i = 0; i < nvars_; ++i)
                if (m[i] != 0) w = std::max(w, i + 1);
        return w;
    }

    BasicPoly with_degree_bound(unsigned bound) const {
        if (static_cast<int>(bound) < degree())
            throw PreconditionError("degree bound below the polynomial's degree");
        BasicPoly r = *this;
        r.bound_ = bound;
        return r;
    }

    /// Same polynomial viewed in n >= nvars variables.
    BasicPoly with_nvars(std::size_t n) const {
        if (n < support_width()) throw PreconditionError("cannot drop variables that are in use");
        BasicPoly r(field_, n, bound_);
        for (const auto& [m, c] : terms_) {
            std::vector<std::uint16_t> e(n, 0);
            for (std::size_t i = 0; i < std::min(n, nvars_); ++i) e[i] = m[i];
            r.terms_.emplace(Monomial(std::move(e)), c);
        }
        return r;
    }

    BasicPoly operator-() const {
        BasicPoly r(field_, nvars_, bound_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, field_.neg(c));
        return r;
    }

    BasicPoly& operator+=(const BasicPoly& o) {
        check_compatible(o);
        bound_ = std::max(bound_, o.bound_);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    BasicPoly& operator-=(const BasicPoly& o) {
        check_compatible(o);
        bound_ = std::max(bound_, o.bound_);
        for (const auto& [m, c] : o.terms_) add_term(m, field_.neg(c));
        return *this;
    }
    friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
    friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }

    friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
        a.check_compatible(b);
        BasicPoly r(a.field_, a.nvars_, a.bound_ + b.bound_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, a.field_.mul(ca, cb));
        return r;
    }

    BasicPoly scaled(Residue s) const {
        BasicPoly r(field_, nvars_, bound_);
        if (s == 0) return r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, field_.mul(s, c));
        return r;
    }

    Residue eval(std::span<const Residue> x) const {
        if (x.size() != nvars_) throw PreconditionError("point dimension does not match the polynomial");
        Residue acc = 0;
        for (const auto& [m, c] : terms_) {
            Residue t = c;
            for (std::size_t i = 0; i < nvars_ && t != 0; ++i)
                if (m[i]) t = field_.mul(t, field_.pow(x[i], m[i]));
            acc = field_.add(acc, t);
        }
        return acc;
    }

    /// x -> P(x + h).
    BasicPoly shifted(std::span<const Residue> h) const {
        if (h.size() != nvars_) throw PreconditionError("shift dimension does not match the polynomial");
        const auto binom = detail::binomials(std::max(1, degree()));
        BasicPoly r(field_, nvars_, bound_);
        for (const auto& [m, c] : terms_) {
            // expand prod_i (x_i + h_i)^{e_i} as a sum over sub-exponents k_i <= e_i
            std::vector<std::uint16_t> k(nvars_, 0);
            while (true) {
                Residue coef = c;
                for (std::size_t i = 0; i < nvars_ && coef != 0; ++i) {
                    if (m[i] == 0) continue;
                    const Residue b = field_.from_int(static_cast<std::int64_t>(binom[m[i]][k[i]] %
                                                                                field_.characteristic()));
                    coef = field_.mul(coef, field_.mul(b, field_.pow(h[i], m[i] - k[i])));
                }
                r.add_term(Monomial(k), coef);
                std::size_t i = 0;
                while (i < nvars_) {
                    if (k[i] < m[i]) {
                        ++k[i];
                        break;
                    }
                    k[i] = 0;
                    ++i;
                }
                if (i == nvars_) break;
            }
        }
        return r;
    }

    /// Delta_h P (x) = P(x + h) - P(x).
    BasicPoly delta(std::span<const Residue> h) const { return shifted(h) - *this; }

    BasicPoly homogeneous_component(unsigned k) const {
        BasicPoly r(field_, nvars_, bound_);
        for (const auto& [m, c] : terms_)
            if (m.degree() == k) r.terms_.emplace(m, c);
        return r;
    }

    /// Substitutes 0 for every variable of index >= l; the result lives in l variables.
    BasicPoly project(std::size_t l) const {
        if (l > nvars_) throw PreconditionError("projection width exceeds the number of variables");
        BasicPoly r(field_, l, bound_);
        for (const auto& [m, c] : terms_) {
            bool keep = true;
            for (std::size_t i = l; i < nvars_; ++i)
                if (m[i]) keep = false;
            if (!keep) continue;
            std::vector<std::uint16_t> e(m.exponents().begin(), m.exponents().begin() + static_cast<long>(l));
            r.terms_.emplace(Monomial(std::move(e)), c);
        }
        return r;
    }

    /// Substitutes x_i = sum_j forms[i][j] y_j + forms[i][m] for each variable; forms[i] has m + 1 entries.
    BasicPoly substitute(const std::vector<std::vector<Residue>>& forms, std::size_t m) const {
        if (forms.size() != nvars_) throw PreconditionError("substitution needs one affine form per variable");
        std::vector<std::vector<BasicPoly>> powers(nvars_);
        auto power = [&](std::size_t i, unsigned e) -> const BasicPoly& {
            auto& cache = powers[i];
            if (cache.empty()) {
                cache.push_back(BasicPoly::constant(field_, m, bound_, 1));
                BasicPoly lin(field_, m, bound_);
                for (std::size_t j = 0; j < m; ++j) lin.add_term(Monomial::variable(m, j), forms[i].at(j));
                lin.add_term(Monomial::one(m), forms[i].at(m));
                cache.push_back(std::move(lin));
            }
            while (cache.size() <= e) {
                BasicPoly next = cache.back() * cache[1];
                next.bound_ = bound_;
                cache.push_back(std::move(next));
            }
            return cache[e];
        };
        BasicPoly r(field_, m, bound_);
        for (const auto& [mono, c] : terms_) {
            BasicPoly t = BasicPoly::constant(field_, m, bound_, c);
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (mono[i] == 0) continue;
                t = t * power(i, mono[i]);
                t.bound_ = bound_;
            }
            r += t;
        }
        return r;
    }

    /// The same polynomial with coefficients mapped into the field G (prime-field residues embed canonically).
    template <class G>
    BasicPoly<G> embed(const G& g) const {
        BasicPoly<G> r(g, nvars_, bound_);
        for (const auto& [m, c] : terms_) r.add_term(m, g.from_prime(c));
        return r;
    }

    /// Canonical function representative: x^e with e >= q replaced by x^{((e-1) mod (q-1)) + 1}.
    BasicPoly function_reduced() const {
        const auto q = field_.order();
        BasicPoly r(field_, nvars_, bound_);
        for (const auto& [m, c] : terms_) {
            std::vector<std::uint16_t> e = m.exponents();
            for (auto& x : e)
                if (x >= q) x = static_cast<std::uint16_t>((x - 1) % (q - 1) + 1);
            r.add_term(Monomial(std::move(e)), c);
        }
        return r;
    }

    friend bool operator==(const BasicPoly& a, const BasicPoly& b) {
        return a.nvars_ == b.nvars_ && a.field_ == b.field_ && a.terms_ == b.terms_;
    }
    /// Ordering for use as a map key; compares the term lists only.
    friend bool operator<(const BasicPoly& a, const BasicPoly& b) {
        if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
        return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                                            [](const auto& x, const auto& y) {
                                                if (x.first != y.first) return x.first > y.first;
                                                return x.second < y.second;
                                            });
    }

   private:
    void check_compatible(const BasicPoly& o) const {
        if (!(field_ == o.field_) || nvars_ != o.nvars_)
            throw PreconditionError("polynomials over different fields or variable sets");
    }

    F field_;
    std::size_t nvars_;
    unsigned bound_;
    Terms terms_;
};

using Poly = BasicPoly<PrimeModulus>;
using ExtPoly = BasicPoly<ExtensionField>;

/// Checked evaluation at a field vector.
inline Residue eval(const Poly& p, const FieldVector& x) {
    if (!(x.modulus() == p.field())) throw PreconditionError("field vector and polynomial use different moduli");
    return p.eval(x.coords());
}

inline Poly delta(const Poly& p, const FieldVector& h) {
    if (!(h.modulus() == p.field())) throw PreconditionError("direction and polynomial use different moduli");
    return p.delta(h.coords());
}

/// The homogeneous degree-d component of P; requires deg P <= d.
template <class F>
BasicPoly<F> top_degree(const BasicPoly<F>& p, unsigned d) {
    if (p.degree() > static_cast<int>(d))
        throw PreconditionError("top_degree: polynomial degree " + std::to_string(p.degree()) + " exceeds " +
                                std::to_string(d));
    return p.homogeneous_component(d);
}

template <class F>
BasicPoly<F> project(const BasicPoly<F>& p, std::size_t l) {
    return p.project(l);
}

/// Fast repeated evaluation of a prime-field polynomial over full domains.
class CompiledPoly {
   public:
    explicit CompiledPoly(const Poly& p) : p_(p.field().value()), n_(p.nvars()) {
        unsigned maxe = 0;
        for (const auto& [m, c] : p.terms()) {
            Term t{c, {}};
            for (std::size_t i = 0; i < n_; ++i)
                if (m[i]) {
                    t.factors.emplace_back(static_cast<std::uint32_t>(i), m[i]);
                    maxe = std::max<unsigned>(maxe, m[i]);
                }
            terms_.push_back(std::move(t));
        }
        stride_ = maxe + 1;
        pow_.assign(static_cast<std::size_t>(p_) * stride_, 0);
        for (unsigned x = 0; x < p_; ++x) {
            Residue v = 1 % p_;
            for (unsigned e = 0; e <= maxe; ++e) {
                pow_[x * stride_ + e] = v;
                v = (v * x) % p_;
            }
        }
    }

    Residue operator()(std::span<const Residue> x) const noexcept {
        std::uint64_t acc = 0;
        for (const auto& t : terms_) {
            std::uint64_t v = t.coef;
            for (const auto& [i, e] : t.factors) v = (v * pow_[x[i] * stride_ + e]) % p_;
            acc += v;
        }
        return static_cast<Residue>(acc % p_);
    }

    /// Values at every point of F_p^n in lexicographic order.
    std::vector<Residue> table() const {
        const PointSpace space(PrimeModulus(p_), n_);
        std::vector<Residue> out(space.size());
        std::vector<Residue> x(n_, 0);
        for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
            out[idx] = (*this)(x);
            for (std::size_t i = n_; i-- > 0;) {
                if (++x[i] < p_) break;
                x[i] = 0;
            }
        }
        return out;
    }

   private:
    struct Term {
        Residue coef;
        std::vector<std::pair<std::uint32_t, std::uint16_t>> factors;
    };
    unsigned p_;
    std::size_t n_;
    unsigned stride_ = 1;
    std::vector<Residue> pow_;
    std::vector<Term> terms_;
};

/// Homogeneous polynomials of degree d in n variables, enumerated by their coefficient vectors (base-p digits, first
/// monomial in descending lexicographic order most significant).
class HomogeneousSpace {
   public:
    HomogeneousSpace(PrimeModulus p, std::size_t n, unsigned d) : p_(p), n_(n), d_(d) {
        std::vector<std::uint16_t> e(n, 0);
        if (n == 0) {
            if (d == 0) monomials_.emplace_back(e);
        } else {
            collect(e, 0, d);
        }
        std::sort(monomials_.begin(), monomials_.end(), std::greater<Monomial>());
        size_ = checked_pow(p.value(), monomials_.size());
    }

    const PrimeModulus& modulus() const noexcept { return p_; }
    std::size_t nvars() const noexcept { return n_; }
    unsigned degree() const noexcept { return d_; }
    std::size_t dimension() const noexcept { return monomials_.size(); }
    std::uint64_t size() const noexcept { return size_; }
    const std::vector<Monomial>& monomials() const noexcept { return monomials_; }

    Poly element(std::uint64_t index) const {
        Poly r(p_, n_, d_);
        for (std::size_t k = monomials_.size(); k-- > 0;) {
            r.add_term(monomials_[k], static_cast<Residue>(index % p_.value()));
            index /= p_.value();
        }
        return r;
    }

    std::uint64_t index(const Poly& q) const {
        if (q.nvars() != n_ || !q.is_homogeneous() || (!q.is_zero() && q.degree() != static_cast<int>(d_)))
            throw PreconditionError("polynomial is not in the homogeneous space");
        std::uint64_t r = 0;
        for (const auto& m : monomials_) r = r * p_.value() + q.coefficient(m);
        return r;
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept { return digits().add(a, b); }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept { return digits().add(a, digits().negate(b)); }
    std::uint64_t scale(Residue c, std::uint64_t a) const noexcept { return digits().scale(c, a); }

   private:
    PointSpace digits() const noexcept { return PointSpace(p_, monomials_.size()); }

    void collect(std::vector<std::uint16_t>& e, std::size_t i, unsigned left) {
        if (i + 1 == n_) {
            e[i] = static_cast<std::uint16_t>(left);
            monomials_.emplace_back(e);
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[i] = static_cast<std::uint16_t>(k);
            collect(e, i + 1, left - k);
        }
        e[i] = 0;
    }

    PrimeModulus p_;
    std::size_t n_;
    unsigned d_;
    std::vector<Monomial> monomials_;
    std::uint64_t size_ = 1;
};

}  // namespace approxcoh
