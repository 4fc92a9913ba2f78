#pragma once

// Prime fields, small extension fields and finite vector spaces over them.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace approxcoh {

using Residue = std::uint32_t;

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Raised when an input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration would exceed the configured budget.
class BudgetExceeded : public std::runtime_error {
   public:
    BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget)
        : std::runtime_error(what + ": requires " + std::to_string(required) + " enumerated items, budget is " +
                             std::to_string(budget)),
          required_(required),
          budget_(budget) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

   private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

/// base^exp, saturating at UINT64_MAX.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
        r *= base;
    }
    return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

inline void require_budget(const std::string& what, std::uint64_t required, std::uint64_t budget) {
    if (required > budget) throw BudgetExceeded(what, required, budget);
}

constexpr bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// The prime field F_p, 2 <= p <= 31.
class PrimeModulus {
   public:
    explicit PrimeModulus(unsigned p) : p_(p) {
        if (p < 2 || p > 31 || !is_prime(p))
            throw PreconditionError("modulus must be a prime in [2, 31], got " + std::to_string(p));
    }

    unsigned value() const noexcept { return p_; }
    unsigned characteristic() const noexcept { return p_; }
    std::uint64_t order() const noexcept { return p_; }
    unsigned degree() const noexcept { return 1; }

    Residue reduce(std::int64_t a) const noexcept {
        auto r = a % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    Residue add(Residue a, Residue b) const noexcept { return (a + b) % p_; }
    Residue sub(Residue a, Residue b) const noexcept { return (a + p_ - b) % p_; }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const noexcept { return (a * b) % p_; }
    Residue pow(Residue a, std::uint64_t e) const noexcept {
        Residue r = 1 % p_;
        Residue b = a % p_;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    Residue inv(Residue a) const {
        if (a % p_ == 0) throw PreconditionError("division by zero in F_" + std::to_string(p_));
        return pow(a, p_ - 2);
    }
    /// Embedding of a prime-field residue (identity here).
    Residue from_prime(Residue a) const noexcept { return a % p_; }
    /// Image of a small integer in the field.
    Residue from_int(std::int64_t a) const noexcept { return reduce(a); }

    friend bool operator==(const PrimeModulus& a, const PrimeModulus& b) noexcept { return a.p_ == b.p_; }

   private:
    unsigned p_;
};

/// F_{p^m} with elements encoded as integers sum_i a_i p^i (a_i the coordinates in the basis 1, t, ..., t^{m-1},
/// t a root of a primitive polynomial). Prime-field residues embed as themselves.
class ExtensionField {
   public:
    ExtensionField(PrimeModulus p, unsigned m) : p_(p) {
        if (m == 0) throw PreconditionError("extension degree must be positive");
        const std::uint64_t q = checked_pow(p.value(), m);
        if (q > (1u << 22)) throw BudgetExceeded("extension field F_" + std::to_string(p.value()) + "^" +
                                                     std::to_string(m),
                                                 q, 1u << 22);
        tables_ = build(p, m);
    }

    const PrimeModulus& base() const noexcept { return p_; }
    unsigned characteristic() const noexcept { return p_.value(); }
    unsigned degree() const noexcept { return tables_->m; }
    std::uint64_t order() const noexcept { return tables_->q; }
    /// Monic primitive modulus, coefficients low to high (length m + 1).
    const std::vector<Residue>& modulus() const noexcept { return tables_->modulus; }

    Residue add(Residue a, Residue b) const noexcept {
        if (tables_->m == 1) return p_.add(a, b);
        Residue r = 0, scale = 1;
        const unsigned p = p_.value();
        for (unsigned i = 0; i < tables_->m; ++i) {
            r += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        return r;
    }
    Residue neg(Residue a) const noexcept {
        if (tables_->m == 1) return p_.neg(a);
        Residue r = 0, scale = 1;
        const unsigned p = p_.value();
        for (unsigned i = 0; i < tables_->m; ++i) {
            r += ((p - a % p) % p) * scale;
            a /= p;
            scale *= p;
        }
        return r;
    }
    Residue sub(Residue a, Residue b) const noexcept { return add(a, neg(b)); }
    Residue mul(Residue a, Residue b) const noexcept {
        if (a == 0 || b == 0) return 0;
        const auto& t = *tables_;
        return t.exp[(t.log[a] + t.log[b]) % (t.q - 1)];
    }
    Residue inv(Residue a) const {
        if (a == 0) throw PreconditionError("division by zero in extension field");
        const auto& t = *tables_;
        return t.exp[(t.q - 1 - t.log[a]) % (t.q - 1)];
    }
    Residue pow(Residue a, std::uint64_t e) const noexcept {
        if (e == 0) return 1;
        if (a == 0) return 0;
        const auto& t = *tables_;
        return t.exp[(t.log[a] * (e % (t.q - 1))) % (t.q - 1)];
    }
    Residue from_prime(Residue a) const noexcept { return a % p_.value(); }
    Residue from_int(std::int64_t a) const noexcept { return p_.reduce(a); }
    /// A generator of the multiplicative group.
    Residue generator() const noexcept { return tables_->q > 2 ? tables_->exp[1] : 1; }

    friend bool operator==(const ExtensionField& a, const ExtensionField& b) noexcept {
        return a.p_ == b.p_ && a.tables_->m == b.tables_->m;
    }

   private:
    struct Tables {
        unsigned m = 1;
        std::uint64_t q = 0;
        std::vector<Residue> modulus;
        std::vector<Residue> exp;  // exp[k] = t^k
        std::vector<std::uint64_t> log;
    };

    // multiply the element a (coefficient vector) by t modulo the monic modulus f
    static std::vector<Residue> times_t(const std::vector<Residue>& a, const std::vector<Residue>& f, unsigned p) {
        const auto m = a.size();
        std::vector<Residue> r(m, 0);
        const Residue top = a[m - 1];
        for (std::size_t i = m - 1; i > 0; --i) r[i] = a[i - 1];
        for (std::size_t i = 0; i < m; ++i) r[i] = (r[i] + (p - (top * f[i]) % p)) % p;
        return r;
    }

    static std::shared_ptr<const Tables> build(PrimeModulus pm, unsigned m) {
        const unsigned p = pm.value();
        auto t = std::make_shared<Tables>();
        t->m = m;
        t->q = checked_pow(p, m);
        const std::uint64_t q = t->q;
        auto encode = [&](const std::vector<Residue>& c) {
            std::uint64_t v = 0;
            for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
            return static_cast<Residue>(v);
        };
        if (m == 1) {
            // smallest primitive root
            for (Residue g = 1; g < p; ++g) {
                std::uint64_t order = 1;
                Residue x = g;
                while (x != 1) {
                    x = pm.mul(x, g);
                    ++order;
                }
                if (order == p - 1) {
                    t->modulus = {pm.neg(g), 1};
                    break;
                }
            }
            if (p == 2) t->modulus = {1, 1};
        } else {
            // first primitive monic polynomial in lexicographic order of its low coefficients
            const std::uint64_t candidates = checked_pow(p, m);
            for (std::uint64_t code = 0; code < candidates; ++code) {
                std::vector<Residue> f(m + 1, 0);
                std::uint64_t c = code;
                for (unsigned i = 0; i < m; ++i) {
                    f[i] = static_cast<Residue>(c % p);
                    c /= p;
                }
                f[m] = 1;
                if (f[0] == 0) continue;
                std::vector<Residue> x(m, 0);
                x[0] = 1;
                std::uint64_t order = 0;
                do {
                    x = times_t(x, f, p);
                    ++order;
                } while (!(x[0] == 1 && std::all_of(x.begin() + 1, x.end(), [](Residue r) { return r == 0; })) &&
                         order <= q);
                if (order == q - 1) {
                    t->modulus = f;
                    break;
                }
            }
        }
        t->exp.assign(q, 0);
        t->log.assign(q, 0);
        if (m == 1) {
            const Residue g = pm.neg(t->modulus[0]);
            Residue x = 1;
            for (std::uint64_t k = 0; k + 1 < q; ++k) {
                t->exp[k] = x;
                t->log[x] = k;
                x = pm.mul(x, g);
            }
        } else {
            std::vector<Residue> x(m, 0);
            x[0] = 1;
            for (std::uint64_t k = 0; k + 1 < q; ++k) {
                const Residue e = encode(x);
                t->exp[k] = e;
                t->log[e] = k;
                x = times_t(x, t->modulus, p);
            }
        }
        if (q >= 2) t->exp[q - 1] = 1;
        return t;
    }

    PrimeModulus p_;
    std::shared_ptr<const Tables> tables_;
};

/// A point of F_p^n.
class FieldVector {
   public:
    FieldVector(PrimeModulus p, std::vector<Residue> coords) : p_(p), coords_(std::move(coords)) {
        for (auto c : coords_)
            if (c >= p_.value()) throw PreconditionError("coordinate out of range for F_" + std::to_string(p_.value()));
    }
    static FieldVector zero(PrimeModulus p, std::size_t n) { return FieldVector(p, std::vector<Residue>(n, 0)); }

    const PrimeModulus& modulus() const noexcept { return p_; }
    std::size_t size() const noexcept { return coords_.size(); }
    std::span<const Residue> coords() const noexcept { return coords_; }
    Residue operator[](std::size_t i) const { return coords_.at(i); }

    friend bool operator==(const FieldVector& a, const FieldVector& b) noexcept {
        return a.p_ == b.p_ && a.coords_ == b.coords_;
    }

   private:
    PrimeModulus p_;
    std::vector<Residue> coords_;
};

/// F_p^n with points indexed lexicographically (first coordinate most significant).
class PointSpace {
   public:
    PointSpace(PrimeModulus p, std::size_t n) : p_(p), n_(n), size_(checked_pow(p.value(), n)) {}

    const PrimeModulus& modulus() const noexcept { return p_; }
    std::size_t dimension() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return size_; }

    void decode(std::uint64_t index, std::span<Residue> out) const noexcept {
        const unsigned p = p_.value();
        for (std::size_t i = n_; i-- > 0;) {
            out[i] = static_cast<Residue>(index % p);
            index /= p;
        }
    }
    std::vector<Residue> point(std::uint64_t index) const {
        std::vector<Residue> v(n_);
        decode(index, v);
        return v;
    }
    std::uint64_t index(std::span<const Residue> x) const noexcept {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < n_; ++i) r = r * p_.value() + x[i];
        return r;
    }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
        const unsigned p = p_.value();
        std::uint64_t r = 0, scale = 1;
        for (std::size_t i = 0; i < n_; ++i) {
            r += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        return r;
    }
    std::uint64_t negate(std::uint64_t a) const noexcept {
        const unsigned p = p_.value();
        std::uint64_t r = 0, scale = 1;
        for (std::size_t i = 0; i < n_; ++i) {
            r += ((p - a % p) % p) * scale;
            a /= p;
            scale *= p;
        }
        return r;
    }
    std::uint64_t scale(Residue c, std::uint64_t a) const noexcept {
        const unsigned p = p_.value();
        std::uint64_t r = 0, s = 1;
        for (std::size_t i = 0; i < n_; ++i) {
            r += ((a % p) * c % p) * s;
            a /= p;
            s *= p;
        }
        return r;
    }

   private:
    PrimeModulus p_;
    std::size_t n_;
    std::uint64_t size_;
};

/// Exact rational with 64-bit numerator and denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw PreconditionError("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const auto g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    long double to_real() const noexcept { return static_cast<long double>(num) / static_cast<long double>(den); }

    friend bool operator==(const Rational& a, const Rational& b) noexcept { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Rational& a, const Rational& b) noexcept {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) noexcept { return !(b < a); }

    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

/// a^2 <= b. Parts come from enumeration counts, so they stay far below 2^40 and the products fit in 128 bits.
inline bool square_le(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num) * a.num * b.den;
    const __int128 rhs = static_cast<__int128>(b.num) * a.den * a.den;
    return lhs <= rhs;
}

}  // namespace approxcoh
