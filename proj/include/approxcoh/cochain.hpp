#pragma once

// Cochains G^n -> polynomials for G = F_p^s, with trivial or translation action.

#include <string>
#include <vector>

#include "poly.hpp"

namespace approxcoh {

/// G = F_p^s, elements indexed lexicographically.
struct GroupSpec {
    PrimeModulus p;
    std::size_t s = 0;

    GroupSpec(PrimeModulus prime, std::size_t dim) : p(prime), s(dim) {}
    PointSpace space() const { return PointSpace(p, s); }
    std::uint64_t size() const { return checked_pow(p.value(), s); }
    friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.p == b.p && a.s == b.s; }
};

enum class Action { trivial, translation };

inline const char* to_string(Action a) { return a == Action::trivial ? "trivial" : "translation"; }

/// A map G^n -> Poly. Entry order: tuple (g_1, ..., g_n) sits at sum_i index(g_i) |G|^{n-i}.
class Cochain {
   public:
    Cochain(GroupSpec group, unsigned degree, Action action, std::vector<Poly> values)
        : group_(group), degree_(degree), action_(action), values_(std::move(values)) {
        const std::uint64_t expected = checked_pow(group_.size(), degree_);
        if (values_.size() != expected)
            throw PreconditionError("cochain table has " + std::to_string(values_.size()) + " entries, expected " +
                                    std::to_string(expected));
        if (values_.empty()) throw PreconditionError("empty cochain table");
        const auto& v0 = values_.front();
        for (auto& v : values_) {
            if (!(v.field() == group_.p)) throw PreconditionError("cochain value over a different field");
            if (v.nvars() != v0.nvars()) throw PreconditionError("cochain values use different variable counts");
            if (static_cast<int>(v0.degree_bound()) < v.degree())
                throw PreconditionError("cochain value exceeds the common degree bound");
            v = v.with_degree_bound(v0.degree_bound());
        }
        if (action_ == Action::translation && v0.nvars() != group_.s)
            throw PreconditionError("translation action needs polynomials in s variables");
    }

    /// The constant cochain with value `value` everywhere.
    static Cochain constant(GroupSpec group, unsigned degree, Action action, const Poly& value) {
        return Cochain(group, degree, action, std::vector<Poly>(checked_pow(group.size(), degree), value));
    }

    const GroupSpec& group() const noexcept { return group_; }
    unsigned degree() const noexcept { return degree_; }
    Action action() const noexcept { return action_; }
    std::size_t nvars() const { return values_.front().nvars(); }
    unsigned degree_bound() const { return values_.front().degree_bound(); }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<Poly>& values() const noexcept { return values_; }
    const Poly& at(std::uint64_t index) const { return values_.at(index); }
    const Poly& at(std::span<const std::uint64_t> tuple) const { return values_.at(encode(tuple)); }

    std::uint64_t encode(std::span<const std::uint64_t> tuple) const {
        if (tuple.size() != degree_) throw PreconditionError("tuple length does not match the cochain degree");
        std::uint64_t r = 0;
        for (auto g : tuple) r = r * group_.size() + g;
        return r;
    }
    std::vector<std::uint64_t> decode(std::uint64_t index) const {
        std::vector<std::uint64_t> t(degree_);
        for (unsigned i = degree_; i-- > 0;) {
            t[i] = index % group_.size();
            index /= group_.size();
        }
        return t;
    }

    /// g . P: identity for the trivial action, x -> P(x + g) for translation.
    Poly act(std::uint64_t g, const Poly& value) const {
        if (action_ == Action::trivial) return value;
        return value.shifted(group_.space().point(g));
    }

    Cochain& operator+=(const Cochain& o) {
        check(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    Cochain& operator-=(const Cochain& o) {
        check(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
        return *this;
    }
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    Cochain operator-() const {
        Cochain r = *this;
        for (auto& v : r.values_) v = -v;
        return r;
    }

    friend bool operator==(const Cochain& a, const Cochain& b) {
        return a.group_ == b.group_ && a.degree_ == b.degree_ && a.action_ == b.action_ && a.values_ == b.values_;
    }

   private:
    void check(const Cochain& o) const {
        if (!(group_ == o.group_) || degree_ != o.degree_ || action_ != o.action_)
            throw PreconditionError("cochains of different shape");
    }

    GroupSpec group_;
    unsigned degree_;
    Action action_;
    std::vector<Poly> values_;
};

/// A linear map F_p^s -> polynomials, given by the images of the standard basis.
class LinearMap {
   public:
    LinearMap(GroupSpec group, std::vector<Poly> images) : group_(group), images_(std::move(images)) {
        if (images_.size() != group_.s || images_.empty())
            throw PreconditionError("a linear map needs one image per basis vector of a nonzero space");
    }

    const GroupSpec& group() const noexcept { return group_; }
    const std::vector<Poly>& images() const noexcept { return images_; }

    Poly operator()(std::span<const Residue> v) const {
        Poly r = images_.front().scaled(0);
        for (std::size_t i = 0; i < images_.size(); ++i) r += images_[i].scaled(v[i]);
        return r;
    }
    Poly at(std::uint64_t index) const { return (*this)(group_.space().point(index)); }

    /// The map as a degree-1 cochain.
    Cochain as_cochain(Action action = Action::trivial) const {
        std::vector<Poly> vals;
        for (std::uint64_t g = 0; g < group_.size(); ++g) vals.push_back(at(g));
        return Cochain(group_, 1, action, std::move(vals));
    }

    friend bool operator==(const LinearMap& a, const LinearMap& b) {
        return a.group_ == b.group_ && a.images_ == b.images_;
    }

   private:
    GroupSpec group_;
    std::vector<Poly> images_;
};

}  // namespace approxcoh
