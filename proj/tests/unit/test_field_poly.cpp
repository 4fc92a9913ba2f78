#include <gtest/gtest.h>

#include <random>

#include "approxcoh/poly_io.hpp"
#include "oracles.hpp"

using namespace approxcoh;

TEST(PrimeField, InverseAndPow) {
    for (unsigned p : {2u, 3u, 5u, 7u, 13u}) {
        PrimeModulus F(p);
        for (Residue a = 1; a < p; ++a) {
            EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
            EXPECT_EQ(F.pow(a, p - 1), 1u);
        }
        EXPECT_THROW(F.inv(0), PreconditionError);
    }
}

TEST(PrimeField, RejectsComposite) {
    EXPECT_THROW(PrimeModulus(4), PreconditionError);
    EXPECT_THROW(PrimeModulus(1), PreconditionError);
}

TEST(ExtensionField, FieldAxiomsSmall) {
    for (auto [p, m] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {3, 2}, {2, 3}, {5, 2}, {3, 3}}) {
        ExtensionField F(PrimeModulus(p), m);
        ASSERT_EQ(F.order(), oracle::ipow(p, m));
        for (Residue a = 0; a < F.order(); ++a) {
            EXPECT_EQ(F.add(a, F.neg(a)), 0u);
            if (a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
            for (Residue b = 0; b < F.order(); ++b) {
                EXPECT_EQ(F.mul(a, b), F.mul(b, a));
                const Residue c = (a * 7 + b * 3 + 1) % F.order();
                EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
            }
        }
        // prime subfield embeds as itself
        for (Residue a = 0; a < p; ++a)
            for (Residue b = 0; b < p; ++b) EXPECT_EQ(F.mul(a, b), (a * b) % p);
    }
}

TEST(ExtensionField, GeneratorHasFullOrder) {
    ExtensionField F(PrimeModulus(3), 2);
    const Residue g = F.generator();
    std::set<Residue> seen;
    Residue x = 1;
    for (std::uint64_t i = 0; i + 1 < F.order(); ++i) {
        seen.insert(x);
        x = F.mul(x, g);
    }
    EXPECT_EQ(seen.size(), F.order() - 1);
}

TEST(PointSpace, IndexRoundTripAndAddition) {
    PointSpace S(PrimeModulus(3), 3);
    for (std::uint64_t i = 0; i < S.size(); ++i) {
        EXPECT_EQ(S.index(S.point(i)), i);
        for (std::uint64_t j = 0; j < S.size(); j += 5) {
            auto x = S.point(i), y = S.point(j);
            for (std::size_t k = 0; k < 3; ++k) x[k] = (x[k] + y[k]) % 3;
            EXPECT_EQ(S.add(i, j), S.index(x));
        }
        EXPECT_EQ(S.add(i, S.negate(i)), 0u);
    }
}

TEST(Rational, NormalizesAndCompares) {
    EXPECT_EQ(Rational(2, 4), Rational(1, 2));
    EXPECT_EQ(Rational(3, -6), Rational(-1, 2));
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_EQ(Rational(6, 4).str(), "3/2");
    EXPECT_THROW(Rational(1, 0), PreconditionError);
}

TEST(Poly, ArithmeticMatchesPointwise) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const unsigned p = trial % 2 ? 5 : 3;
        Poly a = oracle::random_homogeneous(p, 3, 2, rng), b = oracle::random_homogeneous(p, 3, 1, rng);
        const Poly sum = a + b.with_degree_bound(2), prod = a * b;
        for (std::uint64_t i = 0; i < 27; ++i) {
            auto x = oracle::point(i, 3, p);
            const unsigned va = oracle::eval(a, x), vb = oracle::eval(b, x);
            EXPECT_EQ(oracle::eval(sum, x), (va + vb) % p);
            EXPECT_EQ(oracle::eval(prod, x), va * vb % p);
            std::vector<Residue> xr(x.begin(), x.end());
            EXPECT_EQ(a.eval(xr), va);
        }
    }
}

TEST(Poly, DegreeBoundEnforced) {
    Poly q(PrimeModulus(3), 2, 2);
    EXPECT_THROW(q.add_term(Monomial({2, 1}), 1), PreconditionError);
    q.add_term(Monomial({1, 1}), 1);
    EXPECT_EQ(q.degree(), 2);
    EXPECT_THROW(q.with_degree_bound(1), PreconditionError);
    EXPECT_EQ(Poly(PrimeModulus(3), 2, 2).degree(), -1);
}

TEST(Poly, DeltaIsPointwiseDifference) {
    std::mt19937_64 rng(3);
    const unsigned p = 5;
    for (int trial = 0; trial < 20; ++trial) {
        Poly P = oracle::random_homogeneous(p, 2, 3, rng);
        const std::vector<Residue> h{static_cast<Residue>(trial % 5), 2};
        const Poly D = P.delta(h);
        EXPECT_LT(D.degree(), 3);
        for (std::uint64_t i = 0; i < 25; ++i) {
            auto x = oracle::point(i, 2, p);
            auto xh = x;
            for (int k = 0; k < 2; ++k) xh[k] = (xh[k] + h[k]) % p;
            EXPECT_EQ(oracle::eval(D, x), (oracle::eval(P, xh) + p - oracle::eval(P, x)) % p);
        }
    }
}

TEST(Poly, CompiledTableMatchesOracle) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Poly P = oracle::random_homogeneous(7, 2, 3, rng);
        const auto t = CompiledPoly(P).table();
        const auto o = oracle::table(P);
        ASSERT_EQ(t.size(), o.size());
        for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(t[i], o[i]);
    }
}

TEST(Poly, ProjectSetsTrailingVariablesToZero) {
    const Poly P = parse_poly("p=5 n=3 d=2\n1*x0^2 + 2*x0*x2 + 3*x1*x2 + 4*x1^2");
    const Poly Q = P.project(2);
    EXPECT_EQ(Q.nvars(), 2u);
    EXPECT_EQ(Q, parse_poly("p=5 n=2 d=2\n1*x0^2 + 4*x1^2"));
    EXPECT_THROW(P.project(4), PreconditionError);
}

TEST(Poly, FunctionReducedAgreesAsFunction) {
    const Poly P = parse_poly("p=3 n=2 d=5\n1*x0^3*x1 + 2*x1^5 + 1*x0");
    const Poly R = P.function_reduced();
    EXPECT_TRUE(R.is_function_reduced());
    EXPECT_EQ(oracle::table(P), oracle::table(R));
}

TEST(PolyIO, RoundTrip) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const Poly P = oracle::random_homogeneous(trial % 2 ? 3 : 7, 3, 3, rng);
        EXPECT_EQ(parse_poly(to_text(P)), P);
    }
    EXPECT_EQ(to_text(Poly(PrimeModulus(3), 2, 2)), "p=3 n=2 d=2\n0");
}

TEST(PolyIO, AcceptsWhitespaceSemicolonAndSigns) {
    const Poly P = parse_poly("p=5 n=2 d=2; x0 ^2 -  x1 * 2 * x0");
    EXPECT_EQ(P.coefficient(Monomial({2, 0})), 1u);
    EXPECT_EQ(P.coefficient(Monomial({1, 1})), 3u);
}

TEST(PolyIO, RejectsMalformedInput) {
    EXPECT_THROW(parse_poly("p=5 n=2 d=2"), ParseError);
    EXPECT_THROW(parse_poly("p=5 n=2\nx0"), ParseError);
    EXPECT_THROW(parse_poly("p=5 n=2 d=2\nx2"), ParseError);
    EXPECT_THROW(parse_poly("p=5 n=2 d=2\n7*x0"), ParseError);
    EXPECT_THROW(parse_poly("p=5 n=2 d=1\nx0^2"), PreconditionError);
    EXPECT_THROW(parse_poly("p=5 n=2 d=2\nx0 x1"), ParseError);
    EXPECT_THROW(parse_poly("p=6 n=2 d=2\nx0"), PreconditionError);
}

TEST(HomogeneousSpace, IndexElementBijection) {
    HomogeneousSpace H(PrimeModulus(3), 2, 2);
    EXPECT_EQ(H.dimension(), 3u);
    EXPECT_EQ(H.size(), 27u);
    for (std::uint64_t i = 0; i < H.size(); ++i) {
        EXPECT_EQ(H.index(H.element(i)), i);
        for (std::uint64_t j = 0; j < H.size(); j += 4) {
            EXPECT_EQ(H.element(H.add(i, j)), H.element(i) + H.element(j));
            EXPECT_EQ(H.element(H.sub(i, j)), H.element(i) - H.element(j));
        }
        EXPECT_EQ(H.element(H.scale(2, i)), H.element(i).scaled(2));
    }
}
