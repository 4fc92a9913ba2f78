#include <gtest/gtest.h>

#include <random>

#include "approxcoh/multilinear.hpp"
#include "approxcoh/poly_io.hpp"
#include "approxcoh/rank.hpp"
#include "oracles.hpp"

using namespace approxcoh;

namespace {

std::vector<std::vector<unsigned>> symmetric_matrix(const Poly& Q) {
    // 2Q(x) = x^T S x for odd p
    const unsigned p = Q.field().value();
    const std::size_t n = Q.nvars();
    std::vector<std::vector<unsigned>> S(n, std::vector<unsigned>(n, 0));
    for (const auto& [m, c] : Q.terms()) {
        std::vector<std::size_t> v;
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned e = 0; e < m[i]; ++e) v.push_back(i);
        if (v[0] == v[1])
            S[v[0]][v[0]] = 2 * c % p;
        else
            S[v[0]][v[1]] = S[v[1]][v[0]] = c;
    }
    return S;
}

}  // namespace

TEST(QuadRank, MatchesBruteForceOverQuadraticExtension) {
    for (unsigned p : {3u, 5u}) {
        for (std::size_t n = 1; n <= 2; ++n) {
            HomogeneousSpace H(PrimeModulus(p), n, 2);
            for (std::uint64_t i = 0; i < H.size(); ++i) {
                const Poly Q = H.element(i);
                const auto r = quad_rank(Q);
                EXPECT_EQ(static_cast<int>(r.upper), oracle::quadratic_rank_bruteforce(Q)) << to_text(Q);
                EXPECT_TRUE(r.definite());
                EXPECT_TRUE(verify_certificate(Q, *r.certificate, true));
            }
        }
    }
}

TEST(QuadRank, ThreeVariablesSampled) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const Poly Q = oracle::random_homogeneous(3, 3, 2, rng);
        const auto r = quad_rank(Q);
        EXPECT_EQ(static_cast<int>(r.upper), oracle::quadratic_rank_bruteforce(Q)) << to_text(Q);
        EXPECT_TRUE(verify_certificate(Q, *r.certificate, true));
    }
}

TEST(QuadRank, HalfMatrixRankRoundedUp) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned p = trial % 2 ? 7 : 5;
        const Poly Q = oracle::random_homogeneous(p, 4, 2, rng);
        const unsigned m = oracle::matrix_rank(symmetric_matrix(Q), p);
        EXPECT_EQ(quad_rank(Q).upper, (m + 1) / 2);
    }
}

TEST(QuadRank, BaseFieldRankOneIffHyperplaneZero) {
    for (unsigned p : {3u, 5u}) {
        HomogeneousSpace H(PrimeModulus(p), 2, 2);
        for (std::uint64_t i = 1; i < H.size(); ++i) {
            const Poly Q = H.element(i);
            const auto r = quad_rank(Q);
            ASSERT_TRUE(r.base_field_upper);
            EXPECT_EQ(*r.base_field_upper == 1, oracle::vanishes_on_some_hyperplane(Q)) << to_text(Q);
        }
    }
}

TEST(QuadRank, ExtensionImprovesSumOfTwoSquaresModThree) {
    const Poly Q = parse_poly("p=3 n=2 d=2\n1*x0^2 + 1*x1^2");
    const auto r = quad_rank(Q);
    EXPECT_EQ(r.upper, 1u);
    EXPECT_EQ(*r.base_field_upper, 2u);
    EXPECT_TRUE(r.extension_improved);
    EXPECT_EQ(r.certificate->extension_degree(), 2u);
    const auto s = quad_rank(parse_poly("p=5 n=2 d=2\n1*x0^2 + 1*x1^2"));
    EXPECT_EQ(*s.base_field_upper, 1u);
    EXPECT_FALSE(s.extension_improved);
}

TEST(Rank, CharacteristicTwoQuadratics) {
    for (std::size_t n = 1; n <= 3; ++n) {
        HomogeneousSpace H(PrimeModulus(2), n, 2);
        for (std::uint64_t i = 0; i < H.size(); ++i) {
            const Poly Q = H.element(i);
            const auto r = rank(Q);
            EXPECT_EQ(static_cast<int>(r.upper), oracle::quadratic_rank_bruteforce(Q)) << to_text(Q);
            EXPECT_EQ(r.lower, r.upper);
            EXPECT_TRUE(verify_certificate(Q, *r.certificate, true));
        }
    }
}

TEST(Rank, StrengthRankAgreesWithOracleOnQuadratics) {
    HomogeneousSpace H(PrimeModulus(3), 2, 2);
    for (std::uint64_t i = 1; i < H.size(); ++i) {
        const Poly Q = H.element(i);
        EXPECT_EQ(strength_rank(Q, 2, 2).upper, quad_rank(Q).upper);
    }
}

TEST(Rank, Cubics) {
    const auto a = rank(parse_poly("p=5 n=3 d=3\n1*x0^2*x1 + 1*x2^3"));
    EXPECT_EQ(a.lower, 2u);
    EXPECT_EQ(a.upper, 2u);
    const auto b = rank(parse_poly("p=5 n=3 d=3\n1*x0*x1*x2"));
    EXPECT_EQ(b.upper, 1u);
    // x^3 + y^3 = (x + y)(x^2 - xy + y^2)
    EXPECT_EQ(rank(parse_poly("p=5 n=2 d=3\n1*x0^3 + 1*x1^3")).upper, 1u);
    // x^3 - 2 y^3 has no linear factor over F_7 (2 is not a cube) but splits over F_{7^3}
    const auto c = rank(parse_poly("p=7 n=2 d=3\n1*x0^3 + 5*x1^3"));
    EXPECT_EQ(c.upper, 1u);
    EXPECT_EQ(c.certificate->extension_degree(), 3u);
    EXPECT_NE(c.base_field_upper.value_or(2), 1u);
    EXPECT_TRUE(c.extension_improved);
}

TEST(Rank, CubicRankOneMatchesHyperplaneOracle) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const Poly P = oracle::random_homogeneous(5, 2, 3, rng);
        if (P.is_zero()) continue;
        const auto r = rank(P);
        EXPECT_TRUE(verify_certificate(P, *r.certificate, true));
        if (oracle::vanishes_on_some_hyperplane(P)) EXPECT_EQ(r.upper, 1u);
        if (r.base_field_upper && *r.base_field_upper == 1) EXPECT_TRUE(oracle::vanishes_on_some_hyperplane(P));
    }
}

TEST(Rank, Inhomogeneous) {
    const Poly P = parse_poly("p=5 n=2 d=2\n1*x0^2 + 1*x1 + 3");
    RankOptions o;
    o.kind = RankKind::inhomogeneous;
    const auto r = rank(P, o);
    EXPECT_EQ(r.upper, 2u);
    EXPECT_TRUE(verify_certificate(P, *r.certificate, false));
    for (const char* lin : {"p=5 n=2 d=1\n1*x0", "p=5 n=2 d=1\n3", "p=5 n=2 d=1\n1*x0 + 2*x1 + 4"}) {
        const Poly L = parse_poly(lin);
        const auto s = rank(L, o);
        EXPECT_EQ(s.lower, 2u);
        EXPECT_EQ(s.upper, 2u);
        EXPECT_TRUE(verify_certificate(L, *s.certificate, false));
    }
    // x0 x1 + x0 = x0 (x1 + 1)
    EXPECT_EQ(rank(parse_poly("p=3 n=2 d=2\n1*x0*x1 + 1*x0"), o).upper, 1u);
}

TEST(Rank, Preconditions) {
    EXPECT_THROW(rank(parse_poly("p=5 n=2 d=1\n1*x0")), PreconditionError);
    RankOptions q;
    q.method = RankOptions::Method::quad;
    EXPECT_THROW(rank(parse_poly("p=2 n=2 d=2\n1*x0*x1"), q), PreconditionError);
    RankOptions h;
    h.kind = RankKind::homogeneous;
    EXPECT_THROW(rank(parse_poly("p=5 n=2 d=2\n1*x0^2 + 1*x1"), h), PreconditionError);
    EXPECT_EQ(rank(Poly(PrimeModulus(3), 2, 2)).upper, 0u);
}

TEST(Rank, StrictBudget) {
    const Poly P = parse_poly("p=5 n=5 d=3\n1*x0*x1*x2 + 1*x3^3 + 1*x4^2*x0 + 2*x1^3");
    EXPECT_THROW(strength_rank(P, 3, 2, 10), BudgetExceeded);
    RankOptions o;
    o.budget = 10;
    const auto r = rank(P, o);
    EXPECT_LE(r.lower, r.upper);
    EXPECT_TRUE(verify_certificate(P, *r.certificate, true));
}

TEST(AnalyticRank, BilinearFormsGiveMatrixRank) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const unsigned p = trial % 2 ? 3 : 2;
        MultilinearForm T(PrimeModulus(p), 2, 3);
        std::vector<std::vector<unsigned>> M(3, std::vector<unsigned>(3));
        std::uniform_int_distribution<unsigned> u(0, p - 1);
        for (std::uint16_t i = 0; i < 3; ++i)
            for (std::uint16_t j = 0; j < 3; ++j) {
                M[i][j] = u(rng);
                T.add({i, j}, M[i][j]);
            }
        const auto a = analytic_rank(T);
        EXPECT_NEAR(static_cast<double>(a.value), oracle::matrix_rank(M, p), 1e-9);
    }
}

TEST(BiasRank, BilinearLowerBound) {
    // rank-L bilinear forms have bias >= p^{-L}
    for (unsigned p : {2u, 3u}) {
        for (unsigned L = 0; L <= 2; ++L) {
            const auto c = bias_rank_constant(PrimeModulus(p), L, 2, 2);
            EXPECT_GT(c.forms_within_rank, 0u);
            EXPECT_LE(Rational(1, static_cast<std::int64_t>(oracle::ipow(p, L))), c.min_bias);
        }
    }
}
