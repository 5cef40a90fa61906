#include "heckemod/qseries.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace heckemod;

namespace {

QExpansion random_series(std::mt19937_64& rng, std::size_t prec) {
    std::uniform_int_distribution<long> dist(-1000, 1000);
    std::vector<Integer> c(prec);
    for (auto& x : c) x = dist(rng);
    return QExpansion(std::move(c));
}

} // namespace

TEST(QSeries, Eisenstein4) {
    EXPECT_EQ(eisenstein4(1), QExpansion({1}));
    EXPECT_EQ(eisenstein4(2), QExpansion({1, 240}));
    EXPECT_EQ(eisenstein4(3), QExpansion({1, 240, 2160}));
}

TEST(QSeries, Eisenstein6) {
    EXPECT_EQ(eisenstein6(1), QExpansion({1}));
    EXPECT_EQ(eisenstein6(2), QExpansion({1, -504}));
    EXPECT_EQ(eisenstein6(3), QExpansion({1, -504, -16632}));
}

TEST(QSeries, EisensteinAgainstDivisorSums) {
    const auto e4 = eisenstein4(40), e6 = eisenstein6(40);
    for (long n = 1; n < 40; ++n) {
        EXPECT_EQ(e4[n], 240 * oracle::sigma(n, 3));
        EXPECT_EQ(e6[n], -504 * oracle::sigma(n, 5));
    }
}

TEST(QSeries, DeltaLeadingCoefficients) {
    const auto d = delta(4);
    EXPECT_EQ(d[0], 0);
    EXPECT_EQ(d[1], 1);
    EXPECT_EQ(d[2], -24);
    EXPECT_EQ(d[3], 252);
}

TEST(QSeries, DeltaMatchesJacobiOracle) {
    const auto d = delta(201);
    const auto tau = oracle::tau(200);
    for (std::size_t n = 0; n <= 200; ++n) EXPECT_EQ(d[n], tau[n]) << "n = " << n;
}

TEST(QSeries, TauMultiplicative) {
    const auto d = delta(51);
    for (long m = 1; m <= 50; ++m)
        for (long n = 1; m * n <= 50; ++n)
            if (std::gcd(m, n) == 1) EXPECT_EQ(d[m * n], d[m] * d[n]) << m << " * " << n;
}

TEST(QSeries, MulExamples) {
    EXPECT_EQ(mul(QExpansion({1, 1}), QExpansion({1, -1})), QExpansion({1, 0}));
    EXPECT_EQ(mul(delta(3), eisenstein4(3)), QExpansion({0, 1, 216}));
    const QExpansion a({3, -1, 4, 1, -5});
    EXPECT_EQ(mul(a, QExpansion::one(5)), a);
}

TEST(QSeries, PowExamples) {
    const QExpansion a({3, -1, 4});
    EXPECT_EQ(pow(a, 0), QExpansion::one(3));
    EXPECT_EQ(pow(QExpansion({0, 1, 0}), 2), QExpansion({0, 0, 1}));
    EXPECT_EQ(pow(eisenstein4(2), 3) - pow(eisenstein6(2), 2), QExpansion({0, 1728}));
}

TEST(QSeries, DiscriminantIdentity) {
    const std::size_t prec = 120;
    const auto lhs = pow(eisenstein4(prec), 3) - pow(eisenstein6(prec), 2);
    EXPECT_EQ(lhs, Integer(1728) * delta(prec));
}

TEST(QSeries, MulCommutativeAssociative) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_series(rng, 25), b = random_series(rng, 25), c = random_series(rng, 25);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(QSeries, PowMatchesRepeatedProduct) {
    std::mt19937_64 rng(11);
    const auto a = random_series(rng, 15);
    QExpansion acc = QExpansion::one(15);
    for (unsigned e = 0; e < 9; ++e) {
        EXPECT_EQ(pow(a, e), acc);
        acc = acc * a;
    }
}

TEST(QSeries, RejectsEmpty) {
    EXPECT_THROW(QExpansion(std::size_t{0}), std::invalid_argument);
    EXPECT_THROW(delta(0), std::invalid_argument);
}
