#include "heckemod/hecke.hpp"
#include "heckemod/traceformula.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace heckemod;

TEST(TraceFormula, HurwitzClassNumbers) {
    EXPECT_EQ(hurwitz_class_number(0), Rational(-1, 12));
    EXPECT_EQ(hurwitz_class_number(3), Rational(1, 3));
    EXPECT_EQ(hurwitz_class_number(4), Rational(1, 2));
    // H(N) for N = 7, 8, 11, 12, 15, 16, 19, 20, 23
    const std::vector<std::pair<long, Rational>> known{{7, 1},  {8, 1},  {11, 1}, {12, Rational(4, 3)}, {15, 2},
                                                       {16, Rational(3, 2)}, {19, 1}, {20, 2}, {23, 3}};
    for (const auto& [n, h] : known) EXPECT_EQ(hurwitz_class_number(n), h) << "N = " << n;
    EXPECT_EQ(hurwitz_class_number(1), 0);
    EXPECT_EQ(hurwitz_class_number(2), 0);
    EXPECT_EQ(hurwitz_class_number(5), 0);
}

TEST(TraceFormula, KroneckerHurwitzRelation) {
    for (long n = 1; n <= 60; ++n) {
        Rational sum = 0;
        for (long t = -2 * n; t <= 2 * n; ++t)
            if (t * t <= 4 * n) sum += hurwitz_class_number(4 * n - t * t);
        EXPECT_EQ(sum, oracle::kronecker_hurwitz_rhs(n)) << "n = " << n;
    }
}

TEST(TraceFormula, WeightPolynomial) {
    for (long t = -5; t <= 5; ++t)
        for (long n = 1; n <= 4; ++n) EXPECT_EQ(weight_poly(3, t, n), t);
    EXPECT_EQ(weight_poly(12, 1, 1), -1);
    EXPECT_EQ(weight_poly(12, 2, 1), 11);
}

TEST(TraceFormula, WeightPolynomialSignSymmetry) {
    for (int k = 4; k <= 40; k += 2)
        for (long n = 1; n <= 12; ++n)
            for (long t = 0; t * t <= 4 * n; ++t) EXPECT_EQ(weight_poly(k, -t, n), weight_poly(k, t, n)) << k << "," << t << "," << n;
}

TEST(TraceFormula, FermatPeriodicity) {
    for (long ell : {5, 7, 13})
        for (long n = 1; n <= 8; ++n) {
            if (n % ell == 0) continue;
            for (long t = 0; t * t <= 4 * n; ++t) {
                if ((t * t - 4 * n) % ell == 0) continue;
                for (int k = 4; k <= 30; k += 2) {
                    const Integer a = weight_poly(k, t, n), b = weight_poly(k + static_cast<int>(ell * ell - 1), t, n);
                    EXPECT_EQ(mod_u64(a - b, static_cast<std::uint64_t>(ell)), 0u) << ell << "," << n << "," << t << "," << k;
                }
            }
        }
}

TEST(TraceFormula, TraceExamples) {
    EXPECT_EQ(trace(1, 12), 1);
    EXPECT_EQ(trace(2, 12), -24);
    EXPECT_EQ(trace(2, 16), 216);
    EXPECT_THROW(trace(2, 13), std::invalid_argument);
    EXPECT_THROW(trace(0, 12), std::invalid_argument);
}

TEST(TraceFormula, TraceOfIdentityIsDimension) {
    for (int k = 4; k <= 200; k += 2) EXPECT_EQ(trace(1, k), dim_cusp(k)) << "k = " << k;
}

TEST(TraceFormula, AgreesWithHeckeMatrix) {
    for (long n = 1; n <= 10; ++n)
        for (int k = 12; k <= 40; k += 2) EXPECT_EQ(trace(n, k), hecke_matrix({n, k}).trace()) << n << "," << k;
    for (long n : {12, 18, 25})
        for (int k = 12; k <= 40; k += 2) EXPECT_EQ(trace(n, k), hecke_matrix({n, k}).trace()) << n << "," << k;
}

TEST(TraceFormula, LowWeightsVanish) {
    for (long n = 1; n <= 20; ++n)
        for (int k : {4, 6, 8, 10, 14}) EXPECT_EQ(trace(n, k), 0) << n << "," << k;
}

TEST(TraceFormula, ModPeriodicity) {
    const int p25 = trace_mod_periodicity(2, 5, 0);
    EXPECT_EQ(24 % p25, 0);
    const int p213 = trace_mod_periodicity(2, 13, 0);
    EXPECT_EQ(168 % p213, 0);
    // trace(1, k) = d_k: direct scan of dimensions mod ell along the class
    for (long ell : {5, 7, 13}) {
        const int step = static_cast<int>(ell - 1);
        const int period = trace_mod_periodicity(1, ell, 0);
        std::vector<long> dims;
        for (int k = 12; dims.size() < 400; k += step) dims.push_back(dim_cusp(k) % ell);
        EXPECT_EQ(static_cast<std::size_t>(period / step), oracle::naive_period(dims)) << "ell = " << ell;
    }
}

TEST(TraceFormula, PeriodBounds) {
    EXPECT_EQ(root_period_bound(13), 14);
    EXPECT_EQ(trace_period_bound(2, 5), 24);
    EXPECT_EQ(trace_period_bound(1, 5), 120);
    EXPECT_TRUE(is_square_mod(4, 5));
    EXPECT_FALSE(is_square_mod(2, 5));
}
