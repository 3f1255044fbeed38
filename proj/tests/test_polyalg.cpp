#include <gtest/gtest.h>

#include <random>

#include "m12/polyalg.hpp"

using namespace m12;

namespace {

/// Determinant of the Sylvester matrix by fraction-free Bareiss elimination.
Int sylvester_resultant(IntPoly const& f, IntPoly const& g)
{
    int m = f.degree(), n = g.degree(), N = m + n;
    std::vector<std::vector<Int>> A(N, std::vector<Int>(N, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k)
            A[i][i + k] = f.c[m - k];
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k)
            A[n + i][i + k] = g.c[n - k];
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (A[k][k] == 0) {
            int r = k + 1;
            while (r < N && A[r][k] == 0)
                ++r;
            if (r == N)
                return 0;
            std::swap(A[k], A[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i)
            for (int j = k + 1; j < N; ++j)
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
        prev = A[k][k];
    }
    return sign * A[N - 1][N - 1];
}

IntPoly random_poly(std::mt19937& rng, int deg, int bound)
{
    std::uniform_int_distribution<int> d(-bound, bound);
    std::vector<Int> c(deg + 1);
    for (auto& x : c)
        x = d(rng);
    if (c.back() == 0)
        c.back() = 1;
    return IntPoly(c);
}

int count_roots_mod(IntPoly const& f, std::uint64_t p)
{
    int n = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        Int v = f(Int(static_cast<unsigned long>(x)));
        if (mpz_fdiv_ui(v.get_mpz_t(), p) == 0)
            ++n;
    }
    return n;
}

} // namespace

TEST(PolyAlg, ParseFormats)
{
    IntPoly f = parse_symbolic("x^3 - 2*x + 7");
    EXPECT_EQ(f, IntPoly({7, -2, 0, 1}));
    EXPECT_EQ(parse_poly(to_deg_format(f)), f);
    EXPECT_EQ(parse_poly(to_symbolic(f)), f);
    EXPECT_THROW(parse_symbolic("x^2 + y"), input_error);
}

TEST(PolyAlg, ResultantMatchesSylvesterDeterminant)
{
    std::mt19937 rng(11);
    for (int i = 0; i < 60; ++i) {
        IntPoly f = random_poly(rng, 1 + i % 7, 30), g = random_poly(rng, 1 + (i / 7) % 6, 30);
        EXPECT_EQ(resultant(f, g), sylvester_resultant(f, g)) << to_symbolic(f) << " ; " << to_symbolic(g);
    }
}

TEST(PolyAlg, DiscriminantMatchesResultantFormula)
{
    std::mt19937 rng(12);
    for (int i = 0; i < 40; ++i) {
        IntPoly f = random_poly(rng, 2 + i % 8, 20);
        int n = f.degree();
        Int r = sylvester_resultant(f, f.derivative());
        Int expect = r / f.lc();
        if ((n * (n - 1) / 2) % 2)
            expect = -expect;
        EXPECT_EQ(discriminant(f), expect);
    }
    EXPECT_EQ(discriminant(parse_symbolic("x^2 - x + 1")), -3);
    EXPECT_EQ(discriminant(parse_symbolic("x^3 - 2")), -108);
    EXPECT_EQ(discriminant(parse_symbolic("x^3 + x^2 - 5*x + 3")), 0);
}

TEST(PolyAlg, SquareSubstitutionDiscriminantDivisibility)
{
    std::mt19937 rng(13);
    for (int i = 0; i < 25; ++i) {
        IntPoly f = random_poly(rng, 2 + i % 5, 15);
        Int d = discriminant(f);
        if (d == 0)
            continue;
        Int big = discriminant(substitute_square(f));
        EXPECT_TRUE(mpz_divisible_p(big.get_mpz_t(), Int(d * d).get_mpz_t()));
    }
}

TEST(PolyAlg, DdfPartitionCountsRoots)
{
    std::mt19937 rng(14);
    for (int i = 0; i < 40; ++i) {
        IntPoly f = random_poly(rng, 3 + i % 9, 50);
        f.c.back() = 1;
        for (std::uint64_t p : {101ULL, 103ULL, 211ULL}) {
            auto part = ddf_partition(f, p);
            if (!part)
                continue;
            int ones = static_cast<int>(std::count(part->begin(), part->end(), 1));
            EXPECT_EQ(ones, count_roots_mod(f, p));
            int total = 0;
            for (int k : *part)
                total += k;
            EXPECT_EQ(total, f.degree());
        }
    }
    EXPECT_FALSE(ddf_partition(parse_symbolic("x^3 - x^2 - x + 1"), 7));
    EXPECT_FALSE(ddf_partition(parse_symbolic("7*x^2+1"), 7));
    EXPECT_EQ(*ddf_partition(parse_symbolic("x+5"), 13), Partition{1});
}

TEST(PolyAlg, ModPFactorsMultiplyBack)
{
    std::mt19937 rng(15);
    for (int i = 0; i < 30; ++i) {
        IntPoly f = random_poly(rng, 4 + i % 10, 40);
        f.c.back() = 1;
        std::uint64_t p = 1009;
        if (!ddf_partition(f, p))
            continue;
        auto fac = factor_mod_p(f, p);
        FpPoly prod(p, {1});
        for (auto const& g : fac)
            prod = prod * g;
        EXPECT_EQ(prod, FpPoly::reduce(f, p).monic());
        Partition degs;
        for (auto const& g : fac)
            degs.push_back(g.degree());
        EXPECT_EQ(normalize_partition(degs), *ddf_partition(f, p));
    }
}

TEST(PolyAlg, RationalFactorizationRecovers)
{
    std::mt19937 rng(16);
    for (int i = 0; i < 15; ++i) {
        IntPoly a = random_poly(rng, 2 + i % 4, 9), b = random_poly(rng, 1 + i % 5, 9), c = random_poly(rng, 3, 9);
        IntPoly f = a * b * c;
        if (discriminant(f) == 0)
            continue;
        auto fr = factor_rational(f);
        IntPoly prod = IntPoly::constant(fr.content);
        for (auto const& g : fr.factors) {
            prod *= g;
            EXPECT_TRUE(is_irreducible(g));
        }
        EXPECT_EQ(prod, f);
        EXPECT_GE(fr.factors.size(), 3u);
    }
    // Swinnerton-Dyer style: irreducible over Q, splits modulo every prime.
    IntPoly sd = parse_symbolic("x^4 - 10*x^2 + 1");
    EXPECT_TRUE(is_irreducible(sd));
    auto two = factor_rational(parse_symbolic("x^4 + 4"));
    ASSERT_EQ(two.factors.size(), 2u);
    EXPECT_THROW(factor_rational(parse_symbolic("x^2 - 2*x + 1")), input_error);
}

TEST(PolyAlg, MonicizeAndReciprocalPreserveField)
{
    IntPoly f = parse_symbolic("6*x^3 + 5*x + 7");
    IntPoly g = monicize(f);
    EXPECT_EQ(g.lc(), 1);
    EXPECT_EQ(g.degree(), 3);
    // monicize: a^(n-1) f(x/a)
    EXPECT_EQ(g, parse_symbolic("x^3 + 30*x + 252"));
    EXPECT_EQ(reciprocal(f), parse_symbolic("7*x^3 + 5*x^2 + 6"));
    EXPECT_EQ(taylor_shift(parse_symbolic("x^2"), Int(1)), parse_symbolic("x^2 + 2*x + 1"));
}
