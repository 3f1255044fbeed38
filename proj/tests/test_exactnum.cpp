#include <gtest/gtest.h>

#include <random>

#include "m12/exactnum.hpp"

using namespace m12;

namespace {

std::vector<bool> sieve(unsigned n)
{
    std::vector<bool> s(n + 1, true);
    s[0] = s[1] = false;
    for (unsigned i = 2; i * i <= n; ++i)
        if (s[i])
            for (unsigned j = i * i; j <= n; j += i)
                s[j] = false;
    return s;
}

} // namespace

TEST(ExactNum, ParseAndPrint)
{
    EXPECT_EQ(to_string(parse_rat("-10/4")), "-5/2");
    EXPECT_EQ(to_string(parse_rat("6")), "6");
    EXPECT_EQ(parse_int("-123456789012345678901234567890").get_str(), "-123456789012345678901234567890");
    EXPECT_THROW(parse_rat("1/0"), input_error);
    EXPECT_THROW(parse_rat("1.5"), input_error);
    EXPECT_THROW(parse_int(""), input_error);
}

TEST(ExactNum, Valuations)
{
    EXPECT_EQ(ord_p(Int(96), Int(2)), 5);
    EXPECT_EQ(ord_p(parse_rat("-11/64"), Int(2)), -6);
    EXPECT_EQ(ord_p(parse_rat("-11/64"), Int(11)), 1);
    EXPECT_EQ(ord_p(Int(7), Int(3)), 0);
    EXPECT_THROW(ord_p(Int(0), Int(3)), input_error);
}

TEST(ExactNum, PrimalityAgreesWithSieve)
{
    auto s = sieve(20000);
    for (unsigned n = 0; n <= 20000; ++n)
        ASSERT_EQ(is_probable_prime(Int(n)), s[n]) << n;
    EXPECT_TRUE(is_probable_prime(Int("170141183460469231731687303715884105727")));
    // Carmichael numbers
    for (long c : {561L, 1105L, 1729L, 2465L, 2821L, 6601L, 8911L})
        EXPECT_FALSE(is_probable_prime(Int(c)));
}

TEST(ExactNum, PrimeListsAgreeWithSieve)
{
    auto s = sieve(100000);
    std::vector<std::uint64_t> expect;
    for (unsigned n = 90000; n <= 100000; ++n)
        if (s[n])
            expect.push_back(n);
    EXPECT_EQ(primes_between(90000, 100000), expect);
    auto first = first_primes(5, {2, 3, 5});
    EXPECT_EQ(first, (std::vector<std::uint64_t>{7, 11, 13, 17, 19}));
    EXPECT_EQ(next_prime(7900033), 7900033u);
    EXPECT_EQ(next_prime(7900034), 7900043u);
}

TEST(ExactNum, FactorizationRecomposes)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Int n = Int(static_cast<unsigned long>(rng() >> 24)) * Int(static_cast<unsigned long>(rng() >> 30)) + 2;
        Factorization f = factor_int(n);
        ASSERT_TRUE(f.complete()) << n;
        EXPECT_EQ(f.recompose(), n);
        for (auto const& [p, e] : f.factors)
            EXPECT_TRUE(is_probable_prime(p));
    }
    Factorization neg = factor_int(Int(-360));
    EXPECT_EQ(neg.sign, -1);
    EXPECT_EQ(neg.recompose(), -360);
}

TEST(ExactNum, RhoSplitsSemiprimeAboveTrialBound)
{
    Int p("1000000007"), q("998244353");
    Factorization f = factor_int(p * q);
    ASSERT_TRUE(f.complete());
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0].first, q);
    EXPECT_EQ(f.factors[1].first, p);
}

TEST(ExactNum, ExhaustedBudgetLeavesCofactor)
{
    Int p("1000000000000000003"), q("1000000000000000009");
    Factorization f = factor_int(p * q * 12, FactorBudget{1000, 10});
    EXPECT_FALSE(f.complete());
    EXPECT_EQ(f.unfactored, p * q);
    EXPECT_EQ(f.recompose(), p * q * 12);
}

TEST(ExactNum, SDecomposition)
{
    std::vector<Int> S{2, 3, 11};
    Rat x = parse_rat("-2816/2187"); // -(2^8 11) / 3^7
    auto d = s_decompose(x, S);
    EXPECT_EQ(d.sign, -1);
    EXPECT_TRUE(d.is_s_unit());
    EXPECT_EQ(d.exponents[Int(2)], 8);
    EXPECT_EQ(d.exponents[Int(3)], -7);
    EXPECT_EQ(d.recompose(), x);
    auto e = s_decompose(parse_rat("35/12"), S);
    EXPECT_EQ(e.num, 35);
    EXPECT_FALSE(e.is_s_unit());
    EXPECT_EQ(e.recompose(), parse_rat("35/12"));
}

TEST(ExactNum, Roots)
{
    EXPECT_EQ(*exact_root(Int(-343), 3), -7);
    EXPECT_FALSE(exact_root(Int(-4), 2));
    EXPECT_FALSE(exact_root(Int(17), 2));
    EXPECT_EQ(*rational_sqrt(parse_rat("47348161/1679616")), parse_rat("6881/1296"));
    EXPECT_FALSE(rational_sqrt(parse_rat("5/4")));
}

TEST(ExactNum, QuadraticArithmetic)
{
    QuadElt u(Int(-11), 0, 1);
    QuadElt a = (QuadElt(11L) - u) / QuadElt(2L);
    EXPECT_EQ(a.norm(), 33);
    EXPECT_EQ(u * u, QuadElt(-11L));
    EXPECT_EQ(a * a.inverse(), QuadElt(1L));
    EXPECT_EQ(a.conj().conj(), a);
    QuadElt r5(Int(5), 1, 1);
    EXPECT_THROW(r5 + u, input_error);
    EXPECT_THROW(QuadElt(Int(4), 0, 1), input_error);

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int i = 0; i < 100; ++i) {
        QuadElt x(Int(-5), Rat(d(rng), 3), Rat(d(rng), 7)), y(Int(-5), Rat(d(rng)), Rat(d(rng), 2));
        EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
    }
}

TEST(ExactNum, ModularHelpers)
{
    const std::uint64_t p = 4294967291ULL;
    for (std::uint64_t a : std::vector<std::uint64_t>{2, 12345, p - 1}) {
        EXPECT_EQ(mulmod(a, invmod(a, p), p), 1u);
        EXPECT_EQ(powmod(a, p - 1, p), 1u);
    }
    FpElt x(3, 7);
    EXPECT_EQ((x * x.inverse()).residue(), 1u);
    EXPECT_EQ(mod_ui(Int(-1), 7), 6u);
}
