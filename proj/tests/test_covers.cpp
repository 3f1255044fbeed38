#include <gtest/gtest.h>

#include <numeric>

#include "m12/covers.hpp"
#include "m12/exactnum.hpp"
#include "m12/ramify.hpp"

using namespace m12;

namespace {

/// Number of good primes (first `n` primes from `start`) where both polynomials
/// have the same factorization pattern; primes bad for either are skipped.
std::pair<int, int> pattern_agreement(IntPoly const& f, IntPoly const& g, int n, std::uint64_t start = 13)
{
    int same = 0, compared = 0;
    for (std::uint64_t p = next_prime(start); compared < n; p = next_prime(p + 1)) {
        auto a = ddf_partition(f, p), b = ddf_partition(g, p);
        if (!a || !b)
            continue;
        ++compared;
        same += *a == *b;
    }
    return {same, compared};
}

std::vector<int> degrees(RationalFactorization const& r)
{
    std::vector<int> d;
    for (auto const& f : r.factors)
        d.push_back(f.degree());
    return d;
}

} // namespace

TEST(Covers, CatalogShape)
{
    auto const& cat = catalog();
    for (std::string id : {"A", "A2", "B", "Bt", "C", "C2", "D", "D2", "E", "E2"})
        ASSERT_TRUE(cat.has(id)) << id;
    for (auto const& c : cat.covers) {
        for (auto const* l : {&c.triple.l0, &c.triple.l1, &c.triple.linf})
            EXPECT_EQ(std::accumulate(l->begin(), l->end(), 0), c.degree) << c.id;
        // Rationalized entries store the quadratic equation; the norm doubles the degree.
        if (c.poly)
            EXPECT_EQ(c.poly->degree_x() * (c.rationalized() ? 2 : 1), c.degree) << c.id;
    }
    EXPECT_THROW(cat.get("Z"), input_error);
}

TEST(Covers, ChecksumsDetectEdits)
{
    std::string text = embedded_catalog_text();
    EXPECT_NO_THROW(load_catalog(text));
    // Flip one digit inside the first polynomial body.
    auto at = text.find("poly {");
    ASSERT_NE(at, std::string::npos);
    auto digit = text.find_first_of("123456789", at + 6);
    text[digit] = text[digit] == '9' ? '8' : static_cast<char>(text[digit] + 1);
    EXPECT_THROW(load_catalog(text), input_error);
}

TEST(Covers, SpecializationDegreesAndContent)
{
    struct Case {
        char const* id;
        Rat value;
        int degree;
    };
    for (auto const& [id, v, n] : std::vector<Case>{{"B", Rat(5), 12},
                                                     {"Bt", Rat(5), 12},
                                                     {"C2", Rat(125, 4), 24},
                                                     {"D2", Rat(7), 24},
                                                     {"A2", Rat(3), 24},
                                                     {"E2", Rat(2), 24}}) {
        auto s = specialize(id, v);
        EXPECT_EQ(s.degree, n) << id;
        EXPECT_EQ(content(s.poly), 1) << id;
        EXPECT_NE(discriminant(s.poly), 0) << id;
    }
}

TEST(Covers, CuspsAreRejected)
{
    EXPECT_THROW(specialize("C2", Rat(0)), input_error);
    EXPECT_THROW(specialize("C2", Rat(1)), input_error);
    EXPECT_THROW(specialize("D2", Rat(0)), input_error);
    // C is defined over Q(sqrt -11) and has no rational specialization.
    EXPECT_THROW(specialize("C", Rat(2)), input_error);
}

TEST(Covers, BAtOneSplitsOffALine)
{
    auto s = specialize("B", Rat(1));
    auto r = factor_rational(squarefree_part(s.poly));
    EXPECT_EQ(degrees(r), (std::vector<int>{1, 11}));
}

TEST(Covers, SpecializationsMatchPrintedFixtures)
{
    struct Case {
        char const* id;
        Rat value;
        char const* fx;
    };
    for (auto const& [id, v, fx] : std::vector<Case>{{"B", Rat(5), "B_5"},
                                                      {"Bt", Rat(5), "Bt_5"},
                                                      {"B", Rat(-5, 2), "B_-5/2"},
                                                      {"C2", Rat(125, 4), "C2_5^3/2^2"}}) {
        auto [same, n] = pattern_agreement(specialize(id, v).poly, fixture(fx).poly, 60);
        EXPECT_EQ(same, n) << id << " vs " << fx;
    }
}

TEST(Covers, ETwinsMultiplyToE2)
{
    Rat s(319, 54);
    auto [u, v] = specialize_E_twins(s);
    EXPECT_EQ(u.degree, 12);
    EXPECT_EQ(v.degree, 12);
    Rat t = 1 + s * s / 11;
    t.canonicalize();
    auto e2 = specialize("E2", t).poly;
    auto prod = primitive_part(u.poly * v.poly);
    // Same polynomial up to a constant: compare after making both monic-equivalent.
    IntPoly a = prod * IntPoly::constant(e2.lc()), b = e2 * IntPoly::constant(prod.lc());
    EXPECT_EQ(a, b);
    auto [u2, v2] = specialize_E_twins(-s);
    EXPECT_EQ(u.poly, u2.poly);
    EXPECT_EQ(v.poly, v2.poly);
}

TEST(Covers, CLiftScaleReproducesPrintedDegree48)
{
    Rat tau(125, 4);
    auto target = fixture("C2~_5^3/2^2").poly;
    auto scaled = build_lift("C2", tau);
    EXPECT_EQ(scaled.degree, 48);
    auto [same, n] = pattern_agreement(scaled.poly, target, 40);
    EXPECT_EQ(same, n);
    auto unscaled = build_lift("C2", tau, "", false);
    auto [same_u, n_u] = pattern_agreement(unscaled.poly, target, 40);
    EXPECT_LT(same_u, n_u);
}

TEST(Covers, DLiftScaleReproducesPrintedDegree48)
{
    Rat tau(Int(2087) * 2087 * 2087, Int(64) * ipow(Int(3), 15) * 11);
    tau.canonicalize();
    auto target = fixture("D2~_2087^3/2^6.3^15.11").poly;
    auto scaled = build_lift("D2", tau);
    auto [same, n] = pattern_agreement(scaled.poly, target, 30);
    EXPECT_EQ(same, n);
    auto unscaled = build_lift("D2", tau, "", false);
    auto [same_u, n_u] = pattern_agreement(unscaled.poly, target, 30);
    EXPECT_LT(same_u, n_u);
}

TEST(Covers, BLiftFixturesContainTheBaseFields)
{
    // The printed lifts are even in y; their y^2-quotients must define K(B,5), K(Bt,5).
    for (auto [lift, base] : std::vector<std::pair<char const*, char const*>>{{"B~_5", "B_5"}, {"Bt~_5", "Bt_5"}}) {
        auto const& g = fixture(lift).poly;
        ASSERT_EQ(g.degree(), 24);
        std::vector<Int> half;
        for (int k = 0; k <= g.degree(); ++k) {
            if (k % 2)
                EXPECT_EQ(g.coeff(k), 0) << lift;
            else
                half.push_back(g.coeff(k));
        }
        auto [same, n] = pattern_agreement(IntPoly(half), fixture(base).poly, 40);
        EXPECT_EQ(same, n) << lift;
        EXPECT_EQ(substitute_square(IntPoly(half)), g);
    }
}

TEST(Covers, HReadingSelection)
{
    auto r = select_h_reading(12);
    EXPECT_EQ(r.chosen, catalog().h_reading);
    EXPECT_EQ(r.agreements.at(r.chosen), r.primes_compared);
}
