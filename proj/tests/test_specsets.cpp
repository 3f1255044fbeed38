#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "m12/covers.hpp"
#include "m12/ramify.hpp"
#include "m12/specsets.hpp"

using namespace m12;

namespace {

std::vector<Int> S5{2, 3, 5}, S11{2, 3, 11};

/// Independent membership test on machine integers: strip S by trial division,
/// then check for a perfect k-th power by rounding a floating root.
bool naive_arm(long v, int k, std::vector<Int> const& S)
{
    v = std::labs(v);
    for (auto const& q : S)
        while (v % q.get_si() == 0)
            v /= q.get_si();
    long r = std::lround(std::pow(static_cast<double>(v), 1.0 / k));
    for (long c = std::max(1L, r - 1); c <= r + 1; ++c) {
        long t = 1;
        for (int i = 0; i < k; ++i)
            t *= c;
        if (t == v)
            return true;
    }
    return false;
}

std::set<std::string> taus(std::vector<SpecPoint> const& pts)
{
    std::set<std::string> s;
    for (auto const& p : pts)
        s.insert(to_string(p.tau));
    return s;
}

struct Identity {
    Int A, B, C; ///< A + B + C = 0 with A = a x^m0, B = b y^m1, C = c z^minf
    Orders m;
    std::vector<Int> S;
};

std::vector<Identity> printed_identities()
{
    return {
        {ipow(Int(158470321), 3), -ipow(Int("1994904202391"), 2),
         ipow(Int(2), 10) * 81 * 5 * ipow(Int(19), 10), {3, 2, 10}, S5},
        {ipow(Int(79), 4), -ipow(Int(6881), 2), Int(256) * 6561 * 5, {4, 2, 10}, S5},
        {ipow(Int(2540833), 3), -ipow(Int("4050085583"), 2), ipow(Int(2), 18) * 3 * ipow(Int(11), 6), {3, 2, 11}, S11},
        {ipow(Int(796531585), 3), -ipow(Int("22481204531903"), 2),
         ipow(Int(2), 11) * 243 * 121 * ipow(Int(17), 12), {3, 2, 12}, S11},
    };
}

} // namespace

TEST(SpecSets, PrintedIdentitiesHoldAndAreMembers)
{
    for (auto const& id : printed_identities()) {
        EXPECT_EQ(id.A + id.B + id.C, 0);
        Rat tau(-id.A, id.C);
        tau.canonicalize();
        auto r = validate_membership(tau, id.m, id.S);
        EXPECT_EQ(r.verdict, Membership::member) << to_string(tau) << ": " << r.reason;
        ASSERT_TRUE(r.witness);
        EXPECT_TRUE(r.witness->holds(id.m));
        EXPECT_GT(r.witness->b, 0);
    }
}

TEST(SpecSets, WitnessNormalization)
{
    auto w = normalized_witness(Rat(-11, 64), {3, 2, 11}, S11);
    EXPECT_TRUE(w.holds({3, 2, 11}));
    for (auto const& v : {w.x, w.y, w.z})
        for (auto const& q : S11)
            EXPECT_NE(v % q, 0);
    EXPECT_THROW(normalized_witness(Rat(7, 64), {3, 2, 11}, S11), input_error);
}

TEST(SpecSets, NonMembersExplainTheFailure)
{
    auto r = validate_membership(Rat(7, 64), {3, 2, 11}, S11);
    EXPECT_EQ(r.verdict, Membership::non_member);
    EXPECT_NE(r.reason.find("7"), std::string::npos);
    EXPECT_THROW(validate_membership(Rat(1), {3, 2, 11}, S11), input_error);
}

TEST(SpecSets, SearchMatchesBruteForce)
{
    Orders m{3, 2, 11};
    long H = 1500;
    std::set<std::string> brute;
    for (long D = 1; D <= H; ++D)
        for (long N = -H; N <= H; ++N) {
            if (N == 0 || N == D || std::gcd(N, D) != 1)
                continue;
            if (naive_arm(N, m.m0, S11) && naive_arm(N - D, m.m1, S11) && naive_arm(D, m.minf, S11))
                brute.insert(to_string(Rat(N, D)));
        }
    EXPECT_EQ(taus(search(m, S11, Int(H))), brute);
}

TEST(SpecSets, SearchIsMonotoneInHeight)
{
    Orders m{4, 2, 10};
    auto small = taus(search(m, S5, Int(10000)));
    auto large = taus(search(m, S5, Int(1000000)));
    EXPECT_LT(small.size(), large.size());
    for (auto const& t : small)
        EXPECT_TRUE(large.count(t)) << t;
}

TEST(SpecSets, SearchPointsValidateAndAreSorted)
{
    Orders m{3, 2, 11};
    auto pts = search(m, S11, Int(1000000));
    ASSERT_FALSE(pts.empty());
    EXPECT_TRUE(taus(pts).count("-11/64"));
    EXPECT_TRUE(taus(pts).count("704/729"));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        EXPECT_EQ(validate_membership(pts[i].tau, m, S11).verdict, Membership::member);
        ASSERT_TRUE(pts[i].witness);
        EXPECT_TRUE(pts[i].witness->holds(m));
        if (i)
            EXPECT_LE(height(pts[i - 1].tau), height(pts[i].tau));
    }
}

TEST(SpecSets, BPointsFromTheBaseSet)
{
    // 5 (1 - tau) = (6881/1296)^2 at tau = -79^4 / (2^8 3^8 5).
    Rat tau(-ipow(Int(79), 4), Int(256) * 6561 * 5);
    tau.canonicalize();
    SpecPoint base{tau, {4, 2, 10}, S5, std::nullopt};
    auto pts = derive_B_points({base});
    std::set<std::string> sig;
    for (auto const& p : pts)
        sig.insert(to_string(p.sigma));
    EXPECT_EQ(sig, (std::set<std::string>{"-6881/1296", "0", "6881/1296"}));
}

TEST(SpecSets, ArmClassification)
{
    EXPECT_EQ(classify_arm(Rat(125, 4), 5).location, ArmLocation::arm0);
    EXPECT_EQ(classify_arm(Rat(125, 4), 5).j, 3);
    EXPECT_EQ(classify_arm(Rat(125, 4), 2).location, ArmLocation::arm_inf);
    EXPECT_EQ(classify_arm(Rat(125, 4), 2).j, 2);
    auto a = classify_arm(Rat(125, 4), 11); // tau - 1 = 121/4
    EXPECT_EQ(a.location, ArmLocation::arm1);
    EXPECT_EQ(a.j, 2);
    EXPECT_EQ(classify_arm(Rat(125, 4), 7).location, ArmLocation::generic);
    EXPECT_THROW(classify_arm(Rat(0), 7), input_error);
}

TEST(SpecSets, TamePredictionMatchesFieldValuation)
{
    struct Case {
        char const* id;
        Rat value;
        std::uint64_t p;
    };
    std::vector<Case> cases;
    for (std::uint64_t p : {13, 17, 19}) {
        Int P(static_cast<unsigned long>(p));
        for (unsigned j = 1; j <= 3; ++j) {
            Int q = ipow(P, j);
            for (char const* id : {"C2", "D2", "A2", "E2"}) {
                cases.push_back({id, Rat(q * 2), p});
                cases.push_back({id, Rat(q * 3 + 1), p});
                cases.push_back({id, Rat(Int(7), q), p});
            }
            cases.push_back({"B", Rat(q), p});
            cases.push_back({"Bt", Rat(Int(2), q), p});
        }
    }
    cases.push_back({"D2", Rat(7), 7});
    for (auto const& [id, v, p] : cases) {
        auto const& cover = catalog().get(id);
        int predicted = predict_tame(cover, v, p);
        FieldDiscOptions opt;
        opt.primes = {p};
        opt.complete_support = true;
        opt.check_square_cofactor = false;
        auto rep = field_discriminant(specialize(id, v).poly, opt);
        EXPECT_EQ(rep.disc.at(p), predicted) << id << " @ " << to_string(v) << ", p = " << p;
    }
}

TEST(SpecSets, RecordsRoundTrip)
{
    auto pts = search({3, 2, 11}, S11, Int(100000));
    std::stringstream ss;
    ss << "# comment\n\n";
    write_records(ss, pts);
    auto back = read_records(ss);
    ASSERT_EQ(back.size(), pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        EXPECT_EQ(back[i].tau, pts[i].tau);
        EXPECT_EQ(to_record(back[i]), to_record(pts[i]));
    }
    EXPECT_THROW(parse_record("1/2  1 1 1 1 1 1  3,2,11  2,3,11"), input_error);
}

TEST(SpecSets, OrdersAndPrimeSetsParse)
{
    EXPECT_EQ(parse_orders("3,2,11"), (Orders{3, 2, 11}));
    EXPECT_EQ(to_string(Orders{4, 2, 10}), "4,2,10");
    EXPECT_EQ(parse_prime_set("11,2,3"), S11);
    EXPECT_THROW(parse_prime_set("2,4"), input_error);
}
