#include "m12/specsets.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace m12 {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::vector<std::string> split(std::string const& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

int parse_small(std::string const& s)
{
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 1)
            throw input_error("");
        return v;
    } catch (std::exception const&) {
        throw input_error("expected a positive integer, got '" + s + "'");
    }
}

/// Sign and S-part of x, and the S-free remainder (positive).
struct SSplit {
    Int unit;
    Int rest;
};

SSplit s_split(Int const& x, std::vector<Int> const& S)
{
    SSplit r{x < 0 ? Int(-1) : Int(1), abs(x)};
    for (auto const& p : S) {
        Int q;
        auto e = mpz_remove(q.get_mpz_t(), r.rest.get_mpz_t(), p.get_mpz_t());
        r.rest = q;
        r.unit *= ipow(p, e);
    }
    return r;
}

/// Names a prime whose exponent in n is not divisible by m, if one is found cheaply.
std::string offending_prime(Int const& n, int m)
{
    Factorization f = factor_int(n, FactorBudget{100000, 200000});
    for (auto const& [q, e] : f.factors)
        if (e % m)
            return q.get_str() + "^" + std::to_string(e);
    return "";
}

u64 iroot(u64 r, int k)
{
    if (k == 1 || r < 2)
        return r;
    u64 g = static_cast<u64>(std::llround(std::pow(static_cast<long double>(r), 1.0L / k)));
    auto pw = [&](u64 b) {
        u128 acc = 1;
        for (int i = 0; i < k; ++i) {
            acc *= b;
            if (acc > static_cast<u128>(r) * 2 + 2)
                return acc;
        }
        return acc;
    };
    for (u64 c = g > 1 ? g - 1 : 0; c <= g + 1; ++c)
        if (pw(c) == r)
            return c;
    return 0;
}

struct Shape {
    u64 value;
    u64 root;
    unsigned mask; ///< S primes dividing the unit
};

std::vector<u64> s_units(std::vector<u64> const& S, u64 H, std::vector<unsigned>* masks)
{
    std::vector<std::pair<u64, unsigned>> units{{1, 0}};
    for (std::size_t i = 0; i < S.size(); ++i) {
        std::size_t before = units.size();
        for (std::size_t k = 0; k < before; ++k) {
            u128 v = units[k].first;
            while ((v *= S[i]) <= H)
                units.push_back({static_cast<u64>(v), units[k].second | (1u << i)});
        }
    }
    std::sort(units.begin(), units.end());
    std::vector<u64> out;
    for (auto const& [u, m] : units) {
        out.push_back(u);
        if (masks)
            masks->push_back(m);
    }
    return out;
}

std::vector<Shape> shapes(std::vector<u64> const& S, int m, u64 H)
{
    std::vector<unsigned> masks;
    std::vector<u64> units = s_units(S, H, &masks);
    std::vector<Shape> out;
    for (u64 x = 1;; ++x) {
        u128 xm = 1;
        for (int i = 0; i < m && xm <= H; ++i)
            xm *= x;
        if (xm > H)
            break;
        if (std::any_of(S.begin(), S.end(), [&](u64 p) { return x % p == 0; }))
            continue;
        u64 lim = H / static_cast<u64>(xm);
        for (std::size_t i = 0; i < units.size() && units[i] <= lim; ++i)
            out.push_back({units[i] * static_cast<u64>(xm), x, masks[i]});
    }
    return out;
}

} // namespace

Orders parse_orders(std::string const& text)
{
    auto parts = split(text, ',');
    if (parts.size() != 3)
        throw input_error("expected three monodromy orders m0,m1,minf, got '" + text + "'");
    return {parse_small(parts[0]), parse_small(parts[1]), parse_small(parts[2])};
}

std::string to_string(Orders const& m)
{
    return std::to_string(m.m0) + "," + std::to_string(m.m1) + "," + std::to_string(m.minf);
}

std::vector<Int> parse_prime_set(std::string const& text)
{
    std::vector<Int> S;
    for (auto const& s : split(text, ',')) {
        if (s.empty())
            continue;
        Int p = parse_int(s);
        if (p < 2 || !is_probable_prime(p))
            throw input_error("'" + s + "' is not a prime");
        S.push_back(p);
    }
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    return S;
}

std::string prime_set_string(std::vector<Int> const& S)
{
    std::string out;
    for (auto const& p : S)
        out += (out.empty() ? "" : ",") + p.get_str();
    return out;
}

bool AbcWitness::holds(Orders const& m) const
{
    return a * ipow(x, m.m0) + b * ipow(y, m.m1) + c * ipow(z, m.minf) == 0;
}

std::string to_string(ArmLocation a)
{
    switch (a) {
    case ArmLocation::generic:
        return "generic";
    case ArmLocation::arm0:
        return "arm 0";
    case ArmLocation::arm1:
        return "arm 1";
    case ArmLocation::arm_inf:
        return "arm oo";
    }
    return "?";
}

std::string to_string(Membership m)
{
    switch (m) {
    case Membership::member:
        return "member";
    case Membership::non_member:
        return "not a member";
    case Membership::indeterminate:
        return "indeterminate";
    }
    return "?";
}

ArmClass classify_arm(Rat const& tau, Int const& p)
{
    if (tau == 0 || tau == 1)
        throw input_error("tau = " + to_string(tau) + " is a cusp");
    ArmClass a;
    a.p = p;
    int v0 = ord_p(tau, p);
    if (v0 > 0) {
        a.location = ArmLocation::arm0;
        a.j = v0;
    } else if (v0 < 0) {
        a.location = ArmLocation::arm_inf;
        a.j = -v0;
    } else if (int v1 = ord_p(Rat(tau - 1), p); v1 > 0) {
        a.location = ArmLocation::arm1;
        a.j = v1;
    }
    return a;
}

MembershipResult validate_membership(Rat const& tau, Orders const& m, std::vector<Int> const& S)
{
    if (tau == 0 || tau == 1)
        throw input_error("tau = " + to_string(tau) + " is a cusp");
    MembershipResult res;
    Int N = tau.get_num(), D = tau.get_den(), M = N - D;
    struct Arm {
        Int value;
        int order;
        char const* what;
    } arms[] = {{N, m.m0, "numerator of tau"}, {M, m.m1, "numerator of tau - 1"}, {D, m.minf, "denominator of tau"}};
    for (auto const& arm : arms) {
        Int rest = s_split(arm.value, S).rest;
        if (!exact_root(rest, static_cast<unsigned long>(arm.order))) {
            res.verdict = Membership::non_member;
            res.reason = std::string("S-free part of the ") + arm.what + " is not a perfect " +
                         std::to_string(arm.order) + "-th power";
            std::string q = offending_prime(rest, arm.order);
            if (!q.empty())
                res.reason += " (" + q + ")";
            return res;
        }
    }
    res.verdict = Membership::member;
    res.witness = normalized_witness(tau, m, S);
    return res;
}

AbcWitness normalized_witness(Rat const& tau, Orders const& m, std::vector<Int> const& S)
{
    if (tau == 0 || tau == 1)
        throw input_error("tau = " + to_string(tau) + " is a cusp");
    Int N = tau.get_num(), D = tau.get_den(), M = N - D;
    // a x^m0 + b y^m1 + c z^minf = 0 with tau = -a x^m0 / c z^minf and the y-term positive.
    Int X = -N, Y = M, Z = D;
    if (M < 0) {
        X = N;
        Y = -M;
        Z = -D;
    }
    AbcWitness w;
    auto fill = [&](Int const& v, int order, Int& unit, Int& root) {
        SSplit s = s_split(v, S);
        auto r = exact_root(s.rest, static_cast<unsigned long>(order));
        if (!r)
            throw input_error("tau = " + to_string(tau) + " is not in the specialization set");
        unit = s.unit;
        root = *r;
    };
    fill(X, m.m0, w.a, w.x);
    fill(Y, m.m1, w.b, w.y);
    fill(Z, m.minf, w.c, w.z);
    return w;
}

Int height(Rat const& tau)
{
    Int n = abs(tau.get_num());
    return std::max(n, Int(tau.get_den()));
}

std::vector<SpecPoint> search(Orders const& m, std::vector<Int> const& S, Int const& H)
{
    if (H < 1)
        throw input_error("height bound must be at least 1");
    if (H > Int("4000000000000000000"))
        throw input_error("height bound above 4e18 is not supported");
    if (S.size() > 16)
        throw input_error("too many primes in S");
    std::vector<u64> Sp;
    for (auto const& p : S) {
        if (!p.fits_ulong_p())
            throw input_error("prime in S is too large");
        Sp.push_back(p.get_ui());
    }
    u64 h = H.get_ui();
    auto U = shapes(Sp, m.m0, h);
    auto V = shapes(Sp, m.minf, h);

    std::set<Rat> seen;
    std::vector<SpecPoint> out;
    for (auto const& v : V) {
        for (auto const& u : U) {
            if (u.mask & v.mask)
                continue;
            if (std::gcd(u.root, v.root) != 1)
                continue;
            for (int sign : {1, -1}) {
                // W = -(U + V) must be an S-unit times an m1-th power.
                u64 w;
                if (sign > 0)
                    w = u.value + v.value;
                else if (u.value == v.value)
                    continue;
                else
                    w = u.value > v.value ? u.value - v.value : v.value - u.value;
                for (u64 p : Sp)
                    while (w % p == 0)
                        w /= p;
                if (iroot(w, m.m1) == 0)
                    continue;
                Int Ui = Int(static_cast<unsigned long>(u.value)) * sign;
                Rat tau(-Ui, Int(static_cast<unsigned long>(v.value)));
                tau.canonicalize();
                if (!seen.insert(tau).second)
                    continue;
                SpecPoint pt;
                pt.tau = tau;
                pt.orders = m;
                pt.S = S;
                pt.witness = normalized_witness(tau, m, S);
                out.push_back(std::move(pt));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](SpecPoint const& a, SpecPoint const& b) {
        Int ha = height(a.tau), hb = height(b.tau);
        if (ha != hb)
            return ha < hb;
        return a.tau < b.tau;
    });
    return out;
}

std::vector<BPoint> derive_B_points(std::vector<SpecPoint> const& base)
{
    std::map<Rat, std::optional<Rat>> sig;
    sig[Rat(0)] = std::nullopt;
    for (auto const& pt : base) {
        auto r = rational_sqrt(Rat(5 * (1 - pt.tau)));
        if (!r || *r == 0)
            continue;
        sig.emplace(*r, pt.tau);
        sig.emplace(Rat(-*r), pt.tau);
    }
    std::vector<BPoint> out;
    for (auto const& [s, t] : sig)
        out.push_back({s, t});
    return out;
}

int predict_tame(CoverSpec const& cover, Rat const& value, std::uint64_t p)
{
    Int P(static_cast<unsigned long>(p));
    if (!is_probable_prime(P))
        throw input_error(std::to_string(p) + " is not prime");
    if (std::find(cover.bad_primes.begin(), cover.bad_primes.end(), static_cast<int>(p)) != cover.bad_primes.end())
        throw input_error("p = " + std::to_string(p) + " is a bad prime of cover " + cover.id);
    Partition const* lambda = nullptr;
    int j = 0;
    if (cover.param == ParamKind::t) {
        ArmClass a = classify_arm(value, P);
        j = a.j;
        if (a.location == ArmLocation::arm0)
            lambda = &cover.triple.l0;
        else if (a.location == ArmLocation::arm1)
            lambda = &cover.triple.l1;
        else if (a.location == ArmLocation::arm_inf)
            lambda = &cover.triple.linf;
    } else {
        // Cusps at +-sqrt(d) carry the same partition; p is odd and prime to d here.
        Int d = cover.param == ParamKind::s_real ? Int(5) : Int(-11);
        if (value != 0 && ord_p(value, P) < 0) {
            j = -ord_p(value, P);
            lambda = &cover.triple.linf;
        } else {
            Rat q = value * value - Rat(d);
            if (q == 0)
                throw input_error("parameter is a cusp");
            int v = ord_p(q, P);
            if (v > 0) {
                j = v;
                lambda = &cover.triple.l0;
            }
        }
    }
    if (!lambda)
        return 0;
    int n = 0, cycles = 0;
    for (int c : *lambda) {
        n += c;
        cycles += std::gcd(c, j);
    }
    return n - cycles;
}

std::string to_record(SpecPoint const& pt)
{
    std::ostringstream o;
    o << pt.tau.get_num() << "/" << pt.tau.get_den() << "  ";
    AbcWitness w = pt.witness ? *pt.witness : normalized_witness(pt.tau, pt.orders, pt.S);
    o << w.a << " " << w.x << " " << w.b << " " << w.y << " " << w.c << " " << w.z << "  ";
    o << to_string(pt.orders) << "  " << prime_set_string(pt.S);
    return o.str();
}

SpecPoint parse_record(std::string const& line)
{
    std::istringstream in(line);
    std::vector<std::string> tok;
    for (std::string t; in >> t;)
        tok.push_back(t);
    if (tok.size() != 9)
        throw input_error("record needs 9 fields (tau a x b y c z orders S): '" + line + "'");
    SpecPoint pt;
    pt.tau = parse_rat(tok[0]);
    AbcWitness w{parse_int(tok[1]), parse_int(tok[2]), parse_int(tok[3]),
                 parse_int(tok[4]), parse_int(tok[5]), parse_int(tok[6])};
    pt.orders = parse_orders(tok[7]);
    pt.S = parse_prime_set(tok[8]);
    if (!w.holds(pt.orders))
        throw input_error("record witness does not satisfy the ABC equation: '" + line + "'");
    Rat check(Int(-w.a * ipow(w.x, pt.orders.m0)), Int(w.c * ipow(w.z, pt.orders.minf)));
    check.canonicalize();
    if (check != pt.tau)
        throw input_error("record witness does not match tau: '" + line + "'");
    pt.witness = w;
    return pt;
}

void write_records(std::ostream& os, std::vector<SpecPoint> const& pts)
{
    for (auto const& p : pts)
        os << to_record(p) << "\n";
}

std::vector<SpecPoint> read_records(std::istream& is)
{
    std::vector<SpecPoint> out;
    for (std::string line; std::getline(is, line);) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#')
            continue;
        out.push_back(parse_record(line));
    }
    return out;
}

} // namespace m12
