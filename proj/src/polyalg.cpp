#include "m12/polyalg.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace m12 {

// ---------------------------------------------------------------- partitions

Partition normalize_partition(Partition p)
{
    std::sort(p.begin(), p.end(), std::greater<int>());
    return p;
}

std::string partition_to_string(Partition const& p)
{
    Partition q = normalize_partition(p);
    std::string out;
    for (std::size_t i = 0; i < q.size();) {
        std::size_t j = i;
        while (j < q.size() && q[j] == q[i])
            ++j;
        if (!out.empty())
            out += ' ';
        out += std::to_string(q[i]);
        if (j - i > 1)
            out += '^' + std::to_string(j - i);
        i = j;
    }
    return out;
}

Partition parse_partition(std::string const& text)
{
    Partition out;
    std::size_t i = 0;
    auto read_number = [&](std::size_t& k) {
        if (k >= text.size() || !std::isdigit(static_cast<unsigned char>(text[k])))
            throw input_error("malformed partition '" + text + "'");
        int v = 0;
        while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])))
            v = v * 10 + (text[k++] - '0');
        return v;
    };
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
            ++i;
            continue;
        }
        int part;
        if (ch == '(') {
            ++i;
            part = read_number(i);
            if (i >= text.size() || text[i] != ')')
                throw input_error("unbalanced parenthesis in partition '" + text + "'");
            ++i;
        } else {
            part = read_number(i);
        }
        int mult = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            mult = read_number(i);
        }
        if (part <= 0)
            throw input_error("partition parts must be positive");
        out.insert(out.end(), mult, part);
    }
    return normalize_partition(out);
}

// ---------------------------------------------------------------- Z[x] basics

Int content(IntPoly const& f)
{
    Int g = 0;
    for (auto const& a : f.c) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

IntPoly primitive_part(IntPoly const& f)
{
    if (f.is_zero())
        return f;
    Int g = content(f);
    if (sgn(f.lc()) < 0)
        g = -g;
    IntPoly r = f;
    for (auto& a : r.c)
        mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
    return r;
}

RatPoly to_rat(IntPoly const& f)
{
    std::vector<Rat> v;
    v.reserve(f.c.size());
    for (auto const& a : f.c)
        v.emplace_back(a);
    return RatPoly(std::move(v));
}

IntPoly primitive_integral(RatPoly const& f)
{
    Int l = 1;
    for (auto const& a : f.c)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
    std::vector<Int> v;
    v.reserve(f.c.size());
    for (auto const& a : f.c)
        v.push_back(a.get_num() * (l / a.get_den()));
    return primitive_part(IntPoly(std::move(v)));
}

IntPoly primitive_integral(QuadPoly const& f)
{
    std::vector<Rat> v;
    for (auto const& a : f.c) {
        if (!a.is_rational())
            throw input_error("polynomial has irrational coefficients; norm-rationalize it first");
        v.push_back(a.rational_part());
    }
    return primitive_integral(RatPoly(std::move(v)));
}

void pseudo_divide(IntPoly const& f, IntPoly const& g, IntPoly& q, IntPoly& r)
{
    if (g.is_zero())
        throw input_error("pseudo-division by zero polynomial");
    int n = f.degree(), m = g.degree();
    r = f;
    q = IntPoly();
    if (n < m)
        return;
    Int const& b = g.c.back();
    std::vector<Int> qc(n - m + 1, 0);
    std::vector<Int>& rc = r.c;
    for (int i = n; i >= m; --i) {
        // Invariant: rc currently equals lc(g)^(n - i) f - (partial q) g.
        Int t = rc[i];
        for (auto& a : qc)
            a *= b;
        qc[i - m] = t;
        for (int j = 0; j < i; ++j)
            rc[j] *= b;
        for (int j = 0; j < m; ++j)
            rc[i - m + j] -= t * g.c[j];
        rc[i] = 0;
    }
    r.trim();
    q = IntPoly(std::move(qc));
}

std::optional<IntPoly> divide_exact(IntPoly const& f, IntPoly const& g)
{
    if (g.is_zero())
        throw input_error("division by zero polynomial");
    if (f.is_zero())
        return IntPoly();
    int n = f.degree(), m = g.degree();
    if (n < m)
        return std::nullopt;
    std::vector<Int> r = f.c;
    std::vector<Int> q(n - m + 1);
    Int const& b = g.c.back();
    for (int i = n; i >= m; --i) {
        if (!mpz_divisible_p(r[i].get_mpz_t(), b.get_mpz_t()))
            return std::nullopt;
        Int t;
        mpz_divexact(t.get_mpz_t(), r[i].get_mpz_t(), b.get_mpz_t());
        q[i - m] = t;
        for (int j = 0; j <= m; ++j)
            r[i - m + j] -= t * g.c[j];
    }
    for (int i = 0; i < m; ++i)
        if (r[i] != 0)
            return std::nullopt;
    return IntPoly(std::move(q));
}

IntPoly gcd(IntPoly const& f, IntPoly const& g)
{
    if (f.is_zero())
        return primitive_part(g);
    if (g.is_zero())
        return primitive_part(f);
    Int c = gcd(content(f), content(g));
    IntPoly a = primitive_part(f), b = primitive_part(g);
    if (a.degree() < b.degree())
        std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly q, r;
        pseudo_divide(a, b, q, r);
        a = std::move(b);
        b = r.is_zero() ? r : primitive_part(r);
    }
    if (a.degree() == 0)
        return IntPoly::constant(c);
    return c * primitive_part(a);
}

IntPoly squarefree_part(IntPoly const& f)
{
    if (f.degree() <= 0)
        return f;
    IntPoly pf = primitive_part(f);
    IntPoly g = gcd(pf, pf.derivative());
    if (g.degree() == 0)
        return pf;
    auto q = divide_exact(pf, primitive_part(g));
    return primitive_part(*q);
}

// ---------------------------------------------------------------- resultants

namespace {

void divexact_poly(IntPoly& f, Int const& d)
{
    for (auto& a : f.c)
        mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
}

} // namespace

Int resultant(IntPoly const& f, IntPoly const& g)
{
    if (f.is_zero() || g.is_zero())
        throw input_error("resultant of the zero polynomial");
    if (g.degree() == 0)
        return ipow(g.c[0], f.degree());
    if (f.degree() == 0)
        return ipow(f.c[0], g.degree());
    IntPoly A = f, B = g;
    int s = 1;
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if (A.degree() % 2 == 1 && B.degree() % 2 == 1)
            s = -1;
    }
    Int a = content(A), b = content(B);
    divexact_poly(A, a);
    divexact_poly(B, b);
    Int t = ipow(a, B.degree()) * ipow(b, A.degree());
    Int gg = 1, h = 1;
    while (true) {
        int delta = A.degree() - B.degree();
        if (A.degree() % 2 == 1 && B.degree() % 2 == 1)
            s = -s;
        IntPoly q, R;
        pseudo_divide(A, B, q, R);
        A = std::move(B);
        if (R.is_zero())
            return 0;
        divexact_poly(R, gg * ipow(h, delta));
        B = std::move(R);
        gg = A.lc();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = gg;
        } else {
            Int num = ipow(gg, delta), den = ipow(h, delta - 1);
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (B.degree() <= 0)
            break;
    }
    int da = A.degree();
    Int num = ipow(B.lc(), da), den = ipow(h, da - 1), hh;
    mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return s * t * hh;
}

Int discriminant(IntPoly const& f)
{
    int n = f.degree();
    if (n < 1)
        throw input_error("discriminant needs degree >= 1");
    if (n == 1)
        return 1;
    Int r = resultant(f, f.derivative());
    Int d;
    mpz_divexact(d.get_mpz_t(), r.get_mpz_t(), f.lc().get_mpz_t());
    if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1)
        d = -d;
    return d;
}

Rat discriminant(RatPoly const& f)
{
    int n = f.degree();
    IntPoly g = primitive_integral(f);
    Rat scale = f.lc() / Rat(g.lc());
    return rpow(scale, 2L * n - 2) * Rat(discriminant(g));
}

// ---------------------------------------------------------------- substitutions

template <class F>
Poly<F> field_rem(Poly<F> const& f, Poly<F> const& g)
{
    if (g.is_zero())
        throw input_error("division by zero polynomial");
    std::vector<F> r = f.c;
    int m = g.degree();
    F inv = F(1L) / g.lc();
    for (int i = static_cast<int>(r.size()) - 1; i >= m; --i) {
        if (r[i] == F(0L))
            continue;
        F q = r[i] * inv;
        for (int j = 0; j <= m; ++j)
            r[i - m + j] -= q * g.c[j];
    }
    r.resize(std::min<std::size_t>(r.size(), m));
    return Poly<F>(std::move(r));
}

template <class F>
F field_resultant(Poly<F> const& f0, Poly<F> const& g0)
{
    if (f0.is_zero() || g0.is_zero())
        return F(0L);
    Poly<F> f = f0, g = g0;
    F acc(1L);
    // res(f, g) = (-1)^(deg f deg g) lc(g)^(deg f - deg r) res(g, r), r = f mod g.
    while (g.degree() > 0) {
        int df = f.degree(), dg = g.degree();
        Poly<F> r = field_rem(f, g);
        if (r.is_zero())
            return F(0L);
        if ((df & 1) && (dg & 1))
            acc = F(0L) - acc;
        F l = g.lc();
        for (int i = 0; i < df - r.degree(); ++i)
            acc *= l;
        f = std::move(g);
        g = std::move(r);
    }
    // g is a nonzero constant: res(f, c) = c^deg f.
    F c = g.c[0];
    for (int i = 0; i < f.degree(); ++i)
        acc *= c;
    return acc;
}

template <class F>
F field_discriminant(Poly<F> const& f)
{
    int n = f.degree();
    if (n < 1)
        throw input_error("discriminant needs degree >= 1");
    F r = field_resultant(f, f.derivative()) / f.lc();
    if ((n * (n - 1) / 2) % 2)
        r = -r;
    return r;
}

template Poly<Rat> field_rem(Poly<Rat> const&, Poly<Rat> const&);
template Poly<QuadElt> field_rem(Poly<QuadElt> const&, Poly<QuadElt> const&);
template Rat field_resultant(Poly<Rat> const&, Poly<Rat> const&);
template QuadElt field_resultant(Poly<QuadElt> const&, Poly<QuadElt> const&);
template Rat field_discriminant(Poly<Rat> const&);
template QuadElt field_discriminant(Poly<QuadElt> const&);

IntPoly substitute_square(IntPoly const& f)
{
    if (f.is_zero())
        return f;
    std::vector<Int> v(2 * f.c.size() - 1, 0);
    for (std::size_t i = 0; i < f.c.size(); ++i)
        v[2 * i] = f.c[i];
    return IntPoly(std::move(v));
}

QuadPoly substitute_square(QuadPoly const& f)
{
    if (f.is_zero())
        return f;
    std::vector<QuadElt> v(2 * f.c.size() - 1, QuadElt(0L));
    for (std::size_t i = 0; i < f.c.size(); ++i)
        v[2 * i] = f.c[i];
    return QuadPoly(std::move(v));
}

IntPoly monicize(IntPoly const& f)
{
    int n = f.degree();
    if (n < 1)
        throw input_error("monicize needs degree >= 1");
    Int a = f.lc();
    std::vector<Int> v(n + 1);
    Int pw = 1;
    for (int i = n - 1; i >= 0; --i) {
        v[i] = f.c[i] * pw;
        pw *= a;
    }
    v[n] = 1;
    return IntPoly(std::move(v));
}

IntPoly reciprocal(IntPoly const& f)
{
    std::vector<Int> v(f.c.rbegin(), f.c.rend());
    return IntPoly(std::move(v));
}

IntPoly taylor_shift(IntPoly const& f, Int const& k)
{
    std::vector<Int> v = f.c;
    int n = f.degree();
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j)
            v[j] += k * v[j + 1];
    return IntPoly(std::move(v));
}

QuadPoly conj(QuadPoly const& f)
{
    std::vector<QuadElt> v;
    v.reserve(f.c.size());
    for (auto const& a : f.c)
        v.push_back(a.conj());
    return QuadPoly(std::move(v));
}

IntPoly norm_rationalize(QuadPoly const& f)
{
    QuadPoly n = f * conj(f);
    for (auto const& a : n.c)
        if (!a.is_rational())
            throw contract_error("norm has irrational coefficients");
    return primitive_integral(n);
}

QuadPoly to_quad(IntPoly const& f)
{
    std::vector<QuadElt> v;
    for (auto const& a : f.c)
        v.emplace_back(Rat(a));
    return QuadPoly(std::move(v));
}

// ---------------------------------------------------------------- text formats

IntPoly parse_deg_format(std::string const& text)
{
    std::istringstream in(text);
    std::string word;
    in >> word;
    if (word != "deg")
        throw input_error("expected 'deg n: c0 ... cn'");
    std::string nword;
    in >> nword;
    if (nword.empty() || nword.back() != ':')
        throw input_error("expected ':' after degree");
    nword.pop_back();
    long n = std::stol(nword);
    if (n < 0)
        throw input_error("negative degree");
    std::vector<Int> v;
    std::string tok;
    while (in >> tok)
        v.push_back(parse_int(tok));
    if (static_cast<long>(v.size()) != n + 1)
        throw input_error("coefficient count does not match degree " + std::to_string(n));
    IntPoly f(std::move(v));
    if (f.degree() != n)
        throw input_error("leading coefficient is zero");
    return f;
}

std::string to_deg_format(IntPoly const& f)
{
    std::string s = "deg " + std::to_string(std::max(f.degree(), 0)) + ":";
    if (f.is_zero())
        return s + " 0";
    for (auto const& a : f.c)
        s += " " + a.get_str();
    return s;
}

IntPoly parse_symbolic(std::string const& text, char var)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    if (s.empty())
        throw input_error("empty polynomial");
    std::map<long, Int> terms;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw input_error("expected '+' or '-' in polynomial at offset " + std::to_string(i));
        }
        Int coef = 1;
        bool have_coef = false;
        std::size_t st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (i > st) {
            coef = Int(s.substr(st, i - st));
            have_coef = true;
        }
        long e = 0;
        if (i < s.size() && s[i] == '*') {
            if (!have_coef)
                throw input_error("dangling '*' in polynomial");
            ++i;
        }
        if (i < s.size() && s[i] == var) {
            ++i;
            e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t es = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    ++i;
                if (i == es)
                    throw input_error("missing exponent in polynomial");
                e = std::stol(s.substr(es, i - es));
            }
        } else if (!have_coef) {
            throw input_error("unexpected character '" + std::string(1, i < s.size() ? s[i] : '?') + "' in polynomial");
        }
        terms[e] += sign * coef;
    }
    long n = terms.rbegin()->first;
    std::vector<Int> v(n + 1, 0);
    for (auto const& [e, a] : terms)
        v[e] = a;
    return IntPoly(std::move(v));
}

std::string to_symbolic(IntPoly const& f, char var)
{
    if (f.is_zero())
        return "0";
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        Int const& a = f.c[i];
        if (a == 0)
            continue;
        Int m = abs(a);
        if (out.empty())
            out += a < 0 ? "-" : "";
        else
            out += a < 0 ? " - " : " + ";
        if (i == 0) {
            out += m.get_str();
            continue;
        }
        if (m != 1)
            out += m.get_str() + "*";
        out += var;
        if (i > 1)
            out += "^" + std::to_string(i);
    }
    return out;
}

IntPoly parse_poly(std::string const& text)
{
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text.compare(first, 3, "deg") == 0)
        return parse_deg_format(text);
    return parse_symbolic(text);
}

// ---------------------------------------------------------------- F_p[x]

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

void check_prime_size(u64 p)
{
    if (p < 2 || p >= (u64(1) << 32))
        throw input_error("F_p arithmetic requires 2 <= p < 2^32");
}

// r <- a * b mod p, coefficient vectors, accumulating in 128-bit.
std::vector<u64> raw_mul(std::vector<u64> const& a, std::vector<u64> const& b, u64 p)
{
    if (a.empty() || b.empty())
        return {};
    std::size_t n = a.size() + b.size() - 1;
    std::vector<u128> acc(n, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        u64 ai = a[i];
        if (!ai)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[i + j] += static_cast<u128>(ai * b[j]);
    }
    std::vector<u64> r(n);
    for (std::size_t i = 0; i < n; ++i)
        r[i] = static_cast<u64>(acc[i] % p);
    return r;
}

// Remainder of a modulo monic m (m.back() == 1), with delayed reduction.
std::vector<u64> raw_rem_monic(std::vector<u64> const& a, std::vector<u64> const& m, u64 p)
{
    std::size_t dm = m.size() - 1;
    if (a.size() <= dm)
        return a;
    std::vector<u128> r(a.begin(), a.end());
    for (std::size_t i = a.size() - 1; i >= dm; --i) {
        u64 q = static_cast<u64>(r[i] % p);
        r[i] = 0;
        if (q) {
            u64 nq = p - q;
            for (std::size_t j = 0; j < dm; ++j)
                r[i - dm + j] += static_cast<u128>(nq * m[j]);
        }
        if (i == dm)
            break;
    }
    std::vector<u64> out(dm);
    for (std::size_t j = 0; j < dm; ++j)
        out[j] = static_cast<u64>(r[j] % p);
    while (!out.empty() && out.back() == 0)
        out.pop_back();
    return out;
}

} // namespace

FpPoly::FpPoly(std::uint64_t prime, std::vector<std::uint64_t> coeffs) : p(prime), c(std::move(coeffs))
{
    check_prime_size(p);
    for (auto& a : c)
        a %= p;
    trim();
}

FpPoly FpPoly::reduce(IntPoly const& f, std::uint64_t prime)
{
    check_prime_size(prime);
    std::vector<u64> v(f.c.size());
    for (std::size_t i = 0; i < f.c.size(); ++i)
        v[i] = mpz_fdiv_ui(f.c[i].get_mpz_t(), prime);
    return FpPoly(prime, std::move(v));
}

FpPoly FpPoly::x(std::uint64_t prime) { return FpPoly(prime, {0, 1}); }

void FpPoly::trim()
{
    while (!c.empty() && c.back() == 0)
        c.pop_back();
}

FpPoly FpPoly::monic() const
{
    if (c.empty())
        return *this;
    u64 inv = invmod(c.back(), p);
    FpPoly r = *this;
    for (auto& a : r.c)
        a = mulmod(a, inv, p);
    return r;
}

FpPoly FpPoly::derivative() const
{
    if (c.size() <= 1)
        return FpPoly(p, {});
    std::vector<u64> v(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i)
        v[i - 1] = mulmod(c[i], i % p, p);
    return FpPoly(p, std::move(v));
}

FpPoly operator+(FpPoly const& a, FpPoly const& b)
{
    std::vector<u64> v(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        u64 s = (i < a.c.size() ? a.c[i] : 0) + (i < b.c.size() ? b.c[i] : 0);
        v[i] = s >= a.p ? s - a.p : s;
    }
    return FpPoly(a.p, std::move(v));
}

FpPoly operator-(FpPoly const& a, FpPoly const& b)
{
    std::vector<u64> v(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        u64 x = i < a.c.size() ? a.c[i] : 0, y = i < b.c.size() ? b.c[i] : 0;
        v[i] = x >= y ? x - y : x + a.p - y;
    }
    return FpPoly(a.p, std::move(v));
}

FpPoly operator*(FpPoly const& a, FpPoly const& b) { return FpPoly(a.p, raw_mul(a.c, b.c, a.p)); }

void divrem(FpPoly const& a, FpPoly const& b, FpPoly& q, FpPoly& r)
{
    if (b.is_zero())
        throw input_error("division by zero polynomial mod p");
    u64 p = a.p;
    int n = a.degree(), m = b.degree();
    std::vector<u64> rc = a.c;
    if (n < m) {
        q = FpPoly(p, {});
        r = a;
        return;
    }
    std::vector<u64> qc(n - m + 1, 0);
    u64 inv = invmod(b.lc(), p);
    for (int i = n; i >= m; --i) {
        u64 t = mulmod(rc[i], inv, p);
        qc[i - m] = t;
        if (!t)
            continue;
        for (int j = 0; j <= m; ++j) {
            u64 sub = mulmod(t, b.c[j], p);
            u64& x = rc[i - m + j];
            x = x >= sub ? x - sub : x + p - sub;
        }
    }
    rc.resize(m);
    q = FpPoly(p, std::move(qc));
    r = FpPoly(p, std::move(rc));
}

FpPoly operator%(FpPoly const& a, FpPoly const& b)
{
    if (!b.is_zero() && b.lc() == 1)
        return FpPoly(a.p, raw_rem_monic(a.c, b.c, a.p));
    FpPoly q, r;
    divrem(a, b, q, r);
    return r;
}

FpPoly operator/(FpPoly const& a, FpPoly const& b)
{
    FpPoly q, r;
    divrem(a, b, q, r);
    return q;
}

FpPoly gcd(FpPoly a, FpPoly b)
{
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpPoly powmod(FpPoly const& a, Int const& e, FpPoly const& m)
{
    FpPoly mm = m.monic();
    FpPoly base = a % mm;
    FpPoly r(a.p, {1});
    r = r % mm;
    long bits = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2));
    if (e == 0)
        return r;
    for (long i = bits - 1; i >= 0; --i) {
        r = FpPoly(a.p, raw_rem_monic(raw_mul(r.c, r.c, a.p), mm.c, a.p));
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = FpPoly(a.p, raw_rem_monic(raw_mul(r.c, base.c, a.p), mm.c, a.p));
    }
    return r;
}

namespace {

// x^p mod monic f.
std::vector<u64> frobenius_x(std::vector<u64> const& f, u64 p)
{
    std::vector<u64> r{1};
    int bits = 64 - __builtin_clzll(p);
    for (int i = bits - 1; i >= 0; --i) {
        r = raw_rem_monic(raw_mul(r, r, p), f, p);
        if ((p >> i) & 1) {
            r.insert(r.begin(), 0);
            r = raw_rem_monic(r, f, p);
        }
    }
    return r;
}

// Rows Q[i] = x^(i p) mod f, for i < deg f.
std::vector<std::vector<u64>> frobenius_matrix(std::vector<u64> const& f, std::vector<u64> const& xp, u64 p)
{
    std::size_t n = f.size() - 1;
    std::vector<std::vector<u64>> Q(n);
    Q[0] = {1};
    for (std::size_t i = 1; i < n; ++i)
        Q[i] = raw_rem_monic(raw_mul(Q[i - 1], xp, p), f, p);
    return Q;
}

// g(x)^p mod f = sum g_i Q[i].
std::vector<u64> apply_frobenius(std::vector<std::vector<u64>> const& Q, std::vector<u64> const& g, u64 p)
{
    std::size_t n = Q.size();
    std::vector<u128> acc(n, 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        u64 gi = g[i];
        if (!gi)
            continue;
        auto const& row = Q[i];
        for (std::size_t j = 0; j < row.size(); ++j)
            acc[j] += static_cast<u128>(gi * row[j]);
    }
    std::vector<u64> r(n);
    for (std::size_t j = 0; j < n; ++j)
        r[j] = static_cast<u64>(acc[j] % p);
    while (!r.empty() && r.back() == 0)
        r.pop_back();
    return r;
}

struct DdfBlock {
    FpPoly product;
    int degree;
};

// Returns monic reduction of f or nullopt when bad at p.
std::optional<FpPoly> good_reduction(IntPoly const& f, u64 p)
{
    FpPoly fp = FpPoly::reduce(f, p);
    if (fp.degree() != f.degree())
        return std::nullopt;
    fp = fp.monic();
    if (fp.degree() >= 1 && gcd(fp, fp.derivative()).degree() != 0)
        return std::nullopt;
    return fp;
}

std::vector<DdfBlock> distinct_degree(FpPoly const& f)
{
    u64 p = f.p;
    std::vector<DdfBlock> out;
    int n = f.degree();
    if (n <= 0)
        return out;
    std::vector<u64> xp = frobenius_x(f.c, p);
    auto Q = frobenius_matrix(f.c, xp, p);
    FpPoly rest = f;
    FpPoly cur(p, xp);
    FpPoly X = FpPoly::x(p);
    for (int d = 1; rest.degree() > 0; ++d) {
        if (2 * d > rest.degree()) {
            out.push_back({rest, rest.degree()});
            break;
        }
        FpPoly g = gcd(rest, cur - X);
        if (g.degree() > 0) {
            out.push_back({g, d});
            rest = rest / g;
            rest = rest.monic();
        }
        cur = FpPoly(p, apply_frobenius(Q, cur.c, p));
    }
    return out;
}

void equal_degree_split(FpPoly const& g, int d, std::mt19937_64& rng, std::vector<FpPoly>& out)
{
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    u64 p = g.p;
    std::uniform_int_distribution<u64> coin(0, p - 1);
    Int half = (ipow(Int(static_cast<unsigned long>(p)), d) - 1) / 2;
    while (true) {
        std::vector<u64> a(g.degree());
        for (auto& x : a)
            x = coin(rng);
        FpPoly A(p, a);
        if (A.degree() < 1)
            continue;
        FpPoly b;
        if (p == 2) {
            FpPoly t = A % g, acc = t;
            for (int i = 1; i < d; ++i) {
                t = (t * t) % g;
                acc = acc + t;
            }
            b = acc;
        } else {
            b = powmod(A, half, g) - FpPoly(p, {1});
        }
        FpPoly h = gcd(g, b);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree_split(h, d, rng, out);
            equal_degree_split((g / h).monic(), d, rng, out);
            return;
        }
    }
}

} // namespace

std::optional<Partition> ddf_partition(IntPoly const& f, std::uint64_t p)
{
    auto fp = good_reduction(f, p);
    if (!fp)
        return std::nullopt;
    Partition part;
    for (auto const& blk : distinct_degree(*fp))
        part.insert(part.end(), blk.product.degree() / blk.degree, blk.degree);
    return normalize_partition(part);
}

std::vector<FpPoly> factor_mod_p(IntPoly const& f, std::uint64_t p)
{
    auto fp = good_reduction(f, p);
    if (!fp)
        throw contract_error("bad reduction of polynomial at p = " + std::to_string(p));
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ p);
    std::vector<FpPoly> out;
    for (auto const& blk : distinct_degree(*fp))
        equal_degree_split(blk.product, blk.degree, rng, out);
    std::sort(out.begin(), out.end(), [](FpPoly const& a, FpPoly const& b) {
        if (a.degree() != b.degree())
            return a.degree() < b.degree();
        return std::lexicographical_compare(a.c.rbegin(), a.c.rend(), b.c.rbegin(), b.c.rend());
    });
    return out;
}

// ---------------------------------------------------------------- Hensel lifting

namespace {

// Polynomials with Int coefficients reduced into [0, m).
using ZPoly = std::vector<Int>;

void zp_trim(ZPoly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

void zp_mod(ZPoly& a, Int const& m)
{
    for (auto& x : a)
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    zp_trim(a);
}

ZPoly zp_add(ZPoly const& a, ZPoly const& b, Int const& m)
{
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] += b[i];
    zp_mod(r, m);
    return r;
}

ZPoly zp_sub(ZPoly const& a, ZPoly const& b, Int const& m)
{
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] -= b[i];
    zp_mod(r, m);
    return r;
}

ZPoly zp_mul(ZPoly const& a, ZPoly const& b, Int const& m)
{
    if (a.empty() || b.empty())
        return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    zp_mod(r, m);
    return r;
}

// a = q b + r with b monic.
void zp_divrem_monic(ZPoly const& a, ZPoly const& b, Int const& m, ZPoly& q, ZPoly& r)
{
    r = a;
    std::size_t db = b.size() - 1;
    if (r.size() <= db) {
        q.clear();
        return;
    }
    q.assign(r.size() - db, 0);
    for (std::size_t i = r.size() - 1;; --i) {
        Int t = r[i];
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
        q[i - db] = t;
        if (t != 0)
            for (std::size_t j = 0; j <= db; ++j)
                mpz_submul(r[i - db + j].get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t());
        if (i == db)
            break;
    }
    r.resize(db);
    zp_mod(r, m);
    zp_mod(q, m);
}

ZPoly from_fp(FpPoly const& f)
{
    ZPoly r;
    for (auto x : f.c)
        r.emplace_back(static_cast<unsigned long>(x));
    return r;
}

// Extended gcd over F_p: s a + t b = 1, deg s < deg b, deg t < deg a.
void fp_xgcd(FpPoly const& a, FpPoly const& b, FpPoly& s, FpPoly& t)
{
    u64 p = a.p;
    FpPoly r0 = a, r1 = b, s0(p, {1}), s1(p, {}), t0(p, {}), t1(p, {1});
    while (!r1.is_zero()) {
        FpPoly q, r;
        divrem(r0, r1, q, r);
        r0 = r1;
        r1 = r;
        FpPoly ns = s0 - q * s1, nt = t0 - q * t1;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    if (r0.degree() != 0)
        throw contract_error("Hensel factors are not coprime mod p");
    u64 inv = invmod(r0.c[0], p);
    FpPoly ic(p, {inv});
    s = s0 * ic;
    t = t0 * ic;
}

// Quadratic lifting of f = g h (h monic), s g + t h = 1 from modulus m to m^2.
void hensel_step(ZPoly const& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, Int const& m2)
{
    ZPoly e = zp_sub(f, zp_mul(g, h, m2), m2);
    ZPoly q, r;
    zp_divrem_monic(zp_mul(s, e, m2), h, m2, q, r);
    ZPoly gs = zp_add(zp_add(g, zp_mul(t, e, m2), m2), zp_mul(q, g, m2), m2);
    ZPoly hs = zp_add(h, r, m2);
    ZPoly b = zp_sub(zp_add(zp_mul(s, gs, m2), zp_mul(t, hs, m2), m2), ZPoly{1}, m2);
    ZPoly c, d;
    zp_divrem_monic(zp_mul(s, b, m2), hs, m2, c, d);
    s = zp_sub(s, d, m2);
    t = zp_sub(zp_sub(t, zp_mul(t, b, m2), m2), zp_mul(c, gs, m2), m2);
    g = std::move(gs);
    h = std::move(hs);
}

} // namespace

std::vector<IntPoly> hensel_lift(IntPoly const& f, std::vector<FpPoly> const& factors, std::uint64_t p, unsigned k)
{
    Int P(static_cast<unsigned long>(p));
    Int target = ipow(P, k);
    std::vector<IntPoly> out;
    ZPoly rest = f.c;
    zp_mod(rest, target);
    // Product of the remaining modular factors times lc(f).
    FpPoly lcp(p, {mpz_fdiv_ui(f.lc().get_mpz_t(), p)});
    for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
        FpPoly hmod = factors[i];
        FpPoly gmod = lcp;
        for (std::size_t j = i + 1; j < factors.size(); ++j)
            gmod = gmod * factors[j];
        FpPoly sp, tp;
        fp_xgcd(gmod, hmod, sp, tp);
        ZPoly g = from_fp(gmod), h = from_fp(hmod), s = from_fp(sp), t = from_fp(tp);
        Int m = P;
        while (m < target) {
            m = m * m;
            hensel_step(rest, g, h, s, t, m);
        }
        zp_mod(h, target);
        zp_mod(g, target);
        out.push_back(IntPoly(h));
        rest = g;
    }
    // Last factor: rest = lc * g_last; make monic.
    Int lc = rest.back(), inv;
    if (mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), target.get_mpz_t()) == 0)
        throw contract_error("leading coefficient not invertible mod p^k");
    for (auto& a : rest)
        a *= inv;
    zp_mod(rest, target);
    out.push_back(IntPoly(rest));
    return out;
}

// ---------------------------------------------------------------- Zassenhaus

Int factor_coefficient_bound(IntPoly const& f)
{
    Int norm2 = 0;
    for (auto const& a : f.c)
        norm2 += a * a;
    Int root = sqrt(norm2) + 1;
    return ipow(Int(2), static_cast<unsigned long>(f.degree())) * root;
}

namespace {

std::set<int> subset_sums(Partition const& part)
{
    std::set<int> s{0};
    for (int d : part) {
        std::set<int> t = s;
        for (int x : s)
            t.insert(x + d);
        s = std::move(t);
    }
    return s;
}

Int symmetric_mod(Int const& a, Int const& m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (2 * r > m)
        r -= m;
    return r;
}

struct PrimeChoice {
    u64 p = 0;
    Partition partition;
    std::set<int> allowed_degrees;
};

PrimeChoice choose_prime(IntPoly const& f)
{
    PrimeChoice best;
    std::set<int> allowed;
    bool first = true;
    int tried = 0;
    for (u64 p = 101; tried < 10; p = next_prime(p + 1)) {
        auto part = ddf_partition(f, p);
        if (!part)
            continue;
        ++tried;
        auto sums = subset_sums(*part);
        if (first) {
            allowed = sums;
            first = false;
        } else {
            std::set<int> t;
            std::set_intersection(allowed.begin(), allowed.end(), sums.begin(), sums.end(), std::inserter(t, t.end()));
            allowed = std::move(t);
        }
        if (best.p == 0 || part->size() < best.partition.size()) {
            best.p = p;
            best.partition = *part;
        }
    }
    best.allowed_degrees = allowed;
    return best;
}

} // namespace

RationalFactorization factor_rational(IntPoly const& f)
{
    if (f.is_zero())
        throw input_error("cannot factor the zero polynomial");
    RationalFactorization out;
    out.content = content(f);
    if (sgn(f.lc()) < 0)
        out.content = -out.content;
    if (f.degree() <= 0) {
        out.content = f.lc();
        return out;
    }
    IntPoly g = primitive_part(f);
    if (g.degree() == 1) {
        out.factors.push_back(g);
        return out;
    }
    if (gcd(g, g.derivative()).degree() > 0)
        throw input_error("factor_rational needs a squarefree polynomial");

    PrimeChoice pc = choose_prime(g);
    int n = g.degree();
    bool only_trivial = true;
    for (int d : pc.allowed_degrees)
        if (d != 0 && d != n)
            only_trivial = false;
    if (only_trivial) {
        out.factors.push_back(g);
        return out;
    }

    u64 p = pc.p;
    auto modular = factor_mod_p(g, p);
    Int bound = 2 * abs(g.lc()) * factor_coefficient_bound(g) + 1;
    unsigned k = 1;
    Int P(static_cast<unsigned long>(p)), M = P;
    while (M <= bound) {
        M *= P;
        ++k;
    }
    std::vector<IntPoly> lifted = hensel_lift(g, modular, p, k);

    std::vector<int> degs;
    for (auto const& h : lifted)
        degs.push_back(h.degree());

    IntPoly cur = g;
    std::vector<std::size_t> live(lifted.size());
    for (std::size_t i = 0; i < live.size(); ++i)
        live[i] = i;
    unsigned long trials = 0;
    constexpr unsigned long trial_limit = 1UL << 20;
    std::size_t sz = 1;
    while (2 * sz <= live.size()) {
        bool found = false;
        std::vector<std::size_t> idx(sz);
        for (std::size_t i = 0; i < sz; ++i)
            idx[i] = i;
        while (true) {
            int dsum = 0;
            for (auto i : idx)
                dsum += degs[live[i]];
            if (pc.allowed_degrees.count(dsum) && dsum < cur.degree()) {
                if (++trials > trial_limit)
                    throw contract_error("factor recombination exceeded 2^20 subsets");
                Int lc = cur.lc();
                // Constant-term screen before building the full product.
                Int c0 = lc;
                for (auto i : idx)
                    c0 = c0 * lifted[live[i]].coeff(0) % M;
                c0 = symmetric_mod(c0, M);
                bool plausible = c0 == 0 || (cur.c[0] * lc) % c0 == 0;
                if (plausible) {
                    IntPoly prod = IntPoly::constant(lc);
                    for (auto i : idx) {
                        prod *= lifted[live[i]];
                        for (auto& a : prod.c)
                            mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), M.get_mpz_t());
                    }
                    for (auto& a : prod.c)
                        a = symmetric_mod(a, M);
                    prod.trim();
                    IntPoly cand = primitive_part(prod);
                    if (auto q = divide_exact(cur, cand)) {
                        out.factors.push_back(cand);
                        cur = *q;
                        std::vector<std::size_t> keep;
                        for (std::size_t i = 0; i < live.size(); ++i)
                            if (std::find(idx.begin(), idx.end(), i) == idx.end())
                                keep.push_back(live[i]);
                        live = std::move(keep);
                        found = true;
                        break;
                    }
                }
            }
            // Next combination of sz indices from live.size().
            int i = static_cast<int>(sz) - 1;
            while (i >= 0 && idx[i] == live.size() - sz + i)
                --i;
            if (i < 0)
                break;
            ++idx[i];
            for (std::size_t j = i + 1; j < sz; ++j)
                idx[j] = idx[j - 1] + 1;
        }
        if (!found)
            ++sz;
    }
    if (cur.degree() > 0)
        out.factors.push_back(primitive_part(cur));
    std::sort(out.factors.begin(), out.factors.end(), [](IntPoly const& a, IntPoly const& b) {
        if (a.degree() != b.degree())
            return a.degree() < b.degree();
        return std::lexicographical_compare(a.c.rbegin(), a.c.rend(), b.c.rbegin(), b.c.rend());
    });
    return out;
}

bool is_irreducible(IntPoly const& f)
{
    if (f.degree() <= 0)
        return false;
    IntPoly g = primitive_part(f);
    if (gcd(g, g.derivative()).degree() > 0)
        return false;
    return factor_rational(g).factors.size() == 1;
}

} // namespace m12
