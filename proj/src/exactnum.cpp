#include "m12/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace m12 {

Int parse_int(std::string const& text)
{
    std::string t = text;
    if (!t.empty() && t[0] == '+')
        t.erase(0, 1);
    if (t.empty() || t == "-")
        throw input_error("empty integer literal");
    for (std::size_t i = (t[0] == '-') ? 1 : 0; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9')
            throw input_error("malformed integer literal '" + text + "'");
    return Int(t);
}

Rat parse_rat(std::string const& text)
{
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return Rat(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0)
        throw input_error("zero denominator in '" + text + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(Int const& x) { return x.get_str(); }

std::string to_string(Rat const& x)
{
    if (x.get_den() == 1)
        return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Int ipow(Int const& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rat rpow(Rat const& base, long e)
{
    if (e >= 0)
        return Rat(ipow(base.get_num(), e), ipow(base.get_den(), e));
    if (base == 0)
        throw input_error("zero to a negative power");
    Rat r(ipow(base.get_den(), -e), ipow(base.get_num(), -e));
    r.canonicalize();
    return r;
}

int ord_p(Int const& x, Int const& p)
{
    if (x == 0)
        throw input_error("valuation of zero");
    if (p < 2)
        throw input_error("valuation at a non-prime");
    if (p == 2)
        return static_cast<int>(mpz_scan1(x.get_mpz_t(), 0));
    Int t;
    return static_cast<int>(mpz_remove(t.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

int ord_p(Rat const& x, Int const& p)
{
    if (x == 0)
        throw input_error("valuation of zero");
    return ord_p(x.get_num(), p) - ord_p(x.get_den(), p);
}

Rat SDecomposition::recompose() const
{
    Rat r(num, den);
    r.canonicalize();
    for (auto const& [p, e] : exponents)
        r *= rpow(Rat(p), e);
    return sign < 0 ? Rat(-r) : r;
}

SDecomposition s_decompose(Rat const& x, std::vector<Int> const& S)
{
    if (x == 0)
        throw input_error("valuation of zero");
    SDecomposition d;
    d.sign = sgn(x) < 0 ? -1 : 1;
    d.num = abs(x.get_num());
    d.den = x.get_den();
    for (auto const& p : S) {
        Int q;
        int a = static_cast<int>(mpz_remove(q.get_mpz_t(), d.num.get_mpz_t(), p.get_mpz_t()));
        d.num = q;
        int b = static_cast<int>(mpz_remove(q.get_mpz_t(), d.den.get_mpz_t(), p.get_mpz_t()));
        d.den = q;
        if (a != b)
            d.exponents[p] += a - b;
    }
    return d;
}

namespace {

constexpr unsigned small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool mr_round(Int const& n, Int const& nm1, Int const& d, unsigned long s, Int const& a)
{
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1)
        return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == nm1)
            return true;
        if (x == 1)
            return false;
    }
    return false;
}

} // namespace

bool is_probable_prime(Int const& n)
{
    if (n < 2)
        return false;
    for (unsigned q : small_primes) {
        if (n == q)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), q))
            return false;
    }
    Int nm1 = n - 1;
    unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    Int d = nm1 >> s;
    // The first 13 prime bases are a proof below 3.317e24.
    static Int const deterministic_limit("3317044064679887385961981");
    for (unsigned q : small_primes)
        if (!mr_round(n, nm1, d, s, Int(q)))
            return false;
    if (n < deterministic_limit)
        return true;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x5eed);
    Int range = n - 3;
    for (int i = 0; i < 40; ++i) {
        Int a = rng.get_z_range(range) + 2;
        if (!mr_round(n, nm1, d, s, a))
            return false;
    }
    return true;
}

Int Factorization::recompose() const
{
    Int r = unfactored;
    for (auto const& [p, e] : factors)
        r *= ipow(p, e);
    return sign < 0 ? Int(-r) : r;
}

std::vector<Int> Factorization::primes() const
{
    std::vector<Int> out;
    for (auto const& f : factors)
        out.push_back(f.first);
    return out;
}

namespace {

// Brent's cycle variant of Pollard rho. Returns a nontrivial factor or 0.
Int rho_factor(Int const& n, unsigned long budget)
{
    if (mpz_even_p(n.get_mpz_t()))
        return 2;
    unsigned long spent = 0;
    for (unsigned long c = 1; spent < budget; ++c) {
        Int y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1;
        constexpr unsigned long m = 128;
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                y = (y * y + c) % n;
            unsigned long k = 0;
            do {
                ys = y;
                unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                spent += lim;
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1 && spent < budget);
        if (g == n) {
            do {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != 1 && g != n)
            return g;
    }
    return 0;
}

void split_rest(Int const& n, FactorBudget const& budget, std::map<Int, int>& out, Int& unfactored)
{
    if (n == 1)
        return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    if (auto r = exact_root(n, 2)) {
        std::map<Int, int> sub;
        Int subu = 1;
        split_rest(*r, budget, sub, subu);
        for (auto const& [p, e] : sub)
            out[p] += 2 * e;
        unfactored *= subu * subu;
        return;
    }
    Int f = rho_factor(n, budget.rho_iterations);
    if (f == 0) {
        unfactored *= n;
        return;
    }
    split_rest(f, budget, out, unfactored);
    split_rest(n / f, budget, out, unfactored);
}

} // namespace

Factorization factor_int(Int const& n, FactorBudget const& budget)
{
    if (n == 0)
        throw input_error("cannot factor zero");
    Factorization fz;
    fz.sign = sgn(n) < 0 ? -1 : 1;
    Int m = abs(n);
    std::map<Int, int> found;
    auto take = [&](unsigned long q) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
            Int t;
            Int qq(q);
            found[qq] = static_cast<int>(mpz_remove(t.get_mpz_t(), m.get_mpz_t(), qq.get_mpz_t()));
            m = t;
        }
    };
    take(2);
    take(3);
    // Wheel of 6; the bound also stops once q^2 > m.
    for (unsigned long q = 5; q <= budget.trial_bound; q += 6) {
        if (Int(q) * q > m)
            break;
        take(q);
        take(q + 2);
    }
    Int rest = 1;
    split_rest(m, budget, found, rest);
    // A leftover that trial division proved has no small factor and passes the
    // primality test was already absorbed into `found` above.
    fz.unfactored = rest;
    for (auto const& [p, e] : found)
        fz.factors.emplace_back(p, e);
    return fz;
}

std::optional<Int> exact_root(Int const& x, unsigned long k)
{
    if (k == 0)
        throw input_error("zeroth root");
    if (x < 0 && k % 2 == 0)
        return std::nullopt;
    Int r;
    Int ax = abs(x);
    if (mpz_root(r.get_mpz_t(), ax.get_mpz_t(), k) == 0)
        return std::nullopt;
    return x < 0 ? Int(-r) : r;
}

std::optional<Rat> rational_sqrt(Rat const& x)
{
    auto n = exact_root(x.get_num(), 2);
    auto d = exact_root(x.get_den(), 2);
    if (!n || !d)
        return std::nullopt;
    return Rat(*n, *d);
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi)
{
    std::vector<std::uint64_t> out;
    if (hi < 2 || hi < lo)
        return out;
    lo = std::max<std::uint64_t>(lo, 2);
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(hi))) + 1;
    std::vector<char> small(root + 1, 1);
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!small[i])
            continue;
        base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i)
            small[j] = 0;
    }
    constexpr std::uint64_t seg = 1 << 18;
    std::vector<char> mark(seg);
    for (std::uint64_t start = lo; start <= hi; start += seg) {
        std::uint64_t end = std::min(hi, start + seg - 1);
        std::fill(mark.begin(), mark.end(), 1);
        for (std::uint64_t q : base) {
            if (q * q > end)
                break;
            std::uint64_t first = std::max(q * q, (start + q - 1) / q * q);
            for (std::uint64_t j = first; j <= end; j += q)
                mark[j - start] = 0;
        }
        for (std::uint64_t i = start; i <= end; ++i)
            if (mark[i - start])
                out.push_back(i);
        if (end == hi)
            break;
    }
    return out;
}

std::vector<std::uint64_t> first_primes(std::size_t count, std::vector<std::uint64_t> const& excluded)
{
    std::vector<std::uint64_t> out;
    std::uint64_t lo = 2, width = 1 << 16;
    while (out.size() < count) {
        for (auto p : primes_between(lo, lo + width - 1)) {
            if (std::find(excluded.begin(), excluded.end(), p) != excluded.end())
                continue;
            out.push_back(p);
            if (out.size() == count)
                break;
        }
        lo += width;
        width *= 2;
    }
    return out;
}

std::uint64_t next_prime(std::uint64_t n)
{
    for (std::uint64_t c = std::max<std::uint64_t>(n, 2);; ++c)
        if (is_probable_prime(Int(std::to_string(c))))
            return c;
}

QuadElt::QuadElt(Int const& d, Rat a, Rat b) : d_(d), a_(std::move(a)), b_(std::move(b))
{
    if (d == 0 || d == 1)
        throw input_error("quadratic discriminator must be a non-square");
    if (exact_root(d, 2))
        throw input_error("quadratic discriminator must be a non-square");
    a_.canonicalize();
    b_.canonicalize();
}

Int const& QuadElt::unify(QuadElt const& o) const
{
    if (d_ == 0)
        return o.d_;
    if (o.d_ != 0 && o.d_ != d_)
        throw input_error("mixed quadratic rings: sqrt(" + d_.get_str() + ") and sqrt(" + o.d_.get_str() + ")");
    return d_;
}

QuadElt QuadElt::conj() const
{
    QuadElt r = *this;
    r.b_ = -b_;
    return r;
}

Rat QuadElt::norm() const { return a_ * a_ - Rat(d_) * b_ * b_; }

QuadElt QuadElt::inverse() const
{
    Rat n = norm();
    if (n == 0)
        throw input_error("division by zero in quadratic ring");
    QuadElt r = conj();
    r.a_ /= n;
    r.b_ /= n;
    return r;
}

QuadElt& QuadElt::operator+=(QuadElt const& o)
{
    d_ = unify(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QuadElt& QuadElt::operator-=(QuadElt const& o)
{
    d_ = unify(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QuadElt& QuadElt::operator*=(QuadElt const& o)
{
    Int d = unify(o);
    Rat a = a_ * o.a_;
    if (b_ != 0 && o.b_ != 0)
        a += Rat(d) * b_ * o.b_;
    Rat b = a_ * o.b_ + b_ * o.a_;
    d_ = d;
    a_ = a;
    b_ = b;
    return *this;
}

QuadElt& QuadElt::operator/=(QuadElt const& o)
{
    unify(o);
    return *this *= o.inverse();
}

QuadElt QuadElt::operator-() const
{
    QuadElt r = *this;
    r.a_ = -a_;
    r.b_ = -b_;
    return r;
}

bool operator==(QuadElt const& x, QuadElt const& y)
{
    if (x.b_ != 0 && y.b_ != 0 && x.d_ != y.d_)
        return false;
    return x.a_ == y.a_ && x.b_ == y.b_;
}

std::string QuadElt::to_string() const
{
    if (b_ == 0)
        return m12::to_string(a_);
    std::string s = "(" + m12::to_string(a_) + ")+(" + m12::to_string(b_) + ")*sqrt(" + d_.get_str() + ")";
    return s;
}

FpElt::FpElt(std::uint64_t residue, std::uint64_t p) : r_(residue % p), p_(p) {}

FpElt FpElt::operator+(FpElt const& o) const
{
    std::uint64_t s = r_ + o.r_;
    return {s >= p_ ? s - p_ : s, p_};
}

FpElt FpElt::operator-(FpElt const& o) const { return {r_ >= o.r_ ? r_ - o.r_ : r_ + p_ - o.r_, p_}; }

FpElt FpElt::operator*(FpElt const& o) const { return {mulmod(r_, o.r_, p_), p_}; }

FpElt FpElt::inverse() const
{
    if (r_ == 0)
        throw input_error("inverse of zero residue");
    return {invmod(r_, p_), p_};
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p)
{
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1)
        throw input_error("residue not invertible");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

std::uint64_t mod_ui(Int const& x, std::uint64_t p)
{
    if (p <= 0xffffffffUL || sizeof(unsigned long) == 8)
        return mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p));
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), Int(std::to_string(p)).get_mpz_t());
    return std::stoull(r.get_str());
}

} // namespace m12
