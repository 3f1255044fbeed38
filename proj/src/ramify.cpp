#include "m12/ramify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace m12 {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

Int big(u64 x) { return Int(static_cast<unsigned long>(x)); }

// ---------------------------------------------------------------- F_p helpers

FpPoly radical(FpPoly const& f)
{
    u64 p = f.p;
    if (f.degree() <= 0)
        return FpPoly(p, {1});
    FpPoly df = f.derivative();
    if (df.is_zero()) {
        // f = g(x^p) = g(x)^p over F_p.
        std::vector<u64> g;
        for (std::size_t k = 0; k < f.c.size(); k += p)
            g.push_back(f.c[k]);
        return radical(FpPoly(p, g).monic());
    }
    FpPoly c = gcd(f, df);
    FpPoly w = (f / c).monic();
    FpPoly rc = radical(c.monic());
    FpPoly common = gcd(w, rc);
    return ((w * rc) / common).monic();
}

IntPoly lift(FpPoly const& a)
{
    std::vector<Int> c;
    for (u64 x : a.c)
        c.push_back(big(x));
    return IntPoly(std::move(c));
}

using Mat = std::vector<std::vector<u64>>;

/// Basis of {v : sum_i v_i A[i] = 0} over F_p, rows of A of any length.
Mat left_kernel(Mat A, u64 p)
{
    std::size_t rows = A.size();
    if (rows == 0)
        return {};
    std::size_t cols = A[0].size();
    Mat T(rows, std::vector<u64>(rows, 0));
    for (std::size_t i = 0; i < rows; ++i)
        T[i][i] = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(A[piv], A[r]);
        std::swap(T[piv], T[r]);
        u64 inv = invmod(A[r][c], p);
        for (auto& x : A[r])
            x = mulmod(x, inv, p);
        for (auto& x : T[r])
            x = mulmod(x, inv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0)
                continue;
            u64 t = p - A[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (A[r][j])
                    A[i][j] = (A[i][j] + mulmod(t, A[r][j], p)) % p;
            for (std::size_t j = 0; j < rows; ++j)
                if (T[r][j])
                    T[i][j] = (T[i][j] + mulmod(t, T[r][j], p)) % p;
        }
        ++r;
    }
    return Mat(T.begin() + static_cast<long>(r), T.end());
}

/// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Mat& A, u64 p)
{
    std::vector<std::size_t> pivots;
    if (A.empty())
        return pivots;
    std::size_t rows = A.size(), cols = A[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(A[piv], A[r]);
        u64 inv = invmod(A[r][c], p);
        for (auto& x : A[r])
            x = mulmod(x, inv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0)
                continue;
            u64 t = p - A[i][c];
            for (std::size_t j = c; j < cols; ++j)
                A[i][j] = (A[i][j] + mulmod(t, A[r][j], p)) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    A.resize(r);
    return pivots;
}

// ---------------------------------------------------------------- arithmetic mod p^k

struct SmallMod {
    u64 m;
    using T = u64;
    T reduce(Int const& x) const
    {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), big(m).get_mpz_t());
        return r.get_ui();
    }
    T mul(T a, T b) const { return static_cast<u64>(static_cast<u128>(a) * b % m); }
    T add(T a, T b) const
    {
        T s = a + b;
        return s >= m ? s - m : s;
    }
    T sub(T a, T b) const { return a >= b ? a - b : a + (m - b); }
    Int to_int(T a) const { return big(a); }
    T zero() const { return 0; }
};

struct BigMod {
    Int m;
    using T = Int;
    T reduce(Int const& x) const
    {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        return r;
    }
    T mul(T const& a, T const& b) const { return reduce(a * b); }
    T add(T const& a, T const& b) const { return reduce(a + b); }
    T sub(T const& a, T const& b) const { return reduce(a - b); }
    Int to_int(T const& a) const { return a; }
    T zero() const { return 0; }
};

/// Current order: rows of M over the common denominator p^e, in the power basis.
struct Order {
    int n = 0;
    int e = 0;
    std::vector<std::vector<Int>> M; ///< lower triangular
    std::vector<std::vector<Int>> W; ///< p^e M^-1, integral and lower triangular
};

void compute_W(Order& O, Int const& pe)
{
    int n = O.n;
    O.W.assign(n, std::vector<Int>(n, 0));
    for (int c = 0; c < n; ++c) {
        for (int i = c; i < n; ++i) {
            Int acc = i == c ? pe : Int(0);
            for (int j = c; j < i; ++j)
                if (O.M[i][j] != 0 && O.W[j][c] != 0)
                    acc -= O.M[i][j] * O.W[j][c];
            if (!mpz_divisible_p(acc.get_mpz_t(), O.M[i][i].get_mpz_t()))
                throw contract_error("order basis inverse is not integral");
            mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), O.M[i][i].get_mpz_t());
            O.W[i][c] = acc;
        }
    }
}

/// Structure constants c[i][j][k] of the order modulo p^2 (flat, c[(i n + j) n + k]).
template <class R>
std::vector<u64> structure_constants(IntPoly const& f, Order const& O, u64 p, R const& ring)
{
    using T = typename R::T;
    int n = O.n;
    std::vector<T> fr(n + 1);
    for (int i = 0; i <= n; ++i)
        fr[i] = ring.reduce(f.c[i]);
    // theta^k mod f for n <= k <= 2n-2
    std::vector<std::vector<T>> red;
    {
        std::vector<T> cur(n, ring.zero());
        // theta^n = -sum f_i theta^i
        for (int i = 0; i < n; ++i)
            cur[i] = ring.sub(ring.zero(), fr[i]);
        red.push_back(cur);
        for (int k = n + 1; k <= 2 * n - 2; ++k) {
            std::vector<T> nxt(n, ring.zero());
            T top = cur[n - 1];
            for (int i = n - 1; i >= 1; --i)
                nxt[i] = cur[i - 1];
            for (int i = 0; i < n; ++i)
                nxt[i] = ring.sub(nxt[i], ring.mul(top, fr[i]));
            red.push_back(nxt);
            cur = std::move(nxt);
        }
    }
    std::vector<std::vector<T>> Mr(n), Wr(n);
    for (int i = 0; i < n; ++i) {
        Mr[i].resize(i + 1);
        for (int j = 0; j <= i; ++j)
            Mr[i][j] = ring.reduce(O.M[i][j]);
        Wr[i].resize(i + 1);
        for (int j = 0; j <= i; ++j)
            Wr[i][j] = ring.reduce(O.W[i][j]);
    }
    Int p2e = ipow(big(p), static_cast<unsigned long>(2 * O.e));
    u64 p2 = p * p;
    std::vector<u64> out(static_cast<std::size_t>(n) * n * n, 0);
    std::vector<T> prod(2 * n - 1), N(n), C(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            std::fill(prod.begin(), prod.end(), ring.zero());
            for (int a = 0; a <= i; ++a)
                for (int b = 0; b <= j; ++b)
                    prod[a + b] = ring.add(prod[a + b], ring.mul(Mr[i][a], Mr[j][b]));
            for (int k = 0; k < n; ++k)
                N[k] = prod[k];
            for (int k = n; k <= i + j; ++k) {
                if (prod[k] == ring.zero())
                    continue;
                auto const& rk = red[k - n];
                for (int l = 0; l < n; ++l)
                    N[l] = ring.add(N[l], ring.mul(prod[k], rk[l]));
            }
            std::fill(C.begin(), C.end(), ring.zero());
            for (int k = 0; k < n; ++k) {
                if (N[k] == ring.zero())
                    continue;
                for (int l = 0; l <= k; ++l)
                    C[l] = ring.add(C[l], ring.mul(N[k], Wr[k][l]));
            }
            for (int l = 0; l < n; ++l) {
                Int v = ring.to_int(C[l]);
                if (!mpz_divisible_p(v.get_mpz_t(), p2e.get_mpz_t()))
                    throw contract_error("structure constant is not integral");
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), p2e.get_mpz_t());
                u64 r = mpz_fdiv_ui(v.get_mpz_t(), p2);
                out[(static_cast<std::size_t>(i) * n + j) * n + l] = r;
                out[(static_cast<std::size_t>(j) * n + i) * n + l] = r;
            }
        }
    }
    return out;
}

std::vector<u64> table_mod_p2(IntPoly const& f, Order const& O, u64 p)
{
    Int mod = ipow(big(p), static_cast<unsigned long>(2 * O.e + 2));
    if (mod < Int(1) << 62) {
        SmallMod r{mod.get_ui()};
        return structure_constants(f, O, p, r);
    }
    BigMod r{mod};
    return structure_constants(f, O, p, r);
}

/// a * b in O/pO (or O/p^2 O with m = p^2) from the table.
std::vector<u64> tmul(std::vector<u64> const& a, std::vector<u64> const& b, std::vector<u64> const& tab, int n, u64 m)
{
    std::vector<u128> acc(n, 0);
    for (int i = 0; i < n; ++i) {
        if (!a[i])
            continue;
        for (int j = 0; j < n; ++j) {
            if (!b[j])
                continue;
            u64 ab = static_cast<u64>(static_cast<u128>(a[i]) * b[j] % m);
            u64 const* row = &tab[(static_cast<std::size_t>(i) * n + j) * n];
            for (int k = 0; k < n; ++k)
                if (row[k])
                    acc[k] += static_cast<u128>(ab) * (row[k] % m);
        }
    }
    std::vector<u64> r(n);
    for (int k = 0; k < n; ++k)
        r[k] = static_cast<u64>(acc[k] % m);
    return r;
}

Mat matmul(Mat const& A, Mat const& B, u64 p)
{
    std::size_t n = A.size();
    Mat C(n, std::vector<u64>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<u128> acc(n, 0);
        for (std::size_t k = 0; k < n; ++k) {
            if (!A[i][k])
                continue;
            for (std::size_t j = 0; j < n; ++j)
                acc[j] += static_cast<u128>(A[i][k]) * B[k][j];
        }
        for (std::size_t j = 0; j < n; ++j)
            C[i][j] = static_cast<u64>(acc[j] % p);
    }
    return C;
}

/// Lower-triangular HNF of the lattice spanned by `gens` and D Z^n, D = p^k.
std::vector<std::vector<Int>> modular_hnf(std::vector<std::vector<Int>> gens, int n, Int const& D, Int const& p)
{
    for (auto& g : gens)
        for (auto& x : g)
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), D.get_mpz_t());
    std::vector<std::vector<Int>> H(n, std::vector<Int>(n, 0));
    for (int col = n - 1; col >= 0; --col) {
        int best = -1, bestv = 0;
        for (std::size_t r = 0; r < gens.size(); ++r) {
            if (gens[r][col] == 0)
                continue;
            int v = ord_p(gens[r][col], p);
            if (best < 0 || v < bestv) {
                best = static_cast<int>(r);
                bestv = v;
            }
        }
        if (best < 0) {
            H[col][col] = D;
            continue;
        }
        std::vector<Int> piv = gens[best];
        gens.erase(gens.begin() + best);
        Int pv = ipow(p, static_cast<unsigned long>(bestv));
        Int unit = piv[col] / pv, uinv;
        mpz_invert(uinv.get_mpz_t(), unit.get_mpz_t(), D.get_mpz_t());
        for (auto& x : piv) {
            x *= uinv;
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), D.get_mpz_t());
        }
        for (auto& g : gens) {
            if (g[col] == 0)
                continue;
            Int t = g[col] / pv;
            for (int j = 0; j <= col; ++j) {
                g[j] -= t * piv[j];
                mpz_fdiv_r(g[j].get_mpz_t(), g[j].get_mpz_t(), D.get_mpz_t());
            }
        }
        std::vector<Int> extra(n, 0);
        Int mult = D / pv;
        bool nonzero = false;
        for (int j = 0; j < col; ++j) {
            extra[j] = piv[j] * mult;
            mpz_fdiv_r(extra[j].get_mpz_t(), extra[j].get_mpz_t(), D.get_mpz_t());
            nonzero = nonzero || extra[j] != 0;
        }
        if (nonzero)
            gens.push_back(std::move(extra));
        gens.erase(std::remove_if(gens.begin(), gens.end(),
                                  [](std::vector<Int> const& g) {
                                      return std::all_of(g.begin(), g.end(), [](Int const& x) { return x == 0; });
                                  }),
                   gens.end());
        H[col] = std::move(piv);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i - 1; j >= 0; --j) {
            if (H[i][j] == 0)
                continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H[i][j].get_mpz_t(), H[j][j].get_mpz_t());
            if (q != 0)
                for (int k = 0; k <= j; ++k)
                    H[i][k] -= q * H[j][k];
        }
    return H;
}

/// One Round-2 step. Returns dim_Fp(O'/O), zero when O is p-maximal.
int enlarge(IntPoly const& f, Order& O, u64 p)
{
    int n = O.n;
    u64 p2 = p * p;
    std::vector<u64> tab2 = table_mod_p2(f, O, p);
    std::vector<u64> tab1(tab2.size());
    for (std::size_t i = 0; i < tab2.size(); ++i)
        tab1[i] = tab2[i] % p;

    // Frobenius x -> x^p on O/pO, then its power p^j >= n.
    Mat Fr(n);
    for (int i = 0; i < n; ++i) {
        std::vector<u64> base(n, 0), acc(n, 0);
        base[i] = 1;
        acc[0] = 0;
        bool have = false;
        u64 e = p;
        while (e) {
            if (e & 1) {
                acc = have ? tmul(acc, base, tab1, n, p) : base;
                have = true;
            }
            e >>= 1;
            if (e)
                base = tmul(base, base, tab1, n, p);
        }
        Fr[i] = acc;
    }
    Mat F = Fr;
    for (u64 pj = p; pj < static_cast<u64>(n); pj *= p)
        F = matmul(F, Fr, p);
    Mat rad = left_kernel(F, p);
    std::vector<std::size_t> piv = rref(rad, p);

    // Z-basis of I_p: radical rows, then p e_q for non-pivot q.
    std::vector<std::vector<u64>> gamma;
    std::vector<char> is_pivot(n, 0);
    for (auto c : piv)
        is_pivot[c] = 1;
    for (auto const& r : rad)
        gamma.push_back(r);
    std::vector<int> nonpiv;
    for (int q = 0; q < n; ++q)
        if (!is_pivot[q]) {
            std::vector<u64> v(n, 0);
            v[q] = p;
            gamma.push_back(v);
            nonpiv.push_back(q);
        }
    std::size_t m = rad.size();

    // phi(omega_i) as a matrix on I_p / p I_p, flattened.
    Mat Phi(n, std::vector<u64>(static_cast<std::size_t>(n) * n, 0));
    std::vector<u64> ei(n, 0);
    for (int i = 0; i < n; ++i) {
        std::fill(ei.begin(), ei.end(), 0);
        ei[i] = 1;
        for (int l = 0; l < n; ++l) {
            std::vector<u64> z = tmul(ei, gamma[l], tab2, n, p2);
            std::vector<u64> y(n, 0);
            for (std::size_t r = 0; r < m; ++r)
                y[r] = z[piv[r]] % p;
            for (std::size_t s = 0; s < nonpiv.size(); ++s) {
                int q = nonpiv[s];
                u128 acc = z[q];
                for (std::size_t r = 0; r < m; ++r)
                    acc += static_cast<u128>(p2 - z[piv[r]]) * rad[r][q];
                u64 val = static_cast<u64>(acc % p2);
                if (val % p)
                    throw contract_error("radical is not an ideal of the order");
                y[m + s] = val / p;
            }
            for (int k = 0; k < n; ++k)
                Phi[i][static_cast<std::size_t>(l) * n + k] = y[k];
        }
    }
    Mat ker = left_kernel(Phi, p);
    int k = static_cast<int>(ker.size());
    if (k == 0)
        return 0;

    Int P = big(p);
    std::vector<std::vector<Int>> gens;
    for (int i = 0; i < n; ++i) {
        std::vector<Int> g(n, 0);
        for (int j = 0; j <= i; ++j)
            g[j] = O.M[i][j] * P;
        gens.push_back(std::move(g));
    }
    for (auto const& kv : ker) {
        std::vector<Int> g(n, 0);
        for (int i = 0; i < n; ++i)
            if (kv[i])
                for (int j = 0; j <= i; ++j)
                    g[j] += big(kv[i]) * O.M[i][j];
        gens.push_back(std::move(g));
    }
    int e = O.e + 1;
    Int D = ipow(P, static_cast<unsigned long>(e));
    auto H = modular_hnf(std::move(gens), n, D, P);
    while (e > 0) {
        bool all = true;
        for (auto const& row : H)
            for (auto const& x : row)
                if (x != 0 && !mpz_divisible_ui_p(x.get_mpz_t(), p)) {
                    all = false;
                    break;
                }
        if (!all)
            break;
        for (auto& row : H)
            for (auto& x : row)
                x /= P;
        --e;
    }
    O.M = std::move(H);
    O.e = e;
    compute_W(O, ipow(P, static_cast<unsigned long>(e)));
    return k;
}

void require_prime_size(u64 p)
{
    if (p < 2 || p >= (1ULL << 31))
        throw input_error("prime " + std::to_string(p) + " is outside the supported range");
}

} // namespace

// ---------------------------------------------------------------- Dedekind, Round 2

bool dedekind_maximal(IntPoly const& f, std::uint64_t p)
{
    require_prime_size(p);
    if (f.degree() < 1 || f.lc() != 1)
        throw input_error("Dedekind criterion needs a monic polynomial");
    if (discriminant(f) == 0)
        throw input_error("Dedekind criterion needs a squarefree polynomial");
    FpPoly fp = FpPoly::reduce(f, p);
    FpPoly g = radical(fp);
    FpPoly h = (fp / g).monic();
    IntPoly G = lift(g), Hh = lift(h);
    IntPoly diff = f - G * Hh;
    for (auto& c : diff.c) {
        if (!mpz_divisible_ui_p(c.get_mpz_t(), p))
            throw contract_error("Dedekind criterion: f - g h is not divisible by p");
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
    }
    FpPoly F = FpPoly::reduce(diff, p);
    FpPoly d = gcd(gcd(F, g), h);
    return d.degree() == 0;
}

IntPoly monic_model(IntPoly const& f, std::uint64_t p)
{
    if (f.degree() < 1)
        throw input_error("monic model of a constant");
    if (mpz_fdiv_ui(f.lc().get_mpz_t(), p) != 0)
        return monicize(f);
    for (u64 k = 0; k < p && k < 64; ++k) {
        Int val = f(Int(static_cast<unsigned long>(k)));
        if (mpz_fdiv_ui(val.get_mpz_t(), p) != 0) {
            IntPoly g = k == 0 ? reciprocal(f) : reciprocal(taylor_shift(f, Int(static_cast<unsigned long>(k))));
            if (sgn(g.lc()) < 0)
                g = -g;
            return monicize(g);
        }
    }
    return monicize(f);
}

PMaximalResult p_maximal(IntPoly const& f, std::uint64_t p)
{
    require_prime_size(p);
    if (f.degree() < 1 || f.lc() != 1)
        throw input_error("p_maximal needs a monic polynomial");
    Int disc = discriminant(f);
    if (disc == 0)
        throw input_error("p_maximal needs a squarefree polynomial");
    PMaximalResult res;
    res.poly_valuation = ord_p(disc, big(p));
    if (res.poly_valuation < 2 || dedekind_maximal(f, p)) {
        res.dedekind = true;
        res.field_valuation = res.poly_valuation;
        return res;
    }
    Order O;
    O.n = f.degree();
    O.M.assign(O.n, std::vector<Int>(O.n, 0));
    for (int i = 0; i < O.n; ++i)
        O.M[i][i] = 1;
    compute_W(O, Int(1));
    int cap = res.poly_valuation / 2;
    while (res.poly_valuation - 2 * res.index_valuation >= 2) {
        if (res.enlargements >= cap)
            throw contract_error("Round-2 enlargement exceeded its iteration bound");
        int k = enlarge(f, O, p);
        if (k == 0)
            break;
        res.index_valuation += k;
        ++res.enlargements;
    }
    // Index from the basis itself, as a consistency check.
    int from_basis = O.n * O.e;
    for (int i = 0; i < O.n; ++i)
        from_basis -= ord_p(O.M[i][i], big(p));
    if (from_basis != res.index_valuation)
        throw contract_error("Round-2 index bookkeeping mismatch");
    res.field_valuation = res.poly_valuation - 2 * res.index_valuation;
    return res;
}

int field_disc_valuation(IntPoly const& f, std::uint64_t p)
{
    IntPoly g = primitive_part(f);
    RationalFactorization fr = factor_rational(g);
    if (fr.factors.size() != 1) {
        std::string degs;
        for (auto const& h : fr.factors)
            degs += (degs.empty() ? "" : "+") + std::to_string(h.degree());
        throw input_error("field_disc_valuation needs an irreducible polynomial; factors have degrees " + degs);
    }
    return p_maximal(monic_model(g, p), p).field_valuation;
}

// ---------------------------------------------------------------- field discriminant

Int FieldReport::discriminant() const
{
    Int d = sign;
    for (auto const& [p, v] : disc)
        d *= ipow(big(p), static_cast<unsigned long>(v));
    return d;
}

double root_discriminant(FieldReport const& r)
{
    if (r.degree <= 0)
        return 1.0;
    double lg = 0;
    for (auto const& [p, v] : r.disc)
        lg += v * std::log(static_cast<double>(p));
    return std::exp(lg / r.degree);
}

FieldReport field_discriminant(IntPoly const& f0, FieldDiscOptions const& opt, std::string const& source)
{
    IntPoly f = primitive_part(f0);
    FieldReport rep;
    rep.source = source;
    rep.degree = f.degree();
    if (rep.degree < 1)
        throw input_error("field discriminant of a constant");
    Int pd = discriminant(f);
    if (pd == 0)
        throw contract_error("polynomial is not separable");
    rep.sign = sgn(pd);

    std::vector<u64> primes = opt.primes;
    std::vector<Int> simple; // large primes dividing pd exactly once: ord_p disc K = 1
    if (!opt.complete_support) {
        Factorization fa = factor_int(pd);
        if (!fa.complete()) {
            // The cofactor is harmless only if it divides the index squared.
            auto root = exact_root(Int(abs(fa.unfactored)), 2);
            if (!root)
                throw indeterminate_error("discriminant has an unfactored non-square cofactor " +
                                          fa.unfactored.get_str());
            rep.notes.push_back("unfactored square cofactor of the polynomial discriminant ignored (" +
                                std::to_string(fa.unfactored.get_str().size()) + " digits)");
        }
        for (auto const& [q, e] : fa.factors) {
            if (!q.fits_ulong_p() || q.get_ui() >= (1UL << 31)) {
                if (e == 1 && q.fits_ulong_p()) {
                    simple.push_back(q);
                    continue;
                }
                if (e % 2)
                    throw indeterminate_error("large prime " + q.get_str() + " divides the discriminant to an odd power");
                rep.notes.push_back("large prime " + q.get_str() + " with even exponent treated as index");
                continue;
            }
            primes.push_back(q.get_ui());
        }
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    RationalFactorization fr = factor_rational(f);
    for (auto const& h : fr.factors)
        rep.factor_degrees.push_back(h.degree());
    if (fr.factors.size() > 1) {
        std::string degs;
        for (int d : rep.factor_degrees)
            degs += (degs.empty() ? "" : "+") + std::to_string(d);
        rep.notes.push_back("algebra splits as " + degs + "; discriminant is the product over the factors");
    }

    Int rest = abs(pd);
    for (u64 p : primes) {
        require_prime_size(p);
        int total = 0;
        for (auto const& h : fr.factors)
            total += p_maximal(monic_model(h, p), p).field_valuation;
        rep.disc[p] = total;
        int vp = ord_p(rest, big(p));
        if (vp > 0) {
            Int pp = ipow(big(p), static_cast<unsigned long>(vp));
            mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), pp.get_mpz_t());
        }
        if ((vp - total) % 2 != 0 || vp < total)
            throw contract_error("field discriminant valuation at " + std::to_string(p) +
                                 " is inconsistent with the polynomial discriminant");
    }
    for (Int const& q : simple) {
        rep.disc[q.get_ui()] = 1;
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t());
    }
    if (opt.check_square_cofactor && !exact_root(rest, 2))
        throw contract_error("polynomial discriminant off the examined primes is not a square; support incomplete");
    rep.rd = root_discriminant(rep);
    return rep;
}

// ---------------------------------------------------------------- partition statistics

namespace {

/// Calls fn(p) on successive primes from `lo` until it returns false.
template <class Fn>
void each_prime(u64 lo, Fn&& fn)
{
    constexpr u64 chunk = 1 << 20;
    for (u64 a = lo < 2 ? 2 : lo;; a += chunk)
        for (u64 p : primes_between(a, a + chunk - 1))
            if (!fn(p))
                return;
}

template <class Fn>
void for_primes(PrimeRange const& range, Fn&& fn)
{
    long done = 0;
    if (range.count <= 0)
        return;
    each_prime(range.start, [&](u64 p) {
        if (std::find(range.skip.begin(), range.skip.end(), p) != range.skip.end())
            return true;
        fn(p);
        return ++done < range.count;
    });
}

} // namespace

PartitionStat partition_scan(IntPoly const& f, PrimeRange const& range)
{
    if (discriminant(f) == 0)
        throw input_error("partition_scan needs a squarefree polynomial");
    PartitionStat st;
    for_primes(range, [&](u64 p) {
        if (!st.first_prime)
            st.first_prime = p;
        st.last_prime = p;
        auto part = ddf_partition(f, p);
        if (!part) {
            ++st.excluded;
            return;
        }
        ++st.scanned;
        ++st.counts[*part];
    });
    return st;
}

JointStat joint_scan(std::vector<IntPoly> const& fs, PrimeRange const& range)
{
    JointStat st;
    for_primes(range, [&](u64 p) {
        st.last_prime = p;
        std::vector<Partition> key;
        for (auto const& f : fs) {
            auto part = ddf_partition(f, p);
            if (!part) {
                ++st.excluded;
                return;
            }
            key.push_back(*part);
        }
        ++st.scanned;
        ++st.counts[key];
    });
    return st;
}

std::vector<std::uint64_t> splitting_primes(IntPoly const& f, std::uint64_t lo, std::uint64_t hi)
{
    std::vector<u64> out;
    std::size_t n = static_cast<std::size_t>(f.degree());
    each_prime(lo, [&](u64 p) {
        if (p > hi)
            return false;
        auto part = ddf_partition(f, p);
        if (part && part->size() == n)
            out.push_back(p);
        return true;
    });
    return out;
}

// ---------------------------------------------------------------- class table and models

std::vector<ClassRow> const& class_table()
{
    static std::vector<ClassRow> const rows = [] {
        struct Raw {
            char const* cls;
            long size;
            char const *l12, *l12t, *l24, *l24t;
            long c12, c24;
            bool outer;
        };
        static Raw const raw[] = {
            {"1A", 1, "1^12", "1^12", "1^24", "1^24", 1, 0, false},
            {"1A", 1, "1^12", "1^12", "2^12", "2^12", 0, 1, false},
            {"2A", 792, "2^6", "2^6", "4^6", "4^6", 768, 789, false},
            {"2B", 495, "2^4 1^4", "2^4 1^4", "2^12", "2^12", 470, 503, false},
            {"2B", 495, "2^4 1^4", "2^4 1^4", "2^8 1^8", "2^8 1^8", 521, 515, false},
            {"3A", 1760, "3^3 1^3", "3^3 1^3", "3^6 1^6", "3^6 1^6", 1735, 1776, false},
            {"3A", 1760, "3^3 1^3", "3^3 1^3", "6^3 2^3", "6^3 2^3", 1823, 1781, false},
            {"3B", 2640, "3^4", "3^4", "3^8", "3^8", 2702, 2578, false},
            {"3B", 2640, "3^4", "3^4", "6^4", "6^4", 2649, 2510, false},
            {"4A", 5940, "4^2 2^2", "4^2 1^4", "4^4 2^4", "4^4 2^2 1^4", 6002, 11992, false},
            {"4B", 5940, "4^2 1^4", "4^2 2^2", "4^4 2^2 1^4", "4^4 2^4", 5993, -1, false},
            {"5A", 9504, "5^2 1^2", "5^2 1^2", "5^4 1^4", "5^4 1^4", 9329, 9415, false},
            {"5A", 9504, "5^2 1^2", "5^2 1^2", "10^2 2^2", "10^2 2^2", 9405, 9613, false},
            {"6A", 15840, "6^2", "6^2", "12^2", "12^2", 15798, 15819, false},
            {"6B", 15840, "6 3 2 1", "6 3 2 1", "6^2 3^2 2^2 1^2", "6^2 3^2 2^2 1^2", 15863, 15590, false},
            {"6B", 15840, "6 3 2 1", "6 3 2 1", "6^3 2^3", "6^3 2^3", 15881, 15828, false},
            {"8A", 23760, "8 4", "8 2 1^2", "8^2 4^2", "8^2 4 2 1^2", 23613, 47707, false},
            {"8B", 23760, "8 2 1^2", "8 4", "8^2 4 2 1^2", "8^2 4^2", 24022, -1, false},
            {"10A", 19008, "(10)2", "(10)2", "(20)4", "(20)4", 19048, 18965, false},
            {"11AB", 17280, "(11)1", "(11)1", "11^2 1^2", "11^2 1^2", 17031, 17308, false},
            {"11AB", 17280, "(11)1", "(11)1", "(22)2", "(22)2", 17425, 17194, false},
            {"2C", 1584, "2^12", "2^12", "2^24", "2^24", -1, 1650, true},
            {"4C", 7920, "4^4 2^4", "4^4 2^4", "4^8 2^8", "4^8 2^8", -1, 7964, true},
            {"4D", 15840, "4^6", "4^6", "8^6", "8^6", -1, 15688, true},
            {"6C", 31680, "6^4", "6^4", "6^8", "6^8", -1, 31651, true},
            {"10BC", 38016, "10^2 2^2", "10^2 2^2", "10^4 2^4", "10^4 2^4", -1, 38245, true},
            {"12A", 31680, "12^2", "12^2", "24^2", "24^2", -1, 31577, true},
            {"12BC", 63360, "12 6 4 2", "12 6 4 2", "12^2 6^2 4^2 2^2", "12^2 6^2 4^2 2^2", -1, 63493, true},
        };
        std::vector<ClassRow> out;
        for (auto const& r : raw) {
            ClassRow c;
            c.cls = r.cls;
            c.size = r.size;
            c.l12 = parse_partition(r.l12);
            c.l12t = parse_partition(r.l12t);
            c.l24 = parse_partition(r.l24);
            c.l24t = parse_partition(r.l24t);
            c.count12 = r.c12;
            c.count24 = r.c24;
            c.outer = r.outer;
            out.push_back(std::move(c));
        }
        return out;
    }();
    return rows;
}

namespace {

Partition merge(Partition a, Partition const& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return normalize_partition(a);
}

GroupModel build_model(std::string const& name)
{
    GroupModel m;
    m.name = name;
    auto add = [&](Partition const& p, long size, long order) {
        Rat q(size, order);
        q.canonicalize();
        m.measure[p] += q;
    };
    if (name == "L2(11)") {
        // PSL2(11) on the projective line over F_11.
        m.degree = 12;
        m.order = 660;
        add(parse_partition("1^12"), 1, 660);
        add(parse_partition("2^6"), 55, 660);
        add(parse_partition("3^4"), 110, 660);
        add(parse_partition("5^2 1^2"), 264, 660);
        add(parse_partition("6^2"), 110, 660);
        add(parse_partition("(11)1"), 120, 660);
        return m;
    }
    for (auto const& r : class_table()) {
        if (name == "M12" || name == "M12t") {
            m.degree = 12;
            m.order = 95040;
            if (!r.outer)
                add(name == "M12" ? r.l12 : r.l12t, r.size, 190080);
        } else if (name == "2.M12" || name == "2.M12t") {
            m.degree = 24;
            m.order = 190080;
            if (!r.outer)
                add(name == "2.M12" ? r.l24 : r.l24t, r.size, 190080);
        } else if (name == "M12.2") {
            m.degree = 24;
            m.order = 190080;
            add(r.outer ? r.l12 : merge(r.l12, r.l12t), r.size, 380160);
        } else if (name == "2.M12.2") {
            m.degree = 48;
            m.order = 380160;
            add(r.outer ? r.l24 : merge(r.l24, r.l24t), r.size, 380160);
        } else {
            throw input_error("unknown group model '" + name + "'");
        }
    }
    return m;
}

} // namespace

std::vector<std::string> group_model_names() { return {"M12", "M12t", "2.M12", "2.M12t", "M12.2", "2.M12.2", "L2(11)"}; }

GroupModel const& group_model(std::string const& name)
{
    static std::map<std::string, GroupModel> const models = [] {
        std::map<std::string, GroupModel> m;
        for (auto const& n : group_model_names())
            m[n] = build_model(n);
        return m;
    }();
    auto it = models.find(name);
    if (it == models.end())
        throw input_error("unknown group model '" + name + "'");
    return it->second;
}

std::string DropVerdict::wording() const
{
    if (consistent)
        return "consistent";
    std::ostringstream o;
    o << "drop suspected";
    if (!missing.empty()) {
        o << "; missing";
        for (auto const& p : missing)
            o << " [" << partition_to_string(p) << "]";
    }
    if (!extra.empty()) {
        o << "; outside model";
        for (auto const& p : extra)
            o << " [" << partition_to_string(p) << "]";
    }
    return o.str();
}

DropVerdict drop_detect(PartitionStat const& stat, GroupModel const& model)
{
    if (stat.scanned < 500)
        throw input_error("drop_detect needs at least 500 scanned primes");
    DropVerdict v;
    for (auto const& [part, n] : stat.counts)
        if (!model.measure.count(part))
            v.extra.push_back(part);
    for (auto const& [part, q] : model.measure) {
        double expected = stat.scanned * q.get_d();
        if (expected >= 10 && !stat.counts.count(part))
            v.missing.push_back(part);
    }
    v.consistent = v.missing.empty() && v.extra.empty();
    return v;
}

std::vector<ZScore> z_scores(PartitionStat const& stat, GroupModel const& model, double floor)
{
    std::vector<ZScore> out;
    double N = static_cast<double>(stat.scanned);
    for (auto const& [part, q] : model.measure) {
        ZScore z;
        z.partition = part;
        auto it = stat.counts.find(part);
        z.observed = it == stat.counts.end() ? 0 : it->second;
        double pr = q.get_d();
        z.expected = N * pr;
        double sd = std::sqrt(N * pr * (1 - pr));
        z.z = sd > 0 ? (z.observed - z.expected) / sd : 0;
        z.tested = z.expected >= floor;
        out.push_back(z);
    }
    for (auto const& [part, n] : stat.counts)
        if (!model.measure.count(part)) {
            ZScore z;
            z.partition = part;
            z.observed = n;
            z.z = INFINITY;
            z.tested = true;
            out.push_back(z);
        }
    return out;
}

bool within_sigma(std::vector<ZScore> const& zs, double sigma)
{
    for (auto const& z : zs)
        if (z.tested && std::fabs(z.z) > sigma)
            return false;
    return true;
}

} // namespace m12
