#include "m12/obstruct.hpp"

#include <algorithm>
#include <set>

namespace m12 {

namespace {

void require_nonzero(Rat const& a, Rat const& b)
{
    if (a == 0 || b == 0)
        throw input_error("Hilbert symbol needs nonzero arguments");
}

/// Unit part u of x = p^v u, as num * den (same square class).
Int unit_part(Rat const& x, Int const& p, int& v)
{
    Int n = x.get_num(), d = x.get_den(), q;
    int a = static_cast<int>(mpz_remove(q.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
    n = q;
    int b = static_cast<int>(mpz_remove(q.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t()));
    d = q;
    v = a - b;
    return n * d;
}

int legendre(Int const& u, Int const& p)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t());
    return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

int mod8(Int const& u) { return static_cast<int>(mpz_fdiv_ui(u.get_mpz_t(), 8)); }

void add_primes(Int const& n, std::set<Int>& out)
{
    Factorization f = factor_int(abs(n));
    if (!f.complete())
        throw indeterminate_error("cannot factor " + n.get_str() + " to list the relevant places");
    for (auto const& [q, e] : f.factors)
        out.insert(q);
}

} // namespace

Place Place::prime(Int q)
{
    if (q < 2 || !is_probable_prime(q))
        throw input_error(q.get_str() + " is not a prime");
    Place v;
    v.p = std::move(q);
    return v;
}

std::string to_string(Place const& v) { return v.infinite() ? "oo" : v.p.get_str(); }

Place parse_place(std::string const& text)
{
    if (text == "oo" || text == "inf" || text == "infinity")
        return Place::infinity();
    return Place::prime(parse_int(text));
}

int hilbert_symbol(Rat const& a, Rat const& b, Place const& v)
{
    require_nonzero(a, b);
    if (v.infinite())
        return a < 0 && b < 0 ? -1 : 1;
    Int const& p = v.p;
    int al, be;
    Int u = unit_part(a, p, al), w = unit_part(b, p, be);
    if (p == 2) {
        int u8 = mod8(u), w8 = mod8(w);
        int eps_u = ((u8 - 1) / 2) & 1, eps_w = ((w8 - 1) / 2) & 1;
        int om_u = ((u8 * u8 - 1) / 8) & 1, om_w = ((w8 * w8 - 1) / 8) & 1;
        int e = eps_u * eps_w + (al & 1) * om_w + (be & 1) * om_u;
        return e & 1 ? -1 : 1;
    }
    int s = 1;
    if ((al & 1) && (be & 1) && mpz_fdiv_ui(p.get_mpz_t(), 4) == 3)
        s = -s;
    if (be & 1)
        s *= legendre(u, p);
    if (al & 1)
        s *= legendre(w, p);
    return s;
}

std::vector<Place> relevant_places(Rat const& a, Rat const& b)
{
    require_nonzero(a, b);
    std::set<Int> primes{Int(2)};
    for (Rat const* x : {&a, &b}) {
        add_primes(x->get_num(), primes);
        add_primes(x->get_den(), primes);
    }
    std::vector<Place> out{Place::infinity()};
    for (auto const& p : primes)
        out.push_back(Place::prime(p));
    return out;
}

std::string ObstructionReport::verdict() const
{
    if (liftable())
        return "liftable";
    std::string s = "obstructed at";
    for (auto const& v : obstructed)
        s += " " + to_string(v);
    return s;
}

ObstructionReport b_cover_obstruction(Rat const& tau)
{
    Rat a = 25 - 5 * tau * tau;
    if (tau == 0 || a == 0)
        throw input_error("degenerate parameter for the B obstruction: tau = " + to_string(tau));
    ObstructionReport r;
    r.a = a;
    r.b = tau;
    auto places = relevant_places(a, tau);
    for (Int q : {3, 5})
        if (std::find(places.begin(), places.end(), Place::prime(q)) == places.end())
            places.push_back(Place::prime(q));
    std::sort(places.begin(), places.end(), [](Place const& x, Place const& y) {
        if (x.infinite() != y.infinite())
            return x.infinite();
        return x.p < y.p;
    });
    for (auto const& v : places) {
        int s = hilbert_symbol(a, tau, v);
        r.symbols.push_back({v, s});
        r.product *= s;
        if (s < 0)
            r.obstructed.push_back(v);
    }
    return r;
}

ConjugationVerdict conjugation_obstruction(std::string const& cover_id)
{
    ConjugationVerdict v;
    v.cover = cover_id;
    if (cover_id == "E") {
        v.verdict = "always obstructed at oo";
        v.rule = "K(E, tau) tensor R is C^6 for real tau; complex conjugation has type 2^6 in class 2A, "
                 "which only lifts to 4^6";
    } else if (cover_id == "A2" || cover_id == "C2" || cover_id == "D2" || cover_id == "E2") {
        v.verdict = "no lift to the isoclinic (2.M12.2)*";
        v.rule = "complex conjugation lies in 2C, whose elements lift to order 4 in (2.M12.2)*";
    } else if (cover_id == "B" || cover_id == "Bt") {
        v.verdict = "deferred to the Hilbert symbol formula";
        v.rule = "epsilon(K(B, tau)_v) = (25 - 5 tau^2, tau)_v; twins share local root numbers";
        v.deferred = true;
    } else if (cover_id == "A" || cover_id == "C" || cover_id == "D") {
        v.verdict = "no conjugation rule";
        v.rule = "cover has no rational real specializations to constrain here";
    } else {
        throw input_error("unknown cover '" + cover_id + "'");
    }
    return v;
}

bool reciprocity_check(Rat const& a, Rat const& b)
{
    int prod = 1;
    for (auto const& v : relevant_places(a, b))
        prod *= hilbert_symbol(a, b, v);
    return prod == 1;
}

} // namespace m12
