#include "m12/covers.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace m12 {

namespace detail {
char const* catalog_source();
char const* fixtures_source();
} // namespace detail

// ---------------------------------------------------------------- FamilyPoly

int FamilyPoly::degree_x() const
{
    int d = -1;
    for (auto const& q : by_param)
        d = std::max(d, q.degree());
    return d;
}

bool FamilyPoly::is_rational() const
{
    for (auto const& q : by_param)
        for (auto const& a : q.c)
            if (!a.is_rational())
                return false;
    return true;
}

void FamilyPoly::trim()
{
    while (!by_param.empty() && by_param.back().is_zero())
        by_param.pop_back();
}

QuadPoly FamilyPoly::at(Rat const& value) const
{
    QuadPoly acc;
    for (auto it = by_param.rbegin(); it != by_param.rend(); ++it)
        acc = QuadElt(value) * acc + *it;
    return acc;
}

FamilyPoly operator+(FamilyPoly const& a, FamilyPoly const& b)
{
    FamilyPoly r = a;
    if (b.by_param.size() > r.by_param.size())
        r.by_param.resize(b.by_param.size());
    for (std::size_t i = 0; i < b.by_param.size(); ++i)
        r.by_param[i] += b.by_param[i];
    r.trim();
    return r;
}

FamilyPoly operator-(FamilyPoly const& a, FamilyPoly const& b)
{
    FamilyPoly r = a;
    if (b.by_param.size() > r.by_param.size())
        r.by_param.resize(b.by_param.size());
    for (std::size_t i = 0; i < b.by_param.size(); ++i)
        r.by_param[i] -= b.by_param[i];
    r.trim();
    return r;
}

FamilyPoly operator*(FamilyPoly const& a, FamilyPoly const& b)
{
    FamilyPoly r;
    if (a.by_param.empty() || b.by_param.empty())
        return r;
    r.by_param.resize(a.by_param.size() + b.by_param.size() - 1);
    for (std::size_t i = 0; i < a.by_param.size(); ++i) {
        if (a.by_param[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.by_param.size(); ++j)
            if (!b.by_param[j].is_zero())
                r.by_param[i + j] += a.by_param[i] * b.by_param[j];
    }
    r.trim();
    return r;
}

FamilyPoly FamilyPoly::pow(unsigned e) const
{
    FamilyPoly r;
    r.by_param = {QuadPoly::constant(QuadElt(1L))};
    FamilyPoly b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

// ---------------------------------------------------------------- expression parser

namespace {

class ExprParser {
  public:
    ExprParser(std::string const& text, ExprSymbols const& sym) : s_(text), sym_(sym) {}

    FamilyPoly parse()
    {
        FamilyPoly r = expr();
        skip();
        if (i_ != s_.size())
            fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return r;
    }

  private:
    [[noreturn]] void fail(std::string const& what) const
    {
        throw input_error("expression: " + what + " at offset " + std::to_string(i_));
    }

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    char peek()
    {
        skip();
        return i_ < s_.size() ? s_[i_] : '\0';
    }

    static FamilyPoly constant(QuadElt const& a)
    {
        FamilyPoly f;
        f.by_param = {QuadPoly::constant(a)};
        f.trim();
        return f;
    }

    FamilyPoly expr()
    {
        FamilyPoly acc;
        bool first = true;
        for (;;) {
            char c = peek();
            int sign = 1;
            if (c == '+' || c == '-') {
                sign = c == '-' ? -1 : 1;
                ++i_;
            } else if (!first) {
                break;
            }
            FamilyPoly t = term();
            acc = sign > 0 ? acc + t : acc - t;
            first = false;
            c = peek();
            if (c != '+' && c != '-')
                break;
        }
        return acc;
    }

    bool starts_primary(char c) const
    {
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
    }

    FamilyPoly term()
    {
        FamilyPoly acc = power();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++i_;
                acc = acc * power();
            } else if (c == '/') {
                ++i_;
                FamilyPoly d = power();
                if (d.degree_param() != 0 || d.by_param[0].degree() != 0)
                    fail("only division by nonzero constants is supported");
                acc = acc * constant(QuadElt(1L) / d.by_param[0].c[0]);
            } else if (starts_primary(c)) {
                acc = acc * power();
            } else {
                break;
            }
        }
        return acc;
    }

    FamilyPoly power()
    {
        FamilyPoly base = primary();
        if (peek() == '^') {
            ++i_;
            skip();
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                ++i_;
            if (st == i_)
                fail("exponent must be a nonnegative integer");
            base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(st, i_ - st))));
        }
        return base;
    }

    FamilyPoly primary()
    {
        char c = peek();
        if (c == '(') {
            ++i_;
            FamilyPoly r = expr();
            if (peek() != ')')
                fail("missing ')'");
            ++i_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                ++i_;
            return constant(QuadElt(Rat(Int(s_.substr(st, i_ - st)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            ++i_;
            FamilyPoly f;
            if (c == sym_.x) {
                f.by_param = {QuadPoly::monomial(QuadElt(1L), 1)};
            } else if (sym_.param && c == sym_.param) {
                f.by_param = {QuadPoly(), QuadPoly::constant(QuadElt(1L))};
            } else if (sym_.root && c == sym_.root) {
                f = constant(QuadElt(sym_.d, 0, 1));
            } else if (auto it = sym_.constants.find(c); it != sym_.constants.end()) {
                f = constant(QuadElt(Rat(it->second)));
            } else {
                --i_;
                fail("unknown symbol '" + std::string(1, c) + "'");
            }
            return f;
        }
        fail(c ? "unexpected '" + std::string(1, c) + "'" : "unexpected end of input");
    }

    std::string s_;
    ExprSymbols const& sym_;
    std::size_t i_ = 0;
};

long digit_sum(Int const& x)
{
    long s = 0;
    for (char ch : Int(abs(x)).get_str())
        s += ch - '0';
    return s;
}

long digit_sum(Rat const& r)
{
    if (r == 0)
        return 0;
    return digit_sum(r.get_num()) + digit_sum(r.get_den());
}

} // namespace

FamilyPoly parse_family(std::string const& text, ExprSymbols const& sym)
{
    return ExprParser(text, sym).parse();
}

std::vector<long> family_checksum(FamilyPoly const& f)
{
    std::vector<long> out;
    for (auto const& q : f.by_param) {
        long s = 0;
        for (auto const& a : q.c)
            s += digit_sum(a.rational_part()) + digit_sum(a.irrational_part());
        out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------- catalog loading

namespace {

std::string trim_ws(std::string const& s)
{
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(std::string const& s)
{
    std::string t = trim_ws(s);
    if (t.size() >= 2 && t.front() == '"' && t.back() == '"')
        return t.substr(1, t.size() - 2);
    return t;
}

PartitionTriple parse_triple(std::string const& text, int n)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, '|'))
        parts.push_back(trim_ws(piece));
    if (parts.size() != 3)
        throw input_error("partition triple needs three parts: " + text);
    PartitionTriple t{parse_partition(parts[0]), parse_partition(parts[1]), parse_partition(parts[2])};
    for (auto const* p : {&t.l0, &t.l1, &t.linf}) {
        int s = 0;
        for (int x : *p)
            s += x;
        if (s != n)
            throw input_error("partition " + partition_to_string(*p) + " does not sum to " + std::to_string(n));
    }
    return t;
}

struct LineReader {
    std::vector<std::string> lines;
    std::size_t pos = 0;

    explicit LineReader(std::string const& text)
    {
        std::stringstream ss(text);
        std::string l;
        while (std::getline(ss, l))
            lines.push_back(l);
    }

    /// Next non-blank, non-comment line, or nullopt at end.
    std::optional<std::string> next()
    {
        while (pos < lines.size()) {
            std::string l = trim_ws(lines[pos++]);
            if (l.empty() || l[0] == '#')
                continue;
            return l;
        }
        return std::nullopt;
    }

    /// Lines up to a closing "}".
    std::string block()
    {
        std::string out;
        while (pos < lines.size()) {
            std::string l = trim_ws(lines[pos++]);
            if (l == "}")
                return out;
            out += l + "\n";
        }
        throw input_error("unterminated '{' block");
    }

    std::size_t line_no() const { return pos; }
};

std::pair<std::string, std::string> split_key(std::string const& line)
{
    std::size_t sp = line.find_first_of(" \t");
    if (sp == std::string::npos)
        return {line, ""};
    return {line.substr(0, sp), trim_ws(line.substr(sp))};
}

ExprSymbols symbols_of(CoverSpec const& c)
{
    ExprSymbols s;
    s.x = 'x';
    s.param = c.param_symbol;
    s.root = c.root_symbol;
    s.d = c.d;
    return s;
}

struct PendingMonodromy {
    std::string mode;
    std::map<std::string, std::string> perms;
    std::string sigma;
    std::string conjugation = "real";
    bool sigma_in_group = false;
};

} // namespace

CoverSpec const& Catalog::get(std::string const& id) const
{
    for (auto const& c : covers)
        if (c.id == id)
            return c;
    throw input_error("unknown cover id '" + id + "'");
}

bool Catalog::has(std::string const& id) const
{
    for (auto const& c : covers)
        if (c.id == id)
            return true;
    return false;
}

QuadPoly Catalog::h(std::string const& label) const
{
    std::string key = label.empty() ? h_reading : label;
    auto it = h_candidates.find(key);
    if (it == h_candidates.end())
        throw input_error("unknown h(x) reading '" + key + "'");
    ExprSymbols s;
    s.x = 'x';
    s.param = 0;
    s.root = 'u';
    s.d = -11;
    FamilyPoly f = parse_family(it->second, s);
    if (f.degree_param() > 0)
        throw input_error("h(x) must not depend on the parameter");
    return f.by_param.empty() ? QuadPoly() : f.by_param[0];
}

Catalog load_catalog(std::string const& text)
{
    Catalog cat;
    LineReader rd(text);
    bool format_seen = false;
    while (auto line = rd.next()) {
        auto [key, rest] = split_key(*line);
        if (key == "format") {
            if (rest != "m12-catalog")
                throw input_error("unknown catalog format '" + rest + "'");
            format_seen = true;
        } else if (key == "version") {
            cat.version = std::stoi(rest);
        } else if (key == "h-printed") {
            cat.h_printed = rest;
        } else if (key == "h-candidate") {
            auto [label, expr] = split_key(rest);
            cat.h_candidates[label] = expr;
        } else if (key == "h-reading") {
            cat.h_reading = rest;
        } else if (key == "cover") {
            CoverSpec c;
            c.id = rest;
            c.base = rest;
            std::optional<std::vector<long>> check;
            std::string poly_text;
            PendingMonodromy mono;
            std::string triple_text, lift_triple_text;
            for (;;) {
                auto l = rd.next();
                if (!l)
                    throw input_error("cover " + c.id + ": missing 'end'");
                auto [k, v] = split_key(*l);
                if (k == "end")
                    break;
                if (k == "field") {
                    std::istringstream in(v);
                    std::string kind;
                    in >> kind;
                    if (kind == "Q") {
                        c.d = 0;
                    } else if (kind == "sqrt") {
                        std::string d, sym;
                        in >> d >> sym;
                        c.d = parse_int(d);
                        if (sym.size() != 1)
                            throw input_error("cover " + c.id + ": root symbol must be one letter");
                        c.root_symbol = sym[0];
                    } else {
                        throw input_error("cover " + c.id + ": bad field '" + v + "'");
                    }
                } else if (k == "param") {
                    std::istringstream in(v);
                    std::string kind, sym;
                    in >> kind >> sym;
                    if (kind == "t")
                        c.param = ParamKind::t;
                    else if (kind == "s-real")
                        c.param = ParamKind::s_real;
                    else if (kind == "s-imag")
                        c.param = ParamKind::s_imag;
                    else
                        throw input_error("cover " + c.id + ": bad param kind '" + kind + "'");
                    if (sym.size() != 1)
                        throw input_error("cover " + c.id + ": parameter symbol must be one letter");
                    c.param_symbol = sym[0];
                } else if (k == "rationalize") {
                    CoverSpec const& b = cat.get(v);
                    c.base = b.id;
                    c.d = b.d;
                    c.root_symbol = b.root_symbol;
                    c.param = b.param;
                    c.param_symbol = b.param_symbol;
                    c.bad_primes = b.bad_primes;
                    c.behavior = b.behavior;
                    c.twin = c.id;
                    c.poly = b.poly;
                    c.lift_scale = b.lift_scale;
                } else if (k == "degree") {
                    c.degree = std::stoi(v);
                } else if (k == "triple") {
                    triple_text = v;
                } else if (k == "bad") {
                    std::istringstream in(v);
                    int p;
                    while (in >> p)
                        c.bad_primes.push_back(p);
                } else if (k == "behavior") {
                    std::istringstream in(v);
                    std::string w;
                    while (in >> w) {
                        if (w.size() < 2)
                            throw input_error("cover " + c.id + ": bad behavior '" + w + "'");
                        c.behavior[std::stoi(w.substr(0, w.size() - 1))] = w.back();
                    }
                } else if (k == "groups") {
                    std::istringstream in(v);
                    std::string g;
                    c.groups.clear();
                    while (in >> g)
                        c.groups.push_back(g);
                } else if (k == "twin") {
                    c.twin = v;
                } else if (k == "lift") {
                    auto [kind, note] = split_key(v);
                    if (kind == "none")
                        c.lift = LiftKind::none;
                    else if (kind == "square")
                        c.lift = LiftKind::square_substitution;
                    else if (kind == "resultant-h")
                        c.lift = LiftKind::resultant_h;
                    else
                        throw input_error("cover " + c.id + ": bad lift kind '" + kind + "'");
                    c.lift_note = unquote(note);
                } else if (k == "lift-scale") {
                    ExprSymbols sym = symbols_of(c);
                    sym.param = 0;
                    FamilyPoly f = parse_family(v, sym);
                    if (f.degree_param() != 0 || f.by_param[0].degree() != 0)
                        throw input_error("cover " + c.id + ": lift-scale must be a nonzero constant");
                    c.lift_scale = f.by_param[0].c[0];
                } else if (k == "lift-triple") {
                    std::size_t g = v.rfind("genus");
                    if (g == std::string::npos)
                        throw input_error("cover " + c.id + ": lift-triple needs a genus");
                    lift_triple_text = trim_ws(v.substr(0, g));
                    c.lift_genus = std::stoi(v.substr(g + 5));
                } else if (k == "poly") {
                    if (v != "{")
                        throw input_error("cover " + c.id + ": expected 'poly {'");
                    poly_text = rd.block();
                } else if (k == "check") {
                    std::istringstream in(v);
                    std::string w;
                    std::vector<long> sums;
                    while (in >> w) {
                        if (w[0] == '@') { // placeholder, always reported as a mismatch
                            sums.push_back(-1);
                            continue;
                        }
                        std::size_t colon = w.find(':');
                        if (colon == std::string::npos || std::stoul(w.substr(0, colon)) != sums.size())
                            throw input_error("cover " + c.id + ": malformed checksum '" + w + "'");
                        sums.push_back(std::stol(w.substr(colon + 1)));
                    }
                    check = sums;
                } else if (k == "monodromy") {
                    auto [mode, note] = split_key(v);
                    mono.mode = mode;
                    c.monodromy_note = unquote(note);
                } else if (k == "perm" || k == "twin-printed") {
                    auto [name, cyc] = split_key(v);
                    mono.perms[(k == "perm" ? "" : "twin:") + name] = cyc;
                } else if (k == "sigma") {
                    mono.sigma = v;
                } else if (k == "conjugation") {
                    mono.conjugation = v;
                } else if (k == "sigma-in-group") {
                    mono.sigma_in_group = v == "yes";
                } else {
                    throw input_error("cover " + c.id + ": unknown key '" + k + "'");
                }
            }
            if (!triple_text.empty())
                c.triple = parse_triple(triple_text, c.degree);
            if (!lift_triple_text.empty())
                c.lift_triple = parse_triple(lift_triple_text, 2 * c.degree);
            if (!poly_text.empty()) {
                c.poly = parse_family(poly_text, symbols_of(c));
                if (!check)
                    throw input_error("cover " + c.id + ": equation has no checksum");
                auto got = family_checksum(*c.poly);
                if (got != *check) {
                    std::string g;
                    for (std::size_t i = 0; i < got.size(); ++i)
                        g += " " + std::to_string(i) + ":" + std::to_string(got[i]);
                    throw input_error("cover " + c.id + ": checksum mismatch, expanded equation gives" + g);
                }
                if (c.poly->degree_x() != c.degree)
                    throw input_error("cover " + c.id + ": equation has degree " + std::to_string(c.poly->degree_x()));
                if (c.d == 0 && !c.poly->is_rational())
                    throw input_error("cover " + c.id + ": irrational coefficients over Q");
            }
            if (mono.mode == "printed") {
                MonodromyData m;
                m.degree = c.degree;
                m.g0 = Perm::parse(mono.perms.at("g0"), c.degree);
                m.g1 = Perm::parse(mono.perms.at("g1"), c.degree);
                if (!mono.sigma.empty())
                    m.sigma = Perm::parse(mono.sigma, c.degree);
                m.conjugation = mono.conjugation == "swapped" ? MonodromyData::Conjugation::swapped_cusps
                                                              : MonodromyData::Conjugation::real_cusps;
                m.sigma_in_group = mono.sigma_in_group;
                m.expected = c.triple;
                c.monodromy = m;
            }
            // Raw strings stay available for the rule-based and typo-documenting paths.
            for (auto const& [name, cyc] : mono.perms)
                c.monodromy_note += "\n" + name + " " + cyc;
            cat.covers.push_back(std::move(c));
        } else {
            throw input_error("catalog line " + std::to_string(rd.line_no()) + ": unknown key '" + key + "'");
        }
    }
    if (!format_seen)
        throw input_error("catalog has no format line");
    if (!cat.h_reading.empty() && !cat.h_candidates.count(cat.h_reading))
        throw input_error("recorded h(x) reading is not among the candidates");
    return cat;
}

std::string const& embedded_catalog_text()
{
    static std::string const t = detail::catalog_source();
    return t;
}

Catalog const& catalog()
{
    static Catalog const c = load_catalog(embedded_catalog_text());
    return c;
}

namespace {

/// Raw cycle text stored on a cover under `name` (see the loader).
std::string stored_cycles(CoverSpec const& c, std::string const& name)
{
    std::istringstream in(c.monodromy_note);
    std::string line;
    std::getline(in, line); // the note itself
    while (std::getline(in, line)) {
        auto [k, v] = split_key(line);
        if (k == name)
            return v;
    }
    throw input_error("cover " + c.id + " has no stored permutation '" + name + "'");
}

} // namespace

// ---------------------------------------------------------------- specialization

namespace {

void check_cusp(CoverSpec const& c, Rat const& v)
{
    if (c.param == ParamKind::t && (v == 0 || v == 1))
        throw input_error("cover " + c.id + ": " + to_string(v) + " is a cusp");
}

void check_separable(SpecializedField const& f)
{
    if (discriminant(f.poly) == 0)
        throw contract_error("non-separable specialization of " + f.cover + " at " + to_string(f.value));
}

} // namespace

SpecializedField specialize(std::string const& id, Rat const& value)
{
    CoverSpec const& c = catalog().get(id);
    check_cusp(c, value);
    if (c.id == "E")
        throw input_error("f_E(s,x) is not printed; use specialize_E_twins(s), which factors f_E2(1+s^2/11,x)");
    if (!c.poly)
        throw input_error("cover " + c.id + " has no printed equation");
    if (!c.rationalized() && c.d != 0)
        throw input_error("cover " + c.id + " is defined over Q(sqrt " + c.d.get_str() + "); use " + c.id +
                          "2 for the rational degree-24 form");
    SpecializedField out;
    out.cover = c.id;
    out.value = value;
    QuadPoly q = c.poly->at(value);
    out.poly = c.rationalized() ? norm_rationalize(q) : primitive_integral(q);
    out.degree = out.poly.degree();
    if (out.degree != c.degree)
        throw contract_error("specialization of " + c.id + " at " + to_string(value) + " dropped degree to " +
                             std::to_string(out.degree));
    check_separable(out);
    return out;
}

std::pair<SpecializedField, SpecializedField> specialize_E_twins(Rat const& s)
{
    if (s == 0)
        throw input_error("s = 0 maps to the cusp t = 1");
    Rat t = 1 + s * s / 11;
    SpecializedField e2 = specialize("E2", t);
    RationalFactorization fr = factor_rational(e2.poly);
    if (fr.factors.size() != 2 || fr.factors[0].degree() != 12 || fr.factors[1].degree() != 12) {
        std::string shape;
        for (auto const& f : fr.factors)
            shape += (shape.empty() ? "" : "+") + std::to_string(f.degree());
        throw contract_error("unexpected split " + shape + " of f_E2(1+s^2/11, x) at s = " + to_string(s));
    }
    std::vector<IntPoly> fs = fr.factors;
    std::sort(fs.begin(), fs.end(), [](IntPoly const& a, IntPoly const& b) {
        for (int i = a.degree(); i >= 0; --i)
            if (a.c[i] != b.c[i])
                return a.c[i] < b.c[i];
        return false;
    });
    auto mk = [&](IntPoly const& f) {
        SpecializedField o;
        o.cover = "E";
        o.value = abs(s);
        o.poly = f;
        o.degree = 12;
        o.note = "factor of f_E2(1+s^2/11, x); the twin pair for s and -s is the same pair";
        return o;
    };
    return {mk(fs[0]), mk(fs[1])};
}

QuadPoly charpoly(QuadPoly const& f0, QuadPoly const& alpha)
{
    int n = f0.degree();
    if (n < 1)
        throw input_error("charpoly needs a nonconstant modulus");
    QuadElt inv = QuadElt(1L) / f0.lc();
    QuadPoly f = inv * f0;
    // Power sums of the roots of f by Newton's identities.
    std::vector<QuadElt> ps(n, QuadElt(0L));
    ps[0] = QuadElt(static_cast<long>(n));
    for (int k = 1; k < n; ++k) {
        QuadElt acc = QuadElt(static_cast<long>(k)) * f.coeff(n - k);
        for (int i = 1; i < k; ++i)
            acc += f.coeff(n - i) * ps[k - i];
        ps[k] = -acc;
    }
    auto trace = [&](QuadPoly const& b) {
        QuadElt t(0L);
        for (int j = 0; j <= b.degree(); ++j)
            t += b.c[j] * ps[j];
        return t;
    };
    QuadPoly a = field_rem(alpha, f), pw = QuadPoly::constant(QuadElt(1L));
    std::vector<QuadElt> s(n + 1, QuadElt(0L));
    for (int k = 1; k <= n; ++k) {
        pw = field_rem(pw * a, f);
        s[k] = trace(pw);
    }
    // Elementary symmetric functions e_k of the conjugates of alpha.
    std::vector<QuadElt> e(n + 1, QuadElt(0L));
    e[0] = QuadElt(1L);
    for (int k = 1; k <= n; ++k) {
        QuadElt acc(0L);
        for (int i = 1; i <= k; ++i) {
            QuadElt term = e[k - i] * s[i];
            if (i % 2)
                acc += term;
            else
                acc -= term;
        }
        e[k] = acc / QuadElt(static_cast<long>(k));
    }
    std::vector<QuadElt> c(n + 1, QuadElt(0L));
    for (int k = 0; k <= n; ++k)
        c[n - k] = (k % 2) ? -e[k] : e[k];
    return QuadPoly(std::move(c));
}

SpecializedField build_lift(std::string const& id, Rat const& value, std::string const& h_label, bool scaled)
{
    CoverSpec const& c = catalog().get(id);
    check_cusp(c, value);
    if (!c.rationalized() || c.lift == LiftKind::none) {
        std::string why = c.lift_note.empty() ? "no lift recipe" : c.lift_note;
        throw input_error("no degree-48 lift for cover " + c.id + ": " + why);
    }
    SpecializedField out;
    out.cover = c.id;
    out.value = value;
    out.note = c.lift_note;
    QuadPoly q = c.poly->at(value);
    QuadElt pw(1L), scale = scaled ? c.lift_scale : QuadElt(1L);
    for (auto& a : q.c) {
        a *= pw;
        pw *= scale;
    }
    if (c.lift == LiftKind::square_substitution) {
        out.poly = norm_rationalize(substitute_square(q));
    } else {
        QuadPoly h2 = QuadElt(2L) * catalog().h(h_label);
        out.poly = norm_rationalize(substitute_square(charpoly(q, h2)));
    }
    out.degree = out.poly.degree();
    if (out.degree != 4 * 12)
        throw contract_error("lift of " + c.id + " at " + to_string(value) + " has degree " + std::to_string(out.degree));
    check_separable(out);
    return out;
}

HReadingResult select_h_reading(int primes)
{
    Rat tau(125, 4);
    IntPoly target = fixture("C2~_5^3/2^2").poly;
    std::map<std::string, IntPoly> lifts;
    for (auto const& [label, expr] : catalog().h_candidates) {
        try {
            lifts[label] = build_lift("C2", tau, label).poly;
        } catch (contract_error const&) {
            // A reading that yields a non-separable lift cannot be the right one.
        }
    }
    HReadingResult res;
    for (auto const& kv : catalog().h_candidates)
        res.agreements[kv.first] = 0;
    std::uint64_t p = 100;
    while (res.primes_compared < primes) {
        p = next_prime(p + 1);
        auto want = ddf_partition(target, p);
        if (!want)
            continue;
        ++res.primes_compared;
        for (auto const& [label, f] : lifts) {
            auto got = ddf_partition(f, p);
            if (got && *got == *want)
                ++res.agreements[label];
        }
    }
    int best = -1;
    for (auto const& [label, n] : res.agreements)
        if (n > best) {
            best = n;
            res.chosen = label;
        }
    return res;
}

// ---------------------------------------------------------------- fixtures

std::vector<Fixture> const& fixtures()
{
    static std::vector<Fixture> const fx = [] {
        std::vector<Fixture> out;
        LineReader rd(detail::fixtures_source());
        while (auto line = rd.next()) {
            auto [key, rest] = split_key(*line);
            if (key != "fixture")
                throw input_error("fixture file: unexpected '" + key + "'");
            Fixture f;
            f.id = rest;
            ExprSymbols sym;
            sym.param = 0;
            std::string text;
            for (;;) {
                auto l = rd.next();
                if (!l)
                    throw input_error("fixture " + f.id + ": missing 'end'");
                auto [k, v] = split_key(*l);
                if (k == "end")
                    break;
                if (k == "where")
                    f.where = unquote(v);
                else if (k == "var")
                    f.var = sym.x = v.at(0);
                else if (k == "const") {
                    auto [name, val] = split_key(v);
                    sym.constants[name.at(0)] = parse_int(val);
                } else if (k == "poly")
                    text = rd.block();
                else if (k == "note")
                    f.note = unquote(v);
                else
                    throw input_error("fixture " + f.id + ": unknown key '" + k + "'");
            }
            FamilyPoly fp = parse_family(text, sym);
            f.poly = primitive_integral(fp.by_param.at(0));
            out.push_back(std::move(f));
        }
        return out;
    }();
    return fx;
}

Fixture const& fixture(std::string const& id)
{
    for (auto const& f : fixtures())
        if (f.id == id)
            return f;
    throw input_error("unknown fixture '" + id + "'");
}

// ---------------------------------------------------------------- monodromy

MonodromyData rationalized_monodromy(std::string const& id)
{
    CoverSpec const& c = catalog().get(id);
    CoverSpec const& b = catalog().get(c.base);
    if (!c.rationalized() || !b.monodromy)
        throw input_error("no printed generators for the degree-24 form of " + c.id);
    // Twin convention of the printed dessins: g0 -> g0^-1, g1 -> g1.
    MonodromyData m;
    m.degree = 2 * b.degree;
    m.g0 = twin_sum(b.monodromy->g0, b.monodromy->g0.inverse());
    m.g1 = twin_sum(b.monodromy->g1, b.monodromy->g1);
    m.sigma = bar_swap(b.degree);
    m.conjugation = MonodromyData::Conjugation::real_cusps;
    m.expected = c.triple;
    m.expected_order = 95040;
    m.expected_order_with_sigma = Int(190080);
    m.components = 2;
    return m;
}

MonodromyData e_monodromy_derived()
{
    MonodromyData m = *catalog().get("E").monodromy;
    // m- is fixed by sigma m- sigma = m+^-1; the printed m- differs in one cycle.
    m.g0 = *m.sigma * m.g1.inverse() * *m.sigma;
    m.expected_order = 95040;
    return m;
}

MonodromyData e2_monodromy()
{
    CoverSpec const& e2 = catalog().get("E2");
    MonodromyData e = e_monodromy_derived();
    // Black half-edges turn like m+, white ones like m-, as in the printed m0 up to
    // the corrected white cycle. Sigma takes e b to (13-e) w; the same-colour rule
    // e c -> (13-e) c differs from it by m1 and fails sigma m0 sigma = m0^-1.
    std::vector<int> m0(24), m1(24), sg(24);
    for (int i = 0; i < 12; ++i) {
        m0[i] = e.g1(i);
        m0[12 + i] = 12 + e.g0(i);
        m1[i] = 12 + i;
        m1[12 + i] = i;
        sg[i] = 12 + 11 - i;
        sg[12 + i] = 11 - i;
    }
    MonodromyData m;
    m.degree = 24;
    m.g0 = Perm(m0);
    m.g1 = Perm(m1);
    m.sigma = Perm(sg);
    m.conjugation = MonodromyData::Conjugation::real_cusps;
    m.expected = e2.triple;
    m.expected_order = 190080;
    return m;
}

MonodromyData d_lift_monodromy()
{
    std::vector<std::string> labels;
    for (int i = 1; i <= 12; ++i)
        labels.push_back(std::to_string(i));
    for (int i = 1; i <= 12; ++i)
        labels.push_back("-" + std::to_string(i));
    MonodromyData m;
    m.degree = 24;
    m.g0 = Perm::parse("(1,2,3)(4,5,6)(7,8,9)(10,11,12)(-1,-2,-3)(-4,-5,-6)(-7,-8,-9)(-10,-11,-12)", labels);
    m.g1 = Perm::parse("(3,4)(5,7)(8,10)(11,-12)(-11,12)(-3,-4)(-5,-7)(-8,-10)", labels);
    m.expected = catalog().get("D").lift_triple;
    m.expected_order = 190080;
    return m;
}

MonodromyReport verify_cover_monodromy(std::string const& id)
{
    CoverSpec const& c = catalog().get(id);
    MonodromyReport rep;
    if (c.id == "E") {
        rep = verify_monodromy(e_monodromy_derived());
        rep.note = "m- taken from sigma m- sigma = m+^-1; the printed m- " +
                   stored_cycles(c, "g0") + " generates a group of order " +
                   group_order({c.monodromy->g0, c.monodromy->g1}).get_str();
        return rep;
    }
    if (c.id == "E2") {
        rep = verify_monodromy(e2_monodromy());
        rep.note = "built from the E2 dessin rules with the corrected m- and sigma e b <-> (13-e) w";
        return rep;
    }
    if (c.id == "D2") {
        rep = verify_monodromy(rationalized_monodromy("D2"));
        rep.note = "degree-24 form: g on edges, its twin on barred edges, sigma swapping them";
        return rep;
    }
    if (!c.monodromy) {
        rep.available = false;
        std::string note = c.monodromy_note.substr(0, c.monodromy_note.find('\n'));
        rep.note = "data unavailable" + (note.empty() ? std::string() : ": " + note);
        return rep;
    }
    rep = verify_monodromy(*c.monodromy);
    rep.note = c.monodromy_note.substr(0, c.monodromy_note.find('\n'));
    return rep;
}

} // namespace m12
