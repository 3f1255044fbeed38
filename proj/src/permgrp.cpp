#include "m12/permgrp.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

namespace m12 {

Perm::Perm(int n) : img_(n)
{
    std::iota(img_.begin(), img_.end(), 0);
}

Perm::Perm(std::vector<int> images) : img_(std::move(images))
{
    std::vector<char> seen(img_.size(), 0);
    for (int x : img_) {
        if (x < 0 || x >= static_cast<int>(img_.size()) || seen[x])
            throw input_error("not a permutation");
        seen[x] = 1;
    }
}

namespace {

std::vector<std::string> default_labels(int n)
{
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i)
        v.push_back(std::to_string(i));
    return v;
}

std::string strip(std::string const& s)
{
    std::string r;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            r += ch;
    return r;
}

} // namespace

Perm Perm::parse(std::string const& text, int n) { return parse(text, default_labels(n)); }

Perm Perm::parse(std::string const& text, std::vector<std::string> const& labels)
{
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < labels.size(); ++i)
        index[labels[i]] = static_cast<int>(i);
    std::vector<int> img(labels.size());
    std::iota(img.begin(), img.end(), 0);
    std::vector<char> used(labels.size(), 0);
    std::string s = strip(text);
    if (s.empty() || s == "()")
        return Perm(img);
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '(')
            throw input_error("expected '(' in cycle notation '" + text + "'");
        auto close = s.find(')', i);
        if (close == std::string::npos)
            throw input_error("unbalanced cycle in '" + text + "'");
        std::vector<int> cyc;
        std::string body = s.substr(i + 1, close - i - 1);
        std::size_t st = 0;
        while (st <= body.size()) {
            auto comma = body.find(',', st);
            std::string tok = body.substr(st, comma == std::string::npos ? std::string::npos : comma - st);
            auto it = index.find(tok);
            if (it == index.end())
                throw input_error("unknown point '" + tok + "' in cycle notation");
            if (used[it->second])
                throw input_error("point '" + tok + "' repeated in cycle notation");
            used[it->second] = 1;
            cyc.push_back(it->second);
            if (comma == std::string::npos)
                break;
            st = comma + 1;
        }
        for (std::size_t k = 0; k < cyc.size(); ++k)
            img[cyc[k]] = cyc[(k + 1) % cyc.size()];
        i = close + 1;
    }
    return Perm(img);
}

Perm Perm::inverse() const
{
    std::vector<int> r(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i)
        r[img_[i]] = static_cast<int>(i);
    return Perm(std::move(r));
}

Perm Perm::pow(long e) const
{
    Perm base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Perm r(degree());
    while (k) {
        if (k & 1)
            r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

bool Perm::is_identity() const
{
    for (std::size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != static_cast<int>(i))
            return false;
    return true;
}

Partition Perm::cycle_type() const
{
    Partition out;
    std::vector<char> seen(img_.size(), 0);
    for (std::size_t i = 0; i < img_.size(); ++i) {
        if (seen[i])
            continue;
        int len = 0;
        for (int j = static_cast<int>(i); !seen[j]; j = img_[j]) {
            seen[j] = 1;
            ++len;
        }
        out.push_back(len);
    }
    return normalize_partition(out);
}

Int Perm::order() const
{
    Int r = 1;
    for (int c : cycle_type())
        r = lcm(r, Int(c));
    return r;
}

std::string Perm::to_string() const { return to_string(default_labels(degree())); }

std::string Perm::to_string(std::vector<std::string> const& labels) const
{
    std::string out;
    std::vector<char> seen(img_.size(), 0);
    for (std::size_t i = 0; i < img_.size(); ++i) {
        if (seen[i] || img_[i] == static_cast<int>(i))
            continue;
        out += '(';
        for (int j = static_cast<int>(i); !seen[j]; j = img_[j]) {
            seen[j] = 1;
            if (j != static_cast<int>(i))
                out += ',';
            out += labels[j];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

Perm operator*(Perm const& a, Perm const& b)
{
    if (a.degree() != b.degree())
        throw input_error("permutation degrees differ");
    std::vector<int> r(a.img_.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = b.img_[a.img_[i]];
    return Perm(std::move(r));
}

Perm conjugate(Perm const& g, Perm const& a) { return a.inverse() * g * a; }

// ---------------------------------------------------------------- Schreier-Sims

PermGroup::PermGroup(std::vector<Perm> generators, int degree) : n_(degree)
{
    for (auto& g : generators) {
        if (g.degree() != degree)
            throw input_error("generator degree differs from group degree");
        if (!g.is_identity())
            gens_.push_back(std::move(g));
    }
    random_phase(0x12345);
    deterministic_phase();
}

void PermGroup::rebuild_orbit(Level& lv) const
{
    lv.orbit.assign(1, lv.point);
    lv.transversal.assign(n_, std::nullopt);
    lv.transversal[lv.point] = Perm(n_);
    for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
        int b = lv.orbit[k];
        for (auto const& s : lv.gens) {
            int c = s(b);
            if (!lv.transversal[c]) {
                lv.transversal[c] = *lv.transversal[b] * s;
                lv.orbit.push_back(c);
            }
        }
    }
}

std::pair<Perm, std::size_t> PermGroup::sift(Perm g, std::size_t from) const
{
    for (std::size_t i = from; i < levels_.size(); ++i) {
        int b = g(levels_[i].point);
        auto const& u = levels_[i].transversal[b];
        if (!u)
            return {g, i};
        g = g * u->inverse();
    }
    return {g, levels_.size()};
}

void PermGroup::add_strong_generator(Perm const& g, std::size_t level)
{
    if (level == levels_.size()) {
        int moved = 0;
        while (g(moved) == moved)
            ++moved;
        levels_.push_back(Level{moved, {}, {}, {}});
        base_.push_back(moved);
    }
    for (std::size_t l = 0; l <= level; ++l) {
        // g fixes the base points of levels < level, so it belongs to every stabilizer chain level up to `level`.
        levels_[l].gens.push_back(g);
        rebuild_orbit(levels_[l]);
    }
}

void PermGroup::random_phase(std::uint64_t seed)
{
    if (gens_.empty())
        return;
    std::mt19937_64 rng(seed);
    // Product replacement state.
    std::vector<Perm> state = gens_;
    while (state.size() < 10)
        state.push_back(gens_[state.size() % gens_.size()]);
    Perm acc(n_);
    auto next = [&]() {
        std::uniform_int_distribution<std::size_t> pick(0, state.size() - 1);
        std::size_t i = pick(rng), j = pick(rng);
        while (j == i)
            j = pick(rng);
        state[i] = (rng() & 1) ? state[i] * state[j] : state[j] * state[i];
        acc = acc * state[i];
        return acc;
    };
    for (int i = 0; i < 50; ++i)
        next();
    int quiet = 0;
    while (quiet < 30) {
        auto [h, lvl] = sift(next());
        if (h.is_identity()) {
            ++quiet;
            continue;
        }
        quiet = 0;
        add_strong_generator(h, lvl);
    }
}

void PermGroup::deterministic_phase()
{
    for (auto const& g : gens_) {
        auto [h, lvl] = sift(g);
        if (!h.is_identity())
            add_strong_generator(h, lvl);
    }
    // Every Schreier generator at every level must sift through the levels below it.
    std::size_t i = levels_.size();
    while (i > 0) {
        std::size_t lvl = i - 1;
        bool changed = false;
        for (std::size_t bi = 0; bi < levels_[lvl].orbit.size() && !changed; ++bi) {
            int beta = levels_[lvl].orbit[bi];
            for (std::size_t si = 0; si < levels_[lvl].gens.size() && !changed; ++si) {
                Perm const& s = levels_[lvl].gens[si];
                Perm const& ub = *levels_[lvl].transversal[beta];
                Perm const& ubs = *levels_[lvl].transversal[s(beta)];
                Perm h = ub * s * ubs.inverse();
                if (h.is_identity())
                    continue;
                auto [res, stop] = sift(h, lvl + 1);
                if (!res.is_identity()) {
                    add_strong_generator(res, stop);
                    i = stop + 1;
                    changed = true;
                }
            }
        }
        if (!changed)
            --i;
    }
}

Int PermGroup::order() const
{
    Int r = 1;
    for (auto const& lv : levels_)
        r *= static_cast<unsigned long>(lv.orbit.size());
    return r;
}

bool PermGroup::contains(Perm const& g) const
{
    if (g.degree() != n_)
        return false;
    return sift(g).first.is_identity();
}

Perm restrict_to(Perm const& g, std::vector<int> const& points)
{
    std::vector<int> pos(g.degree(), -1);
    for (std::size_t i = 0; i < points.size(); ++i)
        pos[points[i]] = static_cast<int>(i);
    std::vector<int> img(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        int j = pos[g(points[i])];
        if (j < 0)
            throw input_error("point set is not invariant under the permutation");
        img[i] = j;
    }
    return Perm(std::move(img));
}

Int group_order(std::vector<Perm> const& gens)
{
    if (gens.empty())
        return 1;
    return PermGroup(gens, gens[0].degree()).order();
}

std::vector<std::vector<int>> orbits(std::vector<Perm> const& gens, int n)
{
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0)
            continue;
        std::vector<int> orb{s};
        comp[s] = static_cast<int>(out.size());
        for (std::size_t k = 0; k < orb.size(); ++k)
            for (auto const& g : gens) {
                int c = g(orb[k]);
                if (comp[c] < 0) {
                    comp[c] = comp[s];
                    orb.push_back(c);
                }
            }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

bool is_transitive(std::vector<Perm> const& gens, int n) { return orbits(gens, n).size() == 1; }

int triple_genus(PartitionTriple const& t, int n)
{
    long ram = 0;
    for (auto const* lam : {&t.l0, &t.l1, &t.linf}) {
        int sum = std::accumulate(lam->begin(), lam->end(), 0);
        if (sum != n)
            throw input_error("partition " + partition_to_string(*lam) + " does not sum to " + std::to_string(n));
        ram += n - static_cast<long>(lam->size());
    }
    // 2 - 2g = 2n - ram
    long twice = ram - 2L * n + 2;
    if (twice % 2 != 0)
        throw contract_error("parity violation");
    return static_cast<int>(twice / 2);
}

// ---------------------------------------------------------------- monodromy checks

bool MonodromyReport::all_passed() const
{
    if (!available)
        return false;
    for (auto const& c : checks)
        if (!c.passed)
            return false;
    return true;
}

MonodromyReport verify_monodromy(MonodromyData const& data)
{
    MonodromyReport rep;
    int n = data.degree;
    auto add = [&](std::string name, bool ok, std::string detail) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    Perm ginf = (data.g0 * data.g1).inverse();
    add("product relation", (data.g0 * data.g1 * ginf).is_identity(), "g_inf = (g0 g1)^-1 = " + ginf.to_string());
    rep.observed = {data.g0.cycle_type(), data.g1.cycle_type(), ginf.cycle_type()};
    auto cmp = [&](char const* which, Partition const& got, Partition const& want) {
        add(std::string("cycle type ") + which, got == want,
            "observed " + partition_to_string(got) + ", expected " + partition_to_string(want));
    };
    cmp("g0", rep.observed.l0, data.expected.l0);
    cmp("g1", rep.observed.l1, data.expected.l1);
    cmp("g_inf", rep.observed.linf, data.expected.linf);
    std::vector<Perm> gens{data.g0, data.g1};
    auto orbs = orbits(gens, n);
    if (data.components == 1) {
        add("transitive", orbs.size() == 1, std::to_string(orbs.size()) + " orbit(s)");
    } else {
        add("components", static_cast<int>(orbs.size()) == data.components,
            std::to_string(orbs.size()) + " orbit(s) of <g0, g1>, expected " + std::to_string(data.components));
        if (data.sigma) {
            std::vector<Perm> all{data.g0, data.g1, *data.sigma};
            add("transitive with sigma", is_transitive(all, n), std::to_string(orbits(all, n).size()) + " orbit(s)");
        }
    }
    PermGroup G(gens, n);
    rep.order = G.order();
    add("group order", rep.order == data.expected_order,
        "order " + rep.order.get_str() + ", expected " + data.expected_order.get_str());
    try {
        if (orbs.size() == 1) {
            rep.genus = triple_genus(rep.observed, n);
            add("genus", *rep.genus >= 0, "genus " + std::to_string(*rep.genus));
        } else {
            // Genus of each connected component.
            std::string detail;
            bool ok = true;
            for (auto const& o : orbs) {
                Perm a = restrict_to(data.g0, o), b = restrict_to(data.g1, o);
                Perm c = (a * b).inverse();
                int m = static_cast<int>(o.size());
                int g = triple_genus({a.cycle_type(), b.cycle_type(), c.cycle_type()}, m);
                ok = ok && g >= 0;
                if (!rep.genus || g > *rep.genus)
                    rep.genus = g;
                detail += (detail.empty() ? "" : ", ") + std::to_string(g);
            }
            add("genus", ok, "component genera " + detail);
        }
    } catch (contract_error const& e) {
        add("genus", false, e.what());
    }
    if (data.sigma) {
        Perm const& s = *data.sigma;
        add("sigma involution", (s * s).is_identity() && !s.is_identity(), s.to_string());
        if (data.conjugation == MonodromyData::Conjugation::real_cusps) {
            bool ok = s * data.g0 * s == data.g0.inverse() && s * data.g1 * s == data.g1.inverse();
            add("sigma intertwines", ok, "sigma g_k sigma = g_k^-1 for k = 0, 1");
        } else {
            bool ok = s * data.g0 * s == data.g1.inverse() && s * data.g1 * s == data.g0.inverse();
            add("sigma intertwines", ok, "sigma g_- sigma = g_+^-1 and sigma g_+ sigma = g_-^-1");
        }
        if (data.sigma_in_group)
            add("sigma in group", G.contains(s), "sigma lies in <g0, g1>");
        if (data.expected_order_with_sigma) {
            Int o = group_order({data.g0, data.g1, s});
            add("order with sigma", o == *data.expected_order_with_sigma,
                "order " + o.get_str() + ", expected " + data.expected_order_with_sigma->get_str());
        }
    }
    return rep;
}

Perm twin_sum(Perm const& g, Perm const& twin)
{
    int n = g.degree();
    std::vector<int> img(2 * n);
    for (int i = 0; i < n; ++i) {
        img[i] = g(i);
        img[n + i] = n + twin(i);
    }
    return Perm(std::move(img));
}

Perm bar_swap(int n)
{
    std::vector<int> img(2 * n);
    for (int i = 0; i < n; ++i) {
        img[i] = n + i;
        img[n + i] = i;
    }
    return Perm(std::move(img));
}

Perm evaluate_word(std::vector<int> const& word, Perm const& g0, Perm const& g1)
{
    Perm r(g0.degree());
    for (int l : word)
        r = r * (l == 0 ? g0 : g1);
    return r;
}

TwinScan scan_twin_words(Perm const& g0, Perm const& g1, Perm const& t0, Perm const& t1, int max_length,
                         int distinct_length)
{
    struct Node {
        Perm a, b;
        std::vector<int> word;
    };
    auto key = [](Perm const& a, Perm const& b) {
        std::string k;
        for (int x : a.images())
            k += static_cast<char>(x);
        for (int x : b.images())
            k += static_cast<char>(x);
        return k;
    };
    TwinScan out;
    std::set<std::vector<int>> distinct;
    std::set<std::pair<Partition, Partition>> seen_div;
    std::vector<Node> layer{{Perm(g0.degree()), Perm(t0.degree()), {}}};
    std::unordered_set<std::string> layer_keys;
    distinct.insert(layer[0].a.images());
    for (int len = 1; len <= max_length; ++len) {
        std::vector<Node> next;
        std::unordered_set<std::string> next_keys;
        for (auto const& nd : layer)
            for (int l = 0; l < 2; ++l) {
                Perm a = nd.a * (l == 0 ? g0 : g1);
                Perm b = nd.b * (l == 0 ? t0 : t1);
                if (!next_keys.insert(key(a, b)).second)
                    continue;
                std::vector<int> w = nd.word;
                w.push_back(l);
                next.push_back({std::move(a), std::move(b), std::move(w)});
            }
        for (auto const& nd : next) {
            if (len <= distinct_length)
                distinct.insert(nd.a.images());
            Partition ca = nd.a.cycle_type(), cb = nd.b.cycle_type();
            if (ca != cb) {
                if (!out.first_divergence) {
                    out.first_divergence = len;
                    out.witness = nd.word;
                }
                auto pr = std::minmax(ca, cb);
                if (seen_div.insert({pr.first, pr.second}).second)
                    out.divergences.push_back({len, {ca, cb}});
            }
        }
        layer = std::move(next);
    }
    out.distinct_up_to_max = distinct.size();
    return out;
}

} // namespace m12
