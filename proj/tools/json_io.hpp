#pragma once

// JSON views of library results for the command-line tool.

#include <json.hpp>

#include "m12/analysis.hpp"
#include "m12/obstruct.hpp"
#include "m12/permgrp.hpp"
#include "m12/specsets.hpp"

namespace m12::io {

using nlohmann::json;

inline std::string str(Rat const& x) { return to_string(x); }

inline json to_json(PartitionStat const& s)
{
    json counts = json::array();
    for (auto const& [p, n] : s.counts)
        counts.push_back({{"partition", partition_to_string(p)}, {"count", n}});
    return {{"first_prime", s.first_prime}, {"last_prime", s.last_prime}, {"scanned", s.scanned},
            {"excluded", s.excluded},       {"counts", counts}};
}

inline json to_json(FieldReport const& r)
{
    json disc = json::array();
    for (auto const& [p, v] : r.disc)
        disc.push_back({{"prime", p}, {"valuation", v}});
    json j = {{"source", r.source},
              {"degree", r.degree},
              {"sign", r.sign},
              {"disc", disc},
              {"discriminant", r.discriminant().get_str()},
              {"rd", r.rd},
              {"factor_degrees", r.factor_degrees},
              {"verdicts", r.verdicts},
              {"notes", r.notes}};
    if (r.partitions)
        j["partitions"] = to_json(*r.partitions);
    return j;
}

inline json to_json(AbcWitness const& w)
{
    return {{"a", w.a.get_str()}, {"x", w.x.get_str()}, {"b", w.b.get_str()},
            {"y", w.y.get_str()}, {"c", w.c.get_str()}, {"z", w.z.get_str()}};
}

inline json to_json(SpecPoint const& p)
{
    json j = {{"tau", str(p.tau)}, {"orders", to_string(p.orders)}, {"S", prime_set_string(p.S)}};
    if (p.witness)
        j["witness"] = to_json(*p.witness);
    return j;
}

inline json to_json(MonodromyReport const& r)
{
    json checks = json::array();
    for (auto const& c : r.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    json j = {{"available", r.available},
              {"note", r.note},
              {"checks", checks},
              {"order", r.order.get_str()},
              {"all_passed", r.available && r.all_passed()}};
    j["genus"] = r.genus ? json(*r.genus) : json(nullptr);
    return j;
}

inline json to_json(ObstructionReport const& r)
{
    json sym = json::array();
    for (auto const& [v, s] : r.symbols)
        sym.push_back({{"place", to_string(v)}, {"symbol", s}});
    return {{"a", str(r.a)}, {"b", str(r.b)}, {"symbols", sym}, {"product", r.product}, {"verdict", r.verdict()}};
}

inline json to_json(ZScore const& z)
{
    return {{"partition", partition_to_string(z.partition)},
            {"observed", z.observed},
            {"expected", z.expected},
            {"z", std::isfinite(z.z) ? json(z.z) : json("inf")},
            {"tested", z.tested}};
}

} // namespace m12::io
