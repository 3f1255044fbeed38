// Command-line front end. Every command prints one JSON document on stdout.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json_io.hpp"

namespace fs = std::filesystem;
using namespace m12;
using io::json;

namespace {

constexpr int exit_input = 2, exit_contract = 3, exit_indeterminate = 4;

Int parse_height(std::string const& text)
{
    auto e = text.find_first_of("eE");
    if (e == std::string::npos)
        return parse_int(text);
    Int mant = parse_int(text.substr(0, e));
    long k = 0;
    try {
        k = std::stol(text.substr(e + 1));
    } catch (std::exception const&) {
        throw input_error("bad height '" + text + "'");
    }
    if (k < 0 || k > 30)
        throw input_error("bad height exponent in '" + text + "'");
    return mant * ipow(Int(10), static_cast<unsigned long>(k));
}

fs::path cache_dir()
{
    if (char const* d = std::getenv("M12_CACHE_DIR"); d && *d)
        return d;
    if (char const* h = std::getenv("HOME"); h && *h)
        return fs::path(h) / ".cache" / "m12";
    return fs::temp_directory_path() / "m12-cache";
}

std::string cache_key(Orders const& m, std::vector<Int> const& S, Int const& H)
{
    std::string k = "search_" + to_string(m) + "_" + prime_set_string(S) + "_" + H.get_str() + ".txt";
    for (auto& ch : k)
        if (ch == ',')
            ch = '-';
    return k;
}

/// Cached search: reload the record file if it parses and matches the request, else recompute.
std::vector<SpecPoint> cached_search(Orders const& m, std::vector<Int> const& S, Int const& H, bool use_cache)
{
    fs::path file = cache_dir() / cache_key(m, S, H);
    if (use_cache && fs::exists(file)) {
        try {
            std::ifstream in(file);
            auto pts = read_records(in);
            for (auto const& p : pts)
                if (!(p.orders == m) || p.S != S || validate_membership(p.tau, m, S).verdict != Membership::member)
                    throw input_error("record does not belong to this search");
            std::cerr << "search: loaded " << pts.size() << " points from " << file.string() << "\n";
            return pts;
        } catch (error const& e) {
            std::cerr << "warning: cache file " << file.string() << " is corrupt (" << e.what() << "); rebuilding\n";
        }
    }
    auto pts = search(m, S, H);
    if (use_cache) {
        std::error_code ec;
        fs::create_directories(file.parent_path(), ec);
        fs::path tmp = file;
        tmp += ".tmp";
        std::ofstream out(tmp);
        if (out) {
            out << "# search " << to_string(m) << " S=" << prime_set_string(S) << " H=" << H << "\n";
            write_records(out, pts);
            out.close();
            fs::rename(tmp, file, ec);
        }
        if (!out || ec)
            std::cerr << "warning: could not write cache file " << file.string() << "\n";
    }
    return pts;
}

json covers_json()
{
    json arr = json::array();
    for (auto const& c : catalog().covers) {
        json j = {{"id", c.id},
                  {"field", c.d == 0 ? "Q" : "Q(sqrt(" + c.d.get_str() + "))"},
                  {"degree", c.degree},
                  {"triple",
                   {partition_to_string(c.triple.l0), partition_to_string(c.triple.l1),
                    partition_to_string(c.triple.linf)}},
                  {"genus", triple_genus(c.triple, c.degree)},
                  {"bad_primes", c.bad_primes},
                  {"groups", c.groups},
                  {"equation", c.poly.has_value()}};
        if (c.rationalized())
            j["rationalizes"] = c.base;
        if (!c.twin.empty())
            j["twin"] = c.twin;
        arr.push_back(j);
    }
    return arr;
}

json report_json(bool slow)
{
    json fields = json::array();
    FieldDiscOptions fo;
    for (auto const& fx : fixtures()) {
        if (!slow && fx.poly.degree() > 24)
            continue;
        json j = io::to_json(field_discriminant(fx.poly, fo, "fixture " + fx.id));
        j["where"] = fx.where;
        fields.push_back(j);
    }
    AnalyzeOptions ao;
    ao.scan_primes = 0;
    std::vector<std::pair<std::string, std::string>> points = {
        {"B", "5"},       {"Bt", "5"},     {"B", "-5/2"}, {"C2", "125/4"},
        {"C2", "-11/64"}, {"C2", "704/729"}, {"E", "319/54"}, {"A2", "357911/2869781400"}};
    if (slow)
        points.push_back({"D2", "9090072503/10101630528"});
    for (auto const& [id, v] : points)
        for (auto const& r : analyze(id, parse_rat(v), ao))
            fields.push_back(io::to_json(r));
    return {{"fields", fields}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Specialization, discriminant and lifting computations for M12 three-point covers"};
    app.require_subcommand(1);
    app.fallthrough();
    int indent = 2;
    std::string output;
    app.add_option("--indent", indent, "JSON indentation (-1 for compact)");
    app.add_option("-o,--output", output, "write the JSON document to a file instead of stdout");

    auto cover_id = CLI::Validator(
        [](std::string& id) { return catalog().has(id) ? std::string() : "unknown cover '" + id + "'"; }, "COVER");

    std::string cover, value, value2, orders_s, S_s, H_s = "1e12", place, model, h_label;
    long count = 2000, start = 2;
    bool lift = false, records = false, no_cache = false, slow = false;
    std::string format = "symbolic";

    auto* c_covers = app.add_subcommand("covers", "List the cover catalog");

    auto* c_spec = app.add_subcommand("specialize", "Specialized polynomial of a cover");
    c_spec->add_option("cover", cover)->required()->check(cover_id);
    c_spec->add_option("value", value, "parameter as num/den")->required();
    c_spec->add_option("--format", format, "symbolic or deg")->check(CLI::IsMember({"symbolic", "deg"}));

    auto* c_search = app.add_subcommand("search", "Enumerate an ABC specialization set");
    c_search->add_option("orders", orders_s, "m0,m1,minf")->required();
    c_search->add_option("--S", S_s, "primes, comma separated")->required();
    c_search->add_option("--H", H_s, "height bound, e.g. 1e6");
    c_search->add_flag("--records", records, "print line records instead of JSON");
    c_search->add_flag("--no-cache", no_cache, "ignore and do not write the cache");

    auto* c_validate = app.add_subcommand("validate", "Membership of tau in a specialization set");
    c_validate->add_option("tau", value)->required();
    c_validate->add_option("orders", orders_s)->required();
    c_validate->add_option("--S", S_s)->required();

    auto* c_classify = app.add_subcommand("classify", "Arm and extremality of tau at p");
    c_classify->add_option("tau", value)->required();
    c_classify->add_option("p", value2)->required();

    auto* c_analyze = app.add_subcommand("analyze", "Full report for one specialization");
    c_analyze->add_option("cover", cover)->required()->check(cover_id);
    c_analyze->add_option("value", value)->required();
    c_analyze->add_option("--primes", count, "primes to scan (0 skips)");
    c_analyze->add_flag("--lift", lift, "analyze the degree-48 lift");
    c_analyze->add_option("--reading", h_label, "lift reading label");

    auto* c_stats = app.add_subcommand("stats", "Frobenius partition statistics against a group model");
    c_stats->add_option("cover", cover, "cover id, or 'fixture'")->required();
    c_stats->add_option("value", value, "parameter, or the fixture id")->required();
    c_stats->add_option("--count", count, "number of primes");
    c_stats->add_option("--start", start, "first prime");
    c_stats->add_option("--model", model, "group model (default by degree)");

    auto* c_lift = app.add_subcommand("lift", "Degree-48 lift polynomial");
    c_lift->add_option("cover", cover)->required()->check(cover_id);
    c_lift->add_option("value", value)->required();
    c_lift->add_option("--reading", h_label, "reading of the printed h");
    c_lift->add_option("--format", format)->check(CLI::IsMember({"symbolic", "deg"}));

    auto* c_verify = app.add_subcommand("verify", "Check the printed monodromy of a cover");
    c_verify->add_option("cover", cover)->required()->check(cover_id);

    auto* c_hilbert = app.add_subcommand("hilbert", "Local Hilbert symbol (a, b)_v");
    c_hilbert->add_option("a", value)->required();
    c_hilbert->add_option("b", value2)->required();
    c_hilbert->add_option("v", place, "prime or oo")->required();

    auto* c_obstruct = app.add_subcommand("obstruct", "Lifting obstruction for a cover");
    c_obstruct->add_option("cover", cover)->required()->check(cover_id);
    c_obstruct->add_option("--tau", value);

    auto* c_report = app.add_subcommand("report", "Discriminant reproduction summary");
    c_report->add_flag("--slow", slow, "include the degree-48 fields");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        std::cout << json{{"error", {{"kind", "input"}, {"message", e.what()}}}}.dump(indent) << "\n";
        std::cerr << "Run with --help for more information.\n";
        return exit_input;
    }

    json out;
    try {
        if (*c_covers) {
            out = covers_json();
        } else if (*c_spec) {
            auto sf = specialize(cover, parse_rat(value));
            out = {{"cover", sf.cover}, {"value", to_string(sf.value)}, {"degree", sf.degree},
                   {"poly", format == "deg" ? to_deg_format(sf.poly) : to_symbolic(sf.poly)}, {"note", sf.note}};
        } else if (*c_search) {
            Orders m = parse_orders(orders_s);
            auto S = parse_prime_set(S_s);
            Int H = parse_height(H_s);
            auto pts = cached_search(m, S, H, !no_cache);
            if (records) {
                std::ofstream file;
                if (!output.empty())
                    file.open(output);
                write_records(output.empty() ? std::cout : file, pts);
                return 0;
            }
            json arr = json::array();
            for (auto const& p : pts)
                arr.push_back(io::to_json(p));
            out = {{"orders", to_string(m)}, {"S", prime_set_string(S)}, {"H", H.get_str()},
                   {"count", pts.size()}, {"points", arr}};
        } else if (*c_validate) {
            Rat tau = parse_rat(value);
            Orders m = parse_orders(orders_s);
            auto S = parse_prime_set(S_s);
            auto r = validate_membership(tau, m, S);
            out = {{"tau", to_string(tau)}, {"orders", to_string(m)}, {"S", prime_set_string(S)},
                   {"verdict", to_string(r.verdict)}, {"reason", r.reason}};
            if (r.witness)
                out["witness"] = io::to_json(*r.witness);
        } else if (*c_classify) {
            Rat tau = parse_rat(value);
            Int p = parse_int(value2);
            if (p < 2 || !is_probable_prime(p))
                throw input_error(value2 + " is not a prime");
            auto a = classify_arm(tau, p);
            out = {{"tau", to_string(tau)}, {"p", p.get_str()}, {"location", to_string(a.location)}, {"j", a.j}};
        } else if (*c_analyze) {
            AnalyzeOptions o;
            o.scan_primes = count;
            o.lift = lift;
            o.h_label = h_label;
            json arr = json::array();
            for (auto const& r : analyze(cover, parse_rat(value), o))
                arr.push_back(io::to_json(r));
            out = {{"reports", arr}};
        } else if (*c_stats) {
            IntPoly f;
            std::string source;
            std::vector<std::uint64_t> skip;
            if (cover == "fixture") {
                f = fixture(value).poly;
                source = "fixture " + value;
            } else {
                auto const& spec = catalog().get(cover);
                f = specialize(cover, parse_rat(value)).poly;
                source = cover + " @ " + value;
                for (int p : spec.bad_primes)
                    skip.push_back(static_cast<std::uint64_t>(p));
            }
            if (count < 1 || start < 2)
                throw input_error("need --count >= 1 and --start >= 2");
            PrimeRange range{static_cast<std::uint64_t>(start), count, skip};
            auto st = partition_scan(f, range);
            if (model.empty())
                model = f.degree() == 12 ? "M12" : f.degree() == 24 ? "M12.2" : f.degree() == 48 ? "2.M12.2" : "";
            out = {{"source", source}, {"degree", f.degree()}, {"partitions", io::to_json(st)}};
            if (!model.empty()) {
                auto const& gm = group_model(model);
                json zs = json::array();
                auto z = z_scores(st, gm);
                for (auto const& x : z)
                    zs.push_back(io::to_json(x));
                out["model"] = model;
                out["z_scores"] = zs;
                out["within_4_sigma"] = within_sigma(z);
                out["drop"] = st.scanned >= 500 ? drop_detect(st, gm).wording() : "too few primes";
            }
        } else if (*c_lift) {
            auto sf = build_lift(cover, parse_rat(value), h_label);
            out = {{"cover", sf.cover}, {"value", to_string(sf.value)}, {"degree", sf.degree},
                   {"poly", format == "deg" ? to_deg_format(sf.poly) : to_symbolic(sf.poly)}, {"note", sf.note}};
        } else if (*c_verify) {
            catalog().get(cover);
            out = io::to_json(verify_cover_monodromy(cover));
            out["cover"] = cover;
        } else if (*c_hilbert) {
            Rat a = parse_rat(value), b = parse_rat(value2);
            Place v = parse_place(place);
            out = {{"a", to_string(a)}, {"b", to_string(b)}, {"place", to_string(v)},
                   {"symbol", hilbert_symbol(a, b, v)}};
        } else if (*c_obstruct) {
            auto cv = conjugation_obstruction(cover);
            out = {{"cover", cover}, {"verdict", cv.verdict}, {"rule", cv.rule}};
            if (cv.deferred) {
                if (value.empty())
                    throw input_error("cover " + cover + " needs --tau");
                auto r = b_cover_obstruction(parse_rat(value));
                out["report"] = io::to_json(r);
                out["verdict"] = r.verdict();
            }
        } else if (*c_report) {
            out = report_json(slow);
        }
    } catch (indeterminate_error const& e) {
        std::cout << json{{"error", {{"kind", "indeterminate"}, {"message", e.what()}}}}.dump(indent) << "\n";
        return exit_indeterminate;
    } catch (contract_error const& e) {
        std::cout << json{{"error", {{"kind", "contract"}, {"message", e.what()}}}}.dump(indent) << "\n";
        return exit_contract;
    } catch (input_error const& e) {
        std::cout << json{{"error", {{"kind", "input"}, {"message", e.what()}}}}.dump(indent) << "\n";
        return exit_input;
    }
    if (output.empty()) {
        std::cout << out.dump(indent) << "\n";
        return 0;
    }
    std::ofstream file(output);
    file << out.dump(indent) << "\n";
    if (!file) {
        std::cout << json{{"error", {{"kind", "input"}, {"message", "cannot write " + output}}}}.dump(indent) << "\n";
        return exit_input;
    }
    return 0;
}
