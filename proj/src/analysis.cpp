#include "m12/analysis.hpp"

#include <algorithm>
#include <set>

#include "m12/obstruct.hpp"

namespace m12 {

namespace {

void add_primes(Int const& n, std::set<std::uint64_t>& out)
{
    if (n == 0)
        return;
    Factorization f = factor_int(abs(n));
    if (!f.complete())
        throw indeterminate_error("unfactored cofactor " + f.unfactored.get_str() + " in the candidate primes");
    for (auto const& [q, e] : f.factors) {
        if (!q.fits_ulong_p() || q.get_ui() >= (1UL << 31))
            throw indeterminate_error("candidate prime " + q.get_str() + " is too large for the p-maximal order");
        out.insert(q.get_ui());
    }
}

void add_primes(Rat const& x, std::set<std::uint64_t>& out)
{
    add_primes(Int(x.get_num()), out);
    add_primes(Int(x.get_den()), out);
}

std::string with_value(std::string const& id, Rat const& v) { return id + " @ " + to_string(v); }

void attach_verdicts(FieldReport& rep, CoverSpec const& cover, Rat const& value, IntPoly const& f,
                     AnalyzeOptions const& opt, std::string const& obstruction_cover)
{
    if (opt.scan_primes > 0) {
        PrimeRange range;
        range.count = opt.scan_primes;
        for (int p : cover.bad_primes)
            range.skip.push_back(static_cast<std::uint64_t>(p));
        rep.partitions = partition_scan(f, range);
        std::string model = model_for(cover, rep.degree);
        rep.verdicts["model"] = model;
        if (rep.factor_degrees.size() > 1) {
            rep.verdicts["drop"] = "algebra is reducible";
        } else if (rep.partitions->scanned >= 500) {
            GroupModel const& gm = group_model(model);
            rep.verdicts["drop"] = drop_detect(*rep.partitions, gm).wording();
            rep.verdicts["frequencies"] = within_sigma(z_scores(*rep.partitions, gm)) ? "within 4 sigma" : "outside 4 sigma";
        } else {
            rep.verdicts["drop"] = "too few primes";
        }
    }
    ConjugationVerdict cv = conjugation_obstruction(obstruction_cover);
    if (cv.deferred) {
        Rat a = 25 - 5 * value * value;
        rep.verdicts["obstruction"] = a == 0 ? "degenerate" : b_cover_obstruction(value).verdict();
    } else {
        rep.verdicts["obstruction"] = cv.verdict;
    }
}

} // namespace

std::string model_for(CoverSpec const& cover, int degree)
{
    bool outer = std::find(cover.groups.begin(), cover.groups.end(), "M12.2") != cover.groups.end();
    if (degree == 12)
        return "M12";
    if (degree == 24)
        return outer ? "M12.2" : "2.M12";
    if (degree == 48)
        return "2.M12.2";
    throw input_error("no group model for degree " + std::to_string(degree));
}

std::vector<std::uint64_t> candidate_primes(CoverSpec const& cover, Rat const& value, bool lift)
{
    std::set<std::uint64_t> out;
    for (int p : cover.bad_primes)
        out.insert(static_cast<std::uint64_t>(p));
    add_primes(value, out);
    if (cover.param == ParamKind::t) {
        add_primes(Rat(value - 1), out);
    } else {
        Int d = cover.param == ParamKind::s_real ? Int(5) : Int(-11);
        add_primes(Rat(value * value - d), out);
    }
    if (cover.d != 0)
        add_primes(cover.d, out);
    if (lift) {
        out.insert(2);
        Rat n = cover.lift_scale.norm();
        if (n != 0)
            add_primes(n, out);
    }
    return {out.begin(), out.end()};
}

std::vector<FieldReport> analyze(std::string const& cover_id, Rat const& value, AnalyzeOptions const& opt)
{
    CoverSpec const& cover = catalog().get(cover_id);
    FieldDiscOptions fo;
    fo.complete_support = true;
    std::vector<FieldReport> out;
    if (cover_id == "E") {
        auto [a, b] = specialize_E_twins(value);
        CoverSpec const& e2 = catalog().get("E2");
        Rat t = 1 + value * value / 11;
        fo.primes = candidate_primes(e2, t);
        for (auto const& [f, tag] : {std::pair{&a, "+"}, std::pair{&b, "-"}}) {
            FieldReport rep = field_discriminant(f->poly, fo, with_value("E", value) + " twin " + tag);
            attach_verdicts(rep, cover, value, f->poly, opt, "E");
            out.push_back(std::move(rep));
        }
        return out;
    }
    SpecializedField sf = opt.lift ? build_lift(cover_id, value, opt.h_label) : specialize(cover_id, value);
    fo.primes = candidate_primes(cover, value, opt.lift);
    FieldReport rep = field_discriminant(sf.poly, fo, with_value(cover_id, value) + (opt.lift ? " lift" : ""));
    if (!sf.note.empty())
        rep.notes.push_back(sf.note);
    attach_verdicts(rep, cover, value, sf.poly, opt, cover_id);
    out.push_back(std::move(rep));
    return out;
}

} // namespace m12
