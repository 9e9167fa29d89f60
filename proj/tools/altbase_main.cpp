// altbase: command-line front end for the exact alternate-base toolkit.
//
// Subcommands: expand, orbit, partition, density, compare, search,
// simulate, ulam. All output is JSON ("schema": 1) on stdout; density,
// simulate and ulam also take --csv. Exact values are printed as
// FieldElem strings ("num/den", "(a+b*sqrt(D))/c"), never as decimals;
// floating-point results are tagged approximate.
//
// Exit status: 0 success, 2 argument/parse error, 3 domain error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "altbase/density.hpp"
#include "altbase/empirics.hpp"
#include "altbase/expansions.hpp"
#include "altbase/measures.hpp"
#include "altbase/orbits.hpp"

using json = nlohmann::ordered_json;
using namespace altbase;

namespace {

std::vector<FieldElem> parse_factor_list(const std::string& csv) {
    std::vector<FieldElem> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t depth = 0, i = pos;
        for (; i < csv.size(); ++i) {
            if (csv[i] == '(') ++depth;
            if (csv[i] == ')' && depth > 0) --depth;
            if (csv[i] == ',' && depth == 0) break;
        }
        out.push_back(FieldElem::parse(csv.substr(pos, i - pos)));
        if (i >= csv.size()) break;
        pos = i + 1;
    }
    return out;
}

// Map descriptor: "comp:f1,f2,..." composes the factors in application
// order (f1 first), so comp:4/3,3/2 is T_{3/2} after T_{4/3}. A bare
// FieldElem literal denotes the single beta-transformation.
PiecewiseAffineMap parse_map(const std::string& desc) {
    if (desc.rfind("comp:", 0) == 0) {
        return PiecewiseAffineMap::compose(parse_factor_list(desc.substr(5)));
    }
    return PiecewiseAffineMap::beta_map(FieldElem::parse(desc));
}

json fn_to_json(const PiecewiseConstantFn& f) {
    json bps = json::array(), vals = json::array();
    for (const auto& b : f.breakpoints) bps.push_back(b.str());
    for (const auto& v : f.values) vals.push_back(v.str());
    return json{{"breakpoints", bps}, {"values", vals}};
}

void fn_to_csv(const PiecewiseConstantFn& f, std::ostream& os) {
    os << "lo,hi,value\n";
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        os << f.breakpoints[i].str() << "," << f.breakpoints[i + 1].str() << ","
           << f.values[i].str() << "\n";
    }
}

json histogram_to_json(const Histogram& h) {
    json heights = json::array();
    for (double v : h.heights) heights.push_back(v);
    return json{{"bins", h.bins},
                {"samples", h.samples},
                {"approximate", true},
                {"heights", heights}};
}

void histogram_to_csv(const Histogram& h, std::ostream& os) {
    os << "bin_lo,bin_hi,height\n";
    for (int i = 0; i < h.bins; ++i) {
        os << static_cast<double>(i) / h.bins << "," << static_cast<double>(i + 1) / h.bins
           << "," << h.heights[i] << "\n";
    }
}

const char* status_name(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::Terminated: return "Terminated";
        case OrbitStatus::EventuallyPeriodic: return "EventuallyPeriodic";
        case OrbitStatus::DiagnosedInfinite: return "DiagnosedInfinite";
        case OrbitStatus::Truncated: return "Truncated";
    }
    return "Unknown";
}

const char* reason_name(VerdictReason r) {
    return r == VerdictReason::ClosedForm ? "ClosedForm" : "ExactDensityComparison";
}

json verdict_to_json(const CoincidenceVerdict& v) {
    json out{{"equal", v.equal}, {"reason", reason_name(v.reason)}};
    if (v.witness) {
        out["witness"] = json{{"level", v.witness->level},
                              {"point", v.witness->point.str()},
                              {"lhs", v.witness->lhs.str()},
                              {"rhs", v.witness->rhs.str()}};
    }
    return out;
}

void emit(const json& body) {
    json out{{"schema", 1}};
    out.update(body);
    std::cout << out.dump(2) << "\n";
}

// (base, second) pair "7/3,3": a non-integer second element routes the
// comparison through the general exact path.
struct Pair {
    FieldElem base;
    std::optional<long> n;  // set when the second element is an integer
    FieldElem second;
};

Pair parse_pair(const std::string& text) {
    auto fs = parse_factor_list(text);
    if (fs.size() != 2) throw Error(ErrorCode::ParseError, "expected base,second: " + text);
    Pair p{fs[0], std::nullopt, fs[1]};
    if (fs[1].is_rational() && fs[1].rat().get_den() == 1 && fs[1].rat().get_num().fits_slong_p())
        p.n = fs[1].rat().get_num().get_si();
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact alternate-base transformations: expansions, orbits, densities"};
    app.require_subcommand(1);

    std::string map_desc, point_text = "one", bases_text, method = "solve";
    std::string pair_text, pair2_text;
    std::string beta_text;
    int digits = 20, rank = 1, max_rank = 30, max_iter = 1000;
    int bins = 300, cells = 1000, jobs = 1;
    long p_arg = 0, q_arg = 0, k_arg = 1;
    long pmax = 7, denmax = 4, nmax = 8;
    long long iterations = 1000000, burn_in = 1000;
    std::uint64_t seed = 0;
    std::string x0_text;
    bool csv = false;

    auto* expand = app.add_subcommand("expand", "Greedy digits of x in an alternate base");
    expand->add_option("--bases", bases_text, "comma list of bases, applied cyclically")
        ->required();
    expand->add_option("--point", point_text, "point in [0,1)")->required();
    expand->add_option("--digits", digits, "number of digits");

    auto* orbit = app.add_subcommand("orbit", "Classify the forward orbit of a point");
    orbit->add_option("--map", map_desc, "map descriptor (comp:f1,f2,... or a base)")
        ->required();
    orbit->add_option("--point", point_text, "seed in [0,1), or 'one' for the left limit at 1");
    orbit->add_option("--max-iter", max_iter, "iteration cap");

    auto* partition = app.add_subcommand("partition", "Rank-k fundamental intervals and D_k");
    partition->add_option("--map", map_desc)->required();
    partition->add_option("--rank", rank, "refinement rank");

    auto* density = app.add_subcommand("density", "Exact invariant density");
    density->add_option("--map", map_desc);
    density->add_option("--method", method)
        ->check(CLI::IsMember({"solve", "dk10", "closed", "rp"}));
    density->add_option("--max-rank", max_rank, "series truncation for dk10/rp");
    density->add_option("--p", p_arg, "closed form: numerator of beta");
    density->add_option("--q", q_arg, "closed form: denominator of beta");
    density->add_option("--k", k_arg, "closed form: second base = k*q");
    density->add_option("--beta", beta_text, "rp: classical single base");
    density->add_flag("--csv", csv, "emit the step function as CSV");

    auto* compare = app.add_subcommand("compare", "Decide measure coincidence of two systems");
    compare->add_option("--pair", pair_text, "first system as base,second")->required();
    compare->add_option("--pair2", pair2_text, "second system as base,second")->required();

    auto* search = app.add_subcommand("search", "Enumerate coincidences among period-2 systems");
    search->add_option("--pmax", pmax, "max numerator of the first base");
    search->add_option("--denmax", denmax, "max denominator of the first base");
    search->add_option("--nmax", nmax, "max integer second base");
    search->add_option("--jobs", jobs, "worker threads");

    auto* simulate = app.add_subcommand("simulate", "Birkhoff histogram of a float trajectory");
    simulate->add_option("--map", map_desc)->required();
    simulate->add_option("--iterations", iterations);
    simulate->add_option("--bins", bins);
    simulate->add_option("--burn-in", burn_in);
    simulate->add_option("--seed", seed, "RNG seed for the starting point");
    simulate->add_option("--x0", x0_text, "explicit starting point (decimal)");
    simulate->add_flag("--csv", csv);

    auto* ulam = app.add_subcommand("ulam", "Ulam discretization of the transfer operator");
    ulam->add_option("--map", map_desc)->required();
    ulam->add_option("--cells", cells);
    ulam->add_flag("--csv", csv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (expand->parsed()) {
            AltBaseSystem sys{parse_factor_list(bases_text)};
            FieldElem x = FieldElem::parse(point_text);
            DigitString ds = greedy_digits(sys, x, digits);
            Reconstruction rec = reconstruct(ds);
            json darr = json::array();
            for (const auto& d : ds.digits) darr.push_back(d.get_str());
            emit({{"command", "expand"},
                  {"digits", darr},
                  {"value", rec.value.str()},
                  {"error_bound", FieldElem(rec.error_bound).str()}});
        } else if (orbit->parsed()) {
            PiecewiseAffineMap map = parse_map(map_desc);
            OrbitOptions opts;
            opts.max_iter = max_iter;
            opts.max_denominator_bits = default_max_denominator_bits();
            OrbitReport rep = point_text == "one"
                                  ? orbit_of_one(map, opts)
                                  : orbit_of_point(map, FieldElem::parse(point_text), opts);
            json pts = json::array();
            for (const auto& p : rep.points) pts.push_back(p.str());
            json out{{"command", "orbit"}, {"status", status_name(rep.status)}, {"points", pts}};
            if (rep.status == OrbitStatus::EventuallyPeriodic) {
                out["preperiod"] = rep.preperiod;
                out["period"] = rep.period;
            }
            if (rep.reason) {
                out["reason"] = *rep.reason == InfiniteReason::DenominatorBlowup
                                    ? "DenominatorBlowup"
                                    : "DenominatorGrowth";
            }
            if (rep.z) out["z"] = rep.z->get_str();
            emit(out);
        } else if (partition->parsed()) {
            PiecewiseAffineMap map = parse_map(map_desc);
            Refinement ref = refine(map, rank);
            auto dump = [](const std::vector<FundamentalInterval>& v) {
                json arr = json::array();
                for (const auto& iv : v) {
                    arr.push_back(json{{"lo", iv.lo.str()},
                                       {"hi", iv.hi.str()},
                                       {"rank", iv.rank},
                                       {"image_hi", iv.image_hi.str()},
                                       {"full", iv.full}});
                }
                return arr;
            };
            emit({{"command", "partition"},
                  {"slope", map.slope().str()},
                  {"intervals", dump(ref.intervals)},
                  {"dk", dump(ref.dk)}});
        } else if (density->parsed()) {
            PiecewiseConstantFn f;
            bool exact = true;
            std::string tail;
            if (method == "closed") {
                f = closed_form_density(p_arg, q_arg, k_arg);
            } else if (method == "rp") {
                if (beta_text.empty())
                    throw Error(ErrorCode::ParseError, "rp method requires --beta");
                auto rp = renyi_parry_density(FieldElem::parse(beta_text), max_rank);
                f = rp.f;
                exact = rp.exact;
            } else if (method == "dk10") {
                auto dk = dk10_density(parse_map(map_desc), max_rank);
                f = dk.f;
                exact = dk.exact;
                if (!dk.exact) tail = FieldElem(dk.tail).str();
            } else {
                f = solve_density_exact(parse_map(map_desc));
            }
            if (csv) {
                fn_to_csv(f, std::cout);
            } else {
                json out{{"command", "density"}, {"method", method}, {"exact", exact}};
                out.update(fn_to_json(f));
                if (!tail.empty()) out["tail_bound"] = tail;
                emit(out);
            }
        } else if (compare->parsed()) {
            Pair a = parse_pair(pair_text), b = parse_pair(pair2_text);
            json out{{"command", "compare"}};
            if (a.n && b.n) {
                CoincidenceVerdict closed =
                    decide_coincidence_closed_form(a.base, *a.n, b.base, *b.n);
                out.update(verdict_to_json(closed));
                try {
                    CoincidenceVerdict ex = decide_coincidence_exact(a.base, *a.n, b.base, *b.n);
                    if (ex.equal != closed.equal)
                        throw Error(ErrorCode::Internal, "exact and closed-form verdicts differ");
                    out["exact_checked"] = true;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::OrbitNotFinite) throw;
                    out["exact_checked"] = false;
                }
            } else {
                out.update(verdict_to_json(
                    compare_general_pair(a.base, a.second, b.base, b.second)));
                out["exact_checked"] = true;
            }
            emit(out);
        } else if (search->parsed()) {
            auto groups = coincidence_search(pmax, denmax, nmax, jobs);
            json garr = json::array();
            for (const auto& g : groups) {
                json systems = json::array();
                for (const auto& s : g)
                    systems.push_back(json::array({s.base1.str(), s.base2.str()}));
                garr.push_back(systems);
            }
            emit({{"command", "search"}, {"groups", garr}});
        } else if (simulate->parsed()) {
            PiecewiseAffineMap map = parse_map(map_desc);
            std::optional<double> x0;
            if (!x0_text.empty()) x0 = std::stod(x0_text);
            Histogram h = birkhoff_histogram(map, x0, iterations, bins, burn_in, seed);
            if (csv) {
                histogram_to_csv(h, std::cout);
            } else {
                json out{{"command", "simulate"}, {"seed", seed}};
                out.update(histogram_to_json(h));
                emit(out);
            }
        } else if (ulam->parsed()) {
            Histogram h = ulam_density(parse_map(map_desc), cells);
            if (csv) {
                histogram_to_csv(h, std::cout);
            } else {
                json out{{"command", "ulam"}};
                out.update(histogram_to_json(h));
                emit(out);
            }
        }
    } catch (const Error& e) {
        std::cerr << json{{"schema", 1},
                          {"error", error_code_name(e.code())},
                          {"message", e.what()}}
                         .dump()
                  << "\n";
        return e.code() == ErrorCode::ParseError ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << json{{"schema", 1}, {"error", "Internal"}, {"message", e.what()}}.dump()
                  << "\n";
        return 3;
    }
    return 0;
}
