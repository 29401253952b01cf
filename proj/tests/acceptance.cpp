// Acceptance suite: one line per criterion, non-zero exit on any failure.
// Usage: acceptance [--cli PATH_TO_GRIDMIX_BINARY]

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gridmix/analysis.hpp"
#include "gridmix/catalog.hpp"
#include "gridmix/lp.hpp"
#include "gridmix/lp_oracle.hpp"
#include "gridmix/potential.hpp"
#include "gridmix/scenario.hpp"

namespace fs = std::filesystem;
using namespace gridmix;

namespace {

int failures = 0;

void criterion(int number, const std::string& label,
               const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (exception: ") + e.what() + ")";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": "
              << label << note << '\n';
    if (!ok) ++failures;
}

TechCatalog default_catalog() {
    std::ifstream in(std::string(GRIDMIX_DATA_DIR_PATH) + "/india2030.csv");
    if (!in) throw std::runtime_error("cannot open bundled catalog");
    return load_catalog(in, "india2030");
}

const DemandSpec kDemand{2499.0, "2030"};

bool rel_eq(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

lp::LinearProgram random_lp(std::mt19937& rng) {
    std::uniform_int_distribution<int> nvars(2, 5), nrows(1, 5);
    std::uniform_int_distribution<int> coef(-5, 5), cost(-10, 10), rhs(-20, 20);
    std::uniform_int_distribution<int> sense(0, 2), has_ub(0, 3);
    lp::LinearProgram prog(static_cast<std::size_t>(nvars(rng)));
    for (auto& c : prog.objective) c = cost(rng);
    int rows = nrows(rng);
    for (int r = 0; r < rows; ++r) {
        std::vector<double> a(prog.num_vars);
        for (auto& v : a) v = coef(rng);
        int pick = sense(rng);
        prog.add_constraint(std::move(a),
                            pick == 0   ? lp::Sense::LessEqual
                            : pick == 1 ? lp::Sense::GreaterEqual
                                        : lp::Sense::Equal,
                            rhs(rng));
    }
    for (auto& b : prog.bounds)
        if (has_ub(rng) == 0) b.upper = std::abs(rhs(rng)) + 1.0;
    return prog;
}

bool feasible_within(const lp::LinearProgram& prog, const std::vector<double>& x,
                     double tol) {
    for (std::size_t j = 0; j < prog.num_vars; ++j) {
        if (x[j] < prog.bounds[j].lower -
                       tol * std::max(1.0, std::abs(prog.bounds[j].lower)))
            return false;
        if (prog.bounds[j].upper &&
            x[j] > *prog.bounds[j].upper +
                       tol * std::max(1.0, std::abs(*prog.bounds[j].upper)))
            return false;
    }
    for (const auto& c : prog.constraints) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < prog.num_vars; ++j) lhs += c.coeffs[j] * x[j];
        double slack = tol * std::max(1.0, std::abs(c.rhs));
        if (c.sense == lp::Sense::LessEqual && lhs > c.rhs + slack) return false;
        if (c.sense == lp::Sense::GreaterEqual && lhs < c.rhs - slack) return false;
        if (c.sense == lp::Sense::Equal && std::abs(lhs - c.rhs) > slack)
            return false;
    }
    return true;
}

double tech_gen(const DispatchSolution& s, const std::string& id) {
    for (const auto& d : s.dispatch)
        if (d.tech_id == id) return d.existing_mwh + d.new_mwh;
    return 0.0;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli_path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];

    // 1. solver vs vertex-enumeration oracle on random programs
    criterion(1, "LP oracle equivalence on 100+ random programs", [] {
        auto t0 = std::chrono::steady_clock::now();
        std::mt19937 rng(20260826);
        for (int trial = 0; trial < 120; ++trial) {
            auto prog = random_lp(rng);
            auto got = lp::solve(prog);
            auto want = lp::enumerate_vertices_oracle(prog);
            if (got.status != want.status) return false;
            if (got.status == lp::SolveStatus::Optimal &&
                !rel_eq(got.objective_value, want.objective_value, 1e-8))
                return false;
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0).count();
        return secs < 5.0;
    });

    // 2. all nine scenarios feasible, rows satisfied, demand tight
    criterion(2, "nine scenarios solve; rows within 1e-6; generation = 2499 TWh", [] {
        auto cat = default_catalog();
        for (const auto& name : built_in_scenario_names()) {
            auto scenario = built_in_scenario(name);
            auto model = compile(scenario, cat, kDemand);
            auto res = lp::solve(model.program);
            if (res.status != lp::SolveStatus::Optimal) return false;
            if (!feasible_within(model.program, res.solution, 1e-6)) return false;
            double total = 0.0;
            for (double x : res.solution) total += x;
            if (!rel_eq(total, 2499e6, 1e-6)) return false;
        }
        return true;
    });

    // 3. 100% RES feasible with zero fossil/nuclear; negative control infeasible
    criterion(3, "100%-RES feasibility and forced negative control", [] {
        auto cat = default_catalog();
        auto sol = run(built_in_scenario("res-100"), cat, kDemand);
        if (sol.status != lp::SolveStatus::Optimal) return false;
        for (const auto& d : sol.dispatch)
            if (!is_res(d.tech_class) && d.existing_mwh + d.new_mwh != 0.0)
                return false;

        TechCatalog cut = cat;
        for (auto& rec : cut.records)
            if (rec.new_potential_twh && is_res(rec.tech_class))
                rec.new_potential_twh = *rec.new_potential_twh * 0.05;
        return run(built_in_scenario("res-100"), cut, kDemand).status ==
               lp::SolveStatus::Infeasible;
    });

    // 4. monotone cost and emissions over the share ladder; zero at s = 1
    criterion(4, "share-ladder monotonicity; zero emissions at 100% RES", [] {
        auto cat = default_catalog();
        double prev_obj = -std::numeric_limits<double>::infinity();
        double prev_em = std::numeric_limits<double>::infinity();
        double last_em = -1.0;
        for (const auto& name : {"res-40", "res-60", "res-80", "res-100"}) {
            auto sol = run(built_in_scenario(name), cat, kDemand);
            if (sol.status != lp::SolveStatus::Optimal) return false;
            if (sol.objective_usd < prev_obj - 1e-6 * std::abs(prev_obj))
                return false;
            if (sol.emissions_t > prev_em + 1e-6 * std::max(1.0, prev_em))
                return false;
            prev_obj = sol.objective_usd;
            prev_em = sol.emissions_t;
            last_em = sol.emissions_t;
        }
        return last_em == 0.0;
    });

    // 5. tripled coal tax leaves the generation vector unchanged
    criterion(5, "coal-tax neutrality against BAU", [] {
        auto cat = default_catalog();
        auto bau = run(built_in_scenario("bau"), cat, kDemand);
        auto taxed = run(built_in_scenario("coal-tax-200"), cat, kDemand);
        if (bau.status != lp::SolveStatus::Optimal ||
            taxed.status != lp::SolveStatus::Optimal)
            return false;
        for (std::size_t i = 0; i < bau.dispatch.size(); ++i) {
            if (!rel_eq(taxed.dispatch[i].existing_mwh,
                        bau.dispatch[i].existing_mwh, 1e-9))
                return false;
            if (!rel_eq(taxed.dispatch[i].new_mwh, bau.dispatch[i].new_mwh, 1e-9))
                return false;
        }
        return true;
    });

    // 6. a 20 $/tCO2 social cost of carbon at least halves emissions
    criterion(6, "SCC cuts emissions by at least 50% vs BAU", [] {
        auto cat = default_catalog();
        auto bau = run(built_in_scenario("bau"), cat, kDemand);
        auto scc = run(built_in_scenario("scc-20"), cat, kDemand);
        if (bau.status != lp::SolveStatus::Optimal ||
            scc.status != lp::SolveStatus::Optimal)
            return false;
        return scc.emissions_t <= 0.5 * bau.emissions_t;
    });

    // 7. offshore wind and CSP: absent at full LCOE, maxed out at half
    criterion(7, "LCOE sweep threshold at factor 0.5", [] {
        auto cat = default_catalog();
        auto sweep = lcoe_sweep(cat, kDemand, {1.0, 0.5});
        const auto& full = sweep.solutions[0];
        const auto& half = sweep.solutions[1];
        if (full.status != lp::SolveStatus::Optimal ||
            half.status != lp::SolveStatus::Optimal)
            return false;
        if (tech_gen(full, "wind_offshore") != 0.0) return false;
        if (tech_gen(full, "csp") != 0.0) return false;
        double off_bound = *cat.find("wind_offshore")->new_potential_twh * 1e6;
        double csp_bound = *cat.find("csp")->new_potential_twh * 1e6;
        return tech_gen(half, "wind_offshore") > 0.0 &&
               tech_gen(half, "csp") > 0.0 &&
               rel_eq(tech_gen(half, "wind_offshore"), off_bound, 1e-6) &&
               rel_eq(tech_gen(half, "csp"), csp_bound, 1e-6);
    });

    // 8. capacity arithmetic and round-trip identity
    criterion(8, "new-capacity arithmetic", [] {
        TechnologyRecord rec;
        rec.id = "probe";
        rec.tech_class = TechClass::Wind;
        rec.capacity_factor = 0.25;
        rec.hours_per_year = 8760.0;
        rec.new_potential_twh = 1000.0;
        TechCatalog cat;
        cat.records.push_back(rec);

        DispatchSolution sol;
        TechDispatch d;
        d.tech_id = "probe";
        d.tech_class = TechClass::Wind;
        d.new_mwh = 100e6;  // 100 TWh
        sol.dispatch.push_back(d);
        double gw = new_capacity(sol, cat).at("probe");
        if (std::abs(gw - 45.66) > 0.01) return false;

        // generation -> capacity -> generation
        double back = gw * rec.capacity_factor * rec.hours_per_year * 1e3;
        return std::abs(back - d.new_mwh) <= 1e-12 * d.new_mwh;
    });

    // 9. aggregation conserves leaf sums on a 50-district hierarchy
    criterion(9, "3-level aggregation conservation over 50 districts", [] {
        std::mt19937 rng(99);
        std::uniform_int_distribution<int> mwh(1, 5000000);
        std::vector<PotentialNode> nodes;
        nodes.push_back({"nation", GeoLevel::Nation, "", {}});
        const std::vector<std::string> techs = {"wind_onshore", "solar_pv_ground",
                                                "hydro"};
        std::map<std::string, double> flat;
        int district = 0;
        for (int r = 0; r < 5; ++r) {
            std::string region = "r" + std::to_string(r);
            nodes.push_back({region, GeoLevel::Region, "nation", {}});
            for (int s = 0; s < 2; ++s) {
                std::string state = region + "_s" + std::to_string(s);
                nodes.push_back({state, GeoLevel::State, region, {}});
                for (int d = 0; d < 5; ++d) {
                    PotentialNode n{"d" + std::to_string(district++),
                                    GeoLevel::District, state, {}};
                    for (const auto& t : techs) {
                        double v = mwh(rng);
                        n.potential_mwh[t] = v;
                        flat[t] += v;
                    }
                    nodes.push_back(std::move(n));
                }
            }
        }
        auto h = aggregate(nodes);
        for (const auto& t : techs)
            if (!rel_eq(h.nation().potential_mwh.at(t), flat.at(t), 1e-9))
                return false;
        return true;
    });

    // 10. byte-identical CLI reruns; sub-second batch
    criterion(10, "reproducible CLI output; 9-scenario batch under 1 s", [&] {
        auto cat = default_catalog();
        auto t0 = std::chrono::steady_clock::now();
        for (const auto& name : built_in_scenario_names())
            (void)run(built_in_scenario(name), cat, kDemand);
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0).count();
        if (secs >= 1.0) return false;

        if (cli_path.empty()) {
            std::cout << "  (no --cli given, skipping byte comparison)\n";
            return false;
        }
        fs::path base = fs::temp_directory_path() / "gridmix_acceptance";
        fs::remove_all(base);
        fs::create_directories(base);
        std::string data = GRIDMIX_DATA_DIR_PATH;
        for (const char* tag : {"a", "b"}) {
            std::string cmd = cli_path + " --catalog " + data +
                              "/india2030.csv --scenarios " + data +
                              "/table2.json --out " + (base / tag).string() +
                              " --sweep 1.0,0.9,0.8,0.7,0.6,0.5 > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) return false;
        }
        bool any = false;
        for (const auto& entry : fs::directory_iterator(base / "a")) {
            if (entry.path().extension() != ".csv") continue;
            any = true;
            if (read_file(entry.path()) !=
                read_file(base / "b" / entry.path().filename()))
                return false;
        }
        return any;
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                                : std::to_string(failures) + " CRITERIA FAILED")
              << '\n';
    return failures == 0 ? 0 : 1;
}
