#include "gridmix/analysis.hpp"

#include <sstream>
#include <stdexcept>

#include "gridmix/csv.hpp"

namespace gridmix {

double emissions(const DispatchSolution& solution, const TechCatalog& catalog) {
    double total = 0.0;
    for (const auto& d : solution.dispatch) {
        const auto* rec = catalog.find(d.tech_id);
        if (!rec)
            throw std::invalid_argument("emissions: technology '" + d.tech_id +
                                        "' not in catalog");
        total += rec->emission_factor * (d.existing_mwh + d.new_mwh);
    }
    return total;
}

std::map<std::string, double> new_capacity(const DispatchSolution& solution,
                                           const TechCatalog& catalog) {
    std::map<std::string, double> out;
    for (const auto& d : solution.dispatch) {
        const auto* rec = catalog.find(d.tech_id);
        if (!rec || !rec->expandable()) continue;
        out[d.tech_id] =
            d.new_mwh / (rec->capacity_factor * rec->hours_per_year) / 1e3;
    }
    return out;
}

SweepResult lcoe_sweep(const TechCatalog& catalog, const DemandSpec& demand,
                       const std::vector<double>& factors) {
    if (factors.empty() || factors.front() != 1.0)
        throw std::invalid_argument("lcoe_sweep: factors must start at 1.0");
    for (std::size_t i = 1; i < factors.size(); ++i)
        if (!(factors[i] < factors[i - 1]) || factors[i] <= 0.0)
            throw std::invalid_argument(
                "lcoe_sweep: factors must be strictly decreasing in (0, 1]");

    Scenario res100 = built_in_scenario("res-100");
    SweepResult sweep;
    sweep.factors = factors;
    for (double f : factors) {
        TechCatalog scaled = catalog;
        for (auto& rec : scaled.records)
            if (rec.id == "wind_offshore" || rec.id == "csp") rec.delta *= f;
        sweep.solutions.push_back(run(res100, scaled, demand));
    }
    return sweep;
}

std::vector<ComparisonRow> compare(
    const std::vector<DispatchSolution>& solutions) {
    if (solutions.empty())
        throw std::invalid_argument("compare: no solutions given");
    std::vector<ComparisonRow> rows;
    for (const auto& sol : solutions) {
        if (sol.status != lp::SolveStatus::Optimal) continue;
        ComparisonRow row;
        row.scenario = sol.scenario.name;
        row.shares = sol.shares;
        row.emissions_mt = sol.emissions_t / 1e6;
        row.cost_musd = sol.objective_usd / 1e6;
        for (const auto& d : sol.dispatch)
            if (is_res(d.tech_class)) row.new_res_capacity_gw += d.new_capacity_gw;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string scenario_csv(const DispatchSolution& solution) {
    std::ostringstream os;
    os << "tech,vintage,generation_twh,new_capacity_gw\n";
    for (const auto& d : solution.dispatch) {
        os << d.tech_id << ",existing," << csv::format_number(d.existing_mwh / 1e6)
           << ",0\n";
        os << d.tech_id << ",new," << csv::format_number(d.new_mwh / 1e6) << ','
           << csv::format_number(d.new_capacity_gw) << '\n';
    }
    return os.str();
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::ostringstream os;
    os << "scenario,thermal_share,nuclear_share,hydro_share,wind_share,"
          "solar_share,emissions_mt,cost_musd,new_res_capacity_gw\n";
    for (const auto& r : rows) {
        os << r.scenario << ',' << csv::format_number(r.shares.thermal) << ','
           << csv::format_number(r.shares.nuclear) << ','
           << csv::format_number(r.shares.hydro) << ','
           << csv::format_number(r.shares.wind) << ','
           << csv::format_number(r.shares.solar) << ','
           << csv::format_number(r.emissions_mt) << ','
           << csv::format_number(r.cost_musd) << ','
           << csv::format_number(r.new_res_capacity_gw) << '\n';
    }
    return os.str();
}

std::string sweep_csv(const SweepResult& sweep) {
    std::ostringstream os;
    os << "factor,offshore_share,csp_share,total_cost_musd\n";
    for (std::size_t i = 0; i < sweep.factors.size(); ++i) {
        const auto& sol = sweep.solutions[i];
        os << csv::format_number(sweep.factors[i]) << ',';
        if (sol.status != lp::SolveStatus::Optimal) {
            os << ",,\n";
            continue;
        }
        double offshore = 0.0, csp = 0.0;
        for (const auto& d : sol.dispatch) {
            double gen = d.existing_mwh + d.new_mwh;
            if (d.tech_id == "wind_offshore") offshore = gen;
            if (d.tech_id == "csp") csp = gen;
        }
        double total = sol.total_generation_mwh;
        os << csv::format_number(total > 0 ? offshore / total : 0.0) << ','
           << csv::format_number(total > 0 ? csp / total : 0.0) << ','
           << csv::format_number(sol.objective_usd / 1e6) << '\n';
    }
    return os.str();
}

}  // namespace gridmix
