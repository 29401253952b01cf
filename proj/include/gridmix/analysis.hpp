#pragma once

#include <map>
#include <string>
#include <vector>

#include "gridmix/scenario.hpp"

namespace gridmix {

// Total tCO2 over both vintages, recomputed from the dispatch.
double emissions(const DispatchSolution& solution, const TechCatalog& catalog);

// New-build capacity per expandable technology, GW; 0 for unused ones.
std::map<std::string, double> new_capacity(const DispatchSolution& solution,
                                           const TechCatalog& catalog);

struct SweepResult {
    std::vector<double> factors;  // strictly decreasing from 1.0
    std::vector<DispatchSolution> solutions;  // one per factor
};

// Reruns the 100%-RES case with the offshore-wind and CSP LCOEs scaled by
// each factor. Infeasible points are recorded, not fatal.
SweepResult lcoe_sweep(const TechCatalog& catalog, const DemandSpec& demand,
                       const std::vector<double>& factors);

struct ComparisonRow {
    std::string scenario;
    ClassShares shares;
    double emissions_mt{0.0};
    double cost_musd{0.0};
    double new_res_capacity_gw{0.0};
};

// One row per Optimal solution, input order. Throws on an empty list.
std::vector<ComparisonRow> compare(const std::vector<DispatchSolution>& solutions);

// Report files; numbers carry 6 significant digits.
std::string scenario_csv(const DispatchSolution& solution);
std::string comparison_csv(const std::vector<ComparisonRow>& rows);
std::string sweep_csv(const SweepResult& sweep);

}  // namespace gridmix
