#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridmix/catalog.hpp"
#include "gridmix/lp.hpp"

namespace gridmix {

enum class ScenarioFamily {
    Bau,
    CoalTax,
    ResShareFloor,
    EmissionCap,
    Scc,
    ResCapacityTarget,
};

std::string to_string(ScenarioFamily f);

// One policy case. Scenarios are addressed by name throughout; the
// published numbering is inconsistent with its own prose.
struct Scenario {
    std::string name;
    ScenarioFamily family{ScenarioFamily::Bau};
    double res_share{0.0};               // ResShareFloor, in (0, 1]
    double reduction_fraction{0.0};      // EmissionCap, in (0, 1)
    std::optional<double> baseline_emissions_t{};  // EmissionCap reference year
    double capacity_target_gw{0.0};      // ResCapacityTarget
    TaxPolicy taxes{};
    std::optional<double> demand_override_twh{};
};

// Built-in cases: "bau", "coal-tax-200", "res-40", "res-60", "res-80",
// "res-100", "pledge-2030", "scc-20", "res-450gw".
Scenario built_in_scenario(const std::string& name);
std::vector<std::string> built_in_scenario_names();

// JSON bundle: [{name, family, ...params, taxes, demand_twh}, ...].
std::vector<Scenario> load_scenario_bundle(std::istream& in);

enum class Vintage { Existing, New };

struct VarKey {
    std::string tech_id;
    Vintage vintage{Vintage::Existing};
};

struct CompiledModel {
    lp::LinearProgram program;
    std::vector<VarKey> columns;  // column index -> (tech, vintage)
    Scenario scenario;

    std::optional<std::size_t> column(const std::string& tech_id,
                                      Vintage vintage) const;
};

// Policy rows beyond demand and the per-technology generation caps.
// BAU / CoalTax / SCC act through costs only and add nothing.
std::vector<lp::Constraint> compile_family(const Scenario& scenario,
                                           const TechCatalog& catalog,
                                           const std::vector<VarKey>& columns);

// Assembles the full program: cost coefficients under the scenario taxes,
// one demand row, per-variable generation bounds, family rows.
CompiledModel compile(const Scenario& scenario, const TechCatalog& catalog,
                      const DemandSpec& demand);

struct ClassShares {
    double thermal{0.0};
    double nuclear{0.0};
    double hydro{0.0};
    double wind{0.0};
    double solar{0.0};
};

struct TechDispatch {
    std::string tech_id;
    TechClass tech_class{TechClass::FossilThermal};
    double existing_mwh{0.0};
    double new_mwh{0.0};
    double new_capacity_gw{0.0};
};

struct DispatchSolution {
    Scenario scenario;
    lp::SolveStatus status{lp::SolveStatus::Infeasible};
    std::string infeasible_row;  // named binding policy row, when identified
    std::vector<TechDispatch> dispatch;  // catalog order
    double objective_usd{0.0};
    double total_generation_mwh{0.0};
    double emissions_t{0.0};
    ClassShares shares{};
};

// compile + solve + map columns back to technologies. Infeasibility is a
// result, not a fault.
DispatchSolution run(const Scenario& scenario, const TechCatalog& catalog,
                     const DemandSpec& demand);

}  // namespace gridmix
