#include "gridmix/scenario.hpp"

#include <istream>
#include <stdexcept>

#include "json.hpp"

namespace gridmix {

namespace {

constexpr double kTwhToMwh = 1e6;

double new_capacity_gw_from_mwh(const TechnologyRecord& rec, double mwh) {
    return mwh / (rec.capacity_factor * rec.hours_per_year) / 1e3;
}

}  // namespace

std::string to_string(ScenarioFamily f) {
    switch (f) {
        case ScenarioFamily::Bau: return "bau";
        case ScenarioFamily::CoalTax: return "coal_tax";
        case ScenarioFamily::ResShareFloor: return "res_share_floor";
        case ScenarioFamily::EmissionCap: return "emission_cap";
        case ScenarioFamily::Scc: return "scc";
        case ScenarioFamily::ResCapacityTarget: return "res_capacity_target";
    }
    return "?";
}

Scenario built_in_scenario(const std::string& name) {
    Scenario s;
    s.name = name;
    if (name == "bau") {
        s.family = ScenarioFamily::Bau;
    } else if (name == "coal-tax-200") {
        // "increased by 200%": base plus twice the base
        s.family = ScenarioFamily::CoalTax;
        s.taxes.coal_tax_multiplier = 3.0;
    } else if (name == "res-40" || name == "res-60" || name == "res-80" ||
               name == "res-100") {
        s.family = ScenarioFamily::ResShareFloor;
        s.res_share = std::stod(name.substr(4)) / 100.0;
    } else if (name == "pledge-2030") {
        s.family = ScenarioFamily::EmissionCap;
        s.reduction_fraction = 0.35;
        // 2005 power-sector emissions are not published with the model
        // inputs; this placeholder is documented in the README and can be
        // overridden via the scenario bundle.
        s.baseline_emissions_t = 800e6;
    } else if (name == "scc-20") {
        s.family = ScenarioFamily::Scc;
        s.taxes.scc_usd_per_tco2 = 20.0;
    } else if (name == "res-450gw") {
        s.family = ScenarioFamily::ResCapacityTarget;
        s.capacity_target_gw = 450.0;
    } else {
        throw std::invalid_argument("unknown built-in scenario '" + name + "'");
    }
    return s;
}

std::vector<std::string> built_in_scenario_names() {
    return {"bau",     "coal-tax-200", "res-40",      "res-60",  "res-80",
            "res-100", "pledge-2030",  "scc-20",      "res-450gw"};
}

std::vector<Scenario> load_scenario_bundle(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario bundle: ") + e.what());
    }
    if (!doc.is_array())
        throw ParseError("scenario bundle: top-level value must be an array");

    std::vector<Scenario> out;
    for (const auto& item : doc) {
        if (item.is_string()) {
            out.push_back(built_in_scenario(item.get<std::string>()));
            continue;
        }
        if (!item.is_object())
            throw ParseError("scenario bundle: entries must be objects or names");

        Scenario s;
        s.name = item.at("name").get<std::string>();
        std::string family = item.at("family").get<std::string>();
        if (family == "bau") {
            s.family = ScenarioFamily::Bau;
        } else if (family == "coal_tax") {
            s.family = ScenarioFamily::CoalTax;
        } else if (family == "res_share_floor") {
            s.family = ScenarioFamily::ResShareFloor;
            s.res_share = item.at("share").get<double>();
            if (s.res_share <= 0.0 || s.res_share > 1.0)
                throw ParseError("scenario '" + s.name + "': share outside (0, 1]");
        } else if (family == "emission_cap") {
            s.family = ScenarioFamily::EmissionCap;
            s.reduction_fraction = item.at("reduction_fraction").get<double>();
            if (s.reduction_fraction <= 0.0 || s.reduction_fraction >= 1.0)
                throw ParseError("scenario '" + s.name +
                                 "': reduction_fraction outside (0, 1)");
            if (item.contains("baseline_emissions_mt"))
                s.baseline_emissions_t =
                    item.at("baseline_emissions_mt").get<double>() * 1e6;
        } else if (family == "scc") {
            s.family = ScenarioFamily::Scc;
        } else if (family == "res_capacity_target") {
            s.family = ScenarioFamily::ResCapacityTarget;
            s.capacity_target_gw = item.at("capacity_target_gw").get<double>();
            if (s.capacity_target_gw <= 0.0)
                throw ParseError("scenario '" + s.name +
                                 "': capacity_target_gw must be > 0");
        } else {
            throw ParseError("scenario '" + s.name + "': unknown family '" +
                             family + "'");
        }

        if (item.contains("taxes")) {
            const auto& t = item.at("taxes");
            if (t.contains("coal_tax_usd_per_ton"))
                s.taxes.coal_tax_usd_per_ton =
                    t.at("coal_tax_usd_per_ton").get<double>();
            if (t.contains("coal_tax_multiplier"))
                s.taxes.coal_tax_multiplier =
                    t.at("coal_tax_multiplier").get<double>();
            if (t.contains("scc_usd_per_tco2"))
                s.taxes.scc_usd_per_tco2 = t.at("scc_usd_per_tco2").get<double>();
            if (s.taxes.coal_tax_usd_per_ton < 0 ||
                s.taxes.coal_tax_multiplier < 0 || s.taxes.scc_usd_per_tco2 < 0)
                throw ParseError("scenario '" + s.name + "': negative tax field");
        }
        if (item.contains("demand_twh")) {
            s.demand_override_twh = item.at("demand_twh").get<double>();
            if (*s.demand_override_twh <= 0.0)
                throw ParseError("scenario '" + s.name + "': demand_twh must be > 0");
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::optional<std::size_t> CompiledModel::column(const std::string& tech_id,
                                                 Vintage vintage) const {
    for (std::size_t j = 0; j < columns.size(); ++j)
        if (columns[j].tech_id == tech_id && columns[j].vintage == vintage)
            return j;
    return std::nullopt;
}

std::vector<lp::Constraint> compile_family(const Scenario& scenario,
                                           const TechCatalog& catalog,
                                           const std::vector<VarKey>& columns) {
    std::vector<lp::Constraint> rows;
    const std::size_t n = columns.size();

    switch (scenario.family) {
        case ScenarioFamily::Bau:
        case ScenarioFamily::CoalTax:
        case ScenarioFamily::Scc:
            break;  // cost-side policies only

        case ScenarioFamily::ResShareFloor: {
            // sum_RES x - s * sum_all x >= 0
            const double s = scenario.res_share;
            lp::Constraint row{std::vector<double>(n, 0.0),
                               lp::Sense::GreaterEqual, 0.0, "res_share_floor"};
            for (std::size_t j = 0; j < n; ++j) {
                const auto* rec = catalog.find(columns[j].tech_id);
                row.coeffs[j] = is_res(rec->tech_class) ? 1.0 - s : -s;
            }
            rows.push_back(std::move(row));
            break;
        }

        case ScenarioFamily::EmissionCap: {
            if (!scenario.baseline_emissions_t)
                throw std::invalid_argument(
                    "scenario '" + scenario.name +
                    "': emission cap requires baseline emissions");
            lp::Constraint row{std::vector<double>(n, 0.0), lp::Sense::LessEqual,
                               (1.0 - scenario.reduction_fraction) *
                                   *scenario.baseline_emissions_t,
                               "emission_cap"};
            for (std::size_t j = 0; j < n; ++j)
                row.coeffs[j] = catalog.find(columns[j].tech_id)->emission_factor;
            rows.push_back(std::move(row));
            break;
        }

        case ScenarioFamily::ResCapacityTarget: {
            // existing capacity counts as installed; new capacity is
            // back-computed from new generation, keeping the row linear.
            double existing_gw = 0.0;
            for (const auto& rec : catalog.records)
                if (is_res(rec.tech_class)) existing_gw += rec.existing_capacity_gw;
            lp::Constraint row{std::vector<double>(n, 0.0),
                               lp::Sense::GreaterEqual,
                               scenario.capacity_target_gw - existing_gw,
                               "res_capacity_target"};
            for (std::size_t j = 0; j < n; ++j) {
                if (columns[j].vintage != Vintage::New) continue;
                const auto* rec = catalog.find(columns[j].tech_id);
                if (is_res(rec->tech_class))
                    row.coeffs[j] =
                        1.0 / (rec->capacity_factor * rec->hours_per_year * 1e3);
            }
            rows.push_back(std::move(row));
            break;
        }
    }
    return rows;
}

CompiledModel compile(const Scenario& scenario, const TechCatalog& catalog,
                      const DemandSpec& demand) {
    double demand_twh = scenario.demand_override_twh.value_or(demand.annual_twh);
    if (demand_twh <= 0.0)
        throw std::invalid_argument("compile: demand must be > 0");

    CompiledModel model;
    model.scenario = scenario;
    for (const auto& rec : catalog.records) {
        model.columns.push_back({rec.id, Vintage::Existing});
        if (rec.expandable()) model.columns.push_back({rec.id, Vintage::New});
    }

    const std::size_t n = model.columns.size();
    lp::LinearProgram prog(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto* rec = catalog.find(model.columns[j].tech_id);
        if (model.columns[j].vintage == Vintage::Existing) {
            prog.objective[j] = marginal_cost_existing(*rec, scenario.taxes);
            prog.bounds[j].upper = existing_generation_cap(*rec);
        } else {
            prog.objective[j] = marginal_cost_new(*rec, scenario.taxes);
            prog.bounds[j].upper = *rec->new_potential_twh * kTwhToMwh;
        }
    }
    prog.add_constraint(std::vector<double>(n, 1.0), lp::Sense::GreaterEqual,
                        demand_twh * kTwhToMwh, "demand");
    for (auto& row : compile_family(scenario, catalog, model.columns))
        prog.constraints.push_back(std::move(row));

    model.program = std::move(prog);
    return model;
}

DispatchSolution run(const Scenario& scenario, const TechCatalog& catalog,
                     const DemandSpec& demand) {
    CompiledModel model = compile(scenario, catalog, demand);
    lp::SolveResult res = lp::solve(model.program);

    DispatchSolution sol;
    sol.scenario = scenario;
    sol.status = res.status;

    if (res.status == lp::SolveStatus::Infeasible) {
        // Blame the policy row when the model without it is feasible.
        if (model.program.constraints.size() > 1) {
            lp::LinearProgram relaxed = model.program;
            std::string policy = relaxed.constraints.back().name;
            relaxed.constraints.pop_back();
            if (lp::solve(relaxed).status != lp::SolveStatus::Infeasible)
                sol.infeasible_row = policy;
        }
        return sol;
    }
    if (res.status != lp::SolveStatus::Optimal) return sol;

    sol.objective_usd = res.objective_value;
    for (const auto& rec : catalog.records) {
        TechDispatch d;
        d.tech_id = rec.id;
        d.tech_class = rec.tech_class;
        if (auto j = model.column(rec.id, Vintage::Existing))
            d.existing_mwh = res.solution[*j];
        if (auto j = model.column(rec.id, Vintage::New)) {
            d.new_mwh = res.solution[*j];
            d.new_capacity_gw = new_capacity_gw_from_mwh(rec, d.new_mwh);
        }
        double gen = d.existing_mwh + d.new_mwh;
        sol.total_generation_mwh += gen;
        sol.emissions_t += rec.emission_factor * gen;
        sol.dispatch.push_back(std::move(d));
    }
    if (sol.total_generation_mwh > 0.0) {
        for (const auto& d : sol.dispatch) {
            double share =
                (d.existing_mwh + d.new_mwh) / sol.total_generation_mwh;
            switch (d.tech_class) {
                case TechClass::FossilThermal: sol.shares.thermal += share; break;
                case TechClass::Nuclear: sol.shares.nuclear += share; break;
                case TechClass::Hydro: sol.shares.hydro += share; break;
                case TechClass::Wind: sol.shares.wind += share; break;
                case TechClass::Solar: sol.shares.solar += share; break;
            }
        }
    }
    return sol;
}

}  // namespace gridmix
