#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridmix {

enum class TechClass { FossilThermal, Nuclear, Hydro, Wind, Solar };

std::string to_string(TechClass c);
std::optional<TechClass> tech_class_from_string(const std::string& s);

// RES = hydro + wind + solar; "thermal" aggregates the fossil classes.
inline bool is_res(TechClass c) {
    return c == TechClass::Hydro || c == TechClass::Wind || c == TechClass::Solar;
}

struct TaxPolicy {
    double coal_tax_usd_per_ton{5.3};
    double coal_tax_multiplier{1.0};
    double scc_usd_per_tco2{0.0};
};

// One aggregated plant type. Monetary fields are $/MWh unless noted.
struct TechnologyRecord {
    std::string id;
    TechClass tech_class{TechClass::FossilThermal};
    double alpha{0.0};            // fuel consumption, kg/MWh
    double beta{0.0};             // fuel cost, $/kg (excludes coal tax)
    double gamma{0.0};            // fixed O&M
    double epsilon{0.0};          // variable O&M
    double delta{0.0};            // new-build LCOE, all-in
    double emission_factor{0.0};  // tCO2/MWh
    double existing_capacity_gw{0.0};
    double capacity_factor{1.0};
    double hours_per_year{8760.0};
    std::optional<double> new_potential_twh{};  // absent = may not expand

    bool expandable() const { return new_potential_twh.has_value(); }
};

struct TechCatalog {
    std::vector<TechnologyRecord> records;  // file order
    std::string label;
    std::string currency_year;

    const TechnologyRecord* find(const std::string& id) const;
};

struct DemandSpec {
    double annual_twh{0.0};
    std::string year_label;
};

// Thrown by the loaders with a message naming file position.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Columns exactly:
// id,class,alpha_kg_per_mwh,beta_usd_per_kg,gamma_usd_per_mwh,
// epsilon_usd_per_mwh,delta_usd_per_mwh,emission_t_per_mwh,
// existing_capacity_gw,capacity_factor,hours_per_year,new_potential_twh
// Empty new_potential_twh = technology may not expand.
TechCatalog load_catalog(std::istream& in, std::string label = {},
                         std::string currency_year = {});
std::string serialize_catalog(const TechCatalog& catalog);

// The coal tax is levied per ton of coal burnt; it reaches the model as a
// $/kg fuel surcharge on the coal-fired records.
bool burns_coal(const TechnologyRecord& rec);
double coal_surcharge_usd_per_kg(const TaxPolicy& taxes);

// Per-MWh dispatch cost of an existing plant: alpha*beta' + gamma + epsilon
// + scc*emission_factor, beta' carrying the coal-tax surcharge.
double marginal_cost_existing(const TechnologyRecord& rec, const TaxPolicy& taxes);

// Per-MWh cost of new-build generation. delta is all-in (capex, O&M,
// untaxed fuel), so only the scc charge and the coal-tax surcharge are
// added on top. Throws std::invalid_argument for a non-expandable record.
double marginal_cost_new(const TechnologyRecord& rec, const TaxPolicy& taxes);

// Annual generation available from the existing fleet, MWh.
double existing_generation_cap(const TechnologyRecord& rec);

}  // namespace gridmix
