#include "gridmix/catalog.hpp"

#include <cmath>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gridmix/csv.hpp"

namespace gridmix {

namespace {

const char* kHeader =
    "id,class,alpha_kg_per_mwh,beta_usd_per_kg,gamma_usd_per_mwh,"
    "epsilon_usd_per_mwh,delta_usd_per_mwh,emission_t_per_mwh,"
    "existing_capacity_gw,capacity_factor,hours_per_year,new_potential_twh";

[[noreturn]] void parse_fail(std::size_t line, const std::string& column,
                             const std::string& what) {
    throw ParseError("catalog line " + std::to_string(line) + ", column '" +
                     column + "': " + what);
}

double require_number(const std::string& cell, std::size_t line,
                      const std::string& column, bool non_negative = true) {
    auto v = csv::parse_number(cell);
    if (!v) parse_fail(line, column, "expected a number, got '" + cell + "'");
    if (non_negative && *v < 0)
        parse_fail(line, column, "negative value " + cell);
    return *v;
}

}  // namespace

std::string to_string(TechClass c) {
    switch (c) {
        case TechClass::FossilThermal: return "fossil_thermal";
        case TechClass::Nuclear: return "nuclear";
        case TechClass::Hydro: return "hydro";
        case TechClass::Wind: return "wind";
        case TechClass::Solar: return "solar";
    }
    return "?";
}

std::optional<TechClass> tech_class_from_string(const std::string& s) {
    if (s == "fossil_thermal") return TechClass::FossilThermal;
    if (s == "nuclear") return TechClass::Nuclear;
    if (s == "hydro") return TechClass::Hydro;
    if (s == "wind") return TechClass::Wind;
    if (s == "solar") return TechClass::Solar;
    return std::nullopt;
}

const TechnologyRecord* TechCatalog::find(const std::string& id) const {
    for (const auto& r : records)
        if (r.id == id) return &r;
    return nullptr;
}

TechCatalog load_catalog(std::istream& in, std::string label,
                         std::string currency_year) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("catalog: empty input");
    if (csv::trim(line) != kHeader)
        throw ParseError("catalog line 1: header must be exactly '" +
                         std::string(kHeader) + "'");

    TechCatalog catalog;
    catalog.label = std::move(label);
    catalog.currency_year = std::move(currency_year);

    std::set<std::string> seen;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (csv::trim(line).empty()) continue;
        auto cells = csv::split(csv::trim(line));
        if (cells.size() != 12)
            throw ParseError("catalog line " + std::to_string(lineno) +
                             ": expected 12 columns, got " +
                             std::to_string(cells.size()));

        TechnologyRecord r;
        r.id = csv::trim(cells[0]);
        if (r.id.empty()) parse_fail(lineno, "id", "empty id");
        if (!seen.insert(r.id).second)
            parse_fail(lineno, "id", "duplicate id '" + r.id + "'");

        auto cls = tech_class_from_string(csv::trim(cells[1]));
        if (!cls) parse_fail(lineno, "class", "unknown class '" + cells[1] + "'");
        r.tech_class = *cls;

        r.alpha = require_number(cells[2], lineno, "alpha_kg_per_mwh");
        r.beta = require_number(cells[3], lineno, "beta_usd_per_kg");
        r.gamma = require_number(cells[4], lineno, "gamma_usd_per_mwh");
        r.epsilon = require_number(cells[5], lineno, "epsilon_usd_per_mwh");
        r.delta = require_number(cells[6], lineno, "delta_usd_per_mwh");
        r.emission_factor = require_number(cells[7], lineno, "emission_t_per_mwh");
        r.existing_capacity_gw =
            require_number(cells[8], lineno, "existing_capacity_gw");
        r.capacity_factor = require_number(cells[9], lineno, "capacity_factor");
        r.hours_per_year = require_number(cells[10], lineno, "hours_per_year");
        if (!csv::trim(cells[11]).empty())
            r.new_potential_twh =
                require_number(cells[11], lineno, "new_potential_twh");

        if (r.capacity_factor <= 0.0 || r.capacity_factor > 1.0)
            parse_fail(lineno, "capacity_factor", "must be in (0, 1]");
        if (r.hours_per_year <= 0.0 || r.hours_per_year > 8760.0)
            parse_fail(lineno, "hours_per_year", "must be in (0, 8760]");
        if (r.tech_class != TechClass::FossilThermal &&
            r.tech_class != TechClass::Nuclear && r.alpha * r.beta != 0.0)
            parse_fail(lineno, "alpha_kg_per_mwh",
                       "non-fuel technology must have alpha*beta = 0");
        if (r.tech_class != TechClass::FossilThermal && r.emission_factor != 0.0)
            parse_fail(lineno, "emission_t_per_mwh",
                       "emission factor must be 0 for class " +
                           to_string(r.tech_class));

        catalog.records.push_back(std::move(r));
    }
    if (catalog.records.empty()) throw ParseError("catalog: no data rows");
    return catalog;
}

std::string serialize_catalog(const TechCatalog& catalog) {
    std::ostringstream os;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    os << kHeader << '\n';
    for (const auto& r : catalog.records) {
        os << r.id << ',' << to_string(r.tech_class) << ',' << num(r.alpha)
           << ',' << num(r.beta) << ',' << num(r.gamma) << ',' << num(r.epsilon)
           << ',' << num(r.delta) << ',' << num(r.emission_factor) << ','
           << num(r.existing_capacity_gw) << ',' << num(r.capacity_factor)
           << ',' << num(r.hours_per_year) << ','
           << (r.new_potential_twh ? num(*r.new_potential_twh) : std::string())
           << '\n';
    }
    return os.str();
}

bool burns_coal(const TechnologyRecord& rec) {
    return rec.id == "coal" || rec.id == "lignite";
}

double coal_surcharge_usd_per_kg(const TaxPolicy& taxes) {
    // $/ton -> $/kg
    return taxes.coal_tax_usd_per_ton * taxes.coal_tax_multiplier / 1000.0;
}

double marginal_cost_existing(const TechnologyRecord& rec,
                              const TaxPolicy& taxes) {
    double beta_eff =
        rec.beta + (burns_coal(rec) ? coal_surcharge_usd_per_kg(taxes) : 0.0);
    double epsilon_eff =
        rec.epsilon + taxes.scc_usd_per_tco2 * rec.emission_factor;
    return rec.alpha * beta_eff + rec.gamma + epsilon_eff;
}

double marginal_cost_new(const TechnologyRecord& rec, const TaxPolicy& taxes) {
    if (!rec.expandable())
        throw std::invalid_argument("marginal_cost_new: '" + rec.id +
                                    "' may not expand");
    double cost = rec.delta + taxes.scc_usd_per_tco2 * rec.emission_factor;
    if (burns_coal(rec)) cost += rec.alpha * coal_surcharge_usd_per_kg(taxes);
    return cost;
}

double existing_generation_cap(const TechnologyRecord& rec) {
    return rec.existing_capacity_gw * 1e3 * rec.capacity_factor *
           rec.hours_per_year;
}

}  // namespace gridmix
