#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gridmix/catalog.hpp"

namespace gridmix {

enum class GeoLevel { District, State, Region, Nation };

std::string to_string(GeoLevel level);
std::optional<GeoLevel> geo_level_from_string(const std::string& s);

// One geographic unit; potentials are MWh/year per technology id.
struct PotentialNode {
    std::string id;
    GeoLevel level{GeoLevel::District};
    std::string parent;  // empty for the nation node
    std::map<std::string, double> potential_mwh;
};

struct HourlyTrace {
    std::string tech_id;
    std::string unit_id;
    std::vector<double> values_mwh;  // exactly 8760 entries
};

struct PotentialHierarchy {
    std::vector<PotentialNode> nodes;  // input order, parents filled
    const PotentialNode& nation() const;
};

// regional_cf * sum of hourly values, summed in index order.
// Throws std::invalid_argument on a wrong-length trace or cf outside (0,1].
double annualize(const HourlyTrace& trace, double regional_cf);

// Fills every parent's per-technology potential with the exact sum of its
// children (children taken in sorted-id order, so the result is independent
// of input node order). Errors: duplicate id, orphan or wrong-level parent,
// zero or multiple nation nodes.
PotentialHierarchy aggregate(const std::vector<PotentialNode>& nodes);

// Explored fraction per class: existing annual generation capability
// divided by (existing + new potential). Classes absent from the nation
// node are skipped; a class with zero total is an error.
std::map<TechClass, double> utilization_report(const PotentialNode& nation,
                                               const TechCatalog& catalog);

// Annual schema: unit_id,level,parent_id,tech_id,annual_potential_twh
// (a row with empty tech_id declares an interior node).
std::vector<PotentialNode> load_potential_csv(std::istream& in);

// Hourly schema: unit_id,tech_id,h0001..h8760
std::vector<HourlyTrace> load_hourly_csv(std::istream& in);

// Nation-level potentials in the catalog's units (TWh).
std::string serialize_nation_csv(const PotentialNode& nation);

}  // namespace gridmix
