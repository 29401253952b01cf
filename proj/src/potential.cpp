#include "gridmix/potential.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gridmix/csv.hpp"

namespace gridmix {

std::string to_string(GeoLevel level) {
    switch (level) {
        case GeoLevel::District: return "district";
        case GeoLevel::State: return "state";
        case GeoLevel::Region: return "region";
        case GeoLevel::Nation: return "nation";
    }
    return "?";
}

std::optional<GeoLevel> geo_level_from_string(const std::string& s) {
    if (s == "district") return GeoLevel::District;
    if (s == "state") return GeoLevel::State;
    if (s == "region") return GeoLevel::Region;
    if (s == "nation") return GeoLevel::Nation;
    return std::nullopt;
}

const PotentialNode& PotentialHierarchy::nation() const {
    for (const auto& n : nodes)
        if (n.level == GeoLevel::Nation) return n;
    throw std::logic_error("hierarchy has no nation node");
}

double annualize(const HourlyTrace& trace, double regional_cf) {
    if (trace.values_mwh.size() != 8760)
        throw std::invalid_argument(
            "annualize: trace '" + trace.unit_id + "/" + trace.tech_id +
            "' has " + std::to_string(trace.values_mwh.size()) +
            " values, expected 8760");
    if (regional_cf <= 0.0 || regional_cf > 1.0)
        throw std::invalid_argument("annualize: regional capacity factor " +
                                    std::to_string(regional_cf) +
                                    " outside (0, 1]");
    double sum = 0.0;
    for (double v : trace.values_mwh) {
        if (v < 0.0)
            throw std::invalid_argument("annualize: negative hourly value");
        sum += v;
    }
    return regional_cf * sum;
}

namespace {

GeoLevel parent_level(GeoLevel level) {
    switch (level) {
        case GeoLevel::District: return GeoLevel::State;
        case GeoLevel::State: return GeoLevel::Region;
        case GeoLevel::Region: return GeoLevel::Nation;
        case GeoLevel::Nation: break;
    }
    throw std::logic_error("nation has no parent");
}

}  // namespace

PotentialHierarchy aggregate(const std::vector<PotentialNode>& nodes) {
    PotentialHierarchy h;
    h.nodes = nodes;

    std::map<std::string, std::size_t> by_id;
    std::size_t nations = 0;
    for (std::size_t i = 0; i < h.nodes.size(); ++i) {
        const auto& n = h.nodes[i];
        if (!by_id.emplace(n.id, i).second)
            throw std::invalid_argument("aggregate: duplicate unit id '" +
                                        n.id + "'");
        if (n.level == GeoLevel::Nation) {
            ++nations;
            if (!n.parent.empty())
                throw std::invalid_argument(
                    "aggregate: nation node '" + n.id + "' has a parent");
        }
        for (const auto& [tech, mwh] : n.potential_mwh)
            if (mwh < 0.0)
                throw std::invalid_argument("aggregate: negative potential for '" +
                                            n.id + "/" + tech + "'");
    }
    if (nations != 1)
        throw std::invalid_argument("aggregate: expected exactly one nation node, got " +
                                    std::to_string(nations));

    // children in sorted-id order per parent, for order independence
    std::map<std::string, std::vector<std::string>> children;
    for (const auto& n : h.nodes) {
        if (n.level == GeoLevel::Nation) continue;
        auto it = by_id.find(n.parent);
        if (it == by_id.end())
            throw std::invalid_argument("aggregate: node '" + n.id +
                                        "' has unknown parent '" + n.parent + "'");
        if (h.nodes[it->second].level != parent_level(n.level))
            throw std::invalid_argument(
                "aggregate: node '" + n.id + "' (" + to_string(n.level) +
                ") has parent '" + n.parent + "' of level " +
                to_string(h.nodes[it->second].level) +
                ", expected " + to_string(parent_level(n.level)));
        children[n.parent].push_back(n.id);
    }

    auto sum_level = [&](GeoLevel parent) {
        for (auto& n : h.nodes) {
            if (n.level != parent) continue;
            auto it = children.find(n.id);
            n.potential_mwh.clear();
            if (it == children.end()) continue;
            std::vector<std::string> kids = it->second;
            std::sort(kids.begin(), kids.end());
            for (const auto& kid : kids)
                for (const auto& [tech, mwh] :
                     h.nodes[by_id.at(kid)].potential_mwh)
                    n.potential_mwh[tech] += mwh;
        }
    };
    sum_level(GeoLevel::State);
    sum_level(GeoLevel::Region);
    sum_level(GeoLevel::Nation);
    return h;
}

std::map<TechClass, double> utilization_report(const PotentialNode& nation,
                                               const TechCatalog& catalog) {
    std::map<TechClass, double> new_potential;
    for (const auto& [tech, mwh] : nation.potential_mwh) {
        const TechnologyRecord* rec = catalog.find(tech);
        if (!rec)
            throw std::invalid_argument("utilization_report: technology '" +
                                        tech + "' not in catalog");
        new_potential[rec->tech_class] += mwh;
    }

    std::map<TechClass, double> out;
    for (const auto& [cls, pot] : new_potential) {
        double existing = 0.0;
        for (const auto& rec : catalog.records)
            if (rec.tech_class == cls) existing += existing_generation_cap(rec);
        double total = existing + pot;
        if (total <= 0.0)
            throw std::invalid_argument("utilization_report: zero total potential for class " +
                                        to_string(cls));
        out[cls] = (existing == 0.0) ? 0.0 : existing / total;
    }
    return out;
}

std::vector<PotentialNode> load_potential_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("potential: empty input");
    if (csv::trim(line) != "unit_id,level,parent_id,tech_id,annual_potential_twh")
        throw ParseError(
            "potential line 1: header must be "
            "'unit_id,level,parent_id,tech_id,annual_potential_twh'");

    std::vector<PotentialNode> nodes;
    std::map<std::string, std::size_t> by_id;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (csv::trim(line).empty()) continue;
        auto cells = csv::split(csv::trim(line));
        if (cells.size() != 5)
            throw ParseError("potential line " + std::to_string(lineno) +
                             ": expected 5 columns");
        std::string id = csv::trim(cells[0]);
        auto level = geo_level_from_string(csv::trim(cells[1]));
        if (id.empty() || !level)
            throw ParseError("potential line " + std::to_string(lineno) +
                             ": bad unit_id or level");
        std::string parent = csv::trim(cells[2]);
        std::string tech = csv::trim(cells[3]);

        std::size_t idx;
        auto it = by_id.find(id);
        if (it == by_id.end()) {
            idx = nodes.size();
            by_id.emplace(id, idx);
            nodes.push_back({id, *level, parent, {}});
        } else {
            idx = it->second;
            if (nodes[idx].level != *level || nodes[idx].parent != parent)
                throw ParseError("potential line " + std::to_string(lineno) +
                                 ": conflicting level/parent for '" + id + "'");
        }
        if (tech.empty()) continue;  // node declaration row
        auto twh = csv::parse_number(cells[4]);
        if (!twh || *twh < 0.0)
            throw ParseError("potential line " + std::to_string(lineno) +
                             ": bad annual_potential_twh '" + cells[4] + "'");
        nodes[idx].potential_mwh[tech] += *twh * 1e6;
    }
    return nodes;
}

std::vector<HourlyTrace> load_hourly_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("hourly: empty input");
    auto header = csv::split(csv::trim(line));
    if (header.size() != 2 + 8760 || header[0] != "unit_id" ||
        header[1] != "tech_id" || header[2] != "h0001" ||
        header.back() != "h8760")
        throw ParseError("hourly line 1: expected header unit_id,tech_id,h0001..h8760");

    std::vector<HourlyTrace> traces;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (csv::trim(line).empty()) continue;
        auto cells = csv::split(csv::trim(line));
        if (cells.size() != 2 + 8760)
            throw ParseError("hourly line " + std::to_string(lineno) +
                             ": expected " + std::to_string(2 + 8760) +
                             " columns");
        HourlyTrace t;
        t.unit_id = csv::trim(cells[0]);
        t.tech_id = csv::trim(cells[1]);
        t.values_mwh.reserve(8760);
        for (std::size_t k = 2; k < cells.size(); ++k) {
            auto v = csv::parse_number(cells[k]);
            if (!v || *v < 0.0)
                throw ParseError("hourly line " + std::to_string(lineno) +
                                 ", column " + std::to_string(k + 1) +
                                 ": bad value");
            t.values_mwh.push_back(*v);
        }
        traces.push_back(std::move(t));
    }
    return traces;
}

std::string serialize_nation_csv(const PotentialNode& nation) {
    std::ostringstream os;
    os << "tech_id,annual_potential_twh\n";
    for (const auto& [tech, mwh] : nation.potential_mwh)
        os << tech << ',' << csv::format_number(mwh / 1e6) << '\n';
    return os.str();
}

}  // namespace gridmix
