#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gridmix/catalog.hpp"

using namespace gridmix;

namespace {

TechCatalog default_catalog() {
    std::ifstream in(std::string(GRIDMIX_DATA_DIR_PATH) + "/india2030.csv");
    REQUIRE(in.good());
    return load_catalog(in, "india2030");
}

const char* kHeader =
    "id,class,alpha_kg_per_mwh,beta_usd_per_kg,gamma_usd_per_mwh,"
    "epsilon_usd_per_mwh,delta_usd_per_mwh,emission_t_per_mwh,"
    "existing_capacity_gw,capacity_factor,hours_per_year,new_potential_twh";

TechCatalog from_rows(const std::string& rows) {
    std::istringstream in(std::string(kHeader) + "\n" + rows);
    return load_catalog(in);
}

}  // namespace

TEST_CASE("default dataset loads with the published capacities") {
    auto cat = default_catalog();
    REQUIRE(cat.find("coal") != nullptr);
    CHECK(cat.find("coal")->existing_capacity_gw == 203.0);
    CHECK(cat.find("hydro")->existing_capacity_gw == 51.0);
    CHECK(cat.find("coal")->emission_factor == 0.98);

    // one record of every class
    bool has[5] = {};
    for (const auto& r : cat.records) has[static_cast<int>(r.tech_class)] = true;
    for (bool h : has) CHECK(h);
}

TEST_CASE("load rejects malformed rows") {
    CHECK_THROWS_AS(
        from_rows("a,fossil_thermal,1,1,1,1,1,1,1,1.3,8760,\n"),  // cf > 1
        ParseError);
    CHECK_THROWS_AS(
        from_rows("a,fossil_thermal,1,1,1,1,1,1,1,0.5,8760,\n"
                  "a,fossil_thermal,1,1,1,1,1,1,1,0.5,8760,\n"),  // dup id
        ParseError);
    CHECK_THROWS_AS(
        from_rows("a,geothermal,1,1,1,1,1,1,1,0.5,8760,\n"),  // unknown class
        ParseError);
    CHECK_THROWS_AS(
        from_rows("a,fossil_thermal,-1,1,1,1,1,1,1,0.5,8760,\n"),  // negative
        ParseError);
    CHECK_THROWS_AS(
        from_rows("a,fossil_thermal,1,1,1,1,1,1,1,0.5,8760\n"),  // missing col
        ParseError);
    CHECK_THROWS_AS(
        from_rows("a,wind,2,3,1,1,1,0,1,0.5,8760,\n"),  // fuel on non-fuel tech
        ParseError);
    CHECK_THROWS_AS(
        from_rows("a,solar,0,0,1,1,1,0.5,1,0.5,8760,\n"),  // emitting solar
        ParseError);

    CHECK_THROWS_WITH_AS(from_rows("a,fossil_thermal,1,x,1,1,1,1,1,0.5,8760,\n"),
                         doctest::Contains("line 2"), ParseError);
}

TEST_CASE("serialize round-trips field for field") {
    auto cat = default_catalog();
    std::istringstream again(serialize_catalog(cat));
    auto cat2 = load_catalog(again);
    REQUIRE(cat2.records.size() == cat.records.size());
    for (std::size_t i = 0; i < cat.records.size(); ++i) {
        const auto& a = cat.records[i];
        const auto& b = cat2.records[i];
        CHECK(a.id == b.id);
        CHECK(a.tech_class == b.tech_class);
        CHECK(a.alpha == b.alpha);
        CHECK(a.beta == b.beta);
        CHECK(a.gamma == b.gamma);
        CHECK(a.epsilon == b.epsilon);
        CHECK(a.delta == b.delta);
        CHECK(a.emission_factor == b.emission_factor);
        CHECK(a.existing_capacity_gw == b.existing_capacity_gw);
        CHECK(a.capacity_factor == b.capacity_factor);
        CHECK(a.hours_per_year == b.hours_per_year);
        CHECK(a.new_potential_twh == b.new_potential_twh);
    }
}

TEST_CASE("existing coal dispatch cost carries the baseline coal tax") {
    auto cat = default_catalog();
    const auto& coal = *cat.find("coal");
    TaxPolicy base;  // 5.3 $/ton, multiplier 1
    TaxPolicy none;
    none.coal_tax_usd_per_ton = 0.0;
    double tax_component =
        marginal_cost_existing(coal, base) - marginal_cost_existing(coal, none);
    CHECK(tax_component == doctest::Approx(600 * 0.0053).epsilon(1e-12));
}

TEST_CASE("scc adds exactly e times the rate") {
    auto cat = default_catalog();
    const auto& coal = *cat.find("coal");
    TaxPolicy scc;
    scc.scc_usd_per_tco2 = 20.0;
    TaxPolicy base;
    CHECK(marginal_cost_existing(coal, scc) - marginal_cost_existing(coal, base) ==
          doctest::Approx(19.6).epsilon(1e-12));
    CHECK(marginal_cost_new(coal, scc) - marginal_cost_new(coal, base) ==
          doctest::Approx(19.6).epsilon(1e-12));
}

TEST_CASE("zero-fuel zero-emission records cost gamma plus epsilon") {
    auto cat = default_catalog();
    const auto& pv = *cat.find("solar_pv_ground");
    TaxPolicy taxes;
    CHECK(marginal_cost_existing(pv, taxes) == pv.gamma + pv.epsilon);
    taxes.scc_usd_per_tco2 = 50.0;
    taxes.coal_tax_multiplier = 10.0;
    CHECK(marginal_cost_existing(pv, taxes) == pv.gamma + pv.epsilon);
}

TEST_CASE("new-build cost is the LCOE for untaxed technologies") {
    auto cat = default_catalog();
    const auto& wind = *cat.find("wind_onshore");
    TaxPolicy taxes;
    CHECK(marginal_cost_new(wind, taxes) == wind.delta);
    CHECK(marginal_cost_new(*cat.find("csp"), taxes) >
          marginal_cost_new(*cat.find("solar_pv_ground"), taxes));
    CHECK_THROWS_AS(marginal_cost_new(*cat.find("nuclear"), taxes),
                    std::invalid_argument);
}

TEST_CASE("fossil dispatch cost is monotone in both tax knobs") {
    auto cat = default_catalog();
    const auto& coal = *cat.find("coal");
    TaxPolicy t;
    double prev = marginal_cost_existing(coal, t);
    for (double scc : {5.0, 10.0, 40.0}) {
        t.scc_usd_per_tco2 = scc;
        double cur = marginal_cost_existing(coal, t);
        CHECK(cur >= prev);
        prev = cur;
    }
    t = TaxPolicy{};
    prev = marginal_cost_existing(coal, t);
    for (double mult : {1.5, 2.0, 3.0}) {
        t.coal_tax_multiplier = mult;
        double cur = marginal_cost_existing(coal, t);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("existing generation cap") {
    auto cat = default_catalog();
    CHECK(existing_generation_cap(*cat.find("coal")) ==
          doctest::Approx(1.067e9).epsilon(1e-3));

    TechnologyRecord unit;
    unit.existing_capacity_gw = 1.0;
    unit.capacity_factor = 1.0;
    unit.hours_per_year = 8760.0;
    CHECK(existing_generation_cap(unit) == doctest::Approx(8.76e6));
    unit.existing_capacity_gw = 0.0;
    CHECK(existing_generation_cap(unit) == 0.0);

    // linear in capacity
    unit.capacity_factor = 0.42;
    unit.existing_capacity_gw = 3.0;
    double one = existing_generation_cap(unit);
    unit.existing_capacity_gw = 6.0;
    CHECK(existing_generation_cap(unit) == doctest::Approx(2.0 * one).epsilon(1e-12));
}
