#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gridmix/analysis.hpp"
#include "gridmix/catalog.hpp"
#include "gridmix/csv.hpp"
#include "gridmix/potential.hpp"
#include "gridmix/scenario.hpp"

namespace fs = std::filesystem;
using namespace gridmix;

namespace {

constexpr const char* kVersion = "0.1.0";

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path.string());
    out << content;
}

fs::path resolve(const std::string& path) {
    fs::path p(path);
    if (p.is_absolute() || fs::exists(p)) return p;
    if (const char* root = std::getenv("GRIDMIX_DATA_DIR")) {
        fs::path alt = fs::path(root) / p;
        if (fs::exists(alt)) return alt;
    }
    return p;
}

std::string safe_filename(const std::string& name) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
                   ? c : '_';
    return out;
}

// Batch over scenarios; output assembly stays in input order regardless of
// the worker count.
std::vector<DispatchSolution> run_all(const std::vector<Scenario>& scenarios,
                                      const TechCatalog& catalog,
                                      const DemandSpec& demand, unsigned jobs) {
    std::vector<DispatchSolution> out(scenarios.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < scenarios.size(); ++i)
            out[i] = run(scenarios[i], catalog, demand);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= scenarios.size()) return;
            out[i] = run(scenarios[i], catalog, demand);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gridmix: cost-optimal generation-mix scenarios"};
    app.set_version_flag("--version", kVersion);

    std::string catalog_path, potential_path, scenarios_path, out_dir, dump_name;
    double demand_twh = 2499.0;
    std::string sweep_arg;
    unsigned jobs = 1;
    bool verbose = false;

    app.add_option("--catalog", catalog_path, "Technology catalog CSV")->required();
    app.add_option("--potential", potential_path,
                   "District potential CSV (overrides catalog RES potentials)");
    app.add_option("--scenarios", scenarios_path,
                   "Scenario bundle JSON (default: the nine built-ins)");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--demand-twh", demand_twh, "Annual demand, TWh");
    app.add_option("--sweep", sweep_arg,
                   "LCOE sweep factors, e.g. 1.0,0.9,0.8,0.7,0.6,0.5");
    app.add_option("--jobs", jobs, "Concurrent scenario runs");
    app.add_option("--dump-lp", dump_name,
                   "Print the compiled program for one scenario and exit");
    app.add_flag("-v,--verbose", verbose, "Chatty progress output");
    CLI11_PARSE(app, argc, argv);

    try {
        if (demand_twh <= 0.0) throw InputError("--demand-twh must be > 0");

        fs::path catalog_file = resolve(catalog_path);
        std::string catalog_bytes = read_file(catalog_file);
        std::istringstream catalog_in(catalog_bytes);
        TechCatalog catalog = load_catalog(catalog_in, catalog_file.filename().string());

        std::vector<Scenario> scenarios;
        std::string scenarios_bytes;
        fs::path scenarios_file;
        if (!scenarios_path.empty()) {
            scenarios_file = resolve(scenarios_path);
            scenarios_bytes = read_file(scenarios_file);
            std::istringstream in(scenarios_bytes);
            scenarios = load_scenario_bundle(in);
        } else {
            for (const auto& name : built_in_scenario_names())
                scenarios.push_back(built_in_scenario(name));
        }

        std::optional<PotentialHierarchy> hierarchy;
        std::string potential_bytes;
        if (!potential_path.empty()) {
            fs::path f = resolve(potential_path);
            potential_bytes = read_file(f);
            std::istringstream in(potential_bytes);
            hierarchy = aggregate(load_potential_csv(in));
            // nation totals become the catalog's new-build potentials
            for (auto& rec : catalog.records) {
                auto it = hierarchy->nation().potential_mwh.find(rec.id);
                if (it != hierarchy->nation().potential_mwh.end())
                    rec.new_potential_twh = it->second / 1e6;
            }
        }

        DemandSpec demand{demand_twh, "2030"};

        if (!dump_name.empty()) {
            for (const auto& s : scenarios) {
                if (s.name == dump_name) {
                    std::cout << lp::to_text(compile(s, catalog, demand).program);
                    return 0;
                }
            }
            std::cerr << "error: scenario '" << dump_name
                      << "' not found in bundle\n";
            return 1;
        }

        if (out_dir.empty()) throw InputError("--out is required for a batch run");
        fs::create_directories(out_dir);
        fs::path out(out_dir);

        auto t0 = std::chrono::steady_clock::now();
        auto solutions = run_all(scenarios, catalog, demand, jobs);
        auto t1 = std::chrono::steady_clock::now();
        if (verbose)
            std::cerr << "solved " << scenarios.size() << " scenarios in "
                      << std::chrono::duration<double>(t1 - t0).count() << " s\n";

        nlohmann::json manifest;
        manifest["tool_version"] = kVersion;
        manifest["generated_at"] =
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch()).count();
        manifest["inputs"]["catalog"] = {{"path", catalog_file.string()},
                                         {"fnv1a64", fnv1a64_hex(catalog_bytes)}};
        if (!scenarios_path.empty())
            manifest["inputs"]["scenarios"] = {
                {"path", scenarios_file.string()},
                {"fnv1a64", fnv1a64_hex(scenarios_bytes)}};
        if (!potential_path.empty())
            manifest["inputs"]["potential"] = {
                {"path", resolve(potential_path).string()},
                {"fnv1a64", fnv1a64_hex(potential_bytes)}};
        manifest["demand_twh"] = demand_twh;

        std::vector<std::string> written;
        for (const auto& sol : solutions) {
            std::string fname = "scenario_" + safe_filename(sol.scenario.name) + ".csv";
            write_file(out / fname, scenario_csv(sol));
            written.push_back(fname);
            nlohmann::json entry;
            entry["name"] = sol.scenario.name;
            entry["status"] = sol.status == lp::SolveStatus::Optimal ? "optimal"
                              : sol.status == lp::SolveStatus::Infeasible
                                  ? "infeasible" : "unbounded";
            if (!sol.infeasible_row.empty())
                entry["binding_row"] = sol.infeasible_row;
            manifest["scenarios"].push_back(entry);
            if (sol.status == lp::SolveStatus::Infeasible)
                std::cerr << "note: scenario '" << sol.scenario.name
                          << "' is infeasible"
                          << (sol.infeasible_row.empty()
                                  ? std::string()
                                  : " (row: " + sol.infeasible_row + ")")
                          << "\n";
        }

        write_file(out / "comparison.csv", comparison_csv(compare(solutions)));
        written.push_back("comparison.csv");

        if (!sweep_arg.empty()) {
            std::vector<double> factors;
            for (const auto& cell : csv::split(sweep_arg)) {
                auto v = csv::parse_number(cell);
                if (!v) throw InputError("--sweep: bad factor '" + cell + "'");
                factors.push_back(*v);
            }
            write_file(out / "sweep.csv",
                       sweep_csv(lcoe_sweep(catalog, demand, factors)));
            written.push_back("sweep.csv");
        }

        if (hierarchy) {
            write_file(out / "potential_nation.csv",
                       serialize_nation_csv(hierarchy->nation()));
            written.push_back("potential_nation.csv");
        }

        manifest["outputs"] = written;
        write_file(out / "manifest.json", manifest.dump(2) + "\n");
        return 0;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}
