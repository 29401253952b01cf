#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gridmix::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct Constraint {
    std::vector<double> coeffs;
    Sense sense{Sense::LessEqual};
    double rhs{0.0};
    std::string name{};
};

struct VarBounds {
    double lower{0.0};
    std::optional<double> upper{};  // absent = +inf
};

// min c'x  s.t.  rows (<=,>=,=) rhs,  lb <= x <= ub.
struct LinearProgram {
    std::size_t num_vars{0};
    std::vector<double> objective;
    std::vector<Constraint> constraints;
    std::vector<VarBounds> bounds;  // one per variable

    explicit LinearProgram(std::size_t n = 0)
        : num_vars(n), objective(n, 0.0), bounds(n) {}

    void add_constraint(std::vector<double> coeffs, Sense sense, double rhs,
                        std::string name = {}) {
        constraints.push_back({std::move(coeffs), sense, rhs, std::move(name)});
    }
};

struct SolveResult {
    SolveStatus status{SolveStatus::Infeasible};
    std::vector<double> solution;  // present iff Optimal
    double objective_value{0.0};
    long iterations{0};
};

// Empty list iff the LinearProgram invariants hold. Each entry names the
// offending row or variable index.
std::vector<std::string> validate(const LinearProgram& lp);

// Two-phase primal simplex, dense tableau, Bland's anti-cycling rule.
// Infeasible/Unbounded come back as statuses; a malformed program throws
// std::invalid_argument before any pivoting.
SolveResult solve(const LinearProgram& lp);

// Plain-text listing: objective, one line per constraint, then bounds.
std::string to_text(const LinearProgram& lp);

}  // namespace gridmix::lp
