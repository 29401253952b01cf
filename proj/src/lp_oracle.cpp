#include "gridmix/lp_oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace gridmix::lp {

namespace {

struct Hyperplane {
    std::vector<double> a;
    double b;
};

// Solves a square system by Gaussian elimination with partial pivoting.
// Returns false when the system is (near-)singular.
bool solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs,
                  std::vector<double>& out) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-10) return false;
        std::swap(m[col], m[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = m[r][col] / m[col][col];
            if (f == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
            rhs[r] -= f * rhs[col];
        }
    }
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = rhs[i] / m[i][i];
    return true;
}

bool feasible(const LinearProgram& lp, const std::vector<double>& x, double tol) {
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        const auto& b = lp.bounds[j];
        if (x[j] < b.lower - tol * std::max(1.0, std::abs(b.lower))) return false;
        if (b.upper && x[j] > *b.upper + tol * std::max(1.0, std::abs(*b.upper)))
            return false;
    }
    for (const auto& c : lp.constraints) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < lp.num_vars; ++j) lhs += c.coeffs[j] * x[j];
        double slack = tol * std::max(1.0, std::abs(c.rhs));
        switch (c.sense) {
            case Sense::LessEqual:
                if (lhs > c.rhs + slack) return false;
                break;
            case Sense::GreaterEqual:
                if (lhs < c.rhs - slack) return false;
                break;
            case Sense::Equal:
                if (std::abs(lhs - c.rhs) > slack) return false;
                break;
        }
    }
    return true;
}

struct EnumOut {
    bool found{false};
    double objective{0.0};
    std::vector<double> x;
    long combos{0};
};

// Enumerates vertices of the polytope boxed at x_j <= box for variables
// without an upper bound.
EnumOut enumerate_boxed(const LinearProgram& lp, double box) {
    const std::size_t n = lp.num_vars;

    std::vector<Hyperplane> planes;
    for (const auto& c : lp.constraints) planes.push_back({c.coeffs, c.rhs});
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        planes.push_back({e, lp.bounds[j].lower});
        planes.push_back({e, lp.bounds[j].upper ? *lp.bounds[j].upper : box});
    }

    EnumOut out;
    std::vector<std::size_t> pick(n, 0);
    if (n == 0) {
        out.found = feasible(lp, {}, 1e-7);
        return out;
    }

    // iterate over all size-n subsets of planes
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    const std::size_t H = planes.size();
    for (;;) {
        ++out.combos;
        std::vector<std::vector<double>> m(n);
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            m[i] = planes[idx[i]].a;
            rhs[i] = planes[idx[i]].b;
        }
        std::vector<double> x;
        if (solve_square(std::move(m), std::move(rhs), x) &&
            feasible(lp, x, 1e-7)) {
            double obj = 0.0;
            for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * x[j];
            if (!out.found || obj < out.objective - 1e-12 * std::max(1.0, std::abs(obj))) {
                out.found = true;
                out.objective = obj;
                out.x = x;
            }
        }

        // next combination
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (idx[i] != i + H - n) break;
            if (i == 0) return out;
        }
        if (idx[i] == i + H - n) return out;
        ++idx[i];
        for (std::size_t k = i + 1; k < n; ++k) idx[k] = idx[k - 1] + 1;
    }
}

}  // namespace

SolveResult enumerate_vertices_oracle(const LinearProgram& lp) {
    auto violations = validate(lp);
    if (!violations.empty())
        throw std::invalid_argument("oracle: invalid linear program");
    if (lp.num_vars > 8)
        throw std::invalid_argument("oracle: num_vars > 8");
    std::size_t bound_rows = 0;
    for (const auto& b : lp.bounds) bound_rows += b.upper ? 2 : 1;
    if (lp.constraints.size() + bound_rows > 16)
        throw std::invalid_argument("oracle: too many rows for enumeration");

    double scale = 1.0;
    for (const auto& c : lp.constraints) scale = std::max(scale, std::abs(c.rhs));
    for (const auto& b : lp.bounds) {
        scale = std::max(scale, std::abs(b.lower));
        if (b.upper) scale = std::max(scale, std::abs(*b.upper));
    }
    const double box = 1e4 * scale;

    EnumOut first = enumerate_boxed(lp, box);
    if (!first.found)
        return SolveResult{SolveStatus::Infeasible, {}, 0.0, first.combos};

    // A strictly better optimum on a larger box means a cost-improving ray.
    EnumOut second = enumerate_boxed(lp, 4.0 * box);
    long combos = first.combos + second.combos;
    if (second.found &&
        second.objective < first.objective -
            1e-6 * std::max(1.0, std::abs(first.objective)))
        return SolveResult{SolveStatus::Unbounded, {}, 0.0, combos};

    return SolveResult{SolveStatus::Optimal, first.x, first.objective, combos};
}

}  // namespace gridmix::lp
