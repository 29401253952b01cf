#include "gridmix/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gridmix::lp {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kReducedCostEps = 1e-9;
constexpr long kMaxPivots = 100000;

bool finite(double v) { return std::isfinite(v); }

// Standard <=-form with shifted variables y = x - lb >= 0.
struct Standardized {
    std::size_t n{0};
    std::vector<double> cost;            // objective on y
    std::vector<std::vector<double>> a;  // rows, a_i . y <= b_i
    std::vector<double> b;
    std::vector<double> shift;           // lb per original variable
};

Standardized standardize(const LinearProgram& lp) {
    Standardized s;
    s.n = lp.num_vars;
    s.cost = lp.objective;
    s.shift.resize(lp.num_vars);
    for (std::size_t j = 0; j < lp.num_vars; ++j) s.shift[j] = lp.bounds[j].lower;

    auto push_leq = [&](const std::vector<double>& row, double rhs) {
        double adj = rhs;
        for (std::size_t j = 0; j < s.n; ++j) adj -= row[j] * s.shift[j];
        s.a.push_back(row);
        s.b.push_back(adj);
    };
    auto push_geq = [&](const std::vector<double>& row, double rhs) {
        std::vector<double> neg(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) neg[j] = -row[j];
        push_leq(neg, -rhs);
    };

    for (const auto& c : lp.constraints) {
        switch (c.sense) {
            case Sense::LessEqual: push_leq(c.coeffs, c.rhs); break;
            case Sense::GreaterEqual: push_geq(c.coeffs, c.rhs); break;
            case Sense::Equal:
                // split into <= and >=; one canonical solver path
                push_leq(c.coeffs, c.rhs);
                push_geq(c.coeffs, c.rhs);
                break;
        }
    }
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        if (lp.bounds[j].upper) {
            std::vector<double> row(lp.num_vars, 0.0);
            row[j] = 1.0;
            push_leq(row, *lp.bounds[j].upper);
        }
    }
    return s;
}

// Dense tableau. Columns: n structural | m slack | artificials. The
// objective row holds reduced costs and is pivoted along with the body.
struct Tableau {
    std::size_t rows{0}, cols{0};
    std::vector<std::vector<double>> t;  // rows x (cols+1), last = rhs
    std::vector<double> obj;             // cols reduced costs
    double objval{0.0};
    std::vector<std::size_t> basis;      // basic column per row
    long pivots{0};

    void pivot(std::size_t pr, std::size_t pc) {
        double p = t[pr][pc];
        for (auto& v : t[pr]) v /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pr) continue;
            double f = t[i][pc];
            if (f == 0.0) continue;
            for (std::size_t k = 0; k <= cols; ++k) t[i][k] -= f * t[pr][k];
        }
        double f = obj[pc];
        if (f != 0.0) {
            for (std::size_t k = 0; k < cols; ++k) obj[k] -= f * t[pr][k];
            objval -= f * t[pr][cols];
        }
        basis[pr] = pc;
        ++pivots;
    }

    // Bland's rule: entering = lowest-index column with negative reduced
    // cost; leaving = min ratio, ties by lowest basic variable index.
    // Returns Optimal when no entering column exists.
    SolveStatus iterate(std::size_t enter_limit) {
        for (;;) {
            std::size_t pc = cols;
            for (std::size_t j = 0; j < enter_limit; ++j) {
                if (obj[j] < -kReducedCostEps) { pc = j; break; }
            }
            if (pc == cols) return SolveStatus::Optimal;

            std::size_t pr = rows;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows; ++i) {
                if (t[i][pc] > kPivotEps) {
                    double ratio = t[i][cols] / t[i][pc];
                    if (ratio < best - 1e-12 ||
                        (std::abs(ratio - best) <= 1e-12 &&
                         (pr == rows || basis[i] < basis[pr]))) {
                        best = ratio;
                        pr = i;
                    }
                }
            }
            if (pr == rows) return SolveStatus::Unbounded;
            pivot(pr, pc);
            if (pivots > kMaxPivots)
                throw std::runtime_error("simplex: pivot limit exceeded");
        }
    }
};

}  // namespace

std::vector<std::string> validate(const LinearProgram& lp) {
    std::vector<std::string> out;
    auto fail = [&](const std::string& m) { out.push_back(m); };

    if (lp.objective.size() != lp.num_vars)
        fail("objective length " + std::to_string(lp.objective.size()) +
             " != num_vars " + std::to_string(lp.num_vars));
    for (std::size_t j = 0; j < lp.objective.size(); ++j)
        if (!finite(lp.objective[j]))
            fail("objective[" + std::to_string(j) + "] is not finite");

    if (lp.bounds.size() != lp.num_vars)
        fail("bounds length " + std::to_string(lp.bounds.size()) +
             " != num_vars " + std::to_string(lp.num_vars));
    for (std::size_t j = 0; j < lp.bounds.size(); ++j) {
        const auto& b = lp.bounds[j];
        if (!finite(b.lower) || (b.upper && !finite(*b.upper)))
            fail("bounds[" + std::to_string(j) + "] not finite");
        else if (b.upper && b.lower > *b.upper)
            fail("bounds[" + std::to_string(j) + "]: lower " +
                 std::to_string(b.lower) + " > upper " + std::to_string(*b.upper));
    }

    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        const auto& c = lp.constraints[i];
        if (c.coeffs.size() != lp.num_vars) {
            fail("row " + std::to_string(i) + ": length " +
                 std::to_string(c.coeffs.size()) + " != num_vars " +
                 std::to_string(lp.num_vars));
            continue;
        }
        for (std::size_t j = 0; j < c.coeffs.size(); ++j)
            if (!finite(c.coeffs[j]))
                fail("row " + std::to_string(i) + ", col " + std::to_string(j) +
                     ": not finite");
        if (!finite(c.rhs)) fail("row " + std::to_string(i) + ": rhs not finite");
    }
    return out;
}

SolveResult solve(const LinearProgram& lp) {
    auto violations = validate(lp);
    if (!violations.empty()) {
        std::string msg = "invalid linear program:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw std::invalid_argument(msg);
    }

    Standardized s = standardize(lp);
    const std::size_t n = s.n;
    const std::size_t m = s.a.size();

    double bscale = 1.0;
    for (double v : s.b) bscale = std::max(bscale, std::abs(v));

    // Columns: n structural, m slacks, then one artificial per row with
    // negative rhs.
    std::size_t n_art = 0;
    for (double v : s.b)
        if (v < 0) ++n_art;

    Tableau tb;
    tb.rows = m;
    tb.cols = n + m + n_art;
    tb.t.assign(m, std::vector<double>(tb.cols + 1, 0.0));
    tb.basis.assign(m, 0);

    std::size_t art = n + m;
    for (std::size_t i = 0; i < m; ++i) {
        double sign = (s.b[i] < 0) ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) tb.t[i][j] = sign * s.a[i][j];
        tb.t[i][n + i] = sign;  // slack
        tb.t[i][tb.cols] = sign * s.b[i];
        if (sign < 0) {
            tb.t[i][art] = 1.0;
            tb.basis[i] = art++;
        } else {
            tb.basis[i] = n + i;
        }
    }

    // Phase 1: minimize the artificial sum.
    if (n_art > 0) {
        tb.obj.assign(tb.cols, 0.0);
        tb.objval = 0.0;
        for (std::size_t j = n + m; j < tb.cols; ++j) tb.obj[j] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (tb.basis[i] >= n + m) {
                for (std::size_t k = 0; k < tb.cols; ++k) tb.obj[k] -= tb.t[i][k];
                tb.objval -= tb.t[i][tb.cols];
            }
        }
        SolveStatus st = tb.iterate(tb.cols);
        (void)st;  // phase 1 is always bounded below by 0
        if (-tb.objval > 1e-7 * bscale)
            return SolveResult{SolveStatus::Infeasible, {}, 0.0, tb.pivots};

        // Drive leftover artificials out of the basis; a row with no
        // structural/slack pivot is redundant and is dropped.
        for (std::size_t i = 0; i < tb.rows;) {
            if (tb.basis[i] < n + m) { ++i; continue; }
            std::size_t pc = tb.cols;
            for (std::size_t j = 0; j < n + m; ++j) {
                if (std::abs(tb.t[i][j]) > 1e-7) { pc = j; break; }
            }
            if (pc == tb.cols) {
                tb.t.erase(tb.t.begin() + static_cast<long>(i));
                tb.basis.erase(tb.basis.begin() + static_cast<long>(i));
                --tb.rows;
            } else {
                tb.pivot(i, pc);
                ++i;
            }
        }
    }

    // Phase 2: real costs; artificial columns may not re-enter.
    tb.obj.assign(tb.cols, 0.0);
    tb.objval = 0.0;
    for (std::size_t j = 0; j < n; ++j) tb.obj[j] = s.cost[j];
    for (std::size_t i = 0; i < tb.rows; ++i) {
        std::size_t bj = tb.basis[i];
        double cb = (bj < n) ? s.cost[bj] : 0.0;
        if (cb != 0.0) {
            for (std::size_t k = 0; k < tb.cols; ++k) tb.obj[k] -= cb * tb.t[i][k];
            tb.objval -= cb * tb.t[i][tb.cols];
        }
    }
    SolveStatus st = tb.iterate(n + m);
    if (st == SolveStatus::Unbounded)
        return SolveResult{SolveStatus::Unbounded, {}, 0.0, tb.pivots};

    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < tb.rows; ++i)
        if (tb.basis[i] < n) y[tb.basis[i]] = tb.t[i][tb.cols];

    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) {
        x[j] = y[j] + s.shift[j];
        // snap to bounds; basic variables can land a few ulps off
        const auto& b = lp.bounds[j];
        if (std::abs(x[j] - b.lower) <= 1e-9 * std::max(1.0, std::abs(b.lower)))
            x[j] = b.lower;
        else if (b.upper &&
                 std::abs(x[j] - *b.upper) <= 1e-9 * std::max(1.0, std::abs(*b.upper)))
            x[j] = *b.upper;
    }

    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * x[j];
    return SolveResult{SolveStatus::Optimal, std::move(x), obj, tb.pivots};
}

std::string to_text(const LinearProgram& lp) {
    std::ostringstream os;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    os << "min";
    for (double c : lp.objective) os << ' ' << num(c);
    os << '\n';
    for (const auto& c : lp.constraints) {
        for (double a : c.coeffs) os << num(a) << ' ';
        os << (c.sense == Sense::LessEqual ? "<=" :
               c.sense == Sense::GreaterEqual ? ">=" : "=")
           << ' ' << num(c.rhs);
        if (!c.name.empty()) os << "  # " << c.name;
        os << '\n';
    }
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        os << "x" << j << " in [" << num(lp.bounds[j].lower) << ", "
           << (lp.bounds[j].upper ? num(*lp.bounds[j].upper) : std::string("inf"))
           << "]\n";
    }
    return os.str();
}

}  // namespace gridmix::lp
