#pragma once

#include "gridmix/lp.hpp"

namespace gridmix::lp {

// Exhaustive basic-feasible-solution enumeration for small programs.
// Independent of solve(): its own linear algebra and feasibility checks.
// Guard: num_vars <= 8 and constraints + finite bound rows <= 16; a
// violation throws std::invalid_argument.
SolveResult enumerate_vertices_oracle(const LinearProgram& lp);

}  // namespace gridmix::lp
