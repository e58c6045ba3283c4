#pragma once

#include <optional>
#include <vector>

#include "gcvx/rational.hpp"

// Exact linear programming over the rationals. Problem sizes in this library
// are tiny (tens of variables), so a dense two-phase tableau with Bland's rule
// is all that is needed.
namespace gcvx::lp {

using kernel::Rational;
using kernel::Vec;
using Matrix = std::vector<Vec>;

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Vec x;          ///< primal solution (optimal only)
  Rational value; ///< objective value (optimal only)
  Vec farkas;     ///< y with y^T A >= 0 and y^T b < 0 (infeasible only)
};

/// maximize c^T x  subject to  A x = b, x >= 0.
Result maximize(const Matrix& a, const Vec& b, const Vec& c);

/// Feasibility of A x = b, x >= 0 (objective zero).
Result feasible(const Matrix& a, const Vec& b);

/// Unique solution of the square-or-tall system A x = b, or nullopt when the
/// system is inconsistent or underdetermined.
std::optional<Vec> solve_unique(const Matrix& a, const Vec& b);

/// Rank of A (exact Gaussian elimination).
std::size_t rank(Matrix a);

}  // namespace gcvx::lp
