#include "quench/grid.hpp"

#include <string>

#include "quench/errors.hpp"

namespace quench {

Grid::Grid(int M) : M_(M), dx_(0.0) {
    if (M < 3) throw GridError("grid needs M >= 3 subintervals, got " + std::to_string(M));
    dx_ = 2.0 / M;
}

Eigen::VectorXd Grid::interior_points() const {
    Eigen::VectorXd xs(M_ - 1);
    for (int j = 1; j < M_; ++j) xs[j - 1] = x(j);
    return xs;
}

}  // namespace quench
