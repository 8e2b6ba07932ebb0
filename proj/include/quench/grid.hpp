#pragma once

#include <Eigen/Dense>

namespace quench {

// Uniform grid on [-1, 1] with M subintervals. Only the M-1 interior nodes
// carry unknowns; the solution vanishes on the exterior.
class Grid {
public:
    explicit Grid(int M);

    int M() const { return M_; }
    double dx() const { return dx_; }
    int interior_count() const { return M_ - 1; }
    // j = 0..M; j = 1..M-1 are interior.
    double x(int j) const { return -1.0 + j * dx_; }
    Eigen::VectorXd interior_points() const;

private:
    int M_;
    double dx_;
};

}  // namespace quench
