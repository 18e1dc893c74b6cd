#pragma once

#include <vector>

#include "transport1d/field.hpp"
#include "transport1d/potential.hpp"
#include "transport1d/profile.hpp"

namespace transport1d {

// (A, B) extending (rho, b rho) to t >= 0 and all x: A = 1 outside [alpha,beta],
// B carries the boundary traces outside and vanishes for t > T.
class ExtendedFields {
public:
    ExtendedFields(const FieldPair& f, const Potential& p);

    double A(double t, double x) const noexcept;
    double B(double t, double x) const noexcept;

private:
    double interior(const GridField& v, double t, double x, bool flux) const noexcept;

    const FieldPair* f_;
    std::vector<double> left_, right_;  // -Tr(alpha+), Tr(beta-) per interval
};

ExtendedFields extend_fields(const FieldPair& f, const Potential& p);

// Polynomial bump 30 z^2 (1-z)^2 on ]0,1[ (unit mass).
double bump_kernel(double z) noexcept;

enum class DataSmoothing { bv, vanishing };

// Data padded as in the two variants, then smoothed with the one-sided kernel of
// width 1/n. Result profiles are tabulated on a 4x refined lattice.
BoundaryData smooth_data(const BoundaryData& d, const SpaceTimeGrid& g, int n,
                         DataSmoothing variant = DataSmoothing::bv);

struct MollifiedProblem {
    int n = 1;
    bool single_kernel = false;
    SpaceTimeGrid grid;
    GridField rho_n;
    GridField flux_n;  // b_n rho_n
    GridField b_n;
    double bn_sup = 0.0;
    double h_l1 = 0.0;  // L1 norm of d_t rho_n + d_x(b_n rho_n)
    BoundaryData data_n;
};

// positive_b selects the single-kernel recipe valid for b >= 0.
MollifiedProblem mollify(const FieldPair& f, const Potential& p, const BoundaryData& d, int n,
                         bool positive_b, DataSmoothing variant = DataSmoothing::bv);

struct SmoothSolution {
    GridField theta_n;
    GridField rho_theta_n;
};

// Backward RK4 characteristics of b_n (step dt/4) to the initial line or the
// inflow boundary.
SmoothSolution solve_smooth(const MollifiedProblem& mp);

// Trapezoid-weighted L1 norms over the grid.
double l1_norm(const GridField& a, const SpaceTimeGrid& g);
double l1_distance(const GridField& a, const GridField& b, const SpaceTimeGrid& g);

}  // namespace transport1d
