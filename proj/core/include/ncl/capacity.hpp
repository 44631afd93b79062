#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ncl/infomeasures.hpp"
#include "ncl/model.hpp"

namespace ncl {

// Numerical maximization of the typical input rate B(P_X) = H(X) -
// H(f(X)|F(X)) over i.i.d. input distributions. B is not guaranteed concave
// in P_X (the induced cascade depends on P_X), so the optimizer is
// multistart projected gradient ascent, cross-checkable against the grid
// oracle below. The value is a lower bound to the capacity over all
// admissible sources and is labeled as such in every output.

struct CapacityOptions {
    int restarts = 32;
    int max_iters = 10000;
    double tol = 1e-10;
    std::uint64_t seed = 0;
};

struct CapacityResult {
    double value = 0.0;
    Pmf argmax;
    int restarts_used = 0;
    bool converged = false;
    // improvement trace (iteration, value) of the winning restart
    std::vector<std::pair<int, double>> trace;
};

CapacityResult capacity_iid(const DetFunction& f, const DMChannel& F,
                            const CapacityOptions& opts = {});

// Brute-force maximum of B over the simplex lattice with the given step.
// Independent oracle for capacity_iid; |A| <= 5, resolution in
// {0.01, 0.02, 0.05}.
double capacity_grid_oracle(const DetFunction& f, const DMChannel& F, double resolution);

// Standard alternating-optimization channel capacity of F, in nats. Used as
// an independent cross-check: for bijective f, capacity_iid must agree.
double blahut_arimoto(const DMChannel& F, double tol = 1e-9, int max_iters = 200000);

// Objective shared with the oracle: B at a fixed input distribution given as
// a raw weight vector over f's domain (no Pmf validation, tolerant to the
// tiny constraint violations finite-difference probing produces).
double rate_objective(const DetFunction& f, const DMChannel& F, std::span<const double> px);

} // namespace ncl
