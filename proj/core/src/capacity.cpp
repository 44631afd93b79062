#include "ncl/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ncl/rng.hpp"

namespace ncl {

namespace {

constexpr double kClip = 1e-12;   // entropy gradient is unbounded at the boundary
constexpr double kFdStep = 1e-6;  // central-difference step

// Euclidean projection onto the probability simplex (sort-based).
void project_simplex(std::vector<double>& v) {
    std::vector<double> u(v);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0;
    double theta = 0.0;
    int rho = 0;
    for (int i = 0; i < static_cast<int>(u.size()); ++i) {
        cum += u[static_cast<std::size_t>(i)];
        const double t = (cum - 1.0) / (i + 1);
        if (u[static_cast<std::size_t>(i)] - t > 0.0) {
            rho = i + 1;
            theta = t;
        }
    }
    for (double& x : v) x = std::max(x - theta, 0.0);
    // absorb rounding so the vector stays a pmf
    const double sum = std::accumulate(v.begin(), v.end(), 0.0);
    if (sum > 0.0) {
        for (double& x : v) x /= sum;
    } else {
        std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(v.size()));
    }
    (void)rho;
}

// Finite-difference probes must see honest simplex points: clip to keep
// logs finite, then renormalize so off-simplex probe vectors do not distort
// boundary gradients.
double objective_clipped(const DetFunction& f, const DMChannel& F, std::vector<double> px) {
    double sum = 0.0;
    for (double& p : px) {
        p = std::max(p, kClip);
        sum += p;
    }
    for (double& p : px) p /= sum;
    return rate_objective(f, F, px);
}

} // namespace

double rate_objective(const DetFunction& f, const DMChannel& F, std::span<const double> px) {
    const int ny = f.codomain().size();
    const int nz = F.output().size();
    // H(X)
    double h_x = 0.0;
    for (double p : px) {
        if (p > 0.0) h_x -= p * std::log(p);
    }
    // joint (Y, Z) without Pmf validation
    std::vector<double> joint(static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz), 0.0);
    std::vector<double> pz(static_cast<std::size_t>(nz), 0.0);
    for (int x = 0; x < static_cast<int>(px.size()); ++x) {
        const double p = px[static_cast<std::size_t>(x)];
        if (p <= 0.0) continue;
        const int y = f(x);
        for (int z = 0; z < nz; ++z) {
            const double m = p * F.prob(x, z);
            joint[static_cast<std::size_t>(y) * static_cast<std::size_t>(nz) + static_cast<std::size_t>(z)] += m;
            pz[static_cast<std::size_t>(z)] += m;
        }
    }
    const double h_yz = entropy_of(joint);
    const double h_z = entropy_of(pz);
    return h_x - (h_yz - h_z);
}

CapacityResult capacity_iid(const DetFunction& f, const DMChannel& F, const CapacityOptions& opts) {
    if (F.input() != f.domain()) {
        throw Error(Errc::alphabet_mismatch, "f and F must share the input alphabet");
    }
    const int d = f.domain().size();

    // start points: uniform, vertex-biased, then random simplex samples
    std::vector<std::vector<double>> starts;
    starts.emplace_back(static_cast<std::size_t>(d), 1.0 / d);
    for (int v = 0; v < d && static_cast<int>(starts.size()) < opts.restarts; ++v) {
        std::vector<double> p(static_cast<std::size_t>(d), d > 1 ? 0.05 / (d - 1) : 0.0);
        p[static_cast<std::size_t>(v)] = d > 1 ? 0.95 : 1.0;
        starts.push_back(std::move(p));
    }
    Rng rng(opts.seed);
    while (static_cast<int>(starts.size()) < opts.restarts) {
        std::vector<double> p(static_cast<std::size_t>(d));
        double sum = 0.0;
        for (double& x : p) {
            x = -std::log(std::max(rng.uniform(), 1e-300)); // Exp(1) -> Dirichlet(1)
            sum += x;
        }
        for (double& x : p) x /= sum;
        starts.push_back(std::move(p));
    }

    double best_value = -1.0;
    std::vector<double> best_point(static_cast<std::size_t>(d), 1.0 / d);
    std::vector<std::pair<int, double>> best_trace;
    bool best_converged = false;

    for (const auto& start : starts) {
        std::vector<double> x = start;
        double fx = objective_clipped(f, F, x);
        std::vector<std::pair<int, double>> trace{{0, fx}};
        bool converged = false;

        std::vector<double> grad(static_cast<std::size_t>(d));
        for (int iter = 1; iter <= opts.max_iters; ++iter) {
            for (int i = 0; i < d; ++i) {
                std::vector<double> hi = x;
                std::vector<double> lo = x;
                hi[static_cast<std::size_t>(i)] += kFdStep;
                lo[static_cast<std::size_t>(i)] -= kFdStep;
                grad[static_cast<std::size_t>(i)] =
                    (objective_clipped(f, F, hi) - objective_clipped(f, F, lo)) / (2.0 * kFdStep);
            }
            double step = 1.0;
            double fnext = fx;
            std::vector<double> xnext;
            bool improved = false;
            for (int halving = 0; halving < 40; ++halving) {
                std::vector<double> cand(static_cast<std::size_t>(d));
                for (int i = 0; i < d; ++i) {
                    cand[static_cast<std::size_t>(i)] =
                        x[static_cast<std::size_t>(i)] + step * grad[static_cast<std::size_t>(i)];
                }
                project_simplex(cand);
                const double fc = objective_clipped(f, F, cand);
                if (fc > fx) {
                    fnext = fc;
                    xnext = std::move(cand);
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!improved) {
                converged = true;
                break;
            }
            const double gain = fnext - fx;
            x = std::move(xnext);
            fx = fnext;
            trace.emplace_back(iter, fx);
            if (gain < opts.tol) {
                converged = true;
                break;
            }
        }

        const double final_value = rate_objective(f, F, x); // unclipped
        if (final_value > best_value) {
            best_value = final_value;
            best_point = x;
            best_trace = std::move(trace);
            best_converged = converged;
        }
    }

    CapacityResult result{best_value, Pmf(f.domain(), best_point), static_cast<int>(starts.size()),
                          best_converged, std::move(best_trace)};
    return result;
}

double capacity_grid_oracle(const DetFunction& f, const DMChannel& F, double resolution) {
    if (f.domain().size() > 5) {
        throw Error(Errc::alphabet_too_large, "grid oracle is limited to |A| <= 5");
    }
    int steps = 0;
    for (int m : {100, 50, 20}) {
        if (std::abs(resolution - 1.0 / m) < 1e-12) steps = m;
    }
    if (steps == 0) {
        throw Error(Errc::validation_error, "resolution must be one of 0.01, 0.02, 0.05");
    }
    const int d = f.domain().size();
    std::vector<double> point(static_cast<std::size_t>(d), 0.0);
    double best = 0.0;

    // enumerate compositions of `steps` among d bins
    std::vector<int> counts(static_cast<std::size_t>(d), 0);
    auto evaluate = [&]() {
        for (int i = 0; i < d; ++i) {
            point[static_cast<std::size_t>(i)] = static_cast<double>(counts[static_cast<std::size_t>(i)]) / steps;
        }
        best = std::max(best, rate_objective(f, F, point));
    };
    auto recurse = [&](auto&& self, int bin, int remaining) -> void {
        if (bin == d - 1) {
            counts[static_cast<std::size_t>(bin)] = remaining;
            evaluate();
            return;
        }
        for (int c = remaining; c >= 0; --c) {
            counts[static_cast<std::size_t>(bin)] = c;
            self(self, bin + 1, remaining - c);
        }
    };
    recurse(recurse, 0, steps);
    return best;
}

double blahut_arimoto(const DMChannel& F, double tol, int max_iters) {
    const int nx = F.input().size();
    const int nz = F.output().size();
    std::vector<double> r(static_cast<std::size_t>(nx), 1.0 / nx);
    std::vector<double> q(static_cast<std::size_t>(nz), 0.0);
    std::vector<double> logc(static_cast<std::size_t>(nx), 0.0);

    for (int iter = 0; iter < max_iters; ++iter) {
        std::fill(q.begin(), q.end(), 0.0);
        for (int x = 0; x < nx; ++x) {
            for (int z = 0; z < nz; ++z) q[static_cast<std::size_t>(z)] += r[static_cast<std::size_t>(x)] * F.prob(x, z);
        }
        for (int x = 0; x < nx; ++x) {
            double s = 0.0;
            for (int z = 0; z < nz; ++z) {
                const double p = F.prob(x, z);
                if (p > 0.0 && q[static_cast<std::size_t>(z)] > 0.0) {
                    s += p * std::log(p / q[static_cast<std::size_t>(z)]);
                }
            }
            logc[static_cast<std::size_t>(x)] = s; // D(F(.|x) || q)
        }
        double lower = 0.0; // sum_x r(x) D(.)  -> I(r)
        double upper = 0.0; // max_x D(.)
        for (int x = 0; x < nx; ++x) {
            lower += r[static_cast<std::size_t>(x)] * logc[static_cast<std::size_t>(x)];
            upper = std::max(upper, logc[static_cast<std::size_t>(x)]);
        }
        if (upper - lower < tol) return lower;

        double norm = 0.0;
        for (int x = 0; x < nx; ++x) {
            r[static_cast<std::size_t>(x)] *= std::exp(logc[static_cast<std::size_t>(x)]);
            norm += r[static_cast<std::size_t>(x)];
        }
        for (double& v : r) v /= norm;
    }
    throw Error(Errc::no_convergence, "Blahut-Arimoto did not reach tolerance");
}

} // namespace ncl
