// optimize.hpp -- differential-evolution engine, variational objectives, and
// the closed-form energy/purity expressions they optimize against.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "rabivar/ansatz.hpp"
#include "rabivar/eig.hpp"
#include "rabivar/model.hpp"

namespace rabivar::optimize {

using Objective = std::function<double(const Eigen::VectorXd&)>;

// ---- differential evolution ----
//
// rand/1/bin with reflecting bounds. A candidate that evaluates non-finite or
// throws is kept in the population but scored +inf, so it is displaced as soon
// as any finite mutant appears. Runs are deterministic for a fixed seed.

struct DEConfig {
    std::vector<std::array<double, 2>> bounds;  // inclusive {lo, hi} per parameter
    int population = 0;                         // 0 -> 15 * n_params (minimum 4)
    double weight = 0.8;                        // differential weight F
    double crossover = 0.9;                     // crossover rate CR
    int max_generations = 2000;
    double tol = 1e-10;  // stop when all scores are finite and spread < tol
    std::uint64_t seed = 1;
    bool record_history = false;
};

struct DEResult {
    Eigen::VectorXd best;
    double best_value = 0.0;
    int generations = 0;
    bool converged = false;
    std::vector<double> history;  // best score per generation when recorded
};

DEResult differential_evolution(const Objective& f, const DEConfig& cfg);

// ---- variational objectives ----
//
// All fidelity objectives score 1 - |<trial|target>| (0 is a perfect match);
// trial states are built at the target's truncation. Parameters whose trial
// state cannot be built there (spilled truncation, vanishing norm) score
// +infinity rather than throwing, so wide search boxes stay safe.

// params = (alpha_c, r, phi).
Objective noq_ground_objective(const qops::StateVector& target);
Objective noq_excited_objective(const qops::StateVector& target);

// params = (alpha,); the entangled-coherent-state restriction (r = 0,
// phi = pi/2) of the same families, with alpha signed.
Objective ecs_ground_objective(const qops::StateVector& target);
Objective ecs_excited_objective(const qops::StateVector& target);

// Default search boxes, wide enough for every coupling up to g.
std::vector<std::array<double, 2>> noq_bounds(const model::ModelParams& p);
std::vector<std::array<double, 2>> ecs_bounds(const model::ModelParams& p);
std::vector<std::array<double, 2>> energy_bounds(const model::ModelParams& p);

// ---- energy surface ----

// <H> on the NOQ ground family in Schmidt parameters, closed form:
//   E = omega_c <n> + g <a + a^dag> - omega_q (p_minus - 1/2)
// with
//   <a+a^dag> = -4 alpha_c sqrt(p(1-p) / (N+ N-))
//   <n> = sinh^2 r + x cosh(2r) [p N-/N+ + (1-p) N+/N- + tanh(2r)],
// x = alpha_c^2 e^{-2r}, N+- = 1 +- w. The N- singularity at alpha_c -> 0 is
// removable and handled by series.
double noq_energy(const ansatz::SchmidtParams& s, const model::ModelParams& p);

// Energy minimization over (p_minus, alpha_c, r); cfg.bounds may be empty to
// use energy_bounds(p).
struct EnergyMinResult {
    ansatz::SchmidtParams params;
    double energy = 0.0;
    DEResult de;
};
EnergyMinResult minimize_energy(const model::ModelParams& p, DEConfig cfg = {});

// Ground energy relative to the decoupled reference -omega_q/2.
double energy_shift(double ground_energy, const model::ModelParams& p);

// ---- asymptotic expressions (valid for g >= g_star approximate) ----

// alpha_c ~ (g/omega_c) sqrt(1 - (g*/g)^4); throws InvalidRegime for g < g*.
double asymptotic_alpha(const model::ModelParams& p);

// Cavity purity ~ (1 + (g*/g)^4)/2; throws InvalidRegime for g < g*.
double asymptotic_purity(const model::ModelParams& p);

// Purity of an optimal-weight cat at fixed displacement,
//   mu(alpha) = 1 / (1 + 1/sqrt(1 + (omega_q / (2 omega_c alpha^2))^2));
// alpha = 0 gives 1.
double purity_vs_displacement(double alpha, double omega_q_over_omega_c);

}  // namespace rabivar::optimize
