// driver.hpp -- batch engine behind the command-line tool: optimize trial
// states against exact targets across coupling sweeps, and export CSV/JSON
// tables and Wigner-function grids with stable, reproducible formatting.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rabivar/ansatz.hpp"
#include "rabivar/optimize.hpp"

namespace rabivar::driver {

enum class AnsatzKind { noq_ground, noq_excited, ecs_ground, ecs_excited };
enum class ObjectiveKind { fidelity, energy };
enum class WignerSource { exact_ground, noq_optimized, ecs_optimized };

std::string to_string(AnsatzKind k);
std::string to_string(ObjectiveKind k);
std::string to_string(WignerSource s);
AnsatzKind ansatz_from_string(const std::string& s);
ObjectiveKind objective_from_string(const std::string& s);
WignerSource wigner_source_from_string(const std::string& s);

// omega_c is pinned to 1 in the driver; couplings are given in units of the
// approximate crossover scale g* = sqrt(omega_q)/2.
struct PointSpec {
    double omega_q = 1.0;
    double g_over_gstar = 1.0;
    AnsatzKind ansatz = AnsatzKind::noq_ground;
    ObjectiveKind objective = ObjectiveKind::fidelity;
    std::uint64_t seed = 1;
    Eigen::Index dim_override = 0;  // 0 -> automatic truncation policy
};

struct PointResult {
    PointSpec spec;
    double g = 0.0;
    Eigen::Index dim = 0;
    // Optimized trial-state parameters; ECS rows use alpha_c for the signed
    // coherent amplitude and pin r = 0, phi = pi/2. Energy rows recover phi
    // from the weight when possible (NaN otherwise).
    double alpha_c = 0.0, r = 0.0, phi = 0.0;
    double p_minus = 0.0;      // qubit |-z> weight of the optimized trial
    double purity_noq = 0.0;   // p^2 + (1-p)^2 at that weight
    double purity_exact = 0.0; // Tr rho_cav^2 of the exact target
    double fidelity_error = 0.0;      // 1 - |<trial|target>|
    double trial_energy = 0.0;        // <trial|H|trial> at the working truncation
    double energy_error = 0.0;        // trial_energy - exact target energy
    double exact_energy = 0.0;        // exact ground energy
    double exact_energy_shift = 0.0;  // exact_energy + omega_q/2
    double best_objective = 0.0;      // optimizer's own score at the optimum
    int de_generations = 0;
    bool de_converged = false;
    std::string status = "ok";  // "ok" or a short error tag
};

PointResult run_point(const PointSpec& spec);

struct SweepSpec {
    std::vector<double> omega_qs;
    std::vector<double> g_ratios;
    AnsatzKind ansatz = AnsatzKind::noq_ground;
    ObjectiveKind objective = ObjectiveKind::fidelity;
    std::uint64_t seed = 1;
    Eigen::Index dim_override = 0;
    int threads = 1;
};

// Cross product, omega_q outer, g ratio inner; point i runs with seed + i.
// Row order and content are independent of the thread count.
std::vector<PointResult> run_sweep(const SweepSpec& spec);

void write_csv(std::ostream& os, const std::vector<PointResult>& rows);
std::string to_json(const PointResult& row);

struct WignerJobSpec {
    double omega_q = 1.0;
    double g_over_gstar = 1.0;
    WignerSource source = WignerSource::exact_ground;
    std::uint64_t seed = 1;
    Eigen::Index dim_override = 0;
    int nx = 101;
    int np = 101;
    double half_width = 0.0;  // quadrature half-width; 0 -> from the coupling
    int threads = 1;
};

struct WignerJobResult {
    WignerJobSpec spec;
    double g = 0.0;
    Eigen::Index dim = 0;
    ansatz::WignerGrid grid;
};

WignerJobResult run_wigner(const WignerJobSpec& spec);

// Three header lines (x axis, p axis, "#" parameter echo), then np rows of
// nx samples each, p increasing row by row.
void write_wigner(std::ostream& os, const WignerJobResult& result);

// Worker cap from RABIVAR_THREADS (falls back to the hardware count).
int thread_budget();

}  // namespace rabivar::driver
