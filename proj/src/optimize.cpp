#include "rabivar/optimize.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace rabivar::optimize {

using Eigen::VectorXd;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Thin wrapper over mt19937_64 so every draw the engine makes is explicit and
// reproducible across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double u01() { return double(eng_() >> 11) * 0x1.0p-53; }
    int below(int n) { return int(eng_() % std::uint64_t(n)); }

  private:
    std::mt19937_64 eng_;
};

double safe_eval(const Objective& f, const VectorXd& x) {
    double v = kInf;
    try {
        v = f(x);
    } catch (...) {
        return kInf;
    }
    return std::isfinite(v) ? v : kInf;
}

// Fold a value back into [lo, hi] by mirroring at the edges.
double reflect(double v, double lo, double hi) {
    if (lo == hi) return lo;
    if (v >= lo && v <= hi) return v;
    const double span = hi - lo;
    double y = std::fmod(v - lo, 2.0 * span);
    if (y < 0.0) y += 2.0 * span;
    return (y <= span) ? lo + y : hi - (y - span);
}

}  // namespace

DEResult differential_evolution(const Objective& f, const DEConfig& cfg) {
    const int n = int(cfg.bounds.size());
    if (n < 1) throw InvalidDimension("differential_evolution: empty bounds");
    for (const auto& b : cfg.bounds) {
        if (!(b[0] <= b[1]) || !std::isfinite(b[0]) || !std::isfinite(b[1])) {
            throw InvalidRegime("differential_evolution: malformed bound");
        }
    }
    if (!(cfg.weight > 0.0) || cfg.weight > 2.0) {
        throw InvalidRegime("differential_evolution: weight must be in (0, 2]");
    }
    if (cfg.crossover < 0.0 || cfg.crossover > 1.0) {
        throw InvalidRegime("differential_evolution: crossover must be in [0, 1]");
    }
    const int np = (cfg.population > 0) ? cfg.population : 15 * n;
    if (np < 4) throw InvalidRegime("differential_evolution: population must be >= 4");
    if (cfg.max_generations < 1) {
        throw InvalidRegime("differential_evolution: max_generations must be >= 1");
    }

    Rng rng(cfg.seed);
    std::vector<VectorXd> pop(static_cast<size_t>(np), VectorXd(n));
    std::vector<double> score(static_cast<size_t>(np), kInf);
    int finite_count = 0;
    for (int i = 0; i < np; ++i) {
        for (int j = 0; j < n; ++j) {
            pop[size_t(i)](j) = cfg.bounds[size_t(j)][0] +
                                rng.u01() * (cfg.bounds[size_t(j)][1] - cfg.bounds[size_t(j)][0]);
        }
        score[size_t(i)] = safe_eval(f, pop[size_t(i)]);
        if (std::isfinite(score[size_t(i)])) ++finite_count;
    }
    if (finite_count == 0) {
        throw DegenerateObjective("differential_evolution: no usable candidate at init");
    }

    DEResult out;
    VectorXd trial(n);
    for (int gen = 1; gen <= cfg.max_generations; ++gen) {
        for (int i = 0; i < np; ++i) {
            int a, b, c;
            do { a = rng.below(np); } while (a == i);
            do { b = rng.below(np); } while (b == i || b == a);
            do { c = rng.below(np); } while (c == i || c == b || c == a);
            const int jrand = rng.below(n);
            for (int j = 0; j < n; ++j) {
                const bool cross = rng.u01() < cfg.crossover || j == jrand;
                if (cross) {
                    const double v = pop[size_t(a)](j) +
                                     cfg.weight * (pop[size_t(b)](j) - pop[size_t(c)](j));
                    trial(j) = reflect(v, cfg.bounds[size_t(j)][0], cfg.bounds[size_t(j)][1]);
                } else {
                    trial(j) = pop[size_t(i)](j);
                }
            }
            const double ts = safe_eval(f, trial);
            if (ts <= score[size_t(i)]) {
                pop[size_t(i)] = trial;
                score[size_t(i)] = ts;
            }
        }

        double lo = kInf, hi = -kInf;
        int best_i = 0;
        bool all_finite = true;
        for (int i = 0; i < np; ++i) {
            const double s = score[size_t(i)];
            if (!std::isfinite(s)) {
                all_finite = false;
                continue;
            }
            if (s < lo) {
                lo = s;
                best_i = i;
            }
            if (s > hi) hi = s;
        }
        out.generations = gen;
        out.best = pop[size_t(best_i)];
        out.best_value = lo;
        if (cfg.record_history) out.history.push_back(lo);
        if (all_finite && hi - lo < cfg.tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

// ---- objectives ----

namespace {

Eigen::Index require_dim(const qops::StateVector& target) {
    if (target.dim_cavity < 1 || target.amps.size() != 2 * target.dim_cavity) {
        throw DimensionMismatch("objective: malformed target state");
    }
    return target.dim_cavity;
}

// Corner candidates can spill past the truncation or collapse to zero norm.
// Those points are infeasible rather than fatal: they score +inf.
template <typename Build>
double infeasible_as_inf(Build&& build) {
    try {
        return build();
    } catch (const TruncationLoss&) {
        return kInf;
    } catch (const VanishingNorm&) {
        return kInf;
    }
}

}  // namespace

Objective noq_ground_objective(const qops::StateVector& target) {
    const Eigen::Index dim = require_dim(target);
    return [target, dim](const VectorXd& x) {
        const ansatz::NOQParams q{x(0), x(1), x(2)};
        return infeasible_as_inf([&] {
            return 1.0 - ansatz::fidelity(ansatz::noq_ground(q, dim), target);
        });
    };
}

Objective noq_excited_objective(const qops::StateVector& target) {
    const Eigen::Index dim = require_dim(target);
    return [target, dim](const VectorXd& x) {
        const ansatz::NOQParams q{x(0), x(1), x(2)};
        return infeasible_as_inf([&] {
            return 1.0 - ansatz::fidelity(ansatz::noq_excited(q, dim), target);
        });
    };
}

Objective ecs_ground_objective(const qops::StateVector& target) {
    const Eigen::Index dim = require_dim(target);
    return [target, dim](const VectorXd& x) {
        return infeasible_as_inf([&] {
            return 1.0 - ansatz::fidelity(ansatz::ecs_ground(dim, x(0)), target);
        });
    };
}

Objective ecs_excited_objective(const qops::StateVector& target) {
    const Eigen::Index dim = require_dim(target);
    return [target, dim](const VectorXd& x) {
        return infeasible_as_inf([&] {
            return 1.0 - ansatz::fidelity(ansatz::ecs_excited(dim, x(0)), target);
        });
    };
}

std::vector<std::array<double, 2>> noq_bounds(const model::ModelParams& p) {
    model::validate(p);
    const double amax = 2.0 * p.g / p.omega_c + 1.0;
    return {{0.0, amax}, {-0.5, 1.5}, {M_PI_2, M_PI}};
}

std::vector<std::array<double, 2>> ecs_bounds(const model::ModelParams& p) {
    model::validate(p);
    const double amax = 2.0 * p.g / p.omega_c + 1.0;
    return {{-amax, amax}};
}

std::vector<std::array<double, 2>> energy_bounds(const model::ModelParams& p) {
    model::validate(p);
    const double amax = 2.0 * p.g / p.omega_c + 1.0;
    return {{0.5, 1.0}, {0.0, amax}, {-0.5, 1.5}};
}

// ---- energy surface ----

namespace {

// x / (1 - exp(-2x)), smooth through x = 0.
double x_over_nminus(double x) {
    if (x < 1e-6) return 0.5 * (1.0 + x + x * x / 3.0);
    return x / (1.0 - std::exp(-2.0 * x));
}

}  // namespace

double noq_energy(const ansatz::SchmidtParams& s, const model::ModelParams& p) {
    model::validate(p);
    if (s.alpha_c < 0.0) throw InvalidRegime("noq_energy: alpha_c must be >= 0");
    if (s.p_minus < 0.5 - 1e-12 || s.p_minus > 1.0 + 1e-12) {
        throw InvalidRegime("noq_energy: p_minus must lie in [1/2, 1]");
    }
    const double pm = std::clamp(s.p_minus, 0.5, 1.0);
    const double q = 1.0 - pm;
    const double x = s.alpha_c * s.alpha_c * std::exp(-2.0 * s.r);
    const double w = std::exp(-2.0 * x);
    const double np = 1.0 + w;
    const double nm = 1.0 - w;
    const double x_nm = x_over_nminus(x);

    // <a + a^dag> = -4 alpha sqrt(p q / (N+ N-)); alpha/sqrt(N-) stays finite
    // as alpha -> 0 because x/N- does.
    const double x_avg = -4.0 * std::sqrt(pm * q / np) * std::exp(s.r) * std::sqrt(x_nm);

    const double c2r = std::cosh(2.0 * s.r);
    const double n_avg = std::sinh(s.r) * std::sinh(s.r) +
                         c2r * (pm * x * nm / np + q * np * x_nm + x * std::tanh(2.0 * s.r));

    return p.omega_c * n_avg + p.g * x_avg - p.omega_q * (pm - 0.5);
}

EnergyMinResult minimize_energy(const model::ModelParams& p, DEConfig cfg) {
    model::validate(p);
    if (cfg.bounds.empty()) cfg.bounds = energy_bounds(p);
    const Objective f = [p](const VectorXd& x) {
        return noq_energy({x(0), x(1), x(2)}, p);
    };
    DEResult de = differential_evolution(f, cfg);
    EnergyMinResult out;
    out.params = {de.best(0), de.best(1), de.best(2)};
    out.energy = de.best_value;
    out.de = std::move(de);
    return out;
}

double energy_shift(double ground_energy, const model::ModelParams& p) {
    model::validate(p);
    return ground_energy + 0.5 * p.omega_q;
}

// ---- asymptotics ----

double asymptotic_alpha(const model::ModelParams& p) {
    const double gs = model::g_star(p.omega_c, p.omega_q, model::GStarForm::approximate);
    if (p.g < gs) throw InvalidRegime("asymptotic_alpha: requires g >= g_star");
    const double q = std::pow(gs / p.g, 4);
    return (p.g / p.omega_c) * std::sqrt(1.0 - q);
}

double asymptotic_purity(const model::ModelParams& p) {
    const double gs = model::g_star(p.omega_c, p.omega_q, model::GStarForm::approximate);
    if (p.g < gs) throw InvalidRegime("asymptotic_purity: requires g >= g_star");
    const double q = std::pow(gs / p.g, 4);
    return 0.5 * (1.0 + q);
}

double purity_vs_displacement(double alpha, double omega_q_over_omega_c) {
    if (!(omega_q_over_omega_c > 0.0)) {
        throw InvalidRegime("purity_vs_displacement: frequency ratio must be positive");
    }
    if (alpha < 0.0) throw InvalidRegime("purity_vs_displacement: alpha must be >= 0");
    if (alpha == 0.0) return 1.0;
    const double t = omega_q_over_omega_c / (2.0 * alpha * alpha);
    return 1.0 / (1.0 + 1.0 / std::sqrt(1.0 + t * t));
}

}  // namespace rabivar::optimize
