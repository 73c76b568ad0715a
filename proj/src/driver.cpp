#include "rabivar/driver.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace rabivar::driver {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string classify(const std::exception& e) {
    if (dynamic_cast<const InvalidDimension*>(&e)) return "invalid-dimension";
    if (dynamic_cast<const DimensionMismatch*>(&e)) return "dimension-mismatch";
    if (dynamic_cast<const TruncationLoss*>(&e)) return "truncation-loss";
    if (dynamic_cast<const VanishingNorm*>(&e)) return "vanishing-norm";
    if (dynamic_cast<const Resonance*>(&e)) return "resonance";
    if (dynamic_cast<const NonHermitian*>(&e)) return "non-hermitian";
    if (dynamic_cast<const ConvergenceFailure*>(&e)) return "convergence-failure";
    if (dynamic_cast<const DegenerateObjective*>(&e)) return "degenerate-objective";
    if (dynamic_cast<const OutOfRange*>(&e)) return "out-of-range";
    if (dynamic_cast<const InvalidRegime*>(&e)) return "invalid-regime";
    return "error";
}

}  // namespace

std::string to_string(AnsatzKind k) {
    switch (k) {
        case AnsatzKind::noq_ground: return "noq-ground";
        case AnsatzKind::noq_excited: return "noq-excited";
        case AnsatzKind::ecs_ground: return "ecs-ground";
        case AnsatzKind::ecs_excited: return "ecs-excited";
    }
    return "noq-ground";
}

std::string to_string(ObjectiveKind k) {
    return k == ObjectiveKind::energy ? "energy" : "fidelity";
}

std::string to_string(WignerSource s) {
    switch (s) {
        case WignerSource::exact_ground: return "exact-ground";
        case WignerSource::noq_optimized: return "noq-optimized";
        case WignerSource::ecs_optimized: return "ecs-optimized";
    }
    return "exact-ground";
}

AnsatzKind ansatz_from_string(const std::string& s) {
    if (s == "noq-ground") return AnsatzKind::noq_ground;
    if (s == "noq-excited") return AnsatzKind::noq_excited;
    if (s == "ecs-ground") return AnsatzKind::ecs_ground;
    if (s == "ecs-excited") return AnsatzKind::ecs_excited;
    throw InvalidRegime("unknown ansatz '" + s + "'");
}

ObjectiveKind objective_from_string(const std::string& s) {
    if (s == "fidelity") return ObjectiveKind::fidelity;
    if (s == "energy") return ObjectiveKind::energy;
    throw InvalidRegime("unknown objective '" + s + "'");
}

WignerSource wigner_source_from_string(const std::string& s) {
    if (s == "exact-ground") return WignerSource::exact_ground;
    if (s == "noq-optimized") return WignerSource::noq_optimized;
    if (s == "ecs-optimized") return WignerSource::ecs_optimized;
    throw InvalidRegime("unknown wigner source '" + s + "'");
}

int thread_budget() {
    int hw = int(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("RABIVAR_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return int(std::min<long>(v, hw));
    }
    return hw;
}

PointResult run_point(const PointSpec& spec) {
    PointResult out;
    out.spec = spec;
    out.g = kNaN;
    out.alpha_c = out.r = out.phi = out.p_minus = kNaN;
    out.purity_noq = out.purity_exact = kNaN;
    out.fidelity_error = out.trial_energy = out.energy_error = kNaN;
    out.exact_energy = out.exact_energy_shift = out.best_objective = kNaN;

    try {
        if (!(spec.omega_q > 0.0)) throw InvalidRegime("run_point: omega_q must be positive");
        model::ModelParams p;
        p.omega_c = 1.0;
        p.omega_q = spec.omega_q;
        p.g = spec.g_over_gstar * model::g_star(1.0, spec.omega_q, model::GStarForm::approximate);
        out.g = p.g;

        const bool excited =
            spec.ansatz == AnsatzKind::noq_excited || spec.ansatz == AnsatzKind::ecs_excited;
        if (spec.objective == ObjectiveKind::energy && spec.ansatz != AnsatzKind::noq_ground) {
            throw InvalidRegime("run_point: the energy objective requires the noq-ground ansatz");
        }
        const int k = excited ? 2 : 1;
        const eig::GroundResult exact = (spec.dim_override > 0)
                                            ? eig::rabi_eigenstates(p, spec.dim_override, k)
                                            : eig::converged_ground_state(p, k);
        out.dim = exact.dim_used;
        const qops::StateVector& target = exact.states[size_t(k - 1)];
        const double target_energy = exact.energies(k - 1);
        out.exact_energy = exact.energies(0);
        out.exact_energy_shift = optimize::energy_shift(exact.energies(0), p);
        out.purity_exact = ansatz::purity(ansatz::reduced_cavity(target));

        optimize::DEConfig cfg;
        cfg.seed = spec.seed;
        qops::StateVector trial;

        if (spec.objective == ObjectiveKind::fidelity) {
            optimize::Objective obj;
            switch (spec.ansatz) {
                case AnsatzKind::noq_ground:
                    cfg.bounds = optimize::noq_bounds(p);
                    obj = optimize::noq_ground_objective(target);
                    break;
                case AnsatzKind::noq_excited:
                    cfg.bounds = optimize::noq_bounds(p);
                    obj = optimize::noq_excited_objective(target);
                    break;
                case AnsatzKind::ecs_ground:
                    cfg.bounds = optimize::ecs_bounds(p);
                    obj = optimize::ecs_ground_objective(target);
                    break;
                case AnsatzKind::ecs_excited:
                    cfg.bounds = optimize::ecs_bounds(p);
                    obj = optimize::ecs_excited_objective(target);
                    break;
            }
            const optimize::DEResult de = optimize::differential_evolution(obj, cfg);
            out.de_generations = de.generations;
            out.de_converged = de.converged;
            out.best_objective = de.best_value;
            switch (spec.ansatz) {
                case AnsatzKind::noq_ground:
                    out.alpha_c = de.best(0);
                    out.r = de.best(1);
                    out.phi = de.best(2);
                    trial = ansatz::noq_ground({de.best(0), de.best(1), de.best(2)}, out.dim);
                    break;
                case AnsatzKind::noq_excited:
                    out.alpha_c = de.best(0);
                    out.r = de.best(1);
                    out.phi = de.best(2);
                    trial = ansatz::noq_excited({de.best(0), de.best(1), de.best(2)}, out.dim);
                    break;
                case AnsatzKind::ecs_ground:
                    out.alpha_c = de.best(0);
                    out.r = 0.0;
                    out.phi = M_PI_2;
                    trial = ansatz::ecs_ground(out.dim, de.best(0));
                    break;
                case AnsatzKind::ecs_excited:
                    out.alpha_c = de.best(0);
                    out.r = 0.0;
                    out.phi = M_PI_2;
                    trial = ansatz::ecs_excited(out.dim, de.best(0));
                    break;
            }
            out.fidelity_error = de.best_value;
        } else {
            const optimize::EnergyMinResult em = optimize::minimize_energy(p, cfg);
            out.de_generations = em.de.generations;
            out.de_converged = em.de.converged;
            out.best_objective = em.energy;
            out.alpha_c = em.params.alpha_c;
            out.r = em.params.r;
            try {
                out.phi = ansatz::noq_from_schmidt(em.params).phi;
            } catch (const OutOfRange&) {
                out.phi = kNaN;
            }
            trial = ansatz::noq_ground_schmidt(em.params, out.dim);
            out.fidelity_error = 1.0 - ansatz::fidelity(trial, target);
        }

        out.p_minus = trial.block(1).squaredNorm();
        out.purity_noq =
            ansatz::purity_from_weight(std::clamp(out.p_minus, 0.5, 1.0));
        out.trial_energy = model::energy_expectation(p, trial);
        out.energy_error = out.trial_energy - target_energy;
        out.status = "ok";
    } catch (const std::exception& e) {
        out.status = classify(e);
    }
    return out;
}

std::vector<PointResult> run_sweep(const SweepSpec& spec) {
    std::vector<PointSpec> points;
    for (const double wq : spec.omega_qs) {
        for (const double ratio : spec.g_ratios) {
            PointSpec ps;
            ps.omega_q = wq;
            ps.g_over_gstar = ratio;
            ps.ansatz = spec.ansatz;
            ps.objective = spec.objective;
            ps.dim_override = spec.dim_override;
            ps.seed = spec.seed + std::uint64_t(points.size());
            points.push_back(ps);
        }
    }
    std::vector<PointResult> results(points.size());
    const int nthreads = std::max(1, std::min<int>(spec.threads, int(points.size())));
    if (nthreads == 1) {
        for (size_t i = 0; i < points.size(); ++i) results[i] = run_point(points[i]);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(size_t(nthreads));
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) {
                    results[i] = run_point(points[i]);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return results;
}

void write_csv(std::ostream& os, const std::vector<PointResult>& rows) {
    os << "omega_q,g,g_over_gstar,dim,fidelity_error,energy_error,exact_energy_shift,"
          "alpha_c,r,phi,p_minus,purity_noq,purity_exact,de_generations,seed,status\n";
    for (const PointResult& r : rows) {
        os << fmt(r.spec.omega_q) << ',' << fmt(r.g) << ',' << fmt(r.spec.g_over_gstar) << ','
           << r.dim << ',' << fmt(r.fidelity_error) << ',' << fmt(r.energy_error) << ','
           << fmt(r.exact_energy_shift) << ',' << fmt(r.alpha_c) << ',' << fmt(r.r) << ','
           << fmt(r.phi) << ',' << fmt(r.p_minus) << ',' << fmt(r.purity_noq) << ','
           << fmt(r.purity_exact) << ',' << r.de_generations << ',' << r.spec.seed << ','
           << r.status << '\n';
    }
}

std::string to_json(const PointResult& r) {
    nlohmann::ordered_json j;
    const auto put = [&j](const char* key, double v) {
        if (std::isfinite(v)) {
            j[key] = v;
        } else {
            j[key] = fmt(v);
        }
    };
    j["omega_c"] = 1.0;
    put("omega_q", r.spec.omega_q);
    put("g", r.g);
    put("g_over_gstar", r.spec.g_over_gstar);
    j["ansatz"] = to_string(r.spec.ansatz);
    j["objective"] = to_string(r.spec.objective);
    j["dim"] = r.dim;
    j["seed"] = r.spec.seed;
    put("fidelity_error", r.fidelity_error);
    put("energy_error", r.energy_error);
    put("trial_energy", r.trial_energy);
    put("exact_energy", r.exact_energy);
    put("exact_energy_shift", r.exact_energy_shift);
    put("best_objective", r.best_objective);
    put("alpha_c", r.alpha_c);
    put("r", r.r);
    put("phi", r.phi);
    put("p_minus", r.p_minus);
    put("purity_noq", r.purity_noq);
    put("purity_exact", r.purity_exact);
    j["de_generations"] = r.de_generations;
    j["de_converged"] = r.de_converged;
    j["status"] = r.status;
    return j.dump(2) + "\n";
}

WignerJobResult run_wigner(const WignerJobSpec& spec) {
    if (!(spec.omega_q > 0.0)) throw InvalidRegime("run_wigner: omega_q must be positive");
    model::ModelParams p;
    p.omega_c = 1.0;
    p.omega_q = spec.omega_q;
    p.g = spec.g_over_gstar * model::g_star(1.0, spec.omega_q, model::GStarForm::approximate);

    const eig::GroundResult exact = (spec.dim_override > 0)
                                        ? eig::rabi_eigenstates(p, spec.dim_override, 1)
                                        : eig::converged_ground_state(p, 1);
    const Eigen::Index dim = exact.dim_used;

    qops::StateVector state;
    if (spec.source == WignerSource::exact_ground) {
        state = exact.states[0];
    } else if (spec.source == WignerSource::noq_optimized) {
        optimize::DEConfig cfg;
        cfg.seed = spec.seed;
        cfg.bounds = optimize::noq_bounds(p);
        const optimize::DEResult de =
            optimize::differential_evolution(optimize::noq_ground_objective(exact.states[0]), cfg);
        state = ansatz::noq_ground({de.best(0), de.best(1), de.best(2)}, dim);
    } else {
        optimize::DEConfig cfg;
        cfg.seed = spec.seed;
        cfg.bounds = optimize::ecs_bounds(p);
        const optimize::DEResult de =
            optimize::differential_evolution(optimize::ecs_ground_objective(exact.states[0]), cfg);
        state = ansatz::ecs_ground(dim, de.best(0));
    }

    double half = spec.half_width;
    if (!(half > 0.0)) {
        // Branches sit near |alpha| = g in phase space; sqrt(2) converts to
        // the quadrature axes, plus margin for the fringe envelope.
        half = std::ceil(10.0 * (std::sqrt(2.0) * 1.5 * p.g + 3.0)) / 10.0;
    }
    ansatz::WignerGridSpec gs;
    gs.x_min = -half;
    gs.x_max = half;
    gs.nx = spec.nx;
    gs.p_min = -half;
    gs.p_max = half;
    gs.np = spec.np;

    WignerJobResult out;
    out.spec = spec;
    out.g = p.g;
    out.dim = dim;
    out.grid = ansatz::wigner(state, gs, spec.threads);
    return out;
}

void write_wigner(std::ostream& os, const WignerJobResult& result) {
    const ansatz::WignerGridSpec& gs = result.grid.spec;
    os << fmt(gs.x_min) << ' ' << fmt(gs.x_max) << ' ' << gs.nx << '\n';
    os << fmt(gs.p_min) << ' ' << fmt(gs.p_max) << ' ' << gs.np << '\n';
    os << "# omega_c=1 omega_q=" << fmt(result.spec.omega_q) << " g=" << fmt(result.g)
       << " g_over_gstar=" << fmt(result.spec.g_over_gstar)
       << " source=" << to_string(result.spec.source) << " dim=" << result.dim
       << " seed=" << result.spec.seed
       << " truncation_warning=" << (result.grid.truncation_warning ? 1 : 0) << '\n';
    for (int ip = 0; ip < gs.np; ++ip) {
        for (int ix = 0; ix < gs.nx; ++ix) {
            if (ix) os << ' ';
            os << fmt(result.grid.w(ip, ix));
        }
        os << '\n';
    }
}

}  // namespace rabivar::driver
