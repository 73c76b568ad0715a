#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rabivar/driver.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

using namespace rabivar;
using namespace rabivar::driver;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("enum labels round trip") {
    for (auto k : {AnsatzKind::noq_ground, AnsatzKind::noq_excited, AnsatzKind::ecs_ground,
                   AnsatzKind::ecs_excited})
        CHECK(ansatz_from_string(to_string(k)) == k);
    for (auto k : {ObjectiveKind::fidelity, ObjectiveKind::energy})
        CHECK(objective_from_string(to_string(k)) == k);
    for (auto s : {WignerSource::exact_ground, WignerSource::noq_optimized,
                   WignerSource::ecs_optimized})
        CHECK(wigner_source_from_string(to_string(s)) == s);
    CHECK_THROWS_AS(ansatz_from_string("cat"), InvalidRegime);
    CHECK_THROWS_AS(objective_from_string("overlap"), InvalidRegime);
    CHECK_THROWS_AS(wigner_source_from_string("husimi"), InvalidRegime);
}

TEST_CASE("decoupled point is solved to numerical precision") {
    PointSpec spec;
    spec.omega_q = 5.0;
    spec.g_over_gstar = 0.0;
    spec.seed = 2;
    PointResult r = run_point(spec);
    CHECK(r.status == "ok");
    CHECK(r.g == 0.0);
    CHECK(r.dim == 50);
    CHECK(r.fidelity_error < 1e-8);
    CHECK(std::abs(r.p_minus - 1.0) < 1e-4);
    CHECK(std::abs(r.purity_noq - 1.0) < 1e-3);
    CHECK(std::abs(r.exact_energy + 2.5) < 1e-10);
    CHECK(std::abs(r.exact_energy_shift) < 1e-10);
    CHECK(r.energy_error > -1e-9);

    // same spec, same bytes
    CHECK(to_json(run_point(spec)) == to_json(r));

    auto j = nlohmann::json::parse(to_json(r));
    CHECK(j["omega_c"] == 1.0);
    CHECK(j["ansatz"] == "noq-ground");
    CHECK(j["objective"] == "fidelity");
    CHECK(j["dim"] == 50);
    CHECK(j["status"] == "ok");
    CHECK(j["de_converged"].is_boolean());
    CHECK(j["fidelity_error"].is_number());
}

TEST_CASE("failures come back as tagged rows") {
    PointSpec spec;
    spec.omega_q = 0.0;
    PointResult r = run_point(spec);
    CHECK(r.status == "invalid-regime");
    CHECK(std::isnan(r.fidelity_error));

    spec.omega_q = 5.0;
    spec.ansatz = AnsatzKind::ecs_ground;
    spec.objective = ObjectiveKind::energy;
    CHECK(run_point(spec).status == "invalid-regime");
}

TEST_CASE("energy-objective rows carry variational diagnostics") {
    PointSpec spec;
    spec.omega_q = 5.0;
    spec.g_over_gstar = 1.0;
    spec.objective = ObjectiveKind::energy;
    spec.seed = 4;
    PointResult r = run_point(spec);
    CHECK(r.status == "ok");
    CHECK(r.energy_error > -1e-9);  // variational bound
    CHECK(r.energy_error < 0.5 * std::abs(r.exact_energy_shift));
    CHECK(r.p_minus >= 0.5);
    CHECK(r.p_minus <= 1.0);
    const double w = r.p_minus;
    CHECK(std::abs(r.purity_noq - (w * w + (1.0 - w) * (1.0 - w))) < 1e-9);
    CHECK(std::abs(r.best_objective - r.trial_energy) < 1e-6);
}

TEST_CASE("excited rows and the ECS parameter pinning") {
    PointSpec spec;
    spec.omega_q = 5.0;
    spec.g_over_gstar = 0.5;
    spec.ansatz = AnsatzKind::noq_excited;
    spec.seed = 6;
    PointResult noq = run_point(spec);
    CHECK(noq.status == "ok");
    CHECK(noq.fidelity_error < 0.01);

    spec.ansatz = AnsatzKind::ecs_excited;
    PointResult ecs = run_point(spec);
    CHECK(ecs.status == "ok");
    CHECK(ecs.r == 0.0);
    CHECK(ecs.phi == doctest::Approx(M_PI / 2).epsilon(1e-12));
    CHECK(noq.fidelity_error <= ecs.fidelity_error + 1e-12);
}

TEST_CASE("sweep order, per-point seeds, and thread independence") {
    SweepSpec spec;
    spec.omega_qs = {5.0, 20.0};
    spec.g_ratios = {0.2, 0.8};
    spec.seed = 9;
    spec.dim_override = 45;
    auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].spec.omega_q == 5.0);
    CHECK(rows[0].spec.g_over_gstar == 0.2);
    CHECK(rows[1].spec.g_over_gstar == 0.8);
    CHECK(rows[2].spec.omega_q == 20.0);
    CHECK(rows[3].spec.g_over_gstar == 0.8);
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].spec.seed == 9 + i);
        CHECK(rows[i].status == "ok");
        CHECK(rows[i].dim == 45);
    }

    std::ostringstream serial, parallel;
    write_csv(serial, rows);
    spec.threads = 2;
    write_csv(parallel, run_sweep(spec));
    CHECK(serial.str() == parallel.str());
}

TEST_CASE("csv header and row shape are frozen") {
    SweepSpec spec;
    spec.omega_qs = {5.0};
    spec.g_ratios = {0.0};
    spec.dim_override = 30;
    std::ostringstream os;
    write_csv(os, run_sweep(spec));
    auto lines = lines_of(os.str());
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] ==
          "omega_q,g,g_over_gstar,dim,fidelity_error,energy_error,exact_energy_shift,"
          "alpha_c,r,phi,p_minus,purity_noq,purity_exact,de_generations,seed,status");
    CHECK(std::count(lines[1].begin(), lines[1].end(), ',') == 15);
    CHECK(lines[1].substr(lines[1].rfind(',') + 1) == "ok");
}

TEST_CASE("vacuum wigner job peaks at two on the origin") {
    WignerJobSpec spec;
    spec.omega_q = 5.0;
    spec.g_over_gstar = 0.0;
    spec.nx = spec.np = 41;
    spec.half_width = 3.0;
    WignerJobResult res = run_wigner(spec);
    CHECK(std::abs(res.grid.w(20, 20) - 2.0) < 1e-6);
    CHECK(!res.grid.truncation_warning);

    std::ostringstream first, second;
    write_wigner(first, res);
    write_wigner(second, run_wigner(spec));
    CHECK(first.str() == second.str());

    auto lines = lines_of(first.str());
    REQUIRE(lines.size() == size_t(3 + spec.np));
    std::istringstream xaxis(lines[0]);
    double x0 = 0, x1 = 0;
    int nx = 0;
    xaxis >> x0 >> x1 >> nx;
    CHECK(x0 == -3.0);
    CHECK(x1 == 3.0);
    CHECK(nx == 41);
    CHECK(lines[2].rfind("# ", 0) == 0);
    std::istringstream row(lines[3 + 20]);
    for (int ix = 0; ix <= 20; ++ix) row >> x0;
    CHECK(std::abs(x0 - res.grid.w(20, 20)) < 1e-15);
}

TEST_CASE("near-degenerate regime shows two lobes and no central fringe") {
    // with the splitting term negligible the cavity is an even mixture of
    // opposite displacements, so the interference ridge at the origin is gone
    WignerJobSpec spec;
    spec.omega_q = 1e-4;
    spec.g_over_gstar = 400.0;  // g = 2
    spec.nx = spec.np = 61;
    spec.half_width = 5.0;
    WignerJobResult res = run_wigner(spec);
    CHECK(std::abs(res.g - 2.0) < 1e-12);
    CHECK(std::abs(res.grid.w(30, 30)) < 0.15);

    int best_ix = 0, best_ip = 0;
    double best = -10.0;
    for (int ip = 0; ip < 61; ++ip)
        for (int ix = 0; ix < 61; ++ix)
            if (res.grid.w(ip, ix) > best) best = res.grid.w(ip, ix), best_ip = ip, best_ix = ix;
    const double dx = 10.0 / 60.0;
    CHECK(best > 0.5);
    CHECK(std::abs(best_ip * dx - 5.0) < 0.5);                   // on the p = 0 line
    CHECK(std::abs(std::abs(best_ix * dx - 5.0) - 2.0 * std::sqrt(2.0)) < 0.3);
}

TEST_CASE("optimized-state wigner tracks the exact one") {
    WignerJobSpec spec;
    spec.omega_q = 20.0;
    spec.g_over_gstar = 1.0;
    spec.nx = spec.np = 41;
    spec.half_width = 6.0;
    spec.seed = 12;
    WignerJobResult exact = run_wigner(spec);
    spec.source = WignerSource::noq_optimized;
    WignerJobResult fitted = run_wigner(spec);
    CHECK(exact.dim == fitted.dim);
    CHECK((exact.grid.w - fitted.grid.w).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("thread budget respects the environment cap") {
    setenv("RABIVAR_THREADS", "1", 1);
    CHECK(thread_budget() == 1);
    setenv("RABIVAR_THREADS", "0", 1);  // out of range, fall back
    CHECK(thread_budget() >= 1);
    unsetenv("RABIVAR_THREADS");
    CHECK(thread_budget() >= 1);
}
