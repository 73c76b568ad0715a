// rabivar -- batch CLI for variational ground states of the quantum Rabi model.
//
// Subcommands:
//   sweep          optimize an ansatz over a grid of (omega_q, g/g*) points, CSV out
//   excited-sweep  sweep with the noq-excited ansatz preselected
//   point          single (omega_q, g/g*) point, JSON out
//   energy-min     point with the energy objective preselected
//   wigner         Wigner-function grid of a chosen cavity state
//
// omega_c is fixed to 1; couplings are quoted in units of g* = sqrt(omega_q)/2.
// Outputs are byte-reproducible for a fixed seed. Exit status is 0 only if
// every requested point finished without an error tag.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rabivar/driver.hpp"

namespace {

using rabivar::driver::AnsatzKind;
using rabivar::driver::ObjectiveKind;
using rabivar::driver::PointResult;

// "a", "a,b,c", or "start:stop:count" (inclusive, evenly spaced).
std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto c1 = token.find(':');
        if (c1 == std::string::npos) {
            out.push_back(std::stod(token));
            continue;
        }
        const auto c2 = token.find(':', c1 + 1);
        if (c2 == std::string::npos) {
            throw CLI::ValidationError("ranges take the form start:stop:count");
        }
        const double start = std::stod(token.substr(0, c1));
        const double stop = std::stod(token.substr(c1 + 1, c2 - c1 - 1));
        const long count = std::stol(token.substr(c2 + 1));
        if (count < 1) throw CLI::ValidationError("range count must be >= 1");
        if (count == 1) {
            out.push_back(start);
            continue;
        }
        for (long i = 0; i < count; ++i) {
            out.push_back(start + (stop - start) * double(i) / double(count - 1));
        }
    }
    if (out.empty()) throw CLI::ValidationError("empty value list");
    return out;
}

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw CLI::FileError("cannot open '" + path + "' for writing");
    return file;
}

int count_failures(const std::vector<PointResult>& rows) {
    int bad = 0;
    for (const auto& r : rows) {
        if (r.status != "ok") {
            std::cerr << "rabivar: point omega_q=" << r.spec.omega_q
                      << " g/g*=" << r.spec.g_over_gstar << " failed: " << r.status << "\n";
            ++bad;
        }
    }
    return bad;
}

struct CommonOpts {
    std::string omega_q_text = "1";
    std::string ratio_text = "1";
    std::string ansatz = "noq-ground";
    std::string objective = "fidelity";
    std::uint64_t seed = 1;
    long long dim_override = 0;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool lists) {
    const char* wq_help = lists ? "Qubit frequencies (value, comma list, or start:stop:count)"
                                : "Qubit frequency";
    const char* g_help = lists
                             ? "Couplings in units of g* (value, comma list, or start:stop:count)"
                             : "Coupling in units of g*";
    cmd->add_option("--omega-q", o.omega_q_text, wq_help)->capture_default_str();
    cmd->add_option("--g-over-gstar", o.ratio_text, g_help)->capture_default_str();
    cmd->add_option("--seed", o.seed, "Base RNG seed")->capture_default_str();
    cmd->add_option("--dim-override", o.dim_override,
                    "Fock truncation (0 = automatic with convergence check)")
        ->capture_default_str();
    cmd->add_option("--out", o.out_path, "Output file ('-' or empty = stdout)");
}

double parse_single(const std::string& text, const char* what) {
    const std::vector<double> vals = parse_value_list(text);
    if (vals.size() != 1) {
        throw CLI::ValidationError(std::string(what) + " takes a single value here");
    }
    return vals[0];
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational ground states of the quantum Rabi model"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file with key=value lines");
    app.fallthrough();

    CommonOpts sweep_opts, point_opts, wigner_opts;
    int threads_opt = 0;

    CLI::App* sweep = app.add_subcommand("sweep", "Coupling sweep, CSV output");
    add_common(sweep, sweep_opts, true);
    sweep->add_option("--ansatz", sweep_opts.ansatz,
                      "Trial family: noq-ground|noq-excited|ecs-ground|ecs-excited")
        ->capture_default_str();
    sweep->add_option("--objective", sweep_opts.objective, "fidelity|energy")
        ->capture_default_str();
    sweep->add_option("--threads", threads_opt, "Worker threads (0 = RABIVAR_THREADS/auto)")
        ->capture_default_str();

    CLI::App* esweep = app.add_subcommand("excited-sweep", "sweep with the noq-excited ansatz");
    CommonOpts esweep_opts;
    esweep_opts.ansatz = "noq-excited";
    add_common(esweep, esweep_opts, true);
    esweep->add_option("--ansatz", esweep_opts.ansatz, "Trial family")->capture_default_str();
    esweep->add_option("--objective", esweep_opts.objective, "fidelity|energy")
        ->capture_default_str();
    esweep->add_option("--threads", threads_opt, "Worker threads")->capture_default_str();

    CLI::App* point = app.add_subcommand("point", "Single point, JSON output");
    add_common(point, point_opts, false);
    point->add_option("--ansatz", point_opts.ansatz, "Trial family")->capture_default_str();
    point->add_option("--objective", point_opts.objective, "fidelity|energy")
        ->capture_default_str();

    CLI::App* emin = app.add_subcommand("energy-min", "point with the energy objective");
    CommonOpts emin_opts;
    emin_opts.objective = "energy";
    add_common(emin, emin_opts, false);
    emin->add_option("--ansatz", emin_opts.ansatz, "Trial family")->capture_default_str();

    CLI::App* wig = app.add_subcommand("wigner", "Wigner-function grid of a cavity state");
    add_common(wig, wigner_opts, false);
    std::string source = "exact-ground";
    int nx = 101, np = 101;
    double half_width = 0.0;
    wig->add_option("--source", source, "exact-ground|noq-optimized|ecs-optimized")
        ->capture_default_str();
    wig->add_option("--nx", nx, "Grid points along x")->capture_default_str();
    wig->add_option("--np", np, "Grid points along p")->capture_default_str();
    wig->add_option("--half-width", half_width, "Quadrature half-width (0 = automatic)")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto run_sweep_cmd = [&](const CommonOpts& o) {
            rabivar::driver::SweepSpec s;
            s.omega_qs = parse_value_list(o.omega_q_text);
            s.g_ratios = parse_value_list(o.ratio_text);
            s.ansatz = rabivar::driver::ansatz_from_string(o.ansatz);
            s.objective = rabivar::driver::objective_from_string(o.objective);
            s.seed = o.seed;
            s.dim_override = o.dim_override;
            s.threads = threads_opt > 0 ? threads_opt : rabivar::driver::thread_budget();
            const std::vector<PointResult> rows = rabivar::driver::run_sweep(s);
            std::ofstream file;
            rabivar::driver::write_csv(open_sink(o.out_path, file), rows);
            return count_failures(rows) == 0 ? 0 : 1;
        };

        const auto run_point_cmd = [&](const CommonOpts& o) {
            rabivar::driver::PointSpec s;
            s.omega_q = parse_single(o.omega_q_text, "--omega-q");
            s.g_over_gstar = parse_single(o.ratio_text, "--g-over-gstar");
            s.ansatz = rabivar::driver::ansatz_from_string(o.ansatz);
            s.objective = rabivar::driver::objective_from_string(o.objective);
            s.seed = o.seed;
            s.dim_override = o.dim_override;
            const PointResult r = rabivar::driver::run_point(s);
            std::ofstream file;
            open_sink(o.out_path, file) << rabivar::driver::to_json(r);
            return count_failures({r}) == 0 ? 0 : 1;
        };

        if (sweep->parsed()) return run_sweep_cmd(sweep_opts);
        if (esweep->parsed()) return run_sweep_cmd(esweep_opts);
        if (point->parsed()) return run_point_cmd(point_opts);
        if (emin->parsed()) return run_point_cmd(emin_opts);
        if (wig->parsed()) {
            rabivar::driver::WignerJobSpec s;
            s.omega_q = parse_single(wigner_opts.omega_q_text, "--omega-q");
            s.g_over_gstar = parse_single(wigner_opts.ratio_text, "--g-over-gstar");
            s.source = rabivar::driver::wigner_source_from_string(source);
            s.seed = wigner_opts.seed;
            s.dim_override = wigner_opts.dim_override;
            s.nx = nx;
            s.np = np;
            s.half_width = half_width;
            s.threads = rabivar::driver::thread_budget();
            const rabivar::driver::WignerJobResult res = rabivar::driver::run_wigner(s);
            std::ofstream file;
            rabivar::driver::write_wigner(open_sink(wigner_opts.out_path, file), res);
            if (res.grid.truncation_warning) {
                std::cerr << "rabivar: warning: state weight near the truncation edge; "
                             "grid values may be unreliable\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "rabivar: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
