#include "uot/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "uot/asymptotics.hpp"
#include "uot/dual_solver.hpp"
#include "uot/io.hpp"
#include "uot/laguerre.hpp"
#include "uot/quantization.hpp"

namespace uot {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

Domain parse_domain(const json& arr) {
    return Domain(arr.at(0), arr.at(1), arr.at(2), arr.at(3));
}

json domain_json(const Domain& d) { return {d.x_min, d.x_max, d.y_min, d.y_max}; }

EntropyModel parse_model(const json& cfg) {
    const json m = cfg.value("model", json::object());
    return EntropyModel::parse(m.value("kind", "w2"), m.value("epsilon", 1.0));
}

GridDensity parse_grid(const json& cfg) {
    const json g = cfg.value("grid", json::object());
    const std::string density = g.value("density", "uniform");
    Domain d = density == "gaussian-bump" ? bump_domain() : Domain(0.0, 1.0, 0.0, 1.0);
    if (g.contains("domain")) d = parse_domain(g.at("domain"));
    return load_density(density, d, g.value("nx", 512), g.value("ny", 512));
}

DiscreteMeasure parse_nu(const json& cfg, const GridDensity& g, std::uint64_t seed) {
    const json nu = cfg.at("nu");
    if (nu.is_string()) {
        const std::string s = nu.get<std::string>();
        if (s.rfind("random:", 0) != 0) throw std::runtime_error("bad nu spec: " + s);
        const size_t colon = s.find(':', 7);
        if (colon == std::string::npos) throw std::runtime_error("bad nu spec: " + s);
        const int M = std::stoi(s.substr(7, colon - 7));
        const std::uint64_t nu_seed = std::stoull(s.substr(colon + 1)) + seed;
        std::vector<Point> pts = sample_initial_points(g, M, nu_seed);
        std::vector<double> masses(M, total_mass(g) / M);
        return DiscreteMeasure(g.domain(), std::move(pts), std::move(masses));
    }
    std::vector<Point> pts;
    for (const json& p : nu.at("points")) pts.push_back({p.at(0), p.at(1)});
    std::vector<double> masses = nu.at("masses").get<std::vector<double>>();
    return DiscreteMeasure(g.domain(), std::move(pts), std::move(masses));
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << std::setprecision(17) << j.dump(2) << '\n';
}

json resolved_config(const json& cfg, const std::string& command, std::uint64_t seed,
                     const std::string& out_dir) {
    json echo = cfg;
    echo["command"] = command;
    echo["seed"] = seed;
    echo["output_dir"] = out_dir;
    return echo;
}

int run_transport(const json& cfg, const GridDensity& g, const EntropyModel& m,
                  std::uint64_t seed, const fs::path& out, json summary) {
    const DiscreteMeasure nu = parse_nu(cfg, g, seed);
    const json solver = cfg.value("solver", json::object());
    TransportSolverOptions opts;
    opts.max_iter = solver.value("max_iter", opts.max_iter);
    opts.grad_tol = solver.value("grad_tol", opts.grad_tol);

    const TransportSolution sol = solve_weights(g, nu, m, opts);
    const Tessellation t = assign_cells(g, nu, m, sol.w);
    save_labels((out / "labels.csv").string(), t);
    save_raster((out / "rho.csv").string(),
                GridDensity(g.domain(), g.nx(), g.ny(), sol.rho_values));
    save_points((out / "nu.csv").string(), nu);

    summary["g_value"] = sol.g_value;
    summary["duality_gap"] = sol.duality_gap;
    summary["grad_norm"] = sol.grad_norm;
    summary["iterations"] = sol.iterations;
    summary["converged"] = sol.converged;
    summary["w"] = sol.w;
    summary["rho_cell_masses"] = sol.rho_cell_masses;
    write_json(out / "summary.json", summary);
    return sol.converged ? kExitOk : kExitNoConverge;
}

int run_quantize(const json& cfg, const GridDensity& g, const EntropyModel& m,
                 std::uint64_t seed, const fs::path& out, json summary) {
    const json solver = cfg.value("solver", json::object());
    QuantizationOptions opts;
    opts.seed = seed;
    opts.max_iter = solver.value("max_iter", opts.max_iter);
    opts.grad_tol = solver.value("grad_tol", opts.grad_tol);
    if (solver.value("method", "lloyd") == "bfgs") opts.method = QuantMethod::Bfgs;
    const int M = cfg.value("M", 16);

    const QuantizationState st = solve_quantization(g, M, m, opts);
    {
        std::vector<Point> pts = st.points;
        std::vector<double> masses = st.masses;
        save_points((out / "points.csv").string(),
                    DiscreteMeasure(g.domain(), std::move(pts), std::move(masses)));
    }
    save_labels((out / "labels.csv").string(), voronoi_assign(g, st.points));

    summary["energy"] = st.energy;
    summary["grad_norm"] = st.grad_norm;
    summary["iterations"] = st.iterations;
    summary["energy_history"] = st.energy_history;
    summary["masses"] = st.masses;
    const bool converged = st.grad_norm <= opts.grad_tol * total_mass(g);
    summary["converged"] = converged;
    write_json(out / "summary.json", summary);
    return converged ? kExitOk : kExitNoConverge;
}

int run_cell_problem(const EntropyModel& m, const fs::path& out, json summary) {
    const CellProblemTable table(m.unit_scale());
    std::ofstream csv(out / "cell_problem.csv");
    csv << std::setprecision(17) << "z,b,b_prime\n";
    for (size_t i = 0; i < table.z_samples().size(); ++i)
        csv << table.z_samples()[i] << ',' << table.b_values()[i] << ','
            << table.b_prime_values()[i] << '\n';
    summary["z_plateau"] = table.z_plateau();
    summary["slope_plateau"] = table.slope_plateau();
    write_json(out / "summary.json", summary);
    return kExitOk;
}

int run_asymptotic_density(const json& cfg, const GridDensity& g, const EntropyModel& m,
                           const fs::path& out, json summary) {
    const double P = cfg.value("P", 1.0);
    const AsymptoticDensityResult res = optimal_density(g, m, P);
    save_raster((out / "density.csv").string(), res.density);
    summary["lambda"] = res.lambda;
    summary["P"] = res.p_target;
    summary["energy"] = res.energy;
    write_json(out / "summary.json", summary);
    return kExitOk;
}

int run_sweep(const json& cfg, const GridDensity& g, const EntropyModel& m,
              std::uint64_t seed, const fs::path& out, json summary) {
    const json sweep = cfg.at("sweep");
    std::ofstream csv(out / "sweep.csv");
    csv << std::setprecision(17);
    json rows = json::array();
    bool all_converged = true;
    if (sweep.contains("epsilons")) {
        const DiscreteMeasure nu = parse_nu(cfg, g, seed);
        csv << "epsilon,g_value,duality_gap,converged\n";
        for (double eps : sweep.at("epsilons").get<std::vector<double>>()) {
            const EntropyModel me(m.kind(), eps);
            const TransportSolution sol = solve_weights(g, nu, me);
            csv << eps << ',' << sol.g_value << ',' << sol.duality_gap << ','
                << sol.converged << '\n';
            rows.push_back({{"epsilon", eps},
                            {"g_value", sol.g_value},
                            {"duality_gap", sol.duality_gap},
                            {"converged", sol.converged}});
            all_converged = all_converged && sol.converged;
        }
    } else if (sweep.contains("P")) {
        csv << "P,lambda,energy\n";
        for (double P : sweep.at("P").get<std::vector<double>>()) {
            const AsymptoticDensityResult res = optimal_density(g, m, P);
            csv << P << ',' << res.lambda << ',' << res.energy << '\n';
            rows.push_back({{"P", P}, {"lambda", res.lambda}, {"energy", res.energy}});
        }
    } else {
        throw std::runtime_error("sweep config needs \"epsilons\" or \"P\"");
    }
    summary["rows"] = rows;
    write_json(out / "summary.json", summary);
    return all_converged ? kExitOk : kExitNoConverge;
}

}  // namespace

int run_experiment(json config, const std::string& command,
                   std::optional<std::uint64_t> seed_override,
                   std::optional<std::string> out_override) {
    std::string cmd = command.empty() ? config.value("command", "") : command;
    const std::uint64_t seed =
        seed_override ? *seed_override : config.value("seed", std::uint64_t{0});
    const std::string out_dir =
        out_override ? *out_override : config.value("output_dir", "out");
    const fs::path out(out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);

    try {
        if (cmd.empty()) throw std::runtime_error("no command given");
        const EntropyModel m = parse_model(config);
        json summary;
        summary["config"] = resolved_config(config, cmd, seed, out_dir);
        if (cmd == "cell-problem") return run_cell_problem(m, out, std::move(summary));
        const GridDensity g = parse_grid(config);
        summary["config"]["grid_resolved"] = {{"domain", domain_json(g.domain())},
                                              {"nx", g.nx()},
                                              {"ny", g.ny()},
                                              {"total_mass", total_mass(g)}};
        if (cmd == "transport") return run_transport(config, g, m, seed, out, std::move(summary));
        if (cmd == "quantize") return run_quantize(config, g, m, seed, out, std::move(summary));
        if (cmd == "asymptotic-density")
            return run_asymptotic_density(config, g, m, out, std::move(summary));
        if (cmd == "sweep") return run_sweep(config, g, m, seed, out, std::move(summary));
        throw std::runtime_error("unknown command: " + cmd);
    } catch (const std::exception& e) {
        json err = {{"error", e.what()}, {"command", cmd}};
        try {
            write_json(out / "error.json", err);
        } catch (...) {
        }
        return kExitInput;
    }
}

}  // namespace uot
