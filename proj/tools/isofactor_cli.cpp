// Command-line front end: generate isospectral families, print spectra,
// run the verification suite, and export CSV/JSON/plot artifacts.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "isofactor/darboux.hpp"
#include "isofactor/eigensolve.hpp"
#include "isofactor/factorize.hpp"
#include "isofactor/seeds.hpp"

using json = nlohmann::ordered_json;
using namespace isofactor;

namespace {

// All reported floats are snapped to 12 significant digits so identical
// configurations produce byte-identical reports.
double snap12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json snap_vec(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(snap12(x));
    return a;
}

struct CommonOpts {
    std::string system = "oscillator";
    std::string scheme = "mielnik";
    int l = 1;
    int k = 0;
    std::string gamma = "2";     // scalar or a:b:step sweep
    std::string lambda = "0.3";  // scalar or a:b:step sweep
    double nu = 0.0;
    std::vector<double> epsilons;
    int levels = 5;
    double grid_min = 0.0;
    double grid_max = 0.0;
    int grid_n = 0;
    double tol = 0.0;
    std::string out_dir;
    bool corrupt_beta = false;
    bool no_plot = false;
    std::string config_file;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--system", o.system, "oscillator | hydrogen")
        ->check(CLI::IsMember({"oscillator", "hydrogen"}));
    cmd->add_option("--scheme", o.scheme, "sdih | mielnik | generalized | chain")
        ->check(CLI::IsMember({"sdih", "mielnik", "generalized", "chain"}));
    cmd->add_option("--l", o.l, "azimuthal quantum number (hydrogen)");
    cmd->add_option("--k", o.k, "level index of the factorization energy");
    cmd->add_option("--gamma", o.gamma, "family parameter, scalar or a:b:step sweep");
    cmd->add_option("--lambda", o.lambda, "family parameter, scalar or a:b:step sweep");
    cmd->add_option("--nu", o.nu, "odd-branch mixing of the oscillator seed");
    cmd->add_option("--epsilons", o.epsilons, "chain factorization energies")->delimiter(',');
    cmd->add_option("--levels", o.levels, "number of levels to report");
    cmd->add_option("--grid-min", o.grid_min, "left end of the grid");
    cmd->add_option("--grid-max", o.grid_max, "right end of the grid");
    cmd->add_option("--grid-n", o.grid_n, "number of grid nodes");
    cmd->add_option("--tol", o.tol, "spectrum comparison tolerance");
    cmd->add_option("--out-dir", o.out_dir, "output directory (default $ISOFACTOR_OUT_DIR or .)");
    cmd->add_flag("--corrupt-beta", o.corrupt_beta)->group(""); // negative control, hidden
    cmd->add_flag("--no-plot", o.no_plot, "skip the gnuplot script");
    cmd->add_option("--config", o.config_file, "key=value config file; flags take precedence");
}

// key=value lines; a value from the file is applied only when the matching
// flag was not given on the command line.
void apply_config(CLI::App* cmd, CommonOpts& o) {
    if (o.config_file.empty())
        return;
    std::ifstream in(o.config_file);
    if (!in)
        throw DomainError("config file not found: " + o.config_file);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(lineno) + " is not key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        if (cmd->count("--" + key) > 0)
            continue; // flag wins
        if (key == "system") o.system = val;
        else if (key == "scheme") o.scheme = val;
        else if (key == "l") o.l = std::stoi(val);
        else if (key == "k") o.k = std::stoi(val);
        else if (key == "gamma") o.gamma = val;
        else if (key == "lambda") o.lambda = val;
        else if (key == "nu") o.nu = std::stod(val);
        else if (key == "levels") o.levels = std::stoi(val);
        else if (key == "grid-min") o.grid_min = std::stod(val);
        else if (key == "grid-max") o.grid_max = std::stod(val);
        else if (key == "grid-n") o.grid_n = std::stoi(val);
        else if (key == "tol") o.tol = std::stod(val);
        else if (key == "out-dir") o.out_dir = val;
        else if (key == "epsilons") {
            o.epsilons.clear();
            std::stringstream ss(val);
            std::string tok;
            while (std::getline(ss, tok, ','))
                o.epsilons.push_back(std::stod(tok));
        } else {
            throw DomainError("config line " + std::to_string(lineno) + ": unknown key '" +
                              key + "'");
        }
    }
}

std::filesystem::path resolve_out_dir(const CommonOpts& o) {
    if (!o.out_dir.empty())
        return o.out_dir;
    if (const char* env = std::getenv("ISOFACTOR_OUT_DIR"); env && *env)
        return env;
    return ".";
}

Grid default_grid(const CommonOpts& o) {
    if (o.grid_n > 0) {
        double lo = o.grid_min, hi = o.grid_max;
        if (o.system == "hydrogen" && lo <= 0.0)
            lo = (hi > 0.0 ? hi : 60.0) / o.grid_n;
        if (hi <= lo) {
            hi = (o.system == "hydrogen") ? 60.0 : 8.0;
            if (o.system != "hydrogen") lo = -8.0;
        }
        return Grid(lo, hi, o.grid_n);
    }
    if (o.system == "hydrogen") {
        const int n = 12001;
        return Grid(60.0 / n, 60.0, n);
    }
    return Grid(-8.0, 8.0, 4001);
}

double default_tol(const CommonOpts& o) {
    if (o.tol > 0.0) return o.tol;
    return o.system == "hydrogen" ? 5e-3 : 2e-3;
}

// "a:b:step" inclusive sweep, or a single scalar.
std::vector<double> parse_sweep(const std::string& s) {
    std::vector<double> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':'))
        parts.push_back(std::stod(tok));
    if (parts.size() == 1)
        return parts;
    if (parts.size() != 3 || parts[2] <= 0.0)
        throw DomainError("sweep must be 'a:b:step' with step > 0: " + s);
    std::vector<double> out;
    for (double v = parts[0]; v <= parts[1] + 1e-12 * std::fabs(parts[2]); v += parts[2])
        out.push_back(snap12(v));
    return out;
}

std::string param_tag(double v) {
    std::string s = fmt12(snap12(v));
    for (char& c : s) {
        if (c == '.') c = 'p';
        if (c == '-') c = 'm';
        if (c == '+') c = ' ';
    }
    std::erase(s, ' ');
    return s;
}

BetaFunction corrupted(const BetaFunction& b, const Grid& g) {
    BetaFunction out = b;
    GridFunction v = b.values_on(g);
    std::vector<double> shifted(v.values());
    for (double& x : shifted) x += 0.01;
    out.value_fn = nullptr;
    out.antideriv_fn = nullptr;
    out.samples = GridFunction(g, std::move(shifted));
    if (!out.deriv_fn && !out.deriv_samples)
        out.deriv_samples = b.derivative_on(g);
    return out;
}

TransformResult build_family(const CommonOpts& o, double param, const Grid& g) {
    if (o.scheme == "sdih") {
        if (o.system == "hydrogen")
            return sdih_partner(PotentialSpec::hydrogen(o.l), g);
        return sdih_partner(PotentialSpec::oscillator(), g);
    }
    if (o.scheme == "mielnik") {
        if (o.system == "hydrogen")
            return mielnik_hydrogen_family(o.l, param, g);
        return mielnik_oscillator_family(param, g);
    }
    if (o.scheme == "generalized") {
        if (o.system == "hydrogen")
            return generalized_hydrogen_family(o.l, o.k, param, g);
        double eps = o.epsilons.empty() ? oscillator_energy(std::max(o.k, 0)) : o.epsilons[0];
        return generalized_oscillator_family(eps, o.nu, g);
    }
    throw DomainError("family: unsupported scheme '" + o.scheme + "' (use the chain subcommand)");
}

struct Check {
    std::string name;
    double value;
    double tolerance;
    bool pass;
};

json checks_json(const std::vector<Check>& checks) {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name},
                       {"value", snap12(c.value)},
                       {"tolerance", snap12(c.tolerance)},
                       {"pass", c.pass}});
    return arr;
}

bool all_pass(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

struct FamilyArtifacts {
    json report;
    bool pass;
    std::string stem;
};

FamilyArtifacts run_family_member(const CommonOpts& o, double param, bool tagged) {
    Grid g = default_grid(o);
    const double tol = default_tol(o);
    TransformResult fam = build_family(o, param, g);
    if (o.corrupt_beta)
        fam.scheme.beta = corrupted(fam.scheme.beta, g);

    const RiccatiSign sign = sign_of(fam.scheme.ordering);
    GridFunction res = riccati_residual(fam.scheme.beta, fam.source_potential,
                                        fam.epsilon, sign);
    std::vector<Check> checks;
    checks.push_back({"riccati_residual_max", max_abs(res), 1e-6, max_abs(res) <= 1e-6});

    SpectrumReport rep = isospectral_report(fam.source_potential, fam.target_potential,
                                            fam.epsilon, o.levels, tol);
    checks.push_back({"spectrum_max_error", rep.max_abs_error, tol, rep.pass});

    if (fam.missing.normalizable) {
        double rq = rayleigh_quotient(fam.target_potential, fam.missing.psi);
        checks.push_back({"missing_state_rayleigh_error", std::fabs(rq - fam.epsilon), tol,
                          std::fabs(rq - fam.epsilon) <= tol});
    }

    // Map the first source eigenfunctions across the transform.
    DiscretizedHamiltonian H = build_hamiltonian(fam.source_potential);
    const int n_map = std::min(o.levels, 3);
    std::vector<double> ev = lowest_eigenvalues(H, std::max(n_map, 1));
    std::vector<GridFunction> mapped;
    double worst_intertwine = 0.0;
    for (int i = 0; i < n_map; ++i) {
        GridFunction psi = eigenvector(H, ev[i]);
        worst_intertwine = std::max(
            worst_intertwine, intertwine_residual(fam.source_potential, fam.target_potential,
                                                  fam.scheme.beta, psi, fam.scheme.ordering));
        mapped.push_back(map_eigenfunction(fam.scheme, psi, ev[i]));
    }
    checks.push_back(
        {"intertwine_residual_max", worst_intertwine, 1e-3, worst_intertwine <= 1e-3});

    std::string stem = "family_" + o.system + "_" + o.scheme;
    if (tagged)
        stem += "_" + param_tag(param);
    std::filesystem::path dir = resolve_out_dir(o);
    std::filesystem::create_directories(dir);

    {
        std::ofstream csv(dir / (stem + ".csv"));
        csv << "x,V,V_transformed,missing_state";
        for (size_t m = 0; m < mapped.size(); ++m)
            csv << ",mapped_" << (m + 1);
        csv << "\n";
        for (int i = 0; i < g.n_points; ++i) {
            csv << fmt12(g.node(i)) << ',' << fmt12(fam.source_potential[i]) << ','
                << fmt12(fam.target_potential[i]) << ',' << fmt12(fam.missing.psi[i]);
            for (const auto& m : mapped)
                csv << ',' << fmt12(m[i]);
            csv << "\n";
        }
    }

    if (!o.no_plot) {
        std::ofstream gp(dir / (stem + ".gp"));
        gp << "set datafile separator ','\n"
           << "set key autotitle columnhead\n"
           << "set xlabel 'x'\n"
           << "plot '" << stem << ".csv' using 1:2 with lines, \\\n"
           << "     '" << stem << ".csv' using 1:3 with lines, \\\n"
           << "     '" << stem << ".csv' using 1:4 with lines\n";
    }

    json report;
    report["command"] = "family";
    report["config"] = {{"system", o.system},
                        {"scheme", o.scheme},
                        {"l", o.l},
                        {"k", o.k},
                        {"nu", snap12(o.nu)},
                        {"family_parameter", snap12(param)},
                        {"levels", o.levels},
                        {"grid", {{"min", snap12(g.x_min)}, {"max", snap12(g.x_max)}, {"n", g.n_points}}},
                        {"tolerance", snap12(tol)}};
    report["epsilon"] = snap12(fam.epsilon);
    report["missing_state_normalizable"] = fam.missing.normalizable;
    report["spectra"] = {{"computed", snap_vec(rep.computed)},
                         {"predicted", snap_vec(rep.predicted)}};
    report["checks"] = checks_json(checks);
    report["pass"] = all_pass(checks);
    report["csv"] = stem + ".csv";

    std::ofstream js(dir / (stem + ".json"));
    js << report.dump(2) << "\n";
    return {std::move(report), all_pass(checks), stem};
}

int cmd_family(const CommonOpts& o) {
    std::vector<double> params;
    if (o.scheme == "mielnik" || (o.scheme == "generalized" && o.system == "hydrogen"))
        params = parse_sweep(o.system == "hydrogen" ? o.lambda : o.gamma);
    else
        params = {0.0};

    std::vector<FamilyArtifacts> results(params.size());
    if (params.size() > 1) {
        // Fan out across workers; merge in parameter order.
        std::vector<std::future<FamilyArtifacts>> futs;
        futs.reserve(params.size());
        for (double p : params)
            futs.push_back(std::async(std::launch::async,
                                      [&o, p] { return run_family_member(o, p, true); }));
        for (size_t i = 0; i < futs.size(); ++i)
            results[i] = futs[i].get();
    } else {
        results[0] = run_family_member(o, params[0], false);
    }

    bool pass = true;
    json merged = json::array();
    for (auto& r : results) {
        pass = pass && r.pass;
        merged.push_back(r.report);
    }
    if (results.size() > 1) {
        std::filesystem::path dir = resolve_out_dir(o);
        std::ofstream js(dir / ("family_" + o.system + "_" + o.scheme + "_sweep.json"));
        js << merged.dump(2) << "\n";
    }
    std::printf("%s\n", results.size() > 1 ? merged.dump(2).c_str()
                                           : results[0].report.dump(2).c_str());
    return pass ? 0 : 1;
}

int cmd_spectrum(const CommonOpts& o) {
    Grid g = default_grid(o);
    PotentialSpec spec = (o.system == "hydrogen") ? PotentialSpec::hydrogen(o.l)
                                                  : PotentialSpec::oscillator();
    GridFunction V = spec.potential_on(g);
    std::vector<double> ev = lowest_eigenvalues(build_hamiltonian(V), o.levels);
    std::vector<double> expected = analytic_levels(spec, o.levels);

    // Numerov cross-check with brackets narrower than the local level gap.
    std::vector<double> numerov;
    for (size_t i = 0; i < ev.size(); ++i) {
        double gap = 1.0;
        if (i > 0) gap = std::min(gap, ev[i] - ev[i - 1]);
        if (i + 1 < ev.size()) gap = std::min(gap, ev[i + 1] - ev[i]);
        double half = 0.4 * gap;
        numerov.push_back(numerov_shoot(V, ev[i] - half, ev[i] + half));
    }

    const double tol = default_tol(o);
    double worst = 0.0, worst_oracle = 0.0;
    for (size_t i = 0; i < ev.size(); ++i) {
        worst = std::max(worst, std::fabs(ev[i] - expected[i]));
        worst_oracle = std::max(worst_oracle, std::fabs(ev[i] - numerov[i]));
    }

    json report;
    report["command"] = "spectrum";
    report["config"] = {{"system", o.system},
                        {"l", o.l},
                        {"levels", o.levels},
                        {"grid", {{"min", snap12(g.x_min)}, {"max", snap12(g.x_max)}, {"n", g.n_points}}},
                        {"tolerance", snap12(tol)}};
    report["spectra"] = {{"computed", snap_vec(ev)},
                         {"numerov", snap_vec(numerov)},
                         {"analytic", snap_vec(expected)}};
    std::vector<Check> checks{
        {"spectrum_max_error", worst, tol, worst <= tol},
        {"oracle_disagreement_max", worst_oracle, 1e-4, worst_oracle <= 1e-4}};
    report["checks"] = checks_json(checks);
    report["pass"] = all_pass(checks);
    std::printf("%s\n", report.dump(2).c_str());
    return all_pass(checks) ? 0 : 1;
}

int cmd_catalog() {
    json report;
    report["command"] = "catalog";
    json table = json::array();
    table.push_back({{"system", "oscillator"},
                     {"potential", "x^2"},
                     {"beta", "x"},
                     {"epsilon", 1.0},
                     {"ordering", "dagger_first"}});
    table.push_back({{"system", "oscillator_shifted"},
                     {"potential", "x^2 + 2"},
                     {"beta", "x"},
                     {"epsilon", 1.0},
                     {"ordering", "plain_first"}});
    for (int l = 1; l <= 4; ++l)
        table.push_back({{"system", "hydrogen"},
                         {"l", l},
                         {"potential", "-2/r + l(l+1)/r^2"},
                         {"beta", "l/r - 1/l"},
                         {"epsilon", snap12(-1.0 / (l * l))},
                         {"ordering", "dagger_first"}});
    report["superpotentials"] = table;

    json osc = json::array();
    for (int k = 0; k < 5; ++k)
        osc.push_back({{"k", k}, {"epsilon", snap12(oscillator_energy(k))}});
    report["oscillator_energies"] = osc;
    json hyd = json::array();
    for (int l = 1; l <= 3; ++l)
        for (int k = 0; k > -l; --k)
            hyd.push_back({{"l", l}, {"k", k}, {"epsilon", snap12(hydrogen_energy(l, k))}});
    report["hydrogen_energies"] = hyd;
    std::printf("%s\n", report.dump(2).c_str());
    return 0;
}

int cmd_verify(const CommonOpts& o) {
    Grid g = default_grid(o);
    const double tol = default_tol(o);
    std::vector<Check> checks;

    // Particular superpotential residual.
    PotentialSpec base = (o.system == "hydrogen") ? PotentialSpec::hydrogen(o.l)
                                                  : PotentialSpec::oscillator();
    BetaFunction bp = particular_beta(base);
    double r_part =
        max_abs(riccati_residual(bp, base, g, sign_of(Ordering::dagger_first)));
    checks.push_back({"riccati_residual_particular", r_part, 1e-6, r_part <= 1e-6});

    // Family member: general Riccati solution, transform, invariants.
    CommonOpts fo = o;
    fo.scheme = "mielnik";
    double param = parse_sweep(o.system == "hydrogen" ? o.lambda : o.gamma).front();
    TransformResult fam = build_family(fo, param, g);
    if (o.corrupt_beta)
        fam.scheme.beta = corrupted(fam.scheme.beta, g);

    double r_fam = max_abs(riccati_residual(fam.scheme.beta, fam.source_potential,
                                            fam.epsilon, sign_of(fam.scheme.ordering)));
    checks.push_back({"riccati_residual_family", r_fam, 1e-6, r_fam <= 1e-6});

    // Commutator [a, a+] f = 2 beta' f for the base system.
    {
        GridFunction f = GridFunction::sample(g, [&](double x) {
            return (o.system == "hydrogen") ? x * x * std::exp(-0.5 * x) : std::exp(-x * x);
        });
        GridFunction comm = apply_annihilation(bp, apply_creation(bp, f)) -
                            apply_creation(bp, apply_annihilation(bp, f));
        GridFunction dbp = bp.derivative_on(g);
        double worst = 0.0;
        for (int i = 2; i < g.n_points - 2; ++i)
            worst = std::max(worst, std::fabs(comm[i] - 2.0 * dbp[i] * f[i]));
        worst /= max_abs(f);
        // Second differences of sampled data: gate scales as 100 h^2.
        double gate = 100.0 * g.spacing() * g.spacing();
        checks.push_back({"commutator_identity", worst, gate, worst <= gate});
    }

    // Intertwining + orthogonality over the first mapped eigenfunctions.
    DiscretizedHamiltonian H = build_hamiltonian(fam.source_potential);
    std::vector<double> ev = lowest_eigenvalues(H, std::min(o.levels, 3));
    double worst_iw = 0.0, worst_ortho = 0.0;
    for (double E : ev) {
        GridFunction psi = eigenvector(H, E);
        worst_iw = std::max(worst_iw,
                            intertwine_residual(fam.source_potential, fam.target_potential,
                                                fam.scheme.beta, psi, fam.scheme.ordering));
        if (fam.missing.normalizable && !o.corrupt_beta) {
            GridFunction mapped = map_eigenfunction(fam.scheme, psi, E);
            worst_ortho =
                std::max(worst_ortho, std::fabs(inner_product(fam.missing.psi, mapped)));
        }
    }
    checks.push_back({"intertwining", worst_iw, 1e-3, worst_iw <= 1e-3});
    if (fam.missing.normalizable && !o.corrupt_beta)
        checks.push_back(
            {"missing_state_orthogonality", worst_ortho, 1e-4, worst_ortho <= 1e-4});

    // Isospectrality of source and target.
    SpectrumReport rep = isospectral_report(fam.source_potential, fam.target_potential,
                                            fam.epsilon, o.levels, tol);
    checks.push_back({"isospectrality", rep.max_abs_error, tol, rep.pass});
    if (fam.missing.normalizable) {
        double rq = rayleigh_quotient(fam.target_potential, fam.missing.psi);
        checks.push_back({"missing_state_rayleigh_error", std::fabs(rq - fam.epsilon), tol,
                          std::fabs(rq - fam.epsilon) <= tol});
    }

    json report;
    report["command"] = "verify";
    report["config"] = {{"system", o.system},
                        {"l", o.l},
                        {"family_parameter", snap12(param)},
                        {"levels", o.levels},
                        {"grid", {{"min", snap12(g.x_min)}, {"max", snap12(g.x_max)}, {"n", g.n_points}}},
                        {"tolerance", snap12(tol)},
                        {"corrupt_beta", o.corrupt_beta}};
    report["checks"] = checks_json(checks);
    report["pass"] = all_pass(checks);

    std::filesystem::path dir = resolve_out_dir(o);
    std::filesystem::create_directories(dir);
    std::ofstream js(dir / ("verify_" + o.system + ".json"));
    js << report.dump(2) << "\n";
    std::printf("%s\n", report.dump(2).c_str());
    return all_pass(checks) ? 0 : 1;
}

int cmd_chain(const CommonOpts& o) {
    if (o.system != "oscillator")
        throw DomainError("chain: only the oscillator chain is supported");
    std::vector<double> eps = o.epsilons.empty() ? std::vector<double>{-1.0, -3.0}
                                                 : o.epsilons;
    Grid g = default_grid(o);
    GridFunction V0 = PotentialSpec::oscillator().potential_on(g);

    // Each factorization energy must be an oscillator chain energy -(2k+1).
    auto seed_index = [](double e) {
        double kd = (-e - 1.0) / 2.0;
        int k = static_cast<int>(std::lround(kd));
        if (k < 0 || std::fabs(kd - k) > 1e-9)
            throw DomainError("chain: epsilon " + fmt12(e) +
                              " is not an oscillator chain energy -(2k+1)");
        return k;
    };

    ChainState state = chain_begin(V0, eps[0], oscillator_chain_seed_beta(seed_index(eps[0])));
    for (size_t i = 1; i < eps.size(); ++i)
        state = chain_step(state, eps[i], oscillator_chain_seed_beta(seed_index(eps[i])));

    const double tol = default_tol(o);
    // Final spectrum: the chain energies join the surviving oscillator levels.
    std::vector<double> predicted = eps;
    for (int n = 0; static_cast<int>(predicted.size()) < o.levels + 2; ++n)
        predicted.push_back(2.0 * n + 1.0);
    std::sort(predicted.begin(), predicted.end());
    predicted.resize(o.levels);
    std::vector<double> computed =
        lowest_eigenvalues(build_hamiltonian(state.current_potential()), o.levels);

    double worst = 0.0;
    for (int i = 0; i < o.levels; ++i)
        worst = std::max(worst, std::fabs(computed[i] - predicted[i]));

    std::vector<Check> checks{{"spectrum_max_error", worst, tol, worst <= tol}};
    double gate = 100.0 * g.spacing() * g.spacing();
    for (size_t i = 0; i < state.steps.size(); ++i)
        checks.push_back({"step_" + std::to_string(i + 1) + "_riccati_residual",
                          state.steps[i].residual, gate, state.steps[i].residual <= gate});

    json report;
    report["command"] = "chain";
    report["config"] = {{"system", o.system},
                        {"epsilons", snap_vec(eps)},
                        {"levels", o.levels},
                        {"grid", {{"min", snap12(g.x_min)}, {"max", snap12(g.x_max)}, {"n", g.n_points}}},
                        {"tolerance", snap12(tol)}};
    report["spectra"] = {{"computed", snap_vec(computed)}, {"predicted", snap_vec(predicted)}};
    report["checks"] = checks_json(checks);
    report["pass"] = all_pass(checks);

    std::filesystem::path dir = resolve_out_dir(o);
    std::filesystem::create_directories(dir);
    std::ofstream js(dir / "chain.json");
    js << report.dump(2) << "\n";
    std::printf("%s\n", report.dump(2).c_str());
    return all_pass(checks) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isospectral potential families by factorization"};
    app.require_subcommand(1);

    CommonOpts o_catalog, o_family, o_spectrum, o_verify, o_chain;
    CLI::App* catalog = app.add_subcommand("catalog", "print the superpotential and energy catalogs");
    CLI::App* family = app.add_subcommand("family", "build an isospectral family member");
    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of a catalog potential");
    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
    CLI::App* chain = app.add_subcommand("chain", "higher-order factorization chain");
    add_common_flags(family, o_family);
    add_common_flags(spectrum, o_spectrum);
    add_common_flags(verify, o_verify);
    add_common_flags(chain, o_chain);
    (void)o_catalog;

    CLI11_PARSE(app, argc, argv);

    try {
        if (catalog->parsed()) return cmd_catalog();
        if (family->parsed()) { apply_config(family, o_family); return cmd_family(o_family); }
        if (spectrum->parsed()) { apply_config(spectrum, o_spectrum); return cmd_spectrum(o_spectrum); }
        if (verify->parsed()) { apply_config(verify, o_verify); return cmd_verify(o_verify); }
        if (chain->parsed()) { apply_config(chain, o_chain); return cmd_chain(o_chain); }
    } catch (const DomainError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 2;
    } catch (const SingularError& e) {
        std::fprintf(stderr, "singularity: %s\n", e.what());
        return 3;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
