#include "bhdyn/experiment.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>

#include "bhdyn/exact_diag.hpp"
#include "bhdyn/fresnel.hpp"
#include "bhdyn/gp.hpp"
#include "bhdyn/revival.hpp"
#include "bhdyn/twosite.hpp"
#include "bhdyn/vpoly.hpp"
#include "json.hpp"

namespace bhdyn {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
    if (!j.is_object()) throw ConfigError(ctx + ": expected an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw ConfigError(ctx + ": unknown key \"" + key + "\"");
}

double get_number(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key)) throw ConfigError(ctx + ": missing \"" + key + "\"");
    if (!j[key].is_number()) throw ConfigError(ctx + ": \"" + key + "\" must be a number");
    return j[key].get<double>();
}

int get_int(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key)) throw ConfigError(ctx + ": missing \"" + key + "\"");
    if (!j[key].is_number_integer())
        throw ConfigError(ctx + ": \"" + key + "\" must be an integer");
    return j[key].get<int>();
}

std::vector<cplx> parse_lambda(const json& arr, const std::string& ctx) {
    if (!arr.is_array() || arr.empty())
        throw ConfigError(ctx + ": \"lambda\" must be a non-empty array of [re, im] pairs");
    std::vector<cplx> out;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ConfigError(ctx + ": \"lambda\" entries must be [re, im] pairs");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

}  // namespace

const std::vector<std::string>& known_engines() {
    static const std::vector<std::string> e = {"ed",      "gp",          "gp_number",
                                               "pendulum", "double_well", "revival",
                                               "revival_frozen", "envelope", "zero_d"};
    return e;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    check_keys(j, {"name", "model", "state", "grid", "engines", "output_dir", "sweep"},
               "config");

    ExperimentConfig c;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ConfigError("config: \"name\" must be a string");
        c.name = j["name"].get<std::string>();
    }

    if (!j.contains("model")) throw ConfigError("config: missing \"model\"");
    const json& jm = j["model"];
    check_keys(jm, {"sites", "eps", "g", "u", "n_total"}, "model");
    if (jm.contains("sites")) c.sites = get_int(jm, "sites", "model");
    if (c.sites != 1 && c.sites != 2)
        throw ConfigError("model: \"sites\" must be 1 or 2");
    c.eps = get_number(jm, "eps", "model");
    c.n_total = get_int(jm, "n_total", "model");
    if (c.n_total < 1) throw ConfigError("model: \"n_total\" must be positive");
    if (jm.contains("g") == jm.contains("u"))
        throw ConfigError("model: exactly one of \"g\" or \"u\" is required");
    if (jm.contains("g")) {
        c.g = get_number(jm, "g", "model");
    } else {
        c.g = get_number(jm, "u", "model") * c.n_total;
        c.coupling_given_as_u = true;
    }

    if (j.contains("state")) {
        const json& js = j["state"];
        check_keys(js, {"kind", "lambda"}, "state");
        if (!js.contains("kind") || !js["kind"].is_string())
            throw ConfigError("state: missing string \"kind\"");
        const std::string kind = js["kind"].get<std::string>();
        if (kind == "number")
            c.state_kind = InitialState::Kind::Number;
        else if (kind == "coherent")
            c.state_kind = InitialState::Kind::Coherent;
        else
            throw ConfigError("state: \"kind\" must be \"number\" or \"coherent\"");
        if (js.contains("lambda")) c.lambda_direction = parse_lambda(js["lambda"], "state");
    }
    if (c.lambda_direction.empty()) {
        c.lambda_direction.assign(static_cast<size_t>(c.sites), cplx(0.0));
        c.lambda_direction[0] = 1.0;
    }

    if (!j.contains("grid")) throw ConfigError("config: missing \"grid\"");
    check_keys(j["grid"], {"t_max", "dt"}, "grid");
    c.grid.t_max = get_number(j["grid"], "t_max", "grid");
    c.grid.dt = get_number(j["grid"], "dt", "grid");

    if (!j.contains("engines") || !j["engines"].is_array() || j["engines"].empty())
        throw ConfigError("config: \"engines\" must be a non-empty array");
    for (const auto& e : j["engines"]) {
        if (!e.is_string()) throw ConfigError("engines: entries must be strings");
        c.engines.push_back(e.get<std::string>());
    }

    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string())
            throw ConfigError("config: \"output_dir\" must be a string");
        c.output_dir = j["output_dir"].get<std::string>();
    }

    if (j.contains("sweep")) {
        const json& jw = j["sweep"];
        check_keys(jw, {"g", "n_total"}, "sweep");
        if (jw.contains("g"))
            for (const auto& v : jw["g"]) {
                if (!v.is_number()) throw ConfigError("sweep: \"g\" entries must be numbers");
                c.sweep_g.push_back(v.get<double>());
            }
        if (jw.contains("n_total"))
            for (const auto& v : jw["n_total"]) {
                if (!v.is_number_integer())
                    throw ConfigError("sweep: \"n_total\" entries must be integers");
                c.sweep_n.push_back(v.get<int>());
            }
    }

    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

void ExperimentConfig::validate() const {
    try {
        grid.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
    if (lambda_direction.size() != static_cast<size_t>(sites))
        throw ConfigError("state: \"lambda\" must have one entry per site");
    double nrm = 0.0;
    for (const cplx& l : lambda_direction) nrm += std::norm(l);
    if (nrm <= 0.0) throw ConfigError("state: \"lambda\" must be nonzero");
    const auto& known = known_engines();
    for (const std::string& e : engines) {
        if (std::find(known.begin(), known.end(), e) == known.end())
            throw ConfigError("engines: unknown engine \"" + e + "\"");
        const bool single_only = (e == "zero_d");
        const bool pair_only = (e != "zero_d" && e != "ed");
        if (single_only && sites != 1)
            throw ConfigError("engines: \"" + e + "\" needs a single-site model");
        if (pair_only && sites != 2)
            throw ConfigError("engines: \"" + e + "\" needs a two-site model");
    }
    for (int n : sweep_n)
        if (n < 1) throw ConfigError("sweep: \"n_total\" entries must be positive");
}

namespace {

std::vector<cplx> scaled_lambda(const std::vector<cplx>& dir, double target_occupation) {
    double nrm = 0.0;
    for (const cplx& l : dir) nrm += std::norm(l);
    const double s = std::sqrt(target_occupation / nrm);
    std::vector<cplx> out(dir.size());
    for (size_t i = 0; i < dir.size(); ++i) out[i] = s * dir[i];
    return out;
}

TrajectorySeries run_engine(const std::string& engine, const ExperimentConfig& c, double g,
                            int n_total) {
    const double u = g / n_total;
    if (engine == "ed") {
        if (c.sites == 1) {
            ModelParams p = ModelParams::single_site(c.eps, u);
            return evolve_coherent_state(
                p, InitialState::coherent(scaled_lambda(c.lambda_direction, n_total)), c.grid);
        }
        ModelParams p = ModelParams::two_site_g(c.eps, g, n_total);
        if (c.state_kind == InitialState::Kind::Number)
            return evolve_number_state(
                p, InitialState::number(scaled_lambda(c.lambda_direction, n_total), n_total),
                c.grid);
        return evolve_coherent_state(
            p, InitialState::coherent(scaled_lambda(c.lambda_direction, n_total)), c.grid);
    }
    if (engine == "zero_d") {
        const cplx lam = scaled_lambda(c.lambda_direction, n_total)[0];
        TrajectorySeries out;
        const size_t npts = c.grid.size();
        out.times.resize(npts);
        std::vector<double> a_re(npts), a_im(npts), nrm(npts, 1.0);
        for (size_t k = 0; k < npts; ++k) {
            out.times[k] = c.grid.time(k);
            const cplx a = zero_d_closed_form(lam, c.eps, u, out.times[k]);
            a_re[k] = a.real();
            a_im[k] = a.imag();
        }
        out.add_column("a_re", std::move(a_re));
        out.add_column("a_im", std::move(a_im));
        out.add_column("norm", std::move(nrm));
        return out;
    }
    if (engine == "gp" || engine == "gp_number") {
        ModelParams p = ModelParams::two_site_g(c.eps, g, n_total);
        std::vector<cplx> w0 = scaled_lambda(c.lambda_direction, 1.0);
        const DriftMode mode =
            engine == "gp" ? DriftMode::coherent() : DriftMode::number(n_total);
        return integrate_gp(p, mode, w0, c.grid);
    }
    if (engine == "pendulum") return integrate_pendulum(c.eps, g, c.grid);
    if (engine == "double_well") return integrate_double_well(c.eps, g, c.grid);
    if (engine == "revival" || engine == "revival_frozen") {
        RevivalParams rp;
        rp.eps = c.eps;
        rp.u = u;
        rp.u_tilde = engine == "revival" ? u : 0.0;
        rp.n_total = n_total;
        return integrate_revival(rp, c.grid);
    }
    if (engine == "envelope") {
        TrajectorySeries out;
        const size_t npts = c.grid.size();
        out.times.resize(npts);
        std::vector<double> env(npts), n12(npts), nrm(npts, 1.0);
        for (size_t k = 0; k < npts; ++k) {
            out.times[k] = c.grid.time(k);
            env[k] = collapse_envelope(n_total, u, out.times[k]);
            n12[k] = small_g_imbalance(n_total, c.eps, u, out.times[k]) / n_total;
        }
        out.add_column("envelope", std::move(env));
        out.add_column("n12_over_N", std::move(n12));
        out.add_column("norm", std::move(nrm));
        return out;
    }
    throw ConfigError("engines: unknown engine \"" + engine + "\"");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string regime_name(double eps, double g) {
    switch (classify_regime(eps, g)) {
        case Regime::Oscillatory: return "oscillatory";
        case Regime::SelfTrapped: return "self-trapped";
        case Regime::Critical: return "critical";
    }
    return "?";
}

std::string point_tag(const ExperimentConfig& c, double g, int n) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "_g%g_N%d", g, n);
    return c.name + buf;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const TrajectorySeries& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
    out << "t";
    for (const auto& [name, col] : series.columns()) out << "," << name;
    out << "\n";
    for (size_t k = 0; k < series.times.size(); ++k) {
        out << format_double(series.times[k]);
        for (const auto& [name, col] : series.columns()) out << "," << format_double(col[k]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path.string());
}

ExperimentReport run_experiment(const ExperimentConfig& config, bool write_files) {
    config.validate();
    std::filesystem::path outdir = config.output_dir;
    if (const char* env = std::getenv(kOutputDirEnvVar); env && *env) outdir = env;
    if (write_files) std::filesystem::create_directories(outdir);

    std::vector<double> gs = config.sweep_g.empty() ? std::vector<double>{config.g}
                                                    : config.sweep_g;
    std::vector<int> ns = config.sweep_n.empty() ? std::vector<int>{config.n_total}
                                                 : config.sweep_n;

    ExperimentReport report;
    report.name = config.name;
    for (double g : gs) {
        for (int n : ns) {
            SweepPointResult pt;
            pt.g = g;
            pt.n_total = n;
            pt.regime = regime_name(config.eps, g);
            for (const std::string& engine : config.engines) {
                TrajectorySeries series = run_engine(engine, config, g, n);
                if (write_files) {
                    const std::filesystem::path file =
                        outdir / (point_tag(config, g, n) + "_" + engine + ".csv");
                    write_csv(file, series);
                    report.csv_files.push_back(file.string());
                }
                pt.runs.emplace_back(engine, std::move(series));
            }
            for (size_t a = 0; a < pt.runs.size(); ++a) {
                for (size_t b = a + 1; b < pt.runs.size(); ++b) {
                    for (const char* col : {"rho1", "n12_over_N"}) {
                        if (pt.runs[a].second.has_column(col) &&
                            pt.runs[b].second.has_column(col)) {
                            pt.deviations.push_back(
                                {pt.runs[a].first, pt.runs[b].first, col,
                                 sup_deviation(pt.runs[a].second, pt.runs[b].second, col)});
                            break;
                        }
                    }
                }
            }
            report.points.push_back(std::move(pt));
        }
    }

    if (write_files) {
        json jr;
        jr["name"] = report.name;
        jr["points"] = json::array();
        for (const SweepPointResult& pt : report.points) {
            json jp;
            jp["g"] = pt.g;
            jp["n_total"] = pt.n_total;
            jp["regime"] = pt.regime;
            jp["deviations"] = json::array();
            for (const DeviationEntry& d : pt.deviations)
                jp["deviations"].push_back(
                    {{"a", d.engine_a}, {"b", d.engine_b}, {"column", d.column}, {"sup", d.sup}});
            jr["points"].push_back(std::move(jp));
        }
        jr["csv_files"] = report.csv_files;
        std::ofstream out(outdir / (report.name + "_report.json"));
        out << jr.dump(2) << "\n";
    }
    return report;
}

namespace {

std::string preset_json(const std::string& name, bool full) {
    const double pi = std::numbers::pi;
    auto grid_for = [](double t_target, double dt) {
        const long steps = std::lround(t_target / dt);
        return std::string("\"grid\": {\"t_max\": ") + format_double(steps * dt) +
               ", \"dt\": " + format_double(dt) + "}";
    };

    if (name == "fig-5.1.1" || name == "fig-5.1.2") {
        const double g = name == "fig-5.1.1" ? 0.5 : 3.0;
        const int n = full ? 1600 : 100;
        return "{\"name\": \"" + name + "\", \"model\": {\"eps\": 1.0, \"g\": " +
               format_double(g) + ", \"n_total\": " + std::to_string(n) +
               "}, \"state\": {\"kind\": \"number\", \"lambda\": [[1,0],[0,0]]}, " +
               grid_for(4.0 * pi, 0.005) +
               ", \"engines\": [\"ed\", \"gp\", \"pendulum\", \"double_well\"]}";
    }
    if (name == "fig-5.3.1") {
        // first collapse window t in [0, pi/(2u)]
        const int n = full ? 200 : 50;
        const double u = 0.1 / n;
        return "{\"name\": \"fig-5.3.1\", \"model\": {\"eps\": 1.0, \"u\": " +
               format_double(u) + ", \"n_total\": " + std::to_string(n) +
               "}, \"state\": {\"kind\": \"number\", \"lambda\": [[1,0],[0,0]]}, " +
               grid_for(0.5 * pi / u, 0.01) +
               ", \"engines\": [\"ed\", \"revival\", \"envelope\"]}";
    }
    if (name == "fig-5.3.2") {
        // past the first revival at t = pi/u
        const double u = 0.002;
        const double dt = full ? 0.002 : 0.01;
        return "{\"name\": \"fig-5.3.2\", \"model\": {\"eps\": 1.0, \"u\": " +
               format_double(u) + ", \"n_total\": 50}, "
               "\"state\": {\"kind\": \"number\", \"lambda\": [[1,0],[0,0]]}, " +
               grid_for(1.1 * pi / u, dt) +
               ", \"engines\": [\"ed\", \"revival\", \"envelope\"]}";
    }
    if (name == "fig-5.3.3") {
        const double u = 0.002;
        const double t = full ? 1.1 * std::numbers::pi / u : 300.0;
        return "{\"name\": \"fig-5.3.3\", \"model\": {\"eps\": 1.0, \"u\": " +
               format_double(u) + ", \"n_total\": 50}, "
               "\"state\": {\"kind\": \"number\", \"lambda\": [[1,0],[0,0]]}, " +
               grid_for(t, 0.01) +
               ", \"engines\": [\"ed\", \"revival\", \"revival_frozen\", \"pendulum\"]}";
    }
    if (name == "fig-4") {
        const int n = full ? 40 : 10;
        const double u = full ? 0.05 : 0.1;
        return "{\"name\": \"fig-4\", \"model\": {\"sites\": 1, \"eps\": 1.0, \"u\": " +
               format_double(u) + ", \"n_total\": " + std::to_string(n) +
               "}, \"state\": {\"kind\": \"coherent\", \"lambda\": [[1,0]]}, " +
               grid_for(1.1 * std::numbers::pi / u, 0.001) +
               ", \"engines\": [\"ed\", \"zero_d\"]}";
    }
    throw ConfigError("unknown preset \"" + name + "\"");
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig-5.1.1", "fig-5.1.2", "fig-5.3.1", "fig-5.3.2", "fig-5.3.3", "fig-4"};
}

ExperimentConfig preset_config(const std::string& name, bool full) {
    return ExperimentConfig::from_json_text(preset_json(name, full));
}

namespace {

CheckResult check(const std::string& name, double observed, double tol) {
    return {name, std::isfinite(observed) && observed <= tol, observed, tol};
}

}  // namespace

std::vector<CheckResult> verify_suite(const VerifyOptions& options) {
    std::vector<CheckResult> out;
    const std::vector<double> eps_sym = {0.0, 1.0, 1.0, 0.0};
    std::vector<double> eps_used = eps_sym;
    if (options.perturb_hopping) eps_used[2] = 1.25;  // break the symmetry

    {  // single-mode correlator: closed form vs explicit occupation sum
        const cplx lam(1.3, 0.4);
        const cplx a = zero_d_closed_form(lam, 0.7, 0.3, 2.1);
        const cplx b = zero_d_truncated_sum(lam, 0.7, 0.3, 2.1, 60);
        out.push_back(check("zero-d closed form vs occupation sum", std::abs(a - b), 1e-12));
    }
    {  // pinned sector matrix elements
        SectorHamiltonian h = build_sector_hamiltonian(ModelParams::two_site(1.0, 1.0), 2);
        const double s2 = std::sqrt(2.0);
        double d = std::max({std::abs(h.diag[0] - 2.0), std::abs(h.diag[1]),
                             std::abs(h.diag[2] - 2.0), std::abs(h.offdiag[0] - s2),
                             std::abs(h.offdiag[1] - s2)});
        out.push_back(check("two-site sector matrix elements", d, 1e-14));
    }
    {  // coherent vs number drift on the unit sphere
        ModelParams p = ModelParams::two_site_g(1.0, 0.8, 100);
        std::vector<cplx> w = {cplx(0.6, 0.0), cplx(0.48, 0.64)};
        auto a = gp_rhs(w, p, DriftMode::coherent());
        auto b = gp_rhs(w, p, DriftMode::number(100));
        double d = 0.0;
        for (size_t j = 0; j < w.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
        out.push_back(check("drift variants agree on the unit sphere", d, 1e-14));
    }
    {  // pendulum <-> imbalance equivalence
        TimeGrid grid{10.0, 1e-3};
        auto pen = integrate_pendulum(1.0, 0.5, grid);
        auto well = integrate_double_well(1.0, 0.5, grid);
        out.push_back(check("pendulum and imbalance reductions agree",
                            sup_deviation(pen, well, "n12_over_N"), 1e-7));
    }
    {  // rotation generator annihilates the radius (symmetric hopping only)
        VPolynomial r2 = VPolynomial::radius2(2);
        out.push_back(check("hopping flow preserves the radius",
                            apply_L0(r2, eps_used).max_abs_coeff(), 1e-14));
    }
    {  // change-of-density operator identity
        VPolynomial f = VPolynomial::var_v(2, 0) +
                        VPolynomial::var_v(2, 0).pow(2) * VPolynomial::var_vb(2, 1);
        out.push_back(check("density-change operator identity",
                            girsanov_identity_residual(f, 2, eps_used, 0.7), 1e-12));
    }
    {  // closed-form rotation matrix vs matrix exponential of its generator
        const double eps = 0.9, t = 1.7;
        Eigen::Matrix4cd a = rotation_generator(eps);
        Eigen::Matrix4cd expm = (-t * a).exp();
        out.push_back(check("rotation matrix matches its generator flow",
                            (rotation_Rt(eps, t) - expm).cwiseAbs().maxCoeff(), 1e-12));
    }
    {  // oscillatory quadrature battery
        QuadResult q = fresnel_linear_phase(1.0, +1);
        out.push_back(check("linear-phase quadrature",
                            std::abs(q.value - std::exp(cplx(0.0, -0.5))), 1e-6));
        QuadResult m = weight_ratio_moment(2, 0.25, 0.05);
        out.push_back(check("weight-ratio moment is unity", std::abs(m.value - 1.0), 1e-6));
        QuadResult s = kernel_semigroup_ratio(0.7, 1.1, 0.3, -0.8);
        out.push_back(check("free kernel semigroup", std::abs(s.value - 1.0), 1e-6));
    }
    {  // norm conservation of the mean-field flow
        ModelParams p = ModelParams::two_site_g(1.0, 1.5, 100);
        TimeGrid grid{20.0, 1e-3};
        auto s = integrate_gp(p, DriftMode::coherent(), {cplx(1.0, 0.0), cplx(0.0, 0.0)}, grid);
        const auto& nrm = s.column("norm");
        double d = 0.0;
        for (double v : nrm) d = std::max(d, std::abs(v - 1.0));
        out.push_back(check("mean-field norm conservation", d, 1e-9));
    }
    return out;
}

}  // namespace bhdyn
