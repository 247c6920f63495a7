#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bergman/geometry.hpp"
#include "bergman/oracles.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/rng.hpp"
#include "bergman/space.hpp"
#include "bergman/verify.hpp"

using json = nlohmann::ordered_json;

namespace {

// Floating-point values are emitted as decimal strings so the output is
// locale-proof and byte-stable across runs.
std::string fnum(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

struct CommonOpts {
    int n = 2;
    std::string a_text = "1";
    int radius_scale = 1;
    double rel_tol = 1e-10;
    std::uint64_t seed = 0x5eed;
    std::string format = "json";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--n", opts.n, "complex dimension (>= 2)")->capture_default_str();
    cmd->add_option("--a", opts.a_text,
                    "exponent a, as a decimal or an exact ratio like 5/2")
        ->capture_default_str();
    cmd->add_option("--radius-scale", opts.radius_scale, "1 for D, 2 for the enlarged domain")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    cmd->add_option("--rel-tol", opts.rel_tol, "quadrature relative tolerance")
        ->capture_default_str();
    cmd->add_option("--seed", opts.seed, "root seed for all sampling")->capture_default_str();
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out_path, "write output to this file instead of stdout");
}

bergman::DomainSpec make_spec(const CommonOpts& opts) {
    if (opts.a_text.find('/') != std::string::npos ||
        opts.a_text.find_first_not_of("0123456789") == std::string::npos) {
        const auto ratio = bergman::Rational::parse(opts.a_text);
        if (!ratio || !(ratio->value() > 0.0)) {
            throw std::invalid_argument("--a: cannot parse '" + opts.a_text + "' as a ratio");
        }
        return bergman::DomainSpec(opts.n, *ratio, opts.radius_scale);
    }
    std::size_t used = 0;
    const double a = std::stod(opts.a_text, &used);
    if (used != opts.a_text.size() || !(a > 0.0)) {
        throw std::invalid_argument("--a: cannot parse '" + opts.a_text + "'");
    }
    return bergman::DomainSpec(opts.n, a, opts.radius_scale);
}

bergman::QuadratureConfig make_quad_config(const CommonOpts& opts) {
    bergman::QuadratureConfig cfg;
    cfg.rel_tol = opts.rel_tol;
    return cfg;
}

json config_json(const CommonOpts& opts, const bergman::DomainSpec& spec) {
    json c;
    c["n"] = opts.n;
    c["a"] = opts.a_text;
    c["a_value"] = fnum(spec.a);
    c["radius_scale"] = opts.radius_scale;
    c["rel_tol"] = fnum(opts.rel_tol);
    c["seed"] = opts.seed;
    c["format"] = opts.format;
    return c;
}

void emit(const CommonOpts& opts, const std::string& payload) {
    if (opts.out_path.empty()) {
        std::cout << payload;
        if (payload.empty() || payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(opts.out_path);
    if (!out) throw std::runtime_error("cannot open output file " + opts.out_path);
    out << payload;
    if (payload.empty() || payload.back() != '\n') out << '\n';
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

bergman::Point parse_point(const std::string& text, int n) {
    std::vector<double> reals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        reals.push_back(std::stod(item));
    }
    if (static_cast<int>(reals.size()) != 2 * n) {
        throw std::invalid_argument("point needs 2n comma-separated reals (re,im pairs), got " +
                                    std::to_string(reals.size()) + " values for n = " +
                                    std::to_string(n));
    }
    bergman::Point z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        z[static_cast<std::size_t>(k)] = bergman::Complex(reals[static_cast<std::size_t>(2 * k)],
                                                          reals[static_cast<std::size_t>(2 * k + 1)]);
    }
    return z;
}

json basis_json(const std::vector<bergman::MultiIndex>& basis) {
    json arr = json::array();
    for (const auto& p : basis) arr.push_back(p.p);
    return arr;
}

int cmd_dim(const CommonOpts& opts) {
    const auto spec = make_spec(opts);
    const auto basis = bergman::enumerate_basis(spec);
    json out;
    out["command"] = "dim";
    out["config"] = config_json(opts, spec);
    out["dimension"] = bergman::bergman_dimension(spec);
    out["basis"] = basis_json(basis);
    emit(opts, out.dump(2));
    return 0;
}

int cmd_norm(const CommonOpts& opts, const std::string& p_text) {
    const auto spec = make_spec(opts);
    const auto comps = parse_int_list(p_text);
    if (static_cast<int>(comps.size()) != spec.n) {
        throw std::invalid_argument("--p needs exactly n components");
    }
    const bergman::MultiIndex p{comps};
    const auto cfg = make_quad_config(opts);
    const auto norm = bergman::monomial_norm_sq(spec, p, cfg);

    json out;
    out["command"] = "norm";
    out["config"] = config_json(opts, spec);
    out["p"] = p.p;
    out["square_integrable"] = norm.finite();
    out["verdict"] = bergman::to_string(norm.outcome.verdict);
    out["norm_sq"] = norm.finite() ? fnum(norm.norm_sq) : "inf";
    out["error_estimate"] = fnum(norm.outcome.error_estimate);
    out["panels_used"] = norm.outcome.panels_used;
    if (norm.outcome.verdict == bergman::Verdict::Diverges) {
        out["growth_exponent"] = fnum(norm.outcome.growth_exponent);
    }
    emit(opts, out.dump(2));
    return 0;
}

json coeffs_json(const bergman::KernelCoefficients& coeffs) {
    json c = json::array();
    json e = json::array();
    json t = json::array();
    for (std::size_t k = 0; k < coeffs.c.size(); ++k) {
        c.push_back(fnum(coeffs.c[k]));
        e.push_back(fnum(coeffs.err[k]));
        t.push_back(fnum(coeffs.c[k] / coeffs.c[0]));
    }
    json out;
    out["c"] = c;
    out["error"] = e;
    out["c_tilde"] = t;
    return out;
}

int cmd_coeffs(const CommonOpts& opts) {
    const auto spec = make_spec(opts);
    const auto coeffs = bergman::kernel_coefficients(spec, make_quad_config(opts));
    json out;
    out["command"] = "coeffs";
    out["config"] = config_json(opts, spec);
    out.update(coeffs_json(coeffs));
    emit(opts, out.dump(2));
    return 0;
}

int cmd_curvature(const CommonOpts& opts, const std::string& point_text,
                  const std::string& dir_text, int trials) {
    const auto spec = make_spec(opts);
    const auto coeffs = bergman::kernel_coefficients(spec, make_quad_config(opts));
    const auto K = bergman::KernelForm::from_coefficients(coeffs);

    std::vector<bergman::Point> points;
    std::vector<bergman::Point> dirs;
    if (!point_text.empty()) {
        points.push_back(parse_point(point_text, spec.n));
        if (dir_text.empty()) {
            bergman::Point X(static_cast<std::size_t>(spec.n));
            X[0] = 1.0;
            dirs.push_back(X);
        } else {
            dirs.push_back(parse_point(dir_text, spec.n));
        }
    } else {
        points = bergman::sample_points(spec, trials, 10.0, opts.seed);
        bergman::Rng rng(opts.seed + 1);
        for (int t = 0; t < trials; ++t) {
            bergman::Point X(static_cast<std::size_t>(spec.n));
            for (auto& x : X) x = bergman::Complex(2.0 * rng.u01() - 1.0, 2.0 * rng.u01() - 1.0);
            dirs.push_back(X);
        }
    }

    json values = json::array();
    double mean = 0.0;
    std::vector<double> hs;
    for (std::size_t t = 0; t < points.size(); ++t) {
        const double h = bergman::sectional_curvature(K, points[t], dirs[t]);
        hs.push_back(h);
        mean += h;
        json row;
        row["H"] = fnum(h);
        row["inside_domain"] = bergman::contains(spec, points[t]);
        values.push_back(row);
    }
    mean /= static_cast<double>(hs.size());
    double var = 0.0;
    for (double h : hs) var += (h - mean) * (h - mean);
    const double stddev = hs.size() > 1 ? std::sqrt(var / static_cast<double>(hs.size() - 1)) : 0.0;

    json out;
    out["command"] = "curvature";
    out["config"] = config_json(opts, spec);
    out.update(coeffs_json(coeffs));
    out["trials"] = values;
    out["mean"] = fnum(mean);
    out["stddev"] = fnum(stddev);
    emit(opts, out.dump(2));
    return 0;
}

int cmd_bfunction(const CommonOpts& opts, const std::string& point_text) {
    const auto spec = make_spec(opts);
    const auto coeffs = bergman::kernel_coefficients(spec, make_quad_config(opts));
    const auto K = bergman::KernelForm::from_coefficients(coeffs);
    const auto z = parse_point(point_text, spec.n);

    const double direct = bergman::b_function(K, z);
    const double closed = bergman::b_function_closed_form(K, z);
    const double dev = std::fabs(direct - closed) / std::fabs(closed);

    json out;
    out["command"] = "bfunction";
    out["config"] = config_json(opts, spec);
    out["b"] = fnum(direct);
    out["b_closed_form"] = fnum(closed);
    out["relative_deviation"] = fnum(dev);
    emit(opts, out.dump(2));
    return dev < 1e-10 ? 0 : 1;
}

int cmd_profile(const CommonOpts& opts, int q, double rho_min, double rho_max, int count) {
    const auto spec = make_spec(opts);
    if (!(rho_min > 0.0) || !(rho_max >= rho_min) || count < 1) {
        throw std::invalid_argument("profile needs 0 < rho-min <= rho-max and points >= 1");
    }
    std::vector<double> grid;
    if (count == 1) {
        grid.push_back(rho_min);
    } else {
        const double step = std::log(rho_max / rho_min) / static_cast<double>(count - 1);
        for (int i = 0; i < count; ++i) grid.push_back(rho_min * std::exp(step * i));
    }

    if (opts.format == "csv") {
        std::ostringstream csv;
        csv << "rho,f_exact,f_asymptotic,ratio\n";
        for (double rho : grid) {
            const double fe = bergman::f_exact(spec, q, rho);
            const double fa = bergman::f_asymptotic(spec, q, rho);
            csv << fnum(rho) << "," << fnum(fe) << "," << fnum(fa) << "," << fnum(fe / fa) << "\n";
        }
        emit(opts, csv.str());
        return 0;
    }
    json rows = json::array();
    for (double rho : grid) {
        const double fe = bergman::f_exact(spec, q, rho);
        const double fa = bergman::f_asymptotic(spec, q, rho);
        json row;
        row["rho"] = fnum(rho);
        row["f_exact"] = fnum(fe);
        row["f_asymptotic"] = fnum(fa);
        row["ratio"] = fnum(fe / fa);
        rows.push_back(row);
    }
    json out;
    out["command"] = "profile";
    out["config"] = config_json(opts, spec);
    out["q"] = q;
    out["rows"] = rows;
    emit(opts, out.dump(2));
    return 0;
}

int cmd_verify(const CommonOpts& opts) {
    const auto spec = make_spec(opts);
    const auto cfg = make_quad_config(opts);
    bergman::VerifyOptions vopts;
    vopts.seed = opts.seed;
    const auto rows = bergman::run_verification(spec, cfg, vopts);

    if (opts.format == "json") {
        json arr = json::array();
        for (const auto& row : rows) {
            json r;
            r["name"] = row.name;
            r["status"] = bergman::to_string(row.status);
            r["measured"] = fnum(row.measured);
            r["threshold"] = fnum(row.threshold);
            r["note"] = row.note;
            arr.push_back(r);
        }
        json out;
        out["command"] = "verify";
        out["config"] = config_json(opts, spec);
        out["checks"] = arr;
        out["passed"] = bergman::all_passed(rows);
        emit(opts, out.dump(2));
    } else {
        std::ostringstream table;
        for (const auto& row : rows) {
            char line[160];
            std::snprintf(line, sizeof(line), "%-26s %-4s  measured=%-12.4g threshold=%-12.4g %s",
                          row.name.c_str(), bergman::to_string(row.status), row.measured,
                          row.threshold, row.note.c_str());
            table << line << "\n";
        }
        emit(opts, table.str());
    }
    return bergman::all_passed(rows) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bergman space toolkit for an unbounded Reinhardt domain family"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string p_text = "0,0";
    std::string point_text;
    std::string dir_text;
    int trials = 50;
    int q = 0;
    double rho_min = 1e2;
    double rho_max = 1e6;
    int profile_points = 17;

    CLI::App* dim = app.add_subcommand("dim", "dimension and monomial basis of the Bergman space");
    add_common(dim, opts);

    CLI::App* norm = app.add_subcommand("norm", "squared L2 norm of one monomial z^p");
    add_common(norm, opts);
    norm->add_option("--p", p_text, "multi-index, e.g. 1,0")->required();

    CLI::App* coeffs = app.add_subcommand("coeffs", "kernel coefficients c_0..c_n");
    add_common(coeffs, opts);

    CLI::App* curv = app.add_subcommand("curvature", "holomorphic sectional curvature samples");
    add_common(curv, opts);
    curv->add_option("--point", point_text, "evaluation point: 2n reals re,im,...");
    curv->add_option("--direction", dir_text, "direction: 2n reals re,im,...");
    curv->add_option("--trials", trials, "random (point, direction) pairs")->capture_default_str();

    CLI::App* bfun = app.add_subcommand("bfunction", "invariant B(z) against its closed form");
    add_common(bfun, opts);
    bfun->add_option("--point", point_text, "evaluation point: 2n reals re,im,...")->required();

    CLI::App* profile = app.add_subcommand("profile", "moment profile f_q vs its asymptotic law");
    add_common(profile, opts);
    profile->add_option("--q", q, "moment order")->capture_default_str();
    profile->add_option("--rho-min", rho_min, "grid start")->capture_default_str();
    profile->add_option("--rho-max", rho_max, "grid end")->capture_default_str();
    profile->add_option("--points", profile_points, "log-spaced grid size")->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite and report a table");
    add_common(verify, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (dim->parsed()) return cmd_dim(opts);
        if (norm->parsed()) return cmd_norm(opts, p_text);
        if (coeffs->parsed()) return cmd_coeffs(opts);
        if (curv->parsed()) return cmd_curvature(opts, point_text, dir_text, trials);
        if (bfun->parsed()) return cmd_bfunction(opts, point_text);
        if (profile->parsed()) return cmd_profile(opts, q, rho_min, rho_max, profile_points);
        if (verify->parsed()) return cmd_verify(opts);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const bergman::OutsideTheoremWindow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
