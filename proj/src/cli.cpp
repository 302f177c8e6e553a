#include "stark/cli.hpp"

#include "stark/acceptance.hpp"
#include "stark/airy.hpp"
#include "stark/asymptotics.hpp"
#include "stark/error.hpp"
#include "stark/resonance.hpp"
#include "stark/scattering.hpp"
#include "stark/spectrum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>
#include <variant>

namespace stark {

namespace {

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", *d);
        return buf;
    }
    if (const long long* n = std::get_if<long long>(&c)) return std::to_string(*n);
    if (const std::string* s = std::get_if<std::string>(&c)) return *s;
    return "";
}

void write_table(const Table& t, OutputFormat fmt, std::ostream& out) {
    if (fmt == OutputFormat::csv) {
        for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
            out << '\n';
        }
        return;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json o;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& c = row[i];
            if (const double* d = std::get_if<double>(&c)) o[t.header[i]] = *d;
            else if (const long long* n = std::get_if<long long>(&c)) o[t.header[i]] = *n;
            else if (const std::string* s = std::get_if<std::string>(&c)) o[t.header[i]] = *s;
            else o[t.header[i]] = nullptr;
        }
        arr.push_back(o);
    }
    out << arr.dump(2) << '\n';
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

double parse_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ConfigError("not a finite number: '" + s + "'");
    return v;
}

std::pair<double, double> parse_range(const std::string& s) {
    const auto p = split(s, ':');
    if (p.size() != 2) throw ConfigError("expected a:b, got '" + s + "'");
    const double a = parse_number(p[0]), b = parse_number(p[1]);
    if (!(a < b)) throw ConfigError("empty range '" + s + "'");
    return {a, b};
}

std::vector<double> parse_f_list(const std::string& s) {
    std::vector<double> fs;
    for (const std::string& x : split(s, ',')) fs.push_back(parse_number(x));
    return fs;
}

void check_f_values(const std::vector<double>& fs) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (!(fs[i] > 0.0)) throw ConfigError("field strengths must be positive");
        if (i > 0 && !(fs[i] < fs[i - 1])) throw ConfigError("field strengths must be strictly descending");
    }
}

double single_f(const RunConfig& cfg) {
    if (cfg.f_values.size() != 1) throw ConfigError("exactly one field strength is required");
    return cfg.f_values[0];
}

Table airy_table(const RunConfig& cfg) {
    const cplx w(cfg.re, cfg.im);
    const AiryEval a = ai(w);
    const cplx v = a.value(), d = a.derivative();
    return {{"re_w", "im_w", "method", "re_mantissa", "im_mantissa", "re_dmantissa", "im_dmantissa", "re_scale",
             "im_scale", "re_value", "im_value", "re_derivative", "im_derivative"},
            {{w.real(), w.imag(), std::string(airy_method_name(a.method_tag)), a.value_mantissa.real(),
              a.value_mantissa.imag(), a.derivative_mantissa.real(), a.derivative_mantissa.imag(),
              a.scale_exponent.real(), a.scale_exponent.imag(), v.real(), v.imag(), d.real(), d.imag()}}};
}

Table scattering_table(const RunConfig& cfg, const Potential& p) {
    if (cfg.kn < 1) throw ConfigError("k-grid needs at least one point");
    Table t{{"k", "re_t", "im_t", "re_rho", "im_rho", "r2_plus_t2", "re_F", "im_F"}, {}};
    for (int i = 0; i < cfg.kn; ++i) {
        const double k = cfg.kn == 1 ? cfg.k0 : cfg.k0 + (cfg.k1 - cfg.k0) * i / (cfg.kn - 1);
        const Amplitudes a = amplitudes(p, k);
        const cplx F = 2.0 * cplx(0, 1) * a.k * a.rho;
        t.rows.push_back({k, a.t.real(), a.t.imag(), a.rho.real(), a.rho.imag(),
                          std::norm(a.r_left) + std::norm(a.t), F.real(), F.imag()});
    }
    return t;
}

Table spectrum_table(const Potential& p) {
    Table t{{"lambda0", "kappa_minus", "kappa_plus", "lambda1"}, {}};
    for (const BoundState& b : bound_states(p)) t.rows.push_back({b.lambda0, b.kappa_minus, b.kappa_plus, b.lambda1});
    return t;
}

Table scan_table(const RunConfig& cfg, const Potential& p) {
    const double f = single_f(cfg);
    ScanOptions o;
    o.max_depth = cfg.max_depth;
    o.threads = cfg.threads;
    Table t{{"f", "re_k", "im_k", "re_z", "im_z", "residual", "method"}, {}};
    if (p.is_zero()) return t;
    const Rect r{cfg.re_k0, cfg.re_k1, cfg.im_k0, cfg.im_k1};
    for (const Resonance& x : scan_rectangle(p, f, r, o))
        t.rows.push_back({f, x.k.real(), x.k.imag(), x.z.real(), x.z.imag(), x.residual,
                          std::string(resonance_method_name(x.method))});
    return t;
}

Table string_table(const RunConfig& cfg, const Potential& p) {
    const double f = single_f(cfg);
    Table t{{"family", "j", "re_k_pred", "im_k_pred", "re_k_exact", "im_k_exact", "abs_diff", "theta", "l"}, {}};
    auto add = [&](const std::string& fam, long long j, cplx kp, std::optional<cplx> kx, Cell theta, Cell l) {
        std::vector<Cell> row{fam, j, kp.real(), kp.imag()};
        if (kx) {
            row.insert(row.end(), {kx->real(), kx->imag(), std::abs(*kx - kp)});
        } else {
            row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}});
        }
        row.push_back(theta);
        row.push_back(l);
        t.rows.push_back(std::move(row));
    };

    if (cfg.family == "positive-axis" || cfg.family == "line") {
        const auto [a, b] = cfg.window.value_or(std::pair{0.9, 1.1});
        const bool line = cfg.family == "line";
        const auto preds = line ? string_line(p, f, a, b) : string_positive_axis(p, f, a, b);
        for (const StringPrediction& s : preds) {
            std::optional<cplx> kx;
            if (cfg.refine) kx = refine_root(p, s.k_pred, f).k;
            add(cfg.family, s.j, s.k_pred, kx, s.theta, s.l);
        }
    } else if (cfg.family == "reflection-zero") {
        const auto [a, b] = cfg.window.value_or(std::pair{0.5, 6.0});
        if (!(a > 0.1)) throw ConfigError("reflection-zero window must start above 0.1");
        const double depth = std::min(0.7, 0.99 * std::tan(std::numbers::pi / 3) * a);
        long long j = 0;
        for (const FZero& z : find_F_zeros(p, {a, b, -depth, -0.01})) {
            std::optional<cplx> kx;
            if (cfg.refine && z.order == 1) kx = track_reflection_zero_resonance(p, f, z).resonance.k;
            add(cfg.family, j++, z.k, kx, std::monostate{}, std::monostate{});
        }
    } else if (cfg.family == "bound-state") {
        long long j = 0;
        for (const BoundState& b : bound_states(p)) {
            const double width = predicted_width(b, f);
            const cplx kp = std::sqrt(cplx(b.lambda0 + f * b.lambda1, -width));
            std::optional<cplx> kx;
            if (cfg.refine) kx = bound_state_resonance(p, f, b).resonance.k;
            add(cfg.family, j++, kp, kx, std::monostate{}, std::monostate{});
        }
    } else {
        throw ConfigError("unknown family '" + cfg.family + "'");
    }
    return t;
}

int verify(const RunConfig& cfg, std::ostream& out) {
    AcceptanceConfig ac;
    if (!cfg.f_values.empty()) ac.f_list = cfg.f_values;
    if (!cfg.potential_path.empty()) ac.extra = load_potential(cfg.potential_path);
    ac.threads = cfg.threads;
    const VerifyReport rep = run_acceptance(ac);
    for (const CriterionResult& c : rep.criteria)
        std::fprintf(stderr, "%s %s %s\n", c.id.c_str(), c.pass ? "PASS" : "FAIL", c.detail.c_str());
    if (cfg.format == OutputFormat::json) {
        out << report_to_json(rep) << '\n';
    } else {
        Table t{{"id", "pass", "measured", "expected", "tolerance", "description"}, {}};
        for (const CriterionResult& c : rep.criteria)
            t.rows.push_back({c.id, static_cast<long long>(c.pass), c.measured, c.expected, c.tolerance, c.description});
        write_table(t, cfg.format, out);
    }
    return rep.overall ? kExitOk : kExitVerify;
}

} // namespace

int threads_from_env() {
    const char* s = std::getenv("STARK_THREADS");
    if (!s) return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    char* end = nullptr;
    const long n = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || n < 1 || n > 4096)
        throw ConfigError(std::string("STARK_THREADS must be a positive integer, got '") + s + "'");
    return static_cast<int>(n);
}

int run(const RunConfig& cfg, std::ostream& out) {
    check_f_values(cfg.f_values);
    auto potential = [&] {
        if (cfg.potential_path.empty()) throw ConfigError("--potential is required");
        return load_potential(cfg.potential_path);
    };
    switch (cfg.command) {
    case Command::airy: write_table(airy_table(cfg), cfg.format, out); return kExitOk;
    case Command::scattering: write_table(scattering_table(cfg, potential()), cfg.format, out); return kExitOk;
    case Command::spectrum: write_table(spectrum_table(potential()), cfg.format, out); return kExitOk;
    case Command::scan: write_table(scan_table(cfg, potential()), cfg.format, out); return kExitOk;
    case Command::string: write_table(string_table(cfg, potential()), cfg.format, out); return kExitOk;
    case Command::verify: return verify(cfg, out);
    }
    return kExitConfig;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Resonances of the one-dimensional Stark Hamiltonian"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    std::string format = "csv", f_text, f_list, k_grid, re_k, im_k, window;
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", cfg.output_path, "write the artifact here instead of stdout");

    auto* airy = app.add_subcommand("airy", "Scaled Airy evaluation at one point");
    airy->add_option("--re", cfg.re)->required();
    airy->add_option("--im", cfg.im)->required();

    auto* scat = app.add_subcommand("scattering", "Field-free scattering data on a real k grid");
    scat->add_option("--potential", cfg.potential_path)->required();
    scat->add_option("--k-grid", k_grid, "k0:k1:n")->required();

    auto* spec = app.add_subcommand("spectrum", "Bound states");
    spec->add_option("--potential", cfg.potential_path)->required();

    auto* scan = app.add_subcommand("scan", "All resonances in a k rectangle");
    scan->add_option("--potential", cfg.potential_path)->required();
    scan->add_option("--f", f_text)->required();
    scan->add_option("--re-k", re_k, "a:b")->required();
    scan->add_option("--im-k", im_k, "c:d")->required();
    scan->add_option("--max-depth", cfg.max_depth);

    auto* str = app.add_subcommand("string", "Asymptotic predictions for one resonance family");
    str->add_option("--potential", cfg.potential_path)->required();
    str->add_option("--f", f_text)->required();
    str->add_option("--family", cfg.family)
        ->check(CLI::IsMember({"positive-axis", "line", "reflection-zero", "bound-state"}));
    str->add_option("--window", window, "a:b");
    str->add_flag("--refine", cfg.refine, "locate the exact resonance for each member");

    auto* ver = app.add_subcommand("verify", "Acceptance suite");
    ver->add_option("--potential", cfg.potential_path, "added to the unitarity corpus");
    ver->add_option("--f-list", f_list, "descending fields for the string criteria");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        cfg.threads = threads_from_env();
        cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
        if (*airy) cfg.command = Command::airy;
        if (*scat) {
            cfg.command = Command::scattering;
            const auto p = split(k_grid, ':');
            if (p.size() != 3) throw ConfigError("--k-grid expects k0:k1:n");
            cfg.k0 = parse_number(p[0]);
            cfg.k1 = parse_number(p[1]);
            const double n = parse_number(p[2]);
            if (n != std::floor(n) || n < 1 || n > 1e7) throw ConfigError("--k-grid point count must be a positive integer");
            cfg.kn = static_cast<int>(n);
        }
        if (*spec) {
            cfg.command = Command::spectrum;
            if (app.get_option("--format")->count() == 0) cfg.format = OutputFormat::json;
        }
        if (*scan) {
            cfg.command = Command::scan;
            std::tie(cfg.re_k0, cfg.re_k1) = parse_range(re_k);
            std::tie(cfg.im_k0, cfg.im_k1) = parse_range(im_k);
        }
        if (*str) {
            cfg.command = Command::string;
            if (!window.empty()) cfg.window = parse_range(window);
        }
        if (*ver) {
            cfg.command = Command::verify;
            if (app.get_option("--format")->count() == 0) cfg.format = OutputFormat::json;
            if (!f_list.empty()) cfg.f_values = parse_f_list(f_list);
        }
        if (!f_text.empty()) cfg.f_values = {parse_number(f_text)};

        if (cfg.output_path.empty()) return run(cfg, std::cout);
        std::ostringstream buf;
        const int code = run(cfg, buf);
        std::ofstream file(cfg.output_path, std::ios::binary);
        if (!file) throw ConfigError("cannot write '" + cfg.output_path + "'");
        file << buf.str();
        return code;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    }
}

} // namespace stark
