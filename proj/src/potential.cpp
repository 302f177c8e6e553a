#include "stark/potential.hpp"

#include "stark/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace stark {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw ParseError(std::string("non-finite value in ") + what);
}

double content_extent(const Potential& p) {
    double ext = 0.0;
    if (p.kind == PotentialKind::piecewise_constant) {
        for (const auto& s : p.segments)
            if (s.v != 0.0) ext = std::max({ext, std::abs(s.xlo), std::abs(s.xhi)});
    } else if (!p.values.empty()) {
        const double xn = p.x0 + p.dx * static_cast<double>(p.values.size() - 1);
        ext = std::max(std::abs(p.x0), std::abs(xn));
    }
    return ext;
}

void finalize(Potential& p, double L_user) {
    const double ext = content_extent(p);
    p.L = std::max(ext, L_user);
    if (p.L == 0.0) p.L = 1.0;
}

} // namespace

bool Potential::is_zero() const { return max_abs() == 0.0; }

double Potential::max_abs() const {
    double m = 0.0;
    for (const auto& s : segments) m = std::max(m, std::abs(s.v));
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> Potential::breakpoints() const {
    std::vector<double> b{-L, L};
    if (kind == PotentialKind::piecewise_constant) {
        for (const auto& s : segments) {
            b.push_back(s.xlo);
            b.push_back(s.xhi);
        }
    } else {
        for (std::size_t i = 0; i < values.size(); ++i) b.push_back(x0 + dx * static_cast<double>(i));
    }
    std::erase_if(b, [&](double x) { return x < -L || x > L; });
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

double eval_potential(const Potential& p, double x) {
    if (x < -p.L || x > p.L) return 0.0;
    if (p.kind == PotentialKind::piecewise_constant) {
        for (const auto& s : p.segments)
            if (x >= s.xlo && x < s.xhi) return s.v;
        return 0.0;
    }
    if (p.values.empty()) return 0.0;
    const double t = (x - p.x0) / p.dx;
    const double n = static_cast<double>(p.values.size() - 1);
    if (t < 0.0 || t > n) return 0.0;
    const auto i = std::min(static_cast<std::size_t>(t), p.values.size() - 2);
    const double r = t - static_cast<double>(i);
    return p.values[i] * (1.0 - r) + p.values[i + 1] * r;
}

LinearPiece local_piece(const Potential& p, double xmid) {
    if (p.kind == PotentialKind::piecewise_constant || p.values.size() < 2)
        return {xmid, eval_potential(p, xmid), 0.0};
    const double t = (xmid - p.x0) / p.dx;
    const double n = static_cast<double>(p.values.size() - 1);
    if (t < 0.0 || t > n || xmid < -p.L || xmid > p.L) return {xmid, 0.0, 0.0};
    const auto i = std::min(static_cast<std::size_t>(t), p.values.size() - 2);
    const double xi = p.x0 + p.dx * static_cast<double>(i);
    return {xi, p.values[i], (p.values[i + 1] - p.values[i]) / p.dx};
}

Potential piecewise(std::vector<Segment> segs, double L) {
    for (const auto& s : segs) {
        require_finite(s.xlo, "segment");
        require_finite(s.xhi, "segment");
        require_finite(s.v, "segment");
        if (!(s.xlo < s.xhi)) throw DomainError("segment with xlo >= xhi");
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.xlo < b.xlo; });
    for (std::size_t i = 1; i < segs.size(); ++i)
        if (segs[i].xlo < segs[i - 1].xhi) throw DomainError("overlapping segments");
    if (!std::isfinite(L) || L < 0.0) throw DomainError("L must be finite and non-negative");
    Potential p;
    p.kind = PotentialKind::piecewise_constant;
    p.segments = std::move(segs);
    finalize(p, L);
    return p;
}

Potential sampled(double x0, double dx, std::vector<double> values, double L) {
    require_finite(x0, "samples.x0");
    require_finite(dx, "samples.dx");
    for (double v : values) require_finite(v, "samples.values");
    if (!(dx > 0.0)) throw DomainError("samples.dx must be positive");
    if (values.size() < 2) throw DomainError("samples need at least two values");
    if (!std::isfinite(L) || L < 0.0) throw DomainError("L must be finite and non-negative");
    Potential p;
    p.kind = PotentialKind::sampled;
    p.x0 = x0;
    p.dx = dx;
    p.values = std::move(values);
    finalize(p, L);
    return p;
}

Potential zero_potential() {
    Potential p = piecewise({});
    p.name = "zero";
    return p;
}

Potential square_well(double V0, double a) {
    if (V0 > 0.0 || a <= 0.0) throw DomainError("square_well: need V0 <= 0 and a > 0");
    Potential p = piecewise({{-a, a, V0}});
    p.name = "square_well";
    return p;
}

Potential square_barrier(double V0, double a) {
    if (V0 < 0.0 || a <= 0.0) throw DomainError("square_barrier: need V0 >= 0 and a > 0");
    Potential p = piecewise({{-a, a, V0}});
    p.name = "square_barrier";
    return p;
}

Potential double_bump(double V0, double a, double gap, std::optional<double> V1) {
    if (a <= 0.0 || gap < 0.0) throw DomainError("double_bump: need a > 0 and gap >= 0");
    const double h = 0.5 * gap;
    Potential p = piecewise({{-h - a, -h, V0}, {h, h + a, V1.value_or(V0)}});
    p.name = "double_bump";
    return p;
}

Potential parse_potential(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("potential JSON: ") + e.what());
    }
    try {
        if (!j.is_object()) throw ParseError("potential JSON must be an object");
        const std::string kind = j.at("kind").get<std::string>();
        const double L = j.contains("L") ? j.at("L").get<double>() : 0.0;
        require_finite(L, "L");
        Potential p;
        if (kind == "piecewise_constant") {
            std::vector<Segment> segs;
            for (const auto& s : j.at("segments")) {
                if (!s.is_array() || s.size() != 3) throw ParseError("segment must be [xlo, xhi, v]");
                segs.push_back({s[0].get<double>(), s[1].get<double>(), s[2].get<double>()});
            }
            p = piecewise(std::move(segs), L);
        } else if (kind == "sampled") {
            const auto& s = j.at("samples");
            p = sampled(s.at("x0").get<double>(), s.at("dx").get<double>(),
                        s.at("values").get<std::vector<double>>(), L);
        } else {
            throw ParseError("unknown potential kind '" + kind + "'");
        }
        if (j.contains("name")) p.name = j.at("name").get<std::string>();
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("potential JSON: ") + e.what());
    }
}

Potential load_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open potential file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_potential(ss.str());
}

std::string potential_to_json(const Potential& p) {
    nlohmann::json j;
    if (p.kind == PotentialKind::piecewise_constant) {
        j["kind"] = "piecewise_constant";
        j["segments"] = nlohmann::json::array();
        for (const auto& s : p.segments) j["segments"].push_back({s.xlo, s.xhi, s.v});
    } else {
        j["kind"] = "sampled";
        j["samples"] = {{"x0", p.x0}, {"dx", p.dx}, {"values", p.values}};
    }
    j["L"] = p.L;
    if (!p.name.empty()) j["name"] = p.name;
    return j.dump();
}

} // namespace stark
