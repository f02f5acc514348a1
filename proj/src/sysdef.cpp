#include "canardlab/sysdef.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace canardlab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

double parse_value(std::string_view text, int line, int column) {
    const std::string s(trim(text));
    char* end = nullptr;
    const double value = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(value)) {
        throw ParseError("expected a finite number, got '" + s + "'", line, column);
    }
    return value;
}

}  // namespace

PlanarSlowFastSystem::PlanarSlowFastSystem(Expr fast, Expr slow, Environment params, double eps,
                                           std::optional<std::array<double, 4>> domain)
    : fast_(std::move(fast)), slow_(std::move(slow)), params_(std::move(params)), eps_(eps),
      domain_(domain) {
    if (!(eps_ > 0.0) || !std::isfinite(eps_)) throw ValidationError("epsilon must be positive and finite");
    if (params_.count("u") || params_.count("v")) throw ValidationError("'u' and 'v' are reserved names");
    std::vector<std::string> names{"u", "v"};
    for (const auto& [name, value] : params_) {
        names.push_back(name);
        param_values_.push_back(value);
    }
    fast_bound_ = bind_variables(fast_, names);
    slow_bound_ = bind_variables(slow_, names);
    if (domain_) {
        const auto& d = *domain_;
        if (!(d[0] < d[1] && d[2] < d[3])) throw ValidationError("domain box must have min < max");
        constexpr int n = 21;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const Vec2 s{d[0] + (d[1] - d[0]) * i / (n - 1), d[2] + (d[3] - d[2]) * j / (n - 1)};
                if (!std::isfinite(f(s)) || !std::isfinite(h(s))) {
                    char msg[128];
                    std::snprintf(msg, sizeof msg, "system is not finite at (%g, %g) inside the domain", s[0], s[1]);
                    throw ValidationError(msg);
                }
            }
        }
    }
}

template <class T>
std::vector<T> PlanarSlowFastSystem::slots(const T& u, const T& v) const {
    std::vector<T> out;
    out.reserve(2 + param_values_.size());
    out.push_back(u);
    out.push_back(v);
    for (double p : param_values_) out.push_back(T{p});
    return out;
}

std::optional<double> PlanarSlowFastSystem::param(std::string_view name) const {
    auto it = params_.find(name);
    if (it == params_.end()) return std::nullopt;
    return it->second;
}

double PlanarSlowFastSystem::f(const Vec2& s) const {
    const auto v = slots(s[0], s[1]);
    return evaluate<double>(*fast_bound_, v);
}

double PlanarSlowFastSystem::h(const Vec2& s) const {
    const auto v = slots(s[0], s[1]);
    return evaluate<double>(*slow_bound_, v);
}

Vec2 PlanarSlowFastSystem::field(const Vec2& s) const {
    const auto v = slots(s[0], s[1]);
    return {evaluate<double>(*fast_bound_, v), eps_ * evaluate<double>(*slow_bound_, v)};
}

double PlanarSlowFastSystem::df_du(const Vec2& s) const {
    const auto v = slots(Dual{s[0], 1.0}, Dual{s[1], 0.0});
    return evaluate<Dual>(*fast_bound_, v).deriv;
}

double PlanarSlowFastSystem::df_dv(const Vec2& s) const {
    const auto v = slots(Dual{s[0], 0.0}, Dual{s[1], 1.0});
    return evaluate<Dual>(*fast_bound_, v).deriv;
}

std::optional<ModelParams> PlanarSlowFastSystem::model_params() const {
    auto a = param("a");
    auto e1 = param("e1");
    auto e2 = param("e2");
    if (!a || !e1 || !e2) return std::nullopt;
    return ModelParams::make(*a, *e1, *e2, eps_);
}

PlanarSlowFastSystem PlanarSlowFastSystem::parse_text(std::string_view text) {
    Environment params;
    Expr fast;
    Expr slow;
    std::optional<double> eps;
    std::optional<std::array<double, 4>> domain;

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (trim(line).empty()) {
            if (end == text.size()) break;
            continue;
        }
        const auto eq = line.find('=');
        const int first_col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
        if (eq == std::string_view::npos) throw ParseError("expected '<key> = <value>'", line_no, first_col);
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view rhs = line.substr(eq + 1);
        const int rhs_col = static_cast<int>(eq) + 2;

        if (key.substr(0, 6) == "param " || key.substr(0, 6) == "param\t") {
            const std::string_view name = trim(key.substr(6));
            if (!is_identifier(name)) throw ParseError("invalid parameter name", line_no, first_col + 6);
            if (params.count(name)) throw ParseError("parameter '" + std::string(name) + "' defined twice", line_no, first_col);
            params[std::string(name)] = parse_value(rhs, line_no, rhs_col);
        } else if ((key == "fast" && fast) || (key == "slow" && slow) || (key == "epsilon" && eps) ||
                   (key == "domain" && domain)) {
            throw ParseError("'" + std::string(key) + "' defined twice", line_no, first_col);
        } else if (key == "fast" || key == "slow") {
            // Pad with spaces so reported columns match the file.
            const std::string padded = std::string(static_cast<std::size_t>(rhs_col - 1), ' ') + std::string(rhs);
            Expr e = parse(padded, line_no);
            (key == "fast" ? fast : slow) = std::move(e);
        } else if (key == "epsilon") {
            eps = parse_value(rhs, line_no, rhs_col);
        } else if (key == "domain") {
            std::istringstream in{std::string(rhs)};
            std::array<double, 4> box{};
            for (double& b : box) {
                if (!(in >> b)) throw ParseError("domain needs four numbers", line_no, rhs_col);
            }
            std::string extra;
            if (in >> extra) throw ParseError("domain needs four numbers", line_no, rhs_col);
            domain = box;
        } else {
            throw ParseError("unknown key '" + std::string(key) + "'", line_no, first_col);
        }
        if (end == text.size()) break;
    }
    if (!fast) throw ParseError("missing 'fast = <expr>'", line_no, 1);
    if (!slow) throw ParseError("missing 'slow = <expr>'", line_no, 1);
    if (!eps) throw ParseError("missing 'epsilon = <value>'", line_no, 1);
    return PlanarSlowFastSystem(fast, slow, std::move(params), *eps, domain);
}

PlanarSlowFastSystem PlanarSlowFastSystem::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read system file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

std::string leslie_gower_source(const ModelParams& p) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "# Leslie-Gower predator-prey system\n"
                  "param a = %.17g\nparam e1 = %.17g\nparam e2 = %.17g\n"
                  "epsilon = %.17g\nfast = %s\nslow = %s\n",
                  p.a, p.e1, p.e2, p.eps, kLeslieGowerFast, kLeslieGowerSlow);
    return buf;
}

PlanarSlowFastSystem leslie_gower_system(const ModelParams& p) {
    return PlanarSlowFastSystem(parse(kLeslieGowerFast), parse(kLeslieGowerSlow),
                                Environment{{"a", p.a}, {"e1", p.e1}, {"e2", p.e2}}, p.eps);
}

}  // namespace canardlab
