#include "canardlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "canardlab/error.hpp"

namespace canardlab {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

namespace {

template <class... T>
void row(std::string& out, const T&... cells) {
    bool first = true;
    auto put = [&](const auto& c) {
        if (!first) out += ',';
        first = false;
        if constexpr (std::is_arithmetic_v<std::decay_t<decltype(c)>>) {
            if constexpr (std::is_integral_v<std::decay_t<decltype(c)>>) {
                out += std::to_string(c);
            } else {
                out += format_number(c);
            }
        } else {
            out += c;
        }
    };
    (put(cells), ...);
    out += '\n';
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,u,v\n";
    for (std::size_t i = 0; i < traj.size(); ++i) row(out, traj.times()[i], traj.states()[i][0], traj.states()[i][1]);
    return out;
}

std::string manifold_csv(const std::vector<ManifoldBranch>& branches) {
    std::string out = "branch,u,v,fprime_u,tag\n";
    for (const auto& b : branches) {
        for (const auto& s : b.samples) {
            row(out, std::string(to_string(b.kind)), s.point[0], s.point[1], s.fprime_u, std::string(to_string(s.tag)));
        }
    }
    return out;
}

std::string singular_cycle_csv(const SingularCycle& sc) {
    std::string out = "point,u,v,tag\n";
    const auto poly = sc.polyline();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        std::string tag = "arc";
        if (i == 0 || i + 1 == poly.size()) {
            tag = "A";
        } else if (i == 1) {
            tag = "B";
        } else if (i == 2) {
            tag = "C";
        } else if (i + 2 == poly.size()) {
            tag = "D";
        }
        row(out, i, poly[i][0], poly[i][1], tag);
    }
    return out;
}

std::string cycle_csv(const LimitCycle& cycle) {
    std::string out = "t,u,v,ln_u\n";
    for (const auto& s : cycle.samples) row(out, s.t, s.u, s.v, s.ln_u);
    return out;
}

std::string k2_family_csv(const std::vector<K2Orbit>& family) {
    std::string out = "orbit,t,x2,y2\n";
    for (std::size_t k = 0; k < family.size(); ++k) {
        const auto& traj = family[k].trajectory;
        for (std::size_t i = 0; i < traj.size(); ++i) row(out, k, traj.times()[i], traj.states()[i][0], traj.states()[i][1]);
    }
    return out;
}

std::string convergence_csv(const ConvergenceStudy& study) {
    std::string out = "eps,d,k_hat,D_hat,ln_k_hat,k_fiber,period\n";
    for (const auto& r : study.rows) row(out, r.eps, r.distance, r.k_hat, r.descent, r.ln_k_hat, r.k_fiber, r.period);
    return out;
}

std::string convergence_json(const ConvergenceStudy& study) {
    nlohmann::ordered_json j;
    j["alpha"] = study.alpha;
    j["reference_k"] = study.reference_k;
    j["reference_fiber_level"] = study.reference.fiber_level;
    j["slope"] = study.slope;
    j["distances_decreasing"] = study.distances_decreasing;
    j["slope_in_band"] = study.slope_in_band;
    j["slope_below_0_9"] = study.slope_flagged;
    j["pass"] = study.distances_decreasing && study.slope_in_band;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : study.rows) {
        const double implied = r.k_hat > 0.0 ? -study.reference.c2 / (study.reference.c1 * r.k_hat) : INFINITY;
        nlohmann::ordered_json jr;
        jr["eps"] = r.eps;
        jr["d"] = r.distance;
        jr["k_hat"] = r.k_hat;
        jr["ln_k_hat"] = r.ln_k_hat;
        jr["D_hat"] = r.descent;
        jr["k_fiber"] = r.k_fiber;
        jr["period"] = r.period;
        jr["D_matches_crossing_k"] = std::isfinite(implied) && std::abs(r.descent - implied) <= 0.15 * r.descent;
        rows.push_back(jr);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace canardlab
