// Acceptance run: one PASS/FAIL line per criterion.  Tolerances are pinned
// below and never adjusted to make a line pass.
//
//   acceptance            all criteria
//   acceptance --only N   a single criterion (exit status reflects it alone)

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "canardlab/blowup.hpp"
#include "canardlab/cycle.hpp"
#include "canardlab/expr.hpp"
#include "canardlab/gspt.hpp"
#include "canardlab/integrate.hpp"
#include "canardlab/io.hpp"
#include "canardlab/model.hpp"
#include "canardlab/sysdef.hpp"
#include "oracles.hpp"
#include "random_expr.hpp"

using namespace canardlab;

namespace {

// ---- pinned tolerances and targets ----------------------------------------
constexpr double kC1 = 11.5;
constexpr double kC2 = -0.56;
constexpr double kSmallEps = 1e-4;
constexpr double kKLow = 0.87, kKHigh = 1.30;
constexpr double kDLow = 0.036, kDHigh = 0.054;
constexpr double kDConsistency = 0.10;
constexpr double kSlopeLow = 0.6, kSlopeHigh = 1.2, kSlopeFlag = 0.9;
constexpr double kExactSupError = 1e-9;
constexpr double kExitRelError = 1e-6;
constexpr double kChartSlope = 0.9;
constexpr double kAgreement = 1e-10;
constexpr int kManifoldPoints = 10000;
constexpr double kOrderLow = 4.5, kOrderHigh = 5.5;
constexpr double kQuadrantFactor = 10.0;
constexpr double kFdAgreement = 1e-5;
constexpr double kParsedVsHardCoded = 1e-12;

const ModelParams kFig3 = ModelParams::make(1.0, 0.08, 0.01, kSmallEps);
const std::vector<double> kSweepEps{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
const std::vector<double> kChartR2{1e-1, 3e-2, 1e-2, 3e-3};

struct Result {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// The eps = 1e-4 cycle serves criteria 2, 3 and 8; compute it once.
const LimitCycle& small_eps_cycle() {
    static const LimitCycle cycle = find_limit_cycle(kFig3, 0.0);
    return cycle;
}

const ConvergenceStudy& sweep(int parallel) {
    static std::unique_ptr<ConvergenceStudy> serial, threaded;
    auto& slot = parallel == 1 ? serial : threaded;
    if (!slot) {
        StudyOptions opt;
        opt.parallel = parallel;
        slot = std::make_unique<ConvergenceStudy>(convergence_study(kFig3, 0.0, kSweepEps, opt));
    }
    return *slot;
}

// ---- criteria ---------------------------------------------------------------

Result blowup_constants_exact() {
    const BlowupConstants bc = blowup_constants(ModelParams::make(1.0, 0.08, 0.01, kSmallEps));
    return {bc.c1 == kC1 && bc.c2 == kC2, fmt("c1 = %.17g, c2 = %.17g", bc.c1, bc.c2)};
}

Result crossing_constant() {
    const LimitCycle& c = small_eps_cycle();
    const double k = crossing_k(c);
    return {k >= kKLow && k <= kKHigh,
            fmt("k_hat = u_cross/eps = %.6g (ln k_hat = %.4f, ln u_cross = %.4f); target [%.2f, %.2f]; "
                "k implied by the measured fiber = %.4f",
                k, ln_crossing_k(c), c.ln_u_cross, kKLow, kKHigh, fiber_k(kFig3, c))};
}

Result descent_depth_check() {
    const LimitCycle& c = small_eps_cycle();
    const Descent d = descent_depth(kFig3, c);
    const double k = crossing_k(c);
    const BlowupConstants bc = blowup_constants(kFig3);
    const double implied = k > 0.0 ? -bc.c2 / (bc.c1 * k) : std::numeric_limits<double>::infinity();
    const double mismatch = std::abs(d.depth - implied) / d.depth;
    const bool range = d.depth >= kDLow && d.depth <= kDHigh;
    const bool consistent = mismatch < kDConsistency;
    return {range && consistent,
            fmt("D_hat = %.6f (v_fiber = %.6f) range [%.3f, %.3f] %s; -c2/(c1 k_hat) = %.6g, relative "
                "mismatch %.3g vs < %.2f %s",
                d.depth, d.v_fiber, kDLow, kDHigh, range ? "ok" : "out", implied, mismatch, kDConsistency,
                consistent ? "ok" : "out")};
}

Result convergence() {
    const ConvergenceStudy& st = sweep(1);
    std::string ds;
    for (const auto& r : st.rows) ds += fmt(" %.3g:%.5g", r.eps, r.distance);
    const bool band = st.slope >= kSlopeLow && st.slope <= kSlopeHigh;
    return {st.distances_decreasing && band,
            fmt("d(eps):%s; decreasing %s; slope %.4f in [%.1f, %.1f] %s%s; gamma' built with k = %.4f", ds.c_str(),
                st.distances_decreasing ? "yes" : "no", st.slope, kSlopeLow, kSlopeHigh, band ? "ok" : "out",
                st.slope < kSlopeFlag ? " (flagged: below 0.9)" : "", st.reference_k)};
}

Result exact_chart_solution() {
    const ModelParams& p = kFig3;
    const double ts = k2_blowup_time(p, 1.0);
    const Field f = [&](double, const Vec2& s) { return k2_field(p, s, 0.0); };
    const Trajectory tr = integrate(f, {1.0, 0.0}, 0.0, 0.9 * ts, {1e-12, {1e-14, 1e-14}});
    double sup = 0.0;
    auto probe = [&](double t) {
        const Vec2 a = tr(t);
        const Vec2 b = k2_exact(p, 1.0, 0.0, t);
        sup = std::max({sup, std::abs(a[0] - b[0]), std::abs(a[1] - b[1])});
    };
    for (double t : tr.times()) probe(t);
    for (int i = 0; i <= 4000; ++i) probe(0.9 * ts * i / 4000.0);

    K2FamilyOptions opt;
    opt.integrator = {1e-12, {1e-14, 1e-14}};
    const auto fam = k2_orbit_family(p, {1.0}, 0.0, opt);
    const double y_end = fam.front().trajectory.back()[1];
    const double exit = exit_value(p, 1.0, 0.0);
    const double exit_err = std::abs(y_end - exit) / std::abs(exit);
    return {sup < kExactSupError && exit_err < kExitRelError,
            fmt("sup error on [0, 0.9 t*] = %.3g (< %.0e); y2 at x2 = %.0e is %.10f vs exit value c2/c1 = %.10f, "
                "relative gap %.3g (< %.0e)",
                sup, kExactSupError, opt.x2_max, y_end, exit, exit_err, kExitRelError)};
}

double chart_sup_distance(const ModelParams& p, double r2, LocalOrder order) {
    const double ts = k2_blowup_time(p, 1.0);
    const Field f = [&](double, const Vec2& s) { return k2_field(p, s, r2, order); };
    const Trajectory tr = integrate(f, {1.0, 0.0}, 0.0, 0.9 * ts, {1e-12, {1e-14, 1e-14}});
    double sup = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double t = 0.9 * ts * i / 4000.0;
        sup = std::max(sup, norm(tr(t) - k2_exact(p, 1.0, 0.0, t)));
    }
    return sup;
}

// Distance between the orbits as curves, y2 against x2, for x2 in [1, 5].
// At r2 = 0.1 the upper end is x = 1/2; larger x2 runs into the prey
// carrying capacity.
double chart_orbit_distance(const ModelParams& p, double r2, LocalOrder order) {
    const BlowupConstants bc = blowup_constants(p);
    const Field f = [&](double, const Vec2& s) { return k2_field(p, s, r2, order); };
    const Trajectory tr =
        integrate_to_section(f, {1.0, 0.0}, {Axis::U, 5.0, Direction::Up}, 0.0, 100.0, {1e-12, {1e-14, 1e-14}})
            .trajectory;
    double sup = 0.0;
    for (const auto& s : tr.states()) sup = std::max(sup, std::abs(s[1] - bc.c2 / bc.c1 * (1.0 - 1.0 / s[0])));
    return sup;
}

double chart_slope(const std::vector<double>& r2s, LocalOrder order, std::string* text, bool as_orbits = false) {
    std::vector<double> d;
    for (double r : r2s) {
        d.push_back(as_orbits ? chart_orbit_distance(kFig3, r, order) : chart_sup_distance(kFig3, r, order));
        if (text) *text += fmt(" %.0e:%.4g", r, d.back());
    }
    return fit_loglog_slope(r2s, d);
}

Result chart_scaling() {
    std::string full;
    const double slope = chart_slope(kChartR2, LocalOrder::Full, &full);
    const double second = chart_slope(kChartR2, LocalOrder::Second, nullptr);
    const double small = chart_slope({1e-4, 3e-5, 1e-5, 3e-6}, LocalOrder::Full, nullptr);
    const double curves = chart_slope(kChartR2, LocalOrder::Full, nullptr, true);
    return {slope >= kChartSlope,
            fmt("exact chart field, sup distance over t, r2:d =%s, slope %.3f (>= %.1f); diagnostics: "
                "second-order field slope %.3f on the same r2, exact field slope %.3f on r2 in [3e-6, 1e-4], "
                "exact field y2(x2) orbit distance slope %.3f on the same r2",
                full.c_str(), slope, kChartSlope, second, small, curves)};
}

Result manifold_properties() {
    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> du(0.0, 1.0), dv(0.0, 0.6);
    const ModelParams& p = kFig3;
    const Classifier c(p);
    const double vb = p.e1 / p.a;
    const double ubar = (1.0 - p.e1) / 2.0;
    double worst = 0.0;
    int misplaced = 0;
    for (int i = 0; i < kManifoldPoints; ++i) {
        const bool axis = i % 2 == 0;
        const double u = axis ? 0.0 : du(rng);
        const double v = axis ? dv(rng) : g(p, u);
        const auto cls = c.classify({u, v});
        worst = std::max(worst, std::abs(cls.fprime_u - cls.fprime_u_closed));
        const double x = axis ? v - vb : u - ubar;  // positive on the attracting side
        const Stability want = x > 0 ? Stability::Attractive : x < 0 ? Stability::Repulsive : Stability::Fold;
        if (cls.tag != want && std::abs(x) > 1e-9) ++misplaced;
    }
    int switches_off_fold = 0;
    for (const auto& b : sample_manifold(c, 5001, 0.4)) {
        const ManifoldClassification* prev = nullptr;
        for (const auto& s : b.samples) {
            if (s.tag == Stability::Fold) {
                prev = nullptr;
                continue;
            }
            if (prev && prev->tag != s.tag) ++switches_off_fold;
            prev = &s;
        }
    }
    return {worst <= kAgreement && misplaced == 0 && switches_off_fold == 0,
            fmt("%d points: max |AD - closed form| = %.3g (<= %.0e); tags on the wrong side of a fold: %d; "
                "switches not at a fold sample: %d",
                kManifoldPoints, worst, kAgreement, misplaced, switches_off_fold)};
}

Result canard_property() {
    const LimitCycle& c = small_eps_cycle();
    const Descent d = descent_depth(kFig3, c);
    const double vb = kFig3.e1 / kFig3.a;
    const double needed = 0.5 * (vb - d.v_fiber);
    const double ln_thr = std::log(10.0) + ln_crossing_k(c) + std::log(kSmallEps);
    const double extent = canard_arc_extent(c, ln_thr, d.v_fiber, vb);
    const double ln_thr_fiber = std::log(10.0 * fiber_k(kFig3, c) * kSmallEps);
    const double extent_fiber = canard_arc_extent(c, ln_thr_fiber, d.v_fiber, vb);
    return {extent >= needed,
            fmt("sub-arc with u < 10 k_hat eps (ln threshold %.2f) spans %.5f of v; needs >= %.5f; with k from "
                "the fiber instead (threshold %.3g) it spans %.5f",
                ln_thr, extent, needed, std::exp(ln_thr_fiber), extent_fiber)};
}

Result infrastructure() {
    std::vector<std::string> notes;
    bool ok = true;

    // integrator order on the logistic oracle
    const Field logistic = [](double, const Vec2& y) { return Vec2{y[0] * (1 - y[0]), 0.0}; };
    const double exact = oracle::logistic(0.1, 10.0);
    double err[4];
    for (int i = 0; i < 4; ++i) err[i] = std::abs(integrate_fixed(logistic, {0.1, 0.0}, 0.0, 10.0, 20L << i)[0] - exact);
    const double order = std::log2(err[2] / err[3]);
    const bool order_ok = order >= kOrderLow && order <= kOrderHigh;
    ok = ok && order_ok;
    notes.push_back(fmt("order %.3f", order));

    // quadrant invariance on the predator-prey field
    const ModelParams fig1 = ModelParams::make(1.0, 0.08, 0.01, 0.01);
    const IntegratorConfig cfg;
    const Field model = [&](double, const Vec2& y) { return vector_field(fig1, y); };
    double min_u = std::numeric_limits<double>::infinity();
    for (const Vec2 y0 : {Vec2{0.5, 0.3}, Vec2{0.01, 0.05}, Vec2{0.9, 0.02}}) {
        const Trajectory tr = integrate_in_quadrant(model, y0, 0.0, 2000.0, cfg);
        for (const auto& s : tr.states()) min_u = std::min(min_u, s[0]);
    }
    const bool quadrant_ok = min_u >= -kQuadrantFactor * cfg.atol[0];
    ok = ok && quadrant_ok;
    notes.push_back(fmt("min u %.3g", min_u));

    // automatic vs finite differences on random expressions
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> var(0.1, 2.0);
    std::uniform_int_distribution<int> depth(1, 6);
    double fd_worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Expr e = parse(testgen::random_expr(rng, depth(rng)));
        const double u = var(rng), v = var(rng), h = 1e-6;
        const double ad = d_du(e, {{"u", u}, {"v", v}});
        const double fd = (eval(e, {{"u", u + h}, {"v", v}}) - eval(e, {{"u", u - h}, {"v", v}})) / (2 * h);
        fd_worst = std::max(fd_worst, std::abs(ad - fd) / std::max(1.0, std::abs(ad)));
    }
    const bool fd_ok = fd_worst <= kFdAgreement;
    ok = ok && fd_ok;
    notes.push_back(fmt("AD/FD %.2g", fd_worst));

    // parsed Leslie-Gower vs the hard-coded field
    const auto sys = PlanarSlowFastSystem::parse_text(leslie_gower_source(fig1));
    double lg_worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        for (int j = 0; j < 100; ++j) {
            const Vec2 s{i / 99.0, 0.4 * j / 99.0};
            const Vec2 a = sys.field(s), b = vector_field(fig1, s);
            for (int k = 0; k < 2; ++k) lg_worst = std::max(lg_worst, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(b[k])));
        }
    }
    const bool lg_ok = lg_worst <= kParsedVsHardCoded;
    ok = ok && lg_ok;
    notes.push_back(fmt("parsed vs coded %.2g", lg_worst));

    // determinism of the sweep
    const bool same = convergence_csv(sweep(1)) == convergence_csv(sweep(5)) &&
                      convergence_json(sweep(1)) == convergence_json(sweep(5));
    ok = ok && same;
    notes.push_back(same ? "sweep byte-identical serial vs 5 threads" : "sweep output differs with threads");

    std::string text;
    for (std::size_t i = 0; i < notes.size(); ++i) text += (i ? "; " : "") + notes[i];
    return {ok, text};
}

struct Criterion {
    int id;
    const char* title;
    std::function<Result()> run;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
            return 2;
        }
    }
    const std::vector<Criterion> criteria{
        {1, "blow-up constants", blowup_constants_exact},
        {2, "canard crossing constant", crossing_constant},
        {3, "descent depth", descent_depth_check},
        {4, "convergence to the singular cycle", convergence},
        {5, "exact chart solution", exact_chart_solution},
        {6, "chart O(r2) scaling", chart_scaling},
        {7, "manifold classification", manifold_properties},
        {8, "canard sub-arc", canard_property},
        {9, "infrastructure", infrastructure},
    };
    int failed = 0, ran = 0;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        ++ran;
        Result r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {false, std::string("error: ") + e.what()};
        }
        failed += !r.pass;
        std::printf("criterion %d: %s  %s | %s\n", c.id, r.pass ? "PASS" : "FAIL", c.title, r.detail.c_str());
        std::fflush(stdout);
    }
    if (ran == 0) {
        std::fprintf(stderr, "no criterion %d\n", only);
        return 2;
    }
    return failed == 0 ? 0 : 1;
}
