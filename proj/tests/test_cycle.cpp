#include <doctest.h>

#include <cmath>
#include <random>

#include "canardlab/blowup.hpp"
#include "canardlab/cycle.hpp"
#include "canardlab/error.hpp"

using namespace canardlab;

namespace {

ModelParams fig(double eps) { return ModelParams::make(1.0, 0.08, 0.01, eps); }

// Brute-force directed distance, vertex to segment.
double brute_directed(const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < to.size(); ++i) best = std::min(best, point_segment_distance(p, to[i], to[i + 1]));
        if (to.size() == 1) best = norm(p - to[0]);
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

TEST_SUITE("cycle") {
    TEST_CASE("limit cycle at eps = 1e-2") {
        const ModelParams p = fig(1e-2);
        const LimitCycle c = find_limit_cycle(p);
        CHECK(c.period == doctest::Approx(311.1158).epsilon(1e-5));
        CHECK(c.section_level == doctest::Approx(0.08));
        CHECK(c.samples.size() >= 4096);
        const auto& a = c.samples.front();
        const auto& b = c.samples.back();
        CHECK(std::abs(a.ln_u - b.ln_u) < 1e-8);
        CHECK(std::abs(a.v - b.v) < 1e-12);
        CHECK(a.ln_u == c.ln_u_cross);
        double umax = 0, vmin = 1, vmax = 0;
        for (const auto& s : c.samples) {
            CHECK(s.u >= 0.0);
            CHECK(s.v > 0.0);
            umax = std::max(umax, s.u);
            vmin = std::min(vmin, s.v);
            vmax = std::max(vmax, s.v);
        }
        CHECK(umax == doctest::Approx(0.9616).epsilon(1e-3));
        CHECK(vmin == doctest::Approx(0.0359).epsilon(3e-3));
        CHECK(vmax == doctest::Approx(0.3106).epsilon(1e-3));
        CHECK(ln_crossing_k(c) == doctest::Approx(c.ln_u_cross - std::log(1e-2)));
        CHECK(crossing_k(c) == doctest::Approx(std::exp(ln_crossing_k(c))));
        const auto curve = c.curve();
        REQUIRE(curve.size() == c.samples.size());
        CHECK(curve[10][1] == c.samples[10].v);
    }

    TEST_CASE("successive returns contract") {
        const ModelParams p = fig(0.1);
        const LimitCycle c = find_limit_cycle(p);
        REQUIRE(c.separations.size() >= 2);
        for (std::size_t i = 1; i < c.separations.size(); ++i) CHECK(c.separations[i] < c.separations[i - 1]);

        const Section sec = cycle_section(p, 0.0);
        Vec2 x{std::log(0.3), sec.level}, y{std::log(0.9), sec.level};
        double gap = std::abs(x[0] - y[0]);
        for (int i = 0; i < 2; ++i) {
            x = poincare_map(p, sec, x).point;
            y = poincare_map(p, sec, y).point;
            const double next = std::abs(x[0] - y[0]);
            CHECK(next < gap);
            gap = next;
        }
    }

    TEST_CASE("returns from random starts agree") {
        const ModelParams p = fig(1e-2);
        const LimitCycle ref = find_limit_cycle(p);
        const Section sec = cycle_section(p, 0.0);
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> du(0.05, 0.95);
        for (int i = 0; i < 5; ++i) {
            Vec2 x{std::log(du(rng)), sec.level};
            for (int n = 0; n < 3; ++n) x = poincare_map(p, sec, x).point;
            CHECK(std::abs(x[0] - ref.ln_u_cross) < 1e-7);
            CHECK(std::abs(x[1] - sec.level) < 1e-13);
        }
    }

    TEST_CASE("a start on the section is not a return") {
        const ModelParams p = fig(1e-2);
        const Section sec = cycle_section(p, 0.0);
        for (double dv : {-1e-16, 0.0, 1e-16}) {
            const PoincareReturn r = poincare_map(p, sec, {std::log(1e-3), sec.level + dv});
            CHECK(r.time > 100.0);
        }
    }

    TEST_CASE("descent and fiber constant at small eps") {
        const ModelParams p = fig(1e-4);
        const LimitCycle c = find_limit_cycle(p);
        const Descent d = descent_depth(p, c);
        CHECK(d.depth == doctest::Approx(0.08 - d.v_fiber));
        // within 20% of the descent read off the reference figure
        CHECK(std::abs(d.depth - 0.045) <= 0.2 * 0.045);
        CHECK(fiber_k(p, c) == doctest::Approx(k_from_descent(p, d.depth)));
        CHECK(c.u_cross == 0.0);  // underflows; ln u stays exact
        CHECK(c.ln_u_cross < -700.0);
        CHECK(std::isfinite(ln_crossing_k(c)));
    }

    TEST_CASE("search failures") {
        CycleConfig cfg;
        cfg.tolerance = 0.0;
        cfg.max_returns = 3;
        CHECK_THROWS_AS(find_limit_cycle(fig(1e-2), 0.0, cfg), NotConvergedError);
        CycleConfig short_horizon;
        short_horizon.return_horizon = 0.01;
        const Section sec = cycle_section(fig(1e-2), 0.0);
        CHECK_THROWS_AS(poincare_map(fig(1e-2), sec, {std::log(0.5), 0.08}, short_horizon), NoCrossingError);
        CHECK_THROWS_AS(find_limit_cycle(fig(1e-2), -0.1), Error);
        CHECK_THROWS_AS(find_limit_cycle(ModelParams::make(1.0, 0.08, 0.079, 1e-2)), ValidationError);
    }

    TEST_CASE("canard arc extent on a synthetic cycle") {
        LimitCycle c;
        for (int i = 0; i <= 100; ++i) {
            const double v = 0.01 + 0.001 * i;  // 0.01 .. 0.11
            const double ln_u = (i >= 20 && i <= 60) ? -50.0 : -1.0;
            c.samples.push_back({double(i), std::exp(ln_u), v, ln_u});
        }
        CHECK(canard_arc_extent(c, -10.0, 0.0, 1.0) == doctest::Approx(0.04));
        CHECK(canard_arc_extent(c, -10.0, 0.0, 0.05) == doctest::Approx(0.019));
        CHECK(canard_arc_extent(c, -60.0, 0.0, 1.0) == 0.0);
    }

    TEST_CASE("point to segment distance") {
        CHECK(point_segment_distance({0.5, 1.0}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
        CHECK(point_segment_distance({2.0, 0.0}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
        CHECK(point_segment_distance({3.0, 4.0}, {0, 0}, {0, 0}) == doctest::Approx(5.0));
    }

    TEST_CASE("Hausdorff distance on analytic cases") {
        const std::vector<Vec2> a{{0, 0}, {1, 0}, {1, 1}};
        CHECK(hausdorff(a, a) == 0.0);
        const std::vector<Vec2> shifted{{0, 0.25}, {1, 0.25}};
        const std::vector<Vec2> base{{0, 0}, {1, 0}};
        CHECK(hausdorff(base, shifted) == doctest::Approx(0.25));
        // directed distances differ for a sub-curve
        const std::vector<Vec2> half{{0, 0}, {0.5, 0}};
        CHECK(directed_hausdorff(half, base) == 0.0);
        CHECK(directed_hausdorff(base, half) == doctest::Approx(0.5));
        CHECK(hausdorff(base, half) == doctest::Approx(0.5));
        // a circle against its inscribed square
        std::vector<Vec2> circle;
        for (int i = 0; i <= 4000; ++i) {
            const double t = 2 * M_PI * i / 4000;
            circle.push_back({std::cos(t), std::sin(t)});
        }
        const std::vector<Vec2> square{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 0}};
        CHECK(hausdorff(circle, square) == doctest::Approx(1 - std::sqrt(0.5)).epsilon(1e-6));
        const std::vector<Vec2> empty;
        CHECK_THROWS_AS(hausdorff(empty, base), Error);
    }

    TEST_CASE("indexed Hausdorff matches brute force") {
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Vec2> a, b;
            const int na = 5 + trial * 20, nb = 3 + trial * 15;
            for (int i = 0; i < na; ++i) a.push_back({d(rng), d(rng)});
            for (int i = 0; i < nb; ++i) b.push_back({3 * d(rng), 0.01 * d(rng)});
            CHECK(directed_hausdorff(a, b) == doctest::Approx(brute_directed(a, b)).epsilon(1e-14));
            CHECK(directed_hausdorff(b, a) == doctest::Approx(brute_directed(b, a)).epsilon(1e-14));
        }
    }

    TEST_CASE("densify respects the spacing") {
        const std::vector<Vec2> line{{0, 0}, {1, 0}, {1, 0.35}};
        const auto dense = densify(line, 0.1);
        CHECK(dense.front() == line.front());
        CHECK(dense.back() == line.back());
        for (std::size_t i = 1; i < dense.size(); ++i) CHECK(norm(dense[i] - dense[i - 1]) <= 0.1 + 1e-15);
        CHECK(dense.size() == 11 + 4);
        CHECK_THROWS_AS(densify(line, 0.0), Error);
    }

    TEST_CASE("log-log slope fit") {
        const std::vector<double> x{1e-1, 1e-2, 1e-3, 1e-4};
        std::vector<double> y;
        for (double e : x) y.push_back(3.0 * std::pow(e, 0.75));
        CHECK(fit_loglog_slope(x, y) == doctest::Approx(0.75).epsilon(1e-12));
        CHECK_THROWS_AS(fit_loglog_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), Error);
    }

    TEST_CASE("convergence study input checks") {
        const ModelParams p = fig(1e-2);
        CHECK_THROWS_AS(convergence_study(p, 0.0, {1e-2, 1e-3}), Error);
        CHECK_THROWS_AS(convergence_study(p, 0.0, {1e-2, 1e-3, 1e-3}), Error);
        CHECK_THROWS_AS(convergence_study(p, 0.0, {1e-3, 1e-2, 1e-4}), Error);
    }

    TEST_CASE("convergence study is independent of threading") {
        const ModelParams p = fig(1e-2);
        const std::vector<double> eps{3e-2, 1e-2, 3e-3};
        StudyOptions serial;
        StudyOptions threaded;
        threaded.parallel = 3;
        const ConvergenceStudy a = convergence_study(p, 0.0, eps, serial);
        const ConvergenceStudy b = convergence_study(p, 0.0, eps, threaded);
        REQUIRE(a.rows.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(a.rows[i].eps == eps[i]);
            CHECK(a.rows[i].distance == b.rows[i].distance);
            CHECK(a.rows[i].ln_k_hat == b.rows[i].ln_k_hat);
        }
        CHECK(a.slope == b.slope);
        CHECK(a.distances_decreasing);
        CHECK(a.reference_k == doctest::Approx(a.rows.back().k_fiber));
    }
}
