#include <doctest.h>

#include <cmath>
#include <cstring>

#include "canardlab/error.hpp"
#include "canardlab/integrate.hpp"
#include "canardlab/model.hpp"
#include "oracles.hpp"

using namespace canardlab;

namespace {

const ModelParams kFig = ModelParams::make(1.0, 0.08, 0.01, 0.01);

const Field kModel = [](double, const Vec2& y) { return vector_field(kFig, y); };
const Field kLogistic = [](double, const Vec2& y) { return Vec2{y[0] * (1 - y[0]), 0.0}; };

}  // namespace

TEST_SUITE("integrate") {
    TEST_CASE("constant field") {
        const Field zero = [](double, const Vec2&) { return Vec2{0.0, 0.0}; };
        const Trajectory tr = integrate(zero, {0.3, -2.0}, 0.0, 50.0);
        for (const auto& s : tr.states()) {
            CHECK(s[0] == 0.3);
            CHECK(s[1] == -2.0);
        }
        CHECK(tr.t_end() == 50.0);
    }

    TEST_CASE("logistic growth against the closed form") {
        const Trajectory tr = integrate(kLogistic, {0.5, 0.0}, 0.0, 10.0);
        CHECK(std::abs(tr.back()[0] - 1.0 / (1.0 + std::exp(-10.0))) <= 1e-8);
        for (double t : {0.37, 2.5, 7.77}) CHECK(std::abs(tr(t)[0] - oracle::logistic(0.5, t)) <= 1e-8);
    }

    TEST_CASE("fixed-step convergence order") {
        const double exact = oracle::logistic(0.1, 10.0);
        double err[4];
        for (int i = 0; i < 4; ++i) {
            const long n = 20L << i;
            err[i] = std::abs(integrate_fixed(kLogistic, {0.1, 0.0}, 0.0, 10.0, n)[0] - exact);
        }
        for (int i = 1; i < 3; ++i) {
            const double order = std::log2(err[i] / err[i + 1]);
            CHECK(order >= 4.5);
            CHECK(order <= 5.5);
        }
    }

    TEST_CASE("self-convergence on the predator-prey field") {
        IntegratorConfig cfg;
        const Vec2 a = integrate(kModel, {0.5, 0.3}, 0.0, 100.0, cfg).back();
        cfg.rtol /= 2;
        const Vec2 b = integrate(kModel, {0.5, 0.3}, 0.0, 100.0, cfg).back();
        CHECK(norm(a - b) < 10 * 1e-9 * norm(b));
    }

    TEST_CASE("trajectory nodes and dense output") {
        const IntegratorConfig cfg;
        const Trajectory tr = integrate(kModel, {0.5, 0.3}, 0.0, 200.0, cfg);
        const auto ts = tr.times();
        for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] > ts[i - 1]);
        for (std::size_t i = 0; i < ts.size(); i += 7) {
            const Vec2 y = tr(ts[i]);
            CHECK(std::memcmp(&y, &tr.states()[i], sizeof y) == 0);
        }
        int bad = 0;
        for (const auto& st : tr.steps()) {
            const Vec2 y0 = st(st.t0);
            const double tm = st.t0 + 0.5 * st.h;
            const Vec2 direct = integrate_fixed(kModel, y0, st.t0, tm, 1);
            const Vec2 dense = st(tm);
            for (int c = 0; c < 2; ++c) {
                const double tol = cfg.atol[c] + cfg.rtol * std::abs(direct[c]);
                if (std::abs(dense[c] - direct[c]) >= 10 * tol) ++bad;
            }
        }
        CHECK(bad == 0);
        CHECK_THROWS_AS(tr(-1.0), DomainError);
        CHECK_THROWS_AS(tr(201.0), DomainError);
    }

    TEST_CASE("zero-length span") {
        const Trajectory tr = integrate(kModel, {0.5, 0.3}, 1.0, 1.0);
        CHECK(tr.size() == 1);
        CHECK_THROWS_AS(integrate(kModel, {0.5, 0.3}, 1.0, 0.0), Error);
    }

    TEST_CASE("section crossing of a linear motion") {
        const Field right = [](double, const Vec2&) { return Vec2{1.0, 0.0}; };
        const SectionHit hit = integrate_to_section(right, {0.0, 0.0}, {Axis::U, 0.5, Direction::Up}, 0.0, 10.0);
        CHECK(hit.t == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(hit.state[0] == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(hit.state[1] == 0.0);
        CHECK(hit.trajectory.t_end() == hit.t);
        CHECK_THROWS_AS(integrate_to_section(right, {0.0, 0.0}, {Axis::U, 0.5, Direction::Down}, 0.0, 10.0),
                        NoCrossingError);
        CHECK_THROWS_AS(integrate_to_section(right, {0.0, 0.0}, {Axis::V, 0.5, Direction::Both}, 0.0, 10.0),
                        NoCrossingError);
    }

    TEST_CASE("predator-prey orbit crosses the canard level downward") {
        const Section sec{Axis::V, 0.08, Direction::Down};
        const SectionHit hit = integrate_to_section(kModel, {0.5, 0.3}, sec, 0.0, 1e4);
        CHECK(std::abs(hit.state[1] - 0.08) < 1e-13);
        CHECK(hit.state[0] > 0.0);
        // regression anchor at default tolerances
        CHECK(hit.t == doctest::Approx(27.708415458913542).epsilon(1e-7));
        CHECK(hit.state[0] == doctest::Approx(4.3484924850280297e-06).epsilon(1e-4));

        const SectionHit again = integrate_to_section(kModel, {0.5, 0.3}, sec, 0.0, 1e4);
        CHECK(std::memcmp(&again.t, &hit.t, sizeof hit.t) == 0);
        CHECK(std::memcmp(&again.state, &hit.state, sizeof hit.state) == 0);
    }

    TEST_CASE("failures") {
        IntegratorConfig bad;
        bad.rtol = 0.0;
        CHECK_THROWS_AS(integrate(kModel, {0.5, 0.3}, 0.0, 1.0, bad), Error);
        IntegratorConfig few;
        few.max_steps = 10;
        CHECK_THROWS_AS(integrate(kModel, {0.5, 0.3}, 0.0, 1000.0, few), NumericalError);
        const Field blowing = [](double, const Vec2& y) { return Vec2{y[0] * y[0], 0.0}; };
        CHECK_THROWS_AS(integrate(blowing, {1.0, 0.0}, 0.0, 2.0), NumericalError);
        CHECK_THROWS_AS(integrate(kModel, {NAN, 0.3}, 0.0, 1.0), NumericalError);
    }

    TEST_CASE("quadrant guard") {
        const IntegratorConfig cfg;
        const Trajectory ok = integrate_in_quadrant(kModel, {0.5, 0.3}, 0.0, 500.0, cfg);
        double min_u = 1.0;
        for (const auto& s : ok.states()) min_u = std::min(min_u, s[0]);
        CHECK(min_u >= -10 * cfg.atol[0]);
        const Field leaving = [](double, const Vec2&) { return Vec2{-1.0, 0.0}; };
        CHECK_THROWS_AS(integrate_in_quadrant(leaving, {1e-3, 0.0}, 0.0, 1.0, cfg), NumericalError);
    }
}
