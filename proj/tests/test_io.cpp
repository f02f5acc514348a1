#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "canardlab/error.hpp"
#include "canardlab/io.hpp"

using namespace canardlab;

namespace {

const ModelParams kFig = ModelParams::make(1.0, 0.08, 0.01, 0.01);

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_SUITE("io") {
    TEST_CASE("numbers round-trip exactly") {
        std::mt19937_64 rng(1);
        for (int i = 0; i < 20000; ++i) {
            std::uint64_t bits = rng();
            double x;
            std::memcpy(&x, &bits, sizeof x);
            if (!std::isfinite(x)) continue;
            const std::string s = format_number(x);
            const double back = std::strtod(s.c_str(), nullptr);
            CHECK(std::memcmp(&back, &x, sizeof x) == 0);
        }
        CHECK(format_number(0.1) == "1.0000000000000001e-01");
        CHECK(format_number(-2.0) == "-2.0000000000000000e+00");
        CHECK(format_number(NAN) == "nan");
        CHECK(format_number(-INFINITY) == "-inf");
    }

    TEST_CASE("trajectory CSV") {
        const Field f = [](double, const Vec2& y) { return vector_field(kFig, y); };
        const Trajectory tr = integrate(f, {0.5, 0.3}, 0.0, 10.0);
        const auto ls = lines(trajectory_csv(tr));
        CHECK(ls.front() == "t,u,v");
        CHECK(ls.size() == tr.size() + 1);
        CHECK(ls[1] == "0.0000000000000000e+00,5.0000000000000000e-01,2.9999999999999999e-01");
        const auto empty = lines(trajectory_csv(integrate(f, {0.5, 0.3}, 0.0, 0.0)));
        CHECK(empty.size() == 2);
    }

    TEST_CASE("manifold CSV") {
        const auto branches = sample_manifold(Classifier(kFig), 11, 0.4);
        const auto ls = lines(manifold_csv(branches));
        CHECK(ls.front() == "branch,u,v,fprime_u,tag");
        CHECK(ls.size() == 23);
        CHECK(ls[1].rfind("axis,", 0) == 0);
        CHECK(ls.back().rfind("parabola,", 0) == 0);
    }

    TEST_CASE("singular cycle CSV closes on A") {
        const SingularCycle sc = singular_cycle(kFig, 0.0, 1.086, 8);
        const auto ls = lines(singular_cycle_csv(sc));
        CHECK(ls.front() == "point,u,v,tag");
        CHECK(ls.size() == 1 + 8 + 3);
        CHECK(ls[1].substr(ls[1].rfind(',')) == ",A");
        CHECK(ls[2].substr(ls[2].rfind(',')) == ",B");
        CHECK(ls[3].substr(ls[3].rfind(',')) == ",C");
        CHECK(ls[ls.size() - 2].substr(ls[ls.size() - 2].rfind(',')) == ",D");
        CHECK(ls.back().substr(ls.back().rfind(',')) == ",A");
        CHECK(ls[1].substr(ls[1].find(',')) == ls.back().substr(ls.back().find(',')));
    }

    TEST_CASE("cycle, chart family and convergence outputs") {
        const LimitCycle c = find_limit_cycle(ModelParams::make(1.0, 0.08, 0.01, 1e-2));
        CHECK(lines(cycle_csv(c)).front() == "t,u,v,ln_u");
        CHECK(lines(cycle_csv(c)).size() == c.samples.size() + 1);

        const auto fam = k2_orbit_family(kFig, {1.0, 2.0}, 0.0, {});
        const auto fl = lines(k2_family_csv(fam));
        CHECK(fl.front() == "orbit,t,x2,y2");
        CHECK(fl.size() == fam[0].trajectory.size() + fam[1].trajectory.size() + 1);
        CHECK(fl.back().rfind("1,", 0) == 0);

        const ConvergenceStudy st = convergence_study(kFig, 0.0, {3e-2, 1e-2, 3e-3});
        CHECK(lines(convergence_csv(st)).front() == "eps,d,k_hat,D_hat,ln_k_hat,k_fiber,period");
        const auto j = nlohmann::json::parse(convergence_json(st));
        CHECK(j["rows"].size() == 3);
        CHECK(j["slope"].get<double>() == st.slope);
        CHECK(j["pass"].get<bool>() == (st.distances_decreasing && st.slope_in_band));
    }

    TEST_CASE("writing files") {
        const auto path = std::filesystem::temp_directory_path() / "canardlab_io_test.txt";
        write_text(path, "a,b\n1,2\n");
        std::ifstream in(path, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == "a,b\n1,2\n");
        std::filesystem::remove(path);
        CHECK_THROWS_AS(write_text("/nonexistent/dir/x.csv", "x"), IoError);
    }
}
