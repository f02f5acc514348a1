// Drives the command-line tool as a subprocess.
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "canardlab_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args, const std::string& env = {}) {
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" CANARDLAB_CLI "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const fs::path& p) {
    std::vector<std::string> out;
    std::ifstream in(p);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

nlohmann::json json_file(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

fs::path write_config(const fs::path& dir, const std::string& text) {
    const fs::path p = dir / "run.ini";
    std::ofstream(p) << text;
    return p;
}

std::vector<double> column(const fs::path& csv, std::size_t col) {
    std::vector<double> out;
    const auto ls = lines(csv);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        std::stringstream row(ls[i]);
        std::string cell;
        for (std::size_t c = 0; c <= col; ++c) std::getline(row, cell, ',');
        out.push_back(std::stod(cell));
    }
    return out;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("help and usage errors") {
        CHECK(run("--help") == 0);
        CHECK(run("") != 0);
        CHECK(run("frobnicate") == 2);
        CHECK(run("validate --no-such-flag") == 2);
        CHECK(run("validate --config /nonexistent.ini") == 2);
    }

    TEST_CASE("validate exit codes and manifest") {
        const fs::path dir = scratch("validate");
        CHECK(run("validate --out " + dir.string()) == 0);
        const auto m = json_file(dir / "validate_manifest.json");
        CHECK(m["subcommand"] == "validate");
        CHECK(m["exit_code"] == 0);
        CHECK(json_file(dir / "validate.json")["passed"] == true);

        const fs::path bad = write_config(dir, "[model]\na = 1\ne1 = 0.08\ne2 = 0.079\neps = 0.01\n");
        CHECK(run("validate --config " + bad.string() + " --out " + dir.string()) == 1);
        CHECK(json_file(dir / "validate_manifest.json")["exit_code"] == 1);

        const fs::path unknown = write_config(dir, "[model]\na = 1\ncolour = 3\n");
        CHECK(run("validate --config " + unknown.string() + " --out " + dir.string()) == 2);
        const fs::path dup = write_config(dir, "[model]\na = 1\na = 2\n");
        CHECK(run("validate --config " + dup.string() + " --out " + dir.string()) == 2);
    }

    TEST_CASE("raw parameters are nondimensionalized") {
        const fs::path dir = scratch("raw");
        const fs::path cfg = write_config(
            dir, "[raw]\nr1 = 1\nr2 = 0.01\na1 = 1\na2 = 0.01\nb1 = 1\nk1 = 0.08\nk2 = 0.01\n");
        CHECK(run("validate --config " + cfg.string() + " --out " + dir.string()) == 0);
        const auto m = json_file(dir / "validate_manifest.json");
        CHECK(m["model"]["params"]["a"].get<double>() == doctest::Approx(1.0));
        const fs::path neg = write_config(
            dir, "[raw]\nr1 = 1\nr2 = 0.01\na1 = 1\na2 = 0.01\nb1 = 1\nk1 = -0.08\nk2 = 0.01\n");
        CHECK(run("validate --config " + neg.string() + " --out " + dir.string()) == 2);
    }

    TEST_CASE("simulate writes a trajectory and nullclines") {
        const fs::path dir = scratch("simulate");
        CHECK(run("simulate --t1 100 --out " + dir.string()) == 0);
        const auto ls = lines(dir / "trajectory.csv");
        CHECK(ls.front() == "t,u,v");
        CHECK(ls.size() > 10);
        CHECK(lines(dir / "nullclines.csv").front() == "curve,u,v");
        const auto m = json_file(dir / "simulate_manifest.json");
        CHECK(m["outputs"].size() >= 2);
        CHECK(m["tolerances"]["integrator"]["rtol"].get<double>() == 1e-9);
    }

    TEST_CASE("simulate edge cases") {
        const fs::path dir = scratch("simulate_edges");
        CHECK(run("simulate --t0 5 --t1 5 --out " + dir.string()) == 0);
        CHECK(lines(dir / "trajectory.csv").size() == 1);
        CHECK(run("simulate --u0 0.5 --v0 0 --t1 50 --out " + dir.string()) == 0);
        for (double v : column(dir / "trajectory.csv", 2)) CHECK(v == 0.0);
        CHECK(run("simulate --u0 0 --v0 0.2 --t1 50 --out " + dir.string()) == 0);
        for (double u : column(dir / "trajectory.csv", 1)) CHECK(u == 0.0);
        CHECK(run("simulate --t0 5 --t1 1 --out " + dir.string()) == 2);
    }

    TEST_CASE("manifold row count") {
        const fs::path dir = scratch("manifold");
        CHECK(run("manifold --points 51 --out " + dir.string()) == 0);
        CHECK(lines(dir / "manifold.csv").size() == 1 + 2 * 51);
        CHECK(json_file(dir / "manifold.json").contains("fold_rows"));
    }

    TEST_CASE("cycle summary") {
        const fs::path dir = scratch("cycle");
        CHECK(run("cycle --eps 0.01 --out " + dir.string()) == 0);
        const auto j = json_file(dir / "cycle.json");
        CHECK(j["period"].get<double>() == doctest::Approx(311.1158).epsilon(1e-5));
        const auto& box = j["bounding_box"];
        CHECK(box["u_max"].get<double>() == doctest::Approx(0.9616).epsilon(1e-3));
        CHECK(box["v_min"].get<double>() == doctest::Approx(0.0359).epsilon(3e-3));
        CHECK(box["v_max"].get<double>() == doctest::Approx(0.3106).epsilon(1e-3));
        const auto u = column(dir / "cycle.csv", 1);
        const auto v = column(dir / "cycle.csv", 2);
        CHECK(u.front() == doctest::Approx(u.back()).epsilon(1e-8));
        CHECK(v.front() == doctest::Approx(v.back()).epsilon(1e-12));
    }

    TEST_CASE("blowup family") {
        const fs::path dir = scratch("blowup");
        CHECK(run("blowup --out " + dir.string()) == 0);
        CHECK(lines(dir / "k2_family.csv").front() == "orbit,t,x2,y2");
        const auto j = json_file(dir / "blowup.json");
        CHECK(j["c1"].get<double>() == doctest::Approx(11.5));
        CHECK(run("blowup --r2 -1 --out " + dir.string()) != 0);
    }

    TEST_CASE("singular cycle closes") {
        const fs::path dir = scratch("singular");
        CHECK(run("singular-cycle --k 1.086 --out " + dir.string()) == 0);
        const auto ls = lines(dir / "singular_cycle.csv");
        const auto tail = [](const std::string& s) { return s.substr(s.find(',')); };
        CHECK(tail(ls[1]) == tail(ls.back()));
        CHECK(json_file(dir / "singular_cycle.json")["u_star"].get<double>() == doctest::Approx(0.966398).epsilon(1e-6));
        CHECK(run("singular-cycle --k 0.01 --out " + dir.string()) == 2);
    }

    TEST_CASE("sweep output does not depend on threading") {
        const fs::path a = scratch("sweep_serial");
        const fs::path b = scratch("sweep_parallel");
        // this short sweep fits a slope just under the band, so it exits 1
        const int serial = run("sweep --eps-list 0.03,0.01,0.003 --parallel 1 --out " + a.string());
        const int threaded = run("sweep --eps-list 0.03,0.01,0.003 --parallel 3 --out " + b.string());
        CHECK(serial == threaded);
        CHECK(serial == (json_file(a / "convergence.json")["pass"].get<bool>() ? 0 : 1));
        CHECK(slurp(a / "convergence.csv") == slurp(b / "convergence.csv"));
        CHECK(slurp(a / "convergence.json") == slurp(b / "convergence.json"));
        CHECK(lines(a / "convergence.csv").size() == 4);
        CHECK(run("sweep --eps-list 0.01,0.001 --out " + a.string()) == 2);
    }

    TEST_CASE("output directory override and plot scripts") {
        const fs::path dir = scratch("env");
        CHECK(run("manifold --points 11 --plot", "CANARDLAB_OUT=" + dir.string()) == 0);
        CHECK(fs::exists(dir / "manifold.csv"));
        bool script = false;
        for (const auto& e : fs::directory_iterator(dir)) script = script || e.path().extension() == ".py";
        CHECK(script);
    }

    TEST_CASE("system file source") {
        const fs::path dir = scratch("system");
        const fs::path sys = dir / "lg.sys";
        std::ofstream(sys) << "param a = 1\nparam e1 = 0.08\nparam e2 = 0.01\nepsilon = 0.01\n"
                              "fast = u*(1-u) - a*u*v/(u+e1)\nslow = v*(1 - v/(u+e2))\n";
        const fs::path cfg = write_config(dir, "[model]\nsystem = lg.sys\n");
        CHECK(run("simulate --t1 20 --config " + cfg.string() + " --out " + dir.string()) == 0);
        CHECK(run("simulate --eps 0.1 --config " + cfg.string() + " --out " + dir.string()) == 2);
        std::ofstream(sys) << "fast = u*(\n";
        CHECK(run("simulate --config " + cfg.string() + " --out " + dir.string()) == 2);
    }
}
