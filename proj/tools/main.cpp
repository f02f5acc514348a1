#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace canardlab::cli;

namespace {

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config_path, "Run configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", f.out_dir, "Output directory (CANARDLAB_OUT overrides)");
    sub->add_option("--eps", f.eps, "Time-scale ratio eps");
    sub->add_option("--alpha", f.alpha, "Section offset above e1/a");
    sub->add_option("--rtol", f.rtol, "Integrator relative tolerance");
    sub->add_option("--atol-u", f.atol_u, "Absolute tolerance on u (on ln u for cycle work)");
    sub->add_option("--atol-v", f.atol_v, "Absolute tolerance on v");
    sub->add_option("--seed", f.seed, "Seed for random-start checks");
    sub->add_option("--parallel", f.parallel, "Worker threads for the sweep");
    sub->add_flag("--plot", f.plot, "Also write a matplotlib script");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canardlab: slow-fast analysis of the Leslie-Gower predator-prey model"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cl_version()));

    Flags f;
    using Command = int (*)(const RunConfig&, Session&);
    const std::map<std::string, std::pair<const char*, Command>> commands = {
        {"validate", {"Check the parameter assumptions", cmd_validate}},
        {"simulate", {"Integrate one trajectory", cmd_simulate}},
        {"manifold", {"Sample and classify the critical manifold", cmd_manifold}},
        {"cycle", {"Locate the limit cycle and measure the canard", cmd_cycle}},
        {"blowup", {"Integrate chart-K2 orbits near the canard point", cmd_blowup}},
        {"sweep", {"Convergence of the cycle to the singular cycle as eps -> 0", cmd_sweep}},
        {"singular-cycle", {"Build the singular cycle", cmd_singular_cycle}},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, entry] : commands) {
        CLI::App* sub = app.add_subcommand(name, entry.first);
        add_common(sub, f);
        subs[name] = sub;
    }
    subs["simulate"]->add_option("--u0", f.u0, "Initial prey density");
    subs["simulate"]->add_option("--v0", f.v0, "Initial predator density");
    subs["simulate"]->add_option("--t0", f.t0, "Start time");
    subs["simulate"]->add_option("--t1", f.t1, "End time");
    subs["simulate"]->add_option("--coords", f.coords, "auto, plain or log")->check(CLI::IsMember({"auto", "plain", "log"}));
    subs["manifold"]->add_option("--points", f.points, "Samples per branch")->check(CLI::Range(2, 100000000));
    subs["blowup"]->add_option("--r2", f.r2, "Chart parameter eps^(1/3); 0 gives the limit system");
    subs["sweep"]->add_option("--eps-list", f.eps_list, "Decreasing eps values")->delimiter(',');
    subs["singular-cycle"]->add_option("--k", f.k, "Crossing constant; measured from a cycle when omitted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    std::string name;
    for (const auto& [n, sub] : subs) {
        if (sub->parsed()) name = n;
    }

    RunConfig rc;
    try {
        rc = resolve(name, f);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ApiFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    Session session(rc);
    try {
        return session.finish(commands.at(name).second(rc, session));
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return session.finish(kExitUsage, e.what());
    } catch (const ApiFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return session.finish(exit_code_for(e.status), e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return session.finish(kExitNumerical, e.what());
    }
}
