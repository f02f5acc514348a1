#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "run.hpp"

namespace canardlab::cli {

/// Tracks the files a subcommand writes and emits its manifest.
class Session {
public:
    explicit Session(const RunConfig& rc) : rc_(rc) {}

    /// Path inside the output directory; the file is listed in the manifest.
    std::string output(const std::string& name);
    void write_text(const std::string& name, const std::string& text);
    void write_json(const std::string& name, const nlohmann::ordered_json& j);

    nlohmann::ordered_json& options() { return options_; }
    nlohmann::ordered_json& tolerances() { return tolerances_; }

    /// Writes <subcommand>_manifest.json and returns `code`.
    int finish(int code, const std::string& error = {});

private:
    const RunConfig& rc_;
    std::vector<std::string> outputs_;
    nlohmann::ordered_json options_ = nlohmann::ordered_json::object();
    nlohmann::ordered_json tolerances_ = nlohmann::ordered_json::object();
};

int cmd_validate(const RunConfig& rc, Session& session);
int cmd_simulate(const RunConfig& rc, Session& session);
int cmd_manifold(const RunConfig& rc, Session& session);
int cmd_cycle(const RunConfig& rc, Session& session);
int cmd_blowup(const RunConfig& rc, Session& session);
int cmd_sweep(const RunConfig& rc, Session& session);
int cmd_singular_cycle(const RunConfig& rc, Session& session);

}  // namespace canardlab::cli
