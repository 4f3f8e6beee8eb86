// Command-line front end; links only against the C interface.
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "bhdyn.h"

namespace {

// exit codes: 0 success, 1 check/runtime failure, 2 usage error
int status_to_exit(bh_status s) {
    switch (s) {
        case BH_OK: return 0;
        case BH_ERR_USAGE: return 2;
        default: return 1;
    }
}

int report(bh_status s) {
    if (s != BH_OK) std::fprintf(stderr, "error: %s\n", bh_last_error());
    return status_to_exit(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-site condensate dynamics laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "Run a JSON experiment config");
    run->add_option("config", config_path, "Path to the config file")->required();

    std::string preset_name;
    bool full = false;
    CLI::App* preset = app.add_subcommand("preset", "Run a named preset");
    preset->add_option("name", preset_name, "Preset name (see list-presets)")->required();
    preset->add_flag("--full", full, "Full-size run instead of the reduced default");

    CLI::App* verify = app.add_subcommand("verify", "Run the self-check battery");
    CLI::App* list = app.add_subcommand("list-presets", "List preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        if (!msg.empty()) std::fprintf(stderr, "%s\n", msg.c_str());
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    if (run->parsed()) return report(bh_run_config(config_path.c_str(), nullptr));
    if (preset->parsed()) return report(bh_run_preset(preset_name.c_str(), full ? 1 : 0, nullptr));
    if (verify->parsed()) {
        int failures = 0;
        const bh_status s = bh_verify(&failures);
        if (s != BH_OK) return report(s);
        if (failures > 0) {
            std::fprintf(stderr, "%d check(s) failed\n", failures);
            return 1;
        }
        return 0;
    }
    if (list->parsed()) {
        char buf[1024];
        const bh_status s = bh_list_presets(buf, sizeof buf);
        if (s != BH_OK) return report(s);
        std::fputs(buf, stdout);
        return 0;
    }
    return 2;
}
