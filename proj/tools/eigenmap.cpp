#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eigenmap/catalog.hpp"
#include "eigenmap/errors.hpp"
#include "eigenmap/verify.hpp"

namespace {

constexpr int kConfigExit = 2;

bool config_code(eigenmap::ErrorCode c) {
    using eigenmap::ErrorCode;
    return c == ErrorCode::UnknownExample || c == ErrorCode::UnknownSuite || c == ErrorCode::UnknownId ||
           c == ErrorCode::ConfigError;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace eigenmap;
    CLI::App app{"eigenmap: verify eigenvalue identities of harmonic almost submersions"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("EIGENMAP_SEED")) {
        try {
            cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "ConfigError: EIGENMAP_SEED is not an unsigned integer\n";
            return kConfigExit;
        }
    }
    std::string config_path, format;
    std::vector<std::string> tols;

    auto* verify = app.add_subcommand("verify", "run one suite on one catalog entry");
    verify->add_option("--config", config_path, "key=value file; flags override it");
    verify->add_option("--example", cfg.example_id, "catalog entry id");
    verify->add_option("--suite", cfg.suite_id, "suite id");
    verify->add_option("--samples", cfg.samples, "number of seeded sample points");
    verify->add_option("--seed", cfg.seed, "sampling seed (default EIGENMAP_SEED or 0)");
    verify->add_option("--tol", tols, "tolerance override check=value")->take_all();
    verify->add_option("--fd-step", cfg.fd_step, "finite-difference step for cross-checks");
    verify->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    verify->add_option("--out", cfg.output_path, "output path (default stdout)");

    app.add_subcommand("list-examples", "list catalog entry ids");
    app.add_subcommand("list-suites", "list suite ids");
    std::string describe_id;
    auto* describe_cmd = app.add_subcommand("describe", "show an entry with its declared properties");
    describe_cmd->add_option("id", describe_id, "catalog entry id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigExit;
    }

    try {
        if (app.got_subcommand("list-examples")) {
            for (const auto& e : catalog()) std::cout << e.id << "\n";
            return 0;
        }
        if (app.got_subcommand("list-suites")) {
            for (const auto& s : suite_ids()) std::cout << s << "\n";
            return 0;
        }
        if (app.got_subcommand("describe")) {
            std::cout << describe(load_verified(describe_id), true);
            return 0;
        }

        if (!config_path.empty()) {
            RunConfig file_cfg = cfg;
            apply_config_file(file_cfg, config_path);
            // flags given on the command line win over the file
            if (verify->count("--example")) file_cfg.example_id = cfg.example_id;
            if (verify->count("--suite")) file_cfg.suite_id = cfg.suite_id;
            if (verify->count("--samples")) file_cfg.samples = cfg.samples;
            if (verify->count("--seed")) file_cfg.seed = cfg.seed;
            if (verify->count("--fd-step")) file_cfg.fd_step = cfg.fd_step;
            if (verify->count("--out")) file_cfg.output_path = cfg.output_path;
            cfg = file_cfg;
        }
        if (!format.empty()) cfg.output_format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        for (const auto& t : tols) {
            const auto eq = t.find('=');
            if (eq == std::string::npos) throw GeometryError(ErrorCode::ConfigError, "--tol expects check=value");
            apply_config_text(cfg, "tol." + t);
        }
        if (cfg.example_id.empty() || cfg.suite_id.empty())
            throw GeometryError(ErrorCode::ConfigError, "verify needs --example and --suite");

        load_verified(cfg.example_id);
        const RunResult result = run_suite(cfg);
        const std::string text = cfg.output_format == OutputFormat::Json ? to_json(result) : to_csv(result.records);
        if (cfg.output_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(cfg.output_path, std::ios::binary);
            if (!out) throw GeometryError(ErrorCode::ConfigError, "cannot write " + cfg.output_path);
            out << text;
        }
        const auto& s = result.summary;
        std::cerr << cfg.example_id << " " << cfg.suite_id << ": " << s.passed << "/" << s.total << " passed, max abs_err "
                  << s.max_abs_err << ", " << s.wall_ms << " ms\n";
        return exit_code(result);
    } catch (const GeometryError& e) {
        std::cerr << e.what() << "\n";
        return config_code(e.code()) ? kConfigExit : 1;
    }
}
