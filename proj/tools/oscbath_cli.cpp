// Command-line front end. Consumes the library exclusively through the
// public C API in oscbath.h.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "oscbath.h"

int main(int argc, char** argv)
{
    CLI::App app{"oscbath: stationary oscillator-in-vacuum-bath calculations, thermometry, "
                 "correlations and the lattice cross-check oracle"};
    app.footer("Commands: moments, temperature, thermometer, correlations, oracle, errata, "
               "sweep.\nConfig format: flat section.key=value lines, '#' comments "
               "(e.g. model.omega=1.0).");

    std::string command, config_path, out_path;
    bool print_json = false;
    app.add_option("command", command,
                   "one of: moments temperature thermometer correlations oracle errata sweep")
        ->required();
    app.add_option("--config", config_path, "path to the run configuration file")->required();
    app.add_option("--out", out_path, "output artifact path (overrides output.path)");
    app.add_flag("--json", print_json, "print the full JSON report to stdout");

    CLI11_PARSE(app, argc, argv);

    ob_config* cfg = nullptr;
    if (ob_config_parse_file(config_path.c_str(), &cfg) != OB_OK) {
        std::fprintf(stderr, "error: %s\n", ob_last_error());
        return 2;
    }

    ob_report* rep = nullptr;
    const ob_status st =
        ob_run(cfg, command.c_str(), out_path.empty() ? nullptr : out_path.c_str(), &rep);
    if (st != OB_OK) {
        std::fprintf(stderr, "error: %s\n", ob_last_error());
        ob_config_free(cfg);
        return 2;
    }

    std::printf("%s\n", ob_report_summary(rep));
    if (print_json)
        std::printf("%s\n", ob_report_json(rep));
    else
        std::printf("%s", ob_report_csv(rep));

    const int rc = ob_report_passed(rep) ? 0 : 1;
    if (rc != 0) std::fprintf(stderr, "internal consistency checks FAILED\n");

    ob_report_free(rep);
    ob_config_free(cfg);
    return rc;
}
