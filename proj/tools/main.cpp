// Command-line front end: reads an experiment config, dispatches the
// computational modules, and writes CSV tables.
//
// Exit codes: 0 ok, 1 numerical failure or failed preset expectation,
// 2 config error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "ftmi/errors.hpp"
#include "ftmi/experiment.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string units;
    int max_terms = 0;
    double tol = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool config_required = true) {
    auto* c = cmd->add_option("--config", o.config_path, "experiment config file (INI)");
    if (config_required) c->required();
    cmd->add_option("--out", o.out_path, "output CSV path (default: stdout)");
    cmd->add_option("--units", o.units, "override output units: nats|bits")
        ->check(CLI::IsMember({"nats", "bits"}));
    cmd->add_option("--max-terms", o.max_terms, "override series truncation K")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", o.tol, "override quadrature tolerance")
        ->check(CLI::PositiveNumber);
}

ftmi::ExperimentConfig load(const CommonOpts& o) {
    ftmi::ExperimentConfig cfg = ftmi::ExperimentConfig::parse_file(o.config_path);
    if (!o.units.empty())
        cfg.units = (o.units == "bits") ? ftmi::Units::Bits : ftmi::Units::Nats;
    if (o.max_terms > 0) cfg.K = o.max_terms;
    if (o.tol > 0.0) cfg.tol = o.tol;
    return cfg;
}

int with_output(const CommonOpts& o, auto&& body) {
    if (o.out_path.empty()) return body(std::cout) ? 0 : 1;
    std::ofstream f(o.out_path);
    if (!f) {
        std::cerr << "error: cannot open output file: " << o.out_path << '\n';
        return 1;
    }
    return body(f) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-time mutual information toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto* discrete = app.add_subcommand("discrete-mi", "grid log-det mutual information sweep");
    auto* mercer = app.add_subcommand("mercer", "eigen-spectrum of the signal kernel");
    auto* finite = app.add_subcommand("finite-mi", "series finite-time mutual information");
    auto* avgcap = app.add_subcommand("avg-capacity", "average (Shannon) capacity");
    auto* exceed = app.add_subcommand("exceed-average", "exceed-average analysis");
    auto* selftest = app.add_subcommand("selftest", "run desk-scale invariant checks");
    for (auto* cmd : {discrete, mercer, finite, avgcap, exceed}) add_common(cmd, opts);
    selftest->add_option("--out", opts.out_path, "report path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (selftest->parsed())
            return with_output(opts, [](std::ostream& out) { return ftmi::run_selftest(out); });

        const ftmi::ExperimentConfig cfg = load(opts);
        return with_output(opts, [&](std::ostream& out) {
            if (discrete->parsed()) ftmi::run_discrete_mi(cfg, out);
            else if (mercer->parsed()) ftmi::run_mercer(cfg, out);
            else if (finite->parsed()) ftmi::run_finite_mi(cfg, out);
            else if (avgcap->parsed()) ftmi::run_avg_capacity(cfg, out);
            else if (exceed->parsed()) return ftmi::run_exceed_average(cfg, out);
            return true;
        });
    } catch (const ftmi::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
