#include "hiconvex/run.hpp"

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <vector>

namespace {

void add_output_options(CLI::App* cmd, hiconvex::RunConfig& config) {
    cmd->add_option("--out", config.out_path, "Write the JSON report to this path");
    cmd->add_flag("--no-meta", config.no_meta, "Omit the meta block (timestamps) for byte-stable output");
    cmd->add_option("--tol", config.tol, "Override the default relative tolerance");
    cmd->add_option("--seed", config.seed, "Seed for any randomized part (echoed in the report)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Order-3 convexity toolkit: divided differences, mean bounds, "
                 "superadditivity checks, measure ordering, matrix extension"};
    app.require_subcommand(1);

    hiconvex::RunConfig config;
    std::vector<double> interval;

    CLI::App* check = app.add_subcommand("check", "Order-n convexity verdict for CSV samples");
    check->add_option("--csv", config.csv_src, "CSV file with header 'x,f'")->required();
    check->add_option("--order", config.order, "Convexity order to test (default 3)");
    add_output_options(check, config);

    CLI::App* verify = app.add_subcommand("verify", "Verify one inequality for a function model");
    verify->add_option("--ineq", config.ineq,
                       "One of bp|hh|fejer|weighted|nested|slope|hh1|res|rhh|mhh|hha|va|matrix")
        ->required();
    verify->add_option("--model", config.model_src, "Model JSON (inline or file path)");
    verify->add_option("--measure-mu", config.measure_mu_src, "Probability measure JSON");
    verify->add_option("--interval", interval, "Interval endpoints lo hi")->expected(2);
    verify->add_option("--alpha", config.alpha, "Exponent for rhh/hha");
    verify->add_option("--k", config.k, "Subset size (va) or power index (weighted power)");
    verify->add_option("--points", config.points, "Explicit evaluation points")->expected(-1);
    verify->add_option("--weight", config.weight, "Weight family: poly|power|cosine");
    verify->add_option("--epsilon", config.epsilon, "Edge-strip width for nested means");
    verify->add_option("--trials", config.trials, "Sweep size when --points is omitted");
    verify->add_option("--matrices", config.matrices_src, "JSON array of three matrices");
    add_output_options(verify, config);

    CLI::App* order = app.add_subcommand("order", "Test ordering of two discrete measures");
    order->add_option("--measure-nu", config.measure_nu_src, "Dominated measure JSON")->required();
    order->add_option("--measure-mu", config.measure_mu_src, "Dominating measure JSON")->required();
    order->add_option("--interval", interval, "Common support window lo hi")->expected(2)->required();
    add_output_options(order, config);

    CLI::App* falsify = app.add_subcommand("falsify", "Search for sign witnesses");
    falsify->add_option("target", config.falsify_target, "Search target (freudenthal)");
    falsify->add_option("--trials", config.trials, "Random trial budget after the lattice sweep");
    add_output_options(falsify, config);

    CLI::App* matrix = app.add_subcommand("matrix", "Matrix inequality check for commuting triples");
    matrix->add_option("--model", config.model_src, "Scalar model JSON")->required();
    matrix->add_option("--matrices", config.matrices_src, "JSON array of three matrices")->required();
    add_output_options(matrix, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    config.command = app.get_subcommands().front()->get_name();
    if (interval.size() == 2) {
        config.lo = interval[0];
        config.hi = interval[1];
    }

    try {
        return hiconvex::run(config, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
