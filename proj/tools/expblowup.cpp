#include "expblowup/cli.hpp"
#include "expblowup/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
    using namespace expblowup;
    cli::RunConfig config;
    std::string emit = "json";
    std::optional<double> epsilon_target;
    std::string sweep;
    unsigned jobs = 0;

    CLI::App app{"Validated enclosure of blow-up times for the discretized exponential reaction-diffusion system"};
    app.add_option("--n", config.n, "Grid count N (even, >= 4)");
    app.add_option("--m", config.m, "Exponent m (>= 1)");
    app.add_option("--lambda", config.lambda, "Reaction coefficient, as a decimal string");
    app.add_option("--initial", config.initial, "cosine_m1, cosine_m2 or file:<path>");
    app.add_option("--order", config.integrator.order, "Taylor order");
    app.add_option("--h0", config.integrator.h0, "Initial step size");
    app.add_option("--hmin", config.integrator.hmin, "Smallest step size");
    app.add_option("--max-steps", config.integrator.max_steps, "Integration step budget");
    app.add_option("--epsilon-target", epsilon_target, "Target Lyapunov level in (0, 1]");
    app.add_option("--out-dir", config.out_dir, "Output directory");
    app.add_option("--emit", emit, "Comma list of json, csv, surface");
    app.add_option("--sweep", sweep, "File with one key=value configuration per line");
    app.add_option("--jobs", jobs, "Concurrent runs in a sweep (0 = hardware threads)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::exit_config;
    }

    try {
        config.emit = cli::parse_formats(emit);
        config.epsilon_target = epsilon_target;
        if (!sweep.empty()) {
            std::ifstream in(sweep);
            if (!in) {
                throw InputError("cannot open sweep file '" + sweep + "'");
            }
            return cli::table_sweep(cli::parse_sweep(in, config), std::cout, std::cerr, jobs);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_config;
    }
    return cli::run(config, std::cout, std::cerr);
}
