#include "expblowup/cli.hpp"

#include "expblowup/errors.hpp"
#include "expblowup/io.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace expblowup::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text)
{
    T value{};
    const std::string t = trim(text);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw InputError("invalid value '" + text + "' for " + key);
    }
    return value;
}

std::string file_stem(const RunConfig& c)
{
    std::string lambda;
    for (char ch : c.lambda) {
        lambda += (std::isalnum(static_cast<unsigned char>(ch)) != 0) ? ch : '_';
    }
    return "n" + std::to_string(c.n) + "_m" + std::to_string(c.m) + "_lambda" + lambda;
}

void write_file(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write '" + path.string() + "'");
    }
    out << contents;
}

std::string sci(double x, int digits)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(digits) << x;
    return os.str();
}

} // namespace

std::set<Format> parse_formats(const std::string& list)
{
    std::set<Format> out;
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');) {
        item = trim(item);
        if (item == "json") {
            out.insert(Format::json);
        } else if (item == "csv") {
            out.insert(Format::csv);
        } else if (item == "surface") {
            out.insert(Format::surface);
        } else if (!item.empty()) {
            throw InputError("unknown output format '" + item + "' (expected json, csv or surface)");
        }
    }
    return out;
}

InitialSpec parse_initial(const std::string& text)
{
    if (text == "cosine_m1") {
        return {InitialKind::cosine_m1, {}};
    }
    if (text == "cosine_m2") {
        return {InitialKind::cosine_m2, {}};
    }
    if (text.rfind("file:", 0) == 0 && text.size() > 5) {
        return {InitialKind::file, text.substr(5)};
    }
    throw InputError("unknown initial data '" + text + "' (expected cosine_m1, cosine_m2 or file:<path>)");
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value)
{
    if (key == "n") {
        config.n = parse_number<int>(key, value);
    } else if (key == "m") {
        config.m = parse_number<int>(key, value);
    } else if (key == "lambda") {
        config.lambda = trim(value);
    } else if (key == "initial") {
        config.initial = trim(value);
    } else if (key == "order") {
        config.integrator.order = parse_number<int>(key, value);
    } else if (key == "h0") {
        config.integrator.h0 = parse_number<double>(key, value);
    } else if (key == "hmin") {
        config.integrator.hmin = parse_number<double>(key, value);
    } else if (key == "max-steps" || key == "max_steps") {
        config.integrator.max_steps = parse_number<long>(key, value);
    } else if (key == "epsilon-target" || key == "epsilon_target") {
        config.epsilon_target = parse_number<double>(key, value);
    } else if (key == "out-dir" || key == "out_dir") {
        config.out_dir = trim(value);
    } else if (key == "emit") {
        config.emit = parse_formats(value);
    } else {
        throw InputError("unknown setting '" + key + "'");
    }
}

std::vector<RunConfig> parse_sweep(std::istream& in, const RunConfig& defaults)
{
    std::vector<RunConfig> configs;
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        RunConfig config = defaults;
        std::istringstream fields(line);
        for (std::string field; fields >> field;) {
            const auto eq = field.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw InputError("sweep line " + std::to_string(line_no) + ": expected key=value, got '" + field +
                                 "'");
            }
            apply_setting(config, field.substr(0, eq), field.substr(eq + 1));
        }
        configs.push_back(std::move(config));
    }
    return configs;
}

RunOutcome execute(const RunConfig& config)
{
    RunOutcome outcome;
    outcome.config = config;

    std::optional<ProblemParams> params;
    PhysState u0;
    CertifyOptions opts;
    try {
        params.emplace(config.n, config.m, parse_decimal(config.lambda));
        const std::string initial =
            config.initial.empty() ? (config.m == 1 ? "cosine_m1" : "cosine_m2") : config.initial;
        u0 = initial_data(parse_initial(initial), *params);
        opts.integrator = config.integrator;
        opts.epsilon_target = config.epsilon_target;
        opts.validate();
        if (!config.emit.empty()) {
            std::filesystem::create_directories(config.out_dir);
        }
    } catch (const Error& e) {
        outcome.exit_code = exit_config;
        outcome.message = e.what();
        return outcome;
    } catch (const std::filesystem::filesystem_error& e) {
        outcome.exit_code = exit_config;
        outcome.message = e.what();
        return outcome;
    }

    try {
        CertifiedRun result = certify_run(*params, u0, opts);
        const auto stem = config.out_dir / file_stem(config);
        if (config.emit.contains(Format::json)) {
            write_file(stem.string() + "_certificate.json", certificate_to_json(result.certificate) + "\n");
        }
        if (config.emit.contains(Format::csv)) {
            std::ostringstream os;
            write_trajectory_csv(os, *params, result.trajectory);
            write_file(stem.string() + "_trajectory.csv", os.str());
        }
        if (config.emit.contains(Format::surface)) {
            std::ostringstream os;
            write_surface_csv(os, *params, result.trajectory);
            write_file(stem.string() + "_surface.csv", os.str());
        }
        outcome.certificate = result.certificate;
        outcome.exit_code = exit_ok;
    } catch (const ValidationFailure& e) {
        outcome.exit_code = exit_validation;
        outcome.message = e.what();
    } catch (const ReframeNeeded& e) {
        outcome.exit_code = exit_reframe;
        outcome.message = e.what();
    } catch (const BudgetExhausted& e) {
        outcome.exit_code = exit_integration;
        outcome.message = e.what();
    } catch (const StepFailure& e) {
        outcome.exit_code = exit_integration;
        outcome.message = e.what();
    } catch (const InputError& e) {
        outcome.exit_code = exit_config;
        outcome.message = e.what();
    } catch (const std::exception& e) {
        outcome.exit_code = exit_internal;
        outcome.message = e.what();
    }
    return outcome;
}

std::string summary_header() { return "N | ε | τ̄ | t_max | exec time"; }

std::string summary_row(const RunOutcome& outcome)
{
    std::ostringstream os;
    os << outcome.config.n << " | ";
    if (!outcome.certificate) {
        os << "FAILED (exit " << outcome.exit_code << "): " << outcome.message;
        return os.str();
    }
    const auto& c = *outcome.certificate;
    os << sci(c.epsilon, 2) << " | " << std::fixed << std::setprecision(4) << c.tau_bar << " | ["
       << format_double(c.t_max.lo()) << ", " << format_double(c.t_max.hi()) << "] | " << std::setprecision(2)
       << c.wall_time_sec << " s";
    return os.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    const RunOutcome outcome = execute(config);
    if (outcome.exit_code != exit_ok) {
        err << "error: " << outcome.message << '\n';
        return outcome.exit_code;
    }
    out << summary_header() << '\n' << summary_row(outcome) << '\n';
    return exit_ok;
}

int table_sweep(const std::vector<RunConfig>& configs, std::ostream& out, std::ostream& err, unsigned jobs)
{
    if (configs.empty()) {
        err << "error: sweep contains no configurations\n";
        return exit_config;
    }
    if (jobs == 0) {
        jobs = std::max(1u, std::thread::hardware_concurrency());
    }
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(configs.size()));

    std::vector<RunOutcome> outcomes(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            outcomes[i] = execute(configs[i]);
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back(worker);
    }
    pool.clear();

    std::stable_sort(outcomes.begin(), outcomes.end(),
                     [](const RunOutcome& a, const RunOutcome& b) { return a.config.n < b.config.n; });
    out << summary_header() << '\n';
    int code = exit_ok;
    for (const auto& o : outcomes) {
        out << summary_row(o) << '\n';
        if (o.exit_code != exit_ok) {
            err << "error (n = " << o.config.n << ", m = " << o.config.m << "): " << o.message << '\n';
            if (code == exit_ok) {
                code = o.exit_code;
            }
        }
    }
    return code;
}

} // namespace expblowup::cli
