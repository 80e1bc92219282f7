// Acceptance report: one PASS/FAIL line per criterion. Exit status is 0 iff
// every gating criterion passes.

#include "expblowup/certifier.hpp"
#include "expblowup/errors.hpp"
#include "expblowup/io.hpp"
#include "expblowup/lyapunov.hpp"
#include "expblowup/safe_h.hpp"

#include <Eigen/Dense>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using namespace expblowup;

namespace {

struct Reference {
    int n;
    int m;
    Interval t_max;
};

const std::vector<Reference> kReferences{
    {6, 1, Interval(0.012233376684277321, 0.012233376684279155)},
    {8, 1, Interval(0.013845230955801453, 0.013845230955804485)},
    {6, 2, Interval(0.0080283281404364432, 0.0080283281404380097)},
    {8, 2, Interval(0.0095779331300801847, 0.0095779331300833888)},
};

struct Run {
    std::optional<BlowupCertificate> cert;
    std::string error;
};

Run certify(int n, int m)
{
    try {
        const ProblemParams p(n, m, Interval(1.0));
        const PhysState u0 = initial_data({m == 1 ? InitialKind::cosine_m1 : InitialKind::cosine_m2, {}}, p);
        return {certify_blowup(p, u0), {}};
    } catch (const std::exception& e) {
        return {std::nullopt, e.what()};
    }
}

std::string show(const Interval& x)
{
    return "[" + format_double(x.lo()) + ", " + format_double(x.hi()) + "]";
}

class Report {
public:
    void line(int criterion, bool pass, const std::string& detail, bool gating = true)
    {
        std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL") << (gating ? "" : " (non-gating)")
                  << "  " << detail << std::endl;
        if (gating && !pass) {
            failed_ = true;
        }
    }
    [[nodiscard]] int exit_code() const { return failed_ ? 1 : 0; }

private:
    bool failed_ = false;
};

// Checks one reference row: intersection, width and runtime.
bool table_row(const Run& run, const Reference& ref, double max_seconds, std::string& detail)
{
    std::ostringstream os;
    os << "n=" << ref.n << " m=" << ref.m << ": ";
    if (!run.cert) {
        os << "no certificate (" << run.error << ")";
        detail += os.str();
        return false;
    }
    const auto& c = *run.cert;
    const bool hit = overlaps(c.t_max, ref.t_max);
    const bool narrow = c.t_max.width() <= 1e-8;
    const bool fast = c.wall_time_sec <= max_seconds;
    os << "t_max " << show(c.t_max) << " width " << std::setprecision(2) << c.t_max.width() << " in "
       << std::fixed << c.wall_time_sec << " s" << std::defaultfloat << (hit ? "" : " [misses reference]")
       << (narrow ? "" : " [too wide]") << (fast ? "" : " [too slow]");
    detail += os.str();
    return hit && narrow && fast;
}

double lambda_max(const ProblemParams& p, double s, const std::vector<double>& x)
{
    CompactState c{Interval(s), IntervalVector(x.size())};
    for (std::size_t i = 0; i < x.size(); ++i) {
        c.x[i] = Interval(x[i]);
    }
    const IntervalMatrix j = desing_jacobian(p, c);
    const auto dim = static_cast<Eigen::Index>(j.rows());
    Eigen::MatrixXd a(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index col = 0; col < dim; ++col) {
            a(r, col) = j(static_cast<std::size_t>(r), static_cast<std::size_t>(col)).mid() +
                        j(static_cast<std::size_t>(col), static_cast<std::size_t>(r)).mid();
        }
    }
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, sep);) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

} // namespace

int main()
{
    Report report;

    std::map<std::pair<int, int>, Run> runs;
    for (const auto& ref : kReferences) {
        runs[{ref.n, ref.m}] = certify(ref.n, ref.m);
    }

    {
        std::string detail;
        const bool ok = table_row(runs[{6, 1}], kReferences[0], 300.0, detail);
        report.line(1, ok, detail);
    }
    {
        std::string detail;
        const bool ok = table_row(runs[{8, 1}], kReferences[1], 600.0, detail);
        report.line(2, ok, detail);
    }
    {
        std::string detail;
        bool ok = table_row(runs[{6, 2}], kReferences[2], 600.0, detail);
        detail += "; ";
        ok = table_row(runs[{8, 2}], kReferences[3], 600.0, detail) && ok;
        report.line(3, ok, detail);
    }
    {
        std::string detail;
        const Run big = certify(16, 1);
        const bool ok = table_row(big, {16, 1, Interval(0.016198636686697263, 0.016198636686705484)}, 7200.0, detail);
        report.line(4, ok, detail, false);
    }
    {
        const std::vector<std::pair<double, double>> table{
            {0.1, 4.539992e-4}, {0.05, 4.12230724e-8}, {0.02, 9.6437492e-21}, {0.01, 3.720076e-42}};
        bool ok = true;
        std::ostringstream os;
        os << std::setprecision(3);
        for (const auto& [s, expected] : table) {
            const Interval h = safe_h({1, Interval(1.0), 1}, Interval(s));
            const double rel_err = std::abs(h.mid() - expected) / expected;
            const double rel_width = h.width() / std::abs(h.mid());
            ok = ok && rel_err <= 1e-6 && rel_width <= 1e-6;
            os << "s=" << s << " rel.err " << rel_err << " rel.width " << rel_width << "; ";
        }
        report.line(5, ok, os.str());
    }
    {
        bool ok = true;
        std::ostringstream os;
        os << std::setprecision(3);
        for (const auto& ref : kReferences) {
            const Run& run = runs[{ref.n, ref.m}];
            ok = ok && run.cert && run.cert->tail <= 1e-100;
            os << "n=" << ref.n << " m=" << ref.m << " tail " << (run.cert ? run.cert->tail : NAN) << "; ";
        }
        report.line(6, ok, os.str());
    }
    {
        bool ok = true;
        std::ostringstream os;
        for (const auto& binary : split(EXPBLOWUP_PROPERTY_SUITES, '|')) {
            const std::string cmd = binary + " --test-suite=property --no-intro=true > /dev/null 2>&1";
            const int status = std::system(cmd.c_str());
            const bool pass = WIFEXITED(status) && WEXITSTATUS(status) == 0;
            ok = ok && pass;
            os << binary.substr(binary.find_last_of('/') + 1) << (pass ? " ok" : " FAILED") << "; ";
        }
        report.line(7, ok, os.str());
    }
    {
        bool ok = true;
        std::ostringstream os;
        os << std::setprecision(4);
        std::mt19937_64 rng(2024);
        for (const auto& [m, target] : {std::pair{1, 8.02e-4}, std::pair{2, 7.74e-2}}) {
            const ProblemParams p(6, m, Interval(1.0));
            try {
                const auto start = std::chrono::steady_clock::now();
                const LyapunovDomain dom = find_domain(p, target);
                const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
                double worst = -std::numeric_limits<double>::infinity();
                std::uniform_real_distribution<double> s_dist(0.0, dom.box.s_max);
                std::uniform_real_distribution<double> x_dist(-dom.box.x_radius, dom.box.x_radius);
                for (int i = 0; i < 10000; ++i) {
                    std::vector<double> x(p.x_count());
                    for (auto& v : x) {
                        v = x_dist(rng);
                    }
                    worst = std::max(worst, lambda_max(p, s_dist(rng), x));
                }
                const bool pass = dom.epsilon >= target && elapsed.count() <= 60.0 && worst <= -dom.c + 1e-8;
                ok = ok && pass;
                os << "m=" << m << " epsilon " << dom.epsilon << " c " << dom.c << " in " << elapsed.count()
                   << " s, sampled max eigenvalue " << worst << "; ";
            } catch (const std::exception& e) {
                ok = false;
                os << "m=" << m << " failed: " << e.what() << "; ";
            }
        }
        report.line(8, ok, os.str());
    }
    {
        bool ok = true;
        int count = 0;
        for (const auto& [key, run] : runs) {
            if (!run.cert) {
                ok = false;
                continue;
            }
            try {
                ok = ok && certificate_from_json(certificate_to_json(*run.cert)) == *run.cert;
            } catch (const std::exception&) {
                ok = false;
            }
            ++count;
        }
        report.line(9, ok, std::to_string(count) + " certificates round-tripped through JSON");
    }
    return report.exit_code();
}
