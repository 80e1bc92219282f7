#include "expblowup/io.hpp"

#include "expblowup/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <ostream>

namespace expblowup {

namespace {

using nlohmann::json;

json pair(const Interval& x) { return json::array({x.lo(), x.hi()}); }

Interval read_pair(const json& j, const char* key)
{
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 2) {
        throw InputError(std::string("certificate field '") + key + "' must be a [lo, hi] pair");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

} // namespace

std::string format_double(double x)
{
    char buf[32];
    const auto res = std::to_chars(std::begin(buf), std::end(buf), x);
    return {buf, res.ptr};
}

std::string certificate_to_json(const BlowupCertificate& cert)
{
    json j;
    j["n"] = cert.params.n();
    j["m"] = cert.params.m();
    j["lambda"] = pair(cert.params.lambda());
    j["epsilon"] = cert.epsilon;
    j["c"] = cert.c;
    j["tau_bar"] = cert.tau_bar;
    j["t_bar"] = pair(cert.t_bar);
    j["tail"] = cert.tail;
    j["t_max"] = pair(cert.t_max);
    j["l_at_tau_bar"] = pair(cert.l_at_tau_bar);
    j["steps"] = cert.steps_taken;
    j["wall_time_sec"] = cert.wall_time_sec;
    return j.dump(2);
}

BlowupCertificate certificate_from_json(const std::string& text)
{
    try {
        const json j = json::parse(text);
        BlowupCertificate cert{ProblemParams(j.at("n").get<int>(), j.at("m").get<int>(), read_pair(j, "lambda"))};
        cert.epsilon = j.at("epsilon").get<double>();
        cert.c = j.at("c").get<double>();
        cert.tau_bar = j.at("tau_bar").get<double>();
        cert.t_bar = read_pair(j, "t_bar");
        cert.tail = j.at("tail").get<double>();
        cert.t_max = read_pair(j, "t_max");
        cert.l_at_tau_bar = read_pair(j, "l_at_tau_bar");
        cert.steps_taken = j.at("steps").get<long>();
        cert.wall_time_sec = j.at("wall_time_sec").get<double>();
        return cert;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed certificate JSON: ") + e.what());
    } catch (const DomainError& e) {
        throw InputError(std::string("invalid certificate contents: ") + e.what());
    }
}

void write_trajectory_csv(std::ostream& out, const ProblemParams& p, const std::vector<EnclosureStep>& steps)
{
    out << "tau_lo,tau_hi,t_lo,t_hi,s_lo,s_hi";
    for (std::size_t slot = 0; slot < p.x_count(); ++slot) {
        const int i = p.grid_node(slot);
        out << ",x_" << i << "_lo,x_" << i << "_hi";
    }
    out << '\n';
    for (const auto& step : steps) {
        const auto& y = step.tube;
        const Interval& t = y[y.size() - 1];
        out << format_double(step.tau.lo()) << ',' << format_double(step.tau.hi()) << ',' << format_double(t.lo())
            << ',' << format_double(t.hi());
        for (std::size_t k = 0; k + 1 < y.size(); ++k) {
            out << ',' << format_double(y[k].lo()) << ',' << format_double(y[k].hi());
        }
        out << '\n';
    }
}

void write_surface_csv(std::ostream& out, const ProblemParams& p, const std::vector<EnclosureStep>& steps)
{
    out << "t_mid,y_i,u_i_mid\n";
    const double n = static_cast<double>(p.n());
    for (const auto& step : steps) {
        const AugmentedState a = to_augmented(p, step.state);
        if (!(a.c.s.lo() > 0.0)) {
            continue;
        }
        const std::string t = format_double(a.t.mid());
        const PhysState u = decompactify(p, a.c);
        for (int i = 1; i < p.n(); ++i) {
            out << t << ',' << format_double(i / n) << ',' << format_double(u.u[static_cast<std::size_t>(i - 1)].mid())
                << '\n';
        }
    }
}

} // namespace expblowup
