#pragma once

#include "expblowup/certifier.hpp"
#include "expblowup/integrator.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace expblowup {

/// Certificate as a JSON document; doubles use the shortest round-trip form.
std::string certificate_to_json(const BlowupCertificate& cert);
/// Inverse of certificate_to_json. Throws InputError on malformed input.
BlowupCertificate certificate_from_json(const std::string& text);

/// Shortest decimal string that parses back to x.
std::string format_double(double x);

/// One row per step with tube bounds: tau, t, s, then every x component.
void write_trajectory_csv(std::ostream& out, const ProblemParams& p, const std::vector<EnclosureStep>& steps);

/// Rows (t_mid, y_i, u_i_mid) at every grid node, for steps with s > 0.
void write_surface_csv(std::ostream& out, const ProblemParams& p, const std::vector<EnclosureStep>& steps);

} // namespace expblowup
