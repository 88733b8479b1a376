#pragma once

// JSON encodings shared by the CLI and the tests.

#include <json.hpp>

#include "koba/coulomb.hpp"
#include "koba/domain.hpp"
#include "koba/eval_result.hpp"
#include "koba/kinematics.hpp"
#include "koba/padic.hpp"
#include "koba/real_eval.hpp"

namespace koba::io {

using nlohmann::json;

json complex_to_json(cplx z);
/// Accepts {"re":x,"im":y} or a bare number.
cplx complex_from_json(const json& j);

/// {"N":4,"s":[{"i":1,"j":2,"re":..,"im":..},...]} in index order.
json svector_to_json(const SVector& s);
/// Generic format above, or the N = 4 shorthand {"s12":a,"s32":b}. Entries may
/// come in any order but every label must appear exactly once.
SVector svector_from_json(const json& j);

json form_to_json(const AffineForm& f, const IndexSet& idx);
json system_to_json(const InequalitySystem& sys);
json membership_to_json(const MembershipReport& rep, const InequalitySystem& sys);
json pole_families_to_json(const std::vector<PoleFamily>& fams, const IndexSet& idx, Field field);
json pole_hits_to_json(const std::vector<PoleHit>& hits, const std::vector<PoleFamily>& fams, const IndexSet& idx);

json config_to_json(const MomentumConfig& cfg);
MomentumConfig config_from_json(const json& j);
json kinematics_report_to_json(const KinematicsReport& rep);

json eval_result_to_json(const EvalResult& r);
json growth_probe_to_json(const GrowthProbe& g);
json padic_form_to_json(const PadicN4Form& f);
json windows_to_json(const std::vector<BetaInterval>& w);

}  // namespace koba::io
