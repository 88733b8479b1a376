#include "koba/json_io.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace koba::io {

json complex_to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_object() || !j.contains("re")) throw std::invalid_argument("expected a number or {\"re\":..,\"im\":..}");
  const double re = j.at("re").get<double>();
  const double im = j.contains("im") ? j.at("im").get<double>() : 0.0;
  return {re, im};
}

json svector_to_json(const SVector& s) {
  json arr = json::array();
  const IndexSet& idx = s.index_set();
  for (std::size_t k = 0; k < idx.size(); ++k)
    arr.push_back({{"i", idx[k].i}, {"j", idx[k].j}, {"re", s[k].real()}, {"im", s[k].imag()}});
  return {{"N", s.N()}, {"s", arr}};
}

SVector svector_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("s-vector JSON must be an object");
  try {
    if (!j.contains("s") && (j.contains("s12") || j.contains("s32"))) {
      if (j.contains("N") && j.at("N").get<int>() != 4) throw std::invalid_argument("shorthand keys need N = 4");
      if (!j.contains("s12") || !j.contains("s32")) throw std::invalid_argument("shorthand needs both s12 and s32");
      for (const auto& [key, _] : j.items())
        if (key != "s12" && key != "s32" && key != "N") throw std::invalid_argument("unknown key '" + key + "'");
      return SVector(4, {complex_from_json(j.at("s12")), complex_from_json(j.at("s32"))});
    }
    const int N = j.at("N").get<int>();
    SVector s(N);
    const auto& arr = j.at("s");
    if (!arr.is_array()) throw std::invalid_argument("\"s\" must be an array");
    if (arr.size() != s.size())
      throw std::invalid_argument("expected " + std::to_string(s.size()) + " entries for N = " + std::to_string(N) +
                                  ", got " + std::to_string(arr.size()));
    std::set<std::size_t> seen;
    for (const auto& e : arr) {
      const std::size_t pos = s.index_set().position(e.at("i").get<int>(), e.at("j").get<int>());
      if (!seen.insert(pos).second) throw std::invalid_argument("duplicate entry for " + s.index_set()[pos].name());
      s[pos] = {e.at("re").get<double>(), e.contains("im") ? e.at("im").get<double>() : 0.0};
    }
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed s-vector JSON: ") + e.what());
  }
}

json form_to_json(const AffineForm& f, const IndexSet& idx) {
  json coeffs = json::array();
  for (std::uint32_t k : f.support) coeffs.push_back({{"i", idx[k].i}, {"j", idx[k].j}, {"c", f.sign}});
  return {{"family", std::string(to_string(f.family))},
          {"subset", f.subset_labels()},
          {"coeffs", coeffs},
          {"gamma", f.gamma},
          {"text", f.to_text(idx)}};
}

json system_to_json(const InequalitySystem& sys) {
  const IndexSet idx(sys.N);
  json forms = json::array();
  for (const auto& f : sys.forms) forms.push_back(form_to_json(f, idx));
  return {{"N", sys.N}, {"count", sys.forms.size()}, {"forms", forms}};
}

json membership_to_json(const MembershipReport& rep, const InequalitySystem& sys) {
  const IndexSet idx(sys.N);
  auto list = [&](const std::vector<FormSlack>& v) {
    json arr = json::array();
    for (const auto& fs : v) {
      json o = form_to_json(sys.forms[fs.form_index], idx);
      o["index"] = fs.form_index;
      o["slack"] = fs.slack;
      arr.push_back(o);
    }
    return arr;
  };
  return {{"status", std::string(to_string(rep.status()))},
          {"inside", rep.inside},
          {"violated", list(rep.violated)},
          {"boundary", list(rep.boundary)}};
}

json pole_families_to_json(const std::vector<PoleFamily>& fams, const IndexSet& idx, Field field) {
  json arr = json::array();
  for (const auto& pf : fams) {
    json o = form_to_json(pf.form, idx);
    o["step"] = pf.step;
    o["real_part_only"] = pf.real_part_only;
    arr.push_back(o);
  }
  return {{"N", idx.N()}, {"field", std::string(to_string(field))}, {"families", arr}};
}

json pole_hits_to_json(const std::vector<PoleHit>& hits, const std::vector<PoleFamily>& fams, const IndexSet& idx) {
  json arr = json::array();
  for (const auto& h : hits) {
    json o = form_to_json(fams[h.family_index].form, idx);
    o["family_index"] = h.family_index;
    o["t"] = h.t;
    o["residual"] = h.residual;
    arr.push_back(o);
  }
  return arr;
}

json config_to_json(const MomentumConfig& cfg) {
  json vecs = json::array();
  for (const auto& v : cfg.vectors) {
    json comps = json::array();
    for (cplx c : v) comps.push_back(complex_to_json(c));
    vecs.push_back(comps);
  }
  return {{"N", cfg.N}, {"l", cfg.l}, {"vectors", vecs}};
}

MomentumConfig config_from_json(const json& j) {
  try {
    MomentumConfig cfg;
    cfg.N = j.at("N").get<int>();
    cfg.l = j.at("l").get<int>();
    for (const auto& v : j.at("vectors")) {
      MomentumVector mv;
      for (const auto& c : v) mv.push_back(complex_from_json(c));
      cfg.vectors.push_back(std::move(mv));
    }
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed configuration JSON: ") + e.what());
  }
}

json kinematics_report_to_json(const KinematicsReport& rep) {
  return {{"conservation_residual", rep.conservation_residual},
          {"mass_shell_residuals", rep.mass_shell_residuals},
          {"pass", rep.pass}};
}

json eval_result_to_json(const EvalResult& r) {
  json o{{"status", std::string(to_string(r.status))}};
  if (r.value) {
    o["value"] = complex_to_json(*r.value);
    o["stderr"] = r.std_error;
    o["tail_bound"] = r.tail_bound;
  }
  if (!r.sectors.empty()) {
    json secs = json::array();
    for (const auto& s : r.sectors)
      secs.push_back({{"subset", s.subset}, {"value", complex_to_json(s.value)}, {"stderr", s.std_error}});
    o["sectors"] = secs;
  }
  return o;
}

json growth_probe_to_json(const GrowthProbe& g) {
  json pts = json::array();
  for (std::size_t k = 0; k < g.cutoffs.size(); ++k)
    pts.push_back({{"cutoff", g.cutoffs[k]}, {"estimate", complex_to_json(g.estimates[k])}});
  return {{"points", pts}, {"growth_exponent", g.growth_exponent}, {"log_slope", g.log_slope}};
}

json padic_form_to_json(const PadicN4Form& f) {
  auto terms = [](const std::vector<MonomialTerm>& ts) {
    json arr = json::array();
    for (const auto& t : ts) arr.push_back({{"coef", t.coef}, {"u", t.u_pow}, {"v", t.v_pow}, {"w", t.w_pow}});
    return arr;
  };
  return {{"p", f.p},
          {"u_exp", complex_to_json(f.u_exp)},
          {"v_exp", complex_to_json(f.v_exp)},
          {"w_exp", complex_to_json(f.w_exp)},
          {"terms", terms(f.numerator)},
          {"denominator_terms", terms(f.denominator)}};
}

json windows_to_json(const std::vector<BetaInterval>& w) {
  json arr = json::array();
  for (const auto& iv : w) arr.push_back({{"lo", iv.lo}, {"hi", iv.hi}});
  return arr;
}

}  // namespace koba::io
