#include "koba/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "koba/coulomb.hpp"
#include "koba/domain.hpp"
#include "koba/json_io.hpp"
#include "koba/kinematics.hpp"
#include "koba/padic.hpp"
#include "koba/real_eval.hpp"

namespace koba::cli {

using io::json;

bool apply_thread_cap() {
  const char* env = std::getenv("KOBA_THREADS");
  if (env == nullptr || *env == '\0') return true;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) return false;
  const int cap = static_cast<int>(std::min<long>(n, omp_get_max_threads()));
  omp_set_num_threads(cap);
  return true;
}

namespace {

/// Inline JSON when the argument starts with '{', otherwise a file path.
json load_json(const std::string& arg) {
  std::string text = arg;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || arg[first] != '{') {
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot read '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

SVector load_s(const std::string& arg, std::optional<int> N) {
  SVector s = io::svector_from_json(load_json(arg));
  if (N && *N != s.N())
    throw std::invalid_argument("--N " + std::to_string(*N) + " does not match the s-vector (N = " +
                                std::to_string(s.N()) + ")");
  return s;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int exit_for(EvalStatus s) {
  switch (s) {
    case EvalStatus::estimate: return ok;
    case EvalStatus::diverged_by_domain: return outside;
    case EvalStatus::boundary: return boundary;
  }
  return ok;
}

int exit_for(Membership m) {
  switch (m) {
    case Membership::inside: return ok;
    case Membership::outside: return outside;
    case Membership::boundary: return boundary;
  }
  return ok;
}

std::string measure_name(Field f) {
  switch (f) {
    case Field::R: return "lebesgue";
    case Field::C: return "planar-lebesgue";
    case Field::Qp: return "haar-normalized";
  }
  return "?";
}

std::string result_summary(const EvalResult& r) {
  std::ostringstream ss;
  ss.precision(12);
  ss << to_string(r.status);
  if (r.value) ss << " value=" << r.value->real() << (r.value->imag() < 0 ? "-" : "+") << std::abs(r.value->imag())
                  << "i stderr=" << r.std_error;
  return ss.str();
}

json kin_payload(const MomentumConfig& cfg, double tol) {
  return {{"config", io::config_to_json(cfg)},
          {"s", io::svector_to_json(momentum_to_s(cfg))},
          {"kinematics", io::kinematics_report_to_json(check_kinematics(cfg, tol))},
          {"scattering", std::string(to_string(scattering_feasible(cfg, tol)))}};
}

struct Options {
  // domain
  std::optional<int> dom_N;
  bool dom_json = false, dom_latex = false;
  int chk_N = 0;
  std::string chk_s;
  double chk_tol = kDefaultMembershipTol;
  // poles
  int pol_N = 0;
  std::string pol_field = "R";
  std::string pol_s;
  int pol_tmax = 3;
  double pol_tol = 1e-9;
  // eval
  std::optional<int> ev_N;
  std::string ev_field = "R";
  std::string ev_s;
  std::int64_t ev_samples = 1'000'000;
  int ev_groups = 32;
  std::optional<std::uint64_t> ev_seed;
  std::optional<std::string> ev_mode;
  double ev_eps = 0.1;
  std::vector<double> ev_probe;
  int ev_p = 3;
  int ev_depth = 12;
  std::size_t ev_max_memo = std::size_t{1} << 22;
  bool ev_symbolic = false;
  bool ev_serial = false;
  // kin
  int k_N = 0, k_l = 0;
  std::string k_file;
  double k_tol = 1e-12;
  std::optional<double> k_B, k_C;
  int k_count = 100;
  std::optional<std::uint64_t> k_seed;
  // coulomb
  int c_N = 0;
  std::vector<double> c_e;
  std::string c_grid;
  double c_beta = 0.0;
  std::string c_field = "R";
  std::optional<std::string> c_mode;
  std::optional<std::uint64_t> c_seed;
  std::int64_t c_samples = 1'000'000;
  int c_groups = 32;
  int c_p = 3;
  int c_depth = 12;
};

EvalSettings real_settings(std::int64_t samples, int groups, std::optional<std::uint64_t> seed, EvalMode mode,
                           double eps, bool serial) {
  if (mode == EvalMode::mc && !seed) throw std::invalid_argument("--seed is required for mc mode");
  EvalSettings st;
  st.samples_per_sector = samples;
  st.groups = groups;
  st.seed = seed.value_or(0);
  st.mode = mode;
  st.chi_epsilon = eps;
  st.backend = serial ? Backend::serial : Backend::openmp;
  st.validate();
  return st;
}

CommandResult run_domain(const Options& o) {
  if (!o.dom_N) throw std::invalid_argument("domain: --N is required");
  const InequalitySystem sys = enumerate_inequalities(*o.dom_N);
  const IndexSet idx(sys.N);
  CommandResult r;
  if (o.dom_json) {
    r.out = dump(io::system_to_json(sys));
  } else {
    for (const auto& f : sys.forms)
      r.out += (o.dom_latex ? f.to_latex(idx) : std::string(to_string(f.family)) + "  " + f.to_text(idx)) + "\n";
  }
  r.summary = std::to_string(sys.forms.size()) + " inequalities for N = " + std::to_string(sys.N);
  return r;
}

CommandResult run_domain_check(const Options& o) {
  if (o.chk_tol < 0) throw std::invalid_argument("--tol must be >= 0");
  const SVector s = load_s(o.chk_s, o.chk_N);
  const InequalitySystem sys = enumerate_inequalities(s.N());
  const MembershipReport rep = check_membership(sys, s, o.chk_tol);
  return {exit_for(rep.status()), dump(io::membership_to_json(rep, sys)), std::string(to_string(rep.status()))};
}

CommandResult run_poles(const Options& o) {
  const Field field = parse_field(o.pol_field);
  const auto fams = pole_families(o.pol_N, field);
  const IndexSet idx(o.pol_N);
  if (o.pol_s.empty()) {
    return {ok, dump(io::pole_families_to_json(fams, idx, field)), std::to_string(fams.size()) + " pole families"};
  }
  if (o.pol_tmax < 0) throw std::invalid_argument("--t-max must be >= 0");
  const SVector s = load_s(o.pol_s, o.pol_N);
  const auto hits = is_on_pole(fams, s, o.pol_tmax, o.pol_tol);
  json j{{"N", o.pol_N}, {"field", std::string(to_string(field))}, {"t_max", o.pol_tmax}, {"hits", io::pole_hits_to_json(hits, fams, idx)}};
  return {ok, dump(j), hits.empty() ? "no candidate pole detected" : std::to_string(hits.size()) + " pole hyperplanes hit"};
}

CommandResult run_eval(const Options& o) {
  const Field field = parse_field(o.ev_field);
  const SVector s = load_s(o.ev_s, o.ev_N);
  json j{{"N", s.N()}, {"field", std::string(to_string(field))}, {"measure", measure_name(field)}};

  if (!o.ev_probe.empty()) {
    const EvalMode mode = EvalMode::mc;
    std::optional<std::uint64_t> seed = o.ev_seed;
    if (s.N() == 4 && !seed) seed = 0;  // N = 4 probes use quadrature
    const EvalSettings st = real_settings(o.ev_samples, o.ev_groups, seed, mode, o.ev_eps, o.ev_serial);
    const GrowthProbe g = growth_probe(s, field, o.ev_probe, st);
    j["probe"] = io::growth_probe_to_json(g);
    std::ostringstream ss;
    ss << "growth exponent " << g.growth_exponent;
    return {ok, dump(j), ss.str()};
  }

  EvalResult res;
  if (field == Field::Qp) {
    const bool closed = o.ev_mode && parse_mode(*o.ev_mode) == EvalMode::closed;
    if (closed && s.N() != 4) throw std::invalid_argument("closed form is available for N = 4 only");
    j["mode"] = closed ? "closed" : "tree";
    j["p"] = o.ev_p;
    if (closed) {
      res = eval_n4_padic(o.ev_p, s[0], s[1]);
    } else {
      PadicParams prm;
      prm.p = o.ev_p;
      prm.max_depth = o.ev_depth;
      prm.max_memo = o.ev_max_memo;
      prm.s = s;
      res = eval_padic_tree(prm);
      j["max_depth"] = o.ev_depth;
    }
    if (o.ev_symbolic) {
      if (s.N() != 4) throw std::invalid_argument("--symbolic is available for N = 4 only");
      j["symbolic"] = io::padic_form_to_json(padic_n4_form(o.ev_p, s[0], s[1]));
    }
  } else {
    if (o.ev_symbolic) throw std::invalid_argument("--symbolic applies to --field Qp");
    const EvalMode mode = o.ev_mode ? parse_mode(*o.ev_mode) : EvalMode::mc;
    const EvalSettings st = real_settings(o.ev_samples, o.ev_groups, o.ev_seed, mode, o.ev_eps, o.ev_serial);
    j["mode"] = std::string(to_string(mode));
    if (mode == EvalMode::mc) {
      j["samples"] = st.samples_per_sector;
      j["groups"] = st.groups;
      j["seed"] = st.seed;
      j["chi_epsilon"] = st.chi_epsilon;
    }
    res = evaluate(s, field, st);
  }
  j["result"] = io::eval_result_to_json(res);
  return {exit_for(res.status), dump(j), result_summary(res)};
}

CommandResult run_kin(CLI::App* kin, const Options& o) {
  if (kin->got_subcommand("prop3")) {
    const MomentumConfig cfg = build_prop3(o.k_N, o.k_l);
    return {ok, dump(kin_payload(cfg, o.k_tol)), "prop3 configuration"};
  }
  if (kin->got_subcommand("equi")) {
    const MomentumConfig cfg = build_equidistributed(o.k_N);
    return {ok, dump(kin_payload(cfg, o.k_tol)), "equidistributed configuration"};
  }
  if (kin->got_subcommand("check")) {
    const MomentumConfig cfg = io::config_from_json(load_json(o.k_file));
    const KinematicsReport rep = check_kinematics(cfg, o.k_tol);
    json j = kin_payload(cfg, o.k_tol);
    j.erase("config");
    return {rep.pass ? ok : outside, dump(j), rep.pass ? "constraints satisfied" : "constraints violated"};
  }
  // sample-u
  if (!o.k_seed) throw std::invalid_argument("--seed is required");
  UBoxParams prm = UBoxParams::defaults(o.k_N, o.k_l);
  if (o.k_B) prm.B = *o.k_B;
  if (o.k_C) prm.C = *o.k_C;
  const auto cfgs = sample_U(prm, *o.k_seed, o.k_count);
  json arr = json::array();
  bool all_in = true;
  for (const auto& c : cfgs) {
    all_in = all_in && box_contains(c.N, momentum_to_s(c));
    arr.push_back(io::config_to_json(c));
  }
  json j{{"N", prm.N}, {"l", prm.l}, {"B", prm.B}, {"C", prm.C}, {"seed", *o.k_seed}, {"count", o.k_count},
         {"all_in_box", all_in}, {"configs", arr}};
  return {ok, dump(j), std::to_string(cfgs.size()) + " configurations"};
}

CommandResult run_coulomb(CLI::App* cou, const Options& o) {
  if (cou->got_subcommand("window")) {
    const auto w = beta_window(o.c_N, o.c_e, parse_grid(o.c_grid));
    json j{{"N", o.c_N}, {"charges", o.c_e}, {"windows", io::windows_to_json(w)}};
    return {ok, dump(j), std::to_string(w.size()) + " window(s)"};
  }
  const GasSpec g{o.c_N, o.c_e, o.c_beta};
  const Field field = parse_field(o.c_field);
  PartitionSettings ps;
  ps.p = o.c_p;
  ps.max_depth = o.c_depth;
  json j{{"N", g.N}, {"charges", g.charges}, {"beta", g.beta}, {"field", std::string(to_string(field))},
         {"measure", measure_name(field)}};
  if (field != Field::Qp) {
    const EvalMode mode = o.c_mode ? parse_mode(*o.c_mode) : (g.N == 4 ? EvalMode::closed : EvalMode::mc);
    ps.real = real_settings(o.c_samples, o.c_groups, o.c_seed, mode, 0.1, false);
    j["mode"] = std::string(to_string(mode));
  } else {
    j["p"] = ps.p;
  }
  j["s"] = io::svector_to_json(charges_to_s(g));
  const EvalResult res = partition_function(g, field, ps);
  j["result"] = io::eval_result_to_json(res);
  return {exit_for(res.status), dump(j), result_summary(res)};
}

}  // namespace

CommandResult dispatch(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Koba-Nielsen local zeta functions over R, C and Q_p", "koba"};
  app.require_subcommand(1);

  auto* dom = app.add_subcommand("domain", "Print the convergence inequalities for N");
  dom->add_option("--N", o.dom_N, "number of points (>= 4)");
  auto* fj = dom->add_flag("--json", o.dom_json, "JSON output");
  dom->add_flag("--latex", o.dom_latex, "LaTeX output")->excludes(fj);
  auto* chk = dom->add_subcommand("check", "Test an s-vector for membership");
  chk->add_option("--N", o.chk_N, "number of points")->required();
  chk->add_option("--s", o.chk_s, "s-vector JSON file or inline JSON")->required();
  chk->add_option("--tol", o.chk_tol, "boundary tolerance");

  auto* pol = app.add_subcommand("poles", "Candidate pole families, or hits at a given s");
  pol->add_option("--N", o.pol_N, "number of points")->required();
  pol->add_option("--field", o.pol_field, "R, C or Qp");
  pol->add_option("--s", o.pol_s, "s-vector; lists hit hyperplanes instead of families");
  pol->add_option("--t-max", o.pol_tmax, "largest shift t");
  pol->add_option("--tol", o.pol_tol, "hyperplane tolerance");

  auto* ev = app.add_subcommand("eval", "Evaluate the integral at s");
  ev->add_option("--N", o.ev_N, "number of points");
  ev->add_option("--field", o.ev_field, "R, C or Qp");
  ev->add_option("--s", o.ev_s, "s-vector JSON file or inline JSON")->required();
  ev->add_option("--samples", o.ev_samples, "Monte Carlo samples per sector");
  ev->add_option("--groups", o.ev_groups, "median-of-means groups");
  ev->add_option("--seed", o.ev_seed, "random seed (required for mc)");
  ev->add_option("--mode", o.ev_mode, "mc, quadrature or closed");
  ev->add_option("--eps", o.ev_eps, "cutoff width epsilon");
  ev->add_option("--probe", o.ev_probe, "comma-separated truncation cutoffs")->delimiter(',');
  ev->add_option("--p", o.ev_p, "prime for --field Qp");
  ev->add_option("--depth", o.ev_depth, "cluster depth cap for --field Qp");
  ev->add_option("--max-memo", o.ev_max_memo, "memo entry cap for --field Qp");
  ev->add_flag("--symbolic", o.ev_symbolic, "emit the rational form (Qp, N = 4)");
  ev->add_flag("--serial", o.ev_serial, "use the serial reference kernel");

  auto* kin = app.add_subcommand("kin", "Momentum configurations");
  kin->require_subcommand(1);
  auto* kp = kin->add_subcommand("prop3", "Real solution with N <= l+1");
  kp->add_option("--N", o.k_N)->required();
  kp->add_option("--l", o.k_l)->required();
  kp->add_option("--tol", o.k_tol);
  auto* ke = kin->add_subcommand("equi", "Equidistributed l = 2 solution");
  ke->add_option("--N", o.k_N)->required();
  ke->add_option("--tol", o.k_tol);
  auto* kc = kin->add_subcommand("check", "Check a configuration file");
  kc->add_option("--file", o.k_file, "configuration JSON file or inline JSON")->required();
  kc->add_option("--tol", o.k_tol);
  auto* ku = kin->add_subcommand("sample-u", "Uniform draws from the U box");
  ku->add_option("--N", o.k_N)->required();
  ku->add_option("--l", o.k_l)->required();
  ku->add_option("--B", o.k_B);
  ku->add_option("--C", o.k_C);
  ku->add_option("--count", o.k_count);
  ku->add_option("--seed", o.k_seed);

  auto* cou = app.add_subcommand("coulomb", "Log-Coulomb gas");
  cou->require_subcommand(1);
  auto* cw = cou->add_subcommand("window", "Convergent beta windows on a grid");
  cw->add_option("--N", o.c_N)->required();
  cw->add_option("--e", o.c_e, "comma-separated charges e_1..e_{N-1}")->required()->delimiter(',');
  cw->add_option("--grid", o.c_grid, "start:stop:step")->required();
  auto* ce = cou->add_subcommand("eval", "Partition function at beta");
  ce->add_option("--N", o.c_N)->required();
  ce->add_option("--e", o.c_e)->required()->delimiter(',');
  ce->add_option("--beta", o.c_beta)->required();
  ce->add_option("--field", o.c_field);
  ce->add_option("--mode", o.c_mode);
  ce->add_option("--seed", o.c_seed);
  ce->add_option("--samples", o.c_samples);
  ce->add_option("--groups", o.c_groups);
  ce->add_option("--p", o.c_p);
  ce->add_option("--depth", o.c_depth);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    return {ok, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return {invalid_input, "", std::string(e.what()) + "\n" + app.help()};
  }

  try {
    if (app.got_subcommand(dom)) return dom->got_subcommand(chk) ? run_domain_check(o) : run_domain(o);
    if (app.got_subcommand(pol)) return run_poles(o);
    if (app.got_subcommand(ev)) return run_eval(o);
    if (app.got_subcommand(kin)) return run_kin(kin, o);
    return run_coulomb(cou, o);
  } catch (const resource_limit_error& e) {
    return {resource_limit, "", e.what()};
  } catch (const std::length_error& e) {
    return {resource_limit, "", e.what()};
  } catch (const std::invalid_argument& e) {
    return {invalid_input, "", e.what()};
  } catch (const unsupported_error& e) {
    return {invalid_input, "", e.what()};
  } catch (const std::out_of_range& e) {
    return {invalid_input, "", e.what()};
  } catch (const json::exception& e) {
    return {invalid_input, "", e.what()};
  }
}

}  // namespace koba::cli
