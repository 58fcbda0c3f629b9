#include "rkhs/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "rkhs/ball_identities.hpp"
#include "rkhs/dilation.hpp"
#include "rkhs/error.hpp"
#include "rkhs/json_io.hpp"
#include "rkhs/linalg.hpp"
#include "rkhs/purity.hpp"
#include "rkhs/random.hpp"

namespace rkhs {

using json_io::to_json;

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tols{
      {"purity", kPurityTol},  {"identity", 1e-10},     {"cnp", 1e-12},       {"bcl", 1e-10},
      {"bcl_product", 1e-12},  {"transfer", 1e-10},     {"unitary", 1e-10},   {"intertwining", 1e-8},
      {"witness", 1e-8},       {"monotone", 1e-12},
  };
  return tols;
}

namespace {

const std::set<std::string> kTasks{"purity", "identity", "cnp", "bcl", "colligation", "decay", "witness"};
const std::set<std::string> kTopLevelKeys{"schema_version", "scenario_id", "task", "seed", "space",
                                          "symbol", "triple", "colligation", "defects", "subspace",
                                          "sweep", "params", "tolerances", "expected", "description"};

struct Context {
  const json& cfg;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::map<std::string, double> tol;

  const json& params() const {
    static const json empty = json::object();
    return cfg.contains("params") ? cfg.at("params") : empty;
  }
  const json& expected() const {
    static const json empty = json::object();
    return cfg.contains("expected") ? cfg.at("expected") : empty;
  }
  int param_int(const char* key, int fallback) const {
    const json& p = params();
    if (!p.contains(key)) return fallback;
    if (!p.at(key).is_number_integer()) throw InvalidInput(std::string("params.") + key + " must be an integer");
    return p.at(key).get<int>();
  }
  bool param_bool(const char* key, bool fallback) const {
    const json& p = params();
    if (!p.contains(key)) return fallback;
    if (!p.at(key).is_boolean()) throw InvalidInput(std::string("params.") + key + " must be a boolean");
    return p.at(key).get<bool>();
  }
  const json& field(const char* key) const {
    if (!cfg.contains(key)) throw InvalidInput(std::string("config needs \"") + key + "\" for this task");
    return cfg.at(key);
  }
  std::uint64_t require_seed() const {
    if (!has_seed) throw InvalidInput("sweeps need a seed");
    return seed;
  }
};

struct TaskResult {
  bool pass = true;
  json verdicts = json::object();
  json payload = json::object();
};

int sweep_int(const json& sweep, const char* key, int fallback) {
  if (!sweep.contains(key)) return fallback;
  if (!sweep.at(key).is_number_integer() || sweep.at(key).get<int>() < 0) {
    throw InvalidInput(std::string("sweep.") + key + " must be a nonnegative integer");
  }
  return sweep.at(key).get<int>();
}

json purity_json(const PurityReport& r) {
  json j{{"per_degree_rho", r.per_degree_rho}, {"phi0_rho", r.phi0_rho},
         {"verdict", to_string(r.verdict)},    {"near_boundary", r.near_boundary},
         {"contractivity_norm", r.contractivity_norm}, {"d_max", r.d_max}};
  if (r.decay_samples) j["decay_samples"] = *r.decay_samples;
  return j;
}

double max_rho(const PurityReport& r) {
  double m = 0.0;
  for (double v : r.per_degree_rho) m = std::max(m, v);
  return m;
}

TaskResult run_purity(const Context& ctx) {
  const auto space = json_io::space_from(ctx.field("space"));
  const auto basis = space.basis();
  const int d_max = ctx.param_int("d_max", space.degree_cap);
  PurityOptions opts;
  opts.tol = ctx.tol.at("purity");
  opts.decay_steps = ctx.param_int("decay_steps", 0);

  TaskResult out;
  if (ctx.cfg.contains("symbol")) {
    const MultiplierSymbol phi = json_io::symbol_from(ctx.cfg.at("symbol"), basis->num_vars(), basis->coeff_dim());
    const PurityReport rep = multiplier_purity_verdict(phi, basis, d_max, opts);
    out.verdicts = {{"verdict", to_string(rep.verdict)}, {"near_boundary", rep.near_boundary}};
    out.payload = purity_json(rep);
    out.pass = rep.verdict != Verdict::inconsistent;
    if (ctx.expected().contains("verdict")) {
      out.pass = out.pass && ctx.expected().at("verdict").get<std::string>() == to_string(rep.verdict);
    }
    if (ctx.param_bool("slice_check", false)) {
      const SliceConsistencyReport sc = slice_purity_consistency(phi, d_max, opts);
      json sliced = json::array();
      for (Verdict v : sc.sliced) sliced.push_back(to_string(v));
      out.payload["slices"] = {{"full", to_string(sc.full)}, {"sliced", sliced}, {"consistent", sc.consistent}};
      out.verdicts["slice_consistent"] = sc.consistent;
      out.pass = out.pass && sc.consistent;
    }
    return out;
  }

  const json& sweep = ctx.field("sweep");
  const int count = sweep_int(sweep, "count", 0);
  const int forced = sweep_int(sweep, "forced", 0);
  const int degree = sweep_int(sweep, "symbol_degree", 2);
  Rng rng(ctx.require_seed());
  std::map<std::string, int> tally{{"pure", 0}, {"not_pure", 0}, {"inconsistent", 0}};
  int near = 0;
  int forced_wrong = 0;
  json rows = json::array();
  for (int k = 0; k < count + forced; ++k) {
    const bool is_forced = k >= count;
    const MultiplierSymbol phi = is_forced ? forced_unitary_symbol(rng, basis, d_max, degree)
                                           : random_contractive_symbol(rng, basis, d_max, degree);
    const PurityReport rep = multiplier_purity_verdict(phi, basis, d_max, opts);
    tally[to_string(rep.verdict)] += 1;
    near += rep.near_boundary ? 1 : 0;
    if (is_forced && rep.verdict != Verdict::not_pure) ++forced_wrong;
    rows.push_back({{"index", k}, {"forced", is_forced}, {"verdict", to_string(rep.verdict)},
                    {"phi0_rho", rep.phi0_rho}, {"max_rho", max_rho(rep)},
                    {"contractivity_norm", rep.contractivity_norm}});
  }
  out.verdicts = {{"counts", tally}, {"near_boundary", near}, {"forced_not_pure_failures", forced_wrong}};
  out.payload = {{"symbols", rows}, {"d_max", d_max}, {"symbol_degree", degree}};
  out.pass = tally["inconsistent"] == 0 && forced_wrong == 0;
  return out;
}

TaskResult run_identity(const Context& ctx) {
  const auto space = json_io::space_from(ctx.field("space"));
  if (space.geometry != Geometry::ball) throw InvalidInput("identity task needs a ball space");
  const auto basis = space.basis();
  std::string kind = space.ball.family == BallFamily::hm ? "defect" : "chen";
  if (ctx.params().contains("identity")) kind = ctx.params().at("identity").get<std::string>();
  const double tol = ctx.tol.at("identity");
  const bool expect_refusal = ctx.expected().value("refused", false);

  TaskResult out;
  IdentityResidual r;
  if (kind == "defect") {
    r = defect_identity_residual(basis, tol);
  } else if (kind == "chen") {
    try {
      r = chen_identity_residual(basis, tol);
    } catch (const NotCnp& e) {
      if (!expect_refusal) throw;
      out.verdicts = {{"identity", kind}, {"refused", true}};
      out.payload = {{"refusal", {{"type", e.kind()}, {"message", e.what()}, {"index", e.index()}}}};
      return out;
    }
  } else {
    throw InvalidInput("params.identity must be \"defect\" or \"chen\"");
  }
  out.verdicts = {{"identity", kind}, {"refused", false}, {"residual_ok", r.residual_norm <= tol}};
  out.payload = {{"residual_norm", r.residual_norm}, {"certified_block", r.certified_block},
                 {"term_count", r.term_count}};
  out.pass = r.residual_norm <= tol && !expect_refusal;
  if (kind == "chen") {
    const double mono = ctx.tol.at("monotone");
    out.payload["partial_sums"] = r.partial_sums;
    out.payload["max_increase"] = r.max_increase;
    out.payload["min_step_eigenvalue"] = r.min_step_eigenvalue;
    out.verdicts["monotone"] = r.max_increase <= mono && r.min_step_eigenvalue >= -mono;
    out.pass = out.pass && out.verdicts["monotone"].get<bool>();
  }
  return out;
}

TaskResult run_cnp(const Context& ctx) {
  const auto space = json_io::space_from(ctx.field("space"));
  const int order = ctx.param_int("order", 40);
  if (order < 1 || order > kMaxSeriesOrder) throw RangeError("params.order outside [1, 64]");
  const CnpCertificate cert = cnp_certificate(space.series(order), order, ctx.tol.at("cnp"));

  TaskResult out;
  out.verdicts = {{"is_cnp", cert.is_cnp_to_order}, {"order", cert.order}};
  out.payload = {{"b", cert.b.coeffs()}, {"kernel", space.describe()["kernel"]}};
  out.payload["first_violation"] = cert.first_violation ? json(*cert.first_violation) : json(nullptr);
  out.verdicts["first_violation"] = out.payload["first_violation"];
  if (space.geometry == Geometry::ball) {
    const ChenCoefficients chen = chen_coeffs(space.ball, order, ctx.tol.at("cnp"));
    out.payload["chen"] = {{"c", chen.c.coeffs()}, {"signs_ok", chen.signs_ok}};
  }
  const json& ex = ctx.expected();
  if (ex.contains("is_cnp")) out.pass = out.pass && ex.at("is_cnp").get<bool>() == cert.is_cnp_to_order;
  if (ex.contains("first_violation")) {
    const json& fv = ex.at("first_violation");
    out.pass = out.pass && (fv.is_null() ? !cert.first_violation
                                         : cert.first_violation && *cert.first_violation == fv.get<std::size_t>());
  }
  return out;
}

json bcl_json(const BCLTriple& t, const BCLReport& r) {
  return {{"e_dim", t.e_dim},
          {"axis", t.axis},
          {"rank_P", static_cast<int>(std::lround(t.P.trace().real()))},
          {"product_error", r.product_error},
          {"max_commutator", r.max_commutator},
          {"max_isometry_residual", r.max_isometry_residual},
          {"rho_p0", r.rho_p0},
          {"rho_q0", r.rho_q0},
          {"verdict_p", to_string(r.purity_p.verdict)},
          {"verdict_q", to_string(r.purity_q.verdict)},
          {"failures", r.failures},
          {"pass", r.pass}};
}

TaskResult run_bcl(const Context& ctx) {
  const int n = ctx.param_int("n", 2);
  const int d = ctx.param_int("degree_cap", 4);
  const double tol = ctx.tol.at("bcl");
  const double ptol = ctx.tol.at("purity");
  TaskResult out;
  json rows = json::array();
  int failures = 0;
  int mismatches = 0;
  auto certify = [&](const BCLTriple& t) {
    BCLReport r = bcl_dilation_certify(t, n, d, tol, ptol);
    if (r.product_error > ctx.tol.at("bcl_product") && r.pass) {
      r.failures.push_back("BCL product identity");
      r.pass = false;
    }
    failures += r.pass ? 0 : 1;
    mismatches += r.verdicts_match ? 0 : 1;
    rows.push_back(bcl_json(t, r));
  };
  if (ctx.cfg.contains("triple")) {
    certify(json_io::triple_from(ctx.cfg.at("triple")));
  } else {
    const json& sweep = ctx.field("sweep");
    const int count = sweep_int(sweep, "count", 0);
    const int lo = std::max(1, sweep_int(sweep, "min_e_dim", 1));
    const int hi = sweep_int(sweep, "max_e_dim", 4);
    if (hi < lo) throw InvalidInput("sweep.max_e_dim below sweep.min_e_dim");
    Rng rng(ctx.require_seed());
    for (int k = 0; k < count; ++k) {
      const int e = rng.uniform_int(lo, hi);
      const int axis = rng.uniform_int(0, n - 2);
      certify(random_bcl_triple(rng, e, axis));
    }
  }
  out.verdicts = {{"triples", rows.size()}, {"failures", failures}, {"verdict_mismatches", mismatches}};
  out.payload = {{"n", n}, {"degree_cap", d}, {"triples", rows}};
  out.pass = failures == 0;
  return out;
}

double sampled_transfer_norm(const Colligation& c, Rng& rng, int samples) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<cplx> z;
    for (int i = 0; i < c.num_vars(); ++i) {
      z.push_back(std::polar(rng.uniform(0.0, 0.999), rng.uniform(0.0, 2.0 * std::numbers::pi)));
    }
    worst = std::max(worst, linalg::spectral_norm(transfer_eval(c, z)));
  }
  return worst;
}

json schur_json(const SchurAglerReport& r) {
  json j = purity_json(r.purity);
  j["rho_a"] = r.rho_a;
  j["jet_degree"] = r.jet_degree;
  j["consistent"] = r.consistent;
  return j;
}

TaskResult run_colligation(const Context& ctx) {
  const int d = ctx.param_int("degree_cap", 4);
  const int samples = ctx.param_int("samples", 200);
  const double ptol = ctx.tol.at("purity");
  const double ttol = ctx.tol.at("transfer");
  TaskResult out;
  Rng rng(ctx.seed);

  if (ctx.cfg.contains("defects")) {
    const json& def = ctx.cfg.at("defects");
    std::vector<Eigen::MatrixXcd> x, g;
    for (const auto& m : def.at("tuple")) x.push_back(json_io::matrix_from(m));
    for (const auto& m : def.at("G")) g.push_back(json_io::matrix_from(m));
    const DefectColligation dc = colligation_from_defects(x, g, ctx.tol.at("unitary"));
    const int di = ctx.param_int("intertwining_degree", d);
    const IntertwiningReport ir = intertwining_check(dc, x, di);
    const SchurAglerReport sa = schur_agler_purity(dc.colligation, d, ptol);
    const double tn = sampled_transfer_norm(dc.colligation, rng, samples);
    out.payload = {{"e_dim", dc.colligation.e_dim},
                   {"h_dims", dc.colligation.h_dims},
                   {"graph_residual", dc.graph_residual},
                   {"unitary_residual", linalg::unitary_residual(dc.colligation.matrix())},
                   {"shift_residuals", ir.shift_residuals},
                   {"symbol_residual", ir.symbol_residual},
                   {"intertwining_degree", di},
                   {"max_transfer_norm", tn},
                   {"schur_agler", schur_json(sa)}};
    const bool inter_ok = ir.max_residual <= ctx.tol.at("intertwining");
    out.verdicts = {{"unitary_extension", true}, {"intertwining_ok", inter_ok}, {"consistent", sa.consistent},
                    {"verdict", to_string(sa.purity.verdict)}};
    out.pass = inter_ok && sa.consistent && tn <= 1.0 + ttol;
    return out;
  }

  std::vector<Colligation> list;
  if (ctx.cfg.contains("colligation")) {
    list.push_back(json_io::colligation_from(ctx.cfg.at("colligation")));
  } else {
    const json& sweep = ctx.field("sweep");
    const int count = sweep_int(sweep, "count", 0);
    const int e = std::max(1, sweep_int(sweep, "e_dim", 2));
    std::vector<int> h_dims{1, 1};
    if (sweep.contains("h_dims")) h_dims = sweep.at("h_dims").get<std::vector<int>>();
    Rng gen(ctx.require_seed());
    for (int k = 0; k < count; ++k) list.push_back(random_colligation(gen, e, h_dims));
  }
  json rows = json::array();
  int inconsistent = 0;
  double worst = 0.0;
  for (const auto& c : list) {
    const SchurAglerReport sa = schur_agler_purity(c, d, ptol);
    const double tn = sampled_transfer_norm(c, rng, samples);
    worst = std::max(worst, tn);
    inconsistent += sa.consistent ? 0 : 1;
    json row = schur_json(sa);
    row["max_transfer_norm"] = tn;
    rows.push_back(row);
  }
  out.verdicts = {{"colligations", list.size()}, {"inconsistent", inconsistent},
                  {"transfer_contractive", worst <= 1.0 + ttol}};
  out.payload = {{"degree_cap", d}, {"samples", samples}, {"colligations", rows}, {"max_transfer_norm", worst}};
  out.pass = inconsistent == 0 && worst <= 1.0 + ttol;
  return out;
}

TaskResult run_decay(const Context& ctx) {
  const auto space = json_io::space_from(ctx.field("space"));
  const auto basis = space.basis();
  const MultiplierSymbol phi = json_io::symbol_from(ctx.field("symbol"), basis->num_vars(), basis->coeff_dim());
  const int m_max = ctx.param_int("m_max", 30);
  const double ptol = ctx.tol.at("purity");
  const double mono = ctx.tol.at("monotone");
  PurityOptions opts;
  opts.tol = ptol;
  const PurityReport rep = multiplier_purity_verdict(phi, basis, space.degree_cap, opts);
  const OperatorMatrix t = adjoint_compression(phi, basis);

  json curves = json::array();
  bool nonincreasing = true;
  for (int j = 0; j < basis->coeff_dim(); ++j) {
    SpaceVector h{basis, Eigen::VectorXcd::Zero(basis->dim())};
    h.coords(j) = 1.0;
    const auto curve = decay_curve(t, h, m_max);
    for (std::size_t k = 1; k < curve.size(); ++k) nonincreasing = nonincreasing && curve[k] <= curve[k - 1] + mono;
    curves.push_back(curve);
  }
  const ATEstimate at = a_operator_estimate(t.data, m_max);
  const NagyFoiasSplit nf = nagy_foias_split(t.data, ptol);
  const bool split_agrees = (rep.verdict == Verdict::pure) == nf.pure();

  TaskResult out;
  out.verdicts = {{"verdict", to_string(rep.verdict)}, {"nonincreasing", nonincreasing},
                  {"split_agrees", split_agrees}};
  out.payload = {{"curves", curves},
                 {"m_max", m_max},
                 {"a_operator_trace", at.matrix.trace().real()},
                 {"a_operator_monotone_min_eig", at.monotone_min_eig},
                 {"unitary_part_dim", nf.unitary_part.dim()},
                 {"cnu_part_dim", nf.cnu_part.dim()},
                 {"cnu_spectral_radius", nf.cnu_spectral_radius},
                 {"purity", purity_json(rep)}};
  out.pass = nonincreasing && at.monotone_min_eig >= -mono && split_agrees && rep.verdict != Verdict::inconsistent;
  return out;
}

SubspaceFrame subspace_from(const json& j, const TruncatedBasis::Ptr& basis) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "monomial_ideal") {
    std::vector<MultiIndex> gens;
    for (const auto& g : j.at("generators")) gens.push_back(json_io::multi_index_from(g, basis->num_vars()));
    return monomial_ideal(basis, gens);
  }
  if (kind == "generated") {
    return generated_by_polynomial(basis, json_io::symbol_from(j.at("polynomial"), basis->num_vars(), 1));
  }
  throw InvalidInput("subspace.kind must be \"monomial_ideal\" or \"generated\"");
}

TaskResult run_witness(const Context& ctx) {
  const auto space = json_io::space_from(ctx.field("space"));
  const auto basis = space.basis();
  const SubspaceFrame m = subspace_from(ctx.field("subspace"), basis);
  const int budget = ctx.param_int("budget", space.degree_cap);
  const double tol = ctx.tol.at("witness");
  const auto x = shift_tuple(basis);
  const WandererWitness w = wandering_witness(x, m, budget, tol);

  TaskResult out;
  out.verdicts = {{"found", w.found}, {"residual_ok", w.found && w.max_residual <= tol}};
  out.payload = {{"m_dim", m.dim()}, {"budget", budget}, {"found", w.found}};
  if (w.found) {
    out.payload["h_index"] = w.h_index;
    out.payload["m_tilde"] = to_json(w.m_tilde);
    out.payload["residuals"] = w.residuals;
    out.payload["max_residual"] = w.max_residual;
    out.payload["eta_norm"] = w.eta.norm();
  }
  out.pass = w.found && w.max_residual <= tol;
  return out;
}

TaskResult dispatch(const std::string& task, const Context& ctx) {
  if (task == "purity") return run_purity(ctx);
  if (task == "identity") return run_identity(ctx);
  if (task == "cnp") return run_cnp(ctx);
  if (task == "bcl") return run_bcl(ctx);
  if (task == "colligation") return run_colligation(ctx);
  if (task == "decay") return run_decay(ctx);
  if (task == "witness") return run_witness(ctx);
  throw InvalidInput("unknown task \"" + task + "\"");
}

json base_report(const json& config) {
  json r{{"schema_version", kSchemaVersion}, {"library_version", kLibraryVersion}};
  r["scenario_id"] = config.is_object() && config.contains("scenario_id") && config.at("scenario_id").is_string()
                         ? config.at("scenario_id")
                         : json(nullptr);
  r["task"] = config.is_object() && config.contains("task") && config.at("task").is_string() ? config.at("task")
                                                                                            : json(nullptr);
  return r;
}

RunOutcome error_outcome(json report, const std::string& type, const std::string& message) {
  report["pass"] = false;
  report["exit_code"] = kExitInvalid;
  report["verdicts"] = json::object();
  report["payload"] = json::object();
  report["error"] = {{"type", type}, {"message", message}};
  return {kExitInvalid, std::move(report)};
}

}  // namespace

RunOutcome run_config(const json& config, const Overrides& overrides) {
  const auto start = std::chrono::steady_clock::now();
  json report = base_report(config);
  auto finish = [&](RunOutcome o) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.report["timing"] = {{"wall_seconds", secs}};
    return o;
  };
  try {
    if (!config.is_object()) throw InvalidInput("config must be a JSON object");
    for (const auto& [key, value] : config.items()) {
      if (!kTopLevelKeys.count(key)) throw InvalidInput("unknown config field \"" + key + "\"");
    }
    if (config.contains("schema_version") && config.at("schema_version") != kSchemaVersion) {
      throw InvalidInput("unsupported config schema_version");
    }
    if (!report["scenario_id"].is_string() || report["scenario_id"].get<std::string>().empty()) {
      throw InvalidInput("config needs a nonempty string \"scenario_id\"");
    }
    if (!report["task"].is_string() || !kTasks.count(report["task"].get<std::string>())) {
      throw InvalidInput("config needs \"task\" in {purity, identity, cnp, bcl, colligation, decay, witness}");
    }
    const std::string task = report["task"].get<std::string>();
    if (overrides.task && *overrides.task != task) {
      throw InvalidInput("subcommand \"" + *overrides.task + "\" does not match config task \"" + task + "\"");
    }

    Context ctx{config, 0, false, {}};
    if (config.contains("seed")) {
      if (!config.at("seed").is_number_unsigned()) throw InvalidInput("seed must be a nonnegative integer");
      ctx.seed = config.at("seed").get<std::uint64_t>();
      ctx.has_seed = true;
    }
    if (overrides.seed) {
      ctx.seed = *overrides.seed;
      ctx.has_seed = true;
    }
    ctx.tol = default_tolerances();
    auto apply_tol = [&](const std::string& name, double v) {
      if (!ctx.tol.count(name)) throw InvalidInput("unknown tolerance \"" + name + "\"");
      if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("tolerance \"" + name + "\" must be positive");
      ctx.tol[name] = v;
    };
    if (config.contains("tolerances")) {
      for (const auto& [name, v] : config.at("tolerances").items()) {
        if (!v.is_number()) throw InvalidInput("tolerance \"" + name + "\" must be a number");
        apply_tol(name, v.get<double>());
      }
    }
    for (const auto& [name, v] : overrides.tolerances) apply_tol(name, v);

    const TaskResult r = dispatch(task, ctx);
    report["seed"] = ctx.has_seed ? json(ctx.seed) : json(nullptr);
    report["tolerances"] = ctx.tol;
    report["pass"] = r.pass;
    report["exit_code"] = r.pass ? kExitPass : kExitViolation;
    report["verdicts"] = r.verdicts;
    report["payload"] = r.payload;
    return finish({r.pass ? kExitPass : kExitViolation, report});
  } catch (const Error& e) {
    return finish(error_outcome(report, e.kind(), e.what()));
  } catch (const json::exception& e) {
    return finish(error_outcome(report, "invalid_input", e.what()));
  } catch (const std::exception& e) {
    return finish(error_outcome(report, "internal_error", e.what()));
  }
}

RunOutcome run_config_file(const std::filesystem::path& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) {
    json report{{"schema_version", kSchemaVersion}, {"library_version", kLibraryVersion},
                {"scenario_id", nullptr}, {"task", nullptr}, {"timing", {{"wall_seconds", 0.0}}}};
    return error_outcome(report, "invalid_input", "cannot open config " + path.string());
  }
  json config;
  try {
    config = json::parse(in);
  } catch (const json::exception& e) {
    json report{{"schema_version", kSchemaVersion}, {"library_version", kLibraryVersion},
                {"scenario_id", nullptr}, {"task", nullptr}, {"timing", {{"wall_seconds", 0.0}}}};
    return error_outcome(report, "invalid_input", std::string("config is not valid JSON: ") + e.what());
  }
  return run_config(config, overrides);
}

SuiteOutcome run_suite(const std::filesystem::path& manifest, const Overrides& overrides) {
  const auto start = std::chrono::steady_clock::now();
  std::ifstream in(manifest);
  if (!in) throw InvalidInput("cannot open manifest " + manifest.string());
  json m;
  try {
    m = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!m.is_object() || !m.contains("scenarios") || !m.at("scenarios").is_array()) {
    throw InvalidInput("manifest needs a \"scenarios\" array");
  }
  Overrides per_run = overrides;
  per_run.task.reset();

  json results = json::array();
  for (const auto& entry : m.at("scenarios")) {
    if (!entry.is_object() || !entry.contains("config") || !entry.at("config").is_string()) {
      throw InvalidInput("manifest entries need a \"config\" path");
    }
    const std::string rel = entry.at("config").get<std::string>();
    const int expect = entry.value("expect_exit", 0);
    const RunOutcome o = run_config_file(manifest.parent_path() / rel, per_run);
    const json id = o.report.value("scenario_id", json(nullptr));
    results.push_back({{"scenario_id", id.is_string() ? id : json(rel)},
                       {"config", rel},
                       {"expect_exit", expect},
                       {"exit_code", o.exit_code},
                       {"matched", o.exit_code == expect},
                       {"report", o.report}});
  }
  std::stable_sort(results.begin(), results.end(), [](const json& a, const json& b) {
    return a.at("scenario_id").get<std::string>() < b.at("scenario_id").get<std::string>();
  });

  SuiteOutcome out;
  std::size_t matched = 0;
  std::ostringstream csv;
  csv << "scenario_id,task,exit_code,expect_exit,matched,pass\n";
  for (const auto& r : results) {
    matched += r.at("matched").get<bool>() ? 1 : 0;
    const json& task = r.at("report").at("task");
    csv << r.at("scenario_id").get<std::string>() << ',' << (task.is_string() ? task.get<std::string>() : "")
        << ',' << r.at("exit_code").get<int>() << ',' << r.at("expect_exit").get<int>() << ','
        << (r.at("matched").get<bool>() ? "true" : "false") << ','
        << (r.at("report").value("pass", false) ? "true" : "false") << '\n';
  }
  out.exit_code = matched == results.size() ? kExitPass : kExitViolation;
  out.aggregate = {{"schema_version", kSchemaVersion},
                   {"library_version", kLibraryVersion},
                   {"scenario_count", results.size()},
                   {"matched_count", matched},
                   {"pass", out.exit_code == kExitPass},
                   {"results", results}};
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.aggregate["timing"] = {{"wall_seconds", secs}};
  out.summary_csv = csv.str();
  return out;
}

json strip_timing(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) {
      if (k == "timing") continue;
      out[k] = strip_timing(v);
    }
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(strip_timing(v));
    return out;
  }
  return j;
}

}  // namespace rkhs
