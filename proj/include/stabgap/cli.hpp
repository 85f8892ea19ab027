#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stabgap/stabgap.hpp"
#include "stabgap/verify.hpp"

namespace stabgap::cli {

inline constexpr const char* kToolName = "stabgap";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { ok = 0, validation_failure = 1, resource_cap = 2, ledger_failure = 3, usage = 64 };

using json = nlohmann::json;

struct LoadedModel {
  StabilizerModel model;
  std::string source;
  std::string name;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::size_t parse_size(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-') throw ValidationError("invalid " + what + " '" + s + "'");
  return static_cast<std::size_t>(v);
}

/// Model argument: a .stab path, or builtin:toric:<L>, builtin:ising1d:<L>[:open], builtin:ising2d:<L>[:open].
inline LoadedModel load_model(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) != 0) {
    ModelDocument doc = parse_model_document(read_file(spec));
    return {std::move(doc.model), spec, doc.name};
  }
  std::vector<std::string> parts;
  std::stringstream ss(spec.substr(prefix.size()));
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 2) throw ValidationError("builtin model needs a size, e.g. builtin:toric:2");
  const std::size_t l = parse_size(parts[1], "lattice size");
  const bool open = parts.size() == 3 && parts[2] == "open";
  if (parts.size() > 3 || (parts.size() == 3 && !open)) throw ValidationError("unknown builtin model '" + spec + "'");
  if (parts[0] == "toric" && parts.size() == 2) return {build_toric(l), spec, "toric"};
  if (parts[0] == "ising1d") return {build_ising(1, l, !open), spec, "ising1d"};
  if (parts[0] == "ising2d") return {build_ising(2, l, !open), spec, "ising2d"};
  throw ValidationError("unknown builtin model '" + spec + "'");
}

/// Bath argument: glauber, metropolis, or table:<file>.
inline BathSpec make_bath(const std::string& spec, double beta) {
  if (spec == "glauber") return BathSpec::glauber(beta);
  if (spec == "metropolis") return BathSpec::metropolis(beta);
  if (spec.rfind("table:", 0) == 0) return BathSpec::custom(beta, parse_rate_table(read_file(spec.substr(6))));
  throw ValidationError("unknown bath '" + spec + "'; expected glauber, metropolis or table:<file>");
}

/// Ordering argument: builtin:<name> or a .ord path.
inline SiteOrdering load_ordering(const std::string& spec, const StabilizerModel& model) {
  if (spec.rfind("builtin:", 0) == 0) return builtin_ordering(spec.substr(8), model);
  return parse_ordering(read_file(spec), model);
}

inline std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline json rational_json(const Rational& r) { return {{"value", r.to_double()}, {"exact", r.str()}}; }

/// Doubles that may be infinite are emitted as null.
inline json real_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json model_digest(const LoadedModel& m) {
  const GibbsData g = gibbs_data(m.model, 0.0);
  return {{"source", m.source},
          {"n_qubits", m.model.n_qubits()},
          {"n_generators", m.model.n_generators()},
          {"rank", m.model.rank()},
          {"norm_h", rational_json(g.norm_h)},
          {"max_coupling", rational_json(m.model.max_coupling())},
          {"digest", fnv1a(serialize_model(m.model))}};
}

inline json bath_digest(const StabilizerModel& model, const BathSpec& bath, const std::string& spec) {
  return {{"beta", bath.beta}, {"preset", to_string(bath.preset)}, {"spec", spec}, {"h_min", h_min(model, bath)}};
}

inline json slots_json(const SiteOrdering& o) {
  json arr = json::array();
  for (const auto& s : o.slots()) arr.push_back(std::to_string(s.site) + ":" + to_char(s.axis));
  return arr;
}

struct Context {
  std::string json_path;
  bool quiet = false;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  void warn(const std::string& msg) const {
    if (!quiet) *err << "warning: " << msg << "\n";
  }

  void emit(json report) const {
    report["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    const std::string text = report.dump(2) + "\n";
    if (!json_path.empty()) {
      std::ofstream f(json_path, std::ios::binary);
      if (!f) throw ValidationError("cannot write '" + json_path + "'");
      f << text;
    }
    if (!quiet) *out << text;
  }
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral-gap bounds and exact checks for commuting Pauli Hamiltonians", kToolName};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  app.add_option("--json", ctx.json_path, "Also write the JSON report to this file");
  app.add_flag("--quiet", ctx.quiet, "Suppress stdout output and warnings");

  std::string model_spec, bath_spec = "glauber", ordering_spec, variant = "simplified", generator = "davies",
                          method = "coset", output_path, gap_spec = "auto";
  double beta = 0.0, tol = 1e-12;
  std::size_t lattice = 2;
  int dims = 1;
  bool open = false, exhaustive = false;
  std::optional<std::uint64_t> samples, seed;
  std::uint64_t verify_seed = 1;

  auto* build = app.add_subcommand("build", "Write a builtin model as a .stab file");
  build->require_subcommand(1);
  auto* build_toric_cmd = build->add_subcommand("toric", "Toric code on an L x L periodic lattice");
  build_toric_cmd->add_option("--L", lattice, "Side length")->required();
  build_toric_cmd->add_option("-o,--output", output_path, "Output .stab path (stdout if omitted)");
  auto* build_ising_cmd = build->add_subcommand("ising", "Classical Ising model with Z Z bonds");
  build_ising_cmd->add_option("--dims", dims, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  build_ising_cmd->add_option("--L", lattice, "Side length")->required();
  build_ising_cmd->add_flag("--open", open, "Open boundary conditions");
  build_ising_cmd->add_option("-o,--output", output_path, "Output .stab path (stdout if omitted)");

  auto* validate = app.add_subcommand("validate", "Parse and validate a model");
  validate->add_option("model", model_spec, "Model file or builtin:<name>:<L>")->required();

  auto* high_temp = app.add_subcommand("high-temp", "Kappa condition numbers and the high-temperature gap bound");
  high_temp->add_option("model", model_spec)->required();
  high_temp->add_option("--beta", beta)->required();
  high_temp->add_option("--variant", variant)->check(CLI::IsMember({"simplified", "proposition", "numeric"}));
  high_temp->add_option("--bath", bath_spec);

  auto* crit = app.add_subcommand("critical-beta", "Largest beta with kappa(beta) < 1");
  crit->add_option("model", model_spec)->required();
  crit->add_option("--variant", variant)->check(CLI::IsMember({"simplified", "proposition", "numeric"}));
  crit->add_option("--tol", tol);

  auto* barrier = app.add_subcommand("barrier", "Maximum energy penalty along one ordering");
  barrier->add_option("model", model_spec)->required();
  barrier->add_option("--ordering", ordering_spec, "file.ord or builtin:<name>")->required();
  auto* ex_flag = barrier->add_flag("--exhaustive", exhaustive, "Enumerate all 4^N Paulis (default)");
  auto* samples_opt = barrier->add_option("--samples", samples, "Number of seeded samples");
  auto* seed_opt = barrier->add_option("--seed", seed, "Sampler seed");
  samples_opt->needs(seed_opt);
  seed_opt->needs(samples_opt);
  ex_flag->excludes(samples_opt);
  auto* barrier_beta = barrier->add_option("--beta", beta, "Also evaluate the low-temperature bound");
  barrier->add_option("--bath", bath_spec);

  auto* barrier_exact = app.add_subcommand("barrier-exact", "Exact generalized energy barrier over all orderings");
  barrier_exact->add_option("model", model_spec)->required();
  auto* exact_beta = barrier_exact->add_option("--beta", beta, "Also evaluate the low-temperature bound");
  barrier_exact->add_option("--bath", bath_spec);

  auto* gap = app.add_subcommand("gap", "Exact spectral gap of a generator");
  gap->add_option("model", model_spec)->required();
  gap->add_option("--beta", beta)->required();
  gap->add_option("--bath", bath_spec);
  gap->add_option("--generator", generator)->check(CLI::IsMember({"davies", "heatbath"}));
  gap->add_option("--method", method)->check(CLI::IsMember({"dense", "coset"}));

  auto* mixing = app.add_subcommand("mixing-time", "Mixing-time upper bound from the spectral gap");
  mixing->add_option("model", model_spec)->required();
  mixing->add_option("--beta", beta)->required();
  mixing->add_option("--gap", gap_spec, "Gap value, or auto to compute the Davies gap");
  mixing->add_option("--bath", bath_spec);
  mixing->add_option("--generator", generator)->check(CLI::IsMember({"davies", "heatbath"}));

  auto* verify = app.add_subcommand("verify", "Run the inequality and residual ledger");
  verify->add_option("model", model_spec)->required();
  verify->add_option("--beta", beta)->required();
  verify->add_option("--bath", bath_spec);
  verify->add_option("--ordering", ordering_spec, "Extra ordering for the low-temperature bound");
  verify->add_option("--seed", verify_seed, "Seed for random observables");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ExitCode::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ExitCode::ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return ExitCode::usage;
  }

  try {
    if (build->parsed()) {
      const bool toric = build_toric_cmd->parsed();
      const StabilizerModel m = toric ? build_toric(lattice) : build_ising(dims, lattice, !open);
      const std::string label = toric ? "toric L=" + std::to_string(lattice)
                                      : "ising" + std::to_string(dims) + "d L=" + std::to_string(lattice) +
                                            (open ? " open" : " periodic");
      const std::string text = serialize_model(m, toric ? "toric" : "ising", label);
      if (output_path.empty()) {
        out << text;
        return ExitCode::ok;
      }
      std::ofstream f(output_path, std::ios::binary);
      if (!f) throw ValidationError("cannot write '" + output_path + "'");
      f << text;
      ctx.emit({{"command", "build"},
                {"output", output_path},
                {"model", model_digest({m, output_path, toric ? "toric" : "ising"})}});
      return ExitCode::ok;
    }

    const LoadedModel lm = load_model(model_spec);
    const StabilizerModel& model = lm.model;

    if (validate->parsed()) {
      json r = {{"command", "validate"}, {"valid", true}, {"model", model_digest(lm)}};
      r["realized_syndromes"] = model.rank() < 63 ? json(std::uint64_t{1} << model.rank()) : json(nullptr);
      ctx.emit(r);
      return ExitCode::ok;
    }

    if (high_temp->parsed()) {
      const BathSpec bath = make_bath(bath_spec, beta);
      const KappaVariant v = parse_kappa_variant(variant);
      const AdjacencyData adj = adjacency(model);
      const HighTempBound hb = high_temp_gap_bound(model, bath, v);
      json kap = json::object();
      for (auto kv : {KappaVariant::simplified, KappaVariant::proposition, KappaVariant::numeric}) {
        const KappaReport kr = kappa(model, beta, kv, adj);
        kap[to_string(kv)] = {{"kappa", kr.kappa}, {"argmax_site", kr.argmax}};
      }
      if (hb.vacuous) ctx.warn("kappa >= 1 at this beta; the high-temperature bound is vacuous");
      ctx.emit({{"command", "high-temp"},
                {"model", model_digest(lm)},
                {"bath", bath_digest(model, bath, bath_spec)},
                {"variant", to_string(v)},
                {"kappa", kap},
                {"s_star_max", hb.s_star_max},
                {"s_star_min", hb.s_star_min},
                {"bound", {{"formula", "high_temp_kappa"}, {"value", hb.value}, {"kappa", hb.kappa}, {"vacuous", hb.vacuous}}}});
      return ExitCode::ok;
    }

    if (crit->parsed()) {
      const KappaVariant v = parse_kappa_variant(variant);
      const CriticalBeta cb = critical_beta(model, v, tol);
      const double first = first_order_beta_estimate(model);
      const double j = model.max_coupling().to_double();
      ctx.emit({{"command", "critical-beta"},
                {"model", model_digest(lm)},
                {"variant", to_string(v)},
                {"finite", cb.finite()},
                {"beta_star", real_json(cb.beta)},
                {"inverse_beta_star", real_json(1.0 / (cb.beta * j))},
                {"kappa_at_root", cb.kappa_at_root},
                {"root_residual", cb.finite() ? json(std::abs(cb.kappa_at_root - 1.0)) : json(nullptr)},
                {"first_order_beta", real_json(first)},
                {"inverse_first_order_beta", real_json(1.0 / (first * j))}});
      return ExitCode::ok;
    }

    if (barrier->parsed() || barrier_exact->parsed()) {
      json r = {{"model", model_digest(lm)}};
      Rational eps;
      std::size_t l_star = 2 * model.n_qubits();
      if (barrier->parsed()) {
        const SiteOrdering ord = load_ordering(ordering_spec, model);
        const MaxPenaltyResult mp =
            samples ? max_penalty_sampled(model, ord, *samples, *seed) : max_penalty_exhaustive(model, ord);
        eps = mp.value;
        l_star = ord.l_star();
        r["command"] = "barrier";
        r["ordering"] = ordering_spec;
        r["mode"] = mp.exact ? "exhaustive" : "sampled";
        r["exact"] = mp.exact;
        r["evaluated"] = mp.evaluated;
        if (!mp.exact) r["seed"] = *seed;
        r["max_penalty"] = mp.value.to_double();
        r["max_penalty_exact"] = mp.value.str();
        r["violated_count"] = mp.witness_penalty.violated_count;
        r["witness"] = mp.witness.str();
        r["argmax_step"] = mp.witness_penalty.argmax_step;
        r["l_star"] = l_star;
        if (!mp.exact) ctx.warn("sampled max penalty is a lower bound; no gap bound is implied");
      } else {
        const BarrierResult br = generalized_barrier_exact(model);
        eps = br.value;
        r["command"] = "barrier-exact";
        r["epsilon_bar"] = br.value.to_double();
        r["epsilon_bar_exact"] = br.value.str();
        r["violated_count"] = br.violated_count;
        r["optimal_ordering"] = slots_json(br.optimal);
        r["l_star"] = l_star;
      }
      const bool with_bound = barrier->parsed() ? barrier_beta->count() > 0 : exact_beta->count() > 0;
      if (with_bound && (barrier_exact->parsed() || !samples)) {
        const BathSpec bath = make_bath(bath_spec, beta);
        const double hm = h_min(model, bath);
        r["bath"] = bath_digest(model, bath, bath_spec);
        r["bound"] = {{"formula", "low_temp_barrier"}, {"value", low_temp_gap_bound(eps, beta, hm, l_star)}};
      }
      ctx.emit(r);
      return ExitCode::ok;
    }

    if (gap->parsed()) {
      const BathSpec bath = make_bath(bath_spec, beta);
      const GapResult g = generator_gap(model, bath, parse_generator_family(generator), method);
      ctx.emit({{"command", "gap"},
                {"model", model_digest(lm)},
                {"bath", bath_digest(model, bath, bath_spec)},
                {"generator", generator},
                {"method", g.method},
                {"gap", g.gap},
                {"zero_modes", g.zero_modes},
                {"largest_eigenvalue", g.largest}});
      return ExitCode::ok;
    }

    if (mixing->parsed()) {
      const BathSpec bath = make_bath(bath_spec, beta);
      double lambda = 0.0;
      std::string gap_source = "given";
      if (gap_spec == "auto") {
        lambda = coset_gap(model, bath, parse_generator_family(generator)).gap;
        gap_source = generator + " coset";
      } else {
        std::size_t used = 0;
        try {
          lambda = std::stod(gap_spec, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != gap_spec.size()) throw ValidationError("invalid --gap value '" + gap_spec + "'");
      }
      const MixingTimeBound mt = mixing_time_bound(lambda, gibbs_data(model, beta));
      ctx.emit({{"command", "mixing-time"},
                {"model", model_digest(lm)},
                {"bath", bath_digest(model, bath, bath_spec)},
                {"gap", lambda},
                {"gap_source", gap_source},
                {"bound",
                 {{"formula", "tmix"},
                  {"value", mt.exact},
                  {"norm_variant", mt.norm_variant},
                  {"log_rho_inv_norm", mt.log_rho_inv_norm},
                  {"log_rho_inv_bound", mt.log_rho_inv_bound}}}});
      return ExitCode::ok;
    }

    if (verify->parsed()) {
      const BathSpec bath = make_bath(bath_spec, beta);
      VerifyOptions opt;
      opt.seed = verify_seed;
      if (!ordering_spec.empty()) opt.orderings.emplace_back(ordering_spec, load_ordering(ordering_spec, model));
      const VerifyReport vr = run_verification(model, bath, opt);
      json ledger = json::array();
      for (const auto& e : vr.entries)
        ledger.push_back({{"name", e.name}, {"pass", e.pass}, {"margin", e.margin}, {"detail", e.detail}});
      ctx.emit({{"command", "verify"},
                {"model", model_digest(lm)},
                {"bath", bath_digest(model, bath, bath_spec)},
                {"davies_gap", vr.davies_gap},
                {"heatbath_gap", vr.heatbath_gap},
                {"all_pass", vr.all_pass()},
                {"ledger", ledger}});
      if (!vr.all_pass()) {
        if (!ctx.quiet)
          for (const auto& e : vr.entries)
            if (!e.pass) err << "FAILED " << e.name << ": " << e.detail << "\n";
        return ExitCode::ledger_failure;
      }
      return ExitCode::ok;
    }
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << "\n";
    return ExitCode::resource_cap;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::validation_failure;
  }
  return ExitCode::usage;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace stabgap::cli
