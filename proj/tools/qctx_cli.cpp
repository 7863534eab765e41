// qctx: build context posets, compute valuations and interval assignments,
// and search for global sections.
//
// Exit codes: 0 success, 1 a checked property failed (reported in the
// output), 2 input or usage error.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qctx/qctx.hpp"

namespace {

using qctx::Json;

struct RunConfig {
  std::string command;
  std::string rays;
  std::string poset;
  std::string input;
  bool close = false;
  bool no_close = false;
  std::string state = "maximally-mixed";
  std::string r = "1";
  std::string backend = "exact";
  double eps = qctx::kDefaultTolerance;
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool timing = false;
  bool no_exclusivity = false;
  bool no_unit = false;
  std::size_t samples = 10;
  std::size_t limit = 0;

  Json to_json() const {
    Json j = {{"command", command}, {"backend", backend}, {"threads", threads}, {"timing", timing}};
    if (!rays.empty()) j["rays"] = rays;
    if (!poset.empty()) j["poset"] = poset;
    if (command == "build-poset") j["close"] = close;
    if (command == "ks-check") {
      j["close"] = !no_close;
      j["limit"] = limit;
    }
    if (command == "valuate" || command == "intervals") {
      j["state"] = state;
      j["r"] = r;
    }
    if (command == "valuate") {
      j["exclusivity"] = !no_exclusivity;
      j["unit"] = !no_unit;
    }
    if (command == "verify-axioms") {
      j["seed"] = seed;
      j["samples"] = samples;
    }
    if (backend == "float") j["eps"] = eps;
    return j;
  }
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw qctx::InputError("cannot write " + cfg.out);
  f << text;
}

template <qctx::Backend B>
qctx::ContextPoset<B> load_poset(const RunConfig& cfg, bool close) {
  if (!cfg.rays.empty() && !cfg.poset.empty()) throw qctx::InputError("give either --rays or --poset, not both");
  if (!cfg.rays.empty()) {
    auto exact = qctx::poset_from_rayset(qctx::load_rayset(cfg.rays), close);
    if constexpr (B::is_exact) {
      return exact;
    } else {
      return qctx::poset_from_json<B>(qctx::poset_to_json(exact));
    }
  }
  if (!cfg.poset.empty()) {
    auto p = qctx::poset_from_json<B>(qctx::read_json_file(cfg.poset));
    if (!close) return p;
    return qctx::build_poset<B>(p.dim(), p.contexts(), true);
  }
  throw qctx::InputError("an input is required: --rays or --poset");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

template <qctx::Backend B>
struct ParsedState {
  qctx::DensityMatrix<B> rho;
  std::optional<std::vector<typename B::Scalar>> psi;
};

template <qctx::Backend B>
ParsedState<B> parse_state(const std::string& spec, std::size_t dim) {
  using Scalar = typename B::Scalar;
  using Real = typename B::Real;
  if (spec == "maximally-mixed") return {qctx::DensityMatrix<B>::maximally_mixed(dim), std::nullopt};
  if (spec.rfind("basis-", 0) == 0) {
    std::size_t k = 0;
    try {
      k = std::stoul(spec.substr(6));
    } catch (const std::exception&) {
      throw qctx::InputError("bad state '" + spec + "'");
    }
    if (k >= dim) throw qctx::InputError("state " + spec + " is outside dimension " + std::to_string(dim));
    std::vector<Scalar> psi(dim);
    psi[k] = Scalar(1);
    return {qctx::DensityMatrix<B>::basis_state(dim, k), psi};
  }
  auto parse_list = [&](const std::string& body) {
    std::vector<Real> xs;
    for (const auto& t : split(body, ',')) xs.push_back(B::parse_real(t));
    if (xs.size() != dim) {
      throw qctx::DimensionError("state has " + std::to_string(xs.size()) + " entries but the poset has dimension " +
                                 std::to_string(dim));
    }
    return xs;
  };
  if (spec.rfind("diag:", 0) == 0) {
    const auto w = parse_list(spec.substr(5));
    return {qctx::DensityMatrix<B>::diagonal(w), std::nullopt};
  }
  if (spec.rfind("pure:", 0) == 0) {
    std::vector<Scalar> psi;
    for (const auto& x : parse_list(spec.substr(5))) psi.push_back(B::from_real(x));
    return {qctx::DensityMatrix<B>::pure(psi), psi};
  }
  auto m = qctx::matrix_from_json<B>(qctx::read_json_file(spec));
  qctx::require_same_dim(m.rows(), dim, "state");
  return {qctx::DensityMatrix<B>::from_matrix(std::move(m)), std::nullopt};
}

int exit_for(bool ok) { return ok ? 0 : 1; }

template <qctx::Backend B>
int cmd_build_poset(const RunConfig& cfg) {
  const auto poset = load_poset<B>(cfg, cfg.close);
  Json j = qctx::poset_to_json(poset);
  j["config"] = cfg.to_json();
  j["summary"] = {{"contexts", poset.size()},
                  {"maximal", poset.shape().maximal().size()},
                  {"morphisms", poset.shape().morphism_count()},
                  {"includes_trivial", true}};
  emit(cfg, qctx::dump_json(j));
  return 0;
}

template <qctx::Backend B>
int cmd_valuate(const RunConfig& cfg) {
  const auto poset = load_poset<B>(cfg, false);
  const auto r = B::parse_real(cfg.r);
  qctx::require_threshold<B>(r);
  const auto state = parse_state<B>(cfg.state, poset.dim());
  const auto table = qctx::valuation_table(state.rho, poset, r);
  const auto axioms = qctx::check_valuation(table, {!cfg.no_exclusivity, !cfg.no_unit});
  const auto naturality = qctx::natural_transformation_check(table);
  Json j = {{"config", cfg.to_json()},
            {"contexts", qctx::contexts_to_json(poset.shape())},
            {"valuation", qctx::valuation_to_json(table)},
            {"axioms", qctx::properties_to_json(axioms)},
            {"naturality", qctx::property_to_json(naturality)},
            {"includes_trivial", true}};
  emit(cfg, qctx::dump_json(j));
  return exit_for(qctx::all_hold(axioms) && naturality.holds());
}

template <qctx::Backend B>
int cmd_intervals(const RunConfig& cfg) {
  const auto poset = load_poset<B>(cfg, false);
  const auto& shape = poset.shape();
  const auto r = B::parse_real(cfg.r);
  qctx::require_threshold<B>(r);
  const auto state = parse_state<B>(cfg.state, poset.dim());
  const auto family = qctx::state_family(state.rho, poset);

  const auto truth = qctx::true_subobject(state.rho, poset);
  const auto truth_check = qctx::check_subobject_of_sigma(shape, truth);
  const auto table = qctx::valuation_table(shape, family, r);
  const auto from_valuation = qctx::interval_from_valuation(table);
  const auto valuation_check = qctx::check_subobject_of_sigma(shape, from_valuation);
  const auto global = qctx::global_element_from_valuation(table);
  Json global_json = {{"infima", qctx::intervals_to_json(global.infima)},
                      {"matching", qctx::property_to_json(global.matching)}};
  if (global.ok()) {
    const auto induced = qctx::interval_from_global_element(shape, global.infima);
    global_json["induced_check"] = qctx::properties_to_json(qctx::check_subobject_of_sigma(shape, induced));
  }
  const auto t = qctx::subobject_of_G(shape, family, r);
  const auto g_check = qctx::check_subobject_of_G(shape, t);
  const auto semantic = qctx::check_semantic_subobject(shape, t, !cfg.no_exclusivity);

  Json j = {{"config", cfg.to_json()},
            {"contexts", qctx::contexts_to_json(shape)},
            {"true_subobject", {{"intervals", qctx::intervals_to_json(truth)},
                                {"check", qctx::properties_to_json(truth_check)}}},
            {"valuation_interval", {{"intervals", qctx::intervals_to_json(from_valuation)},
                                    {"check", qctx::properties_to_json(valuation_check)}}},
            {"global_element", std::move(global_json)},
            {"subobject_of_G", {{"family", qctx::family_to_json(t)},
                                {"check", qctx::properties_to_json(g_check)},
                                {"semantic", qctx::properties_to_json(semantic)}}},
            {"ideal_valuation", nullptr},
            {"includes_trivial", true}};
  bool ok = truth_check[0].holds() && valuation_check[0].holds() && global.ok() && g_check[0].holds() &&
            qctx::all_hold(semantic);
  if (state.psi) {
    const auto ideal = qctx::ideal_valuation<B>(*state.psi, poset);
    const bool equal = ideal == truth;
    j["ideal_valuation"] = {{"intervals", qctx::intervals_to_json(ideal)}, {"equals_true_subobject", equal}};
    ok = ok && equal;
  }
  emit(cfg, qctx::dump_json(j));
  return exit_for(ok);
}

int cmd_ks_check(const RunConfig& cfg) {
  const auto poset = load_poset<qctx::ExactBackend>(cfg, !cfg.no_close);
  const auto start = std::chrono::steady_clock::now();
  const auto result = qctx::find_global_section(poset.shape(), {cfg.threads});
  const auto elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  Json j = {{"config", cfg.to_json()},
            {"contexts", qctx::contexts_to_json(poset.shape())},
            {"section", qctx::section_to_json(result.section)},
            {"nodes_explored", result.nodes},
            {"elapsed_ms", cfg.timing ? Json(elapsed) : Json(nullptr)},
            {"statement", result.section ? "a global section exists over this finite sub-poset"
                                         : "no global section over this finite sub-poset"}};
  bool ok = true;
  if (result.section) {
    const auto valid = qctx::validate_section(poset, *result.section);
    j["validation"] = qctx::property_to_json(valid);
    ok = valid.holds();
  }
  if (cfg.limit > 0) {
    const auto all = qctx::enumerate_global_sections(poset.shape(), cfg.limit);
    j["enumeration"] = {{"count", all.sections.size()}, {"truncated", all.truncated}, {"sections", all.sections}};
  }
  emit(cfg, qctx::dump_json(j));
  return exit_for(ok);
}

struct Aggregate {
  std::vector<qctx::PropertyResult> results;

  void add(const qctx::PropertyResult& r, const std::string& prefix, std::size_t sample) {
    const std::string name = prefix + "." + r.name;
    auto it = std::find_if(results.begin(), results.end(), [&](const auto& x) { return x.name == name; });
    if (it == results.end()) {
      results.emplace_back(name, r.enabled);
      it = results.end() - 1;
    }
    it->checked += r.checked;
    it->violations += r.violations;
    if (!it->first && r.first) {
      it->first = r.first;
      it->first->detail = "sample " + std::to_string(sample) + (r.first->detail.empty() ? "" : ": " + r.first->detail);
    }
  }
  void add(const std::vector<qctx::PropertyResult>& rs, const std::string& prefix, std::size_t sample) {
    for (const auto& r : rs) add(r, prefix, sample);
  }
};

template <qctx::Backend B>
int cmd_verify_axioms(const RunConfig& cfg) {
  qctx::Rng rng(cfg.seed);
  std::optional<qctx::ContextPoset<B>> fixed;
  if (!cfg.rays.empty() || !cfg.poset.empty()) fixed = load_poset<B>(cfg, true);
  Aggregate agg;
  std::uniform_int_distribution<std::size_t> dims(2, 4);
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    const auto poset = fixed ? *fixed : qctx::random_poset<B>(dims(rng), rng);
    const auto& shape = poset.shape();
    const auto rho = qctx::random_density<B>(poset.dim(), rng);
    const auto family = qctx::state_family(rho, poset);
    agg.add(qctx::coarse_functoriality_check(shape), "coarse", s);
    agg.add(qctx::clo_iso_check(poset), "clopen", s);
    agg.add(qctx::check_state_family(shape, family), "state", s);
    for (const char* rtext : {"1", "0.6", "0.8"}) {
      const auto table = qctx::valuation_table(shape, family, B::parse_real(rtext));
      const std::string prefix = std::string("valuation[r=") + rtext + "]";
      agg.add(qctx::check_valuation(table), prefix, s);
      agg.add(qctx::natural_transformation_check(table), prefix, s);
      auto t = qctx::subobject_of_G(shape, family, B::parse_real(rtext));
      agg.add(qctx::check_subobject_of_G(shape, t)[0], std::string("subobject_of_G[r=") + rtext + "]", s);
    }
    const auto table = qctx::valuation_table(shape, family, typename B::Real(1));
    agg.add(qctx::check_subobject_of_sigma(shape, qctx::true_subobject(rho, poset)), "true_subobject", s);
    agg.add(qctx::global_element_from_valuation(table).matching, "global_element[r=1]", s);
    agg.add(qctx::check_semantic_subobject(shape, qctx::true_set_family(table)), "semantic[r=1]", s);
  }
  Json j = {{"config", cfg.to_json()}, {"properties", qctx::properties_to_json(agg.results)}};
  emit(cfg, qctx::dump_json(j));
  return exit_for(qctx::all_hold(agg.results));
}

void describe(const Json& j, const std::string& path, std::ostream& os) {
  if (j.is_object()) {
    if (j.contains("name") && j.contains("holds") && j.contains("checked")) {
      os << (j["holds"].get<bool>() ? "PASS " : "FAIL ") << path << " " << j["name"].get<std::string>()
         << " (checked " << j["checked"] << ", violations " << j["violations"] << ")";
      if (!j["enabled"].get<bool>()) os << " [disabled]";
      os << "\n";
      return;
    }
    for (const auto& [key, value] : j.items()) describe(value, path.empty() ? key : path + "." + key, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_object()) describe(j[i], path + "[" + std::to_string(i) + "]", os);
    }
  }
}

int cmd_report(const RunConfig& cfg) {
  const Json j = qctx::read_json_file(cfg.input);
  std::ostringstream os;
  if (j.contains("config")) os << "command: " << j["config"].value("command", "?") << "\n";
  for (const char* key : {"section", "nodes_explored", "statement", "summary"}) {
    if (j.contains(key)) os << key << ": " << j[key].dump() << "\n";
  }
  describe(j, "", os);
  emit(cfg, os.str());
  return 0;
}

template <template <class> class F>
int dispatch(const RunConfig& cfg) {
  if (cfg.backend == "exact") return F<qctx::ExactBackend>::run(cfg);
  if (cfg.backend == "float") {
    qctx::ScopedTolerance eps(cfg.eps);
    return F<qctx::FloatBackend>::run(cfg);
  }
  throw qctx::InputError("unknown backend '" + cfg.backend + "'");
}

template <class B>
struct BuildPoset {
  static int run(const RunConfig& c) { return cmd_build_poset<B>(c); }
};
template <class B>
struct Valuate {
  static int run(const RunConfig& c) { return cmd_valuate<B>(c); }
};
template <class B>
struct Intervals {
  static int run(const RunConfig& c) { return cmd_intervals<B>(c); }
};
template <class B>
struct VerifyAxioms {
  static int run(const RunConfig& c) { return cmd_verify_axioms<B>(c); }
};

void error_exit(const std::string& kind, const std::string& message) {
  std::cerr << Json({{"error", message}, {"kind", kind}}).dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Context posets, sieve-valued valuations and global-section search"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--backend", cfg.backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--eps", cfg.eps, "tolerance of the float backend");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--threads", cfg.threads, "worker threads");
    sub->add_flag("--timing", cfg.timing, "record wall time in the report");
  };
  auto inputs = [&](CLI::App* sub) {
    sub->add_option("--rays", cfg.rays, "ray-set JSON file");
    sub->add_option("--poset", cfg.poset, "poset JSON file");
  };
  auto state = [&](CLI::App* sub) {
    sub->add_option("--state", cfg.state,
                    "maximally-mixed, basis-k, diag:w0,w1,..., pure:v0,v1,... or a density-matrix file");
    sub->add_option("--r", cfg.r, "probability threshold in (0, 1]");
  };

  auto* build = app.add_subcommand("build-poset", "build a context poset from rays or a poset file");
  inputs(build);
  build->add_flag("--close", cfg.close, "close under pairwise meets");
  common(build);

  auto* valuate = app.add_subcommand("valuate", "valuation table of a state and its axiom report");
  inputs(valuate);
  state(valuate);
  valuate->add_flag("--no-exclusivity", cfg.no_exclusivity, "do not require exclusivity");
  valuate->add_flag("--no-unit", cfg.no_unit, "do not require the unit condition");
  common(valuate);

  auto* intervals = app.add_subcommand("intervals", "interval assignments, global elements and subobjects");
  inputs(intervals);
  state(intervals);
  intervals->add_flag("--no-exclusivity", cfg.no_exclusivity, "do not require exclusivity");
  common(intervals);

  auto* ks = app.add_subcommand("ks-check", "search for a global section of the spectral presheaf");
  inputs(ks);
  ks->add_flag("--no-close", cfg.no_close, "do not close the poset under meets");
  ks->add_option("--limit", cfg.limit, "also enumerate up to this many sections");
  common(ks);

  auto* verify = app.add_subcommand("verify-axioms", "run the invariant suite on random or given posets");
  inputs(verify);
  verify->add_option("--seed", cfg.seed, "random seed");
  verify->add_option("--samples", cfg.samples, "number of random samples");
  common(verify);

  auto* report = app.add_subcommand("report", "summarize a JSON report as text");
  report->add_option("--in", cfg.input, "report file")->required();
  report->add_option("--out", cfg.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) {
      cfg.command = "build-poset";
      return dispatch<BuildPoset>(cfg);
    }
    if (*valuate) {
      cfg.command = "valuate";
      return dispatch<Valuate>(cfg);
    }
    if (*intervals) {
      cfg.command = "intervals";
      return dispatch<Intervals>(cfg);
    }
    if (*ks) {
      cfg.command = "ks-check";
      return cmd_ks_check(cfg);
    }
    if (*verify) {
      cfg.command = "verify-axioms";
      return dispatch<VerifyAxioms>(cfg);
    }
    cfg.command = "report";
    return cmd_report(cfg);
  } catch (const qctx::InputError& e) {
    error_exit("input", e.what());
  } catch (const qctx::DimensionError& e) {
    error_exit("dimension", e.what());
  } catch (const qctx::ValidationError& e) {
    error_exit("validation", e.what());
  } catch (const qctx::Error& e) {
    error_exit("error", e.what());
  } catch (const std::exception& e) {
    error_exit("internal", e.what());
  }
  return 2;
}
