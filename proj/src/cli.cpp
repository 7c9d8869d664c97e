#include "mvote/cli.hpp"

#include <CLI11.hpp>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <thread>

#include "mvote/analytic.hpp"
#include "mvote/diagnose.hpp"
#include "mvote/grid.hpp"
#include "mvote/montecarlo.hpp"
#include "mvote/oracle.hpp"

namespace mvote::cli {

using nlohmann::json;

namespace {

/// Flags as given on the command line. Values stay as text until they are
/// merged into the JSON document so flags and files share one parser.
struct Flags {
  std::string config_path;
  std::optional<std::string> n, p, q, pi, model, gamma, lambda, beta_concentration;
  std::optional<std::string> p_min, p_max, q_min, q_max, step, resolution;
  bool include_half = false;
  bool dump_config = false;
  std::string format;
  std::string out_path;
  std::optional<std::string> threads;
  // simulate
  std::optional<std::string> seed;
  std::string stream = "0";
  std::string reps = "100000";
  std::optional<std::string> label;
  // oracle
  bool pmf = false;
  // diagnose
  std::string input_path;
  bool ordered = false;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& field, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(value))
    throw Error(ErrorCode::BadParameter, field + ": '" + text + "' is not a finite real number");
  return value;
}

long long parse_integer(const std::string& field, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const long long value = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE)
    throw Error(ErrorCode::BadParameter, field + ": '" + text + "' is not an integer");
  return value;
}

std::uint64_t parse_u64(const std::string& field, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || text.front() == '-' || end != text.c_str() + text.size() || errno == ERANGE)
    throw Error(ErrorCode::BadParameter, field + ": '" + text + "' is not an unsigned 64-bit integer");
  return value;
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  try {
    json doc = json::parse(in);
    if (!doc.is_object()) throw Error(ErrorCode::BadParameter, "config file must hold a JSON object");
    return doc;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadParameter, "config file '" + path + "': " + e.what());
  }
}

// Overlays command-line flags onto the config document.
json merge_flags(json doc, const Flags& f) {
  auto set_real = [&](const char* key, const std::optional<std::string>& v) {
    if (v) doc[key] = parse_real(key, *v);
  };
  if (f.n) {
    if (*f.n == "asymptotic")
      doc["n"] = "asymptotic";
    else
      doc["n"] = parse_integer("n", *f.n);
  }
  set_real("p", f.p);
  set_real("q", f.q);
  set_real("pi", f.pi);
  if (f.model) doc["model"] = *f.model;
  set_real("gamma", f.gamma);
  set_real("lambda", f.lambda);
  set_real("beta_concentration", f.beta_concentration);
  set_real("p_min", f.p_min);
  set_real("p_max", f.p_max);
  set_real("q_min", f.q_min);
  set_real("q_max", f.q_max);
  set_real("step", f.step);
  if (f.resolution) doc["resolution"] = parse_integer("resolution", *f.resolution);
  if (f.include_half) doc["include_half"] = true;
  return doc;
}

double get_real(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_number()) throw Error(ErrorCode::BadParameter, std::string(key) + " must be a number");
  return v.get<double>();
}

CorrelationModel model_from(const json& doc) {
  const std::string name = doc.value("model", std::string("independent"));
  auto reject = [&](const char* key, const char* owner) {
    if (doc.contains(key))
      throw Error(ErrorCode::BadParameter,
                  std::string(key) + " applies only to model " + owner + ", not '" + name + "'");
  };
  if (name == "independent") {
    reject("gamma", "geometric");
    reject("lambda", "equicorrelated");
    Independent ind;
    if (doc.contains("beta_concentration")) ind.concentration = get_real(doc, "beta_concentration", 0.0);
    return ind;
  }
  if (name == "geometric") {
    reject("lambda", "equicorrelated");
    reject("beta_concentration", "independent");
    if (!doc.contains("gamma")) throw Error(ErrorCode::BadParameter, "model geometric requires gamma in (0,1)");
    return Geometric{get_real(doc, "gamma", 0.0)};
  }
  if (name == "equicorrelated") {
    reject("gamma", "geometric");
    reject("beta_concentration", "independent");
    if (!doc.contains("lambda")) throw Error(ErrorCode::BadParameter, "model equicorrelated requires lambda in (0,1)");
    return Equicorrelated{get_real(doc, "lambda", 0.0)};
  }
  throw Error(ErrorCode::BadParameter,
              "model: '" + name + "' is not one of independent|geometric|equicorrelated");
}

json model_to_json(const CorrelationModel& model) {
  json j;
  j["model"] = model_name(model);
  if (const auto* ind = std::get_if<Independent>(&model); ind && ind->concentration)
    j["beta_concentration"] = *ind->concentration;
  if (const auto* geo = std::get_if<Geometric>(&model)) j["gamma"] = geo->gamma;
  if (const auto* eq = std::get_if<Equicorrelated>(&model)) j["lambda"] = eq->lambda;
  return j;
}

EnsembleConfig ensemble_from(const json& doc) {
  RawEnsembleConfig raw;
  if (!doc.contains("n")) throw Error(ErrorCode::BadSize, "n is required (a positive integer)");
  const json& n = doc.at("n");
  if (!n.is_number_integer()) throw Error(ErrorCode::BadSize, "n must be a positive integer");
  raw.n = n.get<long long>();
  if (!doc.contains("p") || !doc.contains("q"))
    throw Error(ErrorCode::RateOutOfRange, "p and q are required, each in the open interval (0,1)");
  raw.p = get_real(doc, "p", 0.0);
  raw.q = get_real(doc, "q", 0.0);
  raw.pi = get_real(doc, "pi", 0.5);
  raw.model = model_from(doc);
  return validate_config(raw);
}

json config_to_json(const EnsembleConfig& cfg) {
  json j = model_to_json(cfg.model());
  j["n"] = cfg.n();
  j["p"] = cfg.rates().p();
  j["q"] = cfg.rates().q();
  j["pi"] = cfg.prior().pi();
  return j;
}

GridSpec grid_from(const json& doc) {
  RawGridSpec raw;
  raw.p_min = get_real(doc, "p_min", raw.p_min);
  raw.p_max = get_real(doc, "p_max", raw.p_max);
  raw.q_min = get_real(doc, "q_min", raw.q_min);
  raw.q_max = get_real(doc, "q_max", raw.q_max);
  raw.pi = get_real(doc, "pi", 0.5);
  raw.model = model_from(doc);
  raw.include_half = doc.value("include_half", false);
  if (doc.contains("step") && doc.contains("resolution"))
    throw Error(ErrorCode::BadParameter, "give either step or resolution, not both");
  auto get_resolution = [&](const char* key) {
    const json& r = doc.at(key);
    if (!r.is_number_integer()) throw Error(ErrorCode::BadSize, std::string(key) + " must be an integer");
    return r.get<int>();
  };
  const bool per_axis = doc.contains("p_resolution") || doc.contains("q_resolution");
  if (per_axis && (doc.contains("step") || doc.contains("resolution")))
    throw Error(ErrorCode::BadParameter, "p_resolution/q_resolution cannot be combined with step or resolution");
  if (per_axis) {
    if (!doc.contains("p_resolution") || !doc.contains("q_resolution"))
      throw Error(ErrorCode::BadParameter, "give both p_resolution and q_resolution");
    raw.p_resolution = get_resolution("p_resolution");
    raw.q_resolution = get_resolution("q_resolution");
  } else if (doc.contains("resolution")) {
    raw.p_resolution = raw.q_resolution = get_resolution("resolution");
    if (raw.p_min == raw.p_max) raw.p_resolution = 1;
    if (raw.q_min == raw.q_max) raw.q_resolution = 1;
  } else {
    const double step = get_real(doc, "step", 0.01);
    raw.p_resolution = resolution_for_step(raw.p_min, raw.p_max, step);
    raw.q_resolution = resolution_for_step(raw.q_min, raw.q_max, step);
  }
  if (!doc.contains("n")) throw Error(ErrorCode::BadSize, "n is required (a positive integer or \"asymptotic\")");
  const json& n = doc.at("n");
  if (n.is_string() && n.get<std::string>() == "asymptotic") {
    raw.n.reset();
  } else if (n.is_number_integer()) {
    raw.n = n.get<long long>();
  } else {
    throw Error(ErrorCode::BadSize, "n must be a positive integer or \"asymptotic\"");
  }
  return GridSpec(raw);
}

json grid_to_json(const GridSpec& spec) {
  const RawGridSpec& r = spec.raw();
  json j = model_to_json(r.model);
  if (r.n)
    j["n"] = *r.n;
  else
    j["n"] = "asymptotic";
  j["pi"] = r.pi;
  j["p_min"] = r.p_min;
  j["p_max"] = r.p_max;
  j["q_min"] = r.q_min;
  j["q_max"] = r.q_max;
  j["resolution"] = r.p_resolution;
  j["include_half"] = r.include_half;
  if (r.p_resolution != r.q_resolution) {
    j.erase("resolution");
    j["p_resolution"] = r.p_resolution;
    j["q_resolution"] = r.q_resolution;
  }
  return j;
}

std::string fmt9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

const char* side_name(Side s) {
  switch (s) {
    case Side::Below: return "below";
    case Side::Half: return "half";
    case Side::Above: return "above";
  }
  return "half";
}

json sigma_json(const SigmaSq& s) {
  if (s.finite) return s.value;
  return "infinite";
}

void emit(const Flags& f, const std::string& text, std::ostream& out) {
  if (f.out_path.empty() || f.out_path == "-") {
    out << text;
    return;
  }
  std::ofstream file(f.out_path, std::ios::binary);
  if (!file) throw IoError("cannot open output file '" + f.out_path + "'");
  file << text;
  if (!file) throw IoError("failed writing output file '" + f.out_path + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int thread_count(const Flags& f) {
  if (!f.threads) return default_threads();
  const long long t = parse_integer("threads", *f.threads);
  if (t < 1 || t > 4096) throw Error(ErrorCode::BadParameter, "threads must be between 1 and 4096");
  return static_cast<int>(t);
}

std::string run_analytic(const Flags& f, const json& doc) {
  const EnsembleConfig cfg = ensemble_from(doc);
  if (f.dump_config) return dump(config_to_json(cfg));
  const double err = mean_individual_error(cfg.rates(), cfg.prior());
  const ErrorEstimate est = estimated_error(cfg);
  const ErrorEstimate limit = estimated_error_asymptotic(cfg.rates(), cfg.prior(), cfg.model());
  const bool equicorrelated = std::holds_alternative<Equicorrelated>(cfg.model());
  const PhaseVerdict table = limiting_delta(cfg.rates(), cfg.prior());
  const double delta_inf = equicorrelated ? limit.value - err : table.delta_inf;
  const PhaseSign phase = sign_of(delta_inf);
  const SigmaSq sp = asymptotic_sigma_sq(cfg.model(), cfg.rates().p());
  const SigmaSq sq = asymptotic_sigma_sq(cfg.model(), cfg.rates().q());

  if (f.format == "csv") {
    std::string s = "n,p,q,pi,model,err,err_hat,delta_n,err_hat_inf,delta_inf,phase,abusive\n";
    s += std::to_string(cfg.n()) + "," + fmt9(cfg.rates().p()) + "," + fmt9(cfg.rates().q()) + "," +
         fmt9(cfg.prior().pi()) + "," + model_name(cfg.model()) + "," + fmt9(err) + "," + fmt9(est.value) + "," +
         fmt9(est.value - err) + "," + fmt9(limit.value) + "," + fmt9(delta_inf) + "," + to_string(phase) + "," +
         (est.abusive ? "true" : "false") + "\n";
    return s;
  }
  json j;
  j["config"] = config_to_json(cfg);
  j["err"] = err;
  j["err_hat"] = est.value;
  j["delta_n"] = est.value - err;
  j["err_hat_inf"] = limit.value;
  j["delta_inf"] = delta_inf;
  j["phase"] = to_string(phase);
  j["region"] = {{"p", side_name(table.region.p)}, {"q", side_name(table.region.q)}};
  j["abusive"] = est.abusive;
  j["sigma_sq"] = {{"p", sigma_json(sp)}, {"q", sigma_json(sq)}};
  j["clt_condition_holds"] = sp.finite && sq.finite;
  return dump(j);
}

std::string run_oracle(const Flags& f, const json& doc) {
  const EnsembleConfig cfg = ensemble_from(doc);
  if (f.dump_config) return dump(config_to_json(cfg));
  const double e1 = exact_conditional_error(cfg, 1);
  const double e0 = exact_conditional_error(cfg, 0);
  const double pi = cfg.prior().pi();
  const double err = e1 * pi + e0 * (1.0 - pi);
  if (f.format == "csv") {
    if (f.pmf) {
      const VotePmf pmf1 = exact_vote_pmf(cfg.model(), cfg.n(), cfg.rates().p());
      const VotePmf pmf0 = exact_vote_pmf(cfg.model(), cfg.n(), cfg.rates().q());
      std::string s = "k,mass_class1,mass_class0\n";
      for (int k = 0; k <= cfg.n(); ++k) s += std::to_string(k) + "," + fmt9(pmf1.mass[k]) + "," + fmt9(pmf0.mass[k]) + "\n";
      return s;
    }
    return "n,p,q,pi,model,err_exact,class1_error,class0_error\n" + std::to_string(cfg.n()) + "," +
           fmt9(cfg.rates().p()) + "," + fmt9(cfg.rates().q()) + "," + fmt9(pi) + "," + model_name(cfg.model()) +
           "," + fmt9(err) + "," + fmt9(e1) + "," + fmt9(e0) + "\n";
  }
  json j;
  j["config"] = config_to_json(cfg);
  j["err_exact"] = err;
  j["class1_error"] = e1;
  j["class0_error"] = e0;
  if (f.pmf) {
    const VotePmf pmf1 = exact_vote_pmf(cfg.model(), cfg.n(), cfg.rates().p());
    const VotePmf pmf0 = exact_vote_pmf(cfg.model(), cfg.n(), cfg.rates().q());
    j["pmf_class1"] = std::vector<double>(pmf1.mass.data(), pmf1.mass.data() + pmf1.mass.size());
    j["pmf_class0"] = std::vector<double>(pmf0.mass.data(), pmf0.mass.data() + pmf0.mass.size());
  }
  return dump(j);
}

std::string run_simulate(const Flags& f, const json& doc) {
  const EnsembleConfig cfg = ensemble_from(doc);
  if (f.dump_config) return dump(config_to_json(cfg));
  if (!f.seed) throw Error(ErrorCode::BadParameter, "seed: simulate requires --seed (unsigned 64-bit integer)");
  const RngSeed seed{parse_u64("seed", *f.seed), parse_u64("stream", f.stream)};
  const long long reps = parse_integer("reps", f.reps);
  const int threads = thread_count(f);
  McEstimate est{};
  std::string target = "error";
  if (f.label) {
    const long long label = parse_integer("class", *f.label);
    if (label != 0 && label != 1) throw Error(ErrorCode::BadParameter, "class must be 0 or 1");
    est = mc_conditional_error(cfg, static_cast<int>(label), reps, seed, threads);
    target = "conditional_error_class" + std::to_string(label);
  } else {
    est = mc_error(cfg, reps, seed, threads);
  }
  if (f.format == "csv") {
    return "n,p,q,pi,model,target,estimate,std_error,reps,seed,stream\n" + std::to_string(cfg.n()) + "," +
           fmt9(cfg.rates().p()) + "," + fmt9(cfg.rates().q()) + "," + fmt9(cfg.prior().pi()) + "," +
           model_name(cfg.model()) + "," + target + "," + fmt9(est.value) + "," + fmt9(est.std_error) + "," +
           std::to_string(est.reps) + "," + std::to_string(seed.seed) + "," + std::to_string(seed.stream) + "\n";
  }
  json j;
  j["config"] = config_to_json(cfg);
  j["target"] = target;
  j["estimate"] = est.value;
  j["std_error"] = est.std_error;
  j["reps"] = est.reps;
  j["seed"] = seed.seed;
  j["stream"] = seed.stream;
  j["chunk_size"] = kMcChunkSize;
  return dump(j);
}

std::string run_phase_grid(const Flags& f, const json& doc) {
  const GridSpec spec = grid_from(doc);
  if (f.dump_config) return dump(grid_to_json(spec));
  const std::vector<GridRow> rows = sweep(spec, thread_count(f));
  if (f.format == "json") {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"p", r.p}, {"q", r.q}, {"err", r.err}, {"err_hat", r.err_hat}, {"delta_n", r.delta_n},
                     {"delta_inf", r.delta_inf}, {"phase", std::string(1, phase_symbol(r.phase))},
                     {"abusive", r.abusive}});
    return dump(json{{"grid", grid_to_json(spec)}, {"rows", arr}});
  }
  std::ostringstream os;
  write_grid_csv(os, rows);
  return os.str();
}

json stats_json(const ClassStats& s) {
  json j;
  j["samples"] = s.samples;
  j["rate"] = s.rate;
  j["std_error"] = s.std_error;
  j["per_classifier"] = std::vector<double>(s.per_classifier.data(), s.per_classifier.data() + s.per_classifier.size());
  j["mean_correlation"] = s.mean_correlation ? json(*s.mean_correlation) : json(nullptr);
  if (s.lag1_correlation) j["lag1_correlation"] = *s.lag1_correlation;
  return j;
}

std::string run_diagnose(const Flags& f, const json& doc) {
  if (f.input_path.empty()) throw Error(ErrorCode::BadParameter, "input: diagnose requires --input <csv>");
  std::ifstream in(f.input_path);
  if (!in) throw IoError("cannot open prediction file '" + f.input_path + "'");
  const PredictionMatrix matrix = read_prediction_csv(in);
  std::optional<Prior> prior;
  if (doc.contains("pi")) prior = Prior(get_real(doc, "pi", 0.5));
  const DiagnosisReport r = diagnose(matrix, prior, f.ordered);
  if (f.format == "text" || f.format.empty()) {
    std::ostringstream os;
    write_report_text(os, r);
    return os.str();
  }
  json j;
  j["p_hat"] = r.p_hat;
  j["q_hat"] = r.q_hat;
  j["prior"] = r.prior;
  j["prior_estimated"] = r.prior_estimated;
  j["class1"] = stats_json(r.positive);
  j["class0"] = stats_json(r.negative);
  j["err_hat_individual"] = r.err_hat_individual;
  j["err_majority"] = r.err_majority;
  j["err_majority_se"] = r.err_majority_se;
  j["verdict"] = {{"p", r.verdict_p},
                  {"q", r.verdict_q},
                  {"delta_inf", r.verdict.delta_inf},
                  {"sign", to_string(r.verdict.sign)},
                  {"region", {{"p", side_name(r.verdict.region.p)}, {"q", side_name(r.verdict.region.q)}}}};
  j["warnings"] = r.warnings;
  return dump(j);
}

void add_config_options(CLI::App* app, Flags& f, bool grid) {
  app->add_option("--config", f.config_path, "JSON config; flags override its keys");
  app->add_option("--n", f.n, grid ? "Ensemble size or 'asymptotic'" : "Ensemble size");
  app->add_option("--p", f.p, "Average true positive rate in (0,1)");
  app->add_option("--q", f.q, "Average false positive rate in (0,1)");
  app->add_option("--pi", f.pi, "Prior Pr(y=1) in (0,1)");
  app->add_option("--model", f.model, "independent|geometric|equicorrelated");
  app->add_option("--gamma", f.gamma, "Geometric correlation decay in (0,1)");
  app->add_option("--lambda", f.lambda, "Equicorrelation in (0,1)");
  app->add_option("--beta-concentration", f.beta_concentration, "Independent model: Beta concentration of per-classifier rates");
  app->add_flag("--dump-config", f.dump_config, "Print the effective config as JSON and exit");
  app->add_option("--out", f.out_path, "Output path (default stdout)");
}

}  // namespace

int default_threads() {
  if (const char* env = std::getenv("MVOTE_THREADS")) {
    char* end = nullptr;
    const long t = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && t >= 1 && t <= 4096) return static_cast<int>(t);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Majority-vote ensemble error analysis"};
  app.require_subcommand(1);
  Flags f;

  auto* analytic = app.add_subcommand("analytic", "Closed-form errors, deltas and phase verdict");
  add_config_options(analytic, f, false);
  analytic->add_option("--format", f.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  auto* oracle = app.add_subcommand("oracle", "Exact finite-n majority-vote error");
  add_config_options(oracle, f, false);
  oracle->add_flag("--pmf", f.pmf, "Also print the vote-sum pmf of each class");
  oracle->add_option("--format", f.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the majority-vote error");
  add_config_options(simulate, f, false);
  simulate->add_option("--seed", f.seed, "RNG seed (required)");
  simulate->add_option("--stream", f.stream, "RNG stream index");
  simulate->add_option("--reps", f.reps, "Replications (>= 100)");
  simulate->add_option("--class", f.label, "Condition on class 0 or 1");
  simulate->add_option("--threads", f.threads, "Worker threads (results do not depend on it)");
  simulate->add_option("--format", f.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  auto* grid = app.add_subcommand("phase-grid", "Sweep the (p,q) square");
  add_config_options(grid, f, true);
  grid->add_option("--p-min", f.p_min);
  grid->add_option("--p-max", f.p_max);
  grid->add_option("--q-min", f.q_min);
  grid->add_option("--q-max", f.q_max);
  grid->add_option("--step", f.step, "Axis step (default 0.01)");
  grid->add_option("--resolution", f.resolution, "Points per axis (alternative to --step)");
  grid->add_flag("--include-half", f.include_half, "Keep grid points lying exactly on 1/2");
  grid->add_option("--threads", f.threads, "Worker threads (results do not depend on it)");
  grid->add_option("--format", f.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* diag = app.add_subcommand("diagnose", "Diagnose a CSV of labelled binary predictions");
  diag->add_option("--input", f.input_path, "CSV with header y,f1,...,fm")->required();
  diag->add_option("--pi", f.pi, "Override the estimated prior");
  diag->add_flag("--ordered", f.ordered, "Classifier columns are ordered; report lag-1 correlation");
  diag->add_option("--out", f.out_path, "Output path (default stdout)");
  diag->add_option("--format", f.format, "text|json")->check(CLI::IsMember({"text", "json"}));

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    const json doc = merge_flags(load_config(f.config_path), f);
    std::string text;
    if (analytic->parsed()) {
      text = run_analytic(f, doc);
    } else if (oracle->parsed()) {
      text = run_oracle(f, doc);
    } else if (simulate->parsed()) {
      text = run_simulate(f, doc);
    } else if (grid->parsed()) {
      text = run_phase_grid(f, doc);
    } else {
      text = run_diagnose(f, doc);
    }
    emit(f, text, out);
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return e.code() == ErrorCode::Io ? kExitIo : kExitValidation;
  } catch (const json::exception& e) {
    err << "error: config: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace mvote::cli
