#include "nmach/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "nmach/machine_io.hpp"
#include "nmach/processes.hpp"
#include "nmach/quantum.hpp"
#include "nmach/sweep.hpp"
#include "nmach/transforms.hpp"

namespace nmach::cli {

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::QuasiMachineUnsupported:
    case Errc::UnsupportedProcess:
    case Errc::NegativeEntriesUnsupportedOrder:
    case Errc::ZeroEntryWithQuasiOrder:
    case Errc::NegativeConditional:
      return 3;
    case Errc::InvalidInput:
    case Errc::ParseError:
    case Errc::NonFiniteEntries:
    case Errc::DimensionMismatch:
    case Errc::UnknownSymbol:
    case Errc::StationaryMismatch:
    case Errc::SpecMismatch:
    case Errc::DegenerateParameter:
    case Errc::TruncationTooCoarse:
    case Errc::InvalidAlpha:
      return 2;
    default:
      return 4;
  }
}

nlohmann::json measure_report_to_json(const MeasureReport& r) {
  nlohmann::json j = {{"name", measure_name(r.name)}, {"value", r.value}, {"residual", r.residual}};
  j["parameters"] = nlohmann::json::object();
  for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
  return j;
}

nlohmann::json nmachine_result_to_json(const NMachineResult& r) {
  nlohmann::json params = nlohmann::json::object();
  for (std::size_t i = 0; i < r.params.size(); ++i) params[i < r.names.size() ? r.names[i] : "p" + std::to_string(i)] = r.params[i];
  return {{"parameters", params},
          {"C_n2", r.c_n2},
          {"E_half", r.e_half},
          {"negativity", r.negativity},
          {"mana", r.mana},
          {"advantage", r.advantage},
          {"baseline", r.baseline},
          {"saturated", r.saturated},
          {"violates_bound", r.violates_bound},
          {"sat_tol", r.sat_tol},
          {"stationary", r.machine.stationary()}};
}

SplitSpec split_spec_from_json(const nlohmann::json& j) {
  try {
    SplitSpec s;
    s.copies = j.at("copies").get<std::vector<std::size_t>>();
    if (j.contains("params")) s.param_names = j.at("params").get<std::vector<std::string>>();
    if (j.contains("parts")) {
      for (const auto& p : j.at("parts")) {
        SplitKey key{p.at("j").get<std::size_t>(), p.value("lj", std::size_t(0)), p.at("x").get<std::size_t>(),
                     p.at("k").get<std::size_t>()};
        std::vector<AffinePart> parts;
        for (const auto& v : p.at("values")) {
          AffinePart a;
          a.constant = v.value("constant", 0.0);
          if (v.contains("coeffs")) a.coeffs = v.at("coeffs").get<std::vector<double>>();
          parts.push_back(a);
        }
        s.parts[key] = std::move(parts);
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("split spec: ") + e.what());
  }
}

namespace {

struct Globals {
  double tol = kStructTol;
  std::size_t horizon = 12;
  std::uint64_t seed = 0;
  std::string out;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

void emit(const std::string& text, const Globals& g, std::ostream& out) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw Error(Errc::InvalidInput, "cannot write " + g.out);
  f << text;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, "not a number: '" + item + "'");
    }
  }
  return v;
}

double need_p(double p) {
  if (std::isnan(p)) throw Error(Errc::InvalidInput, "--p is required");
  return p;
}

Branch parse_branch(const std::string& b) {
  if (b == "plus" || b == "+") return Branch::Plus;
  if (b == "minus" || b == "-") return Branch::Minus;
  throw Error(Errc::InvalidInput, "branch must be plus or minus");
}

// make-machine

struct MakeArgs {
  std::string process;
  double p = NAN;
  std::size_t truncation = 0;
};

Machine make_zoo_machine(const MakeArgs& a) {
  const std::string& n = a.process;
  if (n == "perturbed-coin") return perturbed_coin_epsilon(need_p(a.p));
  if (n == "perturbed-coin-rjmc") return perturbed_coin_rjmc(need_p(a.p));
  if (n == "golden-mean") return golden_mean_epsilon(need_p(a.p));
  if (n == "sns-g") return sns_g_machine(need_p(a.p));
  if (n == "sns-epsilon") {
    double p = need_p(a.p);
    return sns_epsilon_truncated(p, a.truncation ? a.truncation : sns_default_truncation(p));
  }
  if (n == "even") return even_process_epsilon();
  if (n == "iid") return iid_coin(std::isnan(a.p) ? 0.5 : a.p);
  throw Error(Errc::InvalidInput, "unknown process '" + n + "'");
}

// measures

struct MeasureArgs {
  std::string machine;
  bool all = false;
  std::vector<std::string> names;
  double alpha = 2.0;
};

MeasureReport compute_measure(const Machine& m, const std::string& name, const MeasureArgs& a, const Globals& g) {
  if (name == "cmu2") return statistical_complexity(m, 2.0);
  if (name == "cmu-alpha") return statistical_complexity(m, a.alpha);
  if (name == "cq2" || name == "cq-vn") {
    GramEnsemble ens = gram_from_machine(m, g.horizon);
    bool vn = name == "cq-vn";
    MeasureReport r{vn ? MeasureName::Cq_vN : MeasureName::Cq2,
                    quantum_complexity(ens, vn ? QuantumOrder::VonNeumann : QuantumOrder::Renyi2),
                    {{"horizon", double(g.horizon)}},
                    ens.residual};
    return r;
  }
  if (name == "excess-half") return excess_entropy_half(m, g.horizon);
  if (name == "excess-shannon") return excess_entropy_shannon(m, g.horizon);
  if (name == "negativity") return {MeasureName::Negativity, negativity(m.stationary()), {}, m.stationary_residual()};
  if (name == "mana") return {MeasureName::Mana, mana(m.stationary()), {}, m.stationary_residual()};
  throw Error(Errc::InvalidInput, "unknown measure '" + name + "'");
}

std::string cmd_measures(const MeasureArgs& a, const Globals& g) {
  Machine m = load_machine(a.machine, g.tol);
  MachineClass cls = classify(m, g.tol);
  bool quasi = cls.kind == MachineClass::Kind::QuasiNegative;
  std::vector<std::string> names = a.names;
  nlohmann::json skipped = nlohmann::json::array();
  if (a.all) {
    names.clear();
    for (const char* n : {"cmu2", "cq2", "cq-vn", "excess-half", "excess-shannon", "negativity", "mana"}) {
      bool classical_only = n != std::string("cmu2") && n != std::string("negativity") && n != std::string("mana");
      if (quasi && classical_only)
        skipped.push_back(n);
      else
        names.push_back(n);
    }
  }
  if (names.empty()) throw Error(Errc::InvalidInput, "no measures requested (use --all or --measure)");
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& n : names) reports.push_back(measure_report_to_json(compute_measure(m, n, a, g)));
  nlohmann::json j = {{"machine",
                       {{"file", a.machine},
                        {"states", m.num_states()},
                        {"class", quasi ? "QuasiNegative" : "Classical"},
                        {"unifilar", cls.unifilar}}},
                      {"measures", reports}};
  if (!skipped.empty()) j["skipped"] = skipped;
  return j.dump(2) + "\n";
}

// sweep / reproduce

struct SweepArgs {
  std::string config;
  std::string process = "perturbed-coin";
  std::string grid;
  double p_min = NAN, p_max = NAN, p_step = NAN;
  bool exclude_half = false;
  std::vector<std::string> outputs;
  std::size_t truncation = 0;
  double gm_q = 0.1;
};

void write_sweep(const SweepConfig& c, const Globals& g, std::ostream& out, std::ostream& err) {
  SweepResult r = run_sweep(c);
  std::string path = !g.out.empty() ? g.out : c.output_path;
  std::string log = format_error_log(r);
  Globals dest = g;
  dest.out = path;
  emit(format_csv(r), dest, out);
  if (log.empty()) return;
  if (path.empty()) {
    err << log;
    return;
  }
  std::ofstream f(path + ".errors.log");
  f << log;
}

// Flags given on the command line override the config file.
SweepConfig sweep_config(const SweepArgs& a, const Globals& g, const CLI::App& app, const CLI::App& sub) {
  SweepConfig c;
  if (!a.config.empty()) {
    nlohmann::json j = read_json_file(a.config);
    c = sweep_config_from_json(j);
    if (app.count("--horizon") || !j.contains("horizon")) c.horizon = g.horizon;
    if (app.count("--seed")) c.seed = g.seed;
  } else {
    c.process = parse_sweep_process(a.process);
    c.horizon = g.horizon;
  }
  if (sub.count("--process")) c.process = parse_sweep_process(a.process);
  if (!a.grid.empty()) {
    c.p_grid = parse_list(a.grid);
  } else if (!std::isnan(a.p_min) || !std::isnan(a.p_max) || !std::isnan(a.p_step)) {
    if (std::isnan(a.p_min) || std::isnan(a.p_max) || std::isnan(a.p_step))
      throw Error(Errc::InvalidInput, "--p-min, --p-max and --p-step go together");
    c.p_grid = make_grid(a.p_min, a.p_max, a.p_step, a.exclude_half);
  }
  if (!a.outputs.empty()) c.outputs = a.outputs;
  if (a.truncation) c.truncation = a.truncation;
  if (sub.count("--gm-q")) c.golden_mean_q = a.gm_q;
  if (a.config.empty()) c.seed = g.seed;
  return c;
}

// construct-nmachine

struct ConstructArgs {
  std::string process;
  double p = NAN;
  std::string params;
  std::string branch = "plus";
  bool optimize = false;
  std::size_t truncation = 0;
  std::string machine;
  std::string split;
};

std::string cmd_construct(const ConstructArgs& a, const Globals& g) {
  Machine source;
  SplitSpec spec;
  double e_half = 0.0, baseline = 0.0, extra = 0.0;
  std::vector<double> params;
  bool have_ideal = false;
  const std::string& n = a.process;
  if (!a.machine.empty() || !a.split.empty()) {
    if (a.machine.empty() || a.split.empty()) throw Error(Errc::InvalidInput, "--machine and --split go together");
    source = load_machine(a.machine, g.tol);
    spec = split_spec_from_json(read_json_file(a.split));
    e_half = excess_entropy_half(source, g.horizon).value;
    baseline = collision_entropy(source.stationary());
  } else if (n == "perturbed-coin") {
    double p = need_p(a.p);
    source = perturbed_coin_epsilon(p);
    spec = perturbed_coin_split(p);
    e_half = excess_entropy_half_closed_form({ClosedFormProcess::PerturbedCoin, p, 0}).value;
    baseline = collision_entropy(source.stationary());
    auto [q1, q2] = perturbed_coin_ideal_params(p, parse_branch(a.branch));
    params = {q1, q2};
    have_ideal = true;
  } else if (n == "sns") {
    double p = need_p(a.p);
    std::size_t N = a.truncation ? a.truncation : sns_default_truncation(p);
    source = sns_g_machine(p);
    spec = sns_split(p);
    ClosedFormValue e = excess_entropy_half_closed_form({ClosedFormProcess::SNS, p, N});
    e_half = e.value;
    extra = e.residual;
    baseline = collision_entropy(sns_epsilon_truncated(p, N).stationary());
    auto [gamma, eta] = sns_ideal_params(p, N, parse_branch(a.branch));
    params = {gamma, eta};
    have_ideal = true;
  } else if (n == "golden-mean-bad") {
    double p = need_p(a.p);
    source = golden_mean_epsilon(p);
    spec = golden_mean_bad_split(p);
    e_half = excess_entropy_half(source, g.horizon).value;
    baseline = collision_entropy(source.stationary());
    params = {0.1};
  } else {
    throw Error(Errc::InvalidInput, "unknown process '" + n + "' (or pass --machine and --split)");
  }
  if (!a.params.empty()) params = parse_list(a.params);
  if (!have_ideal && a.params.empty() && !a.optimize && spec.param_names.size() != params.size())
    params.assign(spec.param_names.size(), 0.0);

  NMachineResult r;
  if (a.optimize) {
    OptimizeOptions o;
    o.seed = g.seed;
    o.baseline = baseline;
    o.extra_tol = extra;
    r = optimize_ideal(source, spec, e_half, o);
  } else {
    r = evaluate_nmachine(source, spec, params, e_half, baseline, 1e-6, extra);
  }
  NMachineProperties props = check_nmachine_properties(source, r.machine, spec);
  nlohmann::json j = nmachine_result_to_json(r);
  j["process"] = a.machine.empty() ? n : a.machine;
  if (!std::isnan(a.p)) j["p"] = a.p;
  j["properties"] = {{"construct_split", props.construct_split},
                     {"coarse_graining", props.coarse_graining},
                     {"symbol_conditional", props.symbol_conditional},
                     {"word_conditional", props.word_conditional},
                     {"process", props.process},
                     {"half_information", props.half_information},
                     {"ok", props.ok()},
                     {"violations", props.violations}};
  j["machine"] = machine_to_json(r.machine);
  if (!g.out.empty()) save_machine(r.machine, g.out);
  return j.dump(2) + "\n";
}

// transform

struct TransformArgs {
  std::string machine;
  double a = NAN, b = NAN;
  std::string z;
};

std::string cmd_transform(const TransformArgs& t, const Globals& g) {
  Machine m = load_machine(t.machine, g.tol);
  SimilarityMap z;
  if (!t.z.empty()) {
    Vector flat = parse_list(t.z);
    std::size_t n = m.num_states();
    if (flat.size() != n * n) throw Error(Errc::DimensionMismatch, "z needs " + std::to_string(n * n) + " entries");
    Matrix zm(n, n);
    zm.data = flat;
    z = SimilarityMap::from(zm, g.tol);
  } else {
    if (std::isnan(t.a) || std::isnan(t.b)) throw Error(Errc::InvalidInput, "pass --a and --b, or --z");
    z = SimilarityMap::two_state(t.a, t.b);
  }
  Machine out = apply_map(m, z);
  bool quasi = classify(out, g.tol).kind == MachineClass::Kind::QuasiNegative;
  nlohmann::json j = {{"class", quasi ? "QuasiNegative" : "Classical"},
                      {"h2", collision_entropy(out.stationary())},
                      {"negativity", negativity(out.stationary())},
                      {"process_distance", process_distance(m, out, std::min<std::size_t>(g.horizon, 8))},
                      {"machine", machine_to_json(out)}};
  if (!g.out.empty()) save_machine(out, g.out);
  return j.dump(2) + "\n";
}

void print_error(std::ostream& err, const std::string& name, const std::string& message, int code) {
  err << nlohmann::json{{"error", name}, {"message", message}, {"exit_code", code}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical, quantum and quasiprobabilistic machine toolkit", "nmach"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "structural tolerance")->capture_default_str();
  app.add_option("--horizon", g.horizon, "future horizon L")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for randomized searches")->capture_default_str();
  app.add_option("--out", g.out, "output path (default stdout)");

  MakeArgs make;
  auto* c_make = app.add_subcommand("make-machine", "emit a zoo machine as JSON");
  c_make->add_option("--process", make.process,
                     "perturbed-coin | perturbed-coin-rjmc | golden-mean | sns-g | sns-epsilon | even | iid")
      ->required();
  c_make->add_option("--p", make.p, "process parameter");
  c_make->add_option("--truncation", make.truncation, "SNS truncation N");

  MeasureArgs meas;
  auto* c_meas = app.add_subcommand("measures", "compute memory measures of a machine file");
  c_meas->add_option("--machine", meas.machine, "machine JSON")->required();
  c_meas->add_flag("--all", meas.all, "every measure that applies");
  c_meas->add_option("--measure", meas.names,
                     "cmu2 | cmu-alpha | cq2 | cq-vn | excess-half | excess-shannon | negativity | mana");
  c_meas->add_option("--alpha", meas.alpha, "order for cmu-alpha")->capture_default_str();

  SweepArgs sw;
  auto* c_sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  c_sweep->add_option("--config", sw.config, "JSON sweep config");
  c_sweep->add_option("--process", sw.process, "perturbed-coin | sns | golden-mean");
  c_sweep->add_option("--grid", sw.grid, "comma separated p values");
  c_sweep->add_option("--p-min", sw.p_min);
  c_sweep->add_option("--p-max", sw.p_max);
  c_sweep->add_option("--p-step", sw.p_step);
  c_sweep->add_flag("--exclude-half", sw.exclude_half);
  c_sweep->add_option("--outputs", sw.outputs, "column names")->delimiter(',');
  c_sweep->add_option("--truncation", sw.truncation, "SNS truncation N");
  c_sweep->add_option("--gm-q", sw.gm_q, "golden mean split parameter");

  std::string figure;
  auto* c_repro = app.add_subcommand("reproduce", "canned sweep for a figure");
  c_repro->add_option("--figure", figure, "Fig5 | Fig7 | Fig9 | Fig10")->required();

  ConstructArgs con;
  auto* c_con = app.add_subcommand("construct-nmachine", "build a split n-machine");
  c_con->add_option("--process", con.process, "perturbed-coin | sns | golden-mean-bad");
  c_con->add_option("--p", con.p);
  c_con->add_option("--params", con.params, "comma separated parameter values");
  c_con->add_option("--branch", con.branch, "plus | minus")->capture_default_str();
  c_con->add_flag("--optimize", con.optimize);
  c_con->add_option("--truncation", con.truncation, "SNS truncation N");
  c_con->add_option("--machine", con.machine, "source machine JSON (with --split)");
  c_con->add_option("--split", con.split, "split spec JSON");

  TransformArgs tr;
  auto* c_tr = app.add_subcommand("transform", "apply an invertible row-stochastic map");
  c_tr->add_option("--machine", tr.machine)->required();
  c_tr->add_option("--a", tr.a);
  c_tr->add_option("--b", tr.b);
  c_tr->add_option("--z", tr.z, "row-major entries of z");

  double wp = NAN;
  auto* c_wig = app.add_subcommand("wigner", "qubit Wigner-function machine for the perturbed coin");
  c_wig->add_option("--p", wp)->required();

  for (auto* s : app.get_subcommands({})) s->fallthrough();

  std::vector<std::string> argv_store{"nmach"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    print_error(err, "ParseError", e.what(), 2);
    return 2;
  }

  try {
    if (*c_make) {
      emit(machine_to_string(make_zoo_machine(make)) + "\n", g, out);
    } else if (*c_meas) {
      emit(cmd_measures(meas, g), g, out);
    } else if (*c_sweep) {
      write_sweep(sweep_config(sw, g, app, *c_sweep), g, out, err);
    } else if (*c_repro) {
      SweepConfig c = reproduce_config(parse_figure(figure));
      c.horizon = g.horizon;
      c.seed = g.seed;
      write_sweep(c, g, out, err);
    } else if (*c_con) {
      Globals print = g;
      print.out.clear();
      emit(cmd_construct(con, g), print, out);
    } else if (*c_tr) {
      Globals print = g;
      print.out.clear();
      emit(cmd_transform(tr, g), print, out);
    } else if (*c_wig) {
      emit(machine_to_string(wigner_as_machine(wigner_qubit_representation(wp), 1e-9)) + "\n", g, out);
    }
  } catch (const Error& e) {
    int code = exit_code_for(e.code());
    print_error(err, errc_name(e.code()), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    print_error(err, "InternalError", e.what(), 4);
    return 4;
  }
  return 0;
}

}  // namespace nmach::cli
