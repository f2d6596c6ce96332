// qcaembed: embed QCA circuits into Chimera hardware graphs, generate
// circuits, run sweeps and spectrum studies.
//
// Exit codes: 0 success, 1 usage or input error, 2 embedding failure,
// 3 internal invariant violation.

#include "qcaembed/bench.hpp"
#include "qcaembed/chimera.hpp"
#include "qcaembed/circuit_gen.hpp"
#include "qcaembed/dense_placement.hpp"
#include "qcaembed/heuristic.hpp"
#include "qcaembed/io.hpp"
#include "qcaembed/ising.hpp"
#include "qcaembed/manifest.hpp"
#include "qcaembed/model_convert.hpp"
#include "qcaembed/rng.hpp"
#include "qcaembed/simd/kernels.hpp"
#include "qcaembed/spectrum.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace qcaembed;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kEmbedFailure = 2;
constexpr int kInvariant = 3;

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

std::pair<int, int> parse_pair(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + text + "' (expected A or A,B)");
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number '" + item + "' in list '" + text + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

ChimeraGraph make_hardware(const std::string& chimera, const std::string& hardware_file, double fraction,
                           std::uint64_t yield_seed_value) {
  ChimeraGraph hw = hardware_file.empty() ? build_chimera(parse_chimera_spec(chimera))
                                          : hardware_from_json(Json::parse(read_text_file(hardware_file)));
  if (fraction > 0.0) hw = apply_yield(hw, YieldMask::random(hw.spec(), fraction, yield_seed_value));
  return hw;
}

struct Common {
  std::string manifest;
};

void add_manifest_option(CLI::App* cmd, Common& common) {
  cmd->add_option("--manifest", common.manifest, "Write a run manifest (JSON) here");
}

// ---------------------------------------------------------------- embed

struct EmbedOptions {
  std::string circuit;
  std::string algorithm = "dense";
  std::string adjacency = "limited";
  std::string chimera = "8x8x4";
  std::string hardware;
  double disable_fraction = 0.0;
  std::uint64_t yield_seed = 0;
  std::uint64_t seed = 1;
  double timeout_s = 30.0;
  int tries = 10;
  std::string initial_order = "random";
  bool convert = false;
  std::string assign_path;
  bool chain_safe = false;
  std::string out;
  bool omit_timing = false;
};

int run_embed(const EmbedOptions& o, RunManifest& manifest) {
  const auto circuit = load_circuit(o.circuit, parse_adjacency(o.adjacency));
  const auto hw = make_hardware(o.chimera, o.hardware, o.disable_fraction, o.yield_seed);
  const Algorithm algorithm = parse_algorithm(o.algorithm);
  manifest.seeds["seed"] = o.seed;
  manifest.seeds["yield_seed"] = o.yield_seed;
  manifest.inputs.push_back(o.circuit);
  Rng rng = make_rng(o.seed);

  EmbeddingDocument doc;
  doc.algorithm = std::string(to_string(algorithm));
  doc.seed = o.seed;
  if (algorithm == Algorithm::dense) {
    DenseConfig cfg;
    cfg.trial_timeout_s = o.timeout_s;
    auto res = embed_dense(circuit, hw, cfg, rng);
    if (!res.embedding) {
      std::cerr << "embedding failed (" << to_string(res.reason) << "): " << res.detail << '\n';
      return kEmbedFailure;
    }
    if (auto bad = validate(*res.embedding, circuit, hw); !bad.empty()) {
      throw InvariantError("dense placement produced an invalid embedding: " + bad.front().detail);
    }
    if (!o.omit_timing) doc.wall_ms = res.wall_ms;
    doc.models = convert(circuit, *res.embedding);
    if (!o.convert) doc.chains = *res.embedding;
  } else {
    HeurConfig cfg;
    cfg.trial_timeout_s = o.timeout_s;
    cfg.tries = o.tries;
    cfg.initial_order = parse_initial_order(o.initial_order);
    auto res = embed_heuristic(circuit, hw, cfg, rng);
    if (!res.embedding) {
      std::cerr << "embedding failed (" << to_string(res.reason) << "): " << res.detail << '\n';
      return kEmbedFailure;
    }
    if (!o.omit_timing) doc.wall_ms = res.wall_ms;
    doc.models = *res.embedding;
  }
  if (auto bad = validate(doc.models, circuit, hw); !bad.empty()) {
    throw InvariantError("embedding failed validation: " + bad.front().detail);
  }
  emit(o.out, embedding_to_json(circuit, doc).dump(2) + "\n");
  if (!o.out.empty()) manifest.outputs.push_back(o.out);
  if (!o.assign_path.empty()) {
    AssignOptions opts;
    opts.chain_safe = o.chain_safe;
    const auto problem = assign(doc.models, circuit, hw, opts);
    for (const auto& [q, v] : problem.h) {
      if (abs(v) > 1) throw InvariantError("bias outside [-1, 1] on qubit " + std::to_string(q));
    }
    for (const auto& [key, v] : problem.j) {
      if (abs(v) > 1) throw InvariantError("coupling outside [-1, 1]");
    }
    const bool json = o.assign_path.size() > 5 && o.assign_path.ends_with(".json");
    emit(o.assign_path, json ? format_ising_json(problem) : format_ising_text(problem));
    manifest.outputs.push_back(o.assign_path);
  }
  return kOk;
}

// ---------------------------------------------------------------- generate

struct GenerateOptions {
  std::string majority = "1,4";
  std::string inverters = "0,2";
  std::string drivers;
  std::string wire = "3,12";
  std::string adjacency = "limited";
  std::uint64_t seed = 1;
  int count = 1;
  std::string out;
  std::string out_dir;
};

GenConfig gen_config(const GenerateOptions& o) {
  GenConfig cfg;
  std::tie(cfg.majority_min, cfg.majority_max) = parse_pair(o.majority, "--majority");
  std::tie(cfg.inverter_min, cfg.inverter_max) = parse_pair(o.inverters, "--inverters");
  if (!o.drivers.empty()) std::tie(cfg.driver_min, cfg.driver_max) = parse_pair(o.drivers, "--drivers");
  std::tie(cfg.wire_min, cfg.wire_max) = parse_pair(o.wire, "--wire");
  cfg.adjacency = parse_adjacency(o.adjacency);
  cfg.validate();
  return cfg;
}

std::string circuit_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "gen%05d", index);
  return buf;
}

int run_generate(const GenerateOptions& o, RunManifest& manifest) {
  const GenConfig cfg = gen_config(o);
  if (o.count < 1) throw std::invalid_argument("--count must be >= 1");
  manifest.seeds["seed"] = o.seed;
  if (o.count == 1 && o.out_dir.empty()) {
    Rng rng = make_rng(derive_seed(o.seed, "generate", 0));
    const auto graph = generate(cfg, rng, circuit_name(0));
    emit(o.out, graph_to_json(graph).dump(2) + "\n");
    if (!o.out.empty()) manifest.outputs.push_back(o.out);
    return kOk;
  }
  if (o.out_dir.empty()) throw std::invalid_argument("--count > 1 needs --out-dir");
  fs::create_directories(o.out_dir);
  Json index = Json::array();
  for (int i = 0; i < o.count; ++i) {
    Rng rng = make_rng(derive_seed(o.seed, "generate", static_cast<std::uint64_t>(i)));
    const auto graph = generate(cfg, rng, circuit_name(i));
    const std::string file = circuit_name(i) + ".json";
    write_text_file((fs::path(o.out_dir) / file).string(), graph_to_json(graph).dump(2) + "\n");
    index.push_back({{"file", file}, {"n_cells", graph.num_nodes()}, {"n_edges", graph.num_edges()}});
  }
  write_text_file((fs::path(o.out_dir) / "index.json").string(), index.dump(2) + "\n");
  manifest.outputs.push_back(o.out_dir);
  return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
  std::string circuits_dir;
  int generate_count = 0;
  GenerateOptions gen;
  std::string algorithm = "both";
  std::string adjacency = "both";
  std::string chimera = "8x8x4";
  std::string ndis = "0";
  int trials = 1;
  std::uint64_t seed = 1;
  double timeout_s = 30.0;
  int tries = 10;
  std::string initial_order = "random";
  int jobs = 1;
  std::string out;
  std::vector<std::string> fits;
  std::string fit_out;
  int bin_width = 20;
  bool summary = false;
  bool omit_timing = false;
};

std::vector<AdjacencyMode> adjacency_list(const std::string& text) {
  if (text == "both") return {AdjacencyMode::limited, AdjacencyMode::full};
  return {parse_adjacency(text)};
}

std::vector<GroupFit> run_fits(const std::vector<TrialRecord>& records, const std::vector<std::string>& kinds,
                               int bin_width) {
  std::vector<GroupFit> out;
  for (const auto& kind : kinds) {
    std::vector<GroupFit> part;
    if (kind == "erfc") {
      part = fit_success(records, bin_width);
    } else if (kind == "power") {
      part = fit_usage(records, bin_width);
    } else if (kind == "runtime") {
      part = fit_runtime(records, bin_width);
    } else if (kind == "yield") {
      part = fit_yield_groups(records, bin_width);
    } else {
      throw std::invalid_argument("--fit must be erfc, power, runtime or yield");
    }
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

int run_sweep_cmd(const SweepOptions& o, RunManifest& manifest) {
  SweepConfig cfg;
  cfg.spec = parse_chimera_spec(o.chimera);
  cfg.n_dis = parse_list(o.ndis);
  for (double f : cfg.n_dis) {
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("--ndis values must lie in [0, 1]");
  }
  cfg.trials = o.trials;
  cfg.root_seed = o.seed;
  cfg.jobs = o.jobs;
  cfg.dense.trial_timeout_s = o.timeout_s;
  cfg.heuristic.trial_timeout_s = o.timeout_s;
  cfg.heuristic.tries = o.tries;
  cfg.heuristic.initial_order = parse_initial_order(o.initial_order);
  if (o.algorithm == "both") {
    cfg.algorithms = {Algorithm::dense, Algorithm::heuristic};
  } else {
    cfg.algorithms = {parse_algorithm(o.algorithm)};
  }
  manifest.seeds["seed"] = o.seed;

  std::vector<SweepCircuit> circuits;
  const auto modes = adjacency_list(o.adjacency);
  if (!o.circuits_dir.empty()) {
    if (!fs::is_directory(o.circuits_dir)) throw std::invalid_argument("'" + o.circuits_dir + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(o.circuits_dir)) {
      if (entry.path().extension() == ".json" && entry.path().filename() != "index.json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const Json doc = Json::parse(read_text_file(f.string()));
      const std::string id = f.stem().string();
      if (doc.contains("cells")) {
        for (auto mode : modes) circuits.push_back({id, circuit_from_json(doc, mode)});
      } else {
        auto graph = circuit_from_json(doc, modes.front());
        if (std::find(modes.begin(), modes.end(), graph.mode()) != modes.end()) circuits.push_back({id, graph});
      }
      manifest.inputs.push_back(f.string());
    }
  }
  if (o.generate_count > 0) {
    GenerateOptions g = o.gen;
    for (auto mode : modes) {
      g.adjacency = std::string(to_string(mode));
      const GenConfig gc = gen_config(g);
      for (int i = 0; i < o.generate_count; ++i) {
        // Same stream for both adjacencies: identical structure, different diagonals.
        Rng rng = make_rng(derive_seed(o.seed, "generate", static_cast<std::uint64_t>(i)));
        circuits.push_back({circuit_name(i), generate(gc, rng, circuit_name(i))});
      }
    }
  }
  if (circuits.empty()) throw std::invalid_argument("sweep has no circuits (empty directory or no --generate)");

  const auto result = run_sweep(circuits, cfg);
  emit(o.out, records_to_csv(result.records, o.omit_timing));
  if (!o.out.empty()) manifest.outputs.push_back(o.out);
  if (o.summary) std::cerr << format_summary(summarize(result.records), &result);
  if (!o.fits.empty()) {
    const auto fits = run_fits(result.records, o.fits, o.bin_width);
    emit(o.fit_out, group_fits_to_json(fits));
    if (!o.fit_out.empty()) manifest.outputs.push_back(o.fit_out);
  }
  return kOk;
}

// ---------------------------------------------------------------- fit

struct FitOptions {
  std::string csv;
  std::vector<std::string> fits = {"erfc"};
  int bin_width = 20;
  std::string out;
};

int run_fit_cmd(const FitOptions& o, RunManifest& manifest) {
  const auto records = records_from_csv(read_text_file(o.csv));
  manifest.inputs.push_back(o.csv);
  emit(o.out, group_fits_to_json(run_fits(records, o.fits, o.bin_width)));
  return kOk;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumOptions {
  std::string wire = "1,1";
  double j12 = -1.0;
  double jc = -1.0;
  std::optional<double> pd1;
  std::optional<double> pd2;
  std::string driver = "whole_group";
  int grid = 201;
  int cap = kDefaultSpinCap;
  std::string out;
  std::string summary;
};

int run_spectrum(const SpectrumOptions& o, RunManifest&) {
  WireModel w;
  std::tie(w.n_left, w.n_right) = parse_pair(o.wire, "--wire");
  w.j12 = o.j12;
  w.jc = o.jc;
  // Drivers agree across a ferromagnetic link and oppose across an
  // antiferromagnetic one unless given.
  w.p_d1 = o.pd1.value_or(1.0);
  w.p_d2 = o.pd2.value_or(o.j12 > 0.0 ? -1.0 : 1.0);
  w.driver = parse_driver_coupling(o.driver);
  w.validate();
  if (w.n_left + w.n_right > o.cap) {
    throw std::invalid_argument("wire of " + std::to_string(w.n_left + w.n_right) + " spins exceeds the cap of " +
                                std::to_string(o.cap));
  }
  const auto result = min_gap(build_wire_model(w), o.grid, Schedule{}, o.cap);
  WireModel unit = w;
  unit.n_left = unit.n_right = 1;
  const double reference = min_gap(build_wire_model(unit), o.grid).min_gap;
  const double reduction = 100.0 * (1.0 - result.min_gap / reference);
  emit(o.out, format_spectrum_csv(result));
  const std::string summary = format_spectrum_summary(result, &w, reduction, o.grid);
  if (o.summary.empty()) {
    std::cerr << summary;
  } else {
    emit(o.summary, summary);
  }
  return kOk;
}

int run_cli(std::vector<std::string> args, int depth);

int dispatch(std::vector<std::string> args, int depth) {
  CLI::App app{"Embed QCA circuits into Chimera hardware graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  bool scalar_only = false;
  app.add_flag("--scalar", scalar_only, "Disable SIMD kernels");

  Common common;
  EmbedOptions eo;
  auto* embed = app.add_subcommand("embed", "Embed one circuit");
  embed->add_option("circuit", eo.circuit, "Circuit JSON (cell layout or connectivity graph)")->required();
  embed->add_option("--algorithm", eo.algorithm, "Embedding algorithm")->check(CLI::IsMember({"dense", "heuristic"}));
  embed->add_option("--adjacency", eo.adjacency, "Connectivity of cell layouts")->check(CLI::IsMember({"limited", "full"}));
  embed->add_option("--chimera", eo.chimera, "Processor as MxNxL");
  embed->add_option("--hardware", eo.hardware, "Hardware descriptor JSON (overrides --chimera)");
  embed->add_option("--disable-fraction", eo.disable_fraction, "Fraction of qubits to disable at random")->check(CLI::Range(0.0, 1.0));
  embed->add_option("--yield-seed", eo.yield_seed, "Seed of the disabled-qubit draw");
  embed->add_option("--seed", eo.seed, "Root seed");
  embed->add_option("--timeout-s", eo.timeout_s, "Wall-clock limit per trial")->check(CLI::PositiveNumber);
  embed->add_option("--tries", eo.tries, "Heuristic restarts per trial")->check(CLI::PositiveNumber);
  embed->add_option("--initial-order", eo.initial_order, "Heuristic initial pass order")
      ->check(CLI::IsMember({"random", "priority"}));
  embed->add_flag("--convert", eo.convert, "Emit vertex models instead of chains");
  embed->add_option("--assign", eo.assign_path, "Write the Ising problem (text, or JSON for *.json)");
  embed->add_flag("--chain-safe", eo.chain_safe, "Scale circuit terms so models never break in a ground state");
  embed->add_option("-o,--out", eo.out, "Output file (default stdout)");
  embed->add_flag("--omit-timing", eo.omit_timing, "Leave wall_ms out of the output");
  add_manifest_option(embed, common);

  GenerateOptions go;
  auto* gen = app.add_subcommand("generate", "Generate random circuits");
  gen->add_option("--majority", go.majority, "Majority gates, N or MIN,MAX");
  gen->add_option("--inverters", go.inverters, "Inverters, N or MIN,MAX");
  gen->add_option("--drivers", go.drivers, "Driver count bounds MIN,MAX");
  gen->add_option("--wire", go.wire, "Wire length range MIN,MAX (cells)");
  gen->add_option("--adjacency", go.adjacency, "Connectivity mode")->check(CLI::IsMember({"limited", "full"}));
  gen->add_option("--seed", go.seed, "Root seed");
  gen->add_option("--count", go.count, "Number of circuits");
  gen->add_option("-o,--out", go.out, "Output file for a single circuit (default stdout)");
  gen->add_option("--out-dir", go.out_dir, "Directory for a batch plus index.json");
  add_manifest_option(gen, common);

  SweepOptions so;
  auto* sweep = app.add_subcommand("sweep", "Run an embedding sweep");
  sweep->add_option("--circuits", so.circuits_dir, "Directory of circuit JSON files");
  sweep->add_option("--generate", so.generate_count, "Generate this many circuits");
  sweep->add_option("--majority", so.gen.majority, "Majority gates per generated circuit");
  sweep->add_option("--inverters", so.gen.inverters, "Inverters per generated circuit");
  sweep->add_option("--drivers", so.gen.drivers, "Driver count bounds");
  sweep->add_option("--wire", so.gen.wire, "Wire length range");
  sweep->add_option("--algorithm", so.algorithm, "Algorithms to run")->check(CLI::IsMember({"dense", "heuristic", "both"}));
  sweep->add_option("--adjacency", so.adjacency, "Adjacency modes to run")->check(CLI::IsMember({"limited", "full", "both"}));
  sweep->add_option("--chimera", so.chimera, "Processor as MxNxL");
  sweep->add_option("--ndis", so.ndis, "Comma-separated disabled fractions");
  sweep->add_option("--trials", so.trials, "Trials per circuit and setting");
  sweep->add_option("--seed", so.seed, "Root seed");
  sweep->add_option("--timeout-s", so.timeout_s, "Wall-clock limit per trial")->check(CLI::PositiveNumber);
  sweep->add_option("--tries", so.tries, "Heuristic restarts per trial")->check(CLI::PositiveNumber);
  sweep->add_option("--initial-order", so.initial_order, "Heuristic initial pass order")
      ->check(CLI::IsMember({"random", "priority"}));
  sweep->add_option("--jobs", so.jobs, "Worker threads");
  sweep->add_option("-o,--out", so.out, "CSV output (default stdout)");
  sweep->add_option("--fit", so.fits, "erfc | power | runtime | yield (repeatable)");
  sweep->add_option("--fit-out", so.fit_out, "Fit JSON output (default stdout after the CSV is written)");
  sweep->add_option("--bin-width", so.bin_width, "Cells per size bin");
  sweep->add_flag("--summary", so.summary, "Print a summary table to stderr");
  sweep->add_flag("--omit-timing", so.omit_timing, "Write wall_ms as 0");
  add_manifest_option(sweep, common);

  FitOptions fo;
  auto* fit = app.add_subcommand("fit", "Fit a sweep CSV");
  fit->add_option("csv", fo.csv, "Sweep CSV")->required();
  fit->add_option("--fit", fo.fits, "erfc | power | runtime | yield (repeatable)");
  fit->add_option("--bin-width", fo.bin_width, "Cells per size bin");
  fit->add_option("-o,--out", fo.out, "Fit JSON output (default stdout)");
  add_manifest_option(fit, common);

  SpectrumOptions po;
  auto* spec = app.add_subcommand("spectrum", "Energy gap of a two-group wire");
  spec->add_option("--wire", po.wire, "Group sizes N,M");
  spec->add_option("--j12", po.j12, "Coupling between the groups");
  spec->add_option("--jc", po.jc, "Coupling inside each group");
  spec->add_option("--pd1", po.pd1, "Left driver polarisation");
  spec->add_option("--pd2", po.pd2, "Right driver polarisation (default -1 when j12 > 0)");
  spec->add_option("--driver", po.driver, "Driver field on every spin of a group or its outermost one")->check(CLI::IsMember({"whole_group", "outermost"}));
  spec->add_option("--grid", po.grid, "Points on the s axis")->check(CLI::Range(2, 1000000));
  spec->add_option("--cap", po.cap, "Largest allowed N+M");
  spec->add_option("-o,--out", po.out, "CSV output (default stdout)");
  spec->add_option("--summary", po.summary, "Summary JSON (default stderr)");
  add_manifest_option(spec, common);

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", replay_path, "Manifest JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (scalar_only) simd::set_level(simd::Level::scalar);

  RunManifest manifest;
  manifest.args = args;
  manifest.started = utc_timestamp();
  int code = kOk;
  CLI::App* chosen = app.get_subcommands().front();
  manifest.subcommand = chosen->get_name();
  for (const auto* opt : chosen->get_options()) {
    if (opt->count() > 0 && !opt->get_lnames().empty()) manifest.flags[opt->get_lnames().front()] = opt->as<std::string>();
  }
  if (chosen == replay) {
    if (depth > 0) throw std::invalid_argument("a manifest cannot replay another replay");
    const auto recorded = manifest_from_json(read_text_file(replay_path));
    return run_cli(recorded.args, depth + 1);
  }
  if (chosen == embed) {
    code = run_embed(eo, manifest);
  } else if (chosen == gen) {
    code = run_generate(go, manifest);
  } else if (chosen == sweep) {
    code = run_sweep_cmd(so, manifest);
  } else if (chosen == fit) {
    code = run_fit_cmd(fo, manifest);
  } else if (chosen == spec) {
    code = run_spectrum(po, manifest);
  }
  if (!common.manifest.empty()) {
    manifest.finished = utc_timestamp();
    manifest.exit_code = code;
    write_text_file(common.manifest, manifest_to_json(manifest));
  }
  return code;
}

int run_cli(std::vector<std::string> args, int depth) {
  try {
    return dispatch(std::move(args), depth);
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}

} // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(std::move(args), 0);
}
