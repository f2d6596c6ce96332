#include "qcaembed/bench.hpp"

#include "qcaembed/embedding.hpp"
#include "qcaembed/model_convert.hpp"
#include "qcaembed/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace qcaembed {

std::string_view to_string(Algorithm algorithm) { return algorithm == Algorithm::dense ? "dense" : "heuristic"; }

Algorithm parse_algorithm(std::string_view text) {
  if (text == "dense") return Algorithm::dense;
  if (text == "heuristic") return Algorithm::heuristic;
  throw std::invalid_argument("algorithm must be 'dense' or 'heuristic', got '" + std::string(text) + "'");
}

namespace {

std::string shortest(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

template <class T>
T parse_number(const std::string& field, const char* what) {
  T value{};
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " field '" + field + "'");
  }
  return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

} // namespace

std::string records_to_csv(const std::vector<TrialRecord>& records, bool omit_timing) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : records) {
    for (const auto* text : {&r.circuit_id, &r.algorithm, &r.adjacency}) {
      if (text->find_first_of(",\"\n") != std::string::npos) {
        throw std::invalid_argument("CSV field '" + *text + "' contains a separator");
      }
    }
    out += r.circuit_id + ',' + std::to_string(r.n_cells) + ',' + r.algorithm + ',' + r.adjacency + ',' +
           std::to_string(r.rows) + ',' + std::to_string(r.cols) + ',' + shortest(r.n_dis) + ',' +
           std::to_string(r.seed) + ',' + (r.success ? "1" : "0") + ',' + std::to_string(r.n_qubits) + ',' +
           std::to_string(r.max_model) + ',' + (omit_timing ? std::string("0") : shortest(r.wall_ms)) + '\n';
  }
  return out;
}

std::vector<TrialRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::invalid_argument("unexpected CSV header: " + line);
  std::vector<TrialRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != 12) throw std::invalid_argument("CSV line " + std::to_string(lineno) + " has " + std::to_string(f.size()) + " fields");
    TrialRecord r;
    r.circuit_id = f[0];
    r.n_cells = parse_number<int>(f[1], "n_cells");
    r.algorithm = f[2];
    r.adjacency = f[3];
    r.rows = parse_number<int>(f[4], "rows");
    r.cols = parse_number<int>(f[5], "cols");
    r.n_dis = parse_number<double>(f[6], "n_dis");
    r.seed = parse_number<std::uint64_t>(f[7], "seed");
    if (f[8] != "0" && f[8] != "1") throw std::invalid_argument("bad success field '" + f[8] + "'");
    r.success = f[8] == "1";
    r.n_qubits = parse_number<int>(f[9], "n_qubits");
    r.max_model = parse_number<int>(f[10], "max_model");
    r.wall_ms = parse_number<double>(f[11], "wall_ms");
    out.push_back(r);
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t root, const std::string& circuit_id, Algorithm algorithm, int ndis_index,
                         int trial) {
  return derive_seed(root, "trial/" + circuit_id + "/" + std::string(to_string(algorithm)),
                     static_cast<std::uint64_t>(ndis_index), static_cast<std::uint64_t>(trial));
}

std::uint64_t yield_seed(std::uint64_t root, const std::string& circuit_id, int ndis_index, int trial) {
  return derive_seed(root, "yield/" + circuit_id, static_cast<std::uint64_t>(ndis_index),
                     static_cast<std::uint64_t>(trial));
}

TrialOutcome run_trial(const SweepCircuit& circuit, Algorithm algorithm, const ChimeraGraph& hw, double n_dis,
                       std::uint64_t seed, const SweepConfig& config) {
  TrialOutcome out;
  auto& r = out.record;
  r.circuit_id = circuit.id;
  r.n_cells = circuit.graph.num_nodes();
  r.algorithm = std::string(to_string(algorithm));
  r.adjacency = std::string(to_string(circuit.graph.mode()));
  r.rows = hw.spec().rows;
  r.cols = hw.spec().cols;
  r.n_dis = n_dis;
  r.seed = seed;
  Rng rng = make_rng(seed);
  VertexModelEmbedding models;
  if (algorithm == Algorithm::dense) {
    auto res = embed_dense(circuit.graph, hw, config.dense, rng);
    r.wall_ms = res.wall_ms;
    if (!res.embedding) return out;
    if (auto bad = validate(*res.embedding, circuit.graph, hw); !bad.empty()) {
      throw std::logic_error("dense embedding of " + circuit.id + " is invalid: " + bad.front().detail);
    }
    models = convert(circuit.graph, *res.embedding);
    out.chain_lengths = chain_lengths(*res.embedding);
  } else {
    auto res = embed_heuristic(circuit.graph, hw, config.heuristic, rng);
    r.wall_ms = res.wall_ms;
    if (!res.embedding) return out;
    models = std::move(*res.embedding);
  }
  if (auto bad = validate(models, circuit.graph, hw); !bad.empty()) {
    throw std::logic_error(r.algorithm + " embedding of " + circuit.id + " is invalid: " + bad.front().detail);
  }
  r.success = true;
  r.n_qubits = models.total_qubits();
  r.max_model = models.max_model_size();
  for (const auto& m : models.models) out.model_sizes.push_back(static_cast<int>(m.size()));
  return out;
}

SweepResult run_sweep(const std::vector<SweepCircuit>& circuits, const SweepConfig& config) {
  config.spec.validate();
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (config.algorithms.empty()) throw std::invalid_argument("no algorithm selected");
  struct Task {
    int circuit, ndis, algorithm, trial;
  };
  std::vector<Task> tasks;
  for (int c = 0; c < static_cast<int>(circuits.size()); ++c) {
    for (int d = 0; d < static_cast<int>(config.n_dis.size()); ++d) {
      for (int a = 0; a < static_cast<int>(config.algorithms.size()); ++a) {
        for (int t = 0; t < config.trials; ++t) tasks.push_back({c, d, a, t});
      }
    }
  }
  const ChimeraGraph full = build_chimera(config.spec);
  std::vector<TrialOutcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      const Task& task = tasks[k];
      try {
        const auto& circuit = circuits[task.circuit];
        const double n_dis = config.n_dis[task.ndis];
        ChimeraGraph hw = full;
        if (n_dis > 0.0) {
          hw = apply_yield(full, YieldMask::random(config.spec, n_dis,
                                                   yield_seed(config.root_seed, circuit.id, task.ndis, task.trial)));
        }
        const Algorithm alg = config.algorithms[task.algorithm];
        outcomes[k] = run_trial(circuit, alg, hw, n_dis,
                                trial_seed(config.root_seed, circuit.id, alg, task.ndis, task.trial), config);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks.size());
        return;
      }
    }
  };
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult out;
  for (auto& o : outcomes) {
    for (int s : o.model_sizes) ++out.model_sizes[o.record.algorithm][s];
    for (int l : o.chain_lengths) ++out.chain_lengths[l];
    out.records.push_back(std::move(o.record));
  }
  return out;
}

std::vector<GroupSummary> summarize(const std::vector<TrialRecord>& records) {
  std::map<std::tuple<std::string, std::string, double>, GroupSummary> groups;
  for (const auto& r : records) {
    auto& g = groups[{r.algorithm, r.adjacency, r.n_dis}];
    g.algorithm = r.algorithm;
    g.adjacency = r.adjacency;
    g.n_dis = r.n_dis;
    ++g.trials;
    g.mean_wall_ms += r.wall_ms;
    if (r.success) {
      ++g.successes;
      g.mean_qubits += r.n_qubits;
      g.mean_max_model += r.max_model;
    }
  }
  std::vector<GroupSummary> out;
  for (auto& [key, g] : groups) {
    g.mean_wall_ms /= g.trials;
    if (g.successes) {
      g.mean_qubits /= g.successes;
      g.mean_max_model /= g.successes;
    }
    out.push_back(g);
  }
  return out;
}

std::string format_summary(const std::vector<GroupSummary>& groups, const SweepResult* histograms) {
  std::ostringstream os;
  if (groups.empty()) return "";
  os << std::left << std::setw(10) << "algorithm" << std::setw(9) << "adjacency" << std::right << std::setw(7)
     << "n_dis" << std::setw(8) << "trials" << std::setw(8) << "success" << std::setw(11) << "mean_qb" << std::setw(11)
     << "mean_max" << std::setw(12) << "mean_ms" << '\n';
  os << std::fixed;
  for (const auto& g : groups) {
    os << std::left << std::setw(10) << g.algorithm << std::setw(9) << g.adjacency << std::right << std::setw(7)
       << std::setprecision(3) << g.n_dis << std::setw(8) << g.trials << std::setw(8) << g.successes << std::setw(11)
       << std::setprecision(2) << g.mean_qubits << std::setw(11) << g.mean_max_model << std::setw(12)
       << std::setprecision(1) << g.mean_wall_ms << '\n';
  }
  if (histograms) {
    for (const auto& [alg, hist] : histograms->model_sizes) {
      os << "\nmodel sizes (" << alg << "):";
      for (const auto& [size, count] : hist) os << ' ' << size << ':' << count;
    }
    if (!histograms->chain_lengths.empty()) {
      os << "\nchain lengths (dense):";
      for (const auto& [len, count] : histograms->chain_lengths) os << ' ' << len << ':' << count;
    }
    os << '\n';
  }
  return os.str();
}

namespace {

using GroupKey = std::tuple<std::string, std::string, double>;

std::map<GroupKey, std::vector<const TrialRecord*>> group_records(const std::vector<TrialRecord>& records) {
  std::map<GroupKey, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) groups[{r.algorithm, r.adjacency, r.n_dis}].push_back(&r);
  return groups;
}

} // namespace

std::vector<GroupFit> fit_success(const std::vector<TrialRecord>& records, int bin_width) {
  std::vector<GroupFit> out;
  for (const auto& [key, list] : group_records(records)) {
    std::vector<SizeOutcome> outcomes;
    for (const auto* r : list) outcomes.push_back({r->n_cells, r->success});
    try {
      out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), fit_erfc(bin_outcomes(outcomes, bin_width))});
    } catch (const std::invalid_argument&) {
    }
  }
  return out;
}

std::vector<GroupFit> fit_usage(const std::vector<TrialRecord>& records, int bin_width) {
  std::vector<GroupFit> out;
  for (const auto& [key, list] : group_records(records)) {
    if (std::get<2>(key) != 0.0) continue;
    std::map<int, std::pair<double, double>> sums;  // bin -> (cells, qubits)
    std::map<int, int> counts;
    for (const auto* r : list) {
      if (!r->success) continue;
      const int bin = r->n_cells / bin_width;
      sums[bin].first += r->n_cells;
      sums[bin].second += r->n_qubits;
      ++counts[bin];
    }
    std::vector<double> xs, ys;
    for (const auto& [bin, s] : sums) {
      xs.push_back(s.first / counts[bin]);
      ys.push_back(s.second / counts[bin]);
    }
    try {
      out.push_back({std::get<0>(key), std::get<1>(key), 0.0, fit_power(xs, ys)});
    } catch (const std::invalid_argument&) {
    }
  }
  return out;
}

std::vector<GroupFit> fit_runtime(const std::vector<TrialRecord>& records, int bin_width) {
  std::vector<GroupFit> out;
  for (const auto& [key, list] : group_records(records)) {
    std::map<int, double> worst;
    std::map<int, std::pair<double, int>> cells;
    for (const auto* r : list) {
      const int bin = r->n_cells / bin_width;
      worst[bin] = std::max(worst[bin], r->wall_ms);
      cells[bin].first += r->n_cells;
      ++cells[bin].second;
    }
    std::vector<double> xs, ys;
    for (const auto& [bin, w] : worst) {
      if (w <= 0.0) continue;
      xs.push_back(cells[bin].first / cells[bin].second);
      ys.push_back(w);
    }
    try {
      out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), fit_power(xs, ys)});
    } catch (const std::invalid_argument&) {
    }
  }
  return out;
}

std::vector<GroupFit> fit_yield_groups(const std::vector<TrialRecord>& records, int bin_width) {
  std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>> series;
  for (const auto& g : fit_success(records, bin_width)) {
    auto& s = series[{g.algorithm, g.adjacency}];
    s.first.push_back(g.n_dis);
    s.second.push_back(g.fit.param("mu"));
  }
  std::vector<GroupFit> out;
  for (const auto& [key, s] : series) {
    try {
      out.push_back({key.first, key.second, 0.0, fit_yield(s.first, s.second)});
    } catch (const std::invalid_argument&) {
    }
  }
  return out;
}

std::string group_fits_to_json(const std::vector<GroupFit>& fits) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& g : fits) {
    auto entry = nlohmann::ordered_json::parse(fit_to_json(g.fit));
    nlohmann::ordered_json item;
    item["algorithm"] = g.algorithm;
    item["adjacency"] = g.adjacency;
    item["n_dis"] = g.n_dis;
    item["fit"] = entry;
    doc.push_back(item);
  }
  return doc.dump(2) + "\n";
}

} // namespace qcaembed
