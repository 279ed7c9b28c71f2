#include "dyncc/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "dyncc/baselines.hpp"

namespace dyncc {

namespace {

constexpr std::string_view kCsvHeader =
    "update_index,sdd_cost,pivot_cost,singleton_cost,sdd_ratio,pivot_ratio,"
    "oracle_ops,wall_time_ns";

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw Error(ErrorCode::kParseError, "bad value for " + key + ": '" + value + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) bad_value(key, value);
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad_value(key, value);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

SeedSet SeedSet::derive(std::uint64_t seed) {
  std::uint64_t state = seed;
  SeedSet s{};
  s.input = splitmix64(state);
  s.stream = splitmix64(state);
  s.maintainer = splitmix64(state);
  s.pivot = splitmix64(state);
  s.adversary = splitmix64(state);
  return s;
}

void ExperimentConfig::validate() const {
  if (checkpoint_every == 0) {
    throw Error(ErrorCode::kInvalidSpec, "checkpoint_every must be >= 1");
  }
  if (!(eps_step > 0)) throw Error(ErrorCode::kInvalidSpec, "eps_step must be > 0");
  if (!(eps_lo <= eps_hi)) throw Error(ErrorCode::kInvalidSpec, "eps_lo > eps_hi");
  if (seeds.empty()) throw Error(ErrorCode::kInvalidSpec, "no seeds");
  if (sweep_horizon == 0) throw Error(ErrorCode::kInvalidSpec, "sweep_horizon must be >= 1");
  if (input == InputKind::kSbm) sbm.validate();
  if (input == InputKind::kSnap && snap_path.empty()) {
    throw Error(ErrorCode::kInvalidSpec, "snap input needs a path");
  }
  stream.validate();
  sdd.validate();
}

void apply_config_entry(ExperimentConfig& c, const std::string& raw_key,
                        const std::string& value) {
  const std::string key = normalize_key(raw_key);
  if (key == "input") {
    if (value == "sbm") c.input = InputKind::kSbm;
    else if (value == "snap") c.input = InputKind::kSnap;
    else bad_value(key, value);
  } else if (key == "n") {
    c.sbm.n = parse_number<std::size_t>(key, value);
  } else if (key == "k") {
    c.sbm.k = parse_number<std::size_t>(key, value);
  } else if (key == "p") {
    c.sbm.p = parse_number<double>(key, value);
  } else if (key == "q") {
    c.sbm.q = parse_number<double>(key, value);
  } else if (key == "snap_path") {
    c.snap_path = value;
  } else if (key == "mode") {
    if (value == "random") c.stream.mode = StreamMode::kRandom;
    else if (value == "targeted") c.stream.mode = StreamMode::kTargeted;
    else bad_value(key, value);
  } else if (key == "p_del") {
    c.stream.p_del = parse_number<double>(key, value);
  } else if (key == "updates" || key == "total_updates") {
    c.stream.total_updates = parse_number<std::size_t>(key, value);
  } else if (key == "eps") {
    c.sdd.eps = parse_number<double>(key, value);
  } else if (key == "eps_lo") {
    c.eps_lo = parse_number<double>(key, value);
  } else if (key == "eps_hi") {
    c.eps_hi = parse_number<double>(key, value);
  } else if (key == "eps_step") {
    c.eps_step = parse_number<double>(key, value);
  } else if (key == "sweep_horizon" || key == "horizon") {
    c.sweep_horizon = parse_number<std::size_t>(key, value);
  } else if (key == "checkpoint_every") {
    c.checkpoint_every = parse_number<std::size_t>(key, value);
  } else if (key == "seeds") {
    c.seeds.clear();
    std::stringstream list(value);
    std::string item;
    while (std::getline(list, item, ',')) {
      item = trim(item);
      if (!item.empty()) c.seeds.push_back(parse_number<std::uint64_t>(key, item));
    }
    if (c.seeds.empty()) bad_value(key, value);
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "timing") {
    c.record_time = parse_bool(key, value);
  } else if (key == "strict") {
    c.strict = parse_bool(key, value);
  } else if (key == "sdd_mode") {
    if (value == "exact") c.sdd.mode = SddMode::kExact;
    else if (value == "sampled") c.sdd.mode = SddMode::kSampled;
    else bad_value(key, value);
  } else if (key == "c_merge") {
    c.sdd.c_merge = parse_number<double>(key, value);
  } else if (key == "c_fail") {
    c.sdd.c_fail = parse_number<double>(key, value);
  } else if (key == "c_split") {
    c.sdd.c_split = parse_number<double>(key, value);
  } else if (key == "c_local") {
    c.sdd.c_local = parse_number<double>(key, value);
  } else {
    throw Error(ErrorCode::kParseError, "unknown config key '" + raw_key + "'");
  }
}

void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParseError,
                  path.string() + ":" + std::to_string(line_no) + ": expected key=value");
    }
    apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

EdgeList build_input(const ExperimentConfig& config, std::uint64_t seed) {
  if (config.input == InputKind::kSnap) return load_snap_edgelist(config.snap_path);
  SbmSpec spec = config.sbm;
  spec.seed = seed;
  return {spec.n, sbm_generate(spec)};
}

RunResult run_single(const ExperimentConfig& config, std::uint64_t seed, bool verify) {
  config.validate();
  const SeedSet seeds = SeedSet::derive(seed);
  EdgeList input = build_input(config, seeds.input);

  RunResult result;
  result.seed = seed;
  result.n = input.n;
  result.m = input.edges.size();

  StreamSpec spec = config.stream;
  spec.seed = seeds.stream;
  std::unique_ptr<UpdateStream> stream;
  std::size_t suppress_before = 0;
  if (spec.mode == StreamMode::kTargeted) {
    suppress_before = result.m / 2;
    stream = targeted_stream(input.n, std::move(input.edges), spec,
                             [rng = Rng(seeds.adversary)](const DynGraph& g) mutable {
                               return pivot_clustering(g, rng);
                             });
  } else {
    stream = random_stream(input.n, std::move(input.edges), spec);
  }

  Maintainer maintainer(result.n, config.sdd, seeds.maintainer);
  Rng pivot_rng(seeds.pivot);
  std::uint64_t elapsed_ns = 0;
  std::size_t applied = 0;
  while (auto update = stream->next()) {
    const auto t0 = std::chrono::steady_clock::now();
    maintainer.apply_update(*update);
    if (config.record_time) {
      elapsed_ns += static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(
              std::chrono::steady_clock::now() - t0)
              .count());
    }
    ++applied;
    if (applied % config.checkpoint_every != 0 || applied < suppress_before) continue;

    const DynGraph& g = maintainer.graph();
    CheckpointRow row;
    row.update_index = applied;
    row.sdd_cost = cc_cost(g, maintainer.clustering());
    row.pivot_cost = cc_cost(g, pivot_clustering(g, pivot_rng));
    row.singleton_cost = g.edge_count();
    row.sdd_ratio = ratio(row.sdd_cost, row.singleton_cost);
    row.pivot_ratio = ratio(row.pivot_cost, row.singleton_cost);
    row.oracle_ops = maintainer.totals().oracle_ops;
    row.wall_time_ns = elapsed_ns;
    result.rows.push_back(row);
    if (verify && !maintainer.verify_invariants(config.strict).ok()) {
      ++result.invariant_failures;
    }
  }
  result.updates = applied;
  result.totals = maintainer.totals();
  return result;
}

void write_csv(std::ostream& out, const std::vector<CheckpointRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.update_index << ',' << r.sdd_cost << ',' << r.pivot_cost << ','
        << r.singleton_cost << ',' << fixed(r.sdd_ratio, 6) << ','
        << fixed(r.pivot_ratio, 6) << ',' << r.oracle_ops << ',' << r.wall_time_ns
        << '\n';
  }
}

std::vector<CheckpointRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kEmptyInput, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw Error(ErrorCode::kParseError, "line 1: unexpected header");
  std::vector<CheckpointRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream fields(line);
    std::string item;
    while (std::getline(fields, item, ',')) f.push_back(item);
    if (f.size() != 8) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected 8 fields");
    }
    const std::string where = "line " + std::to_string(line_no);
    CheckpointRow r;
    r.update_index = parse_number<std::uint64_t>(where, f[0]);
    r.sdd_cost = parse_number<std::uint64_t>(where, f[1]);
    r.pivot_cost = parse_number<std::uint64_t>(where, f[2]);
    r.singleton_cost = parse_number<std::uint64_t>(where, f[3]);
    r.sdd_ratio = parse_number<double>(where, f[4]);
    r.pivot_ratio = parse_number<double>(where, f[5]);
    r.oracle_ops = parse_number<std::uint64_t>(where, f[6]);
    r.wall_time_ns = parse_number<std::uint64_t>(where, f[7]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<RunResult> run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.output_dir);
  std::vector<RunResult> results;
  for (std::uint64_t seed : config.seeds) {
    results.push_back(run_single(config, seed));
    const auto path = config.output_dir / ("run_seed" + std::to_string(seed) + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
    write_csv(out, results.back().rows);
  }
  return results;
}

std::vector<double> sweep_grid(double lo, double hi, double step) {
  if (!(step > 0) || !(lo <= hi)) throw Error(ErrorCode::kInvalidSpec, "bad sweep range");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + static_cast<double>(i) * step;
  return grid;
}

SweepResult epsilon_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult result;
  double best = std::numeric_limits<double>::infinity();
  for (double eps : sweep_grid(config.eps_lo, config.eps_hi, config.eps_step)) {
    ExperimentConfig point = config;
    point.sdd.eps = eps;
    point.stream.total_updates = std::min(config.stream.total_updates, config.sweep_horizon);
    double sdd_sum = 0, pivot_sum = 0;
    std::size_t rows = 0;
    for (std::uint64_t seed : config.seeds) {
      for (const auto& r : run_single(point, seed).rows) {
        sdd_sum += r.sdd_ratio;
        pivot_sum += r.pivot_ratio;
        ++rows;
      }
    }
    if (rows == 0) {
      throw Error(ErrorCode::kEmptyInput, "sweep horizon produced no checkpoints");
    }
    SweepPoint p{eps, sdd_sum / static_cast<double>(rows),
                 pivot_sum / static_cast<double>(rows)};
    if (p.mean_sdd_ratio < best) {
      best = p.mean_sdd_ratio;
      result.best_eps = eps;
    }
    result.points.push_back(p);
  }
  std::filesystem::create_directories(config.output_dir);
  const auto path = config.output_dir / "sweep.csv";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << "eps,mean_sdd_ratio,mean_pivot_ratio\n";
  for (const auto& p : result.points) {
    out << fixed(p.eps, 3) << ',' << fixed(p.mean_sdd_ratio, 6) << ','
        << fixed(p.mean_pivot_ratio, 6) << '\n';
  }
  return result;
}

namespace {

struct Series {
  std::vector<std::pair<double, double>> points;
  std::string color;
  double width;
  double opacity;
};

}  // namespace

std::string render_plot(const std::vector<std::vector<CheckpointRow>>& runs) {
  if (runs.empty()) throw Error(ErrorCode::kEmptyInput, "no runs to plot");
  for (const auto& rows : runs) {
    if (rows.empty()) throw Error(ErrorCode::kEmptyInput, "CSV has no rows");
  }
  constexpr const char* kSddColor = "#1f77b4";
  constexpr const char* kPivotColor = "#d62728";
  const bool many = runs.size() > 1;

  std::vector<Series> series;
  for (const auto& rows : runs) {
    Series sdd{{}, kSddColor, many ? 1.0 : 2.0, many ? 0.35 : 1.0};
    Series piv{{}, kPivotColor, many ? 1.0 : 2.0, many ? 0.35 : 1.0};
    for (const auto& r : rows) {
      sdd.points.emplace_back(static_cast<double>(r.update_index), r.sdd_ratio);
      piv.points.emplace_back(static_cast<double>(r.update_index), r.pivot_ratio);
    }
    series.push_back(std::move(sdd));
    series.push_back(std::move(piv));
  }
  if (many) {
    // Mean over the update indices that every run reports.
    std::map<std::uint64_t, std::tuple<double, double, std::size_t>> acc;
    for (const auto& rows : runs) {
      for (const auto& r : rows) {
        auto& [s, p, c] = acc[r.update_index];
        s += r.sdd_ratio;
        p += r.pivot_ratio;
        ++c;
      }
    }
    Series sdd{{}, kSddColor, 2.5, 1.0};
    Series piv{{}, kPivotColor, 2.5, 1.0};
    for (const auto& [idx, a] : acc) {
      const auto& [s, p, c] = a;
      if (c != runs.size()) continue;
      const double k = static_cast<double>(c);
      sdd.points.emplace_back(static_cast<double>(idx), s / k);
      piv.points.emplace_back(static_cast<double>(idx), p / k);
    }
    series.push_back(std::move(sdd));
    series.push_back(std::move(piv));
  }

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo, y_hi = 0;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_hi = std::max(y_hi, y);
    }
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1;
  y_hi = y_hi > 0 ? y_hi * 1.05 : 1.0;

  constexpr double kW = 800, kH = 480, kL = 70, kR = 20, kT = 40, kB = 60;
  auto px = [&](double x) { return kL + (x - x_lo) / (x_hi - x_lo) * (kW - kL - kR); };
  auto py = [&](double y) { return kH - kB - y / y_hi * (kH - kT - kB); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\""
      << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">Cost ratio vs. singleton</text>\n";
  // Axes with five ticks each.
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR
      << "\" y2=\"" << kH - kB << "\"/>\n";
  svg << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\""
      << kH - kB << "\"/>\n";
  svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x_lo + (x_hi - x_lo) * i / 4;
    const double yv = y_hi * i / 4;
    svg << "<text x=\"" << fixed(px(xv), 1) << "\" y=\"" << kH - kB + 18
        << "\" text-anchor=\"middle\">" << fixed(xv, 0) << "</text>\n";
    svg << "<text x=\"" << kL - 6 << "\" y=\"" << fixed(py(yv) + 4, 1)
        << "\" text-anchor=\"end\">" << fixed(yv, 3) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
         "update index</text>\n";
  svg << "<text transform=\"translate(18," << (kT + kH - kB) / 2
      << ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">cost / singleton cost</text>\n";

  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
        << s.width << "\" stroke-opacity=\"" << s.opacity << "\" points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      if (i) svg << ' ';
      svg << fixed(px(s.points[i].first), 2) << ',' << fixed(py(s.points[i].second), 2);
    }
    svg << "\"/>\n";
  }

  const double lx = kW - kR - 150, ly = kT + 10;
  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\""
      << ly << "\" stroke=\"" << kSddColor << "\" stroke-width=\"2.5\"/>\n";
  svg << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">sdd_ratio</text>\n";
  svg << "<line x1=\"" << lx << "\" y1=\"" << ly + 18 << "\" x2=\"" << lx + 24
      << "\" y2=\"" << ly + 18 << "\" stroke=\"" << kPivotColor
      << "\" stroke-width=\"2.5\"/>\n";
  svg << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 22 << "\">pivot_ratio</text>\n";
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void emit_plot(const std::vector<std::filesystem::path>& csvs,
               const std::filesystem::path& out) {
  std::vector<std::vector<CheckpointRow>> runs;
  for (const auto& path : csvs) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
    runs.push_back(read_csv(in));
  }
  const std::string svg = render_plot(runs);
  std::ofstream file(out, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIoError, "cannot write " + out.string());
  file << svg;
}

}  // namespace dyncc
