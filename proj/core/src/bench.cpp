#include "semgraph/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "semgraph/errors.hpp"

namespace semgraph {

std::string_view to_string(FilterMode m) {
  switch (m) {
    case FilterMode::On: return "on";
    case FilterMode::Off: return "off";
    case FilterMode::Both: return "both";
  }
  return "unknown";
}

std::optional<FilterMode> parse_filter_mode(std::string_view text) {
  if (text == "on") return FilterMode::On;
  if (text == "off") return FilterMode::Off;
  if (text == "both") return FilterMode::Both;
  return std::nullopt;
}

void BenchSpec::check() const {
  if (a_rooms.empty() || s_rooms.empty() || symmetries.empty() || densities.empty()) {
    throw InvalidArgument("bench spec: every sweep axis needs at least one value");
  }
  if (seeds_per_cell == 0) throw InvalidArgument("bench spec: seeds_per_cell must be >= 1");
  if (timing_repeats == 0) throw InvalidArgument("bench spec: timing_repeats must be >= 1");
  for (std::size_t a : a_rooms) {
    if (a == 0) throw InvalidArgument("bench spec: a_rooms values must be positive");
  }
  for (std::size_t s : s_rooms) {
    if (s == 0) throw InvalidArgument("bench spec: s_rooms values must be positive");
  }
  bool any_cell = false;
  for (std::size_t a : a_rooms) {
    for (std::size_t s : s_rooms) any_cell = any_cell || s <= a;
  }
  if (!any_cell) throw InvalidArgument("bench spec: no cell with s_rooms <= a_rooms");
  match.check();
  relations.check();
  for (double d : densities) {
    LayoutSpec probe = layout;
    probe.object_density = d;
    probe.check();
  }
}

std::vector<NodeId> connected_rooms(const SceneGraph& g, std::size_t count, double max_gap, std::uint64_t seed) {
  const std::size_t n = g.rooms.size();
  if (count > n) throw InvalidArgument("connected_rooms: asked for more rooms than the graph has");
  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[g.rooms[i].id] = i;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& w : adjacent_walls(g, max_gap, 0.5)) {
    adj[index[w.room_a]].push_back(index[w.room_b]);
    adj[index[w.room_b]].push_back(index[w.room_a]);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  std::mt19937_64 rng(seed);
  std::vector<NodeId> out;
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue;
  auto visit = [&](std::size_t r) {
    seen[r] = true;
    queue.push_back(r);
  };
  if (count > 0) visit(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  while (out.size() < count) {
    if (queue.empty()) {
      visit(static_cast<std::size_t>(std::find(seen.begin(), seen.end(), false) - seen.begin()));
    }
    const std::size_t r = queue.front();
    queue.pop_front();
    out.push_back(g.rooms[r].id);
    for (std::size_t nb : adj[r]) {
      if (!seen[nb]) visit(nb);
    }
  }
  return out;
}

namespace {

// Matches faster than this are timed as a batch of back-to-back calls.
constexpr double kMinBatchSeconds = 1e-3;

double batch_seconds_per_call(const SceneGraph& a, const SceneGraph& s, const MatchConfig& cfg, double single) {
  if (single >= kMinBatchSeconds) return single;
  const auto calls = static_cast<std::size_t>(std::ceil(kMinBatchSeconds / std::max(single, 1e-7)));
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < calls; ++i) (void)match(a, s, cfg);
  const std::chrono::duration<double> total = std::chrono::steady_clock::now() - start;
  return total.count() / static_cast<double>(calls);
}

}  // namespace

std::vector<BenchRow> bench_run(const BenchSpec& spec, Symmetry symmetry, std::size_t a_rooms,
                                std::size_t s_rooms, double density, std::uint64_t seed) {
  LayoutSpec ls = spec.layout;
  ls.n_rooms = a_rooms;
  ls.symmetry = symmetry;
  ls.object_density = density;
  ls.seed = seed;
  const Layout layout = generate(ls, spec.relations);

  SGraphDerivationSpec d;
  d.observed_rooms = connected_rooms(layout.graph, s_rooms, ls.wall_thickness_max + 1e-6, seed ^ 0x5bd1e995ULL);
  std::mt19937_64 rng(seed ^ 0xa0761d6478bd642fULL);
  std::uniform_real_distribution<double> yaw(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> shift(-10.0, 10.0);
  const double angle = yaw(rng);
  const double tx = shift(rng);
  const double ty = shift(rng);
  d.rigid_offset = RigidMotion::yaw(angle, Vec3(tx, ty, 0.0));
  d.seed = seed;
  const Derivation s = derive_sgraph(layout.graph, d);

  std::vector<bool> modes;
  if (spec.filter != FilterMode::Off) modes.push_back(true);
  if (spec.filter != FilterMode::On) modes.push_back(false);

  std::vector<std::optional<MatchResult>> results(modes.size());
  for (std::size_t rep = 0; rep < spec.timing_repeats; ++rep) {
    // Alternate which mode goes first so neither profits from a warm cache.
    for (std::size_t k = 0; k < modes.size(); ++k) {
      const std::size_t m = rep % 2 == 0 ? k : modes.size() - 1 - k;
      MatchConfig cfg = spec.match;
      cfg.use_semantic_filter = modes[m];
      MatchResult r = match(layout.graph, s.graph, cfg);
      r.stats.elapsed_s = batch_seconds_per_call(layout.graph, s.graph, cfg, r.stats.elapsed_s);
      if (!results[m]) {
        results[m] = std::move(r);
      } else {
        results[m]->stats.elapsed_s = std::min(results[m]->stats.elapsed_s, r.stats.elapsed_s);
      }
    }
  }

  std::vector<BenchRow> rows;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const MatchResult& r = *results[m];
    BenchRow row;
    row.seed = seed;
    row.symmetry = symmetry;
    row.a_rooms = a_rooms;
    row.s_rooms = s_rooms;
    row.density = density;
    row.filter = modes[m];
    row.n_solutions = r.solutions.size();
    row.outcome = r.outcome;
    row.elapsed_s = r.stats.elapsed_s;
    row.candidates_before = r.stats.candidates_before_filter;
    row.candidates_after = r.stats.candidates_after_filter;
    row.combinations_evaluated = r.stats.combinations_evaluated;
    row.correct = std::any_of(r.solutions.begin(), r.solutions.end(),
                              [&](const CandidateAssignment& c) { return c.same_mapping(s.ground_truth); });
    rows.push_back(row);
  }
  return rows;
}

namespace {

struct Task {
  Symmetry symmetry;
  std::size_t a_rooms;
  std::size_t s_rooms;
  double density;
  std::uint64_t seed;
};

std::string format_double(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace

BenchReport bench_matching(const BenchSpec& spec, std::size_t jobs) {
  spec.check();
  std::vector<Task> tasks;
  for (Symmetry sym : spec.symmetries) {
    for (std::size_t a : spec.a_rooms) {
      for (std::size_t s : spec.s_rooms) {
        if (s > a) continue;
        for (double density : spec.densities) {
          for (std::size_t i = 0; i < spec.seeds_per_cell; ++i) {
            tasks.push_back({sym, a, s, density, spec.base_seed + i});
          }
        }
      }
    }
  }

  std::vector<std::vector<BenchRow>> rows(tasks.size());
  std::vector<std::optional<std::string>> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      try {
        rows[i] = bench_run(spec, t.symmetry, t.a_rooms, t.s_rooms, t.density, t.seed);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(jobs, tasks.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  BenchReport report;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (errors[i]) {
      const Task& t = tasks[i];
      report.failures.push_back({t.seed, t.symmetry, t.a_rooms, t.s_rooms, t.density, *errors[i]});
    }
    report.rows.insert(report.rows.end(), rows[i].begin(), rows[i].end());
  }
  return report;
}

std::string runs_csv(const BenchReport& report) {
  std::ostringstream os;
  os << kRunsCsvHeader << '\n';
  for (const auto& r : report.rows) {
    os << r.seed << ',' << to_string(r.symmetry) << ',' << r.a_rooms << ',' << r.s_rooms << ','
       << format_double(r.density) << ',' << (r.filter ? "on" : "off") << ',' << r.n_solutions << ','
       << to_string(r.outcome) << ',' << format_double(r.elapsed_s, 9) << ',' << r.candidates_before << ','
       << r.candidates_after << ',' << r.combinations_evaluated << ',' << (r.correct ? "true" : "false")
       << '\n';
  }
  return os.str();
}

std::string aggregate_csv(const BenchReport& report) {
  using Key = std::tuple<Symmetry, std::size_t, std::size_t, double, bool>;
  std::vector<Key> order;
  std::map<Key, std::vector<const BenchRow*>> groups;
  for (const auto& r : report.rows) {
    const Key key{r.symmetry, r.a_rooms, r.s_rooms, r.density, r.filter};
    auto [it, added] = groups.try_emplace(key);
    if (added) order.push_back(key);
    it->second.push_back(&r);
  }
  std::ostringstream os;
  os << kAggregateCsvHeader << '\n';
  for (const auto& key : order) {
    const auto& g = groups[key];
    std::vector<double> sols, elapsed, combos;
    double unique = 0.0;
    double correct = 0.0;
    for (const BenchRow* r : g) {
      sols.push_back(static_cast<double>(r->n_solutions));
      elapsed.push_back(r->elapsed_s);
      combos.push_back(static_cast<double>(r->combinations_evaluated));
      unique += r->outcome == MatchOutcome::Unique ? 1.0 : 0.0;
      correct += r->correct ? 1.0 : 0.0;
    }
    const double n = static_cast<double>(g.size());
    const auto& [sym, a, s, density, filter] = key;
    os << to_string(sym) << ',' << a << ',' << s << ',' << format_double(density) << ','
       << (filter ? "on" : "off") << ',' << g.size() << ',' << format_double(mean(sols)) << ','
       << format_double(median(sols)) << ',' << format_double(unique / n) << ',' << format_double(correct / n)
       << ',' << format_double(mean(elapsed), 9) << ',' << format_double(median(elapsed), 9) << ','
       << format_double(mean(combos)) << ',' << format_double(median(combos)) << '\n';
  }
  return os.str();
}

}  // namespace semgraph
