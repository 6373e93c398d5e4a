#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semgraph/matcher.hpp"
#include "semgraph/relations.hpp"
#include "semgraph/synthgen.hpp"

namespace semgraph {

enum class FilterMode { On, Off, Both };

std::string_view to_string(FilterMode m);
std::optional<FilterMode> parse_filter_mode(std::string_view text);

/// Sweep over (symmetry, A-rooms, S-rooms, density) cells. Cells with more
/// S-rooms than A-rooms are skipped.
struct BenchSpec {
  std::vector<std::size_t> a_rooms{2, 3, 4, 5, 6};
  std::vector<std::size_t> s_rooms{1, 2, 3, 4, 5, 6};
  std::vector<Symmetry> symmetries{Symmetry::None, Symmetry::Local, Symmetry::Global};
  std::vector<double> densities{0.0, 0.1, 0.2};
  std::size_t seeds_per_cell = 30;
  std::uint64_t base_seed = 1;
  FilterMode filter = FilterMode::Both;
  /// Each match is timed this many times (filter modes interleaved) and the
  /// fastest run is reported.
  std::size_t timing_repeats = 3;
  MatchConfig match;
  LayoutSpec layout;  // n_rooms, symmetry, object_density and seed are set per run
  RelationParams relations;

  void check() const;
};

struct BenchRow {
  std::uint64_t seed = 0;
  Symmetry symmetry = Symmetry::None;
  std::size_t a_rooms = 0;
  std::size_t s_rooms = 0;
  double density = 0.0;
  bool filter = true;
  std::size_t n_solutions = 0;
  MatchOutcome outcome = MatchOutcome::NoMatch;
  double elapsed_s = 0.0;
  std::size_t candidates_before = 0;
  std::size_t candidates_after = 0;
  std::size_t combinations_evaluated = 0;
  bool correct = false;  // ground truth among the solutions
};

struct BenchFailure {
  std::uint64_t seed = 0;
  Symmetry symmetry = Symmetry::None;
  std::size_t a_rooms = 0;
  std::size_t s_rooms = 0;
  double density = 0.0;
  std::string message;
};

struct BenchReport {
  std::vector<BenchRow> rows;  // ordered by cell, seed, filter (on before off)
  std::vector<BenchFailure> failures;
};

/// One sweep run: layout, objects, an S-Graph of `s_rooms` connected rooms
/// under a random rigid offset, then match() in the requested filter modes.
std::vector<BenchRow> bench_run(const BenchSpec& spec, Symmetry symmetry, std::size_t a_rooms,
                                std::size_t s_rooms, double density, std::uint64_t seed);

/// Runs every cell and seed on `jobs` worker threads. Row order does not
/// depend on `jobs`.
BenchReport bench_matching(const BenchSpec& spec, std::size_t jobs = 1);

inline constexpr const char* kRunsCsvHeader =
    "seed,symmetry,a_rooms,s_rooms,density,filter,n_solutions,outcome,elapsed_s,"
    "candidates_before,candidates_after,combinations_evaluated,correct";
inline constexpr const char* kAggregateCsvHeader =
    "symmetry,a_rooms,s_rooms,density,filter,runs,mean_n_solutions,median_n_solutions,frac_unique,"
    "frac_correct,mean_elapsed_s,median_elapsed_s,mean_combinations,median_combinations";

std::string runs_csv(const BenchReport& report);
std::string aggregate_csv(const BenchReport& report);

/// Picks `count` rooms by breadth-first search over wall adjacency from a
/// random start room; disconnected rooms are appended in id order.
std::vector<NodeId> connected_rooms(const SceneGraph& g, std::size_t count, double max_gap, std::uint64_t seed);

}  // namespace semgraph
