#include "semgraph/matcher.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "consistency.hpp"
#include "semgraph/errors.hpp"

namespace semgraph {

using detail::DenseGraph;

void MatchConfig::check() const {
  if (!(theta_room_dist > 0.0) || !(theta_plane_angle > 0.0) || !(theta_plane_dist > 0.0)) {
    throw InvalidArgument("match config: tolerances must be positive");
  }
  if (!(delta_gap >= 0.0)) throw InvalidArgument("match config: delta_gap must be >= 0");
  if (max_candidates == 0) throw InvalidArgument("match config: max_candidates must be positive");
}

std::string_view to_string(MatchOutcome outcome) {
  switch (outcome) {
    case MatchOutcome::Unique: return "unique";
    case MatchOutcome::Ambiguous: return "ambiguous";
    case MatchOutcome::Deferred: return "deferred";
    case MatchOutcome::NoMatch: return "no_match";
  }
  return "unknown";
}

bool semantic_filter_accepts(const CategoryCounts& content_a, const CategoryCounts& content_s) {
  for (const auto& [category, n] : content_s.entries()) {
    if (content_a.count(category) < n) return false;
  }
  return true;
}

CandidatePairs candidate_pairs(const SceneGraph& a, const SceneGraph& s, MatchLevel level,
                               const MatchConfig& cfg) {
  std::vector<NodeId> a_ids;
  std::vector<NodeId> s_ids;
  if (level == MatchLevel::Room) {
    for (const auto& r : a.rooms) a_ids.push_back(r.id);
    for (const auto& r : s.rooms) s_ids.push_back(r.id);
  } else {
    for (const auto& p : a.planes) a_ids.push_back(p.id);
    for (const auto& p : s.planes) s_ids.push_back(p.id);
  }
  std::vector<CategoryCounts> a_content;
  for (const auto& id : a_ids) a_content.push_back(semantic_content(a, id));
  CandidatePairs out;
  for (const auto& sid : s_ids) {
    const CategoryCounts cs = semantic_content(s, sid);
    for (std::size_t j = 0; j < a_ids.size(); ++j) {
      ++out.before_filter;
      if (cfg.use_semantic_filter && !semantic_filter_accepts(a_content[j], cs)) continue;
      ++out.after_filter;
      out.pairs.emplace_back(sid, a_ids[j]);
    }
  }
  return out;
}

std::optional<double> geometric_consistency(const SceneGraph& a, const SceneGraph& s,
                                            const CandidateAssignment& cand, const MatchConfig& cfg) {
  if (cand.room_map.empty()) throw InvalidArgument("geometric_consistency: assignment maps no room");
  detail::CategoryTable categories;
  const DenseGraph da = detail::make_dense(a, categories);
  const DenseGraph ds = detail::make_dense(s, categories);
  std::vector<int> room_map(ds.room_ids.size(), -1);
  std::vector<int> plane_map(ds.planes.size(), -1);
  std::set<int> used_rooms;
  std::set<int> used_planes;

  auto lookup = [](const auto& index, const NodeId& id, const char* what) {
    auto it = index.find(id);
    if (it == index.end()) {
      throw InvalidArgument(std::string("geometric_consistency: unknown ") + what + " '" + id + "'");
    }
    return it->second;
  };
  for (const auto& [sid, aid] : cand.room_map) {
    const int si = lookup(ds.room_index, sid, "S-room");
    const int ai = lookup(da.room_index, aid, "A-room");
    if (!used_rooms.insert(ai).second) return std::nullopt;
    room_map[si] = ai;
  }
  for (const auto& [sid, aid] : cand.plane_map) {
    const int si = lookup(ds.plane_index, sid, "S-plane");
    const int ai = lookup(da.plane_index, aid, "A-plane");
    if (!used_planes.insert(ai).second) return std::nullopt;
    if (room_map[ds.planes[si].owner] != da.planes[ai].owner) return std::nullopt;
    plane_map[si] = ai;
  }
  return detail::evaluate_assignment(da, ds, room_map, plane_map, cfg);
}

namespace {

class HierarchicalSearch {
 public:
  HierarchicalSearch(const DenseGraph& a, const DenseGraph& s, const MatchConfig& cfg)
      : a_(a), s_(s), cfg_(cfg), na_(static_cast<int>(a.room_ids.size())),
        ns_(static_cast<int>(s.room_ids.size())) {
    precompute();
  }

  void run() {
    room_map_.assign(ns_, -1);
    used_room_.assign(na_, false);
    chosen_.assign(ns_, nullptr);
    assign_room(0);
  }

  MatchStats stats() const {
    MatchStats st;
    st.candidates_before_filter = before_;
    st.candidates_after_filter = after_;
    st.combinations_evaluated = combos_;
    st.truncated = truncated_;
    return st;
  }

  std::vector<CandidateAssignment> solutions() const {
    std::vector<CandidateAssignment> out;
    out.reserve(found_.size());
    for (const auto& f : found_) {
      CandidateAssignment c;
      for (int i = 0; i < ns_; ++i) c.room_map.emplace(s_.room_ids[i], a_.room_ids[f.rooms[i]]);
      for (std::size_t p = 0; p < f.planes.size(); ++p) {
        c.plane_map.emplace(s_.planes[p].id, a_.planes[f.planes[p]].id);
      }
      c.residual = f.residual;
      out.push_back(std::move(c));
    }
    return out;
  }

 private:
  using LocalMap = std::vector<int>;  // A-plane per S-plane of one room, aligned with room_planes

  struct Found {
    std::vector<int> rooms;
    std::vector<int> planes;
    double residual;
  };

  double& rd_s(int i, int j) { return rd_s_[i * ns_ + j]; }
  double& rd_a(int i, int j) { return rd_a_[i * na_ + j]; }
  double pc_s(int p, int r) const { return pc_s_[p * ns_ + r]; }
  double pc_a(int q, int r) const { return pc_a_[q * na_ + r]; }
  double pa_s(int p, int p2) const { return pa_s_[p * nsp_ + p2]; }
  double pa_a(int q, int q2) const { return pa_a_[q * nap_ + q2]; }

  void precompute() {
    nsp_ = static_cast<int>(s_.planes.size());
    nap_ = static_cast<int>(a_.planes.size());
    rd_s_.assign(ns_ * ns_, 0.0);
    rd_a_.assign(na_ * na_, 0.0);
    for (int i = 0; i < ns_; ++i)
      for (int j = 0; j < ns_; ++j) rd_s(i, j) = (s_.centers[i] - s_.centers[j]).norm();
    for (int i = 0; i < na_; ++i)
      for (int j = 0; j < na_; ++j) rd_a(i, j) = (a_.centers[i] - a_.centers[j]).norm();

    pc_s_.resize(nsp_ * ns_);
    for (int p = 0; p < nsp_; ++p)
      for (int r = 0; r < ns_; ++r)
        pc_s_[p * ns_ + r] = s_.planes[p].normal.dot(s_.centers[r]) + s_.planes[p].offset;
    pc_a_.resize(nap_ * na_);
    for (int q = 0; q < nap_; ++q)
      for (int r = 0; r < na_; ++r)
        pc_a_[q * na_ + r] = a_.planes[q].normal.dot(a_.centers[r]) + a_.planes[q].offset;

    pa_s_.resize(nsp_ * nsp_);
    for (int p = 0; p < nsp_; ++p)
      for (int p2 = 0; p2 < nsp_; ++p2)
        pa_s_[p * nsp_ + p2] = detail::yaw_angle(s_.planes[p].normal, s_.planes[p2].normal);
    pa_a_.resize(nap_ * nap_);
    for (int q = 0; q < nap_; ++q)
      for (int q2 = 0; q2 < nap_; ++q2)
        pa_a_[q * nap_ + q2] = detail::yaw_angle(a_.planes[q].normal, a_.planes[q2].normal);

    // Candidate generation: same layer, then semantic containment.
    room_cands_.assign(ns_, {});
    for (int i = 0; i < ns_; ++i) {
      for (int j = 0; j < na_; ++j) {
        ++before_;
        if (cfg_.use_semantic_filter && !detail::contains(a_.room_content[j], s_.room_content[i])) continue;
        ++after_;
        room_cands_[i].push_back(j);
      }
    }
    plane_ok_.assign(nsp_ * nap_, 1);
    for (int p = 0; p < nsp_; ++p) {
      for (int q = 0; q < nap_; ++q) {
        ++before_;
        if (cfg_.use_semantic_filter && !detail::contains(a_.plane_content[q], s_.plane_content[p])) {
          plane_ok_[p * nap_ + q] = 0;
          continue;
        }
        ++after_;
      }
    }
    local_cache_.assign(static_cast<std::size_t>(ns_) * na_, std::nullopt);
  }

  bool tick() {
    if (combos_ >= cfg_.max_candidates) {
      truncated_ = true;
      return false;
    }
    ++combos_;
    return true;
  }

  // Stage 1: injective room assignment, pruned by room-pair distances.
  void assign_room(int i) {
    if (truncated_) return;
    if (i == ns_) {
      assign_planes(0);
      return;
    }
    for (int cand : room_cands_[i]) {
      if (used_room_[cand]) continue;
      if (!tick()) return;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        ok = std::abs(rd_s(i, j) - rd_a(cand, room_map_[j])) <= cfg_.theta_room_dist;
      }
      if (!ok) continue;
      room_map_[i] = cand;
      used_room_[cand] = true;
      assign_room(i + 1);
      used_room_[cand] = false;
      room_map_[i] = -1;
      if (truncated_) return;
    }
  }

  // Stage 2: room-plane consistency inside one (S-room, A-room) pair.
  const std::vector<LocalMap>& local_maps(int s_room, int a_room) {
    auto& slot = local_cache_[static_cast<std::size_t>(s_room) * na_ + a_room];
    if (!slot) {
      slot.emplace();
      LocalMap current(s_.room_planes[s_room].size(), -1);
      std::vector<char> used(nap_, 0);
      extend_local(s_room, a_room, 0, current, used, *slot);
    }
    return *slot;
  }

  void extend_local(int s_room, int a_room, std::size_t k, LocalMap& current, std::vector<char>& used,
                    std::vector<LocalMap>& out) {
    const auto& sp = s_.room_planes[s_room];
    if (k == sp.size()) {
      out.push_back(current);
      return;
    }
    const int p = sp[k];
    for (int q : a_.room_planes[a_room]) {
      if (used[q] || !plane_ok_[p * nap_ + q]) continue;
      if (!tick()) return;
      if (std::abs(pc_s(p, s_room) - pc_a(q, a_room)) > cfg_.theta_plane_dist) continue;
      bool ok = true;
      for (std::size_t k2 = 0; k2 < k && ok; ++k2) {
        ok = detail::angle_difference(pa_s(sp[k2], p), pa_a(current[k2], q)) <= cfg_.theta_plane_angle;
      }
      if (!ok) continue;
      current[k] = q;
      used[q] = 1;
      extend_local(s_room, a_room, k + 1, current, used, out);
      used[q] = 0;
      current[k] = -1;
      if (truncated_) return;
    }
  }

  // Stage 3: combine per-room plane assignments with cross-room checks.
  void assign_planes(int i) {
    if (truncated_) return;
    if (i == ns_) {
      record();
      return;
    }
    const auto& options = local_maps(i, room_map_[i]);
    if (truncated_) return;
    const auto& sp = s_.room_planes[i];
    for (const LocalMap& option : options) {
      if (!tick()) return;
      if (!cross_consistent(i, sp, option)) continue;
      chosen_[i] = &option;
      assign_planes(i + 1);
      chosen_[i] = nullptr;
      if (truncated_) return;
    }
  }

  bool cross_consistent(int i, const std::vector<int>& sp, const LocalMap& option) const {
    for (std::size_t k = 0; k < sp.size(); ++k) {
      const int p = sp[k];
      const int q = option[k];
      for (int r = 0; r < ns_; ++r) {
        if (r == i) continue;
        if (std::abs(pc_s(p, r) - pc_a(q, room_map_[r])) > cfg_.theta_plane_dist) return false;
      }
      for (int j = 0; j < i; ++j) {
        const auto& sp2 = s_.room_planes[j];
        const LocalMap& other = *chosen_[j];
        for (std::size_t k2 = 0; k2 < sp2.size(); ++k2) {
          if (detail::angle_difference(pa_s(sp2[k2], p), pa_a(other[k2], q)) > cfg_.theta_plane_angle) {
            return false;
          }
        }
      }
    }
    return true;
  }

  void record() {
    Found f;
    f.rooms = room_map_;
    f.planes.assign(nsp_, -1);
    for (int i = 0; i < ns_; ++i) {
      const auto& sp = s_.room_planes[i];
      for (std::size_t k = 0; k < sp.size(); ++k) f.planes[sp[k]] = (*chosen_[i])[k];
    }
    f.residual = residual(f);
    found_.push_back(std::move(f));
  }

  // Same term order as detail::evaluate_assignment.
  double residual(const Found& f) {
    double sum = 0.0;
    std::size_t terms = 0;
    for (int i = 0; i < ns_; ++i) {
      for (int j = i + 1; j < ns_; ++j) {
        sum += std::abs(rd_s(i, j) - rd_a(f.rooms[i], f.rooms[j])) / cfg_.theta_room_dist;
        ++terms;
      }
    }
    for (int p = 0; p < nsp_; ++p) {
      const int q = f.planes[p];
      for (int r = 0; r < ns_; ++r) {
        sum += std::abs(pc_s(p, r) - pc_a(q, f.rooms[r])) / cfg_.theta_plane_dist;
        ++terms;
      }
      for (int p2 = p + 1; p2 < nsp_; ++p2) {
        sum += detail::angle_difference(pa_s(p, p2), pa_a(q, f.planes[p2])) / cfg_.theta_plane_angle;
        ++terms;
      }
    }
    return terms == 0 ? 0.0 : sum / static_cast<double>(terms);
  }

  const DenseGraph& a_;
  const DenseGraph& s_;
  const MatchConfig& cfg_;
  int na_;
  int ns_;
  int nsp_ = 0;
  int nap_ = 0;

  std::vector<double> rd_s_, rd_a_, pc_s_, pc_a_, pa_s_, pa_a_;
  std::vector<std::vector<int>> room_cands_;
  std::vector<char> plane_ok_;
  std::vector<std::optional<std::vector<LocalMap>>> local_cache_;

  std::vector<int> room_map_;
  std::vector<bool> used_room_;
  std::vector<const LocalMap*> chosen_;
  std::vector<Found> found_;

  std::size_t before_ = 0;
  std::size_t after_ = 0;
  std::size_t combos_ = 0;
  bool truncated_ = false;
};

}  // namespace

MatchResult classify_solutions(std::vector<CandidateAssignment> solutions, const MatchConfig& cfg) {
  std::sort(solutions.begin(), solutions.end(), [](const auto& x, const auto& y) {
    if (x.residual != y.residual) return x.residual < y.residual;
    if (x.room_map != y.room_map) return x.room_map < y.room_map;
    return x.plane_map < y.plane_map;
  });
  MatchResult r;
  r.solutions = std::move(solutions);
  const auto& sol = r.solutions;
  if (sol.empty()) {
    r.outcome = MatchOutcome::NoMatch;
    return r;
  }
  if (sol.size() == 1) {
    r.outcome = MatchOutcome::Unique;
    r.assignments = {sol.front()};
    return r;
  }
  const double best = sol[0].residual;
  const double gap = sol[1].residual - best;
  if (cfg.delta_gap == 0.0) {
    if (gap <= 1e-12) {
      r.outcome = MatchOutcome::Ambiguous;
      for (const auto& c : sol) {
        if (c.residual - best <= 1e-12) r.assignments.push_back(c);
      }
    } else {
      r.outcome = MatchOutcome::Unique;
      r.assignments = {sol.front()};
    }
    return r;
  }
  if (gap >= cfg.delta_gap) {
    r.outcome = MatchOutcome::Unique;
    r.assignments = {sol.front()};
    return r;
  }
  r.outcome = MatchOutcome::Deferred;
  for (const auto& c : sol) {
    if (c.residual - best < cfg.delta_gap) r.assignments.push_back(c);
  }
  return r;
}

MatchResult match(const SceneGraph& a, const SceneGraph& s, const MatchConfig& cfg) {
  cfg.check();
  if (s.rooms.empty()) throw InvalidArgument("match: S-Graph has no rooms");
  const auto start = std::chrono::steady_clock::now();
  detail::CategoryTable categories;
  const DenseGraph da = detail::make_dense(a, categories);
  const DenseGraph ds = detail::make_dense(s, categories);
  HierarchicalSearch search(da, ds, cfg);
  search.run();
  MatchResult result = classify_solutions(search.solutions(), cfg);
  result.stats = search.stats();
  result.stats.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

nlohmann::json to_json(const CandidateAssignment& c) {
  nlohmann::json rooms = nlohmann::json::object();
  for (const auto& [s, a] : c.room_map) rooms[s] = a;
  nlohmann::json planes = nlohmann::json::object();
  for (const auto& [s, a] : c.plane_map) planes[s] = a;
  return {{"rooms", rooms}, {"planes", planes}, {"residual", c.residual}};
}

nlohmann::json to_json(const MatchResult& r, bool include_solutions) {
  nlohmann::json out;
  out["outcome"] = std::string(to_string(r.outcome));
  out["assignments"] = nlohmann::json::array();
  for (const auto& c : r.assignments) out["assignments"].push_back(to_json(c));
  out["n_solutions"] = r.solutions.size();
  out["stats"] = {{"candidates_before_filter", r.stats.candidates_before_filter},
                  {"candidates_after_filter", r.stats.candidates_after_filter},
                  {"combinations_evaluated", r.stats.combinations_evaluated},
                  {"elapsed_s", r.stats.elapsed_s},
                  {"truncated", r.stats.truncated}};
  if (include_solutions) {
    out["solutions"] = nlohmann::json::array();
    for (const auto& c : r.solutions) out["solutions"].push_back(to_json(c));
  }
  return out;
}

}  // namespace semgraph
