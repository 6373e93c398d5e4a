#include <algorithm>

#include "consistency.hpp"
#include "semgraph/errors.hpp"
#include "semgraph/matcher.hpp"

namespace semgraph {

namespace {

constexpr std::size_t kMaxRooms = 4;
constexpr std::size_t kMaxPlanesPerRoom = 6;

// All ordered selections of k distinct items out of n.
std::vector<std::vector<int>> injections(int k, int n) {
  std::vector<std::vector<int>> out;
  if (k > n) return out;
  std::vector<int> current;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(current.size()) == k) {
      out.push_back(current);
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = 1;
      current.push_back(i);
      self(self);
      current.pop_back();
      used[i] = 0;
    }
  };
  rec(rec);
  return out;
}

}  // namespace

std::vector<CandidateAssignment> brute_force_match(const SceneGraph& a, const SceneGraph& s,
                                                   const MatchConfig& cfg) {
  cfg.check();
  detail::CategoryTable categories;
  const detail::DenseGraph da = detail::make_dense(a, categories);
  const detail::DenseGraph ds = detail::make_dense(s, categories);
  if (da.room_ids.size() > kMaxRooms) {
    throw InvalidArgument("brute_force_match: more than 4 A-rooms");
  }
  for (const auto* g : {&da, &ds}) {
    for (const auto& planes : g->room_planes) {
      if (planes.size() > kMaxPlanesPerRoom) {
        throw InvalidArgument("brute_force_match: a room has more than 6 planes");
      }
    }
  }
  std::vector<CandidateAssignment> out;
  const int ns = static_cast<int>(ds.room_ids.size());
  if (ns == 0) return out;

  // Contents come from the public graph queries, not from the dense index.
  auto contents = [](const SceneGraph& g, const auto& ids) {
    std::vector<CategoryCounts> out;
    for (const auto& id : ids) out.push_back(semantic_content(g, id));
    return out;
  };
  std::vector<NodeId> a_plane_ids;
  std::vector<NodeId> s_plane_ids;
  for (const auto& p : da.planes) a_plane_ids.push_back(p.id);
  for (const auto& p : ds.planes) s_plane_ids.push_back(p.id);
  const auto a_rooms = contents(a, da.room_ids);
  const auto s_rooms = contents(s, ds.room_ids);
  const auto a_planes = contents(a, a_plane_ids);
  const auto s_planes = contents(s, s_plane_ids);
  auto accepts = [&](const CategoryCounts& ca, const CategoryCounts& cs) {
    return !cfg.use_semantic_filter || semantic_filter_accepts(ca, cs);
  };

  for (const auto& room_map : injections(ns, static_cast<int>(da.room_ids.size()))) {
    // Per-room plane injections into the assigned A-room, then their product.
    std::vector<std::vector<std::vector<int>>> per_room(ns);
    bool feasible = true;
    for (int i = 0; i < ns && feasible; ++i) {
      const auto& sp = ds.room_planes[i];
      const auto& ap = da.room_planes[room_map[i]];
      for (const auto& pick : injections(static_cast<int>(sp.size()), static_cast<int>(ap.size()))) {
        std::vector<int> mapped(sp.size());
        for (std::size_t k = 0; k < sp.size(); ++k) mapped[k] = ap[pick[k]];
        per_room[i].push_back(std::move(mapped));
      }
      feasible = !per_room[i].empty();
    }
    if (!feasible) continue;

    std::vector<std::size_t> choice(ns, 0);
    while (true) {
      std::vector<int> plane_map(ds.planes.size(), -1);
      for (int i = 0; i < ns; ++i) {
        const auto& sp = ds.room_planes[i];
        for (std::size_t k = 0; k < sp.size(); ++k) plane_map[sp[k]] = per_room[i][choice[i]][k];
      }

      bool semantic_ok = true;
      for (int i = 0; i < ns && semantic_ok; ++i) {
        semantic_ok = accepts(a_rooms[room_map[i]], s_rooms[i]);
      }
      for (std::size_t p = 0; p < plane_map.size() && semantic_ok; ++p) {
        semantic_ok = accepts(a_planes[plane_map[p]], s_planes[p]);
      }
      if (semantic_ok) {
        if (auto residual = detail::evaluate_assignment(da, ds, room_map, plane_map, cfg)) {
          CandidateAssignment c;
          for (int i = 0; i < ns; ++i) c.room_map.emplace(ds.room_ids[i], da.room_ids[room_map[i]]);
          for (std::size_t p = 0; p < plane_map.size(); ++p) {
            c.plane_map.emplace(ds.planes[p].id, da.planes[plane_map[p]].id);
          }
          c.residual = *residual;
          out.push_back(std::move(c));
        }
      }

      int i = 0;
      while (i < ns && ++choice[i] == per_room[i].size()) choice[i++] = 0;
      if (i == ns) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.residual != y.residual) return x.residual < y.residual;
    if (x.room_map != y.room_map) return x.room_map < y.room_map;
    return x.plane_map < y.plane_map;
  });
  return out;
}

}  // namespace semgraph
