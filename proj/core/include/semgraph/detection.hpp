#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semgraph/graph.hpp"

namespace semgraph {

struct DetectionScores {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct DetectionMatch {
  NodeId pred;
  NodeId gt;
  double distance = 0.0;
};

struct DetectionReport {
  std::map<std::string, DetectionScores> per_category;
  DetectionScores overall;  // micro-averaged
  std::vector<DetectionMatch> matches;
};

/// Fills precision, recall and f1 from the counts. Empty denominators give 0.
DetectionScores score_counts(std::size_t tp, std::size_t fp, std::size_t fn);

/// Greedy per-category matching of object centers: pairs are taken in order
/// of increasing distance while both ends are free and within dist_thresh.
DetectionReport eval_detections(const std::vector<ObjectInstance>& pred,
                                const std::vector<ObjectInstance>& gt, double dist_thresh);

nlohmann::json to_json(const DetectionReport& r);

}  // namespace semgraph
