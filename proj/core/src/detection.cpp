#include "semgraph/detection.hpp"

#include <algorithm>
#include <tuple>

#include "semgraph/errors.hpp"

namespace semgraph {

DetectionScores score_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  DetectionScores s{tp, fp, fn};
  s.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  s.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  const double sum = s.precision + s.recall;
  s.f1 = sum > 0.0 ? 2.0 * s.precision * s.recall / sum : 0.0;
  return s;
}

DetectionReport eval_detections(const std::vector<ObjectInstance>& pred,
                                const std::vector<ObjectInstance>& gt, double dist_thresh) {
  if (!(dist_thresh > 0.0)) throw InvalidArgument("eval_detections: dist_thresh must be positive");

  std::map<std::string, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> by_category;
  for (std::size_t i = 0; i < pred.size(); ++i) by_category[pred[i].category].first.push_back(i);
  for (std::size_t j = 0; j < gt.size(); ++j) by_category[gt[j].category].second.push_back(j);

  DetectionReport report;
  std::size_t tp_all = 0;
  std::size_t fp_all = 0;
  std::size_t fn_all = 0;
  for (const auto& [category, members] : by_category) {
    const auto& [preds, gts] = members;
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i : preds) {
      for (std::size_t j : gts) {
        const double d = (pred[i].ellipsoid.center - gt[j].ellipsoid.center).norm();
        if (d <= dist_thresh) pairs.emplace_back(d, i, j);
      }
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<bool> pred_used(pred.size(), false);
    std::vector<bool> gt_used(gt.size(), false);
    std::size_t tp = 0;
    for (const auto& [d, i, j] : pairs) {
      if (pred_used[i] || gt_used[j]) continue;
      pred_used[i] = gt_used[j] = true;
      ++tp;
      report.matches.push_back({pred[i].id, gt[j].id, d});
    }
    const std::size_t fp = preds.size() - tp;
    const std::size_t fn = gts.size() - tp;
    report.per_category[category] = score_counts(tp, fp, fn);
    tp_all += tp;
    fp_all += fp;
    fn_all += fn;
  }
  report.overall = score_counts(tp_all, fp_all, fn_all);
  return report;
}

namespace {

nlohmann::json scores_json(const DetectionScores& s) {
  return {{"tp", s.tp},         {"fp", s.fp},          {"fn", s.fn},
          {"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

}  // namespace

nlohmann::json to_json(const DetectionReport& r) {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [category, s] : r.per_category) per[category] = scores_json(s);
  nlohmann::json matches = nlohmann::json::array();
  for (const auto& m : r.matches) matches.push_back({{"pred", m.pred}, {"gt", m.gt}, {"distance", m.distance}});
  return {{"per_category", per}, {"overall", scores_json(r.overall)}, {"matches", matches}};
}

}  // namespace semgraph
