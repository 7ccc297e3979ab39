#include "fadsar/score/matching.hpp"

#include <algorithm>
#include <cmath>

#include "fadsar/errors.hpp"
#include "fadsar/score/assignment.hpp"

namespace fadsar::score {

void ScoreConfig::validate() const {
    if (match_radius_m <= 0) throw ConfigError("match_radius_m must be positive");
    if (shore_threshold_km < 0) throw ConfigError("shore_threshold_km must be >= 0");
    if (beta <= 0) throw ConfigError("beta must be positive");
}

MatchResult match_detections(std::span<const core::DetectionRecord> predictions,
                             std::span<const core::LabelRecord> labels, double pixel_spacing_m,
                             const ScoreConfig& config) {
    config.validate();
    if (pixel_spacing_m <= 0) throw ConfigError("pixel_spacing_m must be positive");

    const int n = static_cast<int>(predictions.size());
    const int m = static_cast<int>(labels.size());

    MatchResult result;
    if (n == 0 || m == 0) {
        for (int i = 0; i < n; ++i) result.unmatched_predictions.push_back(i);
        for (int j = 0; j < m; ++j) result.unmatched_labels.push_back(j);
        return result;
    }

    const auto distance_m = [&](int i, int j) {
        const double dr = predictions[i].row - labels[j].row;
        const double dc = predictions[i].col - labels[j].col;
        return std::hypot(dr, dc) * pixel_spacing_m;
    };

    // Square (n+m) matrix. Real pairs within the radius keep their distance;
    // dummy slots cost B > any reachable pair total, so the solver first
    // maximizes the pair count and then minimizes total distance. Out-of-radius
    // pairings cost more than two dummies and are never chosen.
    const double penalty = config.match_radius_m * std::min(n, m) + 1.0;
    const double forbidden = 2.0 * penalty + 1.0;
    const int size = n + m;
    std::vector<std::vector<double>> cost(size, std::vector<double>(size, 0.0));
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            if (i < n && j < m) {
                const double d = distance_m(i, j);
                cost[i][j] = d <= config.match_radius_m ? d : forbidden;
            } else if (i < n || j < m) {
                cost[i][j] = penalty;
            }
        }
    }

    const std::vector<int> assigned = solve_assignment(cost);
    std::vector<char> pred_matched(n, 0), label_matched(m, 0);
    for (int i = 0; i < n; ++i) {
        const int j = assigned[i];
        if (j < m && cost[i][j] <= config.match_radius_m) {
            result.pairs.push_back({i, j, cost[i][j]});
            pred_matched[i] = 1;
            label_matched[j] = 1;
        }
    }
    std::sort(result.pairs.begin(), result.pairs.end(),
              [](const MatchedPair& a, const MatchedPair& b) {
                  return a.label != b.label ? a.label < b.label : a.prediction < b.prediction;
              });
    for (int i = 0; i < n; ++i)
        if (!pred_matched[i]) result.unmatched_predictions.push_back(i);
    for (int j = 0; j < m; ++j)
        if (!label_matched[j]) result.unmatched_labels.push_back(j);
    return result;
}

}  // namespace fadsar::score
