#pragma once

#include <string>
#include <vector>

#include "linebreak/gbdt.hpp"

namespace lb {

/// Per-pass feature attribution in margin (log-odds) space. base_value is
/// the cover-weighted expected margin of the ensemble; base_value plus the
/// sum of phi reproduces the row's margin exactly.
struct Attribution {
    std::string pass_id;
    std::vector<double> phi;  // one per feature
    double base_value = 0.0;
};

/// Exact tree Shapley values for one row via the polynomial-time path
/// algorithm, using node covers recorded at training time as the background
/// distribution. Throws if any reachable node has zero cover.
Attribution explain(const TreeEnsemble& ensemble, const FeatureVector& row,
                    const std::string& pass_id = "");

std::vector<Attribution> explain_matrix(const TreeEnsemble& ensemble, const FeatureMatrix& matrix);

/// Cover-weighted expectation of a single tree's leaves.
double tree_expected_value(const Tree& tree);

struct FeatureRanking {
    int feature_index = 0;
    std::string feature;
    double mean_abs_phi = 0.0;
    int rank = 0;  // 1 = largest mean |phi|
};

/// Mean-|phi| ranking, descending; ties keep schema order.
std::vector<FeatureRanking> summarize(const std::vector<Attribution>& attributions,
                                      const std::vector<std::string>& schema);

struct BeeswarmPoint {
    double phi = 0.0;
    double value_percentile = 0.0;  // percentile of the feature value within the dataset
};

/// Per-point (phi, feature value percentile) table for one feature.
std::vector<BeeswarmPoint> beeswarm_points(const std::vector<Attribution>& attributions,
                                           const FeatureMatrix& matrix, int feature_index);

// attributions CSV: pass_id, one phi column per feature, base_value
void write_attributions_csv(const std::string& path, const std::vector<Attribution>& attributions,
                            const std::vector<std::string>& schema);
std::vector<Attribution> read_attributions_csv(const std::string& path);

// summary CSV: feature, mean_abs_phi, rank
void write_summary_csv(const std::string& path, const std::vector<FeatureRanking>& ranking);
std::vector<FeatureRanking> read_summary_csv(const std::string& path);

}  // namespace lb
