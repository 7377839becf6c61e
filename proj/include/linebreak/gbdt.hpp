#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linebreak/features.hpp"
#include "linebreak/util.hpp"

namespace lb {

class DegenerateLabels : public Error {
public:
    explicit DegenerateLabels(const std::string& what) : Error(what) {}
};

class SchemaMismatch : public ValidationError {
public:
    explicit SchemaMismatch(const std::string& what) : ValidationError(what) {}
};

/// One node of a regression tree. feature < 0 marks a leaf; weight is the
/// leaf's log-odds contribution before the learning rate. cover counts the
/// training rows that passed through the node (the SHAP background weights).
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    bool default_left = true;  // where rows with a missing value go
    double weight = 0.0;
    double cover = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    /// Index of the leaf this row lands in.
    int leaf_for(const double* row) const;
};

struct TrainConfig {
    int max_trees = 500;
    double learning_rate = 0.1;
    int max_depth = 6;
    double min_child_weight = 1.0;  // minimum hessian sum per side
    double l2_lambda = 1.0;
    double gamma = 0.0;  // minimum net split gain
    int early_stopping_rounds = 25;
    double positive_class_weight = 1.0;
    double row_subsample = 1.0;  // < 1 enables seeded row subsampling
    double col_subsample = 1.0;
    uint64_t seed = 0;

    void validate() const;
};

struct TreeEnsemble {
    std::vector<Tree> trees;
    double learning_rate = 0.1;
    double base_probability = 0.5;  // margin 0 before any tree
    TrainConfig config;
    std::vector<std::string> feature_names;
    int best_iteration = 0;  // trees kept after early stopping
    std::vector<double> training_logloss;  // per boosting round

    double margin(const double* row) const;
    double margin(const FeatureVector& fv) const { return margin(fv.values.data()); }
};

struct DataView {
    const double* values = nullptr;  // row-major, n_rows x n_features
    const int* labels = nullptr;
    std::size_t n_rows = 0;
    int n_features = 0;

    const double* row(std::size_t i) const { return values + i * static_cast<std::size_t>(n_features); }
};

DataView view_of(const FeatureMatrix& matrix);

/// Trains by Newton boosting with logistic loss and exact greedy splits.
/// Split winners are ordered by (gain, lowest feature, lowest threshold) and
/// all row reductions run in a canonical row order, so the result is
/// identical across row permutations and thread counts. An optional
/// validation set drives early stopping on log-loss.
TreeEnsemble train(const DataView& data, const TrainConfig& config,
                   const std::optional<DataView>& validation = std::nullopt,
                   const std::vector<std::string>& feature_names = feature_schema());

double predict_margin(const TreeEnsemble& ensemble, const double* row, int n_features);
double predict_proba(const TreeEnsemble& ensemble, const FeatureVector& fv);
std::vector<double> predict_proba(const TreeEnsemble& ensemble, const FeatureMatrix& matrix);

inline int classify(double p, double threshold = 0.5) { return p >= threshold ? 1 : 0; }

double log_loss(const std::vector<double>& probs, const std::vector<int>& labels);

/// Second-order gain of a split, before subtracting gamma.
double split_gain(double g_left, double h_left, double g_right, double h_right, double l2_lambda);

// --- serialization -----------------------------------------------------------

std::string serialize_ensemble(const TreeEnsemble& ensemble);
TreeEnsemble deserialize_ensemble(const std::string& text);
void save_ensemble(const std::string& path, const TreeEnsemble& ensemble);
TreeEnsemble load_ensemble(const std::string& path);

/// Throws SchemaMismatch naming the first offending column.
void check_schema(const TreeEnsemble& ensemble, const std::vector<std::string>& schema);

// --- cross validation ---------------------------------------------------------

struct FoldResult {
    int round = 0;
    TreeEnsemble ensemble;
    std::vector<std::size_t> test_rows;
};

struct CrossValidation {
    std::vector<FoldResult> folds;
    std::vector<double> pooled_probabilities;  // one per input row, from its test fold
};

/// Round-grouped cross validation: each fold trains on the other rounds and
/// scores its own. With early stopping enabled, the highest training round is
/// held out of tree growth as the validation split. Rounds without rows are
/// skipped with a warning.
CrossValidation cross_validate(const FeatureMatrix& matrix, const std::vector<int>& row_rounds,
                               const TrainConfig& config);

}  // namespace lb
