#include "linebreak/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <json.hpp>

namespace lb {

namespace {

using ordered_json = nlohmann::ordered_json;

inline double sigmoid(double m) { return 1.0 / (1.0 + std::exp(-m)); }

inline double leaf_objective(double g, double h, double l2) { return g * g / (h + l2); }

}  // namespace

double split_gain(double g_left, double h_left, double g_right, double h_right, double l2_lambda) {
    return 0.5 * (leaf_objective(g_left, h_left, l2_lambda) + leaf_objective(g_right, h_right, l2_lambda) -
                  leaf_objective(g_left + g_right, h_left + h_right, l2_lambda));
}

void TrainConfig::validate() const {
    if (max_trees < 0) throw ValidationError("max_trees must be >= 0");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
        throw ValidationError("learning_rate must be in (0, 1]");
    }
    if (max_depth < 1) throw ValidationError("max_depth must be >= 1");
    if (min_child_weight < 0.0) throw ValidationError("min_child_weight must be >= 0");
    if (l2_lambda < 0.0) throw ValidationError("l2_lambda must be >= 0");
    if (gamma < 0.0) throw ValidationError("gamma must be >= 0");
    if (early_stopping_rounds < 0) throw ValidationError("early_stopping_rounds must be >= 0");
    if (!(positive_class_weight > 0.0)) throw ValidationError("positive_class_weight must be > 0");
    if (!(row_subsample > 0.0 && row_subsample <= 1.0)) {
        throw ValidationError("row_subsample must be in (0, 1]");
    }
    if (!(col_subsample > 0.0 && col_subsample <= 1.0)) {
        throw ValidationError("col_subsample must be in (0, 1]");
    }
}

int Tree::leaf_for(const double* row) const {
    int node = 0;
    while (!nodes[static_cast<std::size_t>(node)].is_leaf()) {
        const TreeNode& n = nodes[static_cast<std::size_t>(node)];
        const double v = row[n.feature];
        if (std::isnan(v)) {
            node = n.default_left ? n.left : n.right;
        } else {
            node = (v <= n.threshold) ? n.left : n.right;
        }
    }
    return node;
}

double TreeEnsemble::margin(const double* row) const {
    double m = 0.0;
    for (const auto& tree : trees) {
        m += learning_rate * tree.nodes[static_cast<std::size_t>(tree.leaf_for(row))].weight;
    }
    return m;
}

DataView view_of(const FeatureMatrix& matrix) {
    DataView v;
    v.values = matrix.rows.empty() ? nullptr : matrix.rows.front().values.data();
    v.labels = matrix.labels.data();
    v.n_rows = matrix.rows.size();
    v.n_features = kFeatureCount;
    return v;
}

double log_loss(const std::vector<double>& probs, const std::vector<int>& labels) {
    if (probs.empty() || probs.size() != labels.size()) {
        throw ValidationError("log_loss needs matching non-empty inputs");
    }
    constexpr double eps = 1e-15;
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double p = std::clamp(probs[i], eps, 1.0 - eps);
        sum += labels[i] == 1 ? -std::log(p) : -std::log(1.0 - p);
    }
    return sum / static_cast<double>(probs.size());
}

namespace {

// Training works on a canonical reordering of the rows (lexicographic by
// feature values, then label). Every reduction over rows then sums in the
// same order no matter how the caller shuffled the input, which keeps the
// trees bit-identical under row permutation.
struct TrainingData {
    std::vector<double> columns;     // column-major, canonical order
    std::vector<int> labels;         // canonical order
    std::size_t n_rows = 0;
    int n_features = 0;
    std::vector<std::vector<uint32_t>> sorted_idx;  // per feature, by (value, canonical row)
    std::vector<std::vector<uint32_t>> missing_idx;

    double value(std::size_t row, int feature) const {
        return columns[static_cast<std::size_t>(feature) * n_rows + row];
    }
};

TrainingData canonicalize(const DataView& data) {
    TrainingData td;
    td.n_rows = data.n_rows;
    td.n_features = data.n_features;

    std::vector<uint32_t> order(data.n_rows);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        const double* ra = data.row(a);
        const double* rb = data.row(b);
        for (int f = 0; f < data.n_features; ++f) {
            // Order NaN after numbers; NaN == NaN for the purpose of the sort.
            const double va = ra[f];
            const double vb = rb[f];
            const bool na = std::isnan(va);
            const bool nb = std::isnan(vb);
            if (na != nb) return nb;
            if (!na && va != vb) return va < vb;
        }
        return data.labels[a] < data.labels[b];
    });

    td.columns.resize(static_cast<std::size_t>(data.n_features) * data.n_rows);
    td.labels.resize(data.n_rows);
    for (std::size_t i = 0; i < data.n_rows; ++i) {
        const double* r = data.row(order[i]);
        td.labels[i] = data.labels[order[i]];
        for (int f = 0; f < data.n_features; ++f) {
            td.columns[static_cast<std::size_t>(f) * data.n_rows + i] = r[f];
        }
    }

    td.sorted_idx.resize(static_cast<std::size_t>(data.n_features));
    td.missing_idx.resize(static_cast<std::size_t>(data.n_features));
    for (int f = 0; f < data.n_features; ++f) {
        auto& idx = td.sorted_idx[static_cast<std::size_t>(f)];
        auto& missing = td.missing_idx[static_cast<std::size_t>(f)];
        idx.reserve(data.n_rows);
        const double* col = td.columns.data() + static_cast<std::size_t>(f) * data.n_rows;
        for (uint32_t i = 0; i < data.n_rows; ++i) {
            if (std::isnan(col[i])) {
                missing.push_back(i);
            } else {
                idx.push_back(i);
            }
        }
        std::stable_sort(idx.begin(), idx.end(),
                         [col](uint32_t a, uint32_t b) { return col[a] < col[b]; });
    }
    return td;
}

struct SplitCandidate {
    double gain = -std::numeric_limits<double>::infinity();
    int feature = -1;
    double threshold = 0.0;
    bool default_left = true;
    bool valid() const { return feature >= 0; }
};

struct NodeStats {
    double g = 0.0;
    double h = 0.0;
    double cover = 0.0;
};

struct ScanState {
    double g = 0.0;
    double h = 0.0;
    double cover = 0.0;
    double last_value = 0.0;
    bool any = false;
};

// Best split of one feature across all active nodes of the current level.
void scan_feature(const TrainingData& td, int feature, const std::vector<double>& grad,
                  const std::vector<double>& hess, const std::vector<int>& node_slot,
                  const std::vector<NodeStats>& totals, const TrainConfig& config,
                  std::vector<SplitCandidate>& best_per_node) {
    const std::size_t n_active = totals.size();
    std::vector<ScanState> state(n_active);
    std::vector<NodeStats> missing(n_active);
    for (uint32_t row : td.missing_idx[static_cast<std::size_t>(feature)]) {
        const int slot = node_slot[row];
        if (slot < 0) continue;
        missing[static_cast<std::size_t>(slot)].g += grad[row];
        missing[static_cast<std::size_t>(slot)].h += hess[row];
        missing[static_cast<std::size_t>(slot)].cover += 1.0;
    }

    const double* col = td.columns.data() + static_cast<std::size_t>(feature) * td.n_rows;
    for (uint32_t row : td.sorted_idx[static_cast<std::size_t>(feature)]) {
        const int slot = node_slot[row];
        if (slot < 0) continue;
        ScanState& st = state[static_cast<std::size_t>(slot)];
        const double v = col[row];
        if (st.any && v > st.last_value) {
            const NodeStats& total = totals[static_cast<std::size_t>(slot)];
            const NodeStats& miss = missing[static_cast<std::size_t>(slot)];
            const double threshold = st.last_value + (v - st.last_value) * 0.5;
            // route missing values left or right, whichever gains more
            for (int route_left = 1; route_left >= 0; --route_left) {
                const double gl = st.g + (route_left ? miss.g : 0.0);
                const double hl = st.h + (route_left ? miss.h : 0.0);
                const double gr = total.g - gl;
                const double hr = total.h - hl;
                if (hl < config.min_child_weight || hr < config.min_child_weight) continue;
                const double cl = st.cover + (route_left ? miss.cover : 0.0);
                if (cl == 0.0 || cl == total.cover) continue;
                const double gain = split_gain(gl, hl, gr, hr, config.l2_lambda);
                SplitCandidate& best = best_per_node[static_cast<std::size_t>(slot)];
                if (gain > best.gain) {
                    best.gain = gain;
                    best.feature = feature;
                    best.threshold = threshold;
                    best.default_left = route_left == 1;
                }
            }
        }
        st.g += grad[row];
        st.h += hess[row];
        st.cover += 1.0;
        st.last_value = v;
        st.any = true;
    }
}

struct BoostContext {
    const TrainingData& td;
    const TrainConfig& config;
    std::vector<double> grad;
    std::vector<double> hess;
    std::vector<int> node_of;    // current tree node per row
    std::vector<int> node_slot;  // row -> active slot, -1 once the row rests in a leaf
};

Tree grow_tree(BoostContext& ctx, const std::vector<uint32_t>& active_rows,
               const std::vector<int>& features) {
    const TrainingData& td = ctx.td;
    const TrainConfig& config = ctx.config;

    Tree tree;
    tree.nodes.push_back(TreeNode{});

    std::fill(ctx.node_of.begin(), ctx.node_of.end(), -1);
    std::fill(ctx.node_slot.begin(), ctx.node_slot.end(), -1);
    for (uint32_t row : active_rows) ctx.node_of[row] = 0;

    std::vector<int> level_nodes = {0};
    std::vector<int> node_depth = {0};

    for (int depth = 0; depth < config.max_depth && !level_nodes.empty(); ++depth) {
        // slots are per-level dense indices into the scan accumulators
        std::vector<NodeStats> totals(level_nodes.size());
        std::vector<int> slot_of_node(tree.nodes.size(), -1);
        for (std::size_t s = 0; s < level_nodes.size(); ++s) {
            slot_of_node[static_cast<std::size_t>(level_nodes[s])] = static_cast<int>(s);
        }
        for (uint32_t row : active_rows) {
            const int node = ctx.node_of[row];
            const int slot = node >= 0 ? slot_of_node[static_cast<std::size_t>(node)] : -1;
            ctx.node_slot[row] = slot;
            if (slot >= 0) {
                totals[static_cast<std::size_t>(slot)].g += ctx.grad[row];
                totals[static_cast<std::size_t>(slot)].h += ctx.hess[row];
                totals[static_cast<std::size_t>(slot)].cover += 1.0;
            }
        }

        // per-feature candidates, reduced in feature order for determinism
        std::vector<std::vector<SplitCandidate>> per_feature(features.size());
        parallel_for(features.size(), [&](std::size_t fi) {
            per_feature[fi].assign(level_nodes.size(), SplitCandidate{});
            scan_feature(td, features[fi], ctx.grad, ctx.hess, ctx.node_slot, totals, config,
                         per_feature[fi]);
        });
        std::vector<SplitCandidate> best(level_nodes.size());
        for (std::size_t fi = 0; fi < features.size(); ++fi) {
            for (std::size_t s = 0; s < level_nodes.size(); ++s) {
                const SplitCandidate& c = per_feature[fi][s];
                if (!c.valid()) continue;
                SplitCandidate& b = best[s];
                // total order: gain desc, feature asc, threshold asc
                if (c.gain > b.gain ||
                    (c.gain == b.gain && b.valid() &&
                     (c.feature < b.feature ||
                      (c.feature == b.feature && c.threshold < b.threshold)))) {
                    b = c;
                } else if (!b.valid() && c.valid()) {
                    b = c;
                }
            }
        }

        std::vector<int> next_level;
        std::vector<int> next_depth;
        std::vector<bool> split_applied(level_nodes.size(), false);
        for (std::size_t s = 0; s < level_nodes.size(); ++s) {
            const int node_id = level_nodes[s];
            TreeNode& node = tree.nodes[static_cast<std::size_t>(node_id)];
            node.cover = totals[s].cover;
            const SplitCandidate& b = best[s];
            if (!b.valid() || !(b.gain - config.gamma > 0.0)) {
                node.feature = -1;
                node.weight = -totals[s].g / (totals[s].h + config.l2_lambda);
                continue;
            }
            node.feature = b.feature;
            node.threshold = b.threshold;
            node.default_left = b.default_left;
            node.left = static_cast<int>(tree.nodes.size());
            tree.nodes.push_back(TreeNode{});
            node.right = static_cast<int>(tree.nodes.size());
            tree.nodes.push_back(TreeNode{});
            next_level.push_back(node.left);
            next_level.push_back(node.right);
            next_depth.push_back(node_depth[s] + 1);
            next_depth.push_back(node_depth[s] + 1);
            split_applied[s] = true;
        }

        // move rows into children; rows in finalized leaves stay put
        for (uint32_t row : active_rows) {
            const int slot = ctx.node_slot[row];
            if (slot < 0 || !split_applied[static_cast<std::size_t>(slot)]) continue;
            const TreeNode& node = tree.nodes[static_cast<std::size_t>(ctx.node_of[row])];
            const double v = td.value(row, node.feature);
            const bool go_left = std::isnan(v) ? node.default_left : (v <= node.threshold);
            ctx.node_of[row] = go_left ? node.left : node.right;
        }

        level_nodes = std::move(next_level);
        node_depth = std::move(next_depth);
    }

    // whatever remains at max depth becomes leaves
    if (!level_nodes.empty()) {
        std::vector<NodeStats> totals(level_nodes.size());
        std::vector<int> slot_of_node(tree.nodes.size(), -1);
        for (std::size_t s = 0; s < level_nodes.size(); ++s) {
            slot_of_node[static_cast<std::size_t>(level_nodes[s])] = static_cast<int>(s);
        }
        for (uint32_t row : active_rows) {
            const int node = ctx.node_of[row];
            const int slot = node >= 0 ? slot_of_node[static_cast<std::size_t>(node)] : -1;
            if (slot >= 0) {
                totals[static_cast<std::size_t>(slot)].g += ctx.grad[row];
                totals[static_cast<std::size_t>(slot)].h += ctx.hess[row];
                totals[static_cast<std::size_t>(slot)].cover += 1.0;
            }
        }
        for (std::size_t s = 0; s < level_nodes.size(); ++s) {
            TreeNode& node = tree.nodes[static_cast<std::size_t>(level_nodes[s])];
            node.feature = -1;
            node.cover = totals[s].cover;
            node.weight = -totals[s].g / (totals[s].h + config.l2_lambda);
        }
    }
    return tree;
}

}  // namespace

TreeEnsemble train(const DataView& data, const TrainConfig& config,
                   const std::optional<DataView>& validation,
                   const std::vector<std::string>& feature_names) {
    config.validate();
    if (data.n_rows == 0) throw ValidationError("train needs at least one row");
    if (static_cast<int>(feature_names.size()) != data.n_features) {
        throw ValidationError("feature_names size does not match data");
    }
    {
        bool has_pos = false, has_neg = false;
        for (std::size_t i = 0; i < data.n_rows; ++i) {
            (data.labels[i] == 1 ? has_pos : has_neg) = true;
        }
        if (!has_pos || !has_neg) {
            throw DegenerateLabels("training data contains a single class");
        }
    }

    TrainingData td = canonicalize(data);

    TreeEnsemble ensemble;
    ensemble.learning_rate = config.learning_rate;
    ensemble.base_probability = 0.5;
    ensemble.config = config;
    ensemble.feature_names = feature_names;

    BoostContext ctx{td, config, {}, {}, {}, {}};
    ctx.grad.resize(td.n_rows);
    ctx.hess.resize(td.n_rows);
    ctx.node_of.resize(td.n_rows);
    ctx.node_slot.resize(td.n_rows);

    std::vector<double> margins(td.n_rows, 0.0);

    // Validation rows keep their caller order internally but the loss is a
    // mean, so only early stopping depends on them.
    std::vector<double> val_margins;
    if (validation.has_value()) val_margins.assign(validation->n_rows, 0.0);
    double best_val_loss = std::numeric_limits<double>::infinity();
    int best_iteration = 0;

    std::vector<int> all_features(static_cast<std::size_t>(td.n_features));
    std::iota(all_features.begin(), all_features.end(), 0);
    std::vector<uint32_t> all_rows(td.n_rows);
    std::iota(all_rows.begin(), all_rows.end(), 0);

    Rng subsample_rng(config.seed ^ 0x6c696e65627265ULL);

    for (int round = 0; round < config.max_trees; ++round) {
        for (std::size_t i = 0; i < td.n_rows; ++i) {
            const double p = sigmoid(margins[i]);
            const double w = td.labels[i] == 1 ? config.positive_class_weight : 1.0;
            ctx.grad[i] = w * (p - static_cast<double>(td.labels[i]));
            ctx.hess[i] = w * p * (1.0 - p);
        }

        std::vector<uint32_t> rows;
        const std::vector<uint32_t>* rows_ptr = &all_rows;
        if (config.row_subsample < 1.0) {
            rows.reserve(td.n_rows);
            for (uint32_t i = 0; i < td.n_rows; ++i) {
                if (subsample_rng.bernoulli(config.row_subsample)) rows.push_back(i);
            }
            if (rows.empty()) rows.push_back(0);
            rows_ptr = &rows;
        }
        std::vector<int> features;
        const std::vector<int>* features_ptr = &all_features;
        if (config.col_subsample < 1.0) {
            for (int f = 0; f < td.n_features; ++f) {
                if (subsample_rng.bernoulli(config.col_subsample)) features.push_back(f);
            }
            if (features.empty()) features.push_back(0);
            features_ptr = &features;
        }

        Tree tree = grow_tree(ctx, *rows_ptr, *features_ptr);

        for (std::size_t i = 0; i < td.n_rows; ++i) {
            int leaf = ctx.node_of[i];
            if (leaf < 0 || !tree.nodes[static_cast<std::size_t>(leaf)].is_leaf()) {
                // rows outside the subsample (or moved past pruned nodes) walk the tree
                std::vector<double> row(static_cast<std::size_t>(td.n_features));
                for (int f = 0; f < td.n_features; ++f) row[static_cast<std::size_t>(f)] = td.value(i, f);
                leaf = tree.leaf_for(row.data());
            }
            margins[i] += config.learning_rate * tree.nodes[static_cast<std::size_t>(leaf)].weight;
        }

        ensemble.trees.push_back(std::move(tree));

        {
            std::vector<double> probs(td.n_rows);
            for (std::size_t i = 0; i < td.n_rows; ++i) probs[i] = sigmoid(margins[i]);
            ensemble.training_logloss.push_back(log_loss(probs, td.labels));
        }

        if (validation.has_value() && config.early_stopping_rounds > 0) {
            const Tree& t = ensemble.trees.back();
            for (std::size_t i = 0; i < validation->n_rows; ++i) {
                const int leaf = t.leaf_for(validation->row(i));
                val_margins[i] += config.learning_rate * t.nodes[static_cast<std::size_t>(leaf)].weight;
            }
            std::vector<double> probs(validation->n_rows);
            std::vector<int> labels(validation->n_rows);
            for (std::size_t i = 0; i < validation->n_rows; ++i) {
                probs[i] = sigmoid(val_margins[i]);
                labels[i] = validation->labels[i];
            }
            const double val_loss = log_loss(probs, labels);
            if (val_loss < best_val_loss) {
                best_val_loss = val_loss;
                best_iteration = round + 1;
            } else if (round + 1 - best_iteration >= config.early_stopping_rounds) {
                break;
            }
        } else {
            best_iteration = round + 1;
        }
    }

    if (validation.has_value() && config.early_stopping_rounds > 0) {
        ensemble.trees.resize(static_cast<std::size_t>(best_iteration));
        ensemble.training_logloss.resize(static_cast<std::size_t>(best_iteration));
    }
    ensemble.best_iteration = static_cast<int>(ensemble.trees.size());
    return ensemble;
}

double predict_margin(const TreeEnsemble& ensemble, const double* row, int n_features) {
    if (n_features != static_cast<int>(ensemble.feature_names.size())) {
        throw SchemaMismatch("feature count " + std::to_string(n_features) + " does not match model (" +
                             std::to_string(ensemble.feature_names.size()) + ")");
    }
    return ensemble.margin(row);
}

double predict_proba(const TreeEnsemble& ensemble, const FeatureVector& fv) {
    return sigmoid(predict_margin(ensemble, fv.values.data(), kFeatureCount));
}

std::vector<double> predict_proba(const TreeEnsemble& ensemble, const FeatureMatrix& matrix) {
    check_schema(ensemble, matrix.schema);
    std::vector<double> out(matrix.size());
    parallel_for(matrix.size(), [&](std::size_t i) {
        out[i] = sigmoid(ensemble.margin(matrix.rows[i].values.data()));
    });
    return out;
}

void check_schema(const TreeEnsemble& ensemble, const std::vector<std::string>& schema) {
    if (ensemble.feature_names.size() != schema.size()) {
        throw SchemaMismatch("model expects " + std::to_string(ensemble.feature_names.size()) +
                             " features, data has " + std::to_string(schema.size()));
    }
    for (std::size_t i = 0; i < schema.size(); ++i) {
        if (ensemble.feature_names[i] != schema[i]) {
            throw SchemaMismatch("schema mismatch at column " + std::to_string(i + 1) + ": model '" +
                                 ensemble.feature_names[i] + "' vs data '" + schema[i] + "'");
        }
    }
}

namespace {

ordered_json config_to_json(const TrainConfig& c) {
    ordered_json j;
    j["max_trees"] = c.max_trees;
    j["learning_rate"] = c.learning_rate;
    j["max_depth"] = c.max_depth;
    j["min_child_weight"] = c.min_child_weight;
    j["l2_lambda"] = c.l2_lambda;
    j["gamma"] = c.gamma;
    j["early_stopping_rounds"] = c.early_stopping_rounds;
    j["positive_class_weight"] = c.positive_class_weight;
    j["row_subsample"] = c.row_subsample;
    j["col_subsample"] = c.col_subsample;
    j["seed"] = c.seed;
    return j;
}

TrainConfig config_from_json(const ordered_json& j) {
    TrainConfig c;
    c.max_trees = j.at("max_trees").get<int>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.max_depth = j.at("max_depth").get<int>();
    c.min_child_weight = j.at("min_child_weight").get<double>();
    c.l2_lambda = j.at("l2_lambda").get<double>();
    c.gamma = j.at("gamma").get<double>();
    c.early_stopping_rounds = j.at("early_stopping_rounds").get<int>();
    c.positive_class_weight = j.at("positive_class_weight").get<double>();
    c.row_subsample = j.at("row_subsample").get<double>();
    c.col_subsample = j.at("col_subsample").get<double>();
    c.seed = j.at("seed").get<uint64_t>();
    return c;
}

}  // namespace

std::string serialize_ensemble(const TreeEnsemble& ensemble) {
    ordered_json j;
    j["format"] = "linebreak-gbdt";
    j["version"] = 1;
    j["base_probability"] = ensemble.base_probability;
    j["learning_rate"] = ensemble.learning_rate;
    j["best_iteration"] = ensemble.best_iteration;
    j["config"] = config_to_json(ensemble.config);
    j["feature_names"] = ensemble.feature_names;
    ordered_json trees = ordered_json::array();
    for (const auto& tree : ensemble.trees) {
        ordered_json nodes = ordered_json::array();
        for (const auto& n : tree.nodes) {
            ordered_json node;
            if (n.is_leaf()) {
                node["weight"] = n.weight;
            } else {
                node["feature"] = n.feature;
                node["threshold"] = n.threshold;
                node["left"] = n.left;
                node["right"] = n.right;
                node["default_left"] = n.default_left;
            }
            node["cover"] = n.cover;
            nodes.push_back(std::move(node));
        }
        ordered_json t;
        t["nodes"] = std::move(nodes);
        trees.push_back(std::move(t));
    }
    j["trees"] = std::move(trees);
    return j.dump(2) + "\n";
}

TreeEnsemble deserialize_ensemble(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.value("format", "") != "linebreak-gbdt") {
        throw ValidationError("not a linebreak-gbdt model file");
    }
    TreeEnsemble e;
    e.base_probability = j.at("base_probability").get<double>();
    e.learning_rate = j.at("learning_rate").get<double>();
    e.best_iteration = j.at("best_iteration").get<int>();
    e.config = config_from_json(j.at("config"));
    e.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    for (const auto& t : j.at("trees")) {
        Tree tree;
        for (const auto& n : t.at("nodes")) {
            TreeNode node;
            if (n.contains("feature")) {
                node.feature = n.at("feature").get<int>();
                node.threshold = n.at("threshold").get<double>();
                node.left = n.at("left").get<int>();
                node.right = n.at("right").get<int>();
                node.default_left = n.at("default_left").get<bool>();
            }
            node.cover = n.at("cover").get<double>();
            if (n.contains("weight")) node.weight = n.at("weight").get<double>();
            tree.nodes.push_back(node);
        }
        e.trees.push_back(std::move(tree));
    }
    return e;
}

void save_ensemble(const std::string& path, const TreeEnsemble& ensemble) {
    write_file_atomic(path, serialize_ensemble(ensemble));
}

TreeEnsemble load_ensemble(const std::string& path) {
    return deserialize_ensemble(read_file(path));
}

CrossValidation cross_validate(const FeatureMatrix& matrix, const std::vector<int>& row_rounds,
                               const TrainConfig& config) {
    if (matrix.size() != row_rounds.size()) {
        throw ValidationError("cross_validate needs one round per row");
    }
    std::set<int> rounds(row_rounds.begin(), row_rounds.end());
    if (rounds.size() < 2) {
        throw ValidationError("cross_validate needs at least 2 distinct rounds");
    }

    CrossValidation cv;
    cv.pooled_probabilities.assign(matrix.size(), std::nan(""));

    for (int test_round : rounds) {
        std::vector<std::size_t> test_rows;
        std::vector<std::size_t> train_rows;
        for (std::size_t i = 0; i < matrix.size(); ++i) {
            (row_rounds[i] == test_round ? test_rows : train_rows).push_back(i);
        }
        if (test_rows.empty()) {
            log_warn("round " + std::to_string(test_round) + " has no passes, fold skipped");
            continue;
        }

        // hold the highest training round out of tree growth for early stopping,
        // but only when at least two training rounds remain
        int validation_round = INT32_MIN;
        if (config.early_stopping_rounds > 0 && rounds.size() > 2) {
            for (int r : rounds) {
                if (r != test_round) validation_round = std::max(validation_round, r);
            }
        }

        FeatureMatrix train_m, val_m;
        train_m.schema = matrix.schema;
        val_m.schema = matrix.schema;
        for (std::size_t i : train_rows) {
            auto& target = (row_rounds[i] == validation_round) ? val_m : train_m;
            target.rows.push_back(matrix.rows[i]);
            target.labels.push_back(matrix.labels[i]);
            target.pass_ids.push_back(matrix.pass_ids[i]);
        }
        if (train_m.rows.empty()) {
            log_warn("fold for round " + std::to_string(test_round) + " has no training rows, skipped");
            continue;
        }

        std::optional<DataView> val_view;
        if (!val_m.rows.empty()) val_view = view_of(val_m);
        TreeEnsemble ensemble = train(view_of(train_m), config, val_view, matrix.schema);

        for (std::size_t i : test_rows) {
            cv.pooled_probabilities[i] = predict_proba(ensemble, matrix.rows[i]);
        }
        cv.folds.push_back(FoldResult{test_round, std::move(ensemble), std::move(test_rows)});
    }
    return cv;
}

}  // namespace lb
