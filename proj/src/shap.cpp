#include "linebreak/shap.hpp"

#include <algorithm>
#include <cmath>

namespace lb {

namespace {

// Decision-path bookkeeping for the exact tree Shapley recursion. Each entry
// holds the fraction of background paths (zero_fraction) and observation
// paths (one_fraction) that flow through a feature's split, plus the
// permutation weight accumulated so far.
struct PathElement {
    int feature_index = -1;
    double zero_fraction = 0.0;
    double one_fraction = 0.0;
    double pweight = 0.0;
};

void extend_path(PathElement* path, int depth, double zero_fraction, double one_fraction,
                 int feature_index) {
    path[depth].feature_index = feature_index;
    path[depth].zero_fraction = zero_fraction;
    path[depth].one_fraction = one_fraction;
    path[depth].pweight = depth == 0 ? 1.0 : 0.0;
    for (int i = depth - 1; i >= 0; --i) {
        path[i + 1].pweight += one_fraction * path[i].pweight * (i + 1) / static_cast<double>(depth + 1);
        path[i].pweight = zero_fraction * path[i].pweight * (depth - i) / static_cast<double>(depth + 1);
    }
}

void unwind_path(PathElement* path, int depth, int index) {
    const double one_fraction = path[index].one_fraction;
    const double zero_fraction = path[index].zero_fraction;
    double next_one_portion = path[depth].pweight;
    for (int i = depth - 1; i >= 0; --i) {
        if (one_fraction != 0.0) {
            const double tmp = path[i].pweight;
            path[i].pweight = next_one_portion * (depth + 1) / static_cast<double>((i + 1) * one_fraction);
            next_one_portion = tmp - path[i].pweight * zero_fraction * (depth - i) /
                                         static_cast<double>(depth + 1);
        } else {
            path[i].pweight = path[i].pweight * (depth + 1) /
                              (zero_fraction * static_cast<double>(depth - i));
        }
    }
    for (int i = index; i < depth; ++i) {
        path[i].feature_index = path[i + 1].feature_index;
        path[i].zero_fraction = path[i + 1].zero_fraction;
        path[i].one_fraction = path[i + 1].one_fraction;
    }
}

double unwound_path_sum(const PathElement* path, int depth, int index) {
    const double one_fraction = path[index].one_fraction;
    const double zero_fraction = path[index].zero_fraction;
    double next_one_portion = path[depth].pweight;
    double total = 0.0;
    if (one_fraction != 0.0) {
        for (int i = depth - 1; i >= 0; --i) {
            const double tmp = next_one_portion / static_cast<double>((i + 1) * one_fraction);
            total += tmp;
            next_one_portion = path[i].pweight - tmp * zero_fraction * (depth - i);
        }
    } else {
        for (int i = depth - 1; i >= 0; --i) {
            total += path[i].pweight / (zero_fraction * static_cast<double>(depth - i));
        }
    }
    return total * (depth + 1);
}

struct TreeWalk {
    const Tree& tree;
    const double* x;
    double* phi;  // per-feature accumulator, leaf-weight units

    void recurse(int node_index, int depth, PathElement* parent_path, double parent_zero_fraction,
                 double parent_one_fraction, int parent_feature) {
        PathElement* path = parent_path + depth + 1;
        std::copy(parent_path, parent_path + depth + 1, path);
        extend_path(path, depth, parent_zero_fraction, parent_one_fraction, parent_feature);

        const TreeNode& node = tree.nodes[static_cast<std::size_t>(node_index)];
        if (node.is_leaf()) {
            for (int i = 1; i <= depth; ++i) {
                const double w = unwound_path_sum(path, depth, i);
                const PathElement& el = path[i];
                phi[el.feature_index] += w * (el.one_fraction - el.zero_fraction) * node.weight;
            }
            return;
        }

        if (node.cover <= 0.0) {
            throw ValidationError("tree node without cover; the model must record training covers");
        }
        const TreeNode& left = tree.nodes[static_cast<std::size_t>(node.left)];
        const TreeNode& right = tree.nodes[static_cast<std::size_t>(node.right)];
        const double v = x[node.feature];
        const bool go_left = std::isnan(v) ? node.default_left : (v <= node.threshold);
        const int hot = go_left ? node.left : node.right;
        const int cold = go_left ? node.right : node.left;
        const double hot_cover = go_left ? left.cover : right.cover;
        const double cold_cover = go_left ? right.cover : left.cover;

        double incoming_zero = 1.0;
        double incoming_one = 1.0;
        int path_index = 0;
        for (; path_index <= depth; ++path_index) {
            if (path[path_index].feature_index == node.feature) break;
        }
        if (path_index != depth + 1) {
            incoming_zero = path[path_index].zero_fraction;
            incoming_one = path[path_index].one_fraction;
            unwind_path(path, depth, path_index);
            depth -= 1;
        }

        recurse(hot, depth + 1, path, hot_cover / node.cover * incoming_zero, incoming_one, node.feature);
        recurse(cold, depth + 1, path, cold_cover / node.cover * incoming_zero, 0.0, node.feature);
    }
};

int tree_depth(const Tree& tree, int node = 0) {
    const TreeNode& n = tree.nodes[static_cast<std::size_t>(node)];
    if (n.is_leaf()) return 0;
    return 1 + std::max(tree_depth(tree, n.left), tree_depth(tree, n.right));
}

}  // namespace

double tree_expected_value(const Tree& tree) {
    // cover-weighted average of leaves, computed bottom-up
    std::vector<double> expected(tree.nodes.size(), 0.0);
    for (std::size_t i = tree.nodes.size(); i-- > 0;) {
        const TreeNode& n = tree.nodes[i];
        if (n.is_leaf()) {
            expected[i] = n.weight;
        } else {
            const double cl = tree.nodes[static_cast<std::size_t>(n.left)].cover;
            const double cr = tree.nodes[static_cast<std::size_t>(n.right)].cover;
            if (cl + cr <= 0.0) {
                throw ValidationError("tree node without cover; the model must record training covers");
            }
            expected[i] = (cl * expected[static_cast<std::size_t>(n.left)] +
                           cr * expected[static_cast<std::size_t>(n.right)]) /
                          (cl + cr);
        }
    }
    return expected[0];
}

Attribution explain(const TreeEnsemble& ensemble, const FeatureVector& row, const std::string& pass_id) {
    Attribution attr;
    attr.pass_id = pass_id;
    attr.phi.assign(ensemble.feature_names.size(), 0.0);

    std::vector<double> tree_phi(attr.phi.size());
    for (const auto& tree : ensemble.trees) {
        std::fill(tree_phi.begin(), tree_phi.end(), 0.0);
        if (tree.nodes.empty()) continue;
        if (tree.nodes[0].is_leaf()) {
            attr.base_value += ensemble.learning_rate * tree.nodes[0].weight;
            continue;
        }
        const int max_depth = tree_depth(tree) + 2;
        std::vector<PathElement> path_storage(
            static_cast<std::size_t>((max_depth * (max_depth + 1)) / 2 + max_depth));
        TreeWalk walk{tree, row.values.data(), tree_phi.data()};
        walk.recurse(0, 0, path_storage.data(), 1.0, 1.0, -1);
        for (std::size_t i = 0; i < tree_phi.size(); ++i) {
            attr.phi[i] += ensemble.learning_rate * tree_phi[i];
        }
        attr.base_value += ensemble.learning_rate * tree_expected_value(tree);
    }
    return attr;
}

std::vector<Attribution> explain_matrix(const TreeEnsemble& ensemble, const FeatureMatrix& matrix) {
    check_schema(ensemble, matrix.schema);
    std::vector<Attribution> out(matrix.size());
    parallel_for(matrix.size(), [&](std::size_t i) {
        out[i] = explain(ensemble, matrix.rows[i], matrix.pass_ids[i]);
    });
    return out;
}

std::vector<FeatureRanking> summarize(const std::vector<Attribution>& attributions,
                                      const std::vector<std::string>& schema) {
    if (attributions.empty()) throw ValidationError("summarize needs at least one attribution");
    std::vector<FeatureRanking> out(schema.size());
    for (std::size_t f = 0; f < schema.size(); ++f) {
        out[f].feature_index = static_cast<int>(f);
        out[f].feature = schema[f];
    }
    for (const auto& attr : attributions) {
        if (attr.phi.size() != schema.size()) {
            throw ValidationError("attribution width does not match schema");
        }
        for (std::size_t f = 0; f < schema.size(); ++f) {
            out[f].mean_abs_phi += std::abs(attr.phi[f]);
        }
    }
    for (auto& r : out) r.mean_abs_phi /= static_cast<double>(attributions.size());
    std::stable_sort(out.begin(), out.end(), [](const FeatureRanking& a, const FeatureRanking& b) {
        return a.mean_abs_phi > b.mean_abs_phi;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i) + 1;
    return out;
}

std::vector<BeeswarmPoint> beeswarm_points(const std::vector<Attribution>& attributions,
                                           const FeatureMatrix& matrix, int feature_index) {
    if (attributions.size() != matrix.size()) {
        throw ValidationError("beeswarm_points needs one attribution per row");
    }
    std::vector<double> values(matrix.size());
    for (std::size_t i = 0; i < matrix.size(); ++i) values[i] = matrix.rows[i][feature_index];
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());

    std::vector<BeeswarmPoint> out(matrix.size());
    const double n = static_cast<double>(matrix.size());
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        const auto lo = std::lower_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin();
        const auto hi = std::upper_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin();
        out[i].phi = attributions[i].phi[static_cast<std::size_t>(feature_index)];
        out[i].value_percentile = (static_cast<double>(lo) + 0.5 * static_cast<double>(hi - lo)) / n;
    }
    return out;
}

void write_attributions_csv(const std::string& path, const std::vector<Attribution>& attributions,
                            const std::vector<std::string>& schema) {
    std::string buf = "pass_id";
    for (const auto& name : schema) {
        buf += ',';
        buf += name;
    }
    buf += ",base_value\n";
    for (const auto& a : attributions) {
        buf += a.pass_id;
        for (double v : a.phi) {
            buf += ',';
            append_double(buf, v);
        }
        buf += ',';
        append_double(buf, a.base_value);
        buf += '\n';
    }
    write_file_atomic(path, buf);
}

std::vector<Attribution> read_attributions_csv(const std::string& path) {
    const std::string content = read_file(path);
    std::vector<Attribution> out;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    std::size_t n_cols = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) eol = content.size();
        std::string_view line(content.data() + pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty()) continue;
        const auto cols = split_view(line, ',');
        if (line_no == 1) {
            if (cols.size() < 3 || cols.front() != "pass_id" || cols.back() != "base_value") {
                throw ParseError(path + ":1: unexpected attributions header");
            }
            n_cols = cols.size();
            continue;
        }
        if (cols.size() != n_cols) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": wrong column count");
        }
        Attribution a;
        a.pass_id = std::string(cols[0]);
        a.phi.resize(n_cols - 2);
        for (std::size_t i = 1; i + 1 < cols.size(); ++i) {
            if (!parse_double(cols[i], a.phi[i - 1])) {
                throw ParseError(path + ":" + std::to_string(line_no) + ": bad phi value");
            }
        }
        if (!parse_double(cols.back(), a.base_value)) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": bad base_value");
        }
        out.push_back(std::move(a));
    }
    return out;
}

void write_summary_csv(const std::string& path, const std::vector<FeatureRanking>& ranking) {
    std::string buf = "feature,mean_abs_phi,rank\n";
    for (const auto& r : ranking) {
        buf += r.feature;
        buf += ',';
        append_double(buf, r.mean_abs_phi);
        buf += ',';
        append_int(buf, r.rank);
        buf += '\n';
    }
    write_file_atomic(path, buf);
}

std::vector<FeatureRanking> read_summary_csv(const std::string& path) {
    const std::string content = read_file(path);
    std::vector<FeatureRanking> out;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) eol = content.size();
        std::string_view line(content.data() + pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "feature,mean_abs_phi,rank") {
                throw ParseError(path + ":1: unexpected summary header");
            }
            continue;
        }
        const auto cols = split_view(line, ',');
        if (cols.size() != 3) throw ParseError(path + ":" + std::to_string(line_no) + ": bad row");
        FeatureRanking r;
        r.feature = std::string(cols[0]);
        long long rank;
        if (!parse_double(cols[1], r.mean_abs_phi) || !parse_int(cols[2], rank)) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": bad row");
        }
        r.rank = static_cast<int>(rank);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace lb
