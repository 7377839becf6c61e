#pragma once

#include <array>
#include <string>
#include <vector>

#include "linebreak/domain.hpp"
#include "linebreak/labeler.hpp"

namespace lb {

constexpr int kFeatureCount = 189;

/// The locked feature name list, in emission order: pass context scalars,
/// then per-player blocks (o_1..o_11 then d_1..d_11 for x, y, vx, vy, ax, ay,
/// area), then the line-to-attacker differences.
const std::vector<std::string>& feature_schema();

int feature_index(const std::string& name);

struct FeatureVector {
    std::array<double, kFeatureCount> values{};

    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
};

/// Pass direction category from the displacement angle (atan2 of the pass
/// delta): +1 forward (|theta| < 60 deg), -1 backward (|theta| > 120 deg),
/// 0 lateral in between.
int pass_direction(const Position& ball_start, const Position& ball_end);

/// Builds the 189-dimension row for one pass at its release frame. The squads
/// must carry kinematics and Voronoi areas.
FeatureVector extract_features(const PassContext& ctx, const Pitch& pitch = Pitch{});

/// One row per labeled pass, ordered by (match_id, release_frame, pass_id).
struct FeatureMatrix {
    std::vector<std::string> schema;  // the 189 names
    std::vector<FeatureVector> rows;
    std::vector<int> labels;
    std::vector<std::string> pass_ids;

    std::size_t size() const { return rows.size(); }
};

/// Features CSV: 189 schema names + label + pass_id; values with 6
/// significant digits.
void write_features_csv(const std::string& path, const FeatureMatrix& matrix);
FeatureMatrix read_features_csv(const std::string& path);

}  // namespace lb
