#pragma once

#include <string>
#include <vector>

#include "linebreak/domain.hpp"
#include "linebreak/ingest.hpp"

namespace lb {

/// Dead band against tracking jitter at the line, in meters.
constexpr double kLineEpsilonM = 0.1;

/// The three-condition test, factored out so independent checks can reuse it:
/// a pass breaks the line iff the ball and the receiver start in front of the
/// defensive line (release) and the receiver is beyond it at reception.
/// Returns "line-break" or the name of the first failed condition.
std::string line_break_conditions(double ball_start_x, double receiver_x_release,
                                  double receiver_x_reception, double line_x_release,
                                  double line_x_reception, double epsilon = kLineEpsilonM);

/// Geometry snapshot for one pass, in normalized coordinates (possession
/// attacks +x). Produced by the pipeline; consumed by labeler and features.
struct PassContext {
    PassEvent pass;
    TrackingFrame release_frame;              // normalized
    TrackingFrame reception_frame;            // normalized; valid iff has_reception
    bool has_reception = false;
    OrderedSquads squads_at_release;          // with kinematics and Voronoi areas
    std::vector<Position> defense_at_reception;
    Position receiver_at_release;
    Position receiver_at_reception;
    bool receiver_tracked = false;
};

LabeledPass label_pass(const PassContext& ctx, const Pitch& pitch = Pitch{});

struct LabelSummary {
    int64_t total_pass_events = 0;
    int64_t successful = 0;
    int64_t labeled = 0;
    int64_t positives = 0;
    int64_t skipped_incomplete_squad = 0;
    int64_t skipped_unsuccessful = 0;
    double positive_rate() const { return labeled > 0 ? static_cast<double>(positives) / labeled : 0.0; }
    std::string summary() const;
};

/// Labels CSV:
/// pass_id,label,line_x_release,line_x_reception,receiver_x_release,receiver_x_reception,reason
void write_labels_csv(const std::string& path, const std::vector<LabeledPass>& labels);
std::vector<LabeledPass> read_labels_csv(const std::string& path);

}  // namespace lb
