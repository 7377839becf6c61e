#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linebreak/domain.hpp"

namespace lb {

struct MatchInfo {
    std::string match_id;
    int round = 1;
    std::string home_team;
    std::string away_team;
    AttackDirection home_attack_direction_p1 = AttackDirection::Right;
    int crosses_conceded_home = 0;
    int crosses_conceded_away = 0;
    int shots_conceded_home = 0;
    int shots_conceded_away = 0;

    int crosses_conceded(TeamSide side) const {
        return side == TeamSide::Home ? crosses_conceded_home : crosses_conceded_away;
    }
    int shots_conceded(TeamSide side) const {
        return side == TeamSide::Home ? shots_conceded_home : shots_conceded_away;
    }
};

/// Non-pass on-ball action (touch, shot, ...); used to resolve receptions.
struct OnBallEvent {
    std::string event_id;
    std::string match_id;
    int64_t t_ms = 0;
    std::string kind;
    TeamSide team = TeamSide::Home;
    int32_t player_id = 0;
};

/// Per-file skip/drop counters surfaced by the parsers.
struct IngestReport {
    int64_t tracking_rows = 0;
    int64_t tracking_rows_skipped = 0;
    int64_t frames_dropped_missing_ball = 0;
    int64_t events_total = 0;
    int64_t events_excluded_missing_ball = 0;
    int64_t events_skipped_unknown_kind = 0;
    int64_t events_skipped_malformed = 0;
    int64_t passes_dropped_unaligned = 0;

    void merge(const IngestReport& other);
    std::string summary() const;
};

/// Frames of one match, sorted by (period, frame_index).
struct FrameStore {
    std::vector<TrackingFrame> frames;

    const TrackingFrame* by_index(int64_t frame_index) const;
    const TrackingFrame* nearest_by_timestamp(int64_t t_ms) const;
    /// Frames with index in [first, last], in order.
    std::vector<const TrackingFrame*> window(int64_t first, int64_t last) const;
};

struct MatchData {
    FrameStore frames;
    std::vector<PassEvent> passes;
    std::vector<OnBallEvent> touches;
    /// Pass records without ball coordinates; re-emitted by the writer but
    /// excluded from analysis (the reader drops them at parse time).
    std::vector<PassEvent> excluded_passes;
};

struct Dataset {
    std::vector<MatchInfo> matches;
    std::map<std::string, MatchData> by_match;
    IngestReport report;

    const MatchInfo* match_info(const std::string& match_id) const;
};

// --- readers ----------------------------------------------------------------

/// Tracking CSV: header `match_id,period,frame,timestamp_ms,side,player_id,x,y`
/// with side H/A/B (B = ball, empty player_id). Rows of one frame must be
/// contiguous. Malformed rows are skipped and counted; a frame without a ball
/// row is dropped and logged; a non-monotonic frame_index within a period is
/// a hard parse error.
std::map<std::string, FrameStore> read_tracking(const std::string& path, IngestReport& report);

struct EventStream {
    std::vector<PassEvent> passes;
    std::vector<OnBallEvent> touches;
};

/// Events JSONL. Only the four pass kinds become PassEvents; other known
/// on-ball kinds (touch, shot, ...) feed reception resolution; unknown kinds
/// are skipped with a warning. Pass records without a ball position are
/// excluded and counted.
EventStream read_events(const std::string& path, IngestReport& report);

std::vector<MatchInfo> read_matches(const std::string& path);

/// Fills reception_frame (and receiver_id, when absent) from the possession
/// team's next on-ball event after release, within the same period. Leaves
/// the pass untouched unless success is set.
PassEvent resolve_reception(const PassEvent& pass, const std::vector<PassEvent>& passes,
                            const std::vector<OnBallEvent>& touches, const FrameStore& frames);

/// Snaps each pass to its release frame (nearest by timestamp, dropping
/// orphans), sorts, and resolves receptions. Works in place on raw passes.
void align_and_resolve(Dataset& dataset);

/// Reads the three files from `dir` (tracking.csv, events.jsonl, matches.csv),
/// aligns events to frames, resolves receptions and validates invariants.
Dataset read_dataset(const std::string& dir);

// --- writers ----------------------------------------------------------------

void write_tracking(const std::string& path, const Dataset& dataset);
void write_events(const std::string& path, const Dataset& dataset);
void write_matches(const std::string& path, const std::vector<MatchInfo>& matches);

/// Canonical re-emission of the dataset; re-reading yields an identical Dataset.
void write_dataset(const std::string& dir, const Dataset& dataset);

/// Field-exact equality over matches, frames, passes and touches.
bool dataset_equal(const Dataset& a, const Dataset& b);

}  // namespace lb
