#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linebreak/util.hpp"

namespace lb {

/// Pitch rectangle. x runs along the touchline, y along the goal line;
/// the origin sits on a corner, so x in [0, length] and y in [0, width].
struct Pitch {
    double length_m = 105.0;
    double width_m = 68.0;

    double area() const { return length_m * width_m; }
};

struct Position {
    double x = 0.0;
    double y = 0.0;
};

enum class TeamSide : uint8_t { Home = 0, Away = 1 };

inline TeamSide opponent(TeamSide side) {
    return side == TeamSide::Home ? TeamSide::Away : TeamSide::Home;
}

inline const char* team_side_name(TeamSide side) {
    return side == TeamSide::Home ? "home" : "away";
}

enum class AttackDirection : uint8_t { Left, Right };

struct TrackedPlayer {
    TeamSide side = TeamSide::Home;
    int32_t player_id = 0;
    Position pos;
};

/// One 25 Hz snapshot: all tracked players plus the ball.
struct TrackingFrame {
    std::string match_id;
    int period = 1;
    int64_t frame_index = 0;
    int64_t timestamp_ms = 0;
    std::vector<TrackedPlayer> players;
    Position ball;
};

enum class PassKind : uint8_t { HomePass, AwayPass, ThroughPass, FlickOn };

const char* pass_kind_name(PassKind kind);
std::optional<PassKind> parse_pass_kind(std::string_view name);

struct PassEvent {
    std::string pass_id;
    std::string match_id;
    int64_t t_ms = 0;
    int64_t release_frame = 0;
    std::optional<int64_t> reception_frame;
    int32_t passer_id = 0;
    std::optional<int32_t> receiver_id;
    TeamSide team_in_possession = TeamSide::Home;
    PassKind kind = PassKind::HomePass;
    bool one_touch = false;
    bool success = false;
    Position ball_start;
    std::optional<Position> ball_end;
};

struct PlayerState {
    int32_t player_id = 0;
    Position pos;
    double vx = 0.0, vy = 0.0;
    double ax = 0.0, ay = 0.0;
    double voronoi_area = 0.0;
};

/// Both squads at one frame, ordered by proximity to the opponent's goal.
/// Offense attacks +x, so offense is sorted by descending x (o_1 leads the
/// attack) and defense by ascending x (d_11 is nearest the goal it defends).
/// Ties are broken by ascending player_id.
struct OrderedSquads {
    std::vector<PlayerState> offense;  // o_1 .. o_11
    std::vector<PlayerState> defense;  // d_1 .. d_11
};

struct LabeledPass {
    PassEvent pass;
    int label = 0;
    double defensive_line_x_at_release = 0.0;
    double defensive_line_x_at_reception = 0.0;
    double receiver_x_at_release = 0.0;
    double receiver_x_at_reception = 0.0;
    std::string reason;  // "line-break", "no-reception", or the first failed condition
};

class SquadIncomplete : public Error {
public:
    explicit SquadIncomplete(const std::string& what) : Error(what) {}
};

/// Mirrors a frame so the team in possession attacks toward +x. When
/// raw_direction is already Right the frame is returned unchanged; otherwise
/// every position maps (x, y) -> (length - x, width - y).
TrackingFrame normalize_attack_direction(const TrackingFrame& frame, TeamSide possession,
                                         AttackDirection raw_direction,
                                         const Pitch& pitch = Pitch{});

inline Position mirror_position(const Position& p, const Pitch& pitch) {
    return Position{pitch.length_m - p.x, pitch.width_m - p.y};
}

struct PlayerKinematics {
    int32_t player_id = 0;
    double vx = 0.0, vy = 0.0;
    double ax = 0.0, ay = 0.0;
};

/// Orders both squads of a (normalized) frame. Kinematics and Voronoi areas
/// are carried through by player_id; missing entries default to zero.
/// Throws SquadIncomplete unless both teams have exactly squad_size players.
OrderedSquads order_squads(const TrackingFrame& frame, TeamSide possession,
                           const std::vector<PlayerKinematics>& kinematics,
                           const std::vector<std::pair<int32_t, double>>& areas,
                           int squad_size = 11);

}  // namespace lb
