#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "linebreak/domain.hpp"

namespace lb {

class CoincidentSites : public Error {
public:
    explicit CoincidentSites(const std::string& what) : Error(what) {}
};

struct VoronoiCell {
    int32_t owner = 0;
    std::vector<Position> polygon;  // convex, counter-clockwise, clipped to the pitch
    double area = 0.0;
};

/// Which goal line a team defends under standardized coordinates.
enum class GoalSide : uint8_t { PositiveX, NegativeX };

struct DefensiveLine {
    double line_x = 0.0;
    /// Index (0-based) into that team's own-goal-proximity order. The line is
    /// always the second-last player, so this is 1.
    int reference_player_index = 1;
};

struct VoronoiSite {
    int32_t owner = 0;
    Position pos;
};

/// Partitions the pitch rectangle into per-player regions: each cell is the
/// intersection of the pitch with the half-planes closer to its site than to
/// any other site. Sites are clamped to the pitch; exactly coincident sites
/// are deterministically perturbed by 1e-6 m along x.
std::vector<VoronoiCell> voronoi_tessellation(const std::vector<VoronoiSite>& sites, const Pitch& pitch);

double polygon_area(const std::vector<Position>& polygon);

/// x of the second-closest player to the team's own goal line. The input
/// order does not matter; positions are re-sorted internally. Requires at
/// least 2 players.
DefensiveLine defensive_line(const std::vector<Position>& team_positions, GoalSide own_goal,
                             const Pitch& pitch = Pitch{});

struct LineGaps {
    double gap1 = 0.0;  // d_10.x - d_9.x
    double gap2 = 0.0;  // d_10.x - d_8.x
    double gap3 = 0.0;  // d_10.x - d_7.x
};

/// Gaps inside the defensive line, measured from the rearmost line defender
/// d_10 back toward d_9, d_8 and d_7. Requires an ordered defense of >= 10.
LineGaps line_gaps(const OrderedSquads& squads);

double nearest_defender_distance(const Position& passer, const std::vector<Position>& defenders);

}  // namespace lb
