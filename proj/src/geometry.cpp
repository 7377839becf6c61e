#include "linebreak/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lb {

namespace {

// Clips a convex polygon against the half-plane a.x*X + a.y*Y <= b
// (Sutherland-Hodgman, one edge).
std::vector<Position> clip_half_plane(const std::vector<Position>& poly, double ax, double ay, double b) {
    std::vector<Position> out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Position& p = poly[i];
        const Position& q = poly[(i + 1) % n];
        const double dp = ax * p.x + ay * p.y - b;
        const double dq = ax * q.x + ay * q.y - b;
        const bool pin = dp <= 0.0;
        const bool qin = dq <= 0.0;
        if (pin) out.push_back(p);
        if (pin != qin) {
            const double t = dp / (dp - dq);
            out.push_back(Position{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
    }
    return out;
}

}  // namespace

double polygon_area(const std::vector<Position>& polygon) {
    const std::size_t n = polygon.size();
    if (n < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Position& p = polygon[i];
        const Position& q = polygon[(i + 1) % n];
        twice += p.x * q.y - q.x * p.y;
    }
    return std::abs(twice) * 0.5;
}

std::vector<VoronoiCell> voronoi_tessellation(const std::vector<VoronoiSite>& sites, const Pitch& pitch) {
    if (sites.empty()) throw ValidationError("voronoi_tessellation needs at least one site");

    // Clamp to the pitch, then resolve exact coincidences by nudging the
    // later site +1e-6 m in x (or -x at the far edge).
    std::vector<Position> pts(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        pts[i].x = std::clamp(sites[i].pos.x, 0.0, pitch.length_m);
        pts[i].y = std::clamp(sites[i].pos.y, 0.0, pitch.width_m);
    }
    constexpr double kNudge = 1e-6;
    constexpr int kMaxAttempts = 64;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        int attempts = 0;
        bool collision = true;
        while (collision) {
            collision = false;
            for (std::size_t j = 0; j < i; ++j) {
                if (pts[j].x == pts[i].x && pts[j].y == pts[i].y) {
                    collision = true;
                    break;
                }
            }
            if (!collision) break;
            if (++attempts > kMaxAttempts) {
                throw CoincidentSites("could not separate coincident sites near (" +
                                      format_double(pts[i].x) + ", " + format_double(pts[i].y) + ")");
            }
            pts[i].x = (pts[i].x + kNudge <= pitch.length_m) ? pts[i].x + kNudge : pts[i].x - kNudge;
        }
    }

    const std::vector<Position> pitch_rect = {
        {0.0, 0.0}, {pitch.length_m, 0.0}, {pitch.length_m, pitch.width_m}, {0.0, pitch.width_m}};

    std::vector<VoronoiCell> cells(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        std::vector<Position> poly = pitch_rect;
        const Position& p = pts[i];
        for (std::size_t j = 0; j < sites.size() && !poly.empty(); ++j) {
            if (j == i) continue;
            const Position& q = pts[j];
            // Points nearer p than q: (q - p) . X <= (q - p) . midpoint
            const double ax = q.x - p.x;
            const double ay = q.y - p.y;
            const double b = ax * (p.x + q.x) * 0.5 + ay * (p.y + q.y) * 0.5;
            poly = clip_half_plane(poly, ax, ay, b);
        }
        cells[i].owner = sites[i].owner;
        cells[i].polygon = std::move(poly);
        cells[i].area = polygon_area(cells[i].polygon);
    }
    return cells;
}

DefensiveLine defensive_line(const std::vector<Position>& team_positions, GoalSide own_goal,
                             const Pitch& pitch) {
    if (team_positions.size() < 2) {
        throw ValidationError("defensive_line needs at least 2 players");
    }
    std::vector<double> xs(team_positions.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = team_positions[i].x;
    // Sort by proximity to the own goal line; the line sits on the second player.
    if (own_goal == GoalSide::PositiveX) {
        std::sort(xs.begin(), xs.end(), std::greater<double>());
    } else {
        std::sort(xs.begin(), xs.end());
    }
    DefensiveLine line;
    line.line_x = std::clamp(xs[1], 0.0, pitch.length_m);
    line.reference_player_index = 1;
    return line;
}

LineGaps line_gaps(const OrderedSquads& squads) {
    const auto& d = squads.defense;
    if (d.size() < 10) throw ValidationError("line_gaps needs a fully ordered defense");
    // 0-based: d_10 is index 9, d_9 index 8, d_8 index 7, d_7 index 6.
    LineGaps g;
    g.gap1 = d[9].pos.x - d[8].pos.x;
    g.gap2 = d[9].pos.x - d[7].pos.x;
    g.gap3 = d[9].pos.x - d[6].pos.x;
    return g;
}

double nearest_defender_distance(const Position& passer, const std::vector<Position>& defenders) {
    if (defenders.empty()) throw ValidationError("nearest_defender_distance needs at least 1 defender");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& d : defenders) {
        best = std::min(best, std::hypot(d.x - passer.x, d.y - passer.y));
    }
    return best;
}

}  // namespace lb
