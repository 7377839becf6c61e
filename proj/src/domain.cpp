#include "linebreak/domain.hpp"

#include <algorithm>
#include <unordered_map>

namespace lb {

const char* pass_kind_name(PassKind kind) {
    switch (kind) {
        case PassKind::HomePass: return "home_pass";
        case PassKind::AwayPass: return "away_pass";
        case PassKind::ThroughPass: return "through_pass";
        case PassKind::FlickOn: return "flick_on";
    }
    return "?";
}

std::optional<PassKind> parse_pass_kind(std::string_view name) {
    if (name == "home_pass") return PassKind::HomePass;
    if (name == "away_pass") return PassKind::AwayPass;
    if (name == "through_pass") return PassKind::ThroughPass;
    if (name == "flick_on") return PassKind::FlickOn;
    return std::nullopt;
}

TrackingFrame normalize_attack_direction(const TrackingFrame& frame, TeamSide /*possession*/,
                                         AttackDirection raw_direction, const Pitch& pitch) {
    if (raw_direction == AttackDirection::Right) return frame;
    TrackingFrame out = frame;
    for (auto& p : out.players) p.pos = mirror_position(p.pos, pitch);
    out.ball = mirror_position(out.ball, pitch);
    return out;
}

OrderedSquads order_squads(const TrackingFrame& frame, TeamSide possession,
                           const std::vector<PlayerKinematics>& kinematics,
                           const std::vector<std::pair<int32_t, double>>& areas,
                           int squad_size) {
    OrderedSquads squads;
    for (const auto& p : frame.players) {
        PlayerState st;
        st.player_id = p.player_id;
        st.pos = p.pos;
        if (p.side == possession) {
            squads.offense.push_back(st);
        } else {
            squads.defense.push_back(st);
        }
    }
    if (static_cast<int>(squads.offense.size()) != squad_size ||
        static_cast<int>(squads.defense.size()) != squad_size) {
        throw SquadIncomplete("frame " + std::to_string(frame.frame_index) + " of match " +
                              frame.match_id + " has " + std::to_string(squads.offense.size()) +
                              " offense / " + std::to_string(squads.defense.size()) +
                              " defense players, expected " + std::to_string(squad_size));
    }

    std::unordered_map<int32_t, const PlayerKinematics*> kin_by_id;
    for (const auto& k : kinematics) kin_by_id[k.player_id] = &k;
    std::unordered_map<int32_t, double> area_by_id;
    for (const auto& [id, a] : areas) area_by_id[id] = a;

    auto fill = [&](PlayerState& st) {
        if (auto it = kin_by_id.find(st.player_id); it != kin_by_id.end()) {
            st.vx = it->second->vx;
            st.vy = it->second->vy;
            st.ax = it->second->ax;
            st.ay = it->second->ay;
        }
        if (auto it = area_by_id.find(st.player_id); it != area_by_id.end()) {
            st.voronoi_area = it->second;
        }
    };
    for (auto& st : squads.offense) fill(st);
    for (auto& st : squads.defense) fill(st);

    // o_1 is the offense player closest to the opponent's goal at +x.
    std::sort(squads.offense.begin(), squads.offense.end(), [](const PlayerState& a, const PlayerState& b) {
        if (a.pos.x != b.pos.x) return a.pos.x > b.pos.x;
        return a.player_id < b.player_id;
    });
    // d_1 has the smallest x; d_11 is closest to the goal the defense protects.
    std::sort(squads.defense.begin(), squads.defense.end(), [](const PlayerState& a, const PlayerState& b) {
        if (a.pos.x != b.pos.x) return a.pos.x < b.pos.x;
        return a.player_id < b.player_id;
    });
    return squads;
}

}  // namespace lb
