#include "linebreak/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "linebreak/labeler.hpp"

namespace lb {

namespace {

constexpr int kWindowFrames = 50;       // +/- 2 s at 25 Hz
constexpr int kWindowSpacing = 113;     // frames between pass release centers
constexpr double kFrameMs = 40.0;

double quantize_mm(double v) { return std::round(v * 1000.0) / 1000.0; }

struct Motion {
    Position at_release;
    double vx = 0.0, vy = 0.0;

    Position at(double t_rel_s, const Pitch& pitch) const {
        Position p{at_release.x + vx * t_rel_s, at_release.y + vy * t_rel_s};
        p.x = std::clamp(p.x, 0.2, pitch.length_m - 0.2);
        p.y = std::clamp(p.y, 0.2, pitch.width_m - 0.2);
        return p;
    }
};

struct Scenario {
    std::string name;
    bool success = true;
    bool drop_ball_coords = false;
    PassKind kind = PassKind::ThroughPass;
    bool one_touch = false;
    std::vector<Motion> offense;   // [0] passer, [1] runner/receiver slot, [2] second forward
    std::vector<Motion> defense;   // [0..3] back line (3 is d_10), [4] GK, rest mid/fwd
    int receiver_offense_index = 1;
    double reception_delay_s = 1.2;
    Position ball_start;
    Position ball_end;
    bool emit_shot_after = false;
};

// Shared scaffolding: back four anchored at line_x with the requested third
// gap, goalkeeper behind, midfield and forwards pulled back, and nine
// supporting attackers kept below the runners so the scripted forwards stay
// o_1/o_2 in the release ordering.
Scenario base_scenario(Rng& rng, double line_x, double gap3) {
    Scenario s;
    const double drift = rng.uniform(-0.4, 0.4);  // coherent back-line drift

    const double g1 = gap3 * rng.uniform(0.15, 0.40);
    const double g2 = gap3 * rng.uniform(0.45, 0.80);
    const double back_x[4] = {line_x - gap3, line_x - g2, line_x - g1, line_x};
    double back_y[4];
    for (int i = 0; i < 4; ++i) back_y[i] = 10.0 + 16.0 * i + rng.uniform(-4.0, 4.0);
    // shuffle which lane each back-line defender occupies
    for (int i = 3; i > 0; --i) std::swap(back_y[i], back_y[static_cast<std::size_t>(rng.uniform_int(i + 1))]);
    for (int i = 0; i < 4; ++i) {
        Motion m;
        m.at_release = Position{back_x[i], back_y[i]};
        m.vx = drift + rng.normal(0.0, 0.15);
        m.vy = rng.normal(0.0, 0.3);
        s.defense.push_back(m);
    }
    {
        Motion gk;
        gk.at_release = Position{std::min(line_x + rng.uniform(8.0, 14.0), 103.0),
                                 34.0 + rng.normal(0.0, 4.0)};
        gk.vx = rng.normal(0.0, 0.1);
        gk.vy = rng.normal(0.0, 0.1);
        s.defense.push_back(gk);
    }
    const double mid_back = line_x - gap3;
    for (int i = 0; i < 4; ++i) {
        Motion m;
        m.at_release = Position{mid_back - rng.uniform(4.0, 14.0), 8.0 + 17.0 * i + rng.uniform(-5.0, 5.0)};
        m.vx = rng.normal(0.0, 0.8);
        m.vy = rng.normal(0.0, 0.8);
        s.defense.push_back(m);
    }
    for (int i = 0; i < 2; ++i) {
        Motion m;
        m.at_release = Position{line_x - rng.uniform(25.0, 40.0), rng.uniform(14.0, 54.0)};
        m.vx = rng.normal(0.0, 0.8);
        m.vy = rng.normal(0.0, 0.8);
        s.defense.push_back(m);
    }

    // offense: passer, two forwards near the line, eight support players
    Motion passer;
    passer.at_release = Position{line_x - rng.uniform(6.0, 22.0), rng.uniform(15.0, 53.0)};
    passer.vx = rng.normal(0.0, 0.5);
    passer.vy = rng.normal(0.0, 0.5);
    s.offense.push_back(passer);
    s.offense.push_back(Motion{});  // forward #1, filled by the scenario
    s.offense.push_back(Motion{});  // forward #2
    for (int i = 0; i < 8; ++i) {
        Motion m;
        m.at_release =
            Position{std::max(2.0, line_x - rng.uniform(7.0, 45.0)), rng.uniform(5.0, 63.0)};
        m.vx = rng.normal(0.0, 0.8);
        m.vy = rng.normal(0.0, 0.8);
        s.offense.push_back(m);
    }
    s.ball_start = passer.at_release;
    return s;
}

Scenario make_break(Rng& rng, double line_x) {
    const double gap3 = rng.uniform(8.0, 16.0);
    Scenario s = base_scenario(rng, line_x, gap3);
    s.name = "break";

    const double margin_release = rng.uniform(1.5, 5.0);
    const double margin_reception = rng.uniform(1.5, 6.0);
    const double run_speed = rng.uniform(4.5, 7.5);
    double delay = (margin_release + margin_reception) / run_speed;
    delay = std::clamp(delay, 0.6, 1.9);
    s.reception_delay_s = delay;

    Motion runner;
    runner.at_release = Position{line_x - margin_release, rng.uniform(10.0, 58.0)};
    runner.vx = (margin_release + margin_reception + s.defense[3].vx * delay) / delay;
    runner.vy = rng.normal(0.0, 1.2);
    s.offense[1] = runner;
    s.receiver_offense_index = 1;

    Motion decoy;
    decoy.at_release = Position{line_x - rng.uniform(2.0, 6.0), rng.uniform(10.0, 58.0)};
    decoy.vx = rng.uniform(4.5, 7.0);
    decoy.vy = rng.normal(0.0, 1.2);
    s.offense[2] = decoy;

    s.ball_end = runner.at(delay, Pitch{});
    const double u = rng.uniform();
    s.kind = u < 0.75 ? PassKind::ThroughPass : (u < 0.95 ? PassKind::HomePass : PassKind::FlickOn);
    s.one_touch = rng.bernoulli(0.25);
    s.emit_shot_after = rng.bernoulli(0.3);
    return s;
}

Scenario make_circulation(Rng& rng, double line_x) {
    const double gap3 = rng.uniform(1.0, 6.0);
    Scenario s = base_scenario(rng, line_x, gap3);
    s.name = "circulation";

    // slow forwards holding the line
    for (int i = 1; i <= 2; ++i) {
        Motion fw;
        fw.at_release = Position{line_x - rng.uniform(2.0, 6.0), rng.uniform(10.0, 58.0)};
        fw.vx = rng.normal(0.5, 0.6);
        fw.vy = rng.normal(0.0, 0.8);
        s.offense[static_cast<std::size_t>(i)] = fw;
    }
    // receive behind or square of the passer, well below the line
    const bool backward = rng.bernoulli(0.6);
    Motion receiver;
    const double px = s.offense[0].at_release.x;
    const double rx = backward ? px - rng.uniform(4.0, 15.0) : px + rng.uniform(-1.0, 1.0);
    receiver.at_release = Position{std::max(2.0, std::min(rx, line_x - 8.0)),
                                   std::clamp(s.offense[0].at_release.y + rng.uniform(6.0, 20.0) *
                                                  (rng.bernoulli(0.5) ? 1.0 : -1.0),
                                              2.0, 66.0)};
    receiver.vx = rng.normal(0.0, 0.6);
    receiver.vy = rng.normal(0.0, 0.6);
    s.offense[3] = receiver;
    s.receiver_offense_index = 3;
    s.reception_delay_s = rng.uniform(0.7, 1.6);
    s.ball_end = receiver.at(s.reception_delay_s, Pitch{});
    s.kind = rng.bernoulli(0.5) ? PassKind::HomePass : PassKind::AwayPass;
    s.one_touch = rng.bernoulli(0.3);
    return s;
}

Scenario make_to_feet(Rng& rng, double line_x) {
    const double gap3 = rng.uniform(1.0, 6.0);
    Scenario s = base_scenario(rng, line_x, gap3);
    s.name = "to-feet";

    Motion target;
    target.at_release = Position{line_x - rng.uniform(5.0, 14.0), rng.uniform(10.0, 58.0)};
    target.vx = rng.normal(0.8, 0.8);
    target.vy = rng.normal(0.0, 0.8);
    s.offense[1] = target;
    s.receiver_offense_index = 1;

    Motion other;
    other.at_release = Position{line_x - rng.uniform(2.5, 6.5), rng.uniform(10.0, 58.0)};
    other.vx = rng.normal(0.5, 0.6);
    other.vy = rng.normal(0.0, 0.8);
    s.offense[2] = other;

    s.reception_delay_s = rng.uniform(0.6, 1.4);
    // keep the reception clearly on the near side of the line
    Position rec = target.at(s.reception_delay_s, Pitch{});
    rec.x = std::min(rec.x, line_x - 1.8);
    s.ball_end = rec;
    Motion adjusted = target;
    adjusted.vx = (rec.x - target.at_release.x) / s.reception_delay_s;
    s.offense[1] = adjusted;
    s.kind = rng.bernoulli(0.4) ? PassKind::ThroughPass
                                : (rng.bernoulli(0.5) ? PassKind::HomePass : PassKind::AwayPass);
    s.one_touch = rng.bernoulli(0.25);
    return s;
}

Scenario make_offside_start(Rng& rng, double line_x) {
    const double gap3 = rng.uniform(2.0, 8.0);
    Scenario s = base_scenario(rng, line_x, gap3);
    s.name = "offside-start";

    Motion runner;
    runner.at_release = Position{line_x + rng.uniform(1.5, 6.0), rng.uniform(10.0, 58.0)};
    runner.vx = rng.uniform(3.0, 5.0);
    runner.vy = rng.normal(0.0, 1.0);
    s.offense[1] = runner;
    s.receiver_offense_index = 1;

    Motion other;
    other.at_release = Position{line_x - rng.uniform(2.0, 6.0), rng.uniform(10.0, 58.0)};
    other.vx = rng.normal(0.5, 0.6);
    other.vy = rng.normal(0.0, 0.8);
    s.offense[2] = other;

    s.reception_delay_s = rng.uniform(0.7, 1.4);
    s.ball_end = runner.at(s.reception_delay_s, Pitch{});
    s.kind = PassKind::ThroughPass;
    return s;
}

Scenario make_failed_through(Rng& rng, double line_x) {
    Scenario s = make_break(rng, line_x);
    s.name = "failed-through";
    s.success = false;
    s.emit_shot_after = false;
    return s;
}

struct TeamAssignment {
    std::string home;
    std::string away;
};

std::vector<std::string> league_teams(int n) {
    std::vector<std::string> teams;
    for (int i = 1; i <= n; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "T%02d", i);
        teams.emplace_back(buf);
    }
    return teams;
}

// circle-method round robin
TeamAssignment pairing(const std::vector<std::string>& teams, int round, int slot) {
    const int n = static_cast<int>(teams.size());
    auto rotated = [&](int i) {
        if (i == 0) return 0;
        return 1 + ((i - 1 + round) % (n - 1));
    };
    const int a = rotated(slot);
    const int b = rotated(n - 1 - slot);
    if ((round + slot) % 2 == 0) return {teams[static_cast<std::size_t>(a)], teams[static_cast<std::size_t>(b)]};
    return {teams[static_cast<std::size_t>(b)], teams[static_cast<std::size_t>(a)]};
}

struct MatchSpec {
    std::string match_id;
    int round = 1;
    std::string home;
    std::string away;
    double home_risk = 1.0;
    double away_risk = 1.0;
    uint64_t stream = 0;
};

struct GeneratedMatch {
    MatchInfo info;
    MatchData data;
    std::vector<PlantedLabel> planted;
};

// The generator's own three-condition check over the noiseless scripted
// geometry; this is the planted ground truth the labeler is compared against.
int planted_truth(const Scenario& s, double reception_delay) {
    auto line_at = [&](double t) {
        double first = -1e9, second = -1e9;
        for (int i = 0; i < 5; ++i) {  // back four + GK decide the line
            const double x = s.defense[static_cast<std::size_t>(i)].at_release.x +
                             s.defense[static_cast<std::size_t>(i)].vx * t;
            if (x > first) {
                second = first;
                first = x;
            } else if (x > second) {
                second = x;
            }
        }
        return second;
    };
    const Motion& receiver = s.offense[static_cast<std::size_t>(s.receiver_offense_index)];
    const std::string verdict = line_break_conditions(
        s.ball_start.x, receiver.at_release.x, receiver.at(reception_delay, Pitch{}).x, line_at(0.0),
        line_at(reception_delay));
    return verdict == "line-break" ? 1 : 0;
}

GeneratedMatch generate_match(const SynthConfig& config, const MatchSpec& spec) {
    Rng rng = Rng(config.seed).fork(spec.stream);
    const Pitch pitch;

    GeneratedMatch out;
    out.info.match_id = spec.match_id;
    out.info.round = spec.round;
    out.info.home_team = spec.home;
    out.info.away_team = spec.away;
    out.info.home_attack_direction_p1 = rng.bernoulli(0.5) ? AttackDirection::Left : AttackDirection::Right;

    // conceded crosses and shots follow the defending team's pressing risk
    auto conceded = [&](double risk) {
        const double mean = 4.0 + 10.0 * risk;
        return std::max(0, static_cast<int>(std::lround(mean + rng.normal(0.0, 1.2))));
    };
    const int home_conceded = conceded(spec.home_risk);
    const int away_conceded = conceded(spec.away_risk);
    out.info.crosses_conceded_home = static_cast<int>(std::lround(home_conceded * 0.6));
    out.info.shots_conceded_home = home_conceded - out.info.crosses_conceded_home;
    out.info.crosses_conceded_away = static_cast<int>(std::lround(away_conceded * 0.6));
    out.info.shots_conceded_away = away_conceded - out.info.crosses_conceded_away;

    const double mean_risk = 0.5 * (config.pressing_min + config.pressing_max);
    const int passes_p1 = (config.passes_per_match + 1) / 2;

    int touch_counter = 0;
    for (int pi = 0; pi < config.passes_per_match; ++pi) {
        const int period = pi < passes_p1 ? 1 : 2;
        const int64_t center = static_cast<int64_t>(kWindowFrames) + 4 +
                               static_cast<int64_t>(pi) * kWindowSpacing;
        const int64_t t_release_ms = static_cast<int64_t>(center * kFrameMs);

        const TeamSide possession = rng.bernoulli(0.5) ? TeamSide::Home : TeamSide::Away;
        const double defender_risk = possession == TeamSide::Home ? spec.away_risk : spec.home_risk;
        const double p_break =
            std::clamp(config.target_positive_rate * defender_risk / mean_risk, 0.0, 0.9);

        const double line_x = rng.uniform(config.line_height_min, config.line_height_max);
        Scenario scenario;
        if (rng.bernoulli(p_break)) {
            scenario = make_break(rng, line_x);
        } else {
            const double u = rng.uniform();
            if (u < 0.45) {
                scenario = make_circulation(rng, line_x);
            } else if (u < 0.80) {
                scenario = make_to_feet(rng, line_x);
            } else if (u < 0.90) {
                scenario = make_offside_start(rng, line_x);
            } else {
                scenario = make_failed_through(rng, line_x);
            }
        }
        if (rng.bernoulli(0.004)) scenario.drop_ball_coords = true;

        const int reception_frames =
            std::max(1, static_cast<int>(std::lround(scenario.reception_delay_s * kTrackingHz)));
        const double reception_delay = reception_frames / kTrackingHz;
        const int64_t reception_frame = center + reception_frames;

        // raw orientation: does the possession team attack +x in this period?
        AttackDirection dir = out.info.home_attack_direction_p1;
        if (possession == TeamSide::Away) dir = (dir == AttackDirection::Left) ? AttackDirection::Right : AttackDirection::Left;
        if (period == 2) dir = (dir == AttackDirection::Left) ? AttackDirection::Right : AttackDirection::Left;
        const bool mirrored = dir == AttackDirection::Left;
        auto to_raw = [&](Position p) {
            if (mirrored) p = mirror_position(p, pitch);
            return Position{quantize_mm(p.x), quantize_mm(p.y)};
        };

        // player ids: home 1..11, away 101..111
        const int32_t offense_base = possession == TeamSide::Home ? 1 : 101;
        const int32_t defense_base = possession == TeamSide::Home ? 101 : 1;
        const TeamSide defense_side = opponent(possession);

        for (int64_t f = center - kWindowFrames; f <= center + kWindowFrames; ++f) {
            const double t = static_cast<double>(f - center) / kTrackingHz;
            TrackingFrame frame;
            frame.match_id = spec.match_id;
            frame.period = period;
            frame.frame_index = f;
            frame.timestamp_ms = static_cast<int64_t>(static_cast<double>(f) * kFrameMs);
            frame.players.reserve(22);
            auto emit = [&](TeamSide side, int32_t id, const Motion& m) {
                Position p = m.at(t, pitch);
                p.x += rng.normal(0.0, config.noise_sigma_m);
                p.y += rng.normal(0.0, config.noise_sigma_m);
                frame.players.push_back(TrackedPlayer{side, id, to_raw(p)});
            };
            for (std::size_t i = 0; i < scenario.offense.size(); ++i) {
                emit(possession, offense_base + static_cast<int32_t>(i), scenario.offense[i]);
            }
            for (std::size_t i = 0; i < scenario.defense.size(); ++i) {
                emit(defense_side, defense_base + static_cast<int32_t>(i), scenario.defense[i]);
            }
            // ball: with the passer until release, then on its way to the
            // reception point, then with the receiver
            Position ball;
            if (t <= 0.0) {
                ball = scenario.offense[0].at(t, pitch);
            } else if (t <= reception_delay) {
                const double a = t / reception_delay;
                const Position from = scenario.ball_start;
                ball = Position{from.x + a * (scenario.ball_end.x - from.x),
                                from.y + a * (scenario.ball_end.y - from.y)};
            } else {
                ball = scenario.offense[static_cast<std::size_t>(scenario.receiver_offense_index)].at(
                    t, pitch);
            }
            ball.x += rng.normal(0.0, config.noise_sigma_m * 0.5);
            ball.y += rng.normal(0.0, config.noise_sigma_m * 0.5);
            frame.ball = to_raw(ball);
            out.data.frames.frames.push_back(std::move(frame));
        }

        char idbuf[24];
        std::snprintf(idbuf, sizeof(idbuf), "%s-P%04d", spec.match_id.c_str(), pi);
        PassEvent pass;
        pass.pass_id = idbuf;
        pass.match_id = spec.match_id;
        pass.t_ms = t_release_ms;
        pass.kind = scenario.kind;
        if (scenario.kind == PassKind::HomePass || scenario.kind == PassKind::AwayPass) {
            pass.kind = possession == TeamSide::Home ? PassKind::HomePass : PassKind::AwayPass;
        }
        pass.team_in_possession = possession;
        pass.passer_id = offense_base;
        pass.receiver_id = offense_base + scenario.receiver_offense_index;
        pass.one_touch = scenario.one_touch;
        pass.success = scenario.success;
        if (!scenario.drop_ball_coords) {
            pass.ball_start = to_raw(scenario.ball_start);
            pass.ball_end = to_raw(scenario.ball_end);
            out.data.passes.push_back(pass);
        } else {
            // recorded without coordinates; the reader excludes it
            pass.ball_start = Position{std::nan(""), std::nan("")};
            out.data.passes.push_back(pass);
        }

        if (scenario.success) {
            std::snprintf(idbuf, sizeof(idbuf), "%s-T%04d", spec.match_id.c_str(), touch_counter++);
            OnBallEvent touch;
            touch.event_id = idbuf;
            touch.match_id = spec.match_id;
            touch.t_ms = static_cast<int64_t>(static_cast<double>(reception_frame) * kFrameMs);
            touch.kind = "touch";
            touch.team = possession;
            touch.player_id = offense_base + scenario.receiver_offense_index;
            out.data.touches.push_back(touch);

            if (scenario.emit_shot_after) {
                std::snprintf(idbuf, sizeof(idbuf), "%s-S%04d", spec.match_id.c_str(), touch_counter++);
                OnBallEvent shot;
                shot.event_id = idbuf;
                shot.match_id = spec.match_id;
                shot.t_ms = touch.t_ms + 1000;
                shot.kind = "shot";
                shot.team = possession;
                shot.player_id = touch.player_id;
                out.data.touches.push_back(shot);
            }
        }

        if (scenario.success && !scenario.drop_ball_coords) {
            PlantedLabel pl;
            pl.pass_id = pass.pass_id;
            pl.label = planted_truth(scenario, reception_delay);
            pl.scenario = scenario.name;
            out.planted.push_back(std::move(pl));
        }
    }
    return out;
}

}  // namespace

void SynthConfig::validate() const {
    if (n_rounds < 1 || matches_per_round < 1 || passes_per_match < 1) {
        throw ValidationError("synth counts must be >= 1");
    }
    if (!(target_positive_rate > 0.0 && target_positive_rate < 1.0) && target_positive_rate != 0.0) {
        throw ValidationError("target_positive_rate must be 0 or in (0, 1)");
    }
    if (noise_sigma_m < 0.0) throw ValidationError("noise_sigma_m must be >= 0");
    if (!(line_height_min > 10.0 && line_height_max < 95.0 && line_height_min <= line_height_max)) {
        throw ValidationError("line height bounds out of range");
    }
    if (!(pressing_min > 0.0 && pressing_min <= pressing_max)) {
        throw ValidationError("pressing bounds out of range");
    }
}

SynthResult generate(const SynthConfig& config) {
    config.validate();
    const int n_teams = 2 * config.matches_per_round;
    const auto teams = league_teams(n_teams);

    // deterministic risk ladder across the league
    std::vector<double> risk(static_cast<std::size_t>(n_teams));
    for (int i = 0; i < n_teams; ++i) {
        risk[static_cast<std::size_t>(i)] =
            n_teams == 1 ? config.pressing_min
                         : config.pressing_min + (config.pressing_max - config.pressing_min) *
                                                     static_cast<double>(i) / (n_teams - 1);
    }

    std::vector<MatchSpec> specs;
    int match_counter = 0;
    for (int r = 0; r < config.n_rounds; ++r) {
        for (int s = 0; s < config.matches_per_round; ++s) {
            const TeamAssignment pair = pairing(teams, r, s);
            MatchSpec spec;
            char buf[16];
            std::snprintf(buf, sizeof(buf), "M%03d", ++match_counter);
            spec.match_id = buf;
            spec.round = r + 1;
            spec.home = pair.home;
            spec.away = pair.away;
            const auto team_index = [&](const std::string& t) {
                return static_cast<std::size_t>(
                    std::find(teams.begin(), teams.end(), t) - teams.begin());
            };
            spec.home_risk = risk[team_index(pair.home)];
            spec.away_risk = risk[team_index(pair.away)];
            spec.stream = static_cast<uint64_t>(match_counter);
            specs.push_back(std::move(spec));
        }
    }

    std::vector<GeneratedMatch> generated(specs.size());
    parallel_for(specs.size(), [&](std::size_t i) { generated[i] = generate_match(config, specs[i]); });

    SynthResult result;
    for (auto& g : generated) {
        result.dataset.matches.push_back(g.info);
        result.dataset.by_match[g.info.match_id] = std::move(g.data);
        for (auto& pl : g.planted) result.planted.push_back(std::move(pl));
    }
    std::sort(result.dataset.matches.begin(), result.dataset.matches.end(),
              [](const MatchInfo& a, const MatchInfo& b) { return a.match_id < b.match_id; });
    std::sort(result.planted.begin(), result.planted.end(),
              [](const PlantedLabel& a, const PlantedLabel& b) { return a.pass_id < b.pass_id; });
    return result;
}

SynthResult generate_to_dir(const SynthConfig& config, const std::string& dir) {
    SynthResult result = generate(config);
    write_dataset(dir, result.dataset);
    write_planted_csv((std::filesystem::path(dir) / "planted.csv").string(), result.planted);
    return result;
}

void write_planted_csv(const std::string& path, const std::vector<PlantedLabel>& planted) {
    std::string buf = "pass_id,label,scenario\n";
    for (const auto& p : planted) {
        buf += p.pass_id;
        buf += ',';
        append_int(buf, p.label);
        buf += ',';
        buf += p.scenario;
        buf += '\n';
    }
    write_file_atomic(path, buf);
}

std::vector<PlantedLabel> read_planted_csv(const std::string& path) {
    const std::string content = read_file(path);
    std::vector<PlantedLabel> out;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) eol = content.size();
        std::string_view line(content.data() + pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line_no == 1) continue;
        const auto cols = split_view(line, ',');
        if (cols.size() != 3) throw ParseError(path + ":" + std::to_string(line_no) + ": bad row");
        PlantedLabel p;
        p.pass_id = std::string(cols[0]);
        long long label;
        if (!parse_int(cols[1], label)) throw ParseError(path + ": bad label");
        p.label = static_cast<int>(label);
        p.scenario = std::string(cols[2]);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace lb
