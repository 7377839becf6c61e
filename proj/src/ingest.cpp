#include "linebreak/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace lb {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Maximum distance allowed when snapping an event timestamp to a frame.
constexpr int64_t kMaxAlignmentMs = 200;

const char* kTrackingHeader = "match_id,period,frame,timestamp_ms,side,player_id,x,y";
const char* kMatchesHeader =
    "match_id,round,home,away,home_attack_dir_p1,crosses_conceded_home,crosses_conceded_away,"
    "shots_conceded_home,shots_conceded_away";

const char* kKnownTouchKinds[] = {"touch", "shot", "clearance", "interception", "tackle", "dribble", "cross"};

bool is_touch_kind(std::string_view kind) {
    for (const char* k : kKnownTouchKinds) {
        if (kind == k) return true;
    }
    return false;
}

struct OpenFrame {
    int period = 0;
    int64_t frame_index = -1;
    int64_t timestamp_ms = 0;
    std::vector<TrackedPlayer> players;
    std::optional<Position> ball;
    bool any = false;
};

struct MatchAccumulator {
    FrameStore store;
    OpenFrame open;
    // last closed frame_index per period, for the monotonicity check
    std::map<int, int64_t> last_index;
};

}  // namespace

void IngestReport::merge(const IngestReport& other) {
    tracking_rows += other.tracking_rows;
    tracking_rows_skipped += other.tracking_rows_skipped;
    frames_dropped_missing_ball += other.frames_dropped_missing_ball;
    events_total += other.events_total;
    events_excluded_missing_ball += other.events_excluded_missing_ball;
    events_skipped_unknown_kind += other.events_skipped_unknown_kind;
    events_skipped_malformed += other.events_skipped_malformed;
    passes_dropped_unaligned += other.passes_dropped_unaligned;
}

std::string IngestReport::summary() const {
    std::string s;
    s += "tracking rows: " + std::to_string(tracking_rows);
    s += ", skipped rows: " + std::to_string(tracking_rows_skipped);
    s += ", frames dropped (no ball): " + std::to_string(frames_dropped_missing_ball);
    s += ", events: " + std::to_string(events_total);
    s += ", excluded (no ball pos): " + std::to_string(events_excluded_missing_ball);
    s += ", unknown kind: " + std::to_string(events_skipped_unknown_kind);
    s += ", malformed: " + std::to_string(events_skipped_malformed);
    s += ", passes dropped (unaligned): " + std::to_string(passes_dropped_unaligned);
    return s;
}

const TrackingFrame* FrameStore::by_index(int64_t frame_index) const {
    auto it = std::lower_bound(frames.begin(), frames.end(), frame_index,
                               [](const TrackingFrame& f, int64_t idx) { return f.frame_index < idx; });
    if (it != frames.end() && it->frame_index == frame_index) return &*it;
    return nullptr;
}

const TrackingFrame* FrameStore::nearest_by_timestamp(int64_t t_ms) const {
    if (frames.empty()) return nullptr;
    auto it = std::lower_bound(frames.begin(), frames.end(), t_ms,
                               [](const TrackingFrame& f, int64_t t) { return f.timestamp_ms < t; });
    if (it == frames.end()) return &frames.back();
    if (it == frames.begin()) return &frames.front();
    auto prev = std::prev(it);
    return (t_ms - prev->timestamp_ms) <= (it->timestamp_ms - t_ms) ? &*prev : &*it;
}

std::vector<const TrackingFrame*> FrameStore::window(int64_t first, int64_t last) const {
    std::vector<const TrackingFrame*> out;
    auto it = std::lower_bound(frames.begin(), frames.end(), first,
                               [](const TrackingFrame& f, int64_t idx) { return f.frame_index < idx; });
    for (; it != frames.end() && it->frame_index <= last; ++it) out.push_back(&*it);
    return out;
}

const MatchInfo* Dataset::match_info(const std::string& match_id) const {
    for (const auto& m : matches) {
        if (m.match_id == match_id) return &m;
    }
    return nullptr;
}

namespace {

void close_frame(MatchAccumulator& acc, const std::string& match_id, IngestReport& report) {
    OpenFrame& f = acc.open;
    if (!f.any) return;
    auto& last = acc.last_index;
    auto it = last.find(f.period);
    if (it != last.end() && f.frame_index <= it->second) {
        throw ParseError("non-monotonic frame_index " + std::to_string(f.frame_index) +
                         " in match " + match_id + " period " + std::to_string(f.period));
    }
    last[f.period] = f.frame_index;
    if (!f.ball.has_value()) {
        ++report.frames_dropped_missing_ball;
        log_warn("dropping frame " + std::to_string(f.frame_index) + " of match " + match_id +
                 ": missing ball row");
    } else {
        TrackingFrame frame;
        frame.match_id = match_id;
        frame.period = f.period;
        frame.frame_index = f.frame_index;
        frame.timestamp_ms = f.timestamp_ms;
        frame.players = std::move(f.players);
        // canonical player order, so read -> write -> read is the identity
        std::sort(frame.players.begin(), frame.players.end(),
                  [](const TrackedPlayer& a, const TrackedPlayer& b) {
                      if (a.side != b.side) return a.side == TeamSide::Home;
                      return a.player_id < b.player_id;
                  });
        frame.ball = *f.ball;
        acc.store.frames.push_back(std::move(frame));
    }
    f = OpenFrame{};
}

}  // namespace

std::map<std::string, FrameStore> read_tracking(const std::string& path, IngestReport& report) {
    const std::string content = read_file(path);
    std::map<std::string, MatchAccumulator> accs;

    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::string current_match;
    MatchAccumulator* acc = nullptr;

    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) eol = content.size();
        std::string_view line(content.data() + pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kTrackingHeader) {
                throw ParseError(path + ":1: unexpected tracking header, expected '" +
                                 std::string(kTrackingHeader) + "'");
            }
            header_seen = true;
            continue;
        }

        const auto cols = split_view(line, ',');
        if (cols.size() != 8) {
            ++report.tracking_rows_skipped;
            log_warn(path + ":" + std::to_string(line_no) + ": wrong column count, row skipped");
            continue;
        }
        ++report.tracking_rows;

        long long period, frame_index, timestamp;
        double x, y;
        if (!parse_int(cols[1], period) || !parse_int(cols[2], frame_index) ||
            !parse_int(cols[3], timestamp) || !parse_double(cols[6], x) || !parse_double(cols[7], y)) {
            ++report.tracking_rows_skipped;
            log_warn(path + ":" + std::to_string(line_no) + ": malformed numeric field, row skipped");
            continue;
        }
        const std::string_view side = cols[4];
        if (side != "H" && side != "A" && side != "B") {
            ++report.tracking_rows_skipped;
            log_warn(path + ":" + std::to_string(line_no) + ": unknown side, row skipped");
            continue;
        }

        const std::string_view match_view = cols[0];
        if (acc == nullptr || match_view != current_match) {
            current_match = std::string(match_view);
            acc = &accs[current_match];
        }
        OpenFrame& open = acc->open;
        if (open.any && (open.period != period || open.frame_index != frame_index)) {
            close_frame(*acc, current_match, report);
        }
        if (!open.any) {
            open.any = true;
            open.period = static_cast<int>(period);
            open.frame_index = frame_index;
            open.timestamp_ms = timestamp;
        }

        if (side == "B") {
            if (open.ball.has_value()) {
                ++report.tracking_rows_skipped;
                log_warn(path + ":" + std::to_string(line_no) + ": duplicate ball row, row skipped");
                continue;
            }
            open.ball = Position{x, y};
        } else {
            long long player_id;
            if (!parse_int(cols[5], player_id)) {
                ++report.tracking_rows_skipped;
                log_warn(path + ":" + std::to_string(line_no) + ": bad player_id, row skipped");
                continue;
            }
            const TeamSide team = (side == "H") ? TeamSide::Home : TeamSide::Away;
            int per_side = 0;
            for (const auto& p : open.players) per_side += (p.side == team) ? 1 : 0;
            if (per_side >= 11) {
                ++report.tracking_rows_skipped;
                log_warn(path + ":" + std::to_string(line_no) + ": more than 11 players per team, row skipped");
                continue;
            }
            open.players.push_back(TrackedPlayer{team, static_cast<int32_t>(player_id), Position{x, y}});
        }
    }

    std::map<std::string, FrameStore> out;
    for (auto& [match_id, a] : accs) {
        close_frame(a, match_id, report);
        std::sort(a.store.frames.begin(), a.store.frames.end(),
                  [](const TrackingFrame& l, const TrackingFrame& r) {
                      if (l.period != r.period) return l.period < r.period;
                      return l.frame_index < r.frame_index;
                  });
        out[match_id] = std::move(a.store);
    }
    return out;
}

namespace {

std::optional<TeamSide> parse_team(const ordered_json& j) {
    if (!j.is_string()) return std::nullopt;
    const std::string s = j.get<std::string>();
    if (s == "H") return TeamSide::Home;
    if (s == "A") return TeamSide::Away;
    return std::nullopt;
}

std::optional<Position> parse_xy(const ordered_json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) return std::nullopt;
    return Position{j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

EventStream read_events(const std::string& path, IngestReport& report) {
    const std::string content = read_file(path);
    EventStream out;

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) eol = content.size();
        std::string_view line(content.data() + pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty()) continue;
        ++report.events_total;

        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            ++report.events_skipped_malformed;
            log_warn(path + ":" + std::to_string(line_no) + ": malformed JSON, record skipped");
            continue;
        }
        auto str = [&](const char* key) -> std::optional<std::string> {
            if (!j.contains(key) || !j[key].is_string()) return std::nullopt;
            return j[key].get<std::string>();
        };
        auto i64 = [&](const char* key) -> std::optional<int64_t> {
            if (!j.contains(key) || !j[key].is_number_integer()) return std::nullopt;
            return j[key].get<int64_t>();
        };

        const auto id = str("pass_id");
        const auto match_id = str("match_id");
        const auto t_ms = i64("t_ms");
        const auto kind = str("kind");
        const auto team = j.contains("team") ? parse_team(j["team"]) : std::nullopt;
        const auto actor = i64("passer_id");
        if (!id || !match_id || !t_ms || !kind || !team || !actor) {
            ++report.events_skipped_malformed;
            log_warn(path + ":" + std::to_string(line_no) + ": missing required field, record skipped");
            continue;
        }

        const auto pass_kind = parse_pass_kind(*kind);
        if (!pass_kind.has_value()) {
            if (is_touch_kind(*kind)) {
                OnBallEvent e;
                e.event_id = *id;
                e.match_id = *match_id;
                e.t_ms = *t_ms;
                e.kind = *kind;
                e.team = *team;
                e.player_id = static_cast<int32_t>(*actor);
                out.touches.push_back(std::move(e));
            } else {
                ++report.events_skipped_unknown_kind;
                log_warn(path + ":" + std::to_string(line_no) + ": unknown kind '" + *kind +
                         "', record skipped");
            }
            continue;
        }

        const auto ball_start = j.contains("ball_start") ? parse_xy(j["ball_start"]) : std::nullopt;
        if (!ball_start.has_value()) {
            ++report.events_excluded_missing_ball;
            continue;
        }

        PassEvent p;
        p.pass_id = *id;
        p.match_id = *match_id;
        p.t_ms = *t_ms;
        p.kind = *pass_kind;
        p.team_in_possession = *team;
        p.passer_id = static_cast<int32_t>(*actor);
        if (auto r = i64("receiver_id")) p.receiver_id = static_cast<int32_t>(*r);
        p.one_touch = j.contains("one_touch") && j["one_touch"].is_boolean() && j["one_touch"].get<bool>();
        p.success = j.contains("success") && j["success"].is_boolean() && j["success"].get<bool>();
        p.ball_start = *ball_start;
        if (j.contains("ball_end")) p.ball_end = parse_xy(j["ball_end"]);
        out.passes.push_back(std::move(p));
    }
    return out;
}

std::vector<MatchInfo> read_matches(const std::string& path) {
    const std::string content = read_file(path);
    std::vector<MatchInfo> out;

    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) eol = content.size();
        std::string_view line(content.data() + pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kMatchesHeader) {
                throw ParseError(path + ":1: unexpected matches header");
            }
            header_seen = true;
            continue;
        }
        const auto cols = split_view(line, ',');
        if (cols.size() != 9) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected 9 columns");
        }
        MatchInfo m;
        m.match_id = std::string(cols[0]);
        long long round, cch, cca, sch, sca;
        if (!parse_int(cols[1], round) || round < 1) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": bad round");
        }
        m.round = static_cast<int>(round);
        m.home_team = std::string(cols[2]);
        m.away_team = std::string(cols[3]);
        if (cols[4] == "left") {
            m.home_attack_direction_p1 = AttackDirection::Left;
        } else if (cols[4] == "right") {
            m.home_attack_direction_p1 = AttackDirection::Right;
        } else {
            throw ParseError(path + ":" + std::to_string(line_no) + ": bad attack direction");
        }
        if (!parse_int(cols[5], cch) || !parse_int(cols[6], cca) || !parse_int(cols[7], sch) ||
            !parse_int(cols[8], sca) || cch < 0 || cca < 0 || sch < 0 || sca < 0) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": bad conceded counts");
        }
        m.crosses_conceded_home = static_cast<int>(cch);
        m.crosses_conceded_away = static_cast<int>(cca);
        m.shots_conceded_home = static_cast<int>(sch);
        m.shots_conceded_away = static_cast<int>(sca);
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(),
              [](const MatchInfo& a, const MatchInfo& b) { return a.match_id < b.match_id; });
    return out;
}

PassEvent resolve_reception(const PassEvent& pass, const std::vector<PassEvent>& passes,
                            const std::vector<OnBallEvent>& touches, const FrameStore& frames) {
    if (!pass.success) return pass;

    // Next on-ball action by the receiving (= possessing) team, earliest first;
    // explicit touches win timestamp ties against pass events.
    int64_t best_t = INT64_MAX;
    int rank = 2;
    std::string best_id;
    int32_t best_player = 0;
    bool found = false;

    auto consider = [&](int64_t t, int r, const std::string& id, int32_t player) {
        if (t <= pass.t_ms) return;
        if (t < best_t || (t == best_t && (r < rank || (r == rank && id < best_id)))) {
            best_t = t;
            rank = r;
            best_id = id;
            best_player = player;
            found = true;
        }
    };
    for (const auto& e : touches) {
        if (e.team == pass.team_in_possession) consider(e.t_ms, 0, e.event_id, e.player_id);
    }
    for (const auto& p : passes) {
        if (p.team_in_possession == pass.team_in_possession && p.pass_id != pass.pass_id) {
            consider(p.t_ms, 1, p.pass_id, p.passer_id);
        }
    }
    if (!found) return pass;

    const TrackingFrame* release = frames.nearest_by_timestamp(pass.t_ms);
    const TrackingFrame* reception = frames.nearest_by_timestamp(best_t);
    if (release == nullptr || reception == nullptr) return pass;
    if (std::llabs(reception->timestamp_ms - best_t) > kMaxAlignmentMs) return pass;
    if (reception->period != release->period) return pass;  // no touch before period end

    PassEvent out = pass;
    out.reception_frame = reception->frame_index;
    if (!out.receiver_id.has_value()) out.receiver_id = best_player;
    return out;
}

void align_and_resolve(Dataset& dataset) {
    for (auto& [match_id, data] : dataset.by_match) {
        (void)match_id;
        std::sort(data.touches.begin(), data.touches.end(), [](const OnBallEvent& a, const OnBallEvent& b) {
            if (a.t_ms != b.t_ms) return a.t_ms < b.t_ms;
            return a.event_id < b.event_id;
        });
        std::vector<PassEvent> raw = std::move(data.passes);
        data.passes.clear();
        std::sort(raw.begin(), raw.end(), [](const PassEvent& a, const PassEvent& b) {
            if (a.t_ms != b.t_ms) return a.t_ms < b.t_ms;
            return a.pass_id < b.pass_id;
        });
        for (auto& p : raw) {
            const TrackingFrame* release = data.frames.nearest_by_timestamp(p.t_ms);
            if (release == nullptr || std::llabs(release->timestamp_ms - p.t_ms) > kMaxAlignmentMs) {
                ++dataset.report.passes_dropped_unaligned;
                log_warn("pass " + p.pass_id + " has no tracking frame within " +
                         std::to_string(kMaxAlignmentMs) + " ms, dropped");
                continue;
            }
            p.release_frame = release->frame_index;
            data.passes.push_back(resolve_reception(p, raw, data.touches, data.frames));
        }
        std::sort(data.excluded_passes.begin(), data.excluded_passes.end(),
                  [](const PassEvent& a, const PassEvent& b) {
                      if (a.t_ms != b.t_ms) return a.t_ms < b.t_ms;
                      return a.pass_id < b.pass_id;
                  });
    }
}

Dataset read_dataset(const std::string& dir) {
    namespace fs = std::filesystem;
    const std::string tracking_path = (fs::path(dir) / "tracking.csv").string();
    const std::string events_path = (fs::path(dir) / "events.jsonl").string();
    const std::string matches_path = (fs::path(dir) / "matches.csv").string();

    Dataset ds;
    ds.matches = read_matches(matches_path);
    auto frame_stores = read_tracking(tracking_path, ds.report);
    EventStream events = read_events(events_path, ds.report);

    for (auto& [match_id, store] : frame_stores) {
        if (ds.match_info(match_id) == nullptr) {
            throw ValidationError("match " + match_id + " has tracking but no matches.csv row");
        }
        ds.by_match[match_id].frames = std::move(store);
    }
    for (auto& e : events.touches) {
        if (ds.match_info(e.match_id) == nullptr) {
            throw ValidationError("match " + e.match_id + " has events but no matches.csv row");
        }
        ds.by_match[e.match_id].touches.push_back(std::move(e));
    }
    for (auto& p : events.passes) {
        if (ds.match_info(p.match_id) == nullptr) {
            throw ValidationError("match " + p.match_id + " has events but no matches.csv row");
        }
        ds.by_match[p.match_id].passes.push_back(std::move(p));
    }
    align_and_resolve(ds);
    return ds;
}

void write_tracking(const std::string& path, const Dataset& dataset) {
    std::string buf;
    buf.reserve(1 << 22);
    buf += kTrackingHeader;
    buf += '\n';

    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + tmp.string());

    auto flush_if_large = [&]() {
        if (buf.size() > (1 << 22)) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    };

    for (const auto& [match_id, data] : dataset.by_match) {
        for (const auto& f : data.frames.frames) {
            const std::vector<TrackedPlayer>& players = f.players;
            auto row_prefix = [&](std::string& s) {
                s += match_id;
                s += ',';
                append_int(s, f.period);
                s += ',';
                append_int(s, f.frame_index);
                s += ',';
                append_int(s, f.timestamp_ms);
                s += ',';
            };
            for (const auto& p : players) {
                row_prefix(buf);
                buf += (p.side == TeamSide::Home) ? 'H' : 'A';
                buf += ',';
                append_int(buf, p.player_id);
                buf += ',';
                append_double(buf, p.pos.x);
                buf += ',';
                append_double(buf, p.pos.y);
                buf += '\n';
            }
            row_prefix(buf);
            buf += "B,,";
            append_double(buf, f.ball.x);
            buf += ',';
            append_double(buf, f.ball.y);
            buf += '\n';
            flush_if_large();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    out.close();
    if (!out) throw IoError("short write: " + tmp.string());
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

namespace {

ordered_json pass_to_json(const PassEvent& p) {
    ordered_json j;
    j["pass_id"] = p.pass_id;
    j["match_id"] = p.match_id;
    j["t_ms"] = p.t_ms;
    j["kind"] = pass_kind_name(p.kind);
    j["team"] = (p.team_in_possession == TeamSide::Home) ? "H" : "A";
    j["passer_id"] = p.passer_id;
    if (p.receiver_id.has_value()) {
        j["receiver_id"] = *p.receiver_id;
    } else {
        j["receiver_id"] = nullptr;
    }
    j["one_touch"] = p.one_touch;
    j["success"] = p.success;
    j["ball_start"] = {p.ball_start.x, p.ball_start.y};
    if (p.ball_end.has_value()) {
        j["ball_end"] = {p.ball_end->x, p.ball_end->y};
    } else {
        j["ball_end"] = nullptr;
    }
    return j;
}

ordered_json touch_to_json(const OnBallEvent& e) {
    ordered_json j;
    j["pass_id"] = e.event_id;
    j["match_id"] = e.match_id;
    j["t_ms"] = e.t_ms;
    j["kind"] = e.kind;
    j["team"] = (e.team == TeamSide::Home) ? "H" : "A";
    j["passer_id"] = e.player_id;
    j["receiver_id"] = nullptr;
    j["one_touch"] = false;
    j["success"] = true;
    j["ball_start"] = nullptr;
    j["ball_end"] = nullptr;
    return j;
}

}  // namespace

void write_events(const std::string& path, const Dataset& dataset) {
    struct Row {
        const std::string* match_id;
        int64_t t_ms;
        std::string line;
        const std::string* id;
    };
    std::vector<Row> rows;
    for (const auto& [match_id, data] : dataset.by_match) {
        for (const auto& p : data.passes) {
            rows.push_back(Row{&match_id, p.t_ms, pass_to_json(p).dump(), &p.pass_id});
        }
        for (const auto& p : data.excluded_passes) {
            rows.push_back(Row{&match_id, p.t_ms, pass_to_json(p).dump(), &p.pass_id});
        }
        for (const auto& e : data.touches) {
            rows.push_back(Row{&match_id, e.t_ms, touch_to_json(e).dump(), &e.event_id});
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (*a.match_id != *b.match_id) return *a.match_id < *b.match_id;
        if (a.t_ms != b.t_ms) return a.t_ms < b.t_ms;
        return *a.id < *b.id;
    });
    std::string buf;
    for (const auto& r : rows) {
        buf += r.line;
        buf += '\n';
    }
    write_file_atomic(path, buf);
}

void write_matches(const std::string& path, const std::vector<MatchInfo>& matches) {
    std::vector<MatchInfo> sorted = matches;
    std::sort(sorted.begin(), sorted.end(),
              [](const MatchInfo& a, const MatchInfo& b) { return a.match_id < b.match_id; });
    std::string buf = kMatchesHeader;
    buf += '\n';
    for (const auto& m : sorted) {
        buf += m.match_id;
        buf += ',';
        append_int(buf, m.round);
        buf += ',';
        buf += m.home_team;
        buf += ',';
        buf += m.away_team;
        buf += ',';
        buf += (m.home_attack_direction_p1 == AttackDirection::Left) ? "left" : "right";
        buf += ',';
        append_int(buf, m.crosses_conceded_home);
        buf += ',';
        append_int(buf, m.crosses_conceded_away);
        buf += ',';
        append_int(buf, m.shots_conceded_home);
        buf += ',';
        append_int(buf, m.shots_conceded_away);
        buf += '\n';
    }
    write_file_atomic(path, buf);
}

void write_dataset(const std::string& dir, const Dataset& dataset) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    write_tracking((fs::path(dir) / "tracking.csv").string(), dataset);
    write_events((fs::path(dir) / "events.jsonl").string(), dataset);
    write_matches((fs::path(dir) / "matches.csv").string(), dataset.matches);
}

namespace {

bool position_equal(const Position& a, const Position& b) {
    return a.x == b.x && a.y == b.y;
}

bool pass_equal(const PassEvent& a, const PassEvent& b) {
    return a.pass_id == b.pass_id && a.match_id == b.match_id && a.t_ms == b.t_ms &&
           a.release_frame == b.release_frame && a.reception_frame == b.reception_frame &&
           a.passer_id == b.passer_id && a.receiver_id == b.receiver_id &&
           a.team_in_possession == b.team_in_possession && a.kind == b.kind &&
           a.one_touch == b.one_touch && a.success == b.success &&
           position_equal(a.ball_start, b.ball_start) &&
           a.ball_end.has_value() == b.ball_end.has_value() &&
           (!a.ball_end.has_value() || position_equal(*a.ball_end, *b.ball_end));
}

}  // namespace

bool dataset_equal(const Dataset& a, const Dataset& b) {
    if (a.matches.size() != b.matches.size() || a.by_match.size() != b.by_match.size()) return false;
    for (std::size_t i = 0; i < a.matches.size(); ++i) {
        const auto& ma = a.matches[i];
        const auto& mb = b.matches[i];
        if (ma.match_id != mb.match_id || ma.round != mb.round || ma.home_team != mb.home_team ||
            ma.away_team != mb.away_team ||
            ma.home_attack_direction_p1 != mb.home_attack_direction_p1 ||
            ma.crosses_conceded_home != mb.crosses_conceded_home ||
            ma.crosses_conceded_away != mb.crosses_conceded_away ||
            ma.shots_conceded_home != mb.shots_conceded_home ||
            ma.shots_conceded_away != mb.shots_conceded_away) {
            return false;
        }
    }
    auto ita = a.by_match.begin();
    auto itb = b.by_match.begin();
    for (; ita != a.by_match.end(); ++ita, ++itb) {
        if (ita->first != itb->first) return false;
        const auto& da = ita->second;
        const auto& db = itb->second;
        if (da.frames.frames.size() != db.frames.frames.size() || da.passes.size() != db.passes.size() ||
            da.touches.size() != db.touches.size()) {
            return false;
        }
        for (std::size_t i = 0; i < da.frames.frames.size(); ++i) {
            const auto& fa = da.frames.frames[i];
            const auto& fb = db.frames.frames[i];
            if (fa.period != fb.period || fa.frame_index != fb.frame_index ||
                fa.timestamp_ms != fb.timestamp_ms || !position_equal(fa.ball, fb.ball) ||
                fa.players.size() != fb.players.size()) {
                return false;
            }
            for (std::size_t k = 0; k < fa.players.size(); ++k) {
                const auto& pa = fa.players[k];
                const auto& pb = fb.players[k];
                if (pa.side != pb.side || pa.player_id != pb.player_id || !position_equal(pa.pos, pb.pos)) {
                    return false;
                }
            }
        }
        for (std::size_t i = 0; i < da.passes.size(); ++i) {
            if (!pass_equal(da.passes[i], db.passes[i])) return false;
        }
        for (std::size_t i = 0; i < da.touches.size(); ++i) {
            const auto& ta = da.touches[i];
            const auto& tb = db.touches[i];
            if (ta.event_id != tb.event_id || ta.t_ms != tb.t_ms || ta.kind != tb.kind ||
                ta.team != tb.team || ta.player_id != tb.player_id) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace lb
