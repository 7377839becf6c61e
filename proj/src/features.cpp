#include "linebreak/features.hpp"

#include <cmath>

#include "linebreak/geometry.hpp"

namespace lb {

namespace {

std::vector<std::string> build_schema() {
    std::vector<std::string> names;
    names.reserve(kFeatureCount);
    names.push_back("Start Ball X");
    names.push_back("Start Ball Y");
    names.push_back("Through Pass");
    names.push_back("Flick On");
    names.push_back("Direct Pass");
    names.push_back("Pass Direction");
    names.push_back("Passer_Nearest_Defender_Distance");
    names.push_back("Line Gap1");
    names.push_back("Line Gap2");
    names.push_back("Line Gap3");
    names.push_back("Defense_Line_Ball_xDiff");
    names.push_back("Offense_Line_Ball_xDiff");
    names.push_back("Defense_Lines_xDiff");
    const char* attrs[] = {"x", "y", "vx", "vy", "ax", "ay", "area"};
    for (const char* attr : attrs) {
        for (int i = 1; i <= 11; ++i) names.push_back("o_" + std::to_string(i) + "_" + attr);
        for (int i = 1; i <= 11; ++i) names.push_back("d_" + std::to_string(i) + "_" + attr);
    }
    for (int i = 1; i <= 11; ++i) names.push_back("Defense_Line_o_" + std::to_string(i) + "_x");
    for (int i = 1; i <= 11; ++i) names.push_back("Defense_Line_o_" + std::to_string(i) + "_y");
    if (names.size() != kFeatureCount) throw Error("feature schema size mismatch");
    return names;
}

}  // namespace

const std::vector<std::string>& feature_schema() {
    static const std::vector<std::string> schema = build_schema();
    return schema;
}

int feature_index(const std::string& name) {
    const auto& schema = feature_schema();
    for (std::size_t i = 0; i < schema.size(); ++i) {
        if (schema[i] == name) return static_cast<int>(i);
    }
    throw ValidationError("unknown feature name: " + name);
}

int pass_direction(const Position& ball_start, const Position& ball_end) {
    const double theta = std::atan2(ball_end.y - ball_start.y, ball_end.x - ball_start.x);
    const double deg = std::abs(theta) * 180.0 / 3.14159265358979323846;
    if (deg < 60.0) return 1;
    if (deg > 120.0) return -1;
    return 0;
}

FeatureVector extract_features(const PassContext& ctx, const Pitch& pitch) {
    const OrderedSquads& squads = ctx.squads_at_release;
    if (squads.offense.size() != 11 || squads.defense.size() != 11) {
        throw SquadIncomplete("extract_features needs full squads for pass " + ctx.pass.pass_id);
    }

    FeatureVector fv;
    double* v = fv.values.data();
    int k = 0;

    const Position ball = ctx.release_frame.ball;
    v[k++] = ctx.pass.ball_start.x;
    v[k++] = ctx.pass.ball_start.y;
    v[k++] = (ctx.pass.kind == PassKind::ThroughPass) ? 1.0 : 0.0;
    v[k++] = (ctx.pass.kind == PassKind::FlickOn) ? 1.0 : 0.0;
    v[k++] = ctx.pass.one_touch ? 1.0 : 0.0;
    // Without a recorded end point the direction falls back to lateral.
    v[k++] = ctx.pass.ball_end.has_value()
                 ? static_cast<double>(pass_direction(ctx.pass.ball_start, *ctx.pass.ball_end))
                 : 0.0;

    std::vector<Position> defense_pos(11);
    for (int i = 0; i < 11; ++i) defense_pos[static_cast<std::size_t>(i)] = squads.defense[i].pos;
    std::vector<Position> offense_pos(11);
    for (int i = 0; i < 11; ++i) offense_pos[static_cast<std::size_t>(i)] = squads.offense[i].pos;

    Position passer = ctx.pass.ball_start;
    for (const auto& o : squads.offense) {
        if (o.player_id == ctx.pass.passer_id) {
            passer = o.pos;
            break;
        }
    }
    v[k++] = nearest_defender_distance(passer, defense_pos);

    const LineGaps gaps = line_gaps(squads);
    v[k++] = gaps.gap1;
    v[k++] = gaps.gap2;
    v[k++] = gaps.gap3;

    // Defending team protects +x, so its line is the second-largest defender x;
    // the offense's own line is its second-smallest x.
    const double defense_line_x = defensive_line(defense_pos, GoalSide::PositiveX, pitch).line_x;
    const double offense_line_x = defensive_line(offense_pos, GoalSide::NegativeX, pitch).line_x;
    v[k++] = defense_line_x - ball.x;
    v[k++] = ball.x - offense_line_x;
    v[k++] = defense_line_x - offense_line_x;

    auto emit_block = [&](auto getter) {
        for (int i = 0; i < 11; ++i) v[k++] = getter(squads.offense[i]);
        for (int i = 0; i < 11; ++i) v[k++] = getter(squads.defense[i]);
    };
    emit_block([](const PlayerState& p) { return p.pos.x; });
    emit_block([](const PlayerState& p) { return p.pos.y; });
    emit_block([](const PlayerState& p) { return p.vx; });
    emit_block([](const PlayerState& p) { return p.vy; });
    emit_block([](const PlayerState& p) { return p.ax; });
    emit_block([](const PlayerState& p) { return p.ay; });
    emit_block([](const PlayerState& p) { return p.voronoi_area; });

    const PlayerState& line_defender = squads.defense[9];  // d_10
    for (int i = 0; i < 11; ++i) v[k++] = line_defender.pos.x - squads.offense[i].pos.x;
    for (int i = 0; i < 11; ++i) v[k++] = line_defender.pos.y - squads.offense[i].pos.y;

    if (k != kFeatureCount) throw Error("feature extraction produced wrong dimension");
    return fv;
}

void write_features_csv(const std::string& path, const FeatureMatrix& matrix) {
    if (matrix.schema != feature_schema()) {
        throw ValidationError("feature matrix schema drifted from the locked order");
    }
    std::string buf;
    buf.reserve(matrix.size() * 1200 + 4096);
    for (const auto& name : matrix.schema) {
        buf += name;
        buf += ',';
    }
    buf += "label,pass_id\n";
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        for (int i = 0; i < kFeatureCount; ++i) {
            buf += format_sig6(matrix.rows[r][i]);
            buf += ',';
        }
        append_int(buf, matrix.labels[r]);
        buf += ',';
        buf += matrix.pass_ids[r];
        buf += '\n';
    }
    write_file_atomic(path, buf);
}

FeatureMatrix read_features_csv(const std::string& path) {
    const std::string content = read_file(path);
    FeatureMatrix m;
    m.schema = feature_schema();

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) eol = content.size();
        std::string_view line(content.data() + pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty()) continue;
        const auto cols = split_view(line, ',');
        if (line_no == 1) {
            if (cols.size() != kFeatureCount + 2) {
                throw ValidationError(path + ": expected " + std::to_string(kFeatureCount + 2) +
                                      " columns, found " + std::to_string(cols.size()));
            }
            for (int i = 0; i < kFeatureCount; ++i) {
                if (cols[static_cast<std::size_t>(i)] != m.schema[static_cast<std::size_t>(i)]) {
                    throw ValidationError(path + ": feature schema drift at column " +
                                          std::to_string(i + 1) + ": expected '" +
                                          m.schema[static_cast<std::size_t>(i)] + "', found '" +
                                          std::string(cols[static_cast<std::size_t>(i)]) + "'");
                }
            }
            if (cols[kFeatureCount] != "label" || cols[kFeatureCount + 1] != "pass_id") {
                throw ValidationError(path + ": expected trailing label,pass_id columns");
            }
            continue;
        }
        if (cols.size() != kFeatureCount + 2) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": wrong column count");
        }
        FeatureVector fv;
        for (int i = 0; i < kFeatureCount; ++i) {
            if (!parse_double(cols[static_cast<std::size_t>(i)], fv.values[static_cast<std::size_t>(i)])) {
                throw ParseError(path + ":" + std::to_string(line_no) + ": bad value in column " +
                                 std::to_string(i + 1));
            }
        }
        long long label;
        if (!parse_int(cols[kFeatureCount], label) || (label != 0 && label != 1)) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": bad label");
        }
        m.rows.push_back(fv);
        m.labels.push_back(static_cast<int>(label));
        m.pass_ids.emplace_back(cols[kFeatureCount + 1]);
    }
    return m;
}

}  // namespace lb
