#include "linebreak/labeler.hpp"

#include <cmath>

#include "linebreak/geometry.hpp"

namespace lb {

std::string line_break_conditions(double ball_start_x, double receiver_x_release,
                                  double receiver_x_reception, double line_x_release,
                                  double line_x_reception, double epsilon) {
    if (!(ball_start_x < line_x_release - epsilon)) return "ball-not-in-front";
    if (!(receiver_x_release < line_x_release - epsilon)) return "receiver-not-in-front";
    if (!(receiver_x_reception > line_x_reception + epsilon)) return "not-beyond-at-reception";
    return "line-break";
}

std::string LabelSummary::summary() const {
    std::string s;
    s += "pass events: " + std::to_string(total_pass_events);
    s += ", successful: " + std::to_string(successful);
    s += ", labeled: " + std::to_string(labeled);
    s += ", positives: " + std::to_string(positives);
    if (labeled > 0) {
        s += " (rate " + format_fixed(100.0 * positive_rate(), 2) + "%)";
    }
    s += ", skipped incomplete squad: " + std::to_string(skipped_incomplete_squad);
    return s;
}

LabeledPass label_pass(const PassContext& ctx, const Pitch& pitch) {
    if (!ctx.pass.success) {
        throw ValidationError("label_pass requires a successful pass (" + ctx.pass.pass_id + ")");
    }
    LabeledPass out;
    out.pass = ctx.pass;

    std::vector<Position> defense_release;
    defense_release.reserve(ctx.squads_at_release.defense.size());
    for (const auto& d : ctx.squads_at_release.defense) defense_release.push_back(d.pos);
    out.defensive_line_x_at_release = defensive_line(defense_release, GoalSide::PositiveX, pitch).line_x;

    if (!ctx.has_reception || !ctx.receiver_tracked) {
        out.label = 0;
        out.reason = "no-reception";
        out.defensive_line_x_at_reception = std::nan("");
        out.receiver_x_at_release = ctx.receiver_tracked ? ctx.receiver_at_release.x : std::nan("");
        out.receiver_x_at_reception = std::nan("");
        return out;
    }

    out.defensive_line_x_at_reception =
        defensive_line(ctx.defense_at_reception, GoalSide::PositiveX, pitch).line_x;
    out.receiver_x_at_release = ctx.receiver_at_release.x;
    out.receiver_x_at_reception = ctx.receiver_at_reception.x;

    out.reason = line_break_conditions(ctx.pass.ball_start.x, out.receiver_x_at_release,
                                       out.receiver_x_at_reception, out.defensive_line_x_at_release,
                                       out.defensive_line_x_at_reception);
    out.label = (out.reason == "line-break") ? 1 : 0;
    return out;
}

void write_labels_csv(const std::string& path, const std::vector<LabeledPass>& labels) {
    std::string buf =
        "pass_id,label,line_x_release,line_x_reception,receiver_x_release,receiver_x_reception,reason\n";
    auto field = [&](double v) {
        if (!std::isnan(v)) append_double(buf, v);
        buf += ',';
    };
    for (const auto& l : labels) {
        buf += l.pass.pass_id;
        buf += ',';
        append_int(buf, l.label);
        buf += ',';
        field(l.defensive_line_x_at_release);
        field(l.defensive_line_x_at_reception);
        field(l.receiver_x_at_release);
        field(l.receiver_x_at_reception);
        buf += l.reason;
        buf += '\n';
    }
    write_file_atomic(path, buf);
}

std::vector<LabeledPass> read_labels_csv(const std::string& path) {
    const std::string content = read_file(path);
    std::vector<LabeledPass> out;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) eol = content.size();
        std::string_view line(content.data() + pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line.substr(0, 13) != "pass_id,label") {
                throw ParseError(path + ":1: unexpected labels header");
            }
            continue;
        }
        const auto cols = split_view(line, ',');
        if (cols.size() != 7) throw ParseError(path + ":" + std::to_string(line_no) + ": expected 7 columns");
        LabeledPass l;
        l.pass.pass_id = std::string(cols[0]);
        long long label;
        if (!parse_int(cols[1], label) || (label != 0 && label != 1)) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": bad label");
        }
        l.label = static_cast<int>(label);
        auto opt = [&](std::string_view s) {
            double v;
            return (!s.empty() && parse_double(s, v)) ? v : std::nan("");
        };
        l.defensive_line_x_at_release = opt(cols[2]);
        l.defensive_line_x_at_reception = opt(cols[3]);
        l.receiver_x_at_release = opt(cols[4]);
        l.receiver_x_at_reception = opt(cols[5]);
        l.reason = std::string(cols[6]);
        out.push_back(std::move(l));
    }
    return out;
}

}  // namespace lb
