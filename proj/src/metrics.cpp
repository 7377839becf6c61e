#include "linebreak/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <json.hpp>

namespace lb {

ConfusionMatrix confusion_matrix(const std::vector<double>& scores, const std::vector<int>& labels,
                                 double threshold) {
    if (scores.size() != labels.size()) throw ValidationError("scores/labels size mismatch");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool predicted = scores[i] >= threshold;
        if (labels[i] == 1) {
            (predicted ? cm.tp : cm.fn) += 1;
        } else {
            (predicted ? cm.fp : cm.tn) += 1;
        }
    }
    return cm;
}

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size() || scores.empty()) {
        throw ValidationError("auc needs matching non-empty inputs");
    }
    std::size_t n_pos = 0;
    for (int l : labels) n_pos += (l == 1);
    const std::size_t n_neg = labels.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw ValidationError("auc needs both classes present");
    }

    // average ranks, with ties sharing the mean rank
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        const double mean_rank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
        for (std::size_t k = i; k < j; ++k) {
            if (labels[order[k]] == 1) rank_sum_pos += mean_rank;
        }
        i = j;
    }
    const double u = rank_sum_pos - static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double brier(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.empty() || scores.size() != labels.size()) {
        throw ValidationError("brier needs matching non-empty inputs");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i] < 0.0 || scores[i] > 1.0) {
            throw ValidationError("brier scores must lie in [0, 1]");
        }
        const double d = scores[i] - static_cast<double>(labels[i]);
        sum += d * d;
    }
    return sum / static_cast<double>(scores.size());
}

F1Result f1_from_confusion(const ConfusionMatrix& cm) {
    F1Result r;
    if (cm.tp == 0) {
        r.degenerate = (cm.fp == 0 && cm.fn == 0);
        return r;  // precision, recall and F1 all 0
    }
    r.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    r.recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                         b * std::log(1.0 - x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return bt * betacf(a, b, x) / a;
    }
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, int df) {
    if (df < 1) throw ValidationError("student_t_cdf needs df >= 1");
    const double nu = static_cast<double>(df);
    const double x = nu / (nu + t * t);
    const double tail = 0.5 * incomplete_beta(nu / 2.0, 0.5, x);
    return t >= 0.0 ? 1.0 - tail : tail;
}

PearsonResult pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ValidationError("pearson needs equal-length series");
    const std::size_t n = x.size();
    if (n < 3) throw ValidationError("pearson needs n >= 3");

    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw ValidationError("pearson needs nonzero variance in both series");
    }

    PearsonResult res;
    res.r = sxy / std::sqrt(sxx * syy);
    res.df = static_cast<int>(n) - 2;
    const double r2 = std::min(res.r * res.r, 1.0);
    if (r2 >= 1.0) {
        res.t_statistic = res.r > 0 ? INFINITY : -INFINITY;
        res.p_value = 0.0;
        return res;
    }
    res.t_statistic = res.r * std::sqrt(static_cast<double>(res.df) / (1.0 - r2));
    res.p_value = 2.0 * (1.0 - student_t_cdf(std::abs(res.t_statistic), res.df));
    return res;
}

EvaluationReport evaluate_predictions(const std::vector<double>& scores, const std::vector<int>& labels,
                                      const std::vector<int>& rounds, double threshold) {
    if (scores.size() != labels.size() || scores.size() != rounds.size()) {
        throw ValidationError("evaluate_predictions needs matching inputs");
    }
    EvaluationReport rep;
    rep.confusion = confusion_matrix(scores, labels, threshold);
    rep.auc = auc(scores, labels);
    rep.brier = brier(scores, labels);
    const F1Result f1 = f1_from_confusion(rep.confusion);
    rep.f1 = f1.f1;
    rep.precision = f1.precision;
    rep.recall = f1.recall;

    std::map<int, std::vector<std::size_t>> by_round;
    for (std::size_t i = 0; i < rounds.size(); ++i) by_round[rounds[i]].push_back(i);
    double f1_sum = 0.0;
    for (const auto& [round, idx] : by_round) {
        FoldMetrics fm;
        fm.round = round;
        fm.n_rows = static_cast<int64_t>(idx.size());
        std::vector<double> s;
        std::vector<int> l;
        s.reserve(idx.size());
        l.reserve(idx.size());
        for (std::size_t i : idx) {
            s.push_back(scores[i]);
            l.push_back(labels[i]);
        }
        const ConfusionMatrix cm = confusion_matrix(s, l, threshold);
        fm.f1 = f1_from_confusion(cm).f1;
        fm.brier = brier(s, l);
        const bool has_both = std::count(l.begin(), l.end(), 1) > 0 &&
                              std::count(l.begin(), l.end(), 0) > 0;
        if (has_both) {
            fm.auc = auc(s, l);
        } else {
            fm.auc_defined = false;
        }
        f1_sum += fm.f1;
        rep.per_fold.push_back(std::move(fm));
    }
    rep.f1_macro = rep.per_fold.empty() ? 0.0 : f1_sum / static_cast<double>(rep.per_fold.size());
    return rep;
}

std::string report_to_json(const EvaluationReport& report) {
    nlohmann::ordered_json j;
    j["auc"] = report.auc;
    j["brier"] = report.brier;
    j["f1"] = report.f1;
    j["f1_macro"] = report.f1_macro;
    j["precision"] = report.precision;
    j["recall"] = report.recall;
    j["confusion"] = {{"tp", report.confusion.tp},
                      {"fp", report.confusion.fp},
                      {"tn", report.confusion.tn},
                      {"fn", report.confusion.fn}};
    nlohmann::ordered_json folds = nlohmann::ordered_json::array();
    for (const auto& f : report.per_fold) {
        nlohmann::ordered_json fj;
        fj["round"] = f.round;
        fj["n_rows"] = f.n_rows;
        if (f.auc_defined) {
            fj["auc"] = f.auc;
        } else {
            fj["auc"] = nullptr;
        }
        fj["brier"] = f.brier;
        fj["f1"] = f.f1;
        folds.push_back(std::move(fj));
    }
    j["per_fold"] = std::move(folds);
    return j.dump(2) + "\n";
}

void write_report_json(const std::string& path, const EvaluationReport& report) {
    write_file_atomic(path, report_to_json(report));
}

void write_confusion_csv(const std::string& path, const ConfusionMatrix& cm) {
    std::string buf = "tp,fp,tn,fn\n";
    append_int(buf, cm.tp);
    buf += ',';
    append_int(buf, cm.fp);
    buf += ',';
    append_int(buf, cm.tn);
    buf += ',';
    append_int(buf, cm.fn);
    buf += '\n';
    write_file_atomic(path, buf);
}

TeamReport team_report(const std::vector<PassTeamRecord>& records,
                       const std::vector<MatchInfo>& matches, int window_matches) {
    if (window_matches < 1) throw ValidationError("window must be >= 1");

    // each team's matches ordered by round; the window keeps the earliest ones
    struct TeamWindow {
        std::vector<const MatchInfo*> matches;
    };
    std::map<std::string, TeamWindow> teams;
    for (const auto& m : matches) {
        teams[m.home_team].matches.push_back(&m);
        teams[m.away_team].matches.push_back(&m);
    }
    for (auto& [team, tw] : teams) {
        (void)team;
        std::sort(tw.matches.begin(), tw.matches.end(), [](const MatchInfo* a, const MatchInfo* b) {
            if (a->round != b->round) return a->round < b->round;
            return a->match_id < b->match_id;
        });
        if (static_cast<int>(tw.matches.size()) > window_matches) {
            tw.matches.resize(static_cast<std::size_t>(window_matches));
        }
    }

    TeamReport report;
    for (const auto& [team, tw] : teams) {
        TeamReportRow row;
        row.team = team;
        row.matches_used = static_cast<int>(tw.matches.size());
        std::map<std::string, const MatchInfo*> in_window;
        for (const MatchInfo* m : tw.matches) {
            in_window[m->match_id] = m;
            const TeamSide side = (m->home_team == team) ? TeamSide::Home : TeamSide::Away;
            row.conceded += m->crosses_conceded(side) + m->shots_conceded(side);
        }
        for (const auto& rec : records) {
            if (rec.defending_team != team) continue;
            if (in_window.find(rec.match_id) == in_window.end()) continue;
            row.predicted_sum += rec.probability;
            ++row.passes;
        }
        if (row.passes == 0) {
            log_warn("team " + team + " has no defensive passes in its window, excluded from the report");
            continue;
        }
        report.rows.push_back(std::move(row));
    }

    std::vector<double> xs, ys;
    for (const auto& row : report.rows) {
        xs.push_back(row.predicted_sum);
        ys.push_back(row.conceded);
    }
    report.correlation = pearson(xs, ys);
    return report;
}

void write_team_scatter_csv(const std::string& path, const TeamReport& report) {
    std::string buf = "team,predicted_line_broken_sum,crosses_plus_shots_conceded,matches,passes\n";
    for (const auto& r : report.rows) {
        buf += r.team;
        buf += ',';
        append_double(buf, r.predicted_sum);
        buf += ',';
        append_double(buf, r.conceded);
        buf += ',';
        append_int(buf, r.matches_used);
        buf += ',';
        append_int(buf, r.passes);
        buf += '\n';
    }
    buf += "# r=";
    append_double(buf, report.correlation.r);
    buf += " p=";
    append_double(buf, report.correlation.p_value);
    buf += '\n';
    write_file_atomic(path, buf);
}

TeamReport read_team_scatter_csv(const std::string& path) {
    const std::string content = read_file(path);
    TeamReport report;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    std::vector<double> xs, ys;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) eol = content.size();
        std::string_view line(content.data() + pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        if (line_no == 1) {
            if (line.substr(0, 5) != "team,") throw ParseError(path + ":1: unexpected scatter header");
            continue;
        }
        const auto cols = split_view(line, ',');
        if (cols.size() != 5) throw ParseError(path + ":" + std::to_string(line_no) + ": bad row");
        TeamReportRow r;
        r.team = std::string(cols[0]);
        long long m, p;
        if (!parse_double(cols[1], r.predicted_sum) || !parse_double(cols[2], r.conceded) ||
            !parse_int(cols[3], m) || !parse_int(cols[4], p)) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": bad row");
        }
        r.matches_used = static_cast<int>(m);
        r.passes = p;
        xs.push_back(r.predicted_sum);
        ys.push_back(r.conceded);
        report.rows.push_back(std::move(r));
    }
    if (xs.size() >= 3) report.correlation = pearson(xs, ys);
    return report;
}

}  // namespace lb
