#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linebreak/ingest.hpp"
#include "linebreak/util.hpp"

namespace lb {

struct ConfusionMatrix {
    int64_t tp = 0;
    int64_t fp = 0;
    int64_t tn = 0;
    int64_t fn = 0;

    int64_t total() const { return tp + fp + tn + fn; }
};

ConfusionMatrix confusion_matrix(const std::vector<double>& scores, const std::vector<int>& labels,
                                 double threshold = 0.5);

/// Mann-Whitney rank statistic with half credit for ties. Requires both
/// classes present.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

/// Mean squared difference between probabilities and outcomes.
double brier(const std::vector<double>& scores, const std::vector<int>& labels);

struct F1Result {
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    bool degenerate = false;  // tp == 0 and nothing predicted/labeled positive
};

F1Result f1_from_confusion(const ConfusionMatrix& cm);

struct PearsonResult {
    double r = 0.0;
    double p_value = 1.0;
    double t_statistic = 0.0;
    int df = 0;
};

/// Sample Pearson correlation with a two-sided p-value from the t
/// distribution with n-2 degrees of freedom. Requires n >= 3 and nonzero
/// variance in both series.
PearsonResult pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);
/// CDF of Student's t with df degrees of freedom.
double student_t_cdf(double t, int df);

struct FoldMetrics {
    int round = 0;
    int64_t n_rows = 0;
    double auc = 0.0;
    double brier = 0.0;
    double f1 = 0.0;
    bool auc_defined = true;
};

struct EvaluationReport {
    double auc = 0.0;
    double brier = 0.0;
    double f1 = 0.0;           // pooled, from the pooled confusion matrix
    double f1_macro = 0.0;     // mean of per-fold F1
    double precision = 0.0;
    double recall = 0.0;
    ConfusionMatrix confusion;
    std::vector<FoldMetrics> per_fold;
};

EvaluationReport evaluate_predictions(const std::vector<double>& scores, const std::vector<int>& labels,
                                      const std::vector<int>& rounds, double threshold = 0.5);

std::string report_to_json(const EvaluationReport& report);
void write_report_json(const std::string& path, const EvaluationReport& report);
void write_confusion_csv(const std::string& path, const ConfusionMatrix& cm);

// --- team-level correlation ---------------------------------------------------

struct PassTeamRecord {
    std::string pass_id;
    std::string match_id;
    std::string defending_team;
    double probability = 0.0;
};

struct TeamReportRow {
    std::string team;
    double predicted_sum = 0.0;  // summed probability of being line-broken
    double conceded = 0.0;       // crosses + shots conceded over the window
    int matches_used = 0;
    int64_t passes = 0;
};

struct TeamReport {
    std::vector<TeamReportRow> rows;
    PearsonResult correlation;
};

/// Per defending team, sums predicted line-break probability and crosses+shots
/// conceded over its first `window_matches` matches (by round), then
/// correlates the two series. Teams with no defensive passes are excluded
/// with a warning.
TeamReport team_report(const std::vector<PassTeamRecord>& records,
                       const std::vector<MatchInfo>& matches, int window_matches = 5);

void write_team_scatter_csv(const std::string& path, const TeamReport& report);
TeamReport read_team_scatter_csv(const std::string& path);

}  // namespace lb
