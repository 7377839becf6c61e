#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linebreak/ingest.hpp"

namespace lb {

struct SynthConfig {
    uint64_t seed = 0;
    int n_rounds = 5;
    int matches_per_round = 9;
    int passes_per_match = 430;
    double target_positive_rate = 0.015;
    double line_height_min = 62.0;  // defensive line x, sampled per pass
    double line_height_max = 88.0;
    double pressing_min = 0.5;  // per-team risk spread; feeds break frequency
    double pressing_max = 1.5;  // and conceded-cross/shot counts
    double noise_sigma_m = 0.15;

    void validate() const;
};

struct PlantedLabel {
    std::string pass_id;
    int label = 0;
    std::string scenario;
};

struct SynthResult {
    Dataset dataset;
    std::vector<PlantedLabel> planted;  // ground truth, independent of the labeler
};

/// Generates a league of scripted pass scenarios: tracking at 25 Hz in +/-2 s
/// windows around each pass, the event stream, and match info whose conceded
/// counts follow each team's pressing risk. Fully determined by the seed;
/// matches generate from forked per-match streams, so the thread count never
/// changes the output.
SynthResult generate(const SynthConfig& config);

/// generate() + write tracking.csv / events.jsonl / matches.csv / planted.csv.
SynthResult generate_to_dir(const SynthConfig& config, const std::string& dir);

void write_planted_csv(const std::string& path, const std::vector<PlantedLabel>& planted);
std::vector<PlantedLabel> read_planted_csv(const std::string& path);

}  // namespace lb
