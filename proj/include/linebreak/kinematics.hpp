#pragma once

#include <cstdint>
#include <vector>

#include "linebreak/domain.hpp"

namespace lb {

/// Physiological caps; estimates beyond these are clamped and flagged.
constexpr double kMaxSpeedMps = 13.0;
constexpr double kMaxAccelMps2 = 12.0;

constexpr double kTrackingHz = 25.0;
constexpr double kFrameDt = 1.0 / kTrackingHz;

/// Moving-average window, in frames, applied before differencing (0.2 s).
constexpr int kSmoothingWindow = 5;

struct KinematicState {
    double vx = 0.0, vy = 0.0;
    double ax = 0.0, ay = 0.0;
    bool clamped = false;         // hit a physiological cap
    bool low_confidence = false;  // gap of > 5 consecutive missing frames in the window
};

struct PositionSample {
    int64_t frame_index = 0;
    Position pos;
};

/// Estimates velocity and acceleration at `at_frame` from a 25 Hz position
/// series. The series is smoothed with a centered moving average (window
/// shrinks symmetrically near the ends so affine motion stays exact), then
/// differentiated with central differences, one-sided at the edges. Missing
/// frames inside the sampled range are filled by linear interpolation.
/// Requires at least two samples; throws ValidationError otherwise.
KinematicState estimate_kinematics(const std::vector<PositionSample>& samples, int64_t at_frame);

}  // namespace lb
