#include "linebreak/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace lb {

namespace {

struct Series {
    std::vector<double> x, y;
    int64_t first_frame = 0;
    bool long_gap = false;
};

// Expands the samples into a dense per-frame series, linearly interpolating
// across missing frames. Samples must not repeat a frame index.
Series densify(const std::vector<PositionSample>& samples) {
    std::vector<PositionSample> sorted = samples;
    std::sort(sorted.begin(), sorted.end(),
              [](const PositionSample& a, const PositionSample& b) { return a.frame_index < b.frame_index; });

    Series s;
    s.first_frame = sorted.front().frame_index;
    const int64_t span = sorted.back().frame_index - sorted.front().frame_index + 1;
    s.x.reserve(static_cast<std::size_t>(span));
    s.y.reserve(static_cast<std::size_t>(span));

    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0) {
            const int64_t gap = sorted[i].frame_index - sorted[i - 1].frame_index - 1;
            if (gap > 5) s.long_gap = true;
            for (int64_t g = 1; g <= gap; ++g) {
                const double t = static_cast<double>(g) / static_cast<double>(gap + 1);
                s.x.push_back(sorted[i - 1].pos.x + t * (sorted[i].pos.x - sorted[i - 1].pos.x));
                s.y.push_back(sorted[i - 1].pos.y + t * (sorted[i].pos.y - sorted[i - 1].pos.y));
            }
        }
        s.x.push_back(sorted[i].pos.x);
        s.y.push_back(sorted[i].pos.y);
    }
    return s;
}

// Centered moving average whose radius shrinks near the ends so the window
// stays symmetric; a symmetric mean leaves affine series unchanged.
std::vector<double> smooth(const std::vector<double>& v) {
    const int n = static_cast<int>(v.size());
    const int max_radius = (kSmoothingWindow - 1) / 2;
    std::vector<double> out(v.size());
    for (int i = 0; i < n; ++i) {
        const int radius = std::min({max_radius, i, n - 1 - i});
        double sum = 0.0;
        for (int k = -radius; k <= radius; ++k) sum += v[i + k];
        out[i] = sum / (2 * radius + 1);
    }
    return out;
}

std::vector<double> differentiate(const std::vector<double>& v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> out(n, 0.0);
    if (n == 1) return out;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            out[i] = (v[1] - v[0]) / kFrameDt;
        } else if (i == n - 1) {
            out[i] = (v[n - 1] - v[n - 2]) / kFrameDt;
        } else {
            out[i] = (v[i + 1] - v[i - 1]) / (2.0 * kFrameDt);
        }
    }
    return out;
}

}  // namespace

KinematicState estimate_kinematics(const std::vector<PositionSample>& samples, int64_t at_frame) {
    if (samples.size() < 2) {
        throw ValidationError("estimate_kinematics needs at least 2 samples");
    }
    Series s = densify(samples);

    const auto sx = smooth(s.x);
    const auto sy = smooth(s.y);
    const auto vx = differentiate(sx);
    const auto vy = differentiate(sy);
    const auto ax = differentiate(vx);
    const auto ay = differentiate(vy);

    int64_t idx = at_frame - s.first_frame;
    idx = std::clamp<int64_t>(idx, 0, static_cast<int64_t>(sx.size()) - 1);
    const auto i = static_cast<std::size_t>(idx);

    KinematicState st;
    st.vx = vx[i];
    st.vy = vy[i];
    st.ax = ax[i];
    st.ay = ay[i];
    st.low_confidence = s.long_gap;

    const double speed = std::hypot(st.vx, st.vy);
    if (speed > kMaxSpeedMps) {
        const double scale = kMaxSpeedMps / speed;
        st.vx *= scale;
        st.vy *= scale;
        st.clamped = true;
    }
    const double accel = std::hypot(st.ax, st.ay);
    if (accel > kMaxAccelMps2) {
        const double scale = kMaxAccelMps2 / accel;
        st.ax *= scale;
        st.ay *= scale;
        st.clamped = true;
    }
    return st;
}

}  // namespace lb
