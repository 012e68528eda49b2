#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace umtk {

struct TimeSeries {
    std::vector<double> samples;

    std::size_t size() const noexcept { return samples.size(); }
};

// Change/no-change recoding of one delay window: 0 on the diagonal, 1 for a
// small pairwise transition, 2 for a large one. Always a metric (2 <= 1 + 1).
class RecodedWindow {
public:
    explicit RecodedWindow(std::size_t m) : m_(m), codes_(m * m, 0) {}

    std::size_t length() const noexcept { return m_; }
    std::uint8_t operator()(std::size_t j, std::size_t j2) const noexcept {
        return codes_[j * m_ + j2];
    }
    void set(std::size_t j, std::size_t j2, std::uint8_t v) noexcept {
        codes_[j * m_ + j2] = v;
        codes_[j2 * m_ + j] = v;
    }

private:
    std::size_t m_;
    std::vector<std::uint8_t> codes_;
};

// Per-window ultrametric conformity plus the series-level mean.
struct Fingerprint {
    std::vector<double> per_window;
    double aggregate = 0.0;
    std::size_t m = 0;
    std::size_t window_count = 0;
};

// Splits the series into s = floor(n / m) non-overlapping windows anchored at
// sample 0; trailing remainder samples are dropped. Spans alias the series.
std::vector<std::span<const double>> embed_windows(const TimeSeries& series, std::size_t m);

// Squared pairwise differences thresholded at the midpoint of their range
// within this window: d <= min + (max - min)/2 codes to 1, above to 2. A
// window with all pairwise differences equal codes entirely to 1.
RecodedWindow window_recode(std::span<const double> window);

// Fraction of the window's C(m,3) coordinate triplets whose two largest
// recoded values are equal (all triplets, no sampling).
double window_ultrametricity(const RecodedWindow& rw);

// window_recode + window_ultrametricity over every window; aggregate is the
// arithmetic mean. Deterministic: no randomness anywhere in this pipeline.
Fingerprint series_fingerprint(const TimeSeries& series, std::size_t m);

}  // namespace umtk
