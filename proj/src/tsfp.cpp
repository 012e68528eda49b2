#include "umtk/tsfp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "umtk/errors.hpp"

namespace umtk {

std::vector<std::span<const double>> embed_windows(const TimeSeries& series, std::size_t m) {
    if (m < 3) throw InvalidInput("window length m must be >= 3");
    if (series.size() < m)
        throw InvalidInput("series of length " + std::to_string(series.size()) +
                           " is shorter than window length " + std::to_string(m));
    const std::size_t count = series.size() / m;
    std::vector<std::span<const double>> windows;
    windows.reserve(count);
    for (std::size_t r = 0; r < count; ++r)
        windows.push_back({series.samples.data() + r * m, m});
    return windows;
}

RecodedWindow window_recode(std::span<const double> window) {
    const std::size_t m = window.size();
    if (m < 3) throw InvalidInput("window length m must be >= 3");
    for (const double x : window)
        if (!std::isfinite(x)) throw InvalidInput("window contains a non-finite sample");

    double min_d = std::numeric_limits<double>::infinity();
    double max_d = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t j2 = j + 1; j2 < m; ++j2) {
            const double diff = window[j] - window[j2];
            const double d = diff * diff;
            min_d = std::min(min_d, d);
            max_d = std::max(max_d, d);
        }

    RecodedWindow rw(m);
    if (max_d == min_d) {
        // No large transition exists; the whole window codes to 1.
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t j2 = j + 1; j2 < m; ++j2) rw.set(j, j2, 1);
        return rw;
    }
    const double threshold = min_d + (max_d - min_d) / 2.0;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t j2 = j + 1; j2 < m; ++j2) {
            const double diff = window[j] - window[j2];
            rw.set(j, j2, diff * diff <= threshold ? 1 : 2);
        }
    return rw;
}

double window_ultrametricity(const RecodedWindow& rw) {
    const std::size_t m = rw.length();
    if (m < 3) throw InvalidInput("window length m must be >= 3");
    std::size_t conforming = 0;
    std::size_t total = 0;
    for (std::size_t i = 0; i + 2 < m; ++i)
        for (std::size_t j = i + 1; j + 1 < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                // Values are in {1, 2}; the only triplet whose two largest
                // differ is {1, 1, 2}, i.e. sum 4.
                const int sum = rw(i, j) + rw(i, k) + rw(j, k);
                conforming += (sum != 4);
                ++total;
            }
    return static_cast<double>(conforming) / static_cast<double>(total);
}

Fingerprint series_fingerprint(const TimeSeries& series, std::size_t m) {
    const auto windows = embed_windows(series, m);
    Fingerprint fp;
    fp.m = m;
    fp.window_count = windows.size();
    fp.per_window.reserve(windows.size());
    double sum = 0.0;
    for (const auto& w : windows) {
        const double u = window_ultrametricity(window_recode(w));
        fp.per_window.push_back(u);
        sum += u;
    }
    fp.aggregate = sum / static_cast<double>(windows.size());
    return fp;
}

}  // namespace umtk
