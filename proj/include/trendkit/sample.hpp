#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trendkit/errors.hpp"

namespace trendkit {

/// An ordered series of finite values, optionally paired with strictly
/// increasing time coordinates (years, days, or a plain index).
///
/// Construction validates the invariants once so downstream statistics can
/// assume finite data and monotone time.
class sample {
  public:
    explicit sample(std::vector<double> values) : values_(std::move(values)) {
        check_values();
    }

    sample(std::vector<double> times, std::vector<double> values)
        : times_(std::move(times)), values_(std::move(values)) {
        check_values();
        check_times();
    }

    /// Series observed at the index positions 0, 1, ..., n-1.
    static sample indexed(std::vector<double> values) {
        std::vector<double> t(values.size());
        std::iota(t.begin(), t.end(), 0.0);
        return sample(std::move(t), std::move(values));
    }

    std::size_t size() const noexcept { return values_.size(); }
    bool has_times() const noexcept { return !times_.empty(); }
    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> times() const { return times_; }

  private:
    void check_values() const {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i]))
                throw validation_error("sample: non-finite value at position " + std::to_string(i));
        }
    }

    void check_times() const {
        if (times_.size() != values_.size())
            throw validation_error("sample: times and values differ in length");
        for (std::size_t i = 0; i < times_.size(); ++i) {
            if (!std::isfinite(times_[i]))
                throw validation_error("sample: non-finite time at position " + std::to_string(i));
            if (i > 0 && !(times_[i] > times_[i - 1]))
                throw validation_error("sample: times must be strictly increasing (position " +
                                       std::to_string(i) + ")");
        }
    }

    std::vector<double> times_;
    std::vector<double> values_;
};

}  // namespace trendkit
