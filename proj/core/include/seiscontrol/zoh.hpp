#pragma once

#include <span>
#include <vector>

namespace seiscontrol {

/// Zero-order hold on a uniform sampling schedule t_k = t0 + k * period.
/// Intervals are left-closed: a query at exactly t_{k+1} returns the value
/// latched at t_{k+1}.
class ZeroOrderHold {
public:
    ZeroOrderHold(double t0, double period, std::size_t width);

    /// Latches `value` as the command of sample k. Samples must be latched in order.
    void latch(long long k, std::span<const double> value);

    /// Index of the sample whose interval contains t (floor((t - t0) / period)).
    long long sample_index(double t) const;

    /// Held command at time t. Throws StateError if t precedes the first
    /// latched sample or falls after an interval that was never latched.
    std::span<const double> at(double t) const;

    double period() const { return period_; }
    long long last_sample() const { return last_k_; }

private:
    double t0_;
    double period_;
    long long last_k_ = -1;
    std::vector<double> held_;
};

}  // namespace seiscontrol
