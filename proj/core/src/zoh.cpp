#include "seiscontrol/zoh.hpp"

#include "seiscontrol/errors.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace seiscontrol {

ZeroOrderHold::ZeroOrderHold(double t0, double period, std::size_t width) : t0_(t0), period_(period), held_(width) {
    if (!(period > 0.0)) throw ConfigError(fmt::format("hold period must be positive, got {}", period));
}

void ZeroOrderHold::latch(long long k, std::span<const double> value) {
    if (value.size() != held_.size())
        throw ConfigError(fmt::format("hold expects {} values, got {}", held_.size(), value.size()));
    if (k <= last_k_) throw StateError(fmt::format("sample {} latched after sample {}", k, last_k_));
    std::copy(value.begin(), value.end(), held_.begin());
    last_k_ = k;
}

long long ZeroOrderHold::sample_index(double t) const {
    // a relative nudge keeps exact sampling instants from rounding down
    const double x = (t - t0_) / period_;
    return static_cast<long long>(std::floor(x + 1e-9 * std::max(1.0, std::abs(x))));
}

std::span<const double> ZeroOrderHold::at(double t) const {
    const long long k = sample_index(t);
    if (last_k_ < 0 || k < last_k_)
        throw StateError(fmt::format("no command held at t = {} hr (last sample {})", t, last_k_));
    if (k > last_k_) throw StateError(fmt::format("sample {} was never latched (t = {} hr)", k, t));
    return held_;
}

}  // namespace seiscontrol
