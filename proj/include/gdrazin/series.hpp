#pragma once

#include <cstddef>
#include <map>
#include <string>

namespace gdrazin {

/// Controls how the finite series in the additive formulas are truncated.
///
/// Every series evaluated by the library is finite for matrices: each term past
/// a bound derived from an index contains a vanishing factor such as a^n a^pi.
/// `extra_terms` appends that many terms past each bound; the result must not
/// change, which is how truncation soundness is tested.
struct SeriesOptions {
  std::size_t extra_terms = 0;
};

/// Number of terms used by each named series, keyed by a short label.
using TruncationOrders = std::map<std::string, std::size_t>;

} // namespace gdrazin
