#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <utility>

namespace nevanlab::detail {

// Accumulates coefficients together with the summed moduli of the
// contributions, so that floating cancellation can be told apart from a
// genuinely small coefficient.
template <typename Key>
class TrackedTerms {
 public:
  void add(const Key& key, std::complex<double> value, double magnitude) {
    auto& slot = terms_[key];
    slot.first += value;
    slot.second += magnitude;
  }

  void add(const Key& key, std::complex<double> value) { add(key, value, std::abs(value)); }

  template <typename Map>
  Map finish(double tolerance) const {
    Map out;
    for (const auto& [key, slot] : terms_) {
      const double mod = std::abs(slot.first);
      if (mod == 0.0 || mod <= tolerance * slot.second) continue;
      out.emplace(key, slot.first);
    }
    return out;
  }

 private:
  std::map<Key, std::pair<std::complex<double>, double>> terms_;
};

}  // namespace nevanlab::detail
