#pragma once

#include <array>
#include <vector>

#include "nevanlab/exp_poly.hpp"

namespace nevanlab {

// Unpruned accumulator for exponential sums. Each coefficient carries the
// summed modulus of its contributions; finish() drops the ones that cancelled
// down to the kCancellationTolerance level and returns the canonical form.
class ExpPolyBuilder {
 public:
  using QKey = std::array<Complex, kMaxExponentDegree + 1>;

  ExpPolyBuilder() = default;
  explicit ExpPolyBuilder(const ExpPolySum& h);

  void add_term(const UniPoly& q, const UniPoly& p);
  void add(const ExpPolyBuilder& other, Complex scale = 1.0);
  ExpPolyBuilder times(const ExpPolyBuilder& other) const;
  bool empty() const { return entries_.empty(); }

  ExpPolySum finish() const;

 private:
  struct Entry {
    QKey q{};
    std::vector<Complex> c;
    std::vector<double> m;
  };
  Entry& slot(const QKey& q);
  std::vector<Entry> entries_;
};

}  // namespace nevanlab
