#ifndef GOSSIP_WEIGHTS_HPP
#define GOSSIP_WEIGHTS_HPP

#include <vector>

#include "gossip/tolerances.hpp"

namespace gossip {

// Strictly positive probability vector over all nm indices; the prescribed
// left eigenvector of every local matrix.
class WeightVector {
 public:
  // Accepts raw entries whose sum lies within `sum_slack` of 1 and
  // renormalizes them (rounded literals in configs sum to slightly off 1).
  // Throws ConfigError on non-positive entries or a sum beyond the slack.
  static WeightVector normalized(std::vector<double> raw,
                                 double sum_slack = tol::kWeightSumSlack);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int index) const { return values_[index]; }
  const std::vector<double>& values() const { return values_; }

  // Entries at the given indices, in the order given (callers pass ascending
  // cells). Not normalized.
  std::vector<double> restriction(const std::vector<int>& indices) const;

  // Restriction rescaled to a probability vector: the subvector induced by a
  // cell.
  std::vector<double> induced_subvector(const std::vector<int>& indices) const;

 private:
  explicit WeightVector(std::vector<double> values)
      : values_(std::move(values)) {}
  std::vector<double> values_;
};

}  // namespace gossip

#endif
