#include "gossip/weights.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "gossip/errors.hpp"

namespace gossip {

WeightVector WeightVector::normalized(std::vector<double> raw,
                                      double sum_slack) {
  if (raw.empty()) throw ConfigError("weight vector is empty");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] > 0.0)) {
      throw ConfigError("weight entry " + std::to_string(i + 1) +
                        " must be strictly positive, got " +
                        std::to_string(raw[i]));
    }
  }
  const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (std::abs(sum - 1.0) > sum_slack) {
    throw ConfigError("weight entries sum to " + std::to_string(sum) +
                      ", beyond the accepted slack of " +
                      std::to_string(sum_slack) + " around 1");
  }
  for (double& w : raw) w /= sum;
  return WeightVector(std::move(raw));
}

std::vector<double> WeightVector::restriction(
    const std::vector<int>& indices) const {
  std::vector<double> out;
  out.reserve(indices.size());
  for (int idx : indices) out.push_back(values_[idx]);
  return out;
}

std::vector<double> WeightVector::induced_subvector(
    const std::vector<int>& indices) const {
  auto out = restriction(indices);
  const double sum = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& w : out) w /= sum;
  return out;
}

}  // namespace gossip
