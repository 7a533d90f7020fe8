#include "gossip/holonomy.hpp"

#include <cmath>
#include <numeric>

#include "gossip/errors.hpp"
#include "gossip/tolerances.hpp"

namespace gossip {

namespace {

bool coupling_blocks_zero(const Matrix& p_c, const IndexPartition& p) {
  for (int u : p.pi0()) {
    for (int v : p.complement_of_pi0()) {
      if (std::abs(p_c(u, v)) > tol::kCouplingZero) return false;
      if (std::abs(p_c(v, u)) > tol::kCouplingZero) return false;
    }
  }
  return true;
}

}  // namespace

Matrix transition_matrix(const std::vector<Edge>& seq,
                         const LocalMatrixSet& ms) {
  Matrix p = Matrix::identity(ms.dim());
  for (const Edge& e : seq) {
    p = ms.at(e) * p;
  }
  return p;
}

WOrderResult w_order_search(const Matrix& p, const std::vector<double>& w,
                            long cap, double tolerance) {
  WOrderResult result;
  result.cap = cap;
  std::vector<double> current = w;
  for (long k = 1; k <= cap; ++k) {
    std::vector<double> next = left_apply(current, p);
    if (inf_distance(next, w) < tolerance) {
      result.order = k;
      result.status = OrderSearchStatus::found;
      return result;
    }
    // A step change this small means the iterates sit on a fixed vector; if
    // that vector is not w, no later power can recover it.
    if (inf_distance(next, current) < tol::kOrderStagnation &&
        inf_distance(next, w) > 100.0 * tolerance) {
      result.status = OrderSearchStatus::provably_empty;
      return result;
    }
    current = std::move(next);
  }
  result.status = OrderSearchStatus::cap_exhausted;
  return result;
}

WOrderResult w_order(const DirectedCycle& c, const LocalMatrixSet& ms,
                     const WeightVector& w, long cap) {
  const Matrix p_c = transition_matrix(c.edge_sequence(), ms);
  return w_order_search(p_c, w.values(), cap);
}

std::optional<std::vector<int>> extract_permutation(
    const Matrix& a, const std::vector<int>& indices) {
  const int k = static_cast<int>(indices.size());
  std::vector<int> image(k, -1);
  std::vector<bool> hit(k, false);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      const double entry = a(indices[r], indices[c]);
      if (entry == 0.0) continue;
      if (entry != 1.0 || image[r] != -1) return std::nullopt;
      image[r] = c;
    }
    if (image[r] == -1 || hit[image[r]]) return std::nullopt;
    hit[image[r]] = true;
  }
  return image;
}

long permutation_order(const std::vector<int>& perm) {
  const int k = static_cast<int>(perm.size());
  std::vector<bool> seen(k, false);
  long order = 1;
  for (int start = 0; start < k; ++start) {
    if (seen[start]) continue;
    long cycle_len = 0;
    int at = start;
    while (!seen[at]) {
      seen[at] = true;
      at = perm[at];
      ++cycle_len;
    }
    order = std::lcm(order, cycle_len);
  }
  return order;
}

BlockCheck check_block_structure(const Matrix& p_c, const IndexPartition& p,
                                 const WeightVector& w) {
  BlockCheck check;
  const auto& pi0 = p.pi0();
  const auto& comp = p.complement_of_pi0();

  check.coupling_zero = coupling_blocks_zero(p_c, p);

  if (pi0.empty()) {
    check.pi0_is_permutation = true;  // vacuous
    check.w0_moved = false;
  } else {
    check.pi0_is_permutation = extract_permutation(p_c, pi0).has_value();
    const Matrix pi0_block = principal_submatrix(p_c, pi0);
    const auto w0 = w.restriction(pi0);
    check.w0_moved = inf_distance(left_apply(w0, pi0_block), w0) > 0.0;
  }

  const Matrix invariant_block = principal_submatrix(p_c, comp);
  const auto w_rest = w.restriction(comp);
  check.invariant_ok =
      inf_distance(left_apply(w_rest, invariant_block), w_rest) <
      tol::kEigenCycle;
  return check;
}

BlockCheck check_block_structure(const DirectedCycle& c,
                                 const LocalMatrixSet& ms,
                                 const IndexPartition& p,
                                 const WeightVector& w) {
  return check_block_structure(transition_matrix(c.edge_sequence(), ms), p, w);
}

long order_search_cap(const Matrix& p_c, const IndexPartition& p,
                      long hard_cap) {
  if (p.pi0().empty()) return 1;
  if (coupling_blocks_zero(p_c, p)) {
    if (auto perm = extract_permutation(p_c, p.pi0())) {
      return std::min(hard_cap, permutation_order(*perm));
    }
  }
  return hard_cap;
}

HolonomyReport verify_holonomy(const Graph& g, const LocalMatrixSet& ms,
                               const WeightVector& w, const IndexPartition& p,
                               const CycleEnumerationOptions& options) {
  HolonomyReport report;
  report.overall = true;
  for (const DirectedCycle& cycle : enumerate_cycles(g, options)) {
    CycleReport entry{cycle, 0, OrderSearchStatus::cap_exhausted, 0, {}};
    const Matrix p_c = transition_matrix(cycle.edge_sequence(), ms);
    entry.blocks = check_block_structure(p_c, p, w);
    entry.cap = order_search_cap(p_c, p);
    const WOrderResult search =
        w_order_search(p_c, w.values(), entry.cap, tol::kEigenCycle);
    entry.order = search.order;
    entry.status = search.status;
    report.overall = report.overall && entry.order >= 1;
    report.cycles.push_back(std::move(entry));
  }
  return report;
}

}  // namespace gossip
