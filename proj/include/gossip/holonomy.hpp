#ifndef GOSSIP_HOLONOMY_HPP
#define GOSSIP_HOLONOMY_HPP

#include <optional>
#include <vector>

#include "gossip/graph.hpp"
#include "gossip/matrix.hpp"
#include "gossip/realization.hpp"

namespace gossip {

// Left-ordered product of the sequence's local matrices: later edges multiply
// on the left. Empty sequence gives the identity.
Matrix transition_matrix(const std::vector<Edge>& seq,
                         const LocalMatrixSet& ms);

enum class OrderSearchStatus {
  found,           // order >= 1 located within the cap
  provably_empty,  // iterates reached a fixed vector other than w
  cap_exhausted,   // no recurrence within the cap
};

struct WOrderResult {
  long order = 0;  // 0 encodes "no k <= cap recovers w"
  OrderSearchStatus status = OrderSearchStatus::cap_exhausted;
  long cap = 0;
};

// Smallest k in 1..cap with ||w*(P^k) - w||_inf < tolerance, else 0.
WOrderResult w_order_search(const Matrix& p, const std::vector<double>& w,
                            long cap, double tolerance = tol::kEigenCycle);

// Convenience form: builds the cycle's transition matrix and searches.
WOrderResult w_order(const DirectedCycle& c, const LocalMatrixSet& ms,
                     const WeightVector& w, long cap);

// The permutation (as index->image positions within `indices`) when the
// principal block on `indices` is exactly a 0/1 permutation matrix.
std::optional<std::vector<int>> extract_permutation(
    const Matrix& a, const std::vector<int>& indices);

// lcm of the permutation's cycle lengths, i.e. its multiplicative order.
long permutation_order(const std::vector<int>& perm);

struct BlockCheck {
  bool pi0_is_permutation = false;  // vacuously true when pi0 is empty
  bool invariant_ok = false;        // restricted weights fixed by the
                                    // complement block within tolerance
  bool coupling_zero = false;       // off-diagonal blocks are zero
  bool w0_moved = false;            // the pi0 block does not fix w0
};

BlockCheck check_block_structure(const Matrix& p_c, const IndexPartition& p,
                                 const WeightVector& w);
BlockCheck check_block_structure(const DirectedCycle& c,
                                 const LocalMatrixSet& ms,
                                 const IndexPartition& p,
                                 const WeightVector& w);

// Cap for the order search on one cycle matrix: 1 when pi0 is empty, the
// pi0 permutation's multiplicative order when the block factorization holds,
// a hard iteration cap otherwise.
long order_search_cap(const Matrix& p_c, const IndexPartition& p,
                      long hard_cap = 1'000'000);

struct CycleReport {
  DirectedCycle cycle;
  long order = 0;
  OrderSearchStatus status = OrderSearchStatus::cap_exhausted;
  long cap = 0;
  BlockCheck blocks;
};

struct HolonomyReport {
  std::vector<CycleReport> cycles;
  bool overall = false;  // every cycle of length > 2 has finite non-zero order
};

// Exhaustive verdict over every cycle of length > 2 in the bidirectionalized
// graph. Throws CycleExplosion past options.cap.
HolonomyReport verify_holonomy(const Graph& g, const LocalMatrixSet& ms,
                               const WeightVector& w, const IndexPartition& p,
                               const CycleEnumerationOptions& options = {});

}  // namespace gossip

#endif
