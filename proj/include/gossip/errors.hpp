#ifndef GOSSIP_ERRORS_HPP
#define GOSSIP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gossip {

// Base class for everything this library throws on purpose.
struct GossipError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (config files, matrix files, raw edge lists).
// The CLI maps this to exit code 2.
struct ConfigError : GossipError {
  using GossipError::GossipError;
};

// Cycle enumeration hit the configured cap.
struct CycleExplosion : GossipError {
  CycleExplosion(std::size_t cap, std::size_t seen)
      : GossipError("cycle enumeration exceeded cap of " + std::to_string(cap) +
                    " (saw at least " + std::to_string(seen) + " cycles)"),
        cap(cap) {}
  std::size_t cap;
};

// An edge was requested that the matrix set does not contain.
struct UnknownEdge : GossipError {
  using GossipError::GossipError;
};

// A rate matrix was requested for a pair that collapses to a single index.
struct IndexCollision : GossipError {
  using GossipError::GossipError;
};

// The supplied (beta1, beta2) do not satisfy alpha_p*beta1 = alpha_q*beta2
// within the active tolerance.
struct RatioViolation : GossipError {
  using GossipError::GossipError;
};

// The permutation placed on the pi0 block fixes the induced weight subvector,
// or no valid non-identity placement exists at all.
struct PermutationFixesWeight : GossipError {
  using GossipError::GossipError;
};

// Precondition or post-validation failure during matrix construction.
struct RealizationError : GossipError {
  using GossipError::GossipError;
};

}  // namespace gossip

#endif
