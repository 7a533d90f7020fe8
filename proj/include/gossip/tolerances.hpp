#ifndef GOSSIP_TOLERANCES_HPP
#define GOSSIP_TOLERANCES_HPP

// All numeric comparison thresholds used across the library, in one place.
// Quantities are unit scale (probability vectors, stochastic matrices), so
// absolute tolerances are meaningful.

namespace gossip::tol {

// Weight vectors read from a config may sum to slightly off 1 (rounded
// inputs); accept and renormalize within this slack, reject beyond it.
inline constexpr double kWeightSumSlack = 1e-6;

// After renormalization the entries must sum to 1 within this bound.
inline constexpr double kWeightSumFinal = 1e-12;

// Default bound on |alpha_p*beta1 - alpha_q*beta2| for a rate matrix.
// Internally generated betas satisfy the constraint to machine precision;
// configs with rounded literal betas may raise this per run.
inline constexpr double kRatioDefault = 1e-12;

// Row-sum deviation allowed for a matrix to count as row stochastic.
inline constexpr double kRowStochastic = 1e-12;

// ||w*A_e - w||_inf for a single local matrix built from exact betas.
inline constexpr double kEigenEdge = 1e-12;

// ||w*(P_C)^k - w||_inf in the cycle order search: products of a handful of
// unit-scale dense matrices stay well below this.
inline constexpr double kEigenCycle = 1e-10;

// Coupling blocks between pi0 and its complement are structurally zero; any
// entry above this is a real defect, not rounding.
inline constexpr double kCouplingZero = 1e-15;

// Per-step drift allowed in a cell's conserved weighted sum during simulation.
inline constexpr double kCellConservation = 1e-10;

// Default convergence spread for the simulator's stop rule.
inline constexpr double kSpreadDefault = 1e-8;

// Order search: a step change below this with the iterate still far from w
// means the products reached a fixed vector other than w.
inline constexpr double kOrderStagnation = 1e-15;

}  // namespace gossip::tol

#endif
