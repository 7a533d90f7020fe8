#include "gossip/realization.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "gossip/errors.hpp"

namespace gossip {

namespace {

std::string edge_name(Edge e) {
  return "(" + std::to_string(e.first + 1) + "," +
         std::to_string(e.second + 1) + ")";
}

}  // namespace

BetaPair default_betas(double r, double theta) {
  if (!(r > 0.0)) {
    throw RealizationError("weight ratio must be positive, got " +
                           std::to_string(r));
  }
  if (!(theta > 0.0 && theta < 1.0)) {
    throw RealizationError("theta must lie in (0,1), got " +
                           std::to_string(theta));
  }
  const double beta2 = theta * std::min(1.0, 1.0 / r);
  return {r * beta2, beta2};
}

BetaPair BetaPolicy::select(int p, int q, double alpha_p,
                            double alpha_q) const {
  if (auto it = overrides.find({p, q}); it != overrides.end()) {
    return it->second;
  }
  if (auto it = overrides.find({q, p}); it != overrides.end()) {
    return {it->second.beta2, it->second.beta1};
  }
  return default_betas(alpha_q / alpha_p, theta);
}

Matrix rate_matrix(const IndexMap& imap, const WeightVector& w, int p, int q,
                   BetaPair betas, double ratio_tol) {
  const int dim = imap.size();
  if (p < 0 || q < 0 || p >= dim || q >= dim) {
    throw RealizationError("rate matrix index out of range");
  }
  if (p == q) {
    throw IndexCollision("rate matrix pair collapses to index " +
                         std::to_string(p + 1));
  }
  if (!(betas.beta1 > 0.0 && betas.beta1 < 1.0 && betas.beta2 > 0.0 &&
        betas.beta2 < 1.0)) {
    throw RealizationError("betas must lie in (0,1), got beta1=" +
                           std::to_string(betas.beta1) + " beta2=" +
                           std::to_string(betas.beta2));
  }
  const double residual = std::abs(w[p] * betas.beta1 - w[q] * betas.beta2);
  if (residual > ratio_tol) {
    throw RatioViolation(
        "betas violate the ratio constraint on indices {" +
        std::to_string(p + 1) + "," + std::to_string(q + 1) +
        "}: |alpha_p*beta1 - alpha_q*beta2| = " + std::to_string(residual) +
        " exceeds " + std::to_string(ratio_tol));
  }
  Matrix b = Matrix::identity(dim);
  b(p, p) = 1.0 - betas.beta1;
  b(p, q) = betas.beta1;
  b(q, p) = betas.beta2;
  b(q, q) = 1.0 - betas.beta2;
  return b;
}

namespace {

bool permutation_moves_weights(const IndexPermutation& perm,
                               const WeightVector& w) {
  for (const auto& [from, to] : perm) {
    if (from != to && w[from] != w[to]) return true;
  }
  return false;
}

bool is_identity(const IndexPermutation& perm) {
  return std::all_of(perm.begin(), perm.end(),
                     [](const auto& kv) { return kv.first == kv.second; });
}

void validate_explicit_permutation(const Graph& g, const IndexMap& imap,
                                   const IndexPartition& p, Edge edge,
                                   const IndexPermutation& perm) {
  if (!g.has_edge(edge.first, edge.second)) {
    throw RealizationError("permutation spec names edge " + edge_name(edge) +
                           " which is not in the graph");
  }
  std::set<int> pi0(p.pi0().begin(), p.pi0().end());
  std::set<int> images;
  for (const auto& [from, to] : perm) {
    for (int idx : {from, to}) {
      if (!pi0.count(idx)) {
        throw RealizationError("permutation on edge " + edge_name(edge) +
                               " touches index " + std::to_string(idx + 1) +
                               " outside pi0");
      }
      const int owner = imap.owner(idx);
      if (owner != edge.first && owner != edge.second) {
        throw RealizationError("permutation on edge " + edge_name(edge) +
                               " touches index " + std::to_string(idx + 1) +
                               " owned by agent " + std::to_string(owner + 1) +
                               ", not an endpoint");
      }
    }
    if (!perm.count(to)) {
      throw RealizationError("permutation on edge " + edge_name(edge) +
                             " is not closed over its domain");
    }
    if (!images.insert(to).second) {
      throw RealizationError("permutation on edge " + edge_name(edge) +
                             " maps two indices to " + std::to_string(to + 1));
    }
  }
}

}  // namespace

std::map<Edge, IndexPermutation> resolve_permutations(
    const Graph& g, const IndexMap& imap, const IndexPartition& p,
    const WeightVector& w, const PermutationSpec& spec) {
  std::map<Edge, IndexPermutation> resolved;
  if (p.pi0().empty()) {
    if (!spec.use_default && !spec.per_edge.empty()) {
      throw RealizationError(
          "permutation placements require a non-empty pi0 cell");
    }
    return resolved;
  }

  if (spec.use_default) {
    for (const Edge& e : g.edges()) {
      std::vector<int> owned;
      bool first_owns = false, second_owns = false;
      for (int idx : p.pi0()) {
        const int owner = imap.owner(idx);
        if (owner == e.first || owner == e.second) owned.push_back(idx);
        first_owns = first_owns || owner == e.first;
        second_owns = second_owns || owner == e.second;
      }
      if (!first_owns || !second_owns) continue;
      // owned is ascending because pi0 is; swap its two lowest indices.
      const int a = owned[0];
      const int b = owned[1];
      if (w[a] == w[b]) continue;  // the swap would fix the induced weights
      resolved[e] = IndexPermutation{{a, b}, {b, a}};
    }
    if (resolved.empty()) {
      throw PermutationFixesWeight(
          "pi0 is non-empty but no edge admits a non-identity permutation "
          "that moves the induced weights: every candidate swap either has "
          "equal weights or no edge has pi0 indices on both endpoints");
    }
    return resolved;
  }

  bool any_moves = false;
  for (const auto& [edge, perm] : spec.per_edge) {
    validate_explicit_permutation(g, imap, p, edge, perm);
    if (is_identity(perm)) continue;
    if (!permutation_moves_weights(perm, w)) {
      throw PermutationFixesWeight(
          "permutation on edge " + edge_name(edge) +
          " fixes the weight subvector induced by its pi0 indices");
    }
    resolved[edge] = perm;
    any_moves = true;
  }
  if (!any_moves) {
    throw PermutationFixesWeight(
        "pi0 is non-empty but the permutation spec places no non-identity "
        "permutation on any edge");
  }
  return resolved;
}

LocalBuild build_local_matrix(const Graph& g, const IndexMap& imap,
                              const IndexPartition& p, const WeightVector& w,
                              Edge edge, const BetaPolicy& betas,
                              const IndexPermutation* perm) {
  edge = make_edge(edge.first, edge.second);
  if (!g.has_edge(edge.first, edge.second)) {
    throw UnknownEdge("edge " + edge_name(edge) + " is not in the graph");
  }
  const int m = imap.entries_per_agent;
  const int num_cells = static_cast<int>(p.cells().size());

  LocalBuild build;
  build.matrix = Matrix::identity(imap.size());

  // Triple loop in fixed order: cells ascending, then entries of each agent.
  // Factors on overlapping index pairs do not commute, so the order is part
  // of the contract.
  for (int a = 1; a <= num_cells; ++a) {
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) {
        const int p_idx = imap.flat(edge.first, k);
        const int q_idx = imap.flat(edge.second, l);
        if (p.cell_of(p_idx) != a || p.cell_of(q_idx) != a) continue;
        const BetaPair pair = betas.select(p_idx, q_idx, w[p_idx], w[q_idx]);
        Matrix b = rate_matrix(imap, w, p_idx, q_idx, pair, betas.ratio_tol);
        build.ratio_residual +=
            std::abs(w[p_idx] * pair.beta1 - w[q_idx] * pair.beta2);
        build.matrix = build.matrix * b;
        build.factors.push_back(std::move(b));
        ++build.coupled_pairs;
      }
    }
  }

  if (perm != nullptr && !is_identity(*perm)) {
    // Overwrite the principal block on the touched pi0 indices: row u picks
    // up the value of perm(u). Rows in pi0 are still identity here because
    // the rate-matrix loop never touches them.
    std::vector<int> touched;
    for (const auto& [from, _] : *perm) touched.push_back(from);
    std::sort(touched.begin(), touched.end());
    for (int u : touched) {
      for (int v : touched) build.matrix(u, v) = 0.0;
    }
    for (const auto& [from, to] : *perm) build.matrix(from, to) = 1.0;
    build.permutation_placed = true;
    build.permuted_indices = std::move(touched);
  }

  build.no_coupling = build.coupled_pairs == 0 && !build.permutation_placed;

  // Post-validation: row stochastic, and the principal block on the
  // complement of pi0 keeps the restricted weights as a left eigenvector.
  // The bound follows the residual algebra: each factor contributes at most
  // 2*|alpha_p*b1 - alpha_q*b2| in the 1-norm.
  if (!is_row_stochastic(build.matrix, 1e-9)) {
    throw RealizationError("local matrix for edge " + edge_name(edge) +
                           " failed the row-stochastic check");
  }
  const auto& complement = p.complement_of_pi0();
  const Matrix invariant_block = principal_submatrix(build.matrix, complement);
  const auto w_rest = w.restriction(complement);
  const double invariant_tol =
      tol::kEigenEdge + 2.0 * build.ratio_residual +
      1e-15 * static_cast<double>(build.factors.size()) * imap.size();
  if (inf_distance(left_apply(w_rest, invariant_block), w_rest) >
      invariant_tol) {
    throw RealizationError("local matrix for edge " + edge_name(edge) +
                           " does not keep the restricted weight vector "
                           "invariant within tolerance");
  }
  return build;
}

LocalMatrixSet::LocalMatrixSet(IndexMap imap, IndexPartition partition,
                               WeightVector w, std::map<Edge, Matrix> matrices,
                               std::vector<std::string> warnings,
                               std::vector<Edge> edge_order)
    : imap_(imap),
      partition_(std::move(partition)),
      w_(std::move(w)),
      matrices_(std::move(matrices)),
      warnings_(std::move(warnings)),
      edge_order_(std::move(edge_order)) {
  for (const auto& [edge, matrix] : matrices_) {
    if (matrix.rows() != imap_.size() || matrix.cols() != imap_.size()) {
      throw RealizationError("matrix for edge " + edge_name(edge) +
                             " has dimension " + std::to_string(matrix.rows()) +
                             "x" + std::to_string(matrix.cols()) +
                             ", expected " + std::to_string(imap_.size()));
    }
  }
  if (edge_order_.empty()) {
    for (const auto& [edge, _] : matrices_) edge_order_.push_back(edge);
  } else {
    if (edge_order_.size() != matrices_.size()) {
      throw RealizationError("edge order does not match the matrix set");
    }
    for (Edge& e : edge_order_) e = make_edge(e.first, e.second);
    std::set<Edge> seen;
    for (const Edge& e : edge_order_) {
      if (!matrices_.count(e)) {
        throw RealizationError("edge order names unknown edge " +
                               edge_name(e));
      }
      if (!seen.insert(e).second) {
        throw RealizationError("edge order repeats edge " + edge_name(e));
      }
    }
  }
}

const Matrix& LocalMatrixSet::at(Edge e) const {
  const auto it = matrices_.find(make_edge(e.first, e.second));
  if (it == matrices_.end()) {
    throw UnknownEdge("no local matrix for edge " + edge_name(e));
  }
  return it->second;
}

bool LocalMatrixSet::contains(Edge e) const {
  return matrices_.count(make_edge(e.first, e.second)) > 0;
}

LocalMatrixSet LocalMatrixSet::with_replaced(Edge e, Matrix m) const {
  auto copy = matrices_;
  copy[make_edge(e.first, e.second)] = std::move(m);
  return LocalMatrixSet(imap_, partition_, w_, std::move(copy), warnings_,
                        edge_order_);
}

LocalMatrixSet realize_all(const Graph& g, const IndexMap& imap,
                           const IndexPartition& p, const WeightVector& w,
                           const BetaPolicy& betas,
                           const PermutationSpec& perms) {
  if (imap.size() != w.size() || imap.size() != p.total()) {
    throw RealizationError(
        "weight vector, partition, and index map disagree on nm");
  }
  if (!check_two_edge_connected(g)) {
    throw RealizationError("graph is not 2-edge connected (or disconnected)");
  }
  if (!is_admissible(g, imap, p).admissible) {
    throw RealizationError("partition is not admissible on the graph");
  }

  const auto resolved = resolve_permutations(g, imap, p, w, perms);

  std::map<Edge, Matrix> matrices;
  std::vector<std::string> warnings;
  for (const Edge& e : g.edges()) {
    const auto it = resolved.find(e);
    const IndexPermutation* perm =
        it == resolved.end() ? nullptr : &it->second;
    LocalBuild build = build_local_matrix(g, imap, p, w, e, betas, perm);
    if (build.no_coupling) {
      warnings.push_back("edge " + edge_name(e) +
                         ": no index pair shares a cell and no permutation "
                         "block applies; the local matrix is the identity");
    }
    matrices.emplace(e, std::move(build.matrix));
  }
  return LocalMatrixSet(imap, p, w, std::move(matrices), std::move(warnings),
                        g.edges());
}

}  // namespace gossip
