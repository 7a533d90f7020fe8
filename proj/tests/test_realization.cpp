#include <doctest.h>

#include <cmath>
#include <random>

#include "gossip/errors.hpp"
#include "gossip/realization.hpp"
#include "oracles.hpp"

using namespace gossip;

namespace {

Graph square() { return Graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

const IndexMap kMap42{4, 2};

IndexPartition example_partition() {
  return IndexPartition({0, 2}, {{1, 3, 4, 6}, {5, 7}}, 8);
}

IndexPartition example_partition_no_pi0() {
  return IndexPartition({}, {{0, 2}, {1, 3, 4, 6}, {5, 7}}, 8);
}

WeightVector example_weights() {
  return WeightVector::normalized(
      {0.012, 0.209, 0.062, 0.027, 0.050, 0.081, 0.013, 0.544}, 0.01);
}

}  // namespace

TEST_CASE("weight vectors renormalize to unit sum") {
  const auto w = example_weights();  // raw entries sum to 0.998
  double sum = 0.0;
  for (double v : w.values()) {
    CHECK(v > 0.0);
    sum += v;
  }
  CHECK(std::abs(sum - 1.0) < 1e-12);
  // Ratios are preserved by renormalization.
  CHECK(w[3] / w[1] == doctest::Approx(0.027 / 0.209).epsilon(1e-14));
  // Rejections: non-positive entries and sums beyond the slack.
  CHECK_THROWS_AS(WeightVector::normalized({0.5, 0.0, 0.5}), ConfigError);
  CHECK_THROWS_AS(WeightVector::normalized({0.5, 0.4}), ConfigError);
  CHECK_NOTHROW(WeightVector::normalized({0.5, 0.4}, 0.2));
  // Induced subvectors are probability vectors over the cell.
  const auto sub = w.induced_subvector({5, 7});
  CHECK(sub.size() == 2);
  CHECK(sub[0] + sub[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sub[0] == doctest::Approx(0.081 / 0.625).epsilon(1e-12));
}

TEST_CASE("default_betas lands in (0,1) with the exact ratio") {
  const BetaPair symmetric = default_betas(1.0, 0.5);
  CHECK(symmetric.beta1 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(symmetric.beta2 == doctest::Approx(0.5).epsilon(1e-15));

  const BetaPair small = default_betas(0.129, 0.5);
  CHECK(small.beta2 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(small.beta1 == doctest::Approx(0.0645).epsilon(1e-12));
  CHECK(small.beta1 / small.beta2 == doctest::Approx(0.129).epsilon(1e-12));

  const BetaPair large = default_betas(4.0, 0.5);
  CHECK(large.beta1 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(large.beta2 == doctest::Approx(0.125).epsilon(1e-15));

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ratio(0.01, 100.0);
  std::uniform_real_distribution<double> theta(0.01, 0.99);
  for (int trial = 0; trial < 500; ++trial) {
    const double r = ratio(rng);
    const BetaPair b = default_betas(r, theta(rng));
    CHECK(b.beta1 > 0.0);
    CHECK(b.beta1 < 1.0);
    CHECK(b.beta2 > 0.0);
    CHECK(b.beta2 < 1.0);
    CHECK(b.beta1 / b.beta2 == doctest::Approx(r).epsilon(1e-12));
  }
  CHECK_THROWS_AS(default_betas(-1.0, 0.5), RealizationError);
  CHECK_THROWS_AS(default_betas(1.0, 1.0), RealizationError);
}

TEST_CASE("rate_matrix places the 2x2 block and keeps w invariant") {
  const auto w = example_weights();

  SUBCASE("pinned betas place the reference block") {
    // Indices {2,4} in file notation; betas straight from the text.
    const Matrix b =
        rate_matrix(kMap42, w, 1, 3, {0.082, 0.630}, /*ratio_tol=*/1e-3);
    CHECK(b(1, 1) == doctest::Approx(0.918).epsilon(1e-12));
    CHECK(b(1, 3) == doctest::Approx(0.082).epsilon(1e-12));
    CHECK(b(3, 1) == doctest::Approx(0.630).epsilon(1e-12));
    CHECK(b(3, 3) == doctest::Approx(0.370).epsilon(1e-12));
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) {
        if ((r == 1 || r == 3) && (c == 1 || c == 3)) continue;
        CHECK(b(r, c) == (r == c ? 1.0 : 0.0));
      }
    }
    CHECK(is_row_stochastic(b, 1e-12));
  }

  SUBCASE("equal weights with symmetric betas average the pair") {
    const auto equal = WeightVector::normalized(std::vector<double>(4, 0.25));
    const Matrix b = rate_matrix(IndexMap{4, 1}, equal, 0, 2, {0.5, 0.5});
    CHECK(b(0, 0) == 0.5);
    CHECK(b(0, 2) == 0.5);
    CHECK(b(2, 0) == 0.5);
    CHECK(b(2, 2) == 0.5);
  }

  SUBCASE("loose betas trip the ratio guard at the default tolerance") {
    CHECK_THROWS_AS(rate_matrix(kMap42, w, 1, 3, {0.082, 0.630}),
                    RatioViolation);
  }

  SUBCASE("a collapsed pair is rejected") {
    CHECK_THROWS_AS(rate_matrix(kMap42, w, 3, 3, {0.5, 0.5}), IndexCollision);
  }

  SUBCASE("betas outside (0,1) are rejected") {
    CHECK_THROWS_AS(rate_matrix(kMap42, w, 1, 3, {0.0, 0.5}),
                    RealizationError);
  }
}

TEST_CASE("w*B = w for every generated rate matrix") {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int m = 1 + static_cast<int>(rng() % 3);
    const IndexMap imap{n, m};
    const auto w = oracles::random_interior_weights(rng, imap.size());
    const int p = static_cast<int>(rng() % imap.size());
    int q = static_cast<int>(rng() % imap.size());
    if (q == p) q = (q + 1) % imap.size();
    const double theta = 0.01 + 0.98 * static_cast<double>(rng() % 100) / 100.0;
    const BetaPair betas = default_betas(w[q] / w[p], theta);
    const Matrix b = rate_matrix(imap, w, p, q, betas);
    CHECK(inf_distance(left_apply(w.values(), b), w.values()) < 1e-12);
    CHECK(is_row_stochastic(b, 1e-12));
  }
}

TEST_CASE("build_local_matrix on the example edges") {
  const Graph g = square();
  const auto w = example_weights();
  const auto p = example_partition();
  BetaPolicy policy;  // theta = 0.5

  SUBCASE("edge (2,3) couples exactly the pair {4,5}") {
    const LocalBuild build =
        build_local_matrix(g, kMap42, p, w, {1, 2}, policy, nullptr);
    CHECK(build.coupled_pairs == 1);
    CHECK_FALSE(build.permutation_placed);
    // Nontrivial 2x2 block on file indices {4,5} = storage {3,4}.
    CHECK(build.matrix(3, 3) != 1.0);
    CHECK(build.matrix(3, 4) != 0.0);
    CHECK(build.matrix(4, 3) != 0.0);
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) {
        if ((r == 3 || r == 4) && (c == 3 || c == 4)) continue;
        CHECK(build.matrix(r, c) == (r == c ? 1.0 : 0.0));
      }
    }
  }

  SUBCASE("edge (3,4) couples within both regular cells") {
    const LocalBuild build =
        build_local_matrix(g, kMap42, p, w, {2, 3}, policy, nullptr);
    CHECK(build.coupled_pairs == 2);  // pairs {5,7} and {6,8} in file indices
    CHECK(build.matrix(4, 6) != 0.0);
    CHECK(build.matrix(5, 7) != 0.0);
    CHECK(build.matrix(4, 5) == 0.0);  // no cross-cell coupling
  }

  SUBCASE("pinned overrides reproduce the reference local matrix") {
    BetaPolicy loose;
    loose.ratio_tol = 1e-3;
    loose.overrides[{1, 3}] = {0.082, 0.630};
    const IndexPermutation swap{{0, 2}, {2, 0}};
    const LocalBuild build =
        build_local_matrix(g, kMap42, p, w, {0, 1}, loose, &swap);
    CHECK(build.coupled_pairs == 1);
    CHECK(build.permutation_placed);
    const double expected[8][8] = {
        {0, 0, 1, 0, 0, 0, 0, 0},     {0, 0.918, 0, 0.082, 0, 0, 0, 0},
        {1, 0, 0, 0, 0, 0, 0, 0},     {0, 0.630, 0, 0.370, 0, 0, 0, 0},
        {0, 0, 0, 0, 1, 0, 0, 0},     {0, 0, 0, 0, 0, 1, 0, 0},
        {0, 0, 0, 0, 0, 0, 1, 0},     {0, 0, 0, 0, 0, 0, 0, 1}};
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) {
        CHECK(std::abs(build.matrix(r, c) - expected[r][c]) < 5e-4);
      }
    }
  }
}

TEST_CASE("factors sharing an index multiply in loop order") {
  // Two agents, two entries each, single cell {1,3,4}: the pairs (1,3) and
  // (1,4) share index 1, so their rate matrices do not commute and the
  // accumulation order is observable.
  const Graph pair_graph(2, {{0, 1}});
  // A second edge is required for 2-edge connectivity only in realize_all;
  // build_local_matrix works on the single edge directly.
  const IndexMap imap{2, 2};
  const IndexPartition p({}, {{0, 2, 3}, {1}}, 4);
  const auto w = WeightVector::normalized({0.1, 0.2, 0.3, 0.4});
  BetaPolicy policy;

  const LocalBuild build =
      build_local_matrix(pair_graph, imap, p, w, {0, 1}, policy, nullptr);
  REQUIRE(build.coupled_pairs == 2);
  REQUIRE(build.factors.size() == 2);
  // Loop order fixes factor 0 as the (entry 1 of agent 2) pair, i.e. the
  // block on indices {1,3}, and factor 1 as the block on {1,4}.
  CHECK(build.factors[0](0, 2) != 0.0);
  CHECK(build.factors[0](0, 3) == 0.0);
  CHECK(build.factors[1](0, 3) != 0.0);
  CHECK(build.factors[1](0, 2) == 0.0);
  CHECK(build.matrix == build.factors[0] * build.factors[1]);
  // The reversed product is a genuinely different matrix.
  CHECK(build.matrix != build.factors[1] * build.factors[0]);
  // Either way w stays invariant.
  CHECK(inf_distance(left_apply(w.values(), build.matrix), w.values()) <
        1e-12);
}

TEST_CASE("identity matrix with a warning when nothing couples") {
  // Triangle with singleton cells: no pair ever shares a cell.
  const Graph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
  const IndexMap imap{3, 1};
  const IndexPartition p({}, {{0}, {1}, {2}}, 3);
  std::mt19937_64 rng(3);
  const auto weights = oracles::random_interior_weights(rng, 3);
  const LocalBuild build = build_local_matrix(
      triangle, imap, p, weights, {0, 1}, BetaPolicy{}, nullptr);
  CHECK(build.no_coupling);
  CHECK(build.matrix == Matrix::identity(3));

  const LocalMatrixSet ms = realize_all(triangle, imap, p, weights,
                                        BetaPolicy{}, PermutationSpec::defaults());
  CHECK(ms.warnings().size() == 3);
}

TEST_CASE("realize_all on the example fixture") {
  const Graph g = square();
  const auto w = example_weights();

  SUBCASE("with pi0: only the edge owning pi0 on both ends gets the swap") {
    const LocalMatrixSet ms =
        realize_all(g, kMap42, example_partition(), w, BetaPolicy{},
                    PermutationSpec::defaults());
    REQUIRE(ms.matrices().size() == 4);
    // A_12 carries the swap of file indices {1,3}.
    const Matrix& a12 = ms.at({0, 1});
    CHECK(a12(0, 2) == 1.0);
    CHECK(a12(2, 0) == 1.0);
    CHECK(a12(0, 0) == 0.0);
    // The other three edges are identity on pi0.
    for (const Edge& e : {Edge{1, 2}, Edge{2, 3}, Edge{0, 3}}) {
      CHECK(ms.at(e)(0, 0) == 1.0);
      CHECK(ms.at(e)(2, 2) == 1.0);
    }
    // Every matrix is identity outside its own agents' rows/columns.
    for (const auto& [edge, matrix] : ms.matrices()) {
      for (int r = 0; r < 8; ++r) {
        const int owner = kMap42.owner(r);
        if (owner == edge.first || owner == edge.second) continue;
        for (int c = 0; c < 8; ++c) {
          CHECK(matrix(r, c) == (r == c ? 1.0 : 0.0));
        }
      }
    }
  }

  SUBCASE("without pi0 every matrix fixes w exactly") {
    const LocalMatrixSet ms =
        realize_all(g, kMap42, example_partition_no_pi0(), w, BetaPolicy{},
                    PermutationSpec::defaults());
    for (const auto& [edge, matrix] : ms.matrices()) {
      CHECK(inf_distance(left_apply(w.values(), matrix), w.values()) < 1e-12);
      CHECK(is_row_stochastic(matrix, 1e-12));
    }
  }

  SUBCASE("precondition failures") {
    const Graph path(3, {{0, 1}, {1, 2}});
    const IndexMap imap{3, 1};
    const IndexPartition p({}, {{0, 1, 2}}, 3);
    std::mt19937_64 rng(4);
    const auto weights = oracles::random_interior_weights(rng, 3);
    CHECK_THROWS_AS(realize_all(path, imap, p, weights, BetaPolicy{},
                                PermutationSpec::defaults()),
                    RealizationError);
    // A graph without edges is disconnected, hence not 2-edge connected.
    const Graph edgeless(3, {});
    CHECK_THROWS_AS(realize_all(edgeless, imap, p, weights, BetaPolicy{},
                                PermutationSpec::defaults()),
                    RealizationError);
  }

  SUBCASE("with pi0 each matrix factors into permutation and invariant "
          "blocks") {
    const auto p = example_partition();
    const LocalMatrixSet ms = realize_all(g, kMap42, p, w, BetaPolicy{},
                                          PermutationSpec::defaults());
    const auto& comp = p.complement_of_pi0();
    const auto w_rest = w.restriction(comp);
    for (const auto& [edge, matrix] : ms.matrices()) {
      // pi0 rows/columns hold an exact 0/1 permutation (identity counts).
      for (int u : p.pi0()) {
        double row_sum = 0.0;
        for (int v : p.pi0()) {
          CHECK((matrix(u, v) == 0.0 || matrix(u, v) == 1.0));
          row_sum += matrix(u, v);
        }
        CHECK(row_sum == 1.0);
        for (int v : comp) {
          CHECK(matrix(u, v) == 0.0);
          CHECK(matrix(v, u) == 0.0);
        }
      }
      const Matrix m_block = principal_submatrix(matrix, comp);
      CHECK(inf_distance(left_apply(w_rest, m_block), w_rest) < 1e-12);
    }
  }

  SUBCASE("intermediate products stay row stochastic") {
    const auto p = example_partition();
    BetaPolicy policy;
    for (const Edge& e : g.edges()) {
      const LocalBuild build =
          build_local_matrix(g, kMap42, p, w, e, policy, nullptr);
      Matrix partial = Matrix::identity(8);
      for (const Matrix& b : build.factors) {
        CHECK(is_row_stochastic(b, 1e-12));
        partial = partial * b;
        CHECK(is_row_stochastic(partial, 1e-12));
      }
      CHECK(partial == build.matrix);
    }
  }
}

TEST_CASE("local matrices never couple distinct cells") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 3);
    const Graph g = oracles::random_two_edge_connected_graph(rng, n);
    const IndexMap imap{n, m};
    const auto w = oracles::random_interior_weights(rng, imap.size());
    const auto p = oracles::random_admissible_partition(rng, g, imap);
    const LocalMatrixSet ms =
        realize_all(g, imap, p, w, BetaPolicy{}, PermutationSpec::defaults());
    for (const auto& [edge, matrix] : ms.matrices()) {
      CHECK(is_row_stochastic(matrix, 1e-12));
      for (int r = 0; r < imap.size(); ++r) {
        for (int c = 0; c < imap.size(); ++c) {
          if (r != c && p.cell_of(r) != p.cell_of(c)) {
            CHECK(matrix(r, c) == 0.0);
          }
        }
      }
    }
  }
}

TEST_CASE("permutation placement rules") {
  const Graph g = square();
  const auto p = example_partition();

  SUBCASE("equal pi0 weights leave no valid default placement") {
    const auto w = WeightVector::normalized(
        {0.1, 0.209, 0.1, 0.027, 0.050, 0.081, 0.013, 0.42}, 0.01);
    CHECK_THROWS_AS(resolve_permutations(g, kMap42, p, w,
                                         PermutationSpec::defaults()),
                    PermutationFixesWeight);
  }

  SUBCASE("explicit permutation fixing the weights is rejected") {
    const auto w = WeightVector::normalized(
        {0.1, 0.209, 0.1, 0.027, 0.050, 0.081, 0.013, 0.42}, 0.01);
    const std::map<Edge, IndexPermutation> placement{
        {{0, 1}, {{0, 2}, {2, 0}}}};
    CHECK_THROWS_AS(
        resolve_permutations(g, kMap42, p, w,
                             PermutationSpec::explicit_spec(placement)),
        PermutationFixesWeight);
  }

  SUBCASE("explicit permutation touching a foreign index is rejected") {
    const auto w = example_weights();
    // Index 5 (file 6) belongs to agent 3, not an endpoint of (1,2).
    const std::map<Edge, IndexPermutation> placement{
        {{0, 1}, {{0, 5}, {5, 0}}}};
    CHECK_THROWS_AS(
        resolve_permutations(g, kMap42, p, w,
                             PermutationSpec::explicit_spec(placement)),
        RealizationError);
  }

  SUBCASE("default placement lands on the only eligible edge") {
    const auto w = example_weights();
    const auto resolved =
        resolve_permutations(g, kMap42, p, w, PermutationSpec::defaults());
    REQUIRE(resolved.size() == 1);
    REQUIRE(resolved.count({0, 1}) == 1);
    const IndexPermutation expected{{0, 2}, {2, 0}};
    CHECK(resolved.at({0, 1}) == expected);
  }
}

TEST_CASE("matrix set lookups") {
  const Graph g = square();
  const auto w = example_weights();
  const LocalMatrixSet ms =
      realize_all(g, kMap42, example_partition_no_pi0(), w, BetaPolicy{},
                  PermutationSpec::defaults());
  CHECK(ms.contains({1, 0}));
  CHECK(&ms.at({0, 1}) == &ms.at({1, 0}));
  CHECK_THROWS_AS(ms.at({0, 2}), UnknownEdge);
  CHECK(ms.edge_order() ==
        std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}
