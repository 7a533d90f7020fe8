#ifndef GOSSIP_SERIALIZE_HPP
#define GOSSIP_SERIALIZE_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "gossip/holonomy.hpp"
#include "gossip/partition.hpp"
#include "gossip/sim.hpp"

namespace gossip {

// Report emitters. Indices and agent ids come out 1-based, matching the
// config file format.
nlohmann::json to_json(const DerivedGraph& d);
nlohmann::json to_json(const AdmissibilityReport& r);
nlohmann::json to_json(const HolonomyReport& r);
nlohmann::json to_json(const ConvergenceReport& r);

std::string matrix_file_stem(Edge e);  // "A_1_2" for edge (v1, v2)

// Matrix files round-trip doubles exactly: JSON via shortest-representation
// dumping, CSV via 17 significant digits.
void write_matrix_json(const std::filesystem::path& path, Edge e,
                       const Matrix& m);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_json(const std::filesystem::path& path, int expected_dim);
Matrix read_matrix_csv(const std::filesystem::path& path, int expected_dim);

// Matrix directory layout: manifest.json plus one file per edge.
struct MatrixSetManifest {
  std::string tool_version;
  std::string config_hash;
  int dim = 0;
  std::string format;  // "json" or "csv"
  std::vector<Edge> edges;
  std::vector<std::string> files;  // parallel to edges
  std::vector<std::string> warnings;
};

void write_matrix_set(const std::filesystem::path& dir,
                      const LocalMatrixSet& ms, const std::string& format,
                      const std::string& config_hash);

// Reads a directory written by write_matrix_set. The caller supplies the
// structural inputs (index map, partition, weights) from the config.
// Throws ConfigError naming the offending file on any mismatch.
LocalMatrixSet read_matrix_set(const std::filesystem::path& dir,
                               const IndexMap& imap, const IndexPartition& p,
                               const WeightVector& w);

// Columns: t, edge_i, edge_j, x_1..x_nm. The initial row carries edge 0,0.
void write_trace_csv(const std::filesystem::path& path, const Trace& trace);

void write_json_file(const std::filesystem::path& path,
                     const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace gossip

#endif
