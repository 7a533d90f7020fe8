#include "gossip/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gossip/errors.hpp"
#include "gossip/version.hpp"

namespace gossip {

using nlohmann::json;

namespace {

json edge_json(Edge e) { return json::array({e.first + 1, e.second + 1}); }

json index_list_json(const std::vector<int>& indices) {
  json out = json::array();
  for (int idx : indices) out.push_back(idx + 1);
  return out;
}

const char* status_name(OrderSearchStatus s) {
  switch (s) {
    case OrderSearchStatus::found:
      return "found";
    case OrderSearchStatus::provably_empty:
      return "provably_empty";
    case OrderSearchStatus::cap_exhausted:
      return "cap_exhausted";
  }
  return "unknown";
}

}  // namespace

json to_json(const DerivedGraph& d) {
  json edges = json::array();
  for (const auto& e : d.edges) {
    edges.push_back({{"u", e.u + 1},
                     {"v", e.v + 1},
                     {"rule", e.kind == DerivedEdgeKind::same_agent
                                  ? "same-agent"
                                  : "network-edge"}});
  }
  return {{"nodes", index_list_json(d.nodes)}, {"edges", edges}};
}

json to_json(const AdmissibilityReport& r) {
  json cells = json::array();
  for (const auto& cell : r.cells) {
    json tree = json::array();
    for (const auto& [u, v] : cell.tree) {
      tree.push_back(json::array({u + 1, v + 1}));
    }
    cells.push_back({{"name", cell.name},
                     {"indices", index_list_json(cell.cell)},
                     {"derived_graph", to_json(cell.derived)},
                     {"derived_connected", cell.derived_connected},
                     {"realized_mixing_graph", to_json(cell.realized)},
                     {"realized_connected", cell.realized_connected},
                     {"spanning_tree", tree}});
  }
  return {{"cells", cells},
          {"admissible", r.admissible},
          {"warnings", r.warnings}};
}

json to_json(const HolonomyReport& r) {
  json cycles = json::array();
  for (const auto& c : r.cycles) {
    cycles.push_back({{"vertices", index_list_json(c.cycle.vertices())},
                      {"order", c.order},
                      {"search", status_name(c.status)},
                      {"search_cap", c.cap},
                      {"pi0_block_is_permutation", c.blocks.pi0_is_permutation},
                      {"invariant_block_ok", c.blocks.invariant_ok},
                      {"coupling_blocks_zero", c.blocks.coupling_zero},
                      {"w0_moved", c.blocks.w0_moved}});
  }
  return {{"cycles", cycles},
          {"cycle_count", r.cycles.size()},
          {"overall", r.overall}};
}

json to_json(const ConvergenceReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"name", c.name},
                     {"indices", index_list_json(c.cell)},
                     {"converged", c.converged},
                     {"final_spread", c.final_spread},
                     {"target", c.target},
                     {"achieved", c.achieved},
                     {"max_conservation_drift", c.max_conservation_drift}});
  }
  json out = {{"cells", cells},
              {"steps_used", r.steps_used},
              {"all_converged", r.all_converged}};
  if (r.pi0) {
    out["pi0"] = {{"multiset_conserved", r.pi0->multiset_conserved},
                  {"observed_orbit_size", r.pi0->observed_orbit_size}};
  }
  return out;
}

std::string matrix_file_stem(Edge e) {
  return "A_" + std::to_string(e.first + 1) + "_" +
         std::to_string(e.second + 1);
}

void write_matrix_json(const std::filesystem::path& path, Edge e,
                       const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  write_json_file(path, {{"edge", edge_json(e)},
                         {"dim", m.rows()},
                         {"rows", rows}});
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  char buffer[64];
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      std::snprintf(buffer, sizeof buffer, "%.17g", m(r, c));
      out << buffer << (c + 1 < m.cols() ? "," : "");
    }
    out << "\n";
  }
}

Matrix read_matrix_json(const std::filesystem::path& path, int expected_dim) {
  const json j = read_json_file(path);
  if (!j.contains("rows") || !j.at("rows").is_array()) {
    throw ConfigError("matrix file " + path.string() + " has no rows array");
  }
  const json& rows = j.at("rows");
  if (static_cast<int>(rows.size()) != expected_dim) {
    throw ConfigError("matrix file " + path.string() + " has " +
                      std::to_string(rows.size()) + " rows, expected " +
                      std::to_string(expected_dim));
  }
  Matrix m(expected_dim, expected_dim, 0.0);
  for (int r = 0; r < expected_dim; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != expected_dim) {
      throw ConfigError("matrix file " + path.string() + " row " +
                        std::to_string(r + 1) + " has wrong length, expected " +
                        std::to_string(expected_dim));
    }
    for (int c = 0; c < expected_dim; ++c) {
      if (!row[c].is_number()) {
        throw ConfigError("matrix file " + path.string() +
                          " has a non-numeric entry");
      }
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

Matrix read_matrix_csv(const std::filesystem::path& path, int expected_dim) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file " + path.string());
  Matrix m(expected_dim, expected_dim, 0.0);
  std::string line;
  int r = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (r >= expected_dim) {
      throw ConfigError("matrix file " + path.string() +
                        " has too many rows, expected " +
                        std::to_string(expected_dim));
    }
    std::stringstream row(line);
    std::string cell;
    int c = 0;
    while (std::getline(row, cell, ',')) {
      if (c >= expected_dim) {
        ++c;  // count overflow columns so the length check reports them
        continue;
      }
      try {
        m(r, c) = std::stod(cell);
      } catch (const std::exception&) {
        throw ConfigError("matrix file " + path.string() +
                          " has a non-numeric entry at row " +
                          std::to_string(r + 1));
      }
      ++c;
    }
    if (c != expected_dim) {
      throw ConfigError("matrix file " + path.string() + " row " +
                        std::to_string(r + 1) + " has " + std::to_string(c) +
                        " columns, expected " + std::to_string(expected_dim));
    }
    ++r;
  }
  if (r != expected_dim) {
    throw ConfigError("matrix file " + path.string() + " has " +
                      std::to_string(r) + " rows, expected " +
                      std::to_string(expected_dim));
  }
  return m;
}

void write_matrix_set(const std::filesystem::path& dir,
                      const LocalMatrixSet& ms, const std::string& format,
                      const std::string& config_hash) {
  std::filesystem::create_directories(dir);
  json files = json::array();
  json edges = json::array();
  for (const Edge& e : ms.edge_order()) {
    const std::string name = matrix_file_stem(e) + "." + format;
    if (format == "csv") {
      write_matrix_csv(dir / name, ms.at(e));
    } else {
      write_matrix_json(dir / name, e, ms.at(e));
    }
    files.push_back(name);
    edges.push_back(edge_json(e));
  }
  write_json_file(dir / "manifest.json",
                  {{"tool_version", kToolVersion},
                   {"config_hash", config_hash},
                   {"dim", ms.dim()},
                   {"format", format},
                   {"edges", edges},
                   {"files", files},
                   {"warnings", ms.warnings()}});
}

LocalMatrixSet read_matrix_set(const std::filesystem::path& dir,
                               const IndexMap& imap, const IndexPartition& p,
                               const WeightVector& w) {
  const auto manifest_path = dir / "manifest.json";
  const json manifest = read_json_file(manifest_path);
  for (const char* key : {"dim", "format", "edges", "files"}) {
    if (!manifest.contains(key)) {
      throw ConfigError("manifest " + manifest_path.string() +
                        " is missing key \"" + key + "\"");
    }
  }
  const int dim = manifest.at("dim").get<int>();
  if (dim != imap.size()) {
    throw ConfigError("manifest " + manifest_path.string() + " has dim " +
                      std::to_string(dim) + " but the config expects " +
                      std::to_string(imap.size()));
  }
  const std::string format = manifest.at("format").get<std::string>();
  const json& edges = manifest.at("edges");
  const json& files = manifest.at("files");
  if (edges.size() != files.size()) {
    throw ConfigError("manifest " + manifest_path.string() +
                      " edges/files length mismatch");
  }
  std::map<Edge, Matrix> matrices;
  std::vector<Edge> order;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge e = make_edge(edges[i][0].get<int>() - 1,
                             edges[i][1].get<int>() - 1);
    const auto file = dir / files[i].get<std::string>();
    Matrix m = format == "csv" ? read_matrix_csv(file, dim)
                               : read_matrix_json(file, dim);
    matrices.emplace(e, std::move(m));
    order.push_back(e);
  }
  std::vector<std::string> warnings;
  if (manifest.contains("warnings")) {
    for (const auto& wmsg : manifest.at("warnings")) {
      warnings.push_back(wmsg.get<std::string>());
    }
  }
  return LocalMatrixSet(imap, p, w, std::move(matrices), std::move(warnings),
                        std::move(order));
}

void write_trace_csv(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "t,edge_i,edge_j";
  const std::size_t dim = trace.rows.empty() ? 0 : trace.rows.front().x.size();
  for (std::size_t i = 1; i <= dim; ++i) out << ",x_" << i;
  out << "\n";
  char buffer[64];
  for (const TraceRow& row : trace.rows) {
    out << row.t << "," << row.edge.first + 1 << "," << row.edge.second + 1;
    for (double v : row.x) {
      std::snprintf(buffer, sizeof buffer, "%.17g", v);
      out << "," << buffer;
    }
    out << "\n";
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("file " + path.string() +
                      " is not valid JSON: " + e.what());
  }
}

}  // namespace gossip
