#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mabsim/rng.hpp"
#include "mabsim/types.hpp"

namespace mabsim {

using Edge = std::pair<AgentId, AgentId>;

/// Undirected graph over agents 1..n+m; agents 1..n are honest.
class Network {
 public:
  /// Builds from an edge list. Throws ConfigError on self loops or out-of-range
  /// endpoints; duplicate edges are merged.
  Network(int n_honest, int n_malicious, std::span<const Edge> edges);

  int n_honest() const { return n_honest_; }
  int n_malicious() const { return n_malicious_; }
  int n_total() const { return n_honest_ + n_malicious_; }
  bool is_honest(AgentId a) const { return a >= 1 && a <= n_honest_; }

  /// Sorted neighbor list.
  std::span<const AgentId> neighbors(AgentId a) const { return adjacency_[a]; }
  /// Sorted honest neighbors.
  std::span<const AgentId> honest_neighbors(AgentId a) const { return honest_adjacency_[a]; }
  bool adjacent(AgentId a, AgentId b) const;

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  bool operator==(const Network& other) const = default;

 private:
  int n_honest_;
  int n_malicious_;
  std::vector<std::vector<AgentId>> adjacency_;
  std::vector<std::vector<AgentId>> honest_adjacency_;
};

struct DegreeSummary {
  std::vector<int> degree;      // d(i), slot 0 unused, honest agents only
  std::vector<int> degree_hon;  // d_hon(i)
  std::vector<int> degree_mal;  // d_mal(i)
  int max_degree = 0;
  int max_degree_hon = 0;
  int max_degree_mal = 0;
  /// min over honest i of d_hon(i)/d(i).
  double upsilon = 0.0;
  /// Set when some honest agent has no honest neighbor; upsilon is then 0.
  bool upsilon_undefined = false;
};

DegreeSummary degree_summary(const Network& net);

/// True when the honest subgraph is connected.
bool honest_connected(const Network& net);

/// Symmetry, no self loops, honest connectivity. Returns an empty string when
/// valid, otherwise a description of the first problem found.
std::string validate_network(const Network& net);

Network gen_complete(int n, int m);

/// G(n+m, p), regenerated from scratch until the honest subgraph is connected.
Network gen_gnp(int n, int m, double p, Rng& rng, int max_resamples = 10000);

/// Honest agents on a line with one malicious hub adjacent to all of them.
Network gen_bad_instance(int n);

/// Honest path 1 - 2 - ... - n plus m malicious agents with no edges.
Network gen_line(int n, int m = 0);

/// "n m" header then one "u v" pair per line.
void write_edge_list(std::ostream& out, const Network& net);
Network read_edge_list(std::istream& in);
Network load_edge_list(const std::filesystem::path& path);

}  // namespace mabsim
