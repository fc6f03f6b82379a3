#include "mabsim/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace mabsim {

Network::Network(int n_honest, int n_malicious, std::span<const Edge> edges)
    : n_honest_(n_honest), n_malicious_(n_malicious) {
  if (n_honest < 1) throw ConfigError("network needs at least one honest agent");
  if (n_malicious < 0) throw ConfigError("malicious count must be non-negative");
  const int total = n_total();
  adjacency_.assign(total + 1, {});
  honest_adjacency_.assign(total + 1, {});
  for (auto [u, v] : edges) {
    if (u < 1 || v < 1 || u > total || v > total) {
      throw ConfigError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") has an endpoint outside 1.." + std::to_string(total));
    }
    if (u == v) throw ConfigError("self loop at agent " + std::to_string(u));
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (AgentId a = 1; a <= total; ++a) {
    auto& nb = adjacency_[a];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    for (AgentId b : nb) {
      if (is_honest(b)) honest_adjacency_[a].push_back(b);
    }
  }
}

bool Network::adjacent(AgentId a, AgentId b) const {
  if (a < 1 || a > n_total()) return false;
  const auto& nb = adjacency_[a];
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Network::edges() const {
  std::vector<Edge> out;
  for (AgentId u = 1; u <= n_total(); ++u) {
    for (AgentId v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::size_t Network::edge_count() const {
  std::size_t deg = 0;
  for (const auto& nb : adjacency_) deg += nb.size();
  return deg / 2;
}

DegreeSummary degree_summary(const Network& net) {
  DegreeSummary s;
  const int n = net.n_honest();
  s.degree.assign(n + 1, 0);
  s.degree_hon.assign(n + 1, 0);
  s.degree_mal.assign(n + 1, 0);
  s.upsilon = std::numeric_limits<double>::infinity();
  for (AgentId i = 1; i <= n; ++i) {
    s.degree[i] = static_cast<int>(net.neighbors(i).size());
    s.degree_hon[i] = static_cast<int>(net.honest_neighbors(i).size());
    s.degree_mal[i] = s.degree[i] - s.degree_hon[i];
    s.max_degree = std::max(s.max_degree, s.degree[i]);
    s.max_degree_hon = std::max(s.max_degree_hon, s.degree_hon[i]);
    s.max_degree_mal = std::max(s.max_degree_mal, s.degree_mal[i]);
    if (s.degree_hon[i] == 0) {
      s.upsilon_undefined = true;
    } else {
      s.upsilon = std::min(s.upsilon, static_cast<double>(s.degree_hon[i]) / s.degree[i]);
    }
  }
  if (s.upsilon_undefined) s.upsilon = 0.0;
  return s;
}

bool honest_connected(const Network& net) {
  const int n = net.n_honest();
  std::vector<char> seen(n + 1, 0);
  std::vector<AgentId> stack{1};
  seen[1] = 1;
  int reached = 1;
  while (!stack.empty()) {
    AgentId a = stack.back();
    stack.pop_back();
    for (AgentId b : net.honest_neighbors(a)) {
      if (!seen[b]) {
        seen[b] = 1;
        ++reached;
        stack.push_back(b);
      }
    }
  }
  return reached == n;
}

std::string validate_network(const Network& net) {
  for (AgentId a = 1; a <= net.n_total(); ++a) {
    for (AgentId b : net.neighbors(a)) {
      if (a == b) return "self loop at agent " + std::to_string(a);
      if (!net.adjacent(b, a)) {
        return "asymmetric edge " + std::to_string(a) + "->" + std::to_string(b);
      }
    }
  }
  if (!honest_connected(net)) return "honest subgraph is not connected";
  return {};
}

Network gen_complete(int n, int m) {
  std::vector<Edge> edges;
  const int total = n + m;
  for (AgentId u = 1; u <= total; ++u) {
    for (AgentId v = u + 1; v <= total; ++v) edges.emplace_back(u, v);
  }
  return Network(n, m, edges);
}

Network gen_gnp(int n, int m, double p, Rng& rng, int max_resamples) {
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError("edge probability p must lie in (0,1]");
  if (max_resamples < 1) throw ConfigError("max_resamples must be >= 1");
  const int total = n + m;
  std::vector<Edge> edges;
  for (int attempt = 0; attempt < max_resamples; ++attempt) {
    edges.clear();
    for (AgentId u = 1; u <= total; ++u) {
      for (AgentId v = u + 1; v <= total; ++v) {
        if (rng.uniform() < p) edges.emplace_back(u, v);
      }
    }
    Network net(n, m, edges);
    if (honest_connected(net)) return net;
  }
  throw GenerationError("G(n+m,p) resampling budget of " + std::to_string(max_resamples) +
                        " exhausted without a connected honest subgraph");
}

Network gen_bad_instance(int n) {
  if (n < 4 || n % 2 != 0) {
    throw ConfigError("bad instance needs an even number of honest agents >= 4, got " +
                      std::to_string(n));
  }
  std::vector<Edge> edges;
  for (AgentId i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  for (AgentId i = 1; i <= n; ++i) edges.emplace_back(i, n + 1);
  return Network(n, 1, edges);
}

Network gen_line(int n, int m) {
  std::vector<Edge> edges;
  for (AgentId i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  return Network(n, m, edges);
}

void write_edge_list(std::ostream& out, const Network& net) {
  out << net.n_honest() << ' ' << net.n_malicious() << '\n';
  for (auto [u, v] : net.edges()) out << u << ' ' << v << '\n';
}

Network read_edge_list(std::istream& in) {
  std::string line;
  int n = 0;
  int m = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long a = 0;
    long b = 0;
    if (!(ls >> a >> b)) throw ConfigError("edge list line " + std::to_string(lineno) + " malformed");
    if (!have_header) {
      n = static_cast<int>(a);
      m = static_cast<int>(b);
      have_header = true;
    } else {
      edges.emplace_back(static_cast<AgentId>(a), static_cast<AgentId>(b));
    }
  }
  if (!have_header) throw ConfigError("edge list is missing the \"n m\" header");
  return Network(n, m, edges);
}

Network load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open edge list " + path.string());
  return read_edge_list(in);
}

}  // namespace mabsim
