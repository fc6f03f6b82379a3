#include <numeric>
#include <sstream>

#include "doctest.h"
#include "mabsim/graph.hpp"

using namespace mabsim;

namespace {

// Union-find connectivity over honest-honest edges, independent of the DFS in the library.
bool honest_connected_oracle(const Network& net) {
  const int n = net.n_honest();
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : net.edges()) {
    if (u <= n && v <= n) parent[find(u)] = find(v);
  }
  for (int i = 2; i <= n; ++i) {
    if (find(i) != find(1)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("gen_complete") {
  const auto two = gen_complete(2, 0);
  CHECK(two.edges() == std::vector<Edge>{{1, 2}});
  CHECK(gen_complete(3, 1).edge_count() == 6);
  const auto big = degree_summary(gen_complete(25, 10));
  for (AgentId i = 1; i <= 25; ++i) {
    CHECK(big.degree_mal[i] == 10);
    CHECK(big.degree_hon[i] == 24);
  }
}

TEST_CASE("gen_gnp with p = 1 equals the complete graph") {
  Rng rng(1);
  CHECK(gen_gnp(25, 10, 1.0, rng) == gen_complete(25, 10));
}

TEST_CASE("gen_gnp output is valid and honest-connected") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const auto net = gen_gnp(25, 10, 0.25, rng);
    REQUIRE(validate_network(net).empty());
    REQUIRE(honest_connected_oracle(net));
  }
}

TEST_CASE("gen_gnp edge density matches p") {
  Rng rng(77);
  double total = 0.0;
  const int samples = 1000;
  for (int s = 0; s < samples; ++s) total += static_cast<double>(gen_gnp(10, 0, 0.5, rng).edge_count());
  const double mean = total / samples;
  // Conditioning on connectivity nudges the mean up slightly; 5% covers it.
  CHECK(std::abs(mean - 22.5) < 0.05 * 22.5);
}

TEST_CASE("gen_gnp budget exhaustion") {
  Rng rng(3);
  CHECK_THROWS_AS(gen_gnp(30, 0, 0.01, rng, 5), GenerationError);
  CHECK_THROWS_AS(gen_gnp(3, 0, 0.0, rng), ConfigError);
}

TEST_CASE("gen_bad_instance") {
  const auto net = gen_bad_instance(4);
  CHECK(net.n_honest() == 4);
  CHECK(net.n_malicious() == 1);
  CHECK(net.edges() == std::vector<Edge>{{1, 2}, {1, 5}, {2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 5}});
  CHECK(degree_summary(net).upsilon == 0.5);
  const auto six = degree_summary(gen_bad_instance(6));
  CHECK(six.degree[1] == 2);
  for (AgentId i = 2; i <= 5; ++i) CHECK(six.degree[i] == 3);
  CHECK(six.max_degree == 3);
  CHECK_THROWS_AS(gen_bad_instance(5), ConfigError);
}

TEST_CASE("degree_summary") {
  const auto c = degree_summary(gen_complete(3, 1));
  for (AgentId i = 1; i <= 3; ++i) {
    CHECK(c.degree[i] == 3);
    CHECK(c.degree_hon[i] == 2);
  }
  CHECK(c.upsilon == doctest::Approx(2.0 / 3.0));
  CHECK(degree_summary(gen_line(2)).upsilon == 1.0);

  const std::vector<Edge> edges = {{1, 3}};
  const auto lonely = degree_summary(Network(2, 1, edges));
  CHECK(lonely.upsilon_undefined);
  CHECK(lonely.upsilon == 0.0);
}

TEST_CASE("Network rejects bad edges and merges duplicates") {
  const std::vector<Edge> loop = {{1, 1}};
  CHECK_THROWS_AS(Network(2, 0, loop), ConfigError);
  const std::vector<Edge> out_of_range = {{1, 4}};
  CHECK_THROWS_AS(Network(2, 1, out_of_range), ConfigError);
  const std::vector<Edge> dup = {{1, 2}, {2, 1}, {1, 2}};
  const Network net(2, 0, dup);
  CHECK(net.edge_count() == 1);
  CHECK(net.adjacent(2, 1));
}

TEST_CASE("validator flags disconnected honest subgraphs") {
  const std::vector<Edge> edges = {{1, 3}, {2, 3}};
  const Network net(2, 1, edges);  // honest agents linked only through the malicious one
  CHECK_FALSE(validate_network(net).empty());
  CHECK_FALSE(honest_connected(net));
  CHECK(validate_network(gen_line(5, 2)).empty());
}

TEST_CASE("edge list round trip") {
  Rng rng(5);
  const auto net = gen_gnp(8, 3, 0.5, rng);
  std::stringstream ss;
  write_edge_list(ss, net);
  CHECK(read_edge_list(ss) == net);
  std::istringstream bad("3 0\n1 x\n");
  CHECK_THROWS_AS(read_edge_list(bad), ConfigError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_edge_list(empty), ConfigError);
}
