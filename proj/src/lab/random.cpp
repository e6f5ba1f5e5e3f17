#include "tracediag/lab/random.hpp"

#include "tracediag/library/builders.hpp"

#include <algorithm>

namespace tracediag::lab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Scalar random_rational(Rng& rng) {
  Scalar s(uniform(rng, -9, 9), uniform(rng, 1, 5));
  s.canonicalize();
  return s;
}

std::vector<std::string> random_word(Rng& rng, const std::vector<std::string>& labels, long max_len) {
  std::vector<std::string> word;
  if (labels.empty()) return word;
  const long len = uniform(rng, 0, max_len);
  for (long i = 0; i < len; ++i) word.push_back(labels[uniform(rng, 0, static_cast<long>(labels.size()) - 1)]);
  return word;
}

}  // namespace

Rng trial_rng(std::uint64_t seed, std::size_t trial) {
  return Rng(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(trial)));
}

Matrix random_int_matrix(Rng& rng, std::size_t n, long lo, long hi) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform(rng, lo, hi);
  return m;
}

Matrix random_skew_matrix(Rng& rng, std::size_t n, long lo, long hi) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = uniform(rng, lo, hi);
      m(j, i) = -m(i, j);
    }
  }
  return m;
}

Matrix random_rational_matrix(Rng& rng, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng);
  return m;
}

Vector random_rational_vector(Rng& rng, std::size_t n) {
  Vector v(n);
  for (auto& x : v) x = random_rational(rng);
  return v;
}

TraceDiagram marked_permutation(Dimension dim, const std::vector<int>& sigma,
                                const std::vector<std::vector<std::string>>& words) {
  TraceDiagram base = library::permutation_diagram(dim, sigma);
  auto edges = base.edges();
  for (std::size_t i = 0; i < sigma.size() && i < words.size(); ++i) edges.at("s" + std::to_string(i + 1)).marking = words[i];
  return TraceDiagram(dim, base.vertices(), std::move(edges), base.framing());
}

TraceDiagram random_framed_diagram(Rng& rng, Dimension dim, std::size_t inputs, const std::vector<std::string>& labels) {
  const auto n = static_cast<std::size_t>(dim.value());
  std::vector<int> kinds{0};
  if (inputs <= n) {
    kinds.push_back(1);
    kinds.push_back(2);
  }
  const int kind = kinds[uniform(rng, 0, static_cast<long>(kinds.size()) - 1)];
  if (kind == 1) return library::epsilon_node(dim, static_cast<int>(inputs), static_cast<int>(n - inputs));
  if (kind == 2) {
    std::vector<std::vector<std::string>> shared;
    for (std::size_t j = inputs; j < n; ++j) shared.push_back(random_word(rng, labels, 1));
    return library::two_vertex(dim, inputs, shared);
  }
  std::vector<int> sigma(inputs);
  for (std::size_t i = 0; i < inputs; ++i) sigma[i] = static_cast<int>(i);
  std::shuffle(sigma.begin(), sigma.end(), rng);
  std::vector<std::vector<std::string>> words;
  for (std::size_t i = 0; i < inputs; ++i) words.push_back(random_word(rng, labels, 2));
  return marked_permutation(dim, sigma, words);
}

}  // namespace tracediag::lab
