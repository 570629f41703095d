#include "wembed/embedding.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <string>

#include "wembed/format.hpp"
#include "wembed/rng.hpp"

namespace wembed {

void validate(const WeightedEmbedding& e) {
  if (e.dim < 1) throw ConfigError("embedding dimension must be >= 1");
  if (e.positions.size() != e.weights.size() * static_cast<std::size_t>(e.dim))
    throw ConfigError("position/weight array sizes disagree");
  for (std::size_t i = 0; i < e.weights.size(); ++i) {
    if (!(e.weights[i] > 0.0) || !std::isfinite(e.weights[i]))
      throw ConfigError("weight of node " + std::to_string(i) + " is not strictly positive");
  }
  for (double c : e.positions)
    if (!std::isfinite(c)) throw ConfigError("non-finite coordinate in embedding");
}

std::vector<double> assign_weights(const Graph& g, int dim, int latent_dim) {
  if (dim < 1 || latent_dim < 1) throw ConfigError("dimensions must be >= 1");
  const double exponent = static_cast<double>(dim) / static_cast<double>(latent_dim);
  std::vector<double> w(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::size_t deg = g.degree(u);
    if (deg == 0)
      throw ConfigError("node '" + g.label(u) +
                        "' has degree 0; reduce to the largest connected component first");
    w[u] = std::pow(static_cast<double>(deg), exponent);
  }
  return w;
}

std::vector<double> uniform_weights(std::size_t n) { return std::vector<double>(n, 1.0); }

std::vector<double> init_positions(std::size_t n, int dim, std::uint64_t seed) {
  if (dim < 1) throw ConfigError("dimension must be >= 1");
  std::mt19937_64 rng(mix64(seed));
  std::vector<double> pos(n * static_cast<std::size_t>(dim));
  for (double& c : pos) c = unit_double(rng);
  return pos;
}

void write_embedding(const WeightedEmbedding& e, std::span<const std::string> labels,
                     double threshold, std::ostream& out) {
  if (labels.size() != e.node_count())
    throw ConfigError("label count does not match embedding size");
  out << "# wembed d=" << e.dim << " l=" << format_double(threshold) << '\n';
  for (std::size_t v = 0; v < e.node_count(); ++v) {
    out << labels[v] << ' ' << format_double_full(e.weights[v]);
    const auto p = e.position(static_cast<NodeId>(v));
    for (double c : p) out << ' ' << format_double_full(c);
    out << '\n';
  }
}

namespace {

std::vector<std::string_view> split_ws(const std::string& line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.emplace_back(line.data() + i, j - i);
    i = j;
  }
  return tokens;
}

}  // namespace

NamedEmbedding read_embedding(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty embedding file");
  auto header = split_ws(line);
  if (header.size() != 4 || header[0] != "#" || header[1] != "wembed" ||
      !header[2].starts_with("d=") || !header[3].starts_with("l="))
    throw ParseError("line 1: expected header '# wembed d=<dim> l=<threshold>'");

  NamedEmbedding named;
  const long dim = std::stol(std::string(header[2].substr(2)));
  if (dim < 1) throw ParseError("line 1: dimension must be >= 1");
  named.embedding.dim = static_cast<int>(dim);
  named.threshold = parse_double(header[3].substr(2));

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2 + static_cast<std::size_t>(dim))
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(2 + dim) + " tokens, got " + std::to_string(tokens.size()));
    named.labels.emplace_back(tokens[0]);
    named.embedding.weights.push_back(parse_double(tokens[1]));
    for (long k = 0; k < dim; ++k)
      named.embedding.positions.push_back(parse_double(tokens[2 + k]));
  }
  if (named.labels.empty()) throw ParseError("embedding file has no rows");
  validate(named.embedding);
  return named;
}

}  // namespace wembed
