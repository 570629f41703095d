#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <unordered_map>

#include <CLI11.hpp>

#include "wembed/embedding.hpp"
#include "wembed/format.hpp"
#include "wembed/girg.hpp"
#include "wembed/graph.hpp"
#include "wembed/optimizer.hpp"
#include "wembed/reconstruction.hpp"

namespace {

using namespace wembed;

// Exit codes: 0 success, 1 usage/config, 2 I/O or parse, 3 numeric abort.
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;

// Exact evaluation beyond this many pairs is refused outright.
constexpr std::size_t kExactPairCap = 100'000'000;
// Below this many pairs, eval defaults to exact mode.
constexpr std::size_t kExactPairDefault = 10'000'000;

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_edge_list(in);
}

int cmd_embed(const std::string& input, const std::string& out_path, OptimizerConfig cfg,
              bool no_lcc) {
  Graph g = load_graph(input);
  if (!no_lcc) {
    const std::size_t before = g.node_count();
    g = largest_connected_component(g);
    if (g.node_count() < before)
      std::cerr << "[embed] reduced to largest connected component: n=" << g.node_count()
                << " (of " << before << "), m=" << g.edge_count() << "\n";
  }
  std::cerr << "[embed] n=" << g.node_count() << " m=" << g.edge_count() << " dim=" << cfg.dim
            << (cfg.uniform_weights ? " weights=uniform" : " weights=degree") << "\n";

  const auto t0 = std::chrono::steady_clock::now();
  int last_reported = -1;
  const EmbedResult result = embed(g, cfg, [&](int iter, const WeightedEmbedding&, double disp) {
    if ((iter + 1) % 100 == 0) {
      std::cerr << "[embed] iter=" << iter + 1 << " mean_disp=" << format_double(disp) << "\n";
      last_reported = iter;
    }
  });
  (void)last_reported;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot open '" + out_path + "' for writing");
  write_embedding(result.embedding, g.labels(), cfg.threshold, out);
  if (!out) throw ParseError("write to '" + out_path + "' failed");

  char time_buf[32];
  std::snprintf(time_buf, sizeof(time_buf), "%.3f", seconds);
  std::cout << "iterations=" << result.iterations << " wall_time_s=" << time_buf
            << " final_loss=" << format_double(result.final_loss) << "\n";
  return 0;
}

// Reorders the embedding rows to the graph's internal ids; every graph label
// must appear in the embedding and vice versa.
WeightedEmbedding align_embedding(const Graph& g, const NamedEmbedding& named) {
  std::unordered_map<std::string, NodeId> row_of;
  row_of.reserve(named.labels.size());
  for (std::size_t i = 0; i < named.labels.size(); ++i)
    row_of.emplace(named.labels[i], static_cast<NodeId>(i));

  WeightedEmbedding aligned;
  aligned.dim = named.embedding.dim;
  aligned.weights.resize(g.node_count());
  aligned.positions.resize(g.node_count() * static_cast<std::size_t>(aligned.dim));
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto it = row_of.find(g.label(u));
    if (it == row_of.end())
      throw ParseError("node '" + g.label(u) + "' is missing from the embedding");
    aligned.weights[u] = named.embedding.weights[it->second];
    const auto p = named.embedding.position(it->second);
    std::copy(p.begin(), p.end(), aligned.position(u).begin());
  }
  if (named.labels.size() > g.node_count()) {
    for (const auto& label : named.labels) {
      bool found = false;
      for (NodeId u = 0; u < g.node_count(); ++u)
        if (g.label(u) == label) {
          found = true;
          break;
        }
      if (!found) throw ParseError("embedding row '" + label + "' is missing from the graph");
    }
  }
  return aligned;
}

int cmd_eval(const std::string& graph_path, const std::string& embedding_path, bool force_exact,
             bool lcc, int sample_factor, bool sample_requested, std::uint64_t seed) {
  Graph g = load_graph(graph_path);
  if (lcc) g = largest_connected_component(g);
  std::ifstream in(embedding_path);
  if (!in) throw ParseError("cannot open '" + embedding_path + "'");
  const NamedEmbedding named = read_embedding(in);
  const WeightedEmbedding e = align_embedding(g, named);

  const std::size_t pairs = g.node_count() * (g.node_count() - 1) / 2;
  ReconstructionReport report;
  if (force_exact) {
    if (pairs > kExactPairCap)
      throw ConfigError("refusing --exact with " + std::to_string(pairs) +
                        " node pairs; use --sample-factor instead");
    report = best_f1_exact(g, e);
  } else if (sample_requested) {
    report = best_f1_sampled(g, e, sample_factor, seed);
  } else if (pairs <= kExactPairDefault) {
    report = best_f1_exact(g, e);
  } else {
    report = best_f1_sampled(g, e, 10, seed);
  }
  std::cout << format_report(report) << "\n";
  return 0;
}

int cmd_generate_girg(const GirgConfig& cfg, const std::string& out_path) {
  const Graph g = sample_girg(cfg);
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot open '" + out_path + "' for writing");
  write_edge_list(g, out);
  if (!out) throw ParseError("write to '" + out_path + "' failed");
  const double avg_deg = 2.0 * static_cast<double>(g.edge_count()) / g.node_count();
  std::cout << "n=" << g.node_count() << " m=" << g.edge_count()
            << " avg_deg=" << format_double(avg_deg) << "\n";
  return 0;
}

int cmd_stats(const std::string& input) {
  const Graph g = load_graph(input);
  const DegreeStats ds = degree_stats(g);
  const auto het = heterogeneity(g);
  const Graph lcc = largest_connected_component(g);
  std::cout << "n=" << g.node_count() << " m=" << g.edge_count() << "\n"
            << "deg_min=" << ds.min << " deg_mean=" << format_double(ds.mean)
            << " deg_max=" << ds.max << "\n"
            << "heterogeneity=" << (het ? format_double(*het) : "undefined") << "\n"
            << "lcc_n=" << lcc.node_count() << " lcc_m=" << lcc.edge_count() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wembed: weighted graph embeddings with reconstruction evaluation"};
  app.require_subcommand(1);

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Embed a graph into weighted space");
  std::string embed_input, embed_out;
  OptimizerConfig cfg;
  bool no_lcc = false;
  double stop_eps_flag = -1.0;
  embed_cmd->add_option("--input", embed_input, "edge-list file")->required();
  embed_cmd->add_option("--dim", cfg.dim, "embedding dimension")->required()
      ->check(CLI::PositiveNumber);
  embed_cmd->add_option("--out", embed_out, "output embedding file")->required();
  embed_cmd->add_option("--seed", cfg.seed, "random seed");
  embed_cmd->add_option("--dprime", cfg.latent_dim, "latent dimension for the weight exponent")
      ->check(CLI::PositiveNumber);
  embed_cmd->add_option("--max-iters", cfg.max_iters, "iteration cap")->check(CLI::PositiveNumber);
  embed_cmd->add_option("--lr0", cfg.lr0, "initial learning rate")->check(CLI::PositiveNumber);
  embed_cmd->add_option("--lr-decay", cfg.lr_decay, "per-iteration learning-rate factor")
      ->check(CLI::Range(1e-9, 1.0));
  embed_cmd->add_option("--stop-eps", stop_eps_flag, "mean displacement stopping tolerance")
      ->check(CLI::PositiveNumber);
  embed_cmd->add_flag("--uniform-weights", cfg.uniform_weights,
                      "force w_v = 1 (Euclidean baseline)");
  embed_cmd->add_flag("--no-lcc", no_lcc, "embed the graph as-is, without LCC reduction");
  embed_cmd->add_option("--threads", cfg.threads, "gradient worker threads")
      ->check(CLI::PositiveNumber);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Score an embedding by graph reconstruction");
  std::string eval_graph, eval_embedding;
  bool eval_exact = false, eval_lcc = false;
  int sample_factor = 10;
  std::uint64_t eval_seed = 1;
  eval_cmd->add_option("--graph", eval_graph, "edge-list file")->required();
  eval_cmd->add_option("--embedding", eval_embedding, "embedding file")->required();
  eval_cmd->add_flag("--exact", eval_exact, "force the exact all-pairs sweep");
  auto* sf_opt = eval_cmd->add_option("--sample-factor", sample_factor,
                                      "sample this many non-edges per edge")
                     ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", eval_seed, "sampling seed");
  eval_cmd->add_flag("--lcc", eval_lcc, "reduce the graph to its LCC before evaluating");
  sf_opt->excludes("--exact");

  // generate girg
  auto* generate_cmd = app.add_subcommand("generate", "Generate synthetic graphs");
  generate_cmd->require_subcommand(1);
  auto* girg_cmd = generate_cmd->add_subcommand("girg", "Geometric inhomogeneous random graph");
  GirgConfig girg;
  std::string girg_out;
  girg_cmd->add_option("--n", girg.n, "node count")->required()->check(CLI::Range(2u, 1u << 30));
  girg_cmd->add_option("--avg-deg", girg.target_avg_deg, "target average degree")
      ->required()->check(CLI::PositiveNumber);
  girg_cmd->add_option("--beta", girg.beta, "power-law exponent (> 2)")
      ->required()->check(CLI::Range(2.0 + 1e-9, 1e9));
  girg_cmd->add_option("--dim", girg.dim, "latent dimension")->check(CLI::PositiveNumber);
  girg_cmd->add_option("--temperature", girg.temperature, "temperature in [0, 1)")
      ->check(CLI::Range(0.0, 1.0 - 1e-12));
  girg_cmd->add_option("--seed", girg.seed, "random seed");
  girg_cmd->add_option("--out", girg_out, "output edge-list file")->required();

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Print graph statistics");
  std::string stats_input;
  stats_cmd->add_option("--input", stats_input, "edge-list file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*embed_cmd) {
      if (stop_eps_flag > 0.0) cfg.stop_eps = stop_eps_flag;
      cfg.validate();
      return cmd_embed(embed_input, embed_out, cfg, no_lcc);
    }
    if (*eval_cmd)
      return cmd_eval(eval_graph, eval_embedding, eval_exact, eval_lcc, sample_factor,
                      sf_opt->count() > 0, eval_seed);
    if (*girg_cmd) {
      girg.validate();
      return cmd_generate_girg(girg, girg_out);
    }
    if (*stats_cmd) return cmd_stats(stats_input);
  } catch (const ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNumeric;
  }
  return kExitConfig;
}
