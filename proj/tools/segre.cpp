// Command-line front end: mutate, glue, enumerate, verify, serve.
//
// Exit codes: 0 ok, 1 other error, 2 parse, 3 validation,
// 4 verification failure, 5 truncated or inconclusive.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "segre/http.hpp"
#include "segre/segre.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kError = 1,
  kParse = 2,
  kValidation = 3,
  kVerification = 4,
  kInconclusive = 5,
};

class ReadError : public segre::Error {
 public:
  using Error::Error;
};

segre::SeedDocument load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ReadError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return segre::parse_document(ss.str());
  } catch (const segre::ParseError& e) {
    throw segre::ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

struct PairArgs {
  std::string left;
  std::string x;
  std::string right;
  std::string y;

  void add(CLI::App* app) {
    app->add_option("left", left, "left seed document")->required();
    app->add_option("x", x, "frozen vertex of the left seed")->required();
    app->add_option("right", right, "right seed document")->required();
    app->add_option("y", y, "frozen vertex of the right seed")->required();
  }
};

std::string count_text(const std::optional<std::size_t>& c) {
  return c ? std::to_string(*c) : std::string("?");
}

int run_theorem(const PairArgs& p, std::size_t depth, long long force_degree,
                const std::string& map, std::size_t witnesses, bool json) {
  segre::Seed s1 = load(p.left).seed;
  segre::Seed s2 = load(p.right).seed;
  segre::TheoremOptions opts;
  opts.depth = depth;
  opts.max_witnesses = witnesses;
  opts.map.kind = map == "naive" ? segre::MapKind::naive : segre::MapKind::phi;
  if (force_degree != 0) {
    auto d = s1.degree(s1.id(p.x));
    if (d == 0 || force_degree % d != 0 || s2.degree(s2.id(p.y)) != d)
      throw segre::Error("--force-degree must be a multiple of the glued degree");
    s1 = segre::scale_grading(s1, force_degree / d);
    s2 = segre::scale_grading(s2, force_degree / d);
    opts.map.force = true;
  }
  auto g = segre::glue(s1, p.x, s2, p.y);
  auto report = segre::verify_theorem(g, s1, s2, opts);
  if (json) {
    std::cout << segre::to_json(report).dump(2) << "\n";
  } else {
    std::cout << "theorem: " << (report.success ? "success" : "failure") << "\n"
              << "map: " << segre::to_string(report.map) << ", glued degree "
              << report.glued_degree << ", depth " << report.depth << "\n"
              << "sequences: " << report.sequences << ", checks: " << report.checks << "\n";
    for (const auto& w : report.witnesses)
      std::cout << "witness: sequence [" << join(w.sequence, ", ") << "], slot " << w.slot
                << "\n  expected: " << w.expected << "\n  actual:   " << w.actual << "\n";
  }
  return report.success ? kOk : kVerification;
}

int run_corollary(const PairArgs& p, const segre::PairBounds& b, bool json) {
  auto s1 = load(p.left).seed;
  auto s2 = load(p.right).seed;
  auto r = segre::verify_corollary(s1, s1.id(p.x), s2, s2.id(p.y), b);
  if (json) {
    std::cout << segre::to_json(r).dump(2) << "\n";
  } else {
    std::cout << "corollary: " << segre::to_string(r.status) << "\n";
    auto line = [](const char* name, const segre::GraphCounts& c) {
      std::cout << name << ": " << segre::to_string(c.status) << ", nodes " << c.nodes
                << ", κ " << count_text(c.kappa) << ", K " << count_text(c.clusters) << "\n";
    };
    line("left", r.left);
    line("right", r.right);
    line("glued", r.glued);
    std::cout << "finite type consistent: " << (r.finite_type_consistent ? "yes" : "no")
              << "\n";
    if (r.status != segre::CheckStatus::inconclusive) {
      std::cout << "κ: " << *r.glued.kappa << (r.kappa_identity ? " = " : " ≠ ")
                << *r.left.kappa << "+" << *r.right.kappa << "−1\n"
                << "K: " << *r.glued.clusters << (r.cluster_identity ? " = " : " ≠ ")
                << *r.left.clusters << "·" << *r.right.clusters << "\n";
    }
  }
  switch (r.status) {
    case segre::CheckStatus::success: return kOk;
    case segre::CheckStatus::failure: return kVerification;
    case segre::CheckStatus::inconclusive: return kInconclusive;
  }
  return kError;
}

int run_correspondence(const PairArgs& p, const segre::PairBounds& b, bool json) {
  auto s1 = load(p.left).seed;
  auto s2 = load(p.right).seed;
  auto r = segre::verify_correspondence(s1, s1.id(p.x), s2, s2.id(p.y), b);
  if (json) {
    std::cout << segre::to_json(r).dump(2) << "\n";
  } else {
    std::cout << "correspondence: " << segre::to_string(r.status) << "\n"
              << "clusters: left " << r.left_clusters << ", right " << r.right_clusters
              << ", glued " << r.glued_clusters << "\n"
              << "variables identified: " << (r.variables_identified ? "yes" : "no") << "\n"
              << "clusters bijective: " << (r.clusters_bijective ? "yes" : "no") << "\n";
    for (const auto& msg : r.problems) std::cout << "problem: " << msg << "\n";
  }
  switch (r.status) {
    case segre::CheckStatus::success: return kOk;
    case segre::CheckStatus::failure: return kVerification;
    case segre::CheckStatus::inconclusive: return kInconclusive;
  }
  return kError;
}

int run_enumerate(const std::string& path, const segre::ExploreBounds& b, bool graph,
                  bool json) {
  auto s = load(path).seed;
  auto g = segre::enumerate(s, b);
  if (json) {
    std::cout << segre::to_json(g, graph).dump(2) << "\n";
  } else {
    std::cout << "status: " << segre::to_string(g.status) << "\n"
              << "nodes: " << g.nodes.size() << "\n";
    if (g.exhausted())
      std::cout << "K: " << segre::cluster_count(g) << "\n"
                << "κ: " << segre::kappa(g) << "\n";
    std::cout << "bounds: max_nodes=" << b.max_nodes << ", max_depth=" << b.max_depth << "\n";
    if (graph) {
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        std::vector<std::string> vals;
        for (const auto& v : g.nodes[i].key.values) vals.push_back(v.to_string());
        std::cout << "node " << i << " (depth " << g.nodes[i].depth << "): {"
                  << join(vals, ", ") << "}\n";
      }
      for (const auto& e : g.edges)
        std::cout << "edge " << e.from << " -" << g.nodes[e.from].seed.name(e.slot) << "-> "
                  << e.to << "\n";
    }
  }
  return g.exhausted() ? kOk : kInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded cluster algebra gluing and Segre product toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  auto* mutate = app.add_subcommand("mutate", "mutate a seed along a vertex sequence");
  std::string mutate_path;
  std::vector<std::string> vertices;
  mutate->add_option("seed", mutate_path, "seed document")->required();
  mutate->add_option("vertex", vertices, "vertices, applied left to right");

  auto* glue_cmd = app.add_subcommand("glue", "glue two seeds at frozen vertices");
  PairArgs glue_args;
  glue_args.add(glue_cmd);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "breadth-first exchange graph");
  std::string enum_path;
  segre::ExploreBounds eb;
  bool strict = false;
  bool graph = false;
  enumerate_cmd->add_option("seed", enum_path, "seed document")->required();
  enumerate_cmd->add_option("--max-nodes", eb.max_nodes)->capture_default_str();
  enumerate_cmd->add_option("--max-depth", eb.max_depth)->capture_default_str();
  enumerate_cmd->add_option("--threads", eb.threads)->capture_default_str();
  enumerate_cmd->add_flag("--strict", strict, "key clusters by values and matrix");
  enumerate_cmd->add_flag("--graph", graph, "include nodes and edges");

  auto* verify = app.add_subcommand("verify", "run a verification");
  verify->require_subcommand(1);
  verify->fallthrough();

  auto* theorem = verify->add_subcommand("theorem", "Segre map on every reachable cluster");
  PairArgs theorem_args;
  theorem_args.add(theorem);
  std::size_t depth = 4;
  long long force_degree = 0;
  std::string map = "phi";
  std::size_t witnesses = 1;
  theorem->add_option("--depth", depth)->capture_default_str();
  theorem->add_option("--force-degree", force_degree,
                      "regrade so the glued frozens have this degree and skip the "
                      "degree-1 hypothesis");
  theorem->add_option("--map", map)->check(CLI::IsMember({"phi", "naive"}))
      ->capture_default_str();
  theorem->add_option("--witnesses", witnesses, "stop after this many mismatches")
      ->capture_default_str();

  segre::PairBounds pb;
  auto add_pair_bounds = [&pb](CLI::App* cmd) {
    cmd->add_option("--max-nodes", pb.max_nodes, "per factor graph")->capture_default_str();
    cmd->add_option("--max-depth", pb.max_depth, "per factor graph")->capture_default_str();
    cmd->add_option("--threads", pb.threads)->capture_default_str();
  };
  auto* corollary = verify->add_subcommand("corollary", "finite type and counting identities");
  PairArgs corollary_args;
  corollary_args.add(corollary);
  add_pair_bounds(corollary);
  auto* correspondence =
      verify->add_subcommand("correspondence", "variable and cluster correspondence");
  PairArgs correspondence_args;
  correspondence_args.add(correspondence);
  add_pair_bounds(correspondence);

  auto* serve = app.add_subcommand("serve", "start the session service");
  int port = 8080;
  std::string host = "127.0.0.1";
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mutate) {
      auto doc = load(mutate_path);
      doc.seed = segre::apply_sequence(doc.seed, std::span<const std::string>(vertices));
      std::cout << segre::render_document(doc);
      return kOk;
    }
    if (*glue_cmd) {
      auto s1 = load(glue_args.left).seed;
      auto s2 = load(glue_args.right).seed;
      std::cout << segre::render_glued(segre::glue(s1, glue_args.x, s2, glue_args.y));
      return kOk;
    }
    if (*enumerate_cmd) {
      eb.mode = strict ? segre::KeyMode::strict : segre::KeyMode::values;
      return run_enumerate(enum_path, eb, graph, json);
    }
    if (*theorem) return run_theorem(theorem_args, depth, force_degree, map, witnesses, json);
    if (*corollary) return run_corollary(corollary_args, pb, json);
    if (*correspondence) return run_correspondence(correspondence_args, pb, json);
    if (*serve) {
      segre::service::Service service;
      httplib::Server server;
      segre::service::bind_routes(server, service);
      std::cerr << "listening on " << host << ":" << port << "\n";
      return server.listen(host, port) ? kOk : kError;
    }
  } catch (const segre::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const segre::SchemaError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ReadError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const segre::InvalidSeed& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const segre::DegreeMismatch& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const segre::FrozenMutation& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const segre::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
