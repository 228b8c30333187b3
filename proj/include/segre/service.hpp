#pragma once

// Session-oriented request/response API over the engine. Transport-free:
// http.hpp binds it to an HTTP server.
//
//   POST /sessions                  {"seeds": [doc] | [doc, doc], "glue": {"left", "right"}}
//   GET  /sessions/{id}
//   POST /sessions/{id}/mutate      {"vertex": name}
//   POST /sessions/{id}/undo
//   POST /sessions/{id}/verify      {"kind": theorem|corollary|correspondence|enumerate,
//                                    "depth": n, "max_nodes": n}
//   POST /glue-preview              {"left_session", "right_session", "x", "y"}

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "segre/explorer.hpp"
#include "segre/glue.hpp"
#include "segre/io.hpp"
#include "segre/seed.hpp"
#include "segre/theorem.hpp"

namespace segre::service {

struct Request {
  std::string method;
  std::string path;
  std::string body;
};

struct Response {
  int status = 200;
  Json body = Json::object();
};

struct Limits {
  std::size_t max_depth = 6;
  std::size_t max_nodes = 10000;
};

struct Session {
  std::string id;
  std::vector<SeedDocument> created_from;
  std::optional<GluedSeed> glued;  // set when the session was created by gluing
  Seed initial;
  Seed current;
  std::vector<std::string> history;
  std::mutex mutex;

  Session(std::string id, std::vector<SeedDocument> docs, std::optional<GluedSeed> g, Seed s)
      : id(std::move(id)), created_from(std::move(docs)), glued(std::move(g)),
        initial(s), current(std::move(s)) {}

  Seed replay() const { return apply_sequence(initial, history); }
};

/// Client-side error carried back as a JSON payload.
struct Failure {
  int status;
  Json body;
};

inline Json state_json(const Session& s) {
  const Seed& seed = s.current;
  Json vertices = Json::array();
  for (std::uint32_t i = 0; i < seed.size(); ++i) {
    VariableId v{i};
    vertices.push_back({{"name", seed.name(v)},
                        {"frozen", seed.is_frozen(v)},
                        {"degree", seed.degree(v)},
                        {"value", seed.value(v).to_string()}});
  }
  Json arrows = Json::array();
  for (const auto& a : matrix_to_quiver(seed.matrix()))
    arrows.push_back(
        {{"from", seed.name(a.from)}, {"to", seed.name(a.to)}, {"mult", a.multiplicity}});
  Json out;
  out["session"] = s.id;
  out["vertices"] = std::move(vertices);
  out["arrows"] = std::move(arrows);
  out["history"] = s.history;
  out["glue"] = s.glued ? glued_metadata(*s.glued)["glued"] : Json(nullptr);
  return out;
}

class Service {
 public:
  explicit Service(Limits limits = {}, std::uint64_t token_seed = std::random_device{}())
      : limits_(limits), tokens_(token_seed) {}

  Response handle(const Request& req) {
    try {
      return dispatch(req);
    } catch (const Failure& f) {
      return {f.status, f.body};
    } catch (const nlohmann::json::exception& e) {
      return error(400, std::string("malformed request: ") + e.what());
    } catch (const ParseError& e) {
      return error(400, e.what());
    } catch (const SchemaError& e) {
      return error(400, e.what());
    } catch (const InvalidSeed& e) {
      Response r = error(422, "invalid seed");
      r.body["violations"] = e.violations();
      return r;
    } catch (const DegreeMismatch& e) {
      return {422, {{"reason", "degree mismatch"}, {"left", e.left()}, {"right", e.right()}}};
    } catch (const Error& e) {
      return error(400, e.what());
    }
  }

  std::size_t session_count() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
  }

  std::shared_ptr<Session> session(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end())
      throw Failure{404, {{"reason", "unknown session"}, {"session", id}}};
    return it->second;
  }

 private:
  static Response error(int status, std::string reason) {
    return {status, {{"reason", std::move(reason)}}};
  }

  static std::vector<std::string> split(std::string_view path) {
    std::vector<std::string> parts;
    std::stringstream ss{std::string(path)};
    for (std::string p; std::getline(ss, p, '/');)
      if (!p.empty()) parts.push_back(p);
    return parts;
  }

  static Json body_json(const Request& req) {
    if (req.body.empty()) return Json::object();
    return Json::parse(req.body);
  }

  Response dispatch(const Request& req) {
    auto parts = split(req.path);
    const bool post = req.method == "POST";
    if (parts.size() == 1 && parts[0] == "sessions" && post) return create(body_json(req));
    if (parts.size() == 1 && parts[0] == "glue-preview" && post)
      return glue_preview(body_json(req));
    if (parts.size() == 2 && parts[0] == "sessions" && req.method == "GET") {
      auto s = session(parts[1]);
      std::lock_guard lock(s->mutex);
      return {200, state_json(*s)};
    }
    if (parts.size() == 3 && parts[0] == "sessions" && post) {
      auto s = session(parts[1]);
      std::lock_guard lock(s->mutex);
      if (parts[2] == "mutate") return mutate(*s, body_json(req));
      if (parts[2] == "undo") return undo(*s);
      if (parts[2] == "verify") return verify(*s, body_json(req));
    }
    return error(404, "no such endpoint: " + req.method + " " + req.path);
  }

  std::string next_token() {
    std::ostringstream os;
    os << std::hex << tokens_();
    return os.str();
  }

  std::shared_ptr<Session> store(std::vector<SeedDocument> docs, std::optional<GluedSeed> g,
                                 Seed s) {
    std::lock_guard lock(mutex_);
    std::string id = next_token();
    while (sessions_.count(id)) id = next_token();
    auto session = std::make_shared<Session>(id, std::move(docs), std::move(g), std::move(s));
    sessions_.emplace(id, session);
    return session;
  }

  Response create(const Json& body) {
    const auto& seeds = body.at("seeds");
    if (!seeds.is_array() || seeds.empty() || seeds.size() > 2)
      return error(400, "\"seeds\" must hold one or two seed documents");
    std::vector<SeedDocument> docs;
    for (const auto& d : seeds) docs.push_back(seed_from_json(d));
    if (docs.size() == 1) {
      Seed s = docs[0].seed;
      auto session = store(std::move(docs), std::nullopt, std::move(s));
      return {201, state_json(*session)};
    }
    if (!body.contains("glue")) return error(400, "two seeds require a \"glue\" pair");
    const auto& pair = body.at("glue");
    auto g = glue_named(docs[0].seed, pair.at("left").get<std::string>(), docs[1].seed,
                        pair.at("right").get<std::string>());
    Seed s = g.seed;
    auto session = store(std::move(docs), std::move(g), std::move(s));
    return {201, state_json(*session)};
  }

  static GluedSeed glue_named(const Seed& s1, const std::string& x, const Seed& s2,
                              const std::string& y) {
    auto xi = s1.universe()->find(x);
    auto yi = s2.universe()->find(y);
    if (!xi || !yi) throw Failure{400, {{"reason", "unknown glue vertex"}}};
    if (!s1.is_frozen(*xi) || !s2.is_frozen(*yi))
      throw Failure{409, {{"reason", "glue vertices must be frozen"}}};
    return glue(s1, *xi, s2, *yi);
  }

  Response mutate(Session& s, const Json& body) {
    auto vertex = body.at("vertex").get<std::string>();
    auto id = s.current.universe()->find(vertex);
    if (!id) return {400, {{"reason", "unknown vertex"}, {"vertex", vertex}}};
    if (s.current.is_frozen(*id))
      return {409,
              {{"reason", "frozen vertices cannot be mutated"}, {"vertex", vertex}}};
    s.current = mutate_seed(s.current, *id);
    s.history.push_back(vertex);
    return {200, state_json(s)};
  }

  Response undo(Session& s) {
    if (s.history.empty()) return error(409, "nothing to undo");
    s.history.pop_back();
    s.current = s.replay();
    return {200, state_json(s)};
  }

  Response glue_preview(const Json& body) {
    auto left = session(body.at("left_session").get<std::string>());
    auto right = session(body.at("right_session").get<std::string>());
    Seed s1 = snapshot(*left);
    Seed s2 = snapshot(*right);
    auto x = body.at("x").get<std::string>();
    auto y = body.at("y").get<std::string>();
    auto g = glue_named(s1, x, s2, y);
    Session preview("preview", {}, g, g.seed);
    Json state = state_json(preview);
    state.erase("session");
    return {200, state};
  }

  static Seed snapshot(Session& s) {
    std::lock_guard lock(s.mutex);
    return s.current;
  }

  Response verify(Session& s, const Json& body) {
    auto kind = body.at("kind").get<std::string>();
    std::size_t depth = std::min(body.value("depth", limits_.max_depth), limits_.max_depth);
    std::size_t nodes = std::min(body.value("max_nodes", limits_.max_nodes), limits_.max_nodes);
    if (kind == "enumerate") {
      ExploreBounds b{nodes, depth, 1, KeyMode::values};
      return {200, to_json(enumerate(s.current, b))};
    }
    if (!s.glued) return error(409, "verification of " + kind + " needs a glued session");
    const Seed& s1 = s.created_from[0].seed;
    const Seed& s2 = s.created_from[1].seed;
    if (kind == "theorem") {
      TheoremOptions opts;
      opts.depth = depth;
      opts.map.force = body.value("force", false);
      return {200, to_json(verify_theorem(*s.glued, s1, s2, opts))};
    }
    PairBounds pb{nodes, depth, 1, nodes};
    if (kind == "corollary") return {200, to_json(verify_corollary(s1, s2, *s.glued, pb))};
    if (kind == "correspondence")
      return {200, to_json(verify_correspondence(s1, s2, *s.glued, pb))};
    return error(400, "unknown verification kind '" + kind + "'");
  }

  Limits limits_;
  mutable std::mutex mutex_;
  std::mt19937_64 tokens_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace segre::service
