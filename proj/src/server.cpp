#include "scimap/server.hpp"

#include <charconv>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "scimap/error.hpp"

namespace scimap {

using ordered_json = nlohmann::ordered_json;

struct MapService::Snapshot {
  PipelineResult result;
  std::string map_json;
  std::string overlay_json;
  std::string density_json;
};

namespace {

Response error_response(int status, std::string_view kind, std::string_view message) {
  ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  return {status, "application/json", j.dump()};
}

}  // namespace

std::shared_ptr<const MapService::Snapshot> MapService::build(const std::vector<BibRecord>& corpus,
                                                              const Thesaurus& thesaurus,
                                                              const PipelineConfig& config) {
  auto snap = std::make_shared<Snapshot>();
  snap->result = curation_round(corpus, thesaurus, config);
  const auto& result = snap->result;
  snap->map_json = write_json(result.map);

  ordered_json overlay;
  auto normalized = ordered_json::array();
  for (std::size_t i = 0; i < result.map.nodes.size(); ++i) {
    const auto& v = result.overlay.normalized[i];
    normalized.push_back({{"id", result.map.nodes[i].id},
                          {"normalized", v ? ordered_json(round_significant(*v)) : nullptr}});
  }
  overlay["nodes"] = std::move(normalized);
  snap->overlay_json = overlay.dump();

  const auto& positions = result.layout.positions;
  std::vector<double> weights;
  for (const auto& node : result.map.nodes) weights.push_back(static_cast<double>(node.occurrences));
  std::ostringstream density;
  write_density_json(density, density_field(positions, weights, 100, default_bandwidth(positions)));
  snap->density_json = density.str();
  return snap;
}

MapService::MapService(std::vector<BibRecord> corpus, Thesaurus thesaurus, PipelineConfig config)
    : corpus_(std::move(corpus)), config_(config), thesaurus_(std::move(thesaurus)) {
  snapshot_ = build(corpus_, thesaurus_, config_);
}

std::shared_ptr<const MapService::Snapshot> MapService::snapshot() const {
  std::lock_guard lock(state_mutex_);
  return snapshot_;
}

Response MapService::get_map() const { return {200, "application/json", snapshot()->map_json}; }

Response MapService::get_config() const {
  return {200, "application/json", config_json(config_)};
}

Response MapService::get_overlay() const {
  return {200, "application/json", snapshot()->overlay_json};
}

Response MapService::get_density() const {
  return {200, "application/json", snapshot()->density_json};
}

Response MapService::get_thesaurus() const {
  std::ostringstream out;
  {
    std::lock_guard lock(state_mutex_);
    write_thesaurus(out, thesaurus_);
  }
  return {200, "text/tab-separated-values", out.str()};
}

Response MapService::post_thesaurus(std::string_view body) {
  try {
    const auto rules = parse_thesaurus_rules(body);
    std::lock_guard lock(state_mutex_);
    thesaurus_.add_all(rules);
    ordered_json j;
    j["added"] = rules.size();
    j["rules"] = thesaurus_.size();
    return {200, "application/json", j.dump()};
  } catch (const Error& e) {
    return error_response(400, to_string(e.kind()), e.what());
  }
}

Response MapService::post_rebuild() {
  std::unique_lock rebuild(rebuild_mutex_, std::try_to_lock);
  if (!rebuild.owns_lock()) {
    return error_response(409, "RebuildInProgress", "a rebuild is already running");
  }
  Thesaurus rules;
  {
    std::lock_guard lock(state_mutex_);
    rules = thesaurus_;
  }
  std::shared_ptr<const Snapshot> next;
  try {
    next = build(corpus_, rules, config_);
  } catch (const Error& e) {
    return error_response(422, to_string(e.kind()), e.what());
  }
  {
    std::lock_guard lock(state_mutex_);
    snapshot_ = next;
  }
  return {200, "application/json", next->map_json};
}

Response MapService::get_neighbors(std::string_view id_text) const {
  int id = 0;
  const auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
  const auto snap = snapshot();
  const auto& net = snap->result.network;
  if (ec != std::errc{} || ptr != id_text.data() + id_text.size() || id < 1 ||
      static_cast<std::size_t>(id) > net.size()) {
    return error_response(404, "UnknownNode", "no node with id '" + std::string(id_text) + "'");
  }
  const auto index = static_cast<std::size_t>(id - 1);
  ordered_json j;
  j["id"] = id;
  j["label"] = net.nodes()[index].label;
  auto neighbors = ordered_json::array();
  const auto adjacency = net.adjacency();
  for (const auto& [other, strength] : adjacency[index]) {
    neighbors.push_back({{"id", static_cast<int>(other + 1)},
                         {"label", net.nodes()[other].label},
                         {"strength", strength}});
  }
  j["neighbors"] = std::move(neighbors);
  return {200, "application/json", j.dump()};
}

struct HttpServer::Impl {
  MapService& service;
  httplib::Server server;
  std::thread thread;

  explicit Impl(MapService& s) : service(s) {
    auto reply = [](httplib::Response& res, const Response& r) {
      res.status = r.status;
      res.set_content(r.body, r.content_type);
    };
    server.Get("/map", [this, reply](const httplib::Request&, httplib::Response& res) {
      reply(res, service.get_map());
    });
    server.Get("/config", [this, reply](const httplib::Request&, httplib::Response& res) {
      reply(res, service.get_config());
    });
    server.Get("/overlay", [this, reply](const httplib::Request&, httplib::Response& res) {
      reply(res, service.get_overlay());
    });
    server.Get("/density", [this, reply](const httplib::Request&, httplib::Response& res) {
      reply(res, service.get_density());
    });
    server.Get("/thesaurus", [this, reply](const httplib::Request&, httplib::Response& res) {
      reply(res, service.get_thesaurus());
    });
    server.Post("/thesaurus", [this, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, service.post_thesaurus(req.body));
    });
    server.Post("/rebuild", [this, reply](const httplib::Request&, httplib::Response& res) {
      reply(res, service.post_rebuild());
    });
    server.Get(R"(/node/([^/]+)/neighbors)",
               [this, reply](const httplib::Request& req, httplib::Response& res) {
                 reply(res, service.get_neighbors(req.matches[1].str()));
               });
  }
};

HttpServer::HttpServer(MapService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound <= 0) {
    throw Error(ErrorKind::Io, "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::run(const std::string& host, int port) {
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorKind::Io, "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace scimap
