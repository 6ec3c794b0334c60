#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "scimap/pipeline.hpp"

namespace scimap {

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// State behind serve mode. Readers always see a complete snapshot; a
/// rebuild computes a new snapshot off to the side and swaps it in.
/// At most one rebuild runs at a time.
class MapService {
 public:
  /// Builds the initial map; pipeline errors propagate.
  MapService(std::vector<BibRecord> corpus, Thesaurus thesaurus, PipelineConfig config);

  Response get_map() const;
  Response get_config() const;
  Response get_overlay() const;
  Response get_density() const;
  Response get_thesaurus() const;
  /// Body in thesaurus TSV schema. 400 when any rule is invalid against the
  /// current rule set; nothing is added in that case.
  Response post_thesaurus(std::string_view body);
  /// 409 while another rebuild is running.
  Response post_rebuild();
  /// `id` as it appears in the URL; 404 for unknown or malformed ids.
  Response get_neighbors(std::string_view id) const;

 private:
  struct Snapshot;
  std::shared_ptr<const Snapshot> snapshot() const;
  static std::shared_ptr<const Snapshot> build(const std::vector<BibRecord>& corpus,
                                               const Thesaurus& thesaurus,
                                               const PipelineConfig& config);

  const std::vector<BibRecord> corpus_;
  const PipelineConfig config_;

  mutable std::mutex state_mutex_;  // guards thesaurus_ and snapshot_
  Thesaurus thesaurus_;
  std::shared_ptr<const Snapshot> snapshot_;

  std::mutex rebuild_mutex_;
};

/// HTTP front end for a MapService. Binds loopback by default.
class HttpServer {
 public:
  explicit HttpServer(MapService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds and starts serving on a background thread. Port 0 picks a free
  /// port. Returns the bound port; throws Error{Io} when binding fails.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  /// Serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace scimap
