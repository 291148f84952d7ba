#pragma once

// Session storage and the JSON-over-HTTP API.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "tropahp/io.hpp"

namespace httplib {
class Server;
}

namespace tropahp::service {

struct Session {
  std::string id;
  std::int64_t version = 0;
  std::string updated_at;  // ISO 8601, UTC
  io::Json problem;        // problem document as stored
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& id)
      : Error(ErrorCode::InvalidArgument, "unknown session '" + id + "'") {}
};

class Conflict : public Error {
 public:
  explicit Conflict(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

// One JSON file per session under `root`. Writes to a session are
// serialized; reads may run concurrently.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path root);

  Session create(const io::Json& problem, const Tolerance& tol = {});
  Session get(const std::string& id) const;
  // Replaces the document when `expected_version` is current; otherwise
  // throws Conflict. Reciprocal cells of edited entries are filled in.
  Session replace(const std::string& id, std::int64_t expected_version, io::Json problem,
                  const Tolerance& tol = {});

  const std::filesystem::path& root() const { return root_; }

 private:
  std::shared_mutex& lock_for(const std::string& id) const;
  std::filesystem::path file_for(const std::string& id) const;
  void write(const Session& s) const;
  std::optional<Session> read(const std::string& id) const;

  std::filesystem::path root_;
  mutable std::mutex table_mutex_;
  mutable std::map<std::string, std::unique_ptr<std::shared_mutex>> locks_;
};

// For every off-diagonal cell changed from `before` to `after` whose mirror
// was left alone, sets the mirror to the reciprocal. Returns the new document.
io::Json complete_reciprocals(const io::Json& before, io::Json after);

// Reciprocal of an entry, keeping rational strings rational ("1/7" -> "7").
io::Json reciprocal_entry(const io::Json& entry);

bool valid_session_id(const std::string& id);

class Server {
 public:
  explicit Server(std::filesystem::path data_dir);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds to host:port (port 0 picks a free one) and returns the port.
  int bind(const std::string& host, int port);
  void listen();  // blocks until stop()
  void stop();

  SessionStore& store() { return store_; }

 private:
  void routes();

  SessionStore store_;
  std::unique_ptr<httplib::Server> http_;
};

}  // namespace tropahp::service
