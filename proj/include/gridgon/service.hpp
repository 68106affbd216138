#pragma once

#include <memory>
#include <string>

namespace gridgon {

struct service_config {
  std::string host = "127.0.0.1";
  int port = 8080;
  int solve_cap = 5;
  int workers = 2;
};

// HTTP front end over the library plus an asynchronous job queue for solve
// and improve requests.
class service {
 public:
  explicit service(service_config config = {});
  ~service();
  service(const service&) = delete;
  service& operator=(const service&) = delete;

  // Blocks until stop(); false if the address cannot be bound.
  bool listen();
  // Binds config.host on a free port and returns it; then call listen_bound().
  int bind_any_port();
  bool listen_bound();
  void stop();
  bool running() const;

 private:
  struct impl;
  std::unique_ptr<impl> p_;
};

}  // namespace gridgon
