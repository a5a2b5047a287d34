#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <thread>

#include "plategate/gateway/service.hpp"

namespace httplib {
class Server;
}

namespace plategate::gateway {

class BindFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// HTTP/1.1 front end over a Gateway.
class HttpServer {
 public:
  HttpServer(Gateway& gateway, int threads = 8);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds (port 0 picks a free one) and serves on a background thread.
  /// Throws BindFailure.
  int start(const std::string& host, int port);
  /// Binds and serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();
  int port() const noexcept { return port_; }

 private:
  void bind(const std::string& host, int port);

  Gateway& gateway_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace plategate::gateway
