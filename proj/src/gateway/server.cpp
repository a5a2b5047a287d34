#include "plategate/gateway/server.hpp"

#include <httplib.h>

namespace plategate::gateway {

namespace {

void send(httplib::Response& res, const Reply& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json; charset=utf-8");
}

std::optional<std::string> query(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  return req.get_param_value(key);
}

}  // namespace

HttpServer::HttpServer(Gateway& gateway, int threads) : gateway_(gateway), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  s.new_task_queue = [threads] { return new httplib::ThreadPool(static_cast<std::size_t>(threads)); };
  s.set_payload_max_length(1 << 20);
  // No SO_REUSEPORT: a second gateway on the same port must fail to bind
  // instead of silently sharing traffic.
  s.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });

  s.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) { send(res, gateway_.health()); });
  s.Get("/v1/schedule",
        [this](const httplib::Request&, httplib::Response& res) { send(res, gateway_.get_schedule()); });
  s.Post("/v1/events",
         [this](const httplib::Request& req, httplib::Response& res) { send(res, gateway_.post_event(req.body)); });
  s.Post("/v1/registrations", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, gateway_.post_registration(req.body));
  });
  s.Get("/v1/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, gateway_.get_sessions(query(req, "state")));
  });
  s.Get(R"(/v1/users/([^/]+)/wallet)", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, gateway_.get_wallet(req.matches[1]));
  });
  s.Post(R"(/v1/users/([^/]+)/wallet/topup)", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, gateway_.post_topup(req.matches[1], req.body));
  });
  s.Get(R"(/v1/users/([^/]+)/trips)", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, gateway_.get_trips(req.matches[1]));
  });
  s.Get(R"(/v1/users/([^/]+)/notifications)", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, gateway_.get_notifications(req.matches[1], query(req, "since")));
  });
  s.Get("/v1/reviews", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, gateway_.get_reviews(query(req, "status")));
  });
  s.Post(R"(/v1/reviews/([^/]+)/(approve|reject))", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, gateway_.post_review(req.matches[1], req.matches[2], req.body));
  });
  s.Get("/v1/alerts", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, gateway_.get_alerts(query(req, "since")));
  });

  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) send(res, error_reply(res.status, res.status == 404 ? "not_found" : "http_error"));
  });
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "unexpected failure";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    send(res, error_reply(500, "internal", what));
  });
}

HttpServer::~HttpServer() { stop(); }

void HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
    if (port_ <= 0) throw BindFailure("cannot bind " + host + " to any port");
  } else {
    if (!server_->bind_to_port(host, port)) throw BindFailure("cannot bind " + host + ":" + std::to_string(port));
    port_ = port;
  }
}

int HttpServer::start(const std::string& host, int port) {
  bind(host, port);
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void HttpServer::run(const std::string& host, int port) {
  bind(host, port);
  server_->listen_after_bind();
}

void HttpServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace plategate::gateway
