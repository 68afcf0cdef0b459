#pragma once

// Minimal programmable completions endpoint for client tests: queue up
// responses (status + body or a canned completion text) and inspect the
// requests that arrived.

#include <atomic>
#include <deque>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"

namespace lsa::test {

class StubCompletionServer {
 public:
  struct Canned {
    int status = 200;
    std::string body;
    std::string retry_after;  // optional Retry-After header value
  };

  struct Seen {
    std::string body;
    std::string authorization;
    std::string content_type;
    std::string path;
  };

  StubCompletionServer() {
    server_.Post(R"(.*/completions)", [this](const httplib::Request& req, httplib::Response& res) {
      Canned canned = pop();
      {
        std::lock_guard<std::mutex> lock(mutex_);
        requests_.push_back(Seen{req.body, req.get_header_value("Authorization"),
                                 req.get_header_value("Content-Type"), req.path});
      }
      if (!canned.retry_after.empty()) res.set_header("Retry-After", canned.retry_after);
      res.status = canned.status;
      res.set_content(canned.body, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubCompletionServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  /// Next responses to serve, consumed in order; the last one repeats.
  void enqueue(Canned canned) {
    std::lock_guard<std::mutex> lock(mutex_);
    queue_.push_back(std::move(canned));
  }

  /// Convenience: a 200 whose completion text is the given string.
  void enqueue_text(const std::string& text) {
    nlohmann::json body;
    body["choices"] = {{{"text", text}}};
    enqueue({200, body.dump(), ""});
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

  std::vector<Seen> requests() {
    std::lock_guard<std::mutex> lock(mutex_);
    return requests_;
  }

  int request_count() {
    std::lock_guard<std::mutex> lock(mutex_);
    return static_cast<int>(requests_.size());
  }

 private:
  Canned pop() {
    std::lock_guard<std::mutex> lock(mutex_);
    if (queue_.empty()) return Canned{500, "{\"error\":\"stub queue empty\"}", ""};
    Canned front = queue_.front();
    if (queue_.size() > 1) queue_.pop_front();
    return front;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mutex_;
  std::deque<Canned> queue_;
  std::vector<Seen> requests_;
};

}  // namespace lsa::test
