#pragma once

#include <memory>
#include <string>

namespace nf {

struct HttpReply {
  int status = 200;
  std::string body;  // JSON
};

// Routes one request without a socket; the server below is a thin shell around it.
HttpReply handle_request(const std::string& method, const std::string& path, const std::string& query,
                         const std::string& body);

class Server {
 public:
  Server();
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // port 0 picks a free port; returns the bound port
  int start(const std::string& host = "127.0.0.1", int port = 0);
  int port() const;
  void stop();
  void wait();  // blocks until stop() is called from elsewhere

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace nf
