#include "nonfield/service.hpp"

#include <chrono>
#include <regex>
#include <thread>

#include "httplib.h"
#include "nonfield/documents.hpp"
#include "nonfield/errors.hpp"

namespace nf {

namespace {

using json = nlohmann::json;

HttpReply error_reply(int status, ErrorCode code, const std::string& message) {
  json b = {{"schema_version", doc::kSchemaVersion}, {"error", {{"code", error_code_name(code)}, {"message", message}}}};
  return {status, b.dump()};
}

// GET parameters are range checks (422); POST bodies are schema checks (400)
int status_for(ErrorCode c, bool post) {
  switch (c) {
    case ErrorCode::not_found: return 404;
    case ErrorCode::invariant: return 409;
    case ErrorCode::parse: return 400;
    case ErrorCode::invalid_argument: return post ? 400 : 422;
    case ErrorCode::domain:
    case ErrorCode::convergence: return 422;
    default: return 500;
  }
}

std::map<std::string, std::string> parse_query(const std::string& q) {
  std::map<std::string, std::string> out;
  httplib::Params params;
  httplib::detail::parse_query_text(q, params);
  for (const auto& [k, v] : params) out[k] = v;
  return out;
}

double query_number(const std::map<std::string, std::string>& q, const std::string& key) {
  const std::string& s = q.at(key);
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InvalidArgument("query parameter '" + key + "' must be a number, got '" + s + "'");
  return v;
}

int query_int(const std::map<std::string, std::string>& q, const std::string& key) {
  const std::string& s = q.at(key);
  if (!std::regex_match(s, std::regex(R"(-?\d{1,6})")))
    throw InvalidArgument("query parameter '" + key + "' must be an integer, got '" + s + "'");
  return std::stoi(s);
}

HttpReply route(const std::string& method, const std::string& path, const std::string& query, const std::string& body) {
  static const std::regex levels(R"(/api/nuclides/([^/]+)/([^/]+)/levels)");
  static const std::regex reference(R"(/api/reference/([A-Za-z0-9_]+))");
  static const std::regex spectrum(R"(/api/atomic/([A-Za-z0-9_]+)/spectrum)");
  std::smatch m;
  const auto q = parse_query(query);

  if (method == "GET" && std::regex_match(path, m, levels)) {
    static const std::regex whole(R"(\d{1,3})");
    const std::string zs = m[1], as = m[2];
    if (!std::regex_match(zs, whole) || !std::regex_match(as, whole))
      throw NotFound("unknown nuclide '" + zs + "/" + as + "'");
    const int z = std::stoi(zs), a = std::stoi(as);
    if (z < 1 || z >= a) throw NotFound("unknown nuclide Z=" + zs + ", A=" + as);
    const std::string cal = q.count("calibration") ? q.at("calibration") : "base";
    if (cal != "base" && cal != "so") throw NotFound("unknown calibration '" + cal + "'");
    json args = {{"z", z}, {"a", a}, {"calibration", cal}};
    if (q.count("maxN")) args["max_n"] = query_int(q, "maxN");
    if (q.count("maxL")) args["max_l"] = query_int(q, "maxL");
    return {200, doc::dispatch("levels", args).dump()};
  }
  if (method == "GET" && std::regex_match(path, m, reference)) {
    return {200, doc::dispatch("reference", {{"name", m[1].str()}}).dump()};
  }
  if (method == "GET" && std::regex_match(path, m, spectrum)) {
    const std::string system = m[1];
    if (system != "heII" && system != "hydrogen") throw NotFound("unknown atomic system '" + system + "'");
    json args = {{"system", system}};
    if (q.count("d")) args["d"] = query_number(q, "d");
    if (q.count("g")) args["g"] = query_number(q, "g");
    if (q.count("n_max")) args["n_max"] = query_int(q, "n_max");
    return {200, doc::dispatch("atomic_spectrum", args).dump()};
  }
  if (method == "POST" && (path == "/api/configuration" || path == "/api/excitations")) {
    json args;
    try {
      args = json::parse(body);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("request body is not JSON: ") + e.what());
    }
    if (!args.is_object()) throw ParseError("request body must be a JSON object");
    return {200, doc::dispatch(path == "/api/configuration" ? "configuration" : "excitations", args).dump()};
  }
  throw NotFound("no route for " + method + " " + path);
}

}  // namespace

HttpReply handle_request(const std::string& method, const std::string& path, const std::string& query,
                         const std::string& body) {
  const bool post = method == "POST";
  try {
    return route(method, path, query, body);
  } catch (const Error& e) {
    return error_reply(status_for(e.code(), post), e.code(), e.what());
  } catch (const std::exception& e) {
    return error_reply(500, ErrorCode::internal, e.what());
  }
}

struct Server::Impl {
  httplib::Server http;
  std::thread worker;
  int port = -1;
};

Server::Server() : impl_(std::make_unique<Impl>()) {
  auto serve = [](const httplib::Request& req, httplib::Response& res) {
    std::string query;
    for (const auto& [k, v] : req.params) {
      if (!query.empty()) query += '&';
      query += httplib::detail::encode_query_param(k) + "=" + httplib::detail::encode_query_param(v);
    }
    const HttpReply r = handle_request(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  };
  impl_->http.Get(R"(/api/.*)", serve);
  impl_->http.Post(R"(/api/.*)", serve);
}

Server::~Server() { stop(); }

int Server::start(const std::string& host, int port) {
  if (impl_->worker.joinable()) throw InvalidArgument("server already running");
  if (port < 0 || port > 65535) throw InvalidArgument("port must lie in [0, 65535]");
  const int bound = port == 0 ? impl_->http.bind_to_any_port(host) : (impl_->http.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::io, "cannot bind " + host + ":" + std::to_string(port));
  impl_->port = bound;
  impl_->worker = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
  return bound;
}

int Server::port() const { return impl_->port; }

void Server::stop() {
  if (impl_->worker.joinable()) {
    impl_->http.stop();
    impl_->worker.join();
  }
}

void Server::wait() {
  while (impl_->worker.joinable() && impl_->http.is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(50));
}

}  // namespace nf
