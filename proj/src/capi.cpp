#include "nonfield.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "nonfield/atomic.hpp"
#include "nonfield/calibration.hpp"
#include "nonfield/documents.hpp"
#include "nonfield/errors.hpp"
#include "nonfield/nuclei.hpp"
#include "nonfield/service.hpp"
#include "nonfield/solvers.hpp"

struct nf_context {
  std::string last_error;
  int last_pass = -1;
};

struct nf_server {
  nf::Server server;
};

namespace {

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
nf_status guarded(nf_context* ctx, F&& body) {
  if (!ctx) return NF_NULL_POINTER;
  try {
    body();
    ctx->last_error.clear();
    return NF_OK;
  } catch (const nf::Error& e) {
    ctx->last_error = e.what();
    return static_cast<nf_status>(e.code());
  } catch (const nlohmann::json::exception& e) {
    ctx->last_error = e.what();
    return NF_PARSE_ERROR;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return NF_INTERNAL_ERROR;
  }
}

}  // namespace

extern "C" {

const char* nf_version(void) { return "1.0.0"; }

const char* nf_status_name(nf_status s) {
  if (s == NF_NULL_POINTER) return "null_pointer";
  return nf::error_code_name(static_cast<nf::ErrorCode>(s));
}

nf_context* nf_context_create(void) { return new (std::nothrow) nf_context(); }

void nf_context_destroy(nf_context* ctx) { delete ctx; }

const char* nf_last_error(const nf_context* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

int nf_last_pass(const nf_context* ctx) { return ctx ? ctx->last_pass : -1; }

nf_status nf_call(nf_context* ctx, const char* op, const char* args_json, const char* format, char** out) {
  if (!out) return NF_NULL_POINTER;
  *out = nullptr;
  return guarded(ctx, [&] {
    ctx->last_pass = -1;
    if (!op) throw nf::InvalidArgument("operation name is required");
    nlohmann::json args = nlohmann::json::object();
    if (args_json && *args_json) {
      try {
        args = nlohmann::json::parse(args_json);
      } catch (const nlohmann::json::parse_error& e) {
        throw nf::ParseError(std::string("arguments are not JSON: ") + e.what());
      }
    }
    const nlohmann::json d = nf::doc::dispatch(op, args);
    const std::string text = nf::doc::render(d, format ? format : "json");
    if (d.contains("pass") && d["pass"].is_boolean()) ctx->last_pass = d["pass"].get<bool>() ? 1 : 0;
    *out = dup_string(text);
    if (!*out) throw nf::Error(nf::ErrorCode::internal, "out of memory");
  });
}

void nf_free_string(char* s) { std::free(s); }

nf_status nf_operations(char** out) {
  if (!out) return NF_NULL_POINTER;
  std::string s;
  for (const auto& n : nf::doc::operations()) s += n + "\n";
  *out = dup_string(s);
  return *out ? NF_OK : NF_INTERNAL_ERROR;
}

nf_status nf_atomic_transition(nf_context* ctx, const char* system, int n, int l, int two_j, double d, double g,
                               double* out_ev) {
  if (!out_ev || !system) return NF_NULL_POINTER;
  return guarded(ctx, [&] {
    nf::AtomicModelParams p = nf::atomic_params(system);
    p.d = d;
    p.g = g;
    *out_ev = nf::transition_energy(p, nf::QuantumState::make(n - (two_j + 1) / 2, l, two_j));
  });
}

nf_status nf_pair_energy(nf_context* ctx, int z, int a, const char* calibration, int N, int l, int sign,
                         double* out_mev) {
  if (!out_mev || !calibration) return NF_NULL_POINTER;
  return guarded(ctx, [&] {
    const nf::PionicField f = nf::make_field(z, a, nf::calibration_by_tag(calibration));
    const nf::Sign s = sign > 0 ? nf::Sign::plus : sign < 0 ? nf::Sign::minus : nf::Sign::none;
    *out_mev = nf::pair_energy(f, nf::ShellState{N, l, s});
  });
}

nf_status nf_coherent_roots(nf_context* ctx, double k, int count, double* roots, size_t capacity) {
  if (!roots) return NF_NULL_POINTER;
  return guarded(ctx, [&] {
    if (count < 0 || static_cast<size_t>(count) > capacity) throw nf::InvalidArgument("root buffer too small");
    const auto r = nf::solve_coherent_roots(k, count);
    for (size_t i = 0; i < r.roots.size(); ++i) roots[i] = r.roots[i];
  });
}

nf_status nf_chain_length(nf_context* ctx, int p, double k1, int* out_a) {
  if (!out_a) return NF_NULL_POINTER;
  return guarded(ctx, [&] {
    const auto n = nf::chain_length(p, k1);
    *out_a = n ? *n : -1;
  });
}

nf_status nf_server_start(nf_context* ctx, const char* host, int port, nf_server** out) {
  if (!out) return NF_NULL_POINTER;
  *out = nullptr;
  return guarded(ctx, [&] {
    auto s = std::make_unique<nf_server>();
    s->server.start(host ? host : "127.0.0.1", port);
    *out = s.release();
  });
}

int nf_server_port(const nf_server* s) { return s ? s->server.port() : -1; }

void nf_server_wait(nf_server* s) {
  if (s) s->server.wait();
}

void nf_server_stop(nf_server* s) {
  if (!s) return;
  s->server.stop();
  delete s;
}

}  // extern "C"
