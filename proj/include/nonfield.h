#ifndef NONFIELD_H
#define NONFIELD_H

#include <stddef.h>

#if defined(NF_BUILDING_LIBRARY)
#define NF_API __attribute__((visibility("default")))
#else
#define NF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct nf_context nf_context;
typedef struct nf_server nf_server;

typedef enum nf_status {
  NF_OK = 0,
  NF_INVALID_ARGUMENT = 1,
  NF_DOMAIN_ERROR = 2,
  NF_NOT_FOUND = 3,
  NF_PARSE_ERROR = 4,
  NF_INVARIANT_VIOLATION = 5,
  NF_CONVERGENCE_ERROR = 6,
  NF_IO_ERROR = 7,
  NF_NULL_POINTER = 8,
  NF_INTERNAL_ERROR = 99
} nf_status;

NF_API const char* nf_version(void);
NF_API const char* nf_status_name(nf_status s);

NF_API nf_context* nf_context_create(void);
NF_API void nf_context_destroy(nf_context* ctx);
/* message of the last failed call on this context; "" after a success */
NF_API const char* nf_last_error(const nf_context* ctx);
/* 1 pass, 0 fail, -1 when the last document carried no verdict */
NF_API int nf_last_pass(const nf_context* ctx);

/* Runs one engine operation. args is a JSON object (NULL means {}); format is
   "json", "csv" or "human". *out receives a string owned by the caller, to be
   released with nf_free_string. */
NF_API nf_status nf_call(nf_context* ctx, const char* op, const char* args_json, const char* format, char** out);
NF_API void nf_free_string(char* s);
/* newline separated list of operation names, owned by the caller */
NF_API nf_status nf_operations(char** out);

/* typed shortcuts */
NF_API nf_status nf_atomic_transition(nf_context* ctx, const char* system, int n, int l, int two_j, double d,
                                      double g, double* out_ev);
NF_API nf_status nf_pair_energy(nf_context* ctx, int z, int a, const char* calibration, int N, int l, int sign,
                                double* out_mev);
NF_API nf_status nf_coherent_roots(nf_context* ctx, double k, int count, double* roots, size_t capacity);
NF_API nf_status nf_chain_length(nf_context* ctx, int p, double k1, int* out_a);

/* local HTTP service; port 0 picks a free port */
NF_API nf_status nf_server_start(nf_context* ctx, const char* host, int port, nf_server** out);
NF_API int nf_server_port(const nf_server* s);
NF_API void nf_server_wait(nf_server* s);
NF_API void nf_server_stop(nf_server* s);

#ifdef __cplusplus
}
#endif

#endif
