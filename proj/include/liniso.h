#ifndef LINISO_H
#define LINISO_H

#include <stddef.h>
#include <stdint.h>

#if defined(LINISO_BUILDING_LIBRARY)
#define LINISO_API __attribute__((visibility("default")))
#else
#define LINISO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns a status; on failure liniso_last_error() describes it
 * until the next call on the same thread. Exact rationals cross the boundary
 * as "p/q" strings. Strings handed out by the library are released with
 * liniso_string_free. */
typedef enum liniso_status {
  LINISO_OK = 0,
  LINISO_ERR_ARGUMENT = 1,  /* precondition violated */
  LINISO_ERR_GUARD = 2,     /* size guard refused the work */
  LINISO_ERR_PARSE = 3,
  LINISO_ERR_LP = 4,
  LINISO_ERR_SAMPLER = 5,
  LINISO_ERR_PROTOCOL = 6,  /* malformed or truncated stream */
  LINISO_ERR_INVARIANT = 7,
  LINISO_ERR_IO = 8,
  LINISO_ERR_INFEASIBLE = 9,
  LINISO_ERR_INTERNAL = 10
} liniso_status;

typedef struct liniso_ctx liniso_ctx;
typedef struct liniso_fn liniso_fn;
typedef struct liniso_phimap liniso_phimap;

LINISO_API const char* liniso_version(void);
LINISO_API const char* liniso_last_error(void);
LINISO_API const char* liniso_status_name(liniso_status status);
LINISO_API void liniso_string_free(char* s);

/* Context: size guards and protocol options shared by the calls that take it. */
LINISO_API liniso_status liniso_ctx_new(liniso_ctx** out);
LINISO_API void liniso_ctx_free(liniso_ctx* ctx);
/* name: "transform", "gl", "lp" or "ball" */
LINISO_API liniso_status liniso_ctx_set_guard(liniso_ctx* ctx, const char* name, int value);
/* Deterministic protocol receiver minimises over affine maps when set. */
LINISO_API liniso_status liniso_ctx_set_affine(liniso_ctx* ctx, int affine);

/* Boolean functions */
LINISO_API liniso_status liniso_fn_parse(const liniso_ctx* ctx, const char* text, liniso_fn** out);
LINISO_API liniso_status liniso_fn_read(const liniso_ctx* ctx, const char* path, liniso_fn** out);
LINISO_API liniso_status liniso_fn_write(const liniso_fn* fn, const char* path);
LINISO_API liniso_status liniso_fn_to_text(const liniso_fn* fn, char** out);
LINISO_API liniso_status liniso_fn_table_hex(const liniso_fn* fn, char** out);
/* family: "uniform-random", "parity:<alpha>", "and-all", "bent-ip", "planted-junta:<r>" */
LINISO_API liniso_status liniso_fn_generate(const char* family, int n, uint64_t seed,
                                            liniso_fn** out);
/* x -> f(Mx); matrix as n lines of n characters 0/1. */
LINISO_API liniso_status liniso_fn_compose(const liniso_fn* fn, const char* matrix,
                                           liniso_fn** out);
LINISO_API liniso_status liniso_fn_random_isomorph(const liniso_fn* fn, uint64_t seed,
                                                   liniso_fn** out);
LINISO_API int liniso_fn_arity(const liniso_fn* fn);
/* +1 or -1; 0 when x is out of range */
LINISO_API int liniso_fn_eval(const liniso_fn* fn, uint64_t x);
LINISO_API int liniso_fn_equal(const liniso_fn* a, const liniso_fn* b);
LINISO_API void liniso_fn_free(liniso_fn* fn);

/* Analysis. JSON results are objects; see the README for the keys. */
LINISO_API liniso_status liniso_spectral_norm(const liniso_ctx* ctx, const liniso_fn* fn,
                                              char** out);
LINISO_API liniso_status liniso_wht(const liniso_ctx* ctx, const liniso_fn* fn, char** json);
LINISO_API liniso_status liniso_approx_norm(const liniso_ctx* ctx, const liniso_fn* fn,
                                            const char* gamma, char** json);
LINISO_API liniso_status liniso_linear_distance(const liniso_ctx* ctx, const liniso_fn* f,
                                                const liniso_fn* g, int affine, char** json);
LINISO_API liniso_status liniso_canonical(const liniso_ctx* ctx, const liniso_fn* fn,
                                          liniso_fn** canon, char** witness);
LINISO_API liniso_status liniso_sample(const liniso_ctx* ctx, const liniso_fn* fn,
                                       const char* gamma, const char* delta, uint64_t seed,
                                       char** json);
LINISO_API liniso_status liniso_junta(const liniso_ctx* ctx, const liniso_fn* fn,
                                      const char* omega, char** json);

/* Protocols. protocol: "det", "rand" or "public". */
typedef struct liniso_run_params {
  const char* epsilon; /* NULL means 0 */
  const char* omega;   /* NULL means 1/4 */
  uint64_t seed_a;     /* private coins, or the shared seed for "public" */
  uint64_t seed_b;
  int rounds;          /* public-coin repetitions; 0 means 7 */
  int tcp;             /* loopback TCP instead of in-memory queues */
} liniso_run_params;

LINISO_API liniso_status liniso_run(const liniso_ctx* ctx, const char* protocol,
                                    const liniso_fn* f, const liniso_fn* g,
                                    const liniso_run_params* params, char** transcript_json);
/* One party over TCP. role: "alice" or "bob"; listen != 0 waits on address,
 * otherwise connects to it. address is "host:port". */
LINISO_API liniso_status liniso_run_party(const liniso_ctx* ctx, const char* protocol,
                                          const char* role, const char* address, int listen,
                                          const liniso_fn* input, const liniso_run_params* params,
                                          char** transcript_json);

/* Lower-bound apparatus */
LINISO_API double liniso_binary_entropy(double omega);
LINISO_API liniso_status liniso_hamming_ball_size(uint64_t length, uint64_t radius, char** out);
LINISO_API liniso_status liniso_ball_size(const liniso_ctx* ctx, const liniso_fn* fn,
                                          const char* omega, uint64_t* out);
LINISO_API liniso_status liniso_choose_m(int n, const char* omega, int* ell, uint64_t* m);

/* A map is returned even when construction fails; check liniso_phimap_success. */
LINISO_API liniso_status liniso_phimap_construct(const liniso_ctx* ctx, int n, int ell,
                                                 const char* omega, liniso_phimap** out);
LINISO_API int liniso_phimap_success(const liniso_phimap* map);
LINISO_API uint64_t liniso_phimap_size(const liniso_phimap* map);
LINISO_API liniso_status liniso_phimap_image(const liniso_phimap* map, uint64_t x,
                                             liniso_fn** out);
/* Lines "a_hex -> table_hex". */
LINISO_API liniso_status liniso_phimap_to_text(const liniso_phimap* map, char** out);
LINISO_API liniso_status liniso_phimap_verify(const liniso_ctx* ctx, const liniso_phimap* map,
                                              char** json);
/* oracle: "exact", "det", "rand" or "public"; seed feeds the randomized ones. */
LINISO_API liniso_status liniso_reduce_equ(const liniso_ctx* ctx, const liniso_phimap* map,
                                           uint64_t a, uint64_t b, const char* oracle,
                                           uint64_t seed, int* equal);
LINISO_API void liniso_phimap_free(liniso_phimap* map);

/* Sweep described by a JSON object; writes the CSV and a JSON list of skipped cells. */
LINISO_API liniso_status liniso_experiment(const liniso_ctx* ctx, const char* config_json,
                                           char** csv, char** skipped_json);

#ifdef __cplusplus
}
#endif

#endif
