#ifndef ASYMWALK_ASYMWALK_H
#define ASYMWALK_ASYMWALK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ASYMWALK_API __declspec(dllexport)
#else
#define ASYMWALK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum asymwalk_status {
  ASYMWALK_OK = 0,
  ASYMWALK_INVALID_ARGUMENT = 1,
  ASYMWALK_RANK_MISMATCH = 2,
  ASYMWALK_OUT_OF_RANGE = 3,
  ASYMWALK_OVERFLOW = 4,
  ASYMWALK_NOT_HYPERBOLIC = 5,
  ASYMWALK_PRECONDITION = 6,
  ASYMWALK_BUDGET_EXHAUSTED = 7,
  ASYMWALK_INCONCLUSIVE = 8,
  ASYMWALK_DEGENERATE_MEASURE = 9,
  ASYMWALK_UNSUPPORTED = 10,
  ASYMWALK_IO = 11,
  ASYMWALK_INTERNAL = 12
} asymwalk_status;

typedef struct asymwalk_word asymwalk_word;
typedef struct asymwalk_weights asymwalk_weights;
typedef struct asymwalk_measure asymwalk_measure;
typedef struct asymwalk_automorphism asymwalk_automorphism;

/* Library version, e.g. "0.3.0". */
ASYMWALK_API const char* asymwalk_version(void);
/* Message of the last failed call on this thread; "" after a success. */
ASYMWALK_API const char* asymwalk_last_error(void);
ASYMWALK_API const char* asymwalk_status_name(asymwalk_status status);
/* 0 means one worker per core. */
ASYMWALK_API asymwalk_status asymwalk_set_threads(unsigned threads);

/* Words: text uses a..z for generators, A..Z for inverses, "1" or "" for e. */
ASYMWALK_API asymwalk_status asymwalk_word_parse(int rank, const char* text, asymwalk_word** out);
ASYMWALK_API void asymwalk_word_free(asymwalk_word* w);
/* Copies the text form into buf (NUL terminated) and stores the full length in *needed. */
ASYMWALK_API asymwalk_status asymwalk_word_str(const asymwalk_word* w, char* buf, size_t size, size_t* needed);
ASYMWALK_API size_t asymwalk_word_length(const asymwalk_word* w);
ASYMWALK_API asymwalk_status asymwalk_word_concat(const asymwalk_word* u, const asymwalk_word* v,
                                                  asymwalk_word** out);
ASYMWALK_API asymwalk_status asymwalk_word_invert(const asymwalk_word* w, asymwalk_word** out);

/* Weights in slot order x1, x1^-1, x2, x2^-1, ... */
ASYMWALK_API asymwalk_status asymwalk_weights_create(int rank, const double* values, size_t count,
                                                     asymwalk_weights** out);
ASYMWALK_API asymwalk_status asymwalk_weights_from_json(const char* json, asymwalk_weights** out);
ASYMWALK_API void asymwalk_weights_free(asymwalk_weights* ws);

ASYMWALK_API asymwalk_status asymwalk_dist(const asymwalk_word* x, const asymwalk_word* y,
                                           const asymwalk_weights* ws, double* out);
ASYMWALK_API asymwalk_status asymwalk_dist_sym(const asymwalk_word* x, const asymwalk_word* y,
                                               const asymwalk_weights* ws, double* out);
ASYMWALK_API asymwalk_status asymwalk_translation_length(const asymwalk_word* g, const asymwalk_weights* ws,
                                                         double* out);

/* probabilities may be NULL for the uniform measure on the support. */
ASYMWALK_API asymwalk_status asymwalk_measure_create(int rank, const char* const* support, const double* probabilities,
                                                     size_t count, asymwalk_measure** out);
ASYMWALK_API asymwalk_status asymwalk_measure_uniform(int rank, asymwalk_measure** out);
ASYMWALK_API void asymwalk_measure_free(asymwalk_measure* mu);

typedef struct asymwalk_drift {
  size_t n;
  size_t trials;
  double lambda_hat;
  double ci_low;
  double ci_high;
  double std_error;
  int positive;
} asymwalk_drift;

ASYMWALK_API asymwalk_status asymwalk_estimate_drift(const asymwalk_measure* mu, size_t n, size_t trials,
                                                     const asymwalk_weights* ws, uint64_t seed, asymwalk_drift* out);
ASYMWALK_API asymwalk_status asymwalk_exact_drift(const asymwalk_measure* mu, size_t n, const asymwalk_weights* ws,
                                                  double* out);

/* images and inverse_images hold `rank` words each. */
ASYMWALK_API asymwalk_status asymwalk_automorphism_parse(int rank, const char* const* images,
                                                         const char* const* inverse_images,
                                                         asymwalk_automorphism** out);
ASYMWALK_API void asymwalk_automorphism_free(asymwalk_automorphism* phi);
/* low_confidence may be NULL. */
ASYMWALK_API asymwalk_status asymwalk_growth_rate(const asymwalk_automorphism* phi, double* out, int* low_confidence);
/* Spectral radius of the transition matrix of a positive automorphism. */
ASYMWALK_API asymwalk_status asymwalk_pf_eigenvalue(const asymwalk_automorphism* phi, double* out);

/* Runs a JSON experiment config. out_dir may be NULL. *exit_code follows the
   CLI convention: 0 ok, 2 invalid input, 3 budget exhausted. */
ASYMWALK_API asymwalk_status asymwalk_run(const char* config_path, const char* out_dir, unsigned threads,
                                          int* exit_code);
/* Writes JSON lines to stdout; paths may be NULL. */
ASYMWALK_API asymwalk_status asymwalk_verify(const char* suite, const char* schottky_path, const char* weights_path,
                                             int* exit_code);

#ifdef __cplusplus
}
#endif

#endif
