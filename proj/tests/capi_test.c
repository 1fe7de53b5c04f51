/* Exercises the C interface from plain C. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "asymwalk/asymwalk.h"

static int failures = 0;

#define EXPECT(cond)                                            \
  do {                                                          \
    if (!(cond)) {                                              \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                               \
    }                                                           \
  } while (0)

int main(void) {
  asymwalk_word *x = NULL, *y = NULL, *xy = NULL, *inv = NULL;
  asymwalk_weights* ws = NULL;
  asymwalk_measure* mu = NULL;
  asymwalk_automorphism* fib = NULL;
  double v = 0;
  char buf[32];
  size_t needed = 0;

  EXPECT(strcmp(asymwalk_version(), "") != 0);
  EXPECT(asymwalk_set_threads(1) == ASYMWALK_OK);

  EXPECT(asymwalk_word_parse(2, "ab", &x) == ASYMWALK_OK);
  EXPECT(asymwalk_word_parse(2, "Ba", &y) == ASYMWALK_OK);
  EXPECT(asymwalk_word_concat(x, y, &xy) == ASYMWALK_OK);
  EXPECT(asymwalk_word_str(xy, buf, sizeof buf, &needed) == ASYMWALK_OK);
  EXPECT(strcmp(buf, "aa") == 0 && needed == 2);
  EXPECT(asymwalk_word_invert(x, &inv) == ASYMWALK_OK);
  EXPECT(asymwalk_word_str(inv, buf, 2, &needed) == ASYMWALK_OK);
  EXPECT(strcmp(buf, "B") == 0 && needed == 2);
  EXPECT(asymwalk_word_length(xy) == 2);

  asymwalk_word* bad = NULL;
  EXPECT(asymwalk_word_parse(2, "abc", &bad) != ASYMWALK_OK && bad == NULL);
  EXPECT(strlen(asymwalk_last_error()) > 0);
  EXPECT(asymwalk_word_parse(2, NULL, &bad) == ASYMWALK_INVALID_ARGUMENT);

  const double w[4] = {1, 2, 1, 3};
  EXPECT(asymwalk_weights_create(2, w, 4, &ws) == ASYMWALK_OK);
  EXPECT(asymwalk_weights_create(2, w, 3, &ws) == ASYMWALK_INVALID_ARGUMENT);
  EXPECT(asymwalk_dist(x, y, ws, &v) == ASYMWALK_OK);
  {
    asymwalk_word* e = NULL;
    double fwd = 0, bwd = 0, sym = 0;
    asymwalk_word_parse(2, "1", &e);
    asymwalk_dist(e, x, ws, &fwd);
    asymwalk_dist(x, e, ws, &bwd);
    asymwalk_dist_sym(e, x, ws, &sym);
    EXPECT(fwd == 2 && bwd == 5 && sym == 7);
    asymwalk_word_free(e);
  }
  EXPECT(asymwalk_translation_length(x, ws, &v) == ASYMWALK_OK && v == 2);

  EXPECT(asymwalk_measure_uniform(2, &mu) == ASYMWALK_OK);
  asymwalk_drift d;
  EXPECT(asymwalk_estimate_drift(mu, 500, 200, ws, 3, &d) == ASYMWALK_OK);
  EXPECT(asymwalk_exact_drift(mu, 500, ws, &v) == ASYMWALK_OK);
  EXPECT(fabs(d.lambda_hat - v) < 4 * d.std_error);
  EXPECT(d.trials == 200 && d.positive);
  {
    const char* support[2] = {"a", "A"};
    asymwalk_measure* line = NULL;
    EXPECT(asymwalk_measure_create(2, support, NULL, 2, &line) == ASYMWALK_OK);
    EXPECT(asymwalk_estimate_drift(line, 10, 10, ws, 1, &d) == ASYMWALK_DEGENERATE_MEASURE);
    asymwalk_measure_free(line);
  }

  const char* images[2] = {"ab", "a"};
  const char* inverses[2] = {"b", "Ba"};
  EXPECT(asymwalk_automorphism_parse(2, images, inverses, &fib) == ASYMWALK_OK);
  int low = -1;
  double pf = 0;
  EXPECT(asymwalk_growth_rate(fib, &v, &low) == ASYMWALK_OK);
  EXPECT(asymwalk_pf_eigenvalue(fib, &pf) == ASYMWALK_OK);
  EXPECT(fabs(v - 1.6180339887) < 1e-3 && fabs(v - pf) < 1e-6 && low == 0);
  {
    const char* wrong[2] = {"a", "a"};
    asymwalk_automorphism* none = NULL;
    EXPECT(asymwalk_automorphism_parse(2, images, wrong, &none) != ASYMWALK_OK);
  }

  int code = -1;
  EXPECT(asymwalk_run("/nonexistent/config.json", NULL, 1, &code) == ASYMWALK_OK && code == 2);
  EXPECT(strcmp(asymwalk_status_name(ASYMWALK_BUDGET_EXHAUSTED), "budget_exhausted") == 0);

  asymwalk_word_free(x);
  asymwalk_word_free(y);
  asymwalk_word_free(xy);
  asymwalk_word_free(inv);
  asymwalk_weights_free(ws);
  asymwalk_measure_free(mu);
  asymwalk_automorphism_free(fib);
  asymwalk_word_free(NULL);

  if (failures == 0) printf("capi: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
