#include "asymwalk/asymwalk.h"

#include <cstring>
#include <iostream>
#include <new>
#include <string>

#include "dp_oracle.hpp"
#include "limit_stats.hpp"
#include "outer_growth.hpp"
#include "parallel.hpp"
#include "runner.hpp"

struct asymwalk_word {
  asymwalk::Word value;
};
struct asymwalk_weights {
  asymwalk::WeightScheme value;
};
struct asymwalk_measure {
  asymwalk::MeasureSpec value;
};
struct asymwalk_automorphism {
  asymwalk::Automorphism value;
};

namespace {

thread_local std::string g_last_error;

asymwalk_status status_of(asymwalk::ErrorCode code) {
  using asymwalk::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return ASYMWALK_INVALID_ARGUMENT;
    case ErrorCode::rank_mismatch: return ASYMWALK_RANK_MISMATCH;
    case ErrorCode::out_of_range: return ASYMWALK_OUT_OF_RANGE;
    case ErrorCode::overflow: return ASYMWALK_OVERFLOW;
    case ErrorCode::not_hyperbolic: return ASYMWALK_NOT_HYPERBOLIC;
    case ErrorCode::precondition: return ASYMWALK_PRECONDITION;
    case ErrorCode::budget_exhausted: return ASYMWALK_BUDGET_EXHAUSTED;
    case ErrorCode::inconclusive: return ASYMWALK_INCONCLUSIVE;
    case ErrorCode::degenerate_measure: return ASYMWALK_DEGENERATE_MEASURE;
    case ErrorCode::unsupported: return ASYMWALK_UNSUPPORTED;
    case ErrorCode::io: return ASYMWALK_IO;
  }
  return ASYMWALK_INTERNAL;
}

// Every entry point funnels through here so no exception crosses the boundary.
template <class F>
asymwalk_status guard(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return ASYMWALK_OK;
  } catch (const asymwalk::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return ASYMWALK_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ASYMWALK_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ASYMWALK_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return ASYMWALK_INTERNAL;
  }
}

template <class T>
void require(const T* p, const char* what) {
  if (p == nullptr) asymwalk::fail(asymwalk::ErrorCode::invalid_argument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* asymwalk_version(void) { return asymwalk::library_version(); }

const char* asymwalk_last_error(void) { return g_last_error.c_str(); }

const char* asymwalk_status_name(asymwalk_status status) {
  switch (status) {
    case ASYMWALK_OK: return "ok";
    case ASYMWALK_INTERNAL: return "internal";
    default: return asymwalk::error_code_name(static_cast<asymwalk::ErrorCode>(status - 1));
  }
}

asymwalk_status asymwalk_set_threads(unsigned threads) {
  return guard([&] { asymwalk::set_thread_count(threads); });
}

asymwalk_status asymwalk_word_parse(int rank, const char* text, asymwalk_word** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new asymwalk_word{asymwalk::Word::parse(rank, text)};
  });
}

void asymwalk_word_free(asymwalk_word* w) { delete w; }

asymwalk_status asymwalk_word_str(const asymwalk_word* w, char* buf, size_t size, size_t* needed) {
  return guard([&] {
    require(w, "word");
    const std::string s = w->value.str();
    if (needed != nullptr) *needed = s.size();
    if (buf != nullptr && size > 0) {
      const size_t n = std::min(size - 1, s.size());
      std::memcpy(buf, s.data(), n);
      buf[n] = '\0';
    }
  });
}

size_t asymwalk_word_length(const asymwalk_word* w) { return w == nullptr ? 0 : w->value.size(); }

asymwalk_status asymwalk_word_concat(const asymwalk_word* u, const asymwalk_word* v, asymwalk_word** out) {
  return guard([&] {
    require(u, "u");
    require(v, "v");
    require(out, "out");
    *out = new asymwalk_word{asymwalk::concat(u->value, v->value)};
  });
}

asymwalk_status asymwalk_word_invert(const asymwalk_word* w, asymwalk_word** out) {
  return guard([&] {
    require(w, "word");
    require(out, "out");
    *out = new asymwalk_word{asymwalk::invert(w->value)};
  });
}

asymwalk_status asymwalk_weights_create(int rank, const double* values, size_t count, asymwalk_weights** out) {
  return guard([&] {
    require(values, "values");
    require(out, "out");
    if (rank < 1 || count != static_cast<size_t>(2 * rank)) {
      asymwalk::fail(asymwalk::ErrorCode::invalid_argument, "expected 2 * rank weights");
    }
    *out = new asymwalk_weights{asymwalk::WeightScheme::from_values(rank, {values, values + count})};
  });
}

asymwalk_status asymwalk_weights_from_json(const char* json, asymwalk_weights** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    asymwalk::Json j;
    try {
      j = asymwalk::Json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      asymwalk::fail(asymwalk::ErrorCode::invalid_argument, e.what());
    }
    *out = new asymwalk_weights{asymwalk::weights_from_json(j)};
  });
}

void asymwalk_weights_free(asymwalk_weights* ws) { delete ws; }

asymwalk_status asymwalk_dist(const asymwalk_word* x, const asymwalk_word* y, const asymwalk_weights* ws,
                              double* out) {
  return guard([&] {
    require(x, "x");
    require(y, "y");
    require(ws, "weights");
    require(out, "out");
    *out = asymwalk::dist(x->value, y->value, ws->value);
  });
}

asymwalk_status asymwalk_dist_sym(const asymwalk_word* x, const asymwalk_word* y, const asymwalk_weights* ws,
                                  double* out) {
  return guard([&] {
    require(x, "x");
    require(y, "y");
    require(ws, "weights");
    require(out, "out");
    *out = asymwalk::dist_sym(x->value, y->value, ws->value);
  });
}

asymwalk_status asymwalk_translation_length(const asymwalk_word* g, const asymwalk_weights* ws, double* out) {
  return guard([&] {
    require(g, "g");
    require(ws, "weights");
    require(out, "out");
    *out = asymwalk::translation_length(g->value, ws->value);
  });
}

asymwalk_status asymwalk_measure_create(int rank, const char* const* support, const double* probabilities,
                                        size_t count, asymwalk_measure** out) {
  return guard([&] {
    require(support, "support");
    require(out, "out");
    std::vector<asymwalk::Word> words;
    for (size_t i = 0; i < count; ++i) {
      require(support[i], "support entry");
      words.push_back(asymwalk::Word::parse(rank, support[i]));
    }
    std::vector<double> probs;
    if (probabilities != nullptr) probs.assign(probabilities, probabilities + count);
    *out = new asymwalk_measure{asymwalk::MeasureSpec::create(rank, std::move(words), std::move(probs))};
  });
}

asymwalk_status asymwalk_measure_uniform(int rank, asymwalk_measure** out) {
  return guard([&] {
    require(out, "out");
    *out = new asymwalk_measure{asymwalk::MeasureSpec::uniform_letters(rank, true)};
  });
}

void asymwalk_measure_free(asymwalk_measure* mu) { delete mu; }

asymwalk_status asymwalk_estimate_drift(const asymwalk_measure* mu, size_t n, size_t trials,
                                        const asymwalk_weights* ws, uint64_t seed, asymwalk_drift* out) {
  return guard([&] {
    require(mu, "measure");
    require(ws, "weights");
    require(out, "out");
    const asymwalk::DriftSummary d = asymwalk::estimate_drift(mu->value, n, trials, ws->value, seed);
    *out = asymwalk_drift{d.n, d.trials, d.lambda_hat, d.ci_low, d.ci_high, d.std_error, d.positive ? 1 : 0};
  });
}

asymwalk_status asymwalk_exact_drift(const asymwalk_measure* mu, size_t n, const asymwalk_weights* ws, double* out) {
  return guard([&] {
    require(mu, "measure");
    require(ws, "weights");
    require(out, "out");
    *out = asymwalk::exact_drift(mu->value, n, ws->value);
  });
}

asymwalk_status asymwalk_automorphism_parse(int rank, const char* const* images, const char* const* inverse_images,
                                            asymwalk_automorphism** out) {
  return guard([&] {
    require(images, "images");
    require(inverse_images, "inverse_images");
    require(out, "out");
    if (rank < 1) asymwalk::fail(asymwalk::ErrorCode::invalid_argument, "rank must be positive");
    std::vector<std::string> im, inv;
    for (int i = 0; i < rank; ++i) {
      require(images[i], "image");
      require(inverse_images[i], "inverse image");
      im.emplace_back(images[i]);
      inv.emplace_back(inverse_images[i]);
    }
    *out = new asymwalk_automorphism{asymwalk::Automorphism::parse(rank, im, inv)};
  });
}

void asymwalk_automorphism_free(asymwalk_automorphism* phi) { delete phi; }

asymwalk_status asymwalk_growth_rate(const asymwalk_automorphism* phi, double* out, int* low_confidence) {
  return guard([&] {
    require(phi, "automorphism");
    require(out, "out");
    const asymwalk::GrowthEstimate g = asymwalk::growth_rate(phi->value);
    *out = g.lambda;
    if (low_confidence != nullptr) *low_confidence = g.low_confidence() ? 1 : 0;
  });
}

asymwalk_status asymwalk_pf_eigenvalue(const asymwalk_automorphism* phi, double* out) {
  return guard([&] {
    require(phi, "automorphism");
    require(out, "out");
    if (!asymwalk::is_positive(phi->value)) {
      asymwalk::fail(asymwalk::ErrorCode::precondition, "automorphism is not positive");
    }
    *out = asymwalk::pf_eigenvalue(asymwalk::transition_matrix(phi->value)).value;
  });
}

asymwalk_status asymwalk_run(const char* config_path, const char* out_dir, unsigned threads, int* exit_code) {
  return guard([&] {
    require(config_path, "config_path");
    require(exit_code, "exit_code");
    asymwalk::RunOptions options;
    if (out_dir != nullptr) options.out_dir = out_dir;
    options.threads = threads;
    *exit_code = asymwalk::run_config_file(config_path, options, std::cerr).exit_code;
  });
}

asymwalk_status asymwalk_verify(const char* suite, const char* schottky_path, const char* weights_path,
                                int* exit_code) {
  return guard([&] {
    require(suite, "suite");
    require(exit_code, "exit_code");
    asymwalk::VerifyOptions options;
    if (schottky_path != nullptr) options.schottky_path = schottky_path;
    if (weights_path != nullptr) options.weights_path = weights_path;
    *exit_code = asymwalk::run_verify(suite, options, std::cout, std::cerr);
    std::cout.flush();
  });
}

}  // extern "C"
