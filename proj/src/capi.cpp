#include "bosegas/bosegas.h"

#include <string>

#include "bosegas/config.hpp"
#include "bosegas/error.hpp"
#include "bosegas/report.hpp"
#include "bosegas/verify.hpp"

struct bosegas_config {
  bosegas::RunConfig config;
};

struct bosegas_result {
  bosegas::FreeEnergyBreakdown breakdown;
  std::string row;
  std::string text;
};

struct bosegas_sweep {
  std::vector<bosegas::FreeEnergyBreakdown> rows;
  std::string csv;
};

struct bosegas_verification {
  std::string jsonl;
  size_t count = 0;
  size_t failed = 0;
};

namespace {

thread_local std::string last_error;

bosegas_status status_of(bosegas::ErrorKind k) {
  switch (k) {
    case bosegas::ErrorKind::Config: return BOSEGAS_ERR_CONFIG;
    case bosegas::ErrorKind::Contract: return BOSEGAS_ERR_CONTRACT;
    case bosegas::ErrorKind::Resolution: return BOSEGAS_ERR_RESOLUTION;
    case bosegas::ErrorKind::Solver: return BOSEGAS_ERR_SOLVER;
    case bosegas::ErrorKind::Model: return BOSEGAS_ERR_MODEL;
    case bosegas::ErrorKind::Internal: return BOSEGAS_ERR_INTERNAL;
  }
  return BOSEGAS_ERR_INTERNAL;
}

template <class F>
bosegas_status guarded(F&& f) {
  try {
    f();
    return BOSEGAS_OK;
  } catch (const bosegas::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return BOSEGAS_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return BOSEGAS_ERR_INTERNAL;
  }
}

bosegas_status null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return BOSEGAS_ERR_CONFIG;
}

}  // namespace

extern "C" {

const char* bosegas_last_error(void) { return last_error.c_str(); }

const char* bosegas_status_name(bosegas_status s) {
  switch (s) {
    case BOSEGAS_OK: return "ok";
    case BOSEGAS_ERR_CONFIG: return "config";
    case BOSEGAS_ERR_CONTRACT: return "contract";
    case BOSEGAS_ERR_RESOLUTION: return "resolution";
    case BOSEGAS_ERR_SOLVER: return "solver";
    case BOSEGAS_ERR_MODEL: return "model";
    case BOSEGAS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

bosegas_status bosegas_config_load(const char* path, bosegas_config** out) {
  if (!path || !out) return null_arg("bosegas_config_load");
  *out = nullptr;
  return guarded([&] { *out = new bosegas_config{bosegas::load_config(path)}; });
}

bosegas_status bosegas_config_parse(const char* text, bosegas_config** out) {
  if (!text || !out) return null_arg("bosegas_config_parse");
  *out = nullptr;
  return guarded([&] { *out = new bosegas_config{bosegas::parse_config(text)}; });
}

const char* bosegas_config_out(const bosegas_config* c) { return c ? c->config.out.c_str() : ""; }

void bosegas_config_free(bosegas_config* c) { delete c; }

bosegas_status bosegas_compute(const bosegas_config* c, bosegas_result** out) {
  if (!c || !out) return null_arg("bosegas_compute");
  *out = nullptr;
  return guarded([&] {
    const auto& p = c->config.params;
    auto b = bosegas::upper_bound(p, bosegas::solve_scattering(p));
    auto* r = new bosegas_result{b, bosegas::csv_row(b), bosegas::describe(b)};
    *out = r;
  });
}

const char* bosegas_csv_header(void) {
  static const std::string h = bosegas::csv_header();
  return h.c_str();
}

const char* bosegas_result_csv_row(const bosegas_result* r) { return r ? r->row.c_str() : ""; }
const char* bosegas_result_describe(const bosegas_result* r) { return r ? r->text.c_str() : ""; }
double bosegas_result_total(const bosegas_result* r) { return r ? r->breakdown.total : 0.0; }
void bosegas_result_free(bosegas_result* r) { delete r; }

bosegas_status bosegas_sweep_run(const bosegas_config* c, const char* range, bosegas_sweep** out) {
  if (!c || !range || !out) return null_arg("bosegas_sweep_run");
  *out = nullptr;
  return guarded([&] {
    const auto kappas = bosegas::parse_kappa_range(range);
    auto* s = new bosegas_sweep;
    try {
      s->rows = bosegas::sweep(c->config.params, kappas);
    } catch (...) {
      delete s;
      throw;
    }
    s->csv = bosegas::csv_header() + "\n";
    for (const auto& b : s->rows) s->csv += bosegas::csv_row(b) + "\n";
    *out = s;
  });
}

size_t bosegas_sweep_rows(const bosegas_sweep* s) { return s ? s->rows.size() : 0; }
const char* bosegas_sweep_csv(const bosegas_sweep* s) { return s ? s->csv.c_str() : ""; }

int bosegas_sweep_branch_switch(const bosegas_sweep* s, double* kappa_lo, double* kappa_hi) {
  if (!s) return 0;
  const auto i = bosegas::branch_switch(s->rows);
  if (!i) return 0;
  if (kappa_lo) *kappa_lo = s->rows[*i].kappa;
  if (kappa_hi) *kappa_hi = s->rows[*i + 1].kappa;
  return 1;
}

void bosegas_sweep_free(bosegas_sweep* s) { delete s; }

bosegas_status bosegas_verify_run(const bosegas_config* c, const char* suite, bosegas_verification** out) {
  if (!c || !suite || !out) return null_arg("bosegas_verify_run");
  *out = nullptr;
  return guarded([&] {
    const auto checks = bosegas::run_suite(c->config, suite);
    auto* v = new bosegas_verification;
    for (const auto& k : checks) {
      v->jsonl += bosegas::to_json_line(k) + "\n";
      ++v->count;
      if (!k.pass) ++v->failed;
    }
    *out = v;
  });
}

const char* bosegas_verification_jsonl(const bosegas_verification* v) { return v ? v->jsonl.c_str() : ""; }
size_t bosegas_verification_count(const bosegas_verification* v) { return v ? v->count : 0; }
size_t bosegas_verification_failed(const bosegas_verification* v) { return v ? v->failed : 0; }
void bosegas_verification_free(bosegas_verification* v) { delete v; }

}  // extern "C"
