#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bosegas/bosegas.h"

namespace {

constexpr int kOk = 0;
constexpr int kNumeric = 1;
constexpr int kUsage = 2;

int fail(bosegas_status s) {
  std::cerr << "error (" << bosegas_status_name(s) << "): " << bosegas_last_error() << "\n";
  return s == BOSEGAS_ERR_CONFIG ? kUsage : kNumeric;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

struct Config {
  bosegas_config* handle = nullptr;
  ~Config() { bosegas_config_free(handle); }
};

int compute(const std::string& config_path, std::string out) {
  Config c;
  if (auto s = bosegas_config_load(config_path.c_str(), &c.handle)) return fail(s);
  bosegas_result* r = nullptr;
  if (auto s = bosegas_compute(c.handle, &r)) return fail(s);
  const std::string csv = std::string(bosegas_csv_header()) + "\n" + bosegas_result_csv_row(r) + "\n";
  std::cout << bosegas_result_describe(r);
  bosegas_result_free(r);
  if (out.empty()) out = bosegas_config_out(c.handle);
  if (out.empty()) {
    std::cout << "\n" << csv;
    return kOk;
  }
  return write_file(out, csv) ? kOk : kNumeric;
}

int sweep(const std::string& config_path, const std::string& range, std::string out) {
  Config c;
  if (auto s = bosegas_config_load(config_path.c_str(), &c.handle)) return fail(s);
  if (out.empty()) out = bosegas_config_out(c.handle);
  if (out.empty()) {
    std::cerr << "error: sweep needs --out or an 'out' key in the config\n";
    return kUsage;
  }
  bosegas_sweep* sw = nullptr;
  if (auto s = bosegas_sweep_run(c.handle, range.c_str(), &sw)) return fail(s);
  const bool ok = write_file(out, bosegas_sweep_csv(sw));
  std::cout << bosegas_sweep_rows(sw) << " rows written to " << out << "\n";
  double lo = 0.0, hi = 0.0;
  if (bosegas_sweep_branch_switch(sw, &lo, &hi))
    std::cout << "branch switch between kappa = " << lo << " and kappa = " << hi << "\n";
  else
    std::cout << "no branch switch in range\n";
  bosegas_sweep_free(sw);
  return ok ? kOk : kNumeric;
}

int verify(const std::string& config_path, const std::string& suite) {
  Config c;
  if (auto s = bosegas_config_load(config_path.c_str(), &c.handle)) return fail(s);
  bosegas_verification* v = nullptr;
  if (auto s = bosegas_verify_run(c.handle, suite.c_str(), &v)) return fail(s);
  std::cout << bosegas_verification_jsonl(v);
  const size_t failed = bosegas_verification_failed(v), count = bosegas_verification_count(v);
  bosegas_verification_free(v);
  std::cerr << count - failed << "/" << count << " checks passed\n";
  return failed ? kNumeric : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-energy upper bound of the dilute Bose gas on the torus"};
  app.require_subcommand(1);

  std::string config, out, range, suite;

  auto* c = app.add_subcommand("compute", "Evaluate the bound for one configuration");
  c->add_option("--config", config, "Config file")->required();
  c->add_option("--out", out, "CSV output (default: config 'out', else stdout)");

  auto* s = app.add_subcommand("sweep", "Evaluate the bound over a kappa grid");
  s->add_option("--config", config, "Config file")->required();
  s->add_option("--kappa", range, "START:STOP:STEP")->required();
  s->add_option("--out", out, "CSV output (default: config 'out')");

  auto* v = app.add_subcommand("verify", "Run module self-checks, JSON lines on stdout");
  v->add_option("--config", config, "Config file")->required();
  v->add_option("--suite", suite, "lattice, ideal_gas, scattering, condensate, bogoliubov, oracle, free_energy or all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (c->parsed()) return compute(config, out);
  if (s->parsed()) return sweep(config, range, out);
  return verify(config, suite);
}
