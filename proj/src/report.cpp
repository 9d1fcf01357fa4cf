#include "bosegas/report.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "bosegas/error.hpp"

namespace bosegas {

std::string shortest(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error(ErrorKind::Internal, "shortest: formatting failed");
  return std::string(buf, p);
}

std::string csv_header() {
  return "kappa,beta,beta_c,mu0,N0,rho0,a,a_N,F0_plus,F0_bec,Fbec,branch,interaction,bogo_corr,total,error_scale";
}

std::string csv_row(const FreeEnergyBreakdown& b) {
  std::string s;
  for (double x : {b.kappa, b.beta, b.beta_c, b.mu0, b.N0, b.rho0, b.a, b.a_N, b.F0_plus, b.F0_bec, b.Fbec}) {
    s += shortest(x);
    s += ',';
  }
  s += to_string(b.branch);
  for (double x : {b.interaction, b.bogo_correction, b.total, b.error_scale}) {
    s += ',';
    s += shortest(x);
  }
  return s;
}

std::string describe(const FreeEnergyBreakdown& b) {
  std::ostringstream o;
  o.precision(10);
  o << "N = " << b.N << ", L = " << b.L << ", kappa = " << b.kappa << ", beta = " << b.beta
    << " (beta_c = " << b.beta_c << ")\n";
  o << "scattering length a = " << b.a << ", a_N = " << b.a_N << "\n";
  o << "ideal gas: mu0 = " << b.mu0 << ", N0 = " << b.N0 << ", N0/N = " << b.N0 / b.N << "\n";
  o << "  F0_plus                      " << b.F0_plus << "\n";
  o << "  interaction 8 pi a_N N^2/L^3 " << b.interaction << "\n";
  o << "  branch F^BEC - 8 pi a_N N0^2 " << b.branch_interacting << "  (F^BEC = " << b.Fbec << ")\n";
  o << "  branch F0_bec                " << b.branch_free << "\n";
  o << "  condensate term              " << b.condensate_term << "  [" << to_string(b.branch) << "]\n";
  o << "  correction                   " << b.bogo_correction << "\n";
  o << "  total                        " << b.total << "\n";
  o << "  error scale (not added)      " << b.error_scale << "\n";
  o << "form: " << to_string(b.form);
  if (b.near_critical) o << ", near critical: both branches reported";
  o << "\n";
  return o.str();
}

std::vector<double> kappa_grid(double start, double stop, double step) {
  if (!(std::isfinite(start) && std::isfinite(stop) && std::isfinite(step)))
    throw ConfigError("kappa range: values must be finite");
  if (!(start > 0.0)) throw ConfigError("kappa range: start must be positive");
  if (!(step > 0.0)) throw ConfigError("kappa range: step must be positive");
  if (stop < start) throw ConfigError("kappa range: empty (stop below start)");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (n > 100000) throw ConfigError("kappa range: more than 100000 points");
  std::vector<double> k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = start + static_cast<double>(i) * step;
  return k;
}

std::vector<double> parse_kappa_range(const std::string& spec) {
  double v[3];
  const char* p = spec.data();
  const char* end = spec.data() + spec.size();
  for (int i = 0; i < 3; ++i) {
    const auto [q, ec] = std::from_chars(p, end, v[i]);
    if (ec != std::errc()) throw ConfigError("kappa range '" + spec + "': expected START:STOP:STEP");
    p = q;
    if (i < 2) {
      if (p == end || *p != ':') throw ConfigError("kappa range '" + spec + "': expected START:STOP:STEP");
      ++p;
    }
  }
  if (p != end) throw ConfigError("kappa range '" + spec + "': trailing characters");
  return kappa_grid(v[0], v[1], v[2]);
}

std::vector<FreeEnergyBreakdown> sweep(const GasParameters& params, const std::vector<double>& kappas,
                                       unsigned threads) {
  const ScatteringSolution sol = solve_scattering(params);
  std::vector<FreeEnergyBreakdown> rows(kappas.size());
  std::vector<std::exception_ptr> errors(kappas.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < kappas.size();) {
      try {
        GasParameters p = params;
        p.kappa = kappas[i];
        p.beta = 0.0;
        rows[i] = upper_bound(p, sol);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(kappas.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::optional<std::size_t> branch_switch(const std::vector<FreeEnergyBreakdown>& rows) {
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    if (rows[i].branch != rows[i + 1].branch) return i;
  return std::nullopt;
}

}  // namespace bosegas
