#pragma once

// CSV and text output of free-energy breakdowns, kappa grids and sweeps.

#include <optional>
#include <string>
#include <vector>

#include "bosegas/free_energy.hpp"

namespace bosegas {

/// Shortest decimal that round-trips to the same double.
std::string shortest(double x);

std::string csv_header();
std::string csv_row(const FreeEnergyBreakdown& b);

/// Multi-line description of every term, the branch choice and the error scale.
std::string describe(const FreeEnergyBreakdown& b);

/// start, start + step, ... up to stop (inclusive within 1e-9 step). Throws
/// ConfigError for an empty or non-positive range.
std::vector<double> kappa_grid(double start, double stop, double step);

/// Parses "START:STOP:STEP".
std::vector<double> parse_kappa_range(const std::string& spec);

/// upper_bound at every kappa, computed on worker threads and returned in grid order.
std::vector<FreeEnergyBreakdown> sweep(const GasParameters& params, const std::vector<double>& kappas,
                                       unsigned threads = 0);

/// Index i such that the branch differs between rows i and i + 1.
std::optional<std::size_t> branch_switch(const std::vector<FreeEnergyBreakdown>& rows);

}  // namespace bosegas
