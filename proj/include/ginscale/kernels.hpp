#pragma once

#include <span>
#include <vector>

#include "ginscale/citation_record.hpp"
#include "ginscale/fitting.hpp"

// Data-parallel inner loops. Every kernel has a serial reference and an OpenMP
// version computing bit-identical results; tests hold them to equality and
// bench/ measures the speedup.
namespace ginscale::kernels {

__extension__ typedef unsigned __int128 UInt128;

namespace serial {

/// sum over ordered pairs (i, j) of |x_i - x_j|, exact in 128-bit integers.
UInt128 pairwise_abs_diff_sum(const ValueCounts& values);

/// s-loss at every grid exponent.
std::vector<double> loss_grid(const FitPoints& points, const FitConfig& cfg);

std::vector<FitResult> fit_all(std::span<const CitationRecord> records, const FitConfig& cfg);

}  // namespace serial

namespace omp {

UInt128 pairwise_abs_diff_sum(const ValueCounts& values);
std::vector<double> loss_grid(const FitPoints& points, const FitConfig& cfg);
std::vector<FitResult> fit_all(std::span<const CitationRecord> records, const FitConfig& cfg);

}  // namespace omp

/// Worker count from GINSCALE_THREADS, or 0 when unset (OpenMP default).
int configured_threads();

}  // namespace ginscale::kernels
