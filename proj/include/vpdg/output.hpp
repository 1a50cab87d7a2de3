// CSV/report emission: 17-significant-digit serialization, atomic file
// replacement, and the diagnostics/fit/convergence/snapshot formats.
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vpdg/diagnostics.hpp"
#include "vpdg/study.hpp"

namespace vpdg {

std::string format_g17(double v);

// Writes via a temp file + rename so readers never observe partial files.
void write_file_atomic(const std::filesystem::path& path, const std::string& body);

void write_diagnostics_csv(const std::filesystem::path& path, const RunDiagnostics& diag);

void write_fit_csv(const std::filesystem::path& path, std::span<const ExpFit> fits);

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& report);

// Phase-space samples on a uniform plot grid of 4(k+1) points per cell
// and direction.
void write_snapshot_csv(const std::filesystem::path& path, const Distribution& f,
                        const NodalBasis1D& basis);

struct DiagSeries {
    std::vector<double> t;
    std::vector<double> e_l2;
};

// Reads the t and e_l2norm columns back from a diagnostics CSV.
DiagSeries read_diagnostics_csv(const std::filesystem::path& path);

}  // namespace vpdg
