#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>

#include "fde/barriers.hpp"
#include "fde/solver.hpp"

// Output writers. Numbers are printed with %.17g so files are byte-for-byte
// reproducible; only the metadata sidecar carries a wall-clock timestamp.

namespace fde {

std::string fmt17(double x);

/// Creates parent directories. Throws Error on I/O failure.
void write_text(const std::filesystem::path& path, const std::string& text);

/// `t,r,v` rows for every recorded time and node.
std::string solution_csv(const RadialSolution& sol);
/// `t,sup_norm`
std::string sup_norm_csv(const RadialSolution& sol);
/// `t,r_probe,gap` for probe `index`.
std::string probe_csv(const RadialSolution& sol, std::size_t index);
/// `xi,A_psi` (excluded corner points omitted).
std::string certificate_csv(const CertificateReport& cert);
/// Gnuplot two-column block with a comment header.
std::string two_column(const std::string& title, std::span<const double> x,
                       std::span<const double> y);

/// Ordered key = value text with a `run.timestamp` line first.
std::string metadata_sidecar(const std::map<std::string, std::string>& entries);

}  // namespace fde
