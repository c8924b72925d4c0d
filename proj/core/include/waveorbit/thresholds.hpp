#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "waveorbit/reference_state.hpp"

namespace waveorbit {

struct ThresholdEntry {
    std::string kind;   // "Q" or "W"
    int dim;
    double exponent;
    double beta;        // 0 for Q
    double extent;      // L of the solve grid
    std::int64_t points;
    double mass_sq;
    double residual;
};

// Critical-mass table, persisted as CSV
// (kind,N,exponent,beta,L,M,mass_sq,residual) and guarded by an exclusive
// file lock for writes so independent jobs can share one table.
class ThresholdTable {
public:
    ThresholdTable() = default;
    explicit ThresholdTable(std::filesystem::path csv_path);

    // Best available entry (largest point count) for (kind, N, exponent, beta).
    std::optional<ThresholdEntry> lookup(ReferenceKind kind, int dim, double exponent,
                                         double beta) const;

    // Lookup, computing (and persisting, when backed by a file) on the default
    // reference grid when missing.
    ThresholdEntry require(ReferenceKind kind, int dim, double exponent, double beta,
                           double tol = 1e-10);

    void insert(const ThresholdEntry& e);
    const std::vector<ThresholdEntry>& entries() const { return entries_; }

    void load();
    void save() const;  // rewrites the whole table under an exclusive lock

private:
    std::filesystem::path path_;
    std::vector<ThresholdEntry> entries_;
};

// Computes one threshold entry by a Petviashvili solve on the given grid.
ThresholdEntry compute_threshold(ReferenceKind kind, int dim, double exponent,
                                 std::optional<double> beta, std::shared_ptr<const Grid> grid,
                                 double tol = 1e-10);

// Coarse-grid Richardson extrapolation across two resolutions; returns the
// extrapolated entry (grid metadata of the finer solve) plus an error bar.
struct RichardsonThreshold {
    ThresholdEntry entry;
    double mass_sq_error;  // |fine - extrapolated|
};
RichardsonThreshold compute_threshold_richardson(ReferenceKind kind, int dim, double exponent,
                                                 std::optional<double> beta, double extent,
                                                 std::int64_t coarse_points,
                                                 std::int64_t fine_points, double tol = 1e-10);

}  // namespace waveorbit
