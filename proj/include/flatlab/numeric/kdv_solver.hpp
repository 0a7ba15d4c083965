#pragma once

#include <iosfwd>
#include <vector>

#include "flatlab/numeric/fields.hpp"

namespace flatlab::numeric {

struct KdVOptions {
  /// dz must satisfy dz <= kappa dx^3 / (4 + 3 dx^2 max|l|).
  double kappa = 1.0;
  /// InstabilityError once max|l| exceeds this multiple of its initial value.
  double blowup_factor = 10.0;
  /// Keep every k-th slice (0 keeps only the first and last).
  std::size_t snapshot_every = 0;
};

struct KdVResult {
  Grid1D grid;
  std::vector<double> z;
  std::vector<std::vector<double>> slices;
  double mass_initial = 0.0;
  double mass_final = 0.0;

  /// |final - initial| / max(|initial|, sum |l_j| dx).
  double mass_drift() const;
  const std::vector<double>& final_slice() const { return slices.back(); }
  /// Grid-interpolated field over the stored slices.
  ScalarField2 field() const;
};

/// Largest dz allowed by the step bound for data with the given max |l|.
double max_stable_dz(const Grid1D& grid, double max_abs, double kappa = 1.0);

/// Integrates l_z = 3 l l_x - l_xxx from z0 for `steps` steps of size dz with
/// the Zabusky-Kruskal leapfrog scheme (one forward Euler start-up step) on a
/// periodic grid. Throws StepSizeError if dz violates the bound and
/// InstabilityError on blow-up.
KdVResult solve_kdv(const ScalarField2& initial, double z0, const Grid1D& grid, std::size_t steps,
                    double dz, const KdVOptions& options = {});

/// Discrete mass sum l_j dx.
double mass(const std::vector<double>& values, const Grid1D& grid);

/// CSV with header "x,value".
void write_csv(std::ostream& out, const Grid1D& grid, const std::vector<double>& values);

}  // namespace flatlab::numeric
