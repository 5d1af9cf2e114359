#pragma once

#include <complex>
#include <filesystem>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "scarfcs/coherent.hpp"
#include "scarfcs/eigensystem.hpp"
#include "scarfcs/quadrature.hpp"

namespace scarfcs {

/// Uniform (x, t) grid. x spans [-pi/2 + margin, pi/2 - margin], t spans [0, t_max].
struct GridSpec {
  int x_points = 200;
  int t_points = 200;
  double t_max = 2.0 * std::numbers::pi;
  double margin = 0.05;

  void validate() const;
  [[nodiscard]] double x(int j) const;
  [[nodiscard]] double t(int i) const;
  [[nodiscard]] double dx() const;
};

/// |Psi(x, t)|^2 sampled on a GridSpec, row i = time t_i.
struct CarpetField {
  GridSpec grid;
  std::vector<double> density;
  /// int |Psi|^2 dx over the whole well per time slice (Gauss-Legendre).
  std::vector<double> slice_norms;
  /// Trapezoid mass of each displayed row; below 1 by the weight in the margins.
  std::vector<double> grid_mass;

  [[nodiscard]] double at(int i, int j) const {
    return density[static_cast<std::size_t>(i) * grid.x_points + j];
  }
  [[nodiscard]] double max_slice_norm_error() const;
};

/// Psi(x, t) = sum_n c_n exp(-i E_n t) psi_n(x) for one model. Eigenfunction
/// values at a given x are computed once and reused for every t.
class Evolver {
 public:
  Evolver(ModelKind model, const CoherentExpansion& state);

  [[nodiscard]] std::complex<double> operator()(double x, double t) const;
  /// Psi at fixed t for precomputed eigenfunction columns psi_n(x).
  [[nodiscard]] std::complex<double> combine(std::span<const double> psi, double t) const;
  [[nodiscard]] const Eigensystem& eigensystem() const { return system_; }
  [[nodiscard]] std::size_t levels() const { return coefficients_.size(); }

 private:
  Eigensystem system_;
  std::vector<std::complex<double>> coefficients_;
  std::vector<double> energies_;
};

std::complex<double> evolve(ModelKind model, const CoherentExpansion& state, double x, double t);

inline constexpr double kSliceNormHardTolerance = 1e-4;

struct CarpetOptions {
  unsigned threads = 1;
  const QuadratureRule* norm_rule = nullptr;  // default_rule() when null
};

/// Fills density(i, j) = |Psi(x_j, t_i)|^2. Throws ValidationError if any
/// slice norm leaves 1 +/- 1e-4. Output is bit-identical for any thread count.
CarpetField carpet(ModelKind model, const CoherentExpansion& state, const GridSpec& grid,
                   const CarpetOptions& options = {});

CarpetField carpet(ModelKind model, const GcsSpec& spec, const PotentialParams& params,
                   const Zeta& zeta, const GridSpec& grid,
                   const TruncationPolicy& policy = TruncationPolicy::adaptive(20),
                   const CarpetOptions& options = {});

enum class CarpetFormat { Csv, Pgm };

/// CSV: header "t,x_0,...,x_{X-1}", then one row "t_i,d_i0,..." per slice,
/// %.17g, LF line endings. PGM: binary P5, 16-bit big-endian, density scaled
/// so the maximum maps to 65535 (round half up), row 0 = t 0, with
/// `description` written as a comment line.
/// Writes to a temporary sibling and renames; throws IoError with the path
/// and leaves no partial file on failure.
void export_carpet(const CarpetField& field, CarpetFormat format,
                   const std::filesystem::path& destination, std::string_view description = {});

/// Encodes a density to the 16-bit PGM sample values used by export_carpet.
std::vector<std::uint16_t> pgm_samples(const std::vector<double>& density);

/// Parsed CSV carpet: coordinates and row-major density.
struct CarpetTable {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> density;
};

CarpetTable read_carpet_csv(const std::filesystem::path& source);

}  // namespace scarfcs
