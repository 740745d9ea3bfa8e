#pragma once

#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hwalg/operator.hpp"

namespace hwalg {

using complex = std::complex<double>;

/// One sampled axis. `coordinate` is the spacetime index it carries; index 0
/// is sampled in time units (x0 = c t).
struct GridAxis {
  int coordinate = 1;
  double min = 0.0;
  double max = 1.0;
  int points = 8;

  double spacing() const { return (max - min) / (points - 1); }
  double at(int k) const { return min + k * spacing(); }
};

struct GridSpec {
  std::vector<GridAxis> axes;
  /// Central-difference order: 2 or 4.
  int stencil_order = 4;
  /// Richardson extrapolation steps; 0 uses the raw stencil.
  int richardson_levels = 1;
  /// Singular hyperplanes coordinate == value (axis units) that the closed
  /// grid box must not touch.
  std::vector<std::pair<int, double>> exclusions;

  /// Throws GridError on fewer than 8 points, bad order, duplicate
  /// coordinates or an excluded locus inside the box.
  void validate() const;
  std::size_t size() const;
  std::vector<std::size_t> shape() const;
  int axis_of(int coordinate) const;
};

/// Complex field with `dim` components on a grid. Points closer than
/// margin[a] to either end of axis a are not valid (consumed by stencils).
struct SampledField {
  std::vector<std::size_t> shape;
  std::vector<std::vector<complex>> components;
  std::vector<int> margin;

  int dim() const { return static_cast<int>(components.size()); }
  std::size_t size() const { return components.empty() ? 0 : components.front().size(); }
};

/// Evaluate f at every grid point; f receives one value per axis in axis
/// units and returns `dim` components.
SampledField sample(const GridSpec& grid, int dim,
                    const std::function<std::vector<complex>(const std::vector<double>&)>& f);

/// x_mu multiplies by the coordinate, p_mu acts as -i hbar eta_mu,mu d/dx_mu
/// via central differences with the grid's order and Richardson steps.
/// Throws UnboundSymbol, GridError (operator needs an axis the grid lacks or
/// the stencil consumes the whole grid).
SampledField apply_operator(const OperatorExpr& expr, const SampledField& f, const GridSpec& grid,
                            const Bindings& bindings);

/// Visit every valid point index of `f`.
void for_each_valid(const SampledField& f, const std::function<void(std::size_t)>& visit);

/// Rows "axis0,axis1,...,re0,im0,..." with a header line.
void write_csv(std::ostream& out, const GridSpec& grid, const SampledField& f);

/// Evaluate a momentum-only operator on a plane wave: p_mu -> values[mu].
/// Throws std::invalid_argument when a position letter occurs.
MatrixValue substitute_momenta(const OperatorExpr& expr, const std::array<ScalarValue, 4>& values);
std::vector<std::vector<complex>> substitute_momenta(const OperatorExpr& expr,
                                                     const std::array<complex, 4>& values,
                                                     const Bindings& bindings);

struct ResidualReport {
  std::string case_name;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, std::string>> details;
  std::vector<std::string> notes;
  double max_rel_residual = 0.0;
  std::optional<double> convergence_slope;
  double tolerance = 0.0;
  bool passed = false;
  std::optional<GridSpec> grid;
  Bindings bindings;
};

/// Carroll kernel c sqrt(mc/(2 pi i hbar x)) exp(i m c^3 t^2/(2 hbar x)),
/// principal square-root branch.
complex carroll_kernel(double x, double t, double hbar, double m, double c);
/// Free Schroedinger kernel sqrt(m/(2 pi i hbar t)) exp(i m x^2/(2 hbar t)).
complex schrodinger_kernel(double x, double t, double hbar, double m);

struct KernelOptions {
  double xmin = 0.5, xmax = 2.0, tmin = -1.0, tmax = 1.0;
  int points = 81;
  int stencil_order = 4;
  int richardson_levels = 1;
  double tolerance = 1e-6;
  /// Allowed relative deviation of the raw-stencil slope from stencil_order.
  double slope_tolerance = 0.15;
};

/// Residual of [(1/2) p1 - aUR H^2] on the kernel with aUR = -1/(4 m c^3),
/// relative to the larger of the two terms pointwise, over the inner 80% of
/// the box. Also measures the raw-stencil convergence slope and runs the
/// distributional delta probe, the mass-scaling width probe and the x <-> ct
/// duality probe. Throws GridError if x = 0 lies in [xmin, xmax].
ResidualReport kernel_residual(const KernelOptions& options, const Bindings& bindings);

struct PlaneWaveState {
  std::array<double, 3> k{};
  double omega = 0.0;
  std::array<complex, 2> spinor{};
  int sign = +1;
};

/// Unit spinor with (sigma . k) u = lambda u, lambda = +-|k|.
std::array<complex, 2> helicity_spinor(const std::array<double, 3>& k, int eigen_sign);

/// sqrt(2 m c^3 |k| / hbar).
double carroll_frequency(const std::array<double, 3>& k, double hbar, double m, double c);

/// Plane-wave branches u+ e^{i(k.r - wt)}, u- e^{-i(k.r - wt)} of
/// sigma.p - 2 aUR H^2 with aUR = -1/(4 m c^3). Throws std::invalid_argument
/// for k = 0.
ResidualReport dispersion_check(const std::array<double, 3>& k, const Bindings& bindings,
                                double tolerance = 1e-12);
std::pair<PlaneWaveState, PlaneWaveState> plane_wave_pair(const std::array<double, 3>& k,
                                                          const Bindings& bindings);

/// Helicity-eigenvector residuals ||(sigma.k) u -+ |k| u||.
ResidualReport helicity_check(const std::array<double, 3>& k, double tolerance = 1e-12);

/// Exact check that p^2 - 2 aNR H annihilates e^{i(k.r - wt)} with
/// w = hbar |k|^2 / (2 aNR), by symbolic substitution; k is rational.
/// `bindings` (hbar, aNR) only feed the reported numeric frequency.
ResidualReport schrodinger_check(const std::array<Rational, 3>& k, const Bindings& bindings);

/// Relabel x <-> ct: compares Phi(c t_s, x_s / c) with c K(x_s, t_s) at a
/// fixed sample set; returns the largest relative difference.
double duality_probe(double hbar, double m, double c);

nlohmann::json to_json(const ResidualReport& r);
std::string to_text(const ResidualReport& r);

}  // namespace hwalg
