#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "tsfem/assembly.hpp"
#include "tsfem/manufactured.hpp"

namespace tsfem {

/// Reference field u^e on Gamma_h together with its tangential surface
/// derivative D_{Gamma_h} u^e.
struct ReferenceValue {
  Tensor value;
  Tensor derivative;
};

using ReferenceField = std::function<ReferenceValue(const GeomEval&, const LiftData&)>;

/// Extension u o pi of a manufactured solution, with derivative D_Gamma u(pi x) B.
ReferenceField extension_of(const ManufacturedCase& exact);

struct ErrorReport {
  int level = 0;
  double h = 0.0;
  std::size_t dofs = 0;
  double l2_full = 0.0;      ///< ||u^e - u_h||
  double l2_tan = 0.0;       ///< ||P_h (u^e - u_h)||
  double l2_norm_pen = 0.0;  ///< ||Q_{h,k_p} (u^e - u_h)||
  double energy_Ah = 0.0;    ///< a_h + penalty part
  double energy_ah = 0.0;    ///< (||grad P_h e||^2 + ||P_h e||^2)^(1/2)
  double lifted_l2 = 0.0;    ///< ||u - u_h^l|| on Gamma, weighted by |det B|
};

struct ErrorOptions {
  int quad_degree = 0;  ///< 0 selects 2 (k_u + k_g) + 2
};

ErrorReport compute_errors(const TensorFESpace& space, std::span<const double> coeffs, const ReferenceField& reference,
                           const LevelSetSurface& surface, const PenaltyConfig& config, const ErrorOptions& options = {});
ErrorReport compute_errors(const TensorFESpace& space, std::span<const double> coeffs, const ManufacturedCase& exact,
                           const PenaltyConfig& config, const ErrorOptions& options = {});

/// Experimental order of convergence from (h, error) pairs: slope of the
/// weighted least-squares line through (log h, log err) with weights
/// 2^level. Throws InsufficientData for fewer than two samples and
/// NonPositiveError for non-positive errors.
struct EocSample {
  int level = 0;
  double h = 0.0;
  double error = 0.0;
};
double eoc_fit(std::span<const EocSample> samples);

/// Orders between consecutive samples, log(e_i / e_{i+1}) / log(h_i / h_{i+1}).
std::vector<double> pairwise_orders(std::span<const EocSample> samples);

enum class ErrorNorm { L2Full, L2Tan, L2NormPen, EnergyAh, Energyah };

double norm_value(const ErrorReport& r, ErrorNorm n);
const char* norm_name(ErrorNorm n);
constexpr ErrorNorm kAllNorms[] = {ErrorNorm::L2Full, ErrorNorm::L2Tan, ErrorNorm::L2NormPen, ErrorNorm::EnergyAh,
                                   ErrorNorm::Energyah};

double eoc_fit(std::span<const ErrorReport> reports, ErrorNorm n);

/// CSV columns level,h,dofs,l2_full,l2_tan,l2_norm_pen,energy_Ah,energy_ah.
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const ErrorReport& r);

}  // namespace tsfem
