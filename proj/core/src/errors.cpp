#include "tsfem/errors.hpp"

#include <cmath>
#include <ostream>

#include "tsfem/error.hpp"

namespace tsfem {

ReferenceField extension_of(const ManufacturedCase& exact) {
  return [&exact](const GeomEval&, const LiftData& l) {
    const ExactJet j = exact.jet(l.point);
    const int rank = exact.rank();
    return ReferenceValue{j.value, apply_to_slot(j.surface_derivative, l.b.transpose(), rank)};
  };
}

ErrorReport compute_errors(const TensorFESpace& space, std::span<const double> coeffs, const ReferenceField& reference,
                           const LevelSetSurface& surface, const PenaltyConfig& config, const ErrorOptions& options) {
  config.validate();
  if (coeffs.size() != space.total_dofs()) throw RankMismatch("coefficient vector does not match the space");
  const CurvedMesh& cmesh = space.mesh();
  const ScalarLagrangeSpace& scalar = space.scalar();
  const int dim = space.dim();
  const int rank = space.rank();

  const int degree = options.quad_degree > 0 ? options.quad_degree : error_quad_degree(scalar.order(), cmesh.order());
  const QuadRule rule = quad_rule(cmesh.surface_dim(), degree);
  const BasisTable geo(cmesh.geometry_basis(), rule.points);
  const BasisTable fe(scalar.basis(), rule.points);
  const PenaltyNormalTable normals(config, cmesh, rule.points);

  double full = 0.0, tan = 0.0, pen = 0.0, grad = 0.0, lifted = 0.0;
  for (std::size_t e = 0; e < cmesh.num_elements(); ++e) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const GeomEval g = eval_geometry(cmesh, e, geo.values[q], geo.grads[q], geo.hessians[q]);
      const double wq = rule.weights[q] * g.measure;
      const LiftData l = lift(surface, g);
      const ReferenceValue ref = reference(g, l);
      if (ref.value.rank() != rank || ref.value.dim() != dim) throw RankMismatch("reference field rank");
      const FieldValue uh = evaluate(space, coeffs, e, g, fe.values[q], fe.grads[q]);

      const Tensor err = ref.value - uh.value;
      const Tensor derr = ref.derivative - uh.derivative;
      const TensorProjector ph(g.normal, dim);
      const TensorProjector pp(normals.at(e, q, g), dim);
      const double e2 = inner(err, err);
      const Tensor et = ph.tangential(err);
      const Tensor en = pp.normal_part(err);
      const Tensor ge = covariant_gradient_at_point(g, err, derr);
      full += wq * e2;
      tan += wq * inner(et, et);
      pen += wq * inner(en, en);
      grad += wq * inner(ge, ge);
      lifted += wq * l.det_b * e2;
    }
  }
  ErrorReport r;
  r.level = cmesh.base().level;
  r.h = cmesh.h();
  r.dofs = space.total_dofs();
  r.l2_full = std::sqrt(full);
  r.l2_tan = std::sqrt(tan);
  r.l2_norm_pen = std::sqrt(pen);
  r.energy_ah = std::sqrt(grad + tan);
  r.energy_Ah = std::sqrt(grad + tan + config.prefactor(r.h) * pen);
  r.lifted_l2 = std::sqrt(lifted);
  return r;
}

ErrorReport compute_errors(const TensorFESpace& space, std::span<const double> coeffs, const ManufacturedCase& exact,
                           const PenaltyConfig& config, const ErrorOptions& options) {
  if (exact.rank() != space.rank() || exact.dim() != space.dim()) throw RankMismatch("manufactured case rank");
  return compute_errors(space, coeffs, extension_of(exact), exact.surface(), config, options);
}

double eoc_fit(std::span<const EocSample> samples) {
  if (samples.size() < 2) throw InsufficientData("at least two levels are required");
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (const auto& s : samples) {
    if (!(s.error > 0.0)) throw NonPositiveError("errors must be positive");
    if (!(s.h > 0.0)) throw NonPositiveError("mesh sizes must be positive");
    const double w = std::ldexp(1.0, s.level);
    sw += w;
    sx += w * std::log(s.h);
    sy += w * std::log(s.error);
  }
  const double xm = sx / sw, ym = sy / sw;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& s : samples) {
    const double w = std::ldexp(1.0, s.level);
    const double dx = std::log(s.h) - xm;
    sxy += w * dx * (std::log(s.error) - ym);
    sxx += w * dx * dx;
  }
  if (!(sxx > 0.0)) throw InsufficientData("mesh sizes must differ");
  return sxy / sxx;
}

std::vector<double> pairwise_orders(std::span<const EocSample> samples) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const auto& a = samples[i];
    const auto& b = samples[i + 1];
    if (!(a.error > 0.0 && b.error > 0.0)) throw NonPositiveError("errors must be positive");
    out.push_back(std::log(a.error / b.error) / std::log(a.h / b.h));
  }
  return out;
}

double norm_value(const ErrorReport& r, ErrorNorm n) {
  switch (n) {
    case ErrorNorm::L2Full: return r.l2_full;
    case ErrorNorm::L2Tan: return r.l2_tan;
    case ErrorNorm::L2NormPen: return r.l2_norm_pen;
    case ErrorNorm::EnergyAh: return r.energy_Ah;
    case ErrorNorm::Energyah: return r.energy_ah;
  }
  return 0.0;
}

const char* norm_name(ErrorNorm n) {
  switch (n) {
    case ErrorNorm::L2Full: return "l2_full";
    case ErrorNorm::L2Tan: return "l2_tan";
    case ErrorNorm::L2NormPen: return "l2_norm_pen";
    case ErrorNorm::EnergyAh: return "energy_Ah";
    case ErrorNorm::Energyah: return "energy_ah";
  }
  return "";
}

double eoc_fit(std::span<const ErrorReport> reports, ErrorNorm n) {
  std::vector<EocSample> s;
  s.reserve(reports.size());
  for (const auto& r : reports) s.push_back({r.level, r.h, norm_value(r, n)});
  return eoc_fit(s);
}

void write_csv_header(std::ostream& os) { os << "level,h,dofs,l2_full,l2_tan,l2_norm_pen,energy_Ah,energy_ah\n"; }

void write_csv_row(std::ostream& os, const ErrorReport& r) {
  const auto old = os.precision(12);
  os << r.level << ',' << r.h << ',' << r.dofs << ',' << r.l2_full << ',' << r.l2_tan << ',' << r.l2_norm_pen << ','
     << r.energy_Ah << ',' << r.energy_ah << '\n';
  os.precision(old);
}

}  // namespace tsfem
