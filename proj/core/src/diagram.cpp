#include "tropica/diagram.hpp"

#include <ostream>

#include "tropica/format.hpp"

namespace tropica {

DiagramPoint diagram_point(std::size_t n, std::size_t m, double d, Convention convention) {
  const DerivedParams params = derive(allocate(n, m, d, convention));
  DiagramPoint point;
  point.d = d;
  point.region = classify_region(params);
  for (const EigenValue& e : eigen_set(params)) point.lambdas.push_back(e.lambda);
  if (params.r >= 0.5) point.lambda_corollary = lambda_nonneg(params);
  point.d1 = params.d1;
  point.d2 = params.d2;
  point.r = params.r;
  return point;
}

std::vector<DiagramPoint> sweep(std::size_t n, std::size_t m, std::size_t points,
                                Convention convention) {
  if (points < 2) throw PreconditionViolated("sweep needs at least 2 points");
  std::vector<DiagramPoint> rows;
  rows.reserve(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double d = static_cast<double>(k) / static_cast<double>(points - 1);
    rows.push_back(diagram_point(n, m, d, convention));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<DiagramPoint>& rows) {
  out << "d,region,lambda_corollary,lambda_count,lambda_1,lambda_2,lambda_3,d1,d2,r\n";
  for (const DiagramPoint& p : rows) {
    out << format_number(p.d) << ',' << to_string(p.region.label) << ',';
    if (p.lambda_corollary) out << format_number(*p.lambda_corollary);
    out << ',' << p.lambdas.size();
    for (std::size_t i = 0; i < 3; ++i) {
      out << ',';
      if (i < p.lambdas.size()) out << format_number(p.lambdas[i]);
    }
    out << ',' << format_number(p.d1) << ',' << format_number(p.d2) << ',' << format_number(p.r)
        << '\n';
  }
}

}  // namespace tropica
