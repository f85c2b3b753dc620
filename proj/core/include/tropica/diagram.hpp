#pragma once

// Fundamental diagram: eigenvalues as a function of density for fixed (n, m).

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tropica/spectral.hpp"
#include "tropica/traffic_model.hpp"

namespace tropica {

struct DiagramPoint {
  double d = 0.0;
  RegionLabel region;
  std::vector<double> lambdas;             // descending
  std::optional<double> lambda_corollary;  // present when r >= 1/2
  double d1 = 0.0;
  double d2 = 0.0;
  double r = 0.0;
};

DiagramPoint diagram_point(std::size_t n, std::size_t m, double d,
                           Convention convention = Convention::EV);

// points >= 2 uniform densities over [0, 1], in order.
std::vector<DiagramPoint> sweep(std::size_t n, std::size_t m, std::size_t points,
                                Convention convention = Convention::EV);

// Columns: d,region,lambda_corollary,lambda_count,lambda_1,lambda_2,lambda_3,d1,d2,r
void write_sweep_csv(std::ostream& out, const std::vector<DiagramPoint>& rows);

}  // namespace tropica
