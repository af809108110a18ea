#include "covgamma/triangle.hpp"

#include <stdexcept>

namespace covgamma {

std::vector<RVec> corner_anchor_translations(const std::array<RVec, 3>& triangle,
                                             const Rational& lambda) {
  // The homothet of ratio lambda keeping corner t fixed is lambda*T + (1-lambda)*t.
  std::vector<RVec> out;
  out.reserve(3);
  for (const auto& t : triangle) out.push_back(scale(1 - lambda, t));
  return out;
}

TriangleGamma3Certificate triangle_gamma3(const std::array<RVec, 3>& triangle) {
  const Rational two_thirds(2, 3);
  const GaugeBody body = GaugeBody::triangle2(triangle);  // rejects degenerate input

  TriangleGamma3Certificate cert;
  cert.covering = verify_covering_2d(triangle, two_thirds,
                                     corner_anchor_translations(triangle, two_thirds));

  const Rational third(1, 3);
  const RVec centroid = scale(third, add(add(triangle[0], triangle[1]), triangle[2]));
  std::vector<RVec> witness_pts;  // in the centered body frame
  for (const auto& t : triangle) witness_pts.push_back(sub(t, centroid));
  witness_pts.push_back(RVec(2, Rational(0)));
  cert.lower = certify_lower_bound_points(body, witness_pts, 3, two_thirds, {});

  if (cert.covering.status != CoverageStatus::Covered)
    throw std::logic_error("triangle_gamma3: corner covering did not certify");
  if (cert.lower.status != LowerBoundStatus::BoundCertified)
    throw std::logic_error("triangle_gamma3: witness lower bound did not certify");
  cert.value = two_thirds;
  return cert;
}

}  // namespace covgamma
