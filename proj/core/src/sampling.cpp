#include "memdyn/sampling.hpp"

#include "memdyn/error.hpp"

namespace memdyn {

Point2 sample_uniform(const ConvexPolygon& poly, Rng& rng) {
  if (poly.shape() != Shape::Polygon) {
    throw Error(ErrorKind::DegenerateInput, "uniform sampling needs a two-dimensional polygon");
  }
  const auto [lo, hi] = poly.bounding_box();
  std::uniform_real_distribution<double> u1(lo.x1, hi.x1);
  std::uniform_real_distribution<double> u2(lo.x2, hi.x2);
  for (;;) {
    const Point2 p{u1(rng), u2(rng)};
    if (poly.contains(p, 0.0)) return p;
  }
}

std::vector<Point2> sample_uniform(const ConvexPolygon& poly, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point2> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_uniform(poly, rng));
  return out;
}

std::vector<Point2> sample_where(const ConvexPolygon& domain,
                                 const std::function<bool(Point2)>& accept, std::size_t n,
                                 std::uint64_t seed, std::size_t max_tries) {
  if (max_tries == 0) max_tries = 1000 * n + 10000;
  Rng rng(seed);
  std::vector<Point2> out;
  out.reserve(n);
  for (std::size_t tries = 0; out.size() < n && tries < max_tries; ++tries) {
    const Point2 p = sample_uniform(domain, rng);
    if (accept(p)) out.push_back(p);
  }
  return out;
}

}  // namespace memdyn
