#include "recordlab/geometry.hpp"

#include "recordlab/error.hpp"

#include <algorithm>
#include <cmath>

namespace recordlab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void check_dims(std::size_t a, std::size_t b) {
  if (a != b)
    throw DomainError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

Model::Model(ModelKind k, int dim) : kind(k), d(dim) {
  if (dim < 1) throw DomainError("model dimension must be at least 1");
}

std::string to_string(ModelKind k) { return k == ModelKind::Hypercube ? "cube" : "simplex"; }

ModelKind parse_model_kind(std::string_view s) {
  if (s == "cube" || s == "hypercube") return ModelKind::Hypercube;
  if (s == "simplex") return ModelKind::Simplex;
  throw DomainError("unknown model '" + std::string(s) + "'");
}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DomainError("point must have at least one coordinate");
  for (double c : coords_)
    if (!std::isfinite(c)) throw DomainError("point coordinates must be finite");
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

double Point::norm1() const {
  double s = 0.0;
  for (double c : coords_) s += c;
  return s;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed) ^ (stream * kGolden + 0x632BE59BD9B4E019ULL))) {}

std::uint64_t RngStream::next_u64() { return mix64(key_ + (++counter_) * kGolden); }

double RngStream::next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::next_open_uniform() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::next_exponential() { return -std::log(next_open_uniform()); }

void sample_into(const Model& model, RngStream& rng, std::span<double> out) {
  check_dims(out.size(), static_cast<std::size_t>(model.d));
  if (model.kind == ModelKind::Hypercube) {
    for (double& x : out) x = rng.next_uniform();
    return;
  }
  // Normalized exponential spacings: the first d of d+1 Dirichlet(1,…,1) weights.
  double total = 0.0;
  for (double& x : out) {
    x = rng.next_exponential();
    total += x;
  }
  total += rng.next_exponential();
  double s = 0.0;
  for (double& x : out) {
    x /= total;
    s += x;
  }
  // Rounding can push the coordinate sum a few ulps past 1.
  while (s > 1.0) {
    s = 0.0;
    for (double& x : out) {
      x = std::nextafter(x, 0.0);
      s += x;
    }
  }
}

Point sample_point(const Model& model, RngStream& rng) {
  std::vector<double> c(static_cast<std::size_t>(model.d));
  sample_into(model, rng, c);
  return Point(std::move(c));
}

bool dominates(std::span<const double> p, std::span<const double> q) {
  check_dims(p.size(), q.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!(p[i] > q[i])) return false;
  return true;
}

bool dominates(const Point& p, const Point& q) { return dominates(p.coords(), q.coords()); }

Point join(const Point& p, const Point& q) {
  check_dims(p.coords().size(), q.coords().size());
  std::vector<double> c(p.coords().begin(), p.coords().end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::max(c[i], q.coords()[i]);
  return Point(std::move(c));
}

}  // namespace recordlab
