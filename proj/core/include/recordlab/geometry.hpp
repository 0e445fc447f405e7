#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace recordlab {

enum class ModelKind { Hypercube, Simplex };

struct Model {
  ModelKind kind = ModelKind::Simplex;
  int d = 1;

  Model() = default;
  Model(ModelKind k, int dim);  // throws DomainError for dim < 1
};

std::string to_string(ModelKind k);
ModelKind parse_model_kind(std::string_view s);  // "cube"/"hypercube" or "simplex"

/// A point of R^d. Sample points live in [0,1]^d, but fixtures may use any
/// finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return coords_; }
  double norm1() const;  // x₁+⋯+x_d

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Counter-based generator: the value at (seed, stream, draw) is a pure
/// function of those three integers.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double next_uniform();       // [0, 1), 53-bit resolution
  double next_open_uniform();  // (0, 1]
  double next_exponential();

  std::uint64_t draw_index() const { return counter_; }
  void seek(std::uint64_t draw) { counter_ = draw; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform sample into `out` (size model.d) without allocating.
void sample_into(const Model& model, RngStream& rng, std::span<double> out);
Point sample_point(const Model& model, RngStream& rng);

bool dominates(std::span<const double> p, std::span<const double> q);
bool dominates(const Point& p, const Point& q);
Point join(const Point& p, const Point& q);

}  // namespace recordlab
