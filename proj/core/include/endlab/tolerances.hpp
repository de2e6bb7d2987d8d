#pragma once

namespace endlab {

struct Tolerances {
  double null = 1e-9;      // relative to the squared Euclidean norm
  double angle = 1e-9;     // face-sum checks
  double plane = 1e-8;     // face planarity, relative
  double orient = 1e-9;    // edge orientation, relative to |Z|
  double rank = 1e-8;      // singular values, relative to sigma_max
  double cross_ratio = 1e-9;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace endlab
