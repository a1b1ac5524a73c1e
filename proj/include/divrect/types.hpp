#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace divrect {

using Vec = Eigen::VectorXd;
using IVec = Eigen::VectorXi;

/// Stable index of a partition element within a store.
using ElemId = std::int64_t;
inline constexpr ElemId kNoElem = -1;

/// Marker for evaluations that fail (hidden-infeasible points).
inline constexpr double kInfeasibleValue = std::numeric_limits<double>::infinity();

inline bool is_infeasible_value(double v) { return !std::isfinite(v); }

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw DomainError(what);
}

}  // namespace divrect
