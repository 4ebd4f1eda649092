#include "dcsk/spreading.hpp"

#include <stdexcept>

namespace dcsk {

Eigen::MatrixXd walsh(int order) {
  if (order < 2 || (order & (order - 1)) != 0)
    throw std::invalid_argument("walsh: order must be a power of two >= 2");
  Eigen::MatrixXd w(1, 1);
  w(0, 0) = 1.0;
  for (int size = 1; size < order; size *= 2) {
    Eigen::MatrixXd doubled(2 * size, 2 * size);
    doubled.topLeftCorner(size, size) = w;
    doubled.topRightCorner(size, size) = w;
    doubled.bottomLeftCorner(size, size) = w;
    doubled.bottomRightCorner(size, size) = -w;
    w = std::move(doubled);
  }
  return w;
}

Eigen::ArrayXd compose_user_signal(int user, int bit,
                                   Eigen::Ref<const Eigen::ArrayXd> segment,
                                   const Eigen::MatrixXd& walsh_matrix) {
  const Eigen::Index order = walsh_matrix.rows();
  if (bit != 0 && bit != 1)
    throw std::invalid_argument("compose_user_signal: bit must be 0 or 1");
  if (user < 1 || 2 * user > order)
    throw std::invalid_argument(
        "compose_user_signal: user index exceeds the code capacity");
  if (segment.size() < 1)
    throw std::invalid_argument("compose_user_signal: empty carrier segment");
  // Row 2u-1 carries bit 1, row 2u carries bit 0 (1-based matrix rows).
  const Eigen::Index row = 2 * user - 1 - bit;
  const Eigen::Index f = segment.size();
  Eigen::ArrayXd out(order * f);
  for (Eigen::Index chip = 0; chip < order; ++chip)
    out.segment(chip * f, f) = walsh_matrix(row, chip) * segment;
  return out;
}

}  // namespace dcsk
