#pragma once

#include <Eigen/Dense>

namespace dcsk {

// Sylvester-ordered Walsh matrix of power-of-two order. Entries are +/-1,
// the first row is all ones, and rows satisfy <w_i, w_j> = order * delta_ij.
Eigen::MatrixXd walsh(int order);

// Spreads one user's bit over a chaotic carrier segment: the segment is
// repeated once per Walsh chip and block-scaled by that chip. User u
// (1-based) signals bit 1 with row 2u-1 and bit 0 with row 2u, counting rows
// from 1, so a matrix of order 2U serves U users. The output length is
// order * segment length and the output energy is order times the segment
// energy.
Eigen::ArrayXd compose_user_signal(int user, int bit,
                                   Eigen::Ref<const Eigen::ArrayXd> segment,
                                   const Eigen::MatrixXd& walsh_matrix);

}  // namespace dcsk
