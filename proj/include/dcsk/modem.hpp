#pragma once

#include <vector>

#include <Eigen/Dense>

namespace dcsk {

// Sign of a correlator or detector statistic; a tie at exactly zero decides
// bit 0 so the decision rule is deterministic.
struct DecisionStatistic {
  double value = 0.0;
  int bit = 0;
};

// Per bit, emits beta carrier samples followed by the same samples repeated
// (bit 1) or negated (bit 0). The carrier must supply beta fresh samples per
// bit; bit l consumes carrier samples [l*beta, (l+1)*beta).
Eigen::ArrayXd dcsk_modulate(const std::vector<int>& bits,
                             Eigen::Ref<const Eigen::ArrayXd> carrier,
                             Eigen::Index beta);

// Differential correlator over one frame of 2*beta samples:
// value = sum_j r[beta+j] * r[j], decision 1 iff the value is positive.
DecisionStatistic dcsk_correlate(Eigen::Ref<const Eigen::ArrayXd> frame,
                                 Eigen::Index beta);

// Generalized maximum-likelihood multi-user detector: despreads one symbol of
// 2U segments with the user's bit-1 and bit-0 Walsh rows (delay-aligned sum
// into one length-f segment), then compares the despread energies.
DecisionStatistic gml_detect(Eigen::Ref<const Eigen::ArrayXd> symbol, int user,
                             const Eigen::MatrixXd& walsh_matrix,
                             Eigen::Index f);

}  // namespace dcsk
