#include "dcsk/modem.hpp"

#include <stdexcept>

namespace dcsk {

Eigen::ArrayXd dcsk_modulate(const std::vector<int>& bits,
                             Eigen::Ref<const Eigen::ArrayXd> carrier,
                             Eigen::Index beta) {
  if (beta < 1) throw std::invalid_argument("dcsk_modulate: beta must be >= 1");
  const Eigen::Index n = static_cast<Eigen::Index>(bits.size());
  if (carrier.size() < n * beta)
    throw std::invalid_argument(
        "dcsk_modulate: carrier must supply beta samples per bit");
  Eigen::ArrayXd out(2 * beta * n);
  for (Eigen::Index l = 0; l < n; ++l) {
    const int b = bits[static_cast<std::size_t>(l)];
    if (b != 0 && b != 1)
      throw std::invalid_argument("dcsk_modulate: bits must be 0 or 1");
    const auto reference = carrier.segment(l * beta, beta);
    out.segment(2 * beta * l, beta) = reference;
    out.segment(2 * beta * l + beta, beta) = (2.0 * b - 1.0) * reference;
  }
  return out;
}

DecisionStatistic dcsk_correlate(Eigen::Ref<const Eigen::ArrayXd> frame,
                                 Eigen::Index beta) {
  if (beta < 1) throw std::invalid_argument("dcsk_correlate: beta must be >= 1");
  if (frame.size() != 2 * beta)
    throw std::invalid_argument("dcsk_correlate: frame length must be 2*beta");
  const double value = (frame.tail(beta) * frame.head(beta)).sum();
  return {value, value > 0.0 ? 1 : 0};
}

DecisionStatistic gml_detect(Eigen::Ref<const Eigen::ArrayXd> symbol, int user,
                             const Eigen::MatrixXd& walsh_matrix,
                             Eigen::Index f) {
  const Eigen::Index order = walsh_matrix.rows();
  if (f < 1) throw std::invalid_argument("gml_detect: f must be >= 1");
  if (user < 1 || 2 * user > order)
    throw std::invalid_argument("gml_detect: user index exceeds code capacity");
  if (symbol.size() != order * f)
    throw std::invalid_argument("gml_detect: symbol length must be order * f");
  Eigen::ArrayXd despread_one = Eigen::ArrayXd::Zero(f);
  Eigen::ArrayXd despread_zero = Eigen::ArrayXd::Zero(f);
  for (Eigen::Index chip = 0; chip < order; ++chip) {
    const auto seg = symbol.segment(chip * f, f);
    despread_one += walsh_matrix(2 * user - 2, chip) * seg;
    despread_zero += walsh_matrix(2 * user - 1, chip) * seg;
  }
  const double value =
      despread_one.square().sum() - despread_zero.square().sum();
  return {value, value > 0.0 ? 1 : 0};
}

}  // namespace dcsk
