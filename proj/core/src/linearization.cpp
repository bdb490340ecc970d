#include "gridgame/linearization.hpp"

#include <cmath>
#include <string>

#include "gridgame/errors.hpp"

namespace gridgame {

namespace {

std::string edge_text(double h_from, double h_to) {
  return "operating heads " + std::to_string(h_from) + ", " + std::to_string(h_to);
}

}  // namespace

FlowGradient pipe_gradient(FluidKind kind, double constant, double h_from, double h_to) {
  if (h_from == h_to)
    fail(Errc::ZeroPressureDrop, "pipe with " + edge_text(h_from, h_to));
  if (kind == FluidKind::Gas) {
    // both flow directions collapse to the same derivative pair
    const double s = std::sqrt(std::abs(h_from * h_from - h_to * h_to));
    if (s == 0.0) fail(Errc::ZeroPressureDrop, "gas pipe with " + edge_text(h_from, h_to));
    return {constant * h_from / s, -constant * h_to / s};
  }
  const double drop = std::abs(h_from - h_to);
  const double g =
      constant / kWaterExponent * std::pow(drop, 1.0 / kWaterExponent - 1.0);
  return {g, -g};
}

FlowGradient compressor_gradient(double power, double k1, double k2, double alpha,
                                 double h_from, double h_to) {
  if (h_from == h_to)
    fail(Errc::ZeroPressureDrop, "compressor with " + edge_text(h_from, h_to));
  const bool forward = h_from > h_to;
  const double hi = forward ? h_from : h_to;  // suction/discharge ordering
  const double lo = forward ? h_to : h_from;
  const double r = hi / lo;
  const double den = k2 - k1 * std::pow(r, alpha);
  if (std::abs(den) <= 1e-12 * (std::abs(k2) + k1 * std::pow(r, alpha)))
    fail(Errc::CompressorSingular,
         "k2 - k1*r^alpha vanishes at ratio " + std::to_string(r));
  // derivative of P/den through r, for the forward (h_from > h_to) direction;
  // the backward branch flips the flow sign and swaps the chain rule roles
  const double dq_dr = power * k1 * alpha * std::pow(r, alpha - 1.0) / (den * den);
  if (forward) {
    const double d_from = dq_dr / lo;
    return {d_from, -d_from * hi / lo};
  }
  const double d_to = -dq_dr / lo;
  return {-d_to * hi / lo, d_to};
}

}  // namespace gridgame
