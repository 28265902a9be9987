#include "hatom/numerics/quadrature.hpp"
#include <boost/math/quadrature/gauss.hpp>

namespace hatom::quad {

namespace {
template <unsigned N> GaussRule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto &x = G::abscissa();
  const auto &w = G::weights();
  GaussRule rule;
  // Boost stores the non-negative half; x[0] == 0 when N is odd.
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      rule.nodes.push_back(0.0);
      rule.weights.push_back(w[i]);
    } else {
      rule.nodes.push_back(x[i]);
      rule.weights.push_back(w[i]);
      rule.nodes.push_back(-x[i]);
      rule.weights.push_back(w[i]);
    }
  }
  return rule;
}
} // namespace

const GaussRule &gauss_legendre(int n) {
  static const GaussRule r8 = make_rule<8>();
  static const GaussRule r16 = make_rule<16>();
  static const GaussRule r24 = make_rule<24>();
  static const GaussRule r32 = make_rule<32>();
  static const GaussRule r48 = make_rule<48>();
  static const GaussRule r64 = make_rule<64>();
  switch (n) {
  case 8:
    return r8;
  case 16:
    return r16;
  case 24:
    return r24;
  case 32:
    return r32;
  case 48:
    return r48;
  case 64:
    return r64;
  default:
    throw DomainError("gauss_legendre: unsupported rule size");
  }
}

} // namespace hatom::quad
