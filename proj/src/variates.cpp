#include "dpinv/variates.hpp"

namespace dpinv::detail {

ExpZiggurat::ExpZiggurat() noexcept {
  x[0] = v / std::exp(-r);
  x[1] = r;
  for (int i = 1; i < 255; ++i) x[i + 1] = -std::log(std::exp(-x[i]) + v / x[i]);
  x[256] = 0.0;
  for (int i = 0; i < 257; ++i) f[i] = std::exp(-x[i]);
}

const ExpZiggurat kExpZiggurat;

}  // namespace dpinv::detail
