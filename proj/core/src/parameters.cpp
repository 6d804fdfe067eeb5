#include "crnli/parameters.hpp"

#include <stdexcept>
#include <string>

namespace crnli {

void ModelParameters::validate(int n) const {
  if (f.size() != n)
    throw std::invalid_argument("ModelParameters: f has length " +
                                std::to_string(f.size()) + ", expected " +
                                std::to_string(n));
  for (int i = 0; i < n; ++i)
    if (!(f[i] > 0.0))
      throw std::invalid_argument("ModelParameters: f[" + std::to_string(i + 1) +
                                  "] must be > 0");
  if (!(p > 0.0)) throw std::invalid_argument("ModelParameters: p must be > 0");
  if (!(c > 0.0)) throw std::invalid_argument("ModelParameters: c must be > 0");
  if (!(b > 0.0)) throw std::invalid_argument("ModelParameters: b must be > 0");
  if (!(0.0 < beta && beta < alpha && alpha < 1.0))
    throw std::invalid_argument("ModelParameters: need 0 < beta < alpha < 1");
}

bool ModelParameters::valid(int n) const {
  try {
    validate(n);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return true;
}

}  // namespace crnli
