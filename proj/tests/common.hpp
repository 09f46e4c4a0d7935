#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "evlab/maass.hpp"

#ifndef EVLAB_DATA_DIR
#define EVLAB_DATA_DIR "data"
#endif

namespace testing {

inline std::string data(const std::string& name) { return std::string(EVLAB_DATA_DIR) + "/" + name; }

inline const evlab::MaassForm& even_form() {
  static const evlab::MaassForm f = evlab::load_maass_form(data("maass_even_13.78.txt"));
  return f;
}
inline const evlab::MaassForm& even_form2() {
  static const evlab::MaassForm f = evlab::load_maass_form(data("maass_even_17.74.txt"));
  return f;
}
inline const evlab::MaassForm& odd_form() {
  static const evlab::MaassForm f = evlab::load_maass_form(data("maass_odd_9.53.txt"));
  return f;
}

inline double rel(std::complex<double> a, std::complex<double> b) {
  const double m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

}  // namespace testing
