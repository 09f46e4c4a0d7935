#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace evlab {

enum class Parity { even, odd };

/// A real value with an error estimate.
struct RealEstimate {
  double value = 0.0;
  double err = 0.0;
};

/// An SL2(Z) Hecke-Maass cusp form given by its spectral parameter, parity
/// and Hecke eigenvalues at primes. Immutable after construction; the Hecke
/// table is filled eagerly and derived constants are cached thread-safely.
class MaassForm {
 public:
  static constexpr long kDefaultTableLimit = 100000;

  /// Throws DataError if a prime <= pmax is missing, a Kim-Sarnak bound is
  /// violated, or a supplied composite value disagrees with the recursion.
  MaassForm(double t, Parity parity, long pmax, std::map<long, double> primes,
            std::map<long, double> composites = {}, std::string label = {},
            long table_limit = kDefaultTableLimit);

  double spectral_param() const { return t_; }
  Parity parity() const { return parity_; }
  bool is_even() const { return parity_ == Parity::even; }
  long pmax() const { return pmax_; }
  const std::string& label() const { return label_; }

  /// lambda(m) for m >= 1; throws InsufficientCoefficients if m has a prime
  /// factor above pmax and no composite value was supplied.
  double lambda(long m) const;
  bool has_lambda(long m) const;

  /// lambda(0..table_limit); NaN where a prime factor is out of range.
  const std::vector<double>& table() const;
  long table_limit() const;

  /// |rho(1)|^2 = 8 / Lambda(1, ad phi); computed once, then cached.
  double rho1_sq() const;

 private:
  struct State;
  double t_;
  Parity parity_;
  long pmax_;
  std::string label_;
  std::shared_ptr<State> state_;
};

/// Parses the line-oriented form file. DataError messages name the line.
MaassForm load_maass_form(const std::string& path);

double hecke_lambda(const MaassForm& form, long m);

/// L(1, ad phi). Evaluated through a smoothed approximate functional
/// equation for the degree-3 adjoint L-function.
RealEstimate adjoint_l_at_1(const MaassForm& form);

/// zeta(2) sum lambda(n^2) n^{-1} e^{-n/X}; slowly converging diagnostic.
RealEstimate adjoint_l_at_1_smoothed(const MaassForm& form, double X);

double rho1_squared(const MaassForm& form);

/// Divisor power sum sigma_a(m) = sum_{d | m} d^a.
std::complex<double> divisor_sigma(long m, std::complex<double> a);

}  // namespace evlab
