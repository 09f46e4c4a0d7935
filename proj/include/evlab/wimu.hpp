#pragma once

#include "evlab/lfun.hpp"
#include "evlab/maass.hpp"
#include "evlab/specfun.hpp"

namespace evlab {

struct MuEvaluation {
  int n = 3;
  double t = 0.0;
  cplx a_n = 1.0;
  cplx value;
  /// Gamma(1/4 + i(t_phi - nt)/2) Gamma(1/4 - i(t_phi + nt)/2) / |Gamma(n/4 + int/2)|^2
  cplx gamma_factor;
  cplx l_central;   // L(1/2 - int)
  cplx l_special;   // L((3-n)/2)
  cplx zeta_denom;  // zeta(n/2 + int); the completed value underflows for large nt
  double err_estimate = 0.0;
};

/// mu_{n,t} from completed L-functions:
///   (a_n rho(1)/4) Lambda(1/2 - int, phi) Lambda((3-n)/2, phi) / |Lambda(n/2 + int)|^2.
/// Exact zero for odd forms. Requires |t| >= 2.
MuEvaluation mu_completed(const MaassForm& form, int n, double t, cplx a_n = 1.0);

/// The same quantity assembled from raw Gamma, zeta and L factors:
///   (a_n rho(1) / 4 pi^{2 - n/2 - int}) |Gamma((3-n)/4 + it_phi/2)|^2
///   Gamma(1/4 + i(t_phi - nt)/2) Gamma(1/4 - i(t_phi + nt)/2) L(1/2 - int) L((3-n)/2) / |Lambda(n/2 + int)|^2.
MuEvaluation mu_gamma_form(const MaassForm& form, int n, double t, cplx a_n = 1.0);

/// |mu|^2 = (|a_n|^2/2) |Lambda(1/2 - int)|^2 Lambda((3-n)/2)^2 / (|Lambda(n/2 + int)|^4 Lambda(1, ad)).
double mu_squared(const MaassForm& form, int n, double t, cplx a_n = 1.0);

/// Unit factor pi^{int} separating the completed-L display with pi^{-int}
/// in the denominator from the Gamma-form assembly.
cplx literal_display_phase(int n, double t);

/// |Gamma(1/4 + i(t_phi - nt)/2) Gamma(1/4 - i(t_phi + nt)/2)|^2 / |Gamma(n/4 + int/2)|^4
double gamma_factor_sq(const MaassForm& form, int n, double t);
/// (2/(nt))^{n-1}
double stirling_gamma_sq(int n, double t);

/// Precomputes the t-independent factors for repeated evaluation on a grid.
class MuEvaluator {
 public:
  MuEvaluator(const MaassForm& form, int n, cplx a_n = 1.0);

  bool vanishes() const { return odd_; }
  int n() const { return n_; }
  const MaassForm& form() const { return *form_; }

  MuEvaluation completed(double t) const;
  MuEvaluation gamma_form(double t) const;
  /// |mu|^2 and |zeta(n/2 + int)|^4 |mu|^2, both in log-safe assembly.
  double squared(double t) const;
  double zeta_weighted_squared(double t) const;
  struct Squares {
    double mu_sq = 0.0;
    double zeta_weighted = 0.0;
  };
  /// Both squares from a single central L-value.
  Squares squares(double t) const;

  cplx l_special() const { return l_special_.value; }
  double l_special_err() const { return l_special_.err_estimate; }
  /// Lambda((3-n)/2, phi), real.
  double completed_special() const;
  /// |Gamma((3-n)/4 + it_phi/2)|^2
  double gamma_special_sq() const;
  double rho1() const { return rho1_; }
  /// Lambda(1, ad phi), evaluated directly; equals 8 / |rho(1)|^2.
  double completed_adjoint_at_1() const { return lambda_ad_; }

 private:
  const MaassForm* form_;
  int n_;
  cplx a_;
  bool odd_;
  double rho1_ = 0.0;
  double lambda_ad_ = 0.0;
  LValue l_special_;
  cplx log_gamma_special_;  // log gamma_phi((3-n)/2)
  GammaFactor g_;
};

}  // namespace evlab
