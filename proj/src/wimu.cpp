#include "evlab/wimu.hpp"

#include <cmath>

#include "evlab/errors.hpp"

namespace evlab {

namespace {

constexpr cplx I(0.0, 1.0);

void check_args(int n, double t, const char* who) {
  if (n < 3) throw DomainError(std::string(who) + ": requires n >= 3");
  if (!(std::abs(t) >= 2.0)) throw DomainError(std::string(who) + ": requires |t| >= 2");
}

// log of Gamma(1/4 + i(t_phi - nt)/2) Gamma(1/4 - i(t_phi + nt)/2) / |Gamma(n/4 + int/2)|^2
cplx log_gamma_factor(double tp, int n, double t) {
  return log_gamma(cplx(0.25, (tp - n * t) / 2.0)) + log_gamma(cplx(0.25, -(tp + n * t) / 2.0)) -
         2.0 * log_gamma(cplx(n / 4.0, n * t / 2.0)).real();
}

}  // namespace

MuEvaluator::MuEvaluator(const MaassForm& form, int n, cplx a_n)
    : form_(&form), n_(n), a_(a_n), odd_(!form.is_even()), g_(standard_gamma_factor(form)) {
  if (n < 3) throw DomainError("MuEvaluator: requires n >= 3");
  if (odd_) return;
  rho1_ = std::sqrt(form.rho1_sq());
  lambda_ad_ = completed_adjoint_l(form, 1.0).value.real();
  const cplx s((3.0 - n) / 2.0, 0.0);
  l_special_ = l_value(form, s);
  l_special_.value = l_special_.value.real();
  log_gamma_special_ = g_.log_at(s);
}

double MuEvaluator::completed_special() const {
  if (odd_) return 0.0;
  return std::exp(log_gamma_special_.real()) * l_special_.value.real();
}

double MuEvaluator::gamma_special_sq() const {
  return std::exp(2.0 * log_gamma(cplx((3.0 - n_) / 4.0, form_->spectral_param() / 2.0)).real());
}

MuEvaluation MuEvaluator::completed(double t) const {
  check_args(n_, t, "mu_completed");
  MuEvaluation r;
  r.n = n_;
  r.t = t;
  r.a_n = a_;
  if (odd_) return r;
  const cplx sc(0.5, -n_ * t);
  const LValue lc = l_value(*form_, sc);
  const double log_zeta_sq = 2.0 * log_completed_zeta(cplx(n_ / 2.0, n_ * t)).real();
  const cplx E = g_.log_at(sc) + log_gamma_special_ - log_zeta_sq;
  const cplx pref = a_ * rho1_ / 4.0 * std::exp(E);
  const cplx ls = l_special_.value;
  r.value = pref * lc.value * ls;
  r.l_central = lc.value;
  r.l_special = ls;
  r.gamma_factor = std::exp(log_gamma_factor(form_->spectral_param(), n_, t));
  r.zeta_denom = riemann_zeta(cplx(n_ / 2.0, n_ * t));
  r.err_estimate = std::abs(pref) * (lc.err_estimate * std::abs(ls) + std::abs(lc.value) * l_special_.err_estimate) +
                   4e-15 * std::abs(r.value);
  return r;
}

MuEvaluation MuEvaluator::gamma_form(double t) const {
  check_args(n_, t, "mu_gamma_form");
  MuEvaluation r;
  r.n = n_;
  r.t = t;
  r.a_n = a_;
  if (odd_) return r;
  const double tp = form_->spectral_param();
  const double lpi = std::log(kPi);
  const LValue lc = l_value(*form_, cplx(0.5, -n_ * t));
  const cplx zeta = riemann_zeta(cplx(n_ / 2.0, n_ * t));
  const cplx lgf = log_gamma_factor(tp, n_, t);
  // |Lambda(n/2 + int)|^2 = pi^{-n/2} |Gamma(n/4 + int/2)|^2 |zeta|^2; its Gamma part sits in lgf.
  const cplx E = cplx(n_ / 2.0 - 2.0, n_ * t) * lpi + 2.0 * log_gamma(cplx((3.0 - n_) / 4.0, tp / 2.0)).real() + lgf +
                 (n_ / 2.0) * lpi - 2.0 * std::log(std::abs(zeta));
  const cplx pref = a_ * rho1_ / 4.0 * std::exp(E);
  const cplx ls = l_special_.value;
  r.value = pref * lc.value * ls;
  r.l_central = lc.value;
  r.l_special = ls;
  r.gamma_factor = std::exp(lgf);
  r.zeta_denom = zeta;
  r.err_estimate = std::abs(pref) * (lc.err_estimate * std::abs(ls) + std::abs(lc.value) * l_special_.err_estimate) +
                   4e-15 * std::abs(r.value);
  return r;
}

MuEvaluator::Squares MuEvaluator::squares(double t) const {
  check_args(n_, t, "mu_squared");
  if (odd_) return {};
  const cplx sc(0.5, -n_ * t);
  const LValue lc = l_value(*form_, sc);
  const double ls = l_special_.value.real();
  const double common = 2.0 * g_.log_at(sc).real() + 2.0 * log_gamma_special_.real();
  const double scale = std::norm(a_) / 2.0 * std::norm(lc.value) * ls * ls / completed_adjoint_at_1();
  // |Lambda(n/2 + int)|^4 / |zeta(n/2 + int)|^4 = pi^{-n} |Gamma(n/4 + int/2)|^4
  const double log_gamma4 = -n_ * std::log(kPi) + 4.0 * log_gamma(cplx(n_ / 4.0, n_ * t / 2.0)).real();
  Squares r;
  r.mu_sq = scale * std::exp(common - 4.0 * log_completed_zeta(cplx(n_ / 2.0, n_ * t)).real());
  r.zeta_weighted = scale * std::exp(common - log_gamma4);
  return r;
}

double MuEvaluator::squared(double t) const { return squares(t).mu_sq; }

double MuEvaluator::zeta_weighted_squared(double t) const { return squares(t).zeta_weighted; }

MuEvaluation mu_completed(const MaassForm& form, int n, double t, cplx a_n) {
  check_args(n, t, "mu_completed");
  return MuEvaluator(form, n, a_n).completed(t);
}

MuEvaluation mu_gamma_form(const MaassForm& form, int n, double t, cplx a_n) {
  check_args(n, t, "mu_gamma_form");
  return MuEvaluator(form, n, a_n).gamma_form(t);
}

double mu_squared(const MaassForm& form, int n, double t, cplx a_n) {
  check_args(n, t, "mu_squared");
  return MuEvaluator(form, n, a_n).squared(t);
}

cplx literal_display_phase(int n, double t) { return std::exp(I * (n * t * std::log(kPi))); }

double gamma_factor_sq(const MaassForm& form, int n, double t) {
  if (n < 2) throw DomainError("gamma_factor_sq: requires n >= 2");
  return std::exp(2.0 * log_gamma_factor(form.spectral_param(), n, t).real());
}

double stirling_gamma_sq(int n, double t) {
  if (!(t > 0.0)) throw DomainError("stirling_gamma_sq: requires t > 0");
  return std::pow(2.0 / (n * t), n - 1);
}

}  // namespace evlab
