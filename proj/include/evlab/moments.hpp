#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "evlab/maass.hpp"
#include "evlab/specfun.hpp"

namespace evlab {

enum class MomentKind { mean_value, osc_first_moment, second_moment, weighted_variance, cross_variance };

const char* to_string(MomentKind k);

struct MomentReport {
  MomentKind kind = MomentKind::mean_value;
  int n = 0;
  double T = 0.0;
  cplx integral;
  cplx predicted;
  cplx ratio;
  double grid_step = 0.0;
  long samples = 0;
  double err_estimate = 0.0;
  std::map<std::string, double> diagnostics;
};

struct MomentOptions {
  double c_grid = 0.15;         // mean value: step <= c_grid / (n log 2T)
  double step_scale = 0.125;    // |L|^2 integrands: step <= step_scale / n (n = 1 for the plain second moment)
  double grid_step = 0.0;       // > 0 overrides the rules above (still capped by them)
  double converge_rel = 1e-3;   // halving the step may move the integral by at most this much
  int max_halvings = 3;
  int threads = 1;
  double window_ratio = 2.0;    // window is [T, window_ratio * T]
  double decomposition_C = 100.0;
};

struct WindowIntegral {
  cplx value;
  double err = 0.0;
  double step = 0.0;
  long samples = 0;
};

/// Composite Simpson over [a, b] with step <= h_max; the step is halved
/// (reusing samples) until Simpson at h and 2h agree to rel. Throws
/// BudgetExceeded after max_halvings.
WindowIntegral integrate_window(const std::function<cplx(double)>& f, double a, double b, double h_max,
                                double rel, int max_halvings, int threads);

/// (1/T) int_T^{2T} mu_{n,t} dt; predicted is T^{-(n-1)/2} sqrt(log T).
MomentReport mean_value(const MaassForm& form, int n, double T, cplx a_n = 1.0, const MomentOptions& opt = {});

/// F(T) = int_T^{2T} e^{-int log(nt/2e pi)} L(1/2 - int)/|zeta(n/2 + int)|^2 t^{-(n-1)/2} dt.
/// predicted holds the prefactor P with mean_value ~ P F(T)/T; diagnostics
/// carry the decomposition residual and its allowed bound.
MomentReport osc_first_moment(const MaassForm& form, int n, double T, cplx a_n = 1.0, const MomentOptions& opt = {});

/// Integrand of the oscillatory first moment at a single t.
cplx osc_integrand(const MaassForm& form, int n, double t);

/// int_T^{2T} |L(1/2 + it)|^2 dt with predicted (12/pi^2) Lambda(1, ad) cosh(pi t_phi) T log T.
MomentReport second_moment(const MaassForm& form, double T, const MomentOptions& opt = {});

/// (12/pi^2) Lambda(1, ad) cosh(pi t_phi) T (log T + B).
double jutila_prediction(const MaassForm& form, double T, double B);
double jutila_coefficient(const MaassForm& form);

/// (T^{n-2}/log T) int_T^{2T} |zeta(n/2 + int)|^4 |mu|^2 dt against
/// (6 log n/pi^2) |a_n|^2 (2 pi/n)^{n-1} cosh(pi t_phi) Lambda((3-n)/2)^2.
/// diagnostics: the V_n form of the constant and the relative gap between the two.
MomentReport weighted_variance(const MaassForm& form, int n, double T, cplx a_n = 1.0, const MomentOptions& opt = {});

struct VarianceConstants {
  double log_form = 0.0;  // (6 log n/pi^2) |a|^2 (2pi/n)^{n-1} cosh(pi t) Lambda((3-n)/2)^2
  double vn_form = 0.0;   // (12 |a|^2 log n/pi) (2pi/n)^{n-1} L((3-n)/2)^2 V_n
  double v_n = 0.0;       // |Gamma((3-n)/4 + it/2)|^4 / (2 pi^{3-n} |Gamma(1/2 + it)|^2)
};
VarianceConstants variance_constants(const MaassForm& form, int n, cplx a_n = 1.0);

/// (T^{n-2}/log T) int mu_phi conj(mu_psi) dt; ratio holds the normalized
/// correlation |cross| / sqrt(diag_phi diag_psi).
MomentReport cross_variance(const MaassForm& phi, const MaassForm& psi, int n, double T, cplx a_n = 1.0,
                            const MomentOptions& opt = {});

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double slope_ci95 = 0.0;  // half-width, Student t with points - 2 dof
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct JutilaFit {
  double coefficient = 0.0;  // c in I(T) = c T (log T + B)
  double B = 0.0;
  double predicted = 0.0;
  double relative_gap = 0.0;
};

/// Least squares of I(T)/T = c log T + c B over the windows.
JutilaFit fit_jutila(const MaassForm& form, const std::vector<MomentReport>& windows);

}  // namespace evlab
