#pragma once

#include <complex>
#include <span>
#include <vector>

#include "evlab/maass.hpp"
#include "evlab/quadrature_spec.hpp"
#include "evlab/specfun.hpp"

namespace evlab {

enum class LMethod { dirichlet_series, afe_paper, afe_smoothed, functional_equation };

const char* to_string(LMethod m);

struct LValue {
  cplx value;
  double err_estimate = 0.0;
  LMethod method = LMethod::afe_smoothed;
};

/// gamma(s) = pi^{-d s/2} prod_j Gamma((s + mu_j)/2).
struct GammaFactor {
  std::vector<cplx> shifts;
  int degree() const { return static_cast<int>(shifts.size()); }
  cplx log_at(cplx s) const;
  /// log gamma(s + u) - log gamma(s).
  cplx log_ratio(cplx s, cplx u) const;
  /// Analytic conductor scale prod_j |(s + mu_j) / 2 pi|^{1/2}; the smoothed
  /// sums effectively end a little past this many terms.
  double effective_length(cplx s) const;
};

GammaFactor standard_gamma_factor(const MaassForm& form);
GammaFactor adjoint_gamma_factor(const MaassForm& form);
/// +1 for even forms, -1 for odd forms.
int root_number(const MaassForm& form);

struct SmoothedAfeOptions {
  double gauss = 0.01;     // G(u) = exp(gauss u^2 + i theta u)
  double contour = 0.6;    // Re u of the line is max(contour, 1.1 - Re z)
  double step = 0.1;       // trapezoid step along Im u
  bool tilt = true;        // theta = -(pi d / 4) sign(Im s), only once |Im s| >= 20
};

/// L(s) = Lambda(s)/gamma(s) for a self-dual entire Lambda with real
/// coefficients a[1..], from the two-sum smoothed approximate functional
/// equation. Throws InsufficientCoefficients if a is too short or contains
/// NaN within the needed range.
LValue afe_smoothed(std::span<const double> a, const GammaFactor& g, int root, cplx s,
                    const SmoothedAfeOptions& opt = {});

LValue afe_smoothed(const MaassForm& form, cplx s, const SmoothedAfeOptions& opt = {});

/// Number of coefficients afe_smoothed reads at s (max over both sums).
long afe_required_terms(const GammaFactor& g, cplx s, const SmoothedAfeOptions& opt = {});

/// Exponentially smoothed Dirichlet series with Richardson extrapolation in
/// the smoothing length. Requires Re(s) >= 1.2.
LValue l_dirichlet(const MaassForm& form, cplx s, const QuadratureSpec& spec = {});

struct LiteralAfeOptions {
  double epsilon = 0.1;
  double err_constant = 10.0;
  /// false: integrate W over the whole line Re s = epsilon;
  /// true: only over |Im s| <= T^epsilon.
  bool segment = false;
};

/// W_t^{+-}(m) = (1/2 pi i) int (nt/2 pi m)^s exp(s^2 +- i pi s/2) ds/s on
/// Re s = epsilon.
cplx afe_weight(double t, long m, int sign, int n, const LiteralAfeOptions& opt = {}, double t_scale = 0.0);

/// The two-sum approximation with weights W^{+-} and root factor
/// -i (tau/2 e pi)^{2 i tau}, where s = 1/2 - i tau. t_scale is the T in
/// the truncation m <= T^{1+epsilon}.
LValue l_afe(const MaassForm& form, cplx s, double t_scale, const LiteralAfeOptions& opt = {});

/// L(s, phi) by whichever method suits Re(s).
LValue l_value(const MaassForm& form, cplx s);

/// Lambda(s, phi) = gamma(s) L(s, phi). The gamma factor is
/// pi^{-s} Gamma((s + kappa + it)/2) Gamma((s + kappa - it)/2) with
/// kappa = 0 for even and 1 for odd forms.
LValue completed_l(const MaassForm& form, cplx s);

/// L(s, ad phi) = zeta(2s) sum lambda(n^2) n^{-s} through its own smoothed
/// approximate functional equation.
LValue adjoint_l(const MaassForm& form, cplx s);
LValue completed_adjoint_l(const MaassForm& form, cplx s);

/// Coefficients b(1..N) of L(s, ad phi).
std::vector<double> adjoint_coefficients(const MaassForm& form, long N);

}  // namespace evlab
