#include "evlab/lfun.hpp"

#include <algorithm>
#include <cmath>

#include "evlab/errors.hpp"
#include "evlab/summation.hpp"

namespace evlab {
namespace {

const cplx I(0.0, 1.0);

double tilt_for(const GammaFactor& g, cplx z, const SmoothedAfeOptions& opt) {
  // Low in the strip the untilted weight is already accurate and the tilt
  // only inflates the integrand.
  if (!opt.tilt || std::abs(z.imag()) < 20.0) return 0.0;
  return -(kPi * g.degree() / 4.0) * (z.imag() > 0.0 ? 1.0 : -1.0);
}

// The Dirichlet series must converge absolutely on the line: Re(z + u) > 1.
double contour_for(cplx z, const SmoothedAfeOptions& opt) { return std::max(opt.contour, 1.1 - z.real()); }

// Rough upper bound for |Phi_z(n)|: the integrand moved to Re u = c'.
double weight_bound(const GammaFactor& g, cplx z, double n, const SmoothedAfeOptions& opt, cplx lg_z) {
  double best = 1e300;
  for (double c : {contour_for(z, opt), 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0, 32.0, 48.0, 64.0}) {
    if (c < contour_for(z, opt)) continue;
    double lr = (g.log_at(z + c) - lg_z).real() + opt.gauss * c * c - c * std::log(n) - std::log(c);
    best = std::min(best, lr);
  }
  return std::exp(best) * std::sqrt(kPi / opt.gauss) / (2.0 * kPi);
}

long length_for(const GammaFactor& g, cplx z, cplx lg_z, const SmoothedAfeOptions& opt) {
  double n = std::max(1.0, g.effective_length(z));
  for (int iter = 0; iter < 2000; ++iter) {
    double b = weight_bound(g, z, n, opt, lg_z) * std::pow(n, 1.0 - z.real());
    if (b < 1e-18) break;
    n *= 1.05;
  }
  return static_cast<long>(std::ceil(n)) + 2;
}

struct PartResult {
  cplx value;
  double err;
};

// sum_{n <= N} a(n) n^{-z} (1/2 pi i) int gamma(z+u)/exp(lg_z) G(u) n^{-u} du/u
// with G(u) = exp(gauss u^2 + i theta u) on Re u = contour.
PartResult smoothed_part(std::span<const double> a, long N, const GammaFactor& g, cplx z, cplx lg_z, double theta,
                         const SmoothedAfeOptions& opt) {
  const double c = contour_for(z, opt);
  const double h = opt.step;
  // gamma(z + c + iv) / gamma(z + c) is formed as a difference routine so
  // large |Im z| does not cost absolute accuracy in the exponent.
  const cplx shift = g.log_at(z + c) - lg_z;
  auto H = [&](double v) {
    cplx u(c, v);
    return std::exp(g.log_ratio(z + c, cplx(0.0, v)) + shift + opt.gauss * u * u + I * theta * u) / u;
  };

  std::vector<cplx> hp{H(0.0)}, hm{H(0.0)};
  double hmax = std::abs(hp[0]);
  for (int dir = 0; dir < 2; ++dir) {
    auto& vec = dir == 0 ? hp : hm;
    int small = 0;
    for (long k = 1; k < 40000; ++k) {
      cplx val = H((dir == 0 ? 1.0 : -1.0) * k * h);
      vec.push_back(val);
      hmax = std::max(hmax, std::abs(val));
      small = std::abs(val) < 1e-19 * hmax ? small + 1 : 0;
      if (small >= 8) break;
    }
  }

  CompensatedComplexSum total;
  double abs_total = 0.0;
  double hsum = 0.0;
  for (auto v : hp) hsum += std::abs(v);
  for (auto v : hm) hsum += std::abs(v);
  const long kp = static_cast<long>(hp.size());
  const long km = static_cast<long>(hm.size());
  for (long n = 1; n <= N; ++n) {
    double an = a[n];
    if (an == 0.0) continue;
    const double ln = std::log(double(n));
    cplx An = an * std::exp(-(z + c) * ln);
    cplx w = std::exp(cplx(0.0, -h * ln));
    cplx p = 1.0;
    cplx acc = hp[0];
    for (long k = 1; k < std::max(kp, km); ++k) {
      p = (k & 63) ? p * w : std::exp(cplx(0.0, -h * ln * double(k)));
      if (k < kp) acc += hp[k] * p;
      if (k < km) acc += hm[k] * std::conj(p);
    }
    total.add(An * acc);
    abs_total += std::abs(An);
  }
  const double scale = h / (2.0 * kPi);
  PartResult r;
  r.value = total.value() * scale;
  r.err = 1e-15 * scale * hsum * abs_total + 2.0 * std::exp(-2.0 * kPi * c / h) * abs_total * std::pow(double(N), c);
  return r;
}

void check_available(std::span<const double> a, long N) {
  if (N >= static_cast<long>(a.size()))
    throw InsufficientCoefficients("need coefficients up to " + std::to_string(N) + ", have " +
                                       std::to_string(static_cast<long>(a.size()) - 1),
                                   N);
  for (long n = 1; n <= N; ++n)
    if (std::isnan(a[n]))
      throw InsufficientCoefficients("coefficient " + std::to_string(n) + " unavailable (needed up to " +
                                         std::to_string(N) + ")",
                                     n);
}

double lambda_of_square(const MaassForm& form, long m) {
  // lambda(m^2) = prod lambda(p^{2e})
  double v = 1.0;
  long r = m;
  for (long p = 2; p * p <= r; ++p) {
    int e = 0;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (e) {
      double lp = form.lambda(p), prev = 1.0, cur = lp;
      for (int k = 1; k < 2 * e; ++k) {
        double next = lp * cur - prev;
        prev = cur;
        cur = next;
      }
      v *= cur;
    }
  }
  if (r > 1) {
    double lp = form.lambda(r);
    v *= lp * lp - 1.0;
  }
  return v;
}

}  // namespace

const char* to_string(LMethod m) {
  switch (m) {
    case LMethod::dirichlet_series: return "dirichlet_series";
    case LMethod::afe_paper: return "afe_paper";
    case LMethod::afe_smoothed: return "afe_smoothed";
    case LMethod::functional_equation: return "functional_equation";
  }
  return "?";
}

cplx GammaFactor::log_ratio(cplx s, cplx u) const {
  cplx acc = -0.5 * degree() * u * std::log(kPi);
  for (auto mu : shifts) acc += log_gamma_ratio(0.5 * (s + mu), 0.5 * u);
  return acc;
}

cplx GammaFactor::log_at(cplx s) const {
  cplx acc = -0.5 * degree() * s * std::log(kPi);
  for (auto mu : shifts) acc += log_gamma(0.5 * (s + mu));
  return acc;
}

double GammaFactor::effective_length(cplx s) const {
  double acc = 1.0;
  for (auto mu : shifts) acc *= std::max(std::abs(s + mu), 2.0) / (2.0 * kPi);
  return std::sqrt(acc);
}

GammaFactor standard_gamma_factor(const MaassForm& form) {
  const double kappa = form.is_even() ? 0.0 : 1.0;
  const double t = form.spectral_param();
  return GammaFactor{{cplx(kappa, t), cplx(kappa, -t)}};
}

GammaFactor adjoint_gamma_factor(const MaassForm& form) {
  const double t = form.spectral_param();
  return GammaFactor{{cplx(0.0, 0.0), cplx(0.0, 2.0 * t), cplx(0.0, -2.0 * t)}};
}

int root_number(const MaassForm& form) { return form.is_even() ? 1 : -1; }

long afe_required_terms(const GammaFactor& g, cplx s, const SmoothedAfeOptions& opt) {
  const cplx lg = g.log_at(s);
  return std::max(length_for(g, s, lg, opt), length_for(g, 1.0 - s, lg, opt));
}

LValue afe_smoothed(std::span<const double> a, const GammaFactor& g, int root, cplx s,
                    const SmoothedAfeOptions& opt) {
  if (!(opt.gauss > 0.0) || !(opt.contour > 0.0) || !(opt.step > 0.0))
    throw DomainError("afe_smoothed: gauss, contour and step must be positive");
  // Both sums are normalized by gamma(s), which keeps the dual sum finite
  // where gamma(1 - s) has a pole.
  const cplx lg = g.log_at(s);
  const long n1 = length_for(g, s, lg, opt);
  const long n2 = length_for(g, 1.0 - s, lg, opt);
  check_available(a, std::max(n1, n2));
  const double th = tilt_for(g, s, opt);
  PartResult p1 = smoothed_part(a, n1, g, s, lg, th, opt);
  PartResult p2 = smoothed_part(a, n2, g, 1.0 - s, lg, -th, opt);
  LValue out;
  out.value = p1.value + static_cast<double>(root) * p2.value;
  out.err_estimate = p1.err + p2.err;
  out.method = LMethod::afe_smoothed;
  return out;
}

LValue afe_smoothed(const MaassForm& form, cplx s, const SmoothedAfeOptions& opt) {
  return afe_smoothed(form.table(), standard_gamma_factor(form), root_number(form), s, opt);
}

LValue l_dirichlet(const MaassForm& form, cplx s, const QuadratureSpec& spec) {
  spec.validate();
  if (s.real() < 1.2) throw DomainError("l_dirichlet: requires Re(s) >= 1.2");
  const auto& tab = form.table();
  long N = std::min<long>(spec.series_cap, form.table_limit());
  for (long n = 1; n <= N; ++n)
    if (std::isnan(tab[n])) {
      N = n - 1;
      break;
    }
  if (N < 400) throw InsufficientCoefficients("l_dirichlet: fewer than 400 consecutive coefficients", 400);

  // S(X) = L(s) + sum_k (-1)^k L(s-k) X^{-k} / k!
  const double X0 = N / 40.0;
  std::vector<cplx> terms(N + 1);
  double abs_sum = 0.0;
  for (long n = 1; n <= N; ++n) {
    terms[n] = tab[n] * std::exp(-s * std::log(double(n)));
    abs_sum += std::abs(terms[n]);
  }
  auto S = [&](double X) {
    CompensatedComplexSum acc;
    for (long n = 1; n <= N; ++n) acc.add(terms[n] * std::exp(-double(n) / X));
    return acc.value();
  };
  cplx s0 = S(X0), s1 = S(X0 / 2), s2 = S(X0 / 4), s3 = S(X0 / 8);
  auto r1 = [](cplx a, cplx b) { return 2.0 * a - b; };
  cplx a0 = r1(s0, s1), a1 = r1(s1, s2), a2 = r1(s2, s3);
  cplx b0 = (4.0 * a0 - a1) / 3.0, b1 = (4.0 * a1 - a2) / 3.0;
  LValue out;
  out.value = b0;
  out.err_estimate = std::abs(b0 - b1) / 3.0 + 1e-15 * abs_sum * 10.0;
  out.method = LMethod::dirichlet_series;
  return out;
}

cplx afe_weight(double t, long m, int sign, int n, const LiteralAfeOptions& opt, double t_scale) {
  if (t < 2.0) throw DomainError("afe_weight: requires t >= 2");
  if (m < 1) throw DomainError("afe_weight: m must be positive");
  const double T = t_scale > 0.0 ? t_scale : t;
  const double eps = opt.epsilon;
  const double half = opt.segment ? std::pow(T, eps) : 9.0;
  const double logX = std::log(n * t / (2.0 * kPi * double(m)));
  const double sg = sign >= 0 ? 1.0 : -1.0;

  // composite 16-point Gauss-Legendre on panels of width <= 0.1
  static const double xg[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
                               0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
  static const double wg[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
                               0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
  const long panels = static_cast<long>(std::ceil(2.0 * half / 0.1));
  const double pw = 2.0 * half / panels;
  CompensatedComplexSum acc;
  for (long j = 0; j < panels; ++j) {
    const double mid = -half + (j + 0.5) * pw;
    for (int k = 0; k < 8; ++k)
      for (double side : {-1.0, 1.0}) {
        cplx s(eps, mid + side * xg[k] * pw / 2.0);
        acc.add(wg[k] * pw / 2.0 * std::exp(s * logX + s * s + sg * I * (kPi / 2.0) * s) / s);
      }
  }
  return acc.value() / (2.0 * kPi);
}

LValue l_afe(const MaassForm& form, cplx s, double t_scale, const LiteralAfeOptions& opt) {
  if (std::abs(s.imag()) < 2.0) throw DomainError("l_afe: requires |Im s| >= 2");
  if (s.imag() > 0.0) {
    LValue c = l_afe(form, std::conj(s), t_scale, opt);
    c.value = std::conj(c.value);
    return c;
  }
  const double tau = -s.imag();
  const double T = t_scale > 0.0 ? t_scale : tau;
  const long M = static_cast<long>(std::floor(std::pow(T, 1.0 + opt.epsilon)));
  const auto& tab = form.table();
  check_available(tab, M);

  // W^{+-}(m) for all m share nodes; with n t = tau use n = 1, t = tau.
  CompensatedComplexSum first, second;
  for (long m = 1; m <= M; ++m) {
    if (tab[m] == 0.0) continue;
    const double lm = std::log(double(m));
    cplx wm = afe_weight(tau, m, -1, 1, opt, T);
    cplx wp = afe_weight(tau, m, +1, 1, opt, T);
    first.add(tab[m] * std::exp(-s * lm) * wm);
    second.add(tab[m] * std::exp(-(1.0 - s) * lm) * wp);
  }
  const cplx root = -I * std::exp(2.0 * I * tau * std::log(tau / (2.0 * std::exp(1.0) * kPi)));
  LValue out;
  out.value = first.value() + root * second.value();
  out.err_estimate = opt.err_constant * std::pow(T, -0.5 + opt.epsilon);
  out.method = LMethod::afe_paper;
  return out;
}

LValue l_value(const MaassForm& form, cplx s) {
  if (s.real() >= 1.2) {
    try {
      LValue d = l_dirichlet(form, s);
      if (d.err_estimate <= 1e-11 * std::max(1.0, std::abs(d.value))) return d;
    } catch (const InsufficientCoefficients&) {
    }
    return afe_smoothed(form, s);
  }
  if (s.real() <= -0.2) {
    GammaFactor g = standard_gamma_factor(form);
    LValue r = l_value(form, 1.0 - s);
    cplx ratio = static_cast<double>(root_number(form)) * std::exp(g.log_at(1.0 - s) - g.log_at(s));
    return {ratio * r.value, std::abs(ratio) * r.err_estimate, LMethod::functional_equation};
  }
  return afe_smoothed(form, s);
}

LValue completed_l(const MaassForm& form, cplx s) {
  LValue l = l_value(form, s);
  cplx g = std::exp(standard_gamma_factor(form).log_at(s));
  return {g * l.value, std::abs(g) * l.err_estimate, l.method};
}

std::vector<double> adjoint_coefficients(const MaassForm& form, long N) {
  std::vector<double> sq(N + 1, 0.0), b(N + 1, 0.0);
  for (long m = 1; m <= N; ++m) sq[m] = lambda_of_square(form, m);
  // b = (lambda(m^2)) * (1 on squares)
  for (long k = 1; k * k <= N; ++k)
    for (long m = 1; m * k * k <= N; ++m) b[m * k * k] += sq[m];
  return b;
}

LValue adjoint_l(const MaassForm& form, cplx s) {
  GammaFactor g = adjoint_gamma_factor(form);
  const long N = afe_required_terms(g, s);
  std::vector<double> b = adjoint_coefficients(form, N);
  return afe_smoothed(b, g, 1, s);
}

LValue completed_adjoint_l(const MaassForm& form, cplx s) {
  if (s.real() < 1.0) throw DomainError("completed_adjoint_l: requires Re(s) >= 1");
  LValue l = adjoint_l(form, s);
  cplx g = std::exp(adjoint_gamma_factor(form).log_at(s));
  return {g * l.value, std::abs(g) * l.err_estimate, l.method};
}

RealEstimate adjoint_l_at_1(const MaassForm& form) {
  LValue l = adjoint_l(form, 1.0);
  return {l.value.real(), l.err_estimate + std::abs(l.value.imag())};
}

}  // namespace evlab
