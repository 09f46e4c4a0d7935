#include "evlab/maass.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>

#include "evlab/errors.hpp"
#include "evlab/lfun.hpp"
#include "evlab/specfun.hpp"

namespace evlab {

struct MaassForm::State {
  std::vector<double> table;
  std::map<long, double> primes;
  std::map<long, double> composites;
  std::once_flag rho_once;
  double rho1_sq = 0.0;
};

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<long> smallest_prime_factors(long limit) {
  std::vector<long> spf(limit + 1, 0);
  for (long i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (long j = i; j <= limit; j += i)
      if (spf[j] == 0) spf[j] = i;
  }
  return spf;
}

double prime_power(double lp, int e) {
  double prev = 1.0, cur = lp;
  if (e == 0) return 1.0;
  for (int k = 1; k < e; ++k) {
    double next = lp * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Trial-division factorization for arguments beyond the table.
std::vector<std::pair<long, int>> factor(long n) {
  std::vector<std::pair<long, int>> out;
  for (long d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace

MaassForm::MaassForm(double t, Parity parity, long pmax, std::map<long, double> primes,
                     std::map<long, double> composites, std::string label, long table_limit)
    : t_(t), parity_(parity), pmax_(pmax), label_(std::move(label)), state_(std::make_shared<State>()) {
  if (!(t > 0.0)) throw DataError("spectral parameter must be positive");
  if (pmax < 2) throw DataError("pmax must be at least 2");
  for (long p = 2; p <= pmax; ++p) {
    if (!is_prime(p)) continue;
    auto it = primes.find(p);
    if (it == primes.end()) throw DataError("missing lambda(" + std::to_string(p) + ") with pmax " + std::to_string(pmax));
    double bound = std::pow(double(p), 7.0 / 64.0) + std::pow(double(p), -7.0 / 64.0) + 0.01;
    if (!(std::abs(it->second) <= bound))
      throw DataError("lambda(" + std::to_string(p) + ") = " + std::to_string(it->second) + " violates the Kim-Sarnak bound");
  }
  state_->primes = std::move(primes);
  state_->composites = std::move(composites);

  const long limit = std::max(table_limit, 1L);
  auto spf = smallest_prime_factors(limit);
  auto& tab = state_->table;
  tab.assign(limit + 1, kNaN);
  tab[1] = 1.0;
  for (long n = 2; n <= limit; ++n) {
    long p = spf[n];
    long r = n;
    int e = 0;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    double lp_e = kNaN;
    if (p <= pmax_) {
      lp_e = prime_power(state_->primes.at(p), e);
    } else if (auto it = state_->composites.find(n / r); it != state_->composites.end()) {
      lp_e = it->second;
    } else if (e == 1) {
      if (auto jt = state_->primes.find(p); jt != state_->primes.end()) lp_e = jt->second;
    }
    tab[n] = lp_e * tab[r];
    if (std::isnan(tab[n])) {
      if (auto it = state_->composites.find(n); it != state_->composites.end()) tab[n] = it->second;
    }
  }

  for (const auto& [m, v] : state_->composites) {
    if (m > limit || m < 1) continue;
    bool covered = true;
    for (auto [q, e] : factor(m)) covered = covered && q <= pmax_;
    if (!covered) continue;
    double rec = 1.0;
    for (auto [q, e] : factor(m)) rec *= prime_power(state_->primes.at(q), e);
    if (std::abs(rec - v) > 1e-9)
      throw DataError("composite lambda(" + std::to_string(m) + ") disagrees with the Hecke recursion by " +
                      std::to_string(std::abs(rec - v)));
  }
}

const std::vector<double>& MaassForm::table() const { return state_->table; }

long MaassForm::table_limit() const { return static_cast<long>(state_->table.size()) - 1; }

bool MaassForm::has_lambda(long m) const {
  if (m < 1) return false;
  if (m <= table_limit()) return !std::isnan(state_->table[m]);
  if (state_->composites.count(m)) return true;
  for (auto [q, e] : factor(m))
    if (q > pmax_ && !state_->primes.count(q)) return false;
  return true;
}

double MaassForm::lambda(long m) const {
  if (m < 1) throw DomainError("lambda: m must be positive");
  if (m <= table_limit()) {
    double v = state_->table[m];
    if (std::isnan(v))
      throw InsufficientCoefficients("lambda(" + std::to_string(m) + ") needs a prime beyond pmax", m);
    return v;
  }
  if (auto it = state_->composites.find(m); it != state_->composites.end()) return it->second;
  double v = 1.0;
  for (auto [q, e] : factor(m)) {
    auto it = state_->primes.find(q);
    if (it == state_->primes.end())
      throw InsufficientCoefficients("lambda(" + std::to_string(m) + ") needs lambda(" + std::to_string(q) + ")", q);
    v *= prime_power(it->second, e);
  }
  return v;
}

double MaassForm::rho1_sq() const {
  std::call_once(state_->rho_once, [this] {
    const double lad = adjoint_l_at_1(*this).value;
    // L_inf(1, ad) = pi^{-3/2} Gamma(1/2) |Gamma(1/2 + it)|^2 = 1 / cosh(pi t)
    const double linf = std::exp(-1.5 * std::log(kPi) + 0.5 * std::log(kPi) +
                                 2.0 * log_gamma(cplx(0.5, t_)).real());
    state_->rho1_sq = 8.0 / (linf * lad);
  });
  return state_->rho1_sq;
}

double hecke_lambda(const MaassForm& form, long m) { return form.lambda(m); }

double rho1_squared(const MaassForm& form) { return form.rho1_sq(); }

std::complex<double> divisor_sigma(long m, std::complex<double> a) {
  if (m < 1) throw DomainError("divisor_sigma: m must be positive");
  std::complex<double> s = 0.0;
  for (long d = 1; d * d <= m; ++d) {
    if (m % d) continue;
    s += std::exp(a * std::log(double(d)));
    if (d * d != m) s += std::exp(a * std::log(double(m / d)));
  }
  return s;
}

RealEstimate adjoint_l_at_1_smoothed(const MaassForm& form, double X) {
  const long n_max = static_cast<long>(std::ceil(40.0 * X));
  if (n_max > form.pmax())
    throw InsufficientCoefficients("adjoint_l_at_1_smoothed: X = " + std::to_string(X) + " needs primes up to " +
                                       std::to_string(n_max),
                                   n_max);
  double sum = 0.0, comp = 0.0;
  for (long n = 1; n <= n_max; ++n) {
    double l2 = 1.0;
    for (auto [q, e] : factor(n)) l2 *= prime_power(form.lambda(q), 2 * e);
    double term = l2 / double(n) * std::exp(-double(n) / X);
    double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  const double zeta2 = kPi * kPi / 6.0;
  RealEstimate r;
  r.value = zeta2 * (sum + comp);
  r.err = zeta2 * 10.0 / std::sqrt(X);
  return r;
}

MaassForm load_maass_form(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open form file " + path);
  std::optional<double> R;
  std::optional<Parity> parity;
  std::optional<long> pmax;
  std::map<long, double> primes, composites;
  std::string line, label;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw DataError(path + ":" + std::to_string(lineno) + ": " + why + " [" + line + "]");
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key == "R") {
      double v;
      if (R || !(ss >> v)) fail("bad or repeated R line");
      R = v;
    } else if (key == "parity") {
      std::string p;
      if (parity || !(ss >> p) || (p != "even" && p != "odd")) fail("bad or repeated parity line");
      parity = p == "even" ? Parity::even : Parity::odd;
    } else if (key == "pmax") {
      long v;
      if (pmax || !(ss >> v)) fail("bad or repeated pmax line");
      pmax = v;
    } else if (key == "a") {
      long n;
      double v;
      if (!(ss >> n >> v) || n < 1) fail("bad coefficient line");
      if (n == 1) {
        if (std::abs(v - 1.0) > 1e-12) fail("lambda(1) must be 1");
        continue;
      }
      (is_prime(n) ? primes : composites)[n] = v;
    } else if (key == "label") {
      std::getline(ss >> std::ws, label);
    } else {
      fail("unknown key '" + key + "'");
    }
    std::string rest;
    if (key != "label" && (ss >> rest)) fail("trailing tokens");
  }
  if (!R || !parity || !pmax) throw DataError(path + ": R, parity and pmax lines are required");
  if (label.empty()) {
    auto slash = path.find_last_of('/');
    label = path.substr(slash == std::string::npos ? 0 : slash + 1);
  }
  return MaassForm(*R, *parity, *pmax, std::move(primes), std::move(composites), label,
                   std::max(*pmax, MaassForm::kDefaultTableLimit));
}

}  // namespace evlab
