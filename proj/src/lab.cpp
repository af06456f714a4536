#include "admex/lab.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>
#include <unordered_map>
#include <utility>

namespace admex {

namespace {

using u128 = unsigned __int128;

struct U128Hash {
  std::size_t operator()(u128 v) const {
    std::uint64_t x = static_cast<std::uint64_t>(v) ^
                      static_cast<std::uint64_t>(v >> 64) * 0x9e3779b97f4a7c15ULL;
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

using FreqMap = std::unordered_map<u128, std::uint64_t, U128Hash>;

u128 fourth(std::int64_t x) {
  u128 v = static_cast<u128>(x);
  return v * v * v * v;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

SmoothSet smooth_set(std::int64_t P, std::int64_t R) {
  if (P < 1 || R < 1) throw DomainError("smooth_set: bounds must be >= 1");
  if (P > 10'000'000) throw BudgetError("smooth_set: P above the 10^7 sieve cap");

  // Largest-prime-factor sieve: the last prime to stamp each n wins.
  std::vector<std::uint32_t> lpf(static_cast<std::size_t>(P) + 1, 1);
  for (std::int64_t p = 2; p <= P; ++p) {
    if (lpf[p] != 1) continue;
    for (std::int64_t m = p; m <= P; m += p) lpf[m] = static_cast<std::uint32_t>(p);
  }
  SmoothSet out;
  out.P = P;
  out.R = R;
  for (std::int64_t n = 1; n <= P; ++n) {
    if (lpf[n] <= R) out.elements.push_back(n);
  }
  return out;
}

RestrictedSmoothSet restricted_smooth_set(std::int64_t L, std::int64_t pi,
                                          std::int64_t R) {
  if (L < 1) throw DomainError("restricted_smooth_set: L must be >= 1");
  if (!is_prime(pi)) {
    throw DomainError("restricted_smooth_set: " + std::to_string(pi) + " is not prime");
  }
  if (pi > R) {
    throw DomainError("restricted_smooth_set: need pi <= R, got pi = " +
                      std::to_string(pi) + ", R = " + std::to_string(R));
  }
  RestrictedSmoothSet out;
  out.L = L;
  out.pi = pi;
  out.R = R;
  // n = pi * t with n in (L, L*pi]; the conditions transfer to t: all prime
  // factors of t must lie in [pi, R].
  for (std::int64_t n = pi * (L / pi + 1); n <= L * pi; n += pi) {
    if (n <= L) continue;
    std::int64_t t = n / pi;
    bool ok = true;
    for (std::int64_t d = 2; d * d <= t && ok; ++d) {
      while (t % d == 0) {
        if (d < pi || d > R) ok = false;
        t /= d;
      }
    }
    if (ok && t > 1 && (t < pi || t > R)) ok = false;
    if (ok) out.elements.push_back(n);
  }
  return out;
}

namespace {

// Adds every k-fold sum of fourth powers with first coordinate in
// [begin, end) to the map.
void accumulate_sums(const std::vector<u128>& powers, int k, std::size_t begin,
                     std::size_t end, FreqMap& map) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  for (std::size_t first = begin; first < end; ++first) {
    if (k == 1) {
      ++map[powers[first]];
      continue;
    }
    // Odometer over the remaining k-1 coordinates.
    std::fill(idx.begin(), idx.end(), 0);
    idx[0] = first;
    while (true) {
      u128 sum = 0;
      for (int j = 0; j < k; ++j) sum += powers[idx[j]];
      ++map[sum];
      int pos = k - 1;
      while (pos >= 1) {
        if (++idx[pos] < powers.size()) break;
        idx[pos] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
}

}  // namespace

MomentCount moment_count(std::int64_t P, std::int64_t R, int k,
                         const LabOptions& opts) {
  if (k < 1) throw DomainError("moment_count: k must be >= 1");
  SmoothSet set = smooth_set(P, R);
  const std::size_t n = set.elements.size();

  mpz_class work;
  mpz_ui_pow_ui(work.get_mpz_t(), static_cast<unsigned long>(n),
                static_cast<unsigned long>(k));
  if (work > mpz_class(std::to_string(opts.budget), 10)) {
    throw BudgetError("moment_count: |set|^k = " + work.get_str() +
                      " exceeds the budget of " + std::to_string(opts.budget));
  }

  std::vector<u128> powers;
  powers.reserve(n);
  for (std::int64_t x : set.elements) powers.push_back(fourth(x));

  int workers = std::max(1, std::min<int>(opts.workers, static_cast<int>(n)));
  FreqMap total;
  if (workers == 1) {
    accumulate_sums(powers, k, 0, n, total);
  } else {
    std::vector<FreqMap> partial(workers);
    std::vector<std::thread> pool;
    std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      std::size_t begin = w * chunk;
      std::size_t end = std::min(n, begin + chunk);
      if (begin < end) {
        pool.emplace_back(accumulate_sums, std::cref(powers), k, begin, end,
                          std::ref(partial[w]));
      }
    }
    for (auto& th : pool) th.join();
    // Additive merge; the totals do not depend on how the slices were cut.
    for (const FreqMap& part : partial) {
      for (const auto& [key, mult] : part) total[key] += mult;
    }
  }

  std::uint64_t count = 0;
  for (const auto& [key, mult] : total) count += mult * mult;
  return MomentCount{P, R, k, count};
}

mpz_class psi(std::int64_t z, std::int64_t h, std::int64_t m) {
  mpz_class zz(static_cast<long>(z)), hh(static_cast<long>(h)), mm(static_cast<long>(m));
  mpz_class m8;
  mpz_pow_ui(m8.get_mpz_t(), mm.get_mpz_t(), 8);
  return 8 * hh * zz * (zz * zz + hh * hh * m8);
}

mpz_class psi_direct(std::int64_t z, std::int64_t h, std::int64_t m) {
  if (m == 0) throw DomainError("psi_direct: m must be nonzero");
  mpz_class zz(static_cast<long>(z)), hh(static_cast<long>(h)), mm(static_cast<long>(m));
  mpz_class m4;
  mpz_pow_ui(m4.get_mpz_t(), mm.get_mpz_t(), 4);
  mpz_class plus = zz + hh * m4, minus = zz - hh * m4;
  mpz_class p4, m4th;
  mpz_pow_ui(p4.get_mpz_t(), plus.get_mpz_t(), 4);
  mpz_pow_ui(m4th.get_mpz_t(), minus.get_mpz_t(), 4);
  mpz_class diff = p4 - m4th;
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), diff.get_mpz_t(), m4.get_mpz_t());
  return q;
}

SubstitutionCheck difference_substitution_check(std::int64_t P, std::int64_t u) {
  if (P < 1) throw DomainError("difference_substitution_check: P must be >= 1");
  if (u < 1) throw DomainError("difference_substitution_check: u must be >= 1");
  if (P > 100'000) throw BudgetError("difference_substitution_check: P above the 10^5 cap");

  mpz_class u4(static_cast<long>(u));
  mpz_pow_ui(u4.get_mpz_t(), u4.get_mpz_t(), 4);
  SubstitutionCheck out;
  out.identity_ok = true;
  if (u4 >= P) return out;  // no pair y < x <= P can be congruent mod u^4
  std::int64_t mod = static_cast<std::int64_t>(u4.get_si());
  std::set<std::pair<std::int64_t, std::int64_t>> images;
  for (std::int64_t x = 2; x <= P; ++x) {
    for (std::int64_t y = x % mod == 0 ? mod : x % mod; y < x; y += mod) {
      ++out.pair_count;
      std::int64_t z = x + y;
      std::int64_t h = (x - y) / mod;
      images.emplace(z, h);
      if (z < 1 || z > 2 * P || h < 1 || h * mod > P) out.identity_ok = false;

      mpz_class x4, y4;
      mpz_pow_ui(x4.get_mpz_t(), mpz_class(static_cast<long>(x)).get_mpz_t(), 4);
      mpz_pow_ui(y4.get_mpz_t(), mpz_class(static_cast<long>(y)).get_mpz_t(), 4);
      if (16 * (x4 - y4) != u4 * psi(z, h, u)) out.identity_ok = false;
    }
  }
  out.image_count = images.size();
  if (out.image_count != out.pair_count) out.identity_ok = false;
  return out;
}

SlopeFit empirical_exponent(const std::vector<std::int64_t>& P_list,
                            std::optional<std::int64_t> fixed_R, int k,
                            const LabOptions& opts) {
  if (P_list.size() < 3) {
    throw DomainError("empirical_exponent: need at least three bounds");
  }
  if (!std::is_sorted(P_list.begin(), P_list.end())) {
    throw DomainError("empirical_exponent: bounds must be ascending");
  }
  SlopeFit fit;
  std::vector<double> xs, ys;
  for (std::int64_t P : P_list) {
    std::int64_t R = fixed_R.value_or(P);
    MomentCount mc = moment_count(P, R, k, opts);
    fit.bounds.push_back(P);
    fit.counts.push_back(mc.count);
    xs.push_back(std::log(static_cast<double>(P)));
    ys.push_back(std::log(static_cast<double>(mc.count)));
  }
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

MHQParams mhq_params(std::int64_t P, const Rational& phi) {
  if (P < 1) throw DomainError("mhq_params: P must be >= 1");
  if (phi.sign() < 0 || phi > Rational(1, 4)) {
    throw DomainError("mhq_params: phi must lie in [0, 1/4], got " + compact_str(phi));
  }
  MHQParams out;
  out.P = P;
  out.phi = phi;
  out.m_exp = phi;
  out.h_exp = Rational(1) - Rational(4) * phi;
  out.q_exp = Rational(1) - phi;
  double logP = std::log(static_cast<double>(P));
  out.M = std::exp(out.m_exp.to_double() * logP);
  out.H = std::exp(out.h_exp.to_double() * logP);
  out.Q = std::exp(out.q_exp.to_double() * logP);
  return out;
}

}  // namespace admex
