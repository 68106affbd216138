#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gridgon/error.hpp"

namespace gridgon {

using big = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

struct fjord_choice {
  int p = 0;
  int q = 0;
  big value;
  bool operator==(const fjord_choice&) const = default;
};

struct fjord_optimum {
  big value;
  std::vector<fjord_choice> choices;
};

namespace detail {

inline big certify_integer(const rational& r, const char* what) {
  if (boost::multiprecision::denominator(r) != 1)
    throw error(errc::non_integer, std::string(what) + " evaluated to " + r.str());
  return boost::multiprecision::numerator(r);
}

inline rational frac(long long num, long long den = 1) { return rational(num, den); }

}  // namespace detail

// F(j,k) = 4j^3 + (-8k-2)j^2 + (4k^2+4k)j - 2k^2 - 2k + 3
inline std::int64_t gain_F(std::int64_t j, std::int64_t k) {
  return 4 * j * j * j + (-8 * k - 2) * j * j + (4 * k * k + 4 * k) * j - 2 * k * k - 2 * k + 3;
}

// Maximal gain; for k = 1, 2 the branch polynomial is used as is.
inline std::int64_t U(std::int64_t k) {
  if (k < 1) throw error(errc::out_of_range, "U requires k >= 1");
  std::int64_t s = k / 3;
  switch (k % 3) {
    case 0: return 16 * s * s * s - 8 * s * s - 6 * s + 3;
    case 1: return 16 * s * s * s + 8 * s * s - 6 * s + 1;
    default: return 16 * s * s * s + 24 * s * s + 6 * s + 1;
  }
}

// "a/b", an integer or a finite decimal such as "0.25", converted exactly.
inline rational parse_rational(const std::string& s) {
  auto bad = [&] { return error(errc::invalid_input, "not a rational number: '" + s + "'"); };
  auto digits = [](const std::string& t) {
    return !t.empty() && t.find_first_not_of("0123456789") == std::string::npos;
  };
  std::string body = s;
  bool negative = !body.empty() && body[0] == '-';
  if (negative) body.erase(0, 1);
  rational r;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw bad();
    big d(den);
    if (d == 0) throw bad();
    r = rational(big(num), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string whole = body.substr(0, dot), frac_part = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!digits(whole) || !digits(frac_part)) throw bad();
    big scale = boost::multiprecision::pow(big(10), unsigned(frac_part.size()));
    r = rational(big(whole) * scale + big(frac_part), scale);
  } else {
    if (!digits(body)) throw bad();
    r = rational(big(body));
  }
  return negative ? rational(-r) : r;
}

inline bool beta_in_range(long long n) { return n >= 5; }
inline bool alpha_in_theorem_range(long long n) { return n >= 9; }

inline big beta(long long n) {
  if (n < 1) throw error(errc::out_of_range, "beta requires n >= 1");
  using detail::frac;
  rational x(n);
  rational v = frac(8, 27) * x * x * x * x - frac(32, 27) * x * x * x + frac(16, 3) * x * x - 18 * x + 20;
  switch (n % 3) {
    case 1: v -= (8 * x + 4) / 27; break;
    case 2: v -= (16 * x - 16) / 27; break;
    default: break;
  }
  return detail::certify_integer(v, "beta");
}

inline bool beta_recurrence_check(long long n) {
  if (n < 6) throw error(errc::out_of_range, "recurrence check requires n >= 6");
  return beta(n) - beta(n - 1) - 2 * big(U(n - 1)) - 12 * big(n) + 32 == 0;
}

namespace detail {

struct alpha_branch {
  std::array<long long, 2> n2, n1, n0;
};

// coefficients of n^2, n and 1 added to 8/27 n^4 - 464/729 n^3, by n mod 9
inline constexpr alpha_branch alpha_table[9] = {
    {{-4, 3}, {6, 1}, {-2, 1}},
    {{-292, 243}, {922, 243}, {-1642, 729}},
    {{-308, 243}, {946, 243}, {-1724, 729}},
    {{-4, 3}, {158, 27}, {-64, 27}},
    {{-292, 243}, {886, 243}, {-1804, 729}},
    {{-308, 243}, {874, 243}, {-1400, 729}},
    {{-4, 3}, {158, 27}, {-44, 27}},
    {{-292, 243}, {886, 243}, {-1264, 729}},
    {{-308, 243}, {946, 243}, {-1292, 729}},
};

}  // namespace detail

inline rational alpha_leading(long long n) {
  rational x(n);
  return detail::frac(8, 27) * x * x * x * x - detail::frac(464, 729) * x * x * x;
}

inline big alpha(long long n) {
  if (n < 1) throw error(errc::out_of_range, "alpha requires n >= 1");
  const auto& b = detail::alpha_table[n % 9];
  rational x(n);
  rational v = alpha_leading(n) + detail::frac(b.n2[0], b.n2[1]) * x * x + detail::frac(b.n1[0], b.n1[1]) * x +
               detail::frac(b.n0[0], b.n0[1]);
  return detail::certify_integer(v, "alpha");
}

inline big serpentine_sum(long long n, const rational& theta) {
  if (n < 4) throw error(errc::out_of_range, "serpentine requires n >= 4");
  if (theta <= 0 || theta >= rational(1, 2)) throw error(errc::out_of_range, "theta must lie in (0, 1/2)");
  rational nt = theta * n;
  big m = boost::multiprecision::numerator(nt) / boost::multiprecision::denominator(nt);
  if (m < 1) throw error(errc::out_of_range, "floor(n*theta) must be at least 1");
  big N(n);
  return ((N - m) * (N - m) + 1) * (m - 1) * (N - 2) + ((N - m - 1) * (N - m - 1) + 1) * m * (N - 2) +
         (N - 2 * m) * (N - 3) + 4 * N - 2 * m - 2;
}

inline void check_fjord_range(long long n, long long p, long long q) {
  if (n < 7) throw error(errc::out_of_range, "fjord sums require n >= 7");
  if (p < 1 || q < 1 || p > n - 3 || q > n - 3)
    throw error(errc::out_of_range, "fjord counts must satisfy 1 <= p,q <= n-3");
}

inline big fjord_sum(long long n, long long p, long long q) {
  check_fjord_range(n, p, q);
  big N(n), P(p), Q(q);
  big v = beta(n) - 4 * N * N + 20 * N - 18;
  v += P * (N - P - 2) * (N - P - 2) + P * (N - P - 1) * (N - P - 1) - U(p + 2) - P;
  v += Q * (N - Q - 2) * (N - Q - 2) + Q * (N - Q - 1) * (N - Q - 1) - U(q + 1) - Q;
  return v;
}

// Brute-force argmax over the whole parameter rectangle, ties kept in (p, q) order.
inline fjord_optimum optimal_fjords(long long n) {
  if (n < 7) throw error(errc::out_of_range, "optimal fjords require n >= 7");
  fjord_optimum best;
  for (long long p = 1; p <= n - 3; ++p)
    for (long long q = 1; q <= n - 3; ++q) {
      big v = fjord_sum(n, p, q);
      if (best.choices.empty() || v > best.value) {
        best.value = v;
        best.choices.clear();
      }
      if (v == best.value) best.choices.push_back({int(p), int(q), v});
    }
  return best;
}

}  // namespace gridgon
