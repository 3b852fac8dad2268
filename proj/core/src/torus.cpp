#include "skewlab/torus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace skewlab {

namespace {

// Floor division for cpp_int (operator/ truncates toward zero).
BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

// Working precision for realizations: certify well below one target ulp.
constexpr int kGuardBits = 64;

BigInt realize_quadratic(const RotationSpec& s, int bits) {
  if (s.quad_d == 0) throw Error(ErrorCode::ConfigInvalid, "quadratic: zero denominator");
  BigInt c(s.quad_c);
  BigInt arg = c << (2 * (bits + kGuardBits));
  BigInt root = boost::multiprecision::sqrt(arg);
  if (root * root == arg)
    throw Error(ErrorCode::ConfigInvalid, "quadratic: discriminant is a perfect square");
  BigInt t = (BigInt(s.quad_a) << (bits + kGuardBits)) + BigInt(s.quad_b) * root;
  BigInt num = floor_div(t, BigInt(s.quad_d)) >> kGuardBits;
  return num;
}

// Convergents from a quotient stream; returns the last two (p,q) pairs once
// q exceeds the requested size.
std::pair<Convergent, Convergent> cf_tail_convergents(const std::vector<BigInt>& qs,
                                                      bool periodic, const BigInt& q_target) {
  BigInt p0(1), q0(0), p1(qs.empty() ? BigInt(0) : qs[0]), q1(1);
  std::size_t i = 1;
  while (q1 <= q_target) {
    BigInt a;
    if (i < qs.size())
      a = qs[i];
    else if (periodic && !qs.empty())
      a = qs.back();
    else
      break;
    BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    ++i;
  }
  return {{p0, q0}, {p1, q1}};
}

BigInt realize_rational(const BigInt& p, const BigInt& q, int bits) {
  if (q <= 0) throw Error(ErrorCode::ConfigInvalid, "rational: nonpositive denominator");
  return floor_div(p << bits, q);
}

BigInt realize_cf(const RotationSpec& s, int bits) {
  if (s.cf_quotients.empty())
    throw Error(ErrorCode::ConfigInvalid, "cf: empty quotient list");
  if (!s.cf_periodic_tail) {
    // finite continued fraction: an exact rational
    auto [prev, last] = cf_tail_convergents(s.cf_quotients, false, BigInt(1) << (8 * 1024));
    return realize_rational(last.p, last.q, bits);
  }
  auto [prev, last] = cf_tail_convergents(s.cf_quotients, true, BigInt(1) << (bits / 2 + kGuardBits));
  BigInt lo = realize_rational(prev.p, prev.q, bits);
  BigInt hi = realize_rational(last.p, last.q, bits);
  if (lo > hi) std::swap(lo, hi);
  if (hi - lo > 1)
    throw Error(ErrorCode::InsufficientPrecision, "cf realization interval too wide");
  return lo;
}

BigInt realize_decimal(const RotationSpec& s, int bits) {
  const std::string& d = s.decimal_digits;
  auto dot = d.find('.');
  if (dot == std::string::npos)
    throw Error(ErrorCode::ConfigInvalid, "decimal: expected 0.digits");
  std::string frac = d.substr(dot + 1);
  if (frac.empty()) throw Error(ErrorCode::ConfigInvalid, "decimal: empty fraction");
  BigInt p = from_decimal(d.substr(0, dot) + frac);
  BigInt q = pow_bigint(BigInt(10), static_cast<unsigned>(frac.size()));
  return realize_rational(p, q, bits);
}

}  // namespace

RotationSpec RotationSpec::golden(int precision_bits) {
  RotationSpec s;
  s.kind = Kind::Quadratic;
  s.quad_a = -1;
  s.quad_b = 1;
  s.quad_c = 5;
  s.quad_d = 2;
  s.precision_bits = precision_bits;
  return s;
}

bool RotationSpec::is_rational() const {
  switch (kind) {
    case Kind::Rational:
    case Kind::Decimal:
      return true;
    case Kind::ContinuedFraction:
      return !cf_periodic_tail;
    case Kind::Quadratic:
      return false;
  }
  return false;
}

RotationSpec RotationSpec::parse(const std::string& text, int precision_bits) {
  RotationSpec s;
  s.precision_bits = precision_bits;
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorCode::ConfigInvalid, "alpha: expected kind:value, got '" + text + "'");
  std::string kind = text.substr(0, colon);
  std::string body = text.substr(colon + 1);
  auto strip = [](std::string v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](char c) { return c == ' '; }), v.end());
    return v;
  };
  body = strip(body);

  if (kind == "quadratic") {
    // (A+B*sqrt(C))/D with optional B and /D
    s.kind = Kind::Quadratic;
    std::string v = body;
    if (!v.empty() && v.front() == '(') {
      auto close = v.rfind(')');
      std::string inner = v.substr(1, close - 1);
      std::string tail = v.substr(close + 1);
      s.quad_d = 1;
      if (!tail.empty()) {
        if (tail[0] != '/') throw Error(ErrorCode::ConfigInvalid, "quadratic: expected /D");
        s.quad_d = std::stoll(tail.substr(1));
      }
      auto sq = inner.find("sqrt(");
      if (sq == std::string::npos) throw Error(ErrorCode::ConfigInvalid, "quadratic: missing sqrt");
      auto sqclose = inner.find(')', sq);
      s.quad_c = std::stoull(inner.substr(sq + 5, sqclose - sq - 5));
      std::string head = inner.substr(0, sq);  // like "-1+" or "-1+2*" or "" or "-"
      if (!head.empty() && head.back() == '*') head.pop_back();
      long long a = 0, b = 1;
      if (!head.empty()) {
        auto pm = head.find_last_of("+-", head.size() - 1);
        if (pm == std::string::npos || pm == 0) {
          // no additive part: head is the (signed) coefficient of sqrt
          if (head == "+" || head.empty()) b = 1;
          else if (head == "-") b = -1;
          else b = std::stoll(head);
        } else {
          a = std::stoll(head.substr(0, pm));
          std::string bs = head.substr(pm);
          if (bs == "+") b = 1;
          else if (bs == "-") b = -1;
          else b = std::stoll(bs);
        }
      }
      s.quad_a = a;
      s.quad_b = b;
    } else {
      throw Error(ErrorCode::ConfigInvalid, "quadratic: expected (A+B*sqrt(C))/D");
    }
  } else if (kind == "cf") {
    s.kind = Kind::ContinuedFraction;
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
      throw Error(ErrorCode::ConfigInvalid, "cf: expected [a0;a1,...]");
    std::string inner = body.substr(1, body.size() - 2);
    auto semi = inner.find(';');
    if (semi == std::string::npos) throw Error(ErrorCode::ConfigInvalid, "cf: missing ';'");
    s.cf_quotients.push_back(from_decimal(inner.substr(0, semi)));
    std::string rest = inner.substr(semi + 1);
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok == "...") {
        s.cf_periodic_tail = true;
        break;
      }
      if (tok.empty()) continue;
      s.cf_quotients.push_back(from_decimal(tok));
    }
    if (s.cf_quotients.size() < 2)
      throw Error(ErrorCode::ConfigInvalid, "cf: need at least one partial quotient");
  } else if (kind == "rational") {
    s.kind = Kind::Rational;
    auto slash = body.find('/');
    if (slash == std::string::npos) throw Error(ErrorCode::ConfigInvalid, "rational: expected p/q");
    s.rat_p = from_decimal(body.substr(0, slash));
    s.rat_q = from_decimal(body.substr(slash + 1));
  } else if (kind == "decimal") {
    s.kind = Kind::Decimal;
    s.decimal_digits = body;
  } else {
    throw Error(ErrorCode::ConfigInvalid, "alpha: unknown kind '" + kind + "'");
  }
  return s;
}

std::string RotationSpec::to_text() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Quadratic:
      os << "quadratic:(" << quad_a << (quad_b >= 0 ? "+" : "-")
         << std::abs(quad_b) << "*sqrt(" << quad_c << "))/" << quad_d;
      break;
    case Kind::ContinuedFraction: {
      os << "cf:[" << cf_quotients[0].str() << ";";
      for (std::size_t i = 1; i < cf_quotients.size(); ++i)
        os << cf_quotients[i].str() << (i + 1 < cf_quotients.size() ? "," : "");
      if (cf_periodic_tail) os << ",...";
      os << "]";
      break;
    }
    case Kind::Rational:
      os << "rational:" << rat_p.str() << "/" << rat_q.str();
      break;
    case Kind::Decimal:
      os << "decimal:" << decimal_digits;
      break;
  }
  return os.str();
}

TorusAngle realize(const RotationSpec& spec, int bits) {
  BigInt num;
  switch (spec.kind) {
    case RotationSpec::Kind::Quadratic: num = realize_quadratic(spec, bits); break;
    case RotationSpec::Kind::ContinuedFraction: num = realize_cf(spec, bits); break;
    case RotationSpec::Kind::Rational: num = realize_rational(spec.rat_p, spec.rat_q, bits); break;
    case RotationSpec::Kind::Decimal: num = realize_decimal(spec, bits); break;
  }
  if (num <= 0 || num >= (BigInt(1) << bits))
    throw Error(ErrorCode::ConfigInvalid, "alpha must lie in (0,1)");
  return TorusAngle(num, bits);
}

TorusAngle realize(const RotationSpec& spec) { return realize(spec, spec.precision_bits); }

std::vector<Convergent> cf_convergents(const RotationSpec& spec, int n) {
  if (n < 0) throw Error(ErrorCode::Precondition, "cf_convergents: n >= 0 required");
  std::vector<Convergent> out;
  if (n == 0) return out;

  auto push_from_quotients = [&](auto next_quotient) {
    BigInt p0(1), q0(0), p1, q1;
    for (int i = 0; i < n; ++i) {
      std::optional<BigInt> a = next_quotient(i);
      if (!a) break;
      if (i == 0) {
        p1 = *a; q1 = 1;
      } else {
        BigInt p2 = *a * p1 + p0, q2 = *a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
      }
      out.push_back({p1, q1});
    }
  };

  switch (spec.kind) {
    case RotationSpec::Kind::ContinuedFraction: {
      push_from_quotients([&](int i) -> std::optional<BigInt> {
        if (i < static_cast<int>(spec.cf_quotients.size())) return spec.cf_quotients[i];
        if (spec.cf_periodic_tail) return spec.cf_quotients.back();
        return std::nullopt;
      });
      break;
    }
    case RotationSpec::Kind::Rational:
    case RotationSpec::Kind::Decimal: {
      BigInt p, q;
      if (spec.kind == RotationSpec::Kind::Rational) {
        p = spec.rat_p; q = spec.rat_q;
      } else {
        auto dot = spec.decimal_digits.find('.');
        std::string frac = spec.decimal_digits.substr(dot + 1);
        p = from_decimal(spec.decimal_digits.substr(0, dot) + frac);
        q = pow_bigint(BigInt(10), static_cast<unsigned>(frac.size()));
      }
      std::vector<BigInt> qs;
      BigInt a = p, b = q;  // Euclid on p/q
      while (b != 0) {
        qs.push_back(floor_div(a, b));
        BigInt r = a - qs.back() * b;
        a = b; b = r;
      }
      push_from_quotients([&](int i) -> std::optional<BigInt> {
        if (i < static_cast<int>(qs.size())) return qs[i];
        return std::nullopt;
      });
      break;
    }
    case RotationSpec::Kind::Quadratic: {
      // Interval Gauss map over the certified realization bracket: each
      // partial quotient is accepted only when both interval endpoints agree.
      int bits = spec.precision_bits;
      TorusAngle t = realize(spec, bits);
      BigRational lo(t.numerator(), BigInt(1) << bits);
      BigRational hi(t.numerator() + 1, BigInt(1) << bits);
      std::vector<BigInt> qs;
      qs.emplace_back(0);  // alpha in (0,1)
      for (int i = 1; i < n; ++i) {
        if (boost::multiprecision::numerator(lo) <= 0)
          throw Error(ErrorCode::InsufficientPrecision,
                      "interval hit zero while extracting quotient " + std::to_string(i));
        BigRational inv_lo = BigRational(1) / hi, inv_hi = BigRational(1) / lo;
        BigInt a_lo = floor_div(boost::multiprecision::numerator(inv_lo),
                                boost::multiprecision::denominator(inv_lo));
        BigInt a_hi = floor_div(boost::multiprecision::numerator(inv_hi),
                                boost::multiprecision::denominator(inv_hi));
        if (a_lo != a_hi)
          throw Error(ErrorCode::InsufficientPrecision,
                      "cannot certify partial quotient " + std::to_string(i) + " at " +
                          std::to_string(bits) + " bits");
        qs.push_back(a_lo);
        BigRational nlo = inv_lo - BigRational(a_lo), nhi = inv_hi - BigRational(a_lo);
        lo = nlo;
        hi = nhi;
      }
      push_from_quotients([&](int i) -> std::optional<BigInt> {
        if (i < static_cast<int>(qs.size())) return qs[i];
        return std::nullopt;
      });
      break;
    }
  }
  return out;
}

AngleWithError angle_times_int(const BigInt& k, const TorusAngle& alpha) {
  BigInt ka = k < 0 ? BigInt(-k) : k;
  if (bit_length(ka) >= alpha.bits() / 2 - 32)
    throw Error(ErrorCode::PrecisionOverflow,
                "multiplier needs " + std::to_string(bit_length(ka)) +
                    " bits; raise precision_bits above " +
                    std::to_string(2 * (bit_length(ka) + 32)));
  TorusAngle v = alpha.times(k);
  double err = fixed_to_unit_double(ka, alpha.bits());
  return {v, err};
}

AngleWithError angle_times_int(const BigInt& k, const RotationSpec& spec) {
  return angle_times_int(k, realize(spec));
}

DiophantineEstimate diophantine_scan(const RotationSpec& spec, const BigInt& K) {
  if (K < 2) throw Error(ErrorCode::Precondition, "diophantine_scan: K >= 2 required");
  if (K > BigInt(1) << 31)
    throw Error(ErrorCode::Precondition, "diophantine_scan: K too large for exhaustive scan");
  TorusAngle alpha = realize(spec);
  const int bits = alpha.bits();
  const BigInt modulus = BigInt(1) << bits;
  const BigInt half = modulus >> 1;

  DiophantineEstimate est;
  est.scanned_up_to = K;

  BigInt m = 0;
  BigInt best_d = modulus;
  long long kmax = K.convert_to<long long>();
  for (long long k = 1; k <= kmax; ++k) {
    m += alpha.numerator();
    if (m >= modulus) m -= modulus;
    BigInt d = (m > half) ? modulus - m : m;
    if (d <= k)  // certified interval around k*alpha contains an integer
      throw Error(ErrorCode::RationalAlpha,
                  "dist_int(k*alpha) = 0 within certification at k = " + std::to_string(k));
    if (d < best_d) {
      best_d = d;
      est.records.emplace_back(BigInt(k), fixed_to_unit_double(d, bits));
    }
  }

  // Pointwise exponent over best-approximation records, Hurwitz-normalized;
  // the first few records carry universal small-k fluctuations and are skipped.
  const double sqrt5 = std::sqrt(5.0);
  double tau_raw = 1.0;
  bool found = false;
  for (int pass = 0; pass < 2 && !found; ++pass) {
    double kmin = (pass == 0) ? 8.0 : 2.0;
    for (const auto& [rk, rd] : est.records) {
      double kd = rk.convert_to<double>();
      if (kd < kmin) continue;
      found = true;
      double t = std::log(1.0 / (sqrt5 * rd)) / std::log(kd);
      tau_raw = std::max(tau_raw, t);
    }
  }
  est.tau_raw = std::max(tau_raw, 1.0);
  est.tau = std::max(1.0, std::round(est.tau_raw * 10.0) / 10.0);

  double gamma = 1e300;
  for (const auto& [rk, rd] : est.records) {
    double g = rd * std::pow(rk.convert_to<double>(), est.tau);
    if (g < gamma) {
      gamma = g;
      est.worst_k = rk;
    }
  }
  est.gamma = gamma;
  return est;
}

}  // namespace skewlab
