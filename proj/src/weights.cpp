#include "gradenorm/norms.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace gradenorm {

std::string_view gram_name(Gram g) {
  return g == Gram::Normalized ? "normalized" : "standard";
}

Gram gram_from_name(std::string_view name) {
  if (name == "normalized") return Gram::Normalized;
  if (name == "standard") return Gram::Standard;
  throw std::invalid_argument("unknown gram convention: " + std::string(name));
}

std::string_view weight_family_name(WeightSpec::Family f) {
  switch (f) {
    case WeightSpec::Family::Explicit: return "explicit";
    case WeightSpec::Family::FactorialInv: return "factorial_inv";
    case WeightSpec::Family::FactorialInvShift: return "factorial_inv_shift";
    case WeightSpec::Family::SigmaRhoS: return "sigma_rho_s";
    case WeightSpec::Family::StandardFactorial: return "standard_factorial";
  }
  return "?";
}

WeightSpec::Family weight_family_from_name(std::string_view name) {
  if (name == "explicit") return WeightSpec::Family::Explicit;
  if (name == "factorial_inv") return WeightSpec::Family::FactorialInv;
  if (name == "factorial_inv_shift") return WeightSpec::Family::FactorialInvShift;
  if (name == "sigma_rho_s") return WeightSpec::Family::SigmaRhoS;
  if (name == "standard_factorial") return WeightSpec::Family::StandardFactorial;
  if (name == "flat") return WeightSpec::Family::SigmaRhoS;
  throw std::invalid_argument("unknown weight family: " + std::string(name));
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  // Direct products through 20 (the exact-integer range), log-space beyond.
  static const std::array<double, 21> table = [] {
    std::array<double, 21> t{};
    t[0] = 1.0;
    for (int i = 1; i <= 20; ++i) t[static_cast<std::size_t>(i)] = t[i - 1] * i;
    return t;
  }();
  if (n <= 20) return table[static_cast<std::size_t>(n)];
  return std::exp(log_factorial(n));
}

double WeightSpec::weight(int n) const {
  if (n < 0) throw std::invalid_argument("weight: negative degree");
  if (n == 0) return 1.0;
  switch (family) {
    case Family::Explicit:
      if (static_cast<std::size_t>(n) >= values.size())
        throw std::out_of_range("weight: explicit list too short for degree " +
                                std::to_string(n));
      return values[static_cast<std::size_t>(n)];
    case Family::FactorialInv:
      return n <= 20 ? 1.0 / factorial(n) : std::exp(-log_factorial(n));
    case Family::FactorialInvShift:
      return n - 1 <= 20 ? 1.0 / factorial(n - 1) : std::exp(-log_factorial(n - 1));
    case Family::StandardFactorial:
      return factorial(n);
    case Family::SigmaRhoS:
      if (n <= 20)
        return std::pow(factorial(n), sigma) * std::exp2(rho * n) *
               std::pow(1.0 + n, s);
      return std::exp(sigma * log_factorial(n) + rho * n * std::log(2.0) +
                      s * std::log1p(static_cast<double>(n)));
  }
  throw std::logic_error("weight: unhandled family");
}

double WeightSpec::log_weight(int n) const {
  if (n < 0) throw std::invalid_argument("log_weight: negative degree");
  if (n == 0) return 0.0;
  switch (family) {
    case Family::Explicit:
      return std::log(weight(n));
    case Family::FactorialInv:
      return -log_factorial(n);
    case Family::FactorialInvShift:
      return -log_factorial(n - 1);
    case Family::StandardFactorial:
      return log_factorial(n);
    case Family::SigmaRhoS:
      return sigma * log_factorial(n) + rho * n * std::log(2.0) +
             s * std::log1p(static_cast<double>(n));
  }
  throw std::logic_error("log_weight: unhandled family");
}

void WeightSpec::validate(int max_degree) const {
  if (family == Family::Explicit) {
    if (values.empty() || values[0] != 1.0)
      throw std::invalid_argument("WeightSpec: explicit weights need w_0 = 1");
    if (static_cast<int>(values.size()) <= max_degree)
      throw std::invalid_argument("WeightSpec: explicit weights must cover degrees 0.." +
                                  std::to_string(max_degree));
  }
  for (int n = 0; n <= max_degree; ++n) {
    double w = weight(n);
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("WeightSpec: weights must be positive and finite");
  }
}

std::string WeightSpec::describe() const {
  std::string s0(weight_family_name(family));
  if (family == Family::SigmaRhoS) {
    s0 += "(" + std::to_string(sigma) + "," + std::to_string(rho) + "," + std::to_string(s) +
          ")";
  }
  return s0;
}

double gram_diag(const AlgebraShape& shape, const Monomial& m, Gram gram) {
  const int n = m.degree();
  double numerator = 1.0;
  switch (shape.carrier()) {
    case Kind::Tensor:
      return 1.0;
    case Kind::Antisymmetric:
      numerator = 1.0;
      break;
    case Kind::Symmetric: {
      // canonical word is sorted: multiplicities are run lengths
      int run = 1;
      for (std::size_t i = 1; i < m.word.size(); ++i) {
        if (m.word[i] == m.word[i - 1]) {
          ++run;
        } else {
          numerator *= factorial(run);
          run = 1;
        }
      }
      if (!m.word.empty()) numerator *= factorial(run);
      break;
    }
    case Kind::Super: {
      // even letters lead the canonical word; odd letters are distinct
      int run = 0;
      int prev = 0;
      for (int g : m.word) {
        if (shape.odd_letter(g)) break;
        if (run > 0 && g == prev) {
          ++run;
        } else {
          if (run > 0) numerator *= factorial(run);
          run = 1;
          prev = g;
        }
      }
      if (run > 0) numerator *= factorial(run);
      break;
    }
    case Kind::Paired:
      break;  // unreachable, carrier() resolves
  }
  return gram == Gram::Normalized ? numerator / factorial(n) : numerator;
}

}  // namespace gradenorm
