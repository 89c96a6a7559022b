#pragma once

// Reference computations that share no code path with the library.

#include <array>
#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace tonality::testing {

using BigFloat = boost::multiprecision::cpp_dec_float_50;

// alpha^x / (alpha^x + lambda (1-alpha)^x) in 50-digit arithmetic, power form.
inline double spm_oracle(double x, double alpha, double lambda) {
  const BigFloat a(alpha), l(lambda), bx(x);
  const BigFloat num = boost::multiprecision::pow(a, bx);
  const BigFloat den = num + l * boost::multiprecision::pow(BigFloat(1) - a, bx);
  return static_cast<double>(num / den);
}

inline BigFloat spm_big(const BigFloat& x, const BigFloat& alpha, const BigFloat& lambda) {
  const BigFloat num = boost::multiprecision::pow(alpha, x);
  return num / (num + lambda * boost::multiprecision::pow(BigFloat(1) - alpha, x));
}

// Squared-error loss of the two-neuron network with one weight perturbed by
// `shift`. `side` 0 perturbs the positive weight, 1 the negative one.
struct NetworkLoss {
  std::vector<double> w_pos, w_neg;
  std::vector<bool> active;
  double alpha, lambda, gamma, target;

  BigFloat operator()(std::size_t index, int side, double shift) const {
    BigFloat net_pos = 0, net_neg = 0;
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (!active[i]) continue;
      BigFloat wp(w_pos[i]), wn(w_neg[i]);
      if (i == index) (side == 0 ? wp : wn) += BigFloat(shift);
      net_pos += wp;
      net_neg += wn;
    }
    const BigFloat a(alpha), l(lambda);
    const BigFloat delta = spm_big(net_pos, a, l) - spm_big(BigFloat(gamma) * net_neg, a, l);
    const BigFloat e = delta - BigFloat(target);
    return e * e / 2;
  }
};

enum class Observed { kPresent, kAbsent, kUnobserved };

/// Three binary word indicators, conditionally independent given the class.
/// The joint table over (class, w1, w2, w3) is enumerated explicitly and the
/// posterior P(class = S | evidence) obtained by summation.
struct ThreeWordModel {
  double prior_s;                       // P(S)
  std::array<double, 3> given_s;        // P(word_i present | S)
  std::array<double, 3> given_not_s;    // P(word_i present | not S)

  double posterior(const std::array<Observed, 3>& evidence) const {
    BigFloat mass_s = 0, mass_all = 0;
    for (int cls = 0; cls < 2; ++cls) {
      for (int bits = 0; bits < 8; ++bits) {
        BigFloat p = cls == 1 ? BigFloat(prior_s) : BigFloat(1) - BigFloat(prior_s);
        bool consistent = true;
        for (std::size_t i = 0; i < 3; ++i) {
          const bool present = (bits >> i) & 1;
          if ((evidence[i] == Observed::kPresent && !present) ||
              (evidence[i] == Observed::kAbsent && present)) {
            consistent = false;
          }
          const BigFloat q = cls == 1 ? BigFloat(given_s[i]) : BigFloat(given_not_s[i]);
          p *= present ? q : BigFloat(1) - q;
        }
        if (!consistent) continue;
        mass_all += p;
        if (cls == 1) mass_s += p;
      }
    }
    return static_cast<double>(mass_s / mass_all);
  }
};

}  // namespace tonality::testing
