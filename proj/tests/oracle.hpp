#pragma once

// Brute-force information measures, kept independent of the library's
// histogram path. Everything here walks pixels directly and accumulates
// probabilities in maps.

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

inline double entropy_of(const std::map<int, long>& counts, long total) {
  double h = 0;
  for (const auto& [v, c] : counts) {
    (void)v;
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h;
}

inline double mi(const std::vector<int>& a, const std::vector<int>& b,
                 const std::vector<std::uint8_t>* mask = nullptr) {
  std::map<std::pair<int, int>, long> joint;
  std::map<int, long> ma, mb;
  long n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (mask && !(*mask)[i]) continue;
    ++joint[{a[i], b[i]}];
    ++ma[a[i]];
    ++mb[b[i]];
    ++n;
  }
  double result = 0;
  for (const auto& [key, c] : joint) {
    const double pij = static_cast<double>(c) / n;
    const double pi = static_cast<double>(ma.at(key.first)) / n;
    const double pj = static_cast<double>(mb.at(key.second)) / n;
    result += pij * std::log2(pij / (pi * pj));
  }
  return result;
}

// H(A|B) computed the long way as H(A,B) - H(B).
inline double conditional_entropy(const std::vector<int>& a,
                                  const std::vector<int>& b,
                                  const std::vector<std::uint8_t>* mask = nullptr) {
  std::map<std::pair<int, int>, long> joint;
  std::map<int, long> mb;
  long n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (mask && !(*mask)[i]) continue;
    ++joint[{a[i], b[i]}];
    ++mb[b[i]];
    ++n;
  }
  double h_joint = 0;
  for (const auto& [key, c] : joint) {
    (void)key;
    const double p = static_cast<double>(c) / n;
    h_joint -= p * std::log2(p);
  }
  return h_joint - entropy_of(mb, n);
}

}  // namespace oracle
