#pragma once

#include <utility>
#include <vector>

#include "urnlab/errors.hpp"
#include "urnlab/rational.hpp"
#include "urnlab/rule.hpp"

namespace urnlab {

// Exact row-stochastic transition matrix of the black-count chain on
// {0, ..., n}, stored sparsely by row (at most k+1 entries per row).
struct TransitionKernel {
  int n = 0;
  // rows[m] = sorted (next state, probability) pairs with positive probability
  std::vector<std::vector<std::pair<int, Rational>>> rows;
};

struct StationaryResult {
  std::vector<Rational> distribution;  // over counts 0..n, sums to 1 exactly
  Rational mean;                       // sum_m pi_m * m/n
};

// Thrown when the chain has several recurrent classes and hence no unique
// invariant measure; carries the offending classes (sorted state lists).
class MultipleRecurrentClassesError : public Error {
public:
  MultipleRecurrentClassesError(std::string what, std::vector<std::vector<int>> classes)
      : Error(std::move(what)), recurrent_classes(std::move(classes)) {}
  std::vector<std::vector<int>> recurrent_classes;
};

// P(i black among k drawn without replacement from m black / n total)
// = C(m,i) C(n-m,k-i) / C(n,k); out-of-range binomials contribute zero.
Rational hypergeometric_pmf(int n, int m, int k, int i);

// Expected one-step change of the black count from state m:
// sum_i (k [i in E] - i) * hypergeometric_pmf(n, m, k, i).
Rational finite_drift(const Rule& r, int n, int m);

TransitionKernel transition_kernel(const Rule& r, int n);

// The recurrent communicating classes of the kernel (sinks of the SCC
// condensation), each sorted ascending; classes ordered by smallest state.
std::vector<std::vector<int>> recurrent_classes(const TransitionKernel& kernel);

// Exact solve of pi P = pi, sum pi = 1 over the rationals.
// Throws MultipleRecurrentClassesError when the invariant measure is not unique.
StationaryResult stationary(const TransitionKernel& kernel);

}  // namespace urnlab
