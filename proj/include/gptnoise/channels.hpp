#pragma once

#include <map>
#include <vector>

#include "gptnoise/core.hpp"

namespace gptnoise {

/// Row-stochastic matrix nu(x, y) from input outcomes x to output outcomes y.
class ClassicalChannel {
 public:
  /// Rows within 1e-12 of summing to one are renormalized; others are rejected.
  ClassicalChannel(std::vector<int> in_outcomes, std::vector<int> out_outcomes, RMatrix matrix);

  static ClassicalChannel identity(std::vector<int> outcomes);

  const std::vector<int>& in_outcomes() const { return in_; }
  const std::vector<int>& out_outcomes() const { return out_; }
  const RMatrix& matrix() const { return matrix_; }

 private:
  std::vector<int> in_;
  std::vector<int> out_;
  RMatrix matrix_;
};

/// (nu o A)_y = sum_x nu(x, y) A_x.
Observable post_process(const ClassicalChannel& nu, const Observable& a);

/// nu2 after nu1: matrix product nu1 * nu2.
ClassicalChannel compose(const ClassicalChannel& nu2, const ClassicalChannel& nu1);

/// Uniform jump to any other outcome; zero diagonal, 1/(N-1) elsewhere.
ClassicalChannel reverse_channel(Index n);
ClassicalChannel reverse_channel(const std::vector<int>& outcomes);

Observable reverse(const Observable& a);
/// Two reversing post-processings, i.e. (1 - lambda) A + lambda T_uniform.
Observable doubly_reverse(const Observable& a);
/// N(N-2)/(N-1)^2
double doubly_reverse_lambda(Index n);

/// Mixed-radix code of a tuple of indices, first position most significant.
int encode_tuple(const std::vector<Index>& digits, const std::vector<Index>& radices);
std::vector<Index> decode_tuple(int code, const std::vector<Index>& radices);

/// x -> (x, ..., x) with m copies; output j encodes the tuple of positions of
/// the copies in `outcomes` (see encode_tuple).
ClassicalChannel copy_channel(const std::vector<int>& outcomes, Index copies);

/// Deterministic channel x -> f(x). Outputs default to the sorted image of f.
ClassicalChannel relabel_channel(const std::vector<int>& in_outcomes, const std::map<int, int>& f);
ClassicalChannel relabel_channel(const std::vector<int>& in_outcomes, const std::map<int, int>& f, std::vector<int> out_outcomes);

/// Erases the input and emits an outcome drawn from the trivial distribution.
ClassicalChannel trivializing_channel(const std::vector<int>& in_outcomes, const TrivialObservable& t);

}  // namespace gptnoise
