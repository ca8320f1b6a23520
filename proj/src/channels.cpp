#include "gptnoise/channels.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gptnoise {

namespace {

std::vector<int> range_outcomes(Index n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

void require_distinct(const std::vector<int>& v, const char* which) {
  std::set<int> s(v.begin(), v.end());
  if (s.size() != v.size()) throw Error(ErrorCode::InvalidParameter, std::string(which) + " outcomes must be distinct");
}

}  // namespace

ClassicalChannel::ClassicalChannel(std::vector<int> in_outcomes, std::vector<int> out_outcomes, RMatrix matrix)
    : in_(std::move(in_outcomes)), out_(std::move(out_outcomes)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != static_cast<Index>(in_.size()) || matrix_.cols() != static_cast<Index>(out_.size()))
    throw Error(ErrorCode::InvalidParameter, "channel matrix shape does not match its outcome sets");
  require_distinct(in_, "input");
  require_distinct(out_, "output");
  if (!matrix_.allFinite()) throw Error(ErrorCode::InvalidParameter, "channel entries must be finite");
  for (Index i = 0; i < matrix_.rows(); ++i) {
    if (matrix_.row(i).minCoeff() < 0.0 || matrix_.row(i).maxCoeff() > 1.0)
      throw Error(ErrorCode::InvalidParameter, "channel entries must lie in [0,1]");
    const double s = matrix_.row(i).sum();
    if (std::abs(s - 1.0) > 1e-12) throw Error(ErrorCode::InvalidParameter, "channel row " + std::to_string(i) + " does not sum to 1");
    matrix_.row(i) /= s;
  }
}

ClassicalChannel ClassicalChannel::identity(std::vector<int> outcomes) {
  const auto n = static_cast<Index>(outcomes.size());
  return ClassicalChannel(outcomes, outcomes, RMatrix::Identity(n, n));
}

Observable post_process(const ClassicalChannel& nu, const Observable& a) {
  if (nu.in_outcomes().size() != a.outcomes().size()) throw Error(ErrorCode::OutcomeMismatch, "channel input does not match observable outcomes");
  // Map channel rows onto observable effects by label.
  std::vector<std::size_t> row_of(nu.in_outcomes().size());
  for (std::size_t r = 0; r < nu.in_outcomes().size(); ++r) {
    const auto i = a.index_of(nu.in_outcomes()[r]);
    if (!i) throw Error(ErrorCode::OutcomeMismatch, "channel input outcome " + std::to_string(nu.in_outcomes()[r]) + " is not an outcome of the observable");
    row_of[r] = static_cast<std::size_t>(*i);
  }
  std::vector<Effect> effects;
  effects.reserve(nu.out_outcomes().size());
  for (std::size_t y = 0; y < nu.out_outcomes().size(); ++y) {
    Effect e = Effect::zero(a.space());
    for (std::size_t r = 0; r < row_of.size(); ++r) {
      const double w = nu.matrix()(static_cast<Index>(r), static_cast<Index>(y));
      if (w != 0.0) e = e + w * a.effects()[row_of[r]];
    }
    effects.push_back(std::move(e));
  }
  return Observable(a.space(), nu.out_outcomes(), std::move(effects));
}

ClassicalChannel compose(const ClassicalChannel& nu2, const ClassicalChannel& nu1) {
  if (nu1.out_outcomes() != nu2.in_outcomes()) throw Error(ErrorCode::OutcomeMismatch, "channels do not chain");
  return ClassicalChannel(nu1.in_outcomes(), nu2.out_outcomes(), nu1.matrix() * nu2.matrix());
}

ClassicalChannel reverse_channel(Index n) {
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "reversing needs at least two outcomes");
  return reverse_channel(range_outcomes(n));
}

ClassicalChannel reverse_channel(const std::vector<int>& outcomes) {
  const auto n = static_cast<Index>(outcomes.size());
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "reversing needs at least two outcomes");
  RMatrix m = RMatrix::Constant(n, n, 1.0 / static_cast<double>(n - 1));
  m.diagonal().setZero();
  return ClassicalChannel(outcomes, outcomes, m);
}

Observable reverse(const Observable& a) { return post_process(reverse_channel(a.outcomes()), a); }

Observable doubly_reverse(const Observable& a) {
  const auto nu = reverse_channel(a.outcomes());
  return post_process(nu, post_process(nu, a));
}

double doubly_reverse_lambda(Index n) {
  const auto d = static_cast<double>(n);
  return d * (d - 2.0) / ((d - 1.0) * (d - 1.0));
}

int encode_tuple(const std::vector<Index>& digits, const std::vector<Index>& radices) {
  if (digits.size() != radices.size()) throw Error(ErrorCode::InvalidParameter, "tuple length does not match radices");
  Index code = 0;
  for (std::size_t j = 0; j < digits.size(); ++j) {
    if (digits[j] < 0 || digits[j] >= radices[j]) throw Error(ErrorCode::InvalidParameter, "tuple digit out of range");
    code = code * radices[j] + digits[j];
  }
  return static_cast<int>(code);
}

std::vector<Index> decode_tuple(int code, const std::vector<Index>& radices) {
  std::vector<Index> digits(radices.size());
  Index rest = code;
  for (std::size_t j = radices.size(); j-- > 0;) {
    digits[j] = rest % radices[j];
    rest /= radices[j];
  }
  if (rest != 0 || code < 0) throw Error(ErrorCode::InvalidParameter, "code out of range for the given radices");
  return digits;
}

ClassicalChannel copy_channel(const std::vector<int>& outcomes, Index copies) {
  if (copies < 2) throw Error(ErrorCode::InvalidParameter, "copying needs at least two copies");
  const auto n = static_cast<Index>(outcomes.size());
  Index cells = 1;
  for (Index j = 0; j < copies; ++j) {
    cells *= n;
    if (cells > 10'000'000) throw Error(ErrorCode::SizeCap, "copy channel output grid is too large");
  }
  const std::vector<Index> radices(static_cast<std::size_t>(copies), n);
  RMatrix m = RMatrix::Zero(n, cells);
  for (Index i = 0; i < n; ++i) m(i, encode_tuple(std::vector<Index>(static_cast<std::size_t>(copies), i), radices)) = 1.0;
  return ClassicalChannel(outcomes, range_outcomes(cells), m);
}

ClassicalChannel relabel_channel(const std::vector<int>& in_outcomes, const std::map<int, int>& f) {
  std::set<int> image;
  for (int x : in_outcomes) {
    const auto it = f.find(x);
    if (it == f.end()) throw Error(ErrorCode::InvalidParameter, "relabeling is undefined at outcome " + std::to_string(x));
    image.insert(it->second);
  }
  return relabel_channel(in_outcomes, f, std::vector<int>(image.begin(), image.end()));
}

ClassicalChannel relabel_channel(const std::vector<int>& in_outcomes, const std::map<int, int>& f, std::vector<int> out_outcomes) {
  RMatrix m = RMatrix::Zero(static_cast<Index>(in_outcomes.size()), static_cast<Index>(out_outcomes.size()));
  for (std::size_t i = 0; i < in_outcomes.size(); ++i) {
    const auto it = f.find(in_outcomes[i]);
    if (it == f.end()) throw Error(ErrorCode::InvalidParameter, "relabeling is undefined at outcome " + std::to_string(in_outcomes[i]));
    const auto pos = std::find(out_outcomes.begin(), out_outcomes.end(), it->second);
    if (pos == out_outcomes.end()) throw Error(ErrorCode::InvalidParameter, "relabeled outcome is missing from the output set");
    m(static_cast<Index>(i), pos - out_outcomes.begin()) = 1.0;
  }
  return ClassicalChannel(in_outcomes, std::move(out_outcomes), m);
}

ClassicalChannel trivializing_channel(const std::vector<int>& in_outcomes, const TrivialObservable& t) {
  const auto n = static_cast<Index>(in_outcomes.size());
  RMatrix m = t.probs().transpose().replicate(n, 1);
  return ClassicalChannel(in_outcomes, t.outcomes(), m);
}

}  // namespace gptnoise
