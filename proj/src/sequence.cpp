#include "spectral_layers/sequence.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

namespace spectral_layers {

namespace {

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : comma - pos);
    // trim spaces
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty())
      throw std::invalid_argument("sequence spec: empty list entry");
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || ptr != item.data() + item.size())
      throw std::invalid_argument("sequence spec: bad integer '" + std::string(item) + "'");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
    if (pos == text.size())
      throw std::invalid_argument("sequence spec: trailing comma");
  }
  return out;
}

void check_nonnegative(const std::vector<std::int64_t>& values) {
  for (std::int64_t v : values)
    if (v < 0) throw std::invalid_argument("sequence spec: negative entry");
}

}  // namespace

SequenceSpec::SequenceSpec(std::vector<std::int64_t> prefix,
                           std::optional<std::vector<std::int64_t>> tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  check_nonnegative(prefix_);
  if (tail_) {
    if (tail_->empty())
      throw std::invalid_argument("sequence spec: tail must be nonempty");
    check_nonnegative(*tail_);
  }
}

SequenceSpec SequenceSpec::parse(std::string_view text) {
  std::size_t semi = text.find(';');
  if (semi == std::string_view::npos) {
    // bare list = pure tail
    return SequenceSpec({}, parse_int_list(text));
  }
  std::string_view prefix_part = text.substr(0, semi);
  std::string_view tail_part = text.substr(semi + 1);
  std::vector<std::int64_t> prefix =
      prefix_part.empty() ? std::vector<std::int64_t>{} : parse_int_list(prefix_part);
  if (tail_part.empty()) return SequenceSpec(std::move(prefix));
  return SequenceSpec(std::move(prefix), parse_int_list(tail_part));
}

std::int64_t SequenceSpec::value_at(std::size_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  if (!tail_)
    throw std::out_of_range("sequence exhausted at index " + std::to_string(n));
  return (*tail_)[(n - prefix_.size()) % tail_->size()];
}

bool SequenceSpec::defined_at(std::size_t n) const {
  return n < prefix_.size() || tail_.has_value();
}

std::string SequenceSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(prefix_[i]);
  }
  out += ';';
  if (tail_) {
    for (std::size_t i = 0; i < tail_->size(); ++i) {
      if (i) out += ',';
      out += std::to_string((*tail_)[i]);
    }
  }
  return out;
}

std::vector<int> sparse_gamma_sequence(int kappa, std::size_t length) {
  if (kappa < 2) throw std::invalid_argument("sparse gamma: kappa must be >= 2");
  std::vector<int> gamma(length, 0);
  double product = 1.0;
  std::size_t sum = 0;
  for (std::size_t j = 1;; ++j) {
    product *= (kappa - 1) + std::log(static_cast<double>(j));
    double length_j = std::ceil(product);
    if (length_j > 1e15 || sum + static_cast<std::size_t>(length_j) > length) break;
    sum += static_cast<std::size_t>(length_j);
    gamma[sum - 1] = 1;  // gamma is 1-indexed: slot sum-1 holds gamma_sum
  }
  return gamma;
}

SequenceSpec sparse_gamma_spec(int kappa, std::size_t length) {
  std::vector<int> bits = sparse_gamma_sequence(kappa, length);
  std::vector<std::int64_t> prefix(length + 1, 0);
  for (std::size_t n = 1; n <= length; ++n) prefix[n] = bits[n - 1];
  return SequenceSpec(std::move(prefix));
}

}  // namespace spectral_layers
