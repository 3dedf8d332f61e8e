#ifndef SPECTRAL_LAYERS_SEQUENCE_HPP
#define SPECTRAL_LAYERS_SEQUENCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spectral_layers {

/// An eventually periodic sequence of nonnegative integers, given as a finite
/// prefix plus an optional tail that repeats forever after the prefix.
/// Without a tail the sequence is finite and reading past the prefix throws.
class SequenceSpec {
 public:
  SequenceSpec(std::vector<std::int64_t> prefix,
               std::optional<std::vector<std::int64_t>> tail = std::nullopt);

  /// Grammar: "p0,p1,...;t0,t1,..." = prefix;tail. A bare list without ';'
  /// is a pure tail ("2" repeats 2 forever); a trailing ';' makes the list a
  /// pure prefix ("1,2,1;" is the finite sequence 1,2,1).
  static SequenceSpec parse(std::string_view text);

  std::int64_t value_at(std::size_t n) const;  // throws std::out_of_range when exhausted
  bool defined_at(std::size_t n) const;

  const std::vector<std::int64_t>& prefix() const { return prefix_; }
  const std::optional<std::vector<std::int64_t>>& tail() const { return tail_; }

  std::string to_string() const;

 private:
  std::vector<std::int64_t> prefix_;
  std::optional<std::vector<std::int64_t>> tail_;
};

/// Sparse complete-sphere positions: gamma_n = 1 exactly when n is a partial
/// sum of L_j = ceil(prod_{i=1..j} (kappa-1+ln i)). Returns gamma_1..gamma_length.
std::vector<int> sparse_gamma_sequence(int kappa, std::size_t length);

/// Same bits packaged as a SequenceSpec indexed from 1 (entry 0 is a padding
/// zero, never read by the tree builder).
SequenceSpec sparse_gamma_spec(int kappa, std::size_t length);

}  // namespace spectral_layers

#endif
