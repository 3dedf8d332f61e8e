#ifndef SPECTRAL_LAYERS_LGF_HPP
#define SPECTRAL_LAYERS_LGF_HPP

#include <string>
#include <string_view>

#include "spectral_layers/layered_graph.hpp"

namespace spectral_layers {

/// LGF, a line-oriented text format for layered graphs ('#' starts a comment):
///
///   spheres s_0 s_1 ... s_N
///   cross n i j        # edge between vertex j of S_n and vertex i of S_{n+1}
///   intra n i j        # edge within S_n, i != j
///   outdeg i d         # forward degree of vertex i of S_N (default 0)
///
/// Parse errors carry the offending line number. Canonical serialization puts
/// the spheres line first and sorts the remaining lines by (keyword, n, i, j);
/// outdeg lines are emitted for every vertex of S_N.
LayeredGraph parse_lgf(std::string_view text);
std::string serialize_lgf(const LayeredGraph& g);
std::string normalize_lgf(std::string_view text);

}  // namespace spectral_layers

#endif
