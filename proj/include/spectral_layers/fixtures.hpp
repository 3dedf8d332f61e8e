#ifndef SPECTRAL_LAYERS_FIXTURES_HPP
#define SPECTRAL_LAYERS_FIXTURES_HPP

#include <string>
#include <string_view>
#include <vector>

#include "spectral_layers/layered_graph.hpp"

namespace spectral_layers {

/// The canonical counterexample graphs. fig3a/fig3b are finite trees; the
/// others continue outward by one ray per outermost figure vertex, stored to
/// `ray_length` extra spheres with outward degree 1 at the boundary.

/// Non path commuting tree: root-v1; v1-v2,v3; v2-v4; v3-v5,v6.
LayeredGraph fig3a();
/// Spherically symmetric tree on the same sphere profile (1,1,2,2).
LayeredGraph fig3b();
/// Path commuting but not spherically symmetric (and not strongly path
/// commuting): v5 has two parents, v4 and v6 one each.
LayeredGraph fig4a(int ray_length = 3);
/// Spherically symmetric but not path commuting: a 12-cycle around the root.
LayeredGraph fig4b(int ray_length = 3);
/// Strongly path commuting but not family preserving: a 6-cycle through
/// S_1 and S_2.
LayeredGraph fig5(int ray_length = 3);

std::vector<std::string> fixture_names();
LayeredGraph fixture_by_name(std::string_view name, int ray_length = 3);

}  // namespace spectral_layers

#endif
