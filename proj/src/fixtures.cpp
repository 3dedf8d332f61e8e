#include "spectral_layers/fixtures.hpp"

#include <stdexcept>

namespace spectral_layers {

namespace {

// Appends `ray_length` spheres of one ray vertex per outermost vertex, with
// outward degree 1 at the boundary so the ball compresses the infinite graph.
LayeredGraph with_rays(std::vector<int> sizes,
                       const std::vector<std::tuple<int, int, int>>& cross_edges,
                       int ray_length) {
  if (ray_length < 0) throw std::invalid_argument("fixture: negative ray length");
  const int figure_depth = static_cast<int>(sizes.size()) - 1;
  const int ray_width = sizes.back();
  for (int r = 0; r < ray_length; ++r) sizes.push_back(ray_width);
  LayeredGraphBuilder builder(sizes);
  for (const auto& [n, upper, lower] : cross_edges) builder.cross_edge(n, upper, lower);
  for (int r = 0; r < ray_length; ++r)
    for (int i = 0; i < ray_width; ++i)
      builder.cross_edge(figure_depth + r, i, i);
  for (int i = 0; i < ray_width; ++i) builder.outward(i, 1);
  return builder.build();
}

}  // namespace

LayeredGraph fig3a() {
  LayeredGraphBuilder builder({1, 1, 2, 3});
  builder.cross_edge(0, 0, 0);                       // o - v1
  builder.cross_edge(1, 0, 0).cross_edge(1, 1, 0);   // v1 - v2, v3
  builder.cross_edge(2, 0, 0);                       // v2 - v4
  builder.cross_edge(2, 1, 1).cross_edge(2, 2, 1);   // v3 - v5, v6
  return builder.build();
}

LayeredGraph fig3b() {
  LayeredGraphBuilder builder({1, 1, 2, 2});
  builder.cross_edge(0, 0, 0);
  builder.cross_edge(1, 0, 0).cross_edge(1, 1, 0);
  builder.cross_edge(2, 0, 0);  // v2 - v4
  builder.cross_edge(2, 1, 1);  // v3 - v5
  return builder.build();
}

LayeredGraph fig4a(int ray_length) {
  // S_2 = {v2, v3}, S_3 = {v4, v5, v6}; v5 is shared
  return with_rays({1, 1, 2, 3},
                   {{0, 0, 0},
                    {1, 0, 0}, {1, 1, 0},
                    {2, 0, 0}, {2, 1, 0}, {2, 1, 1}, {2, 2, 1}},
                   ray_length);
}

LayeredGraph fig4b(int ray_length) {
  // S_1 = {v1, v2, v3}, S_2 = {v4..v9}, S_3 = {v10, v11, v12}; together with
  // the root edges this is a 12-cycle: v1-v4-v10-v9-v3-v8-v12-v7-v2-v6-v11-v5-v1
  return with_rays({1, 3, 6, 3},
                   {{0, 0, 0}, {0, 1, 0}, {0, 2, 0},
                    {1, 0, 0}, {1, 1, 0},   // v4, v5 under v1
                    {1, 2, 1}, {1, 3, 1},   // v6, v7 under v2
                    {1, 4, 2}, {1, 5, 2},   // v8, v9 under v3
                    {2, 0, 0}, {2, 0, 5},   // v10 - v4, v9
                    {2, 1, 1}, {2, 1, 2},   // v11 - v5, v6
                    {2, 2, 3}, {2, 2, 4}},  // v12 - v7, v8
                   ray_length);
}

LayeredGraph fig5(int ray_length) {
  // 6-cycle v1-v5-v3-v4-v2-v6-v1 through S_1 = {v1,v2,v3}, S_2 = {v4,v5,v6}
  return with_rays({1, 3, 3},
                   {{0, 0, 0}, {0, 1, 0}, {0, 2, 0},
                    {1, 0, 1}, {1, 0, 2},   // v4 - v2, v3
                    {1, 1, 0}, {1, 1, 2},   // v5 - v1, v3
                    {1, 2, 0}, {1, 2, 1}},  // v6 - v1, v2
                   ray_length);
}

std::vector<std::string> fixture_names() {
  return {"fig3a", "fig3b", "fig4a", "fig4b", "fig5"};
}

LayeredGraph fixture_by_name(std::string_view name, int ray_length) {
  if (name == "fig3a") return fig3a();
  if (name == "fig3b") return fig3b();
  if (name == "fig4a") return fig4a(ray_length);
  if (name == "fig4b") return fig4b(ray_length);
  if (name == "fig5") return fig5(ray_length);
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

}  // namespace spectral_layers
