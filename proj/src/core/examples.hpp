#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "jsj.hpp"
#include "lazy.hpp"
#include "normal.hpp"

namespace plsplit {

/// A named example: an optional periodic generator, a finite window, named
/// surfaces on it and, when the surfaces split the window, piece labels in
/// cut_along order.
struct Example {
  std::string name;
  int param = 0;
  std::optional<PeriodicSpec> generator;
  Triangulation window;
  std::vector<NscSurface> surfaces;
  std::vector<PieceLabel> piece_labels;
  std::string description;
};

/// Names: `motivating` (param = block radius, >= 1), `product` (param =
/// genus, >= 1), `periodic-annulus` (param = number of tori, >= 2).
/// Throws UnknownExample, InvalidArgument.
Example generate_example(const std::string& name, int param);

const std::vector<std::string>& example_names();

/// Default parameter of a named example.
int default_example_param(const std::string& name);

/// The growing tubes of the periodic-annulus example, as one surface
/// sequence on its generator.
SurfaceSequence example_sequence(const Example& ex);

}  // namespace plsplit
