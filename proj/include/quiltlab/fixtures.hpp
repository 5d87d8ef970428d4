#pragma once

#include <string>
#include <vector>

#include "quiltlab/errors.hpp"

namespace quiltlab {

/// Template text compiled into the library: two_hole_{a,b,c} are 2-hole
/// subtemplates and template_n{0,2,21} are complete templates.
struct Fixture {
  std::string name;
  std::string text;
};

const std::vector<Fixture>& builtin_fixtures();
/// Errors: InvalidArgument for an unknown name.
const Fixture& builtin_fixture(const std::string& name);

}  // namespace quiltlab
