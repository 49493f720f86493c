#pragma once

#include <string_view>

#include "semmap/matrix.hpp"

namespace semmap::fixtures {

// Supplementary-adverb case study: 28 grams from nine languages over 18
// functions. Same bytes as fixtures/supplement_adverbs.csv.
std::string_view supplement_adverbs_csv();

// Parsed fixture with the long function names attached.
const FormFunctionMatrix& supplement_adverbs();

}  // namespace semmap::fixtures
