#pragma once

// JSON formats for polynomials and decompositions.
//
// Polynomial: { "n": int, "d": int,
//               "terms": [ { "exp": [e0, ..., en], "coeff": [re, im] } ] }
// Decomposition: { "d": int, "terms": [ { "lambda": [re, im],
//                  "form": [[re, im], ...] } ], "residual": float, "seed": int }

#include <string>

#include "waringlab/polycore.hpp"
#include "waringlab/types.hpp"

namespace waringlab {

/// Throws InvalidArgument naming the line and the offending field.
HomogeneousPoly parse_polynomial_json(const std::string& text);
std::string polynomial_to_json(const HomogeneousPoly& f);

struct DecompositionRecord {
  WaringDecomposition decomposition;
  double residual = 0.0;
  Seed seed = 0;
};

std::string decomposition_to_json(const WaringDecomposition& dec, double residual,
                                  Seed seed);
DecompositionRecord parse_decomposition_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace waringlab
