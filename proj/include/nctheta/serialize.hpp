#pragma once

#include <string>

#include <json.hpp>

#include "nctheta/structure.hpp"

namespace nct {

/// Complex value as [re, im].
nlohmann::json complex_to_json(cplx v);

/// Integer matrix from JSON text like "[[1,0],[0,-4]]"; a bare list
/// "[1,-4]" is read as a diagonal.
IntSymMatrix parse_int_sym(const std::string& text);

/// Integer vector from comma-separated text like "1,0".
IVec parse_int_vec(const std::string& text, int n);

/// Complex vector from JSON text "[[re,im],...]"; bare numbers are real parts.
CVec parse_complex_vec(const std::string& text, int n);

/// Complex square matrix from JSON text; entries are [re,im] pairs or bare
/// real numbers.
CMat parse_complex_mat(const std::string& text, int n);

/// Structure tensor keyed "mu|nu|rho" with comma-joined representative
/// vectors, values as [re, im].
nlohmann::json tensor_to_json(const StructureTensor& t);

}  // namespace nct
