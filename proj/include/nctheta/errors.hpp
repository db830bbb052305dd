#pragma once

#include <stdexcept>
#include <string>

namespace nct {

// Base for all mathematical-domain failures. The CLI maps these to exit
// code 3; parse errors stay plain std::runtime_error and map to exit 2.
struct math_error : std::runtime_error {
    math_error(std::string code, const std::string& detail)
        : std::runtime_error(detail), code(std::move(code)) {}
    std::string code;
};

struct singular_modulus : math_error {
    explicit singular_modulus(const std::string& d = "modulus matrix is singular")
        : math_error("singular_modulus", d) {}
};

struct not_positive_definite : math_error {
    explicit not_positive_definite(const std::string& d = "matrix is not positive definite")
        : math_error("not_positive_definite", d) {}
};

struct not_siegel : math_error {
    explicit not_siegel(const std::string& d = "imaginary part is not positive definite")
        : math_error("not_siegel", d) {}
};

struct truncation_overflow : math_error {
    explicit truncation_overflow(const std::string& d = "required truncation radius exceeds cap")
        : math_error("truncation_overflow", d) {}
};

struct singular_deformation : math_error {
    explicit singular_deformation(const std::string& d = "deformation factor is singular")
        : math_error("singular_deformation", d) {}
};

struct not_compatible : math_error {
    explicit not_compatible(const std::string& d = "compatibility condition violated")
        : math_error("not_compatible", d) {}
};

struct not_positive_real : math_error {
    explicit not_positive_real(const std::string& d = "real part is not positive definite")
        : math_error("not_positive_real", d) {}
};

struct index_modulus_mismatch : math_error {
    explicit index_modulus_mismatch(const std::string& d = "coset index has wrong modulus")
        : math_error("index_modulus_mismatch", d) {}
};

struct dimension_mismatch : math_error {
    explicit dimension_mismatch(const std::string& d = "dimension mismatch")
        : math_error("dimension_mismatch", d) {}
};

struct parallel_lagrangians : math_error {
    explicit parallel_lagrangians(const std::string& d = "slope difference is singular")
        : math_error("parallel_lagrangians", d) {}
};

struct not_unimodular : math_error {
    explicit not_unimodular(const std::string& d = "matrix is not unimodular")
        : math_error("not_unimodular", d) {}
};

struct degenerate_difference : math_error {
    explicit degenerate_difference(const std::string& d = "label difference is singular")
        : math_error("degenerate_difference", d) {}
};

}  // namespace nct
