#pragma once
#include <iosfwd>
#include <string>

#include "af/field.hpp"

namespace af {

// Field snapshot format "AFLD", version 1 (all little-endian):
//   magic "AFLD" | u32 version | u32 nx | u32 ny
//   f64 origin-x | f64 origin-y | f64 spacing-x | f64 spacing-y
//   u8 bc (0 = Dirichlet, 1 = Neumann, 2 = Free)
//   nx*ny complex values, interleaved f64 (re, im), row-major.

void write_field(std::ostream& os, const ComplexField& u);
void write_field(const std::string& path, const ComplexField& u);

ComplexField read_field(std::istream& is);
ComplexField read_field(const std::string& path);

}  // namespace af
