#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "uccvqe/chem/mo.hpp"

namespace uccvqe::chem {

// FCIDUMP text format: a namelist header `&FCI NORB=.., NELEC=.., ... &END`
// followed by `value i j k l` records with 1-based indices, chemist order.
//   i j k l all > 0   -> (ij|kl), eight-fold symmetric
//   i j > 0, k = l = 0 -> h(i, j), symmetric
//   i > 0, j = k = l = 0 -> orbital energy of i
//   all zero          -> nuclear repulsion
// Malformed input raises ParseError carrying the line number.

MoIntegrals parse_fcidump(std::istream& in);
MoIntegrals parse_fcidump(std::string_view text);
MoIntegrals read_fcidump(const std::filesystem::path& path);

void write_fcidump(const MoIntegrals& mo, std::ostream& out, double threshold = 0.0);
void write_fcidump(const MoIntegrals& mo, const std::filesystem::path& path,
                   double threshold = 0.0);

}  // namespace uccvqe::chem
