#ifndef TERASENSE_IO_HPP
#define TERASENSE_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "terasense/errors.hpp"
#include "terasense/physics.hpp"

namespace terasense::io {

// frequency_hz,value rows at 17 significant digits.
std::string spectrum_to_csv(const physics::Spectrum& spectrum);
physics::Spectrum spectrum_from_csv(const std::string& text,
                                    physics::SpectrumKind kind);

// Materials file: header `frequency_hz,<name1>,<name2>,...`, monotone
// frequency column, one transmittance spectrum per named column.
std::map<std::string, physics::Spectrum>
load_materials_csv(const std::string& text);

// Atomic file write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// Resolves a data file: absolute/existing paths win, otherwise the
// TERASENSE_DATA_DIR environment variable is used as the search root.
std::string resolve_data_path(const std::string& path);

std::string format_double(double v); // 17 significant digits

} // namespace terasense::io

#endif
