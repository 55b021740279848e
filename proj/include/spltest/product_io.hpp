#pragma once

#include "spltest/feature_model.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace spltest {

// products.csv: a header row of feature names followed by one row of 0/1
// values per product; row order is priority order. Fields containing
// commas, quotes or newlines are quoted.
std::string products_to_csv(const FeatureModel& fm,
                            std::span<const Product> suite);

// Parses a products.csv against a model. Throws SuiteMismatchError when the
// header does not match the model's features or a row is malformed.
std::vector<Product> products_from_csv(const FeatureModel& fm,
                                       const std::string& text);

// Shortest-round-trip decimal rendering ('.' separator, locale independent).
std::string format_double(double v);

std::string csv_escape(const std::string& field);
std::vector<std::string> csv_split_row(const std::string& line);

std::string read_file(const std::filesystem::path& path);

// Writes to a temporary file in the target directory and renames it into
// place, so failed runs never leave partial output files.
void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content);

} // namespace spltest
