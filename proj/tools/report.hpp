#pragma once

#include "b0box/bpdn.hpp"
#include "b0box/solvers.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace b0box::report {

/// One-decimal scientific notation, 7 characters wide ("1.9e+00").
std::string sci(double v);

/// Column header of the iteration table. The last column is ||B_j|| for the
/// quasi-Newton solver and 1/nu for the Levenberg-Marquardt one.
std::string table_header(bool levenberg_marquardt);
std::string table_row(const IterationRecord& rec);

std::string solution_csv(const Vector& x);
std::string errors_csv(const Vector& x, const Vector& reference);
std::string history_csv(const std::vector<HistoryPoint>& history);
std::string steps_csv(const std::vector<Vector>& steps, Index dimension);
std::string iterations_csv(const std::vector<IterationRecord>& records);

std::uint32_t crc32_of(std::string_view data);

struct OutputFile {
  std::string name;
  std::string content;
};

using ManifestEntries = std::vector<std::pair<std::string, std::string>>;

/// Writes every file into `dir` (created if needed), then manifest.txt with
/// the given entries followed by one "file.<name>=crc32:<hex>" line per
/// file. Throws std::runtime_error on I/O failure.
void write_run(const std::filesystem::path& dir, const std::vector<OutputFile>& files, ManifestEntries manifest);

}  // namespace b0box::report
