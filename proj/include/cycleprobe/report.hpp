#pragma once

#include "cycleprobe/pipeline.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cycleprobe {

/// Fixed-point formatting that never prints a negative zero.
std::string format_fixed(double value, int decimals);

/// Plain-text table with a left-aligned first column and right-aligned rest.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> headers);
    void add_row(std::vector<std::string> cells);
    std::string render() const;

private:
    std::vector<std::string> headers_;
    std::vector<std::vector<std::string>> rows_;
};

// Writers for the emitted files. Each writes under `directory`, creating it
// if needed; country-level files go to `directory / country`.

void write_decomposition_files(const CountryReport& country, const std::filesystem::path& directory);
void write_summary_table(const StudyReport& report, const std::filesystem::path& directory);
void write_selection_table(const StudyReport& report, const std::filesystem::path& directory);
void write_wald_table(const StudyReport& report, const std::filesystem::path& directory);
void write_augmented_table(const StudyReport& report, const std::filesystem::path& directory);
void write_probability_path(const CountryReport& country, const std::filesystem::path& directory);
void write_status(const StudyReport& report, const std::filesystem::path& directory);

/// Conventions printed at the top of every text report and on stdout.
std::string conventions_preamble(const StudyConfig& config);

} // namespace cycleprobe
