#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ringtherm/stats.hpp"
#include "ringtherm/sweep.hpp"

namespace ringtherm {

// 17-significant-digit decimal text; round-trips the double exactly. Every
// file this tool writes uses it.
std::string format_double(double v);

// One line-delimited JSON object per record with fixed key order:
// seed, n_sites, excited_site, couplings, intensities.
std::string format_record(const EnsembleRecord& record);
EnsembleRecord parse_record(const std::string& line);

std::vector<EnsembleRecord> read_records(const std::filesystem::path& path);

// Record files produced by image ingestion: one CSV row per image,
// n_sites,excited_site,intensity_0,...  Couplings are unknown and left empty.
std::string format_intensity_csv(const std::vector<EnsembleRecord>& records);
std::vector<EnsembleRecord> read_intensity_csv(const std::filesystem::path& path);

std::string format_grid_csv(const std::vector<PhaseCell>& cells);
std::string format_size_study_csv(const std::vector<SizeStudyRow>& rows);

// Write-to-temp plus atomic rename; no partial output survives an error.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_text(const std::filesystem::path& path);

} // namespace ringtherm
