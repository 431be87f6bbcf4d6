#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hhg/bands.hpp"
#include "hhg/config.hpp"
#include "hhg/observables.hpp"

namespace hhg {

// Comment block written at the top of every CSV so each file identifies the
// exact configuration that produced it.
struct FileHeader {
  std::string tool;
  std::string version;
  std::string subcommand;
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> extra;
};

void write_bands_csv(const std::string& path, const BandStructure& bs, const FileHeader& hdr);
void write_current_csv(const std::string& path, const CurrentTrace& trace, const FileHeader& hdr);
void write_spectrum_csv(const std::string& path, const SpectrumResult& sp, const FileHeader& hdr);
void write_per_k_csv(const std::string& path, const KGrid& grid, double dt,
                     const std::vector<std::vector<double>>& jk, const std::vector<int>& rows,
                     const FileHeader& hdr);

nlohmann::json peaks_to_json(const PeakTable& table, const std::optional<int>& cutoff);
void write_json(const std::string& path, const nlohmann::json& doc);

nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace hhg
