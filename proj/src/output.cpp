#include "hhg/output.hpp"

#include <fstream>

#include "hhg/errors.hpp"

namespace hhg {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file for writing: " + path);
  return out;
}

void write_header(std::ofstream& out, const FileHeader& hdr) {
  out << "# tool = " << hdr.tool << " " << hdr.version << "\n";
  out << "# subcommand = " << hdr.subcommand << "\n";
  out << "# config_hash = " << hdr.config_hash << "\n";
  for (const auto& [k, v] : hdr.extra) out << "# " << k << " = " << v << "\n";
}

}  // namespace

void write_bands_csv(const std::string& path, const BandStructure& bs, const FileHeader& hdr) {
  std::ofstream out = open_out(path);
  write_header(out, hdr);
  out << "k_au";
  for (int n = 1; n <= bs.n_window; ++n) out << ",E_" << n << "_ha";
  out << "\n";
  for (int ik = 0; ik < bs.grid.size(); ++ik) {
    out << format_g17(bs.grid.k[static_cast<std::size_t>(ik)]);
    for (int n = 0; n < bs.n_window; ++n) {
      out << "," << format_g17(bs.energies[static_cast<std::size_t>(ik)](bs.n0 + n));
    }
    out << "\n";
  }
}

void write_current_csv(const std::string& path, const CurrentTrace& trace, const FileHeader& hdr) {
  std::ofstream out = open_out(path);
  write_header(out, hdr);
  out << "t_au,J_au\n";
  for (std::size_t i = 0; i < trace.j.size(); ++i) {
    out << format_g17(static_cast<double>(i) * trace.dt) << "," << format_g17(trace.j[i]) << "\n";
  }
}

void write_spectrum_csv(const std::string& path, const SpectrumResult& sp, const FileHeader& hdr) {
  std::ofstream out = open_out(path);
  write_header(out, hdr);
  out << "omega_over_omegaL,S\n";
  for (std::size_t i = 0; i < sp.s.size(); ++i) {
    out << format_g17(sp.om_over_ol[i]) << "," << format_g17(sp.s[i]) << "\n";
  }
}

void write_per_k_csv(const std::string& path, const KGrid& grid, double dt,
                     const std::vector<std::vector<double>>& jk, const std::vector<int>& rows,
                     const FileHeader& hdr) {
  std::ofstream out = open_out(path);
  write_header(out, hdr);
  out << "t_au";
  for (int ik : rows) out << ",j_k" << ik;
  out << "\n";
  out << "# k_au";
  for (int ik : rows) out << "," << format_g17(grid.k[static_cast<std::size_t>(ik)]);
  out << "\n";
  if (rows.empty()) return;
  const std::size_t nt = jk[static_cast<std::size_t>(rows[0])].size();
  for (std::size_t i = 0; i < nt; ++i) {
    out << format_g17(static_cast<double>(i) * dt);
    for (int ik : rows) out << "," << format_g17(jk[static_cast<std::size_t>(ik)][i]);
    out << "\n";
  }
}

nlohmann::json peaks_to_json(const PeakTable& table, const std::optional<int>& cutoff) {
  nlohmann::json doc;
  nlohmann::json harmonics = nlohmann::json::array();
  for (const HarmonicPeak& p : table.peaks) {
    harmonics.push_back({{"h", p.h},
                         {"S", p.s_peak},
                         {"omega_over_omegaL", p.om_at_peak},
                         {"valley_lo", p.valley_lo},
                         {"valley_hi", p.valley_hi}});
  }
  doc["harmonics"] = harmonics;
  doc["cutoff"] = cutoff ? nlohmann::json(*cutoff) : nlohmann::json(nullptr);
  doc["floor_median"] = table.floor_median;
  doc["global_max"] = table.global_max;
  doc["global_max_omega_over_omegaL"] = table.global_max_om;
  doc["resolvable_odd_count"] = resolvable_odd_count(table);
  doc["support_reach"] = support_reach(table);
  nlohmann::json ratios;
  for (int h = 2; h + 1 <= (table.peaks.empty() ? 0 : table.peaks.back().h); h += 2) {
    ratios[std::to_string(h)] = even_odd_ratio(table, h);
  }
  doc["even_odd_ratios"] = ratios;
  return doc;
}

void write_json(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out = open_out(path);
  out << doc.dump(2) << "\n";
}

nlohmann::json config_to_json(const RunConfig& cfg) {
  nlohmann::json doc;
  for (const auto& [k, v] : canonical_items(cfg)) {
    const std::size_t dot = k.find('.');
    doc[k.substr(0, dot)][k.substr(dot + 1)] = v;
  }
  return doc;
}

}  // namespace hhg
