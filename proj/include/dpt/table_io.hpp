#pragma once

#include <string>
#include <vector>

#include "dpt/lattice.hpp"
#include "dpt/mech.hpp"
#include "dpt/phasemap.hpp"
#include "dpt/quench.hpp"

// Deterministic serialization: every number goes through the same %.12g
// formatter, so identical inputs produce byte-identical files on any host.

namespace dpt::io {

// %.12g with "nan"/"inf"/"-inf" spelled out.
std::string fmt_g(double v);

// Writes body to path (binary mode, no newline translation); throws on
// failure to open or write.
void write_text(const std::string& path, const std::string& body);
std::string read_text(const std::string& path);

std::string chain_json(const HoppingChain& chain,
                       const DisorderSpec* disorder = nullptr);

// Columns: t_s, re_g, im_g, r, rate, phi, phi_dyn, phi_p, carried.
std::string trace_csv(const LoschmidtTrace& trace);

std::string report_json(const DptReport& report);

std::string boundary_json(const BoundaryResult& result);

// One row per (ratio, window) cell, row-major in j_b then j_a.
std::string diagram_csv(const PhaseDiagram& diagram);

// Columns: t_s, then re/im pairs per oscillator.
std::string envelope_csv(const EnvelopeTrace& trace);

// response[j] is the column for oscillator j, sampled on f_hz.
std::string spectrum_csv(const std::vector<double>& f_hz,
                         const std::vector<std::vector<double>>& response);

// Generic numeric table for small outputs (calibration fits, sweep curves).
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

// Raw carrier-level trajectory, little-endian:
//   8-byte magic "DPTRAW1\0", u32 version (=1), u32 n_osc,
//   f64 sample_dt, u64 samples, then n_osc * samples f64 (oscillator-major).
void write_raw(const std::string& path, const RawTrajectory& raw);
RawTrajectory read_raw(const std::string& path);

}  // namespace dpt::io
