#include "dpt/table_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace dpt::io {

std::string fmt_g(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string body((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return body;
}

namespace {

void append_num_array(std::string& s, const std::vector<double>& v) {
  s += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt_g(v[i]);
  }
  s += ']';
}

const char* verdict_name(SizeVerdict v) {
  switch (v) {
    case SizeVerdict::robust:
      return "robust";
    case SizeVerdict::size_artifact:
      return "size_artifact";
    default:
      return "not_applicable";
  }
}

}  // namespace

std::string chain_json(const HoppingChain& chain,
                       const DisorderSpec* disorder) {
  std::string s = "{\n  \"sites\": " + std::to_string(chain.sites) +
                  ",\n  \"unit_cells\": " + std::to_string(chain.unit_cells) +
                  ",\n  \"couplings_hz\": ";
  append_num_array(s, chain.couplings);
  if (disorder != nullptr) {
    s += ",\n  \"disorder\": {\n    \"strength_hz\": " +
         fmt_g(disorder->strength) +
         ",\n    \"seed\": " + std::to_string(disorder->seed) +
         ",\n    \"deltas_hz\": ";
    append_num_array(s, disorder->deltas);
    s += "\n  }";
  }
  s += "\n}\n";
  return s;
}

std::string trace_csv(const LoschmidtTrace& trace) {
  std::string s = "t_s,re_g,im_g,r,rate,phi_rad,phi_dyn_rad,phi_p_rad,carried\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    s += fmt_g(trace.times[i]);
    s += ',';
    s += fmt_g(trace.g[i].real());
    s += ',';
    s += fmt_g(trace.g[i].imag());
    s += ',';
    s += fmt_g(trace.r[i]);
    s += ',';
    s += fmt_g(trace.rate[i]);
    s += ',';
    s += fmt_g(trace.phi[i]);
    s += ',';
    s += fmt_g(trace.phi_dyn[i]);
    s += ',';
    s += fmt_g(trace.phi_p[i]);
    s += ',';
    s += trace.carried[i] ? '1' : '0';
    s += '\n';
  }
  return s;
}

std::string report_json(const DptReport& report) {
  std::string s = "{\n  \"dpt_present\": ";
  s += report.dpt_present ? "true" : "false";
  s += ",\n  \"critical_times_s\": ";
  append_num_array(s, report.critical_times);
  s += ",\n  \"pgp_jump_times_s\": ";
  append_num_array(s, report.pgp_jump_times);
  s += ",\n  \"min_abs_g\": " + fmt_g(report.min_abs_g);
  s += ",\n  \"finite_size_verdict\": \"";
  s += verdict_name(report.finite_size_verdict);
  s += "\"\n}\n";
  return s;
}

std::string boundary_json(const BoundaryResult& result) {
  std::string s = "{\n  \"r_c\": " + fmt_g(result.r_c);
  s += ",\n  \"half_width\": " + fmt_g(result.half_width);
  s += ",\n  \"window_jbt\": " + fmt_g(result.window_jbt);
  s += ",\n  \"window_s\": " + fmt_g(result.window_s);
  s += ",\n  \"evaluations\": " + std::to_string(result.evaluations);
  s += "\n}\n";
  return s;
}

std::string diagram_csv(const PhaseDiagram& diagram) {
  std::string s = "j_a_hz,j_b_hz,dpt,first_tc_s\n";
  const std::size_t na = diagram.j_a.size();
  for (std::size_t ib = 0; ib < diagram.j_b.size(); ++ib) {
    for (std::size_t ia = 0; ia < na; ++ia) {
      const std::size_t cell = ib * na + ia;
      s += fmt_g(diagram.j_a[ia]);
      s += ',';
      s += fmt_g(diagram.j_b[ib]);
      s += ',';
      s += diagram.dpt[cell] ? '1' : '0';
      s += ',';
      s += fmt_g(diagram.first_tc[cell]);
      s += '\n';
    }
  }
  return s;
}

std::string envelope_csv(const EnvelopeTrace& trace) {
  std::string s = "t_s";
  for (int j = 1; j <= trace.n_osc; ++j) {
    s += ",re_psi_" + std::to_string(j) + ",im_psi_" + std::to_string(j);
  }
  s += '\n';
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    s += fmt_g(trace.times[i]);
    for (int j = 0; j < trace.n_osc; ++j) {
      const auto c = trace.at(j, i);
      s += ',';
      s += fmt_g(c.real());
      s += ',';
      s += fmt_g(c.imag());
    }
    s += '\n';
  }
  return s;
}

std::string spectrum_csv(const std::vector<double>& f_hz,
                         const std::vector<std::vector<double>>& response) {
  for (const auto& col : response) {
    if (col.size() != f_hz.size()) {
      throw std::invalid_argument("spectrum column length mismatch");
    }
  }
  std::string s = "f_hz";
  for (std::size_t j = 1; j <= response.size(); ++j) {
    s += ",s_" + std::to_string(j);
  }
  s += '\n';
  for (std::size_t i = 0; i < f_hz.size(); ++i) {
    s += fmt_g(f_hz[i]);
    for (const auto& col : response) {
      s += ',';
      s += fmt_g(col[i]);
    }
    s += '\n';
  }
  return s;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string s;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) s += ',';
    s += header[i];
  }
  s += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw std::invalid_argument("csv row length mismatch");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += fmt_g(row[i]);
    }
    s += '\n';
  }
  return s;
}

namespace {

constexpr char kRawMagic[8] = {'D', 'P', 'T', 'R', 'A', 'W', '1', '\0'};

template <class T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

void write_raw(const std::string& path, const RawTrajectory& raw) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(kRawMagic, sizeof kRawMagic);
  put<std::uint32_t>(out, 1);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(raw.n_osc));
  put<double>(out, raw.sample_dt);
  put<std::uint64_t>(out, raw.samples);
  out.write(reinterpret_cast<const char*>(raw.z.data()),
            static_cast<std::streamsize>(raw.z.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path);
}

RawTrajectory read_raw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kRawMagic, sizeof magic) != 0) {
    throw std::runtime_error("not a raw trajectory file: " + path);
  }
  const auto version = get<std::uint32_t>(in);
  if (version != 1) {
    throw std::runtime_error("unsupported raw version " +
                             std::to_string(version));
  }
  RawTrajectory raw;
  raw.n_osc = static_cast<int>(get<std::uint32_t>(in));
  raw.sample_dt = get<double>(in);
  raw.samples = get<std::uint64_t>(in);
  if (raw.n_osc <= 0 || raw.samples == 0 ||
      raw.samples > (1ull << 40) / static_cast<unsigned>(raw.n_osc)) {
    throw std::runtime_error("raw header out of range: " + path);
  }
  raw.dt = raw.sample_dt;
  raw.z.resize(static_cast<std::size_t>(raw.n_osc) * raw.samples);
  in.read(reinterpret_cast<char*>(raw.z.data()),
          static_cast<std::streamsize>(raw.z.size() * sizeof(double)));
  if (!in) throw std::runtime_error("raw payload truncated: " + path);
  return raw;
}

}  // namespace dpt::io
