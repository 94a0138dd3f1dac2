#include "report.hpp"

#include "b0box/csv.hpp"

#include <zlib.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace b0box::report {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%7.1e", v);
  return buf;
}

std::string table_header(bool levenberg_marquardt) {
  std::string h = "outer    inner     f(x)     h(x)     √ξ1      √ξ        ρ       Δ     ‖x‖     ‖s‖";
  h += levenberg_marquardt ? "     1/ν" : "    ‖Bⱼ‖";
  return h;
}

std::string table_row(const IterationRecord& rec) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%5d %8d  %s  %s %s %s  %s %s %s %s %s", rec.outer, rec.inner, sci(rec.f).c_str(),
                sci(rec.h).c_str(), sci(rec.sqrt_xi1).c_str(), sci(rec.sqrt_xi).c_str(), sci(rec.rho).c_str(),
                sci(rec.delta).c_str(), sci(rec.norm_x).c_str(), sci(rec.norm_s).c_str(),
                sci(rec.model_scale).c_str());
  return buf;
}

std::string solution_csv(const Vector& x) {
  std::ostringstream out;
  out << "index,value\n";
  for (Index i = 0; i < x.size(); ++i) out << i << ',' << csv::full(x[i]) << '\n';
  return out.str();
}

std::string errors_csv(const Vector& x, const Vector& reference) {
  std::ostringstream out;
  out << "index,abs_error\n";
  for (Index i = 0; i < x.size(); ++i) out << i << ',' << csv::full(std::abs(x[i] - reference[i])) << '\n';
  return out.str();
}

std::string history_csv(const std::vector<HistoryPoint>& history) {
  std::ostringstream out;
  out << "evaluations,objective\n";
  for (const auto& p : history) out << p.evaluations << ',' << csv::full(p.objective) << '\n';
  return out.str();
}

std::string steps_csv(const std::vector<Vector>& steps, Index dimension) {
  std::ostringstream out;
  out << "index";
  for (std::size_t j = 0; j < steps.size(); ++j) out << ",step" << j + 1;
  out << '\n';
  for (Index i = 0; i < dimension; ++i) {
    out << i;
    for (const auto& s : steps) out << ',' << csv::full(s[i]);
    out << '\n';
  }
  return out.str();
}

std::string iterations_csv(const std::vector<IterationRecord>& records) {
  std::ostringstream out;
  out << "outer,inner,f,h,sqrt_xi1,sqrt_xi,rho,delta,norm_x,norm_s,model_scale,accepted\n";
  for (const auto& r : records) {
    out << r.outer << ',' << r.inner << ',' << csv::full(r.f) << ',' << csv::full(r.h) << ','
        << csv::full(r.sqrt_xi1) << ',' << csv::full(r.sqrt_xi) << ',' << csv::full(r.rho) << ','
        << csv::full(r.delta) << ',' << csv::full(r.norm_x) << ',' << csv::full(r.norm_s) << ','
        << csv::full(r.model_scale) << ',' << (r.accepted ? 1 : 0) << '\n';
  }
  return out.str();
}

std::uint32_t crc32_of(std::string_view data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size()));
  return static_cast<std::uint32_t>(crc);
}

namespace {

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void write_run(const std::filesystem::path& dir, const std::vector<OutputFile>& files, ManifestEntries manifest) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  for (const auto& f : files) {
    write_file(dir / f.name, f.content);
    char hex[16];
    std::snprintf(hex, sizeof hex, "%08x", crc32_of(f.content));
    manifest.emplace_back("file." + f.name, std::string("crc32:") + hex);
  }
  std::string text;
  for (const auto& [key, value] : manifest) text += key + "=" + value + "\n";
  write_file(dir / "manifest.txt", text);
}

}  // namespace b0box::report
