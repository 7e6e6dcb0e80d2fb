#include "lbreg/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace lbreg {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

double parse_double(const std::string& tok) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw std::runtime_error("bad float in trace: '" + tok + "'");
  return v;
}

}  // namespace

void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& trace) {
  std::ofstream out = open_out(path);
  out << kTraceHeader << '\n';
  for (const TraceRecord& r : trace) {
    out << r.iter << ',' << format_double(r.f_beta) << ',' << format_double(r.e_val)
        << ',' << format_double(r.r_val) << ',' << format_double(r.d_h_step) << ','
        << format_double(r.d_h_rev) << ',' << format_double(r.d_r_symm) << ','
        << format_double(r.grad_norm) << ',' << format_double(r.residual) << ','
        << format_double(r.step_norm) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& x) {
  std::ofstream out = open_out(path);
  for (Eigen::Index i = 0; i < x.size(); ++i) out << format_double(x[i]) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<TraceRecord> read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader)
    throw std::runtime_error("bad trace header in " + path);
  std::vector<TraceRecord> trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ls, tok, ',')) cols.push_back(tok);
    if (cols.size() != 10) throw std::runtime_error("bad trace row in " + path);
    TraceRecord r;
    r.iter = std::stol(cols[0]);
    r.f_beta = parse_double(cols[1]);
    r.e_val = parse_double(cols[2]);
    r.r_val = parse_double(cols[3]);
    r.d_h_step = parse_double(cols[4]);
    r.d_h_rev = parse_double(cols[5]);
    r.d_r_symm = parse_double(cols[6]);
    r.grad_norm = parse_double(cols[7]);
    r.residual = parse_double(cols[8]);
    r.step_norm = parse_double(cols[9]);
    trace.push_back(r);
  }
  return trace;
}

}  // namespace lbreg
