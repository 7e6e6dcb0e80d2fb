#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "lbreg/solver.hpp"

namespace lbreg {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

inline constexpr const char* kTraceHeader =
    "iter,f_beta,e_val,r_val,d_h_step,d_h_rev,d_r_symm,grad_norm,residual,step_norm";

// CSV with the exact header above, one row per completed iteration, '\n' line
// endings, floats in shortest round-trip form. Throws std::runtime_error when
// the path cannot be opened for writing.
void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& trace);

// One value per line, same float formatting.
void write_vector_csv(const std::string& path, const Eigen::VectorXd& x);

// Inverse of write_trace_csv; validates the header.
std::vector<TraceRecord> read_trace_csv(const std::string& path);

}  // namespace lbreg
