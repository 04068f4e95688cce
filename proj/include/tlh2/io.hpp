#pragma once

#include "tlh2/lti.hpp"
#include "tlh2/optimizer.hpp"

#include <filesystem>
#include <string>

namespace tlh2 {

/// Shortest decimal representation that parses back to the identical double.
std::string format_double(double value);

/// Model file: JSON object {"n","m","p","A","B","C"} with matrices as
/// row-major flat arrays of finite doubles. A reduced model uses the same
/// schema with n = r.
void save_model(const StateSpaceModel& model, const std::filesystem::path& path);
StateSpaceModel load_model(const std::filesystem::path& path);
void save_rom(const ReducedModel& rom, const std::filesystem::path& path);
ReducedModel load_rom(const std::filesystem::path& path);

/// Impulse file: CSV with header k,h_0_0,...,h_{p-1}_{m-1} (row-major over
/// (output, input)), one row per k ascending from 0, full-precision doubles.
void save_impulse(const ImpulseData& data, const std::filesystem::path& path);
ImpulseData load_impulse(const std::filesystem::path& path);

/// Trace file: CSV with header
/// iter,objective,rel_error,grad_norm,step,backtracks,spectral_radius,wall_ms
/// plus a sidecar <stem>.meta.json holding {"reason","iters"}.
void save_trace(const ConvergenceTrace& trace, const std::filesystem::path& path);
std::filesystem::path trace_sidecar_path(const std::filesystem::path& trace_path);

}  // namespace tlh2
