#pragma once

#include <string>

#include "zonoreach/identify.hpp"
#include "zonoreach/projsel.hpp"
#include "zonoreach/propagate.hpp"
#include "zonoreach/reduction.hpp"
#include "zonoreach/sets.hpp"
#include "zonoreach/volume.hpp"

namespace zonoreach {

// JSON shapes (documented in README.md):
//   Zonotope            {"center":[...], "generators":[[row],[row],...]}
//   ConstrainedZonotope adds "Aeq":[[row],...], "beq":[...]
//   MatrixZonotope      {"center":[[row],...]} plus either
//                       "gen_list":[[[row],...],...] (dense) or
//                       "left":[[...],...], "right":[[...],...] (factored)
// Matrices are nested row-major arrays; vectors are flat arrays.

std::string to_json(const Zonotope& z);
std::string to_json(const ConstrainedZonotope& cz);
std::string to_json(const MatrixZonotope& mz);
std::string to_json(const ReductionReport& report);
std::string to_json(const VolumeResult& volume);
std::string to_json(const IdentifiedModel& model);
std::string to_json(const ReachRun& reach);

Zonotope zonotope_from_json(const std::string& text);
ConstrainedZonotope constrained_from_json(const std::string& text);
MatrixZonotope matrix_zonotope_from_json(const std::string& text);
IdentifiedModel model_from_json(const std::string& text);
ReachRun reach_run_from_json(const std::string& text);

/// Comma-separated values, one matrix row per line, 17 significant digits
/// (round-trip exact for doubles).
std::string matrix_to_csv(const Matrix& m);
Matrix matrix_from_csv(const std::string& text);

/// Optimizer trace as CSV with columns step,objective,radius,orthogonality.
std::string trace_to_csv(const OptTrace& trace);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace zonoreach
