#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "evosocial/experiments.hpp"
#include "evosocial/meanfield.hpp"
#include "evosocial/simulator.hpp"

namespace evosocial {

// All CSV output: comma separated, '.' decimal, header row, LF line endings.

/// Shortest round-trip decimal form of v; locale independent.
std::string format_number(double v);

/// Columns: t,x_total,x_type_1..x_type_I.
void write_meanfield_csv(std::ostream& os, const Trajectory& trajectory);

/// Columns: trial,step,x_total,x_type_1..x_type_I. Trials without samples
/// contribute their final state only.
void write_simulation_csv(std::ostream& os, const EnsembleResult& ensemble);

/// Header plus one row per parameter point.
void write_ensemble_summary_header(std::ostream& os);
void write_ensemble_summary_row(std::ostream& os, const TypeProfile& profile, const GameParams& params,
                                const EnsembleResult& ensemble);

/// Sweep table. Throws ValidationError when rows is empty.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Human-readable digest, including the agreement rate outside the near-threshold band.
void write_sweep_summary(std::ostream& os, const std::vector<SweepRow>& rows);

/// CSV to `csv_path` (when nonempty) and summary to `summary`.
void emit_report(const std::vector<SweepRow>& rows, const std::string& csv_path, std::ostream& summary);

std::string format_ess_set(const std::vector<int>& ess_set);

} // namespace evosocial
