#pragma once

// Batch commands behind the cpvopt front end. Each returns the process exit
// code: 0 success with a feasible design, 2 success without one, 1 error.
// Errors are reported on `err`; results go to `out`.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cpv/config.hpp"

namespace cpv {

enum ExitCode : int { kExitFeasible = 0, kExitError = 1, kExitInfeasible = 2 };

// Netting thickness table for the named composites (all non-isotropic
// cards in the database when empty).
int cmd_netting(const RunConfig& config, const std::vector<std::string>& materials, std::ostream& out,
                std::ostream& err);

// Evaluates one design; writes record.json, stations.csv and layup.csv when
// `out_dir` is non-empty.
int cmd_evaluate(const RunConfig& config, const DesignVector& design, const std::filesystem::path& out_dir,
                 std::ostream& out, std::ostream& err);

// Runs the configured optimizer and writes the run artifacts to
// config.output_directory.
int cmd_optimize(const RunConfig& config, std::ostream& out, std::ostream& err);

// With `complete`, missing values of cards naming their constituents are
// filled from materials/constituents.ini.
int cmd_materials_list(const RunConfig& config, bool complete, std::ostream& out, std::ostream& err);

}  // namespace cpv
