#pragma once

#include "l2a/io.hpp"
#include "l2a/report.hpp"

#include <string>
#include <utility>
#include <vector>

namespace l2a {

// Named reports of one `check` run, in a fixed order.
using CheckList = std::vector<std::pair<std::string, Report>>;

// which: lie2, rep3, weil, poisson or all. Throws InputError when a poisson
// check is asked for a file without a bracket.
CheckList run_checks(const StructureFile& s, const std::string& which, const RunOptions& o);
// K random single-entry mutations of the Lie 2-algebroid data; clause "verdicts_agree"
// compares lie2_axioms_check against q_square_check on each
Report mutation_report(const StructureFile& s, const RunOptions& o);

Json checks_json(const StructureFile& s, const std::string& command, const CheckList& checks,
                 const RunOptions& o);
Json adjoint_json(const StructureFile& s);
Json cohomology_json(const StructureFile& s, int cutoff, bool* ok);

struct CliResult {
  int exit_code = 0;
  std::string out, err;
};

// args without the program name. Exit 0: all pass, 1: a check failed, 2: input error.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace l2a
