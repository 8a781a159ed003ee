#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cfas/assignment.hpp"
#include "cfas/core.hpp"
#include "cfas/reduction.hpp"

namespace cfas::io {

// Parse failure with the 1-based line it happened on.  CLI maps this to
// exit code 2.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_) + ": " + message),
          line(line_) {}
};

// A strictly validated DIMACS CNF file: header `p cnf <n> <k>`, then one
// clause per line, exactly three nonzero literals terminated by 0.
// Comments are kept for diagnostics.
struct DimacsDocument {
    int declared_vars = 0;
    int declared_clauses = 0;
    std::vector<std::string> comments;
    reduction::CnfInstance instance;
};

DimacsDocument parse_dimacs_document(std::string_view text);
reduction::CnfInstance parse_dimacs(std::string_view text);
std::string write_dimacs(const reduction::CnfInstance& instance);

// Tournament text format: line 1 `tournament <n>`; then one line per
// vertex u = 0..n-2 holding n-1-u characters, character j (1-based)
// being `1` for arc u -> u+j and `0` for the reverse.  An optional
// trailing `labels` section lists one `index<TAB>label` per line.
std::string write_tournament(const Tournament& t);
Tournament read_tournament(std::string_view text);

// One line of whitespace-separated vertex indices or labels.
std::string write_ordering(const Ordering& ord);
Ordering read_ordering(std::string_view text, const Tournament& context);

// One `index<TAB>label` line per vertex.
std::string write_roles(const reduction::ReducedTournament& r);
std::vector<std::pair<int, std::string>> read_roles(std::string_view text);

// Lines `<var> 0|1`, one per variable.
std::string write_assignment(const assignment::Assignment& a);
assignment::Assignment read_assignment(std::string_view text, int num_vars);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

}  // namespace cfas::io
