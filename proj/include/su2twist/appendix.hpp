#pragma once

#include "su2twist/classify.hpp"
#include "su2twist/exact_quaternion.hpp"
#include "su2twist/qf_parse.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace su2twist {

/// A generating pair (Ai, Ag) of a binary polyhedral group, with its kind ("T", "C" or "D").
struct PolyhedralPair {
  std::string name;
  std::string kind;
  ExactQuaternion ai;
  ExactQuaternion ag;
};

/// tr(word) = value, with the word over the letters Ai, Ag, Aj (and their ^-1).
struct TraceConstraint {
  std::string word;
  ParsedValue value;
};

enum class ConclusionKind { Membership, Escape, NoRealSolution };

struct CaseConclusion {
  ConclusionKind kind = ConclusionKind::NoRealSolution;
  std::string escape_word;                // e.g. "Ai Ag Ai Aj"
  std::vector<ParsedValue> escape_traces;  // one per claimed solution
  std::array<std::string, 2> handle{};    // handle whose class must escape
};

struct AppendixCase {
  std::string id;
  std::string group;
  std::string description;
  std::vector<TraceConstraint> constraints;
  std::vector<std::array<ParsedValue, 4>> claimed_solutions;
  /// Solutions as printed alongside the case when they differ from the verified ones.
  std::vector<std::array<ParsedValue, 4>> printed_solutions;
  std::string note;
  CaseConclusion conclusion;
};

struct CaseTable {
  std::map<std::string, PolyhedralPair> groups;
  std::vector<AppendixCase> cases;
  const AppendixCase& find(const std::string& id) const;
};

/// The table compiled into the library.
const char* embedded_appendix_table();
CaseTable parse_case_table(const std::string& json_text);
CaseTable load_case_table_file(const std::string& path);
const CaseTable& default_case_table();

struct RealSolutionSearch {
  double resolution = 1e-4;
  std::size_t surviving_boxes = 0;
  std::vector<std::array<double, 4>> component_centers;
  std::vector<std::array<double, 4>> component_lo;
  std::vector<std::array<double, 4>> component_hi;
  bool exhausted = false;  // box budget exceeded; result inconclusive
};

/// Interval subdivision of [-1,1]^4 for the constraint system plus the unit-norm equation.
RealSolutionSearch search_real_solutions(const PolyhedralPair& pair, const std::vector<TraceConstraint>& constraints,
                                         double resolution = 1e-4, std::size_t max_boxes = 4000000);

struct CaseReport {
  std::string id;
  bool passed = false;
  bool exact_residuals = false;
  double max_residual = 0.0;
  std::size_t real_components = 0;
  bool solution_set_matches = false;
  bool conclusion_holds = false;
  std::vector<double> escape_traces;
  std::vector<std::string> messages;
};

CaseReport verify_appendix_case(const CaseTable& table, const std::string& case_id);
std::vector<CaseReport> verify_all_cases(const CaseTable& table);

/// Trace conditions (tr AiAj, tr AiAgAj, tr AgAj) ranging over the value set of the group kind.
struct SiblingSummary {
  std::string group;
  std::size_t total = 0;
  std::size_t membership = 0;
  std::size_t escape = 0;
  std::size_t non_real = 0;
  std::size_t inconclusive = 0;
  std::vector<std::string> inconclusive_cases;
};

std::vector<double> trace_value_set(const std::string& kind);
SiblingSummary enumerate_sibling_cases(const PolyhedralPair& pair);

/// Does the handle class escape the excluded list for this group kind?
bool handle_escapes(const std::string& kind, const ImageClassification& c);

std::string to_string(ConclusionKind k);

}  // namespace su2twist
