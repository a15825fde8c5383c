#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cmvspec/word.hpp"

namespace cmvspec::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Worst measured quantity against its pinned bound, human readable.
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  /// Empty runs all thirteen.
  std::vector<int> criteria;
  std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriterionCount = 13;

std::vector<CriterionResult> run_suite(const SuiteOptions& options = {});
CriterionResult run_criterion(int id);

/// Dense periodic restriction of E to n q sites with wrap-around blocks,
/// row-major. Independent of the library's operator assembly.
std::vector<cplx> periodic_cmv_dense(const VerblunskyWord& word, index_t n);

/// Eigenvalue angles in [0, 2 pi), ascending, from a dense unitary matrix.
std::vector<double> dense_eigen_angles(const std::vector<cplx>& matrix, index_t size);

/// "PASS"/"FAIL" line as printed by the acceptance binary and verify.
std::string format_line(const CriterionResult& r);

}  // namespace cmvspec::acceptance
