#pragma once

// Named, self-contained verification suites behind `nc verify`, plus the
// builtin model constructions they (and the CLI fixture generator) use.

#include "ncfree/infdiv.hpp"
#include "ncfree/invariance.hpp"

#include <string>
#include <vector>

namespace ncfree {

struct SuiteItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  bool all_pass = true;
  std::vector<SuiteItem> items;
  void add(std::string name, bool pass, std::string detail = "");
};

struct SuiteParams {
  int k = 0;                 // size bound override (0 = suite default)
  long n = 0;                // dimension override
  std::vector<long> n_list;  // for asymptotics / limit evaluation
};

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const SuiteParams& params = {});

// builtin distributions and families
DistributionSpec semicircular_spec(int K);  // d=1, s=1, kappa_2 = 1
DistributionSpec free_poisson_spec(int K);  // d=1, s=1, kappa_k = 1 for all k
MatrixFamilySpec symmetric_free_semicircular(int n, int K);
MatrixFamilySpec constant_matrix_family(int n, int K, const Rat& alpha);

struct SuiteFamily {
  std::string name;
  MatrixFamilySpec fam;
  bool rcyclic = false;   // expected
  bool uniform = false;   // expected
};
std::vector<SuiteFamily> equivalence_suite(int n, int K);

// fixture models for `nc moments` and the invariance suites
std::vector<std::string> builtin_model_names();
MatrixFamilySpec builtin_model(const std::string& name, int n, int K);

}  // namespace ncfree
