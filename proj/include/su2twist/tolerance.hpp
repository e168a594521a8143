#pragma once

namespace su2twist {

// One record for every floating-point threshold in the library. Long twist
// words accumulate roughly length * machine-epsilon, so relation residuals get
// the loosest bound and pointwise algebraic identities the tightest.
struct Tolerances {
  double norm = 1e-12;       // unit-norm checks
  double identity = 1e-10;   // trace identities and coordinate/matrix agreement
  double relation = 1e-9;    // surface relation residual
  double cluster = 1e-9;     // float closure: elements closer than this are merged
  double criterion = 1e-9;   // zero tests in locus predicates
  double chart = 1e-8;       // chart equations along orbit samples
};

inline constexpr Tolerances default_tolerances{};

}  // namespace su2twist
