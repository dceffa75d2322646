#pragma once

#include <span>
#include <stdexcept>
#include <string_view>

namespace connections {

class StatsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class TTestKind { Welch, Paired };
std::string_view to_string(TTestKind k);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
  TTestKind kind = TTestKind::Welch;
};

// I_x(a, b) for a, b > 0 and x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

double mean(std::span<const double> xs);
// Unbiased (n - 1) sample variance.
double sample_variance(std::span<const double> xs);

// Unequal-variance two-sample t-test with Welch-Satterthwaite df. Each sample
// needs at least two values and nonzero variance.
TTestResult welch_t(std::span<const double> a, std::span<const double> b);

// Dependent-samples t-test on a[i] - b[i]; df = n - 1. The differences need
// nonzero variance.
TTestResult paired_t(std::span<const double> a, std::span<const double> b);

}  // namespace connections
