#pragma once

#include <array>
#include <cstdint>

namespace hydrolfc::fuzzy {

inline constexpr double kGeneMin = 0.01;
inline constexpr double kGeneMax = 0.99;
inline constexpr int kTermCount = 7;

// Linguistic terms, ordered negative-big .. positive-big.
enum class Term : int { NB = 0, NM, NS, ZE, PS, PM, PB };

const char* term_name(Term t);

// Four shape genes for one variable, each in [kGeneMin, kGeneMax].
struct GeneQuad {
  double f1 = 0.5;
  double f2 = 0.5;
  double f3 = 0.5;
  double f4 = 0.5;

  void validate() const;
};

// Universe breakpoints decoded from a gene quad; b1 < b2 < 0 < b3 < b4.
struct BreakpointSet {
  double b1;
  double b2;
  double b3;
  double b4;

  void validate() const;
};

// Breakpoint decode:
//   b1 = -(f4 + f3) * scale,  b2 = -f3 * scale,
//   b3 =   f1 * scale,        b4 = (f1 + f2) * scale.
BreakpointSet decode_quad(const GeneQuad& q, double scale);

// Seven triangular terms with saturated outer shoulders. Centers sit at
// (b1, mid(b1,b2), b2, 0, b3, mid(b3,b4), b4); each triangle spans its two
// neighbours, so the grades of adjacent terms sum to one everywhere inside
// [b1, b4] and the full grade vector always sums to one.
class MembershipFamily {
 public:
  static MembershipFamily from_breakpoints(const BreakpointSet& b);

  double grade(int term, double x) const;
  std::array<double, kTermCount> grades(double x) const;

  double center(int term) const { return centers_[term]; }
  double center(Term term) const { return centers_[static_cast<int>(term)]; }
  double lower() const { return centers_.front(); }
  double upper() const { return centers_.back(); }
  const std::array<double, kTermCount>& centers() const { return centers_; }

 private:
  std::array<double, kTermCount> centers_{};
};

// The 7x7 rule table mapping (error term, error-rate term) to an output
// term. The table is symmetric and antisymmetric under term negation.
class RuleBase {
 public:
  static RuleBase standard();

  // Terms indexed 0..6 (NB..PB); rows are error terms, columns error-rate.
  int consequent(int e_term, int ec_term) const;
  Term consequent(Term e, Term ec) const;

 private:
  std::array<std::array<std::int8_t, kTermCount>, kTermCount> table_{};
};

// Universe half-range scale factors applied during gene decode.
struct UniverseScales {
  double error = 0.032;
  double error_rate = 100.0;
  double output = 0.032;

  void validate() const;
};

struct FuzzySystem {
  MembershipFamily error_family;
  MembershipFamily error_rate_family;
  MembershipFamily output_family;
  RuleBase rules = RuleBase::standard();
};

FuzzySystem make_system(const GeneQuad& error_genes,
                        const GeneQuad& error_rate_genes,
                        const GeneQuad& output_genes,
                        const UniverseScales& scales);

// Gene layout: [0..3] error quad, [4..7] error-rate quad, [8..11] output
// quad.
FuzzySystem make_system(const std::array<double, 12>& genes,
                        const UniverseScales& scales);

// Zero-order Sugeno inference: every rule fires with the product of its two
// antecedent grades, weights are normalized to sum to one, and the output
// is the weighted average of the consequent term centers in the output
// family. Result is always inside [output NB center, output PB center].
double infer(double e_value, double ec_value, const FuzzySystem& sys);

}  // namespace hydrolfc::fuzzy
