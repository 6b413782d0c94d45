#include "hydrolfc/fuzzy.hpp"

#include <cmath>
#include <stdexcept>

namespace hydrolfc::fuzzy {

namespace {

constexpr const char* kTermNames[kTermCount] = {"NB", "NM", "NS", "ZE",
                                                "PS", "PM", "PB"};

}  // namespace

const char* term_name(Term t) { return kTermNames[static_cast<int>(t)]; }

void GeneQuad::validate() const {
  for (double g : {f1, f2, f3, f4}) {
    if (!(g >= kGeneMin && g <= kGeneMax))
      throw std::domain_error("gene outside [0.01, 0.99]");
  }
}

void BreakpointSet::validate() const {
  if (!(b1 < b2 && b2 < 0.0 && 0.0 < b3 && b3 < b4))
    throw std::domain_error("breakpoints must satisfy b1 < b2 < 0 < b3 < b4");
}

BreakpointSet decode_quad(const GeneQuad& q, double scale) {
  q.validate();
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::domain_error("universe scale must be > 0");
  BreakpointSet b;
  b.b1 = -(q.f4 + q.f3) * scale;
  b.b2 = -q.f3 * scale;
  b.b3 = q.f1 * scale;
  b.b4 = (q.f1 + q.f2) * scale;
  return b;
}

MembershipFamily MembershipFamily::from_breakpoints(const BreakpointSet& b) {
  b.validate();
  MembershipFamily fam;
  fam.centers_ = {b.b1, 0.5 * (b.b1 + b.b2), b.b2, 0.0,
                  b.b3, 0.5 * (b.b3 + b.b4), b.b4};
  return fam;
}

double MembershipFamily::grade(int term, double x) const {
  const auto& c = centers_;
  if (term == 0) {
    if (x <= c[0]) return 1.0;
    if (x >= c[1]) return 0.0;
    return (c[1] - x) / (c[1] - c[0]);
  }
  if (term == kTermCount - 1) {
    if (x >= c[6]) return 1.0;
    if (x <= c[5]) return 0.0;
    return (x - c[5]) / (c[6] - c[5]);
  }
  const double lo = c[term - 1];
  const double mid = c[term];
  const double hi = c[term + 1];
  if (x <= lo || x >= hi) return 0.0;
  if (x == mid) return 1.0;
  if (x < mid) return (x - lo) / (mid - lo);
  return (hi - x) / (hi - mid);
}

std::array<double, kTermCount> MembershipFamily::grades(double x) const {
  std::array<double, kTermCount> out{};
  for (int i = 0; i < kTermCount; ++i) out[i] = grade(i, x);
  return out;
}

RuleBase RuleBase::standard() {
  // Rows: error term NB..PB; columns: error-rate term NB..PB.
  static constexpr std::int8_t kTable[kTermCount][kTermCount] = {
      {0, 0, 1, 1, 2, 2, 3},  // NB
      {0, 1, 1, 2, 2, 3, 4},  // NM
      {1, 1, 2, 2, 3, 4, 4},  // NS
      {1, 2, 2, 3, 4, 4, 5},  // ZE
      {2, 2, 3, 4, 4, 5, 5},  // PS
      {2, 3, 4, 4, 5, 5, 6},  // PM
      {3, 4, 4, 5, 5, 6, 6},  // PB
  };
  RuleBase rb;
  for (int i = 0; i < kTermCount; ++i)
    for (int j = 0; j < kTermCount; ++j) rb.table_[i][j] = kTable[i][j];
  return rb;
}

int RuleBase::consequent(int e_term, int ec_term) const {
  if (e_term < 0 || e_term >= kTermCount || ec_term < 0 ||
      ec_term >= kTermCount)
    throw std::domain_error("rule index outside the 7x7 table");
  return table_[e_term][ec_term];
}

Term RuleBase::consequent(Term e, Term ec) const {
  return static_cast<Term>(
      consequent(static_cast<int>(e), static_cast<int>(ec)));
}

void UniverseScales::validate() const {
  for (double s : {error, error_rate, output}) {
    if (!(s > 0.0) || !std::isfinite(s))
      throw std::domain_error("universe scale must be > 0");
  }
}

FuzzySystem make_system(const GeneQuad& error_genes,
                        const GeneQuad& error_rate_genes,
                        const GeneQuad& output_genes,
                        const UniverseScales& scales) {
  scales.validate();
  FuzzySystem sys;
  sys.error_family = MembershipFamily::from_breakpoints(
      decode_quad(error_genes, scales.error));
  sys.error_rate_family = MembershipFamily::from_breakpoints(
      decode_quad(error_rate_genes, scales.error_rate));
  sys.output_family = MembershipFamily::from_breakpoints(
      decode_quad(output_genes, scales.output));
  sys.rules = RuleBase::standard();
  return sys;
}

FuzzySystem make_system(const std::array<double, 12>& genes,
                        const UniverseScales& scales) {
  const GeneQuad e{genes[0], genes[1], genes[2], genes[3]};
  const GeneQuad ec{genes[4], genes[5], genes[6], genes[7]};
  const GeneQuad u{genes[8], genes[9], genes[10], genes[11]};
  return make_system(e, ec, u, scales);
}

double infer(double e_value, double ec_value, const FuzzySystem& sys) {
  const auto e_grades = sys.error_family.grades(e_value);
  const auto ec_grades = sys.error_rate_family.grades(ec_value);

  double weight_sum = 0.0;
  double weighted_output = 0.0;
  for (int i = 0; i < kTermCount; ++i) {
    if (e_grades[i] == 0.0) continue;
    for (int j = 0; j < kTermCount; ++j) {
      const double w = e_grades[i] * ec_grades[j];
      if (w == 0.0) continue;
      weight_sum += w;
      weighted_output +=
          w * sys.output_family.center(sys.rules.consequent(i, j));
    }
  }
  if (!(weight_sum > 0.0))
    throw std::domain_error("no rule fired; inputs are not in the universes");
  return weighted_output / weight_sum;
}

}  // namespace hydrolfc::fuzzy
